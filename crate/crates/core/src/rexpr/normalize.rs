//! Normalization of amplitude expressions to dense tables.
//!
//! Follows the structural induction for R-expressions: constants are
//! extended one variable at a time, products multiply entrywise, sums recurse
//! on the last variable, and powers recurse on the ANF of the exponent.

use serde::Serialize;

use crate::boolexpr::{point_indicator, BitValuation, BoolExpr, Monomial, Var};
use crate::error::{Error, Result};
use crate::rexpr::RExpr;
use crate::rings::{RingElem, RingSpec};

/// Which rules the normalizer may use for `r^{f₁⊕f₂}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theory {
    /// `r^{f₁} + r^{f₂} − (2r − 1)^{f₁f₂}`; any commutative ring.
    Ring,
    /// `a^{f₁}a^{f₂}(a^{−2})^{f₁f₂}`; multiplicative expressions over a field.
    Field,
}

/// Dense table of `2^m` entries; `vars[0]` is the most significant index bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NormalTable {
    pub vars: Vec<Var>,
    pub entries: Vec<RingElem>,
}

impl NormalTable {
    pub fn get(&self, index: usize) -> &RingElem {
        &self.entries[index]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vars": self.vars.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}

/// `Π_v α_v^{v = x⃗}` for the table's entries.
pub fn table_to_rexpr(ring: RingSpec, t: &NormalTable) -> RExpr {
    let factors = t
        .entries
        .iter()
        .enumerate()
        .map(|(i, a)| RExpr::Pow(Box::new(RExpr::Const(a.clone())), point_indicator(i as u64, &t.vars)));
    RExpr::product(ring, factors)
}

struct Ctx<'a> {
    ring: RingSpec,
    vars: &'a [Var],
    layout: BitValuation,
    theory: Theory,
}

/// Normalizes `r` over `vars ⊇ FV(r)`, refusing more than `cap` variables.
pub fn normalize_rexpr(
    r: &RExpr,
    vars: &[Var],
    ring: RingSpec,
    theory: Theory,
    cap: usize,
) -> Result<NormalTable> {
    if vars.len() > cap {
        return Err(Error::SizeCap { bits: vars.len(), cap });
    }
    r.check_ring(ring)?;
    if let Some(v) = r.free_vars().into_iter().find(|v| !vars.contains(v)) {
        return Err(Error::UnassignedVariable(v));
    }
    if theory == Theory::Field && !r.is_multiplicative() {
        return Err(Error::AddInMultiplicativeMode);
    }
    let ctx = Ctx { ring, vars, layout: BitValuation::new(vars), theory };
    let entries = ctx.norm(r)?;
    Ok(NormalTable { vars: vars.to_vec(), entries })
}

impl Ctx<'_> {
    fn norm(&self, r: &RExpr) -> Result<Vec<RingElem>> {
        match r {
            RExpr::Const(a) => Ok(self.extend_constant(a)),
            RExpr::Mul(xs) => {
                let mut acc = self.extend_constant(&self.ring.one());
                for x in xs {
                    acc = product(&acc, &self.norm(x)?);
                }
                Ok(acc)
            }
            RExpr::Add(xs) => {
                let mut acc = self.extend_constant(&self.ring.zero());
                for x in xs {
                    acc = sum_split(&acc, &self.norm(x)?);
                }
                Ok(acc)
            }
            RExpr::Pow(b, f) => {
                let base = self.norm(b)?;
                self.pow(&base, f)
            }
        }
    }

    /// Extends a constant over the variables one at a time, each new variable
    /// becoming the least significant index bit.
    fn extend_constant(&self, a: &RingElem) -> Vec<RingElem> {
        let mut t = vec![a.clone()];
        for _ in self.vars {
            t = t.iter().flat_map(|e| [e.clone(), e.clone()]).collect();
        }
        t
    }

    fn ones(&self) -> Vec<RingElem> {
        self.extend_constant(&self.ring.one())
    }

    fn masks(&self, f: &BoolExpr) -> Vec<u64> {
        f.to_masks(&self.layout).expect("exponent variables are in the layout")
    }

    /// `(Π α_v^{v=x⃗})^g = Π (α_v^g(v))^{v=x⃗}`.
    fn distribute(&self, t: &[RingElem], g: &BoolExpr) -> Vec<RingElem> {
        let masks = self.masks(g);
        t.iter()
            .enumerate()
            .map(|(i, a)| {
                if crate::boolexpr::eval_masks(&masks, i as u64) {
                    a.clone()
                } else {
                    self.ring.one()
                }
            })
            .collect()
    }

    fn pow(&self, t: &[RingElem], f: &BoolExpr) -> Result<Vec<RingElem>> {
        if f.is_zero() {
            return Ok(self.ones());
        }
        if f.is_one() {
            return Ok(t.to_vec());
        }
        let monos: Vec<&Monomial> = f.monomials().collect();
        if monos.len() == 1 {
            let m = monos[0];
            let vs = m.vars();
            // x_i keeps the entries where x_i = 1.
            let first = self.distribute(t, &BoolExpr::var(vs[0]));
            if vs.len() == 1 {
                return Ok(first);
            }
            // r^{x·g} = (r^x)^g.
            let rest = BoolExpr::from_monomial(Monomial::from_vars(vs[1..].iter().copied()));
            return Ok(self.distribute(&first, &rest));
        }
        let f1 = BoolExpr::from_monomial(monos[0].clone());
        let f2 = BoolExpr::from_monomials(monos[1..].iter().map(|m| (*m).clone()));
        match self.theory {
            Theory::Ring => {
                let a = self.pow(t, &f1)?;
                let b = self.pow(t, &f2)?;
                let two = self.ring.from_i64(2);
                let one = self.ring.one();
                let shifted: Vec<RingElem> = t.iter().map(|e| &(&two * e) - &one).collect();
                let c = self.distribute(&self.pow(&shifted, &f1)?, &f2);
                let neg_c: Vec<RingElem> = c.iter().map(|e| -e).collect();
                Ok(sum_split(&sum_split(&a, &b), &neg_c))
            }
            Theory::Field => {
                if !self.ring.is_field() {
                    return Err(Error::NotAField(self.ring.name()));
                }
                // Split t = t_nz · z with z ∈ {0, 1}: zeros are raised by
                // distribution, nonzeros through a^{-2}.
                let zero_mask: Vec<RingElem> = t
                    .iter()
                    .map(|e| if e.is_zero() { self.ring.zero() } else { self.ring.one() })
                    .collect();
                let nz: Vec<RingElem> =
                    t.iter().map(|e| if e.is_zero() { self.ring.one() } else { e.clone() }).collect();
                let inv2 = nz
                    .iter()
                    .map(|e| e.try_inv().map(|i| &i * &i))
                    .collect::<Result<Vec<_>>>()?;
                let a = self.pow(&nz, &f1)?;
                let b = self.pow(&nz, &f2)?;
                let c = self.distribute(&self.pow(&inv2, &f1)?, &f2);
                let z = self.distribute(&zero_mask, f);
                Ok(product(&product(&product(&a, &b), &c), &z))
            }
        }
    }
}

fn product(a: &[RingElem], b: &[RingElem]) -> Vec<RingElem> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// `s₁^{¬x}s₂^{x} + t₁^{¬x}t₂^{x} = (s₁+t₁)^{¬x}(s₂+t₂)^{x}` on the last
/// variable, down to plain ring sums.
fn sum_split(a: &[RingElem], b: &[RingElem]) -> Vec<RingElem> {
    if a.len() == 1 {
        return vec![&a[0] + &b[0]];
    }
    let (s1, s2): (Vec<RingElem>, Vec<RingElem>) =
        a.chunks(2).map(|p| (p[0].clone(), p[1].clone())).unzip();
    let (t1, t2): (Vec<RingElem>, Vec<RingElem>) =
        b.chunks(2).map(|p| (p[0].clone(), p[1].clone())).unzip();
    let lo = sum_split(&s1, &t1);
    let hi = sum_split(&s2, &t2);
    lo.into_iter().zip(hi).flat_map(|(l, h)| [l, h]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> BoolExpr {
        BoolExpr::var(Var(i))
    }

    fn k(ring: RingSpec, n: i64) -> RExpr {
        RExpr::Const(ring.from_i64(n))
    }

    fn brute(r: &RExpr, vars: &[Var]) -> Vec<RingElem> {
        let mut val = BitValuation::new(vars);
        (0..1u64 << vars.len())
            .map(|b| {
                val.set_bits(b);
                r.eval(&val).unwrap()
            })
            .collect()
    }

    #[test]
    fn constant_extends() {
        let ring = RingSpec::Rational;
        let t = normalize_rexpr(&k(ring, 3), &[Var(0)], ring, Theory::Ring, 20).unwrap();
        assert_eq!(t.entries, vec![ring.from_i64(3), ring.from_i64(3)]);
    }

    #[test]
    fn xor_exponent_both_theories() {
        let ring = RingSpec::Rational;
        let vars = [Var(0), Var(1), Var(2)];
        let f = x(0).xor(&x(1).and(&x(2))).xor(&BoolExpr::one());
        let r = RExpr::pow(RExpr::sum([k(ring, 3), RExpr::pow(k(ring, 0), x(1))]), f.clone());
        let t = normalize_rexpr(&r, &vars, ring, Theory::Ring, 20).unwrap();
        assert_eq!(t.entries, brute(&r, &vars));
        let a = RExpr::product(ring, [RExpr::pow(k(ring, 0), x(2)), RExpr::pow(k(ring, 5), x(0))]);
        let r = RExpr::pow(a, f);
        let t = normalize_rexpr(&r, &vars, ring, Theory::Field, 20).unwrap();
        assert_eq!(t.entries, brute(&r, &vars));
    }

    #[test]
    fn errors() {
        let ring = RingSpec::Int;
        let r = RExpr::sum([k(ring, 1), k(ring, 2)]);
        assert_eq!(normalize_rexpr(&r, &[], ring, Theory::Field, 20), Err(Error::AddInMultiplicativeMode));
        let p = RExpr::pow(k(ring, 2), x(0).xor(&x(1)));
        assert!(matches!(
            normalize_rexpr(&p, &[Var(0), Var(1)], ring, Theory::Field, 20),
            Err(Error::NotAField(_))
        ));
        assert!(matches!(normalize_rexpr(&p, &[Var(0), Var(1)], ring, Theory::Ring, 1), Err(Error::SizeCap { .. })));
        assert!(normalize_rexpr(&p, &[Var(0)], ring, Theory::Ring, 20).is_err());
    }

    #[test]
    fn round_trip() {
        let ring = RingSpec::Prime(7);
        let vars = [Var(3), Var(1)];
        let t = NormalTable { vars: vars.to_vec(), entries: (0..4).map(|i| ring.from_i64(i * 3)).collect() };
        let r = table_to_rexpr(ring, &t);
        assert_eq!(normalize_rexpr(&r, &vars, ring, Theory::Ring, 20).unwrap(), t);
        assert_eq!(normalize_rexpr(&r, &vars, ring, Theory::Field, 20).unwrap(), t);
    }

    #[test]
    fn json_shape() {
        let ring = RingSpec::Int;
        let t = normalize_rexpr(&k(ring, 2), &[Var(0)], ring, Theory::Ring, 20).unwrap();
        assert_eq!(t.to_json().to_string(), r#"{"entries":["2","2"],"vars":["x0"]}"#);
    }
}
