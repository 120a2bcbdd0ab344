//! Phase polynomials with coefficients in Z/8 and the Boolean lifting.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::boolexpr::{BoolExpr, Monomial, Valuation, Var};
use crate::error::{Error, Result};
use crate::rexpr::RExpr;
use crate::rings::RingSpec;

/// `0^{¬f}`: evaluates to 1 where `f` holds and to 0 elsewhere.
pub fn lift(ring: RingSpec, f: &BoolExpr) -> RExpr {
    RExpr::pow(RExpr::Const(ring.zero()), f.negate())
}

/// `Π_m (ζ^{c_m})^m` for `ζ` a primitive `2^k`-th root of unity.
pub fn phase_to_amplitude(ring: RingSpec, terms: &[(u32, Monomial)], k: u32) -> Result<RExpr> {
    if k > 3 {
        return Err(Error::UnsupportedRootOrder(1 << k.min(31)));
    }
    let order = 1u32 << k;
    let zeta = ring.root_of_unity(order)?;
    let mut factors = Vec::new();
    for (c, m) in terms {
        let c = c % order;
        if c == 0 {
            continue;
        }
        factors.push(RExpr::pow(RExpr::Const(zeta.pow(c)), BoolExpr::from_monomial(m.clone())));
    }
    Ok(RExpr::product(ring, factors))
}

/// A multilinear polynomial with coefficients mod 8, read as the exponent of
/// `ω` at each Boolean point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PhasePoly {
    terms: BTreeMap<Monomial, u8>,
}

impl PhasePoly {
    pub fn zero() -> Self {
        PhasePoly::default()
    }

    pub fn constant(c: u8) -> Self {
        let mut p = PhasePoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn term(m: Monomial, c: u8) -> Self {
        let mut p = PhasePoly::zero();
        p.add_term(m, c);
        p
    }

    /// `c · f̄` where `f̄` is the integer lifting of `f`
    /// (`f ⊕ g ↦ f + g − 2fg`).
    pub fn lifted(f: &BoolExpr, c: u8) -> Self {
        let mut acc = PhasePoly::zero();
        for m in f.monomials() {
            let single = PhasePoly::term(m.clone(), 1);
            let prod = acc.mul(&single).scale(6);
            acc = acc.add(&single).add(&prod);
        }
        acc.scale(c)
    }

    pub fn add_term(&mut self, m: Monomial, c: u8) {
        use std::collections::btree_map::Entry;
        let c = c % 8;
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let v = (*e.get() + c) % 8;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u8)> + '_ {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coeff(&self, m: &Monomial) -> u8 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> u8 {
        self.coeff(&Monomial::one())
    }

    pub fn without_constant(&self) -> PhasePoly {
        let mut p = self.clone();
        p.terms.remove(&Monomial::one());
        p
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.contains(v))
    }

    pub fn add(&self, o: &PhasePoly) -> PhasePoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), *c);
        }
        p
    }

    pub fn scale(&self, c: u8) -> PhasePoly {
        let mut p = PhasePoly::zero();
        for (m, d) in &self.terms {
            p.add_term(m.clone(), (c % 8) * d % 8);
        }
        p
    }

    pub fn mul(&self, o: &PhasePoly) -> PhasePoly {
        let mut p = PhasePoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                p.add_term(a.mul(b), c * d % 8);
            }
        }
        p
    }

    /// Splits as `v·a + b` with `v` in neither part.
    pub fn split_on(&self, v: Var) -> (PhasePoly, PhasePoly) {
        let mut a = PhasePoly::zero();
        let mut b = PhasePoly::zero();
        for (m, c) in &self.terms {
            if m.contains(v) {
                a.add_term(m.without(v), *c);
            } else {
                b.add_term(m.clone(), *c);
            }
        }
        (a, b)
    }

    /// Substitutes Boolean expressions for variables, lifting each.
    pub fn subst_many(&self, map: &HashMap<Var, BoolExpr>) -> PhasePoly {
        let lifted: HashMap<Var, PhasePoly> =
            map.iter().map(|(v, g)| (*v, PhasePoly::lifted(g, 1))).collect();
        let mut out = PhasePoly::zero();
        for (m, c) in &self.terms {
            let mut term = PhasePoly::constant(1);
            let mut kept = Vec::new();
            for &v in m.vars() {
                match lifted.get(&v) {
                    Some(g) => term = term.mul(g),
                    None => kept.push(v),
                }
            }
            let term = term.mul(&PhasePoly::term(Monomial::from_vars(kept), *c));
            out = out.add(&term);
        }
        out
    }

    pub fn subst(&self, v: Var, g: &BoolExpr) -> PhasePoly {
        self.subst_many(&HashMap::from([(v, g.clone())]))
    }

    pub fn rename(&self, map: &HashMap<Var, Var>) -> PhasePoly {
        let mut out = PhasePoly::zero();
        for (m, c) in &self.terms {
            let m = Monomial::from_vars(m.vars().iter().map(|v| *map.get(v).unwrap_or(v)));
            out.add_term(m, *c);
        }
        out
    }

    pub fn eval(&self, val: &impl Valuation) -> Result<u8> {
        let mut acc = 0u8;
        for (m, c) in &self.terms {
            if m.eval(val)? {
                acc = (acc + c) % 8;
            }
        }
        Ok(acc)
    }

    /// When every coefficient is 0 or 4, the Boolean `Q` with
    /// `self = 4·Q̄`.
    pub fn as_sign_bool(&self) -> Option<BoolExpr> {
        if self.terms.values().all(|&c| c == 4) {
            Some(BoolExpr::from_monomials(self.terms.keys().cloned()))
        } else {
            None
        }
    }

    /// `Π_m (ω^{c_m})^m`.
    pub fn to_rexpr(&self, ring: RingSpec) -> Result<RExpr> {
        let terms: Vec<(u32, Monomial)> =
            self.terms.iter().map(|(m, c)| (u32::from(*c), m.clone())).collect();
        // Use the smallest root order that covers the coefficients.
        let k = if terms.iter().all(|(c, _)| c % 4 == 0) {
            1
        } else if terms.iter().all(|(c, _)| c % 2 == 0) {
            2
        } else {
            3
        };
        let shift = 3 - k;
        let scaled: Vec<(u32, Monomial)> =
            terms.into_iter().map(|(c, m)| (c >> shift, m)).collect();
        phase_to_amplitude(ring, &scaled, k)
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolexpr::BitValuation;

    fn x(i: u32) -> BoolExpr {
        BoolExpr::var(Var(i))
    }

    #[test]
    fn lift_is_indicator() {
        let ring = RingSpec::Int;
        let f = x(0).and(&x(1)).xor(&x(2));
        let r = lift(ring, &f);
        let vars = [Var(0), Var(1), Var(2)];
        let mut val = BitValuation::new(&vars);
        for bits in 0..8 {
            val.set_bits(bits);
            let want = ring.from_i64(i64::from(f.eval(&val).unwrap()));
            assert_eq!(r.eval(&val).unwrap(), want);
        }
        assert!(lift(ring, &BoolExpr::zero()).eval(&val).unwrap().is_zero());
    }

    #[test]
    fn lifted_phase_matches_boolean_value() {
        let f = x(0).xor(&x(1)).xor(&x(0).and(&x(2))).xor(&BoolExpr::one());
        let p = PhasePoly::lifted(&f, 3);
        let vars = [Var(0), Var(1), Var(2)];
        let mut val = BitValuation::new(&vars);
        for bits in 0..8 {
            val.set_bits(bits);
            let want = if f.eval(&val).unwrap() { 3 } else { 0 };
            assert_eq!(p.eval(&val).unwrap(), want);
        }
    }

    #[test]
    fn phase_amplitude_examples() {
        let ring = RingSpec::Dyadic8;
        let y = Monomial::var(Var(0));
        let t = phase_to_amplitude(ring, &[(1, y.clone())], 3).unwrap();
        let val = [(Var(0), true)];
        assert_eq!(t.eval(&val[..]).unwrap(), ring.omega().unwrap());
        let one = phase_to_amplitude(ring, &[], 3).unwrap();
        assert!(one.eval(&val[..]).unwrap().is_one());
        let xy = Monomial::from_vars([Var(0), Var(1)]);
        let cz = phase_to_amplitude(ring, &[(1, xy)], 1).unwrap();
        for bits in 0..4u64 {
            let val = [(Var(0), bits & 2 != 0), (Var(1), bits & 1 != 0)];
            let want = if bits == 3 { -1 } else { 1 };
            assert_eq!(cz.eval(&val[..]).unwrap(), ring.from_i64(want));
        }
        assert!(phase_to_amplitude(RingSpec::Rational, &[(1, y)], 3).is_err());
    }

    #[test]
    fn substitution_lifts() {
        let p = PhasePoly::term(Monomial::var(Var(0)), 1);
        let g = x(1).xor(&BoolExpr::one());
        let q = p.subst(Var(0), &g);
        assert_eq!(q.constant_term(), 1);
        assert_eq!(q.coeff(&Monomial::var(Var(1))), 7);
    }
}
