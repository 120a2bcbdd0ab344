//! Amplitude expressions: constants, Boolean powers, products and sums.
//!
//! An expression is *multiplicative* when it contains no [`RExpr::Add`] node;
//! the field theory only accepts those.

mod normalize;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::boolexpr::{eval_masks, BitValuation, BoolExpr, Valuation, Var};
use crate::error::{Error, Result};
use crate::rings::{RingElem, RingSpec};

pub use normalize::{normalize_rexpr, table_to_rexpr, NormalTable, Theory};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RExpr {
    Const(RingElem),
    Pow(Box<RExpr>, BoolExpr),
    Mul(Vec<RExpr>),
    Add(Vec<RExpr>),
}

impl RExpr {
    pub fn constant(c: RingElem) -> Self {
        RExpr::Const(c)
    }

    pub fn one(ring: RingSpec) -> Self {
        RExpr::Const(ring.one())
    }

    /// `base^exp`; an exponent of 1 returns the base itself.
    pub fn pow(base: RExpr, exp: BoolExpr) -> Self {
        if exp.is_one() {
            base
        } else {
            RExpr::Pow(Box::new(base), exp)
        }
    }

    /// Flattened product; unit constants are dropped and an empty product is
    /// the ring's 1.
    pub fn product(ring: RingSpec, factors: impl IntoIterator<Item = RExpr>) -> Self {
        let mut out = Vec::new();
        for f in factors {
            match f {
                RExpr::Mul(inner) => out.extend(inner),
                RExpr::Const(c) if c.is_one() => {}
                other => out.push(other),
            }
        }
        match out.len() {
            0 => RExpr::one(ring),
            1 => out.pop().expect("one factor"),
            _ => RExpr::Mul(out),
        }
    }

    pub fn sum(terms: impl IntoIterator<Item = RExpr>) -> Self {
        let mut out = Vec::new();
        for t in terms {
            match t {
                RExpr::Add(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        if out.len() == 1 {
            out.pop().expect("one term")
        } else {
            RExpr::Add(out)
        }
    }

    pub fn mul(self, ring: RingSpec, other: RExpr) -> Self {
        RExpr::product(ring, [self, other])
    }

    pub fn is_multiplicative(&self) -> bool {
        match self {
            RExpr::Const(_) => true,
            RExpr::Pow(b, _) => b.is_multiplicative(),
            RExpr::Mul(fs) => fs.iter().all(RExpr::is_multiplicative),
            RExpr::Add(_) => false,
        }
    }

    /// Ring of the first constant found; `None` only for degenerate empty
    /// products or sums.
    pub fn ring(&self) -> Option<RingSpec> {
        match self {
            RExpr::Const(c) => Some(c.ring()),
            RExpr::Pow(b, _) => b.ring(),
            RExpr::Mul(xs) | RExpr::Add(xs) => xs.iter().find_map(RExpr::ring),
        }
    }

    /// Checks that every constant lives in `ring`.
    pub fn check_ring(&self, ring: RingSpec) -> Result<()> {
        match self {
            RExpr::Const(c) if c.ring() != ring => {
                Err(Error::RingMismatch { left: ring.name(), right: c.ring().name() })
            }
            RExpr::Const(_) => Ok(()),
            RExpr::Pow(b, _) => b.check_ring(ring),
            RExpr::Mul(xs) | RExpr::Add(xs) => xs.iter().try_for_each(|x| x.check_ring(ring)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            RExpr::Const(_) => {}
            RExpr::Pow(b, e) => {
                b.collect_vars(out);
                out.extend(e.vars());
            }
            RExpr::Mul(xs) | RExpr::Add(xs) => xs.iter().for_each(|x| x.collect_vars(out)),
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match self {
            RExpr::Const(_) => false,
            RExpr::Pow(b, e) => e.contains_var(v) || b.contains_var(v),
            RExpr::Mul(xs) | RExpr::Add(xs) => xs.iter().any(|x| x.contains_var(v)),
        }
    }

    /// Node count plus exponent monomials.
    pub fn size(&self) -> usize {
        match self {
            RExpr::Const(_) => 1,
            RExpr::Pow(b, e) => 1 + b.size() + e.num_monomials(),
            RExpr::Mul(xs) | RExpr::Add(xs) => 1 + xs.iter().map(RExpr::size).sum::<usize>(),
        }
    }

    /// Evaluates with the convention `0⁰ = 1`.
    pub fn eval(&self, val: &(impl Valuation + ?Sized)) -> Result<RingElem> {
        match self {
            RExpr::Const(c) => Ok(c.clone()),
            RExpr::Pow(b, e) => {
                let base = b.eval(val)?;
                if eval_bool(e, val)? {
                    Ok(base)
                } else {
                    Ok(base.ring().one())
                }
            }
            RExpr::Mul(xs) => {
                let mut it = xs.iter();
                let mut acc = it.next().ok_or_else(|| Error::IllFormed("empty product".into()))?.eval(val)?;
                for x in it {
                    acc = acc.checked_mul(&x.eval(val)?)?;
                }
                Ok(acc)
            }
            RExpr::Add(xs) => {
                let mut it = xs.iter();
                let mut acc = it.next().ok_or_else(|| Error::IllFormed("empty sum".into()))?.eval(val)?;
                for x in it {
                    acc = acc.checked_add(&x.eval(val)?)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn subst(&self, x: Var, g: &BoolExpr) -> RExpr {
        self.map_exponents(&|e| e.subst(x, g))
    }

    pub fn subst_many(&self, map: &HashMap<Var, BoolExpr>) -> RExpr {
        if map.is_empty() {
            return self.clone();
        }
        self.map_exponents(&|e| e.subst_many(map))
    }

    pub fn rename(&self, map: &HashMap<Var, Var>) -> RExpr {
        self.map_exponents(&|e| e.rename(map))
    }

    fn map_exponents(&self, f: &dyn Fn(&BoolExpr) -> BoolExpr) -> RExpr {
        match self {
            RExpr::Const(c) => RExpr::Const(c.clone()),
            RExpr::Pow(b, e) => RExpr::Pow(Box::new(b.map_exponents(f)), f(e)),
            RExpr::Mul(xs) => RExpr::Mul(xs.iter().map(|x| x.map_exponents(f)).collect()),
            RExpr::Add(xs) => RExpr::Add(xs.iter().map(|x| x.map_exponents(f)).collect()),
        }
    }

    /// Precomputes exponent bit masks over `layout` for repeated evaluation.
    pub fn compile(&self, layout: &BitValuation) -> Result<Compiled> {
        Ok(match self {
            RExpr::Const(c) => Compiled::Const(c.clone()),
            RExpr::Pow(b, e) => {
                let masks = e.to_masks(layout).ok_or_else(|| {
                    let v = e.vars().into_iter().find(|v| layout.mask_of(*v).is_none());
                    Error::UnassignedVariable(v.expect("some variable is missing"))
                })?;
                Compiled::Pow(Box::new(b.compile(layout)?), masks)
            }
            RExpr::Mul(xs) => Compiled::Mul(xs.iter().map(|x| x.compile(layout)).collect::<Result<_>>()?),
            RExpr::Add(xs) => Compiled::Add(xs.iter().map(|x| x.compile(layout)).collect::<Result<_>>()?),
        })
    }
}

fn eval_bool(e: &BoolExpr, val: &(impl Valuation + ?Sized)) -> Result<bool> {
    let mut acc = false;
    for m in e.monomials() {
        let mut all = true;
        for &v in m.vars() {
            if !val.value(v).ok_or(Error::UnassignedVariable(v))? {
                all = false;
                break;
            }
        }
        acc ^= all;
    }
    Ok(acc)
}

/// An [`RExpr`] with exponents lowered to bit masks.
#[derive(Debug, Clone)]
pub enum Compiled {
    Const(RingElem),
    Pow(Box<Compiled>, Vec<u64>),
    Mul(Vec<Compiled>),
    Add(Vec<Compiled>),
}

impl Compiled {
    pub fn eval(&self, ring: RingSpec, bits: u64) -> RingElem {
        match self {
            Compiled::Const(c) => c.clone(),
            Compiled::Pow(b, masks) => {
                if eval_masks(masks, bits) {
                    b.eval(ring, bits)
                } else {
                    ring.one()
                }
            }
            Compiled::Mul(xs) => {
                let mut acc = ring.one();
                for x in xs {
                    let v = x.eval(ring, bits);
                    if v.is_zero() {
                        return v;
                    }
                    acc = &acc * &v;
                }
                acc
            }
            Compiled::Add(xs) => {
                let mut acc = ring.zero();
                for x in xs {
                    acc = &acc + &x.eval(ring, bits);
                }
                acc
            }
        }
    }
}

impl fmt::Display for RExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RExpr::Const(c) => write!(f, "[{c}]"),
            RExpr::Pow(b, e) => write!(f, "{b}^{{{e}}}"),
            RExpr::Mul(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            RExpr::Add(xs) => {
                f.write_str("(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> BoolExpr {
        BoolExpr::var(Var(i))
    }

    #[test]
    fn zero_to_zero_is_one() {
        let r = RExpr::pow(RExpr::Const(RingSpec::Int.zero()), x(0).negate());
        assert!(r.eval(&[(Var(0), false)][..]).unwrap().is_zero());
        assert!(r.eval(&[(Var(0), true)][..]).unwrap().is_one());
    }

    #[test]
    fn controlled_hadamard_amplitude() {
        let ring = RingSpec::Dyadic8;
        let r = RExpr::product(
            ring,
            [
                RExpr::pow(RExpr::Const(ring.inv_sqrt2().unwrap()), x(1)),
                RExpr::pow(RExpr::Const(ring.from_i64(-1)), BoolExpr::product([Var(1), Var(2), Var(3)])),
            ],
        );
        let val = [(Var(1), true), (Var(2), true), (Var(3), true)];
        assert_eq!(r.eval(&val[..]).unwrap(), -ring.inv_sqrt2().unwrap());
    }

    #[test]
    fn substitution_in_exponents() {
        let ring = RingSpec::Dyadic8;
        let w = ring.omega().unwrap();
        let r = RExpr::pow(RExpr::Const(w.clone()), x(1));
        let s = r.subst(Var(1), &x(0).negate());
        assert!(s.eval(&[(Var(0), true)][..]).unwrap().is_one());
        assert_eq!(s.eval(&[(Var(0), false)][..]).unwrap(), w);
        let c = RExpr::Const(w);
        assert_eq!(c.subst(Var(0), &x(1)), c);
    }

    #[test]
    fn product_flattens() {
        let ring = RingSpec::Int;
        let a = RExpr::pow(RExpr::Const(ring.from_i64(2)), x(0));
        let p = RExpr::product(ring, [a.clone(), RExpr::one(ring), RExpr::product(ring, [a.clone(), a.clone()])]);
        assert!(matches!(&p, RExpr::Mul(xs) if xs.len() == 3));
        assert!(p.is_multiplicative());
        assert!(!RExpr::sum([a.clone(), a]).is_multiplicative());
        assert_eq!(RExpr::product(ring, []), RExpr::one(ring));
    }

    #[test]
    fn compiled_matches_eval() {
        let ring = RingSpec::Rational;
        let r = RExpr::sum([
            RExpr::pow(RExpr::Const(ring.from_i64(3)), x(0).and(&x(2))),
            RExpr::product(ring, [
                RExpr::pow(RExpr::Const(ring.from_i64(5)), x(1).negate()),
                RExpr::Const(ring.from_i64(-2)),
            ]),
        ]);
        let vars = [Var(0), Var(1), Var(2)];
        let mut layout = BitValuation::new(&vars);
        let c = r.compile(&layout).unwrap();
        for bits in 0..8 {
            layout.set_bits(bits);
            assert_eq!(c.eval(ring, bits), r.eval(&layout).unwrap());
        }
        assert!(r.compile(&BitValuation::new(&vars[..2])).is_err());
    }
}
