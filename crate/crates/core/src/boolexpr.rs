//! Multilinear Boolean polynomials over Z2 in algebraic normal form.
//!
//! A [`BoolExpr`] is stored as a set of monomials, each monomial a sorted set
//! of variables. XOR is symmetric difference, AND distributes and collapses
//! repeated variables. Every equation of a commutative Boolean ring therefore
//! holds structurally: two expressions denote the same function exactly when
//! they compare equal.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{BitAnd, BitXor, Not};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An interned Boolean variable.
///
/// Whether a variable is free or bound is a property of the enclosing
/// [`PathSum`](crate::pathsum::PathSum), not of the variable itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var(pub u32);

impl Var {
    pub fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A product of distinct variables. The empty monomial is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<Var>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![v])
    }

    pub fn from_vars(vars: impl IntoIterator<Item = Var>) -> Self {
        let mut v: Vec<Var> = vars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Monomial(v)
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Product of monomials: the union of their variables (x·x = x).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// The monomial with `v` removed.
    pub fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    pub fn eval(&self, val: &impl Valuation) -> Result<bool> {
        for &v in &self.0 {
            if !val.value(v).ok_or(Error::UnassignedVariable(v))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Source of variable values for evaluation.
pub trait Valuation {
    fn value(&self, v: Var) -> Option<bool>;
}

impl Valuation for HashMap<Var, bool> {
    fn value(&self, v: Var) -> Option<bool> {
        self.get(&v).copied()
    }
}

impl Valuation for BTreeMap<Var, bool> {
    fn value(&self, v: Var) -> Option<bool> {
        self.get(&v).copied()
    }
}

impl Valuation for [(Var, bool)] {
    fn value(&self, v: Var) -> Option<bool> {
        self.iter().find(|(w, _)| *w == v).map(|&(_, b)| b)
    }
}

/// Assignment of an ordered variable list from the bits of an integer.
///
/// `vars[0]` is the most significant bit, matching the table layout used for
/// normal forms.
#[derive(Debug, Clone)]
pub struct BitValuation {
    index: HashMap<Var, usize>,
    width: usize,
    bits: u64,
}

impl BitValuation {
    pub fn new(vars: &[Var]) -> Self {
        assert!(vars.len() <= 64, "at most 64 variables per valuation");
        let index = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        BitValuation { index, width: vars.len(), bits: 0 }
    }

    pub fn set_bits(&mut self, bits: u64) {
        self.bits = bits;
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Mask of `v` inside the bit layout, if `v` is part of it.
    pub fn mask_of(&self, v: Var) -> Option<u64> {
        self.index.get(&v).map(|&i| 1u64 << (self.width - 1 - i))
    }
}

impl Valuation for BitValuation {
    fn value(&self, v: Var) -> Option<bool> {
        self.mask_of(v).map(|m| self.bits & m != 0)
    }
}

/// Canonical ANF Boolean expression.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BoolExpr {
    monos: BTreeSet<Monomial>,
}

impl BoolExpr {
    pub fn zero() -> Self {
        BoolExpr::default()
    }

    pub fn one() -> Self {
        BoolExpr::from_monomial(Monomial::one())
    }

    pub fn constant(b: bool) -> Self {
        if b {
            BoolExpr::one()
        } else {
            BoolExpr::zero()
        }
    }

    pub fn var(v: Var) -> Self {
        BoolExpr::from_monomial(Monomial::var(v))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut monos = BTreeSet::new();
        monos.insert(m);
        BoolExpr { monos }
    }

    /// XOR of the given monomials; duplicates cancel in pairs.
    pub fn from_monomials(ms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut out = BoolExpr::zero();
        for m in ms {
            out.toggle(m);
        }
        out
    }

    /// Product of the given variables.
    pub fn product(vars: impl IntoIterator<Item = Var>) -> Self {
        BoolExpr::from_monomial(Monomial::from_vars(vars))
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.monos.remove(&m) {
            self.monos.insert(m);
        }
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.monos.iter()
    }

    pub fn num_monomials(&self) -> usize {
        self.monos.len()
    }

    pub fn is_zero(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monos.len() == 1 && self.monos.contains(&Monomial::one())
    }

    pub fn as_constant(&self) -> Option<bool> {
        if self.is_zero() {
            Some(false)
        } else if self.is_one() {
            Some(true)
        } else {
            None
        }
    }

    /// The single variable this expression consists of, if any.
    pub fn as_var(&self) -> Option<Var> {
        match self.monos.iter().next() {
            Some(m) if self.monos.len() == 1 && m.degree() == 1 => Some(m.vars()[0]),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.monos.len() == 1 {
            self.monos.iter().next()
        } else {
            None
        }
    }

    pub fn xor(&self, other: &BoolExpr) -> BoolExpr {
        let monos = self.monos.symmetric_difference(&other.monos).cloned().collect();
        BoolExpr { monos }
    }

    pub fn and(&self, other: &BoolExpr) -> BoolExpr {
        let mut out = BoolExpr::zero();
        for a in &self.monos {
            for b in &other.monos {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn and_monomial(&self, m: &Monomial) -> BoolExpr {
        BoolExpr::from_monomials(self.monos.iter().map(|a| a.mul(m)))
    }

    pub fn negate(&self) -> BoolExpr {
        self.xor(&BoolExpr::one())
    }

    /// Disjunction, expressed as `f ⊕ g ⊕ f·g`.
    pub fn or(&self, other: &BoolExpr) -> BoolExpr {
        self.xor(other).xor(&self.and(other))
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.monos.iter().any(|m| m.contains(v))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.monos.iter().flat_map(|m| m.vars().iter().copied()).collect()
    }

    pub fn degree(&self) -> usize {
        self.monos.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Splits `self` as `v·a ⊕ b` with `v` free in neither `a` nor `b`.
    pub fn split_on(&self, v: Var) -> (BoolExpr, BoolExpr) {
        let mut a = BTreeSet::new();
        let mut b = BTreeSet::new();
        for m in &self.monos {
            if m.contains(v) {
                a.insert(m.without(v));
            } else {
                b.insert(m.clone());
            }
        }
        (BoolExpr { monos: a }, BoolExpr { monos: b })
    }

    /// Replaces every occurrence of `x` by `g`.
    pub fn subst(&self, x: Var, g: &BoolExpr) -> BoolExpr {
        if !self.contains_var(x) {
            return self.clone();
        }
        let (coeff, rest) = self.split_on(x);
        coeff.and(g).xor(&rest)
    }

    /// Simultaneous substitution of every mapped variable.
    pub fn subst_many(&self, map: &HashMap<Var, BoolExpr>) -> BoolExpr {
        if !self.monos.iter().any(|m| m.vars().iter().any(|v| map.contains_key(v))) {
            return self.clone();
        }
        let mut out = BoolExpr::zero();
        for m in &self.monos {
            let mut term = BoolExpr::one();
            let mut kept = Vec::new();
            for &v in m.vars() {
                match map.get(&v) {
                    Some(g) => term = term.and(g),
                    None => kept.push(v),
                }
            }
            let term = term.and_monomial(&Monomial::from_vars(kept));
            out = out.xor(&term);
        }
        out
    }

    /// Renames variables; unmapped variables are left alone.
    pub fn rename(&self, map: &HashMap<Var, Var>) -> BoolExpr {
        BoolExpr::from_monomials(self.monos.iter().map(|m| {
            Monomial::from_vars(m.vars().iter().map(|v| *map.get(v).unwrap_or(v)))
        }))
    }

    pub fn eval(&self, val: &impl Valuation) -> Result<bool> {
        let mut acc = false;
        for m in &self.monos {
            acc ^= m.eval(val)?;
        }
        Ok(acc)
    }

    /// Monomials as bit masks over `layout`; `None` when a variable falls
    /// outside the layout.
    pub fn to_masks(&self, layout: &BitValuation) -> Option<Vec<u64>> {
        self.monos
            .iter()
            .map(|m| {
                m.vars().iter().try_fold(0u64, |acc, &v| layout.mask_of(v).map(|b| acc | b))
            })
            .collect()
    }
}

/// Evaluates a mask form produced by [`BoolExpr::to_masks`].
pub fn eval_masks(masks: &[u64], bits: u64) -> bool {
    masks.iter().fold(false, |acc, &m| acc ^ (bits & m == m))
}

impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monos.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.monos.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl From<Var> for BoolExpr {
    fn from(v: Var) -> Self {
        BoolExpr::var(v)
    }
}

impl From<bool> for BoolExpr {
    fn from(b: bool) -> Self {
        BoolExpr::constant(b)
    }
}

impl BitXor for &BoolExpr {
    type Output = BoolExpr;
    fn bitxor(self, rhs: &BoolExpr) -> BoolExpr {
        self.xor(rhs)
    }
}

impl BitXor for BoolExpr {
    type Output = BoolExpr;
    fn bitxor(self, rhs: BoolExpr) -> BoolExpr {
        self.xor(&rhs)
    }
}

impl BitAnd for &BoolExpr {
    type Output = BoolExpr;
    fn bitand(self, rhs: &BoolExpr) -> BoolExpr {
        self.and(rhs)
    }
}

impl BitAnd for BoolExpr {
    type Output = BoolExpr;
    fn bitand(self, rhs: BoolExpr) -> BoolExpr {
        self.and(&rhs)
    }
}

impl Not for &BoolExpr {
    type Output = BoolExpr;
    fn not(self) -> BoolExpr {
        self.negate()
    }
}

impl Not for BoolExpr {
    type Output = BoolExpr;
    fn not(self) -> BoolExpr {
        self.negate()
    }
}

/// Bitwise equality of two Boolean vectors: `Π (uᵢ ⊕ ¬vᵢ)`.
pub fn eq_indicator(u: &[BoolExpr], v: &[BoolExpr]) -> Result<BoolExpr> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { left: u.len(), right: v.len() });
    }
    Ok(u.iter()
        .zip(v)
        .fold(BoolExpr::one(), |acc, (a, b)| acc.and(&a.xor(&b.negate()))))
}

/// Indicator of `vars` taking the value encoded by `bits` (`vars[0]` is the
/// most significant bit).
pub fn point_indicator(bits: u64, vars: &[Var]) -> BoolExpr {
    let n = vars.len();
    let consts: Vec<BoolExpr> =
        (0..n).map(|i| BoolExpr::constant(bits >> (n - 1 - i) & 1 == 1)).collect();
    let vs: Vec<BoolExpr> = vars.iter().map(|&v| BoolExpr::var(v)).collect();
    eq_indicator(&consts, &vs).expect("equal lengths")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> BoolExpr {
        BoolExpr::var(Var(i))
    }

    #[test]
    fn xor_cancels() {
        assert_eq!(x(0).xor(&x(0)), BoolExpr::zero());
        let xy = x(0).and(&x(1));
        assert_eq!(xy.xor(&xy.xor(&x(2))), x(2));
    }

    #[test]
    fn and_is_idempotent_and_distributes() {
        assert_eq!(x(0).and(&x(0)), x(0));
        assert_eq!(x(0).negate().and(&x(0)), BoolExpr::zero());
        let lhs = x(0).xor(&x(1)).and(&x(2));
        let rhs = x(0).and(&x(2)).xor(&x(1).and(&x(2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn negation() {
        assert_eq!(BoolExpr::zero().negate(), BoolExpr::one());
        assert_eq!(x(0).negate().to_string(), "1 + x0");
        assert_eq!(x(3).negate().negate(), x(3));
    }

    #[test]
    fn substitution() {
        let y = Var(1);
        let g = x(0).xor(&BoolExpr::one());
        assert_eq!(BoolExpr::var(y).subst(y, &g), g);
        assert_eq!(x(0).and(&x(1)).subst(Var(0), &BoolExpr::zero()), BoolExpr::zero());
        let f = x(2).xor(&x(3));
        assert_eq!(f.subst(Var(9), &x(0)), f);
    }

    #[test]
    fn evaluation() {
        let f = x(0).and(&x(1)).xor(&BoolExpr::one());
        let val: HashMap<Var, bool> = [(Var(0), true), (Var(1), true)].into();
        assert!(!f.eval(&val).unwrap());
        assert!(!BoolExpr::zero().eval(&HashMap::new()).unwrap());
        assert_eq!(x(5).eval(&HashMap::new()), Err(Error::UnassignedVariable(Var(5))));
    }

    #[test]
    fn eq_indicator_examples() {
        let e = eq_indicator(&[x(0)], &[x(1)]).unwrap();
        assert_eq!(e, x(0).xor(&x(1)).xor(&BoolExpr::one()));
        let z = [BoolExpr::zero()];
        assert_eq!(eq_indicator(&z, &z).unwrap(), BoolExpr::one());
        assert!(eq_indicator(&[x(0)], &[]).is_err());
    }

    #[test]
    fn display_is_deterministic() {
        let f = x(1).and(&x(0)).xor(&BoolExpr::one());
        assert_eq!(f.to_string(), "1 + x0*x1");
    }

    #[test]
    fn masks_match_eval() {
        let vars = [Var(4), Var(7), Var(2)];
        let mut layout = BitValuation::new(&vars);
        let f = x(4).and(&x(2)).xor(&x(7)).xor(&BoolExpr::one());
        let masks = f.to_masks(&layout).unwrap();
        for bits in 0..8 {
            layout.set_bits(bits);
            assert_eq!(eval_masks(&masks, bits), f.eval(&layout).unwrap());
        }
    }
}
