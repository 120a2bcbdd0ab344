//! Factored view of an amplitude: scalar, phase polynomial, remaining
//! Boolean powers of constants, and opaque subterms.

use std::collections::HashMap;

use crate::boolexpr::{BoolExpr, Var};
use crate::error::Result;
use crate::rexpr::RExpr;
use crate::rings::{PhasePoly, RingElem, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmplitudeView {
    pub scalar: RingElem,
    /// Exponent of `ω`, read mod 8.
    pub phase: PhasePoly,
    /// `α^f` factors whose base is not a root of unity.
    pub others: Vec<(RingElem, BoolExpr)>,
    /// Subterms containing ring sums.
    pub opaque: Vec<RExpr>,
}

impl AmplitudeView {
    /// Distributes exponents through products and nested powers and sorts
    /// constant bases into phases and others.
    pub fn extract(ring: RingSpec, amp: &RExpr) -> AmplitudeView {
        let phases = ring.phase_table();
        let mut view = AmplitudeView {
            scalar: ring.one(),
            phase: PhasePoly::zero(),
            others: Vec::new(),
            opaque: Vec::new(),
        };
        view.walk(amp, &BoolExpr::one(), &phases);
        view
    }

    fn walk(&mut self, r: &RExpr, exp: &BoolExpr, phases: &[(u8, RingElem)]) {
        if exp.is_zero() {
            return;
        }
        match r {
            RExpr::Const(c) => {
                if exp.is_one() {
                    self.scalar = &self.scalar * c;
                } else if c.is_one() {
                } else if let Some((k, _)) = phases.iter().find(|(_, p)| p == c) {
                    self.phase = self.phase.add(&PhasePoly::lifted(exp, *k));
                } else {
                    self.others.push((c.clone(), exp.clone()));
                }
            }
            RExpr::Pow(b, f) => self.walk(b, &exp.and(f), phases),
            RExpr::Mul(xs) => xs.iter().for_each(|x| self.walk(x, exp, phases)),
            RExpr::Add(_) => {
                self.opaque.push(if exp.is_one() { r.clone() } else { RExpr::pow(r.clone(), exp.clone()) })
            }
        }
    }

    /// Whether `v` occurs outside the phase polynomial.
    pub fn var_outside_phase(&self, v: Var) -> bool {
        self.others.iter().any(|(_, e)| e.contains_var(v)) || self.opaque.iter().any(|r| r.contains_var(v))
    }

    pub fn subst_many(&self, map: &HashMap<Var, BoolExpr>) -> AmplitudeView {
        AmplitudeView {
            scalar: self.scalar.clone(),
            phase: self.phase.subst_many(map),
            others: self.others.iter().map(|(c, e)| (c.clone(), e.subst_many(map))).collect(),
            opaque: self.opaque.iter().map(|r| r.subst_many(map)).collect(),
        }
    }

    pub fn rename(&self, map: &HashMap<Var, Var>) -> AmplitudeView {
        AmplitudeView {
            scalar: self.scalar.clone(),
            phase: self.phase.rename(map),
            others: self.others.iter().map(|(c, e)| (c.clone(), e.rename(map))).collect(),
            opaque: self.opaque.iter().map(|r| r.rename(map)).collect(),
        }
    }

    /// Scalar with the constant phase term folded in.
    pub fn folded_scalar(&self, ring: RingSpec) -> Result<RingElem> {
        let c = self.phase.constant_term();
        Ok(&self.scalar * &ring.phase(c)?)
    }

    pub fn rebuild(&self, ring: RingSpec) -> Result<RExpr> {
        let scalar = self.folded_scalar(ring)?;
        if scalar.is_zero() {
            return Ok(RExpr::Const(scalar));
        }
        let mut factors = vec![RExpr::Const(scalar), self.phase.without_constant().to_rexpr(ring)?];
        for (c, e) in &self.others {
            if !e.is_zero() {
                factors.push(RExpr::pow(RExpr::Const(c.clone()), e.clone()));
            }
        }
        factors.extend(self.opaque.iter().cloned());
        Ok(RExpr::product(ring, factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolexpr::BitValuation;

    #[test]
    fn rebuild_preserves_values() {
        let ring = RingSpec::Dyadic8;
        let (a, b) = (Var(0), Var(1));
        let x = BoolExpr::var(a);
        let y = BoolExpr::var(b);
        let amp = RExpr::product(
            ring,
            [
                RExpr::Const(ring.inv_sqrt2().unwrap()),
                RExpr::pow(RExpr::Const(ring.omega().unwrap()), x.xor(&y)),
                RExpr::pow(
                    RExpr::product(ring, [RExpr::Const(ring.from_i64(-1)), RExpr::Const(ring.from_i64(3))]),
                    x.and(&y),
                ),
                RExpr::pow(RExpr::sum([RExpr::one(ring), RExpr::one(ring)]), y.clone()),
            ],
        );
        let view = AmplitudeView::extract(ring, &amp);
        assert_eq!(view.others.len(), 1);
        assert_eq!(view.opaque.len(), 1);
        assert!(view.var_outside_phase(b));
        let back = view.rebuild(ring).unwrap();
        let mut val = BitValuation::new(&[a, b]);
        for bits in 0..4 {
            val.set_bits(bits);
            assert_eq!(back.eval(&val).unwrap(), amp.eval(&val).unwrap());
        }
    }

    #[test]
    fn signs_without_omega() {
        let ring = RingSpec::Rational;
        let amp = RExpr::pow(RExpr::Const(ring.from_i64(-1)), BoolExpr::var(Var(0)));
        let view = AmplitudeView::extract(ring, &amp);
        assert!(view.others.is_empty());
        assert_eq!(view.phase.as_sign_bool(), Some(BoolExpr::var(Var(0))));
        assert_eq!(view.rebuild(ring).unwrap().eval(&[(Var(0), true)][..]).unwrap(), ring.from_i64(-1));
    }
}
