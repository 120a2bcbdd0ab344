//! Equivalence of operators by comparing normal forms of their states.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pathsum::{to_state, Context, PathSum};
use crate::rexpr::Theory;
use crate::rings::RingElem;
use crate::theories::normalize::{normalize_field_traced, normalize_ring_traced, NormalForm};
use crate::theories::rules::RewriteStep;
use crate::theories::strategy::{reduce_rewrite_first, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub theory: Theory,
    pub strategy: Strategy,
    pub max_table_bits: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { theory: Theory::Ring, strategy: Strategy::Cliff, max_table_bits: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Equal,
    /// First differing entry, indexed by input bits then output bits.
    NotEqual { index: usize, left: RingElem, right: RingElem },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub verdict: Verdict,
    pub left: NormalForm,
    pub right: NormalForm,
    pub trace: Vec<RewriteStep>,
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }
}

/// Normal form of the state of `ps`: optional rewrite-first reduction, then
/// the ring or field procedure.
pub fn normal_form(ps: &PathSum, config: &Config, trace: &mut Vec<RewriteStep>) -> Result<NormalForm> {
    let state = to_state(ps);
    let mut ctx = Context::new(ps.ring);
    let reduced = reduce_rewrite_first(&mut ctx, &state, config.strategy, trace)?;
    match config.theory {
        Theory::Ring => normalize_ring_traced(&reduced, config.max_table_bits, trace),
        Theory::Field => normalize_field_traced(&reduced, config.max_table_bits, trace),
    }
}

/// Decides whether two operators are equal as matrices.
pub fn equivalent(psi: &PathSum, phi: &PathSum, config: &Config) -> Result<Equivalence> {
    if psi.ring != phi.ring {
        return Err(Error::RingMismatch { left: psi.ring.name(), right: phi.ring.name() });
    }
    if psi.n_inputs() != phi.n_inputs() {
        return Err(Error::ArityMismatch { expected: psi.n_inputs(), found: phi.n_inputs() });
    }
    if psi.n_outputs() != phi.n_outputs() {
        return Err(Error::ArityMismatch { expected: psi.n_outputs(), found: phi.n_outputs() });
    }
    let mut trace = Vec::new();
    let left = normal_form(psi, config, &mut trace)?;
    let right = normal_form(phi, config, &mut trace)?;
    let verdict = match left.entries.iter().zip(&right.entries).position(|(a, b)| a != b) {
        None => Verdict::Equal,
        Some(index) => Verdict::NotEqual {
            index,
            left: left.entries[index].clone(),
            right: right.entries[index].clone(),
        },
    };
    Ok(Equivalence { verdict, left, right, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathsum::{compose, gates};
    use crate::rings::RingSpec;

    #[test]
    fn hh_is_identity() {
        let ring = RingSpec::Dyadic8;
        let mut ctx = Context::new(ring);
        let (a, b) = (gates::h(&mut ctx).unwrap(), gates::h(&mut ctx).unwrap());
        let hh = compose(&mut ctx, &a, &b).unwrap();
        let id = PathSum::identity(&mut ctx, 1);
        for strategy in [Strategy::None, Strategy::Cliff, Strategy::CliffTh] {
            let cfg = Config { strategy, ..Config::default() };
            assert!(equivalent(&hh, &id, &cfg).unwrap().is_equal());
        }
    }

    #[test]
    fn tx_differs_from_xt() {
        let ring = RingSpec::Dyadic8;
        let mut ctx = Context::new(ring);
        let (t1, x1) = (gates::t(&mut ctx).unwrap(), gates::x(&mut ctx));
        let (t2, x2) = (gates::t(&mut ctx).unwrap(), gates::x(&mut ctx));
        let tx = compose(&mut ctx, &t1, &x1).unwrap();
        let xt = compose(&mut ctx, &x2, &t2).unwrap();
        let eq = equivalent(&tx, &xt, &Config::default()).unwrap();
        assert_eq!(
            eq.verdict,
            Verdict::NotEqual { index: 0b01, left: ring.omega().unwrap(), right: ring.one() }
        );
    }

    #[test]
    fn controlled_h_encodings_agree() {
        for ring in [RingSpec::Dyadic8, RingSpec::Cyclo8] {
            let mut ctx = Context::new(ring);
            let a = gates::ch(&mut ctx).unwrap();
            let b = gates::ch_balanced(&mut ctx).unwrap();
            assert!(equivalent(&a, &b, &Config::default()).unwrap().is_equal());
            if ring.is_field() {
                let cfg = Config { theory: Theory::Field, ..Config::default() };
                assert!(equivalent(&a, &b, &cfg).unwrap().is_equal());
            }
        }
    }

    #[test]
    fn arity_mismatch() {
        let ring = RingSpec::Int;
        let mut ctx = Context::new(ring);
        let one = PathSum::identity(&mut ctx, 1);
        let two = PathSum::identity(&mut ctx, 2);
        assert!(matches!(equivalent(&one, &two, &Config::default()), Err(Error::ArityMismatch { .. })));
    }
}
