//! Rewrite-first reduction and the canonical form of reduced balanced sums.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::boolexpr::{BoolExpr, Var};
use crate::error::{Error, Result};
use crate::pathsum::{Context, PathSum};
use crate::rings::{PhasePoly, RingElem, RingSpec};
use crate::theories::factors::AmplitudeView;
use crate::theories::rules::{apply_rule, find_site, rule_available, RewriteStep, RuleId, Site};

/// Which rules the rewrite-first pass may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    None,
    /// E, H and ω.
    #[default]
    Cliff,
    /// E, H and ω, then Hgen, Hrel and Z.
    CliffTh,
}

impl Strategy {
    /// Rules in priority order.
    pub fn rules(self) -> &'static [RuleId] {
        match self {
            Strategy::None => &[],
            Strategy::Cliff => &[RuleId::E, RuleId::H, RuleId::Omega],
            Strategy::CliffTh => &[RuleId::E, RuleId::H, RuleId::Omega, RuleId::Hgen, RuleId::Hrel, RuleId::Z],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::None => "none",
            Strategy::Cliff => "cliff",
            Strategy::CliffTh => "cliff+th",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Strategy::None),
            "cliff" => Ok(Strategy::Cliff),
            "cliff+th" => Ok(Strategy::CliffTh),
            _ => Err(Error::Parse { line: 0, col: 0, msg: format!("unknown strategy `{s}`") }),
        }
    }
}

/// Applies the strategy's rules until none matches, always taking the
/// highest-priority rule at its first site.
pub fn reduce_rewrite_first(
    ctx: &mut Context,
    ps: &PathSum,
    strategy: Strategy,
    trace: &mut Vec<RewriteStep>,
) -> Result<PathSum> {
    ctx.reserve(ps);
    let mut cur = ps.clone();
    'outer: loop {
        for &rule in strategy.rules() {
            if rule_available(rule, cur.ring).is_err() {
                continue;
            }
            if let Some(site) = find_site(rule, &cur) {
                let next = apply_rule(ctx, rule, &cur, &site)?;
                trace.push(RewriteStep::new(rule, site, &cur, &next));
                cur = next;
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}

/// A reduced balanced sum with every bound variable pinned to an output and
/// variables renamed canonically: inputs first, then bound variables in
/// output order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedForm {
    #[serde(serialize_with = "ser_ring")]
    pub ring: RingSpec,
    pub n_inputs: usize,
    pub n_bound: usize,
    pub scalar: RingElem,
    #[serde(serialize_with = "ser_display")]
    pub phase: PhasePoly,
    #[serde(serialize_with = "ser_outputs")]
    pub outputs: Vec<BoolExpr>,
}

fn ser_ring<S: serde::Serializer>(r: &RingSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.name())
}

fn ser_display<S: serde::Serializer>(p: &PhasePoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn ser_outputs<S: serde::Serializer>(o: &[BoolExpr], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(o.iter().map(ToString::to_string))
}

impl fmt::Display for BalancedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outs: Vec<String> = self.outputs.iter().map(ToString::to_string).collect();
        write!(f, "{} · Σ[{}] ω^({}) |{}⟩", self.scalar, self.n_bound, self.phase, outs.join(", "))
    }
}

/// Makes each output that holds a fresh bound variable linearly equal to it.
fn pivot_outputs(
    ctx: &mut Context,
    ps: &PathSum,
    trace: &mut Vec<RewriteStep>,
) -> Result<(PathSum, Vec<Var>, bool)> {
    let mut cur = ps.clone();
    let mut pivots = Vec::new();
    let mut changed = false;
    for j in 0..cur.outputs.len() {
        let found = cur.bound.iter().copied().find(|&y| {
            !pivots.contains(&y) && cur.outputs[j].split_on(y).0.is_one()
        });
        let Some(y) = found else { continue };
        let rest = cur.outputs[j].split_on(y).1;
        if !rest.is_zero() {
            let site = Site::with_expr(&[y], rest);
            let next = apply_rule(ctx, RuleId::VarChange, &cur, &site)?;
            trace.push(RewriteStep::new(RuleId::VarChange, site, &cur, &next).with_note("pivot"));
            cur = next;
            changed = true;
        }
        pivots.push(y);
    }
    Ok((cur, pivots, changed))
}

/// Reduces with `strategy`, pivots outputs by variable changes, and repeats
/// until stable. `None` when some bound variable is left unpinned or the
/// amplitude is not a pure phase.
pub fn canonical_balanced_form(
    ctx: &mut Context,
    ps: &PathSum,
    strategy: Strategy,
    trace: &mut Vec<RewriteStep>,
) -> Result<Option<BalancedForm>> {
    let mut cur = reduce_rewrite_first(ctx, ps, strategy, trace)?;
    let pivots = loop {
        let (next, pivots, changed) = pivot_outputs(ctx, &cur, trace)?;
        if !changed {
            break pivots;
        }
        let before = trace.len();
        cur = reduce_rewrite_first(ctx, &next, strategy, trace)?;
        if trace.len() == before {
            break pivots;
        }
    };
    if pivots.len() != cur.bound.len() {
        return Ok(None);
    }
    let view = AmplitudeView::extract(cur.ring, &cur.amplitude);
    if !view.others.is_empty() || !view.opaque.is_empty() {
        return Ok(None);
    }
    let n = cur.inputs.len() as u32;
    let map: HashMap<Var, Var> = cur
        .inputs
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, Var(i as u32)))
        .chain(pivots.iter().enumerate().map(|(k, &y)| (y, Var(n + k as u32))))
        .collect();
    Ok(Some(BalancedForm {
        ring: cur.ring,
        n_inputs: cur.inputs.len(),
        n_bound: pivots.len(),
        scalar: view.folded_scalar(cur.ring)?,
        phase: view.phase.without_constant().rename(&map),
        outputs: cur.outputs.iter().map(|o| o.rename(&map)).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dense_matrix;
    use crate::pathsum::{build_circuit, compose, gates, parse_circuit};

    fn reduce(ps: &PathSum, ctx: &mut Context) -> (PathSum, Vec<RewriteStep>) {
        let mut trace = Vec::new();
        let out = reduce_rewrite_first(ctx, ps, Strategy::Cliff, &mut trace).unwrap();
        (out, trace)
    }

    #[test]
    fn hh_is_one_h_step() {
        let ring = RingSpec::Dyadic8;
        let mut ctx = Context::new(ring);
        let (a, b) = (gates::h(&mut ctx).unwrap(), gates::h(&mut ctx).unwrap());
        let hh = compose(&mut ctx, &a, &b).unwrap();
        let (out, trace) = reduce(&hh, &mut ctx);
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].rule, RuleId::H);
        assert_eq!(trace[0].bound_before, 2);
        assert_eq!(trace[0].bound_after, 0);
        assert_eq!(dense_matrix(&out, 22).unwrap(), dense_matrix(&PathSum::identity(&mut ctx, 1), 22).unwrap());
    }

    #[test]
    fn reduced_sum_is_a_fixpoint() {
        let ring = RingSpec::Dyadic8;
        let mut ctx = Context::new(ring);
        let h = gates::h(&mut ctx).unwrap();
        let (out, trace) = reduce(&h, &mut ctx);
        assert!(trace.is_empty());
        assert_eq!(out, h);
    }

    #[test]
    fn controlled_h_at_zero_control_is_one_omega() {
        let ring = RingSpec::Dyadic8;
        let mut ctx = Context::new(ring);
        let ch = gates::ch_balanced(&mut ctx).unwrap();
        let zero = std::collections::HashMap::from([(ch.inputs[0], BoolExpr::zero())]);
        let ps = PathSum {
            ring,
            inputs: vec![ch.inputs[1]],
            bound: ch.bound.clone(),
            amplitude: ch.amplitude.subst_many(&zero),
            outputs: ch.outputs.iter().map(|o| o.subst_many(&zero)).collect(),
        };
        let (out, trace) = reduce(&ps, &mut ctx);
        assert_eq!(trace.iter().map(|s| s.rule).collect::<Vec<_>>(), vec![RuleId::Omega]);
        assert_eq!(out.amplitude, crate::rexpr::RExpr::one(ring));
        assert_eq!(out.outputs, vec![BoolExpr::zero(), BoolExpr::var(ps.inputs[0])]);
    }

    fn form(text: &str) -> BalancedForm {
        let ring = RingSpec::Dyadic8;
        let c = parse_circuit(text, ring).unwrap();
        let mut ctx = Context::new(ring);
        let ps = build_circuit(&mut ctx, &c).unwrap();
        canonical_balanced_form(&mut ctx, &ps, Strategy::Cliff, &mut Vec::new()).unwrap().unwrap()
    }

    #[test]
    fn padded_clifford_circuits_agree() {
        let base = "QUBITS 2\nH 0\nS 1\nCX 0 1\nH 1\n";
        let padded = "QUBITS 2\nH 0\nH 1\nH 1\nS 1\nCX 0 1\nS 0\nS 0\nS 0\nS 0\nCX 1 0\nCX 1 0\nH 1\n";
        assert_eq!(form(base), form(padded));
        assert_ne!(form(base), form("QUBITS 2\nH 0\nCX 0 1\nH 1\n"));
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in [Strategy::None, Strategy::Cliff, Strategy::CliffTh] {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
    }
}
