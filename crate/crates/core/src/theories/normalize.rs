//! Normal forms of closed sums: the ring procedure (fresh outputs, sum
//! rule, table normalization) and the field procedure (fresh outputs, table
//! normalization, then ortho and average per internal variable).

use std::fmt;

use serde::Serialize;

use crate::boolexpr::{point_indicator, BoolExpr, Var};
use crate::error::{Error, Result};
use crate::pathsum::{Context, PathSum};
use crate::rexpr::{normalize_rexpr, NormalTable, RExpr, Theory};
use crate::rings::{RingElem, RingSpec};
use crate::theories::rules::{apply_rule, RewriteStep, RuleId, Site};

/// The amplitude of every basis vector of a closed sum; the first output is
/// the most significant index bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub ring: RingSpec,
    pub bits: usize,
    pub entries: Vec<RingElem>,
}

impl NormalForm {
    pub fn label(&self, index: usize) -> String {
        (0..self.bits).map(|b| if index >> (self.bits - 1 - b) & 1 == 1 { '1' } else { '0' }).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ring": self.ring.name(),
            "bits": self.bits,
            "entries": self.entries.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }

    /// The normal-form sum `Σ_{z⃗} Π α_v^{v = z⃗} |z⃗⟩`.
    pub fn to_pathsum(&self, ctx: &mut Context) -> PathSum {
        let zs = ctx.fresh_n(self.bits);
        let table = NormalTable { vars: zs.clone(), entries: self.entries.clone() };
        PathSum {
            ring: self.ring,
            inputs: vec![],
            bound: zs.clone(),
            amplitude: crate::rexpr::table_to_rexpr(self.ring, &table),
            outputs: zs.into_iter().map(BoolExpr::var).collect(),
        }
    }
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Nonzero entries only, one per line.
impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if !e.is_zero() {
                writeln!(f, "|{}⟩ {}", self.label(i), e)?;
            }
        }
        Ok(())
    }
}

/// Replaces every output `fᵢ` by a fresh bound `zᵢ`. With `½` available this
/// is the interference rule read backwards,
/// `|Ψ(f)⟩ = ½ Σ_{z,w} (−1)^{w(z⊕f)} |Ψ(z)⟩`; otherwise the indicator
/// `Σ_z 0^{z⊕f} |Ψ(z)⟩`. An output that is already a bound variable not
/// taken by an earlier output is kept as it is. Returns the new sum, the
/// output variables and the added internal variables.
fn fresh_outputs(
    ctx: &mut Context,
    ps: &PathSum,
    trace: &mut Vec<RewriteStep>,
) -> Result<(PathSum, Vec<Var>, Vec<Var>)> {
    let ring = ps.ring;
    ctx.reserve(ps);
    let half = ring.half().ok();
    let mut cur = ps.clone();
    let mut zs = Vec::new();
    let mut ws = Vec::new();
    for i in 0..ps.outputs.len() {
        let f = cur.outputs[i].clone();
        if let Some(v) = f.as_var().filter(|v| cur.bound.contains(v) && !zs.contains(v)) {
            zs.push(v);
            continue;
        }
        let z = ctx.fresh();
        let mut next = cur.clone();
        next.bound.push(z);
        let zf = BoolExpr::var(z).xor(&f);
        let (factors, note, site) = match &half {
            Some(h) => {
                let w = ctx.fresh();
                next.bound.push(w);
                ws.push(w);
                let sign = RExpr::pow(RExpr::Const(ring.from_i64(-1)), BoolExpr::var(w).and(&zf));
                (vec![RExpr::Const(h.clone()), sign], "fresh output, read backwards", Site::with_expr(&[z, w], f))
            }
            None => {
                let ind = RExpr::pow(RExpr::Const(ring.zero()), zf);
                (vec![ind], "fresh output as an indicator", Site::with_expr(&[z], f))
            }
        };
        next.amplitude = RExpr::product(ring, std::iter::once(cur.amplitude.clone()).chain(factors));
        next.outputs[i] = BoolExpr::var(z);
        trace.push(RewriteStep::new(RuleId::H, site, &cur, &next).with_note(note));
        zs.push(z);
        cur = next;
    }
    Ok((cur, zs, ws))
}

fn check_cap(bits: usize, cap: usize) -> Result<()> {
    if bits > cap {
        return Err(Error::SizeCap { bits, cap });
    }
    Ok(())
}

pub fn normalize_ring(ps: &PathSum, cap: usize) -> Result<NormalForm> {
    normalize_ring_traced(ps, cap, &mut Vec::new())
}

/// Ring procedure: fresh outputs, the sum rule on every internal variable,
/// then table normalization over the outputs.
pub fn normalize_ring_traced(ps: &PathSum, cap: usize, trace: &mut Vec<RewriteStep>) -> Result<NormalForm> {
    if !ps.is_closed() {
        return Err(Error::NotClosed);
    }
    ps.check()?;
    let mut ctx = Context::new(ps.ring);
    let (mut cur, zs, _) = fresh_outputs(&mut ctx, ps, trace)?;
    let internal: Vec<Var> = cur.bound.iter().copied().filter(|v| !zs.contains(v)).collect();
    check_cap(zs.len() + internal.len(), cap)?;
    for y in internal {
        let site = Site::at(&[y]);
        let next = apply_rule(&mut ctx, RuleId::S, &cur, &site)?;
        trace.push(RewriteStep::new(RuleId::S, site, &cur, &next));
        cur = next;
    }
    let table = normalize_rexpr(&cur.amplitude, &zs, ps.ring, Theory::Ring, cap)?;
    Ok(NormalForm { ring: ps.ring, bits: zs.len(), entries: table.entries })
}

pub fn normalize_field(ps: &PathSum, cap: usize) -> Result<NormalForm> {
    normalize_field_traced(ps, cap, &mut Vec::new())
}

/// Field procedure: fresh outputs, table normalization over outputs and
/// internal variables, then the internal variables are removed last first.
/// Removing `y` factors it inward as `(α^{¬y} β^y)` per table pair, splits it
/// into one variable per pair with the ortho rule and averages each pair,
/// which leaves `α + β` once the powers of 2 cancel.
pub fn normalize_field_traced(ps: &PathSum, cap: usize, trace: &mut Vec<RewriteStep>) -> Result<NormalForm> {
    ps.ring.require_field()?;
    if !ps.is_closed() {
        return Err(Error::NotClosed);
    }
    if !ps.is_multiplicative() {
        return Err(Error::AddInMultiplicativeMode);
    }
    ps.check()?;
    let mut ctx = Context::new(ps.ring);
    let (cur, zs, _) = fresh_outputs(&mut ctx, ps, trace)?;
    let internal: Vec<Var> = cur.bound.iter().copied().filter(|v| !zs.contains(v)).collect();
    let mut vars: Vec<Var> = zs.iter().chain(&internal).copied().collect();
    check_cap(vars.len(), cap)?;
    let mut table = normalize_rexpr(&cur.amplitude, &vars, ps.ring, Theory::Field, cap)?;
    while vars.len() > zs.len() {
        let y = vars.pop().expect("an internal variable");
        let pairs = table.entries.len() / 2;
        let before = vars.len() + 1;
        let step = |rule, note: String| RewriteStep {
            rule,
            site: Site::at(&[y]),
            note,
            bound_before: before,
            bound_after: before - 1,
            size_before: 2 * pairs,
            size_after: pairs,
        };
        trace.push(step(RuleId::O, format!("{} splits into {pairs} copies", pairs - 1)));
        trace.push(step(RuleId::A, format!("{pairs} averages, scalar 2^{pairs}/2^{}", pairs - 1)));
        let entries = table.entries.chunks(2).map(|p| &p[0] + &p[1]).collect();
        table = NormalTable { vars: vars.clone(), entries };
    }
    Ok(NormalForm { ring: ps.ring, bits: zs.len(), entries: table.entries })
}

/// Removes the last variable of `table` by literal rule applications: the
/// pairs are factored inward, split with the ortho rule once per pair
/// boundary and averaged. Returns the table over the remaining variables.
pub fn eliminate_last_by_rules(table: &NormalTable, trace: &mut Vec<RewriteStep>) -> Result<NormalTable> {
    let ring = table
        .entries
        .first()
        .map(|e| e.ring())
        .ok_or_else(|| Error::IllFormed("empty table".to_string()))?;
    ring.require_field()?;
    let (&y, rest) = table.vars.split_last().ok_or_else(|| Error::IllFormed("no variable to remove".into()))?;
    let yv = BoolExpr::var(y);
    let factors = table.entries.chunks(2).enumerate().map(|(i, p)| {
        let pair = RExpr::Mul(vec![
            RExpr::pow(RExpr::Const(p[0].clone()), yv.negate()),
            RExpr::pow(RExpr::Const(p[1].clone()), yv.clone()),
        ]);
        RExpr::pow(pair, point_indicator(i as u64, rest))
    });
    let mut cur = PathSum {
        ring,
        inputs: vec![],
        bound: table.vars.clone(),
        amplitude: RExpr::product(ring, factors),
        outputs: vec![],
    };
    let mut ctx = Context::new(ring);
    // Groups of pairs sharing one copy of y, split on each remaining
    // variable in turn.
    let mut groups: Vec<(Var, usize, usize)> = vec![(y, 0, table.entries.len() / 2)];
    for (k, &x) in rest.iter().enumerate() {
        let width = 1usize << (rest.len() - 1 - k);
        let mut next_groups = Vec::new();
        for (g, lo, hi) in groups {
            let site = Site::at(&[x, g]);
            let next = apply_rule(&mut ctx, RuleId::O, &cur, &site)?;
            let z = *next.bound.last().expect("a fresh copy");
            trace.push(RewriteStep::new(RuleId::O, site, &cur, &next));
            cur = next;
            // Pairs with x = 0 sit in the lower half and took the new copy.
            let mid = lo + width;
            debug_assert_eq!(mid * 2 - lo, hi);
            next_groups.push((z, lo, mid));
            next_groups.push((g, mid, hi));
        }
        groups = next_groups;
    }
    for (g, _, _) in groups {
        let site = Site::at(&[g]);
        let next = apply_rule(&mut ctx, RuleId::A, &cur, &site)?;
        trace.push(RewriteStep::new(RuleId::A, site, &cur, &next));
        cur = next;
    }
    normalize_rexpr(&cur.amplitude, rest, ring, Theory::Field, rest.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dense_vector;
    use crate::pathsum::{gates, to_state};

    #[test]
    fn controlled_h_golden() {
        let ring = RingSpec::Dyadic8;
        let mut ctx = Context::new(ring);
        let ch = to_state(&gates::ch(&mut ctx).unwrap());
        let nf = normalize_ring(&ch, 20).unwrap();
        let r = ring.inv_sqrt2().unwrap();
        let mut want = vec![ring.zero(); 16];
        want[0b0000] = ring.one();
        want[0b0101] = ring.one();
        want[0b1010] = r.clone();
        want[0b1011] = r.clone();
        want[0b1110] = r.clone();
        want[0b1111] = -&r;
        assert_eq!(nf.entries, want);
        assert_eq!(nf.to_string().lines().count(), 6);
        let field = normalize_field(&to_state(&gates::ch(&mut Context::new(RingSpec::Cyclo8)).unwrap()), 20).unwrap();
        assert_eq!(field.entries, nf.entries.iter().map(RingElem::to_field).collect::<Vec<_>>());
    }

    #[test]
    fn empty_variety_is_zero() {
        let ring = RingSpec::Int;
        let ps = PathSum::new(
            ring,
            vec![],
            vec![Var(0), Var(1)],
            RExpr::pow(RExpr::Const(ring.from_i64(-1)), BoolExpr::var(Var(1))),
            vec![BoolExpr::var(Var(0))],
        )
        .unwrap();
        let nf = normalize_ring(&ps, 20).unwrap();
        assert!(nf.entries.iter().all(RingElem::is_zero));
    }

    #[test]
    fn no_bound_variables() {
        let ring = RingSpec::Rational;
        let ps = PathSum::scalar(ring, ring.from_i64(3));
        assert_eq!(normalize_field(&ps, 20).unwrap().entries, vec![ring.from_i64(3)]);
        assert_eq!(normalize_ring(&ps, 20).unwrap().entries, vec![ring.from_i64(3)]);
    }

    #[test]
    fn errors() {
        let ring = RingSpec::Rational;
        let mut ctx = Context::new(ring);
        let x = gates::x(&mut ctx);
        assert_eq!(normalize_ring(&x, 20), Err(Error::NotClosed));
        let add = PathSum::new(ring, vec![], vec![], RExpr::sum([RExpr::one(ring), RExpr::one(ring)]), vec![]).unwrap();
        assert_eq!(normalize_field(&add, 20), Err(Error::AddInMultiplicativeMode));
        assert!(matches!(normalize_field(&PathSum::scalar(RingSpec::Int, RingSpec::Int.one()), 20), Err(Error::NotAField(_))));
        let big = to_state(&gates::hbox(&mut ctx, ring.from_i64(2), 3, 3));
        assert!(matches!(normalize_ring(&big, 5), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn literal_elimination_matches_pair_sums() {
        let ring = RingSpec::Prime(7);
        for n in 1..=4u32 {
            let vars: Vec<Var> = (0..n).map(Var).collect();
            let entries: Vec<RingElem> = (0..1i64 << n).map(|i| ring.from_i64(i * i + 3 * i + 1)).collect();
            let t = NormalTable { vars, entries: entries.clone() };
            let mut trace = Vec::new();
            let out = eliminate_last_by_rules(&t, &mut trace).unwrap();
            let want: Vec<RingElem> = entries.chunks(2).map(|p| &p[0] + &p[1]).collect();
            assert_eq!(out.entries, want);
            let pairs = 1usize << (n - 1);
            assert_eq!(trace.iter().filter(|s| s.rule == RuleId::O).count(), pairs - 1);
            assert_eq!(trace.iter().filter(|s| s.rule == RuleId::A).count(), pairs);
        }
    }

    #[test]
    fn int_uses_indicators() {
        let ring = RingSpec::Int;
        let mut ctx = Context::new(ring);
        let ps = to_state(&gates::ccx(&mut ctx));
        let nf = normalize_ring(&ps, 20).unwrap();
        assert_eq!(nf.entries, dense_vector(&ps, 22).unwrap());
    }
}
