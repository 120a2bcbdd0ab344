//! Rewrite rules on sums, each with its side conditions checked at a site.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::boolexpr::{BoolExpr, Var};
use crate::error::{Error, Result};
use crate::pathsum::{Context, PathSum};
use crate::rexpr::RExpr;
use crate::rings::{PhasePoly, RingElem, RingSpec};
use crate::theories::factors::AmplitudeView;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    /// `Σ_y |Ψ⟩ ≡ 2|Ψ⟩` for unused `y`.
    E,
    /// `Σ_{x,y} (−1)^{y(x⊕f)} |Ψ(x)⟩ ≡ 2|Ψ(f)⟩`.
    H,
    /// `Σ_y i^y (−1)^{yf} |Ψ⟩ ≡ ω√2 (−i)^{f̄} |Ψ⟩`.
    Omega,
    /// `Σ_{x,y} (−1)^{y(xg ⊕ gf ⊕ 1)} |Ψ(x)⟩ ≡ Σ_y (−1)^{y(g⊕1)} |Ψ(1⊕f)⟩`.
    Hgen,
    /// `Σ_{x,y} (−1)^{yf ⊕ xg} |Ψ⟩ ≡ 2 Σ_y (−1)^{y(f ∨ g)} |Ψ⟩`.
    Hrel,
    /// `Σ_y (−1)^y |Ψ⟩ ≡ 0`.
    Z,
    /// `Σ_y r(y) |Ψ⟩ ≡ (r(0) + r(1)) |Ψ⟩`.
    S,
    /// Splits `y` across `x`-positive and `x`-negative factors with a `½`.
    O,
    /// `Σ_y (α^y β^{¬y})^f |Ψ⟩ ≡ 2((α+β)/2)^f |Ψ⟩`.
    A,
    /// `Σ_y |Ψ(y)⟩ ≡ Σ_y |Ψ(y ⊕ f)⟩`.
    VarChange,
}

impl RuleId {
    pub const ALL: [RuleId; 10] = [
        RuleId::E,
        RuleId::H,
        RuleId::Omega,
        RuleId::Hgen,
        RuleId::Hrel,
        RuleId::Z,
        RuleId::S,
        RuleId::O,
        RuleId::A,
        RuleId::VarChange,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::E => "E",
            RuleId::H => "H",
            RuleId::Omega => "Omega",
            RuleId::Hgen => "Hgen",
            RuleId::Hrel => "Hrel",
            RuleId::Z => "Z",
            RuleId::S => "S",
            RuleId::O => "O",
            RuleId::A => "A",
            RuleId::VarChange => "VarChange",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse { line: 0, col: 0, msg: format!("unknown rule `{s}`") })
    }
}

impl Serialize for RuleId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Where a rule applies: the matched variables in rule order, and the
/// expression for rules that take one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Site {
    pub vars: Vec<Var>,
    pub expr: Option<BoolExpr>,
}

impl Site {
    pub fn at(vars: &[Var]) -> Site {
        Site { vars: vars.to_vec(), expr: None }
    }

    pub fn with_expr(vars: &[Var], f: BoolExpr) -> Site {
        Site { vars: vars.to_vec(), expr: Some(f) }
    }
}

impl Serialize for Site {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let vars: Vec<String> = self.vars.iter().map(ToString::to_string).collect();
        serde_json::json!({ "vars": vars, "expr": self.expr.as_ref().map(ToString::to_string) }).serialize(s)
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.vars.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", vars.join(", "))?;
        if let Some(e) = &self.expr {
            write!(f, " with {e}")?;
        }
        Ok(())
    }
}

/// One entry of a rewrite trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub rule: RuleId,
    pub site: Site,
    pub note: String,
    pub bound_before: usize,
    pub bound_after: usize,
    pub size_before: usize,
    pub size_after: usize,
}

impl RewriteStep {
    pub fn new(rule: RuleId, site: Site, before: &PathSum, after: &PathSum) -> RewriteStep {
        RewriteStep {
            rule,
            site,
            note: String::new(),
            bound_before: before.bound.len(),
            bound_after: after.bound.len(),
            size_before: before.size(),
            size_after: after.size(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> RewriteStep {
        self.note = note.into();
        self
    }
}

fn no_match(rule: RuleId, reason: impl Into<String>) -> Error {
    Error::NoMatch { rule: rule.name().to_string(), reason: reason.into() }
}

/// Whether `rule` can run over `ring`.
pub fn rule_available(rule: RuleId, ring: RingSpec) -> Result<()> {
    let ok = match rule {
        RuleId::Omega => ring.imag().is_ok(),
        RuleId::O | RuleId::A => ring.require_field().is_ok(),
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::RuleUnavailable { rule: rule.name().to_string(), ring: ring.name() })
    }
}

fn site_vars(rule: RuleId, site: &Site, n: usize) -> Result<&[Var]> {
    if site.vars.len() != n {
        return Err(no_match(rule, format!("site needs {n} variable(s), found {}", site.vars.len())));
    }
    if n == 2 && site.vars[0] == site.vars[1] {
        return Err(no_match(rule, "site variables must differ"));
    }
    Ok(&site.vars)
}

fn require_bound(rule: RuleId, ps: &PathSum, v: Var) -> Result<()> {
    if ps.bound.contains(&v) {
        Ok(())
    } else {
        Err(no_match(rule, format!("{v} is not bound")))
    }
}

fn in_outputs(ps: &PathSum, v: Var) -> bool {
    ps.outputs.iter().any(|o| o.contains_var(v))
}

/// `v` occurs only in the phase polynomial.
fn require_phase_only(rule: RuleId, ps: &PathSum, view: &AmplitudeView, v: Var) -> Result<()> {
    if in_outputs(ps, v) {
        return Err(no_match(rule, format!("{v} occurs in an output")));
    }
    if view.var_outside_phase(v) {
        return Err(no_match(rule, format!("{v} occurs outside the phase")));
    }
    Ok(())
}

/// The part of the phase multiplied by `y`, as a Boolean sign exponent.
fn sign_part(rule: RuleId, view: &AmplitudeView, y: Var) -> Result<BoolExpr> {
    view.phase
        .split_on(y)
        .0
        .as_sign_bool()
        .ok_or_else(|| no_match(rule, format!("the phase part of {y} is not a sign")))
}

/// Rebuilds a sum from an edited view, substituting `map` and dropping the
/// given bound variables.
fn rebuild(ps: &PathSum, view: AmplitudeView, drop: &[Var], map: &HashMap<Var, BoolExpr>) -> Result<PathSum> {
    let view = if map.is_empty() { view } else { view.subst_many(map) };
    Ok(PathSum {
        ring: ps.ring,
        inputs: ps.inputs.clone(),
        bound: ps.bound.iter().filter(|v| !drop.contains(v)).copied().collect(),
        amplitude: view.rebuild(ps.ring)?,
        outputs: ps.outputs.iter().map(|o| o.subst_many(map)).collect(),
    })
}

fn two(ring: RingSpec) -> RingElem {
    ring.from_i64(2)
}

fn apply_e(ps: &PathSum, site: &Site) -> Result<PathSum> {
    let rule = RuleId::E;
    let y = site_vars(rule, site, 1)?[0];
    require_bound(rule, ps, y)?;
    if ps.used_vars().contains(&y) {
        return Err(no_match(rule, format!("{y} is used")));
    }
    let mut view = AmplitudeView::extract(ps.ring, &ps.amplitude);
    view.scalar = &view.scalar * &two(ps.ring);
    rebuild(ps, view, &[y], &HashMap::new())
}

fn match_h(ps: &PathSum, view: &AmplitudeView, x: Var, y: Var) -> Result<BoolExpr> {
    let rule = RuleId::H;
    require_bound(rule, ps, x)?;
    require_bound(rule, ps, y)?;
    require_phase_only(rule, ps, view, y)?;
    let q = sign_part(rule, view, y)?;
    let (cx, f) = q.split_on(x);
    if !cx.is_one() {
        return Err(no_match(rule, format!("the sign of {y} is not {x} ⊕ f")));
    }
    Ok(f)
}

fn apply_h(ps: &PathSum, site: &Site) -> Result<PathSum> {
    let v = site_vars(RuleId::H, site, 2)?;
    let (x, y) = (v[0], v[1]);
    let mut view = AmplitudeView::extract(ps.ring, &ps.amplitude);
    let f = match_h(ps, &view, x, y)?;
    view.phase = view.phase.split_on(y).1;
    view.scalar = &view.scalar * &two(ps.ring);
    rebuild(ps, view, &[x, y], &HashMap::from([(x, f)]))
}

/// The `f` with `Σ_y ω^{y·part} = (1+i)(−i)^{f̄}`.
fn match_omega(ps: &PathSum, view: &AmplitudeView, y: Var) -> Result<BoolExpr> {
    let rule = RuleId::Omega;
    rule_available(rule, ps.ring)?;
    require_bound(rule, ps, y)?;
    require_phase_only(rule, ps, view, y)?;
    let part = view.phase.split_on(y).0;
    let c = part.constant_term();
    if c != 2 && c != 6 {
        return Err(no_match(rule, format!("the phase of {y} has no ±i term")));
    }
    let q = part
        .without_constant()
        .as_sign_bool()
        .ok_or_else(|| no_match(rule, format!("the rest of the phase of {y} is not a sign")))?;
    Ok(if c == 2 { q } else { q.negate() })
}

fn apply_omega(ps: &PathSum, site: &Site) -> Result<PathSum> {
    let y = site_vars(RuleId::Omega, site, 1)?[0];
    let mut view = AmplitudeView::extract(ps.ring, &ps.amplitude);
    let f = match_omega(ps, &view, y)?;
    let ring = ps.ring;
    view.phase = view.phase.split_on(y).1.add(&PhasePoly::lifted(&f, 6));
    view.scalar = &view.scalar * &(&ring.one() + &ring.imag()?);
    rebuild(ps, view, &[y], &HashMap::new())
}

/// `(g, g·f)` read off `Q ⊕ 1 = x·g ⊕ g·f`.
fn match_hgen(ps: &PathSum, view: &AmplitudeView, x: Var, y: Var) -> Result<(BoolExpr, BoolExpr)> {
    let rule = RuleId::Hgen;
    require_bound(rule, ps, x)?;
    require_bound(rule, ps, y)?;
    require_phase_only(rule, ps, view, y)?;
    let q = sign_part(rule, view, y)?;
    let (g, gf) = q.negate().split_on(x);
    if g.is_zero() {
        return Err(no_match(rule, format!("the sign of {y} does not involve {x}")));
    }
    if g.and(&gf) != gf {
        return Err(no_match(rule, "the constant part is not a multiple of the x coefficient"));
    }
    Ok((g, gf))
}

fn apply_hgen(ps: &PathSum, site: &Site) -> Result<PathSum> {
    let v = site_vars(RuleId::Hgen, site, 2)?;
    let (x, y) = (v[0], v[1]);
    let mut view = AmplitudeView::extract(ps.ring, &ps.amplitude);
    let (g, gf) = match_hgen(ps, &view, x, y)?;
    let new_part = BoolExpr::var(y).and(&g.negate());
    view.phase = view.phase.split_on(y).1.add(&PhasePoly::lifted(&new_part, 4));
    rebuild(ps, view, &[x], &HashMap::from([(x, gf.negate())]))
}

/// `(f, g)` with the phase parts of `y` and `x` equal to `4f̄` and `4ḡ`.
fn match_hrel(ps: &PathSum, view: &AmplitudeView, x: Var, y: Var) -> Result<(BoolExpr, BoolExpr)> {
    let rule = RuleId::Hrel;
    require_bound(rule, ps, x)?;
    require_bound(rule, ps, y)?;
    require_phase_only(rule, ps, view, x)?;
    require_phase_only(rule, ps, view, y)?;
    let f = sign_part(rule, view, y)?;
    if f.contains_var(x) {
        return Err(no_match(rule, format!("{x} and {y} share a monomial")));
    }
    let g = sign_part(rule, view, x)?;
    if f.is_zero() || g.is_zero() {
        return Err(no_match(rule, "both variables must carry a sign"));
    }
    Ok((f, g))
}

fn apply_hrel(ps: &PathSum, site: &Site) -> Result<PathSum> {
    let v = site_vars(RuleId::Hrel, site, 2)?;
    let (x, y) = (v[0], v[1]);
    let mut view = AmplitudeView::extract(ps.ring, &ps.amplitude);
    let (f, g) = match_hrel(ps, &view, x, y)?;
    let rest = view.phase.split_on(y).1.split_on(x).1;
    let new_part = BoolExpr::var(y).and(&f.or(&g));
    view.phase = rest.add(&PhasePoly::lifted(&new_part, 4));
    view.scalar = &view.scalar * &two(ps.ring);
    rebuild(ps, view, &[x], &HashMap::new())
}

fn match_z(ps: &PathSum, view: &AmplitudeView, y: Var) -> Result<()> {
    let rule = RuleId::Z;
    require_bound(rule, ps, y)?;
    require_phase_only(rule, ps, view, y)?;
    if view.phase.split_on(y).0 != PhasePoly::constant(4) {
        return Err(no_match(rule, format!("the phase of {y} is not exactly (−1)^{y}")));
    }
    Ok(())
}

fn apply_z(ps: &PathSum, site: &Site) -> Result<PathSum> {
    let y = site_vars(RuleId::Z, site, 1)?[0];
    let view = AmplitudeView::extract(ps.ring, &ps.amplitude);
    match_z(ps, &view, y)?;
    let mut out = ps.clone();
    out.bound.retain(|&v| v != y);
    out.amplitude = RExpr::Const(ps.ring.zero());
    Ok(out)
}

fn apply_s(ps: &PathSum, site: &Site) -> Result<PathSum> {
    let rule = RuleId::S;
    let y = site_vars(rule, site, 1)?[0];
    require_bound(rule, ps, y)?;
    if in_outputs(ps, y) {
        return Err(no_match(rule, format!("{y} occurs in an output")));
    }
    let mut out = ps.clone();
    out.bound.retain(|&v| v != y);
    out.amplitude = RExpr::sum([
        ps.amplitude.subst(y, &BoolExpr::zero()),
        ps.amplitude.subst(y, &BoolExpr::one()),
    ]);
    Ok(out)
}

fn top_factors(r: &RExpr) -> Vec<RExpr> {
    match r {
        RExpr::Mul(xs) => xs.clone(),
        other => vec![other.clone()],
    }
}

/// `(α, β)` for a product of `α^y`, `β^{¬y}` and constants.
fn as_pair(ring: RingSpec, r: &RExpr, y: Var) -> Option<(RingElem, RingElem)> {
    let yv = BoolExpr::var(y);
    let ny = yv.negate();
    let mut pos = ring.one();
    let mut neg = ring.one();
    for f in top_factors(r) {
        match f {
            RExpr::Const(c) => {
                pos = &pos * &c;
                neg = &neg * &c;
            }
            RExpr::Pow(b, e) => match *b {
                RExpr::Const(c) if e == yv => pos = &pos * &c,
                RExpr::Const(c) if e == ny => neg = &neg * &c,
                _ => return None,
            },
            _ => return None,
        }
    }
    Some((pos, neg))
}

/// Index of the factor holding `y` (or all of them when they are bare
/// powers), `(α, β)` and the outer exponent.
fn match_a(ps: &PathSum, y: Var) -> Result<(Vec<usize>, RingElem, RingElem, BoolExpr)> {
    let rule = RuleId::A;
    rule_available(rule, ps.ring)?;
    require_bound(rule, ps, y)?;
    if in_outputs(ps, y) {
        return Err(no_match(rule, format!("{y} occurs in an output")));
    }
    let factors = top_factors(&ps.amplitude);
    let with_y: Vec<usize> = (0..factors.len()).filter(|&i| factors[i].contains_var(y)).collect();
    if with_y.is_empty() {
        return Err(no_match(rule, format!("{y} is unused")));
    }
    let bare = RExpr::Mul(with_y.iter().map(|&i| factors[i].clone()).collect());
    if let Some((a, b)) = as_pair(ps.ring, &bare, y) {
        return Ok((with_y, a, b, BoolExpr::one()));
    }
    if let [i] = with_y[..] {
        if let RExpr::Pow(base, f) = &factors[i] {
            if !f.contains_var(y) {
                if let Some((a, b)) = as_pair(ps.ring, base, y) {
                    return Ok((with_y, a, b, f.clone()));
                }
            }
        }
    }
    Err(no_match(rule, format!("{y} is not in a single (α^y β^¬y)^f factor")))
}

fn apply_a(ps: &PathSum, site: &Site) -> Result<PathSum> {
    let y = site_vars(RuleId::A, site, 1)?[0];
    let (idx, a, b, f) = match_a(ps, y)?;
    let ring = ps.ring;
    let avg = &(&a + &b) * &ring.half()?;
    let mut factors: Vec<RExpr> = top_factors(&ps.amplitude)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !idx.contains(i))
        .map(|(_, r)| r)
        .collect();
    factors.push(RExpr::Const(two(ring)));
    factors.push(RExpr::pow(RExpr::Const(avg), f));
    let mut out = ps.clone();
    out.bound.retain(|&v| v != y);
    out.amplitude = RExpr::product(ring, factors);
    Ok(out)
}

/// Indices of the `x`-negative factors holding `y`.
fn match_o(ps: &PathSum, x: Var, y: Var) -> Result<Vec<usize>> {
    let rule = RuleId::O;
    rule_available(rule, ps.ring)?;
    require_bound(rule, ps, y)?;
    if !ps.inputs.contains(&x) && !ps.bound.contains(&x) {
        return Err(no_match(rule, format!("{x} is not declared")));
    }
    if in_outputs(ps, y) {
        return Err(no_match(rule, format!("{y} occurs in an output")));
    }
    let mut pos = 0;
    let mut neg = Vec::new();
    for (i, f) in top_factors(&ps.amplitude).iter().enumerate() {
        if !f.contains_var(y) {
            continue;
        }
        let RExpr::Pow(_, e) = f else {
            return Err(no_match(rule, format!("a factor holding {y} is not a power")));
        };
        let (c, r) = e.split_on(x);
        if c.is_zero() {
            return Err(no_match(rule, format!("a factor holding {y} is not guarded by {x}")));
        }
        if r.is_zero() {
            pos += 1;
        } else if c == r {
            neg.push(i);
        } else {
            return Err(no_match(rule, format!("a factor holding {y} is not guarded by {x}")));
        }
    }
    if pos == 0 || neg.is_empty() {
        return Err(no_match(rule, format!("{y} is not shared across both polarities of {x}")));
    }
    Ok(neg)
}

fn apply_o(ctx: &mut Context, ps: &PathSum, site: &Site) -> Result<PathSum> {
    let v = site_vars(RuleId::O, site, 2)?;
    let (x, y) = (v[0], v[1]);
    let neg = match_o(ps, x, y)?;
    ctx.reserve(ps);
    let z = ctx.fresh();
    let rename = HashMap::from([(y, z)]);
    let ring = ps.ring;
    let mut factors: Vec<RExpr> = top_factors(&ps.amplitude)
        .into_iter()
        .enumerate()
        .map(|(i, f)| if neg.contains(&i) { f.rename(&rename) } else { f })
        .collect();
    factors.push(RExpr::Const(ring.half()?));
    let mut out = ps.clone();
    out.bound.push(z);
    out.amplitude = RExpr::product(ring, factors);
    Ok(out)
}

fn apply_var_change(ps: &PathSum, site: &Site) -> Result<PathSum> {
    let rule = RuleId::VarChange;
    let y = site_vars(rule, site, 1)?[0];
    require_bound(rule, ps, y)?;
    let f = site.expr.clone().ok_or_else(|| no_match(rule, "no expression given"))?;
    if f.contains_var(y) {
        return Err(no_match(rule, format!("the shift mentions {y}")));
    }
    if let Some(v) = f.vars().into_iter().find(|v| !ps.inputs.contains(v) && !ps.bound.contains(v)) {
        return Err(no_match(rule, format!("{v} is not declared")));
    }
    let map = HashMap::from([(y, BoolExpr::var(y).xor(&f))]);
    let mut out = ps.clone();
    out.amplitude = ps.amplitude.subst_many(&map);
    out.outputs = ps.outputs.iter().map(|o| o.subst_many(&map)).collect();
    Ok(out)
}

/// Applies `rule` at `site`, or reports why it does not match.
pub fn apply_rule(ctx: &mut Context, rule: RuleId, ps: &PathSum, site: &Site) -> Result<PathSum> {
    rule_available(rule, ps.ring)?;
    match rule {
        RuleId::E => apply_e(ps, site),
        RuleId::H => apply_h(ps, site),
        RuleId::Omega => apply_omega(ps, site),
        RuleId::Hgen => apply_hgen(ps, site),
        RuleId::Hrel => apply_hrel(ps, site),
        RuleId::Z => apply_z(ps, site),
        RuleId::S => apply_s(ps, site),
        RuleId::O => apply_o(ctx, ps, site),
        RuleId::A => apply_a(ps, site),
        RuleId::VarChange => apply_var_change(ps, site),
    }
}

/// First matching site in bound-variable order. Variable changes need an
/// expression and are never found automatically.
pub fn find_site(rule: RuleId, ps: &PathSum) -> Option<Site> {
    rule_available(rule, ps.ring).ok()?;
    let view = || AmplitudeView::extract(ps.ring, &ps.amplitude);
    let bound = &ps.bound;
    match rule {
        RuleId::E => {
            let used = ps.used_vars();
            bound.iter().find(|v| !used.contains(v)).map(|&y| Site::at(&[y]))
        }
        RuleId::H | RuleId::Hgen => {
            let view = view();
            for &y in bound {
                let Ok(q) = sign_part(rule, &view, y) else { continue };
                for &x in bound {
                    if x == y || !q.contains_var(x) {
                        continue;
                    }
                    let ok = if rule == RuleId::H {
                        match_h(ps, &view, x, y).is_ok()
                    } else {
                        match_hgen(ps, &view, x, y).is_ok()
                    };
                    if ok {
                        return Some(Site::at(&[x, y]));
                    }
                }
            }
            None
        }
        RuleId::Omega => {
            let view = view();
            bound.iter().find(|&&y| match_omega(ps, &view, y).is_ok()).map(|&y| Site::at(&[y]))
        }
        RuleId::Hrel => {
            let view = view();
            for &y in bound {
                for &x in bound {
                    if x != y && match_hrel(ps, &view, x, y).is_ok() {
                        return Some(Site::at(&[x, y]));
                    }
                }
            }
            None
        }
        RuleId::Z => {
            let view = view();
            bound.iter().find(|&&y| match_z(ps, &view, y).is_ok()).map(|&y| Site::at(&[y]))
        }
        RuleId::S => bound.iter().find(|&&y| !in_outputs(ps, y)).map(|&y| Site::at(&[y])),
        RuleId::A => bound.iter().find(|&&y| match_a(ps, y).is_ok()).map(|&y| Site::at(&[y])),
        RuleId::O => {
            for &y in bound {
                for &x in ps.inputs.iter().chain(bound) {
                    if x != y && match_o(ps, x, y).is_ok() {
                        return Some(Site::at(&[x, y]));
                    }
                }
            }
            None
        }
        RuleId::VarChange => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dense_matrix;
    use crate::pathsum::{compose, gates};

    fn v(i: u32) -> BoolExpr {
        BoolExpr::var(Var(i))
    }

    fn sign(ring: RingSpec, e: BoolExpr) -> RExpr {
        RExpr::pow(RExpr::Const(ring.from_i64(-1)), e)
    }

    fn same(a: &PathSum, b: &PathSum) {
        assert_eq!(dense_matrix(a, 22).unwrap(), dense_matrix(b, 22).unwrap(), "{a}\n{b}");
    }

    #[test]
    fn h_substitutes_the_solution() {
        // Σ_{x,y} (−1)^{y(x ⊕ x1x2)} |x⟩ over inputs x1, x2.
        let ring = RingSpec::Dyadic8;
        let ps = PathSum::new(
            ring,
            vec![Var(1), Var(2)],
            vec![Var(3), Var(4)],
            sign(ring, v(4).and(&v(3).xor(&v(1).and(&v(2))))),
            vec![v(3)],
        )
        .unwrap();
        let mut ctx = Context::new(ring);
        let site = find_site(RuleId::H, &ps).unwrap();
        assert_eq!(site.vars, vec![Var(3), Var(4)]);
        let out = apply_rule(&mut ctx, RuleId::H, &ps, &site).unwrap();
        assert!(out.bound.is_empty());
        assert_eq!(out.outputs, vec![v(1).and(&v(2))]);
        assert_eq!(out.amplitude, RExpr::Const(ring.from_i64(2)));
        same(&ps, &out);
    }

    #[test]
    fn hh_reduces_to_identity() {
        let ring = RingSpec::Dyadic8;
        let mut ctx = Context::new(ring);
        let h1 = gates::h(&mut ctx).unwrap();
        let h2 = gates::h(&mut ctx).unwrap();
        let hh = compose(&mut ctx, &h1, &h2).unwrap();
        let site = find_site(RuleId::H, &hh).unwrap();
        let out = apply_rule(&mut ctx, RuleId::H, &hh, &site).unwrap();
        assert!(out.bound.is_empty());
        assert_eq!(out.outputs, vec![BoolExpr::var(out.inputs[0])]);
        assert_eq!(out.amplitude, RExpr::one(ring));
    }

    #[test]
    fn omega_with_zero_exponent() {
        let ring = RingSpec::Dyadic8;
        let i = ring.imag().unwrap();
        let ps = PathSum::new(ring, vec![], vec![Var(0)], RExpr::pow(RExpr::Const(i.clone()), v(0)), vec![])
            .unwrap();
        let mut ctx = Context::new(ring);
        let out = apply_rule(&mut ctx, RuleId::Omega, &ps, &Site::at(&[Var(0)])).unwrap();
        let one_plus_i = &ring.one() + &i;
        assert_eq!(out.amplitude, RExpr::Const(one_plus_i.clone()));
        let w = ring.omega().unwrap();
        assert_eq!(&w * &ring.sqrt2().unwrap(), one_plus_i);
        same(&ps, &out);
    }

    #[test]
    fn s_sums_a_power() {
        let ring = RingSpec::Int;
        let a = ring.from_i64(5);
        let ps = PathSum::new(ring, vec![], vec![Var(0)], RExpr::pow(RExpr::Const(a), v(0)), vec![]).unwrap();
        let mut ctx = Context::new(ring);
        let out = apply_rule(&mut ctx, RuleId::S, &ps, &Site::at(&[Var(0)])).unwrap();
        assert_eq!(out.amplitude.eval(&[][..]).unwrap(), ring.from_i64(6));
        same(&ps, &out);
    }

    #[test]
    fn z_empties_the_sum() {
        let ring = RingSpec::Int;
        let ps = PathSum::new(ring, vec![Var(0)], vec![Var(1)], sign(ring, v(1)), vec![v(0)]).unwrap();
        let mut ctx = Context::new(ring);
        let out = apply_rule(&mut ctx, RuleId::Z, &ps, &find_site(RuleId::Z, &ps).unwrap()).unwrap();
        same(&ps, &out);
        assert_eq!(out.amplitude, RExpr::Const(ring.zero()));
    }

    #[test]
    fn hgen_and_hrel() {
        let ring = RingSpec::Dyadic8;
        // y(x·g ⊕ g·f ⊕ 1) with g = x1, f = x2.
        let q = v(3).and(&v(1)).xor(&v(1).and(&v(2))).xor(&BoolExpr::one());
        let ps = PathSum::new(
            ring,
            vec![Var(1), Var(2)],
            vec![Var(3), Var(4)],
            sign(ring, v(4).and(&q)),
            vec![v(3), v(1)],
        )
        .unwrap();
        let mut ctx = Context::new(ring);
        let site = find_site(RuleId::Hgen, &ps).unwrap();
        let out = apply_rule(&mut ctx, RuleId::Hgen, &ps, &site).unwrap();
        assert_eq!(out.bound, vec![Var(4)]);
        same(&ps, &out);

        let ps = PathSum::new(
            ring,
            vec![Var(1), Var(2)],
            vec![Var(3), Var(4)],
            sign(ring, v(4).and(&v(1)).xor(&v(3).and(&v(2)))),
            vec![v(1)],
        )
        .unwrap();
        let site = find_site(RuleId::Hrel, &ps).unwrap();
        let out = apply_rule(&mut ctx, RuleId::Hrel, &ps, &site).unwrap();
        assert_eq!(out.bound.len(), 1);
        same(&ps, &out);
    }

    #[test]
    fn o_then_a() {
        let ring = RingSpec::Rational;
        let k = |n: i64| RExpr::Const(ring.from_i64(n));
        let pair = |a: i64, b: i64| RExpr::Mul(vec![RExpr::pow(k(a), v(1).negate()), RExpr::pow(k(b), v(1))]);
        // (2^{¬y} 3^{y})^{x} (5^{¬y} 7^{y})^{¬x}, x an input, y bound.
        let amp = RExpr::Mul(vec![RExpr::pow(pair(2, 3), v(0)), RExpr::pow(pair(5, 7), v(0).negate())]);
        let ps = PathSum::new(ring, vec![Var(0)], vec![Var(1)], amp, vec![v(0)]).unwrap();
        let mut ctx = Context::new(ring);
        assert!(matches!(apply_rule(&mut ctx, RuleId::A, &ps, &Site::at(&[Var(1)])), Err(Error::NoMatch { .. })));
        let site = find_site(RuleId::O, &ps).unwrap();
        let split = apply_rule(&mut ctx, RuleId::O, &ps, &site).unwrap();
        assert_eq!(split.bound.len(), 2);
        same(&ps, &split);
        let mut cur = split;
        while let Some(site) = find_site(RuleId::A, &cur) {
            cur = apply_rule(&mut ctx, RuleId::A, &cur, &site).unwrap();
        }
        assert!(cur.bound.is_empty());
        same(&ps, &cur);
        let m = dense_matrix(&cur, 22).unwrap();
        assert_eq!(m.get(0, 0), &ring.from_i64(12));
        assert_eq!(m.get(1, 1), &ring.from_i64(5));
    }

    #[test]
    fn availability() {
        assert!(rule_available(RuleId::Omega, RingSpec::Rational).is_err());
        assert!(rule_available(RuleId::Omega, RingSpec::Dyadic8).is_ok());
        assert!(rule_available(RuleId::A, RingSpec::Dyadic8).is_err());
        assert!(rule_available(RuleId::O, RingSpec::Prime(7)).is_ok());
    }

    #[test]
    fn var_change_keeps_the_operator() {
        let ring = RingSpec::Int;
        let ps = PathSum::new(
            ring,
            vec![Var(0)],
            vec![Var(1)],
            RExpr::pow(RExpr::Const(ring.from_i64(3)), v(1).and(&v(0))),
            vec![v(1)],
        )
        .unwrap();
        let mut ctx = Context::new(ring);
        let out = apply_rule(&mut ctx, RuleId::VarChange, &ps, &Site::with_expr(&[Var(1)], v(0))).unwrap();
        same(&ps, &out);
        assert!(apply_rule(&mut ctx, RuleId::VarChange, &ps, &Site::with_expr(&[Var(1)], v(1))).is_err());
    }
}
