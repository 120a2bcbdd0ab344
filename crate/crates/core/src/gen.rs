//! Seeded random instances for the property suites and benchmarks.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::boolexpr::{BoolExpr, Monomial, Var};
use crate::pathsum::{Circuit, Context, GateKind, GateOp, PathSum};
use crate::rexpr::RExpr;
use crate::rings::{RingElem, RingSpec};
use crate::theories::{RuleId, Site};

/// A random ANF over `vars` with up to `max_terms` monomials of degree at
/// most `max_degree`; the constant monomial is allowed.
pub fn random_bool(rng: &mut impl Rng, vars: &[Var], max_terms: usize, max_degree: usize) -> BoolExpr {
    let terms = rng.gen_range(0..=max_terms);
    let mut out = BoolExpr::zero();
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_degree.min(vars.len()));
        let picked: Vec<Var> = vars.choose_multiple(rng, deg).copied().collect();
        out = out.xor(&BoolExpr::from_monomial(Monomial::from_vars(picked)));
    }
    out
}

/// Like [`random_bool`] but never constant 0.
pub fn random_nonzero_bool(rng: &mut impl Rng, vars: &[Var], max_terms: usize, max_degree: usize) -> BoolExpr {
    let f = random_bool(rng, vars, max_terms.max(1), max_degree);
    if f.is_zero() {
        vars.choose(rng).map_or(BoolExpr::one(), |&v| BoolExpr::var(v))
    } else {
        f
    }
}

/// A small element of `ring`, drawn from a ring-specific palette.
pub fn random_elem(rng: &mut impl Rng, ring: RingSpec) -> RingElem {
    let small = || ring.from_i64(0);
    match ring {
        RingSpec::Int => ring.from_i64(rng.gen_range(-3..=3)),
        RingSpec::Rational => {
            let d = [1, 1, 2, 3][rng.gen_range(0..4)];
            ring.from_ratio(rng.gen_range(-3..=3), d).unwrap_or_else(|_| small())
        }
        RingSpec::Dyadic8 | RingSpec::Cyclo8 => {
            let pick = rng.gen_range(0..6);
            let e = match pick {
                0 => Ok(ring.from_i64(rng.gen_range(-2..=2))),
                1 | 2 => ring.phase(rng.gen_range(0..8)),
                3 => ring.inv_sqrt2(),
                4 => ring.half(),
                _ => ring.omega().map(|w| &w + &ring.one()),
            };
            let e = e.unwrap_or_else(|_| small());
            if ring == RingSpec::Cyclo8 && rng.gen_bool(0.2) {
                &e * &ring.from_ratio(1, 3).expect("a field")
            } else {
                e
            }
        }
        RingSpec::Prime(p) => ring.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub fn random_nonzero_elem(rng: &mut impl Rng, ring: RingSpec) -> RingElem {
    loop {
        let e = random_elem(rng, ring);
        if !e.is_zero() {
            return e;
        }
    }
}

fn random_leaf(rng: &mut impl Rng, ring: RingSpec, vars: &[Var]) -> RExpr {
    let c = RExpr::Const(random_elem(rng, ring));
    if vars.is_empty() || rng.gen_bool(0.3) {
        c
    } else {
        RExpr::pow(c, random_bool(rng, vars, 3, 2))
    }
}

/// A random amplitude over `vars`; ring sums only when `allow_add`.
pub fn random_rexpr(rng: &mut impl Rng, ring: RingSpec, vars: &[Var], depth: u32, allow_add: bool) -> RExpr {
    if depth == 0 {
        return random_leaf(rng, ring, vars);
    }
    match rng.gen_range(0..10) {
        0 | 1 => random_leaf(rng, ring, vars),
        2..=5 => {
            let k = rng.gen_range(2..=3);
            let xs: Vec<RExpr> = (0..k).map(|_| random_rexpr(rng, ring, vars, depth - 1, allow_add)).collect();
            RExpr::product(ring, xs)
        }
        6 | 7 => {
            let base = random_rexpr(rng, ring, vars, depth - 1, allow_add);
            RExpr::pow(base, random_bool(rng, vars, 3, 2))
        }
        _ if allow_add => {
            let a = random_rexpr(rng, ring, vars, depth - 1, allow_add);
            let b = random_rexpr(rng, ring, vars, depth - 1, allow_add);
            RExpr::sum([a, b])
        }
        _ => random_leaf(rng, ring, vars),
    }
}

fn outs(rng: &mut impl Rng, vars: &[Var]) -> Vec<BoolExpr> {
    let k = rng.gen_range(1..=3);
    (0..k).map(|_| random_bool(rng, vars, 2, 2)).collect()
}

fn vars_of(xs: &[&[Var]]) -> Vec<Var> {
    xs.iter().flat_map(|s| s.iter().copied()).collect()
}

/// A closed sum with 1 to 3 outputs and up to 4 bound variables.
pub fn random_closed_sum(rng: &mut impl Rng, ring: RingSpec, multiplicative: bool) -> PathSum {
    let mut ctx = Context::new(ring);
    let nb = rng.gen_range(1..=4);
    let bound = ctx.fresh_n(nb);
    let outs = rng.gen_range(1..=3);
    let outputs = (0..outs).map(|_| random_bool(rng, &bound, 2, 2)).collect();
    let amplitude = random_rexpr(rng, ring, &bound, 3, !multiplicative);
    PathSum { ring, inputs: vec![], bound, amplitude, outputs }
}

/// A syntactically different sum with the same vector: a random variable
/// change, a shuffled bound list and unit factors.
pub fn random_twin(rng: &mut impl Rng, ps: &PathSum) -> PathSum {
    let ring = ps.ring;
    let mut out = ps.clone();
    if let Some(&y) = out.bound.choose(rng) {
        let others: Vec<Var> = out.inputs.iter().chain(&out.bound).copied().filter(|&v| v != y).collect();
        let f = random_bool(rng, &others, 2, 2);
        let map = HashMap::from([(y, BoolExpr::var(y).xor(&f))]);
        out.amplitude = out.amplitude.subst_many(&map);
        out.outputs = out.outputs.iter().map(|o| o.subst_many(&map)).collect();
    }
    out.bound.shuffle(rng);
    let g = random_bool(rng, &out.bound, 2, 2);
    let unit = RExpr::pow(RExpr::Const(random_elem(rng, ring)), g.and(&g.negate()));
    let one = RExpr::pow(RExpr::one(ring), g);
    out.amplitude = RExpr::Mul(vec![one, out.amplitude, unit]);
    out
}

/// One matching instance of `rule`: the sum and the site it matches at.
/// Sums have at most 3 outputs, 2 inputs and 5 bound variables.
pub fn rule_instance(rng: &mut impl Rng, rule: RuleId, ring: RingSpec) -> (PathSum, Site) {
    let mut ctx = Context::new(ring);
    let inputs = ctx.fresh_n(rng.gen_range(0..=2));
    let extra = ctx.fresh_n(rng.gen_range(0..=3));
    let (x, y) = (ctx.fresh(), ctx.fresh());
    let base = vars_of(&[&inputs, &extra]);
    let with_x = vars_of(&[&base, &[x]]);
    let minus = ring.from_i64(-1);
    let sign = |e: BoolExpr| RExpr::pow(RExpr::Const(minus.clone()), e);
    let yv = BoolExpr::var(y);
    let xv = BoolExpr::var(x);
    let mut bound = extra.clone();
    let (amplitude, outputs, site) = match rule {
        RuleId::E => {
            bound.push(y);
            let amp = random_rexpr(rng, ring, &base, 3, true);
            (amp, outs(rng, &base), Site::at(&[y]))
        }
        RuleId::H => {
            bound.extend([x, y]);
            let f = random_bool(rng, &base, 3, 2);
            let amp = RExpr::product(ring, [random_rexpr(rng, ring, &with_x, 2, true), sign(yv.and(&xv.xor(&f)))]);
            (amp, outs(rng, &with_x), Site::at(&[x, y]))
        }
        RuleId::Omega => {
            bound.extend([x, y]);
            let c = if rng.gen_bool(0.5) { 2 } else { 6 };
            let q = random_bool(rng, &with_x, 3, 2);
            let i = ring.phase(c).expect("ring with i");
            let amp = RExpr::product(
                ring,
                [random_rexpr(rng, ring, &with_x, 2, true), RExpr::pow(RExpr::Const(i), yv.clone()), sign(yv.and(&q))],
            );
            (amp, outs(rng, &with_x), Site::at(&[y]))
        }
        RuleId::Hgen => {
            bound.extend([x, y]);
            let g = random_nonzero_bool(rng, &base, 2, 2);
            let f = random_bool(rng, &base, 2, 2);
            let q = xv.and(&g).xor(&g.and(&f)).negate();
            let amp = RExpr::product(ring, [random_rexpr(rng, ring, &with_x, 2, true), sign(yv.and(&q))]);
            (amp, outs(rng, &with_x), Site::at(&[x, y]))
        }
        RuleId::Hrel => {
            bound.extend([x, y]);
            let f = random_nonzero_bool(rng, &base, 2, 2);
            let g = random_nonzero_bool(rng, &base, 2, 2);
            let amp = RExpr::product(
                ring,
                [random_rexpr(rng, ring, &base, 2, true), sign(yv.and(&f).xor(&xv.and(&g)))],
            );
            (amp, outs(rng, &base), Site::at(&[x, y]))
        }
        RuleId::Z => {
            bound.extend([x, y]);
            let amp = RExpr::product(ring, [random_rexpr(rng, ring, &with_x, 2, true), sign(yv.clone())]);
            (amp, outs(rng, &with_x), Site::at(&[y]))
        }
        RuleId::S => {
            bound.extend([x, y]);
            let all = vars_of(&[&with_x, &[y]]);
            let amp = RExpr::product(ring, [random_rexpr(rng, ring, &all, 3, true), RExpr::pow(RExpr::Const(random_elem(rng, ring)), yv.clone())]);
            (amp, outs(rng, &with_x), Site::at(&[y]))
        }
        RuleId::O => {
            // x is an input or a bound variable.
            let x_is_input = rng.gen_bool(0.5);
            let mut ins = inputs.clone();
            if x_is_input {
                ins.push(x);
            } else {
                bound.push(x);
            }
            bound.push(y);
            let inner = vars_of(&[&base, &[y]]);
            let mut factors = vec![random_rexpr(rng, ring, &with_x, 2, false)];
            for polarity in [true, false] {
                for _ in 0..rng.gen_range(1..=2) {
                    let b = RExpr::product(
                        ring,
                        [random_rexpr(rng, ring, &inner, 1, false), RExpr::pow(RExpr::Const(random_elem(rng, ring)), yv.clone())],
                    );
                    let e = random_nonzero_bool(rng, &inner, 2, 2);
                    let guard = if polarity { xv.clone() } else { xv.negate() };
                    factors.push(RExpr::pow(b, guard.and(&e)));
                }
            }
            let amp = RExpr::product(ring, factors);
            let ps = PathSum { ring, inputs: ins, bound, amplitude: amp, outputs: outs(rng, &with_x) };
            return (ps, Site::at(&[x, y]));
        }
        RuleId::A => {
            bound.extend([x, y]);
            let (a, b) = (random_elem(rng, ring), random_elem(rng, ring));
            let pair = RExpr::Mul(vec![
                RExpr::pow(RExpr::Const(a), yv.clone()),
                RExpr::pow(RExpr::Const(b), yv.negate()),
            ]);
            let f = random_nonzero_bool(rng, &with_x, 2, 2);
            let amp = RExpr::product(ring, [random_rexpr(rng, ring, &with_x, 2, false), RExpr::pow(pair, f)]);
            (amp, outs(rng, &with_x), Site::at(&[y]))
        }
        RuleId::VarChange => {
            bound.extend([x, y]);
            let all = vars_of(&[&with_x, &[y]]);
            let f = random_bool(rng, &with_x, 2, 2);
            let amp = random_rexpr(rng, ring, &all, 3, true);
            (amp, outs(rng, &all), Site::with_expr(&[y], f))
        }
    };
    (PathSum { ring, inputs, bound, amplitude, outputs }, site)
}

/// The ring each rule's soundness suite runs over, cycling through the
/// rings where the rule is available.
pub fn rule_ring(rule: RuleId, i: usize) -> RingSpec {
    match rule {
        RuleId::O | RuleId::A => [RingSpec::Rational, RingSpec::Cyclo8, RingSpec::Prime(7)][i % 3],
        RuleId::Omega => [RingSpec::Dyadic8, RingSpec::Cyclo8, RingSpec::Prime(17)][i % 3],
        _ => [RingSpec::Int, RingSpec::Rational, RingSpec::Dyadic8, RingSpec::Prime(7)][i % 4],
    }
}

fn op(kind: GateKind, qubits: Vec<usize>) -> GateOp {
    GateOp { kind, qubits, param: None, line: 0 }
}

fn random_clifford_op(rng: &mut impl Rng, qubits: usize) -> GateOp {
    match rng.gen_range(0..3) {
        0 => op(GateKind::H, vec![rng.gen_range(0..qubits)]),
        1 => op(GateKind::S, vec![rng.gen_range(0..qubits)]),
        _ => {
            let pair: Vec<usize> = (0..qubits).collect::<Vec<_>>().choose_multiple(rng, 2).copied().collect();
            op(GateKind::Cx, pair)
        }
    }
}

/// A random circuit of H, S and CX gates over Dyadic8.
pub fn random_clifford(rng: &mut impl Rng, qubits: usize, max_gates: usize) -> Circuit {
    let n = rng.gen_range(1..=max_gates);
    let gates = (0..n).map(|_| random_clifford_op(rng, qubits)).collect();
    Circuit { ring: RingSpec::Dyadic8, n_qubits: qubits, gates }
}

/// Inserts identities and self-cancelling runs (`HH`, `CX CX`, `SSSS`) at
/// random positions.
pub fn pad_clifford(rng: &mut impl Rng, c: &Circuit, inserts: usize) -> Circuit {
    let mut gates = c.gates.clone();
    for _ in 0..inserts {
        let q = rng.gen_range(0..c.n_qubits);
        let run = match rng.gen_range(0..4) {
            0 => vec![op(GateKind::H, vec![q]); 2],
            1 => vec![op(GateKind::S, vec![q]); 4],
            2 => vec![op(GateKind::I, vec![q])],
            _ => {
                let t = (q + rng.gen_range(1..c.n_qubits)) % c.n_qubits;
                vec![op(GateKind::Cx, vec![q, t]); 2]
            }
        };
        let at = rng.gen_range(0..=gates.len());
        gates.splice(at..at, run);
    }
    Circuit { ring: c.ring, n_qubits: c.n_qubits, gates }
}
