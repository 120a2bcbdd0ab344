//! The acceptance suite: golden examples and seeded property checks, each
//! with a time budget.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolexpr::{BitValuation, BoolExpr, Var};
use crate::gen;
use crate::oracle::{dense_matrix, dense_vector, matrices_equal};
use crate::pathsum::{build_circuit, compose, gates, tensor, to_state, Context, PathSum};
use crate::rexpr::{normalize_rexpr, NormalTable, RExpr, Theory};
use crate::rings::{RingElem, RingSpec};
use crate::theories::{
    apply_rule, canonical_balanced_form, eliminate_last_by_rules, equivalent, normalize_field, normalize_ring,
    Config, RuleId, Strategy,
};

const CAP: usize = 22;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "ser_secs")]
    pub elapsed: Duration,
    #[serde(serialize_with = "ser_secs")]
    pub limit: Duration,
}

fn ser_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {} ({:.2}s / {}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

type Check = fn(u64) -> Result<String, String>;

const CRITERIA: [(u8, &str, u64, Check); 8] = [
    (1, "golden controlled-H normal form", 1, golden_controlled_h),
    (2, "golden TX", 1, golden_tx),
    (3, "rule soundness", 60, rule_soundness),
    (4, "ring normalization", 120, ring_completeness),
    (5, "field normalization", 120, field_completeness),
    (6, "expression normalization and axioms", 30, expression_axioms),
    (7, "Clifford rewrite-first", 60, clifford_rewrite_first),
    (8, "encoding cross-checks", 10, encodings),
];

pub fn criterion_ids() -> impl Iterator<Item = u8> {
    CRITERIA.iter().map(|c| c.0)
}

/// Runs one criterion; `None` for an unknown id.
pub fn run_criterion(id: u8, seed: u64) -> Option<CriterionReport> {
    let &(id, name, secs, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let outcome = check(seed);
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(secs);
    let (passed, detail) = match outcome {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; over the time limit")),
        Err(e) => (false, e),
    };
    Some(CriterionReport { id, name, passed, detail, elapsed, limit })
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    criterion_ids().filter_map(|id| run_criterion(id, seed)).collect()
}

fn fail(e: impl fmt::Display) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_controlled_h(_: u64) -> Result<String, String> {
    let ring = RingSpec::Dyadic8;
    let mut ctx = Context::new(ring);
    let ch = gates::ch(&mut ctx).map_err(fail)?;
    let nf = normalize_ring(&to_state(&ch), 20).map_err(fail)?;
    let k = ring.inv_sqrt2().map_err(fail)?;
    let mut want = vec![ring.zero(); 16];
    want[0b0000] = ring.one();
    want[0b0101] = ring.one();
    want[0b1010] = k.clone();
    want[0b1011] = k.clone();
    want[0b1110] = k.clone();
    want[0b1111] = -&k;
    ensure(nf.entries == want, || format!("got {}", nf.to_json()))?;
    let viaconfig = crate::theories::normal_form(&ch, &Config::default(), &mut Vec::new()).map_err(fail)?;
    ensure(viaconfig == nf, || "rewrite-first pass changed the normal form".into())?;
    let lines = nf.to_string().lines().count();
    ensure(lines == 6, || format!("{lines} displayed entries"))?;
    Ok("six nonzero entries match".into())
}

fn golden_tx(_: u64) -> Result<String, String> {
    let ring = RingSpec::Dyadic8;
    let mut ctx = Context::new(ring);
    let t = gates::t(&mut ctx).map_err(fail)?;
    let x = gates::x(&mut ctx);
    let tx = compose(&mut ctx, &t, &x).map_err(fail)?;
    let xin = tx.inputs[0];
    ensure(tx.outputs == vec![BoolExpr::var(xin).negate()], || format!("outputs of {tx}"))?;
    let w = ring.omega().map_err(fail)?;
    for (bit, want) in [(0, w.clone()), (1, ring.one())] {
        let mut val = BitValuation::new(&[xin]);
        val.set_bits(bit);
        let got = tx.amplitude.eval(&val).map_err(fail)?;
        ensure(got == want, || format!("amplitude at x={bit} is {got}"))?;
    }
    let m = dense_matrix(&tx, CAP).map_err(fail)?;
    ensure(m.get(1, 0) == &w && m.get(0, 1) == &ring.one(), || format!("matrix {}", m.to_json()))?;
    ensure(m.get(0, 0).is_zero() && m.get(1, 1).is_zero(), || format!("matrix {}", m.to_json()))?;
    Ok("amplitude ω^(1-x), output 1+x".into())
}

const SOUNDNESS_RULES: [RuleId; 9] = [
    RuleId::E,
    RuleId::H,
    RuleId::Omega,
    RuleId::Hgen,
    RuleId::Hrel,
    RuleId::Z,
    RuleId::S,
    RuleId::O,
    RuleId::A,
];

fn rule_soundness(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_rule = 1000;
    for rule in SOUNDNESS_RULES {
        for i in 0..per_rule {
            let ring = gen::rule_ring(rule, i);
            let (ps, site) = gen::rule_instance(&mut rng, rule, ring);
            ensure(ps.n_outputs() <= 3 && ps.bound.len() <= 5, || format!("{rule}: instance too large: {ps}"))?;
            let mut ctx = Context::new(ring);
            let out = apply_rule(&mut ctx, rule, &ps, &site).map_err(|e| format!("{rule} #{i}: {e}\n  {ps}"))?;
            let (a, b) = (dense_matrix(&ps, CAP).map_err(fail)?, dense_matrix(&out, CAP).map_err(fail)?);
            ensure(matrices_equal(&a, &b), || format!("{rule} #{i} over {}: {ps}  =>  {out}", ring.name()))?;
        }
    }
    Ok(format!("{} instances of each of {} rules", per_rule, SOUNDNESS_RULES.len()))
}

fn ring_completeness(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 0;
    let mut shared = 0;
    for ring in [RingSpec::Int, RingSpec::Rational, RingSpec::Dyadic8] {
        let mut seen: HashMap<Vec<RingElem>, String> = HashMap::new();
        for i in 0..500 {
            let ps = gen::random_closed_sum(&mut rng, ring, false);
            let oracle = dense_vector(&ps, CAP).map_err(fail)?;
            let nf = normalize_ring(&ps, 20).map_err(|e| format!("{} #{i}: {e}", ring.name()))?;
            ensure(nf.entries == oracle, || format!("{} #{i}: {ps}", ring.name()))?;
            let twin = gen::random_twin(&mut rng, &ps);
            let nf2 = normalize_ring(&twin, 20).map_err(fail)?;
            let (s1, s2) = (serde_json::to_string(&nf).map_err(fail)?, serde_json::to_string(&nf2).map_err(fail)?);
            ensure(s1 == s2, || format!("{} #{i}: twins serialize differently\n  {ps}\n  {twin}", ring.name()))?;
            if let Some(prev) = seen.get(&oracle) {
                shared += 1;
                ensure(*prev == s1, || format!("{} #{i}: equal vectors, different forms", ring.name()))?;
            }
            seen.insert(oracle, s1);
            count += 1;
        }
    }
    Ok(format!("{count} sums and twins; {shared} extra coincident vectors"))
}

fn field_completeness(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 0;
    for ring in [RingSpec::Rational, RingSpec::Cyclo8, RingSpec::Prime(7)] {
        for i in 0..500 {
            let ps = gen::random_closed_sum(&mut rng, ring, true);
            let oracle = dense_vector(&ps, CAP).map_err(fail)?;
            let nf = normalize_field(&ps, 20).map_err(|e| format!("{} #{i}: {e}", ring.name()))?;
            ensure(nf.entries == oracle, || format!("{} #{i}: {ps}", ring.name()))?;
            let nr = normalize_ring(&ps, 20).map_err(fail)?;
            ensure(nr == nf, || format!("{} #{i}: ring and field procedures disagree", ring.name()))?;
            count += 1;
        }
        // The pair sums used by the field procedure against literal O and A steps.
        for _ in 0..20 {
            let m = rng.gen_range(1..=4);
            let vars: Vec<Var> = (0..m).map(Var).collect();
            let entries: Vec<RingElem> = (0..1 << m).map(|_| gen::random_elem(&mut rng, ring)).collect();
            let table = NormalTable { vars, entries };
            let lit = eliminate_last_by_rules(&table, &mut Vec::new()).map_err(fail)?;
            let fast: Vec<RingElem> = table.entries.chunks(2).map(|p| &p[0] + &p[1]).collect();
            ensure(lit.entries == fast, || format!("literal elimination differs on {:?}", table.entries))?;
        }
    }
    Ok(format!("{count} multiplicative sums; literal replay agrees"))
}

/// Pointwise equality of two expressions on every assignment of `vars`, and
/// identical tables from the normalizer.
fn same(lhs: &RExpr, rhs: &RExpr, vars: &[Var], ring: RingSpec, theory: Theory) -> Result<(), String> {
    let mut val = BitValuation::new(vars);
    for bits in 0..1u64 << vars.len() {
        val.set_bits(bits);
        let (a, b) = (lhs.eval(&val).map_err(fail)?, rhs.eval(&val).map_err(fail)?);
        ensure(a == b, || format!("differ at {bits:0w$b}: {a} vs {b}", w = vars.len()))?;
    }
    let t1 = normalize_rexpr(lhs, vars, ring, theory, vars.len()).map_err(fail)?;
    let t2 = normalize_rexpr(rhs, vars, ring, theory, vars.len()).map_err(fail)?;
    ensure(t1 == t2, || "tables differ".into())
}

fn pw(r: &RExpr, f: &BoolExpr) -> RExpr {
    RExpr::Pow(Box::new(r.clone()), f.clone())
}

fn mul(xs: &[&RExpr]) -> RExpr {
    RExpr::Mul(xs.iter().map(|&x| x.clone()).collect())
}

fn add(xs: &[&RExpr]) -> RExpr {
    RExpr::Add(xs.iter().map(|&x| x.clone()).collect())
}

fn c(ring: RingSpec, n: i64) -> RExpr {
    RExpr::Const(ring.from_i64(n))
}

fn neg(ring: RingSpec, r: &RExpr) -> RExpr {
    mul(&[&c(ring, -1), r])
}

/// Pointwise inverse of an expression whose constants are all nonzero.
fn inverse(r: &RExpr) -> Result<RExpr, String> {
    Ok(match r {
        RExpr::Const(a) => RExpr::Const(a.try_inv().map_err(fail)?),
        RExpr::Pow(b, f) => RExpr::Pow(Box::new(inverse(b)?), f.clone()),
        RExpr::Mul(xs) => RExpr::Mul(xs.iter().map(inverse).collect::<Result<_, _>>()?),
        RExpr::Add(_) => return Err("no inverse of a sum".into()),
    })
}

fn nonzero_consts(r: &RExpr) -> bool {
    match r {
        RExpr::Const(a) => !a.is_zero(),
        RExpr::Pow(b, _) => nonzero_consts(b),
        RExpr::Mul(xs) | RExpr::Add(xs) => xs.iter().all(nonzero_consts),
    }
}

fn ring_axioms(ring: RingSpec, vars: &[Var], rng: &mut impl Rng) -> Vec<(&'static str, RExpr, RExpr)> {
    let mut r = || gen::random_rexpr(rng, ring, vars, 2, true);
    let (r1, r2, r3) = (r(), r(), r());
    let mut b = || gen::random_bool(rng, vars, 3, 2);
    let (f, f1, f2) = (b(), b(), b());
    let (zero, one) = (c(ring, 0), c(ring, 1));
    let two_r_minus_1 = add(&[&mul(&[&c(ring, 2), &r1]), &c(ring, -1)]);
    vec![
        ("(r1+r2)+r3 = r1+(r2+r3)", add(&[&add(&[&r1, &r2]), &r3]), add(&[&r1, &add(&[&r2, &r3])])),
        ("r1+r2 = r2+r1", add(&[&r1, &r2]), add(&[&r2, &r1])),
        ("r+0 = r", add(&[&r1, &zero]), r1.clone()),
        ("r-r = 0", add(&[&r1, &neg(ring, &r1)]), zero.clone()),
        ("(r1r2)r3 = r1(r2r3)", mul(&[&mul(&[&r1, &r2]), &r3]), mul(&[&r1, &mul(&[&r2, &r3])])),
        ("r1r2 = r2r1", mul(&[&r1, &r2]), mul(&[&r2, &r1])),
        ("r1 = r", mul(&[&r1, &one]), r1.clone()),
        ("r1(r2+r3) = r1r2+r1r3", mul(&[&r1, &add(&[&r2, &r3])]), add(&[&mul(&[&r1, &r2]), &mul(&[&r1, &r3])])),
        ("r^0 = 1", pw(&r1, &BoolExpr::zero()), one.clone()),
        ("1^f = 1", pw(&one, &f), one.clone()),
        ("r^1 = r", pw(&r1, &BoolExpr::one()), r1.clone()),
        ("r^f r^-f = r", mul(&[&pw(&r1, &f), &pw(&r1, &f.negate())]), r1.clone()),
        (
            "r^(f1+f2) = r^f1 + r^f2 - (2r-1)^(f1f2)",
            pw(&r1, &f1.xor(&f2)),
            add(&[&pw(&r1, &f1), &pw(&r1, &f2), &neg(ring, &pw(&two_r_minus_1, &f1.and(&f2)))]),
        ),
        ("r^(f1f2) = (r^f1)^f2", pw(&r1, &f1.and(&f2)), pw(&pw(&r1, &f1), &f2)),
        ("r1^f r2^f = (r1r2)^f", mul(&[&pw(&r1, &f), &pw(&r2, &f)]), pw(&mul(&[&r1, &r2]), &f)),
        (
            "r1^f r2^-f = r1^f + r2^-f - 1",
            mul(&[&pw(&r1, &f), &pw(&r2, &f.negate())]),
            add(&[&pw(&r1, &f), &pw(&r2, &f.negate()), &c(ring, -1)]),
        ),
        (
            "r1^f + r2^f = (r1+r2)^f + 0^f",
            add(&[&pw(&r1, &f), &pw(&r2, &f)]),
            add(&[&pw(&add(&[&r1, &r2]), &f), &pw(&zero, &f)]),
        ),
    ]
}

fn field_axioms(
    ring: RingSpec,
    vars: &[Var],
    rng: &mut impl Rng,
) -> Result<Vec<(&'static str, RExpr, RExpr)>, String> {
    let mut a = || gen::random_rexpr(rng, ring, vars, 2, false);
    let (a1, a2, a3) = (a(), a(), a());
    let an = loop {
        let e = gen::random_rexpr(rng, ring, vars, 2, false);
        if nonzero_consts(&e) {
            break e;
        }
    };
    let mut b = || gen::random_bool(rng, vars, 3, 2);
    let (f, f1, f2) = (b(), b(), b());
    let one = c(ring, 1);
    let inv = inverse(&an)?;
    let inv2 = mul(&[&inv, &inv]);
    Ok(vec![
        ("(a1a2)a3 = a1(a2a3)", mul(&[&mul(&[&a1, &a2]), &a3]), mul(&[&a1, &mul(&[&a2, &a3])])),
        ("a1a2 = a2a1", mul(&[&a1, &a2]), mul(&[&a2, &a1])),
        ("a1 = a", mul(&[&a1, &one]), a1.clone()),
        ("a^0 = 1", pw(&a1, &BoolExpr::zero()), one.clone()),
        ("1^f = 1", pw(&one, &f), one.clone()),
        ("a^1 = a", pw(&a1, &BoolExpr::one()), a1.clone()),
        ("a^f a^-f = a", mul(&[&pw(&a1, &f), &pw(&a1, &f.negate())]), a1.clone()),
        (
            "a^(f1+f2) = a^f1 a^f2 (a^-2)^(f1f2)",
            pw(&an, &f1.xor(&f2)),
            mul(&[&pw(&an, &f1), &pw(&an, &f2), &pw(&inv2, &f1.and(&f2))]),
        ),
        ("a^(f1f2) = (a^f1)^f2", pw(&a1, &f1.and(&f2)), pw(&pw(&a1, &f1), &f2)),
        ("a1^f a2^f = (a1a2)^f", mul(&[&pw(&a1, &f), &pw(&a2, &f)]), pw(&mul(&[&a1, &a2]), &f)),
    ])
}

fn expression_axioms(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rings = [RingSpec::Int, RingSpec::Rational, RingSpec::Dyadic8, RingSpec::Cyclo8, RingSpec::Prime(7)];
    for i in 0..1000 {
        let ring = rings[i % rings.len()];
        let vars: Vec<Var> = (0..rng.gen_range(0..=4)).map(Var).collect();
        let multiplicative = ring.is_field() && rng.gen_bool(0.5);
        let r = gen::random_rexpr(&mut rng, ring, &vars, 3, !multiplicative);
        let theory = if multiplicative { Theory::Field } else { Theory::Ring };
        let t = normalize_rexpr(&r, &vars, ring, theory, 4).map_err(|e| format!("#{i}: {e}"))?;
        let mut val = BitValuation::new(&vars);
        for bits in 0..1u64 << vars.len() {
            val.set_bits(bits);
            let want = r.eval(&val).map_err(fail)?;
            ensure(t.entries[bits as usize] == want, || format!("#{i} over {}: {r:?} at {bits}", ring.name()))?;
        }
    }
    let vars: Vec<Var> = (0..4).map(Var).collect();
    let mut checked = 0;
    for ring in [RingSpec::Int, RingSpec::Rational, RingSpec::Dyadic8, RingSpec::Prime(7)] {
        for _ in 0..25 {
            for (name, l, r) in ring_axioms(ring, &vars, &mut rng) {
                same(&l, &r, &vars, ring, Theory::Ring).map_err(|e| format!("{name} over {}: {e}", ring.name()))?;
                checked += 1;
            }
        }
    }
    for ring in [RingSpec::Rational, RingSpec::Cyclo8, RingSpec::Prime(7)] {
        for _ in 0..25 {
            for (name, l, r) in field_axioms(ring, &vars, &mut rng)? {
                same(&l, &r, &vars, ring, Theory::Field).map_err(|e| format!("{name} over {}: {e}", ring.name()))?;
                checked += 1;
            }
        }
    }
    // The XOR law with a doubled base instead of 2r-1 fails at r=3, f1=x, f2=y.
    let ring = RingSpec::Int;
    let (x, y) = (BoolExpr::var(Var(0)), BoolExpr::var(Var(1)));
    let r = c(ring, 3);
    let doubled = add(&[&pw(&r, &x), &pw(&r, &y), &neg(ring, &pw(&mul(&[&c(ring, 2), &r]), &x.and(&y)))]);
    ensure(same(&pw(&r, &x.xor(&y)), &doubled, &vars[..2], ring, Theory::Ring).is_err(), || {
        "doubled-base XOR law unexpectedly holds".into()
    })?;
    // Likewise the sum law with 0^-f in place of 0^f fails at f=x, x=0.
    let one = c(ring, 1);
    let printed = add(&[&pw(&add(&[&one, &one]), &x), &pw(&c(ring, 0), &x.negate())]);
    ensure(same(&add(&[&pw(&one, &x), &pw(&one, &x)]), &printed, &vars[..1], ring, Theory::Ring).is_err(), || {
        "sum law with 0^-f unexpectedly holds".into()
    })?;
    Ok(format!("1000 expressions; {checked} axiom instances"))
}

fn clifford_rewrite_first(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = 0;
    for i in 0..100 {
        let c = gen::random_clifford(&mut rng, 4, 30);
        let inserts = rng.gen_range(1..=6);
        let p = gen::pad_clifford(&mut rng, &c, inserts);
        let mut forms = Vec::new();
        for circ in [&c, &p] {
            let mut ctx = Context::new(circ.ring);
            let ps = build_circuit(&mut ctx, circ).map_err(fail)?;
            let mut trace = Vec::new();
            let form = canonical_balanced_form(&mut ctx, &ps, Strategy::Cliff, &mut trace).map_err(fail)?;
            steps += trace.len();
            forms.push(form.ok_or_else(|| format!("pair #{i}: no reduced form without fallback"))?);
        }
        ensure(forms[0] == forms[1], || format!("pair #{i}: {} vs {}", forms[0], forms[1]))?;
    }
    Ok(format!("100 pairs equal; {steps} rewrite steps"))
}

fn hadamards(ctx: &mut Context, k: usize) -> Result<PathSum, String> {
    let h = gates::h(ctx).map_err(fail)?;
    let mut acc = h.clone();
    for _ in 1..k {
        acc = tensor(ctx, &acc, &h).map_err(fail)?;
    }
    Ok(acc)
}

/// `Σ_{x,y⃗,z} (-1)^{z[(1+x)(1+f) + x(1+g)]} |x⟩` over `k` variables `y⃗`.
fn odd_prime_state(ring: RingSpec, f: impl Fn(&[BoolExpr]) -> BoolExpr, g: impl Fn(&[BoolExpr]) -> BoolExpr) -> PathSum {
    let mut ctx = Context::new(ring);
    let x = ctx.fresh();
    let ys = ctx.fresh_n(2);
    let z = ctx.fresh();
    let yv: Vec<BoolExpr> = ys.iter().map(|&v| BoolExpr::var(v)).collect();
    let xv = BoolExpr::var(x);
    let big = xv.negate().and(&f(&yv).negate()).xor(&xv.and(&g(&yv).negate()));
    let amplitude = RExpr::pow(RExpr::Const(ring.from_i64(-1)), BoolExpr::var(z).and(&big));
    let mut bound = vec![x];
    bound.extend(ys);
    bound.push(z);
    PathSum { ring, inputs: vec![], bound, amplitude, outputs: vec![xv] }
}

fn encodings(seed: u64) -> Result<String, String> {
    // Unbalanced and balanced controlled-H.
    for ring in [RingSpec::Dyadic8, RingSpec::Cyclo8] {
        let mut ctx = Context::new(ring);
        let a = dense_matrix(&gates::ch(&mut ctx).map_err(fail)?, CAP).map_err(fail)?;
        let b = dense_matrix(&gates::ch_balanced(&mut ctx).map_err(fail)?, CAP).map_err(fail)?;
        ensure(matrices_equal(&a, &b), || format!("controlled-H encodings differ over {}", ring.name()))?;
    }
    // Colour change.
    let ring = RingSpec::Dyadic8;
    let alpha = ring.parse_elem("3 - w").map_err(fail)?;
    for n in 0..=2 {
        for m in 0..=2 {
            let mut ctx = Context::new(ring);
            let mut lhs = gates::zspider(&mut ctx, alpha.clone(), n, m).map_err(fail)?;
            if n > 0 {
                let hs = hadamards(&mut ctx, n)?;
                lhs = compose(&mut ctx, &lhs, &hs).map_err(fail)?;
            }
            if m > 0 {
                let hs = hadamards(&mut ctx, m)?;
                lhs = compose(&mut ctx, &hs, &lhs).map_err(fail)?;
            }
            let rhs = gates::xspider(&mut ctx, alpha.clone(), n, m).map_err(fail)?;
            let (a, b) = (dense_matrix(&lhs, CAP).map_err(fail)?, dense_matrix(&rhs, CAP).map_err(fail)?);
            ensure(matrices_equal(&a, &b), || format!("colour change fails at n={n} m={m}"))?;
        }
    }
    // Two encodings of |0⟩ + 3|1⟩ with different Boolean constraints.
    let ring = RingSpec::Rational;
    let first = odd_prime_state(ring, |y| y[0].and(&y[1]), |y| y[0].or(&y[1]));
    let second = odd_prime_state(ring, |y| y[0].negate().and(&y[1].negate()), |y| y[0].and(&y[1]).negate());
    let mut ctx = Context::new(ring);
    let s = ctx.fresh();
    let direct = PathSum {
        ring,
        inputs: vec![],
        bound: vec![s],
        amplitude: RExpr::product(
            ring,
            [
                RExpr::Const(ring.from_i64(2)),
                RExpr::pow(RExpr::Const(ring.from_i64(3)), BoolExpr::var(s)),
            ],
        ),
        outputs: vec![BoolExpr::var(s)],
    };
    let want = normalize_ring(&direct, 20).map_err(fail)?;
    for (name, ps) in [("first", &first), ("second", &second)] {
        for theory in [Theory::Ring, Theory::Field] {
            let cfg = Config { theory, strategy: Strategy::None, ..Config::default() };
            let nf = crate::theories::normal_form(ps, &cfg, &mut Vec::new()).map_err(fail)?;
            ensure(nf == want, || format!("{name} encoding normalizes to {}", nf.to_json()))?;
        }
    }
    // Verdicts agree with the oracle on small random circuit pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut equal = 0;
    for _ in 0..20 {
        let c = gen::random_clifford(&mut rng, 2, 6);
        let d = if rng.gen_bool(0.5) { gen::pad_clifford(&mut rng, &c, 2) } else { gen::random_clifford(&mut rng, 2, 6) };
        let mut ctx = Context::new(c.ring);
        let (pc, pd) = (build_circuit(&mut ctx, &c).map_err(fail)?, build_circuit(&mut ctx, &d).map_err(fail)?);
        let verdict = equivalent(&pc, &pd, &Config::default()).map_err(fail)?.is_equal();
        let oracle = matrices_equal(&dense_matrix(&pc, CAP).map_err(fail)?, &dense_matrix(&pd, CAP).map_err(fail)?);
        ensure(verdict == oracle, || "verdict disagrees with the oracle".into())?;
        equal += usize::from(verdict);
    }
    Ok(format!("all encodings agree; {equal}/20 random pairs equal"))
}
