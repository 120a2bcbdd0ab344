//! Unbalanced sums-over-paths `Σ_{y⃗} r |f₁⋯fₙ⟩` as first-class operators.

mod circuit;
pub mod gates;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::boolexpr::{BoolExpr, Var};
use crate::error::{Error, Result};
use crate::rexpr::{table_to_rexpr, NormalTable, RExpr};
use crate::rings::{RingElem, RingSpec};

pub use circuit::{build_circuit, parse_circuit, Circuit, GateKind, GateOp};

/// Source of fresh variables for one engine.
#[derive(Debug, Clone)]
pub struct Context {
    ring: RingSpec,
    next: u32,
}

impl Context {
    pub fn new(ring: RingSpec) -> Self {
        Context { ring, next: 0 }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn fresh(&mut self) -> Var {
        let v = Var(self.next);
        self.next += 1;
        v
    }

    pub fn fresh_n(&mut self, n: usize) -> Vec<Var> {
        (0..n).map(|_| self.fresh()).collect()
    }

    /// Makes later fresh variables avoid everything in `ps`.
    pub fn reserve(&mut self, ps: &PathSum) {
        let top = ps.all_vars().into_iter().map(|v| v.0 + 1).max().unwrap_or(0);
        self.next = self.next.max(top);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSum {
    pub ring: RingSpec,
    pub inputs: Vec<Var>,
    pub bound: Vec<Var>,
    pub amplitude: RExpr,
    pub outputs: Vec<BoolExpr>,
}

impl PathSum {
    /// Builds a sum and checks variable hygiene.
    pub fn new(
        ring: RingSpec,
        inputs: Vec<Var>,
        bound: Vec<Var>,
        amplitude: RExpr,
        outputs: Vec<BoolExpr>,
    ) -> Result<Self> {
        let ps = PathSum { ring, inputs, bound, amplitude, outputs };
        ps.check()?;
        Ok(ps)
    }

    /// `bound` distinct and disjoint from `inputs`; every variable in use is
    /// one or the other; constants are in the sum's ring.
    pub fn check(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for v in self.inputs.iter().chain(&self.bound) {
            if !seen.insert(*v) {
                return Err(Error::IllFormed(format!("variable {v} declared twice")));
            }
        }
        for v in self.used_vars() {
            if !seen.contains(&v) {
                return Err(Error::IllFormed(format!("variable {v} is neither input nor bound")));
            }
        }
        self.amplitude.check_ring(self.ring)
    }

    pub fn n_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_closed(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn is_multiplicative(&self) -> bool {
        self.amplitude.is_multiplicative()
    }

    /// Variables occurring in the amplitude or outputs.
    pub fn used_vars(&self) -> BTreeSet<Var> {
        let mut s = self.amplitude.free_vars();
        for o in &self.outputs {
            s.extend(o.vars());
        }
        s
    }

    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut s = self.used_vars();
        s.extend(self.inputs.iter().copied());
        s.extend(self.bound.iter().copied());
        s
    }

    pub fn size(&self) -> usize {
        self.amplitude.size() + self.outputs.iter().map(BoolExpr::num_monomials).sum::<usize>()
    }

    /// The identity on `n` wires.
    pub fn identity(ctx: &mut Context, n: usize) -> PathSum {
        let xs = ctx.fresh_n(n);
        let outputs = xs.iter().map(|&x| BoolExpr::var(x)).collect();
        PathSum { ring: ctx.ring(), inputs: xs, bound: vec![], amplitude: RExpr::one(ctx.ring()), outputs }
    }

    /// A closed sum with no bound variables and the given constant amplitude.
    pub fn scalar(ring: RingSpec, c: RingElem) -> PathSum {
        PathSum { ring, inputs: vec![], bound: vec![], amplitude: RExpr::Const(c), outputs: vec![] }
    }

    /// Renames every input and bound variable to a fresh one.
    pub fn freshen(&self, ctx: &mut Context) -> PathSum {
        let map: HashMap<Var, Var> =
            self.inputs.iter().chain(&self.bound).map(|&v| (v, ctx.fresh())).collect();
        self.rename(&map)
    }

    pub fn rename(&self, map: &HashMap<Var, Var>) -> PathSum {
        let r = |v: &Var| *map.get(v).unwrap_or(v);
        PathSum {
            ring: self.ring,
            inputs: self.inputs.iter().map(r).collect(),
            bound: self.bound.iter().map(r).collect(),
            amplitude: self.amplitude.rename(map),
            outputs: self.outputs.iter().map(|o| o.rename(map)).collect(),
        }
    }

    /// Replaces the amplitude by `c · amplitude`.
    pub fn scale(&self, c: RingElem) -> PathSum {
        let mut out = self.clone();
        out.amplitude = RExpr::product(self.ring, [RExpr::Const(c), self.amplitude.clone()]);
        out
    }
}

fn ring_check(a: &PathSum, b: &PathSum) -> Result<()> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch { left: a.ring.name(), right: b.ring.name() });
    }
    Ok(())
}

/// `Φ ∘ Ψ`: Φ's inputs are replaced by Ψ's outputs and Φ's bound variables
/// are freshened.
pub fn compose(ctx: &mut Context, phi: &PathSum, psi: &PathSum) -> Result<PathSum> {
    ring_check(phi, psi)?;
    if phi.n_inputs() != psi.n_outputs() {
        return Err(Error::ArityMismatch { expected: phi.n_inputs(), found: psi.n_outputs() });
    }
    let mut map: HashMap<Var, BoolExpr> =
        phi.inputs.iter().zip(&psi.outputs).map(|(&x, f)| (x, f.clone())).collect();
    let mut bound = psi.bound.clone();
    for &y in &phi.bound {
        let z = ctx.fresh();
        map.insert(y, BoolExpr::var(z));
        bound.push(z);
    }
    let amplitude =
        RExpr::product(psi.ring, [psi.amplitude.clone(), phi.amplitude.subst_many(&map)]);
    let outputs = phi.outputs.iter().map(|o| o.subst_many(&map)).collect();
    Ok(PathSum { ring: psi.ring, inputs: psi.inputs.clone(), bound, amplitude, outputs })
}

/// Applies `gate` to the given output wires of `base`, leaving the other
/// wires untouched.
pub fn apply_on(ctx: &mut Context, base: &PathSum, gate: &PathSum, wires: &[usize]) -> Result<PathSum> {
    ring_check(base, gate)?;
    if gate.n_inputs() != wires.len() || gate.n_outputs() != wires.len() {
        return Err(Error::ArityMismatch { expected: gate.n_inputs(), found: wires.len() });
    }
    if let Some(&w) = wires.iter().find(|&&w| w >= base.n_outputs()) {
        return Err(Error::ArityMismatch { expected: base.n_outputs(), found: w + 1 });
    }
    let mut map: HashMap<Var, BoolExpr> =
        gate.inputs.iter().zip(wires).map(|(&x, &w)| (x, base.outputs[w].clone())).collect();
    let mut bound = base.bound.clone();
    for &y in &gate.bound {
        let z = ctx.fresh();
        map.insert(y, BoolExpr::var(z));
        bound.push(z);
    }
    let amplitude =
        RExpr::product(base.ring, [base.amplitude.clone(), gate.amplitude.subst_many(&map)]);
    let mut outputs = base.outputs.clone();
    for (o, &w) in gate.outputs.iter().zip(wires) {
        outputs[w] = o.subst_many(&map);
    }
    Ok(PathSum { ring: base.ring, inputs: base.inputs.clone(), bound, amplitude, outputs })
}

/// `Ψ ⊗ Φ`; Φ is freshened so the two share no variables.
pub fn tensor(ctx: &mut Context, psi: &PathSum, phi: &PathSum) -> Result<PathSum> {
    ring_check(psi, phi)?;
    let phi = phi.freshen(ctx);
    Ok(PathSum {
        ring: psi.ring,
        inputs: psi.inputs.iter().chain(&phi.inputs).copied().collect(),
        bound: psi.bound.iter().chain(&phi.bound).copied().collect(),
        amplitude: RExpr::product(psi.ring, [psi.amplitude.clone(), phi.amplitude]),
        outputs: psi.outputs.iter().chain(&phi.outputs).cloned().collect(),
    })
}

/// Bends every input into an output with a cup: the closed sum whose vector
/// is indexed by input bits followed by output bits.
pub fn to_state(ps: &PathSum) -> PathSum {
    PathSum {
        ring: ps.ring,
        inputs: vec![],
        bound: ps.inputs.iter().chain(&ps.bound).copied().collect(),
        amplitude: ps.amplitude.clone(),
        outputs: ps.inputs.iter().map(|&x| BoolExpr::var(x)).chain(ps.outputs.iter().cloned()).collect(),
    }
}

/// `A|x⃗⟩ = Σ_{y⃗} Π_{v⃗} α_{v⃗}^{v⃗ = x⃗y⃗} |y⃗⟩` with `α_{x⃗y⃗} = A[y][x]`.
pub fn from_matrix(ctx: &mut Context, rows: &[Vec<RingElem>]) -> Result<PathSum> {
    let ring = ctx.ring();
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    let pow2 = |k: usize| k.is_power_of_two();
    if !pow2(n_rows) || !pow2(n_cols) || rows.iter().any(|r| r.len() != n_cols) {
        return Err(Error::NonPowerOfTwo { rows: n_rows, cols: n_cols });
    }
    let n = n_cols.trailing_zeros() as usize;
    let m = n_rows.trailing_zeros() as usize;
    let xs = ctx.fresh_n(n);
    let ys = ctx.fresh_n(m);
    let mut entries = Vec::with_capacity(n_rows * n_cols);
    for x in 0..n_cols {
        for row in rows {
            if row[x].ring() != ring {
                return Err(Error::RingMismatch { left: ring.name(), right: row[x].ring().name() });
            }
            entries.push(row[x].clone());
        }
    }
    let vars: Vec<Var> = xs.iter().chain(&ys).copied().collect();
    let amplitude = table_to_rexpr(ring, &NormalTable { vars, entries });
    let outputs = ys.iter().map(|&y| BoolExpr::var(y)).collect();
    Ok(PathSum { ring, inputs: xs, bound: ys, amplitude, outputs })
}

impl fmt::Display for PathSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.inputs.is_empty() {
            let ins: Vec<String> = self.inputs.iter().map(ToString::to_string).collect();
            write!(f, "|{}⟩ ↦ ", ins.join(", "))?;
        }
        if !self.bound.is_empty() {
            let bs: Vec<String> = self.bound.iter().map(ToString::to_string).collect();
            write!(f, "Σ_{{{}}} ", bs.join(", "))?;
        }
        let outs: Vec<String> = self.outputs.iter().map(ToString::to_string).collect();
        write!(f, "{} |{}⟩", self.amplitude, outs.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{dense_matrix, DenseMatrix};

    fn ring() -> RingSpec {
        RingSpec::Dyadic8
    }

    fn m(ps: &PathSum) -> DenseMatrix {
        dense_matrix(ps, 22).unwrap()
    }

    #[test]
    fn tx_example() {
        let mut ctx = Context::new(ring());
        let t = gates::t(&mut ctx).unwrap();
        let x = gates::x(&mut ctx);
        let tx = compose(&mut ctx, &t, &x).unwrap();
        assert_eq!(tx.outputs[0], BoolExpr::var(tx.inputs[0]).negate());
        let w = ring().omega().unwrap();
        for (bit, want) in [(false, w.clone()), (true, ring().one())] {
            let val = [(tx.inputs[0], bit)];
            assert_eq!(tx.amplitude.eval(&val[..]).unwrap(), want);
        }
        let mat = m(&tx);
        assert_eq!(mat.get(1, 0), &w);
        assert!(mat.get(0, 1).is_one());
    }

    #[test]
    fn composition_is_matrix_product() {
        let mut ctx = Context::new(ring());
        let h = gates::h(&mut ctx).unwrap();
        let s = gates::s(&mut ctx).unwrap();
        let hs = compose(&mut ctx, &h, &s).unwrap();
        assert_eq!(m(&hs), m(&h).mul(&m(&s)).unwrap());
        let hh = compose(&mut ctx, &h, &h).unwrap();
        hh.check().unwrap();
        assert_eq!(m(&hh), DenseMatrix::identity(ring(), 1));
    }

    #[test]
    fn tensor_is_kronecker() {
        let mut ctx = Context::new(ring());
        let x = gates::x(&mut ctx);
        let h = gates::h(&mut ctx).unwrap();
        let xh = tensor(&mut ctx, &x, &h).unwrap();
        assert_eq!(m(&xh), m(&x).kron(&m(&h)));
        let id = PathSum::identity(&mut ctx, 1);
        let id2 = tensor(&mut ctx, &id, &id).unwrap();
        id2.check().unwrap();
        assert_eq!(m(&id2), DenseMatrix::identity(ring(), 2));
    }

    #[test]
    fn state_is_vectorization() {
        let mut ctx = Context::new(ring());
        let id = PathSum::identity(&mut ctx, 1);
        let v = m(&to_state(&id));
        assert_eq!(v.entries(), DenseMatrix::identity(ring(), 1).vectorize().as_slice());
        let ch = gates::ch(&mut ctx).unwrap();
        assert_eq!(m(&to_state(&ch)).entries(), m(&ch).vectorize().as_slice());
    }

    #[test]
    fn matrix_round_trip() {
        let r = RingSpec::Rational;
        let mut ctx = Context::new(r);
        let rows: Vec<Vec<RingElem>> =
            (0..4).map(|i| (0..2).map(|j| r.from_i64(3 * i - j)).collect()).collect();
        let ps = from_matrix(&mut ctx, &rows).unwrap();
        assert!(ps.is_multiplicative());
        assert_eq!(m(&ps), DenseMatrix::from_rows(r, rows).unwrap());
        assert!(from_matrix(&mut ctx, &[vec![r.one(); 3]]).is_err());
    }

    #[test]
    fn arity_errors() {
        let mut ctx = Context::new(ring());
        let cx = gates::cx(&mut ctx);
        let x = gates::x(&mut ctx);
        assert!(matches!(compose(&mut ctx, &cx, &x), Err(Error::ArityMismatch { .. })));
        let other = gates::x(&mut Context::new(RingSpec::Int));
        assert!(matches!(compose(&mut ctx, &x, &other), Err(Error::RingMismatch { .. })));
    }
}
