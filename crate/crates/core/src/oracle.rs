//! Brute-force semantics: a sum evaluated to its dense matrix by enumerating
//! every assignment of inputs and bound variables.

use std::fmt;

use serde::Serialize;

use crate::boolexpr::{eval_masks, BitValuation, Var};
use crate::error::{Error, Result};
use crate::pathsum::PathSum;
use crate::rings::{RingElem, RingSpec};

/// Default cap on `|inputs| + |bound|`.
pub const DEFAULT_ORACLE_CAP: usize = 22;

/// Row-major `2^outputs × 2^inputs` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    entries: Vec<RingElem>,
}

impl DenseMatrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        DenseMatrix { ring, rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: RingSpec, qubits: usize) -> Self {
        let d = 1 << qubits;
        let mut m = DenseMatrix::zeros(ring, d, d);
        for i in 0..d {
            m.entries[i * d + i] = ring.one();
        }
        m
    }

    pub fn from_rows(ring: RingSpec, rows: Vec<Vec<RingElem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if !r.is_power_of_two() || !c.is_power_of_two() || rows.iter().any(|x| x.len() != c) {
            return Err(Error::NonPowerOfTwo { rows: r, cols: c });
        }
        Ok(DenseMatrix { ring, rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &RingElem {
        &self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.entries
    }

    pub fn mul(&self, o: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != o.rows {
            return Err(Error::ArityMismatch { expected: self.cols, found: o.rows });
        }
        let mut out = DenseMatrix::zeros(self.ring, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * o.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, o: &DenseMatrix) -> DenseMatrix {
        let rows = self.rows * o.rows;
        let cols = self.cols * o.cols;
        let mut out = DenseMatrix::zeros(self.ring, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.entries[(i * o.rows + k) * cols + j * o.cols + l] = a * o.get(k, l);
                    }
                }
            }
        }
        out
    }

    /// `v[x·rows + y] = A[y][x]`: input bits first, then output bits.
    pub fn vectorize(&self) -> Vec<RingElem> {
        let mut v = Vec::with_capacity(self.entries.len());
        for x in 0..self.cols {
            for y in 0..self.rows {
                v.push(self.get(y, x).clone());
            }
        }
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        serde_json::json!({ "ring": self.ring.name(), "rows": rows })
    }
}

impl Serialize for DenseMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `⟨w⃗|Ψ|v⃗⟩ = Σ_τ amplitude(v⃗, τ)` over bound assignments `τ` with
/// `outputs(v⃗, τ) = w⃗`; the first output is the most significant row bit.
pub fn dense_matrix(ps: &PathSum, cap: usize) -> Result<DenseMatrix> {
    let n_vars = ps.inputs.len() + ps.bound.len();
    if n_vars > cap {
        return Err(Error::SizeCap { bits: n_vars, cap });
    }
    let ring = ps.ring;
    let vars: Vec<Var> = ps.inputs.iter().chain(&ps.bound).copied().collect();
    let layout = BitValuation::new(&vars);
    let amp = ps.amplitude.compile(&layout)?;
    let outs: Vec<Vec<u64>> = ps
        .outputs
        .iter()
        .map(|o| {
            o.to_masks(&layout).ok_or_else(|| {
                let v = o.vars().into_iter().find(|v| layout.mask_of(*v).is_none());
                Error::UnassignedVariable(v.expect("some variable is missing"))
            })
        })
        .collect::<Result<_>>()?;
    let rows = 1usize << ps.outputs.len();
    let cols = 1usize << ps.inputs.len();
    let nb = ps.bound.len();
    let mut m = DenseMatrix::zeros(ring, rows, cols);
    for col in 0..cols {
        for tau in 0..1u64 << nb {
            let bits = ((col as u64) << nb) | tau;
            let a = amp.eval(ring, bits);
            if a.is_zero() {
                continue;
            }
            let row = outs.iter().fold(0usize, |acc, masks| (acc << 1) | usize::from(eval_masks(masks, bits)));
            let idx = row * cols + col;
            m.entries[idx] = &m.entries[idx] + &a;
        }
    }
    Ok(m)
}

/// Exact equality of shape and entries.
pub fn matrices_equal(a: &DenseMatrix, b: &DenseMatrix) -> bool {
    a == b
}

/// Dense vector of a closed sum.
pub fn dense_vector(ps: &PathSum, cap: usize) -> Result<Vec<RingElem>> {
    if !ps.is_closed() {
        return Err(Error::NotClosed);
    }
    Ok(dense_matrix(ps, cap)?.entries)
}
