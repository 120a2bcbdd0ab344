//! Line-oriented circuit text format.
//!
//! ```text
//! # comment
//! QUBITS 2
//! H 0
//! CX 0 1
//! ZSPIDER w 1 1 0
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pathsum::{apply_on, gates, Context, PathSum};
use crate::rings::{RingElem, RingSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    I,
    X,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    H,
    Cx,
    Cz,
    Ccx,
    Ch,
    Swap,
    ZSpider,
    HBox,
}

impl GateKind {
    /// Qubit count for fixed-arity gates.
    fn arity(self) -> Option<usize> {
        use GateKind::*;
        match self {
            I | X | Z | S | Sdg | T | Tdg | H => Some(1),
            Cx | Cz | Ch | Swap => Some(2),
            Ccx => Some(3),
            ZSpider | HBox => None,
        }
    }

    pub fn name(self) -> &'static str {
        use GateKind::*;
        match self {
            I => "I",
            X => "X",
            Z => "Z",
            S => "S",
            Sdg => "SDG",
            T => "T",
            Tdg => "TDG",
            H => "H",
            Cx => "CX",
            Cz => "CZ",
            Ccx => "CCX",
            Ch => "CH",
            Swap => "SWAP",
            ZSpider => "ZSPIDER",
            HBox => "HBOX",
        }
    }
}

impl FromStr for GateKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        use GateKind::*;
        Ok(match s.to_ascii_uppercase().as_str() {
            "I" | "ID" => I,
            "X" => X,
            "Z" => Z,
            "S" => S,
            "SDG" => Sdg,
            "T" => T,
            "TDG" => Tdg,
            "H" => H,
            "CX" | "CNOT" => Cx,
            "CZ" => Cz,
            "CCX" | "TOFFOLI" => Ccx,
            "CH" => Ch,
            "SWAP" => Swap,
            "ZSPIDER" => ZSpider,
            "HBOX" => HBox,
            _ => return Err(()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateOp {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub param: Option<RingElem>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub ring: RingSpec,
    pub n_qubits: usize,
    pub gates: Vec<GateOp>,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// One gate as a sum.
fn gate_sum(ctx: &mut Context, op: &GateOp) -> Result<PathSum> {
    use GateKind::*;
    let k = op.qubits.len();
    match op.kind {
        I => Ok(gates::identity(ctx)),
        X => Ok(gates::x(ctx)),
        Z => Ok(gates::z(ctx)),
        S => gates::s(ctx),
        Sdg => gates::sdg(ctx),
        T => gates::t(ctx),
        Tdg => gates::tdg(ctx),
        H => gates::h(ctx),
        Cx => Ok(gates::cx(ctx)),
        Cz => Ok(gates::cz(ctx)),
        Ccx => Ok(gates::ccx(ctx)),
        Ch => gates::ch(ctx),
        Swap => Ok(gates::swap(ctx)),
        ZSpider => gates::zspider(ctx, op.param.clone().expect("spider parameter"), k, k),
        HBox => Ok(gates::hbox(ctx, op.param.clone().expect("box parameter"), k, k)),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn token_cols(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_usize(tok: (usize, &str), line: usize, what: &str) -> Result<usize> {
    tok.1.parse().map_err(|_| perr(line, tok.0, format!("expected {what}, found `{}`", tok.1)))
}

/// Parses and validates a circuit for `ring`.
pub fn parse_circuit(text: &str, ring: RingSpec) -> Result<Circuit> {
    let mut declared: Option<usize> = None;
    let mut gates_out = Vec::new();
    let mut scratch = Context::new(ring);
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks = token_cols(body);
        let Some(&(col0, head)) = toks.first() else { continue };
        if head.eq_ignore_ascii_case("QUBITS") {
            if toks.len() != 2 {
                return Err(perr(line, col0, "QUBITS takes one count"));
            }
            if declared.is_some() || !gates_out.is_empty() {
                return Err(perr(line, col0, "QUBITS must come first and only once"));
            }
            declared = Some(parse_usize(toks[1], line, "qubit count")?);
            continue;
        }
        let kind: GateKind =
            head.parse().map_err(|_| perr(line, col0, format!("unknown gate `{head}`")))?;
        let mut rest = &toks[1..];
        let mut param = None;
        let mut qubit_count = kind.arity();
        if kind.arity().is_none() {
            if rest.len() < 3 {
                return Err(perr(line, col0, format!("{} needs a parameter, n and m", kind.name())));
            }
            let (pcol, ptext) = rest[0];
            param = Some(ring.parse_elem(ptext).map_err(|e| match e {
                Error::Parse { col, msg, .. } => perr(line, pcol + col.saturating_sub(1), msg),
                other => perr(line, pcol, other.to_string()),
            })?);
            let n = parse_usize(rest[1], line, "input count")?;
            let m = parse_usize(rest[2], line, "output count")?;
            if n != m {
                return Err(perr(line, rest[1].0, "spiders in circuits need equal input and output counts"));
            }
            qubit_count = Some(n);
            rest = &rest[3..];
        }
        let arity = qubit_count.expect("arity known");
        if rest.len() != arity {
            let col = rest.first().map_or(col0, |t| t.0);
            return Err(perr(
                line,
                col,
                format!("{} takes {arity} qubit(s), found {}", kind.name(), rest.len()),
            ));
        }
        let mut qubits = Vec::with_capacity(arity);
        for &tok in rest {
            let q = parse_usize(tok, line, "qubit index")?;
            if qubits.contains(&q) {
                return Err(perr(line, tok.0, format!("repeated qubit index {q}")));
            }
            if let Some(n) = declared {
                if q >= n {
                    return Err(perr(line, tok.0, format!("qubit {q} out of range for {n} qubits")));
                }
            }
            qubits.push(q);
        }
        let op = GateOp { kind, qubits, param, line };
        gate_sum(&mut scratch, &op).map_err(|e| perr(line, col0, e.to_string()))?;
        gates_out.push(op);
    }
    let used = gates_out.iter().flat_map(|g| g.qubits.iter().map(|q| q + 1)).max().unwrap_or(0);
    Ok(Circuit { ring, n_qubits: declared.unwrap_or(used), gates: gates_out })
}

/// Builds the circuit's sum gate by gate on top of the identity.
pub fn build_circuit(ctx: &mut Context, c: &Circuit) -> Result<PathSum> {
    let mut acc = PathSum::identity(ctx, c.n_qubits);
    for op in &c.gates {
        let g = gate_sum(ctx, op)?;
        acc = apply_on(ctx, &acc, &g, &op.qubits)?;
    }
    Ok(acc)
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QUBITS {}", self.n_qubits)?;
        for g in &self.gates {
            f.write_str(g.kind.name())?;
            if let Some(p) = &g.param {
                let k = g.qubits.len();
                write!(f, " {} {k} {k}", p.to_string().replace(' ', ""))?;
            }
            for q in &g.qubits {
                write!(f, " {q}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dense_matrix;

    #[test]
    fn two_gate_circuit() {
        let c = parse_circuit("H 0\nCX 0 1", RingSpec::Dyadic8).unwrap();
        assert_eq!(c.n_qubits, 2);
        assert_eq!(c.gates.len(), 2);
    }

    #[test]
    fn comments_and_directive() {
        let c = parse_circuit("# bell\nQUBITS 3\n\nX 2 # flip\n", RingSpec::Int).unwrap();
        assert_eq!(c.n_qubits, 3);
        assert_eq!(c.gates[0].qubits, vec![2]);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_circuit("CCX 0 1 1", RingSpec::Int).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, col: 9, .. }), "{e}");
        let e = parse_circuit("X 0\nT 0", RingSpec::Rational).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, col: 1, .. }), "{e}");
        assert!(parse_circuit("FOO 1", RingSpec::Int).is_err());
        assert!(parse_circuit("CX 0", RingSpec::Int).is_err());
        assert!(parse_circuit("QUBITS 1\nX 1", RingSpec::Int).is_err());
        assert!(parse_circuit("HBOX 2 1 2 0", RingSpec::Int).is_err());
        assert!(parse_circuit("HBOX q 1 1 0", RingSpec::Int).is_err());
    }

    #[test]
    fn spider_lines() {
        let r = RingSpec::Dyadic8;
        let c = parse_circuit("ZSPIDER w 1 1 0\nHBOX -1 1 1 1", r).unwrap();
        let mut ctx = Context::new(r);
        let ps = build_circuit(&mut ctx, &c).unwrap();
        let m = dense_matrix(&ps, 22).unwrap();
        assert_eq!(m.get(3, 3), &-r.omega().unwrap());
        let again = parse_circuit(&c.to_string(), r).unwrap();
        let key = |c: &Circuit| c.gates.iter().map(|g| (g.kind, g.qubits.clone(), g.param.clone())).collect::<Vec<_>>();
        assert_eq!(key(&again), key(&c));
    }

    #[test]
    fn ch_gate_builds() {
        let r = RingSpec::Dyadic8;
        let c = parse_circuit("CH 0 1", r).unwrap();
        let mut ctx = Context::new(r);
        let ps = build_circuit(&mut ctx, &c).unwrap();
        let m = dense_matrix(&ps, 22).unwrap();
        assert_eq!(m.get(3, 3), &-r.inv_sqrt2().unwrap());
    }
}
