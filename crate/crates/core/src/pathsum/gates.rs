//! Gate and generator library.

use crate::boolexpr::{BoolExpr, Var};
use crate::error::Result;
use crate::pathsum::{Context, PathSum};
use crate::rexpr::RExpr;
use crate::rings::{RingElem, RingSpec};

fn v(x: Var) -> BoolExpr {
    BoolExpr::var(x)
}

fn c(e: RingElem) -> RExpr {
    RExpr::Const(e)
}

fn pw(e: RingElem, f: BoolExpr) -> RExpr {
    RExpr::pow(RExpr::Const(e), f)
}

fn sum(
    ring: RingSpec,
    inputs: Vec<Var>,
    bound: Vec<Var>,
    factors: Vec<RExpr>,
    outputs: Vec<BoolExpr>,
) -> PathSum {
    PathSum { ring, inputs, bound, amplitude: RExpr::product(ring, factors), outputs }
}

fn diagonal(ctx: &mut Context, phase: RingElem) -> PathSum {
    let x = ctx.fresh();
    sum(ctx.ring(), vec![x], vec![], vec![pw(phase, v(x))], vec![v(x)])
}

pub fn identity(ctx: &mut Context) -> PathSum {
    PathSum::identity(ctx, 1)
}

/// `X|x⟩ = |1⊕x⟩`.
pub fn x(ctx: &mut Context) -> PathSum {
    let a = ctx.fresh();
    sum(ctx.ring(), vec![a], vec![], vec![], vec![v(a).negate()])
}

pub fn z(ctx: &mut Context) -> PathSum {
    let m = ctx.ring().from_i64(-1);
    diagonal(ctx, m)
}

pub fn s(ctx: &mut Context) -> Result<PathSum> {
    let p = ctx.ring().phase(2)?;
    Ok(diagonal(ctx, p))
}

pub fn sdg(ctx: &mut Context) -> Result<PathSum> {
    let p = ctx.ring().phase(6)?;
    Ok(diagonal(ctx, p))
}

/// `T|y⟩ = ω^y|y⟩`.
pub fn t(ctx: &mut Context) -> Result<PathSum> {
    let p = ctx.ring().phase(1)?;
    Ok(diagonal(ctx, p))
}

pub fn tdg(ctx: &mut Context) -> Result<PathSum> {
    let p = ctx.ring().phase(7)?;
    Ok(diagonal(ctx, p))
}

/// `H|x⟩ = (1/√2) Σ_y (−1)^{xy} |y⟩`.
pub fn h(ctx: &mut Context) -> Result<PathSum> {
    let ring = ctx.ring();
    let k = ring.inv_sqrt2()?;
    let (a, y) = (ctx.fresh(), ctx.fresh());
    Ok(sum(ring, vec![a], vec![y], vec![c(k), pw(ring.from_i64(-1), v(a) & v(y))], vec![v(y)]))
}

pub fn cx(ctx: &mut Context) -> PathSum {
    let (a, b) = (ctx.fresh(), ctx.fresh());
    sum(ctx.ring(), vec![a, b], vec![], vec![], vec![v(a), v(a) ^ v(b)])
}

pub fn cz(ctx: &mut Context) -> PathSum {
    let ring = ctx.ring();
    let (a, b) = (ctx.fresh(), ctx.fresh());
    sum(ring, vec![a, b], vec![], vec![pw(ring.from_i64(-1), v(a) & v(b))], vec![v(a), v(b)])
}

/// Toffoli: `|x₁, x₂, x₃ ⊕ x₁x₂⟩`.
pub fn ccx(ctx: &mut Context) -> PathSum {
    let (a, b, t) = (ctx.fresh(), ctx.fresh(), ctx.fresh());
    sum(ctx.ring(), vec![a, b, t], vec![], vec![], vec![v(a), v(b), v(t) ^ (v(a) & v(b))])
}

pub fn swap(ctx: &mut Context) -> PathSum {
    let (a, b) = (ctx.fresh(), ctx.fresh());
    sum(ctx.ring(), vec![a, b], vec![], vec![], vec![v(b), v(a)])
}

/// Controlled Hadamard as an unbalanced sum:
/// `Σ_y 0^{¬x₁(x₂⊕y)} (1/√2)^{x₁} (−1)^{x₁x₂y} |x₁ y⟩`.
pub fn ch(ctx: &mut Context) -> Result<PathSum> {
    let ring = ctx.ring();
    let k = ring.inv_sqrt2()?;
    let (a, b, y) = (ctx.fresh(), ctx.fresh(), ctx.fresh());
    let factors = vec![
        pw(ring.zero(), v(a).negate() & (v(b) ^ v(y))),
        pw(k, v(a)),
        pw(ring.from_i64(-1), BoolExpr::product([a, b, y])),
    ];
    Ok(sum(ring, vec![a, b], vec![y], factors, vec![v(a), v(y)]))
}

/// Controlled Hadamard as a balanced sum whose paths interfere when the
/// control is 0:
/// `(1/√2) Σ_y ω^{(1−x₁)(2y−1)} (−1)^{x₁x₂y} |x₁, (1⊕x₁)x₂ ⊕ x₁y⟩`.
pub fn ch_balanced(ctx: &mut Context) -> Result<PathSum> {
    let ring = ctx.ring();
    let k = ring.inv_sqrt2()?;
    let (a, b, y) = (ctx.fresh(), ctx.fresh(), ctx.fresh());
    // (1−x₁)(2y−1) = 7 + x₁ + 2y + 6x₁y (mod 8)
    let factors = vec![
        c(k),
        c(ring.phase(7)?),
        pw(ring.phase(1)?, v(a)),
        pw(ring.phase(2)?, v(y)),
        pw(ring.phase(6)?, v(a) & v(y)),
        pw(ring.from_i64(-1), BoolExpr::product([a, b, y])),
    ];
    let out = (v(a).negate() & v(b)) ^ (v(a) & v(y));
    Ok(sum(ring, vec![a, b], vec![y], factors, vec![v(a), out]))
}

/// Z-spider: `2^{−n} Σ_{y⃗,z} α^z (−1)^{Σ yᵢ(xᵢ⊕z)} |z⋯z⟩`.
pub fn zspider(ctx: &mut Context, alpha: RingElem, n: usize, m: usize) -> Result<PathSum> {
    let ring = ctx.ring();
    let xs = ctx.fresh_n(n);
    let ys = ctx.fresh_n(n);
    let zv = ctx.fresh();
    let mut factors = Vec::new();
    if n > 0 {
        factors.push(c(ring.half()?.pow(n as u32)));
    }
    factors.push(pw(alpha, v(zv)));
    let parity = xs.iter().zip(&ys).fold(BoolExpr::zero(), |acc, (&x, &y)| acc ^ (v(y) & (v(x) ^ v(zv))));
    factors.push(pw(ring.from_i64(-1), parity));
    let bound = ys.into_iter().chain([zv]).collect();
    Ok(sum(ring, xs, bound, factors, vec![v(zv); m]))
}

/// X-spider after colour change:
/// `(1/√2)^{n+m} Σ_{y,z⃗} α^y (−1)^{y Σ xᵢ} (−1)^{y Σ zⱼ} |z⃗⟩`.
pub fn xspider(ctx: &mut Context, alpha: RingElem, n: usize, m: usize) -> Result<PathSum> {
    let ring = ctx.ring();
    let xs = ctx.fresh_n(n);
    let y = ctx.fresh();
    let zs = ctx.fresh_n(m);
    let parity = xs.iter().chain(&zs).fold(BoolExpr::zero(), |acc, &x| acc ^ (v(y) & v(x)));
    let mut factors = Vec::new();
    if n + m > 0 {
        factors.push(c(ring.inv_sqrt2()?.pow((n + m) as u32)));
    }
    factors.push(pw(alpha, v(y)));
    factors.push(pw(ring.from_i64(-1), parity));
    let outputs = zs.iter().map(|&z| v(z)).collect();
    let bound = std::iter::once(y).chain(zs).collect();
    Ok(sum(ring, xs, bound, factors, outputs))
}

/// H-box: `Σ_{y⃗} α^{x₁⋯xₙy₁⋯yₘ} |y⃗⟩`.
pub fn hbox(ctx: &mut Context, alpha: RingElem, n: usize, m: usize) -> PathSum {
    let xs = ctx.fresh_n(n);
    let ys = ctx.fresh_n(m);
    let e = BoolExpr::product(xs.iter().chain(&ys).copied());
    let outputs = ys.iter().map(|&y| v(y)).collect();
    sum(ctx.ring(), xs, ys, vec![pw(alpha, e)], outputs)
}

/// `η = Σ_y |yy⟩`.
pub fn cup(ctx: &mut Context) -> PathSum {
    let y = ctx.fresh();
    sum(ctx.ring(), vec![], vec![y], vec![], vec![v(y), v(y)])
}

/// `ε|xy⟩ = ½ Σ_z (−1)^{z(x⊕y)}`.
pub fn cap(ctx: &mut Context) -> Result<PathSum> {
    let ring = ctx.ring();
    let (a, b, z) = (ctx.fresh(), ctx.fresh(), ctx.fresh());
    let factors = vec![c(ring.half()?), pw(ring.from_i64(-1), v(z) & (v(a) ^ v(b)))];
    Ok(sum(ring, vec![a, b], vec![z], factors, vec![]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{dense_matrix, DenseMatrix};
    use crate::pathsum::{compose, tensor};

    fn mat(ps: &PathSum) -> DenseMatrix {
        dense_matrix(ps, 22).unwrap()
    }

    fn rows(ring: RingSpec, xs: &[&[i64]]) -> DenseMatrix {
        DenseMatrix::from_rows(ring, xs.iter().map(|r| r.iter().map(|&e| ring.from_i64(e)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn pauli_x() {
        let mut ctx = Context::new(RingSpec::Int);
        assert_eq!(mat(&x(&mut ctx)), rows(RingSpec::Int, &[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn hbox_matrix() {
        let r = RingSpec::Rational;
        let mut ctx = Context::new(r);
        let a = r.from_i64(5);
        assert_eq!(mat(&hbox(&mut ctx, a, 1, 1)), rows(r, &[&[1, 1], &[1, 5]]));
    }

    #[test]
    fn toffoli_is_permutation() {
        let r = RingSpec::Int;
        let mut ctx = Context::new(r);
        let m = mat(&ccx(&mut ctx));
        for col in 0..8 {
            let row = if col >= 6 { col ^ 1 } else { col };
            for i in 0..8 {
                assert_eq!(m.get(i, col).is_one(), i == row);
            }
        }
    }

    #[test]
    fn phase_gates() {
        let r = RingSpec::Dyadic8;
        let mut ctx = Context::new(r);
        let tm = mat(&t(&mut ctx).unwrap());
        assert_eq!(tm.get(1, 1), &r.omega().unwrap());
        let (t1, t2) = (t(&mut ctx).unwrap(), t(&mut ctx).unwrap());
        let tt = compose(&mut ctx, &t1, &t2).unwrap();
        assert_eq!(mat(&tt), mat(&s(&mut ctx).unwrap()));
        let (a, b) = (sdg(&mut ctx).unwrap(), s(&mut ctx).unwrap());
        let sd = compose(&mut ctx, &a, &b).unwrap();
        assert_eq!(mat(&sd), DenseMatrix::identity(r, 1));
        assert!(t(&mut Context::new(RingSpec::Rational)).is_err());
    }

    #[test]
    fn controlled_hadamard_matrix() {
        let r = RingSpec::Dyadic8;
        let mut ctx = Context::new(r);
        let k = r.inv_sqrt2().unwrap();
        let m = mat(&ch(&mut ctx).unwrap());
        let z = r.zero();
        let o = r.one();
        let want = DenseMatrix::from_rows(
            r,
            vec![
                vec![o.clone(), z.clone(), z.clone(), z.clone()],
                vec![z.clone(), o, z.clone(), z.clone()],
                vec![z.clone(), z.clone(), k.clone(), k.clone()],
                vec![z.clone(), z, k.clone(), -&k],
            ],
        )
        .unwrap();
        assert_eq!(m, want);
        assert_eq!(mat(&ch_balanced(&mut ctx).unwrap()), want);
    }

    #[test]
    fn colour_change() {
        let r = RingSpec::Dyadic8;
        for n in 0..=2 {
            for m in 0..=2 {
                let mut ctx = Context::new(r);
                let alpha = r.parse_elem("3 - w").unwrap();
                let mut lhs = zspider(&mut ctx, alpha.clone(), n, m).unwrap();
                if n > 0 {
                    let hs = hadamards(&mut ctx, n);
                    lhs = compose(&mut ctx, &lhs, &hs).unwrap();
                }
                if m > 0 {
                    let hs = hadamards(&mut ctx, m);
                    lhs = compose(&mut ctx, &hs, &lhs).unwrap();
                }
                let rhs = xspider(&mut ctx, alpha, n, m).unwrap();
                assert_eq!(mat(&lhs), mat(&rhs), "n={n} m={m}");
            }
        }
    }

    fn hadamards(ctx: &mut Context, k: usize) -> PathSum {
        let hh = h(ctx).unwrap();
        let mut acc = hh.clone();
        for _ in 1..k {
            acc = tensor(ctx, &acc, &hh).unwrap();
        }
        acc
    }

    #[test]
    fn cup_and_cap() {
        let r = RingSpec::Rational;
        let mut ctx = Context::new(r);
        let cp = cup(&mut ctx);
        assert_eq!(mat(&cp).entries(), rows(r, &[&[1], &[0], &[0], &[1]]).entries());
        let ca = cap(&mut ctx).unwrap();
        let snake = compose(&mut ctx, &ca, &cp).unwrap();
        assert_eq!(mat(&snake).get(0, 0), &r.from_i64(2));
    }
}
