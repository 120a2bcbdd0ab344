//! Arithmetic in Z[1/2, ω] and Q(ω) for ω a primitive 8th root of unity.
//!
//! Both rings use coordinates over the basis {1, ω, ω², ω³} and reduce with
//! ω⁴ = −1.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Product of two coordinate vectors modulo ω⁴ + 1.
fn mul4<T>(a: &[T; 4], b: &[T; 4]) -> [T; 4]
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let mut out: [T; 4] = std::array::from_fn(|_| T::zero());
    for i in 0..4 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..4 {
            if b[j].is_zero() {
                continue;
            }
            let p = a[i].clone() * b[j].clone();
            let e = i + j;
            if e < 4 {
                out[e] = out[e].clone() + p;
            } else {
                out[e - 4] = out[e - 4].clone() - p;
            }
        }
    }
    out
}

/// Image under the Galois automorphism ω ↦ ω^j (j odd).
fn galois<T>(a: &[T; 4], j: usize) -> [T; 4]
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T>,
{
    let mut out: [T; 4] = std::array::from_fn(|_| T::zero());
    for (n, c) in a.iter().enumerate() {
        let e = (j * n) % 8;
        if e < 4 {
            out[e] = out[e].clone() + c.clone();
        } else {
            out[e - 4] = out[e - 4].clone() - c.clone();
        }
    }
    out
}

/// `σ₃(a)·σ₅(a)·σ₇(a)`, whose product with `a` is the (rational) norm.
fn conjugate_product<T>(a: &[T; 4]) -> [T; 4]
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let p = mul4(&galois(a, 3), &galois(a, 5));
    mul4(&p, &galois(a, 7))
}

fn fmt_coords<T: fmt::Display>(f: &mut fmt::Formatter<'_>, c: &[T; 4]) -> fmt::Result {
    write!(f, "({},{},{},{})", c[0], c[1], c[2], c[3])
}

/// Element `(a + bω + cω² + dω³) / 2^k` of Z[1/2, ω], stored with `k` minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic8 {
    num: [BigInt; 4],
    k: u32,
}

impl Dyadic8 {
    pub fn new(num: [BigInt; 4], k: u32) -> Self {
        let mut d = Dyadic8 { num, k };
        d.canonicalize();
        d
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic8::new([n.into(), BigInt::zero(), BigInt::zero(), BigInt::zero()], 0)
    }

    /// `ω^e`.
    pub fn omega_pow(e: u32) -> Self {
        let e = (e % 8) as usize;
        let mut num: [BigInt; 4] = std::array::from_fn(|_| BigInt::zero());
        if e < 4 {
            num[e] = BigInt::one();
        } else {
            num[e - 4] = -BigInt::one();
        }
        Dyadic8 { num, k: 0 }
    }

    pub fn half() -> Self {
        Dyadic8::new([BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::zero()], 1)
    }

    pub fn numerators(&self) -> &[BigInt; 4] {
        &self.num
    }

    pub fn denominator_exp(&self) -> u32 {
        self.k
    }

    fn canonicalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.k = 0;
            return;
        }
        while self.k > 0 && self.num.iter().all(|c| c.is_even()) {
            for c in &mut self.num {
                *c >>= 1u32;
            }
            self.k -= 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.k == 0 && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    fn scaled(&self, k: u32) -> [BigInt; 4] {
        let shift = k - self.k;
        std::array::from_fn(|i| &self.num[i] << shift)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // a = A / 2^k, a⁻¹ = conj(A)·2^k / N(A) with N(A) = A·conj(A) ∈ Z.
        let conj = conjugate_product(&self.num);
        let norm = mul4(&self.num, &conj);
        debug_assert!(norm[1..].iter().all(Zero::is_zero));
        let n = norm[0].clone();
        let mag = n.abs();
        if mag.is_zero() || (&mag & (&mag - 1u32)) != BigInt::zero() {
            return None;
        }
        let j = mag.bits() as u32 - 1;
        let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
        let num: [BigInt; 4] = std::array::from_fn(|i| (&conj[i] * &sign) << self.k);
        Some(Dyadic8::new(num, j))
    }

    pub fn to_cyclo(&self) -> Cyclo8 {
        let den = BigInt::one() << self.k;
        Cyclo8::new(std::array::from_fn(|i| BigRational::new(self.num[i].clone(), den.clone())))
    }
}

impl Add for &Dyadic8 {
    type Output = Dyadic8;
    fn add(self, rhs: &Dyadic8) -> Dyadic8 {
        let k = self.k.max(rhs.k);
        let a = self.scaled(k);
        let b = rhs.scaled(k);
        Dyadic8::new(std::array::from_fn(|i| &a[i] + &b[i]), k)
    }
}

impl Mul for &Dyadic8 {
    type Output = Dyadic8;
    fn mul(self, rhs: &Dyadic8) -> Dyadic8 {
        Dyadic8::new(mul4(&self.num, &rhs.num), self.k + rhs.k)
    }
}

impl Neg for &Dyadic8 {
    type Output = Dyadic8;
    fn neg(self) -> Dyadic8 {
        Dyadic8 { num: std::array::from_fn(|i| -&self.num[i]), k: self.k }
    }
}

impl fmt::Display for Dyadic8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coords(f, &self.num)?;
        write!(f, "/2^{}", self.k)
    }
}

/// Element of Q(ω) in rational coordinates over {1, ω, ω², ω³}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclo8 {
    c: [BigRational; 4],
}

impl Cyclo8 {
    pub fn new(c: [BigRational; 4]) -> Self {
        Cyclo8 { c }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclo8::new([r, BigRational::zero(), BigRational::zero(), BigRational::zero()])
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let conj = conjugate_product(&self.c);
        let norm = mul4(&self.c, &conj)[0].clone();
        Some(Cyclo8::new(std::array::from_fn(|i| &conj[i] / &norm)))
    }
}

impl Add for &Cyclo8 {
    type Output = Cyclo8;
    fn add(self, rhs: &Cyclo8) -> Cyclo8 {
        Cyclo8::new(std::array::from_fn(|i| &self.c[i] + &rhs.c[i]))
    }
}

impl Mul for &Cyclo8 {
    type Output = Cyclo8;
    fn mul(self, rhs: &Cyclo8) -> Cyclo8 {
        Cyclo8::new(mul4(&self.c, &rhs.c))
    }
}

impl Neg for &Cyclo8 {
    type Output = Cyclo8;
    fn neg(self) -> Cyclo8 {
        Cyclo8::new(std::array::from_fn(|i| -&self.c[i]))
    }
}

impl fmt::Display for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coords(f, &self.c)
    }
}
