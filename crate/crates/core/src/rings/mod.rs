//! Exact commutative rings and fields used as amplitude carriers.
//!
//! A [`RingSpec`] names one of the supported rings and carries its
//! capabilities; [`RingElem`] is a ring-tagged exact value. Arithmetic between
//! elements of different rings is a logic error: the `checked_*` methods
//! report it, the operator impls panic.

mod cyclo;
mod parse;
pub mod phase;
mod prime;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

pub use cyclo::{Cyclo8, Dyadic8};
pub use phase::{lift, phase_to_amplitude, PhasePoly};
pub use prime::Fp;

use crate::error::{Error, Result};

/// One of the supported coefficient rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// Arbitrary-precision integers.
    Int,
    /// Rationals.
    Rational,
    /// Z[1/2, ω] with ω = e^{2πi/8}.
    Dyadic8,
    /// Q(ω), the 8th cyclotomic field.
    Cyclo8,
    /// Z/pZ for an odd prime p.
    Prime(u64),
}

impl RingSpec {
    /// Validated prime field.
    pub fn prime(p: u64) -> Result<Self> {
        if prime::is_odd_prime(p) {
            Ok(RingSpec::Prime(p))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }

    pub fn is_field(&self) -> bool {
        matches!(self, RingSpec::Rational | RingSpec::Cyclo8 | RingSpec::Prime(_))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingSpec::Prime(p) => *p,
            _ => 0,
        }
    }

    /// Whether 2 is invertible.
    pub fn has_half(&self) -> bool {
        !matches!(self, RingSpec::Int)
    }

    /// Rejects rings the field theory cannot run over.
    pub fn require_field(&self) -> Result<()> {
        if !self.is_field() {
            return Err(Error::NotAField(self.name()));
        }
        if self.characteristic() == 2 {
            return Err(Error::CharacteristicTwo(self.name()));
        }
        Ok(())
    }

    pub fn contains(&self, e: &RingElem) -> bool {
        e.ring() == *self
    }

    pub fn zero(&self) -> RingElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> RingElem {
        self.from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(&self, n: BigInt) -> RingElem {
        match *self {
            RingSpec::Int => RingElem::Int(n),
            RingSpec::Rational => RingElem::Rational(BigRational::from_integer(n)),
            RingSpec::Dyadic8 => RingElem::Dyadic(Dyadic8::from_int(n)),
            RingSpec::Cyclo8 => RingElem::Cyclo(Cyclo8::from_rational(BigRational::from_integer(n))),
            RingSpec::Prime(p) => {
                let r = n.mod_floor_u64(p);
                RingElem::Prime(Fp::new(r as i128, p))
            }
        }
    }

    /// `n / d`, when it exists in the ring.
    pub fn from_ratio(&self, n: i64, d: i64) -> Result<RingElem> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_i64(n).checked_div(&self.from_i64(d))
    }

    pub fn half(&self) -> Result<RingElem> {
        self.from_ratio(1, 2)
            .map_err(|_| self.unsupported("1/2"))
    }

    fn unsupported(&self, what: &str) -> Error {
        Error::UnsupportedConstant { ring: self.name(), what: what.to_string() }
    }

    /// A primitive root of unity of order 1, 2, 4 or 8. Within one ring the
    /// choices are coherent: the 4th root is the square of the 8th root when
    /// both exist.
    pub fn root_of_unity(&self, order: u32) -> Result<RingElem> {
        let what = || self.unsupported(&format!("a primitive {order}th root of unity"));
        match order {
            1 => Ok(self.one()),
            2 => Ok(self.from_i64(-1)),
            4 | 8 => match *self {
                RingSpec::Int | RingSpec::Rational => Err(what()),
                RingSpec::Dyadic8 => Ok(RingElem::Dyadic(Dyadic8::omega_pow(8 / order))),
                RingSpec::Cyclo8 => {
                    Ok(RingElem::Cyclo(Dyadic8::omega_pow(8 / order).to_cyclo()))
                }
                RingSpec::Prime(p) => {
                    if let Some(w) = prime::primitive_root_of_unity(p, 8) {
                        Ok(RingElem::Prime(w.pow(8 / order as u64)))
                    } else if order == 4 {
                        prime::primitive_root_of_unity(p, 4).map(RingElem::Prime).ok_or_else(what)
                    } else {
                        Err(what())
                    }
                }
            },
            other => Err(Error::UnsupportedRootOrder(other)),
        }
    }

    pub fn omega(&self) -> Result<RingElem> {
        self.root_of_unity(8)
    }

    pub fn imag(&self) -> Result<RingElem> {
        self.root_of_unity(4)
    }

    /// `ω^c` for `c` in eighths of a turn; needs only `i` when `c` is even and
    /// nothing when `c` is a multiple of 4.
    pub fn phase(&self, c: u8) -> Result<RingElem> {
        let c = c % 8;
        if c % 4 == 0 {
            Ok(if c == 0 { self.one() } else { self.from_i64(-1) })
        } else if c % 2 == 0 {
            Ok(self.imag()?.pow(u32::from(c / 2)))
        } else {
            Ok(self.omega()?.pow(u32::from(c)))
        }
    }

    /// All phases `ω^c` representable in this ring.
    pub fn phase_table(&self) -> Vec<(u8, RingElem)> {
        (0..8).filter_map(|c| self.phase(c).ok().map(|e| (c, e))).collect()
    }

    pub fn sqrt2(&self) -> Result<RingElem> {
        if let Ok(w) = self.omega() {
            let w3 = w.pow(3);
            return Ok(&w - &w3);
        }
        if let RingSpec::Prime(p) = *self {
            if let Some(r) = prime::sqrt(Fp::new(2, p)) {
                return Ok(RingElem::Prime(r));
            }
        }
        Err(self.unsupported("sqrt(2)"))
    }

    pub fn inv_sqrt2(&self) -> Result<RingElem> {
        self.sqrt2()?.try_inv().map_err(|_| self.unsupported("1/sqrt(2)"))
    }

    /// Parses an element: integers, `a/b`, `w` (or `omega`), `i`, `sqrt2`,
    /// combined with `+ - * /`, `^n` and parentheses; also the serialized
    /// forms `(a,b,c,d)/2^k`, `(a,b,c,d)` and `n mod p`.
    pub fn parse_elem(&self, s: &str) -> Result<RingElem> {
        parse::parse_elem(*self, s)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Int => f.write_str("int"),
            RingSpec::Rational => f.write_str("rational"),
            RingSpec::Dyadic8 => f.write_str("dyadic-cyc8"),
            RingSpec::Cyclo8 => f.write_str("cyc8-field"),
            RingSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse { line: 0, col: 0, msg };
        match s {
            "int" => Ok(RingSpec::Int),
            "rational" => Ok(RingSpec::Rational),
            "dyadic-cyc8" => Ok(RingSpec::Dyadic8),
            "cyc8-field" => Ok(RingSpec::Cyclo8),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .ok_or_else(|| bad(format!("unknown ring `{s}`")))?
                    .parse::<u64>()
                    .map_err(|e| bad(format!("bad prime in `{s}`: {e}")))?;
                RingSpec::prime(p)
            }
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        r.to_u64_digits().1.first().copied().unwrap_or(0)
    }
}

/// An exact element of one of the supported rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingElem {
    Int(BigInt),
    Rational(BigRational),
    Dyadic(Dyadic8),
    Cyclo(Cyclo8),
    Prime(Fp),
}

impl RingElem {
    pub fn ring(&self) -> RingSpec {
        match self {
            RingElem::Int(_) => RingSpec::Int,
            RingElem::Rational(_) => RingSpec::Rational,
            RingElem::Dyadic(_) => RingSpec::Dyadic8,
            RingElem::Cyclo(_) => RingSpec::Cyclo8,
            RingElem::Prime(x) => RingSpec::Prime(x.modulus()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Int(x) => x.is_zero(),
            RingElem::Rational(x) => x.is_zero(),
            RingElem::Dyadic(x) => x.is_zero(),
            RingElem::Cyclo(x) => x.is_zero(),
            RingElem::Prime(x) => x.value() == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingElem::Int(x) => x.is_one(),
            RingElem::Rational(x) => x.is_one(),
            RingElem::Dyadic(x) => x.is_one(),
            RingElem::Cyclo(x) => x.is_one(),
            RingElem::Prime(x) => x.value() == 1,
        }
    }

    fn mismatch(&self, other: &RingElem) -> Error {
        Error::RingMismatch { left: self.ring().name(), right: other.ring().name() }
    }

    pub fn checked_add(&self, other: &RingElem) -> Result<RingElem> {
        Ok(match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a + b),
            (RingElem::Rational(a), RingElem::Rational(b)) => RingElem::Rational(a + b),
            (RingElem::Dyadic(a), RingElem::Dyadic(b)) => RingElem::Dyadic(a + b),
            (RingElem::Cyclo(a), RingElem::Cyclo(b)) => RingElem::Cyclo(a + b),
            (RingElem::Prime(a), RingElem::Prime(b)) if a.modulus() == b.modulus() => {
                RingElem::Prime(a.add(*b))
            }
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn checked_mul(&self, other: &RingElem) -> Result<RingElem> {
        Ok(match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a * b),
            (RingElem::Rational(a), RingElem::Rational(b)) => RingElem::Rational(a * b),
            (RingElem::Dyadic(a), RingElem::Dyadic(b)) => RingElem::Dyadic(a * b),
            (RingElem::Cyclo(a), RingElem::Cyclo(b)) => RingElem::Cyclo(a * b),
            (RingElem::Prime(a), RingElem::Prime(b)) if a.modulus() == b.modulus() => {
                RingElem::Prime(a.mul(*b))
            }
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn checked_sub(&self, other: &RingElem) -> Result<RingElem> {
        self.checked_add(&-other)
    }

    /// `self / other`, when `other` is a unit.
    pub fn checked_div(&self, other: &RingElem) -> Result<RingElem> {
        if self.ring() != other.ring() {
            return Err(self.mismatch(other));
        }
        // Integers divide exactly even though they are not a field.
        if let (RingElem::Int(a), RingElem::Int(b)) = (self, other) {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            if (a % b).is_zero() {
                return Ok(RingElem::Int(a / b));
            }
            return Err(Error::NotInvertible(other.to_string()));
        }
        self.checked_mul(&other.try_inv()?)
    }

    /// Multiplicative inverse, when it exists in the ring.
    pub fn try_inv(&self) -> Result<RingElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = match self {
            RingElem::Int(a) => {
                if a.abs().is_one() {
                    Some(RingElem::Int(a.clone()))
                } else {
                    None
                }
            }
            RingElem::Rational(a) => Some(RingElem::Rational(a.recip())),
            RingElem::Dyadic(a) => a.inverse().map(RingElem::Dyadic),
            RingElem::Cyclo(a) => a.inverse().map(RingElem::Cyclo),
            RingElem::Prime(a) => a.inverse().map(RingElem::Prime),
        };
        inv.ok_or_else(|| Error::NotInvertible(self.to_string()))
    }

    pub fn pow(&self, e: u32) -> RingElem {
        let mut acc = self.ring().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Embedding Z[1/2, ω] → Q(ω); other rings are returned unchanged.
    pub fn to_field(&self) -> RingElem {
        match self {
            RingElem::Dyadic(d) => RingElem::Cyclo(d.to_cyclo()),
            RingElem::Int(n) => RingElem::Rational(BigRational::from_integer(n.clone())),
            other => other.clone(),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Int(a) => write!(f, "{a}"),
            RingElem::Rational(a) => write!(f, "{}/{}", a.numer(), a.denom()),
            RingElem::Dyadic(a) => write!(f, "{a}"),
            RingElem::Cyclo(a) => write!(f, "{a}"),
            RingElem::Prime(a) => write!(f, "{a}"),
        }
    }
}

impl Serialize for RingElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        self.checked_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        match self {
            RingElem::Int(a) => RingElem::Int(-a),
            RingElem::Rational(a) => RingElem::Rational(-a),
            RingElem::Dyadic(a) => RingElem::Dyadic(-a),
            RingElem::Cyclo(a) => RingElem::Cyclo(-a),
            RingElem::Prime(a) => RingElem::Prime(a.neg()),
        }
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, rhs: RingElem) -> RingElem {
        &self + &rhs
    }
}

impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, rhs: RingElem) -> RingElem {
        &self * &rhs
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, rhs: RingElem) -> RingElem {
        &self - &rhs
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [RingSpec; 5] =
        [RingSpec::Int, RingSpec::Rational, RingSpec::Dyadic8, RingSpec::Cyclo8, RingSpec::Prime(7)];

    #[test]
    fn omega_identities() {
        for ring in [RingSpec::Dyadic8, RingSpec::Cyclo8, RingSpec::Prime(17)] {
            let w = ring.omega().unwrap();
            assert_eq!(&w * &w.pow(3), ring.from_i64(-1), "{ring}");
            assert!(w.pow(8).is_one());
            assert_eq!(w.pow(4), ring.from_i64(-1));
            let s = ring.sqrt2().unwrap();
            assert_eq!(&s * &s, ring.from_i64(2));
            assert!((&s * &ring.inv_sqrt2().unwrap()).is_one());
            assert_eq!(w.pow(2), ring.imag().unwrap());
        }
    }

    #[test]
    fn omega_plus_conjugate_is_sqrt2() {
        let r = RingSpec::Dyadic8;
        let w = r.omega().unwrap();
        assert_eq!(&w + &w.pow(7), r.sqrt2().unwrap());
    }

    #[test]
    fn capabilities() {
        assert!(RingSpec::Rational.omega().is_err());
        assert!(RingSpec::Int.half().is_err());
        assert!(RingSpec::Prime(7).imag().is_err());
        assert!(RingSpec::Prime(13).imag().is_ok());
        assert!(RingSpec::Prime(13).omega().is_err());
        assert_eq!(RingSpec::prime(9), Err(Error::InvalidPrime(9)));
        assert_eq!(RingSpec::prime(2), Err(Error::InvalidPrime(2)));
        assert!(RingSpec::Int.require_field().is_err());
        assert!(RingSpec::Prime(7).require_field().is_ok());
    }

    #[test]
    fn errors() {
        let a = RingSpec::Int.one();
        let b = RingSpec::Rational.one();
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch { .. })));
        assert_eq!(RingSpec::Rational.zero().try_inv(), Err(Error::DivisionByZero));
        assert!(matches!(RingSpec::Int.from_i64(2).try_inv(), Err(Error::NotInvertible(_))));
        let p5 = RingElem::Prime(Fp::new(1, 5));
        let p7 = RingElem::Prime(Fp::new(1, 7));
        assert!(p5.checked_mul(&p7).is_err());
    }

    #[test]
    fn serialization() {
        assert_eq!(RingSpec::Int.from_i64(-4).to_string(), "-4");
        assert_eq!(RingSpec::Rational.from_ratio(6, -4).unwrap().to_string(), "-3/2");
        assert_eq!(RingSpec::Rational.from_i64(2).to_string(), "2/1");
        assert_eq!(RingSpec::Dyadic8.inv_sqrt2().unwrap().to_string(), "(0,1,0,-1)/2^1");
        assert_eq!(RingSpec::Prime(7).from_i64(-1).to_string(), "6 mod 7");
        for ring in ALL {
            assert_eq!(ring.to_string().parse::<RingSpec>().unwrap(), ring);
        }
        assert!("fp:8".parse::<RingSpec>().is_err());
    }

    #[test]
    fn dyadic_embeds_in_cyclotomic_field() {
        let r = RingSpec::Dyadic8;
        let a = r.parse_elem("(3 - 2*w + w^3)/4").unwrap();
        let b = r.parse_elem("1/sqrt2 + i").unwrap();
        assert_eq!((&a + &b).to_field(), &a.to_field() + &b.to_field());
        assert_eq!((&a * &b).to_field(), &a.to_field() * &b.to_field());
    }
}
