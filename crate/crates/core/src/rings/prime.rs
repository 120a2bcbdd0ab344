use std::fmt;

/// Residue modulo an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: i128, p: u64) -> Self {
        Fp { v: v.rem_euclid(p as i128) as u64, p }
    }

    pub fn value(self) -> u64 {
        self.v
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn add(self, o: Fp) -> Fp {
        Fp { v: ((self.v as u128 + o.v as u128) % self.p as u128) as u64, p: self.p }
    }

    pub fn mul(self, o: Fp) -> Fp {
        Fp { v: ((self.v as u128 * o.v as u128) % self.p as u128) as u64, p: self.p }
    }

    pub fn neg(self) -> Fp {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp { v: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Fp> {
        (self.v != 0).then(|| self.pow(self.p - 2))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.v, self.p)
    }
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A primitive root of unity of the given (power-of-two) order in F_p, found
/// deterministically as the first `a^((p-1)/order)` of exact order.
pub fn primitive_root_of_unity(p: u64, order: u64) -> Option<Fp> {
    if order == 1 {
        return Some(Fp::new(1, p));
    }
    if (p - 1) % order != 0 {
        return None;
    }
    let exp = (p - 1) / order;
    (2..p).map(|a| Fp::new(a as i128, p).pow(exp)).find(|h| h.pow(order / 2).v != 1)
}

/// Square root in F_p by Tonelli–Shanks.
pub fn sqrt(a: Fp) -> Option<Fp> {
    let p = a.p;
    if a.v == 0 {
        return Some(a);
    }
    if a.pow((p - 1) / 2).v != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).map(|z| Fp::new(z as i128, p)).find(|z| z.pow((p - 1) / 2).v == p - 1)?;
    let mut m = s;
    let mut c = z.pow(q);
    let mut t = a.pow(q);
    let mut r = a.pow(q.div_ceil(2));
    while t.v != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt.v != 1 {
            tt = tt.mul(tt);
            i += 1;
        }
        let b = c.pow(1 << (m - i - 1));
        m = i;
        c = b.mul(b);
        t = t.mul(c);
        r = r.mul(b);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_odd_prime(3));
        assert!(is_odd_prime(7));
        assert!(!is_odd_prime(2));
        assert!(!is_odd_prime(9));
        assert!(!is_odd_prime(1));
    }

    #[test]
    fn roots_and_sqrt() {
        let w = primitive_root_of_unity(17, 8).unwrap();
        assert_eq!(w.pow(8).value(), 1);
        assert_eq!(w.pow(4).value(), 16);
        assert!(primitive_root_of_unity(7, 4).is_none());
        let two = Fp::new(2, 7);
        let r = sqrt(two).unwrap();
        assert_eq!(r.mul(r), two);
        assert!(sqrt(Fp::new(3, 7)).is_none());
    }

    #[test]
    fn inverse() {
        for v in 1..7 {
            let a = Fp::new(v, 7);
            assert_eq!(a.mul(a.inverse().unwrap()).value(), 1);
        }
        assert!(Fp::new(0, 7).inverse().is_none());
    }
}
