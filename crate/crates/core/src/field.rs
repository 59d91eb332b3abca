//! Arithmetic in prime fields `F_p` with `p < 2^31`.
//!
//! Coefficients inside polynomials are stored as bare `u32` residues; the
//! [`PrimeField`] context carries the modulus. [`Fp`] bundles a residue with
//! its modulus for the public, self-describing API.

use std::fmt;

use crate::error::{Error, Result};

/// Largest admissible characteristic (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// The field `Z/pZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidCharacteristic(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a % self.p == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, (a % self.p) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce_i64(t0))
    }

    /// Wraps a residue as a self-describing element.
    pub fn element(&self, v: i64) -> Fp {
        Fp {
            value: self.reduce_i64(v),
            modulus: self.p,
        }
    }
}

/// An element of `F_p` together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    fn check(&self, other: &Fp) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::FieldMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn add(&self, other: &Fp) -> Result<Fp> {
        self.check(other)?;
        Ok(Fp {
            value: self.field().add(self.value, other.value),
            modulus: self.modulus,
        })
    }

    pub fn mul(&self, other: &Fp) -> Result<Fp> {
        self.check(other)?;
        Ok(Fp {
            value: self.field().mul(self.value, other.value),
            modulus: self.modulus,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Inverse of a nonzero field element.
pub fn field_inverse(a: Fp) -> Result<Fp> {
    let v = a.field().inv(a.value)?;
    Ok(Fp {
        value: v,
        modulus: a.modulus,
    })
}

/// Deterministic trial division; moduli are below `2^31`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Returns `Some(e)` when `q = p^e`.
pub fn log_base(q: u64, p: u64) -> Option<u32> {
    if q == 0 || p < 2 {
        return None;
    }
    let mut e = 0;
    let mut x = q;
    while x % p == 0 {
        x /= p;
        e += 1;
    }
    (x == 1).then_some(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(field_inverse(f7.element(1)).unwrap().value(), 1);
        assert_eq!(field_inverse(f7.element(3)).unwrap().value(), 5);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(field_inverse(f2.element(1)).unwrap().value(), 1);
        assert!(matches!(
            field_inverse(f7.element(0)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(2147483647).is_ok());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for p in [2u32, 3, 5, 7] {
            let f = PrimeField::new(p as u64).unwrap();
            for a in 0..p {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..p {
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for c in 0..p {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn powers_of_characteristic() {
        assert_eq!(log_base(8, 2), Some(3));
        assert_eq!(log_base(1, 7), Some(0));
        assert_eq!(log_base(49, 7), Some(2));
        assert_eq!(log_base(6, 2), None);
        assert_eq!(log_base(0, 2), None);
    }
}
