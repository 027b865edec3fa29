//! Prime fields GF(p) with p an odd prime below 2^16.
//!
//! Elements are plain `u32` residues in `[0, p)`. Products of two residues
//! fit in 32 bits, so row reductions can accumulate many of them in a `u64`
//! before reducing.

use rand::Rng;

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u32 = 65521;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(3..1 << 16).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn from_u64(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
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

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: u32) -> Result<u32> {
        let a = a % self.p;
        if a == 0 {
            return Err(Error::DivisionByZero(self.p));
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.from_i64(s0))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn to_symmetric(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(1..self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        let f = PrimeField::default();
        assert_eq!(f.inv(1).unwrap(), 1);
        let two_inv = f.inv(2).unwrap();
        assert_eq!(two_inv, 32761);
        assert_eq!(f.mul(2, two_inv), 1);
        assert_eq!(f.inv(0), Err(Error::DivisionByZero(65521)));
    }

    #[test]
    fn inverse_agrees_with_fermat() {
        let f = PrimeField::new(65521).unwrap();
        for a in (1..65521).step_by(977) {
            assert_eq!(f.inv(a).unwrap(), f.pow(a, 65519));
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(65535).is_err());
        assert!(PrimeField::new(65537).is_err());
        assert!(PrimeField::new(101).is_ok());
    }

    #[test]
    fn symmetric_representation() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.to_symmetric(6), -1);
        assert_eq!(f.to_symmetric(3), 3);
        assert_eq!(f.from_i64(-1), 6);
    }
}
