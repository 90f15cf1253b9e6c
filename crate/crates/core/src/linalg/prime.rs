use std::fmt;

use crate::error::{Error, Result};

/// A prime modulus, checked by trial division at construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if p < 2 || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_u64(self) -> u64 {
        self.0 as u64
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.0 as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0), "inverting zero mod {}", self.0);
        self.pow(a, self.0 - 2)
    }

    pub fn pow(self, mut a: u32, mut k: u32) -> u32 {
        let mut acc = 1u32 % self.0;
        a %= self.0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        acc
    }

    /// `p^k`, panicking on overflow of `u64`.
    pub fn power(self, k: u32) -> u64 {
        (self.0 as u64)
            .checked_pow(k)
            .unwrap_or_else(|| panic!("{}^{} overflows u64", self.0, k))
    }
}

impl fmt::Debug for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_division() {
        for p in [2, 3, 5, 7, 11, 13, 65_537] {
            assert!(Prime::new(p).is_ok(), "{p}");
        }
        for n in [0, 1, 4, 9, 15, 65_535] {
            assert_eq!(Prime::new(n), Err(Error::NotPrime(n)));
        }
    }

    #[test]
    fn field_inverse() {
        let p = Prime::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(p.mul(a, p.inv(a)), 1);
        }
    }
}
