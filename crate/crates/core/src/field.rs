//! Prime field arithmetic GF(p) for 2 <= p < 2^31.
//!
//! Elements are `u64` values in `[0, p)`. Products of two reduced elements
//! fit in a `u64` because p < 2^31, so no widening is needed anywhere.

use crate::error::{Error, Result};

/// A prime field GF(p), primality checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1u64 << 31).contains(&p) {
            return Err(Error::CharacteristicOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Canonical representative of an arbitrary integer.
    pub fn element(&self, value: i64) -> u64 {
        value.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b { a - b } else { a + self.p - b }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 { 0 } else { self.p - a }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem; panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in GF({})", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }
}

/// Deterministic Miller-Rabin; the bases 2, 3, 5, 7 decide primality
/// for every n < 3_215_031_751, which covers the whole [2, 2^31) range.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_check() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(101).is_ok());
        assert!(PrimeField::new(2147483647).is_ok()); // 2^31 - 1, Mersenne
        assert_eq!(PrimeField::new(1), Err(Error::CharacteristicOutOfRange(1)));
        assert_eq!(PrimeField::new(91), Err(Error::NotPrime(91))); // 7 * 13
        assert_eq!(PrimeField::new(1 << 31), Err(Error::CharacteristicOutOfRange(1 << 31)));
    }

    #[test]
    fn arithmetic_mod_101() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(f.add(100, 2), 1);
        assert_eq!(f.sub(0, 1), 100);
        assert_eq!(f.mul(100, 100), 1);
        assert_eq!(f.mul(f.inv(37), 37), 1);
        assert_eq!(f.element(-1), 100);
        assert_eq!(f.pow(2, 100), 1); // Fermat
    }

    #[test]
    fn inverses_everywhere() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }
}
