use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{bigint_mod_p, mod_p, Field, FiniteField};
use crate::{Error, Result};

/// Deterministic primality test for `u64` (trial division up to `2^16`, then Miller-Rabin).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The prime field `F_p` for `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::Unsupported(alloc::format!("prime {p} exceeds 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn elem(&self, v: i64) -> u32 {
        mod_p(v, self.p) as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (if s >= self.p { s - self.p } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let (a, b) = (*a as u64, *b as u64);
        (if a >= b { a - b } else { a + self.p - b }) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            (self.p - *a as u64) as u32
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(mod_p(s0, self.p) as u32)
    }
    #[inline]
    fn mul_add(&self, a: &u32, b: &u32, c: &u32) -> u32 {
        ((*a as u64 * *b as u64 + *c as u64) % self.p) as u32
    }
    fn from_i64(&self, v: i64) -> u32 {
        mod_p(v, self.p) as u32
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        bigint_mod_p(v, self.p) as u32
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl FiniteField for PrimeField {
    fn prime(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> u32 {
        1
    }
    fn frobenius(&self, a: &u32) -> u32 {
        *a
    }
    fn to_prime_coeffs(&self, a: &u32) -> Vec<u64> {
        alloc::vec![*a as u64]
    }
    fn from_prime_coeffs(&self, coeffs: &[u64]) -> u32 {
        (coeffs.first().copied().unwrap_or(0) % self.p) as u32
    }
    fn modulus(&self) -> Vec<u64> {
        alloc::vec![0, 1]
    }
    fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p) as u32
    }
    fn index(&self, a: &u32) -> u64 {
        *a as u64
    }
    fn from_index(&self, idx: u64) -> u32 {
        (idx % self.p) as u32
    }
}
