use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use super::{bigint_mod_p, ExtField, Field, FiniteField};
use crate::{Error, Result, Seed};

/// `F_{2^m}` for `m <= 63`, elements packed as bit vectors (bit `i` is the coefficient of `T^i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BinaryField {
    m: u32,
    /// full modulus including the leading bit
    modulus: u64,
}

impl BinaryField {
    pub fn new(m: u32, seed: Seed) -> Result<Self> {
        if m == 0 || m > 63 {
            return Err(Error::Unsupported(alloc::format!("binary field of degree {m}")));
        }
        Ok(Self::from_ext(&super::make_ext(2, m, seed)?).expect("degree checked"))
    }

    pub fn from_ext(ext: &ExtField) -> Result<Self> {
        let m = ext.degree();
        if ext.prime() != 2 || m > 63 {
            return Err(Error::Unsupported(alloc::format!("not a binary field of degree <= 63: {ext:?}")));
        }
        let modulus = ext.modulus().iter().enumerate().fold(0u64, |acc, (i, &c)| acc | (c << i));
        Ok(BinaryField { m, modulus })
    }
}

impl Field for BinaryField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        a ^ b
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        *a
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        let top = 1u64 << self.m;
        let (mut a, mut b) = (*a, *b);
        let mut r = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        r
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // a^(2^m - 2)
        Some(self.pow(a, (1u64 << self.m) - 2))
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v & 1) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        bigint_mod_p(v, 2)
    }
    fn characteristic(&self) -> u64 {
        2
    }
}

impl FiniteField for BinaryField {
    fn prime(&self) -> u64 {
        2
    }
    fn degree(&self) -> u32 {
        self.m
    }
    fn frobenius(&self, a: &u64) -> u64 {
        self.mul(a, a)
    }
    fn to_prime_coeffs(&self, a: &u64) -> Vec<u64> {
        (0..self.m).map(|i| (a >> i) & 1).collect()
    }
    fn from_prime_coeffs(&self, coeffs: &[u64]) -> u64 {
        // Horner in the defining root
        let t = if self.m == 1 { self.modulus & 1 } else { 2 };
        coeffs.iter().rev().fold(0u64, |acc, &c| self.mul(&acc, &t) ^ (c & 1))
    }
    fn modulus(&self) -> Vec<u64> {
        (0..=self.m).map(|i| (self.modulus >> i) & 1).collect()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen::<u64>() & ((1u64 << self.m) - 1)
    }
    fn index(&self, a: &u64) -> u64 {
        *a
    }
    fn from_index(&self, idx: u64) -> u64 {
        idx & ((1u64 << self.m) - 1)
    }
}
