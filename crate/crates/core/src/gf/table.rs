use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use rand::Rng;

use super::{bigint_mod_p, mod_p, primitive_element, ExtField, Field, FiniteField};
use crate::{Error, Result, Seed};

const MAX_TABLE_SIZE: u64 = 1 << 20;

/// `F_q` for `q <= 2^20` with Zech-logarithm tables.
///
/// An element is encoded as `0` for zero and `1 + k` for `w^k`, where `w` is a fixed primitive
/// element. Multiplication, addition and inversion are table lookups.
#[derive(Clone)]
pub struct TableField(Arc<Inner>);

struct Inner {
    ext: ExtField,
    p: u64,
    m: u32,
    q: u64,
    /// `exp[k]` = index of `w^k`
    exp: Vec<u32>,
    /// `log[i]` = `k` with `w^k` having index `i` (unused at 0)
    log: Vec<u32>,
    /// `zech[n]` = code of `1 + w^n`
    zech: Vec<u32>,
}

impl fmt::Debug for TableField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TableField({:?})", self.0.ext)
    }
}

impl PartialEq for TableField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.ext == other.0.ext
    }
}

impl Eq for TableField {}

impl TableField {
    pub fn new(p: u64, m: u32, seed: Seed) -> Result<Self> {
        Self::from_ext(&super::make_ext(p, m, seed)?)
    }

    /// Table representation of an existing presentation; coordinates agree with `ext`.
    pub fn from_ext(ext: &ExtField) -> Result<Self> {
        let q = ext
            .size()
            .filter(|&q| q <= MAX_TABLE_SIZE)
            .ok_or_else(|| Error::Unsupported(alloc::format!("table field larger than 2^20: {ext:?}")))?;
        let w = primitive_element(ext)?;
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![0u32; q as usize];
        let mut x = ext.one();
        for k in 0..n {
            let idx = ext.index(&x);
            exp[k] = idx as u32;
            log[idx as usize] = k as u32;
            x = ext.mul(&x, &w);
        }
        let p = ext.prime();
        let mut zech = vec![0u32; n];
        for k in 0..n {
            let idx = exp[k] as u64;
            let d0 = idx % p;
            let sum = idx - d0 + (d0 + 1) % p;
            zech[k] = if sum == 0 { 0 } else { log[sum as usize] + 1 };
        }
        Ok(TableField(Arc::new(Inner { ext: ext.clone(), p, m: ext.degree(), q, exp, log, zech })))
    }

    /// The presentation the tables were built from.
    pub fn ext(&self) -> &ExtField {
        &self.0.ext
    }

    pub fn to_ext(&self, a: &u32) -> Vec<u64> {
        self.0.ext.from_index(self.index(a))
    }

    pub fn from_ext_elem(&self, x: &Vec<u64>) -> u32 {
        self.code_of_index(self.0.ext.index(x))
    }

    #[inline]
    fn code_of_index(&self, idx: u64) -> u32 {
        if idx == 0 {
            0
        } else {
            self.0.log[idx as usize] + 1
        }
    }

    #[inline]
    fn order(&self) -> u64 {
        self.0.q - 1
    }
}

impl Field for TableField {
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
        if *a == 0 {
            return *b;
        }
        if *b == 0 {
            return *a;
        }
        let n = self.order();
        let (i, j) = ((*a - 1) as u64, (*b - 1) as u64);
        let z = self.0.zech[((j + n - i) % n) as usize];
        if z == 0 {
            0
        } else {
            ((i + (z - 1) as u64) % n) as u32 + 1
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 || self.0.p == 2 {
            return *a;
        }
        let n = self.order();
        (((*a - 1) as u64 + n / 2) % n) as u32 + 1
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let n = self.order();
        (((*a - 1) as u64 + (*b - 1) as u64) % n) as u32 + 1
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let n = self.order();
        Some(((n - (*a - 1) as u64) % n) as u32 + 1)
    }
    fn pow(&self, a: &u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if *a == 0 {
            return 0;
        }
        let n = self.order();
        (((*a - 1) as u128 * e as u128 % n as u128) as u64) as u32 + 1
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.code_of_index(mod_p(v, self.0.p))
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        self.code_of_index(bigint_mod_p(v, self.0.p))
    }
    fn characteristic(&self) -> u64 {
        self.0.p
    }
}

impl FiniteField for TableField {
    fn prime(&self) -> u64 {
        self.0.p
    }
    fn degree(&self) -> u32 {
        self.0.m
    }
    fn frobenius(&self, a: &u32) -> u32 {
        if *a == 0 {
            return 0;
        }
        let n = self.order();
        (((*a - 1) as u64 * self.0.p) % n) as u32 + 1
    }
    fn to_prime_coeffs(&self, a: &u32) -> Vec<u64> {
        self.to_ext(a)
    }
    fn from_prime_coeffs(&self, coeffs: &[u64]) -> u32 {
        self.from_ext_elem(&self.0.ext.from_prime_coeffs(coeffs))
    }
    fn modulus(&self) -> Vec<u64> {
        self.0.ext.modulus()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.0.q) as u32
    }
    fn size(&self) -> Option<u64> {
        Some(self.0.q)
    }
    fn index(&self, a: &u32) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0.exp[(*a - 1) as usize] as u64
        }
    }
    fn from_index(&self, idx: u64) -> u32 {
        self.code_of_index(idx % self.0.q)
    }
    fn same_field(&self, other: &Self) -> bool {
        self == other
    }
}
