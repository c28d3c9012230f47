//! Finite fields and the rationals.
//!
//! Field contexts are values implementing [`Field`]; elements are plain data of the associated
//! [`Field::Elem`] type and are only meaningful together with the context that produced them.
//! Four finite-field representations are provided, all agreeing on the power-basis coordinates
//! exposed by [`FiniteField::to_prime_coeffs`]:
//!
//! * [`PrimeField`]: `F_p`, residues as `u32`;
//! * [`ExtField`]: `F_{p^m}` as polynomials modulo an irreducible, any size;
//! * [`TableField`]: `F_q` for `q <= 2^20` via log/Zech tables, O(1) arithmetic;
//! * [`BinaryField`]: `F_{2^m}`, `m <= 63`, bit-packed.

mod binary;
mod embed;
mod ext;
mod prime;
mod rational;
mod table;

use alloc::vec::Vec;
use core::fmt::Debug;
use core::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

pub use binary::BinaryField;
pub use embed::{embed, Embedding};
pub use ext::{make_ext, ExtField};
pub use prime::{is_prime, PrimeField};
pub use rational::Rationals;
pub use table::TableField;

use crate::{Error, Result};

/// A field context.
pub trait Field: Clone + Debug {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// `a * b + c`, the workhorse of matrix products.
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(&self.mul(a, b), c)
    }
}

/// A finite field `F_{p^m}` presented as `F_p[T]/(modulus)`.
pub trait FiniteField: Field {
    fn prime(&self) -> u64;
    fn degree(&self) -> u32;
    /// `x -> x^p`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;
    /// Coordinates over `F_p` in the power basis of the defining root, length `degree()`.
    fn to_prime_coeffs(&self, a: &Self::Elem) -> Vec<u64>;
    fn from_prime_coeffs(&self, coeffs: &[u64]) -> Self::Elem;
    /// Monic defining polynomial over `F_p`, constant term first (`[0, 1]` for prime fields).
    fn modulus(&self) -> Vec<u64>;
    fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// `q = p^m` when it fits in a `u64`.
    fn size(&self) -> Option<u64> {
        let mut q: u64 = 1;
        for _ in 0..self.degree() {
            q = q.checked_mul(self.prime())?;
        }
        Some(q)
    }

    fn size_big(&self) -> BigUint {
        num_traits::pow::pow(BigUint::from(self.prime()), self.degree() as usize)
    }

    /// Integer code `sum c_i p^i` of an element; requires `q < 2^64`.
    fn index(&self, a: &Self::Elem) -> u64 {
        let p = self.prime();
        self.to_prime_coeffs(a).iter().rev().fold(0u64, |acc, &c| acc * p + c)
    }

    fn from_index(&self, mut idx: u64) -> Self::Elem {
        let p = self.prime();
        let mut c = Vec::with_capacity(self.degree() as usize);
        for _ in 0..self.degree() {
            c.push(idx % p);
            idx /= p;
        }
        self.from_prime_coeffs(&c)
    }

    /// All field elements in index order. Only sensible for small fields.
    fn elements(&self) -> Vec<Self::Elem> {
        let q = self.size().expect("field too large to enumerate");
        (0..q).map(|i| self.from_index(i)).collect()
    }

    /// Whether two contexts describe the same field with the same presentation.
    fn same_field(&self, other: &Self) -> bool {
        self.prime() == other.prime() && self.modulus() == other.modulus()
    }
}

/// Least `s` with `x^{p^s} = x`; the degree over `F_p` of the subfield generated by `x`.
pub fn element_degree<F: FiniteField>(f: &F, x: &F::Elem) -> u32 {
    let m = f.degree();
    let mut y = x.clone();
    for s in 1..=m {
        y = f.frobenius(&y);
        if y == *x {
            debug_assert!(m % s == 0);
            return s;
        }
    }
    unreachable!("frobenius has order dividing the field degree")
}

/// Degree over `F_p` of the subfield generated by `xs` (1 for the empty list).
pub fn generated_subfield_degree<F: FiniteField>(f: &F, xs: &[F::Elem]) -> u32 {
    xs.iter().fold(1u32, |acc, x| acc.lcm(&element_degree(f, x)))
}

/// Same as [`generated_subfield_degree`], for elements that may come from different contexts.
pub fn generated_subfield_degree_checked<F: FiniteField>(xs: &[(&F, &F::Elem)]) -> Result<u32> {
    let Some((first, _)) = xs.first() else {
        return Ok(1);
    };
    if xs.iter().any(|(g, _)| !g.same_field(first)) {
        return Err(Error::MixedContexts);
    }
    Ok(xs.iter().fold(1u32, |acc, (g, x)| acc.lcm(&element_degree(*g, x))))
}

/// Prime factors of `n` by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A generator of the multiplicative group, found by scanning element indices.
pub fn primitive_element<F: FiniteField>(f: &F) -> Result<F::Elem> {
    let q = f
        .size()
        .ok_or_else(|| Error::Unsupported(alloc::format!("primitive element of F_{}^{}", f.prime(), f.degree())))?;
    if q == 2 {
        return Ok(f.one());
    }
    let n = q - 1;
    let primes = prime_factors(n);
    for idx in 1..q {
        let g = f.from_index(idx);
        if primes.iter().all(|&l| !f.is_one(&f.pow(&g, n / l))) {
            return Ok(g);
        }
    }
    Err(Error::Internal("no primitive element found".into()))
}

/// Multiplicative order of a nonzero element.
pub fn multiplicative_order<F: FiniteField>(f: &F, x: &F::Elem) -> Option<u64> {
    if f.is_zero(x) {
        return None;
    }
    let n = f.size()? - 1;
    let mut ord = n;
    for l in prime_factors(n) {
        while ord % l == 0 && f.is_one(&f.pow(x, ord / l)) {
            ord /= l;
        }
    }
    Some(ord)
}

pub(crate) fn mod_p(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

pub(crate) fn bigint_mod_p(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

#[cfg(test)]
mod tests;
