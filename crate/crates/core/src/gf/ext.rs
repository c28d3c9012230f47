use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};

use super::{bigint_mod_p, mod_p, Field, FiniteField, PrimeField};
use crate::exactpoly::FieldPoly;
use crate::{Error, Result, Seed};

/// `F_{p^m} = F_p[T]/(modulus)`, elements stored as coefficient vectors of length `m`.
#[derive(Clone)]
pub struct ExtField(Arc<Inner>);

struct Inner {
    p: u64,
    m: usize,
    /// monic, length m + 1
    modulus: Vec<u64>,
    /// column j holds (T^j)^p reduced; used for the Frobenius map
    frob: Vec<Vec<u64>>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}{:?}", self.0.p, self.0.m, self.0.modulus)
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for ExtField {}

impl ExtField {
    /// Builds `F_p[T]/(modulus)`; `modulus` must be monic and irreducible over `F_p`.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let fp = PrimeField::new(p)?;
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        while modulus.last() == Some(&0) {
            modulus.pop();
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidArgument("modulus must be monic of positive degree".into()));
        }
        let poly = FieldPoly::new(fp, modulus.iter().map(|&c| c as u32).collect());
        if !poly.is_irreducible() {
            return Err(Error::InvalidArgument(alloc::format!("modulus {modulus:?} is reducible mod {p}")));
        }
        Ok(Self::new_unchecked(p, modulus))
    }

    pub(crate) fn new_unchecked(p: u64, modulus: Vec<u64>) -> Self {
        let m = modulus.len() - 1;
        let mut inner = Inner { p, m, modulus, frob: Vec::new() };
        // T^p, then its powers
        let mut t = vec![0u64; m];
        if m == 1 {
            t[0] = (p - inner.modulus[0]) % p;
        } else {
            t[1] = 1;
        }
        let tp = inner.pow_u64(&t, p);
        let mut col = inner.one();
        let mut frob = Vec::with_capacity(m);
        for _ in 0..m {
            frob.push(col.clone());
            col = inner.mul(&col, &tp);
        }
        inner.frob = frob;
        ExtField(Arc::new(inner))
    }

    /// The prime field `F_p` presented as a degree-one extension.
    pub fn prime_field(p: u64) -> Result<Self> {
        PrimeField::new(p)?;
        Ok(Self::new_unchecked(p, vec![0, 1]))
    }

    /// The defining root `T` (the ring generator).
    pub fn generator(&self) -> Vec<u64> {
        let m = self.0.m;
        let mut g = vec![0u64; m];
        if m == 1 {
            g[0] = (self.0.p - self.0.modulus[0]) % self.0.p;
        } else {
            g[1] = 1;
        }
        g
    }

    /// The modulus as a polynomial over `F_p`.
    pub fn modulus_poly(&self) -> FieldPoly<PrimeField> {
        let fp = PrimeField::new(self.0.p).expect("validated at construction");
        FieldPoly::new(fp, self.0.modulus.iter().map(|&c| c as u32).collect())
    }

    pub fn elem(&self, coeffs: &[i64]) -> Vec<u64> {
        let c: Vec<u64> = coeffs.iter().map(|&v| mod_p(v, self.0.p)).collect();
        self.from_prime_coeffs(&c)
    }
}

impl Inner {
    fn one(&self) -> Vec<u64> {
        let mut v = vec![0u64; self.m];
        v[0] = 1;
        v
    }

    fn reduce(&self, mut prod: Vec<u64>) -> Vec<u64> {
        let p = self.p;
        let m = self.m;
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            // T^k = T^{k-m} * T^m, T^m = -sum modulus[i] T^i
            for i in 0..m {
                let mi = self.modulus[i];
                if mi != 0 {
                    let idx = k - m + i;
                    prod[idx] = (prod[idx] + (p - mi) * c % p) % p;
                }
            }
        }
        prod.truncate(m);
        prod.resize(m, 0);
        prod
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let m = self.m;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
        }
        self.reduce(prod)
    }

    fn pow_u64(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
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
}

/// Extended Euclid over `F_p[T]`: returns `s` with `s*a = gcd(a, b)` mod `b`, normalised so the gcd is 1.
fn inverse_mod(a: &[u64], modulus: &[u64], p: u64) -> Option<Vec<u64>> {
    let fp = PrimeField::new(p).ok()?;
    let to_poly = |v: &[u64]| FieldPoly::new(fp, v.iter().map(|&c| c as u32).collect());
    let (g, s, _) = to_poly(a).ext_gcd(&to_poly(modulus));
    if g.degree() != Some(0) {
        return None;
    }
    // g is monic, so g == 1
    Some(s.coeffs().iter().map(|&c| c as u64).collect())
}

/// Finds a monic irreducible polynomial of degree `m` over `F_p` by seeded random search and
/// returns the resulting field. Deterministic for a given `(p, m, seed)`.
pub fn make_ext(p: u64, m: u32, seed: Seed) -> Result<ExtField> {
    let fp = PrimeField::new(p)?;
    if m == 0 {
        return Err(Error::InvalidArgument("extension degree must be positive".into()));
    }
    if m == 1 {
        return Ok(ExtField::new_unchecked(p, vec![0, 1]));
    }
    let m = m as usize;
    let mut rng = crate::Rng::seed_from_u64(seed ^ (p << 8) ^ m as u64);
    loop {
        let mut coeffs: Vec<u32> = (0..m).map(|_| rng.gen_range(0..p) as u32).collect();
        coeffs.push(1);
        if coeffs[0] == 0 {
            continue;
        }
        let f = FieldPoly::new(fp, coeffs.clone());
        if f.is_irreducible() {
            return Ok(ExtField::new_unchecked(p, coeffs.into_iter().map(u64::from).collect()));
        }
    }
}

impl Field for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0u64; self.0.m]
    }
    fn one(&self) -> Vec<u64> {
        self.0.one()
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let p = self.0.p;
        a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let p = self.0.p;
        a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        let p = self.0.p;
        a.iter().map(|x| (p - x) % p).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.0.mul(a, b)
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if a.iter().all(|&c| c == 0) {
            return None;
        }
        let s = inverse_mod(a, &self.0.modulus, self.0.p)?;
        Some(self.from_prime_coeffs(&s))
    }
    fn from_i64(&self, v: i64) -> Vec<u64> {
        let mut out = self.zero();
        out[0] = mod_p(v, self.0.p);
        out
    }
    fn from_bigint(&self, v: &BigInt) -> Vec<u64> {
        let mut out = self.zero();
        out[0] = bigint_mod_p(v, self.0.p);
        out
    }
    fn characteristic(&self) -> u64 {
        self.0.p
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
}

impl FiniteField for ExtField {
    fn prime(&self) -> u64 {
        self.0.p
    }
    fn degree(&self) -> u32 {
        self.0.m as u32
    }
    fn frobenius(&self, a: &Vec<u64>) -> Vec<u64> {
        let p = self.0.p;
        let mut out = vec![0u64; self.0.m];
        for (j, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &f) in out.iter_mut().zip(&self.0.frob[j]) {
                *o = (*o + c * f) % p;
            }
        }
        out
    }
    fn to_prime_coeffs(&self, a: &Vec<u64>) -> Vec<u64> {
        a.clone()
    }
    fn from_prime_coeffs(&self, coeffs: &[u64]) -> Vec<u64> {
        let p = self.0.p;
        let mut v: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
        if v.len() > self.0.m {
            self.0.reduce(v)
        } else {
            v.resize(self.0.m, 0);
            v
        }
    }
    fn modulus(&self) -> Vec<u64> {
        self.0.modulus.clone()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.0.m).map(|_| rng.gen_range(0..self.0.p)).collect()
    }
    fn same_field(&self, other: &Self) -> bool {
        self == other
    }
}
