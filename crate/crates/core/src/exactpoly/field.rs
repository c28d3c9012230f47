use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::gf::{Field, FiniteField};

/// Dense polynomial over a field context; trailing zeros are stripped.
#[derive(Clone)]
pub struct FieldPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for FieldPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for FieldPoly<F> {}

impl<F: Field> fmt::Debug for FieldPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl<F: Field> FieldPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        FieldPoly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        FieldPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        FieldPoly { field, coeffs: vec![one] }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c T^k`
    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    /// The polynomial `T`.
    pub fn x(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 1)
    }

    /// `T - a`
    pub fn linear(field: F, a: &F::Elem) -> Self {
        let coeffs = vec![field.neg(a), field.one()];
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| self.field.is_one(c))
    }

    fn with(&self, coeffs: Vec<F::Elem>) -> Self {
        Self::new(self.field.clone(), coeffs)
    }

    pub fn make_monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, k: &F::Elem) -> Self {
        self.with(self.coeffs.iter().map(|c| self.field.mul(c, k)).collect())
    }

    pub fn neg(&self) -> Self {
        self.with(self.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        self.with((0..n).map(|i| self.field.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        self.with((0..n).map(|i| self.field.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(a, b, &out[i + j]);
            }
        }
        self.with(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder. Panics when `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let f = &self.field;
        let Some(dr) = self.degree().filter(|&dr| dr >= dd) else {
            return (Self::zero(f.clone()), self.clone());
        };
        let lc_inv = f.inv(d.lead().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); dr - dd + 1];
        for k in (0..=dr - dd).rev() {
            let c = f.mul(&r[k + dd], &lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            let nc = f.neg(&c);
            for (i, b) in d.coeffs.iter().enumerate() {
                r[k + i] = f.mul_add(&nc, b, &r[k + i]);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (self.with(q), self.with(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let fz = || Self::zero(self.field.clone());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(self.field.clone()), fz());
        let (mut t0, mut t1) = (fz(), Self::one(self.field.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.field.inv(lc).unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        self.with(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.mul_add(&acc, x, c))
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let base = self.rem(m);
        let mut acc = Self::one(self.field.clone()).rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    /// Applies `g` to every coefficient, landing in `field`.
    pub fn map<G: Field>(&self, field: G, g: impl Fn(&F::Elem) -> G::Elem) -> FieldPoly<G> {
        let coeffs = self.coeffs.iter().map(g).collect();
        FieldPoly::new(field, coeffs)
    }
}

impl<F: FiniteField> FieldPoly<F> {
    /// `self^q mod m` for `q` the field size, via `degree()` repeated `p`-th powers.
    pub fn frobenius_mod(&self, m: &Self) -> Self {
        let p = num_bigint::BigUint::from(self.field.prime());
        let mut acc = self.rem(m);
        for _ in 0..self.field.degree() {
            acc = acc.pow_mod(&p, m);
        }
        acc
    }

    /// Polynomial `g` with `g^p = self`; requires all exponents to be multiples of `p`.
    pub(crate) fn pth_root(&self) -> Self {
        let f = &self.field;
        let p = f.prime() as usize;
        let root = |c: &F::Elem| {
            // x^(1/p) = x^(p^(m-1))
            let mut y = c.clone();
            for _ in 1..f.degree() {
                y = f.frobenius(&y);
            }
            y
        };
        self.with(self.coeffs.iter().step_by(p).map(root).collect())
    }
}
