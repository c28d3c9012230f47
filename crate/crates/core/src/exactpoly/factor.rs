use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;

use super::FieldPoly;
use crate::gf::{make_ext, prime_factors, ExtField, Field, FiniteField, PrimeField};
use crate::{Error, Result, Seed};

/// `unit * prod(factor^mult)`, factors monic irreducible and pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(FieldPoly<F>, u32)>,
}

impl<F: Field> Factorization<F> {
    pub fn expand(&self, field: &F) -> FieldPoly<F> {
        self.factors
            .iter()
            .fold(FieldPoly::constant(field.clone(), self.unit.clone()), |acc, (g, e)| acc.mul(&g.pow(*e)))
    }

    /// Degrees of the irreducible factors, with multiplicity ignored.
    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|(g, _)| g.degree().unwrap_or(0)).collect()
    }
}

impl<F: FiniteField> FieldPoly<F> {
    /// Rabin's test; constants and zero are not irreducible.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.make_monic();
        let x = FieldPoly::x(self.field().clone());
        // h_k = T^(q^k) mod f
        let mut powers = vec![x.clone()];
        for _ in 0..n {
            let next = powers.last().unwrap().frobenius_mod(&f);
            powers.push(next);
        }
        if powers[n] != x.rem(&f) {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|l| {
            let h = powers[n / l as usize].sub(&x);
            h.gcd(&f).is_one()
        })
    }
}

/// Complete factorization into monic irreducibles. The equal-degree step is randomized from
/// `seed`; the result is sorted by (degree, coefficients) and so does not depend on it.
pub fn factor<F: FiniteField>(f: &FieldPoly<F>, seed: Seed) -> Result<Factorization<F>> {
    let unit = f.lead().ok_or(Error::ZeroPolynomial("factorization"))?.clone();
    let monic = f.make_monic();
    let mut rng = crate::Rng::seed_from_u64(seed);
    let mut factors: Vec<(FieldPoly<F>, u32)> = Vec::new();
    for (sqf, mult) in squarefree_decomposition(&monic) {
        for (g, d) in distinct_degree(&sqf) {
            for h in equal_degree(&g, d, &mut rng) {
                match factors.iter_mut().find(|(x, _)| *x == h) {
                    Some((_, e)) => *e += mult,
                    None => factors.push((h, mult)),
                }
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(Factorization { unit, factors })
}

/// Squarefree parts of a monic polynomial with their multiplicities.
pub fn squarefree_decomposition<F: FiniteField>(f: &FieldPoly<F>) -> Vec<(FieldPoly<F>, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.field().prime() as u32;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        for (g, e) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, e * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree `d`.
pub fn distinct_degree<F: FiniteField>(f: &FieldPoly<F>) -> Vec<(FieldPoly<F>, usize)> {
    let mut out = Vec::new();
    let x = FieldPoly::x(f.field().clone());
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 0usize;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.frobenius_mod(&rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if let Some(n) = rest.degree().filter(|&n| n > 0) {
        out.push((rest, n));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
pub fn equal_degree<F: FiniteField, R: rand::Rng>(f: &FieldPoly<F>, d: usize, rng: &mut R) -> Vec<FieldPoly<F>> {
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    let p = field.prime();
    let qd = num_traits::pow::pow(field.size_big(), d);
    let half = (&qd - BigUint::one()) >> 1;
    loop {
        let a = FieldPoly::new(field.clone(), (0..n).map(|_| field.random(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace down to F_2
            let k = field.degree() as usize * d;
            let mut t = a.rem(f);
            let mut s = t.clone();
            for _ in 1..k {
                t = t.mul_mod(&t, f);
                s = s.add(&t);
            }
            s
        } else {
            a.pow_mod(&half, f).sub(&FieldPoly::one(field.clone()))
        };
        let g = b.gcd(f);
        if g.is_one() || g.degree() == f.degree() {
            continue;
        }
        let other = f.div_exact(&g).expect("gcd divides");
        let mut out = equal_degree(&g, d, rng);
        out.extend(equal_degree(&other, d, rng));
        return out;
    }
}

/// Roots of `f` in its own coefficient field, with multiplicities, sorted.
pub fn roots_in_field<F: FiniteField>(f: &FieldPoly<F>, seed: Seed) -> Result<Vec<(F::Elem, u32)>> {
    let fac = factor(f, seed)?;
    let field = f.field();
    let mut out: Vec<(F::Elem, u32)> = fac
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, e)| (field.neg(&g.coeff(0)), *e))
        .collect();
    out.sort();
    Ok(out)
}

/// Roots of `f` over `F_p` lying in `F_{p^m}` (built by [`make_ext`] from `seed`), with
/// multiplicities. Only irreducible factors whose degree divides `m` are lifted.
pub fn roots_in_ext(f: &FieldPoly<PrimeField>, m: u32, seed: Seed) -> Result<(ExtField, Vec<(Vec<u64>, u32)>)> {
    let ext = make_ext(f.field().prime(), m, seed)?;
    let roots = roots_in(f, &ext, seed)?;
    Ok((ext, roots))
}

/// Roots of `f` over `F_p` lying in the given extension, with multiplicities.
pub fn roots_in(f: &FieldPoly<PrimeField>, ext: &ExtField, seed: Seed) -> Result<Vec<(Vec<u64>, u32)>> {
    if ext.prime() != f.field().prime() {
        return Err(Error::MixedContexts);
    }
    let m = ext.degree() as usize;
    let fac = factor(f, seed)?;
    let mut out = Vec::new();
    for (g, e) in &fac.factors {
        let d = g.degree().unwrap();
        if m % d != 0 {
            continue;
        }
        let lifted = g.map(ext.clone(), |c| ext.from_prime_coeffs(&[*c as u64]));
        for (r, _) in roots_in_field(&lifted, seed)? {
            out.push((r, *e));
        }
    }
    out.sort();
    Ok(out)
}
