//! Arithmetic in `Z[zeta_c]` and the constraint polynomials `Theta_c`, `Delta_c` satisfied by
//! the traces of symplectic 4x4 matrices of order dividing `c`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::exactpoly::IntPoly;
use crate::gf::FiniteField;
use crate::matsp::Mat4;
use crate::{Error, Result};

/// Largest conductor accepted by [`theta`] and [`delta`].
pub const DEFAULT_CAP: u64 = 120;

/// Tolerance of the floating-point shadow check, relative to the coefficient magnitude.
pub const SHADOW_TOLERANCE: f64 = 1e-6;

/// `Phi_n`, by exact division of `T^n - 1` by the cyclotomic polynomials of proper divisors.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    let mut memo = BTreeMap::new();
    cyclotomic_memo(n.max(1), &mut memo)
}

fn cyclotomic_memo(n: u64, memo: &mut BTreeMap<u64, IntPoly>) -> IntPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[n as usize] = BigInt::from(1);
    let mut acc = IntPoly::new(coeffs);
    for d in (1..n).filter(|d| n % d == 0) {
        let phi_d = cyclotomic_memo(d, memo);
        acc = acc.div_exact(&phi_d).expect("cyclotomic division is exact");
    }
    memo.insert(n, acc.clone());
    acc
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// An element of `Z[zeta_c]`, stored as a residue modulo `Phi_c`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElt {
    c: u64,
    rep: IntPoly,
}

/// `Z[zeta_c]` together with its reduction polynomial.
#[derive(Clone, Debug)]
pub struct CycloRing {
    c: u64,
    phi: IntPoly,
}

impl CycloRing {
    pub fn new(c: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidArgument("conductor must be positive".into()));
        }
        Ok(CycloRing { c, phi: cyclotomic_poly(c) })
    }

    pub fn conductor(&self) -> u64 {
        self.c
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.phi
    }

    fn make(&self, rep: IntPoly) -> CycloElt {
        CycloElt { c: self.c, rep: rep.pseudo_rem(&self.phi) }
    }

    pub fn from_int(&self, n: i64) -> CycloElt {
        self.make(IntPoly::constant(BigInt::from(n)))
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> CycloElt {
        let e = k.rem_euclid(self.c as i64) as usize;
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::from(1);
        self.make(IntPoly::new(coeffs))
    }

    /// `sum_k zeta^k` over the given exponents.
    pub fn sum_of_powers(&self, exps: &[i64]) -> CycloElt {
        exps.iter().fold(self.from_int(0), |acc, &k| self.add(&acc, &self.zeta_pow(k)))
    }

    pub fn add(&self, a: &CycloElt, b: &CycloElt) -> CycloElt {
        CycloElt { c: self.c, rep: a.rep.add(&b.rep) }
    }

    pub fn sub(&self, a: &CycloElt, b: &CycloElt) -> CycloElt {
        CycloElt { c: self.c, rep: a.rep.sub(&b.rep) }
    }

    pub fn neg(&self, a: &CycloElt) -> CycloElt {
        CycloElt { c: self.c, rep: a.rep.neg() }
    }

    pub fn mul(&self, a: &CycloElt, b: &CycloElt) -> CycloElt {
        self.make(a.rep.mul(&b.rep))
    }

    /// The Galois automorphism `zeta -> zeta^k`, `gcd(k, c) = 1`.
    pub fn galois(&self, a: &CycloElt, k: u64) -> CycloElt {
        let c = self.c as usize;
        let mut coeffs = vec![BigInt::zero(); c];
        for (e, x) in a.rep.coeffs().iter().enumerate() {
            coeffs[(e * k as usize) % c] += x;
        }
        self.make(IntPoly::new(coeffs))
    }

    /// Complex value under `zeta = exp(2 pi i / c)`.
    pub fn to_complex(&self, a: &CycloElt) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, x) in a.rep.coeffs().iter().enumerate() {
            let x = x.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * core::f64::consts::PI * e as f64 / self.c as f64;
            re += x * libm::cos(t);
            im += x * libm::sin(t);
        }
        (re, im)
    }
}

impl CycloElt {
    pub fn conductor(&self) -> u64 {
        self.c
    }

    pub fn rep(&self) -> &IntPoly {
        &self.rep
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.rep.degree() {
            None => Some(BigInt::zero()),
            Some(0) => Some(self.rep.coeff(0)),
            Some(_) => None,
        }
    }
}

impl core::fmt::Debug for CycloElt {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "[{}] mod Phi_{}", self.rep, self.c)
    }
}

/// Monic minimal polynomial over `Q` of `alpha`, as the product over its distinct conjugates.
///
/// The product is formed modulo primes `p = 1 mod c` and lifted by CRT; the lift is then
/// checked exactly by `P(alpha) = 0` in `Z[zeta_c]` and against a floating-point shadow.
pub fn min_poly(ring: &CycloRing, alpha: &CycloElt) -> Result<IntPoly> {
    if alpha.c != ring.c {
        return Err(Error::MixedContexts);
    }
    let c = ring.c;
    let mut conj: Vec<(u64, CycloElt)> = Vec::new();
    for k in (1..=c).filter(|k| k.gcd(&c) == 1) {
        let s = ring.galois(alpha, k);
        if !conj.iter().any(|(_, x)| *x == s) {
            conj.push((k, s));
        }
    }
    let bound = magnitude_bound(conj.iter().map(|(_, x)| x));
    let (residues, modulus) = modular_product(ring, alpha, &conj, &bound);
    let half = &modulus >> 1;
    let coeffs: Vec<BigInt> = residues
        .into_iter()
        .map(|r| if r > half { r - &modulus } else { r })
        .collect();
    let poly = IntPoly::new(coeffs);
    let conj: Vec<CycloElt> = conj.into_iter().map(|(_, x)| x).collect();
    let at_alpha = poly
        .coeffs()
        .iter()
        .rev()
        .fold(ring.from_int(0), |acc, x| ring.add(&ring.mul(&acc, alpha), &ring.make(IntPoly::constant(x.clone()))));
    if poly.degree() != Some(conj.len()) || at_alpha.as_integer() != Some(BigInt::zero()) {
        return Err(Error::Internal(format!("non-integral minimal polynomial for {alpha:?}")));
    }
    shadow_check(ring, &conj, &poly)?;
    if !is_squarefree(&poly) {
        return Err(Error::Internal(format!("minimal polynomial {poly} is not squarefree")));
    }
    Ok(poly)
}

/// Squarefreeness of a monic integer polynomial, witnessed modulo some prime.
pub fn is_squarefree(poly: &IntPoly) -> bool {
    if poly.lead() != Some(&BigInt::from(1)) {
        return crate::exactpoly::gcd_q(poly, &poly.derivative()).degree() == Some(0);
    }
    let mut p = 1u64 << 30;
    for _ in 0..20 {
        p += 1;
        while !crate::gf::is_prime(p) {
            p += 1;
        }
        let f = crate::gf::PrimeField::new(p).expect("prime");
        let r = poly.reduce(&f);
        if r.gcd(&r.derivative()).is_one() {
            return true;
        }
    }
    crate::exactpoly::gcd_q(poly, &poly.derivative()).degree() == Some(0)
}

/// Upper bound on the absolute values of the coefficients of `prod (T - z)`.
fn magnitude_bound<'a>(conj: impl Iterator<Item = &'a CycloElt>) -> BigInt {
    let mut acc = BigInt::from(1);
    for z in conj {
        // 1 + sum |coefficients| dominates |z|
        let r: BigInt = z.rep.coeffs().iter().map(|x| x.magnitude().clone()).sum::<num_bigint::BigUint>().into();
        acc *= BigInt::from(1) + r;
    }
    acc
}

/// Coefficients of `prod (T - sigma_k(alpha))` modulo a product of primes exceeding `2 bound`.
fn modular_product(ring: &CycloRing, alpha: &CycloElt, conj: &[(u64, CycloElt)], bound: &BigInt) -> (Vec<BigInt>, BigInt) {
    let c = ring.c;
    let target: BigInt = bound * 2 + 1;
    let mut modulus = BigInt::from(1);
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); conj.len() + 1];
    let mut t = (1u64 << 31) / c;
    while modulus <= target {
        t += 1;
        let p = c * t + 1;
        if !crate::gf::is_prime(p) {
            continue;
        }
        let w = root_of_unity(p, c);
        let mut prod: Vec<u64> = vec![1];
        for &(k, _) in conj {
            let x = eval_mod(alpha, mod_pow(w, k, p), p);
            let mut next = vec![0u64; prod.len() + 1];
            for (i, &a) in prod.iter().enumerate() {
                next[i + 1] = (next[i + 1] + a) % p;
                next[i] = (next[i] + p - mul_mod(x, a, p)) % p;
            }
            prod = next;
        }
        // CRT: acc = acc + modulus * ((r - acc) * modulus^-1 mod p)
        let pb = BigInt::from(p);
        let m_mod = bigint_mod(&modulus, p);
        let inv = mod_pow(m_mod, p - 2, p);
        for (a, &r) in acc.iter_mut().zip(&prod) {
            let diff = (r + p - bigint_mod(a, p)) % p;
            let h = mul_mod(diff, inv, p);
            *a += &modulus * BigInt::from(h);
        }
        modulus *= pb;
    }
    (acc, modulus)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// An element of exact multiplicative order `c` in `F_p`, `c | p - 1`.
fn root_of_unity(p: u64, c: u64) -> u64 {
    let ls = crate::gf::prime_factors(c);
    (2..p)
        .map(|x| mod_pow(x, (p - 1) / c, p))
        .find(|&w| ls.iter().all(|l| mod_pow(w, c / l, p) != 1))
        .expect("F_p* is cyclic")
}

fn eval_mod(a: &CycloElt, w: u64, p: u64) -> u64 {
    a.rep.coeffs().iter().rev().fold(0, |acc, x| (mul_mod(acc, w, p) + bigint_mod(x, p)) % p)
}

fn shadow_check(ring: &CycloRing, conj: &[CycloElt], poly: &IntPoly) -> Result<()> {
    let mut prod: Vec<(f64, f64)> = vec![(1.0, 0.0)];
    // coefficients of prod (T + |z|), bounding the size of intermediate terms
    let mut mag: Vec<f64> = vec![1.0];
    for s in conj {
        let (zr, zi) = ring.to_complex(s);
        let r = libm::hypot(zr, zi);
        let mut nm = vec![0.0; mag.len() + 1];
        for (i, a) in mag.iter().enumerate() {
            nm[i + 1] += a;
            nm[i] += r * a;
        }
        mag = nm;
        let mut next = vec![(0.0, 0.0); prod.len() + 1];
        for (i, &(ar, ai)) in prod.iter().enumerate() {
            next[i + 1].0 += ar;
            next[i + 1].1 += ai;
            next[i].0 -= zr * ar - zi * ai;
            next[i].1 -= zr * ai + zi * ar;
        }
        prod = next;
    }
    for (i, (re, im)) in prod.iter().enumerate() {
        let exact = poly.coeff(i).to_f64().unwrap_or(f64::INFINITY);
        let scale = 1.0f64.max(libm::fabs(exact)).max(mag[i]);
        if libm::fabs(re - exact) > SHADOW_TOLERANCE * scale || libm::fabs(*im) > SHADOW_TOLERANCE * scale {
            return Err(Error::Internal(format!("float shadow disagrees at T^{i}: {re} vs {exact}")));
        }
    }
    Ok(())
}

/// Representatives of `(Z/c)^2` modulo sign changes, swapping, and multiplication by units.
pub fn orbit_reps(c: u64) -> Vec<(u64, u64)> {
    let units: Vec<u64> = (1..=c).filter(|k| k.gcd(&c) == 1).collect();
    let canon = |i: u64, j: u64| {
        let mut best = (u64::MAX, u64::MAX);
        for &k in &units {
            let a = (k * i) % c;
            let b = (k * j) % c;
            let a = a.min((c - a) % c);
            let b = b.min((c - b) % c);
            best = best.min((a.min(b), a.max(b)));
        }
        best
    };
    let mut reps: Vec<(u64, u64)> = Vec::new();
    for i in 0..c {
        for j in 0..c {
            let r = canon(i, j);
            if !reps.contains(&r) {
                reps.push(r);
            }
        }
    }
    reps.sort();
    reps
}

fn product_tree(polys: &[IntPoly]) -> IntPoly {
    match polys.len() {
        0 => IntPoly::one(),
        1 => polys[0].clone(),
        n => product_tree(&polys[..n / 2]).mul(&product_tree(&polys[n / 2..])),
    }
}

fn check_cap(c: u64, cap: u64) -> Result<()> {
    if c == 0 {
        return Err(Error::InvalidArgument("c must be positive".into()));
    }
    if c > cap {
        return Err(Error::Resource(format!("c = {c} exceeds the cap {cap}")));
    }
    Ok(())
}

fn lcm_over_reps(c: u64, cap: u64, value: impl Fn(&CycloRing, i64, i64) -> CycloElt) -> Result<IntPoly> {
    check_cap(c, cap)?;
    let ring = CycloRing::new(c)?;
    let mut polys: Vec<IntPoly> = Vec::new();
    for (i, j) in orbit_reps(c) {
        let m = min_poly(&ring, &value(&ring, i as i64, j as i64))?;
        if !polys.contains(&m) {
            polys.push(m);
        }
    }
    // distinct monic irreducibles are coprime, so their lcm is their product
    polys.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(product_tree(&polys))
}

/// `zeta^i + zeta^-i + zeta^j + zeta^-j`.
pub fn theta_value(ring: &CycloRing, i: i64, j: i64) -> CycloElt {
    ring.sum_of_powers(&[i, -i, j, -j])
}

/// `zeta^(i+j) + zeta^(i-j) + zeta^(-i+j) + zeta^(-i-j) + 2`.
pub fn delta_value(ring: &CycloRing, i: i64, j: i64) -> CycloElt {
    ring.add(&ring.sum_of_powers(&[i + j, i - j, j - i, -i - j]), &ring.from_int(2))
}

/// `Theta_c`: lcm of the minimal polynomials of all [`theta_value`]s.
pub fn theta(c: u64) -> Result<IntPoly> {
    theta_capped(c, DEFAULT_CAP)
}

pub fn theta_capped(c: u64, cap: u64) -> Result<IntPoly> {
    lcm_over_reps(c, cap, theta_value)
}

/// `Delta_c`: lcm of the minimal polynomials of all [`delta_value`]s.
pub fn delta(c: u64) -> Result<IntPoly> {
    delta_capped(c, DEFAULT_CAP)
}

pub fn delta_capped(c: u64, cap: u64) -> Result<IntPoly> {
    lcm_over_reps(c, cap, delta_value)
}

/// `(Theta_c(chi_3(g)) = 0, Delta_c(chi_2(g)) = 0)` in the field of `g`.
pub fn annihilation_check<F: FiniteField>(g: &Mat4<F>, c: u64) -> Result<(bool, bool)> {
    if c == 0 || !g.pow(c).is_identity() {
        return Err(Error::Precondition(format!("g^{c} is not the identity")));
    }
    let f = g.field();
    let cp = g.charpoly();
    let th = theta(c)?.eval_in(f, &cp.chi3);
    let de = delta(c)?.eval_in(f, &cp.chi2);
    Ok((f.is_zero(&th), f.is_zero(&de)))
}

#[cfg(test)]
mod tests;
