//! Finite list of field degrees `r` for which `Sp_4(p^r)` can be `(3,3,c)`-generated.
//!
//! A generating pair of order-3 elements with product of order dividing `c` has character
//! field `F_p(x, y, z)` for a point of the variety
//! `Theta_c(X) = Delta_c(Y) = rho(X, Y, Z) = 0` (see [`crate::traceid`]). The variety is finite,
//! so enumerating its points bounds `r`.
//!
//! Points are enumerated up to Frobenius: each closed point is listed once, as a triple in an
//! explicit extension of `F_p`. All fields are built with seed 0, so only the factorization
//! randomness depends on the caller's seed and the result does not.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::cyclo::{delta_capped, theta_capped, DEFAULT_CAP};
use crate::exactpoly::{factor, roots_in, roots_in_field, FieldPoly, IntPoly};
use crate::gf::{generated_subfield_degree, make_ext, Embedding, ExtField, Field, FiniteField, PrimeField};
use crate::traceid::rho_eval;
use crate::{Error, Result, Seed};

/// Limits on the work a certificate may do.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertificateConfig {
    /// Largest accepted `c`.
    pub c_cap: u64,
    /// Largest degree over `F_p` of any field the enumeration builds.
    pub degree_cap: u32,
}

impl Default for CertificateConfig {
    fn default() -> Self {
        CertificateConfig { c_cap: 60, degree_cap: 48 }
    }
}

/// One closed point of the variety, written in `field`.
#[derive(Clone, Debug)]
pub struct CertPoint {
    pub field: ExtField,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    pub z: Vec<u64>,
    /// Degree of `F_p(x, y, z)` over `F_p`.
    pub r: u32,
}

impl CertPoint {
    /// The three coordinates.
    pub fn coords(&self) -> [&Vec<u64>; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// Applies the `p`-th power map `k` times to every coordinate.
    pub fn frobenius_pow(&self, k: u32) -> CertPoint {
        let f = &self.field;
        let fr = |v: &Vec<u64>| (0..k).fold(v.clone(), |acc, _| f.frobenius(&acc));
        CertPoint { field: f.clone(), x: fr(&self.x), y: fr(&self.y), z: fr(&self.z), r: self.r }
    }

    /// Whether `(x, y, z)`, given in `other`, is a Frobenius conjugate of this point.
    pub fn is_conjugate_of(&self, other: &ExtField, xyz: [&Vec<u64>; 3]) -> Result<bool> {
        if other.prime() != self.field.prime() {
            return Err(Error::MixedContexts);
        }
        if generated_subfield_degree(other, &[xyz[0].clone(), xyz[1].clone(), xyz[2].clone()]) != self.r {
            return Ok(false);
        }
        // move both into a field containing the two presentations
        let m = self.field.degree().lcm(&other.degree());
        let big = make_ext(self.field.prime(), m, 0)?;
        let mine = Embedding::new(&self.field, &big, 0)?;
        let theirs = Embedding::new(other, &big, 0)?;
        let target: Vec<Vec<u64>> = xyz.iter().map(|v| theirs.apply(v)).collect();
        let mut cur: Vec<Vec<u64>> = self.coords().iter().map(|v| mine.apply(v)).collect();
        for _ in 0..self.r {
            if cur == target {
                return Ok(true);
            }
            cur = cur.iter().map(|v| big.frobenius(v)).collect();
        }
        Ok(false)
    }
}

/// The `(p, c)` certificate: every point of the variety and the degrees they generate.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub p: u64,
    pub c: u64,
    pub points: Vec<CertPoint>,
    pub candidate_rs: Vec<u32>,
    pub max_r: u32,
}

impl Certificate {
    fn from_points(p: u64, c: u64, points: Vec<CertPoint>) -> Self {
        let rs: BTreeSet<u32> = points.iter().map(|pt| pt.r).collect();
        let max_r = rs.iter().next_back().copied().unwrap_or(0);
        Certificate { p, c, points, candidate_rs: rs.into_iter().collect(), max_r }
    }

    /// Re-evaluates `Theta_c`, `Delta_c` and `rho` at every point and recomputes each `r`.
    pub fn verify(&self) -> Result<bool> {
        let theta = theta_capped(self.c, DEFAULT_CAP)?;
        let delta = delta_capped(self.c, DEFAULT_CAP)?;
        Ok(self.points.iter().all(|pt| {
            let f = &pt.field;
            f.prime() == self.p
                && f.is_zero(&theta.eval_in(f, &pt.x))
                && f.is_zero(&delta.eval_in(f, &pt.y))
                && f.is_zero(&rho_eval(f, &pt.x, &pt.y, &pt.z))
                && generated_subfield_degree(f, &[pt.x.clone(), pt.y.clone(), pt.z.clone()]) == pt.r
        }))
    }
}

/// The reductions of `Theta_c`, `Delta_c` mod `p` split into irreducible factors, ready for
/// enumeration one `(deg x, deg y)` pair at a time.
#[derive(Clone, Debug)]
pub struct CertificatePlan {
    p: u64,
    c: u64,
    seed: Seed,
    cfg: CertificateConfig,
    x_factors: BTreeMap<u32, Vec<FieldPoly<PrimeField>>>,
    y_factors: BTreeMap<u32, Vec<FieldPoly<PrimeField>>>,
}

fn irreducible_factors(f: &IntPoly, fp: &PrimeField, seed: Seed) -> Result<BTreeMap<u32, Vec<FieldPoly<PrimeField>>>> {
    let mut out: BTreeMap<u32, Vec<FieldPoly<PrimeField>>> = BTreeMap::new();
    for (g, _) in factor(&f.reduce(fp), seed)?.factors {
        let d = g.degree().unwrap_or(0) as u32;
        out.entry(d).or_default().push(g);
    }
    Ok(out)
}

impl CertificatePlan {
    pub fn new(p: u64, c: u64, seed: Seed, cfg: CertificateConfig) -> Result<Self> {
        let fp = PrimeField::new(p)?;
        if c == 0 {
            return Err(Error::InvalidArgument("c must be positive".into()));
        }
        if c > cfg.c_cap {
            return Err(Error::Resource(format!("c = {c} exceeds the cap {}", cfg.c_cap)));
        }
        let cap = DEFAULT_CAP.max(cfg.c_cap);
        let x_factors = irreducible_factors(&theta_capped(c, cap)?, &fp, seed)?;
        let y_factors = irreducible_factors(&delta_capped(c, cap)?, &fp, seed)?;
        Ok(CertificatePlan { p, c, seed, cfg, x_factors, y_factors })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    /// Degrees of the irreducible factors of `Theta_c` mod `p`.
    pub fn x_degrees(&self) -> Vec<u32> {
        self.x_factors.keys().copied().collect()
    }

    /// Degrees of the irreducible factors of `Delta_c` mod `p`.
    pub fn y_degrees(&self) -> Vec<u32> {
        self.y_factors.keys().copied().collect()
    }

    /// All `(deg x, deg y)` combinations to enumerate.
    pub fn degree_pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for &dx in self.x_factors.keys() {
            for &dy in self.y_factors.keys() {
                out.push((dx, dy));
            }
        }
        out
    }

    fn ext(&self, m: u32) -> Result<ExtField> {
        if m > self.cfg.degree_cap {
            return Err(Error::Resource(format!(
                "field degree {m} exceeds the cap {}",
                self.cfg.degree_cap
            )));
        }
        make_ext(self.p, m, 0)
    }

    /// Points whose `x` has degree `dx` and `y` has degree `dy`, one per Frobenius orbit.
    pub fn points_for(&self, dx: u32, dy: u32) -> Result<Vec<CertPoint>> {
        let (Some(fxs), Some(fys)) = (self.x_factors.get(&dx), self.y_factors.get(&dy)) else {
            return Ok(Vec::new());
        };
        let n = dx.lcm(&dy);
        let e = self.ext(n)?;
        let mut ys: Vec<Vec<u64>> = Vec::new();
        for g in fys {
            ys.extend(roots_in(g, &e, self.seed)?.into_iter().map(|(r, _)| r));
        }
        let mut out = Vec::new();
        for g in fxs {
            // Gal(E/F_p) moves x to every root of g; fixing this root leaves Frob^dx acting on y
            let x = roots_in(g, &e, self.seed)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::Internal("irreducible factor without roots in its splitting field".into()))?
                .0;
            for y in ys.iter().filter(|y| is_orbit_min(&e, y, dx)) {
                self.points_over(&e, &x, y, &mut out)?;
            }
        }
        dedup_orbits(&mut out);
        Ok(out)
    }

    fn points_over(&self, e: &ExtField, x: &Vec<u64>, y: &Vec<u64>, out: &mut Vec<CertPoint>) -> Result<()> {
        for (h, _) in factor(&rho_in_z(e, x, y), self.seed)?.factors {
            let k = h.degree().unwrap_or(0) as u32;
            let (field, xs, z) = if k == 1 {
                (e.clone(), [x.clone(), y.clone()], e.neg(&h.coeff(0)))
            } else {
                let big = self.ext(e.degree() * k)?;
                let emb = Embedding::new(e, &big, 0)?;
                let lifted = h.map(big.clone(), |c| emb.apply(c));
                let z = roots_in_field(&lifted, self.seed)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::Internal("factor of rho without a root in the extension".into()))?
                    .0;
                (big, [emb.apply(x), emb.apply(y)], z)
            };
            let [x, y] = xs;
            let r = generated_subfield_degree(&field, &[x.clone(), y.clone(), z.clone()]);
            out.push(CertPoint { field, x, y, z, r });
        }
        Ok(())
    }

    /// Runs every degree pair in order and assembles the certificate.
    pub fn build(&self) -> Result<Certificate> {
        let mut points = Vec::new();
        for (dx, dy) in self.degree_pairs() {
            points.extend(self.points_for(dx, dy)?);
        }
        Ok(self.assemble(points))
    }

    /// Combines point lists from [`Self::points_for`], in any order, into a certificate.
    pub fn assemble(&self, mut points: Vec<CertPoint>) -> Certificate {
        points.sort_by(|a, b| {
            (a.r, a.field.degree(), &a.x, &a.y, &a.z).cmp(&(b.r, b.field.degree(), &b.x, &b.y, &b.z))
        });
        Certificate::from_points(self.p, self.c, points)
    }
}

/// `rho(x, y, Z)` as a cubic in `Z`.
fn rho_in_z(e: &ExtField, x: &Vec<u64>, y: &Vec<u64>) -> FieldPoly<ExtField> {
    let k = |n| e.from_i64(n);
    let a = e.add(x, &e.one());
    let b = e.sub(&e.add(x, x), &k(10));
    let mut d = e.mul(x, x);
    d = e.sub(&d, &e.mul(&k(9), y));
    d = e.add(&d, &e.mul(&k(8), x));
    d = e.add(&d, &k(7));
    let lin = FieldPoly::new(e.clone(), vec![a, e.one()]);
    let quad = FieldPoly::new(e.clone(), vec![d, b, e.one()]);
    lin.mul(&quad)
}

fn frob_pow(e: &ExtField, v: &Vec<u64>, k: u32) -> Vec<u64> {
    (0..k).fold(v.clone(), |acc, _| e.frobenius(&acc))
}

/// Whether `y` is the least element of its orbit under `Frob^step`.
fn is_orbit_min(e: &ExtField, y: &Vec<u64>, step: u32) -> bool {
    let mut cur = frob_pow(e, y, step);
    while cur != *y {
        if cur < *y {
            return false;
        }
        cur = frob_pow(e, &cur, step);
    }
    true
}

/// Removes points that are Frobenius conjugates of an earlier point in the same field.
fn dedup_orbits(points: &mut Vec<CertPoint>) {
    let mut seen: BTreeSet<(u32, [Vec<u64>; 3])> = BTreeSet::new();
    points.retain(|pt| {
        let f = &pt.field;
        let mut cur = [pt.x.clone(), pt.y.clone(), pt.z.clone()];
        let mut least = cur.clone();
        for _ in 1..pt.r {
            cur = cur.map(|v| f.frobenius(&v));
            least = least.min(cur.clone());
        }
        seen.insert((f.degree(), least))
    });
}

/// The certificate for `(p, c)` under the default caps.
pub fn build_certificate(p: u64, c: u64, seed: Seed) -> Result<Certificate> {
    build_certificate_with(p, c, seed, CertificateConfig::default())
}

pub fn build_certificate_with(p: u64, c: u64, seed: Seed, cfg: CertificateConfig) -> Result<Certificate> {
    CertificatePlan::new(p, c, seed, cfg)?.build()
}

/// Largest `r` the certificate allows; `Sp_4(p^r)` is not `(3,3,c)`-generated for larger `r`.
pub fn certified_bound(cert: &Certificate) -> u32 {
    cert.max_r
}

/// Bound on `r` for `(3,3,c)`-generation of `PSp_4(p^r)`, read off the `(p, 2c)` certificate.
pub fn psp_bound(p: u64, c: u64, seed: Seed) -> Result<u32> {
    psp_bound_with(p, c, seed, CertificateConfig::default())
}

pub fn psp_bound_with(p: u64, c: u64, seed: Seed, cfg: CertificateConfig) -> Result<u32> {
    if p == 2 {
        return Err(Error::Precondition(
            "p = 2: PSp_4(2^r) is Sp_4(2^r), use the Sp_4 certificate".into(),
        ));
    }
    let doubled = c.checked_mul(2).ok_or_else(|| Error::InvalidArgument("c too large".into()))?;
    Ok(certified_bound(&build_certificate_with(p, doubled, seed, cfg)?))
}
