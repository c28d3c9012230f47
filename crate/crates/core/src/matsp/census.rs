use alloc::vec::Vec;

use super::group::{group_order, sp4_element_order, sp4_order, standard_generators, OrderConfig, ProductReplacement};
use super::Mat4;
use crate::gf::FiniteField;
use crate::{derive_seed, Error, Result, Seed};

/// Uniform-ish random elements of `Sp_4(q)`.
pub struct Sp4Sampler<F: FiniteField> {
    pr: ProductReplacement<F>,
}

impl<F: FiniteField> Sp4Sampler<F> {
    pub fn new(field: &F, seed: Seed) -> Result<Self> {
        Ok(Sp4Sampler { pr: ProductReplacement::new(&standard_generators(field)?, seed)? })
    }

    pub fn element(&mut self) -> Mat4<F> {
        self.pr.next_element()
    }

    /// An element of order exactly `n`, obtained by powering random elements whose order is
    /// divisible by `n`; `None` after `tries` failures.
    pub fn element_of_order(&mut self, n: u64, tries: usize) -> Result<Option<Mat4<F>>> {
        for _ in 0..tries {
            let g = self.element();
            let o = sp4_element_order(&g)?;
            if o % n == 0 {
                return Ok(Some(g.pow(o / n)));
            }
        }
        Ok(None)
    }

    /// A random conjugate `x g x^-1`.
    pub fn conjugate(&mut self, g: &Mat4<F>) -> Mat4<F> {
        let x = self.element();
        x.mul(g).mul(&x.symplectic_inverse())
    }
}

/// Whether `g1^a = g2^b = (g1 g2)^c = 1` and `<g1, g2> = Sp_4(q)`.
pub fn is_abc_pair<F: FiniteField>(g1: &Mat4<F>, g2: &Mat4<F>, a: u64, b: u64, c: u64, cfg: &OrderConfig) -> Result<bool> {
    if !g1.pow(a).is_identity() || !g2.pow(b).is_identity() || !g1.mul(g2).pow(c).is_identity() {
        return Ok(false);
    }
    generates_sp4(g1, g2, cfg)
}

/// Whether `<g1, g2> = Sp_4(q)`; cheap irreducibility screening first.
pub fn generates_sp4<F: FiniteField>(g1: &Mat4<F>, g2: &Mat4<F>, cfg: &OrderConfig) -> Result<bool> {
    let q = g1.field().size().ok_or_else(|| Error::Unsupported("field too large".into()))?;
    if !super::is_absolutely_irreducible(g1, g2) {
        return Ok(false);
    }
    let target = sp4_order(q).ok_or_else(|| Error::Unsupported("group order overflow".into()))?;
    Ok(group_order(&[g1.clone(), g2.clone()], cfg)? == target)
}

/// Whether the images of `g1, g2` generate `PSp_4(q)`, i.e. `<g1, g2, -1> = Sp_4(q)`.
pub fn generates_psp4<F: FiniteField>(g1: &Mat4<F>, g2: &Mat4<F>, cfg: &OrderConfig) -> Result<bool> {
    let f = g1.field();
    let q = f.size().ok_or_else(|| Error::Unsupported("field too large".into()))?;
    let target = sp4_order(q).ok_or_else(|| Error::Unsupported("group order overflow".into()))?;
    let minus = Mat4::scalar(f.clone(), &f.from_i64(-1));
    Ok(group_order(&[g1.clone(), g2.clone(), minus], cfg)? == target)
}

/// One census line: whether an `(a, b, c)`-generating pair of `Sp_4(q)` was found.
#[derive(Clone, Debug)]
pub struct CensusEntry<F: FiniteField> {
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub witness: Option<(Mat4<F>, Mat4<F>)>,
}

impl<F: FiniteField> CensusEntry<F> {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

/// Samples `samples` pairs (`g1` of order `a`, `g2` of order `b`) and records, for every `c` in
/// `cs`, a generating pair whose product has order dividing `c`.
pub fn census<F: FiniteField>(
    field: &F,
    a: u64,
    b: u64,
    cs: &[u64],
    samples: usize,
    cfg: &OrderConfig,
) -> Result<Vec<CensusEntry<F>>> {
    let q = field.size().ok_or_else(|| Error::Unsupported("field too large".into()))?;
    let mut out: Vec<CensusEntry<F>> = cs.iter().map(|&c| CensusEntry { q, a, b, c, witness: None }).collect();
    let mut sampler = Sp4Sampler::new(field, derive_seed(cfg.seed, 0xce))?;
    for _ in 0..samples {
        if out.iter().all(CensusEntry::found) {
            break;
        }
        let (Some(g1), Some(g2)) = (sampler.element_of_order(a, 200)?, sampler.element_of_order(b, 200)?) else {
            // no elements of the requested orders
            break;
        };
        let n = sp4_element_order(&g1.mul(&g2))?;
        if !out.iter().any(|e| !e.found() && e.c % n == 0) {
            continue;
        }
        if generates_sp4(&g1, &g2, cfg)? {
            for e in out.iter_mut().filter(|e| !e.found() && e.c % n == 0) {
                e.witness = Some((g1.clone(), g2.clone()));
            }
        }
    }
    Ok(out)
}

/// Projective test for odd `q` and odd `a, b`: `PSp_4(q)` is `(a, b, c)`-generated iff `Sp_4(q)`
/// has a generating pair of orders dividing `a, b` whose product has order dividing `2c`.
/// Decided by sampling, so `false` means "none found in `samples` tries".
pub fn psp_quotient_test<F: FiniteField>(field: &F, a: u64, b: u64, c: u64, samples: usize, cfg: &OrderConfig) -> Result<bool> {
    if field.prime() == 2 {
        return Err(Error::Precondition("q must be odd".into()));
    }
    if a % 2 == 0 || b % 2 == 0 {
        return Err(Error::Unsupported(alloc::format!("({a},{b},{c}) with an even entry among a, b")));
    }
    let lines = census(field, a, b, &[2 * c], samples, cfg)?;
    Ok(lines[0].found())
}
