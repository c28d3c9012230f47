use alloc::vec::Vec;

use super::{ExtField, Field, FiniteField};
use crate::exactpoly::FieldPoly;
use crate::{Error, Result, Seed};

/// A fixed field embedding `src -> dst`, determined by the image of the defining root of `src`.
#[derive(Clone, Debug)]
pub struct Embedding<S: FiniteField> {
    src: S,
    dst: ExtField,
    root_image: Vec<u64>,
}

impl<S: FiniteField> Embedding<S> {
    /// Chooses the image of the source root among its conjugates in `dst`; the roots are
    /// sorted and the one at position `seed mod count` is taken.
    pub fn new(src: &S, dst: &ExtField, seed: Seed) -> Result<Self> {
        if src.prime() != dst.prime() {
            return Err(Error::MixedContexts);
        }
        let (ds, dt) = (src.degree(), dst.degree());
        if dt % ds != 0 {
            return Err(Error::NoEmbedding { src: ds, dst: dt });
        }
        let modulus: Vec<Vec<u64>> = src.modulus().iter().map(|&c| dst.from_prime_coeffs(&[c])).collect();
        let poly = FieldPoly::new(dst.clone(), modulus);
        let mut roots: Vec<Vec<u64>> = crate::exactpoly::roots_in_field(&poly, seed)?.into_iter().map(|(r, _)| r).collect();
        roots.sort();
        if roots.is_empty() {
            return Err(Error::Internal("irreducible modulus has no root in an extension of divisible degree".into()));
        }
        let root_image = roots.swap_remove((seed % roots.len() as u64) as usize);
        Ok(Embedding { src: src.clone(), dst: dst.clone(), root_image })
    }

    pub fn source(&self) -> &S {
        &self.src
    }

    pub fn target(&self) -> &ExtField {
        &self.dst
    }

    pub fn apply(&self, x: &S::Elem) -> Vec<u64> {
        let d = &self.dst;
        self.src
            .to_prime_coeffs(x)
            .iter()
            .rev()
            .fold(d.zero(), |acc, &c| d.add(&d.mul(&acc, &self.root_image), &d.from_prime_coeffs(&[c])))
    }
}

/// Image of `x` under the embedding `Embedding::new(src, target, seed)`.
pub fn embed<S: FiniteField>(src: &S, x: &S::Elem, target: &ExtField, seed: Seed) -> Result<Vec<u64>> {
    Ok(Embedding::new(src, target, seed)?.apply(x))
}
