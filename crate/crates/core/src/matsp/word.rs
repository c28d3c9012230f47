use alloc::vec::Vec;
use core::fmt;

use super::Mat4;
use crate::gf::Field;
use crate::{Error, Result};

/// A freely reduced word in `x1, x2` and their inverses, letters `1, -1, 2, -2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupWord(Vec<i8>);

impl GroupWord {
    /// Free reduction of `letters`; rejects letters outside `{1, -1, 2, -2}`.
    pub fn new(letters: &[i8]) -> Result<Self> {
        let mut out: Vec<i8> = Vec::with_capacity(letters.len());
        for &l in letters {
            if !matches!(l, 1 | -1 | 2 | -2) {
                return Err(Error::InvalidArgument(alloc::format!("word letter {l}")));
            }
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(GroupWord(out))
    }

    pub fn letters(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|l| -l).collect())
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            match l {
                1 => f.write_str("x1")?,
                -1 => f.write_str("x1^-1")?,
                2 => f.write_str("x2")?,
                _ => f.write_str("x2^-1")?,
            }
        }
        Ok(())
    }
}

/// Value of `w(g1, g2)`; fails if a generator needed with exponent `-1` is singular.
pub fn eval_word<F: Field>(w: &GroupWord, g1: &Mat4<F>, g2: &Mat4<F>) -> Result<Mat4<F>> {
    let need_inv = |k: i8| w.letters().contains(&-k);
    let g1i = if need_inv(1) { Some(g1.inverse().ok_or(Error::Singular)?) } else { None };
    let g2i = if need_inv(2) { Some(g2.inverse().ok_or(Error::Singular)?) } else { None };
    Ok(eval_letters(w.letters(), g1, g2, g1i.as_ref(), g2i.as_ref()))
}

/// Product over `letters` with precomputed inverses (required when the letters use them).
pub(crate) fn eval_letters<F: Field>(
    letters: &[i8],
    g1: &Mat4<F>,
    g2: &Mat4<F>,
    g1i: Option<&Mat4<F>>,
    g2i: Option<&Mat4<F>>,
) -> Mat4<F> {
    let pick = |l: i8| match l {
        1 => g1,
        2 => g2,
        -1 => g1i.expect("inverse of g1"),
        _ => g2i.expect("inverse of g2"),
    };
    match letters.split_first() {
        None => Mat4::identity(g1.field().clone()),
        Some((&first, rest)) => rest.iter().fold(pick(first).clone(), |acc, &l| acc.mul(pick(l))),
    }
}
