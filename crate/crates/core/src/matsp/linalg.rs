use alloc::vec;
use alloc::vec::Vec;

use crate::gf::Field;

/// Incrementally maintained reduced row echelon basis of a subspace of `F^n`.
#[derive(Clone, Debug)]
pub struct Span<F: Field> {
    field: F,
    /// (pivot column, row with 1 at pivot)
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Span<F> {
    pub fn new(field: F) -> Self {
        Span { field, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            if f.is_zero(&v[*piv]) {
                continue;
            }
            let c = f.neg(&v[*piv]);
            for (x, r) in v.iter_mut().zip(row) {
                *x = f.mul_add(&c, r, x);
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[piv]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if f.is_zero(&row[piv]) {
                continue;
            }
            let c = f.neg(&row[piv]);
            for (x, r) in row.iter_mut().zip(&v) {
                *x = f.mul_add(&c, r, x);
            }
        }
        self.rows.push((piv, v));
        true
    }
}

/// Basis of `{x : A x = 0}` for the `rows` of `A`, each of length `ncols`.
pub fn kernel<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut span = Span::new(f.clone());
    for r in rows {
        span.insert(r);
    }
    let pivots: Vec<usize> = span.rows.iter().map(|(p, _)| *p).collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![f.zero(); ncols];
        x[free] = f.one();
        for (p, row) in &span.rows {
            x[*p] = f.neg(&row[free]);
        }
        out.push(x);
    }
    out
}

/// Rank of a list of vectors.
pub fn rank<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut span = Span::new(f.clone());
    rows.iter().filter(|r| span.insert(r)).count()
}
