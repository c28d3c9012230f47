use alloc::vec::Vec;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::gf::Field;

/// A 4x4 matrix over a field context. Vectors are columns; `g.apply(v)` is `g v`.
#[derive(Clone)]
pub struct Mat4<F: Field> {
    field: F,
    e: [[F::Elem; 4]; 4],
}

/// Coefficients of `T^4 - chi3 T^3 + chi2 T^2 - chi1 T + chi0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharPoly4<E> {
    pub chi0: E,
    pub chi1: E,
    pub chi2: E,
    pub chi3: E,
}

/// Gram matrix of the form in the basis `(e1, f1, e2, f2)`: `(e_i, f_i) = 1`.
pub const GRAM: [[i64; 4]; 4] = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]];

impl<F: Field> PartialEq for Mat4<F> {
    fn eq(&self, other: &Self) -> bool {
        self.e == other.e
    }
}

impl<F: Field> Eq for Mat4<F> {}

impl<F: Field> Hash for Mat4<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.e.hash(state);
    }
}

impl<F: Field> fmt::Debug for Mat4<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.e.iter()).finish()
    }
}

impl<F: Field> Mat4<F> {
    pub fn new(field: F, e: [[F::Elem; 4]; 4]) -> Self {
        Mat4 { field, e }
    }

    pub fn from_fn(field: F, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let e = core::array::from_fn(|i| core::array::from_fn(|j| f(i, j)));
        Mat4 { field, e }
    }

    pub fn from_i64(field: F, rows: [[i64; 4]; 4]) -> Self {
        let fc = field.clone();
        Self::from_fn(field, |i, j| fc.from_i64(rows[i][j]))
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(field: F, cols: [[F::Elem; 4]; 4]) -> Self {
        Self::from_fn(field, |i, j| cols[j][i].clone())
    }

    pub fn identity(field: F) -> Self {
        let fc = field.clone();
        Self::from_fn(field, |i, j| if i == j { fc.one() } else { fc.zero() })
    }

    pub fn scalar(field: F, c: &F::Elem) -> Self {
        let fc = field.clone();
        Self::from_fn(field, |i, j| if i == j { c.clone() } else { fc.zero() })
    }

    pub fn diag(field: F, d: [F::Elem; 4]) -> Self {
        let fc = field.clone();
        Self::from_fn(field, |i, j| if i == j { d[i].clone() } else { fc.zero() })
    }

    pub fn gram(field: F) -> Self {
        Self::from_i64(field, GRAM)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn entries(&self) -> &[[F::Elem; 4]; 4] {
        &self.e
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.e[i][j]
    }

    fn with(&self, e: [[F::Elem; 4]; 4]) -> Self {
        Mat4 { field: self.field.clone(), e }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        self.with(core::array::from_fn(|i| {
            core::array::from_fn(|j| {
                let mut acc = f.mul(&self.e[i][0], &o.e[0][j]);
                for k in 1..4 {
                    acc = f.mul_add(&self.e[i][k], &o.e[k][j], &acc);
                }
                acc
            })
        }))
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        self.with(core::array::from_fn(|i| core::array::from_fn(|j| f.add(&self.e[i][j], &o.e[i][j]))))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = &self.field;
        self.with(core::array::from_fn(|i| core::array::from_fn(|j| f.sub(&self.e[i][j], &o.e[i][j]))))
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        self.with(core::array::from_fn(|i| core::array::from_fn(|j| f.neg(&self.e[i][j]))))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        self.with(core::array::from_fn(|i| core::array::from_fn(|j| f.mul(c, &self.e[i][j]))))
    }

    pub fn transpose(&self) -> Self {
        self.with(core::array::from_fn(|i| core::array::from_fn(|j| self.e[j][i].clone())))
    }

    pub fn apply(&self, v: &[F::Elem; 4]) -> [F::Elem; 4] {
        let f = &self.field;
        core::array::from_fn(|i| {
            let mut acc = f.mul(&self.e[i][0], &v[0]);
            for k in 1..4 {
                acc = f.mul_add(&self.e[i][k], &v[k], &acc);
            }
            acc
        })
    }

    pub fn column(&self, j: usize) -> [F::Elem; 4] {
        core::array::from_fn(|i| self.e[i][j].clone())
    }

    /// `tr(self * o)` without forming the product.
    pub fn trace_mul(&self, o: &Self) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..4 {
            for k in 0..4 {
                acc = f.mul_add(&self.e[i][k], &o.e[k][i], &acc);
            }
        }
        acc
    }

    pub fn trace(&self) -> F::Elem {
        let f = &self.field;
        (1..4).fold(self.e[0][0].clone(), |acc, i| f.add(&acc, &self.e[i][i]))
    }

    fn minor2(&self, r: [usize; 2], c: [usize; 2]) -> F::Elem {
        let f = &self.field;
        let e = &self.e;
        f.sub(&f.mul(&e[r[0]][c[0]], &e[r[1]][c[1]]), &f.mul(&e[r[0]][c[1]], &e[r[1]][c[0]]))
    }

    fn minor3(&self, r: [usize; 3], c: [usize; 3]) -> F::Elem {
        let f = &self.field;
        let e = &self.e;
        let t0 = f.mul(&e[r[0]][c[0]], &self.minor2([r[1], r[2]], [c[1], c[2]]));
        let t1 = f.mul(&e[r[0]][c[1]], &self.minor2([r[1], r[2]], [c[0], c[2]]));
        let t2 = f.mul(&e[r[0]][c[2]], &self.minor2([r[1], r[2]], [c[0], c[1]]));
        f.add(&f.sub(&t0, &t1), &t2)
    }

    pub fn det(&self) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for j in 0..4 {
            let cols: Vec<usize> = (0..4).filter(|&k| k != j).collect();
            let m = f.mul(&self.e[0][j], &self.minor3([1, 2, 3], [cols[0], cols[1], cols[2]]));
            acc = if j % 2 == 0 { f.add(&acc, &m) } else { f.sub(&acc, &m) };
        }
        acc
    }

    /// Characteristic polynomial coefficients from principal minors (division free).
    pub fn charpoly(&self) -> CharPoly4<F::Elem> {
        let f = &self.field;
        let mut chi2 = f.zero();
        for i in 0..4 {
            for j in i + 1..4 {
                chi2 = f.add(&chi2, &self.minor2([i, j], [i, j]));
            }
        }
        let mut chi1 = f.zero();
        for skip in 0..4 {
            let idx: Vec<usize> = (0..4).filter(|&k| k != skip).collect();
            let s = [idx[0], idx[1], idx[2]];
            chi1 = f.add(&chi1, &self.minor3(s, s));
        }
        CharPoly4 { chi0: self.det(), chi1, chi2, chi3: self.trace() }
    }

    /// `chi_2`, the second elementary symmetric function of the eigenvalues.
    pub fn chi2(&self) -> F::Elem {
        self.charpoly().chi2
    }

    /// Gauss-Jordan inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let f = &self.field;
        let mut a = self.e.clone();
        let mut b = Self::identity(f.clone()).e;
        for col in 0..4 {
            let piv = (col..4).find(|&r| !f.is_zero(&a[r][col]))?;
            a.swap(col, piv);
            b.swap(col, piv);
            let inv = f.inv(&a[col][col]).unwrap();
            for k in 0..4 {
                a[col][k] = f.mul(&a[col][k], &inv);
                b[col][k] = f.mul(&b[col][k], &inv);
            }
            for r in 0..4 {
                if r == col || f.is_zero(&a[r][col]) {
                    continue;
                }
                let factor = f.neg(&a[r][col]);
                for k in 0..4 {
                    a[r][k] = f.mul_add(&factor, &a[col][k], &a[r][k]);
                    b[r][k] = f.mul_add(&factor, &b[col][k], &b[r][k]);
                }
            }
        }
        Some(self.with(b))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.field.clone());
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

    pub fn is_identity(&self) -> bool {
        let f = &self.field;
        (0..4).all(|i| (0..4).all(|j| if i == j { f.is_one(&self.e[i][j]) } else { f.is_zero(&self.e[i][j]) }))
    }

    pub fn is_scalar(&self) -> bool {
        let f = &self.field;
        (0..4).all(|i| (0..4).all(|j| if i == j { self.e[i][j] == self.e[0][0] } else { f.is_zero(&self.e[i][j]) }))
    }

    /// `g^T J g == J`.
    pub fn is_symplectic(&self) -> bool {
        let j = Self::gram(self.field.clone());
        self.transpose().mul(&j).mul(self) == j
    }

    /// Inverse of a symplectic matrix, `J^-1 g^T J`.
    pub fn symplectic_inverse(&self) -> Self {
        let j = Self::gram(self.field.clone());
        j.neg().mul(&self.transpose()).mul(&j)
    }

    pub fn map<G: Field>(&self, field: G, g: impl Fn(&F::Elem) -> G::Elem) -> Mat4<G> {
        let e = core::array::from_fn(|i| core::array::from_fn(|j| g(&self.e[i][j])));
        Mat4 { field, e }
    }

    /// Row-major entries as a flat vector.
    pub fn to_vec(&self) -> Vec<F::Elem> {
        self.e.iter().flat_map(|r| r.iter().cloned()).collect()
    }
}

/// The symplectic form `(x, y) = x^T J y`.
pub fn form<F: Field>(f: &F, x: &[F::Elem; 4], y: &[F::Elem; 4]) -> F::Elem {
    // J pairs coordinates (0,1) and (2,3)
    let a = f.sub(&f.mul(&x[0], &y[1]), &f.mul(&x[1], &y[0]));
    let b = f.sub(&f.mul(&x[2], &y[3]), &f.mul(&x[3], &y[2]));
    f.add(&a, &b)
}
