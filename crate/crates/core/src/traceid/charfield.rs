use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::procesi::parse_identity;
use super::word::{canonical_words, Mode};
use crate::exactpoly::{roots_in_field, FieldPoly};
use crate::gf::{generated_subfield_degree, make_ext, Embedding, ExtField, Field, FiniteField};
use crate::matsp::{eval_word, is_absolutely_irreducible, linalg, GroupWord, Mat4};
use crate::{Error, Result};

/// Value at `(t12, c12, t1-2)` of `(Z + X + 1)(Z^2 + (2X - 10)Z + X^2 - 9Y + 8X + 7)`.
pub fn rho_eval<F: Field>(f: &F, x: &F::Elem, y: &F::Elem, z: &F::Elem) -> F::Elem {
    let k = |n| f.from_i64(n);
    let first = f.add(&f.add(z, x), &f.one());
    let lin = f.sub(&f.add(x, x), &k(10));
    let mut second = f.mul(z, &f.add(z, &lin));
    second = f.add(&second, &f.mul(x, x));
    second = f.sub(&second, &f.mul(&k(9), y));
    second = f.add(&second, &f.mul(&k(8), x));
    second = f.add(&second, &k(7));
    f.mul(&first, &second)
}

fn order_three<F: Field>(g: &Mat4<F>) -> bool {
    !g.is_identity() && g.pow(3).is_identity()
}

fn check_conforming<F: FiniteField>(g1: &Mat4<F>, g2: &Mat4<F>) -> Result<()> {
    if !g1.is_symplectic() || !g2.is_symplectic() {
        return Err(Error::Precondition("generators must be symplectic".into()));
    }
    if !order_three(g1) || !order_three(g2) {
        return Err(Error::Precondition("generators must have order 3".into()));
    }
    if !is_absolutely_irreducible(g1, g2) {
        return Err(Error::Precondition("pair is not absolutely irreducible".into()));
    }
    Ok(())
}

/// `(tr(g1 g2), chi_2(g1 g2), tr(g1 g2^-1))` for an absolutely irreducible pair of symplectic
/// elements of order 3. These generate the character field of `<g1, g2>`.
pub fn charfield_generators<F: FiniteField>(g1: &Mat4<F>, g2: &Mat4<F>) -> Result<(F::Elem, F::Elem, F::Elem)> {
    check_conforming(g1, g2)?;
    let p = g1.mul(g2);
    let m = g1.mul(&g2.symplectic_inverse());
    Ok((p.trace(), p.chi2(), m.trace()))
}

/// Degree over the prime field of the field generated by `tr(w(g1, g2))` for all words `w`
/// up to length `max_len`, stopping early once two consecutive lengths add nothing.
pub fn sampled_trace_field_degree<F: FiniteField>(g1: &Mat4<F>, g2: &Mat4<F>, max_len: usize) -> Result<u32> {
    let f = g1.field();
    let mut traces = Vec::new();
    let mut last = 0;
    let mut stable = 0;
    for n in 0..=max_len {
        for w in canonical_words(n, Mode::General).into_iter().filter(|w| w.len() == n) {
            let gw = GroupWord::new(w.letters())?;
            traces.push(eval_word(&gw, g1, g2)?.trace());
        }
        let d = generated_subfield_degree(f, &traces);
        stable = if d == last { stable + 1 } else { 0 };
        last = d;
        if stable >= 2 && n >= 4 {
            break;
        }
    }
    Ok(last)
}

/// Evaluates an expression in the `t{..}` / `c{..}` notation at `(g1, g2)`; indices are
/// `1, 2` and their negatives.
pub fn formula_value<F: Field>(src: &str, g1: &Mat4<F>, g2: &Mat4<F>) -> Result<F::Elem> {
    let f = g1.field().clone();
    let expr = parse_identity(src)?;
    let inv = [g1.inverse().ok_or(Error::Singular)?, g2.inverse().ok_or(Error::Singular)?];
    let pick = |i: i8| match i {
        1 => Ok(g1.clone()),
        2 => Ok(g2.clone()),
        -1 => Ok(inv[0].clone()),
        -2 => Ok(inv[1].clone()),
        _ => Err(Error::InvalidArgument(format!("index {i} in a two-generator formula"))),
    };
    let fi = f.clone();
    expr.fold(
        &|n| fi.from_i64(n),
        &mut |tr, idx| {
            let mut prod = Mat4::identity(f.clone());
            for &i in idx {
                prod = prod.mul(&pick(i)?);
            }
            Ok(if tr { prod.trace() } else { prod.chi2() })
        },
        &|a, b| f.add(a, b),
        &|a| f.neg(a),
        &|a, b| f.mul(a, b),
    )
}

/// The configurations distinguished in the analysis of a two-dimensional eigenspace of `g2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    A1,
    A2a,
    A2b,
    B1,
    B2,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::A1 => "A1",
            Case::A2a => "A2a",
            Case::A2b => "A2b",
            Case::B1 => "B1",
            Case::B2 => "B2",
        }
    }

    /// Relations `(lhs, rhs)` holding in this case.
    pub fn formulas(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Case::A1 | Case::A2b => FORMULAS_A1,
            Case::A2a => FORMULAS_A2A,
            Case::B1 => FORMULAS_B1,
            Case::B2 => FORMULAS_B2,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

const FORMULAS_A1: &[(&str, &str)] = &[
    ("c{1-2}", "-2t{12}-1"),
    ("t{121-2}", "-t{12}t{12}-4t{12}-3"),
    ("t{12-12}", "-t{12}t{12}-4t{12}-3"),
    ("t{12-1-2}", "t{12}t{12}+4t{12}+8"),
    ("t{1-21-2}", "t{12}t{12}+12t{12}+18"),
    ("t{1-2}", "-t{12}-4"),
    ("c{12}", "2t{12}+7"),
];

const FORMULAS_A2A: &[(&str, &str)] = &[
    ("c{1-2}", "c{12}+2t{12}+1"),
    ("t{121-2}", "-t{12}t{12}+2c{12}+t{12}+1"),
    ("t{12-12}", "-t{12}t{12}+2c{12}+t{12}+1"),
    ("t{12-1-2}", "t{12}t{12}+c{12}+2t{12}+1"),
    ("t{1-21-2}", "t{12}t{12}-2c{12}-2t{12}-1"),
    ("t{1-2}", "-t{12}-1"),
];

const FORMULAS_B1: &[(&str, &str)] = &[
    ("c{1-2}", "2t{1-2}+c{12}-2t{12}"),
    ("t{121-2}", "t{1-2}t{12}-t{1-2}-c{12}+t{12}"),
    ("t{12-12}", "t{1-2}t{12}-t{1-2}-c{12}+t{12}"),
    ("t{12-1-2}", "-t{1-2}t{12}+4t{1-2}-4t{12}+4c{12}-4"),
    ("t{1-21-2}", "-2t{1-2}t{12}-t{12}t{12}+6t{1-2}+7c{12}-4t{12}-7"),
    ("0", "t{1-2}t{1-2}+(2t{12}-10)t{1-2}+t{12}t{12}-9c{12}+8t{12}+7"),
];

const FORMULAS_B2: &[(&str, &str)] = &[
    ("c{1-2}", "c{12}+2t{12}+1"),
    ("t{121-2}", "-t{12}t{12}+2c{12}+t{12}+1"),
    ("t{12-12}", "-t{12}t{12}-c{12}-2t{12}+1"),
    ("t{12-1-2}", "t{12}t{12}+c{12}+2t{12}+1"),
    ("t{1-21-2}", "t{12}t{12}-2c{12}-2t{12}-1"),
    ("t{1-2}", "-t{12}-1"),
];

/// Relations holding for every pair, whatever the case.
pub const FORMULAS_ALL: &[(&str, &str)] = &[
    ("t{1212}", "t{12}t{12}-2c{12}"),
    ("0", "(t{1-2}+t{12}+1)(t{1-2}t{1-2}+(2t{12}-10)t{1-2}+t{12}t{12}-9c{12}+8t{12}+7)"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaCheck {
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub case: Case,
    /// Whether the roles of `g1` and `g2` were exchanged so that `g1` has a cubic minimal polynomial.
    pub swapped: bool,
    pub checks: Vec<FormulaCheck>,
}

impl CaseReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Checks each relation `lhs = rhs` at `(g1, g2)`.
pub fn check_formulas<F: Field>(
    formulas: &[(&'static str, &'static str)],
    g1: &Mat4<F>,
    g2: &Mat4<F>,
) -> Result<Vec<FormulaCheck>> {
    formulas
        .iter()
        .map(|&(lhs, rhs)| {
            let v = formula_value(&format!("{lhs}-({rhs})"), g1, g2)?;
            Ok(FormulaCheck { lhs, rhs, holds: g1.field().is_zero(&v) })
        })
        .collect()
}

fn cubic_min_poly<F: Field>(g: &Mat4<F>) -> bool {
    let f = g.field().clone();
    let h = g.mul(g).add(g).add(&Mat4::identity(f));
    h.entries().iter().flatten().any(|x| !g.field().is_zero(x))
}

type Vec4<E> = [E; 4];

fn rows_of<F: Field>(m: &Mat4<F>) -> Vec<Vec<F::Elem>> {
    m.entries().iter().map(|r| r.to_vec()).collect()
}

fn independent(f: &ExtField, vs: &[&Vec4<Vec<u64>>]) -> usize {
    linalg::rank(f, &vs.iter().map(|v| v.to_vec()).collect::<Vec<_>>())
}

/// Case analysis over `e`, which must contain the eigenvalues of `b`.
fn analyze(e: &ExtField, a: &Mat4<ExtField>, b: &Mat4<ExtField>) -> Result<Case> {
    let one = Mat4::identity(e.clone());
    let mut lambda = None;
    if linalg::rank(e, &rows_of(&b.sub(&one))) == 2 {
        lambda = Some(e.one());
    } else {
        let cyc = FieldPoly::new(e.clone(), vec![e.one(), e.one(), e.one()]);
        for (r, _) in roots_in_field(&cyc, 0)? {
            if linalg::rank(e, &rows_of(&b.sub(&Mat4::scalar(e.clone(), &r)))) == 2 {
                lambda = Some(r);
                break;
            }
        }
    }
    let lambda = lambda.ok_or_else(|| Error::Internal("no two-dimensional eigenspace".into()))?;
    let w = linalg::kernel(e, &rows_of(&b.sub(&Mat4::scalar(e.clone(), &lambda))), 4);
    if w.len() != 2 {
        return Err(Error::Internal("no two-dimensional eigenspace".into()));
    }
    let lambda_is_one = e.is_one(&lambda);
    let cyc_op = a.mul(a).add(a).add(&one);
    let mut stacked = rows_of(&b.sub(&Mat4::scalar(e.clone(), &lambda)));
    stacked.extend(rows_of(&cyc_op));
    let good = linalg::kernel(e, &stacked, 4);
    let Some(v) = good.first() else {
        return Ok(if lambda_is_one { Case::B1 } else { Case::B2 });
    };
    let v: Vec4<Vec<u64>> = core::array::from_fn(|i| v[i].clone());
    let av = a.apply(&v);
    let mut u = linalg::Span::new(e.clone());
    u.insert(&v);
    u.insert(&av);
    let shift = a.sub(&one);
    if (0..4).all(|j| u.contains(&shift.column(j))) {
        return Ok(Case::A1);
    }
    if e.prime() != 3 {
        return Err(Error::Internal("unipotent quotient outside characteristic 3".into()));
    }
    let bav = b.apply(&av);
    let abav = a.apply(&bav);
    Ok(if independent(e, &[&v, &av, &bav, &abav]) == 4 { Case::A2a } else { Case::A2b })
}

/// Determines which configuration the pair realizes, with respect to a two-dimensional
/// eigenspace `W` of `g2`: case A when some `0 != v in W` is killed by `g1^2 + g1 + 1`, so
/// that `<v, g1 v>` is `g1`-invariant with characteristic polynomial `T^2 + T + 1`, split by the
/// action of `g1` on `V / <v, g1 v>`; case B otherwise, split by the eigenvalues of `g2`.
/// The relations of the case, and those holding for every pair, are checked at the pair.
pub fn classify_case<F: FiniteField>(g1: &Mat4<F>, g2: &Mat4<F>) -> Result<CaseReport> {
    check_conforming(g1, g2)?;
    let swapped = !cubic_min_poly(g1);
    let (a, b) = if swapped { (g2, g1) } else { (g1, g2) };
    if !cubic_min_poly(a) {
        return Err(Error::Internal("neither generator has a cubic minimal polynomial".into()));
    }
    let f = a.field();
    let m = f.degree();
    let e = make_ext(f.prime(), 2 * m, 0)?;
    let emb = Embedding::new(f, &e, 0)?;
    let lift = |g: &Mat4<F>| g.map(e.clone(), |x| emb.apply(x));
    let case = analyze(&e, &lift(a), &lift(b))?;
    let mut checks = check_formulas(case.formulas(), a, b)?;
    checks.extend(check_formulas(FORMULAS_ALL, a, b)?);
    Ok(CaseReport { case, swapped, checks })
}
