use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::gf::Field;
use crate::matsp::Mat4;
use crate::{Error, Result};

/// Left-hand sides of the three specialized trace identities for 4x4 matrices. Indices
/// `1, 2, 3` stand for `M1, M2, M3` and negative indices for their inverses; `t{..}` is the
/// trace and `c{..}` the coefficient `chi_2` of the product.
pub const IDENTITY_1: &str = "
    t{12123}+t{21213}+t{11223}+t{12213}+t{21123}+t{22113}
    -t{1}(t{1223}+t{2123}+t{2213})-t{2}(t{1123}+t{1213}+t{2113})+(t{1}t{2}-t{12})(t{123}+t{213})
    +c{2}t{113}+c{1}t{223}+(t{12}t{2}-t{122}-t{1}c{2})t{13}+(t{12}t{1}-t{112}-t{2}c{1})t{23}
    -(t{1122}-t{112}t{2}-t{122}t{1}+t{12}t{1}t{2}-c{1}c{2}-c{12})t{3}";

pub const IDENTITY_2: &str = "
    t{-12213}+t{2-1213}+t{-12123}+t{12-123}+t{212-13}+t{122-13}
    -(t{12-13}+t{-1213})t{2}-(t{2123}+t{1223}+t{2213})t{-1}-(t{-1223}+t{22-13}+t{2-123})t{1}
    -(t{123}+t{213})(t{-12}-t{2}t{-1})-(t{-123}+t{2-13})(t{12}-t{2}t{1})+t{223}(t{-1}t{1}+2)
    +(t{-12}t{1}+t{12}t{-1}-(t{1}t{-1}+2)t{2})t{23}
    -(t{-122}-t{-12}t{2}+c{2}t{-1})t{13}-(t{122}-t{12}t{2}+c{2}t{1})t{-13}
    +((t{122}-t{12}t{2})t{-1}+(t{-122}-t{-12}t{2})t{1}+t{-12}t{12}-t{-1212}+c{2}(t{-1}t{1}+2))t{3}";

pub const IDENTITY_3: &str = "
    t{21-2-13}+t{-212-13}+t{12-1-23}+t{-1-2123}+t{-2-1213}+t{-121-23}+t{1-2-123}+t{2-1-213}
    -(t{2-1-23}+t{-2-123})t{1}-(t{-1-213}+t{1-2-13})t{2}-(t{21-23}+t{-2123})t{-1}-(t{-1213}+t{12-13})t{-2}
    -(t{-1-23}+t{-2-13})(t{12}-t{1}t{2})-(t{213}+t{123})(t{-2-1}-t{-1}t{-2})
    -(t{-213}+t{1-23})(t{-12}-t{2}t{-1})-(t{-123}+t{2-13})(t{-21}-t{1}t{-2})
    +(t{-2-1}t{1}+t{-21}t{-1}-(t{1}t{-1}+2)t{-2})t{23}+(t{-12}t{1}+t{12}t{-1}-(t{1}t{-1}+2)t{2})t{-23}
    +(t{-2-1}t{2}+t{-12}t{-2}-(t{2}t{-2}+2)t{-1})t{13}+(t{-21}t{2}+t{12}t{-2}-(t{2}t{-2}+2)t{1})t{-13}
    -(t{-212-1}+t{-2-121}-(t{-2-1}-t{-1}t{-2})(t{12}-t{1}t{2})-(t{-21}-t{-2}t{1})(t{-12}-t{2}t{-1}))t{3}
    -((t{1}t{-1}-2)(t{2}t{-2}-2)-4)t{3}";

/// Parsed identity expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Tr(Vec<i8>),
    Chi2(Vec<i8>),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Neg(Box<Expr>),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::InvalidArgument(alloc::format!("identity parse error at byte {}: {what}", self.pos))
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut parts = Vec::new();
        let mut positive = true;
        if let Some(b'-') = self.peek() {
            self.pos += 1;
            positive = false;
        }
        loop {
            parts.push((positive, self.product()?));
            match self.peek() {
                Some(b'+') => positive = true,
                Some(b'-') => positive = false,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(Expr::Sum(parts))
    }

    fn product(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        while matches!(self.peek(), Some(b't' | b'c' | b'(' | b'0'..=b'9')) {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected )"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b @ (b't' | b'c')) => {
                self.pos += 1;
                if self.peek() != Some(b'{') {
                    return Err(self.err("expected {"));
                }
                self.pos += 1;
                let mut idx = Vec::new();
                let mut neg = false;
                loop {
                    match self.peek() {
                        Some(b'}') => break,
                        Some(b'-') => neg = true,
                        Some(d @ b'1'..=b'3') => {
                            let v = (d - b'0') as i8;
                            idx.push(if neg { -v } else { v });
                            neg = false;
                        }
                        _ => return Err(self.err("bad index")),
                    }
                    self.pos += 1;
                }
                self.pos += 1;
                Ok(if b == b't' { Expr::Tr(idx) } else { Expr::Chi2(idx) })
            }
            Some(b'0'..=b'9') => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let txt = core::str::from_utf8(&self.s[start..self.pos]).unwrap();
                Ok(Expr::Int(txt.parse().map_err(|_| self.err("bad integer"))?))
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// Parses an identity written in the `t{..}`/`c{..}` notation.
pub fn parse_identity(src: &str) -> Result<Expr> {
    let mut p = Parser { s: src.as_bytes(), pos: 0 };
    let e = p.sum()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// The `k`-th identity, `k` in `1..=3`.
pub fn identity(k: u8) -> Result<Expr> {
    parse_identity(match k {
        1 => IDENTITY_1,
        2 => IDENTITY_2,
        3 => IDENTITY_3,
        _ => return Err(Error::InvalidArgument(alloc::format!("identity {k} does not exist"))),
    })
}

impl Expr {
    /// Generic evaluation given leaf interpretations.
    pub fn fold<T: Clone>(
        &self,
        int: &impl Fn(i64) -> T,
        leaf: &mut impl FnMut(bool, &[i8]) -> Result<T>,
        add: &impl Fn(&T, &T) -> T,
        neg: &impl Fn(&T) -> T,
        mul: &impl Fn(&T, &T) -> T,
    ) -> Result<T> {
        Ok(match self {
            Expr::Int(n) => int(*n),
            Expr::Tr(i) => leaf(true, i)?,
            Expr::Chi2(i) => leaf(false, i)?,
            Expr::Neg(e) => neg(&e.fold(int, leaf, add, neg, mul)?),
            Expr::Sum(parts) => {
                let mut acc = int(0);
                for (pos, e) in parts {
                    let v = e.fold(int, leaf, add, neg, mul)?;
                    acc = if *pos { add(&acc, &v) } else { add(&acc, &neg(&v)) };
                }
                acc
            }
            Expr::Product(fs) => {
                let mut acc = int(1);
                for e in fs {
                    acc = mul(&acc, &e.fold(int, leaf, add, neg, mul)?);
                }
                acc
            }
        })
    }

    /// All index words occurring as leaves, rendered for diagnostics.
    pub fn leaves(&self) -> Vec<String> {
        let mut out = Vec::new();
        let _ = self.fold(
            &|_| (),
            &mut |t, i| {
                out.push(alloc::format!("{}{:?}", if t { "t" } else { "c" }, i));
                Ok(())
            },
            &|_, _| (),
            &|_| (),
            &|_, _| (),
        );
        out
    }
}

/// Evaluates identity `k` at `(M1, M2, M3)`; zero for every invertible input.
pub fn procesi_lhs<F: Field>(k: u8, m: [&Mat4<F>; 3]) -> Result<F::Elem> {
    let f = m[0].field().clone();
    let inv: Vec<Mat4<F>> = m.iter().map(|x| x.inverse().ok_or(Error::Singular)).collect::<Result<_>>()?;
    let mut words = Products::new(|i: i8| if i > 0 { m[(i - 1) as usize] } else { &inv[(-i - 1) as usize] });
    let mut leaves: BTreeMap<(bool, Vec<i8>), F::Elem> = BTreeMap::new();
    let expr = identity(k)?;
    let fi = f.clone();
    expr.fold(
        &|n| fi.from_i64(n),
        &mut |tr, idx| {
            if let Some(v) = leaves.get(&(tr, idx.to_vec())) {
                return Ok(v.clone());
            }
            let v = if tr { words.trace(idx) } else { words.product(idx).chi2() };
            leaves.insert((tr, idx.to_vec()), v.clone());
            Ok(v)
        },
        &|a, b| f.add(a, b),
        &|a| f.neg(a),
        &|a, b| f.mul(a, b),
    )
}

/// `sum over sigma in Sym_5 of sgn(sigma) tr_sigma(Z_1, ..., Z_5)`, each cycle contributing
/// the trace of the product of its matrices in cycle order.
pub fn procesi_sym5<F: Field>(z: [&Mat4<F>; 5]) -> F::Elem {
    let f = z[0].field();
    let mut words = Products::new(|i: usize| z[i]);
    let mut traces: BTreeMap<Vec<usize>, F::Elem> = BTreeMap::new();
    let mut acc = f.zero();
    for perm in permutations(5) {
        let (cycles, sign) = cycle_decomposition(&perm);
        let mut t = f.one();
        for c in cycles {
            let tc = match traces.get(&c) {
                Some(v) => v.clone(),
                None => {
                    let v = words.trace(&c);
                    traces.insert(c, v.clone());
                    v
                }
            };
            t = f.mul(&t, &tc);
        }
        acc = if sign { f.add(&acc, &t) } else { f.sub(&acc, &t) };
    }
    acc
}

/// Products of words in a fixed alphabet of matrices, sharing prefixes.
struct Products<'a, F: Field + 'a, K, G> {
    letter: G,
    cache: BTreeMap<Vec<K>, Mat4<F>>,
    _m: core::marker::PhantomData<&'a ()>,
}

impl<'a, F: Field + 'a, K: Ord + Copy, G: Fn(K) -> &'a Mat4<F>> Products<'a, F, K, G> {
    fn new(letter: G) -> Self {
        Self { letter, cache: BTreeMap::new(), _m: core::marker::PhantomData }
    }

    fn product(&mut self, w: &[K]) -> Mat4<F> {
        match w {
            [] => unreachable!("words are nonempty"),
            [a] => (self.letter)(*a).clone(),
            _ => {
                if let Some(p) = self.cache.get(w) {
                    return p.clone();
                }
                let (init, last) = w.split_at(w.len() - 1);
                let p = self.product(init).mul((self.letter)(last[0]));
                self.cache.insert(w.to_vec(), p.clone());
                p
            }
        }
    }

    fn trace(&mut self, w: &[K]) -> F::Elem {
        match w {
            [] => unreachable!("words are nonempty"),
            [a] => (self.letter)(*a).trace(),
            _ => {
                let (init, last) = w.split_at(w.len() - 1);
                self.product(init).trace_mul((self.letter)(last[0]))
            }
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// Cycles of `perm` (each starting at its least element, trivial cycles included) and whether
/// the permutation is even.
pub fn cycle_decomposition(perm: &[usize]) -> (Vec<Vec<usize>>, bool) {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    let mut transpositions = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = perm[x];
        }
        transpositions += c.len() - 1;
        cycles.push(c);
    }
    (cycles, transpositions % 2 == 0)
}
