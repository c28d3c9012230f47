use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::word::{Mode, TraceWord};
use crate::gf::Field;
use crate::matsp::{eval_word, GroupWord, Mat4};
use crate::{Error, Result};

/// `tr(w)` or `chi_2(w)` of a canonical word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Tr(TraceWord),
    Chi2(TraceWord),
}

impl Symbol {
    pub fn word(&self) -> &TraceWord {
        match self {
            Symbol::Tr(w) | Symbol::Chi2(w) => w,
        }
    }

    /// Parses `t(1,2,-1)` or `c2(1,2)`.
    pub fn parse(s: &str, mode: Mode) -> Result<Self> {
        let bad = || Error::InvalidArgument(alloc::format!("bad trace symbol {s:?}"));
        let (kind, rest) = if let Some(r) = s.strip_prefix("c2(") {
            (false, r)
        } else if let Some(r) = s.strip_prefix("t(") {
            (true, r)
        } else {
            return Err(bad());
        };
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let letters = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',').map(|x| x.trim().parse::<i8>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?
        };
        let w = TraceWord::new(&letters, mode)?;
        Ok(if kind { Symbol::Tr(w) } else { Symbol::Chi2(w) })
    }

    /// Value at `(g1, g2)`.
    pub fn eval<F: Field>(&self, g1: &Mat4<F>, g2: &Mat4<F>) -> Result<F::Elem> {
        let m = eval_word(&GroupWord::new(self.word().letters())?, g1, g2)?;
        Ok(match self {
            Symbol::Tr(_) => m.trace(),
            Symbol::Chi2(_) => m.chi2(),
        })
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Tr(w) => write!(f, "t({w})"),
            Symbol::Chi2(w) => write!(f, "c2({w})"),
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer polynomial in trace symbols; monomials are sorted symbol lists.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TracePoly {
    terms: BTreeMap<Vec<Symbol>, BigInt>,
}

impl TracePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c.into());
        p
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// `tr(w)`, with `tr(1) = 4`.
    pub fn tr(w: TraceWord) -> Self {
        if w.is_empty() {
            return Self::constant(4);
        }
        Self::symbol(Symbol::Tr(w))
    }

    /// `chi_2(w)`, with `chi_2(1) = 6`.
    pub fn chi2(w: TraceWord) -> Self {
        if w.is_empty() {
            return Self::constant(6);
        }
        Self::symbol(Symbol::Chi2(w))
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut p = Self::zero();
        p.add_term(alloc::vec![s], BigInt::one());
        p
    }

    fn add_term(&mut self, mono: Vec<Symbol>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mono).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Symbol], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Symbols occurring in some monomial.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self.terms.keys().flatten().cloned().collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        TracePoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c * k);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m: Vec<Symbol> = m1.iter().chain(m2).cloned().collect();
                m.sort();
                r.add_term(m, c1 * c2);
            }
        }
        r
    }

    /// Replaces every symbol by a polynomial.
    pub fn substitute(&self, mut f: impl FnMut(&Symbol) -> Result<TracePoly>) -> Result<Self> {
        let mut cache: BTreeMap<Symbol, TracePoly> = BTreeMap::new();
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for s in m {
                if !cache.contains_key(s) {
                    let v = f(s)?;
                    cache.insert(s.clone(), v);
                }
                acc = acc.mul(&cache[s]);
            }
            r = r.add(&acc);
        }
        Ok(r)
    }

    /// Evaluation with symbol values supplied by `val`.
    pub fn eval_with<F: Field>(&self, field: &F, mut val: impl FnMut(&Symbol) -> Result<F::Elem>) -> Result<F::Elem> {
        let mut cache: BTreeMap<Symbol, F::Elem> = BTreeMap::new();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = field.from_bigint(c);
            for s in m {
                if !cache.contains_key(s) {
                    let v = val(s)?;
                    cache.insert(s.clone(), v);
                }
                t = field.mul(&t, &cache[s]);
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Value at `(g1, g2)`.
    pub fn eval<F: Field>(&self, g1: &Mat4<F>, g2: &Mat4<F>) -> Result<F::Elem> {
        self.eval_with(g1.field(), |s| s.eval(g1, g2))
    }

    /// `(monomial as symbol strings, decimal coefficient)` pairs.
    pub fn to_string_terms(&self) -> Vec<(Vec<String>, String)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.iter().map(|s| alloc::format!("{s}")).collect(), alloc::format!("{c}")))
            .collect()
    }

    pub fn from_string_terms<S: AsRef<str>>(terms: &[(Vec<S>, S)], mode: Mode) -> Result<Self> {
        let mut r = Self::zero();
        for (m, c) in terms {
            let c: BigInt = c
                .as_ref()
                .parse()
                .map_err(|_| Error::InvalidArgument(alloc::format!("bad coefficient {:?}", c.as_ref())))?;
            let mut mono = Self::constant(c);
            for s in m {
                mono = mono.mul(&Self::from_symbol_str(s.as_ref(), mode)?);
            }
            r = r.add(&mono);
        }
        Ok(r)
    }

    fn from_symbol_str(s: &str, mode: Mode) -> Result<Self> {
        let sym = Symbol::parse(s, mode)?;
        Ok(match sym {
            Symbol::Tr(w) => Self::tr(w),
            Symbol::Chi2(w) => Self::chi2(w),
        })
    }
}

impl fmt::Display for TracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_empty() || !a.is_one() {
                write!(f, "{a}")?;
                if !m.is_empty() {
                    f.write_str("*")?;
                }
            }
            for (k, s) in m.iter().enumerate() {
                if k > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
