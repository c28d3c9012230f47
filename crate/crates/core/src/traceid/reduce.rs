use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::{Symbol, TracePoly};
use super::procesi::{identity, Expr};
use super::word::{invert, Mode, TraceWord};
use crate::{Error, Result};

/// The subword shapes `y1 y2 y1 y2`, `y1 y2 y1^-1 y2`, `y1 y2 y1^-1 y2^-1`, in order of preference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pattern {
    Square,
    Twisted,
    Commutator,
}

impl Pattern {
    fn identity_index(self) -> u8 {
        match self {
            Pattern::Square => 1,
            Pattern::Twisted => 2,
            Pattern::Commutator => 3,
        }
    }

    fn matches(self, a: i8, b: i8, c: i8, d: i8) -> bool {
        if a.abs() == b.abs() || c.abs() != a.abs() || d.abs() != b.abs() {
            return false;
        }
        match self {
            Pattern::Square => c == a && d == b,
            Pattern::Twisted => c == -a && d == b,
            Pattern::Commutator => c == -a && d == -b,
        }
    }
}

/// The preferred pattern of a cyclic word and the rotation at which it starts.
pub fn find_pattern(w: &TraceWord) -> Option<(Pattern, usize)> {
    let l = w.letters();
    let n = l.len();
    if n < 4 {
        return None;
    }
    for p in [Pattern::Square, Pattern::Twisted, Pattern::Commutator] {
        for s in 0..n {
            if p.matches(l[s], l[(s + 1) % n], l[(s + 2) % n], l[(s + 3) % n]) {
                return Some((p, s));
            }
        }
    }
    None
}

/// Rewrites traces of words of length greater than 4 as integer polynomials in the traces of
/// shorter words and `chi_2` of words of length at most 2, valid for any pair of order-3
/// matrices in `GL_4`. Results are memoized across calls.
#[derive(Clone, Debug, Default)]
pub struct TraceReducer {
    memo: BTreeMap<TraceWord, TracePoly>,
    active: BTreeSet<TraceWord>,
    steps: u64,
}

impl TraceReducer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of identity applications performed so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn reduce(&mut self, w: &TraceWord) -> Result<TracePoly> {
        let w = w.in_mode(Mode::General);
        if w.len() <= 4 {
            return Ok(TracePoly::tr(w));
        }
        if let Some(p) = self.memo.get(&w) {
            return Ok(p.clone());
        }
        let (pat, s) = find_pattern(&w).ok_or_else(|| Error::Internal(format!("no reducible pattern in {w:?}")))?;
        if !self.active.insert(w.clone()) {
            return Err(Error::Internal(format!("reduction of {w:?} does not terminate")));
        }
        let out = self.apply(&w, pat, s);
        self.active.remove(&w);
        let out = out?;
        self.memo.insert(w, out.clone());
        Ok(out)
    }

    fn apply(&mut self, w: &TraceWord, pat: Pattern, s: usize) -> Result<TracePoly> {
        self.steps += 1;
        let l = w.letters();
        let n = l.len();
        let r: Vec<i8> = (0..n).map(|i| l[(s + i) % n]).collect();
        let (y1, y2) = (r[0], r[1]);
        let tail = r[4..].to_vec();
        let tail_inv = invert(&tail);
        let subst = |i: i8| -> Vec<i8> {
            match i {
                1 => alloc::vec![y1],
                -1 => alloc::vec![-y1],
                2 => alloc::vec![y2],
                -2 => alloc::vec![-y2],
                3 => tail.clone(),
                _ => tail_inv.clone(),
            }
        };
        let expr: Expr = identity(pat.identity_index())?;
        let rel = expr.fold(
            &|k| TracePoly::constant(k),
            &mut |is_tr, idx| {
                let letters: Vec<i8> = idx.iter().flat_map(|&i| subst(i)).collect();
                let word = TraceWord::canonical(&letters, Mode::General);
                if is_tr {
                    Ok(TracePoly::tr(word))
                } else if word.len() <= 2 {
                    Ok(TracePoly::chi2(word))
                } else {
                    Err(Error::Internal(format!("chi_2 of the long word {word:?}")))
                }
            },
            &|a, b| a.add(b),
            &|a| a.neg(),
            &|a, b| a.mul(b),
        )?;
        let target = Symbol::Tr(w.clone());
        let mut k = BigInt::from(0);
        let mut rest = TracePoly::zero();
        for (m, c) in rel.terms() {
            if m.len() == 1 && m[0] == target {
                k += c;
            } else if m.contains(&target) {
                return Err(Error::Internal(format!("{w:?} occurs nonlinearly in its own relation")));
            } else {
                let mut t = TracePoly::constant(c.clone());
                for sym in m {
                    t = t.mul(&TracePoly::symbol(sym.clone()));
                }
                rest = rest.add(&t);
            }
        }
        if !k.abs().is_one() {
            return Err(Error::Internal(format!("coefficient {k} of {w:?} is not a unit")));
        }
        // w = -rest / k
        let solved = rest.scale(&-k);
        let my_rank = (w.len(), pat);
        solved.substitute(|sym| match sym {
            Symbol::Tr(u) if u.len() > 4 => {
                let next = find_pattern(u).map(|(p, _)| (u.len(), p));
                if next.is_none_or(|nr| nr >= my_rank) {
                    return Err(Error::Internal(format!("{u:?} is not smaller than {w:?}")));
                }
                self.reduce(u)
            }
            other => Ok(TracePoly::symbol(other.clone())),
        })
    }
}

/// [`TraceReducer::reduce`] with a fresh memo.
pub fn reduce_trace(w: &TraceWord) -> Result<TracePoly> {
    TraceReducer::new().reduce(w)
}

/// Traces of words of length at most 4 and `chi_2` of words of length at most 2.
pub fn generator_set(mode: Mode) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = super::word::canonical_words(4, mode).into_iter().map(Symbol::Tr).collect();
    out.extend(super::word::canonical_words(2, mode).into_iter().map(Symbol::Chi2));
    out
}
