use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Letter order used for canonical forms: `1 < 2 < -1 < -2`.
fn key(l: i8) -> u8 {
    match l {
        1 => 0,
        2 => 1,
        -1 => 2,
        _ => 3,
    }
}

/// Whether inverse words are identified (`tr(g^-1) = tr(g)` holds in `Sp_4`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    General,
    Symplectic,
}

/// A cyclic word in `g1^{+-1}, g2^{+-1}` reduced under `g1^3 = g2^3 = 1`, stored as its least
/// rotation (and, in symplectic mode, the least among rotations of the word and its inverse).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceWord(Vec<i8>);

/// Reduces a linear word under free cancellation and `g^3 = 1`; each maximal run of one
/// generator collapses to a single letter or disappears.
pub fn reduce_linear(letters: &[i8]) -> Vec<i8> {
    let mut out: Vec<i8> = Vec::with_capacity(letters.len());
    for &l in letters {
        push_letter(&mut out, l);
    }
    out
}

fn exponent(l: i8) -> u8 {
    if l > 0 {
        1
    } else {
        2
    }
}

fn push_letter(out: &mut Vec<i8>, l: i8) {
    match out.last() {
        Some(&top) if top.abs() == l.abs() => {
            out.pop();
            match (exponent(top) + exponent(l)) % 3 {
                0 => {}
                1 => push_letter(out, l.abs()),
                _ => push_letter(out, -l.abs()),
            }
        }
        _ => out.push(l),
    }
}

/// Cyclic reduction of an already linearly reduced word.
pub fn reduce_cyclic(letters: &[i8]) -> Vec<i8> {
    let mut w = reduce_linear(letters);
    while w.len() >= 2 && w[0].abs() == w[w.len() - 1].abs() {
        let last = w.pop().unwrap();
        let first = w.remove(0);
        let mut merged = vec_one(last);
        push_letter(&mut merged, first);
        let mut next = merged;
        next.extend_from_slice(&w);
        w = reduce_linear(&next);
    }
    w
}

fn vec_one(l: i8) -> Vec<i8> {
    let mut v = Vec::with_capacity(1);
    v.push(l);
    v
}

fn least_rotation(w: &[i8]) -> Vec<i8> {
    let n = w.len();
    let mut best: Option<Vec<i8>> = None;
    for s in 0..n.max(1) {
        let r: Vec<i8> = (0..n).map(|i| w[(s + i) % n]).collect();
        let better = match &best {
            None => true,
            Some(b) => r.iter().map(|&l| key(l)).lt(b.iter().map(|&l| key(l))),
        };
        if better {
            best = Some(r);
        }
    }
    best.unwrap_or_default()
}

/// The inverse word: reversed with every letter inverted.
pub fn invert(w: &[i8]) -> Vec<i8> {
    w.iter().rev().map(|l| -l).collect()
}

fn check_letters(letters: &[i8]) -> Result<()> {
    match letters.iter().find(|l| !matches!(l, 1 | -1 | 2 | -2)) {
        Some(l) => Err(Error::InvalidArgument(alloc::format!("letter {l} is not one of 1, -1, 2, -2"))),
        None => Ok(()),
    }
}

impl TraceWord {
    pub fn new(letters: &[i8], mode: Mode) -> Result<Self> {
        check_letters(letters)?;
        Ok(Self::canonical(letters, mode))
    }

    pub(crate) fn canonical(letters: &[i8], mode: Mode) -> Self {
        let w = reduce_cyclic(letters);
        let a = least_rotation(&w);
        match mode {
            Mode::General => TraceWord(a),
            Mode::Symplectic => {
                let b = least_rotation(&invert(&w));
                if b.iter().map(|&l| key(l)).lt(a.iter().map(|&l| key(l))) {
                    TraceWord(b)
                } else {
                    TraceWord(a)
                }
            }
        }
    }

    pub fn empty() -> Self {
        TraceWord(Vec::new())
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

    pub fn in_mode(&self, mode: Mode) -> Self {
        Self::canonical(&self.0, mode)
    }
}

impl fmt::Display for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TraceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// All canonical words of reduced length at most `max_len`.
pub fn canonical_words(max_len: usize, mode: Mode) -> Vec<TraceWord> {
    let mut out: Vec<TraceWord> = Vec::new();
    let mut frontier: Vec<Vec<i8>> = alloc::vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in [1i8, 2, -1, -2] {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        for w in &next {
            let t = TraceWord::canonical(w, mode);
            if t.len() <= max_len && !out.contains(&t) {
                out.push(t);
            }
        }
        frontier = next;
    }
    out.retain(|t| !t.is_empty());
    out.sort();
    out
}
