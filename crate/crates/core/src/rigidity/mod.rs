//! Rigidity of hyperbolic triples for simple algebraic groups.
//!
//! A hyperbolic triple `(a,b,c)` is rigid, reducible or nonrigid for `G` according as
//! `S = d_a + d_b + d_c` equals, exceeds or falls short of `dim G`, where `d_u` is the
//! minimal dimension of the centralizer of an element of order dividing `u`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::{Error, Result};

mod tables;

pub use tables::{open_primes, table_lookup, table_rows, Slot, TableRow, TriplePattern, PrimeCondition, TableId};

/// A triple `a <= b <= c` of positive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    a: u32,
    b: u32,
    c: u32,
}

impl Triple {
    /// Sorts the entries; zero entries are rejected.
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self> {
        if a == 0 || b == 0 || c == 0 {
            return Err(Error::InvalidArgument(format!("triple entries must be positive: ({a},{b},{c})")));
        }
        let mut v = [a, b, c];
        v.sort_unstable();
        Ok(Triple { a: v[0], b: v[1], c: v[2] })
    }

    /// Like [`Triple::new`] but also requires `1/a + 1/b + 1/c < 1`.
    pub fn hyperbolic(a: u32, b: u32, c: u32) -> Result<Self> {
        let t = Self::new(a, b, c)?;
        if !t.is_hyperbolic() {
            return Err(t.not_hyperbolic());
        }
        Ok(t)
    }

    fn not_hyperbolic(&self) -> Error {
        Error::NotHyperbolic(self.a as u64, self.b as u64, self.c as u64)
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn entries(&self) -> [u32; 3] {
        [self.a, self.b, self.c]
    }

    pub fn is_hyperbolic(&self) -> bool {
        let (a, b, c) = (self.a as u64, self.b as u64, self.c as u64);
        b * c + a * c + a * b < a * b * c
    }

    /// The componentwise partial order.
    pub fn le(&self, other: &Triple) -> bool {
        self.a <= other.a && self.b <= other.b && self.c <= other.c
    }

    /// Parses `"a,b,c"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<u32> = s
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::InvalidArgument(format!("bad triple {s:?}"))))
            .collect::<Result<_>>()?;
        match parts[..] {
            [a, b, c] => Self::new(a, b, c),
            _ => Err(Error::InvalidArgument(format!("bad triple {s:?}"))),
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Hyperbolic triples with all entries at most `max`, in increasing order.
pub fn hyperbolic_triples(max: u32) -> Vec<Triple> {
    let mut out = Vec::new();
    for a in 2..=max {
        for b in a..=max {
            for c in b..=max {
                let t = Triple { a, b, c };
                if t.is_hyperbolic() {
                    out.push(t);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Isogeny {
    Adjoint,
    SimplyConnected,
    Other,
}

/// A simple algebraic group up to isogeny type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupDescriptor {
    family: Family,
    rank: u32,
    isogeny: Isogeny,
}

impl GroupDescriptor {
    pub fn new(family: Family, rank: u32, isogeny: Isogeny) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E6 => rank == 6,
            Family::E7 => rank == 7,
            Family::E8 => rank == 8,
            Family::F4 => rank == 4,
            Family::G2 => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidArgument(format!("no simple group of type {family:?}{rank}")));
        }
        // types E8, F4, G2 have trivial centre: both isogeny labels name the same group
        let isogeny = match family {
            Family::E8 | Family::F4 | Family::G2 => Isogeny::Adjoint,
            _ => isogeny,
        };
        Ok(GroupDescriptor { family, rank, isogeny })
    }

    /// `PSL_n`.
    pub fn psl(n: u32) -> Result<Self> {
        Self::new(Family::A, n.saturating_sub(1), Isogeny::Adjoint)
    }

    /// `SL_n`.
    pub fn sl(n: u32) -> Result<Self> {
        Self::new(Family::A, n.saturating_sub(1), Isogeny::SimplyConnected)
    }

    /// `Sp_{2l}`.
    pub fn sp(two_l: u32) -> Result<Self> {
        if two_l % 2 != 0 {
            return Err(Error::InvalidArgument(format!("Sp_{two_l} needs even degree")));
        }
        Self::new(Family::C, two_l / 2, Isogeny::SimplyConnected)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn isogeny(&self) -> Isogeny {
        self.isogeny
    }

    pub fn coxeter_number(&self) -> u32 {
        let l = self.rank;
        match self.family {
            Family::A => l + 1,
            Family::B | Family::C => 2 * l,
            Family::D => 2 * l - 2,
            Family::E6 => 12,
            Family::E7 => 18,
            Family::E8 => 30,
            Family::F4 => 12,
            Family::G2 => 6,
        }
    }

    pub fn dim(&self) -> u32 {
        let l = self.rank;
        match self.family {
            Family::A => l * (l + 2),
            Family::B | Family::C => l * (2 * l + 1),
            Family::D => l * (2 * l - 1),
            Family::E6 => 78,
            Family::E7 => 133,
            Family::E8 => 248,
            Family::F4 => 52,
            Family::G2 => 14,
        }
    }

    /// Determinant of the Cartan matrix.
    pub fn cartan_det(&self) -> u32 {
        match self.family {
            Family::A => self.rank + 1,
            Family::B | Family::C | Family::E7 => 2,
            Family::D => 4,
            Family::E6 => 3,
            Family::E8 | Family::F4 | Family::G2 => 1,
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let iso = match self.isogeny {
            Isogeny::Adjoint => "adjoint",
            Isogeny::SimplyConnected => "simply connected",
            Isogeny::Other => "intermediate",
        };
        match self.family {
            Family::A | Family::B | Family::C | Family::D => write!(f, "{:?}{} ({iso})", self.family, self.rank),
            other => write!(f, "{other:?} ({iso})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Reducible,
    Rigid,
    Nonrigid,
}

impl Verdict {
    /// The verdict attached to the sign of `S - dim G`.
    pub fn from_excess(d: i64) -> Self {
        match d.signum() {
            1 => Verdict::Reducible,
            0 => Verdict::Rigid,
            _ => Verdict::Nonrigid,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Reducible => "reducible",
            Verdict::Rigid => "rigid",
            Verdict::Nonrigid => "nonrigid",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleVerdict {
    pub triple: Triple,
    pub group: GroupDescriptor,
    pub verdict: Verdict,
    /// `d_a + d_b + d_c`.
    pub s: i64,
    /// `s - dim G`.
    pub d: i64,
}

/// `d_u` for adjoint type `A_l`: writing `h = l + 1 = z u + e` with `0 <= e < u`, this is
/// `z^2 u + e (2z + 1) - 1`.
///
/// # Panics
/// If `rank` or `u` is zero.
pub fn du_type_a(rank: u32, u: u32) -> u64 {
    assert!(rank >= 1 && u >= 1, "rank and order must be positive");
    let h = rank as u64 + 1;
    let u = u as u64;
    let (z, e) = (h / u, h % u);
    z * z * u + e * (2 * z + 1) - 1
}

/// Classification of a hyperbolic triple for `PSL_{l+1}` from the values of `d_u`. For
/// `l <= 4` the verdict is checked against the tabulated classification.
pub fn classify_adjoint_a(rank: u32, triple: Triple) -> Result<TripleVerdict> {
    if !triple.is_hyperbolic() {
        return Err(triple.not_hyperbolic());
    }
    let group = GroupDescriptor::new(Family::A, rank, Isogeny::Adjoint)?;
    let s: i64 = triple.entries().iter().map(|&u| du_type_a(rank, u) as i64).sum();
    let d = s - group.dim() as i64;
    let verdict = Verdict::from_excess(d);
    if rank <= 4 {
        let tabulated = table_lookup(&group, triple, 0);
        if tabulated != Some(verdict) {
            return Err(Error::Internal(format!("{triple} for {group}: computed {verdict}, tabulated {tabulated:?}")));
        }
    }
    Ok(TripleVerdict { triple, group, verdict, s, d })
}

/// `(u^2 - 4u + 4h^2) / 4u`, the maximum over `e` of the type-A expression for `d_u`.
pub fn f_bound(h: u64, u: u64) -> BigRational {
    let (h, u) = (BigInt::from(h), BigInt::from(u));
    BigRational::new(&u * &u - BigInt::from(4) * &u + BigInt::from(4) * &h * &h, BigInt::from(4) * u)
}

/// Upper bound `F(a) + F(b) + F(c) - (h^2 - 1)` for `D = S - dim G` in type `A_{h-1}`, for
/// the three minimal hyperbolic triples. A negative value makes the triple, and every
/// triple above it, nonrigid.
pub fn nonrigidity_bound(h: u64, triple: Triple) -> Result<BigRational> {
    if h < 2 {
        return Err(Error::InvalidArgument(format!("Coxeter number {h} is below 2")));
    }
    if ![[2, 3, 7], [2, 4, 5], [3, 3, 4]].contains(&triple.entries()) {
        return Err(Error::Unsupported(format!("{triple} is not a minimal hyperbolic triple")));
    }
    let s = triple.entries().iter().map(|&u| f_bound(h, u as u64)).fold(BigRational::from_integer(0.into()), |a, b| a + b);
    let dim = BigInt::from(h) * BigInt::from(h) - 1;
    Ok(s - BigRational::from_integer(dim))
}

fn check_partition(n: u32, parts: &[u32]) -> Result<()> {
    if parts.iter().any(|&m| m == 0) || parts.iter().map(|&m| m as u64).sum::<u64>() != n as u64 {
        return Err(Error::InvalidArgument(format!("{parts:?} is not a partition of {n}")));
    }
    Ok(())
}

/// Dimension of the class in `SL_n` of a semisimple element whose eigenvalues have the
/// multiplicities `mults`: `n^2 - sum m_i^2`.
pub fn class_dim_semisimple(n: u32, mults: &[u32]) -> Result<u64> {
    check_partition(n, mults)?;
    Ok((n as u64).pow(2) - mults.iter().map(|&m| (m as u64).pow(2)).sum::<u64>())
}

/// Conjugate partition.
pub fn conjugate_partition(parts: &[u32]) -> Vec<u32> {
    let max = parts.iter().copied().max().unwrap_or(0);
    (1..=max).map(|i| parts.iter().filter(|&&p| p >= i).count() as u32).collect()
}

/// Dimension of the class in `SL_n` of a unipotent element with Jordan blocks `jordan`:
/// `n^2 - sum (lambda'_i)^2` for the conjugate partition `lambda'`.
pub fn class_dim_unipotent(n: u32, jordan: &[u32]) -> Result<u64> {
    check_partition(n, jordan)?;
    Ok((n as u64).pow(2) - conjugate_partition(jordan).iter().map(|&m| (m as u64).pow(2)).sum::<u64>())
}

/// Compares the sum of the largest class dimensions in `H` of elements of orders `a, b, c`
/// of a subgroup `G` with `2 dim H`. A reducible verdict means every `(a,b,c)`-generated
/// subgroup of `G` is reducible in `H`.
pub fn g_triple_classify(dim_h: u64, maxdims: [u64; 3]) -> Verdict {
    let s: u64 = maxdims.iter().sum();
    match s.cmp(&(2 * dim_h)) {
        core::cmp::Ordering::Less => Verdict::Reducible,
        core::cmp::Ordering::Equal => Verdict::Rigid,
        core::cmp::Ordering::Greater => Verdict::Nonrigid,
    }
}
