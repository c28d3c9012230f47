use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{Family, GroupDescriptor, Isogeny, Triple, Verdict};
use crate::gf::prime_factors;

/// A constraint on one entry of a sorted triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Any,
    Is(u32),
    AtLeast(u32),
}

impl Slot {
    fn accepts(self, x: u32) -> bool {
        match self {
            Slot::Any => true,
            Slot::Is(v) => x == v,
            Slot::AtLeast(v) => x >= v,
        }
    }
}

/// A family of sorted triples such as `(2,b,c)` with `b >= 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriplePattern(pub [Slot; 3]);

impl TriplePattern {
    pub fn matches(&self, t: Triple) -> bool {
        self.0.iter().zip(t.entries()).all(|(s, x)| s.accepts(x))
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ['a', 'b', 'c'];
        let mut conds = Vec::new();
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match s {
                Slot::Is(v) => write!(f, "{v}")?,
                Slot::Any => write!(f, "{}", names[i])?,
                Slot::AtLeast(v) => {
                    write!(f, "{}", names[i])?;
                    conds.push((names[i], *v));
                }
            }
        }
        f.write_str(")")?;
        for (n, v) in conds {
            write!(f, " {n}>={v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeCondition {
    Any,
    Is(u64),
    Not(u64),
}

impl PrimeCondition {
    /// `p = 0` stands for characteristic zero.
    pub fn accepts(self, p: u64) -> bool {
        match self {
            PrimeCondition::Any => true,
            PrimeCondition::Is(q) => p == q,
            PrimeCondition::Not(q) => p != q,
        }
    }
}

impl fmt::Display for PrimeCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeCondition::Any => f.write_str("any"),
            PrimeCondition::Is(q) => write!(f, "p = {q}"),
            PrimeCondition::Not(q) => write!(f, "p != {q}"),
        }
    }
}

/// The three classification tables: rigid triples in adjoint type, reducible triples, and
/// rigid triples in simply connected type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    RigidAdjoint = 1,
    Reducible = 3,
    RigidSimplyConnected = 4,
}

impl TableId {
    pub fn from_number(n: u32) -> Option<Self> {
        match n {
            1 => Some(TableId::RigidAdjoint),
            3 => Some(TableId::Reducible),
            4 => Some(TableId::RigidSimplyConnected),
            _ => None,
        }
    }

    pub fn verdict(self) -> Verdict {
        match self {
            TableId::Reducible => Verdict::Reducible,
            _ => Verdict::Rigid,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub table: TableId,
    pub group: GroupDescriptor,
    /// Display name such as `PSp4`.
    pub name: &'static str,
    pub prime: PrimeCondition,
    pub triples: Vec<TriplePattern>,
}

const ANY: Slot = Slot::Any;

const fn is(v: u32) -> Slot {
    Slot::Is(v)
}

const fn at_least(v: u32) -> Slot {
    Slot::AtLeast(v)
}

fn pat(a: Slot, b: Slot, c: Slot) -> TriplePattern {
    TriplePattern([a, b, c])
}

fn exact(a: u32, b: u32, c: u32) -> TriplePattern {
    pat(is(a), is(b), is(c))
}

fn group(family: Family, rank: u32, isogeny: Isogeny) -> GroupDescriptor {
    GroupDescriptor::new(family, rank, isogeny).expect("tabulated group")
}

fn row(table: TableId, g: GroupDescriptor, name: &'static str, prime: PrimeCondition, triples: Vec<TriplePattern>) -> TableRow {
    TableRow { table, group: g, name, prime, triples }
}

/// Rows of one table, in printed order.
pub fn table_rows(table: TableId) -> Vec<TableRow> {
    use Family::*;
    use Isogeny::*;
    use PrimeCondition as P;
    let t = table;
    match table {
        TableId::RigidAdjoint => vec![
            row(t, group(A, 1, Adjoint), "PSL2", P::Any, vec![pat(ANY, ANY, ANY)]),
            row(t, group(A, 2, Adjoint), "PSL3", P::Any, vec![pat(is(2), ANY, ANY)]),
            row(t, group(A, 3, Adjoint), "PSL4", P::Any, vec![pat(is(2), is(3), ANY)]),
            row(t, group(A, 4, Adjoint), "PSL5", P::Any, vec![pat(is(2), is(3), ANY)]),
            row(t, group(C, 2, Adjoint), "PSp4", P::Any, vec![pat(is(2), is(3), ANY), pat(is(3), is(3), ANY)]),
            row(t, group(G2, 2, Adjoint), "G2", P::Any, vec![exact(2, 4, 5), exact(2, 5, 5)]),
        ],
        TableId::Reducible => {
            let mut rows = vec![
                row(t, group(A, 1, SimplyConnected), "SL2", P::Not(2), vec![pat(is(2), ANY, ANY)]),
                row(
                    t,
                    group(C, 2, SimplyConnected),
                    "Sp4",
                    P::Not(2),
                    vec![pat(is(2), is(3), ANY), pat(is(2), is(4), ANY), exact(3, 3, 4), exact(3, 4, 4), exact(4, 4, 4)],
                ),
                row(
                    t,
                    group(C, 3, SimplyConnected),
                    "Sp6",
                    P::Not(2),
                    vec![pat(is(2), is(3), ANY), pat(is(2), is(4), ANY), exact(2, 5, 5), exact(2, 5, 6), exact(2, 6, 6)],
                ),
                row(
                    t,
                    group(C, 4, SimplyConnected),
                    "Sp8",
                    P::Not(2),
                    vec![exact(2, 3, 7), exact(2, 3, 8), exact(2, 4, 5), exact(2, 4, 6)],
                ),
                row(
                    t,
                    group(C, 5, SimplyConnected),
                    "Sp10",
                    P::Not(2),
                    vec![exact(2, 3, 7), exact(2, 3, 8), exact(2, 3, 9), exact(2, 3, 10), exact(2, 4, 5), exact(2, 4, 6)],
                ),
                row(t, group(C, 6, SimplyConnected), "Sp12", P::Not(2), vec![exact(2, 3, 7), exact(2, 3, 8), exact(2, 4, 5)]),
                row(t, group(C, 7, SimplyConnected), "Sp14", P::Not(2), vec![exact(2, 3, 7), exact(2, 3, 8), exact(2, 4, 5)]),
            ];
            for (l, name) in [(8, "Sp16"), (9, "Sp18"), (11, "Sp22")] {
                rows.push(row(t, group(C, l, SimplyConnected), name, P::Not(2), vec![exact(2, 3, 7)]));
            }
            rows
        }
        TableId::RigidSimplyConnected => {
            let mut rows = vec![
                row(t, group(A, 1, SimplyConnected), "SL2", P::Is(2), vec![pat(ANY, ANY, ANY)]),
                row(t, group(A, 1, SimplyConnected), "SL2", P::Not(2), vec![pat(at_least(3), ANY, ANY)]),
                row(t, group(A, 2, SimplyConnected), "SL3", P::Any, vec![pat(is(2), ANY, ANY)]),
                row(t, group(A, 3, SimplyConnected), "SL4", P::Is(2), vec![pat(is(2), is(3), ANY)]),
                row(
                    t,
                    group(A, 3, SimplyConnected),
                    "SL4",
                    P::Not(2),
                    vec![pat(is(2), is(3), ANY), pat(is(2), is(4), ANY), exact(3, 3, 4), exact(3, 4, 4), exact(4, 4, 4)],
                ),
                row(t, group(A, 4, SimplyConnected), "SL5", P::Any, vec![pat(is(2), is(3), ANY)]),
                row(
                    t,
                    group(A, 5, SimplyConnected),
                    "SL6",
                    P::Not(2),
                    vec![pat(is(2), is(3), ANY), exact(2, 4, 5), exact(2, 4, 6)],
                ),
                row(t, group(A, 9, SimplyConnected), "SL10", P::Not(2), vec![exact(2, 3, 7)]),
                row(t, group(C, 2, SimplyConnected), "Sp4", P::Is(2), vec![pat(is(2), is(3), ANY), pat(is(3), is(3), ANY)]),
                row(
                    t,
                    group(C, 2, SimplyConnected),
                    "Sp4",
                    P::Not(2),
                    vec![
                        pat(is(2), at_least(5), ANY),
                        pat(is(3), is(3), at_least(5)),
                        pat(is(3), is(4), at_least(5)),
                        pat(is(4), is(4), at_least(5)),
                    ],
                ),
                row(
                    t,
                    group(C, 3, SimplyConnected),
                    "Sp6",
                    P::Not(2),
                    vec![pat(is(2), is(5), at_least(7)), pat(is(2), is(6), at_least(7)), exact(3, 3, 4), exact(3, 4, 4), exact(4, 4, 4)],
                ),
                row(
                    t,
                    group(C, 4, SimplyConnected),
                    "Sp8",
                    P::Not(2),
                    vec![pat(is(2), is(3), at_least(9)), exact(2, 4, 7), exact(2, 4, 8), exact(2, 5, 5), exact(2, 5, 6), exact(2, 6, 6)],
                ),
                row(
                    t,
                    group(C, 5, SimplyConnected),
                    "Sp10",
                    P::Not(2),
                    vec![pat(is(2), is(3), at_least(11)), exact(2, 4, 7), exact(2, 4, 8)],
                ),
            ];
            for (l, name) in [(6, "Sp12"), (7, "Sp14")] {
                rows.push(row(t, group(C, l, SimplyConnected), name, P::Not(2), vec![exact(2, 3, 9), exact(2, 3, 10), exact(2, 4, 6)]));
            }
            for (l, name) in [(8, "Sp16"), (9, "Sp18")] {
                rows.push(row(t, group(C, l, SimplyConnected), name, P::Not(2), vec![exact(2, 3, 8), exact(2, 4, 5)]));
            }
            for (l, name) in [(10, "Sp20"), (12, "Sp24"), (13, "Sp26")] {
                rows.push(row(t, group(C, l, SimplyConnected), name, P::Not(2), vec![exact(2, 3, 7)]));
            }
            rows.push(row(t, group(B, 5, SimplyConnected), "Spin11", P::Not(2), vec![exact(2, 3, 7)]));
            rows.push(row(t, group(D, 6, SimplyConnected), "Spin12", P::Not(2), vec![exact(2, 3, 7)]));
            rows
        }
    }
}

fn listed(table: TableId, g: &GroupDescriptor, t: Triple, p: u64) -> bool {
    table_rows(table)
        .iter()
        .any(|r| r.group == *g && r.prime.accepts(p) && r.triples.iter().any(|pt| pt.matches(t)))
}

/// Tabulated verdict for a hyperbolic triple and a group of adjoint or simply connected
/// type in characteristic `p` (0 for characteristic zero). Triples absent from the tables
/// are nonrigid. `None` for intermediate isogeny types and non-hyperbolic triples.
pub fn table_lookup(g: &GroupDescriptor, t: Triple, p: u64) -> Option<Verdict> {
    if !t.is_hyperbolic() {
        return None;
    }
    let rigid_table = match g.isogeny() {
        Isogeny::Adjoint => TableId::RigidAdjoint,
        Isogeny::SimplyConnected => TableId::RigidSimplyConnected,
        Isogeny::Other => return None,
    };
    if g.isogeny() == Isogeny::SimplyConnected && listed(TableId::Reducible, g, t, p) {
        return Some(Verdict::Reducible);
    }
    if listed(rigid_table, g, t, p) {
        return Some(Verdict::Rigid);
    }
    Some(Verdict::Nonrigid)
}

/// Primes dividing `a b c d` for the Cartan determinant `d` of `g`; the classification of
/// the finite quotients is incomplete in these characteristics.
pub fn open_primes(g: &GroupDescriptor, t: Triple) -> Vec<u64> {
    let n = t.entries().iter().map(|&x| x as u64).product::<u64>() * g.cartan_det() as u64;
    prime_factors(n)
}
