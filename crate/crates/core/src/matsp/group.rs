use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};
use rand::{Rng, SeedableRng};

use super::linalg::Span;
use super::Mat4;
use crate::gf::{primitive_element, prime_factors, FiniteField};
use crate::{derive_seed, Error, Result, Seed};

/// `|Sp_4(q)| = q^4 (q^2 - 1)(q^4 - 1)`, when it fits in a `u128`.
pub fn sp4_order(q: u64) -> Option<u128> {
    let q = q as u128;
    let q2 = q.checked_mul(q)?;
    let q4 = q2.checked_mul(q2)?;
    q4.checked_mul(q2 - 1)?.checked_mul(q4 - 1)
}

/// The matrix of the explicit symplectic element with trace `w`, `w` a generator of `F_q^*`:
/// `e1 -> w e1 - f2`, `f1 -> -w e1 + e2 + f2`, `e2 -> e1`, `f2 -> e1 + f1 - w e2`.
pub fn trace_witness<F: FiniteField>(field: &F) -> Result<Mat4<F>> {
    let w = primitive_element(field)?;
    let (z, o) = (field.zero(), field.one());
    let (mw, mo) = (field.neg(&w), field.neg(&o));
    let cols = [
        [w.clone(), z.clone(), z.clone(), mo.clone()],
        [mw.clone(), z.clone(), o.clone(), o.clone()],
        [o.clone(), z.clone(), z.clone(), z.clone()],
        [o.clone(), o.clone(), mw, z],
    ];
    Ok(Mat4::from_columns(field.clone(), cols))
}

/// Symplectic transvection `v -> v + a (v, u) u`.
pub fn transvection<F: FiniteField>(field: &F, u: &[F::Elem; 4], a: &F::Elem) -> Mat4<F> {
    let f = field;
    // (v, u) = v^T J u, so the matrix is I + a u (J u)^T
    let ju = [u[1].clone(), f.neg(&u[0]), u[3].clone(), f.neg(&u[2])];
    let id = Mat4::identity(f.clone());
    Mat4::from_fn(f.clone(), |i, j| f.add(id.get(i, j), &f.mul(a, &f.mul(&u[i], &ju[j]))))
}

/// Root elements generating `Sp_4(q)`: the four long-root transvections on `e1, f1, e2, f2` and
/// the two short-root elements `e2 -> e2 + a e1, f1 -> f1 - a f2` and its transpose, for `a`
/// running over an `F_p`-basis of `F_q`.
pub fn standard_generators<F: FiniteField>(field: &F) -> Result<Vec<Mat4<F>>> {
    let f = field;
    let w = primitive_element(f)?;
    let basis_vec = |k: usize| -> [F::Elem; 4] { core::array::from_fn(|i| if i == k { f.one() } else { f.zero() }) };
    let mut out = Vec::new();
    let mut a = f.one();
    for _ in 0..f.degree() {
        for k in 0..4 {
            out.push(transvection(f, &basis_vec(k), &a));
        }
        let mut s = Mat4::identity(f.clone()).entries().clone();
        s[0][2] = a.clone(); // e2 -> e2 + a e1
        s[3][1] = f.neg(&a); // f1 -> f1 - a f2
        let s = Mat4::new(f.clone(), s);
        out.push(s.transpose());
        out.push(s);
        a = f.mul(&a, &w);
    }
    Ok(out)
}

/// Least `k <= bound` with `g^k = 1` by direct powering.
pub fn element_order<F: FiniteField>(g: &Mat4<F>, bound: u64) -> Result<Option<u64>> {
    if g.field().is_zero(&g.det()) {
        return Err(Error::Singular);
    }
    let mut x = g.clone();
    let mut k = 1;
    while !x.is_identity() {
        k += 1;
        if k > bound {
            return Ok(None);
        }
        x = x.mul(g);
    }
    Ok(Some(k))
}

/// Order of `g` given a multiple `n` of it, by stripping prime factors; `None` if `g^n != 1`.
pub fn element_order_with_hint<F: FiniteField>(g: &Mat4<F>, n: u64) -> Option<u64> {
    if !g.pow(n).is_identity() {
        return None;
    }
    let mut ord = n;
    for l in prime_factors(n) {
        while ord % l == 0 && g.pow(ord / l).is_identity() {
            ord /= l;
        }
    }
    Some(ord)
}

/// A multiple of every element order in `Sp_4(q)`: `p^2 (q^4 - 1)`.
pub fn sp4_exponent_multiple(p: u64, q: u64) -> Option<u64> {
    let q4 = q.checked_mul(q)?.checked_mul(q)?.checked_mul(q)?;
    p.checked_mul(p)?.checked_mul(q4 - 1)
}

/// Order of a symplectic element over its field.
pub fn sp4_element_order<F: FiniteField>(g: &Mat4<F>) -> Result<u64> {
    let f = g.field();
    let q = f.size().ok_or_else(|| Error::Unsupported("field too large".into()))?;
    let n = sp4_exponent_multiple(f.prime(), q).ok_or_else(|| Error::Unsupported("field too large".into()))?;
    element_order_with_hint(g, n).ok_or_else(|| Error::Precondition("element is not in Sp_4(q)".into()))
}

/// Whether the algebra generated by `g1, g2` is all of `M_4`.
pub fn is_absolutely_irreducible<F: FiniteField>(g1: &Mat4<F>, g2: &Mat4<F>) -> bool {
    let f = g1.field().clone();
    let mut span = Span::new(f.clone());
    let id = Mat4::identity(f);
    span.insert(&id.to_vec());
    let mut queue = vec![id];
    while let Some(m) = queue.pop() {
        for g in [g1, g2] {
            let n = g.mul(&m);
            if span.insert(&n.to_vec()) {
                if span.dim() == 16 {
                    return true;
                }
                queue.push(n);
            }
        }
    }
    false
}

/// Product-replacement generator of (nearly uniform) random elements of `<gens>`.
#[derive(Clone, Debug)]
pub struct ProductReplacement<F: FiniteField> {
    slots: Vec<Mat4<F>>,
    acc: Mat4<F>,
    rng: crate::Rng,
}

impl<F: FiniteField> ProductReplacement<F> {
    pub fn new(gens: &[Mat4<F>], seed: Seed) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyInput("generators"))?;
        let mut slots: Vec<Mat4<F>> = gens.to_vec();
        while slots.len() < 10 {
            let k = slots.len() % gens.len();
            slots.push(gens[k].clone());
        }
        let acc = Mat4::identity(first.field().clone());
        let mut pr = ProductReplacement { slots, acc, rng: crate::Rng::seed_from_u64(seed) };
        for _ in 0..60 {
            pr.next_element();
        }
        Ok(pr)
    }

    pub fn next_element(&mut self) -> Mat4<F> {
        let n = self.slots.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        self.slots[i] = if self.rng.gen::<bool>() {
            self.slots[i].mul(&self.slots[j])
        } else {
            self.slots[j].mul(&self.slots[i])
        };
        self.acc = self.acc.mul(&self.slots[i]);
        self.acc.clone()
    }

    pub fn rng(&mut self) -> &mut crate::Rng {
        &mut self.rng
    }
}

/// How [`group_order`] computes the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Breadth-first closure over packed matrices.
    Closure,
    /// Randomized Schreier-Sims on the action on vectors, confirmed with a second seed.
    StabilizerChain,
    /// Closure when `|Sp_4(q)|` is at most the closure limit, otherwise a stabilizer chain.
    Auto,
}

#[derive(Clone, Debug)]
pub struct OrderConfig {
    pub strategy: Strategy,
    /// maximal number of elements enumerated by closure
    pub closure_limit: u64,
    /// maximal orbit length in a stabilizer chain
    pub orbit_limit: u64,
    /// consecutive trivial sifts before a stabilizer chain is declared complete
    pub trivial_sifts: u32,
    pub seed: Seed,
}

impl Default for OrderConfig {
    fn default() -> Self {
        OrderConfig {
            strategy: Strategy::Auto,
            closure_limit: 1_000_000,
            orbit_limit: 2_000_000,
            trivial_sifts: 40,
            seed: 0x5eed,
        }
    }
}

/// Order of the group generated by `gens`.
pub fn group_order<F: FiniteField>(gens: &[Mat4<F>], cfg: &OrderConfig) -> Result<u128> {
    let first = gens.first().ok_or(Error::EmptyInput("generators"))?;
    let f = first.field();
    if gens.iter().all(Mat4::is_identity) {
        return Ok(1);
    }
    let q = f.size().ok_or_else(|| Error::Unsupported("field too large".into()))?;
    let use_closure = match cfg.strategy {
        Strategy::Closure => true,
        Strategy::StabilizerChain => false,
        Strategy::Auto => sp4_order(q).is_some_and(|n| n <= cfg.closure_limit as u128) && q <= 256,
    };
    if use_closure {
        closure_order(gens, cfg.closure_limit).map(u128::from)
    } else {
        let target = sp4_order(q);
        let a = StabChain::build(gens, cfg.seed, cfg, target)?.order();
        if Some(a) == target {
            return Ok(a);
        }
        let b = StabChain::build(gens, derive_seed(cfg.seed, 1), cfg, target)?.order();
        if a == b {
            return Ok(a);
        }
        // disagreement: both are lower bounds, retry with a longer run
        let mut strict = cfg.clone();
        strict.trivial_sifts = cfg.trivial_sifts.saturating_mul(4);
        let c = StabChain::build(gens, derive_seed(cfg.seed, 2), &strict, target)?.order();
        Ok(a.max(b).max(c))
    }
}

fn pack<F: FiniteField>(m: &Mat4<F>, q: u128) -> u128 {
    let f = m.field();
    m.entries().iter().flatten().fold(0u128, |acc, x| acc * q + f.index(x) as u128)
}

fn unpack<F: FiniteField>(field: &F, mut key: u128, q: u128) -> Mat4<F> {
    let mut e: [[F::Elem; 4]; 4] = core::array::from_fn(|_| core::array::from_fn(|_| field.zero()));
    for k in (0..16).rev() {
        e[k / 4][k % 4] = field.from_index((key % q) as u64);
        key /= q;
    }
    Mat4::new(field.clone(), e)
}

/// Breadth-first closure; errors once more than `limit` elements have been seen.
pub fn closure_order<F: FiniteField>(gens: &[Mat4<F>], limit: u64) -> Result<u64> {
    Ok(closure(gens, limit, false)?.0)
}

/// All elements of `<gens>`, for small groups.
pub fn enumerate_group<F: FiniteField>(gens: &[Mat4<F>], limit: u64) -> Result<Vec<Mat4<F>>> {
    Ok(closure(gens, limit, true)?.1)
}

fn closure<F: FiniteField>(gens: &[Mat4<F>], limit: u64, keep: bool) -> Result<(u64, Vec<Mat4<F>>)> {
    let first = gens.first().ok_or(Error::EmptyInput("generators"))?;
    let f = first.field().clone();
    let q = f
        .size()
        .filter(|&q| q <= 256)
        .ok_or_else(|| Error::Unsupported("closure needs q <= 256".into()))? as u128;
    let id = Mat4::identity(f.clone());
    let mut seen: HashSet<u128> = HashSet::new();
    let mut queue: Vec<u128> = Vec::new();
    let k0 = pack(&id, q);
    seen.insert(k0);
    queue.push(k0);
    let mut head = 0;
    while head < queue.len() {
        let m = unpack(&f, queue[head], q);
        head += 1;
        for g in gens {
            let k = pack(&m.mul(g), q);
            if seen.insert(k) {
                if seen.len() as u64 > limit {
                    return Err(Error::Resource(alloc::format!("closure exceeded {limit} elements")));
                }
                queue.push(k);
            }
        }
    }
    let elems = if keep { queue.iter().map(|&k| unpack(&f, k, q)).collect() } else { Vec::new() };
    Ok((seen.len() as u64, elems))
}

struct Level<F: FiniteField> {
    base: [F::Elem; 4],
    gens: Vec<Mat4<F>>,
    index: HashMap<u64, usize>,
    points: Vec<[F::Elem; 4]>,
    /// `reps[k] * base == points[k]`
    reps: Vec<Mat4<F>>,
}

/// A stabilizer chain for the action on `F_q^4` with base `e1, f1, e2, f2`.
pub struct StabChain<F: FiniteField> {
    levels: Vec<Level<F>>,
    q: u64,
    orbit_limit: u64,
}

fn vec_key<F: FiniteField>(f: &F, v: &[F::Elem; 4], q: u64) -> u64 {
    v.iter().fold(0u64, |acc, x| acc * q + f.index(x))
}

impl<F: FiniteField> StabChain<F> {
    /// Randomized Schreier-Sims; stops after `trivial_sifts` consecutive trivial sifts or once
    /// the order reaches `target`.
    pub fn build(gens: &[Mat4<F>], seed: Seed, cfg: &OrderConfig, target: Option<u128>) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyInput("generators"))?;
        let f = first.field().clone();
        let q = f.size().filter(|&q| q < 1 << 16).ok_or_else(|| Error::Unsupported("field too large".into()))?;
        let id = Mat4::identity(f.clone());
        let levels = (0..4)
            .map(|k| {
                let base = id.column(k);
                let mut index = HashMap::new();
                index.insert(vec_key(&f, &base, q), 0);
                Level { base: base.clone(), gens: Vec::new(), index, points: vec![base], reps: vec![id.clone()] }
            })
            .collect();
        let mut chain = StabChain { levels, q, orbit_limit: cfg.orbit_limit };
        for g in gens.iter().filter(|g| !g.is_identity()) {
            chain.add_generator(g.clone(), 0)?;
        }
        let mut pr = ProductReplacement::new(gens, seed)?;
        let mut trivial = 0;
        while trivial < cfg.trivial_sifts {
            if target.is_some_and(|t| chain.order() >= t) {
                break;
            }
            let g = pr.next_element();
            match chain.sift(&g) {
                None => trivial += 1,
                Some((h, level)) => {
                    trivial = 0;
                    for j in 0..=level {
                        chain.add_generator(h.clone(), j)?;
                    }
                }
            }
        }
        Ok(chain)
    }

    fn add_generator(&mut self, g: Mat4<F>, level: usize) -> Result<()> {
        let q = self.q;
        let limit = self.orbit_limit;
        let lv = &mut self.levels[level];
        let f = g.field().clone();
        let old_len = lv.points.len();
        lv.gens.push(g);
        let gi = lv.gens.len() - 1;
        let try_add = |lv: &mut Level<F>, s: usize, k: usize| -> Result<()> {
            let img = lv.gens[s].apply(&lv.points[k]);
            let key = vec_key(&f, &img, q);
            if !lv.index.contains_key(&key) {
                if lv.points.len() as u64 >= limit {
                    return Err(Error::Resource(alloc::format!("orbit exceeded {limit} points")));
                }
                let rep = lv.gens[s].mul(&lv.reps[k]);
                lv.index.insert(key, lv.points.len());
                lv.points.push(img);
                lv.reps.push(rep);
            }
            Ok(())
        };
        for k in 0..old_len {
            try_add(lv, gi, k)?;
        }
        let mut k = old_len;
        while k < lv.points.len() {
            for s in 0..lv.gens.len() {
                try_add(lv, s, k)?;
            }
            k += 1;
        }
        Ok(())
    }

    /// Residue of `g` and the level where sifting stopped, or `None` if `g` sifts through.
    pub fn sift(&self, g: &Mat4<F>) -> Option<(Mat4<F>, usize)> {
        let f = g.field();
        let mut g = g.clone();
        for (i, lv) in self.levels.iter().enumerate() {
            let img = g.apply(&lv.base);
            match lv.index.get(&vec_key(f, &img, self.q)) {
                None => return Some((g, i)),
                Some(&k) => {
                    let inv = lv.reps[k].inverse().expect("transversal elements are invertible");
                    g = inv.mul(&g);
                }
            }
        }
        // the base spans V, so g is the identity here
        (!g.is_identity()).then_some((g, self.levels.len() - 1))
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|lv| lv.points.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|lv| lv.points.len() as u128).product()
    }

    /// Membership test by sifting.
    pub fn contains(&self, g: &Mat4<F>) -> bool {
        self.sift(g).is_none()
    }
}
