use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng as _;

use super::*;
use crate::gf::{BinaryField, Field, FiniteField, PrimeField, Rationals, TableField};
use crate::matsp::{
    eval_word, is_absolutely_irreducible, random_gl4_order_three as random_order_three, random_invertible, GroupWord, Mat4,
    Sp4Sampler,
};
use crate::{rng_from_seed, Error};

fn check_procesi<F: FiniteField>(f: &F, seed: u64, trials: usize) {
    let mut rng = rng_from_seed(seed);
    for _ in 0..trials {
        let m = [random_invertible(f, &mut rng), random_invertible(f, &mut rng), random_invertible(f, &mut rng)];
        for k in 1..=3 {
            let v = procesi_lhs(k, [&m[0], &m[1], &m[2]]).unwrap();
            assert!(f.is_zero(&v), "identity {k} fails over {f:?}");
        }
    }
}

#[test]
fn procesi_identities_vanish() {
    let i = Mat4::identity(PrimeField::new(7).unwrap());
    assert_eq!(procesi_lhs(1, [&i, &i, &i]).unwrap(), 0);
    check_procesi(&PrimeField::new(101).unwrap(), 1, 400);
    check_procesi(&PrimeField::new(7).unwrap(), 2, 200);
    check_procesi(&TableField::new(5, 2, 0).unwrap(), 3, 200);
    check_procesi(&BinaryField::new(25, 0).unwrap(), 4, 100);

    let q = Rationals;
    let mut rng = rng_from_seed(5);
    for _ in 0..20 {
        let m: Vec<Mat4<Rationals>> = (0..3)
            .map(|_| loop {
                let m = Mat4::from_fn(q, |_, _| q.from_i64(rng.gen_range(-3..=3)));
                if !q.is_zero(&m.det()) {
                    break m;
                }
            })
            .collect();
        for k in 1..=3 {
            assert!(procesi_lhs(k, [&m[0], &m[1], &m[2]]).unwrap().is_zero());
        }
    }

    let f = PrimeField::new(7).unwrap();
    let z = Mat4::from_i64(f, [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
    assert_eq!(procesi_lhs(2, [&i, &z, &i]), Err(Error::Singular));
}

#[test]
fn sym5_vanishes() {
    let f = PrimeField::new(7).unwrap();
    let i = Mat4::identity(f);
    assert_eq!(procesi_sym5([&i, &i, &i, &i, &i]), 0);
    let mut rng = rng_from_seed(11);
    for _ in 0..30 {
        let z: Vec<Mat4<PrimeField>> = (0..5).map(|_| Mat4::from_fn(f, |_, _| f.random(&mut rng))).collect();
        assert_eq!(procesi_sym5([&z[0], &z[1], &z[2], &z[3], &z[4]]), 0);
    }
    let f = PrimeField::new(13).unwrap();
    let z: Vec<Mat4<PrimeField>> = (0..5).map(|_| Mat4::from_fn(f, |_, _| f.random(&mut rng))).collect();
    assert_eq!(procesi_sym5([&z[0], &z[1], &z[2], &z[3], &z[4]]), 0);
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Leaf {
    T(Vec<i8>),
    C(Vec<i8>),
}

type Sym = BTreeMap<Vec<Leaf>, i64>;

fn sym_add(a: &mut Sym, b: &Sym, k: i64) {
    for (m, c) in b {
        let e = a.entry(m.clone()).or_insert(0);
        *e += k * c;
        if *e == 0 {
            a.remove(m);
        }
    }
}

fn sym_mul(a: &Sym, b: &Sym) -> Sym {
    let mut out = Sym::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m: Vec<Leaf> = ma.iter().chain(mb).cloned().collect();
            m.sort();
            sym_add(&mut out, &Sym::from([(m, ca * cb)]), 1);
        }
    }
    out
}

fn sym_const(k: i64) -> Sym {
    if k == 0 {
        Sym::new()
    } else {
        Sym::from([(Vec::new(), k)])
    }
}

/// Cyclic free reduction followed by the least rotation; no relation on the generators.
fn cyclic_normal(w: &[i8]) -> Vec<i8> {
    let mut s: Vec<i8> = Vec::new();
    for &x in w {
        if s.last() == Some(&-x) {
            s.pop();
        } else {
            s.push(x);
        }
    }
    while s.len() >= 2 && s[0] == -s[s.len() - 1] {
        s.pop();
        s.remove(0);
    }
    let n = s.len();
    (0..n.max(1)).map(|r| s.iter().cycle().skip(r).take(n).copied().collect::<Vec<i8>>()).min().unwrap_or_default()
}

/// `tr(w)` for generic matrices, with `tr(u u) = tr(u)^2 - 2 chi_2(u)`.
fn sym_trace(w: &[i8]) -> Sym {
    let w = cyclic_normal(w);
    let n = w.len();
    if n == 0 {
        return sym_const(4);
    }
    if n % 2 == 0 && w[..n / 2] == w[n / 2..] {
        let t = sym_trace(&w[..n / 2]);
        let mut out = sym_mul(&t, &t);
        sym_add(&mut out, &Sym::from([(vec![Leaf::C(cyclic_normal(&w[..n / 2]))], 1)]), -2);
        return out;
    }
    Sym::from([(vec![Leaf::T(w)], 1)])
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sym5_specialized(z: [i8; 5]) -> Sym {
    let mut out = Sym::new();
    for p in all_perms(5) {
        let inversions = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut seen = [false; 5];
        let mut term = sym_const(1);
        for s in 0..5 {
            if seen[s] {
                continue;
            }
            let mut w = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                w.push(z[x]);
                x = p[x];
            }
            term = sym_mul(&term, &sym_trace(&w));
        }
        sym_add(&mut out, &term, if inversions % 2 == 0 { 1 } else { -1 });
    }
    out
}

fn sym_of_identity(k: u8) -> Sym {
    identity(k)
        .unwrap()
        .fold(
            &sym_const,
            &mut |tr, idx| Ok(if tr { sym_trace(idx) } else { Sym::from([(vec![Leaf::C(cyclic_normal(idx))], 1)]) }),
            &|a, b| {
                let mut s = a.clone();
                sym_add(&mut s, b, 1);
                s
            },
            &|a| a.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            &sym_mul,
        )
        .unwrap()
}

#[test]
fn identities_are_sym5_specializations() {
    let specs = [[1, 2, 3, 1, 2], [1, 2, 3, -1, 2], [1, 2, 3, -1, -2]];
    let mut factors = Vec::new();
    for (k, z) in (1..=3).zip(specs) {
        let derived = sym5_specialized(z);
        let printed = sym_of_identity(k);
        let (m, c) = printed.iter().next().unwrap();
        let d = derived.get(m).copied().unwrap_or(0);
        assert!(d != 0 && d % c == 0, "identity {k}");
        let factor = d / c;
        let mut diff = derived.clone();
        sym_add(&mut diff, &printed, -factor);
        assert!(diff.is_empty(), "identity {k} differs in {} monomials", diff.len());
        factors.push(factor.abs());
    }
    assert_eq!(factors, vec![4, 2, 1]);
}

#[test]
fn identity_parsing() {
    for k in 1..=3 {
        assert!(!identity(k).unwrap().leaves().is_empty());
    }
    assert!(identity(4).is_err());
    assert!(parse_identity("t{12").is_err());
    let (cycles, even) = cycle_decomposition(&[1, 2, 0, 4, 3]);
    assert_eq!(cycles, vec![vec![0, 1, 2], vec![3, 4]]);
    assert!(!even);
    assert_eq!(permutations(5).len(), 120);
}

#[test]
fn words_are_normalized() {
    let w = TraceWord::new(&[1, 2, 1, 2, 1], Mode::General).unwrap();
    assert_eq!(w.letters(), &[1, 2, -1, 2]);
    let w = TraceWord::new(&[1, 1], Mode::General).unwrap();
    assert_eq!(w.letters(), &[-1]);
    assert!(TraceWord::new(&[1, -1], Mode::General).unwrap().is_empty());
    assert!(TraceWord::new(&[3], Mode::General).is_err());
    for w in canonical_words(8, Mode::General) {
        let l = w.letters();
        for i in 0..l.len() {
            if l.len() > 1 {
                assert_ne!(l[i].abs(), l[(i + 1) % l.len()].abs(), "{w:?} does not alternate");
            }
        }
    }
}

#[test]
fn generator_set_is_all_short_words() {
    for mode in [Mode::General, Mode::Symplectic] {
        let mut tr = BTreeSet::new();
        let mut c2 = BTreeSet::new();
        let letters = [1i8, -1, 2, -2];
        let mut frontier: Vec<Vec<i8>> = vec![Vec::new()];
        for len in 0..=4 {
            for w in frontier.iter().filter(|w| !TraceWord::new(w, mode).unwrap().is_empty()) {
                tr.insert(TraceWord::new(w, mode).unwrap());
                if len <= 2 {
                    c2.insert(TraceWord::new(w, mode).unwrap());
                }
            }
            frontier = frontier.iter().flat_map(|w| letters.iter().map(move |&x| [w.as_slice(), &[x]].concat())).collect();
        }
        let x = generator_set(mode);
        let expect: BTreeSet<Symbol> = tr.into_iter().map(Symbol::Tr).chain(c2.into_iter().map(Symbol::Chi2)).collect();
        assert_eq!(x.iter().cloned().collect::<BTreeSet<_>>(), expect);
        assert_eq!(x.len(), expect.len());
    }
    assert_eq!(generator_set(Mode::General).len(), 26);
}

fn check_reduction<F: FiniteField>(f: &F, seed: u64, pairs: usize, words: &[TraceWord], reducer: &mut TraceReducer) {
    let mut rng = rng_from_seed(seed);
    let gens: BTreeSet<Symbol> = generator_set(Mode::General).into_iter().collect();
    let samples: Vec<(Mat4<F>, Mat4<F>)> =
        (0..pairs).map(|_| (random_order_three(f, &mut rng), random_order_three(f, &mut rng))).collect();
    for w in words {
        let p = reducer.reduce(w).unwrap();
        for s in p.symbols() {
            assert!(gens.contains(&s), "{s} is not a generator");
        }
        for (g1, g2) in &samples {
            let direct = eval_word(&GroupWord::new(w.letters()).unwrap(), g1, g2).unwrap().trace();
            assert_eq!(p.eval(g1, g2).unwrap(), direct, "{w:?} over {f:?}");
        }
    }
}

#[test]
fn reduction_matches_direct_traces() {
    let mut reducer = TraceReducer::new();
    assert_eq!(reducer.reduce(&TraceWord::new(&[1], Mode::General).unwrap()).unwrap().to_string(), "t(1)");
    let all = canonical_words(10, Mode::General);
    check_reduction(&PrimeField::new(7).unwrap(), 1, 6, &all, &mut reducer);
    check_reduction(&PrimeField::new(13).unwrap(), 2, 4, &all, &mut reducer);
    check_reduction(&TableField::new(5, 2, 0).unwrap(), 3, 4, &all, &mut reducer);

    let twelve: Vec<TraceWord> = canonical_words(12, Mode::General).into_iter().filter(|w| w.len() == 12).step_by(25).collect();
    assert!(twelve.len() >= 20);
    check_reduction(&PrimeField::new(13).unwrap(), 4, 3, &twelve, &mut reducer);

    let long = TraceWord::new(&[1, 2, 1, 2, 1, 2, 1, 2], Mode::General).unwrap();
    check_reduction(&TableField::new(5, 2, 1).unwrap(), 5, 20, &[long], &mut reducer);
}

#[test]
fn patterns_cover_long_words() {
    for w in canonical_words(12, Mode::General).into_iter().filter(|w| w.len() >= 5) {
        assert!(find_pattern(&w).is_some(), "{w:?}");
    }
    let w = TraceWord::new(&[1, 2, -1, -2, -1, 2], Mode::General).unwrap();
    assert_eq!(find_pattern(&w).map(|p| p.0), Some(Pattern::Twisted));
}

#[test]
fn rho_examples() {
    let f7 = PrimeField::new(7).unwrap();
    assert_eq!(rho_eval(&f7, &0, &0, &0), 0);
    let f11 = PrimeField::new(11).unwrap();
    assert_eq!(rho_eval(&f11, &0, &0, &0), 7);
    assert_eq!(rho_eval(&f11, &3, &5, &f11.elem(-4)), 0);
}

fn conforming_pairs<F: FiniteField>(f: &F, seed: u64, n: usize) -> Vec<(Mat4<F>, Mat4<F>)> {
    let mut s = Sp4Sampler::new(f, seed).unwrap();
    let mut out = Vec::new();
    while out.len() < n {
        let a = s.element_of_order(3, 50).unwrap().unwrap();
        let b = s.element_of_order(3, 50).unwrap().unwrap();
        if is_absolutely_irreducible(&a, &b) {
            out.push((a, b));
        }
    }
    out
}

fn check_charfield<F: FiniteField>(f: &F, seed: u64, n: usize) -> BTreeMap<Case, usize> {
    let mut seen = BTreeMap::new();
    let mut max_degree = 0;
    for (g1, g2) in conforming_pairs(f, seed, n) {
        let (x, y, z) = charfield_generators(&g1, &g2).unwrap();
        assert!(f.is_zero(&rho_eval(f, &x, &y, &z)));
        let t1212 = g1.mul(&g2).mul(&g1).mul(&g2).trace();
        assert_eq!(t1212, f.sub(&f.mul(&x, &x), &f.add(&y, &y)));
        let d = crate::gf::generated_subfield_degree(f, &[x, y, z]);
        assert_eq!(d, sampled_trace_field_degree(&g1, &g2, 8).unwrap());
        max_degree = max_degree.max(d);
        let report = classify_case(&g1, &g2).unwrap();
        assert!(report.all_hold(), "{:?}", report);
        *seen.entry(report.case).or_insert(0) += 1;
    }
    assert_eq!(max_degree, f.degree());
    seen
}

#[test]
fn character_field_generators() {
    let c5 = check_charfield(&PrimeField::new(5).unwrap(), 1, 150);
    let c7 = check_charfield(&PrimeField::new(7).unwrap(), 2, 100);
    check_charfield(&TableField::new(5, 2, 0).unwrap(), 3, 60);
    check_charfield(&PrimeField::new(13).unwrap(), 4, 40);
    for c in [Case::A1, Case::B1, Case::B2] {
        assert!(c5.get(&c).copied().unwrap_or(0) + c7.get(&c).copied().unwrap_or(0) > 0, "{c} never sampled");
    }
}

#[test]
fn case_a1_relations() {
    let f = PrimeField::new(5).unwrap();
    let mut found = 0;
    for (g1, g2) in conforming_pairs(&f, 9, 200) {
        let report = classify_case(&g1, &g2).unwrap();
        if report.case != Case::A1 {
            continue;
        }
        found += 1;
        let (a, b) = if report.swapped { (&g2, &g1) } else { (&g1, &g2) };
        let (t12, c12, t1m2) = charfield_generators(a, b).unwrap();
        assert_eq!(t1m2, f.sub(&f.neg(&t12), &f.from_i64(4)));
        assert_eq!(c12, f.add(&f.mul(&f.from_i64(2), &t12), &f.from_i64(7)));
    }
    assert!(found > 0);
}

#[test]
fn rejects_nonconforming_pairs() {
    let f = PrimeField::new(7).unwrap();
    let (g1, g2) = conforming_pairs(&f, 5, 1).pop().unwrap();
    let id = Mat4::identity(f);
    assert!(matches!(charfield_generators(&id, &g2), Err(Error::Precondition(_))));
    assert!(matches!(charfield_generators(&g1, &g1), Err(Error::Precondition(_))));
    assert!(matches!(classify_case(&g1, &g1), Err(Error::Precondition(_))));
    let mut rng = rng_from_seed(1);
    let gl = random_order_three(&f, &mut rng);
    assert!(matches!(charfield_generators(&gl, &g2), Err(Error::Precondition(_))));
}

#[test]
fn symplectic_trace_symmetries() {
    let f = PrimeField::new(7).unwrap();
    for (g1, g2) in conforming_pairs(&f, 6, 20) {
        let a = formula_value("t{1-2-1-2}-t{12-12}", &g1, &g2).unwrap();
        assert_eq!(a, 0);
        let b = formula_value("t{-1}-t{1}+c{-12}-c{2-1}", &g1, &g2).unwrap();
        assert_eq!(b, 0);
    }
}

fn order_three_pair(seed: u64) -> (Mat4<PrimeField>, Mat4<PrimeField>) {
    let f = PrimeField::new(13).unwrap();
    let mut rng = rng_from_seed(seed);
    (random_order_three(&f, &mut rng), random_order_three(&f, &mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_agrees_on_random_words(letters in prop::collection::vec(prop::sample::select(vec![1i8, -1, 2, -2]), 0..10), seed in any::<u64>()) {
        let w = TraceWord::new(&letters, Mode::General).unwrap();
        let p = reduce_trace(&w).unwrap();
        let (g1, g2) = order_three_pair(seed);
        let direct = eval_word(&GroupWord::new(&letters).unwrap(), &g1, &g2).unwrap().trace();
        prop_assert_eq!(p.eval(&g1, &g2).unwrap(), direct);
    }

    #[test]
    fn canonical_form_is_rotation_invariant(letters in prop::collection::vec(prop::sample::select(vec![1i8, -1, 2, -2]), 1..12), r in 0usize..12) {
        let k = r % letters.len();
        let rotated: Vec<i8> = letters[k..].iter().chain(&letters[..k]).copied().collect();
        prop_assert_eq!(TraceWord::new(&letters, Mode::General).unwrap(), TraceWord::new(&rotated, Mode::General).unwrap());
        let inv = invert(&letters);
        prop_assert_eq!(TraceWord::new(&letters, Mode::Symplectic).unwrap(), TraceWord::new(&inv, Mode::Symplectic).unwrap());
    }

    #[test]
    fn rho_vanishes_on_first_factor(x in 0u32..101, y in 0u32..101) {
        let f = PrimeField::new(101).unwrap();
        let z = f.sub(&f.neg(&x), &f.one());
        prop_assert_eq!(rho_eval(&f, &x, &y, &z), 0);
    }

    #[test]
    fn trace_poly_ring_laws(a in 0usize..26, b in 0usize..26, c in -5i64..5) {
        let x = generator_set(Mode::General);
        let (p, q) = (TracePoly::symbol(x[a].clone()), TracePoly::symbol(x[b].clone()).add(&TracePoly::constant(c)));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert!(p.add(&q).sub(&q).sub(&p).is_zero());
        let (g1, g2) = order_three_pair(a as u64 * 31 + b as u64);
        let f = g1.field().clone();
        prop_assert_eq!(p.mul(&q).eval(&g1, &g2).unwrap(), f.mul(&p.eval(&g1, &g2).unwrap(), &q.eval(&g1, &g2).unwrap()));
    }
}
