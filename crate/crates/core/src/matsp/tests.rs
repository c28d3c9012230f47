use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::exactpoly::FieldPoly;
use crate::gf::{element_degree, multiplicative_order, Field, FiniteField, PrimeField, TableField};

fn gf(p: u64, m: u32) -> TableField {
    TableField::new(p, m, 0).unwrap()
}

/// det(T I - g) by the Leibniz formula over F[T].
fn charpoly_leibniz<F: FiniteField>(g: &Mat4<F>) -> FieldPoly<F> {
    let f = g.field().clone();
    let entry = |i: usize, j: usize| {
        let c = FieldPoly::constant(f.clone(), f.neg(g.get(i, j)));
        if i == j {
            c.add(&FieldPoly::x(f.clone()))
        } else {
            c
        }
    };
    let mut total = FieldPoly::zero(f.clone());
    let mut perm = [0usize, 1, 2, 3];
    // Heap's algorithm over all 24 permutations, tracking the sign
    fn permutations(k: usize, perm: &mut [usize; 4], sign: &mut i64, out: &mut Vec<([usize; 4], i64)>) {
        if k == 1 {
            out.push((*perm, *sign));
            return;
        }
        for i in 0..k {
            permutations(k - 1, perm, sign, out);
            let j = if k % 2 == 0 { i } else { 0 };
            if i + 1 < k {
                perm.swap(j, k - 1);
                *sign = -*sign;
            }
        }
    }
    let mut all = Vec::new();
    let mut sign = 1;
    permutations(4, &mut perm, &mut sign, &mut all);
    assert_eq!(all.len(), 24);
    for (p, s) in all {
        let term = (0..4).fold(FieldPoly::one(f.clone()), |acc, i| acc.mul(&entry(i, p[i])));
        total = if s == 1 { total.add(&term) } else { total.sub(&term) };
    }
    total
}

fn charpoly_as_poly<F: FiniteField>(g: &Mat4<F>) -> FieldPoly<F> {
    let f = g.field();
    let c = g.charpoly();
    FieldPoly::new(f.clone(), vec![c.chi0, f.neg(&c.chi1), c.chi2, f.neg(&c.chi3), f.one()])
}

#[test]
fn charpoly_examples() {
    let f = PrimeField::new(11).unwrap();
    let c = Mat4::identity(f).charpoly();
    assert_eq!((c.chi0, c.chi1, c.chi2, c.chi3), (1, 4, 6, 4));
    // w = 3 has order 5 mod 11
    let w = 3u32;
    assert_eq!(multiplicative_order(&f, &w), Some(5));
    let wi = f.inv(&w).unwrap();
    let g = Mat4::diag(f, [w, wi, f.pow(&w, 2), f.pow(&wi, 2)]);
    let expected = [w, wi, f.pow(&w, 2), f.pow(&wi, 2)].iter().fold(0, |acc, x| f.add(&acc, x));
    assert_eq!(g.trace(), expected);
    assert!(g.is_symplectic());
    // order-3 element without eigenvalue 1: companion of T^2 + T + 1 on both hyperbolic planes
    let f7 = PrimeField::new(7).unwrap();
    let g = Mat4::from_i64(f7, [[0, -1, 0, 0], [1, -1, 0, 0], [0, 0, 0, -1], [0, 0, 1, -1]]);
    assert!(g.is_symplectic());
    assert!(g.pow(3).is_identity());
    let c = g.charpoly();
    assert_eq!(c.chi3, f7.elem(-2));
    assert_eq!(c.chi2, 3);
}

#[test]
fn trace_of_product() {
    let f = gf(5, 2);
    let mut rng = crate::rng_from_seed(4);
    for _ in 0..50 {
        let a = random_invertible(&f, &mut rng);
        let b = random_invertible(&f, &mut rng);
        assert_eq!(a.trace_mul(&b), a.mul(&b).trace());
        assert_eq!(a.trace_mul(&b), b.trace_mul(&a));
    }
}

#[test]
fn symplectic_examples() {
    let f5 = PrimeField::new(5).unwrap();
    assert!(Mat4::identity(f5).is_symplectic());
    assert!(!Mat4::diag(f5, [2, 1, 1, 1]).is_symplectic());
    for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (5, 2), (3, 3)] {
        let f = gf(p, m);
        let g = trace_witness(&f).unwrap();
        assert!(g.is_symplectic(), "q = {}", f.size().unwrap());
        let t = g.trace();
        assert_eq!(element_degree(&f, &t), m);
        let q = f.size().unwrap();
        let expected = if q == 2 { 1 } else { q - 1 };
        assert_eq!(multiplicative_order(&f, &t), Some(expected));
    }
    let f3 = PrimeField::new(3).unwrap();
    assert_eq!(trace_witness(&f3).unwrap().trace(), 2);
}

#[test]
fn element_orders() {
    let f5 = PrimeField::new(5).unwrap();
    assert_eq!(element_order(&Mat4::identity(f5), 10).unwrap(), Some(1));
    let minus = Mat4::scalar(f5, &4);
    assert_eq!(element_order(&minus, 4).unwrap(), Some(2));
    assert_eq!(element_order(&Mat4::diag(f5, [2, 3, 1, 1]), 3).unwrap(), None);
    assert!(element_order(&Mat4::diag(f5, [0, 3, 1, 1]), 3).is_err());
    let f4 = gf(2, 2);
    let g = trace_witness(&f4).unwrap();
    let brute = element_order(&g, 256).unwrap().unwrap();
    assert_eq!(sp4_element_order(&g).unwrap(), brute);
    assert_eq!((sp4_order(4).unwrap() % brute as u128), 0);
}

#[test]
fn words() {
    let f = PrimeField::new(7).unwrap();
    let mut s = Sp4Sampler::new(&f, 1).unwrap();
    let (g1, g2) = (s.element(), s.element());
    let w = GroupWord::new(&[1]).unwrap();
    assert_eq!(eval_word(&w, &g1, &g2).unwrap(), g1);
    assert!(eval_word(&GroupWord::new(&[]).unwrap(), &g1, &g2).unwrap().is_identity());
    let d = Mat4::diag(f, [2, 4, 3, 5]);
    let e = Mat4::diag(f, [3, 5, 2, 4]);
    let comm = GroupWord::new(&[1, 2, -1, -2]).unwrap();
    assert!(eval_word(&comm, &d, &e).unwrap().is_identity());
    let w12 = GroupWord::new(&[1, 2]).unwrap();
    assert_eq!(eval_word(&w12, &g1, &g2).unwrap().trace(), g1.mul(&g2).trace());
    assert_eq!(GroupWord::new(&[1, 2, -2, -1, 2]).unwrap().letters(), &[2]);
    assert!(GroupWord::new(&[3]).is_err());
}

#[test]
fn standard_generators_orders() {
    let cfg = OrderConfig::default();
    let f2 = PrimeField::new(2).unwrap();
    let gens = standard_generators(&f2).unwrap();
    assert!(gens.iter().all(Mat4::is_symplectic));
    assert_eq!(closure_order(&gens, 10_000).unwrap(), 720);
    let f3 = PrimeField::new(3).unwrap();
    let gens = standard_generators(&f3).unwrap();
    assert_eq!(closure_order(&gens, 100_000).unwrap(), 51840);
    let ss = OrderConfig { strategy: super::Strategy::StabilizerChain, ..cfg.clone() };
    assert_eq!(group_order(&gens, &ss).unwrap(), 51840);
    let id = Mat4::identity(f3);
    assert_eq!(group_order(&[id.clone(), id], &cfg).unwrap(), 1);
    let f4 = gf(2, 2);
    assert_eq!(group_order(&standard_generators(&f4).unwrap(), &ss).unwrap(), sp4_order(4).unwrap());
    let f9 = gf(3, 2);
    assert_eq!(group_order(&standard_generators(&f9).unwrap(), &ss).unwrap(), sp4_order(9).unwrap());
    assert_eq!(sp4_order(2), Some(720));
}

#[test]
fn closure_matches_stabilizer_chain() {
    let bfs = OrderConfig { strategy: super::Strategy::Closure, ..OrderConfig::default() };
    let ss = OrderConfig { strategy: super::Strategy::StabilizerChain, ..OrderConfig::default() };
    for (p, m) in [(3, 1), (2, 2)] {
        let f = gf(p, m);
        let mut s = Sp4Sampler::new(&f, 7).unwrap();
        for k in 0..12 {
            let g1 = s.element_of_order(3, 100).unwrap().unwrap();
            let g2 = if k % 3 == 0 { s.element_of_order(2, 100).unwrap().unwrap() } else { s.element() };
            let a = group_order(&[g1.clone(), g2.clone()], &bfs).unwrap();
            let b = group_order(&[g1, g2], &ss).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn absolute_irreducibility() {
    let f3 = PrimeField::new(3).unwrap();
    let id = Mat4::identity(f3);
    assert!(!is_absolutely_irreducible(&id, &id));
    let cfg = OrderConfig { strategy: super::Strategy::StabilizerChain, ..OrderConfig::default() };
    let f5 = PrimeField::new(5).unwrap();
    let lines = census(&f5, 3, 3, &[10, 12], 200, &cfg).unwrap();
    let (g1, g2) = lines.iter().find_map(|l| l.witness.clone()).expect("Sp4(5) is (3,3,c)-generated for some c");
    assert!(g1.pow(3).is_identity() && g2.pow(3).is_identity());
    assert!(is_absolutely_irreducible(&g1, &g2));
    // order-3 elements with minimal polynomial T^2 + T + 1
    let f7 = PrimeField::new(7).unwrap();
    let mut s = Sp4Sampler::new(&f7, 3).unwrap();
    let mut checked = 0;
    while checked < 30 {
        let a = s.element_of_order(3, 100).unwrap().unwrap();
        let b = s.element_of_order(3, 100).unwrap().unwrap();
        let quad = |g: &Mat4<PrimeField>| g.mul(g).add(g).add(&Mat4::identity(f7)).entries().iter().flatten().all(|x| *x == 0);
        if quad(&a) && quad(&b) {
            assert!(!is_absolutely_irreducible(&a, &b));
            checked += 1;
        }
    }
}

/// In characteristic 3 an order-3 element is unipotent of Jordan type (2,1,1) or (2,2). Two
/// elements of type (2,2) have Lagrangian images of `g - 1`; when these are complementary the
/// pair lives in `SL_2` over a commutative algebra. Every pair is therefore absolutely reducible.
#[test]
fn characteristic_three_pairs_are_reducible() {
    for f in [gf(3, 1), gf(3, 2)] {
        let mut s = Sp4Sampler::new(&f, 11).unwrap();
        let id = Mat4::identity(f.clone());
        let mut seen_rank_two = 0;
        for _ in 0..150 {
            let a = s.element_of_order(3, 200).unwrap().unwrap();
            let b = s.element_of_order(3, 200).unwrap().unwrap();
            let n = a.sub(&id);
            assert!(n.mul(&n).entries().iter().flatten().all(|x| f.is_zero(x)));
            if linalg::rank(&f, &n.to_vec().chunks(4).map(|c| c.to_vec()).collect::<Vec<_>>()) == 2 {
                seen_rank_two += 1;
            }
            assert!(!is_absolutely_irreducible(&a, &b));
        }
        assert!(seen_rank_two > 0);
    }
    let cfg = OrderConfig::default();
    let lines = census(&PrimeField::new(3).unwrap(), 3, 3, &[4, 5, 6, 8, 10, 12], 100, &cfg).unwrap();
    assert!(!lines.iter().any(CensusEntry::found));
}

#[test]
fn sp4_2_has_no_333_pairs() {
    let f2 = PrimeField::new(2).unwrap();
    let all = enumerate_group(&standard_generators(&f2).unwrap(), 1000).unwrap();
    assert_eq!(all.len(), 720);
    let threes: Vec<_> = all.iter().filter(|g| g.pow(3).is_identity() && !g.is_identity()).collect();
    assert_eq!(threes.len(), 80);
    let cfg = OrderConfig::default();
    for g1 in &threes {
        for g2 in &threes {
            assert!(!generates_sp4(g1, g2, &cfg).unwrap());
        }
    }
}

#[test]
fn abc_pairs_and_census() {
    let cfg = OrderConfig::default();
    let f3 = PrimeField::new(3).unwrap();
    let id = Mat4::identity(f3);
    assert!(!is_abc_pair(&id, &id, 3, 3, 5, &cfg).unwrap());
    let f7 = PrimeField::new(7).unwrap();
    let lines = census(&f7, 3, 3, &[5, 6, 7, 8, 9, 10, 12, 13], 200, &cfg).unwrap();
    for l in &lines {
        if let Some((g1, g2)) = &l.witness {
            assert!(is_abc_pair(g1, g2, 3, 3, l.c, &cfg).unwrap());
            assert!(g1.is_symplectic() && g2.is_symplectic());
        }
    }
    assert!(lines.iter().any(CensusEntry::found));
}

#[test]
fn psp_reduction_agrees_with_projective_closure() {
    let cfg = OrderConfig::default();
    let f3 = PrimeField::new(3).unwrap();
    assert!(psp_quotient_test(&PrimeField::new(2).unwrap(), 3, 3, 5, 10, &cfg).is_err());
    assert!(psp_quotient_test(&f3, 2, 3, 5, 10, &cfg).is_err());
    // direct search for projective (3,3,c) pairs: (g1 g2)^c = +-I and <g1, g2, -I> = Sp4
    let f5 = PrimeField::new(5).unwrap();
    let mut s = Sp4Sampler::new(&f5, 8).unwrap();
    let mut found = 0;
    for c in [5, 6, 10] {
        for _ in 0..300 {
            let g1 = s.element_of_order(3, 100).unwrap().unwrap();
            let g2 = s.element_of_order(3, 100).unwrap().unwrap();
            let z = g1.mul(&g2).pow(c);
            if (z.is_identity() || z.neg().is_identity()) && generates_psp4(&g1, &g2, &cfg).unwrap() {
                assert!(is_abc_pair(&g1, &g2, 3, 3, 2 * c, &cfg).unwrap());
                assert!(psp_quotient_test(&f5, 3, 3, c, 300, &cfg).unwrap());
                found += 1;
                break;
            }
        }
    }
    assert!(found > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symplectic_invariants(seed in any::<u64>(), which in 0usize..4) {
        let (p, m) = [(3, 1), (5, 1), (2, 3), (3, 2)][which];
        let f = gf(p, m);
        let mut s = Sp4Sampler::new(&f, seed).unwrap();
        let g = s.element();
        prop_assert!(g.is_symplectic());
        let c = g.charpoly();
        prop_assert!(f.is_one(&c.chi0));
        prop_assert_eq!(c.chi1, c.chi3.clone());
        let gi = g.symplectic_inverse();
        prop_assert!(g.mul(&gi).is_identity());
        prop_assert_eq!(gi.inverse().unwrap(), g.clone());
        prop_assert_eq!(gi.trace(), g.trace());
        prop_assert_eq!(gi.chi2(), g.chi2());
        prop_assert_eq!(charpoly_as_poly(&g), charpoly_leibniz(&g));
    }

    #[test]
    fn charpoly_minors_match_leibniz(rows in proptest::array::uniform4(proptest::array::uniform4(-20i64..20))) {
        let f = PrimeField::new(101).unwrap();
        let g = Mat4::from_i64(f, rows);
        prop_assert_eq!(charpoly_as_poly(&g), charpoly_leibniz(&g));
    }

    #[test]
    fn order_three_traces(seed in any::<u64>(), which in 0usize..5) {
        let (p, m) = [(3, 1), (5, 1), (7, 1), (3, 2), (2, 2)][which];
        let f = gf(p, m);
        let mut s = Sp4Sampler::new(&f, seed).unwrap();
        let g = s.element_of_order(3, 200).unwrap().unwrap();
        let (t, c2) = (g.trace(), g.chi2());
        let a = (t.clone(), c2.clone()) == (f.from_i64(-2), f.from_i64(3));
        let b = (t, c2) == (f.one(), f.zero());
        prop_assert!(a || b);
        if p == 3 {
            prop_assert!(b);
        }
    }
}
