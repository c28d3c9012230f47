use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;
use rand::SeedableRng;

use super::*;
use crate::exactpoly::FieldPoly;

fn axioms<F: FiniteField>(f: &F, seed: u64) {
    let mut rng = crate::Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
        assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
        assert_eq!(f.mul_add(&a, &b, &c), f.add(&f.mul(&a, &b), &c));
        if !f.is_zero(&a) {
            assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        } else {
            assert!(f.inv(&a).is_none());
        }
        // Frobenius is a ring map and equals x^p
        assert_eq!(f.frobenius(&f.add(&a, &b)), f.add(&f.frobenius(&a), &f.frobenius(&b)));
        assert_eq!(f.frobenius(&f.mul(&a, &b)), f.mul(&f.frobenius(&a), &f.frobenius(&b)));
        assert_eq!(f.frobenius(&a), f.pow(&a, f.prime()));
        assert_eq!(f.degree() % element_degree(f, &a), 0);
        assert_eq!(f.from_prime_coeffs(&f.to_prime_coeffs(&a)), a);
        assert_eq!(f.from_index(f.index(&a)), a);
    }
}

#[test]
fn field_axioms_all_representations() {
    axioms(&PrimeField::new(7).unwrap(), 1);
    axioms(&PrimeField::new(2_147_483_647).unwrap(), 2);
    axioms(&make_ext(5, 4, 3).unwrap(), 3);
    axioms(&make_ext(2, 7, 3).unwrap(), 4);
    axioms(&ExtField::prime_field(11).unwrap(), 5);
    axioms(&TableField::new(5, 2, 6).unwrap(), 6);
    axioms(&TableField::new(2, 10, 6).unwrap(), 7);
    axioms(&BinaryField::new(25, 8).unwrap(), 8);
    axioms(&BinaryField::new(63, 8).unwrap(), 9);
}

#[test]
fn representations_agree() {
    let ext = make_ext(3, 3, 11).unwrap();
    let table = TableField::from_ext(&ext).unwrap();
    let mut rng = crate::Rng::seed_from_u64(5);
    for _ in 0..300 {
        let (a, b) = (ext.random(&mut rng), ext.random(&mut rng));
        let (ta, tb) = (table.from_ext_elem(&a), table.from_ext_elem(&b));
        assert_eq!(table.to_ext(&table.mul(&ta, &tb)), ext.mul(&a, &b));
        assert_eq!(table.to_ext(&table.add(&ta, &tb)), ext.add(&a, &b));
        assert_eq!(table.to_ext(&table.frobenius(&ta)), ext.frobenius(&a));
    }
    let ext2 = make_ext(2, 9, 1).unwrap();
    let bin = BinaryField::from_ext(&ext2).unwrap();
    for _ in 0..300 {
        let (a, b) = (ext2.random(&mut rng), ext2.random(&mut rng));
        let (ba, bb) = (bin.from_prime_coeffs(&a), bin.from_prime_coeffs(&b));
        assert_eq!(bin.to_prime_coeffs(&bin.mul(&ba, &bb)), ext2.mul(&a, &b));
    }
}

#[test]
fn make_ext_examples() {
    let f3 = make_ext(3, 1, 0).unwrap();
    assert_eq!(f3.degree(), 1);
    assert_eq!(f3.size(), Some(3));
    // the only irreducible quadratic over F_2
    assert_eq!(make_ext(2, 2, 99).unwrap().modulus(), vec![1, 1, 1]);
    let f625 = make_ext(5, 4, 42).unwrap();
    assert_eq!(f625.size(), Some(625));
    // independent check: no roots in F_5, and no quadratic factor (no roots in F_25)
    let fp = PrimeField::new(5).unwrap();
    let m: Vec<u32> = f625.modulus().iter().map(|&c| c as u32).collect();
    let poly = FieldPoly::new(fp, m);
    assert!((0..5).all(|x| poly.eval(&x) != 0));
    let f25 = make_ext(5, 2, 0).unwrap();
    let lifted = poly.map(f25.clone(), |c| f25.from_prime_coeffs(&[*c as u64]));
    assert!(f25.elements().iter().all(|x| !f25.is_zero(&lifted.eval(x))));
    assert_eq!(make_ext(4, 1, 0).unwrap_err(), Error::NotPrime(4));
    assert_eq!(make_ext(5, 4, 42).unwrap(), f625);
}

#[test]
fn element_degree_examples() {
    let f4 = make_ext(2, 2, 0).unwrap();
    assert_eq!(element_degree(&f4, &f4.zero()), 1);
    let w = primitive_element(&f4).unwrap();
    assert_eq!(element_degree(&f4, &w), 2);
    // F_8 with w^3 = w + 1
    let f8 = ExtField::new(2, vec![1, 1, 0, 1]).unwrap();
    let w = f8.generator();
    let x = f8.add(&w, &f8.mul(&w, &w));
    let d = element_degree(&f8, &x);
    assert_eq!(3 % d, 0);
    let mut y = x.clone();
    for _ in 0..d {
        y = f8.pow(&y, 2);
    }
    assert_eq!(y, x);
}

#[test]
fn generated_subfield_examples() {
    let f9 = make_ext(3, 2, 0).unwrap();
    assert_eq!(generated_subfield_degree(&f9, &[]), 1);
    assert_eq!(generated_subfield_degree(&f9, &[f9.zero(), f9.one(), f9.one()]), 1);
    let f64 = make_ext(2, 6, 0).unwrap();
    let w = primitive_element(&f64).unwrap();
    // w^21 has order 3 (degree 2), w^9 has order 7 (degree 3)
    let x = f64.pow(&w, 21);
    let y = f64.pow(&w, 9);
    assert_eq!(element_degree(&f64, &x), 2);
    assert_eq!(element_degree(&f64, &y), 3);
    assert_eq!(generated_subfield_degree(&f64, &[x.clone(), y.clone()]), 6);
    assert_eq!(generated_subfield_degree_checked(&[(&f64, &x), (&f64, &y)]), Ok(6));
    let other = make_ext(2, 6, 1).unwrap();
    if other != f64 {
        assert_eq!(generated_subfield_degree_checked(&[(&f64, &x), (&other, &y)]), Err(Error::MixedContexts));
    }
}

#[test]
fn embed_examples() {
    let f5 = PrimeField::new(5).unwrap();
    let f25 = make_ext(5, 2, 0).unwrap();
    assert_eq!(embed(&f5, &2, &f25, 0).unwrap(), f25.from_i64(2));
    let f4 = make_ext(2, 2, 0).unwrap();
    let f16 = make_ext(2, 4, 0).unwrap();
    for seed in 0..4 {
        let img = embed(&f4, &f4.generator(), &f16, seed).unwrap();
        // root of T^2 + T + 1
        assert!(f16.is_zero(&f16.add(&f16.add(&f16.mul(&img, &img), &img), &f16.one())));
    }
    let f9 = make_ext(3, 2, 0).unwrap();
    let f27 = make_ext(3, 3, 0).unwrap();
    assert_eq!(embed(&f9, &f9.one(), &f27, 0), Err(Error::NoEmbedding { src: 2, dst: 3 }));
}

#[test]
fn embedding_is_a_ring_map() {
    let f8 = make_ext(2, 3, 5).unwrap();
    let f64 = make_ext(2, 6, 5).unwrap();
    let f27 = TableField::new(3, 3, 1).unwrap();
    let f729 = make_ext(3, 6, 1).unwrap();
    let e1 = Embedding::new(&f8, &f64, 3).unwrap();
    let e2 = Embedding::new(&f27, &f729, 3).unwrap();
    let mut rng = crate::Rng::seed_from_u64(1);
    for _ in 0..100 {
        let (a, b) = (f8.random(&mut rng), f8.random(&mut rng));
        assert_eq!(e1.apply(&f8.mul(&a, &b)), f64.mul(&e1.apply(&a), &e1.apply(&b)));
        assert_eq!(e1.apply(&f8.add(&a, &b)), f64.add(&e1.apply(&a), &e1.apply(&b)));
        let (a, b) = (f27.random(&mut rng), f27.random(&mut rng));
        assert_eq!(e2.apply(&f27.mul(&a, &b)), f729.mul(&e2.apply(&a), &e2.apply(&b)));
        assert_eq!(e2.apply(&f27.add(&a, &b)), f729.add(&e2.apply(&a), &e2.apply(&b)));
    }
    for k in 0..3 {
        assert_eq!(e2.apply(&f27.from_i64(k)), f729.from_i64(k));
    }
}

#[test]
fn primitive_elements_and_orders() {
    for (p, m) in [(2, 1), (2, 4), (3, 2), (7, 1), (5, 3)] {
        let f = make_ext(p, m, 0).unwrap();
        let w = primitive_element(&f).unwrap();
        let q = f.size().unwrap();
        assert_eq!(multiplicative_order(&f, &w), Some(q - 1));
        // brute-force order oracle
        let mut x = w.clone();
        let mut k = 1;
        while !f.is_one(&x) {
            x = f.mul(&x, &w);
            k += 1;
        }
        assert_eq!(k, q - 1);
    }
}

#[test]
fn prime_checks() {
    let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
    assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    assert!(is_prime(2_147_483_647));
    assert!(!is_prime(3_215_031_751));
    assert!(PrimeField::new(9).is_err());
    assert!(ExtField::new(2, vec![1, 0, 1]).is_err());
}

proptest! {
    #[test]
    fn prime_field_inverse_roundtrip(a in 1u32..101) {
        let f = PrimeField::new(101).unwrap();
        prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
    }

    #[test]
    fn ext_field_inverse_roundtrip(c in proptest::collection::vec(0u64..7, 3), seed in 0u64..4) {
        let f = make_ext(7, 3, seed).unwrap();
        let a = f.from_prime_coeffs(&c);
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
    }

    #[test]
    fn table_frobenius_matches_power(i in 0u64..81) {
        let f = TableField::new(3, 4, 0).unwrap();
        let a = f.from_index(i);
        prop_assert_eq!(f.frobenius(&a), f.pow(&a, 3));
    }
}
