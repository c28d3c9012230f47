use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::gf::{make_ext, Field, FiniteField, PrimeField};

fn ip(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn fp(p: u64, c: &[i64]) -> FieldPoly<PrimeField> {
    let f = PrimeField::new(p).unwrap();
    FieldPoly::new(f, c.iter().map(|&x| f.elem(x)).collect())
}

#[test]
fn gcd_examples() {
    assert_eq!(gcd_q(&ip(&[-4, 1]), &ip(&[-4, 1])), ip(&[-4, 1]));
    assert_eq!(gcd_q(&ip(&[-16, 0, 1]), &ip(&[0, -4, 1])), ip(&[-4, 1]));
    assert_eq!(gcd_q(&ip(&[2, 1]), &ip(&[-1, 1])), ip(&[1]));
    assert_eq!(gcd_q(&IntPoly::zero(), &IntPoly::zero()), IntPoly::zero());
    assert_eq!(gcd_q(&ip(&[0, 6]), &IntPoly::zero()), ip(&[0, 1]));
}

#[test]
fn lcm_examples() {
    assert_eq!(lcm_q(&[ip(&[-4, 1])]).unwrap(), ip(&[-4, 1]));
    // (T-4)T(T+4) expanded by hand
    assert_eq!(lcm_q(&[ip(&[-4, 1]), ip(&[0, 1]), ip(&[4, 1])]).unwrap(), ip(&[0, -16, 0, 1]));
    assert_eq!(lcm_q(&[ip(&[-1, 1]), ip(&[-1, 1]), ip(&[2, 1])]).unwrap(), ip(&[-2, 1, 1]));
    assert_eq!(lcm_q(&[ip(&[2, -2])]).unwrap(), ip(&[-1, 1]));
    assert!(lcm_q(&[]).is_err());
    assert!(lcm_q(&[ip(&[1, 1]), IntPoly::zero()]).is_err());
}

#[test]
fn display_and_strings() {
    let p = ip(&[0, -16, 0, 1]);
    assert_eq!(alloc::format!("{p}"), "T^3 - 16T");
    assert_eq!(p.to_strings(), vec!["0", "-16", "0", "1"]);
    assert_eq!(IntPoly::from_strings(&p.to_strings()).unwrap(), p);
    assert_eq!(alloc::format!("{}", ip(&[-1, 0, -1])), "-T^2 - 1");
    assert_eq!(alloc::format!("{}", IntPoly::zero()), "0");
}

#[test]
fn factor_examples() {
    let f2 = fp(2, &[1, 0, 1]);
    let fac = factor(&f2, 0).unwrap();
    assert_eq!(fac.factors, vec![(fp(2, &[1, 1]), 2)]);

    let f3 = fp(3, &[1, 0, 1]);
    let fac = factor(&f3, 0).unwrap();
    assert_eq!(fac.factors, vec![(f3.clone(), 1)]);
    // oracle: no root in F_3
    assert!((0..3).all(|x| f3.eval(&x) != 0));

    let f5 = fp(5, &[0, -16, 0, 1]);
    let fac = factor(&f5, 0).unwrap();
    assert_eq!(fac.factors, vec![(fp(5, &[0, 1]), 1), (fp(5, &[-4, 1]), 1), (fp(5, &[-1, 1]), 1)]);
    let roots: Vec<u32> = (0..5).filter(|x| f5.eval(x) == 0).collect();
    assert_eq!(roots, vec![0, 1, 4]);
    assert!(factor(&fp(5, &[]), 0).is_err());
}

#[test]
fn factor_inseparable_parts() {
    // (T^3 + T + 1)^4 (T + 1)^2 over F_2 and (T^3 - T - 1)^3 T over F_3
    let a = fp(2, &[1, 1, 0, 1]).pow(4).mul(&fp(2, &[1, 1]).pow(2));
    let fac = factor(&a, 1).unwrap();
    assert_eq!(fac.factors, vec![(fp(2, &[1, 1]), 2), (fp(2, &[1, 1, 0, 1]), 4)]);
    let b = fp(3, &[-1, -1, 0, 1]).pow(3).mul(&fp(3, &[0, 1]));
    let fac = factor(&b, 1).unwrap();
    assert_eq!(fac.factors, vec![(fp(3, &[0, 1]), 1), (fp(3, &[2, 2, 0, 1]), 3)]);
}

#[test]
fn factor_over_extension() {
    let f9 = make_ext(3, 2, 0).unwrap();
    // T^8 - 1 splits completely over F_9
    let mut c = vec![f9.zero(); 9];
    c[0] = f9.from_i64(-1);
    c[8] = f9.one();
    let poly = FieldPoly::new(f9.clone(), c);
    let fac = factor(&poly, 3).unwrap();
    assert_eq!(fac.factors.len(), 8);
    assert!(fac.factors.iter().all(|(g, e)| g.degree() == Some(1) && *e == 1));
    assert_eq!(fac.expand(&f9), poly);
}

#[test]
fn irreducibility_counts() {
    // number of monic irreducibles of degree 4 over F_2 is 3, degree 3 over F_3 is 8
    let count = |p: u64, d: usize| {
        let f = PrimeField::new(p).unwrap();
        let total = p.pow(d as u32);
        (0..total)
            .filter(|&i| {
                let mut c: Vec<u32> = (0..d).map(|k| ((i / p.pow(k as u32)) % p) as u32).collect();
                c.push(1);
                FieldPoly::new(f, c).is_irreducible()
            })
            .count()
    };
    assert_eq!(count(2, 4), 3);
    assert_eq!(count(3, 3), 8);
    assert_eq!(count(5, 2), 10);
}

#[test]
fn roots_in_ext_examples() {
    let f = fp(3, &[1, 0, 1]);
    let (_, r1) = roots_in_ext(&f, 1, 0).unwrap();
    assert!(r1.is_empty());
    let (f9, r2) = roots_in_ext(&f, 2, 0).unwrap();
    assert_eq!(r2.len(), 2);
    assert_ne!(r2[0].0, r2[1].0);
    for (x, _) in &r2 {
        assert!(f9.is_zero(&f9.add(&f9.mul(x, x), &f9.one())));
    }
    for m in 1..4 {
        let (ext, r) = roots_in_ext(&fp(7, &[-1, 1]), m, 0).unwrap();
        assert_eq!(r, vec![(ext.one(), 1)]);
    }
    let (_, r) = roots_in_ext(&fp(5, &[-1, 1]).pow(3), 2, 0).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].1, 3);
}

#[test]
fn int_poly_division() {
    let a = ip(&[-16, 0, 1]);
    assert_eq!(a.div_exact(&ip(&[-4, 1])), Some(ip(&[4, 1])));
    assert_eq!(a.div_exact(&ip(&[-3, 1])), None);
    assert_eq!(ip(&[1, 2]).div_exact(&ip(&[0, 2])), None);
    assert_eq!(a.eval(&BigInt::from(4)), BigInt::from(0));
    assert_eq!(a.derivative(), ip(&[0, 2]));
}

fn poly_strategy(p: u64, max_deg: usize) -> impl Strategy<Value = FieldPoly<PrimeField>> {
    proptest::collection::vec(0..p as i64, 1..=max_deg + 1).prop_map(move |c| fp(p, &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_reexpands(f in poly_strategy(5, 12), seed in any::<u64>()) {
        prop_assume!(!f.is_zero());
        let fac = factor(&f, seed).unwrap();
        prop_assert_eq!(fac.expand(f.field()), f.clone());
        for (g, _) in &fac.factors {
            prop_assert!(g.is_irreducible());
            prop_assert!(g.is_monic());
        }
    }

    #[test]
    fn factorization_is_multiplicative(f in poly_strategy(3, 6), g in poly_strategy(3, 6)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let mut merged: Vec<(FieldPoly<PrimeField>, u32)> = Vec::new();
        for (h, e) in factor(&f, 1).unwrap().factors.into_iter().chain(factor(&g, 2).unwrap().factors) {
            match merged.iter_mut().find(|(x, _)| *x == h) {
                Some((_, m)) => *m += e,
                None => merged.push((h, e)),
            }
        }
        merged.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
        prop_assert_eq!(factor(&f.mul(&g), 3).unwrap().factors, merged);
    }

    #[test]
    fn factorization_char_two(f in poly_strategy(2, 16)) {
        prop_assume!(!f.is_zero());
        let fac = factor(&f, 9).unwrap();
        prop_assert_eq!(fac.expand(f.field()), f);
    }

    #[test]
    fn gcd_divides_inputs(a in proptest::collection::vec(-20i64..20, 1..6),
                          b in proptest::collection::vec(-20i64..20, 1..6),
                          c in proptest::collection::vec(-5i64..5, 1..4)) {
        let c = ip(&c);
        let (a, b) = (ip(&a).mul(&c), ip(&b).mul(&c));
        let g = gcd_q(&a, &b);
        if !a.is_zero() {
            prop_assert!(a.primitive_part().div_exact(&g).is_some());
        }
        if !b.is_zero() {
            prop_assert!(b.primitive_part().div_exact(&g).is_some());
        }
        if !c.is_zero() && !(a.is_zero() && b.is_zero()) {
            prop_assert!(g.div_exact(&c.primitive_part()).is_some());
        }
    }

    #[test]
    fn roots_are_roots(f in poly_strategy(7, 8), m in 1u32..4) {
        prop_assume!(!f.is_zero());
        let (ext, roots) = roots_in_ext(&f, m, 0).unwrap();
        let lifted = f.map(ext.clone(), |c| ext.from_prime_coeffs(&[*c as u64]));
        let total: u32 = roots.iter().map(|(_, e)| e).sum();
        prop_assert!(total as usize <= f.degree().unwrap());
        for (x, _) in &roots {
            prop_assert!(ext.is_zero(&lifted.eval(x)));
        }
        // exhaustive oracle on the number of distinct roots
        let distinct = ext.elements().iter().filter(|x| ext.is_zero(&lifted.eval(x))).count();
        prop_assert_eq!(distinct, roots.len());
    }
}
