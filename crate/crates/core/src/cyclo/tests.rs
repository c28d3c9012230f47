use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use super::*;
use crate::gf::{Field, PrimeField, TableField};
use crate::matsp::Sp4Sampler;

fn ip(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut k = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Phi_n = prod_{d | n} (T^d - 1)^mu(n/d).
fn cyclotomic_mobius(n: u64) -> IntPoly {
    let xd = |d: u64| {
        let mut c = vec![BigInt::from(0); d as usize + 1];
        c[0] = BigInt::from(-1);
        c[d as usize] = BigInt::from(1);
        IntPoly::new(c)
    };
    let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for &d in &divs {
        match mobius(n / d) {
            1 => num = num.mul(&xd(d)),
            -1 => den = den.mul(&xd(d)),
            _ => {}
        }
    }
    num.div_exact(&den).unwrap()
}

/// Monic polynomial with the distinct real values as roots, with magnitudes of its terms.
fn float_oracle(c: u64, value: impl Fn(f64, f64) -> f64) -> (Vec<f64>, Vec<f64>) {
    let mut vals: Vec<f64> = Vec::new();
    for i in 0..c {
        for j in 0..c {
            let t = |k: u64| 2.0 * libm::cos(2.0 * core::f64::consts::PI * k as f64 / c as f64);
            let v = value(t(i), t(j));
            if !vals.iter().any(|w| libm::fabs(w - v) < 1e-9) {
                vals.push(v);
            }
        }
    }
    let mut prod = vec![1.0];
    let mut mag = vec![1.0];
    for v in vals {
        let mut next = vec![0.0; prod.len() + 1];
        let mut nm = vec![0.0; prod.len() + 1];
        for i in 0..prod.len() {
            next[i + 1] += prod[i];
            next[i] -= v * prod[i];
            nm[i + 1] += mag[i];
            nm[i] += (libm::fabs(v) + 1e-9) * mag[i];
        }
        prod = next;
        mag = nm;
    }
    (prod, mag)
}

fn assert_close(exact: &IntPoly, (approx, mag): (Vec<f64>, Vec<f64>), what: &str) {
    assert_eq!(exact.coeffs().len(), approx.len(), "{what}");
    for (i, x) in exact.coeffs().iter().enumerate() {
        let x = x.to_f64().unwrap();
        assert!(libm::fabs(x - approx[i]) <= 1e-6 * mag[i].max(1.0), "{what}: T^{i} {x} vs {}", approx[i]);
    }
}

#[test]
fn cyclotomic_examples() {
    assert_eq!(cyclotomic_poly(1), ip(&[-1, 1]));
    assert_eq!(cyclotomic_poly(4), ip(&[1, 0, 1]));
    assert_eq!(cyclotomic_poly(12), ip(&[1, 0, -1, 0, 1]));
    for n in 1..=60 {
        let phi = cyclotomic_poly(n);
        assert_eq!(phi, cyclotomic_mobius(n), "n = {n}");
        assert_eq!(phi.degree().unwrap() as u64, totient(n));
    }
}

#[test]
fn min_poly_examples() {
    let r1 = CycloRing::new(1).unwrap();
    assert_eq!(min_poly(&r1, &r1.from_int(4)).unwrap(), ip(&[-4, 1]));
    let r3 = CycloRing::new(3).unwrap();
    assert_eq!(min_poly(&r3, &r3.sum_of_powers(&[1, -1])).unwrap(), ip(&[1, 1]));
    let r5 = CycloRing::new(5).unwrap();
    assert_eq!(min_poly(&r5, &r5.sum_of_powers(&[1, -1])).unwrap(), ip(&[-1, 1, 1]));
    let r8 = CycloRing::new(8).unwrap();
    // zeta_8 itself has minimal polynomial Phi_8
    assert_eq!(min_poly(&r8, &r8.zeta_pow(1)).unwrap(), ip(&[1, 0, 0, 0, 1]));
    assert_eq!(min_poly(&r8, &r1.from_int(1)), Err(Error::MixedContexts));
}

#[test]
fn theta_delta_examples() {
    assert_eq!(theta(1).unwrap(), ip(&[-4, 1]));
    assert_eq!(theta(2).unwrap(), ip(&[0, -16, 0, 1]));
    assert_eq!(theta(3).unwrap(), ip(&[-4, 1]).mul(&ip(&[-1, 1])).mul(&ip(&[2, 1])));
    assert_eq!(delta(1).unwrap(), ip(&[-6, 1]));
    assert_eq!(delta(2).unwrap(), ip(&[-6, 1]).mul(&ip(&[2, 1])));
    let d4 = delta(4).unwrap();
    assert_eq!(d4.eval(&BigInt::from(2)), BigInt::from(0));
    assert!(matches!(theta(0), Err(Error::InvalidArgument(_))));
    assert!(matches!(theta(121), Err(Error::Resource(_))));
    assert!(matches!(theta_capped(7, 6), Err(Error::Resource(_))));
    assert_eq!(theta_capped(7, 7).unwrap(), theta(7).unwrap());
}

#[test]
fn theta_delta_match_float_oracle() {
    for c in 1..=30 {
        assert_close(&theta(c).unwrap(), float_oracle(c, |a, b| a + b), &alloc::format!("theta c = {c}"));
        assert_close(&delta(c).unwrap(), float_oracle(c, |a, b| a * b + 2.0), &alloc::format!("delta c = {c}"));
    }
}

#[test]
fn orbit_reps_cover_all_pairs() {
    for c in [1u64, 2, 5, 12, 30] {
        let reps = orbit_reps(c);
        assert!(reps.len() as u64 <= c * c / 8 + c + 1);
        let ring = CycloRing::new(c).unwrap();
        let polys: Vec<IntPoly> = reps.iter().map(|&(i, j)| min_poly(&ring, &theta_value(&ring, i as i64, j as i64)).unwrap()).collect();
        for i in 0..c as i64 {
            for j in 0..c as i64 {
                let m = min_poly(&ring, &theta_value(&ring, i, j)).unwrap();
                assert!(polys.contains(&m));
            }
        }
    }
}

#[test]
fn annihilation_examples() {
    let f5 = PrimeField::new(5).unwrap();
    assert_eq!(annihilation_check(&Mat4::identity(f5), 1).unwrap(), (true, true));
    let minus = Mat4::scalar(f5, &f5.from_i64(-1));
    assert_eq!(annihilation_check(&minus, 2).unwrap(), (true, true));
    assert!(matches!(annihilation_check(&minus, 3), Err(Error::Precondition(_))));
    for (p, m) in [(3, 1), (5, 1), (7, 1), (2, 2), (3, 2)] {
        let f = TableField::new(p, m, 0).unwrap();
        let mut s = Sp4Sampler::new(&f, 4).unwrap();
        for c in [2u64, 3, 4, 5, 6, 8] {
            for _ in 0..20 {
                if let Some(g) = s.element_of_order(c, 40).unwrap() {
                    assert_eq!(annihilation_check(&g, c).unwrap(), (true, true), "q = {p}^{m}, c = {c}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_poly_properties(c in 1u64..40, exps in proptest::collection::vec(-50i64..50, 0..5), k in -3i64..4) {
        let ring = CycloRing::new(c).unwrap();
        let alpha = ring.add(&ring.sum_of_powers(&exps), &ring.from_int(k));
        let m = min_poly(&ring, &alpha).unwrap();
        prop_assert_eq!(m.lead().cloned(), Some(BigInt::from(1)));
        prop_assert_eq!(crate::exactpoly::gcd_q(&m, &m.derivative()).degree(), Some(0));
        prop_assert!((totient(c) as usize) % m.degree().unwrap() == 0);
        // numeric root check
        let (zr, zi) = ring.to_complex(&alpha);
        let (mut vr, mut vi) = (0.0f64, 0.0f64);
        for x in m.coeffs().iter().rev() {
            let (nr, ni) = (vr * zr - vi * zi, vr * zi + vi * zr);
            vr = nr + x.to_f64().unwrap();
            vi = ni;
        }
        prop_assert!(libm::hypot(vr, vi) < 1e-6 * (1.0 + m.coeffs().iter().map(|x| libm::fabs(x.to_f64().unwrap())).sum::<f64>()));
    }

    #[test]
    fn galois_is_a_ring_map(c in 1u64..30, a in proptest::collection::vec(-9i64..9, 0..4), b in proptest::collection::vec(-9i64..9, 0..4), k in 1u64..60) {
        prop_assume!(num_integer::Integer::gcd(&k, &c) == 1);
        let ring = CycloRing::new(c).unwrap();
        let (x, y) = (ring.sum_of_powers(&a), ring.sum_of_powers(&b));
        prop_assert_eq!(ring.galois(&ring.mul(&x, &y), k), ring.mul(&ring.galois(&x, k), &ring.galois(&y, k)));
        prop_assert_eq!(ring.galois(&ring.add(&x, &y), k), ring.add(&ring.galois(&x, k), &ring.galois(&y, k)));
    }
}
