use lctkit::bergman::{build_approx, k_min, BergmanApprox, RadialWeight};
use lctkit::ExtRational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

fn approx(cn: i64, cd: i64, m: u64) -> BergmanApprox {
    let w = RadialWeight::new(BigRational::new(cn.into(), cd.into())).unwrap();
    build_approx(&w, m, None).unwrap()
}

/// Direct summation of `(1/2m) log Σ (k+1-mc)/π |z|^{2k}` far past the cutoff.
fn naive_psi(c: f64, m: u64, z: f64) -> f64 {
    let mc = m as f64 * c;
    let start = mc.floor() as u64;
    let sum: f64 = (start..start + 4000)
        .map(|k| (k as f64 + 1.0 - mc) / std::f64::consts::PI * z.powi(2 * k as i32))
        .sum();
    sum.ln() / (2.0 * m as f64)
}

#[test]
fn coefficient_table_examples() {
    let a = approx(3, 4, 2);
    assert_eq!(a.k_min, 1);
    assert_eq!(a.lelong_number(), ExtRational::ratio(1, 2));
    let a = approx(0, 1, 5);
    assert_eq!(a.k_min, 0);
    assert_eq!(
        a.coefficients()[0],
        (0, BigRational::from_integer(1.into()))
    );
    let a = approx(1, 1, 3);
    assert_eq!(a.k_min, 3);
    assert_eq!(a.lelong_number(), ExtRational::integer(1));
    assert_eq!(approx(0, 1, 4).lelong_number(), ExtRational::zero());
}

#[test]
fn rejects_short_tables_and_zero_m() {
    let w = RadialWeight::new(BigRational::new(3.into(), 4.into())).unwrap();
    assert!(build_approx(&w, 2, Some(5)).is_err());
    assert!(build_approx(&w, 2, Some(9)).is_ok());
    assert!(build_approx(&w, 0, None).is_err());
    assert!(RadialWeight::new(BigRational::new((-1).into(), 2.into())).is_err());
}

#[test]
fn unweighted_disk_closed_form() {
    // Σ (k+1) x^k = (1-x)^-2 with x = 1/4.
    let expected = 0.5 * ((1.0 / std::f64::consts::PI) / 0.5625_f64).ln();
    let v = approx(0, 1, 1).eval_psi(0.5).unwrap();
    assert!(
        (v.value - expected).abs() < 1e-12,
        "{} vs {expected}",
        v.value
    );
    assert!((v.value + 0.284683).abs() < 1e-6);
    assert!(v.truncation_bound < 1e-30);
}

#[test]
fn slope_near_zero_is_the_lelong_number() {
    let a = approx(3, 4, 2);
    let (z1, z2) = (1e-6_f64, 1e-7_f64);
    let slope =
        (a.eval_psi(z1).unwrap().value - a.eval_psi(z2).unwrap().value) / (z1.ln() - z2.ln());
    assert!((slope - 0.5).abs() < 1e-6, "slope {slope}");
}

#[test]
fn sandwich_for_first_hundred_m() {
    let c = BigRational::new(7.into(), 3.into());
    for m in 1..=100u64 {
        let nu = BigRational::new(BigInt::from(k_min(&c, m)), BigInt::from(m));
        assert!((nu - &c).abs() <= BigRational::new(1.into(), m.into()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn lelong_sandwich_holds(cn in 0i64..400, cd in 1i64..60, m in 1u64..=100) {
        let a = approx(cn, cd, m);
        let c = BigRational::new(cn.into(), cd.into());
        let nu = BigRational::new(BigInt::from(a.k_min), BigInt::from(m));
        let inv_m = BigRational::new(1.into(), m.into());
        prop_assert!(&c - &inv_m <= nu && nu <= c);
        prop_assert!(a.lelong_sandwich_holds());
        prop_assert!(a.coefficients().iter().all(|(_, s)| s.is_positive()));
    }

    #[test]
    fn pointwise_lower_bound(cn in 0i64..40, cd in 1i64..10, m in 1u64..30, z in 0.001f64..0.95) {
        let a = approx(cn, cd, m);
        let psi = a.eval_psi(z).unwrap().value;
        prop_assert!(psi >= a.pointwise_lower_bound(z) - 1e-12);
    }

    #[test]
    fn evaluation_matches_naive_series(cn in 0i64..20, cd in 1i64..6, m in 1u64..8, z in 0.01f64..0.6) {
        let a = approx(cn, cd, m);
        let v = a.eval_psi(z).unwrap();
        let expected = naive_psi(cn as f64 / cd as f64, m, z);
        prop_assert!((v.value - expected).abs() <= 1e-9 * expected.abs().max(1.0), "{} vs {}", v.value, expected);
    }
}
