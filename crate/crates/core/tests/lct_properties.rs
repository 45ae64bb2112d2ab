use lctkit::lct::{
    arnold_multiplicity, lct_from_resolution, lct_monomial, scale_arnold, truncation_gap_bound,
    within_lelong_sandwich, DivisorRecord, MonomialIdealSpec, ResolutionData,
};
use lctkit::ExtRational;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use proptest::prelude::*;

const CASES: u32 = 1000;

fn ext(num: i64, den: i64) -> ExtRational {
    ExtRational::ratio(num, den)
}

fn big(r: Ratio<i64>) -> ExtRational {
    ExtRational::Finite(BigRational::new(
        BigInt::from(*r.numer()),
        BigInt::from(*r.denom()),
    ))
}

fn principal() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..7, 1..5)
        .prop_filter("needs a positive exponent", |v| v.iter().any(|&e| e > 0))
}

fn diagonal() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..9, 1..5)
}

fn leaf() -> impl Strategy<Value = MonomialIdealSpec> {
    prop_oneof![
        principal().prop_map(MonomialIdealSpec::PrincipalMonomial),
        diagonal().prop_map(MonomialIdealSpec::Diagonal),
    ]
}

fn any_spec() -> impl Strategy<Value = MonomialIdealSpec> {
    leaf().prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| MonomialIdealSpec::direct_sum(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| MonomialIdealSpec::separated_sum(l, r)),
        ]
    })
}

/// Naive `c` of a principal monomial with small-integer fractions.
fn principal_oracle(exps: &[u32]) -> Ratio<i64> {
    exps.iter()
        .filter(|&&e| e > 0)
        .map(|&e| Ratio::new(1, i64::from(e)))
        .min()
        .unwrap()
}

fn diagonal_oracle(orders: &[u32]) -> Ratio<i64> {
    orders.iter().map(|&m| Ratio::new(1, i64::from(m))).sum()
}

#[test]
fn resolution_examples() {
    let data = |recs: &[(u64, u64, bool)]| {
        ResolutionData::new(
            recs.iter()
                .map(|&(a, b, k)| DivisorRecord::new(a, b, k))
                .collect(),
        )
        .unwrap()
    };
    assert_eq!(
        lct_from_resolution(&data(&[(0, 2, true), (1, 3, true)])).unwrap(),
        ext(1, 2)
    );
    assert_eq!(
        lct_from_resolution(&data(&[(1, 1, true)])).unwrap(),
        ext(2, 1)
    );
    assert_eq!(
        lct_from_resolution(&data(&[(0, 7, true)])).unwrap(),
        ext(1, 7)
    );
    assert_eq!(
        lct_from_resolution(&data(&[(5, 7, false)])).unwrap(),
        ExtRational::PlusInfinity
    );
    assert!(ResolutionData::new(vec![]).is_err());
    assert!(lct_from_resolution(&ResolutionData { divisors: vec![] }).is_err());
}

#[test]
fn monomial_examples() {
    let lct = |s: &str| lct_monomial(&s.parse().unwrap()).unwrap();
    assert_eq!(lct("diag:2,3"), ext(5, 6));
    assert_eq!(lct("mono:3,2"), ext(1, 3));
    assert_eq!(lct("ssum(mono:2;mono:2)"), ext(1, 1));
    assert_eq!(lct("dsum(diag:2;diag:3)"), ext(5, 6));
}

#[test]
fn arnold_examples() {
    assert_eq!(arnold_multiplicity(&ext(5, 6)).unwrap(), ext(6, 5));
    assert_eq!(
        arnold_multiplicity(&ExtRational::zero()).unwrap(),
        ExtRational::PlusInfinity
    );
    assert_eq!(
        arnold_multiplicity(&ExtRational::PlusInfinity).unwrap(),
        ExtRational::zero()
    );
    assert!(arnold_multiplicity(&ext(-1, 2)).is_err());

    let three = BigRational::from_integer(3.into());
    assert_eq!(scale_arnold(&ext(6, 5), &three).unwrap(), ext(18, 5));
    assert_eq!(
        scale_arnold(&ext(6, 5), &BigRational::from_integer(2.into())).unwrap(),
        ext(12, 5)
    );
    assert_eq!(
        scale_arnold(
            &ExtRational::PlusInfinity,
            &BigRational::from_integer(0.into())
        )
        .unwrap(),
        ExtRational::zero()
    );
}

#[test]
fn truncation_examples() {
    assert_eq!(truncation_gap_bound(2, 3).unwrap(), ext(1, 2));
    assert_eq!(truncation_gap_bound(1, 0).unwrap(), ext(1, 1));
    // z1^2 z2 is its own cubic truncation: gap 0.
    for k in 3..10 {
        assert!(truncation_gap_bound(2, k).unwrap() >= ExtRational::zero());
    }
}

#[test]
fn lelong_example() {
    let spec: MonomialIdealSpec = "mono:2,2".parse().unwrap();
    let lambda = arnold_multiplicity(&lct_monomial(&spec).unwrap()).unwrap();
    assert_eq!(lambda, ext(2, 1));
    let nu = BigRational::from_integer(spec.lelong_number().into());
    assert!(within_lelong_sandwich(&lambda, &nu, 2).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn resolution_min_matches_naive_scan(
        recs in prop::collection::vec((0u64..20, 0u64..20, any::<bool>()), 1..12)
    ) {
        prop_assume!(recs.iter().all(|&(a, b, _)| a > 0 || b > 0));
        let data = ResolutionData::new(recs.iter().map(|&(a, b, k)| DivisorRecord::new(a, b, k)).collect()).unwrap();
        let mut naive: Option<Ratio<i64>> = None;
        for &(a, b, k) in &recs {
            if k && b > 0 {
                let v = Ratio::new(a as i64 + 1, b as i64);
                naive = Some(naive.map_or(v, |n: Ratio<i64>| n.min(v)));
            }
        }
        let expected = naive.map_or(ExtRational::PlusInfinity, big);
        prop_assert_eq!(lct_from_resolution(&data).unwrap(), expected);
    }

    #[test]
    fn principal_monomial_matches_oracle(exps in principal()) {
        let spec = MonomialIdealSpec::PrincipalMonomial(exps.clone());
        prop_assert_eq!(lct_monomial(&spec).unwrap(), big(principal_oracle(&exps)));
    }

    #[test]
    fn subadditivity_of_separated_sums(l in principal(), r in principal()) {
        let (sl, sr) = (MonomialIdealSpec::PrincipalMonomial(l.clone()), MonomialIdealSpec::PrincipalMonomial(r.clone()));
        let cl = lct_monomial(&sl).unwrap();
        let cr = lct_monomial(&sr).unwrap();
        let sum = lct_monomial(&MonomialIdealSpec::separated_sum(sl, sr)).unwrap();
        prop_assert!(sum <= cl.clone() + cr.clone());
        prop_assert!(sum <= ExtRational::one());
        let naive = (principal_oracle(&l) + principal_oracle(&r)).min(Ratio::from_integer(1));
        prop_assert_eq!(sum, big(naive));
    }

    #[test]
    fn direct_sum_is_additive(l in any_spec(), r in any_spec()) {
        let cl = lct_monomial(&l).unwrap();
        let cr = lct_monomial(&r).unwrap();
        let both = MonomialIdealSpec::direct_sum(l.clone(), r.clone());
        prop_assert_eq!(both.num_vars(), l.num_vars() + r.num_vars());
        prop_assert_eq!(lct_monomial(&both).unwrap(), cl + cr);
    }

    #[test]
    fn separated_sum_is_capped(l in any_spec(), r in any_spec()) {
        let cl = lct_monomial(&l).unwrap();
        let cr = lct_monomial(&r).unwrap();
        let s = lct_monomial(&MonomialIdealSpec::separated_sum(l, r)).unwrap();
        prop_assert!(s <= ExtRational::one());
        prop_assert_eq!(s, (cl + cr).min(ExtRational::one()));
    }

    #[test]
    fn diagonal_lct_decreases_with_orders(
        (m, bump) in diagonal().prop_flat_map(|m| {
            let n = m.len();
            (Just(m), prop::collection::vec(0u32..5, n))
        })
    ) {
        let bigger: Vec<u32> = m.iter().zip(&bump).map(|(a, b)| a + b).collect();
        let c = lct_monomial(&MonomialIdealSpec::Diagonal(m.clone())).unwrap();
        let c2 = lct_monomial(&MonomialIdealSpec::Diagonal(bigger.clone())).unwrap();
        prop_assert!(c >= c2);
        prop_assert_eq!(c, big(diagonal_oracle(&m)));
    }

    #[test]
    fn diagonal_lct_is_capped_by_codimension(m in diagonal()) {
        let p = m.len() as i64;
        let c = lct_monomial(&MonomialIdealSpec::Diagonal(m.clone())).unwrap();
        prop_assert!(c <= ext(p, 1));
        prop_assert_eq!(c == ext(p, 1), m.iter().all(|&x| x == 1));
    }

    #[test]
    fn reciprocal_is_an_involution(num in 0i64..1000, den in 1i64..1000, kind in 0u8..3) {
        let c = match kind {
            0 => ExtRational::zero(),
            1 => ExtRational::PlusInfinity,
            _ => ext(num, den),
        };
        let back = arnold_multiplicity(&arnold_multiplicity(&c).unwrap()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn scaling_is_multiplicative(num in 1i64..500, den in 1i64..500, an in 0i64..50, ad in 1i64..50) {
        let lambda = ext(num, den);
        let alpha = BigRational::new(an.into(), ad.into());
        let scaled = scale_arnold(&lambda, &alpha).unwrap();
        prop_assert_eq!(scaled, big(Ratio::new(num, den) * Ratio::new(an, ad)));
    }

    #[test]
    fn separated_binomials_match_their_ideal(m in 1u32..30, p in 1u32..30) {
        let f = MonomialIdealSpec::separated_sum(
            MonomialIdealSpec::PrincipalMonomial(vec![m]),
            MonomialIdealSpec::PrincipalMonomial(vec![p]),
        );
        let ideal = lct_monomial(&MonomialIdealSpec::Diagonal(vec![m, p])).unwrap();
        prop_assert_eq!(lct_monomial(&f).unwrap(), ideal.min(ExtRational::one()));
    }

    #[test]
    fn arnold_multiplicity_lies_in_lelong_enclosure(spec in any_spec()) {
        let lambda = arnold_multiplicity(&lct_monomial(&spec).unwrap()).unwrap();
        let nu = BigRational::from_integer(spec.lelong_number().into());
        prop_assert!(within_lelong_sandwich(&lambda, &nu, spec.num_vars() as u32).unwrap());
    }

    #[test]
    fn spec_text_round_trips(spec in any_spec()) {
        let back: MonomialIdealSpec = spec.to_string().parse().unwrap();
        prop_assert_eq!(back, spec);
    }
}
