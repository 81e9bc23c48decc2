use num_traits::ToPrimitive;
use proptest::prelude::*;
use statrs::distribution::{Binomial, DiscreteCDF};
use uclab::bounds::{
    band_case_split, binom_lower_exact, binom_tail, bound_value, BinomQuery, BoundKind,
    BoundParams, TailSide,
};
use uclab::constants::Constants;
use uclab::Rational;

fn close(a: f64, b: f64, rel: f64) -> bool {
    a == b || (a - b).abs() <= rel * a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tail_agrees_with_statrs(n in 1u64..400, num in 1i128..64, t in 0u64..400) {
        let p = Rational::new(num, 64);
        let t = t.min(n);
        let ours = binom_tail(&BinomQuery::new(n, p, t).unwrap(), TailSide::Lower).value;
        let reference = Binomial::new(num as f64 / 64.0, n).unwrap().cdf(t);
        prop_assert!((ours - reference).abs() <= 1e-9 * reference.max(1e-300) + 1e-14, "{ours} vs {reference}");
    }

    #[test]
    fn tail_matches_exact_sum(n in 1u64..300, num in 1i128..32, t in 0u64..300) {
        let p = Rational::new(num, 32);
        let t = t.min(n);
        let exact = binom_lower_exact(n, &p, t).to_f64().unwrap();
        let ours = binom_tail(&BinomQuery::new(n, p, t).unwrap(), TailSide::Lower).value;
        prop_assert!(close(ours, exact, 1e-12), "{ours} vs {exact}");
    }

    #[test]
    fn sides_are_complementary(n in 1u64..2000, num in 1i128..100, t in 0u64..2000) {
        let p = Rational::new(num, 100);
        let t = t.min(n - 1);
        let lo = binom_tail(&BinomQuery::new(n, p, t).unwrap(), TailSide::Lower).value;
        let hi = binom_tail(&BinomQuery::new(n, p, t + 1).unwrap(), TailSide::Upper).value;
        prop_assert!(close(lo + hi, 1.0, 1e-12));
        let lo_next = binom_tail(&BinomQuery::new(n, p, t + 1).unwrap(), TailSide::Lower).value;
        prop_assert!(lo_next >= lo);
    }

    #[test]
    fn bounds_shrink_with_n(e in 4u32..20, delta in 0.001f64..0.5) {
        let c = Constants::default();
        for kind in [BoundKind::Thm4Realizable, BoundKind::Thm4Mean] {
            let a = bound_value(kind, &BoundParams::new(1 << e).delta(delta), &c).unwrap();
            let b = bound_value(kind, &BoundParams::new(1 << (e + 1)).delta(delta), &c).unwrap();
            prop_assert!(b < a);
        }
    }
}

#[test]
fn whole_lower_tail_is_one() {
    for n in [1u64, 7, 100, 5000] {
        let q = BinomQuery::new(n, Rational::new(1, 3), n).unwrap();
        assert_eq!(binom_tail(&q, TailSide::Lower).value, 1.0);
    }
}

#[test]
fn band_case_split_holds_on_dense_grid() {
    let c = Constants::default();
    let mut checked = 0;
    for i in 1..24 {
        for e in 4..24 {
            for delta in [0.5, 0.2, 0.05, 0.01, 1e-3, 1e-6] {
                if let Some(ok) = band_case_split(i, 1 << e, delta, &c).unwrap() {
                    assert!(ok, "i={i} n=2^{e} delta={delta}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 500, "{checked}");
}
