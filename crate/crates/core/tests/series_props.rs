use gft_core::PowerSeries;
use num_complex::Complex64;
use proptest::prelude::*;

fn complex_in(bound: f64) -> impl Strategy<Value = Complex64> {
    (-bound..bound, -bound..bound)
        .prop_filter("inside disk", move |(re, im)| {
            re * re + im * im <= bound * bound
        })
        .prop_map(|(re, im)| Complex64::new(re, im))
}

fn series_with(
    len: std::ops::RangeInclusive<usize>,
    bound: f64,
) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(complex_in(bound), len)
}

/// Unit constant term, `|a_n| <= 0.3^n`: zero-free on the closed disk.
fn unit_series(order: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(complex_in(1.0), order).prop_map(|tail| {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        c.extend(
            tail.iter()
                .enumerate()
                .map(|(k, a)| a * 0.3f64.powi(k as i32 + 1)),
        );
        PowerSeries::new(c).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reciprocal_round_trip(
        a0 in (0.5f64..1.0, 0.0..std::f64::consts::TAU),
        tail in series_with(0..=64, 1.0),
    ) {
        // Zero-free on the closed disk: the tail is scaled so that
        // sum |a_n| <= 0.9 |a0|, which keeps 1/a bounded.
        let l1: f64 = tail.iter().map(|c| c.norm()).sum();
        let k = if l1 > 0.9 * a0.0 { 0.9 * a0.0 / l1 } else { 1.0 };
        let mut c = vec![Complex64::from_polar(a0.0, a0.1)];
        c.extend(tail.iter().map(|t| t * k));
        let a = PowerSeries::new(c).unwrap();
        let prod = a.mul(&a.reciprocal().unwrap());
        let err = prod.max_abs_diff(&PowerSeries::one(a.order()));
        prop_assert!(err < 1e-10, "err {err}");
    }

    #[test]
    fn reciprocal_round_trip_relative(
        a0 in (0.5f64..1.0, 0.0..std::f64::consts::TAU),
        tail in series_with(0..=64, 1.0),
    ) {
        // Zeros near the origin make the reciprocal grow geometrically, and
        // the residual grows with it.
        let mut c = vec![Complex64::from_polar(a0.0, a0.1)];
        c.extend(tail);
        let a = PowerSeries::new(c).unwrap();
        let b = a.reciprocal().unwrap();
        let err = a.mul(&b).max_abs_diff(&PowerSeries::one(a.order()));
        let scale = b.coeffs().iter().map(|x| x.norm()).fold(1.0, f64::max);
        prop_assert!(err < 1e-10 * scale, "err {err}, scale {scale}");
    }

    #[test]
    fn log_additivity(a in unit_series(32), b in unit_series(32)) {
        let lhs = a.mul(&b).log_unit().unwrap();
        let rhs = &a.log_unit().unwrap() + &b.log_unit().unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }

    #[test]
    fn chain_rule_on_polynomials(a in series_with(2..=12, 1.0), b_tail in series_with(1..=12, 1.0)) {
        let a = PowerSeries::new(a).unwrap();
        let mut bc = vec![Complex64::new(0.0, 0.0)];
        bc.extend(b_tail);
        let b = PowerSeries::new(bc).unwrap();
        let lhs = a.compose(&b).unwrap().derivative();
        let rhs = a.derivative().compose(&b).unwrap().mul(&b.derivative());
        let n = lhs.order().min(rhs.order());
        prop_assert!(lhs.truncate(n).max_abs_diff(&rhs.truncate(n)) < 1e-10);
    }

    #[test]
    fn eval_consistency(
        a in series_with(41..=64, 1.0),
        b in series_with(41..=64, 1.0),
        z in complex_in(0.5),
    ) {
        let (a, b) = (PowerSeries::new(a).unwrap(), PowerSeries::new(b).unwrap());
        let lhs = a.mul(&b).eval(z);
        prop_assert!((lhs - a.eval(z) * b.eval(z)).norm() < 1e-9);
    }

    #[test]
    fn truncation_policy(a in series_with(1..=20, 1.0), b in series_with(1..=20, 1.0)) {
        let (a, b) = (PowerSeries::new(a).unwrap(), PowerSeries::new(b).unwrap());
        let n = a.order().min(b.order());
        prop_assert_eq!(a.mul(&b).order(), n);
        prop_assert_eq!((&a + &b).order(), n);
        prop_assert_eq!((&a - &b).order(), n);
    }

    #[test]
    fn coefficient_text_round_trip(a in series_with(1..=30, 10.0)) {
        let a = PowerSeries::new(a).unwrap();
        let back = PowerSeries::parse_coefficients(&a.to_coefficient_text()).unwrap();
        prop_assert_eq!(a, back);
    }
}
