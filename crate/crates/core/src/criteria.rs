//! Coefficient-based membership criteria.
//!
//! Sums are accumulated in ascending index order. A partial sum can prove a
//! violation outright; a "satisfied" verdict is only rigorous when a tail
//! estimate covers the omitted terms.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::operators::{log_coeffs, AnalyticFunction};
use crate::radii::{check_a2, roth_constant};
use crate::series::{PowerSeries, STRUCTURAL_TOL};

/// Slack applied to every threshold comparison.
pub const THRESHOLD_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Satisfied,
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffCriterionReport {
    pub criterion: &'static str,
    pub sum_value: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    pub terms_used: usize,
    pub tail_estimate: f64,
    /// The condition is also necessary for this input (all `b_n >= 0`),
    /// so a violation disproves membership.
    pub necessary: bool,
}

impl CoeffCriterionReport {
    fn new(
        criterion: &'static str,
        sum_value: f64,
        threshold: f64,
        terms_used: usize,
        tail_estimate: f64,
    ) -> Self {
        Self {
            criterion,
            sum_value,
            threshold,
            verdict: verdict(sum_value, tail_estimate, threshold),
            terms_used,
            tail_estimate,
            necessary: false,
        }
    }
}

impl Serialize for CoeffCriterionReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CoeffCriterionReport", 6)?;
        st.serialize_field("criterion", self.criterion)?;
        st.serialize_field("sum", &self.sum_value)?;
        st.serialize_field("threshold", &self.threshold)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("terms", &self.terms_used)?;
        st.serialize_field("tail", &self.tail_estimate)?;
        st.end()
    }
}

fn verdict(sum: f64, tail: f64, threshold: f64) -> Verdict {
    if sum + tail <= threshold + THRESHOLD_SLACK {
        Verdict::Satisfied
    } else if sum > threshold + THRESHOLD_SLACK {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    }
}

/// Coefficients `b_n` of `z/f(z) = 1 + sum b_n z^n`.
pub fn reciprocal_coefficients(f: &AnalyticFunction) -> Result<PowerSeries> {
    f.series().shift_down()?.reciprocal()
}

fn require_terms(series: &PowerSeries, n_terms: usize) -> Result<()> {
    if n_terms > series.order() {
        Err(Error::InsufficientOrder {
            requested: n_terms,
            order: series.order(),
        })
    } else {
        Ok(())
    }
}

/// Area-theorem sum `sum_{n=2}^{N} (n-1)|b_n|^2` against 1.
pub fn area_sum(f: &AnalyticFunction, n_terms: usize) -> Result<CoeffCriterionReport> {
    let b = reciprocal_coefficients(f)?;
    require_terms(&b, n_terms)?;
    let sum = (2..=n_terms).fold(0.0, |acc, n| acc + (n - 1) as f64 * b.coeff(n).norm_sqr());
    Ok(CoeffCriterionReport::new("area", sum, 1.0, n_terms, 0.0))
}

/// Sufficient condition for `U`: `sum_{n=2}^{N} (n-1)|b_n| <= 1`.
///
/// When every computed `b_n` is real and nonnegative the condition is also
/// necessary, and the report is flagged accordingly.
pub fn u_sufficient_sum(f: &AnalyticFunction, n_terms: usize) -> Result<CoeffCriterionReport> {
    let b = reciprocal_coefficients(f)?;
    require_terms(&b, n_terms)?;
    let sum = (2..=n_terms).fold(0.0, |acc, n| acc + (n - 1) as f64 * b.coeff(n).norm());
    let mut report = CoeffCriterionReport::new("u_sufficient", sum, 1.0, n_terms, 0.0);
    report.necessary = (1..=n_terms).all(|n| {
        let c = b.coeff(n);
        c.im.abs() < STRUCTURAL_TOL && c.re > -STRUCTURAL_TOL
    });
    Ok(report)
}

/// The `U` criterion applied to `F(rz)/r`: `sum (n-1)|b_n| r^n` with the
/// geometric tail estimate `N r^{N+1} max|b_n| / (1-r)`.
pub fn scaled_u_sum(f: &AnalyticFunction, r: f64, n_terms: usize) -> Result<CoeffCriterionReport> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "r",
            range: "(0,1)",
            value: r,
        });
    }
    let b = reciprocal_coefficients(f)?;
    require_terms(&b, n_terms)?;
    let mut sum = 0.0;
    let mut rn = r;
    let mut max_b: f64 = 0.0;
    for n in 1..=n_terms {
        let bn = b.coeff(n).norm();
        max_b = max_b.max(bn);
        if n >= 2 {
            sum += (n - 1) as f64 * bn * rn;
        }
        rn *= r;
    }
    let tail = n_terms as f64 * r.powi(n_terms as i32 + 1) * max_b / (1.0 - r);
    Ok(CoeffCriterionReport::new(
        "scaled_u", sum, 1.0, n_terms, tail,
    ))
}

/// Roth's sum `sum_{n=1}^{N} (n/(n+1))^2 |c_n|^2` against `(2 pi^2 - 12)/3`.
pub fn roth_sum(f: &AnalyticFunction, n_terms: usize) -> Result<CoeffCriterionReport> {
    let c = log_coeffs(f)?;
    require_terms(&c, n_terms)?;
    let sum = roth_partial(c.coeffs(), n_terms);
    Ok(CoeffCriterionReport::new(
        "roth",
        sum,
        roth_constant(),
        n_terms,
        0.0,
    ))
}

fn roth_partial(c: &[Complex64], n_terms: usize) -> f64 {
    (1..=n_terms).fold(0.0, |acc, n| {
        let w = n as f64 / (n as f64 + 1.0);
        acc + w * w * c[n].norm_sqr()
    })
}

/// Cauchy-Schwarz majorant of `|U_{P_f}(z)|` at `|z| = r` for univalent `f`
/// with `|a2| = b`:
/// `sqrt(a - b^2/4) * sqrt(r^4 (r^6 - 5r^4 + 19r^2 + 9) / (1 - r^2)^5)`.
pub fn cs_bound(r: f64, b: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::ParamOutOfRange {
            name: "r",
            range: "[0,1)",
            value: r,
        });
    }
    check_a2(b)?;
    let r2 = r * r;
    let r4 = r2 * r2;
    let geometric = r4 * (r4 * r2 - 5.0 * r4 + 19.0 * r2 + 9.0) / (1.0 - r2).powi(5);
    Ok((roth_constant() - b * b / 4.0).sqrt() * geometric.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{example_f2, identity, koebe, koebe_beta_with_order};

    #[test]
    fn area_examples() {
        let k = area_sum(&koebe().unwrap().f, 40).unwrap();
        assert!((k.sum_value - 1.0).abs() < 1e-12);
        assert_eq!(k.verdict, Verdict::Satisfied);

        let id = area_sum(&identity().unwrap().f, 40).unwrap();
        assert_eq!(id.sum_value, 0.0);

        // z/f2 = sum (z/2)^n; brute-force partial sum of (n-1)/4^n.
        let f2 = area_sum(&example_f2().unwrap().f, 40).unwrap();
        let brute: f64 = (2..=40).map(|n| (n - 1) as f64 / 4f64.powi(n)).sum();
        assert!((f2.sum_value - brute).abs() < 1e-15);
        assert!((f2.sum_value - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn u_sufficient_examples() {
        let f2 = u_sufficient_sum(&example_f2().unwrap().p_f_closed, 60).unwrap();
        assert!((f2.sum_value - 1.0).abs() < 1e-12);
        assert_eq!(f2.verdict, Verdict::Satisfied);
        assert!(!f2.necessary);

        let id = u_sufficient_sum(&identity().unwrap().p_f_closed, 10).unwrap();
        assert_eq!(id.sum_value, 0.0);

        let k = u_sufficient_sum(&koebe().unwrap().p_f_closed, 10).unwrap();
        assert!((k.sum_value - 90.0).abs() < 1e-12);
        assert_eq!(k.verdict, Verdict::Violated);
        assert!(k.necessary);
    }

    #[test]
    fn insufficient_order_is_reported() {
        assert!(matches!(
            u_sufficient_sum(&identity().unwrap().p_f_closed, 500),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn scaled_u_examples() {
        let f0 = koebe().unwrap().p_f_closed;
        let r1 = 2f64.sqrt() - 1.0;
        let at_r1 = scaled_u_sum(&f0, r1, 60).unwrap();
        assert!((at_r1.sum_value - 1.0).abs() < 1e-12);
        assert_eq!(at_r1.verdict, Verdict::Satisfied);

        let at_03 = scaled_u_sum(&f0, 0.3, 60).unwrap();
        let closed = 2.0 * 0.09 / 0.49;
        let brute: f64 = (2..=60)
            .map(|n| 2.0 * (n - 1) as f64 * 0.3f64.powi(n))
            .sum();
        assert!((at_03.sum_value - closed).abs() < 1e-12);
        assert!((at_03.sum_value - brute).abs() < 1e-14);
        assert!((closed - 0.36735).abs() < 1e-5);
        assert_eq!(at_03.verdict, Verdict::Satisfied);

        let tiny = scaled_u_sum(&f0, 1e-9, 60).unwrap();
        assert!(tiny.sum_value < 1e-17);

        let over = scaled_u_sum(&f0, 0.5, 60).unwrap();
        assert_eq!(over.verdict, Verdict::Violated);
        assert!(scaled_u_sum(&f0, 1.0, 10).is_err());
    }

    #[test]
    fn roth_examples() {
        let k = koebe_beta_with_order(0.0, 2001).unwrap();
        let r = roth_sum(&k.f, 2000).unwrap();
        let brute: f64 = (1..=2000).map(|n| 4.0 / ((n + 1) as f64).powi(2)).sum();
        assert!((r.sum_value - brute).abs() < 1e-12);
        assert_eq!(r.verdict, Verdict::Satisfied);

        assert_eq!(roth_sum(&identity().unwrap().f, 40).unwrap().sum_value, 0.0);

        // c_n(f2) = -1/(n 2^n): terms 1/((n+1)^2 4^n)
        let f2 = roth_sum(&example_f2().unwrap().f, 40).unwrap();
        let brute: f64 = (1..=40)
            .map(|n| 1.0 / (((n + 1) * (n + 1)) as f64 * 4f64.powi(n)))
            .sum();
        assert!((f2.sum_value - brute).abs() < 1e-15);
        assert!((f2.sum_value - 0.070611).abs() < 5e-6);
    }

    #[test]
    fn cs_bound_examples() {
        let r6 = crate::radii::r6(0.0).unwrap().value;
        assert!((cs_bound(r6, 0.0).unwrap() - 1.0).abs() < 1e-6);
        assert_eq!(cs_bound(0.0, 1.3).unwrap(), 0.0);
        // Direct arithmetic at r = 0.2, b = 0.
        let inner: f64 = 0.0016 * (0.000064 - 0.008 + 0.76 + 9.0) / 0.96f64.powi(5);
        let want = roth_constant().sqrt() * inner.sqrt();
        assert!((cs_bound(0.2, 0.0).unwrap() - want).abs() < 1e-14);
        assert!((want - 0.222187).abs() < 1e-6);
        assert!(cs_bound(1.0, 0.0).is_err());
        assert!(cs_bound(0.5, 2.1).is_err());
    }

    #[test]
    fn report_json_keys() {
        let r = area_sum(&identity().unwrap().f, 5).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        for k in ["criterion", "sum", "threshold", "verdict", "terms", "tail"] {
            assert!(keys.contains(&k), "missing {k}");
        }
        assert_eq!(v["verdict"], "satisfied");
    }
}
