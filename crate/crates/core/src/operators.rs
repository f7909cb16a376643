//! Normalized analytic functions and the operators built on them.
//!
//! An [`AnalyticFunction`] carries a truncated Taylor series and, when known,
//! closed-form evaluators for `f`, `f'` and `f''`. Pointwise evaluation always
//! prefers the closed forms; the series is used only inside its trust radius.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{PowerSeries, STRUCTURAL_TOL, ZERO_TOL};

/// A stateless pointwise map `C -> C`.
pub type Evaluator = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// Default exclusion distance around singularities and zeros.
pub const DEFAULT_EXCLUSION_EPS: f64 = 1e-3;

/// Fraction of the distance to the nearest singularity (capped at 1) in
/// which series evaluation is accepted.
pub const SERIES_TRUST_FACTOR: f64 = 0.8;

// Step of the five-point stencil used when only f' has a closed form.
const STENCIL_STEP: f64 = 1e-3;

/// A function normalized by `f(0) = 0`, `f'(0) = 1`.
#[derive(Clone)]
pub struct AnalyticFunction {
    series: PowerSeries,
    d1_series: PowerSeries,
    d2_series: PowerSeries,
    value: Option<Evaluator>,
    first: Option<Evaluator>,
    second: Option<Evaluator>,
    singularities: Vec<Complex64>,
    zeros: Vec<Complex64>,
    critical_points: Vec<Complex64>,
    label: String,
}

impl fmt::Debug for AnalyticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticFunction")
            .field("label", &self.label)
            .field("order", &self.series.order())
            .field("closed_form", &self.value.is_some())
            .field("singularities", &self.singularities)
            .field("zeros", &self.zeros)
            .field("critical_points", &self.critical_points)
            .finish()
    }
}

impl AnalyticFunction {
    /// Wraps a normalized series; fails with `NotNormalized` otherwise.
    pub fn from_series(label: impl Into<String>, series: PowerSeries) -> Result<Self> {
        let (a0, a1) = (series.coeff(0), series.coeff(1));
        if series.order() < 1
            || a0.norm() >= STRUCTURAL_TOL
            || (a1 - Complex64::new(1.0, 0.0)).norm() >= STRUCTURAL_TOL
        {
            return Err(Error::NotNormalized { a0, a1 });
        }
        let d1_series = series.derivative();
        let d2_series = d1_series.derivative();
        Ok(Self {
            series,
            d1_series,
            d2_series,
            value: None,
            first: None,
            second: None,
            singularities: Vec::new(),
            zeros: Vec::new(),
            critical_points: Vec::new(),
            label: label.into(),
        })
    }

    pub fn with_value(
        mut self,
        f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.value = Some(Arc::new(f));
        self
    }

    pub fn with_derivative(
        mut self,
        f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.first = Some(Arc::new(f));
        self
    }

    pub fn with_second_derivative(
        mut self,
        f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.second = Some(Arc::new(f));
        self
    }

    /// Poles and branch points; excluded from sampling and bounding the
    /// series trust radius.
    pub fn with_singularities(mut self, points: Vec<Complex64>) -> Self {
        self.singularities = points;
        self
    }

    /// Zeros other than the origin.
    pub fn with_zeros(mut self, points: Vec<Complex64>) -> Self {
        self.zeros = points;
        self
    }

    /// Zeros of `f'`.
    pub fn with_critical_points(mut self, points: Vec<Complex64>) -> Self {
        self.critical_points = points;
        self
    }

    pub fn series(&self) -> &PowerSeries {
        &self.series
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn singularities(&self) -> &[Complex64] {
        &self.singularities
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn critical_points(&self) -> &[Complex64] {
        &self.critical_points
    }

    /// Second Taylor coefficient `a2 = f''(0)/2`.
    pub fn a2(&self) -> Complex64 {
        self.series.coeff(2)
    }

    /// True when both `f` and `f'` have closed forms.
    pub fn has_closed_form(&self) -> bool {
        self.value.is_some() && self.first.is_some()
    }

    /// Radius within which series evaluation is trusted.
    pub fn trust_radius(&self) -> f64 {
        let nearest = self
            .singularities
            .iter()
            .map(|s| s.norm())
            .fold(1.0_f64, f64::min);
        SERIES_TRUST_FACTOR * nearest
    }

    fn series_eval(&self, series: &PowerSeries, z: Complex64) -> Result<Complex64> {
        let trust = self.trust_radius();
        // slack for points generated on the circle |z| = trust
        if z.norm() > trust * (1.0 + 1e-12) {
            return Err(Error::OutsideTrustRadius {
                modulus: z.norm(),
                trust,
            });
        }
        Ok(series.eval(z))
    }

    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        match &self.value {
            Some(f) => Ok(f(z)),
            None => self.series_eval(&self.series, z),
        }
    }

    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        match &self.first {
            Some(f) => Ok(f(z)),
            None => self.series_eval(&self.d1_series, z),
        }
    }

    /// `f''(z)`: closed form, else a five-point stencil on a closed-form `f'`,
    /// else the series.
    pub fn second_derivative(&self, z: Complex64) -> Result<Complex64> {
        if let Some(f) = &self.second {
            return Ok(f(z));
        }
        if let Some(d1) = &self.first {
            let h = STENCIL_STEP;
            let hc = Complex64::new(h, 0.0);
            let num = -d1(z + 2.0 * hc) + 8.0 * d1(z + hc) - 8.0 * d1(z - hc) + d1(z - 2.0 * hc);
            return Ok(num / (12.0 * h));
        }
        self.series_eval(&self.d2_series, z)
    }

    /// Fails with `NearSingularity` when `z` is within `eps` of a singularity
    /// or of a zero other than the origin.
    pub fn check_clear(&self, z: Complex64, eps: f64) -> Result<()> {
        for &p in self.singularities.iter().chain(&self.zeros) {
            if (z - p).norm() < eps {
                return Err(Error::NearSingularity { z, near: p, eps });
            }
        }
        Ok(())
    }
}

fn merged(parts: &[&[Complex64]]) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for &p in parts.iter().flat_map(|s| s.iter()) {
        if !out.iter().any(|q| (q - p).norm() < ZERO_TOL) {
            out.push(p);
        }
    }
    out
}

/// `P_f = f / f'`.
///
/// Closed forms are composed when `f` supplies them: `F = f/f'` needs `f` and
/// `f'`, and `F' = 1 - f f''/f'^2` additionally needs `f''`. Zeros of `f'`
/// become poles of `F`.
pub fn p_of(f: &AnalyticFunction) -> Result<AnalyticFunction> {
    // f/f' = z (f/z)/f' keeps the full order of f.
    let series = f
        .series
        .shift_down()?
        .mul(&f.series.derivative().reciprocal()?)
        .shift_up();
    let mut out = AnalyticFunction::from_series(format!("P[{}]", f.label), series)?
        .with_singularities(merged(&[&f.singularities, &f.critical_points]))
        .with_zeros(merged(&[&f.zeros, &f.singularities]));
    if let (Some(v), Some(d1)) = (f.value.clone(), f.first.clone()) {
        out.value = Some(Arc::new(move |z| v(z) / d1(z)));
        if let Some(d2) = f.second.clone() {
            let (v, d1) = (f.value.clone().unwrap(), f.first.clone().unwrap());
            out.first = Some(Arc::new(move |z| {
                let d = d1(z);
                1.0 - v(z) * d2(z) / (d * d)
            }));
        }
    }
    Ok(out)
}

/// `U_F(z) = F'(z) (z/F(z))^2 - 1`, with the removable value 0 at the origin.
pub fn u_of(f: &AnalyticFunction, z: Complex64) -> Result<Complex64> {
    u_of_with_eps(f, z, DEFAULT_EXCLUSION_EPS)
}

pub fn u_of_with_eps(f: &AnalyticFunction, z: Complex64, eps: f64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    f.check_clear(z, eps)?;
    let ratio = z / f.value(z)?;
    Ok(f.derivative(z)? * ratio * ratio - 1.0)
}

/// Logarithmic coefficients: the series of `log(f(z)/z)`.
pub fn log_coeffs(f: &AnalyticFunction) -> Result<PowerSeries> {
    f.series.shift_down()?.log_unit()
}

/// `U_{P_f}` as a series, `-sum n(n-1) c_n(f) z^n`.
pub fn u_series_of_p(f: &AnalyticFunction) -> Result<PowerSeries> {
    let c = log_coeffs(f)?;
    PowerSeries::from_fn(c.order(), |n| {
        let k = (n * n.saturating_sub(1)) as f64;
        -c.coeff(n) * k
    })
}

/// Transform `T_f(z) = z + sum n/(n+1) c_n(f) z^{n+1}`.
pub fn t_of(f: &AnalyticFunction) -> Result<PowerSeries> {
    let c = log_coeffs(f)?;
    PowerSeries::from_fn(c.order() + 1, |k| match k {
        0 => Complex64::new(0.0, 0.0),
        1 => Complex64::new(1.0, 0.0),
        _ => {
            let n = (k - 1) as f64;
            c.coeff(k - 1) * (n / (n + 1.0))
        }
    })
}

/// `Q(g)(w) = w g'(w)`.
pub fn wplane_q(g: &PowerSeries) -> PowerSeries {
    let coeffs = g
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c * n as f64)
        .collect();
    PowerSeries::new(coeffs).expect("scaling preserves finiteness")
}

/// `S(g)(w) = integral_0^w g(u)/u du`; requires `g(0) = 0`.
pub fn wplane_s(g: &PowerSeries) -> Result<PowerSeries> {
    let g0 = g.coeff(0);
    if g0.norm() >= ZERO_TOL {
        return Err(Error::NonzeroInnerConstant(g0));
    }
    PowerSeries::from_fn(g.order(), |n| {
        if n == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            g.coeff(n) / n as f64
        }
    })
}
