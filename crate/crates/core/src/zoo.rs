//! Named extremal and example functions with exact closed forms.
//!
//! Each [`ZooEntry`] carries `f` and an independently built closed form of
//! `P_f = f/f'`, so that [`p_of`](crate::operators::p_of) can be checked
//! against it.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{p_of, AnalyticFunction};
use crate::series::{PowerSeries, DEFAULT_ORDER};

/// Class memberships asserted for a zoo function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ClassTag {
    /// Univalent.
    S,
    /// Starlike of the given order.
    Starlike(f64),
    /// `Re(1 + z f''/f') < 1 + alpha/2`.
    G(f64),
    /// `|U_f| < 1`.
    U,
    /// `Re(1 + z f''/f') > -1/2`.
    CMinusHalf,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::S => write!(f, "S"),
            ClassTag::Starlike(b) => write!(f, "S*({b})"),
            ClassTag::G(a) => write!(f, "G({a})"),
            ClassTag::U => write!(f, "U"),
            ClassTag::CMinusHalf => write!(f, "C(-1/2)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ZooEntry {
    pub id: String,
    /// Starlikeness order for the `k_beta` family.
    pub beta: Option<f64>,
    pub f: AnalyticFunction,
    /// Closed-form `P_f`, built without going through `f/f'`.
    pub p_f_closed: AnalyticFunction,
    pub class_tags: Vec<ClassTag>,
    /// Smallest positive zero of `(P_f)'` when known exactly.
    pub derivative_root: Option<f64>,
}

impl ZooEntry {
    pub fn has_tag(&self, tag: ClassTag) -> bool {
        self.class_tags.contains(&tag)
    }

    pub fn is_univalent(&self) -> bool {
        self.has_tag(ClassTag::S)
    }

    /// `|a2|` of `f`.
    pub fn a2_abs(&self) -> f64 {
        self.f.a2().norm()
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_beta(beta: f64) -> Result<()> {
    if (0.0..1.0).contains(&beta) {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange {
            name: "beta",
            range: "[0,1)",
            value: beta,
        })
    }
}

/// `k_beta(z) = z/(1-z)^{2(1-beta)}` at the default order.
pub fn koebe_beta(beta: f64) -> Result<ZooEntry> {
    koebe_beta_with_order(beta, DEFAULT_ORDER)
}

/// `k_beta` with `P`-image `F_beta(z) = z(1-z)/(1+(1-2 beta)z)`.
///
/// Powers of `1-z` use the principal branch, `exp(p log(1-z))`.
pub fn koebe_beta_with_order(beta: f64, order: usize) -> Result<ZooEntry> {
    check_beta(beta)?;
    let gamma = 2.0 * (1.0 - beta);
    let c = 1.0 - 2.0 * beta;
    let degenerate = c == 0.0;

    // (1-z)^{-gamma} = sum d_k z^k, d_k = d_{k-1} (k-1+gamma)/k
    let mut d = Vec::with_capacity(order);
    let mut dk = 1.0;
    for k in 0..order {
        if k > 0 {
            dk *= (k as f64 - 1.0 + gamma) / k as f64;
        }
        d.push(dk);
    }
    let series = PowerSeries::from_fn(order, |n| if n == 0 { re(0.0) } else { re(d[n - 1]) })?;

    let pow = move |z: Complex64, p: f64| ((1.0 - z).ln() * p).exp();
    let f = AnalyticFunction::from_series(format!("k_beta({beta})"), series)?
        .with_value(move |z| z * pow(z, -gamma))
        .with_derivative(move |z| (1.0 + c * z) * pow(z, -gamma - 1.0))
        .with_second_derivative(move |z| gamma * (2.0 + c * z) * pow(z, -gamma - 2.0))
        .with_singularities(vec![re(1.0)])
        .with_critical_points(if degenerate {
            vec![]
        } else {
            vec![re(-1.0 / c)]
        });

    // z(1-z) / (1+cz), assembled from series primitives.
    let numerator = PowerSeries::from_real(&[0.0, 1.0, -1.0])?;
    let mut denom = vec![0.0; order + 1];
    denom[0] = 1.0;
    denom[1] = c;
    let denom = PowerSeries::from_real(&denom)?;
    let mut num = vec![re(0.0); order + 1];
    num[..3].copy_from_slice(numerator.coeffs());
    let p_series = PowerSeries::new(num)?.mul(&denom.reciprocal()?);

    let crit = if degenerate {
        vec![re(0.5)]
    } else {
        let disc = (1.0 + c).sqrt();
        vec![re((-1.0 + disc) / c), re((-1.0 - disc) / c)]
    };
    let p_f_closed = AnalyticFunction::from_series(format!("F_beta({beta})"), p_series)?
        .with_value(move |z| z * (1.0 - z) / (1.0 + c * z))
        .with_derivative(move |z| {
            let den = 1.0 + c * z;
            (1.0 - 2.0 * z - c * z * z) / (den * den)
        })
        .with_second_derivative(move |z| {
            let den = 1.0 + c * z;
            -2.0 * (1.0 + c) / (den * den * den)
        })
        .with_singularities(if degenerate {
            vec![]
        } else {
            vec![re(-1.0 / c)]
        })
        .with_zeros(vec![re(1.0)])
        .with_critical_points(crit.clone());

    Ok(ZooEntry {
        id: "koebe-beta".into(),
        beta: Some(beta),
        f,
        p_f_closed,
        class_tags: vec![ClassTag::S, ClassTag::Starlike(beta)],
        derivative_root: crit.first().map(|z| z.re),
    })
}

/// `f1(z) = z(1-z/2)/(1-z)^2`, a member of `C(-1/2)`, with the polynomial
/// image `F1(z) = z - 3z^2/2 + z^3/2`.
pub fn example_f1() -> Result<ZooEntry> {
    let order = DEFAULT_ORDER;
    // z(1 - z/2) sum (n+1) z^n has coefficient (n+1)/2 at z^n.
    let series = PowerSeries::from_fn(order, |n| {
        if n == 0 {
            re(0.0)
        } else {
            re((n as f64 + 1.0) / 2.0)
        }
    })?;
    let f = AnalyticFunction::from_series("f1", series)?
        .with_value(|z| z * (1.0 - z / 2.0) / ((1.0 - z) * (1.0 - z)))
        .with_derivative(|z| (1.0 - z).powi(-3))
        .with_second_derivative(|z| 3.0 * (1.0 - z).powi(-4))
        .with_singularities(vec![re(1.0)])
        .with_zeros(vec![re(2.0)]);

    let r_minus = 1.0 - 3f64.sqrt() / 3.0;
    let r_plus = 1.0 + 3f64.sqrt() / 3.0;
    let mut coeffs = vec![0.0; order + 1];
    coeffs[1] = 1.0;
    coeffs[2] = -1.5;
    coeffs[3] = 0.5;
    let p_f_closed = AnalyticFunction::from_series("F1", PowerSeries::from_real(&coeffs)?)?
        .with_value(|z| z - 1.5 * z * z + 0.5 * z * z * z)
        .with_derivative(|z| 1.0 - 3.0 * z + 1.5 * z * z)
        .with_second_derivative(|z| -3.0 + 3.0 * z)
        .with_zeros(vec![re(1.0), re(2.0)])
        .with_critical_points(vec![re(r_minus), re(r_plus)]);

    Ok(ZooEntry {
        id: "f1".into(),
        beta: None,
        f,
        p_f_closed,
        class_tags: vec![ClassTag::S, ClassTag::CMinusHalf],
        derivative_root: Some(r_minus),
    })
}

/// `f2(z) = z - z^2/2`, a member of `G`, with image
/// `F2(z) = z(1-z/2)/(1-z)` in `U`.
pub fn example_f2() -> Result<ZooEntry> {
    let order = DEFAULT_ORDER;
    let mut coeffs = vec![0.0; order + 1];
    coeffs[1] = 1.0;
    coeffs[2] = -0.5;
    let f = AnalyticFunction::from_series("f2", PowerSeries::from_real(&coeffs)?)?
        .with_value(|z| z - z * z / 2.0)
        .with_derivative(|z| 1.0 - z)
        .with_second_derivative(|_| re(-1.0))
        .with_zeros(vec![re(2.0)])
        .with_critical_points(vec![re(1.0)]);

    // (z - z^2/2) sum z^n: coefficient 1/2 from z^2 on.
    let p_series = PowerSeries::from_fn(order, |n| match n {
        0 => re(0.0),
        1 => re(1.0),
        _ => re(0.5),
    })?;
    let p_f_closed = AnalyticFunction::from_series("F2", p_series)?
        .with_value(|z| z * (1.0 - z / 2.0) / (1.0 - z))
        .with_derivative(|z| (1.0 - z + z * z / 2.0) / ((1.0 - z) * (1.0 - z)))
        .with_second_derivative(|z| (1.0 - z).powi(-3))
        .with_singularities(vec![re(1.0)])
        .with_zeros(vec![re(2.0)])
        .with_critical_points(vec![Complex64::new(1.0, 1.0), Complex64::new(1.0, -1.0)]);

    Ok(ZooEntry {
        id: "f2".into(),
        beta: None,
        f,
        p_f_closed,
        class_tags: vec![ClassTag::S, ClassTag::G(1.0)],
        derivative_root: None,
    })
}

/// `f(z) = z`.
pub fn identity() -> Result<ZooEntry> {
    let build = |label: &str| -> Result<AnalyticFunction> {
        Ok(
            AnalyticFunction::from_series(label, PowerSeries::variable(DEFAULT_ORDER))?
                .with_value(|z| z)
                .with_derivative(|_| re(1.0))
                .with_second_derivative(|_| re(0.0)),
        )
    };
    Ok(ZooEntry {
        id: "identity".into(),
        beta: None,
        f: build("z")?,
        p_f_closed: build("P[z]")?,
        class_tags: vec![
            ClassTag::S,
            ClassTag::U,
            ClassTag::G(1.0),
            ClassTag::CMinusHalf,
        ],
        derivative_root: None,
    })
}

/// `z/(1-z)`, the `beta = 1/2` member of the `k_beta` family.
pub fn half_line() -> Result<ZooEntry> {
    let mut e = koebe_beta(0.5)?;
    e.id = "half-line".into();
    Ok(e)
}

/// The Koebe function `z/(1-z)^2`.
pub fn koebe() -> Result<ZooEntry> {
    let mut e = koebe_beta(0.0)?;
    e.id = "koebe".into();
    Ok(e)
}

/// A series-only entry; `P_f` is computed by [`p_of`].
pub fn from_coefficients(coeffs: Vec<Complex64>, tags: Vec<ClassTag>) -> Result<ZooEntry> {
    let f = AnalyticFunction::from_series("custom", PowerSeries::new(coeffs)?)?;
    let p_f_closed = p_of(&f)?;
    Ok(ZooEntry {
        id: "custom".into(),
        beta: None,
        f,
        p_f_closed,
        class_tags: tags,
        derivative_root: None,
    })
}

/// Resolves a CLI zoo id. `koebe-beta` reads `beta`; `custom:<path>` loads a
/// coefficient file.
pub fn resolve(id: &str, beta: Option<f64>) -> Result<ZooEntry> {
    match id {
        "koebe" => koebe(),
        "koebe-beta" => {
            let beta = beta.ok_or(Error::ParamOutOfRange {
                name: "beta",
                range: "[0,1) (required by koebe-beta)",
                value: f64::NAN,
            })?;
            koebe_beta(beta)
        }
        "f1" => example_f1(),
        "f2" => example_f2(),
        "half-line" => half_line(),
        "identity" => identity(),
        _ => match id.strip_prefix("custom:") {
            Some(path) => {
                let series = PowerSeries::read_coefficient_file(Path::new(path))?;
                let mut e = from_coefficients(series.coeffs().to_vec(), Vec::new())?;
                e.id = id.to_string();
                Ok(e)
            }
            None => Err(Error::UnknownZooId(id.to_string())),
        },
    }
}

/// Every built-in univalent entry: the identity, `k_beta` for
/// `beta` in {0, 1/4, 1/2, 3/4}, `f1` and `f2`.
pub fn univalent_catalogue() -> Result<Vec<ZooEntry>> {
    let mut quarter = koebe_beta(0.25)?;
    quarter.id = "koebe-beta(0.25)".into();
    let mut three_quarters = koebe_beta(0.75)?;
    three_quarters.id = "koebe-beta(0.75)".into();
    Ok(vec![
        identity()?,
        koebe()?,
        quarter,
        half_line()?,
        three_quarters,
        example_f1()?,
        example_f2()?,
    ])
}
