//! Truncated complex power series.
//!
//! A [`PowerSeries`] of order `N` stores the Taylor coefficients of `z^0..=z^N`.
//! Binary operations truncate to the smaller operand order; nothing is ever
//! padded, so a result never claims more accuracy than its inputs.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex number. Every stored coefficient is finite.
pub type ComplexValue = Complex64;

/// Default truncation order for derived series.
pub const DEFAULT_ORDER: usize = 64;

/// Tolerance for structural equalities such as `a0 = 1`.
pub const STRUCTURAL_TOL: f64 = 1e-12;

/// Below this modulus a constant term counts as zero.
pub const ZERO_TOL: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Builds a series from `coeffs[n]` = coefficient of `z^n`. The order is
    /// `coeffs.len() - 1`; derivatives of an order-1 series may have order 0.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Series whose coefficient `n` is `term(n)` for `n = 0..=order`.
    pub fn from_fn(order: usize, term: impl FnMut(usize) -> Complex64) -> Result<Self> {
        Self::new((0..=order).map(term).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![ZERO; order + 1],
        }
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ONE, order)
    }

    /// The series `z`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order.max(1));
        s.coeffs[1] = ONE;
        s
    }

    /// Truncation degree `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^n`; zero past the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(ZERO)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order()) + 1;
        Self {
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs = (0..=order)
            .map(|k| (0..=k).fold(ZERO, |acc, i| acc + a[i] * b[k - i]))
            .collect();
        Self { coeffs }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let a = &self.coeffs;
        if a[0].norm() < ZERO_TOL {
            return Err(Error::ZeroConstantTerm(a[0].norm()));
        }
        let inv0 = a[0].inv();
        let mut b = Vec::with_capacity(a.len());
        b.push(inv0);
        for n in 1..a.len() {
            let s = (1..=n).fold(ZERO, |acc, k| acc + a[k] * b[n - k]);
            b.push(-s * inv0);
        }
        Self::new(b)
    }

    /// Termwise derivative; the order drops by one.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(n, c)| c * (n + 1) as f64)
            .collect();
        Self { coeffs }
    }

    /// Logarithm of a series with unit constant term.
    ///
    /// Uses the recurrence from `L' a = a'`:
    /// `L_n = a_n - (1/n) sum_{k=1}^{n-1} k L_k a_{n-k}`.
    pub fn log_unit(&self) -> Result<Self> {
        let a = &self.coeffs;
        if (a[0] - ONE).norm() >= STRUCTURAL_TOL {
            return Err(Error::NotUnitConstant(a[0]));
        }
        let mut log = vec![ZERO; a.len()];
        for n in 1..a.len() {
            let s = (1..n).fold(ZERO, |acc, k| acc + log[k] * (k as f64) * a[n - k]);
            log[n] = a[n] - s / n as f64;
        }
        Self::new(log)
    }

    /// `self(inner(z))` by Horner's scheme; `inner` must vanish at 0.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let b0 = inner.coeffs[0];
        if b0.norm() >= ZERO_TOL {
            return Err(Error::NonzeroInnerConstant(b0));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeffs[order], order);
        for k in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Divides by `z`; the constant term must vanish.
    pub fn shift_down(&self) -> Result<Self> {
        if self.coeffs[0].norm() >= STRUCTURAL_TOL {
            return Err(Error::NonzeroInnerConstant(self.coeffs[0]));
        }
        if self.order() == 0 {
            return Err(Error::EmptySeries);
        }
        Self::new(self.coeffs[1..].to_vec())
    }

    /// Multiplies by `z`; the order grows by one.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Largest coefficient difference over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Parses the plain-text coefficient format: one `re im` pair per line,
    /// line `n` holding the coefficient of `z^n`.
    pub fn parse_coefficients(text: &str) -> Result<Self> {
        let coeffs = text
            .trim_end()
            .lines()
            .enumerate()
            .map(|(i, line)| parse_line(i + 1, line))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "no coefficients".into(),
            });
        }
        Self::new(coeffs)
    }

    pub fn read_coefficient_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse_coefficients(&text)
    }

    /// Inverse of [`parse_coefficients`](Self::parse_coefficients). Values use
    /// the shortest decimal form that round-trips.
    pub fn to_coefficient_text(&self) -> String {
        let mut out = String::new();
        for c in &self.coeffs {
            let _ = writeln!(out, "{} {}", c.re, c.im);
        }
        out
    }
}

fn parse_line(line_no: usize, line: &str) -> Result<Complex64> {
    let err = |message: String| Error::Parse {
        line: line_no,
        message,
    };
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(err(format!("expected 2 fields, found {}", fields.len())));
    }
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|e| err(format!("'{s}': {e}")))
            .and_then(|v| {
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(err(format!("'{s}' is not finite")))
                }
            })
    };
    Ok(Complex64::new(parse(fields[0])?, parse(fields[1])?))
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: Self) -> PowerSeries {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        PowerSeries { coeffs }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: Self) -> PowerSeries {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        PowerSeries { coeffs }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: Self) -> PowerSeries {
        PowerSeries::mul(self, rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
