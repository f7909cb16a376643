//! Radius formulas for the operator `P_f` over subclasses of univalent
//! functions, and the polynomial root extraction behind them.
//!
//! Polynomials are real coefficient slices in ascending powers:
//! `poly[k]` is the coefficient of `r^k`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Bisection width used by every polynomial radius.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Step of the upward sign scan that locates the smallest root.
pub const SCAN_STEP: f64 = 1e-3;

/// Roth's constant `(2 pi^2 - 12)/3`.
pub fn roth_constant() -> f64 {
    (2.0 * std::f64::consts::PI * std::f64::consts::PI - 12.0) / 3.0
}

/// Parameters selecting a subclass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassParam {
    /// Order of starlikeness, in `[0, 1)`.
    pub beta: f64,
    /// `G(alpha)` parameter, in `(0, 1]`.
    pub alpha: f64,
    /// `|a2|`, in `[0, 2]`.
    pub a2_abs: f64,
    pub roth_a: f64,
}

impl Default for ClassParam {
    fn default() -> Self {
        Self {
            beta: 0.0,
            alpha: 1.0,
            a2_abs: 0.0,
            roth_a: roth_constant(),
        }
    }
}

impl ClassParam {
    pub fn check_beta(&self) -> Result<f64> {
        check_beta(self.beta)
    }

    pub fn check_alpha(&self) -> Result<f64> {
        check_alpha(self.alpha)
    }

    pub fn check_a2(&self) -> Result<f64> {
        check_a2(self.a2_abs)
    }
}

pub(crate) fn check_beta(beta: f64) -> Result<f64> {
    if (0.0..1.0).contains(&beta) {
        Ok(beta)
    } else {
        Err(Error::ParamOutOfRange {
            name: "beta",
            range: "[0,1)",
            value: beta,
        })
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<f64> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(alpha)
    } else {
        Err(Error::ParamOutOfRange {
            name: "alpha",
            range: "(0,1]",
            value: alpha,
        })
    }
}

pub(crate) fn check_a2(b: f64) -> Result<f64> {
    if (0.0..=2.0).contains(&b) {
        Ok(b)
    } else {
        Err(Error::ParamOutOfRange {
            name: "a2",
            range: "[0,2]",
            value: b,
        })
    }
}

/// A computed radius and how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusResult {
    pub value: f64,
    pub formula_id: String,
    pub bracket: (f64, f64),
    pub tol: f64,
    pub iterations: usize,
    /// Defining polynomial, ascending powers.
    pub polynomial: Option<Vec<f64>>,
    /// Sign changes seen by the scan that located the root, if one ran.
    pub sign_changes: Option<usize>,
}

impl RadiusResult {
    fn closed_form(formula_id: &str, value: f64, polynomial: Vec<f64>) -> Self {
        Self {
            value,
            formula_id: formula_id.into(),
            bracket: (value, value),
            tol: DEFAULT_TOL,
            iterations: 0,
            polynomial: Some(polynomial),
            sign_changes: None,
        }
    }

    /// Defining polynomial evaluated at the radius.
    pub fn residual(&self) -> Option<f64> {
        self.polynomial.as_deref().map(|p| poly_eval(p, self.value))
    }
}

pub fn poly_eval(poly: &[f64], x: f64) -> f64 {
    poly.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Bisection on a sign-changing bracket down to width `tol`.
pub fn solve_root(poly: &[f64], lo: f64, hi: f64, tol: f64) -> Result<RadiusResult> {
    let (mut lo, mut hi) = (lo, hi);
    let bracket = (lo, hi);
    let p_lo = poly_eval(poly, lo);
    let p_hi = poly_eval(poly, hi);
    if p_lo == 0.0 || p_hi == 0.0 {
        let value = if p_lo == 0.0 { lo } else { hi };
        return Ok(RadiusResult {
            value,
            formula_id: "solve_root".into(),
            bracket,
            tol,
            iterations: 0,
            polynomial: Some(poly.to_vec()),
            sign_changes: None,
        });
    }
    if p_lo.signum() == p_hi.signum() || !p_lo.is_finite() || !p_hi.is_finite() {
        return Err(Error::InvalidBracket { lo, hi, p_lo, p_hi });
    }
    let lo_negative = p_lo < 0.0;
    let mut iterations = 0;
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let pm = poly_eval(poly, mid);
        iterations += 1;
        if pm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (pm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RadiusResult {
        value: 0.5 * (lo + hi),
        formula_id: "solve_root".into(),
        bracket,
        tol,
        iterations,
        polynomial: Some(poly.to_vec()),
        sign_changes: None,
    })
}

/// Sign changes of `poly` on the scan grid `lo, lo+step, ..., hi`, as
/// brackets. Exact zeros at grid points produce degenerate brackets.
pub fn sign_scan(poly: &[f64], lo: f64, hi: f64, step: f64) -> Vec<(f64, f64)> {
    let n = ((hi - lo) / step).ceil() as usize;
    let x = |i: usize| if i >= n { hi } else { lo + step * i as f64 };
    let mut out = Vec::new();
    let mut prev = poly_eval(poly, x(0));
    if prev == 0.0 {
        out.push((x(0), x(0)));
    }
    for i in 1..=n {
        let cur = poly_eval(poly, x(i));
        if cur == 0.0 {
            out.push((x(i), x(i)));
        } else if prev != 0.0 && prev.signum() != cur.signum() {
            out.push((x(i - 1), x(i)));
        }
        prev = cur;
    }
    out
}

fn smallest_root(poly: Vec<f64>, lo: f64, hi: f64, formula_id: &str) -> Result<RadiusResult> {
    let brackets = sign_scan(&poly, lo, hi, SCAN_STEP);
    let &(a, b) = brackets.first().ok_or(Error::NoRootInInterval { lo, hi })?;
    let mut res = solve_root(&poly, a, b, DEFAULT_TOL)?;
    res.formula_id = formula_id.into();
    res.sign_changes = Some(brackets.len());
    Ok(res)
}

/// `1/(1 + sqrt(2(1-beta)))`: the `U`-radius of `P_f` over starlike
/// functions of order `beta`. Solves `(2 beta - 1) r^2 - 2r + 1 = 0`.
pub fn r1(beta: f64) -> Result<RadiusResult> {
    check_beta(beta)?;
    let value = 1.0 / (1.0 + (2.0 * (1.0 - beta)).sqrt());
    Ok(RadiusResult::closed_form(
        "r1",
        value,
        vec![1.0, -2.0, 2.0 * beta - 1.0],
    ))
}

/// Root of `r^3 + r^2 + r - 1` in `(0, 1)`.
pub fn phi2() -> Vec<f64> {
    vec![-1.0, 1.0, 1.0, 1.0]
}

pub fn r2() -> Result<RadiusResult> {
    let mut res = solve_root(&phi2(), 0.0, 1.0, DEFAULT_TOL)?;
    res.formula_id = "r2".into();
    Ok(res)
}

/// `r^2 - 2(1+alpha) r + 1 + alpha`.
pub fn phi3(alpha: f64) -> Vec<f64> {
    vec![1.0 + alpha, -2.0 * (1.0 + alpha), 1.0]
}

/// `1 + alpha - sqrt(alpha(1+alpha))`: starlikeness radius over `G(alpha)`.
pub fn r3(alpha: f64) -> Result<RadiusResult> {
    check_alpha(alpha)?;
    let value = 1.0 + alpha - (alpha * (1.0 + alpha)).sqrt();
    Ok(RadiusResult::closed_form("r3", value, phi3(alpha)))
}

/// `r^4 - alpha r^3 - (2+alpha) r^2 - alpha r + 1 + alpha`.
pub fn phi4(alpha: f64) -> Vec<f64> {
    vec![1.0 + alpha, -alpha, -(2.0 + alpha), -alpha, 1.0]
}

/// Smallest root of `phi4` in `(0, 1]`.
pub fn r4(alpha: f64) -> Result<RadiusResult> {
    check_alpha(alpha)?;
    smallest_root(phi4(alpha), 0.0, 1.0, "r4")
}

/// `2 r^4 + 2 alpha r^2 - (1 + alpha)`.
pub fn phi_r5(alpha: f64) -> Vec<f64> {
    vec![-(1.0 + alpha), 0.0, 2.0 * alpha, 0.0, 2.0]
}

/// `sqrt((-alpha + sqrt((1+alpha)^2 + 1))/2)`: `U`-radius over `G(alpha)`.
pub fn r5(alpha: f64) -> Result<RadiusResult> {
    check_alpha(alpha)?;
    let value = ((-alpha + ((1.0 + alpha).powi(2) + 1.0).sqrt()) / 2.0).sqrt();
    Ok(RadiusResult::closed_form("r5", value, phi_r5(alpha)))
}

/// The degree-10 polynomial whose negativity gives `P_f in U` for
/// univalent `f` with `|a2| = b`.
pub fn phi5(b: f64) -> Vec<f64> {
    let a = roth_constant();
    let q = b * b / 4.0;
    let mut p = vec![0.0; 11];
    p[0] = -1.0;
    p[2] = 5.0;
    p[4] = 9.0 * a - 10.0 - 9.0 * q;
    p[6] = 19.0 * a + 10.0 - 19.0 * q;
    p[8] = -(5.0 * a + 5.0 - 5.0 * q);
    p[10] = a + 1.0 - q;
    p
}

/// Smallest root of `phi5` in `(0, 1)`. More than one sign change below
/// 1/2 is reported as `MultipleRoots`.
pub fn r6(b: f64) -> Result<RadiusResult> {
    check_a2(b)?;
    let poly = phi5(b);
    let below_half = sign_scan(&poly, 0.0, 0.5, SCAN_STEP).len();
    if below_half > 1 {
        return Err(Error::MultipleRoots {
            count: below_half,
            lo: 0.0,
            hi: 0.5,
        });
    }
    smallest_root(poly, 0.0, 1.0 - SCAN_STEP, "r6")
}

/// `1/sqrt(3)`, from `1 - 3 r^2 = 0`.
pub fn r_inv_sqrt3() -> Result<RadiusResult> {
    Ok(RadiusResult::closed_form(
        "r_inv_sqrt3",
        1.0 / 3f64.sqrt(),
        vec![1.0, 0.0, -3.0],
    ))
}

/// The tabulated `|a2|` values.
pub const TABLE1_A2: [f64; 8] = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0];

/// `(|a2|, r6(|a2|))` for each tabulated `|a2|`.
pub fn table1() -> Result<Vec<(f64, f64)>> {
    TABLE1_A2
        .iter()
        .map(|&b| r6(b).map(|r| (b, r.value)))
        .collect()
}

/// CSV rendering with header `a2_abs,r6` and radii at 6 decimals.
pub fn table1_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("a2_abs,r6\n");
    for (b, r) in rows {
        out.push_str(&format!("{b},{r:.6}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bisect_closure(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        // Plain bisection, independent of solve_root.
        let neg_lo = f(lo) < 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) < 0.0) == neg_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn roth_constant_value() {
        assert!((roth_constant() - 2.57974).abs() < 1e-5);
        assert_eq!(ClassParam::default().roth_a, roth_constant());
    }

    #[test]
    fn r1_examples() {
        assert!((r1(0.0).unwrap().value - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((r1(0.5).unwrap().value - 0.5).abs() < 1e-15);
        assert!(r1(0.999_999).unwrap().value > 0.998);
        assert!(r1(1.0).is_err());
        assert!(r1(-0.01).is_err());
        for beta in [0.0, 0.3, 0.5, 0.9] {
            assert!(r1(beta).unwrap().residual().unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn r2_examples() {
        let r = r2().unwrap();
        assert!((r.value - 0.543689).abs() < 5e-7);
        assert!(r.residual().unwrap().abs() < 1e-10);
        assert_eq!(poly_eval(&phi2(), 0.0), -1.0);
        assert_eq!(poly_eval(&phi2(), 1.0), 2.0);
        assert_eq!(r.formula_id, "r2");
        assert!(r.iterations >= 39);
    }

    #[test]
    fn r3_examples() {
        let r = r3(1.0).unwrap();
        assert!((r.value - (2.0 - 2f64.sqrt())).abs() < 1e-15);
        assert!(r.residual().unwrap().abs() < 1e-10);
        let half = r3(0.5).unwrap().value;
        assert!((half - (1.5 - 0.75f64.sqrt())).abs() < 1e-15);
        assert!((half - 0.633975).abs() < 5e-7);
        let oracle = bisect_closure(|r| r * r - 3.0 * r + 1.5, 0.0, 1.0);
        assert!((half - oracle).abs() < 1e-14);
        assert!(r3(0.0).is_err());
    }

    #[test]
    fn r4_examples() {
        let r = r4(1.0).unwrap();
        assert!((r.value - 0.64731).abs() < 5e-6);
        let oracle = bisect_closure(|r| r.powi(4) - r.powi(3) - 3.0 * r * r - r + 2.0, 0.0, 1.0);
        assert!((r.value - oracle).abs() < 1e-11);
        assert!(r.residual().unwrap().abs() < 1e-10);
        assert_eq!(r.sign_changes, Some(1));
        let q = r4(0.25).unwrap().value;
        assert!(q > r.value && q < 1.0, "r4(0.25) = {q}");
        assert_eq!(poly_eval(&phi4(1.0), 0.0), 2.0);
        assert!(poly_eval(&phi4(1.0), 1.0) < 0.0);
    }

    #[test]
    fn r5_examples() {
        let r = r5(1.0).unwrap();
        assert!((r.value - ((5f64.sqrt() - 1.0) / 2.0).sqrt()).abs() < 1e-15);
        assert!((r.value - 0.78615).abs() < 5e-6);
        assert!(r.residual().unwrap().abs() < 1e-10);
        let h = r5(0.5).unwrap().value;
        let oracle = bisect_closure(|r| 2.0 * r.powi(4) + r * r - 1.5, 0.0, 1.0);
        assert!((h - oracle).abs() < 1e-14);
        assert!((h - 0.807086).abs() < 5e-7);
    }

    #[test]
    fn r6_examples() {
        assert!((r6(0.0).unwrap().value - 0.360794).abs() < 5e-7);
        assert!((r6(1.0).unwrap().value - 0.367042).abs() < 5e-7);
        assert!((r6(2.0).unwrap().value - 0.391124).abs() < 5e-7);
        assert!(r6(2.5).is_err());
        let r = r6(0.7).unwrap();
        assert!(r.residual().unwrap().abs() < 1e-10);
        assert_eq!(r.sign_changes, Some(1));
    }

    #[test]
    fn r6_matches_cauchy_schwarz_equality() {
        // phi5(r) = (a - b^2/4) r^4 (r^6 - 5r^4 + 19r^2 + 9) - (1 - r^2)^5
        let a = roth_constant();
        for b in [0.0, 0.8, 2.0] {
            let direct = |r: f64| {
                (a - b * b / 4.0) * r.powi(4) * (r.powi(6) - 5.0 * r.powi(4) + 19.0 * r * r + 9.0)
                    - (1.0 - r * r).powi(5)
            };
            for r in [0.1, 0.37, 0.8] {
                assert!((poly_eval(&phi5(b), r) - direct(r)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn r_inv_sqrt3_examples() {
        let r = r_inv_sqrt3().unwrap();
        assert!((r.value - 0.57735).abs() < 1e-5);
        assert!(r.residual().unwrap().abs() < 1e-10);
        assert!(r.value < r4(1.0).unwrap().value);
    }

    #[test]
    fn solve_root_examples() {
        let r = solve_root(&[-0.5, 1.0], 0.0, 1.0, DEFAULT_TOL).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        let r = solve_root(&[-2.0, 0.0, 1.0], 1.0, 2.0, DEFAULT_TOL).unwrap();
        assert!((r.value - 2f64.sqrt()).abs() < 1e-12);
        let r = solve_root(&phi2(), 0.0, 1.0, DEFAULT_TOL).unwrap();
        assert!((r.value - 0.543689).abs() < 5e-7);
        assert!(matches!(
            solve_root(&[1.0, 0.0, 1.0], 0.0, 1.0, DEFAULT_TOL),
            Err(Error::InvalidBracket { .. })
        ));
    }

    #[test]
    fn sign_scan_counts_roots() {
        // (r - 0.2)(r - 0.5)(r - 0.8)
        let p = [-0.08, 0.66, -1.5, 1.0];
        let b = sign_scan(&p, 0.0, 1.0, SCAN_STEP);
        assert_eq!(b.len(), 3);
        assert!(b[0].0 <= 0.2 && 0.2 <= b[0].1);
        assert!(matches!(
            smallest_root(vec![1.0, 0.0, 1.0], 0.0, 1.0, "x"),
            Err(Error::NoRootInInterval { .. })
        ));
    }

    #[test]
    fn table1_rows_and_csv() {
        let rows = table1().unwrap();
        assert_eq!(rows.len(), 8);
        let csv = table1_csv(&rows);
        assert!(csv.starts_with("a2_abs,r6\n"));
        assert!(csv.contains("\n0.25,0.361166\n"));
        assert!(csv.contains("\n1,0.367042\n"));
        assert!(csv.contains("\n0.5,0.362294\n"));
        assert!(csv.contains("\n1.5,0.375923\n"));
        assert!(csv.contains("\n1.75,0.382504\n"));
    }

    #[test]
    fn monotone_radii() {
        let mut prev = 0.0;
        for i in 0..100 {
            let v = r1(i as f64 * 0.01).unwrap().value;
            assert!(v > prev);
            prev = v;
        }
        let mut prev = 0.0;
        for i in 0..=40 {
            let v = r6(i as f64 * 0.05).unwrap().value;
            assert!(v > prev && v < 2f64.sqrt() - 1.0);
            prev = v;
        }
        assert!(r3(1.0).unwrap().value < r4(1.0).unwrap().value);
        assert!(r4(1.0).unwrap().value < r5(1.0).unwrap().value);
    }
}
