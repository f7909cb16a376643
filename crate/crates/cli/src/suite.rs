//! The verification suite behind `gft verify` and the acceptance target.
//!
//! Each criterion collects its items without stopping at the first failure.
//! Pass/fail depends on numbers only; elapsed time is reported in text
//! output and checked against the budget by the acceptance runner.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use gft_core::criteria::{cs_bound, roth_sum, u_sufficient_sum};
use gft_core::operators::{p_of, u_of, wplane_q, wplane_s};
use gft_core::oracles::{derivative_zero_radius, sig12, u_radius, univalence_radius, OracleConfig};
use gft_core::radii::{self, phi5, poly_eval, roth_constant, RadiusResult};
use gft_core::zoo::{self, ZooEntry};
use gft_core::{AnalyticFunction, PowerSeries, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::commands::conjecture_sweep;
use crate::config::Format;

const SEED: u64 = 0x5eed_f00d;

/// Tabulated `(|a2|, r6)` pairs.
pub const TABLE1: [(f64, f64); 8] = [
    (0.25, 0.361166),
    (0.5, 0.362294),
    (0.75, 0.364226),
    (1.0, 0.367042),
    (1.25, 0.370874),
    (1.5, 0.375923),
    (1.75, 0.382504),
    (2.0, 0.391124),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub name: String,
    pub measured: f64,
    /// Human-readable acceptance condition.
    pub expected: String,
    pub pass: bool,
}

impl Item {
    fn new(
        name: impl Into<String>,
        measured: f64,
        expected: impl Into<String>,
        pass: bool,
    ) -> Self {
        Self {
            name: name.into(),
            measured,
            expected: expected.into(),
            pass,
        }
    }

    fn near(name: impl Into<String>, measured: f64, want: f64, tol: f64) -> Self {
        let pass = (measured - want).abs() <= tol;
        Self::new(name, measured, format!("{want} +/- {tol:e}"), pass)
    }

    fn failed(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Self::new(name, f64::NAN, format!("error: {err}"), false)
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub items: Vec<Item>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub criteria: Vec<CriterionResult>,
}

type Criterion = fn(&OracleConfig) -> Vec<Item>;

/// `(id, title, budget in seconds, body)` for every criterion.
pub const CRITERIA: [(u8, &str, u64, Criterion); 8] = [
    (1, "tabulated r6 values", 1, table1_items),
    (2, "named radii", 1, named_radii_items),
    (3, "sharpness of the U-radius oracle", 30, sharpness_items),
    (4, "worked examples F1 and F2", 60, example_items),
    (5, "Roth bound", 1, roth_items),
    (6, "operator identities", 5, identity_items),
    (
        7,
        "criterion/polynomial sign equivalence",
        1,
        equivalence_items,
    ),
    (8, "monotonicity and conjecture gap", 60, monotonicity_items),
];

pub fn run_criterion(id: u8, oracle: &OracleConfig) -> CriterionResult {
    let (id, title, budget, body) = CRITERIA
        .iter()
        .copied()
        .find(|c| c.0 == id)
        .expect("criterion ids run 1..=8");
    let start = Instant::now();
    let items = body(oracle);
    CriterionResult {
        id,
        title,
        items,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget),
    }
}

pub fn run_suite(oracle: &OracleConfig) -> SuiteReport {
    SuiteReport {
        criteria: CRITERIA
            .iter()
            .map(|c| run_criterion(c.0, oracle))
            .collect(),
    }
}

fn radius_or_nan(r: Result<RadiusResult>) -> (f64, Option<f64>) {
    match r {
        Ok(r) => (r.value, r.residual()),
        Err(_) => (f64::NAN, None),
    }
}

fn table1_items(_: &OracleConfig) -> Vec<Item> {
    let mut items = Vec::new();
    let mut worst: f64 = 0.0;
    for (b, want) in TABLE1 {
        let (got, _) = radius_or_nan(radii::r6(b));
        worst = worst.max((got - want).abs());
        items.push(Item::near(format!("r6({b})"), got, want, 5e-6));
    }
    items.push(Item::new(
        "table1 match",
        worst,
        "max |diff| <= 5e-6",
        worst <= 5e-6,
    ));
    items
}

fn named_radii_items(_: &OracleConfig) -> Vec<Item> {
    let named: [(&str, Result<RadiusResult>, f64); 8] = [
        ("r2", radii::r2(), 0.543689),
        ("r3(1)", radii::r3(1.0), 0.585786),
        ("r4(1)", radii::r4(1.0), 0.64731),
        ("r5(1)", radii::r5(1.0), 0.78615),
        ("r6(0)", radii::r6(0.0), 0.360794),
        ("r1(0)", radii::r1(0.0), 0.414214),
        ("r1(0.5)", radii::r1(0.5), 0.5),
        ("1/sqrt(3)", radii::r_inv_sqrt3(), 0.577350),
    ];
    let mut items = Vec::new();
    for (name, res, want) in named {
        let (got, residual) = radius_or_nan(res);
        items.push(Item::near(name, got, want, 5e-5));
        let residual = residual.unwrap_or(f64::NAN).abs();
        items.push(Item::new(
            format!("{name} residual"),
            residual,
            "< 1e-10",
            residual < 1e-10,
        ));
    }
    items
}

fn sharpness_items(oracle: &OracleConfig) -> Vec<Item> {
    let mut items = Vec::new();
    for beta in [0.0, 0.25, 0.5, 0.75] {
        let name = format!("u_radius(F_{beta}) ~ r1({beta})");
        let r1 = radii::r1(beta).map(|r| r.value);
        let got = zoo::koebe_beta(beta).and_then(|e| u_radius(&e.p_f_closed, oracle));
        items.push(match (got, r1) {
            (Ok(rep), Ok(want)) => Item::new(
                name,
                rep.radius,
                format!("|diff| < 2e-3 from {want:.6}"),
                (rep.radius - want).abs() < 2e-3,
            ),
            (Err(e), _) | (_, Err(e)) => Item::failed(name, e),
        });
    }
    for beta in [0.0, 0.5] {
        let name = format!("derivative zero of F_{beta} ~ r1({beta})");
        let r1 = radii::r1(beta).map(|r| r.value);
        let got = zoo::koebe_beta(beta).and_then(|e| derivative_zero_radius(&e.p_f_closed, oracle));
        items.push(match (got, r1) {
            (Ok(rep), Ok(want)) => Item::near(name, rep.radius, want, 1e-6),
            (Err(e), _) | (_, Err(e)) => Item::failed(name, e),
        });
    }
    items
}

fn example_items(oracle: &OracleConfig) -> Vec<Item> {
    let mut items = Vec::new();
    match zoo::example_f1() {
        Ok(f1) => {
            items.push(match derivative_zero_radius(&f1.p_f_closed, oracle) {
                Ok(rep) => Item::near("F1 derivative zero", rep.radius, 0.4226497, 1e-7),
                Err(e) => Item::failed("F1 derivative zero", e),
            });
            items.push(match univalence_radius(&f1.p_f_closed, oracle) {
                Ok(rep) => Item::new(
                    "F1 univalence radius",
                    rep.radius,
                    "in [0.4206, 0.4247]",
                    (0.4226 - 2e-3..=0.4227 + 2e-3).contains(&rep.radius),
                ),
                Err(e) => Item::failed("F1 univalence radius", e),
            });
        }
        Err(e) => items.push(Item::failed("f1", e)),
    }
    match zoo::example_f2() {
        Ok(f2) => {
            items.push(match u_sufficient_sum(&f2.p_f_closed, 60) {
                Ok(rep) => Item::near("F2 coefficient sum (60 terms)", rep.sum_value, 1.0, 1e-12),
                Err(e) => Item::failed("F2 coefficient sum (60 terms)", e),
            });
            items.push(match u_radius(&f2.p_f_closed, oracle) {
                Ok(rep) => Item::new("F2 u_radius", rep.radius, ">= 0.99", rep.radius >= 0.99),
                Err(e) => Item::failed("F2 u_radius", e),
            });
        }
        Err(e) => items.push(Item::failed("f2", e)),
    }
    items
}

/// Terms in the Koebe partial Roth sum.
pub const ROTH_TERMS: usize = 10_000;

fn roth_items(_: &OracleConfig) -> Vec<Item> {
    let a = roth_constant();
    let koebe =
        zoo::koebe_beta_with_order(0.0, ROTH_TERMS + 1).and_then(|k| roth_sum(&k.f, ROTH_TERMS));
    let identity = zoo::identity().and_then(|id| roth_sum(&id.f, id.f.series().order() - 1));
    vec![
        match koebe {
            Ok(rep) => Item::new(
                format!("Koebe partial sum ({ROTH_TERMS} terms)"),
                rep.sum_value,
                format!("in [{:.6}, {a:.6}]", a - 5e-4),
                rep.sum_value >= a - 5e-4 && rep.sum_value <= a,
            ),
            Err(e) => Item::failed("Koebe partial sum", e),
        },
        match identity {
            Ok(rep) => Item::new(
                "identity sum",
                rep.sum_value,
                "0 exactly",
                rep.sum_value == 0.0,
            ),
            Err(e) => Item::failed("identity sum", e),
        },
    ]
}

fn zoo_entries() -> Result<Vec<ZooEntry>> {
    let mut out = zoo::univalent_catalogue()?;
    for beta in [0.0, 0.5] {
        out.push(zoo::koebe_beta(beta)?);
    }
    Ok(out)
}

/// `z f'/f - z (z f'/f)' - 1`.
fn u_via_log_derivative(f: &AnalyticFunction, z: Complex64) -> Result<Complex64> {
    let (v, d1, d2) = (f.value(z)?, f.derivative(z)?, f.second_derivative(z)?);
    let q = z * d1 / v;
    let dq = d1 / v + z * d2 / v - z * d1 * d1 / (v * v);
    Ok(q - z * dq - 1.0)
}

fn identity_items(_: &OracleConfig) -> Vec<Item> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut items = Vec::new();

    // Dyadic coefficients m/2^20: scaling by n and back is exact.
    let mut mismatches = 0usize;
    for _ in 0..100 {
        let len = rng.gen_range(2..=65);
        let mut dyadic = || rng.gen_range(-(1i64 << 20)..(1i64 << 20)) as f64 / (1u64 << 20) as f64;
        let coeffs: Vec<Complex64> = (0..len)
            .map(|n| {
                if n == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(dyadic(), dyadic())
                }
            })
            .collect();
        let g = PowerSeries::new(coeffs).expect("finite");
        if wplane_s(&wplane_q(&g)).ok().as_ref() != Some(&g) {
            mismatches += 1;
        }
    }
    items.push(Item::new(
        "S(Q(g)) = g on 100 random series",
        mismatches as f64,
        "0 mismatches",
        mismatches == 0,
    ));

    let mut worst: f64 = 0.0;
    let mut error = None;
    match zoo_entries() {
        Ok(entries) => {
            for _ in 0..50 {
                let z = Complex64::from_polar(
                    rng.gen_range(0.0..=0.3),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                );
                for e in &entries {
                    let diff = p_of(&e.f)
                        .and_then(|p| u_of(&p, z))
                        .and_then(|u| Ok((u - u_via_log_derivative(&e.f, z)?).norm()));
                    match diff {
                        Ok(d) => worst = worst.max(d),
                        Err(err) => error = Some(format!("{}: {err}", e.id)),
                    }
                }
            }
        }
        Err(err) => error = Some(err.to_string()),
    }
    items.push(match error {
        None => Item::new(
            "U identity at 50 points, |z| <= 0.3",
            worst,
            "< 1e-8",
            worst < 1e-8,
        ),
        Some(err) => Item::failed("U identity", err),
    });

    let mut closed: Vec<Result<ZooEntry>> = [0.0, 0.25, 0.5, 0.75]
        .iter()
        .map(|&b| zoo::koebe_beta(b))
        .collect();
    closed.push(zoo::example_f1());
    closed.push(zoo::example_f2());
    for e in closed {
        items.push(match e {
            Ok(e) => {
                let name = format!("P[{}] series vs closed form", e.f.label());
                match p_of(&e.f) {
                    Ok(p) => {
                        let d = p
                            .series()
                            .truncate(32)
                            .max_abs_diff(&e.p_f_closed.series().truncate(32));
                        Item::new(name, d, "< 1e-10 through order 32", d < 1e-10)
                    }
                    Err(err) => Item::failed(name, err),
                }
            }
            Err(err) => Item::failed("closed-form entry", err),
        });
    }
    items
}

fn equivalence_items(_: &OracleConfig) -> Vec<Item> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let (mut checked, mut disagree) = (0usize, 0usize);
    let mut error = None;
    for _ in 0..200 {
        let r = rng.gen_range(0.0..=0.9);
        let b = rng.gen_range(0.0..=2.0);
        let phi = poly_eval(&phi5(b), r);
        if phi.abs() < 1e-9 {
            continue;
        }
        match cs_bound(r, b) {
            Ok(cs) => {
                checked += 1;
                if (cs - 1.0).signum() != phi.signum() {
                    disagree += 1;
                }
            }
            Err(e) => error = Some(e.to_string()),
        }
    }
    vec![match error {
        None => Item::new(
            format!("sign agreement on {checked} pairs"),
            disagree as f64,
            "0 disagreements",
            disagree == 0,
        ),
        Some(e) => Item::failed("sign agreement", e),
    }]
}

fn monotonicity_items(oracle: &OracleConfig) -> Vec<Item> {
    let mut items = Vec::new();
    let r1: Vec<f64> = (0..100)
        .map(|k| radius_or_nan(radii::r1(k as f64 * 0.01)).0)
        .collect();
    let bad = r1
        .windows(2)
        .filter(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        .count();
    items.push(Item::new(
        "r1 increasing, step 0.01",
        bad as f64,
        "0 violations",
        bad == 0,
    ));

    let bound = 2f64.sqrt() - 1.0;
    let r6: Vec<f64> = (0..=40)
        .map(|k| radius_or_nan(radii::r6(k as f64 * 0.05)).0)
        .collect();
    let bad = r6
        .windows(2)
        .filter(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        .count();
    items.push(Item::new(
        "r6 increasing, step 0.05",
        bad as f64,
        "0 violations",
        bad == 0,
    ));
    let top = r6.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    items.push(Item::new(
        "max r6 below sqrt(2)-1",
        top,
        format!("< {bound:.6}"),
        top < bound,
    ));

    items.push(match conjecture_sweep(oracle) {
        Ok(rep) => Item::new(
            format!("sweep minimum univalence ({})", rep.min_id),
            rep.min_univalence,
            ">= 0.358",
            rep.min_univalence >= 0.36 - 2e-3,
        ),
        Err(e) => Item::failed("conjecture sweep", e),
    });
    items
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed())
    }

    /// JSON and CSV omit timings so that identical runs are byte-identical.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let criteria: Vec<_> = self
                    .criteria
                    .iter()
                    .map(|c| {
                        let items: Vec<_> = c
                            .items
                            .iter()
                            .map(|i| {
                                json!({
                                    "name": i.name,
                                    "measured": if i.measured.is_finite() { json!(sig12(i.measured)) } else { json!(null) },
                                    "expected": i.expected,
                                    "pass": i.pass,
                                })
                            })
                            .collect();
                        json!({ "id": c.id, "title": c.title, "pass": c.passed(), "items": items })
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&json!({
                    "pass": self.passed(),
                    "criteria": criteria,
                }))
                .expect("documents serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::from("criterion,item,measured,pass\n");
                for c in &self.criteria {
                    for i in &c.items {
                        let _ = writeln!(s, "{},\"{}\",{:.6},{}", c.id, i.name, i.measured, i.pass);
                    }
                }
                s
            }
            Format::Text => {
                let mut s = String::new();
                for c in &self.criteria {
                    let tag = if c.passed() { "PASS" } else { "FAIL" };
                    let _ = writeln!(
                        s,
                        "{tag} [{}] {} ({:.2} s)",
                        c.id,
                        c.title,
                        c.elapsed.as_secs_f64()
                    );
                    for i in &c.items {
                        let tag = if i.pass { "ok  " } else { "FAIL" };
                        let _ = writeln!(
                            s,
                            "    {tag} {}: {:.9} ({})",
                            i.name, i.measured, i.expected
                        );
                    }
                }
                let verdict = if self.passed() {
                    "all criteria pass"
                } else {
                    "some criteria FAIL"
                };
                let _ = writeln!(s, "{verdict}");
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        let cfg = OracleConfig::default().scaled(0.25);
        for id in [1, 2, 5, 6, 7] {
            let c = run_criterion(id, &cfg);
            assert!(c.passed(), "{:?}", c.items);
        }
    }

    #[test]
    fn item_tolerance_is_inclusive() {
        assert!(Item::near("x", 1.5, 1.0, 0.5).pass);
        assert!(!Item::near("x", f64::NAN, 1.0, 0.5).pass);
    }
}
