use std::fmt::Write as _;

use gft_core::oracles::{
    derivative_zero_radius, g_alpha_radius, sig12, starlike_radius, u_radius, univalence_radius,
    OracleConfig, OracleReport,
};
use gft_core::radii::{self, RadiusResult};
use gft_core::zoo;
use gft_core::{AnalyticFunction, Error, Result};
use serde::Serialize;
use serde_json::json;

use crate::config::{Command, Format, Property, RunConfig, Target};
use crate::suite::{self, SuiteReport};

/// Rendered command output and the process status it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub body: String,
    pub status: i32,
}

/// Exit status for an error: 2 validation, 3 unknown input, 4 numerical.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ParamOutOfRange { .. }
        | Error::InvalidConfig(_)
        | Error::NotNormalized { .. }
        | Error::Parse { .. } => 2,
        Error::UnknownZooId(_) | Error::Io { .. } => 3,
        _ => 4,
    }
}

pub fn run(cfg: &RunConfig) -> Result<Output> {
    let (body, status) = match cfg.command {
        Command::Radii => (render_radii(&cmd_radii(cfg)?, cfg.format), 0),
        Command::Table1 => (render_table1(&cmd_table1(cfg)?, cfg.format), 0),
        Command::Verify => {
            let report = cmd_verify(cfg);
            let status = if report.passed() { 0 } else { 1 };
            (report.render(cfg.format), status)
        }
        Command::Estimate => (render_estimate(&cmd_estimate(cfg)?, cfg.format), 0),
        Command::Conjecture => (cmd_conjecture(cfg)?.render(cfg.format), 0),
    };
    Ok(Output { body, status })
}

/// Radii applicable to the supplied parameters: `r1` needs `--beta`,
/// `r3`..`r5` need `--alpha`, `r6` needs `--a2`. With none of them given,
/// every radius is reported at the defaults.
pub fn cmd_radii(cfg: &RunConfig) -> Result<Vec<RadiusResult>> {
    let p = cfg.params();
    let all = cfg.beta.is_none() && cfg.alpha.is_none() && cfg.a2.is_none();
    let mut out = Vec::new();
    if all || cfg.beta.is_some() {
        out.push(radii::r1(p.beta)?);
    }
    out.push(radii::r2()?);
    if all || cfg.alpha.is_some() {
        out.push(radii::r3(p.alpha)?);
        out.push(radii::r4(p.alpha)?);
        out.push(radii::r5(p.alpha)?);
    }
    if all || cfg.a2.is_some() {
        out.push(radii::r6(p.a2_abs)?);
    }
    out.push(radii::r_inv_sqrt3()?);
    Ok(out)
}

pub fn cmd_table1(_cfg: &RunConfig) -> Result<Vec<(f64, f64)>> {
    radii::table1()
}

pub fn cmd_verify(cfg: &RunConfig) -> SuiteReport {
    suite::run_suite(&cfg.oracle)
}

/// The function an estimate runs on.
pub fn estimate_target(cfg: &RunConfig) -> Result<AnalyticFunction> {
    let entry = zoo::resolve(&cfg.zoo_id, cfg.beta)?;
    Ok(match cfg.target {
        Target::F => entry.f,
        Target::P => entry.p_f_closed,
    })
}

pub fn cmd_estimate(cfg: &RunConfig) -> Result<OracleReport> {
    let f = estimate_target(cfg)?;
    let p = cfg.params();
    match cfg.property {
        Property::Univalence => univalence_radius(&f, &cfg.oracle),
        Property::U => u_radius(&f, &cfg.oracle),
        Property::Starlike => starlike_radius(&f, p.beta, &cfg.oracle),
        Property::GAlpha => g_alpha_radius(&f, p.alpha, &cfg.oracle),
    }
}

pub fn cmd_conjecture(cfg: &RunConfig) -> Result<ConjectureReport> {
    conjecture_sweep(&cfg.oracle)
}

/// One univalent function in the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub id: String,
    pub a2_abs: f64,
    pub univalence: f64,
    pub u: f64,
    pub derivative_zero: f64,
    /// `r6(|a2|)`, the guaranteed `U`-radius for this `|a2|`.
    pub r6_bound: f64,
    /// `sqrt(2) - 1` minus the univalence radius.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureReport {
    pub rows: Vec<SweepRow>,
    pub min_univalence: f64,
    pub min_id: String,
    pub bound: f64,
}

/// Univalence and `U` radii of `P_f` for every univalent catalogue entry.
pub fn conjecture_sweep(oracle: &OracleConfig) -> Result<ConjectureReport> {
    let bound = 2f64.sqrt() - 1.0;
    let mut rows = Vec::new();
    for e in zoo::univalent_catalogue()?
        .into_iter()
        .filter(|e| e.is_univalent())
    {
        let p = &e.p_f_closed;
        let univalence = univalence_radius(p, oracle)?.radius;
        rows.push(SweepRow {
            a2_abs: e.a2_abs(),
            univalence,
            u: u_radius(p, oracle)?.radius,
            derivative_zero: derivative_zero_radius(p, oracle)?.radius,
            r6_bound: radii::r6(e.a2_abs().min(2.0))?.value,
            gap: bound - univalence,
            id: e.id,
        });
    }
    let min = rows
        .iter()
        .min_by(|a, b| a.univalence.total_cmp(&b.univalence))
        .ok_or_else(|| Error::InvalidConfig("empty catalogue".into()))?;
    Ok(ConjectureReport {
        min_univalence: min.univalence,
        min_id: min.id.clone(),
        bound,
        rows,
    })
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

fn opt_sig12(x: Option<f64>) -> Option<f64> {
    x.map(sig12)
}

pub fn render_radii(rows: &[RadiusResult], format: Format) -> String {
    match format {
        Format::Json => {
            let docs: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "formula_id": r.formula_id,
                        "value": sig12(r.value),
                        "residual": opt_sig12(r.residual()),
                        "bracket": [sig12(r.bracket.0), sig12(r.bracket.1)],
                        "iterations": r.iterations,
                        "sign_changes": r.sign_changes,
                    })
                })
                .collect();
            to_json(&json!({ "radii": docs }))
        }
        Format::Csv => {
            let mut s = String::from("formula_id,value,residual\n");
            for r in rows {
                let res = r.residual().unwrap_or(0.0);
                let _ = writeln!(s, "{},{:.6},{:.6}", r.formula_id, r.value, res);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in rows {
                let res = r
                    .residual()
                    .map(|x| format!("{x:.1e}"))
                    .unwrap_or_else(|| "-".into());
                let _ = writeln!(s, "{:<12} {:.6}  residual {res}", r.formula_id, r.value);
            }
            s
        }
    }
}

pub fn render_table1(rows: &[(f64, f64)], format: Format) -> String {
    match format {
        Format::Json => {
            let docs: Vec<_> = rows
                .iter()
                .map(|&(b, r)| json!({ "a2_abs": b, "r6": sig12(r) }))
                .collect();
            to_json(&json!({ "rows": docs }))
        }
        Format::Csv | Format::Text => radii::table1_csv(rows),
    }
}

pub fn render_estimate(report: &OracleReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mut s = String::from("property_id,radius,lower_bound,w1_re,w1_im,w2_re,w2_im\n");
            let w = match report.witness {
                Some((a, b)) => format!("{:.6},{:.6},{:.6},{:.6}", a.re, a.im, b.re, b.im),
                None => ",,,".into(),
            };
            let _ = writeln!(
                s,
                "{},{:.6},{},{w}",
                report.property_id, report.radius, report.lower_bound
            );
            s
        }
        Format::Text => {
            let mut s = format!(
                "{} radius {:.6} (lower bound: {})\n",
                report.property_id, report.radius, report.lower_bound
            );
            if let Some((a, b)) = report.witness {
                let _ = writeln!(s, "witness {a:.6} {b:.6}");
            }
            s
        }
    }
}

impl ConjectureReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let rows: Vec<_> = self
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "id": r.id,
                            "a2_abs": sig12(r.a2_abs),
                            "univalence": sig12(r.univalence),
                            "u": sig12(r.u),
                            "derivative_zero": sig12(r.derivative_zero),
                            "r6_bound": sig12(r.r6_bound),
                            "gap": sig12(r.gap),
                        })
                    })
                    .collect();
                to_json(&json!({
                    "rows": rows,
                    "min_univalence": sig12(self.min_univalence),
                    "min_id": self.min_id,
                    "bound": sig12(self.bound),
                }))
            }
            Format::Csv => {
                let mut s = String::from("id,a2_abs,univalence,u,derivative_zero,r6_bound,gap\n");
                for r in &self.rows {
                    let _ = writeln!(
                        s,
                        "{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
                        r.id, r.a2_abs, r.univalence, r.u, r.derivative_zero, r.r6_bound, r.gap
                    );
                }
                s
            }
            Format::Text => {
                let mut s = format!(
                    "{:<18} {:>8} {:>10} {:>8} {:>8} {:>8} {:>9}\n",
                    "id", "|a2|", "univalence", "u", "F'=0", "r6", "gap"
                );
                for r in &self.rows {
                    let _ = writeln!(
                        s,
                        "{:<18} {:>8.6} {:>10.6} {:>8.6} {:>8.6} {:>8.6} {:>9.6}",
                        r.id, r.a2_abs, r.univalence, r.u, r.derivative_zero, r.r6_bound, r.gap
                    );
                }
                let _ = writeln!(
                    s,
                    "min univalence {:.6} ({}); sqrt(2)-1 = {:.6}",
                    self.min_univalence, self.min_id, self.bound
                );
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Cli;
    use clap::Parser;

    fn cfg(args: &[&str]) -> RunConfig {
        let cli = Cli::try_parse_from(std::iter::once("gft").chain(args.iter().copied())).unwrap();
        RunConfig::from_cli(cli, Some("quick")).unwrap()
    }

    #[test]
    fn radii_selection() {
        let ids = |c: &RunConfig| -> Vec<String> {
            cmd_radii(c)
                .unwrap()
                .into_iter()
                .map(|r| r.formula_id)
                .collect()
        };
        assert_eq!(
            ids(&cfg(&["radii", "--beta", "0.5"])),
            ["r1", "r2", "r_inv_sqrt3"]
        );
        assert_eq!(ids(&cfg(&["radii"])).len(), 7);
        assert!(ids(&cfg(&["radii", "--a2", "1"])).contains(&"r6".to_string()));
    }

    #[test]
    fn radii_text_values() {
        let out = run(&cfg(&["radii", "--beta", "0", "--alpha", "1", "--a2", "0"])).unwrap();
        for v in [
            "0.414214", "0.585786", "0.786151", "0.360794", "0.543689", "0.577350",
        ] {
            assert!(out.body.contains(v), "missing {v} in\n{}", out.body);
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::UnknownZooId("x".into())), 3);
        assert_eq!(
            exit_code(&Error::GridTooCoarse {
                delta: 0.0,
                scale: 1.0
            }),
            4
        );
        assert_eq!(exit_code(&Error::InvalidConfig(String::new())), 2);
    }

    #[test]
    fn estimate_formats() {
        let c = cfg(&["estimate", "--zoo", "koebe", "--property", "u"]);
        let rep = cmd_estimate(&c).unwrap();
        assert!((rep.radius - (2f64.sqrt() - 1.0)).abs() < 2e-3);
        let csv = render_estimate(&rep, Format::Csv);
        assert!(csv.starts_with("property_id,radius,lower_bound,"));
        assert_eq!(csv.lines().count(), 2);
        assert!(render_estimate(&rep, Format::Text).starts_with("u radius 0.41"));
    }

    #[test]
    fn table1_json() {
        let s = render_table1(&radii::table1().unwrap(), Format::Json);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 8);
        assert_eq!(v["rows"][0]["a2_abs"], 0.25);
    }
}
