//! Brute-force radius estimators by disk and circle sampling.
//!
//! Each oracle searches for the largest `r` such that a property holds on
//! `|z| <= r`, independently of the closed-form radii in
//! [`radii`](crate::radii). Properties that are extremal on the boundary
//! (`|U_F|`, `Re(zF'/F)`, `Re(1 + zf''/f')`) are sampled on `|z| = r` only,
//! after an argument-principle check that the sampled quantity is analytic
//! inside.
//!
//! Searches stop short of every known singularity or zero by
//! `exclusion_eps`, and of the series trust radius for series-only inputs.

mod report;
mod sampling;

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::{u_of_with_eps, AnalyticFunction};

pub use report::{sig12, OracleConfig, OracleReport};
pub use sampling::{
    circle_max, golden_section_max, polygon_self_crossing, search_radius, winding_number, Probe,
    Search, Witness, COARSE_STEP,
};

/// Newton steps per seed when locating zeros of `F'`.
pub const NEWTON_STEPS: usize = 30;
/// Convergence threshold on the Newton step.
pub const NEWTON_TOL: f64 = 1e-12;
/// Seed grid for zeros of `F'`: rings x rays.
pub const NEWTON_SEED_GRID: (usize, usize) = (12, 36);
/// Grid value of `|F'|` below which a missed zero is reported.
const NEWTON_MISS_THRESHOLD: f64 = 1e-6;

fn search_cap(points: &[Complex64], f: &AnalyticFunction, cfg: &OracleConfig) -> f64 {
    let mut cap = 1.0 - cfg.refine_tol;
    for p in points {
        let m = p.norm();
        if m > 0.0 {
            cap = cap.min(m - cfg.exclusion_eps);
        }
    }
    if !f.has_closed_form() {
        cap = cap.min(f.trust_radius());
    }
    cap
}

fn report(property_id: &str, search: Search, cfg: &OracleConfig) -> OracleReport {
    OracleReport {
        radius: search.radius,
        property_id: property_id.into(),
        witness: search.witness,
        grid: *cfg,
        lower_bound: true,
    }
}

fn merged(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().chain(b).copied().collect()
}

/// Largest `r` such that `F` is univalent on `|z| <= r`.
///
/// At each radius: the winding number of `F'` on the circle must vanish
/// (no critical point inside); the images of an `n_radial x n_angular` polar
/// grid must be pairwise separated by `0.25 * spacing * min|F'|`; and the
/// image of the circle must be a simple closed curve.
pub fn univalence_radius(f: &AnalyticFunction, cfg: &OracleConfig) -> Result<OracleReport> {
    cfg.validate()?;
    let cap = search_cap(f.singularities(), f, cfg);
    let search = search_radius(cap, cfg.refine_tol, |r| univalence_probe(f, r, cfg))?;
    Ok(report("univalence", search, cfg))
}

fn univalence_probe(f: &AnalyticFunction, r: f64, cfg: &OracleConfig) -> Result<Probe> {
    match winding_number(|z| f.derivative(z), r, cfg.n_angular)? {
        Some(0) => {}
        _ => return Ok(Probe::Fail(Some(locate_critical_point(f, r, cfg)?))),
    }
    if let Some(w) = grid_collision(f, r, cfg)? {
        return Ok(Probe::Fail(Some(w)));
    }
    if let Some(w) = boundary_crossing(f, r, cfg.n_angular)? {
        return Ok(Probe::Fail(Some(w)));
    }
    Ok(Probe::Pass)
}

/// Witness for a failed winding test: Newton on `F'` from the polar-grid
/// point of smallest `|F'|`.
fn locate_critical_point(f: &AnalyticFunction, r: f64, cfg: &OracleConfig) -> Result<Witness> {
    let mut best = (Complex64::new(0.0, 0.0), f64::INFINITY);
    for z in polar_grid(r, cfg.n_radial, cfg.n_angular) {
        let d = f.derivative(z)?.norm();
        if d < best.1 {
            best = (z, d);
        }
    }
    let z = match newton_on_derivative(f, best.0) {
        Some(root) if root.norm() <= r * (1.0 + 1e-9) => root,
        _ => best.0,
    };
    Ok((z, z))
}

fn polar_grid(r: f64, n_radial: usize, n_angular: usize) -> impl Iterator<Item = Complex64> {
    std::iter::once(Complex64::new(0.0, 0.0)).chain((1..=n_radial).flat_map(move |k| {
        let rho = r * k as f64 / n_radial as f64;
        (0..n_angular).map(move |j| Complex64::from_polar(rho, TAU * j as f64 / n_angular as f64))
    }))
}

/// Pairwise distinctness of the grid images, by spatial hashing with cell
/// size equal to the threshold.
fn grid_collision(f: &AnalyticFunction, r: f64, cfg: &OracleConfig) -> Result<Option<Witness>> {
    let mut points = Vec::with_capacity(1 + cfg.n_radial * cfg.n_angular);
    let mut min_d = f64::INFINITY;
    let mut scale: f64 = 0.0;
    for z in polar_grid(r, cfg.n_radial, cfg.n_angular) {
        let w = f.value(z)?;
        let d = f.derivative(z)?.norm();
        if !w.is_finite() || !d.is_finite() || d == 0.0 {
            return Ok(Some((z, z)));
        }
        min_d = min_d.min(d);
        scale = scale.max(w.norm());
        points.push((z, w));
    }
    let ring = r / cfg.n_radial as f64;
    let spacing = ring.min(2.0 * ring * (PI / cfg.n_angular as f64).sin());
    let delta = 0.25 * spacing * min_d;
    if delta < 64.0 * f64::EPSILON * scale.max(1.0) {
        return Err(Error::GridTooCoarse { delta, scale });
    }
    let cell = |w: Complex64| ((w.re / delta).floor() as i64, (w.im / delta).floor() as i64);
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::with_capacity(points.len());
    for (i, &(z, w)) in points.iter().enumerate() {
        let (cx, cy) = cell(w);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(bucket) = buckets.get(&(cx + dx, cy + dy)) {
                    for &j in bucket {
                        if (points[j].1 - w).norm() < delta {
                            return Ok(Some((points[j].0, z)));
                        }
                    }
                }
            }
        }
        buckets.entry((cx, cy)).or_default().push(i);
    }
    Ok(None)
}

/// Self-crossing of the sampled image of `|z| = r`, returned as the two
/// preimage points interpolated in angle.
fn boundary_crossing(f: &AnalyticFunction, r: f64, n: usize) -> Result<Option<Witness>> {
    let image = sampling::circle(r, n)
        .map(|(_, z)| f.value(z))
        .collect::<Result<Vec<_>>>()?;
    Ok(polygon_self_crossing(&image).map(|(i, s, j, t)| {
        let step = TAU / n as f64;
        (
            Complex64::from_polar(r, step * (i as f64 + s)),
            Complex64::from_polar(r, step * (j as f64 + t)),
        )
    }))
}

/// `F` winds exactly once about the origin on `|z| = r`.
fn single_zero_inside(f: &AnalyticFunction, r: f64, n: usize) -> Result<bool> {
    Ok(winding_number(|z| f.value(z), r, n)? == Some(1))
}

/// Largest `r` with `max |U_F| < 1` on `|z| = r`.
pub fn u_radius(f: &AnalyticFunction, cfg: &OracleConfig) -> Result<OracleReport> {
    cfg.validate()?;
    let excluded = merged(f.singularities(), f.zeros());
    let cap = search_cap(&excluded, f, cfg);
    let search = search_radius(cap, cfg.refine_tol, |r| {
        if !single_zero_inside(f, r, cfg.n_angular)? {
            return Ok(Probe::Fail(None));
        }
        let (z, m) = circle_max(r, cfg.n_angular, cfg.boundary_refine, |z| {
            Ok(u_of_with_eps(f, z, cfg.exclusion_eps)?.norm())
        })?;
        Ok(if m < 1.0 {
            Probe::Pass
        } else {
            Probe::Fail(Some((z, z)))
        })
    })?;
    Ok(report("u", search, cfg))
}

/// `Re(z F'(z)/F(z))`.
pub fn starlike_quantity(f: &AnalyticFunction, z: Complex64) -> Result<f64> {
    Ok((z * f.derivative(z)? / f.value(z)?).re)
}

/// Largest `r` with `min Re(zF'/F) > beta` on `|z| = r`.
pub fn starlike_radius(
    f: &AnalyticFunction,
    beta: f64,
    cfg: &OracleConfig,
) -> Result<OracleReport> {
    crate::radii::check_beta(beta)?;
    cfg.validate()?;
    let excluded = merged(f.singularities(), f.zeros());
    let cap = search_cap(&excluded, f, cfg);
    let search = search_radius(cap, cfg.refine_tol, |r| {
        if !single_zero_inside(f, r, cfg.n_angular)? {
            return Ok(Probe::Fail(None));
        }
        let (z, m) = circle_max(r, cfg.n_angular, cfg.boundary_refine, |z| {
            f.check_clear(z, cfg.exclusion_eps)?;
            Ok(-starlike_quantity(f, z)?)
        })?;
        Ok(if -m > beta {
            Probe::Pass
        } else {
            Probe::Fail(Some((z, z)))
        })
    })?;
    Ok(report("starlike", search, cfg))
}

/// `Re(1 + z f''(z)/f'(z))`.
pub fn g_quantity(f: &AnalyticFunction, z: Complex64) -> Result<f64> {
    Ok((1.0 + z * f.second_derivative(z)? / f.derivative(z)?).re)
}

/// Largest `r` with `max Re(1 + z f''/f') < 1 + alpha/2` on `|z| = r`,
/// with `f'` zero-free inside.
pub fn g_alpha_radius(
    f: &AnalyticFunction,
    alpha: f64,
    cfg: &OracleConfig,
) -> Result<OracleReport> {
    crate::radii::check_alpha(alpha)?;
    cfg.validate()?;
    let excluded = merged(f.singularities(), f.critical_points());
    let cap = search_cap(&excluded, f, cfg);
    let bound = 1.0 + alpha / 2.0;
    let search = search_radius(cap, cfg.refine_tol, |r| {
        if winding_number(|z| f.derivative(z), r, cfg.n_angular)? != Some(0) {
            return Ok(Probe::Fail(None));
        }
        let (z, m) = circle_max(r, cfg.n_angular, cfg.boundary_refine, |z| {
            for &p in excluded.iter() {
                if (z - p).norm() < cfg.exclusion_eps {
                    return Err(Error::NearSingularity {
                        z,
                        near: p,
                        eps: cfg.exclusion_eps,
                    });
                }
            }
            g_quantity(f, z)
        })?;
        Ok(if m < bound {
            Probe::Pass
        } else {
            Probe::Fail(Some((z, z)))
        })
    })?;
    Ok(report("g-alpha", search, cfg))
}

fn newton_on_derivative(f: &AnalyticFunction, seed: Complex64) -> Option<Complex64> {
    let mut z = seed;
    for _ in 0..NEWTON_STEPS {
        let d1 = f.derivative(z).ok()?;
        let d2 = f.second_derivative(z).ok()?;
        let step = d1 / d2;
        if !step.is_finite() {
            return None;
        }
        z -= step;
        if z.norm() > 4.0 {
            return None;
        }
        if step.norm() < NEWTON_TOL * z.norm().max(1.0) {
            return Some(z);
        }
    }
    None
}

/// Smallest modulus of a zero of `F'` in the open unit disk, by Newton's
/// method from a 12 x 36 polar seed grid. Reports 1 with `lower_bound` when
/// no zero is found.
pub fn derivative_zero_radius(f: &AnalyticFunction, cfg: &OracleConfig) -> Result<OracleReport> {
    cfg.validate()?;
    let (rings, rays) = NEWTON_SEED_GRID;
    let seed_cap = if f.has_closed_form() {
        1.0
    } else {
        f.trust_radius()
    };
    let mut best: Option<Complex64> = None;
    let mut grid_min = (f64::INFINITY, Complex64::new(0.0, 0.0));
    for i in 0..rings {
        let rho = seed_cap * (i as f64 + 0.5) / rings as f64;
        for j in 0..rays {
            let seed = Complex64::from_polar(rho, TAU * j as f64 / rays as f64);
            if f.check_clear(seed, cfg.exclusion_eps).is_err()
                || f.singularities()
                    .iter()
                    .any(|p| (seed - p).norm() < cfg.exclusion_eps)
            {
                continue;
            }
            if let Ok(d) = f.derivative(seed) {
                if d.norm() < grid_min.0 {
                    grid_min = (d.norm(), seed);
                }
            }
            if let Some(root) = newton_on_derivative(f, seed) {
                if root.norm() < 1.0 && best.is_none_or(|b| root.norm() < b.norm()) {
                    best = Some(root);
                }
            }
        }
    }
    match best {
        Some(root) => Ok(OracleReport {
            radius: root.norm(),
            property_id: "derivative-zero".into(),
            witness: Some((root, root)),
            grid: *cfg,
            lower_bound: false,
        }),
        None if grid_min.0 < NEWTON_MISS_THRESHOLD => Err(Error::NewtonDiverged {
            min_abs: grid_min.0,
            at: grid_min.1,
        }),
        None => Ok(OracleReport {
            radius: 1.0,
            property_id: "derivative-zero".into(),
            witness: None,
            grid: *cfg,
            lower_bound: true,
        }),
    }
}
