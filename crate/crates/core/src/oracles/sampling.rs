//! Radius search and circle-sampling primitives shared by the oracles.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::Result;

/// Step of the coarse upward scan preceding bisection.
pub const COARSE_STEP: f64 = 0.01;

// Angular increments of the winding integrand above this are subdivided.
const MAX_ARG_STEP: f64 = PI / 4.0;
const MAX_SUBDIVISION_DEPTH: u32 = 16;

pub type Witness = (Complex64, Complex64);

/// Outcome of a property test on one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Probe {
    Pass,
    Fail(Option<Witness>),
}

/// Result of a radius search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Search {
    pub radius: f64,
    pub witness: Option<Witness>,
    /// A failing radius was bracketed (as opposed to hitting the cap).
    pub bracketed: bool,
}

/// Largest passing radius in `(0, r_max]`.
///
/// Scans upward in steps of [`COARSE_STEP`] until the first failure, then
/// bisects the last pass/first fail bracket down to `tol`. The property is
/// not assumed monotone beyond that bracket.
pub fn search_radius(
    r_max: f64,
    tol: f64,
    mut probe: impl FnMut(f64) -> Result<Probe>,
) -> Result<Search> {
    let mut lo = 0.0;
    let mut failing = None;
    let mut k = 1;
    loop {
        let r = (k as f64 * COARSE_STEP).min(r_max);
        if let Probe::Fail(w) = probe(r)? {
            failing = Some((r, w));
            break;
        }
        lo = r;
        if r >= r_max {
            break;
        }
        k += 1;
    }
    let Some((mut hi, mut witness)) = failing else {
        return Ok(Search {
            radius: lo,
            witness: None,
            bracketed: false,
        });
    };
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        match probe(mid)? {
            Probe::Pass => lo = mid,
            Probe::Fail(w) => {
                hi = mid;
                witness = w;
            }
        }
    }
    Ok(Search {
        radius: lo,
        witness,
        bracketed: true,
    })
}

/// Points `r e^{2 pi i k/n}` for `k = 0..n`.
pub fn circle(r: f64, n: usize) -> impl Iterator<Item = (f64, Complex64)> {
    (0..n).map(move |k| {
        let t = TAU * k as f64 / n as f64;
        (t, Complex64::from_polar(r, t))
    })
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
pub fn golden_section_max(
    mut f: impl FnMut(f64) -> Result<f64>,
    a: f64,
    b: f64,
    iterations: usize,
) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a, b);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    for _ in 0..iterations {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc > fd { (c, fc) } else { (d, fd) })
}

/// Maximum of `score(r e^{i theta})` over the circle: sampled at `n` angles,
/// then refined by golden section between the neighbours of the best sample.
pub fn circle_max(
    r: f64,
    n: usize,
    refine: usize,
    mut score: impl FnMut(Complex64) -> Result<f64>,
) -> Result<(Complex64, f64)> {
    let mut best = (0.0, Complex64::new(r, 0.0), f64::NEG_INFINITY);
    for (t, z) in circle(r, n) {
        let v = score(z)?;
        if v.is_nan() {
            return Ok((z, f64::NAN));
        }
        if v > best.2 {
            best = (t, z, v);
        }
    }
    let step = TAU / n as f64;
    let (t, v) = golden_section_max(
        |t| score(Complex64::from_polar(r, t)),
        best.0 - step,
        best.0 + step,
        refine,
    )?;
    Ok(if v > best.2 {
        (Complex64::from_polar(r, t), v)
    } else {
        (best.1, best.2)
    })
}

/// Winding number of `g(r e^{i theta})` about the origin, `theta` in
/// `[0, 2 pi]`. `None` when `g` vanishes or is not finite at a sample.
pub fn winding_number(
    mut g: impl FnMut(Complex64) -> Result<Complex64>,
    r: f64,
    n: usize,
) -> Result<Option<i64>> {
    let step = TAU / n as f64;
    let first = g(Complex64::new(r, 0.0))?;
    if !usable(first) {
        return Ok(None);
    }
    let mut total = 0.0;
    let mut prev = first;
    for k in 1..=n {
        let t1 = step * k as f64;
        let cur = if k == n {
            first
        } else {
            g(Complex64::from_polar(r, t1))?
        };
        if !usable(cur) {
            return Ok(None);
        }
        match arg_increment(&mut g, r, t1 - step, t1, prev, cur, 0)? {
            Some(d) => total += d,
            None => return Ok(None),
        }
        prev = cur;
    }
    Ok(Some((total / TAU).round() as i64))
}

fn usable(w: Complex64) -> bool {
    w.is_finite() && w.norm() > 0.0
}

fn arg_increment(
    g: &mut impl FnMut(Complex64) -> Result<Complex64>,
    r: f64,
    t0: f64,
    t1: f64,
    w0: Complex64,
    w1: Complex64,
    depth: u32,
) -> Result<Option<f64>> {
    let d = (w1 / w0).arg();
    if d.abs() <= MAX_ARG_STEP || depth >= MAX_SUBDIVISION_DEPTH {
        return Ok(Some(d));
    }
    let tm = 0.5 * (t0 + t1);
    let wm = g(Complex64::from_polar(r, tm))?;
    if !usable(wm) {
        return Ok(None);
    }
    let left = arg_increment(g, r, t0, tm, w0, wm, depth + 1)?;
    let right = arg_increment(g, r, tm, t1, wm, w1, depth + 1)?;
    Ok(left.zip(right).map(|(a, b)| a + b))
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Parameters `(s, t)` where segments `p0p1` and `q0q1` cross properly.
pub fn segment_crossing(
    p0: Complex64,
    p1: Complex64,
    q0: Complex64,
    q1: Complex64,
) -> Option<(f64, f64)> {
    let d1 = cross(q0, q1, p0);
    let d2 = cross(q0, q1, p1);
    let d3 = cross(p0, p1, q0);
    let d4 = cross(p0, p1, q1);
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        Some((d1 / (d1 - d2), d3 / (d3 - d4)))
    } else {
        None
    }
}

/// First pair of non-adjacent crossing edges of the closed polygon, as
/// `(i, s, j, t)`: edge `i` at parameter `s` meets edge `j` at `t`.
pub fn polygon_self_crossing(vertices: &[Complex64]) -> Option<(usize, f64, usize, f64)> {
    let n = vertices.len();
    if n < 4 {
        return None;
    }
    let edge = |i: usize| (vertices[i], vertices[(i + 1) % n]);
    // Bounding boxes prune most pairs.
    let boxes: Vec<[f64; 4]> = (0..n)
        .map(|i| {
            let (a, b) = edge(i);
            [
                a.re.min(b.re),
                a.re.max(b.re),
                a.im.min(b.im),
                a.im.max(b.im),
            ]
        })
        .collect();
    for i in 0..n {
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (bi, bj) = (&boxes[i], &boxes[j]);
            if bi[1] < bj[0] || bj[1] < bi[0] || bi[3] < bj[2] || bj[3] < bi[2] {
                continue;
            }
            let (p0, p1) = edge(i);
            let (q0, q1) = edge(j);
            if let Some((s, t)) = segment_crossing(p0, p1, q0, q1) {
                return Some((i, s, j, t));
            }
        }
    }
    None
}
