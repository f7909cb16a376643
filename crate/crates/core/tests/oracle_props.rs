use gft_core::operators::u_of;
use gft_core::oracles::{
    circle_max, derivative_zero_radius, starlike_radius, u_radius, univalence_radius, OracleConfig,
};
use gft_core::radii::r1;
use gft_core::zoo::{self, ZooEntry};
use gft_core::AnalyticFunction;

fn entries() -> Vec<ZooEntry> {
    let mut out = zoo::univalent_catalogue().unwrap();
    out.push(zoo::koebe_beta(0.5).unwrap());
    out
}

/// Both `f` and `P_f` for every entry.
fn functions() -> Vec<(String, AnalyticFunction)> {
    entries()
        .into_iter()
        .flat_map(|e| {
            let tag = format!(
                "{}{}",
                e.id,
                e.beta.map(|b| format!("({b})")).unwrap_or_default()
            );
            [
                (format!("{tag}/f"), e.f),
                (format!("{tag}/P"), e.p_f_closed),
            ]
        })
        .collect()
}

fn quick() -> OracleConfig {
    OracleConfig::default().scaled(0.25)
}

#[test]
fn univalence_bounded_by_first_critical_point() {
    let cfg = quick();
    for (id, f) in functions() {
        let uni = univalence_radius(&f, &cfg).unwrap();
        let dz = derivative_zero_radius(&f, &cfg).unwrap();
        assert!(
            uni.radius <= dz.radius + cfg.refine_tol,
            "{id}: {} > {}",
            uni.radius,
            dz.radius
        );
    }
}

#[test]
fn starlike_disk_is_inside_univalence_disk() {
    let cfg = quick();
    for (id, f) in functions() {
        let st = starlike_radius(&f, 0.0, &cfg).unwrap();
        let uni = univalence_radius(&f, &cfg).unwrap();
        assert!(
            st.radius <= uni.radius + cfg.refine_tol,
            "{id}: {} > {}",
            st.radius,
            uni.radius
        );
    }
}

#[test]
fn u_radius_is_sharp_for_extremal_family() {
    let cfg = OracleConfig::default();
    for beta in [0.0, 0.25, 0.5, 0.75] {
        let f = zoo::koebe_beta(beta).unwrap().p_f_closed;
        let rep = u_radius(&f, &cfg).unwrap();
        let want = r1(beta).unwrap().value;
        assert!(
            (rep.radius - want).abs() < 2e-3,
            "beta={beta}: {} vs {want}",
            rep.radius
        );
    }
}

fn u_max_on_circle(f: &AnalyticFunction, r: f64, cfg: &OracleConfig) -> f64 {
    circle_max(r, cfg.n_angular, cfg.boundary_refine, |z| {
        Ok(u_of(f, z)?.norm())
    })
    .unwrap()
    .1
}

#[test]
fn bracketed_u_reports_hold_then_fail() {
    let cfg = quick();
    for (id, f) in functions() {
        let rep = u_radius(&f, &cfg).unwrap();
        if rep.witness.is_none() {
            continue;
        }
        assert!(rep.lower_bound);
        assert!(u_max_on_circle(&f, rep.radius, &cfg) < 1.0, "{id}");
        let beyond = rep.radius + 2.0 * cfg.refine_tol;
        assert!(u_max_on_circle(&f, beyond, &cfg) >= 1.0, "{id} at {beyond}");
        let (w, _) = rep.witness.unwrap();
        assert!(u_of(&f, w).unwrap().norm() >= 1.0, "{id}: witness {w}");
    }
}

#[test]
fn univalence_witnesses_reproduce() {
    let cfg = quick();
    for (id, f) in functions() {
        let rep = univalence_radius(&f, &cfg).unwrap();
        let Some((a, b)) = rep.witness else { continue };
        if (a - b).norm() < 1e-12 {
            // critical point
            assert!(f.derivative(a).unwrap().norm() < 1e-6, "{id}: F'({a})");
        } else {
            let (fa, fb) = (f.value(a).unwrap(), f.value(b).unwrap());
            assert!((fa - fb).norm() < 0.1 * (a - b).norm(), "{id}: {a} {b}");
        }
    }
}

#[test]
fn oracles_are_deterministic() {
    let cfg = quick();
    let f = zoo::example_f1().unwrap().p_f_closed;
    let a = serde_json::to_string(&univalence_radius(&f, &cfg).unwrap()).unwrap();
    let b = serde_json::to_string(&univalence_radius(&f, &cfg).unwrap()).unwrap();
    assert_eq!(a, b);
}
