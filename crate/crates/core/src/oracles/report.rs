use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::operators::DEFAULT_EXCLUSION_EPS;

/// Sampling resolution for the disk oracles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    pub n_radial: usize,
    pub n_angular: usize,
    /// Final bracket width of the radius bisection.
    pub refine_tol: f64,
    /// Golden-section steps on the angle around the sampled extremum.
    pub boundary_refine: usize,
    pub exclusion_eps: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            n_radial: 60,
            n_angular: 720,
            refine_tol: 1e-4,
            boundary_refine: 40,
            exclusion_eps: DEFAULT_EXCLUSION_EPS,
        }
    }
}

impl OracleConfig {
    /// Scales both grid densities, keeping `n_angular >= 64`.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            n_radial: ((self.n_radial as f64 * factor).round() as usize).max(2),
            n_angular: ((self.n_angular as f64 * factor).round() as usize).max(64),
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_angular < 64 {
            return Err(Error::InvalidConfig(format!(
                "n_angular must be at least 64, got {}",
                self.n_angular
            )));
        }
        if self.n_radial < 1 {
            return Err(Error::InvalidConfig("n_radial must be positive".into()));
        }
        if !(self.refine_tol >= 1e-6 && self.refine_tol < 0.01) {
            return Err(Error::InvalidConfig(format!(
                "refine_tol must lie in [1e-6, 1e-2), got {}",
                self.refine_tol
            )));
        }
        if !(self.exclusion_eps > 0.0 && self.exclusion_eps < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "exclusion_eps must lie in (0, 0.5), got {}",
                self.exclusion_eps
            )));
        }
        Ok(())
    }
}

/// Radius estimate from an oracle run.
///
/// `witness` holds two points that violate the property just beyond the
/// radius; for pointwise properties both entries are the same point.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub radius: f64,
    pub property_id: String,
    pub witness: Option<(Complex64, Complex64)>,
    pub grid: OracleConfig,
    /// The radius is certified only up to grid resolution, or no violation
    /// was found below the search cap.
    pub lower_bound: bool,
}

/// Rounds to 12 significant digits for stable JSON output.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

impl Serialize for OracleReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OracleReport", 5)?;
        st.serialize_field("property_id", &self.property_id)?;
        st.serialize_field("radius", &sig12(self.radius))?;
        st.serialize_field("lower_bound", &self.lower_bound)?;
        let witness = self
            .witness
            .map(|(a, b)| [sig12(a.re), sig12(a.im), sig12(b.re), sig12(b.im)]);
        st.serialize_field("witness", &witness)?;
        st.serialize_field("grid", &self.grid)?;
        st.end()
    }
}
