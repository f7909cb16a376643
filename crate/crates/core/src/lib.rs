//! Analytic functions on the unit disk and the operator `P_f = f/f'`.
//!
//! * [`series`]: truncated complex power series.
//! * [`operators`]: `P_f`, `U_F`, logarithmic coefficients, the map `T_f`
//!   and the W-plane operators.
//! * [`zoo`]: closed-form test functions with their known class memberships.
//! * [`radii`]: closed-form and polynomial-root radii.
//! * [`oracles`]: independent sampling estimates of the same radii.
//! * [`criteria`]: coefficient sums and bounds.

pub mod criteria;
pub mod error;
pub mod operators;
pub mod oracles;
pub mod radii;
pub mod series;
pub mod zoo;

pub use error::{Error, Result};
pub use operators::AnalyticFunction;
pub use series::{ComplexValue, PowerSeries};
