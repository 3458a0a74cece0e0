//! Arithmetic statistics of genus-one models over ℤ.
//!
//! Binary quartics `z² = f(x, y)`, ternary cubics and pairs of quaternary
//! quadrics: invariants and Jacobians, solubility over ℝ and every ℚ_p, bounded
//! rational point search, exact local densities and reproducible sampling
//! experiments.

pub mod arith;
pub mod density;
pub mod error;
pub mod invariants;
pub mod lab;
pub mod ledger;
pub mod local;
pub mod models;
pub mod rational_points;
pub(crate) mod serde_util;

pub use error::{Error, Result};
pub use models::{GenusOneModel, ModelKind, ProjectivePoint};
