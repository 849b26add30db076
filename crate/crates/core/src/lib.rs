//! Numerical laboratory for the Kakeya (Nikodym) maximal operator on
//! variable-exponent Lebesgue spaces.
//!
//! The crate is organised around five building blocks:
//!
//! - [`field`]: cell-centered scalar fields on uniform 2D grids, quadrature,
//!   rectangle averages, and grid file I/O,
//! - [`exponent`]: exponent functions `p(·)` together with the log-Hölder
//!   regularity constants attached to them,
//! - [`vnorm`]: the modular `ρ_{p(·)}` and the Luxemburg norm of
//!   `L^{p(·)}(ℝ²)`, with Hölder-inequality and duality helpers,
//! - [`maximal`]: the Hardy–Littlewood and Kakeya maximal operators (a
//!   reference oracle plus faster engines) and the dyadic linearization `T_k`,
//! - [`lab`]: scaling experiments that measure how the Kakeya operator norm
//!   grows with the eccentricity `N` for constant and non-constant exponents.
//!
//! All operators act on compactly supported functions sampled on a finite
//! window; fields are zero outside their domain.

pub mod error;
pub mod exponent;
pub mod field;
pub mod geometry;
pub mod gridio;
pub mod lab;
pub mod maximal;
pub mod parallel;
pub mod vnorm;

pub use error::{CoreError, Result};
pub use exponent::{ExponentField, ExponentKind, RegularityReport};
pub use field::{DomainSpec, SamplingRule, ScalarField2D};
pub use geometry::{Point, RectangleSpec, Region};
pub use maximal::{BasisDiscretization, DyadicMesh, LinearizationPlan};
pub use vnorm::ModularValue;
