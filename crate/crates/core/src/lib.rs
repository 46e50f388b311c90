//! Multiscale flat norm minimizers of region boundaries on pixel grids, and
//! the reach / curvature measurements used to check them.
//!
//! The crate is split into four layers:
//!
//! - [`geometry`]: points, closed polylines, pixel masks, normal offsets,
//!   tangents, Menger curvature, arc-length resampling, signed distance.
//! - [`reach`]: reach estimators for closed curves (Federer quotient,
//!   brute-force nearest-point oracle, normal-map injectivity radius) and the
//!   reach-realizing double-normal pair.
//! - [`flatnorm`]: the L1TV functional `Per(Σ) + λ·Area(Σ Δ Ω)` minimized
//!   exactly by a graph min-cut, boundary extraction and mass bookkeeping.
//! - [`bound`]: the comparison construction behind the lower bound
//!   `reach ≥ Ĉ/λ` and the optimized constant `Ĉ ≈ 0.2217`.
//!
//! [`shapes`] holds analytic test curves (circle, ellipse, stadium, dumbbell)
//! used throughout the test suites.

pub mod bound;
mod error;
pub mod flatnorm;
pub mod geometry;
pub mod reach;
pub mod shapes;

pub use error::{Error, Result};
pub use geometry::{ClosedCurve, GridMask, Orientation, Point};
