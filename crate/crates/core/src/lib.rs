//! Sharp Hermitian-Toeplitz determinant bounds for starlike, convex and
//! close-to-convex function families, plus brute-force verification of those
//! bounds over the exactly attainable coefficient body.
//!
//! The crate is organized along the pipeline:
//!
//! * [`series`] — truncated complex power-series arithmetic;
//! * [`classes`] — generator registry, coefficient recurrences, the
//!   coefficient body, and the extremal-function constructors `f1..f7`;
//! * [`toeplitz`] — the determinants `det T_{2,1}`, `det T_{3,1}`,
//!   `det T_{2,2}` and a general `T_{m,n}` determinant;
//! * [`bounds`] — the sharp closed-form bounds with full case dispatch;
//! * [`oracle`] — grid plus Monte-Carlo scans that verify every sampled
//!   determinant against the applicable bounds and measure sharpness.

pub mod bounds;
pub mod classes;
pub mod oracle;
pub mod series;
pub mod toeplitz;

pub use bounds::{
    BoundOutcome, BoundReport, BoundsError, InapplicableReport, Precondition, Quantity, Side,
};
pub use classes::{
    a2a3_convex, a2a3_ctc, a2a3_starlike, canonical_generators, coeffs_convex, coeffs_starlike,
    extremal, phi_named, ClassError, CtcBase, ExtremalId, FamilySpec, MindaGenerator, SamplePoint,
    DEFAULT_ORDER,
};
pub use oracle::{OracleError, OracleReport, ScanConfig, Violation};
pub use series::{SeriesError, TruncatedSeries};
pub use toeplitz::{
    abs_det_t22, det_general, det_t21, det_t22, det_t31, ToeplitzError, ToeplitzSpec,
};
