//! Geometry of tangent bundles carrying a parallelization of both the horizontal
//! and the vertical distributions.

// NaN residuals must fail, so `!(r < tol)` is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calculus;
pub mod connections;
pub mod error;
pub mod fields;
pub mod jet;
pub mod linalg;
pub mod metric;
pub mod scalar;
pub mod space;
pub mod tensor;
pub mod curvature;
pub mod wtensor;
pub mod classify;
pub mod report;
pub mod tolerances;
pub mod field_theory;
pub mod suites;

pub use error::{GeomError, Result};
pub use classify::{classify, ClassificationReport, RegimeLabel};
pub use connections::ConnKind;
pub use report::{CheckRecord, ReportDocument, Status, Summary};
pub use space::{builtin_space, lookup_space, SpaceDefinition, SpacePoint};
pub use suites::{run_suite, Suite};
pub use tolerances::Tolerances;
