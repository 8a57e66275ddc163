//! Exact symbolic verification of lightlike hypersurface geometry over
//! almost paracontact metric manifolds.
//!
//! The crate builds every geometric object of a coordinate-chart instance
//! with exact rational-function arithmetic: metrics, connections and
//! curvature of the ambient manifold; the radical, screen and transversal
//! decomposition of a degenerate hypersurface; the induced Gauss-Weingarten
//! data; and the tangential decomposition of the structure tensor. On top
//! of those it mechanically verifies the defining axioms and the derived
//! identities of the theory and reports each one as pass/fail with an
//! exact residual and a rational witness point for failures.

pub mod analysis;
pub mod hypersurface;
pub mod paracontact;
pub mod report;
pub mod numeric;
pub mod scalar;
pub mod tensor;

pub use analysis::{Classification, SurfaceAnalysis, TangentialStructure};
pub use hypersurface::{HypersurfaceEmbedding, InducedGeometry, LightlikeSurface};
pub use paracontact::{AmbientStructure, Epsilon};
pub use report::{AxiomReport, CheckRecord, CheckStatus, WitnessSearcher};
pub use scalar::{Chart, ExactMatrix, ScalarExpr};
pub use tensor::{CurvatureTensor, MetricTensor};
