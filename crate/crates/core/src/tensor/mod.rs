//! Coordinate-chart tensor calculus: metric, Levi-Civita connection,
//! curvature, Lie brackets.

pub mod curvature;
pub mod fields;
pub mod metric;

pub use curvature::CurvatureTensor;
pub use fields::{lie_bracket, OneForm, VectorField};
pub use metric::{MetricError, MetricTensor};
