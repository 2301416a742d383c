//! Chord lengths between random points on n-spheres: distribution,
//! moments, samplers, Fisher information, radius estimation and
//! characteristic functions.
//!
//! Everything numeric is generic over [`Scalar`] (f32 or f64). The aliases
//! below fix the common double-precision instantiations.

pub mod charfun;
pub mod chord;
pub mod error;
pub mod format;
pub mod geometry;
pub mod inference;
pub mod optimize;
pub mod sampling;
pub mod scalar;
pub mod specfun;

pub use charfun::ComplexValue;
pub use chord::{ChordDistribution, Mode};
pub use error::{Error, Result};
pub use inference::{EstimationReport, GapRow, SimulationSummary};
pub use sampling::{RngState, SampleBatch, SamplerKind};
pub use scalar::Scalar;
pub use specfun::{Quadrature, QuadratureSpec};

pub type ChordDistributionF64 = ChordDistribution<f64>;
pub type ChordDistributionF32 = ChordDistribution<f32>;
pub type SampleBatchF64 = SampleBatch<f64>;
pub type SampleBatchF32 = SampleBatch<f32>;
pub type EstimationReportF64 = EstimationReport<f64>;
pub type GapRowF64 = GapRow<f64>;
pub type QuadratureSpecF64 = QuadratureSpec<f64>;
pub type Complex64 = ComplexValue<f64>;
pub type Complex32 = ComplexValue<f32>;
