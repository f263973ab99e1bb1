//! α-harmonic functions on the unit disk: the kernel P_α, the extension
//! P_α[F] of trigonometric boundary data, Wirtinger derivatives, integral
//! means and norm estimates, and Schwarz-type bounds.

pub mod boundary;
pub mod calculus;
pub mod error;
pub mod fourier;
pub mod kernel;
pub mod norms;
pub mod poisson;
pub mod quadrature;
pub mod schwarz;
pub mod special;
pub mod verify;

pub use boundary::BoundaryFunction;
pub use error::{Error, Result};
pub use kernel::DiskPoint;
pub use norms::{DiskFunction, NormIndex, NormReport, Verdict};
pub use poisson::{AlphaHarmonicFunction, Engine};
pub use quadrature::QuadratureConfig;
pub use special::AlphaParam;
