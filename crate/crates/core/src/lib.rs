//! Tracy–Widom distributions, finite-N Laguerre kernel machinery and Monte
//! Carlo simulation of the largest eigenvalue of white Wishart matrices.
//!
//! The crate is organised by subsystem:
//!
//! * [`specfun`]: Airy functions, log-gamma, weighted Laguerre functions and
//!   the Laguerre/Airy kernels.
//! * [`tw`]: the Hastings–McLeod solution of Painlevé II, the TW1/TW2
//!   distribution functions and a Fredholm-determinant cross-check.
//! * [`ensembles`]: centering/scaling sequences and top-k eigenvalue
//!   sampling (dense and bidiagonal paths).
//! * [`verify`]: identity checks, the closed-form `c_phi` constant and
//!   convergence diagnostics along refinement schedules.

pub mod ensembles;
mod error;
pub mod quad;
pub mod specfun;
pub mod tw;
pub mod verify;

pub use ensembles::{
    scaling, EigenSample, EmpiricalCdf, Field, SampleConfig, SamplePath, ScalingPair, Variant,
};
pub use error::{Error, Result};
pub use specfun::{Convention, KernelEval, ShapeParams};
pub use tw::{PainleveSolution, TwCdf, TwKind};
pub use verify::{ConvergenceReport, CphiResult, Verdict};
