//! Centering/scaling sequences and Monte Carlo sampling of the top
//! eigenvalues of white Wishart matrices.

pub mod dump;
mod empirical;
pub mod rng;
mod sample;
mod scaling;

pub use empirical::{
    ks_critical_one_sample, ks_critical_two_sample, ks_two_sample, ks_uniform, EmpiricalCdf,
};
pub use sample::{
    bidiagonal_top_k, data_top_k, dense_top_k, sample_batch, sample_top_k, EigenSample, Field,
    SampleConfig, SamplePath,
};
pub use scaling::{scaling, ScalingPair, Variant};
