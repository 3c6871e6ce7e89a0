//! Special functions used throughout the crate.

mod airy;
mod gamma;
mod kernel;
mod laguerre;
mod shape;

pub(crate) use airy::airy_pair;
pub use airy::{airy_ai, airy_ai_prime, AI_PRIME_ZERO, AI_ZERO};
pub use gamma::{gamma, ln_factorial, ln_gamma};
pub(crate) use kernel::airy_kernel_from_values;
pub use kernel::{
    airy_kernel, airy_kernel_integral, big_f_n, big_f_n_scaled, laguerre_kernel, phi_psi,
    phi_psi_tau, KernelEval, AIRY_KERNEL_SWITCH, KERNEL_QUAD_TOL,
};
pub use laguerre::weighted_laguerre_phi;
pub use shape::{Convention, ShapeParams};
