//! Checks of exact identities, the closed-form `c_φ` constant and the
//! convergence of the rescaled Laguerre quantities to their Airy limits.

mod convergence;
mod cphi;
mod identities;
mod report;

pub use convergence::{
    f_n_convergence, kernel_convergence, kernel_error_field, pair_grid, phi_derivative_convergence,
    phi_tau_convergence, phi_tau_derivative, s_grid, BOUND, DEFAULT_SCHEDULE, DERIVATIVE_STEP,
};
pub use cphi::{cphi_closed_form, ln_i_closed_form, CphiResult};
pub use identities::{centering_difference_ratio, check_identities, k_ratio, IdentityReport};
pub use report::{ConvergenceReport, MetricKind, Verdict};
