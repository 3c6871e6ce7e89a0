//! Tracy–Widom distribution functions.

mod cdf;
mod fredholm;
pub mod painleve;

pub use cdf::{TwCdf, TwKind};
pub use fredholm::{fredholm_det, fredholm_f2, FREDHOLM_TOL};
pub use painleve::{default_solution, load_or_solve, solve_hastings_mcleod, PainleveSolution};

/// `F_kind(s)` from the shared default table.
pub fn cdf(which: TwKind, s: f64) -> f64 {
    TwCdf::with_default(which).cdf(s)
}

/// Inverse of [`cdf`].
pub fn quantile(which: TwKind, p: f64) -> crate::Result<f64> {
    TwCdf::with_default(which).quantile(p)
}
