use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{ChiSquared, Distribution};
use serde::{Deserialize, Serialize};

use super::rng::{draw_rng, GaussianStream};
use crate::error::{Error, Result};

const MAX_EIGEN_SWEEPS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplePath {
    /// Gaussian `X`, exact eigen-decomposition of the smaller Gram matrix.
    Dense,
    /// Bidiagonal model with chi-distributed entries (real field only).
    Tridiagonal,
}

macro_rules! name_enum {
    ($ty:ident { $($variant:ident => $name:literal),+ $(,)? }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($ty::$variant => $name),+ })
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_lowercase().as_str() {
                    $($name => Ok($ty::$variant),)+
                    other => Err(Error::Parse(format!(
                        concat!("unknown ", stringify!($ty), " '{}'"), other
                    ))),
                }
            }
        }
    };
}

name_enum!(Field { Real => "real", Complex => "complex" });
name_enum!(SamplePath { Dense => "dense", Tridiagonal => "tridiagonal" });

/// The top eigenvalues of one sampled `X*X`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSample {
    /// Largest `k` eigenvalues, descending.
    pub top: Vec<f64>,
    pub n: u64,
    pub p: u64,
    pub k: usize,
    pub field: Field,
    pub seed: u64,
    /// Index of the draw within its run; selects the random stream.
    pub stream: u64,
    pub path: SamplePath,
}

/// Everything about a draw except its seed and stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub n: u64,
    pub p: u64,
    pub k: usize,
    pub field: Field,
    pub path: SamplePath,
}

impl SampleConfig {
    pub fn new(n: u64, p: u64, k: usize, field: Field, path: SamplePath) -> Result<Self> {
        let config = Self {
            n,
            p,
            k,
            field,
            path,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.n.min(self.p);
        if m == 0 {
            return Err(Error::domain(format!("empty {}x{} matrix", self.n, self.p)));
        }
        if self.k == 0 || self.k as u64 > m {
            return Err(Error::domain(format!(
                "k must lie in 1..={m} for a {}x{} matrix, got {}",
                self.n, self.p, self.k
            )));
        }
        if self.path == SamplePath::Tridiagonal && self.field == Field::Complex {
            return Err(Error::domain(
                "the tridiagonal path supports the real field only",
            ));
        }
        Ok(())
    }

    /// Draw number `stream` of the run keyed by `seed`.
    pub fn draw(&self, seed: u64, stream: u64) -> Result<EigenSample> {
        self.validate()?;
        let mut gauss = GaussianStream::new(draw_rng(seed, stream));
        let top = match self.path {
            SamplePath::Dense => dense_top_k(self.n, self.p, self.k, self.field, &mut || {
                gauss.next_gaussian()
            })
            .ok_or(Error::EigenSolver { seed, stream })?,
            SamplePath::Tridiagonal => bidiagonal_top_k(self.n, self.p, self.k, gauss.rng_mut()),
        };
        Ok(EigenSample {
            top,
            n: self.n,
            p: self.p,
            k: self.k,
            field: self.field,
            seed,
            stream,
            path: self.path,
        })
    }
}

/// One draw (stream 0) of the top `k` eigenvalues.
pub fn sample_top_k(
    n: u64,
    p: u64,
    k: usize,
    field: Field,
    seed: u64,
    path: SamplePath,
) -> Result<EigenSample> {
    SampleConfig::new(n, p, k, field, path)?.draw(seed, 0)
}

/// Draws `0..reps`, split into contiguous chunks over `workers` threads.
/// The result is ordered by draw index and independent of `workers`.
pub fn sample_batch(
    config: &SampleConfig,
    seed: u64,
    reps: u64,
    workers: usize,
) -> Result<Vec<EigenSample>> {
    config.validate()?;
    let workers = workers.max(1).min(reps.max(1) as usize) as u64;
    let chunk = reps.div_ceil(workers);
    let chunks: Vec<Result<Vec<EigenSample>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let start = (w * chunk).min(reps);
                let end = ((w + 1) * chunk).min(reps);
                scope.spawn(move || (start..end).map(|i| config.draw(seed, i)).collect())
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling worker panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(reps as usize);
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

/// Top `k` eigenvalues of `X*X` for an `n × p` matrix whose entries are
/// produced by `gaussian`, filled column by column. Complex entries take two
/// consecutive draws, `(g₁ + i g₂)/√2`. Returns `None` if the eigen-solver
/// fails to converge.
pub fn dense_top_k(
    n: u64,
    p: u64,
    k: usize,
    field: Field,
    gaussian: &mut dyn FnMut() -> f64,
) -> Option<Vec<f64>> {
    let (rows, cols) = (n as usize, p as usize);
    let mut eig = match field {
        Field::Real => real_spectrum(&DMatrix::<f64>::from_fn(rows, cols, |_, _| gaussian()))?,
        Field::Complex => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let x = DMatrix::<Complex64>::from_fn(rows, cols, |_, _| {
                let re = gaussian();
                Complex64::new(re * h, gaussian() * h)
            });
            let gram = if cols <= rows {
                x.ad_mul(&x)
            } else {
                &x * x.adjoint()
            };
            SymmetricEigen::try_new(gram, f64::EPSILON, MAX_EIGEN_SWEEPS)?
                .eigenvalues
                .as_slice()
                .to_vec()
        }
    };
    eig.sort_by(|a, b| b.total_cmp(a));
    eig.truncate(k);
    Some(eig)
}

fn real_spectrum(x: &DMatrix<f64>) -> Option<Vec<f64>> {
    let gram = if x.ncols() <= x.nrows() {
        x.tr_mul(x)
    } else {
        x * x.transpose()
    };
    Some(
        SymmetricEigen::try_new(gram, f64::EPSILON, MAX_EIGEN_SWEEPS)?
            .eigenvalues
            .as_slice()
            .to_vec(),
    )
}

/// Top `k` eigenvalues of `XᵀX` for a real data matrix given as rows.
pub fn data_top_k(rows: &[Vec<f64>], k: usize) -> Result<Vec<f64>> {
    let n = rows.len();
    let p = rows.first().map_or(0, Vec::len);
    if n == 0 || p == 0 {
        return Err(Error::domain("data matrix is empty"));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != p) {
        return Err(Error::domain(format!(
            "row {i} has {} entries, expected {p}",
            rows[i].len()
        )));
    }
    if k == 0 || k > n.min(p) {
        return Err(Error::domain(format!(
            "k must lie in 1..={}, got {k}",
            n.min(p)
        )));
    }
    let x = DMatrix::<f64>::from_fn(n, p, |i, j| rows[i][j]);
    let mut eig = real_spectrum(&x)
        .ok_or_else(|| Error::numeric("eigen-solver did not converge on the data matrix", None))?;
    eig.sort_by(|a, b| b.total_cmp(a));
    eig.truncate(k);
    Ok(eig)
}

/// Top `k` eigenvalues of `B Bᵀ` where `B` is lower bidiagonal with
/// diagonal `χ_M, …, χ_{M−m+1}` and subdiagonal `χ_{m−1}, …, χ_1`
/// (`m = min(n, p)`, `M = max(n, p)`): the real Wishart spectrum in law.
pub fn bidiagonal_top_k<R: Rng>(n: u64, p: u64, k: usize, rng: &mut R) -> Vec<f64> {
    let m = n.min(p) as usize;
    let big = n.max(p) as f64;
    let chi = |dof: f64, rng: &mut R| -> f64 {
        ChiSquared::new(dof)
            .expect("positive degrees of freedom")
            .sample(rng)
            .sqrt()
    };
    let d: Vec<f64> = (0..m).map(|i| chi(big - i as f64, rng)).collect();
    let e: Vec<f64> = (1..m).map(|i| chi((m - i) as f64, rng)).collect();

    // T = B Bᵀ: T_ii = e_{i-1}² + d_i², T_{i,i-1} = e_{i-1} d_{i-1}
    let diag: Vec<f64> = (0..m)
        .map(|i| d[i] * d[i] + if i > 0 { e[i - 1] * e[i - 1] } else { 0.0 })
        .collect();
    let off: Vec<f64> = (1..m).map(|i| e[i - 1] * d[i - 1]).collect();
    tridiagonal_top_k(&diag, &off, k)
}

/// Number of eigenvalues of the symmetric tridiagonal matrix below `x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i > 0 {
            off[i - 1] * off[i - 1] / q
        } else {
            0.0
        };
        q = diag[i] - x - coupling;
        if q == 0.0 {
            q = -f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` largest eigenvalues, descending, by Sturm-sequence bisection.
pub(crate) fn tridiagonal_top_k(diag: &[f64], off: &[f64], k: usize) -> Vec<f64> {
    let m = diag.len();
    let radius = |i: usize| -> f64 {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < m { off[i].abs() } else { 0.0 };
        left + right
    };
    let lo = (0..m)
        .map(|i| diag[i] - radius(i))
        .fold(f64::INFINITY, f64::min);
    let hi = (0..m)
        .map(|i| diag[i] + radius(i))
        .fold(f64::NEG_INFINITY, f64::max);
    let span = (hi - lo).max(f64::MIN_POSITIVE);
    (0..k)
        .map(|j| {
            // want the eigenvalue with exactly m - 1 - j others below it
            let target = m - j;
            let (mut a, mut b) = (lo - 1e-12 * span, hi + 1e-12 * span);
            while b - a > 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(span * 1e-3) {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if sturm_count(diag, off, mid) >= target {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}
