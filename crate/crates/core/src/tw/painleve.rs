//! The Hastings–McLeod solution of `q'' = s q + 2 q³`, `q(s) ~ Ai(s)` as
//! `s → ∞`.
//!
//! An adaptive Dormand–Prince sweep runs backward from `s_max` with
//! `(q, q') = (Ai, Ai')` down to [`SHOOTING_END`], carrying the tail
//! integrals in the state. Further left the backward problem is too unstable
//! for double precision, so the remaining stretch is solved as a boundary
//! value problem (Numerov + Newton) between the sweep's value and the
//! `s → −∞` expansion `q ~ √(−s/2)`.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use crate::error::{ensure_finite, Error, Result};
use crate::quad::GaussLegendre;
use crate::specfun::airy_pair;

/// Bumped whenever the integrator or the cache layout changes.
pub const INTEGRATOR_VERSION: u32 = 1;
/// Output grid spacing.
pub const GRID_STEP: f64 = 1.0 / 128.0;
pub const DEFAULT_S_MIN: f64 = -10.0;
pub const DEFAULT_S_MAX: f64 = 8.0;
pub const DEFAULT_TOL: f64 = 1e-10;

const BLOW_UP: f64 = 1e6;
/// The backward sweep stops here; left of it, perturbations of the
/// Hastings–McLeod solution grow like `exp(0.94 |s|^{3/2})`.
pub const SHOOTING_END: f64 = -2.0;
const MAX_RETRIES: usize = 3;
const RETRY_SHIFT: f64 = 2.0;

/// Dense grid of the Hastings–McLeod solution and the tail integrals
/// `I1 = ∫_s^∞ q`, `J = ∫_s^∞ q²`, `I2 = ∫_s^∞ (x − s) q²`.
#[derive(Debug, Clone, PartialEq)]
pub struct PainleveSolution {
    /// Descending, `grid[0]` is the shooting point.
    pub grid: Vec<f64>,
    pub q: Vec<f64>,
    pub qprime: Vec<f64>,
    pub i1: Vec<f64>,
    pub j: Vec<f64>,
    pub i2: Vec<f64>,
    /// Requested lower end and tolerance (the cache key).
    pub s_min: f64,
    pub tol: f64,
    /// Shooting point finally used; larger than requested after a retry.
    pub s_max: f64,
}

type State = [f64; 5];

fn rhs(s: f64, y: &State) -> State {
    let (q, qp, j) = (y[0], y[1], y[3]);
    [qp, s * q + 2.0 * q * q * q, -q, -q * q, -j]
}

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..5 {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// One Dormand–Prince 5(4) step; returns the 5th-order solution and the
/// embedded error estimate.
fn dopri_step(s: f64, y: &State, h: f64) -> (State, State) {
    let k1 = rhs(s, y);
    let k2 = rhs(s + h / 5.0, &axpy(y, h, &[(1.0 / 5.0, &k1)]));
    let k3 = rhs(
        s + 3.0 * h / 10.0,
        &axpy(y, h, &[(3.0 / 40.0, &k1), (9.0 / 40.0, &k2)]),
    );
    let k4 = rhs(
        s + 4.0 * h / 5.0,
        &axpy(
            y,
            h,
            &[(44.0 / 45.0, &k1), (-56.0 / 15.0, &k2), (32.0 / 9.0, &k3)],
        ),
    );
    let k5 = rhs(
        s + 8.0 * h / 9.0,
        &axpy(
            y,
            h,
            &[
                (19372.0 / 6561.0, &k1),
                (-25360.0 / 2187.0, &k2),
                (64448.0 / 6561.0, &k3),
                (-212.0 / 729.0, &k4),
            ],
        ),
    );
    let k6 = rhs(
        s + h,
        &axpy(
            y,
            h,
            &[
                (9017.0 / 3168.0, &k1),
                (-355.0 / 33.0, &k2),
                (46732.0 / 5247.0, &k3),
                (49.0 / 176.0, &k4),
                (-5103.0 / 18656.0, &k5),
            ],
        ),
    );
    let y5 = axpy(
        y,
        h,
        &[
            (35.0 / 384.0, &k1),
            (500.0 / 1113.0, &k3),
            (125.0 / 192.0, &k4),
            (-2187.0 / 6784.0, &k5),
            (11.0 / 84.0, &k6),
        ],
    );
    let k7 = rhs(s + h, &y5);
    // b5 − b4
    let e = [
        71.0 / 57600.0,
        0.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    ];
    let ks = [&k1, &k2, &k3, &k4, &k5, &k6, &k7];
    let mut err = [0.0; 5];
    for (c, k) in e.iter().zip(ks) {
        for i in 0..5 {
            err[i] += h * c * k[i];
        }
    }
    (y5, err)
}

/// Integrates from `s0` to `s1` adaptively, with relative tolerance `tol`.
fn integrate_segment(s0: f64, s1: f64, y: &State, tol: f64, h_guess: &mut f64) -> Result<State> {
    let atol = tol * 1e-6;
    let dir = (s1 - s0).signum();
    let mut s = s0;
    let mut y = *y;
    let mut h = h_guess.abs().min((s1 - s0).abs()) * dir;
    let mut steps = 0usize;
    while (s1 - s) * dir > 0.0 {
        if (s + h - s1) * dir > 0.0 {
            h = s1 - s;
        }
        let (y_new, err) = dopri_step(s, &y, h);
        let ratio = (0..5)
            .map(|i| {
                let scale = atol + tol * y[i].abs().max(y_new[i].abs());
                (err[i] / scale).powi(2)
            })
            .sum::<f64>()
            .sqrt()
            / 5f64.sqrt();
        if !ratio.is_finite() {
            return Err(Error::numeric(
                format!("non-finite step near s = {s}"),
                Some(y[0]),
            ));
        }
        if ratio <= 1.0 {
            s += h;
            y = y_new;
            *h_guess = h.abs();
        }
        let factor = if ratio == 0.0 {
            5.0
        } else {
            (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        steps += 1;
        if steps > 100_000 {
            return Err(Error::numeric(
                format!("step size collapse near s = {s}"),
                Some(y[0]),
            ));
        }
    }
    Ok(y)
}

/// `∫_s^∞ Ai` for `s ≥ 8`, where the integrand is below `1e-50` past `s + 12`.
fn airy_tail_integral(s: f64) -> f64 {
    GaussLegendre::power_of_two(6).integrate(s, s + 12.0, |x| airy_pair(x).0)
}

fn empty_solution(s_min: f64, s_max: f64, tol: f64, capacity: usize) -> PainleveSolution {
    PainleveSolution {
        grid: Vec::with_capacity(capacity),
        q: Vec::with_capacity(capacity),
        qprime: Vec::with_capacity(capacity),
        i1: Vec::with_capacity(capacity),
        j: Vec::with_capacity(capacity),
        i2: Vec::with_capacity(capacity),
        s_min,
        tol,
        s_max,
    }
}

fn push(sol: &mut PainleveSolution, s: f64, y: &State) {
    sol.grid.push(s);
    sol.q.push(y[0]);
    sol.qprime.push(y[1]);
    sol.i1.push(y[2]);
    sol.j.push(y[3]);
    sol.i2.push(y[4]);
}

/// Backward sweep from `s_max` to `s_max − steps·h`.
fn shoot(sol: &mut PainleveSolution, steps: usize, tol: f64) -> Result<()> {
    let s_max = sol.s_max;
    let (ai, aip) = airy_pair(s_max);
    let j0 = aip * aip - s_max * ai * ai;
    // ∫_s^∞ x Ai² = −(s² Ai² − s Ai'² + Ai Ai')/3
    let first_moment = -(s_max * s_max * ai * ai - s_max * aip * aip + ai * aip) / 3.0;
    let mut y: State = [
        ai,
        aip,
        airy_tail_integral(s_max),
        j0,
        first_moment - s_max * j0,
    ];
    push(sol, s_max, &y);
    let mut h = GRID_STEP;
    for i in 1..=steps {
        let s0 = s_max - (i - 1) as f64 * GRID_STEP;
        let s1 = s_max - i as f64 * GRID_STEP;
        y = integrate_segment(s0, s1, &y, tol, &mut h)?;
        if y[0].is_nan() || y[0].abs() > BLOW_UP {
            return Err(Error::numeric(format!("blow-up at s = {s1}"), Some(y[0])));
        }
        push(sol, s1, &y);
    }
    Ok(())
}

// q(s) = √(t/2) Σ c_k t^{-3k}, t = −s
const LEFT_SERIES: [f64; 8] = [
    1.0,
    -1.0 / 8.0,
    -73.0 / 128.0,
    -10657.0 / 1024.0,
    -13912277.0 / 32768.0,
    -8045883943.0 / 262144.0,
    -14518451390349.0 / 4194304.0,
    -18847128706420641.0 / 33554432.0,
];

/// `(q, q')` from the `s → −∞` expansion, truncated at its smallest term.
pub(crate) fn left_asymptotic(s: f64) -> (f64, f64) {
    let t = -s;
    let inv3 = t.powi(-3);
    let (mut sum, mut dsum) = (0.0, 0.0);
    let mut pow = 1.0;
    let mut last = f64::INFINITY;
    for (k, c) in LEFT_SERIES.iter().enumerate() {
        let term = c * pow;
        if term.abs() > last {
            break;
        }
        last = term.abs();
        sum += term;
        dsum += term * (0.5 - 3.0 * k as f64);
        pow *= inv3;
    }
    let root = (0.5 * t).sqrt();
    // dq/ds = −dq/dt = −root · dsum / t
    (root * sum, -root * dsum / t)
}

/// Solves `q'' = s q + 2q³` on the grid nodes `start..` of `sol` (which
/// already hold the shooting result at `start − 1`) by Numerov's scheme with
/// Dirichlet data from the shooting sweep on the right and the asymptotic
/// expansion on the left. Newton's method on the tridiagonal system.
fn continue_left(sol: &mut PainleveSolution, s_join: f64, steps: usize) -> Result<()> {
    let h = GRID_STEP;
    let h2 = h * h / 12.0;
    let m = steps + 1; // nodes s_join, s_join − h, …, s_join − steps·h
    let s: Vec<f64> = (0..m).map(|i| s_join - i as f64 * h).collect();
    let q_right = *sol.q.last().expect("shooting sweep produced nodes");
    let (q_left, qp_left) = left_asymptotic(s[m - 1]);
    let mut q: Vec<f64> = s.iter().map(|&x| left_asymptotic(x.min(-1.0)).0).collect();
    q[0] = q_right;
    q[m - 1] = q_left;

    let f = |x: f64, v: f64| x * v + 2.0 * v * v * v;
    let df = |x: f64, v: f64| x + 6.0 * v * v;
    let interior = m - 2;
    let (mut lower, mut diag, mut upper, mut rhs_v) = (
        vec![0.0; interior],
        vec![0.0; interior],
        vec![0.0; interior],
        vec![0.0; interior],
    );
    let mut converged = false;
    for _ in 0..50 {
        for k in 0..interior {
            let i = k + 1;
            rhs_v[k] = -(q[i - 1] - 2.0 * q[i] + q[i + 1]
                - h2 * (f(s[i - 1], q[i - 1]) + 10.0 * f(s[i], q[i]) + f(s[i + 1], q[i + 1])));
            lower[k] = 1.0 - h2 * df(s[i - 1], q[i - 1]);
            diag[k] = -2.0 - 10.0 * h2 * df(s[i], q[i]);
            upper[k] = 1.0 - h2 * df(s[i + 1], q[i + 1]);
        }
        let delta = solve_tridiagonal(&lower, &diag, &upper, &rhs_v);
        let mut largest: f64 = 0.0;
        for k in 0..interior {
            q[k + 1] += delta[k];
            largest = largest.max(delta[k].abs() / q[k + 1].abs());
        }
        if !q.iter().all(|v| v.is_finite()) {
            break;
        }
        // quadratic convergence; the next update would be at the rounding floor
        if largest < 1e-13 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::numeric("left continuation did not converge", None));
    }

    // q' to O(h⁴) from values and the equation itself
    let mut qp = vec![0.0; m];
    qp[0] = *sol.qprime.last().expect("shooting sweep produced nodes");
    qp[m - 1] = qp_left;
    for i in 1..m - 1 {
        // nodes descend, so s[i-1] − s[i+1] = 2h
        qp[i] = (q[i - 1] - q[i + 1]) / (2.0 * h)
            - h / 12.0 * (f(s[i - 1], q[i - 1]) - f(s[i + 1], q[i + 1]));
    }

    let rule = GaussLegendre::new(6);
    let mut i1 = *sol.i1.last().expect("nodes");
    let mut j = *sol.j.last().expect("nodes");
    let mut i2 = *sol.i2.last().expect("nodes");
    for i in 1..m {
        let (a, b) = (s[i], s[i - 1]);
        let cell = |x: f64| {
            let t = (b - x) / h;
            hermite(-h, t, q[i - 1], qp[i - 1], q[i], qp[i])
        };
        let (mut dq, mut dq2, mut dmoment) = (0.0, 0.0, 0.0);
        for (x, w) in rule.mapped(a, b) {
            let v = cell(x);
            dq += w * v;
            dq2 += w * v * v;
            dmoment += w * (x - a) * v * v;
        }
        i2 += h * j + dmoment;
        j += dq2;
        i1 += dq;
        push(sol, a, &[q[i], qp[i], i1, j, i2]);
    }
    Ok(())
}

fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - lower[i] * c[i - 1];
        c[i] = upper[i] / denom;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

fn solve_once(s_min: f64, s_max: f64, tol: f64) -> Result<PainleveSolution> {
    let total = ((s_max - s_min) / GRID_STEP).ceil() as usize;
    let shoot_steps = (((s_max - SHOOTING_END) / GRID_STEP).floor() as usize).min(total);
    let mut sol = empty_solution(s_min, s_max, tol, total + 1);
    shoot(&mut sol, shoot_steps, tol)?;
    if total > shoot_steps {
        let s_join = *sol.grid.last().expect("nodes");
        continue_left(&mut sol, s_join, total - shoot_steps)?;
    }
    Ok(sol)
}

/// Shoots from `s_max` down to `s_min`. If the trajectory blows up, the
/// shooting point is moved right and the solve retried.
pub fn solve_hastings_mcleod(s_min: f64, s_max: f64, tol: f64) -> Result<PainleveSolution> {
    ensure_finite("s_min", s_min)?;
    ensure_finite("s_max", s_max)?;
    if s_min >= -8.0 {
        return Err(Error::domain(format!("s_min must be < -8, got {s_min}")));
    }
    if s_max <= 6.0 {
        return Err(Error::domain(format!("s_max must be > 6, got {s_max}")));
    }
    if !(1e-12..=1e-6).contains(&tol) {
        return Err(Error::domain(format!(
            "tol must lie in [1e-12, 1e-6], got {tol}"
        )));
    }
    let mut last = None;
    for attempt in 0..=MAX_RETRIES {
        match solve_once(s_min, s_max + attempt as f64 * RETRY_SHIFT, tol) {
            Ok(mut sol) => {
                sol.s_max = s_max + attempt as f64 * RETRY_SHIFT;
                return Ok(sol);
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn hermite(h: f64, t: f64, y0: f64, d0: f64, y1: f64, d1: f64) -> f64 {
    // t ∈ [0, 1] measured from node 0 toward node 1; h signed node spacing
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * y0
        + (t3 - 2.0 * t2 + t) * h * d0
        + (-2.0 * t3 + 3.0 * t2) * y1
        + (t3 - t2) * h * d1
}

/// Tail integrals at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailValues {
    pub q: f64,
    pub qprime: f64,
    pub i1: f64,
    pub j: f64,
    pub i2: f64,
}

impl PainleveSolution {
    pub fn lower(&self) -> f64 {
        *self.grid.last().expect("grid is never empty")
    }

    pub fn upper(&self) -> f64 {
        self.grid[0]
    }

    /// Cubic Hermite interpolation (with the exact derivatives carried by the
    /// ODE) at `s`, clamped to the grid.
    pub fn eval(&self, s: f64) -> TailValues {
        let last = self.grid.len() - 1;
        let pos = ((self.upper() - s) / GRID_STEP).clamp(0.0, last as f64);
        let i = (pos.floor() as usize).min(last.saturating_sub(1));
        if last == 0 {
            return self.node(0);
        }
        let t = (pos - i as f64).clamp(0.0, 1.0);
        let h = self.grid[i + 1] - self.grid[i];
        let a = i;
        let b = i + 1;
        let q2 = |k: usize| self.q[k] * self.q[k];
        let qpp = |k: usize| self.grid[k] * self.q[k] + 2.0 * self.q[k].powi(3);
        TailValues {
            q: hermite(h, t, self.q[a], self.qprime[a], self.q[b], self.qprime[b]),
            qprime: hermite(h, t, self.qprime[a], qpp(a), self.qprime[b], qpp(b)),
            i1: hermite(h, t, self.i1[a], -self.q[a], self.i1[b], -self.q[b]),
            j: hermite(h, t, self.j[a], -q2(a), self.j[b], -q2(b)),
            i2: hermite(h, t, self.i2[a], -self.j[a], self.i2[b], -self.j[b]),
        }
    }

    fn node(&self, k: usize) -> TailValues {
        TailValues {
            q: self.q[k],
            qprime: self.qprime[k],
            i1: self.i1[k],
            j: self.j[k],
            i2: self.i2[k],
        }
    }

    fn cache_key(&self) -> String {
        cache_key(self.s_min, self.s_max, self.tol)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(fs::File::create(path)?);
        writeln!(out, "# hastings-mcleod {}", self.cache_key())?;
        writeln!(out, "s,q,qprime,i1,j,i2")?;
        for k in 0..self.grid.len() {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                self.grid[k], self.q[k], self.qprime[k], self.i1[k], self.j[k], self.i2[k]
            )?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads a table written by [`write_csv`](Self::write_csv).
    pub fn read_csv(path: &Path) -> Result<Self> {
        let reader = BufReader::new(fs::File::open(path)?);
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty cache file".into()))??;
        let key = header
            .strip_prefix("# hastings-mcleod ")
            .ok_or_else(|| Error::Parse("not a Painlevé cache file".into()))?;
        let (s_min, s_max, tol) = parse_key(key)?;
        lines.next();
        let mut cols: [Vec<f64>; 6] = Default::default();
        for (row, line) in lines.enumerate() {
            let line = line?;
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != 6 {
                return Err(Error::Parse(format!(
                    "cache row {} has {} fields",
                    row + 3,
                    cells.len()
                )));
            }
            for (c, cell) in cols.iter_mut().zip(&cells) {
                c.push(cell.parse().map_err(|_| {
                    Error::Parse(format!("cache row {}: bad number '{cell}'", row + 3))
                })?);
            }
        }
        if cols[0].is_empty() {
            return Err(Error::Parse("cache file has no rows".into()));
        }
        let [grid, q, qprime, i1, j, i2] = cols;
        Ok(Self {
            grid,
            q,
            qprime,
            i1,
            j,
            i2,
            s_min,
            tol,
            s_max,
        })
    }
}

fn cache_key(s_min: f64, s_max: f64, tol: f64) -> String {
    format!("v{INTEGRATOR_VERSION} s_min={s_min} s_max={s_max} tol={tol:e}")
}

fn parse_key(key: &str) -> Result<(f64, f64, f64)> {
    let bad = || Error::Parse(format!("bad cache key '{key}'"));
    let mut parts = key.split_whitespace();
    if parts.next() != Some(&format!("v{INTEGRATOR_VERSION}")[..]) {
        return Err(Error::Parse(format!("cache version mismatch in '{key}'")));
    }
    let mut value = |name: &str| -> Result<f64> {
        parts
            .next()
            .and_then(|p| p.strip_prefix(name))
            .and_then(|v| v.parse().ok())
            .ok_or_else(bad)
    };
    Ok((value("s_min=")?, value("s_max=")?, value("tol=")?))
}

/// Cache file name for a request; encodes the full key.
pub fn cache_file_name(s_min: f64, s_max: f64, tol: f64) -> String {
    format!("painleve_v{INTEGRATOR_VERSION}_{s_min}_{s_max}_{tol:e}.csv")
}

/// Loads the table from `dir` when a file with a matching key exists, else
/// solves and writes it there. A stale or unreadable file is replaced.
pub fn load_or_solve(dir: &Path, s_min: f64, s_max: f64, tol: f64) -> Result<PainleveSolution> {
    let path: PathBuf = dir.join(cache_file_name(s_min, s_max, tol));
    if let Ok(sol) = PainleveSolution::read_csv(&path) {
        // retries may have moved s_max, so match on the requested s_min and tol
        if sol.s_min == s_min
            && sol.tol == tol
            && sol.s_max >= s_max
            && sol.grid.first() == Some(&sol.s_max)
        {
            return Ok(sol);
        }
    }
    let sol = solve_hastings_mcleod(s_min, s_max, tol)?;
    fs::create_dir_all(dir)?;
    sol.write_csv(&path)?;
    Ok(sol)
}

/// Process-wide solution with the default parameters.
pub fn default_solution() -> Arc<PainleveSolution> {
    static SOLUTION: OnceLock<Arc<PainleveSolution>> = OnceLock::new();
    SOLUTION
        .get_or_init(|| {
            Arc::new(
                solve_hastings_mcleod(DEFAULT_S_MIN, DEFAULT_S_MAX, DEFAULT_TOL)
                    .expect("default Hastings–McLeod solve succeeds"),
            )
        })
        .clone()
}
