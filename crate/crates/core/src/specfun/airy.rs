//! Airy function of the first kind and its derivative on the real line.
//!
//! Three regimes:
//!
//! * `|x| ≤ 1`: Maclaurin series.
//! * `1 < |x| ≤ 12`: Taylor continuation from a table of `(Ai, Ai')` at nodes
//!   spaced `1/4` apart. The table is built once by Taylor-stepping the Airy
//!   equation: leftwards from `x = 0` on the oscillatory side and leftwards
//!   from `x = 12` (seeded by the asymptotic expansion) on the decaying side,
//!   which is the stable direction for the recessive solution.
//! * `|x| > 12`: asymptotic expansions, whose truncation error there is below
//!   `e^{-2ζ} ≈ 1e-24` relative.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

use crate::error::{ensure_finite, Result};

/// `Ai(0) = 3^{-2/3} / Γ(2/3)`.
pub const AI_ZERO: f64 = 0.355_028_053_887_817_2;
/// `Ai'(0) = -3^{-1/3} / Γ(1/3)`.
pub const AI_PRIME_ZERO: f64 = -0.258_819_403_792_806_8;

const SERIES_LIMIT: f64 = 1.0;
const ASYMPTOTIC_LIMIT: f64 = 12.0;
const TABLE_STEP: f64 = 0.25;
const TABLE_LEN: usize = 97; // nodes -12, -11.75, ..., 12
const TABLE_ZERO: usize = 48;

static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();

/// `Ai(x)`. Underflows to `0` for `x` beyond roughly `104`.
pub fn airy_ai(x: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    Ok(airy_pair(x).0)
}

/// `Ai'(x)`.
pub fn airy_ai_prime(x: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    Ok(airy_pair(x).1)
}

/// `(Ai(x), Ai'(x))` for finite `x`; no input validation.
pub(crate) fn airy_pair(x: f64) -> (f64, f64) {
    if x.abs() <= SERIES_LIMIT {
        maclaurin(x)
    } else if x > ASYMPTOTIC_LIMIT {
        asymptotic_right(x)
    } else if x < -ASYMPTOTIC_LIMIT {
        asymptotic_left(-x)
    } else {
        tabulated(x)
    }
}

fn tabulated(x: f64) -> (f64, f64) {
    let table = TABLE.get_or_init(build_table);
    let i = ((x + ASYMPTOTIC_LIMIT) / TABLE_STEP).round() as usize;
    let i = i.min(TABLE_LEN - 1);
    let x0 = node(i);
    let (y, yp) = table[i];
    taylor_step(x0, y, yp, x - x0)
}

fn node(i: usize) -> f64 {
    -ASYMPTOTIC_LIMIT + TABLE_STEP * i as f64
}

fn build_table() -> Vec<(f64, f64)> {
    let mut table = vec![(0.0, 0.0); TABLE_LEN];
    table[TABLE_ZERO] = (AI_ZERO, AI_PRIME_ZERO);
    for i in (0..TABLE_ZERO).rev() {
        let (y, yp) = table[i + 1];
        table[i] = taylor_step(node(i + 1), y, yp, -TABLE_STEP);
    }
    table[TABLE_LEN - 1] = asymptotic_right(ASYMPTOTIC_LIMIT);
    for i in (TABLE_ZERO + 1..TABLE_LEN - 1).rev() {
        let (y, yp) = table[i + 1];
        table[i] = taylor_step(node(i + 1), y, yp, -TABLE_STEP);
    }
    table
}

/// Advances a solution of `w'' = x w` from `x0` to `x0 + h` by its Taylor
/// series, whose coefficients obey `a_{k+2} = (x0 a_k + a_{k-1}) / ((k+2)(k+1))`.
pub(crate) fn taylor_step(x0: f64, y: f64, yp: f64, h: f64) -> (f64, f64) {
    if h == 0.0 {
        return (y, yp);
    }
    let mut a_prev2 = y; // a_{k-2}
    let mut a_prev1 = yp; // a_{k-1}
    let mut a_prev3 = 0.0; // a_{k-3}
    let mut hk = h; // h^{k-1}
    let mut val = y + yp * h;
    let mut der = yp;
    let scale = y.abs() + (yp * h).abs();
    let mut small = 0;
    for k in 2..120usize {
        let a_k = (x0 * a_prev2 + a_prev3) / ((k * (k - 1)) as f64);
        let der_term = k as f64 * a_k * hk;
        hk *= h;
        let term = a_k * hk;
        val += term;
        der += der_term;
        if term.abs() <= 1e-18 * (val.abs() + scale)
            && der_term.abs() <= 1e-18 * (der.abs() + scale)
        {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        a_prev3 = a_prev2;
        a_prev2 = a_prev1;
        a_prev1 = a_k;
    }
    (val, der)
}

fn maclaurin(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    // f = Σ 3^k (1/3)_k x^{3k}/(3k)!, g = Σ 3^k (2/3)_k x^{3k+1}/(3k+1)!
    let (mut f, mut g) = (1.0, x);
    let (mut fp, mut gp) = (0.0, 1.0);
    let (mut tf, mut tg) = (1.0, x);
    let (mut tfp, mut tgp) = (x * x / 2.0, 1.0);
    fp += tfp;
    for k in 1..60 {
        let kf = k as f64;
        tf *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        tg *= x3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        tgp *= x3 / ((3.0 * kf) * (3.0 * kf - 2.0));
        f += tf;
        g += tg;
        gp += tgp;
        if k >= 2 {
            tfp *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
            fp += tfp;
        }
        if tf.abs() < 1e-18 && tg.abs() < 1e-18 && tfp.abs() < 1e-18 && tgp.abs() < 1e-18 {
            break;
        }
    }
    let c1 = AI_ZERO;
    let c2 = -AI_PRIME_ZERO;
    (c1 * f - c2 * g, c1 * fp - c2 * gp)
}

/// Coefficients `u_k` of the Airy asymptotic expansions and the companion
/// `v_k = -(6k+1)/(6k-1) u_k`.
fn asymptotic_coeffs() -> &'static ([f64; 40], [f64; 40]) {
    static COEFFS: OnceLock<([f64; 40], [f64; 40])> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut u = [0.0; 40];
        let mut v = [0.0; 40];
        u[0] = 1.0;
        v[0] = 1.0;
        for k in 1..40 {
            let kf = k as f64;
            u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                / ((2.0 * kf - 1.0) * 216.0 * kf);
            v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
        }
        (u, v)
    })
}

fn asymptotic_right(x: f64) -> (f64, f64) {
    let (u, v) = asymptotic_coeffs();
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let inv = 1.0 / zeta;
    let (mut su, mut sv) = (0.0, 0.0);
    let mut pow = 1.0;
    let mut sign = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..40 {
        let tu = u[k] * pow;
        if tu.abs() > last {
            break; // past the smallest term
        }
        last = tu.abs();
        su += sign * tu;
        sv += sign * v[k] * pow;
        if tu.abs() < 1e-17 * su.abs() {
            break;
        }
        pow *= inv;
        sign = -sign;
    }
    let q = x.sqrt().sqrt();
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    (e / q * su, -e * q * sv)
}

/// Expansions of `Ai(-x)` and `Ai'(-x)` for large positive `x`.
fn asymptotic_left(x: f64) -> (f64, f64) {
    let (u, v) = asymptotic_coeffs();
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let inv = 1.0 / zeta;
    let (mut pu, mut qu, mut pv, mut qv) = (0.0, 0.0, 0.0, 0.0);
    let mut pow = 1.0;
    for k in 0..20 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let even = 2 * k;
        pu += sign * u[even] * pow;
        pv += sign * v[even] * pow;
        pow *= inv;
        qu += sign * u[even + 1] * pow;
        qv += sign * v[even + 1] * pow;
        pow *= inv;
        if (u[even + 1] * pow).abs() < 1e-18 {
            break;
        }
    }
    let phase = zeta - FRAC_PI_4;
    let (s, c) = phase.sin_cos();
    let q = x.sqrt().sqrt();
    let norm = 1.0 / PI.sqrt();
    let ai = norm / q * (c * pu + s * qu);
    let aip = norm * q * (s * pv - c * qv);
    (ai, aip)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_right_branch_meets_origin() {
        // the right half of the table is marched from x = 12 down to 0.25;
        // one more step must land on the exact constants at 0
        let table = TABLE.get_or_init(build_table);
        let (y, yp) = table[TABLE_ZERO + 1];
        let (a, ap) = taylor_step(TABLE_STEP, y, yp, -TABLE_STEP);
        assert!((a - AI_ZERO).abs() < 1e-15, "{a}");
        assert!((ap - AI_PRIME_ZERO).abs() < 1e-15, "{ap}");
    }

    #[test]
    fn branches_agree_at_switch_points() {
        for x in [-12.0, 12.0] {
            let table = TABLE.get_or_init(build_table);
            let i = ((x + ASYMPTOTIC_LIMIT) / TABLE_STEP).round() as usize;
            let asym = if x > 0.0 {
                asymptotic_right(x)
            } else {
                asymptotic_left(-x)
            };
            let (ty, typ) = table[i];
            let (scale_y, scale_d) = (asym.0.abs().max(1e-300), asym.1.abs().max(1e-300));
            let tol = if x > 0.0 { 1e-12 } else { 1e-13 };
            assert!(
                (ty - asym.0).abs() / if x > 0.0 { scale_y } else { 1.0 } < tol,
                "x={x}"
            );
            assert!(
                (typ - asym.1).abs() / if x > 0.0 { scale_d } else { 1.0 } < tol,
                "x={x}"
            );
        }
        for x in [-1.0f64, 1.0] {
            let (s, t) = (maclaurin(x), tabulated(x));
            assert!(
                (s.0 - t.0).abs() < 1e-15 && (s.1 - t.1).abs() < 1e-15,
                "x={x}"
            );
        }
    }

    #[test]
    fn non_finite_is_rejected() {
        assert!(airy_ai(f64::NAN).is_err());
        assert!(airy_ai_prime(f64::INFINITY).is_err());
    }

    #[test]
    fn underflows_gracefully() {
        assert_eq!(airy_ai(200.0).unwrap(), 0.0);
        assert!(airy_ai(90.0).unwrap() > 0.0);
    }
}
