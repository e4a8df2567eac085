//! Scalar numerics shared across the crate: entropy helpers, grids, and
//! derivative-free minimization / root finding.

use crate::error::{Error, Result};

/// x·log₂(x) with the 0·log 0 = 0 convention.
pub fn xlog2(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Shannon entropy in bits of the two-outcome distribution {p, 1−p}.
pub fn binary_entropy(p: f64) -> f64 {
    -xlog2(p) - xlog2(1.0 - p)
}

/// Entropy in bits of a qubit with Bloch-vector length `theta`,
/// h((1+θ)/2). `one_minus_theta` is taken separately so callers can
/// supply it without cancellation when θ is close to 1.
pub fn entropy_from_bloch(theta: f64, one_minus_theta: f64) -> f64 {
    -xlog2(0.5 * (1.0 + theta)) - xlog2(0.5 * one_minus_theta)
}

/// `n` evenly spaced points over [start, stop] with exact endpoints.
pub fn linspace(start: f64, stop: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    let step = if n > 1 {
        (stop - start) / (n - 1) as f64
    } else {
        0.0
    };
    (0..n).map(move |i| {
        if i + 1 == n {
            stop
        } else {
            start + step * i as f64
        }
    })
}

/// Bisection root finder for a continuous function on [lo, hi].
///
/// A preliminary scan over `scan_points` samples must find exactly one sign
/// change; any other count is a numerical failure. Converges until
/// |f| ≤ `residual_tol`.
pub fn bisect_unique_root<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    scan_points: usize,
    residual_tol: f64,
) -> Result<f64> {
    let xs: Vec<f64> = linspace(lo, hi, scan_points.max(3)).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();

    for (x, v) in xs.iter().zip(vs.iter()) {
        if v.abs() <= residual_tol {
            return Ok(*x);
        }
    }

    let mut bracket = None;
    let mut changes = 0usize;
    for i in 0..xs.len() - 1 {
        if vs[i] * vs[i + 1] < 0.0 {
            changes += 1;
            bracket = Some((xs[i], xs[i + 1], vs[i]));
        }
    }
    let (mut a, mut b, fa) = match (changes, bracket) {
        (1, Some(br)) => br,
        _ => {
            return Err(Error::Numerical(format!(
                "expected exactly one sign change on [{lo}, {hi}], found {changes}"
            )))
        }
    };

    let mut fa_sign = fa.signum();
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm.abs() <= residual_tol {
            return Ok(mid);
        }
        if fm.signum() == fa_sign {
            a = mid;
            fa_sign = fm.signum();
        } else {
            b = mid;
        }
    }
    Err(Error::Numerical(format!(
        "bisection on [{lo}, {hi}] did not reach residual {residual_tol}"
    )))
}

/// Golden-section minimization of a unimodal function on [a, b];
/// returns the argument located to within `tol`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
