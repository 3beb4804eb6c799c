//! Bracketing root finder used by the shooting solvers.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracketed {
    /// The bracket endpoint with the smaller residual.
    pub root: f64,
    pub residual: f64,
    pub lo: f64,
    pub hi: f64,
    pub iterations: usize,
}

/// Bisection on `[lo, hi]` given residuals of opposite sign at the ends.
///
/// Stops once the bracket is narrower than `rel_tol * max(1, |mid|)`, when a
/// residual is exactly zero, or after `max_iter` halvings.
pub fn bisect<F>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    mut f_hi: f64,
    rel_tol: f64,
    max_iter: usize,
) -> Result<Bracketed>
where
    F: FnMut(f64) -> Result<f64>,
{
    if f_lo == 0.0 || f_hi == 0.0 {
        let (root, residual) = if f_lo == 0.0 { (lo, f_lo) } else { (hi, f_hi) };
        return Ok(Bracketed {
            root,
            residual,
            lo,
            hi,
            iterations: 0,
        });
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::domain(format!(
            "bisection needs a sign change: f({lo}) = {f_lo}, f({hi}) = {f_hi}"
        )));
    }
    let mut iterations = 0;
    while iterations < max_iter {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= rel_tol * mid.abs().max(1.0) || mid == lo || mid == hi {
            break;
        }
        iterations += 1;
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(Bracketed {
                root: mid,
                residual: 0.0,
                lo: mid,
                hi: mid,
                iterations,
            });
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    if iterations >= max_iter && (hi - lo).abs() > rel_tol * (0.5 * (lo + hi)).abs().max(1.0) {
        return Err(Error::NotConverged { lo, hi, iterations });
    }
    let (root, residual) = if f_lo.abs() <= f_hi.abs() {
        (lo, f_lo)
    } else {
        (hi, f_hi)
    };
    Ok(Bracketed {
        root,
        residual,
        lo,
        hi,
        iterations,
    })
}
