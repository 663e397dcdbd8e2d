//! Bracketed root finding for the transcendental conditions scattered
//! through the solvers.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Bisection on `[lo, hi]`; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64, max_iter: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 || (hi - lo).abs() < xtol {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scan `[lo, hi]` in fixed steps and refine the first `count` sign changes
/// by bisection. Evaluations returning non-finite values are skipped rather
/// than treated as brackets.
pub fn scan_roots<F>(f: F, lo: f64, hi: f64, step: f64, count: usize, xtol: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    let mut roots = Vec::with_capacity(count);
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    let mut x = lo + step;
    while x < hi + 0.5 * step && roots.len() < count {
        let x_here = if x > hi { hi } else { x };
        let f_here = f(x_here);
        if f_prev.is_finite() && f_here.is_finite() && f_prev.signum() != f_here.signum() {
            roots.push(bisect(&f, x_prev, x_here, xtol, 200)?);
        }
        x_prev = x_here;
        f_prev = f_here;
        x += step;
    }
    if roots.len() < count {
        return Err(Error::BracketExhausted {
            lo,
            hi,
            wanted: count,
            found: roots.len(),
        });
    }
    Ok(roots)
}
