//! Phase-shift samples and continuous-branch reconstruction.
//!
//! `tan(delta)` determines the phase shift only mod pi. Curves are built by
//! tracking the winding of the `(den, num)` vector along the grid and then
//! shifting the whole branch by a multiple of pi at the anchor end, which is
//! how the plotted phase curves pick one representative out of the family.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::math;
use crate::{Error, Result};

/// Phase shift at one momentum/energy, with the redundant trigonometric
/// forms kept consistent with `delta`'s branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShiftSample {
    pub k: f64,
    pub energy: f64,
    /// Phase shift on the curve's continuous branch (principal for
    /// single-point evaluations).
    pub delta: f64,
    pub tan_delta: f64,
    pub sin2_delta: f64,
}

impl PhaseShiftSample {
    /// Sample on the principal branch `(-pi/2, pi/2]`.
    pub(crate) fn principal(k: f64, energy: f64, num: f64, den: f64) -> Self {
        let delta = wrap_half_pi(math::atan2(num, den));
        Self::on_branch(k, energy, num, den, delta)
    }

    /// Sample with `delta` fixed by the caller's branch bookkeeping.
    pub(crate) fn on_branch(k: f64, energy: f64, num: f64, den: f64, delta: f64) -> Self {
        let tan_delta = if den == 0.0 {
            f64::INFINITY * num.signum()
        } else {
            num / den
        };
        let s = math::sin(delta);
        PhaseShiftSample {
            k,
            energy,
            delta,
            tan_delta,
            sin2_delta: s * s,
        }
    }
}

/// Map an angle to `(-pi/2, pi/2]`.
pub fn wrap_half_pi(x: f64) -> f64 {
    let mut y = x - PI * math::floor(x / PI + 0.5);
    if y <= -PI / 2.0 {
        y += PI;
    }
    y
}

/// Difference of two phases mod pi, folded into `(-pi/2, pi/2]`.
pub fn phase_distance_mod_pi(a: f64, b: f64) -> f64 {
    wrap_half_pi(a - b)
}

/// Where to pin the free multiple of pi of an unwrapped curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Anchor {
    /// Shift so the *last* point lies in `(-pi/2, pi/2]`; for curves whose
    /// phase dies off at the high end of the grid.
    LastNearZero,
    /// Shift so the *first* point lies in `(-pi/2, pi/2]`; for threshold
    /// anchoring when the high end never settles to zero.
    FirstNearZero,
}

/// Walk the grid, evaluating `(num, den)` of the tangent and unwrapping the
/// winding of `atan2(num, den)` into a continuous phase. Intervals where the
/// vector swings by more than ~0.45 pi are bisected (the curve is continuous
/// in `x`, so refinement always settles the branch).
pub(crate) fn unwrap_curve<F>(xs: &[f64], eval: F, anchor: Anchor) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    if xs.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: xs.len(),
        });
    }
    let mut out = Vec::with_capacity(xs.len());
    let (n0, d0) = eval(xs[0])?;
    let mut prev = math::atan2(n0, d0);
    out.push(prev);
    let mut x_prev = xs[0];
    for &x in &xs[1..] {
        prev = step_unwrapped(&eval, x_prev, prev, x, 0)?;
        out.push(prev);
        x_prev = x;
    }
    let shift = match anchor {
        Anchor::LastNearZero => PI * math::floor(out[out.len() - 1] / PI + 0.5),
        Anchor::FirstNearZero => PI * math::floor(out[0] / PI + 0.5),
    };
    for v in &mut out {
        *v -= shift;
    }
    Ok(out)
}

fn step_unwrapped<F>(eval: &F, x0: f64, theta0: f64, x1: f64, depth: u32) -> Result<f64>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let (n, d) = eval(x1)?;
    let raw = math::atan2(n, d);
    // Align raw (defined mod 2 pi) with the running branch.
    let theta1 = raw + 2.0 * PI * math::floor((theta0 - raw) / (2.0 * PI) + 0.5);
    if math::abs(theta1 - theta0) <= 0.45 * PI || depth >= 24 {
        return Ok(theta1);
    }
    let xm = 0.5 * (x0 + x1);
    if xm <= x0 || xm >= x1 {
        return Ok(theta1); // grid exhausted at f64 resolution
    }
    let theta_m = step_unwrapped(eval, x0, theta0, xm, depth + 1)?;
    step_unwrapped(eval, xm, theta_m, x1, depth + 1)
}
