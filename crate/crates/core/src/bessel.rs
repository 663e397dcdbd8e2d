//! Spherical Bessel functions and the small handful of limit identities the
//! scattering formulas lean on.
//!
//! Orders stay small here (partial waves rarely go past l ~ 6), so stability
//! is handled the boring way: upward recurrence where it is stable (`n_l`,
//! the growing `K`-form), Miller's downward recurrence for `j_l` and the
//! `I`-form when the argument is below the order, and short power series
//! near the origin.

use crate::math;
use crate::{Error, Result};

/// Regular spherical Bessel function `j_n(x)`.
///
/// Total on the real line; `j_0(0) = 1` and `j_n(0) = 0` for `n > 0`.
pub fn sph_j(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    // Parity: j_n(-x) = (-1)^n j_n(x).
    let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let x = math::abs(x);
    sign * sph_j_positive(n, x)
}

fn sph_j_positive(n: u32, x: f64) -> f64 {
    if x < 0.1 && n > 0 {
        return small_x_series(n, x, -1.0);
    }
    match n {
        0 => math::sin(x) / x,
        1 => math::sin(x) / (x * x) - math::cos(x) / x,
        _ if x >= n as f64 => {
            // Upward recurrence is stable once the argument clears the order.
            let mut jm = math::sin(x) / x;
            let mut j = math::sin(x) / (x * x) - math::cos(x) / x;
            for k in 1..n {
                let next = (2 * k + 1) as f64 / x * j - jm;
                jm = j;
                j = next;
            }
            j
        }
        _ => miller_downward(n, x),
    }
}

/// Leading terms of x^n/(2n+1)!! * sum_k (s x^2/2)^k / (k! (2n+3)...(2n+1+2k))
/// with s = -1 for j_n and s = +1 for the modified I-form.
fn small_x_series(n: u32, x: f64, s: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..12u32 {
        term *= s * x * x / (2.0 * k as f64 * (2 * n + 1 + 2 * k) as f64);
        sum += term;
        if math::abs(term) < 1e-18 * math::abs(sum) {
            break;
        }
    }
    math::powi(x, n as i32) / double_factorial_f64(2 * n as i32 + 1) * sum
}

fn miller_downward(n: u32, x: f64) -> f64 {
    let start = n as usize + x as usize + 24;
    let mut jp = 0.0_f64;
    let mut j = 1e-30_f64;
    let mut at_n = 0.0;
    for k in (0..=start).rev() {
        let jm = (2 * k + 3) as f64 / x * j - jp;
        jp = j;
        j = jm;
        if k == n as usize {
            at_n = j;
        }
    }
    // j now holds the unnormalized j_0; rescale against sin(x)/x.
    at_n * (math::sin(x) / x) / j
}

/// Irregular spherical Bessel function `n_n(x)` for `x > 0`.
pub fn sph_n(n: u32, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::NonpositiveArgument { name: "x", value: x });
    }
    let mut nm = -math::cos(x) / x;
    if n == 0 {
        return Ok(nm);
    }
    let mut nn = -math::cos(x) / (x * x) - math::sin(x) / x;
    for k in 1..n {
        let next = (2 * k + 1) as f64 / x * nn - nm;
        nm = nn;
        nn = next;
    }
    Ok(nn)
}

/// `d/dx j_n(x)` via `j_n'(x) = j_{n-1}(x) - (n+1)/x * j_n(x)`.
pub fn sph_j_deriv(n: u32, x: f64) -> f64 {
    if n == 0 {
        return -sph_j(1, x);
    }
    sph_j(n - 1, x) - (n + 1) as f64 / x * sph_j(n, x)
}

/// `d/dx n_n(x)` for `x > 0`.
pub fn sph_n_deriv(n: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return Ok(-sph_n(1, x)?);
    }
    Ok(sph_n(n - 1, x)? - (n + 1) as f64 / x * sph_n(n, x)?)
}

/// Decaying modified combination `sqrt(2x/pi) K_{n+1/2}(x)` for `x > 0`.
///
/// Normalized so that `mod_sph_k(n, x) -> (2n-1)!! x^{-n}` as `x -> 0` and
/// `mod_sph_k(0, x) = exp(-x)` exactly.
pub fn mod_sph_k(n: u32, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::NonpositiveArgument { name: "x", value: x });
    }
    let e = math::exp(-x);
    let mut km = e;
    if n == 0 {
        return Ok(km);
    }
    let mut k = e * (1.0 + 1.0 / x);
    for j in 1..n {
        // Growing family: upward recurrence is stable.
        let next = (2 * j + 1) as f64 / x * k + km;
        km = k;
        k = next;
    }
    Ok(k)
}

/// Growing modified combination `sqrt(2x/pi) I_{n+1/2}(x)` for `x > 0`.
///
/// `mod_sph_i(0, x) = (2/pi) sinh(x)`; the family grows like `exp(x)`.
pub fn mod_sph_i(n: u32, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::NonpositiveArgument { name: "x", value: x });
    }
    Ok(2.0 * x / core::f64::consts::PI * sph_i_bare(n, x))
}

/// Modified spherical Bessel i_n(x) = sqrt(pi/2x) I_{n+1/2}(x), internal
/// (any common per-argument scale cancels in the phase-shift ratios).
pub(crate) fn sph_i_bare(n: u32, x: f64) -> f64 {
    if x < 0.1 && n > 0 {
        return small_x_series(n, x, 1.0);
    }
    match n {
        0 => math::sinh(x) / x,
        1 => math::cosh(x) / x - math::sinh(x) / (x * x),
        _ => {
            // Decreasing in order: Miller downward, normalized by i_0.
            let start = n as usize + x as usize + 24;
            let mut ip = 0.0_f64;
            let mut i = 1e-30_f64;
            let mut at_n = 0.0;
            for k in (0..=start).rev() {
                let im = (2 * k + 3) as f64 / x * i + ip;
                ip = i;
                i = im;
                if k == n as usize {
                    at_n = i;
                }
            }
            at_n * (math::sinh(x) / x) / i
        }
    }
}

/// Odd double factorial with the `(-1)!! = 1` convention.
pub fn double_factorial(n: i32) -> Result<u64> {
    if n < -1 {
        return Err(Error::InvalidOrder { n });
    }
    let mut acc: u64 = 1;
    let mut k = n;
    while k > 1 {
        acc *= k as u64;
        k -= 2;
    }
    Ok(acc)
}

pub(crate) fn double_factorial_f64(n: i32) -> f64 {
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}
