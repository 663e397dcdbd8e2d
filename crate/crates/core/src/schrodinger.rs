//! Nonrelativistic phase shifts and critical depths for the spherical well
//! `V(r) = -V` for `r <= a`, zero outside.

use alloc::vec::Vec;

use crate::bessel::{sph_j, sph_j_deriv, sph_n, sph_n_deriv};
use crate::math;
use crate::phase::{unwrap_curve, Anchor, PhaseShiftSample};
use crate::roots::scan_roots;
use crate::{Error, Result};

/// Attractive spherical well, nonrelativistic kinematics (`k^2 = 2 m E`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodingerWell {
    depth: f64,
    range: f64,
    mass: f64,
}

impl SchrodingerWell {
    /// Depth `V > 0` (the potential inside is `-V`), range `a > 0`, mass `m > 0`.
    pub fn new(depth: f64, range: f64, mass: f64) -> Result<Self> {
        if !(depth >= 0.0) {
            return Err(Error::InvalidConfig {
                reason: "well depth must be >= 0",
            });
        }
        if !(range > 0.0) || !(mass > 0.0) {
            return Err(Error::InvalidConfig {
                reason: "range and mass must be positive",
            });
        }
        Ok(SchrodingerWell { depth, range, mass })
    }

    pub fn depth(&self) -> f64 {
        self.depth
    }
    pub fn range(&self) -> f64 {
        self.range
    }
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Interior momentum `p = sqrt(k^2 + 2 m V)`.
    pub fn interior_momentum(&self, k: f64) -> f64 {
        math::sqrt(k * k + 2.0 * self.mass * self.depth)
    }

    pub fn energy_of_k(&self, k: f64) -> f64 {
        k * k / (2.0 * self.mass)
    }
}

/// `(num, den)` of the partial-wave tangent
/// `tan delta_l = [k j_l'(ka) j_l(pa) - p j_l(ka) j_l'(pa)] /
///               [k n_l'(ka) j_l(pa) - p n_l(ka) j_l'(pa)]`.
pub fn tan_delta_parts(well: &SchrodingerWell, l: u32, k: f64) -> Result<(f64, f64)> {
    if !(k > 0.0) {
        return Err(Error::NonpositiveMomentum { k });
    }
    let a = well.range;
    let p = well.interior_momentum(k);
    let ka = k * a;
    let pa = p * a;
    let num = k * sph_j_deriv(l, ka) * sph_j(l, pa) - p * sph_j(l, ka) * sph_j_deriv(l, pa);
    let den = k * sph_n_deriv(l, ka)? * sph_j(l, pa) - p * sph_n(l, ka)? * sph_j_deriv(l, pa);
    Ok((num, den))
}

/// Phase shift on the principal branch at a single momentum.
pub fn phase_shift(well: &SchrodingerWell, l: u32, k: f64) -> Result<PhaseShiftSample> {
    let (num, den) = tan_delta_parts(well, l, k)?;
    Ok(PhaseShiftSample::principal(
        k,
        well.energy_of_k(k),
        num,
        den,
    ))
}

/// s-wave closed form, pole-free:
/// `tan delta_0 = (k tan pa - p tan ka) / (p + k tan ka tan pa)`
/// multiplied through by `cos ka cos pa`.
pub fn tan_delta_l0_parts(well: &SchrodingerWell, k: f64) -> Result<(f64, f64)> {
    if !(k > 0.0) {
        return Err(Error::NonpositiveMomentum { k });
    }
    let a = well.range;
    let p = well.interior_momentum(k);
    let (sk, ck) = (math::sin(k * a), math::cos(k * a));
    let (sp, cp) = (math::sin(p * a), math::cos(p * a));
    Ok((k * sp * ck - p * sk * cp, p * ck * cp + k * sk * sp))
}

/// p-wave closed form, pole-free.
pub fn tan_delta_l1_parts(well: &SchrodingerWell, k: f64) -> Result<(f64, f64)> {
    if !(k > 0.0) {
        return Err(Error::NonpositiveMomentum { k });
    }
    let a = well.range;
    let p = well.interior_momentum(k);
    let (sk, ck) = (math::sin(k * a), math::cos(k * a));
    let (sp, cp) = (math::sin(p * a), math::cos(p * a));
    let num = a * k * p * p * sp * ck - a * k * k * p * sk * cp + (k * k - p * p) * sk * sp;
    let den = a * k * k * p * ck * cp + (p * p - k * k) * sp * ck + a * k * p * p * sk * sp;
    Ok((num, den))
}

/// Critical depth supporting the `n`-th zero-energy state in partial wave `l`.
///
/// `l = 0`: `(2n-1)^2 pi^2 / (8 m a^2)`; `l = 1`: `n^2 pi^2 / (2 m a^2)`;
/// `l >= 2`: from the `n`-th root of `j_{l-1}`.
pub fn critical_depth(l: u32, n: u32, mass: f64, range: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidConfig {
            reason: "root ordinal n must be >= 1",
        });
    }
    let pi = core::f64::consts::PI;
    let scale = 2.0 * mass * range * range;
    match l {
        0 => {
            let x = (2 * n - 1) as f64 * pi / 2.0;
            Ok(x * x / scale)
        }
        1 => {
            let x = n as f64 * pi;
            Ok(x * x / scale)
        }
        _ => {
            // Roots of j_{l-1} interlace the multiples of pi; a half-unit scan
            // with bisection refinement picks them off in order.
            let hi = (n + l) as f64 * pi + 10.0;
            let roots = scan_roots(|x| sph_j(l - 1, x), 1e-3, hi, 0.5, n as usize, 1e-12)?;
            let x = roots[n as usize - 1];
            Ok(x * x / scale)
        }
    }
}

/// Phase-shift curve over an increasing momentum grid, on a continuous
/// branch anchored so that the largest-`k` end sits near zero.
///
/// The grid should extend far enough that the true phase has decayed below
/// `pi/2` at its top; `k_max ~ 10 max(1/a, m V a)` is comfortably enough.
pub fn phase_curve(well: &SchrodingerWell, l: u32, k_grid: &[f64]) -> Result<Vec<PhaseShiftSample>> {
    let deltas = unwrap_curve(
        k_grid,
        |k| tan_delta_parts(well, l, k),
        Anchor::LastNearZero,
    )?;
    Ok(k_grid
        .iter()
        .zip(deltas)
        .map(|(&k, d)| {
            let (num, den) = tan_delta_parts(well, l, k).expect("grid validated by unwrap");
            PhaseShiftSample::on_branch(k, well.energy_of_k(k), num, den, d)
        })
        .collect())
}

/// Wigner time delay `tau = 2 d(delta)/dE` by central differences
/// (one-sided at the ends). Samples must be on a continuous branch with
/// strictly increasing energy.
pub fn wigner_time_delay(samples: &[PhaseShiftSample]) -> Result<Vec<f64>> {
    if samples.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: samples.len(),
        });
    }
    for w in samples.windows(2) {
        if w[1].energy <= w[0].energy {
            return Err(Error::InvalidConfig {
                reason: "time delay needs strictly increasing energies",
            });
        }
    }
    for (i, w) in samples.windows(2).enumerate() {
        let jump = math::abs(w[1].delta - w[0].delta);
        if jump > core::f64::consts::FRAC_PI_2 {
            return Err(Error::BranchDiscontinuity { index: i + 1, jump });
        }
    }
    let n = samples.len();
    let mut tau = Vec::with_capacity(n);
    for i in 0..n {
        let (lo, hi) = if i == 0 {
            (0, 1)
        } else if i == n - 1 {
            (n - 2, n - 1)
        } else {
            (i - 1, i + 1)
        };
        let d_delta = samples[hi].delta - samples[lo].delta;
        let d_e = samples[hi].energy - samples[lo].energy;
        tau.push(2.0 * d_delta / d_e);
    }
    Ok(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    const M: f64 = 0.5;
    const A: f64 = 1.0;

    fn well(v: f64) -> SchrodingerWell {
        SchrodingerWell::new(v, A, M).unwrap()
    }

    #[test]
    fn free_particle_has_zero_phase() {
        let w = well(0.0);
        for l in 0..4 {
            for &k in &[0.2, 1.0, 3.7] {
                let s = phase_shift(&w, l, k).unwrap();
                assert!(s.delta.abs() < 1e-12, "l={l} k={k}: {}", s.delta);
            }
        }
    }

    #[test]
    fn rejects_nonpositive_momentum() {
        let w = well(1.0);
        assert!(matches!(
            phase_shift(&w, 0, 0.0),
            Err(Error::NonpositiveMomentum { .. })
        ));
        assert!(phase_shift(&w, 0, -0.5).is_err());
    }

    #[test]
    fn critical_depths_closed_forms() {
        // l=0, n=1: pi^2/4 with m=1/2, a=1
        let v = critical_depth(0, 1, M, A).unwrap();
        assert!((v - PI * PI / 4.0).abs() < 1e-12);
        // l=1, n=1: pi^2
        let v = critical_depth(1, 1, M, A).unwrap();
        assert!((v - PI * PI).abs() < 1e-12);
        // l=2, n=1: first root of j_1 at x = 4.493409457909064
        let v = critical_depth(2, 1, M, A).unwrap();
        let x1 = 4.493409457909064_f64;
        assert!((v - x1 * x1).abs() < 1e-9, "got {v}");
    }

    #[test]
    fn near_critical_swave_levinson_values() {
        // Just below the first critical depth the zero-energy phase is ~0;
        // just above, ~pi; at the critical depth, ~pi/2.
        let vc = PI * PI / 4.0;
        let k = 1e-4;
        let grid: Vec<f64> = geometric_grid(k, 30.0, 1200);

        let d = phase_curve(&well(2.4), 0, &grid).unwrap()[0].delta;
        assert!(d.abs() < 1e-2, "V=2.4 gave {d}");
        let d = phase_curve(&well(2.6), 0, &grid).unwrap()[0].delta;
        assert!((d - PI).abs() < 1e-2, "V=2.6 gave {d}");
        let d = phase_curve(&well(vc), 0, &grid).unwrap()[0].delta;
        assert!((d - PI / 2.0).abs() < 1e-3, "V=Vc gave {d}");
    }

    #[test]
    fn almost_binding_swave_stays_below_half_pi() {
        let w = well(2.4);
        let mut max_delta: f64 = 0.0;
        let grid = geometric_grid(1e-3, 30.0, 800);
        for s in phase_curve(&w, 0, &grid).unwrap() {
            max_delta = max_delta.max(s.delta);
        }
        assert!(max_delta < PI / 2.0, "max delta = {max_delta}");
    }

    #[test]
    fn pwave_resonance_crosses_half_pi_with_delay() {
        // V just under the l=1 critical depth pi^2 ~ 9.87.
        let w = well(9.7);
        let grid: Vec<f64> = (1..1500).map(|i| i as f64 * 0.01).collect();
        let curve = phase_curve(&w, 1, &grid).unwrap();
        let tau = wigner_time_delay(&curve).unwrap();
        let mut crossed_rising = false;
        for (i, pair) in curve.windows(2).enumerate() {
            if (pair[0].delta - PI / 2.0) * (pair[1].delta - PI / 2.0) < 0.0
                && pair[1].delta > pair[0].delta
            {
                crossed_rising = true;
                assert!(tau[i] > 0.0, "delay must be positive at the crossing");
            }
        }
        assert!(crossed_rising, "no rising pi/2 crossing found");
    }

    #[test]
    fn time_delay_on_synthetic_curves() {
        let flat: Vec<PhaseShiftSample> = (1..6)
            .map(|i| PhaseShiftSample {
                k: i as f64,
                energy: i as f64,
                delta: 0.7,
                tan_delta: 0.7f64.tan(),
                sin2_delta: 0.7f64.sin().powi(2),
            })
            .collect();
        for t in wigner_time_delay(&flat).unwrap() {
            assert_eq!(t, 0.0);
        }
        let linear: Vec<PhaseShiftSample> = (1..6)
            .map(|i| {
                let e = i as f64;
                PhaseShiftSample {
                    k: e,
                    energy: e,
                    delta: 0.3 * e,
                    tan_delta: (0.3 * e).tan(),
                    sin2_delta: (0.3 * e).sin().powi(2),
                }
            })
            .collect();
        for t in wigner_time_delay(&linear).unwrap() {
            assert!((t - 0.6).abs() < 1e-12);
        }
        assert!(matches!(
            wigner_time_delay(&flat[..2]),
            Err(Error::TooFewSamples { .. })
        ));
    }

    fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);
        let mut v = Vec::with_capacity(n);
        let mut x = lo;
        for _ in 0..n {
            v.push(x);
            x *= ratio;
        }
        v
    }
}
