//! Exact Dirac phase shifts and radial solutions for the spherical well and
//! barrier.
//!
//! Conventions: the stored `depth` is signed, positive for a well (potential
//! value `-depth` inside `r <= a`) and negative for a barrier. The coupled
//! radial equations for `r Psi = (f, g)` read
//!
//! ```text
//! f' = -(chi/r) f + (E + m - U(r)) g
//! g' = -(E - m - U(r)) f + (chi/r) g
//! ```
//!
//! with `U` the potential value. Inside the well `W = E + depth` plays the
//! role of the local energy; the interior momentum is `p^2 = W^2 - m^2`.
//! When `p^2 < 0` (scattering over a barrier between the continua) the
//! interior Bessel functions continue to the modified family, which keeps
//! every quantity here real.

use alloc::vec::Vec;

use crate::bessel::{sph_i_bare, sph_j, sph_n};
use crate::channel::Channel;
use crate::math;
use crate::phase::{unwrap_curve, Anchor, PhaseShiftSample};
use crate::{Error, Result};

/// Square well or barrier plus the partial wave scattered off it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracSquareSystem {
    depth: f64,
    range: f64,
    mass: f64,
    channel: Channel,
}

impl DiracSquareSystem {
    /// `depth > 0` is a well of that depth, `depth < 0` a barrier of height
    /// `|depth|`.
    pub fn new(depth: f64, range: f64, mass: f64, channel: Channel) -> Result<Self> {
        if !(range > 0.0) || !(mass > 0.0) {
            return Err(Error::InvalidConfig {
                reason: "range and mass must be positive",
            });
        }
        Ok(DiracSquareSystem {
            depth,
            range,
            mass,
            channel,
        })
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
    pub fn channel(&self) -> Channel {
        self.channel
    }

    /// Potential value at radius `r`.
    pub fn potential_value(&self, r: f64) -> f64 {
        if r <= self.range {
            -self.depth
        } else {
            0.0
        }
    }

    /// The crossed problem: `E -> -E, V -> -V, chi -> -chi` leaves the
    /// coupled equations invariant (with `f <-> g`).
    pub fn crossed(&self) -> DiracSquareSystem {
        DiracSquareSystem {
            depth: -self.depth,
            range: self.range,
            mass: self.mass,
            channel: self.channel.crossed(),
        }
    }
}

/// External/internal kinematics at a given energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracKinematics {
    pub energy: f64,
    /// External momentum, real for `|E| > m`.
    pub k: f64,
    /// Interior `p^2 = (E + depth)^2 - m^2`; negative means an evanescent
    /// interior.
    pub p_squared: f64,
    /// `|p|` (or the evanescent rate when `p_squared < 0`).
    pub interior_scale: f64,
    /// Effective kinematic ratio multiplying the small-component match;
    /// equals `(p/k) (E+m)/(E+V+m)` in the propagating regime.
    pub gamma: f64,
}

impl DiracKinematics {
    /// Scattering kinematics; requires `|E| > m`.
    pub fn scattering(sys: &DiracSquareSystem, energy: f64) -> Result<Self> {
        let m = sys.mass;
        if !(math::abs(energy) > m) {
            return Err(Error::BelowThreshold { energy, mass: m });
        }
        let k = math::sqrt(energy * energy - m * m);
        let w = energy + sys.depth;
        let mut p_squared = w * w - m * m;
        if p_squared == 0.0 {
            // Nudge off the measure-zero branch point; both branches share
            // the same limit there.
            p_squared = 1e-300;
        }
        let q = math::sqrt(math::abs(p_squared));
        let gamma = if p_squared > 0.0 {
            (q / k) * (energy + m) / (w + m)
        } else {
            sys.channel.tau() as f64 * (q / k) * (energy + m) / (w + m)
        };
        Ok(DiracKinematics {
            energy,
            k,
            p_squared,
            interior_scale: q,
            gamma,
        })
    }

    /// Evanescent rate `kappa = sqrt(m^2 - E^2)` for sub-threshold energies.
    pub fn evanescent_rate(energy: f64, mass: f64) -> Option<f64> {
        (math::abs(energy) < mass).then(|| math::sqrt(mass * mass - energy * energy))
    }

    pub fn propagating_interior(&self) -> bool {
        self.p_squared > 0.0
    }
}

/// Interior radial basis value of order `l` at radius `r`: `j_l(pr)` in the
/// propagating regime, `i_l(|p| r)` in the evanescent one.
fn interior_fn(kin: &DiracKinematics, l: u32, r: f64) -> f64 {
    if kin.propagating_interior() {
        sph_j(l, kin.interior_scale * r)
    } else {
        sph_i_bare(l, kin.interior_scale * r)
    }
}

/// `(num, den)` of `tan delta_{l_chi}` for the square system:
///
/// ```text
/// tan d = [g J_lc(ka) F_lm(pa) - F_lc(pa) J_lm(ka)]
///       / [g F_lm(pa) N_lc(ka) - F_lc(pa) N_lm(ka)]
/// ```
///
/// with `F` the interior basis and `g` the kinematic ratio.
pub fn tan_delta_parts(sys: &DiracSquareSystem, energy: f64) -> Result<(f64, f64)> {
    let kin = DiracKinematics::scattering(sys, energy)?;
    let (lc, lm) = (sys.channel.l_chi(), sys.channel.l_minus_chi());
    let ka = kin.k * sys.range;
    let f_lc = interior_fn(&kin, lc, sys.range);
    let f_lm = interior_fn(&kin, lm, sys.range);
    let num = kin.gamma * sph_j(lc, ka) * f_lm - f_lc * sph_j(lm, ka);
    let den = kin.gamma * f_lm * sph_n(lc, ka)? - f_lc * sph_n(lm, ka)?;
    Ok((num, den))
}

/// Phase shift on the principal branch at a single energy. A vanishing
/// denominator comes out as exactly `+-pi/2`.
pub fn phase_shift(sys: &DiracSquareSystem, energy: f64) -> Result<PhaseShiftSample> {
    let (num, den) = tan_delta_parts(sys, energy)?;
    let kin = DiracKinematics::scattering(sys, energy)?;
    Ok(PhaseShiftSample::principal(kin.k, energy, num, den))
}

/// s-wave (`chi = -1`) closed form of the phase-shift tangent, written as a
/// polynomial in sines and cosines so the `tan` poles never appear. All
/// interior-momentum dependence enters through `u = p^2`, which keeps the
/// expression real on both sides of the evanescent transition:
///
/// ```text
/// num = (gamma - p/k) sk Sp - gamma (pa) sk Cp + (pa) ck Sp
/// den = (p/k - gamma) ck Sp + gamma (pa) ck Cp + (pa) sk Sp
/// ```
///
/// with `Sp = sin(pa)`, `Cp = cos(pa)` continued through `u < 0`.
pub fn swave_tan_delta_parts(sys: &DiracSquareSystem, energy: f64) -> Result<(f64, f64)> {
    if sys.channel.chi() != -1 {
        return Err(Error::WrongChannel { expected: "s1/2" });
    }
    let m = sys.mass;
    if !(math::abs(energy) > m) {
        return Err(Error::BelowThreshold { energy, mass: m });
    }
    let a = sys.range;
    let k = math::sqrt(energy * energy - m * m);
    let w = energy + sys.depth;
    let u = w * w - m * m;
    // sinc-like kernel sin(pa)/p and cos(pa), even in p.
    let (sinc, cosc) = if u >= 0.0 {
        let p = math::sqrt(u);
        if p * a < 1e-8 {
            (a, 1.0)
        } else {
            (math::sin(p * a) / p, math::cos(p * a))
        }
    } else {
        let q = math::sqrt(-u);
        (math::sinh(q * a) / q, math::cosh(q * a))
    };
    let (sk, ck) = (math::sin(k * a), math::cos(k * a));
    let gfac = (energy + m) / (k * (w + m)); // gamma = gfac * p
    let num = gfac * u * sinc * sk - u * sinc * sk / k - gfac * u * a * cosc * sk
        + u * a * sinc * ck;
    let den =
        u * sinc * ck / k - gfac * u * sinc * ck + gfac * u * a * cosc * ck + u * a * sinc * sk;
    Ok((num, den))
}

/// s-wave phase shift via the closed form; same quantity as
/// [`phase_shift`] for `chi = -1`.
pub fn swave_phase_closed_form(sys: &DiracSquareSystem, energy: f64) -> Result<PhaseShiftSample> {
    let (num, den) = swave_tan_delta_parts(sys, energy)?;
    let k = math::sqrt(energy * energy - sys.mass * sys.mass);
    Ok(PhaseShiftSample::principal(k, energy, num, den))
}

/// Matching coefficients of the exterior free solution
/// `f = r [b1 j_{lc}(kr) + b2 n_{lc}(kr)]` against the regular interior
/// solution normalized to `a1 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchedAmplitudes {
    pub a1: f64,
    /// Irregular interior admixture; zero for regular solutions.
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    /// Asymptotic amplitude `A = sqrt(b1^2 + b2^2)`.
    pub amplitude: f64,
    /// `tan delta = -b2/b1`.
    pub tan_delta: f64,
}

/// Solve the 2x2 continuity system at `r = a` for `b1, b2` (with `a1 = 1`).
pub fn match_coefficients(sys: &DiracSquareSystem, energy: f64) -> Result<MatchedAmplitudes> {
    let kin = DiracKinematics::scattering(sys, energy)?;
    let (lc, lm) = (sys.channel.l_chi(), sys.channel.l_minus_chi());
    let ka = kin.k * sys.range;
    let f_lc = interior_fn(&kin, lc, sys.range);
    let f_lm = interior_fn(&kin, lm, sys.range);
    let (a11, a12) = (sph_j(lc, ka), sph_n(lc, ka)?);
    let (a21, a22) = (sph_j(lm, ka), sph_n(lm, ka)?);
    let (r1, r2) = (f_lc, kin.gamma * f_lm);
    let det = a11 * a22 - a12 * a21;
    let b1 = (r1 * a22 - a12 * r2) / det;
    let b2 = (a11 * r2 - r1 * a21) / det;
    Ok(MatchedAmplitudes {
        a1: 1.0,
        a2: 0.0,
        b1,
        b2,
        amplitude: math::hypot(b1, b2),
        tan_delta: -b2 / b1,
    })
}

/// Sampled radial solution `(f, g)` with its boundary bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub grid: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub boundary: BoundaryInfo,
}

/// How a [`RadialSolution`] was normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryInfo {
    /// Analytic interior/exterior pair with matched coefficients.
    Matched {
        a1: f64,
        a2: f64,
        b1: f64,
        b2: f64,
        amplitude: f64,
    },
    /// Power-series start at the origin (numerical integration).
    Series { origin_amplitude: f64, sigma: f64 },
}

/// Regular interior solution sampled on `grid` (valid for `r <= a`):
/// `f = a1 r F_lc(pr)`, `g = a1 tau p r / (W + m) F_lm(pr)`.
pub fn interior_solution(
    sys: &DiracSquareSystem,
    energy: f64,
    grid: &[f64],
) -> Result<RadialSolution> {
    let kin = DiracKinematics::scattering(sys, energy)?;
    let w = energy + sys.depth;
    let (lc, lm) = (sys.channel.l_chi(), sys.channel.l_minus_chi());
    // In the evanescent regime the tau factor cancels against the i^l
    // bookkeeping of the continued Bessel functions.
    let g_factor = if kin.propagating_interior() {
        sys.channel.tau() as f64 * kin.interior_scale / (w + sys.mass)
    } else {
        kin.interior_scale / (w + sys.mass)
    };
    let mut f = Vec::with_capacity(grid.len());
    let mut g = Vec::with_capacity(grid.len());
    for &r in grid {
        f.push(r * interior_fn(&kin, lc, r));
        g.push(g_factor * r * interior_fn(&kin, lm, r));
    }
    Ok(RadialSolution {
        grid: grid.to_vec(),
        f,
        g,
        boundary: BoundaryInfo::Matched {
            a1: 1.0,
            a2: 0.0,
            b1: 0.0,
            b2: 0.0,
            amplitude: 0.0,
        },
    })
}

/// Free exterior solution with the phase shift folded in:
/// `f = b1 r [j_lc(kr) - tan(delta) n_lc(kr)]` and the matching `g`.
pub fn exterior_solution(
    sys: &DiracSquareSystem,
    energy: f64,
    tan_delta: f64,
    b1: f64,
    grid: &[f64],
) -> Result<RadialSolution> {
    let kin = DiracKinematics::scattering(sys, energy)?;
    let (lc, lm) = (sys.channel.l_chi(), sys.channel.l_minus_chi());
    let tau = sys.channel.tau() as f64;
    let mut f = Vec::with_capacity(grid.len());
    let mut g = Vec::with_capacity(grid.len());
    for &r in grid {
        let kr = kin.k * r;
        f.push(b1 * r * (sph_j(lc, kr) - tan_delta * sph_n(lc, kr)?));
        g.push(
            tau * kin.k * r / (energy + sys.mass)
                * b1
                * (sph_j(lm, kr) - tan_delta * sph_n(lm, kr)?),
        );
    }
    let b2 = -b1 * tan_delta;
    Ok(RadialSolution {
        grid: grid.to_vec(),
        f,
        g,
        boundary: BoundaryInfo::Matched {
            a1: 0.0,
            a2: 0.0,
            b1,
            b2,
            amplitude: math::hypot(b1, b2),
        },
    })
}

/// Matched solution over the whole grid: interior basis for `r <= a`,
/// exterior combination beyond, continuous at `r = a` by construction.
pub fn matched_solution(
    sys: &DiracSquareSystem,
    energy: f64,
    grid: &[f64],
) -> Result<RadialSolution> {
    let coeffs = match_coefficients(sys, energy)?;
    let a = sys.range;
    let interior_grid: Vec<f64> = grid.iter().copied().filter(|&r| r <= a).collect();
    let exterior_grid: Vec<f64> = grid.iter().copied().filter(|&r| r > a).collect();
    let inner = interior_solution(sys, energy, &interior_grid)?;
    let outer = exterior_solution(sys, energy, coeffs.tan_delta, coeffs.b1, &exterior_grid)?;
    let mut f = inner.f;
    let mut g = inner.g;
    f.extend(outer.f);
    g.extend(outer.g);
    let mut grid_all = interior_grid;
    grid_all.extend(exterior_grid);
    Ok(RadialSolution {
        grid: grid_all,
        f,
        g,
        boundary: BoundaryInfo::Matched {
            a1: coeffs.a1,
            a2: coeffs.a2,
            b1: coeffs.b1,
            b2: coeffs.b2,
            amplitude: coeffs.amplitude,
        },
    })
}

/// Phase-shift curve over an increasing energy grid on a continuous branch,
/// anchored so the first (threshold-side) point lies in `(-pi/2, pi/2]`.
pub fn phase_curve(
    sys: &DiracSquareSystem,
    energies: &[f64],
) -> Result<Vec<PhaseShiftSample>> {
    let deltas = unwrap_curve(
        energies,
        |e| tan_delta_parts(sys, e),
        Anchor::FirstNearZero,
    )?;
    let m = sys.mass;
    Ok(energies
        .iter()
        .zip(deltas)
        .map(|(&e, d)| {
            let (num, den) = tan_delta_parts(sys, e).expect("validated by unwrap");
            PhaseShiftSample::on_branch(math::sqrt(e * e - m * m), e, num, den, d)
        })
        .collect())
}
