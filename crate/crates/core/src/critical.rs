//! Critical (`E = m`) and supercritical (`E = -m`) couplings.
//!
//! At the zero-momentum endpoints the exterior wave degenerates to power
//! laws, so criticality becomes a one-parameter root problem in the
//! coupling. For the square shape the matching conditions are closed-form
//! combinations of spherical Bessel functions; for general shapes the
//! coupled equations are integrated outward and matched against the
//! normalizable power-law branch.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::bessel::sph_j;
use crate::channel::Channel;
use crate::math;
use crate::potential::PotentialSpec;
use crate::radial::rk4_step;
use crate::roots::scan_roots;
use crate::{Error, Result};

/// Which continuum threshold the zero-momentum state sits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergySign {
    /// `E = +m`: critical states.
    PlusM,
    /// `E = -m`: supercritical states.
    MinusM,
}

impl EnergySign {
    pub fn energy(&self, mass: f64) -> f64 {
        match self {
            EnergySign::PlusM => mass,
            EnergySign::MinusM => -mass,
        }
    }

    fn sign(&self) -> f64 {
        match self {
            EnergySign::PlusM => 1.0,
            EnergySign::MinusM => -1.0,
        }
    }
}

/// A zero-momentum matching condition: channel plus threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriticalCondition {
    pub channel: Channel,
    pub energy_sign: EnergySign,
}

impl CriticalCondition {
    pub fn new(channel: Channel, energy_sign: EnergySign) -> Self {
        CriticalCondition {
            channel,
            energy_sign,
        }
    }

    /// Interior momentum at threshold, `p = sqrt(V (V +- 2m))`.
    ///
    /// Real for any `V > 0` at `E = m`; needs `V > 2m` at `E = -m`.
    pub fn interior_momentum(&self, v: f64, mass: f64) -> Result<f64> {
        let arg = v * (v + 2.0 * self.energy_sign.sign() * mass);
        if arg <= 0.0 {
            let threshold = match self.energy_sign {
                EnergySign::PlusM => 0.0,
                EnergySign::MinusM => 2.0 * mass,
            };
            return Err(Error::EvanescentInterior {
                v_threshold: threshold,
            });
        }
        Ok(math::sqrt(arg))
    }
}

/// One solved coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalCoupling {
    /// Well depth (or barrier height through the general solver) in
    /// problem units.
    pub value: f64,
    /// 1-based root ordinal.
    pub index: u32,
    /// Matching residual at the root.
    pub residual: f64,
    pub condition: CriticalCondition,
}

/// Square-well matching residual at threshold, written pole-free as
/// `j_{l_chi}(pa) - RHS * j_{l_minus_chi}(pa)` so roots can be bracketed
/// without worrying about tan poles.
///
/// The four cases:
/// * `chi < 0, E = +m`: `RHS = -2ma/(1+2chi) sqrt(V/(V+2m))`
/// * `chi < 0, E = -m`: `j_{-chi-1}(p a) = 0`
/// * `chi > 0, E = +m`: `j_{chi-1}(p a) = 0`
/// * `chi > 0, E = -m`: `RHS = -(2chi-1)/(2ma) sqrt((V-2m)/V)` against
///   `j_chi / j_{chi-1}`
pub fn square_critical_residual(
    cond: &CriticalCondition,
    v: f64,
    mass: f64,
    range: f64,
) -> Result<f64> {
    let p = cond.interior_momentum(v, mass)?;
    let pa = p * range;
    let chi = cond.channel.chi();
    match (chi > 0, cond.energy_sign) {
        (false, EnergySign::PlusM) => {
            let lc = cond.channel.l_chi();
            let lm = cond.channel.l_minus_chi();
            let rhs = -2.0 * mass * range / (1 + 2 * chi) as f64 * math::sqrt(v / (v + 2.0 * mass));
            Ok(sph_j(lc, pa) - rhs * sph_j(lm, pa))
        }
        (false, EnergySign::MinusM) => Ok(sph_j(cond.channel.l_chi(), pa)),
        (true, EnergySign::PlusM) => Ok(sph_j(chi as u32 - 1, pa)),
        (true, EnergySign::MinusM) => {
            let rhs = -(2 * chi - 1) as f64 / (2.0 * mass * range)
                * math::sqrt((v - 2.0 * mass) / v);
            Ok(sph_j(chi as u32, pa) - rhs * sph_j(chi as u32 - 1, pa))
        }
    }
}

/// s-wave critical condition in transcendental form,
/// `tan(a sqrt(V(V+2m))) = -2ma sqrt((V+2m)/V)`, as the pole-free
/// combination `sin x + c cos x`. Cross-check for the Bessel residual.
pub fn swave_critical_residual_transcendental(v: f64, mass: f64, range: f64) -> f64 {
    let x = range * math::sqrt(v * (v + 2.0 * mass));
    let c = 2.0 * mass * range * math::sqrt((v + 2.0 * mass) / v);
    math::sin(x) + c * math::cos(x)
}

/// p-wave supercritical condition in transcendental form,
/// `tan(a sqrt(V(V-2m))) = 2ma sqrt((V-2m)/V)`, as `sin x - c cos x`.
pub fn pwave_supercritical_residual_transcendental(v: f64, mass: f64, range: f64) -> f64 {
    let x = range * math::sqrt(v * (v - 2.0 * mass));
    let c = 2.0 * mass * range * math::sqrt((v - 2.0 * mass) / v);
    math::sin(x) - c * math::cos(x)
}

/// Closed form of the `n`-th p-wave critical depth (`E = m`):
/// `a sqrt(V(V+2m)) = n pi`, so `V = -m + sqrt(m^2 + (n pi / a)^2)`.
pub fn pwave_critical_closed_form(n: u32, mass: f64, range: f64) -> f64 {
    let x = n as f64 * PI / range;
    -mass + math::sqrt(mass * mass + x * x)
}

/// Closed form of the `n`-th s-wave supercritical depth (`E = -m`):
/// `a sqrt(V(V-2m)) = n pi`, so `V = m + sqrt(m^2 + (n pi / a)^2)`.
pub fn swave_supercritical_closed_form(n: u32, mass: f64, range: f64) -> f64 {
    let x = n as f64 * PI / range;
    mass + math::sqrt(mass * mass + x * x)
}

/// First `count` square-well couplings for the given condition, by a fixed
/// scan over the coupling and bisection refinement.
pub fn find_square_criticals(
    cond: &CriticalCondition,
    mass: f64,
    range: f64,
    count: u32,
) -> Result<Vec<CriticalCoupling>> {
    if count < 1 {
        return Err(Error::InvalidConfig {
            reason: "count must be >= 1",
        });
    }
    let step = 0.05_f64.min(PI / (8.0 * range));
    let lo = match cond.energy_sign {
        EnergySign::PlusM => 0.25 * step,
        // Start clear of the p = 0 boundary where the residual vanishes
        // identically rather than through a root.
        EnergySign::MinusM => 2.0 * mass + 0.5 * step,
    };
    let reach = (count as f64 + 1.5) * PI / range;
    let hi = mass + math::sqrt(mass * mass + reach * reach) + PI / range;
    let f = |v: f64| square_critical_residual(cond, v, mass, range).unwrap_or(f64::NAN);
    let roots = scan_roots(f, lo, hi, step, count as usize, 1e-10)?;
    Ok(roots
        .into_iter()
        .enumerate()
        .map(|(i, value)| CriticalCoupling {
            value,
            index: i as u32 + 1,
            residual: square_critical_residual(cond, value, mass, range).unwrap_or(f64::NAN),
            condition: *cond,
        })
        .collect())
}

/// Knobs of the zero-momentum shooting solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingSettings {
    /// Integration step in units of the range.
    pub step_factor: f64,
    /// Matching radius in units of the range (raised automatically if the
    /// shape's tail has not dropped below 1e-12 there).
    pub match_radius_factor: f64,
    /// Inner sample of the two-point power-law fit, as a fraction of the
    /// matching radius.
    pub inner_fit_fraction: f64,
    /// Coupling scan step.
    pub scan_step: f64,
    /// Bisection tolerance on the coupling.
    pub tolerance: f64,
}

impl Default for ShootingSettings {
    fn default() -> Self {
        ShootingSettings {
            step_factor: 1e-3,
            match_radius_factor: 10.0,
            inner_fit_fraction: 0.8,
            scan_step: 0.05,
            tolerance: 1e-10,
        }
    }
}

/// Zero-momentum matching residual for a general shape, bounded in
/// `[-1, 1]` and changing sign exactly at the critical couplings.
///
/// The regular solution is integrated outward from a pole-free series start
/// and compared against the normalizable exterior branch at `E = +-m`
/// (where the exterior exponentials degenerate to the power laws
/// `r^{-l_chi}` / `r^{l_chi + 1}`):
///
/// * the component that decouples outside (`g` at `E = m` for `chi > 0`,
///   `f` at `E = -m` for `chi < 0`) must vanish, so its normalized value at
///   the matching radius is the residual;
/// * otherwise the growing-power coefficient is extracted from a two-point
///   fit and normalized.
pub fn general_critical_residual(
    template: &PotentialSpec,
    coupling: f64,
    cond: &CriticalCondition,
    mass: f64,
    settings: &ShootingSettings,
) -> Result<f64> {
    let pot = template.with_coupling(coupling);
    let a = pot.range;
    let e = cond.energy_sign.energy(mass);
    let chi = cond.channel.chi();
    let chi_f = chi as f64;
    let k = chi.unsigned_abs() as i32;
    let r0 = 1e-6 * a;
    let r_match = a * settings
        .match_radius_factor
        .max(pot.shape.tail_cut(1e-12));
    let r_inner = settings.inner_fit_fraction * r_match;

    // Orientation-stable start: the chi > 0 series is multiplied through by
    // (E + m - U(0)) so the sigma pole at U(0) = E + m cannot flip the sign
    // of the scanned residual.
    let u0 = pot.value(r0);
    let (mut f, mut g) = if chi > 0 {
        (
            (e + mass - u0) * math::powi(r0, k + 1) / (2 * k + 1) as f64,
            math::powi(r0, k),
        )
    } else {
        (
            math::powi(r0, k),
            (u0 - e + mass) * math::powi(r0, k + 1) / (2 * k + 1) as f64,
        )
    };

    let mut bounds: Vec<f64> = Vec::new();
    bounds.push(r0);
    for &bx in pot.shape.breakpoints() {
        let rb = bx * a;
        if rb > r0 && rb < r_match {
            bounds.push(rb);
        }
    }
    bounds.push(r_match);

    let needs_fit = matches!(
        (chi > 0, cond.energy_sign),
        (false, EnergySign::PlusM) | (true, EnergySign::MinusM)
    );
    let mut inner_sample: Option<(f64, f64)> = None;
    let mut r = r0;
    for span in bounds.windows(2) {
        let (lo, hi) = (span[0], span[1]);
        let hi_is_break = hi != r_match;
        let lo_is_break = lo != r0 && !bounds.is_empty() && lo != r_match;
        let region_pot = |rr: f64| {
            let mut x = rr / a;
            if hi_is_break && x >= hi / a {
                x = (hi / a).next_down();
            }
            if lo_is_break && x <= lo / a {
                x = (lo / a).next_up();
            }
            pot.sign.factor() * pot.coupling * pot.shape.w(x)
        };
        let n = math::ceil((hi - lo) / (settings.step_factor * a)).max(1.0) as usize;
        let h = (hi - lo) / n as f64;
        for i in 0..n {
            let (nf, ng) = rk4_step(&region_pot, chi_f, e, mass, r, f, g, h);
            r = if i == n - 1 { hi } else { lo + (i + 1) as f64 * h };
            f = nf;
            g = ng;
            let mag = math::abs(f).max(math::abs(g));
            if mag > 1e250 {
                f /= mag;
                g /= mag;
                if let Some((_, v)) = inner_sample.as_mut() {
                    *v /= mag;
                }
            }
            if needs_fit && inner_sample.is_none() && r >= r_inner {
                inner_sample = Some((r, if e > 0.0 { f } else { g }));
            }
        }
    }

    let norm = math::hypot(f, g).max(1e-300);
    match (chi > 0, cond.energy_sign) {
        // g decouples outside at E = +m and must vanish for chi > 0.
        (true, EnergySign::PlusM) => Ok(g / norm),
        // f decouples outside at E = -m and must vanish for chi < 0.
        (false, EnergySign::MinusM) => Ok(f / norm),
        // Growing-power extraction on f (E = +m) or g (E = -m):
        // comp = A r^{k} + B r^{1-k}; criticality is A = 0.
        _ => {
            let (r1, c1) = inner_sample.ok_or(Error::InvalidConfig {
                reason: "matching radius too small for the two-point fit",
            })?;
            let c2 = if e > 0.0 { f } else { g };
            let m11 = math::powi(r1, k);
            let m12 = math::powi(r1, 1 - k);
            let m21 = math::powi(r_match, k);
            let m22 = math::powi(r_match, 1 - k);
            let det = m11 * m22 - m12 * m21;
            let a_coef = (c1 * m22 - m12 * c2) / det;
            let b_coef = (m11 * c2 - c1 * m21) / det;
            let grow = a_coef * m21;
            let decay = b_coef * m22;
            Ok(grow / math::hypot(grow, decay).max(1e-300))
        }
    }
}

/// First `count` couplings of a general shape by scan plus bisection.
///
/// The template's own `coupling` field is ignored; the scan supplies it.
/// Supercritical (`E = -m`) conditions are integrated directly at that
/// energy, so comparing them against barrier criticals at `E = +m`
/// exercises the crossing symmetry over two genuinely different runs.
pub fn find_general_criticals(
    template: &PotentialSpec,
    cond: &CriticalCondition,
    mass: f64,
    count: u32,
    settings: &ShootingSettings,
) -> Result<Vec<CriticalCoupling>> {
    if count < 1 {
        return Err(Error::InvalidConfig {
            reason: "count must be >= 1",
        });
    }
    let a = template.range;
    let step = settings.scan_step.min(PI / (8.0 * a));
    let lo = 0.25 * step;
    let hi = 2.0 * mass + 2.5 * (count as f64 + 2.0) * PI / a + 5.0 * mass;
    let f = |v: f64| {
        general_critical_residual(template, v, cond, mass, settings).unwrap_or(f64::NAN)
    };
    let roots = scan_roots(f, lo, hi, step, count as usize, settings.tolerance)?;
    Ok(roots
        .into_iter()
        .enumerate()
        .map(|(i, value)| CriticalCoupling {
            value,
            index: i as u32 + 1,
            residual: f(value),
            condition: *cond,
        })
        .collect())
}
