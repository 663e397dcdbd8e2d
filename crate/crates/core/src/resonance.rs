//! Resonance detection on phase-shift curves and width extraction.
//!
//! A crossing of an odd multiple of `pi/2` is only a resonance when the
//! phase *increases* through it (positive Wigner time delay); decreasing
//! crossings are time advancements. The authoritative width is the full
//! width at half maximum of `sin^2(delta)`, i.e. the energy distance
//! between the `delta = (2n+1)pi/2 -+ pi/4` crossings on the rising flank.
//! The time-delay estimate `1/tau` at the crossing is also carried along;
//! it is the operational choice when the phase never climbs the extra
//! `pi/4` (wide resonances riding on background).

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::math;
use crate::phase::{unwrap_curve, Anchor, PhaseShiftSample};
use crate::{Error, Result};

/// Wigner classification of a `pi/2` crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingKind {
    /// Rising phase, positive time delay.
    Resonance,
    /// Falling phase: time advancement, no capture.
    AntiCrossing,
}

/// One located crossing of `delta = pi/2 (mod pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonancePeak {
    /// Crossing energy `E_R`.
    pub energy: f64,
    /// Local `d(delta)/dE` at the crossing.
    pub slope: f64,
    /// Wigner time delay `tau = 2 d(delta)/dE`.
    pub time_delay: f64,
    /// FWHM of `sin^2(delta)`, when both half-maximum crossings are
    /// bracketed by the curve.
    pub width_fwhm: Option<f64>,
    /// `1/tau` width estimate (approximate; differs from the FWHM by a
    /// constant factor even for an exact Breit-Wigner).
    pub width_from_delay: f64,
    pub kind: CrossingKind,
}

/// Locate every crossing of `delta = pi/2 (mod pi)` on a continuous-branch
/// curve and classify it by the local slope.
pub fn detect_resonances(curve: &[PhaseShiftSample]) -> Result<Vec<ResonancePeak>> {
    validate_curve(curve)?;
    let mut peaks = Vec::new();
    for i in 1..curve.len() {
        let (e0, d0) = (curve[i - 1].energy, curve[i - 1].delta);
        let (e1, d1) = (curve[i].energy, curve[i].delta);
        if d0 == d1 {
            continue;
        }
        let (lo, hi) = if d0 < d1 { (d0, d1) } else { (d1, d0) };
        // Odd multiples of pi/2 inside (lo, hi]; a sample landing exactly on
        // a level belongs to the segment that ends there, so exact hits are
        // neither lost nor double-counted.
        let mut j = math::floor(lo / PI - 0.5) as i64 - 1;
        loop {
            j += 1;
            let level = (j as f64 + 0.5) * PI;
            if level > hi {
                break;
            }
            let s0 = d0 - level;
            let s1 = d1 - level;
            if s0 == 0.0 || (s1 != 0.0 && s0.signum() == s1.signum()) {
                continue;
            }
            let t = (level - d0) / (d1 - d0);
            let e_star = e0 + t * (e1 - e0);
            let slope = (d1 - d0) / (e1 - e0);
            let kind = if slope > 0.0 {
                CrossingKind::Resonance
            } else {
                CrossingKind::AntiCrossing
            };
            let width_fwhm = if kind == CrossingKind::Resonance {
                fwhm_from_samples(curve, i - 1, level)
            } else {
                None
            };
            peaks.push(ResonancePeak {
                energy: e_star,
                slope,
                time_delay: 2.0 * slope,
                width_fwhm,
                width_from_delay: 1.0 / (2.0 * math::abs(slope)),
                kind,
            });
        }
    }
    Ok(peaks)
}

fn validate_curve(curve: &[PhaseShiftSample]) -> Result<()> {
    if curve.len() < 10 {
        return Err(Error::TooFewSamples {
            needed: 10,
            got: curve.len(),
        });
    }
    for (i, w) in curve.windows(2).enumerate() {
        if w[1].energy <= w[0].energy {
            return Err(Error::InvalidConfig {
                reason: "curve energies must increase strictly",
            });
        }
        let jump = math::abs(w[1].delta - w[0].delta);
        if jump > FRAC_PI_2 {
            return Err(Error::BranchDiscontinuity { index: i + 1, jump });
        }
    }
    Ok(())
}

/// Interpolated crossings of `level - pi/4` (left of segment `seg`) and
/// `level + pi/4` (right of it); the distance is the FWHM of `sin^2`.
fn fwhm_from_samples(curve: &[PhaseShiftSample], seg: usize, level: f64) -> Option<f64> {
    let lower = level - FRAC_PI_4;
    let upper = level + FRAC_PI_4;
    let mut e_lo = None;
    for i in (0..=seg).rev() {
        let (d0, d1) = (curve[i].delta, curve[i + 1].delta);
        if (d0 - lower) * (d1 - lower) <= 0.0 && d0 != d1 {
            let t = (lower - d0) / (d1 - d0);
            e_lo = Some(curve[i].energy + t * (curve[i + 1].energy - curve[i].energy));
            break;
        }
    }
    let mut e_hi = None;
    for i in seg..curve.len() - 1 {
        let (d0, d1) = (curve[i].delta, curve[i + 1].delta);
        if (d0 - upper) * (d1 - upper) <= 0.0 && d0 != d1 {
            let t = (upper - d0) / (d1 - d0);
            e_hi = Some(curve[i].energy + t * (curve[i + 1].energy - curve[i].energy));
            break;
        }
    }
    match (e_lo, e_hi) {
        (Some(a), Some(b)) => Some(b - a),
        _ => None,
    }
}

/// FWHM of `sin^2(delta)` around a detected resonance, from the same
/// samples. Errors if the peak is a time advancement or a half-maximum
/// crossing lies outside the curve.
pub fn breit_wigner_width(curve: &[PhaseShiftSample], peak: &ResonancePeak) -> Result<f64> {
    if peak.kind != CrossingKind::Resonance {
        return Err(Error::NotAResonance);
    }
    validate_curve(curve)?;
    // Re-locate the crossing segment nearest the peak energy.
    let seg = curve
        .windows(2)
        .position(|w| w[0].energy <= peak.energy && peak.energy <= w[1].energy)
        .ok_or(Error::HalfMaxNotBracketed { side: "either" })?;
    let level = nearest_half_pi_level(0.5 * (curve[seg].delta + curve[seg + 1].delta));
    let lower = level - FRAC_PI_4;
    let upper = level + FRAC_PI_4;
    let cross = |target: f64, range: &mut dyn Iterator<Item = usize>| -> Option<f64> {
        for i in range {
            let (d0, d1) = (curve[i].delta, curve[i + 1].delta);
            if (d0 - target) * (d1 - target) <= 0.0 && d0 != d1 {
                let t = (target - d0) / (d1 - d0);
                return Some(curve[i].energy + t * (curve[i + 1].energy - curve[i].energy));
            }
        }
        None
    };
    let e_lo = cross(lower, &mut (0..=seg).rev()).ok_or(Error::HalfMaxNotBracketed {
        side: "low-energy",
    })?;
    let e_hi = cross(upper, &mut (seg..curve.len() - 1)).ok_or(Error::HalfMaxNotBracketed {
        side: "high-energy",
    })?;
    Ok(e_hi - e_lo)
}

fn nearest_half_pi_level(delta: f64) -> f64 {
    (math::floor(delta / PI - 0.5 + 0.5) + 0.5) * PI
}

/// Ratio of effective widths `Gamma_a / Gamma_b`: FWHM when both peaks have
/// one, otherwise the time-delay widths.
pub fn width_ratio(a: &ResonancePeak, b: &ResonancePeak) -> f64 {
    match (a.width_fwhm, b.width_fwhm) {
        (Some(wa), Some(wb)) => wa / wb,
        _ => a.width_from_delay / b.width_from_delay,
    }
}

/// Re-detect a resonance on progressively tighter windows around it.
///
/// `eval` returns the `(num, den)` pair of `tan(delta)` at an energy;
/// `e_min` clips the window (typically just above threshold). Each round
/// resamples `[E_R - 5 Gamma, E_R + 5 Gamma]` with 200 points, which is the
/// refinement that turns keV-scale widths against MeV-scale energies into
/// well-resolved crossings.
pub fn refine_resonance<F>(
    eval: F,
    coarse: &ResonancePeak,
    e_min: f64,
    rounds: u32,
) -> Result<ResonancePeak>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    if coarse.kind != CrossingKind::Resonance {
        return Err(Error::NotAResonance);
    }
    let mut peak = *coarse;
    for _ in 0..rounds {
        let width = peak
            .width_fwhm
            .unwrap_or(peak.width_from_delay * 4.0)
            .max(1e-300);
        let lo = (peak.energy - 5.0 * width).max(e_min);
        let hi = peak.energy + 5.0 * width;
        let grid: Vec<f64> = (0..200)
            .map(|i| lo + (hi - lo) * i as f64 / 199.0)
            .collect();
        let deltas = unwrap_curve(&grid, &eval, Anchor::FirstNearZero)?;
        let samples: Vec<PhaseShiftSample> = grid
            .iter()
            .zip(&deltas)
            .map(|(&e, &d)| PhaseShiftSample {
                k: e,
                energy: e,
                delta: d,
                tan_delta: math::tan(d),
                sin2_delta: math::sin(d) * math::sin(d),
            })
            .collect();
        let peaks = detect_resonances(&samples)?;
        peak = *peaks
            .iter()
            .filter(|p| p.kind == CrossingKind::Resonance)
            .min_by(|p, q| {
                let dp = math::abs(p.energy - peak.energy);
                let dq = math::abs(q.energy - peak.energy);
                dp.partial_cmp(&dq).unwrap()
            })
            .ok_or(Error::NotAResonance)?;
    }
    Ok(peak)
}
