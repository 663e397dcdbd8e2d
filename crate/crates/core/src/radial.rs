//! Fixed-step integration of the coupled radial equations for general
//! short-range potentials, node detection, and the numerical phase.
//!
//! The pipeline mirrors a scattering "experiment": start at the origin with
//! amplitude `C`, integrate outward until the asymptotic region, pick the
//! `nu`-th node of the small component `g`, and fit a sine to the large
//! component `f` there. The fitted amplitude `D` gives the amplitude at the
//! origin for a unit asymptotic wave as `C(v) = C / D`, and the fitted local
//! phase gives the windowed "numerical phase" in `[-pi/2, pi/2]`.

use alloc::vec::Vec;

use crate::bessel::double_factorial_f64;
use crate::channel::Channel;
use crate::dirac::{BoundaryInfo, DiracKinematics, DiracSquareSystem, RadialSolution};
use crate::math;
use crate::phase::wrap_half_pi;
use crate::potential::PotentialSpec;
use crate::{Error, Result};

const COMPONENT_CAP: f64 = 1e250;

/// Step sizes, start radius and node bookkeeping for one integration run.
///
/// The defaults follow the rates the solvers were validated at: a fine step
/// of `1e-3 a` out to `20 a`, a coarse step of `1e-2 a` beyond, a series
/// start at `1e-6 a`, and the 20th node of `g` as the fit anchor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    /// Step size inside `r < far_start`.
    pub step: f64,
    /// Step size beyond `far_start`.
    pub far_step: f64,
    /// Where the coarse-step region begins.
    pub far_start: f64,
    /// Series-start radius.
    pub start_radius: f64,
    /// Which node of `g` anchors the sine fit.
    pub node_index: u32,
    /// Amplitude `C` of the series start.
    pub origin_amplitude: f64,
    /// Optional hard cap on the integration radius.
    pub max_radius: Option<f64>,
}

impl IntegrationConfig {
    pub fn for_range(a: f64) -> Self {
        IntegrationConfig {
            step: 1e-3 * a,
            far_step: 1e-2 * a,
            far_start: 20.0 * a,
            start_radius: 1e-6 * a,
            node_index: 20,
            origin_amplitude: 1.0,
            max_radius: None,
        }
    }

    pub fn with_node_index(mut self, nu: u32) -> Self {
        self.node_index = nu;
        self
    }

    pub fn with_origin_amplitude(mut self, c: f64) -> Self {
        self.origin_amplitude = c;
        self
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.step = h;
        self.far_step = 10.0 * h;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.far_step > 0.0) {
            return Err(Error::InvalidConfig {
                reason: "step sizes must be positive",
            });
        }
        if !(self.start_radius > 0.0 && self.start_radius < self.far_start) {
            return Err(Error::InvalidConfig {
                reason: "start radius must sit below the far region",
            });
        }
        if self.node_index == 0 {
            return Err(Error::InvalidConfig {
                reason: "node index must be >= 1",
            });
        }
        Ok(())
    }
}

/// One Runge-Kutta step of the coupled system; `pot` is the potential value
/// function valid across the whole step.
#[inline]
pub(crate) fn rk4_step<P: Fn(f64) -> f64>(
    pot: &P,
    chi: f64,
    e: f64,
    m: f64,
    r: f64,
    f: f64,
    g: f64,
    h: f64,
) -> (f64, f64) {
    #[inline]
    fn rhs(chi: f64, e: f64, m: f64, u: f64, r: f64, f: f64, g: f64) -> (f64, f64) {
        (
            -chi / r * f + (e + m - u) * g,
            -(e - m - u) * f + chi / r * g,
        )
    }
    let u0 = pot(r);
    let um = pot(r + 0.5 * h);
    let u1 = pot(r + h);
    let (k1f, k1g) = rhs(chi, e, m, u0, r, f, g);
    let (k2f, k2g) = rhs(chi, e, m, um, r + 0.5 * h, f + 0.5 * h * k1f, g + 0.5 * h * k1g);
    let (k3f, k3g) = rhs(chi, e, m, um, r + 0.5 * h, f + 0.5 * h * k2f, g + 0.5 * h * k2g);
    let (k4f, k4g) = rhs(chi, e, m, u1, r + h, f + h * k3f, g + h * k3g);
    (
        f + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f),
        g + h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g),
    )
}

/// Power-series start values `(f, g, sigma)` at `r0`.
///
/// `chi > 0`: `f = C r^{k+1}, g = sigma C r^k` with
/// `sigma = (2k+1)/(E + m - U(0))`;
/// `chi < 0`: `f = C r^k, g = sigma C r^{k+1}` with
/// `sigma = (U(0) - E + m)/(2k+1)`; `k = |chi|`.
pub(crate) fn series_start(
    chi: i32,
    e: f64,
    m: f64,
    u0: f64,
    r0: f64,
    c: f64,
) -> Result<(f64, f64, f64)> {
    let k = chi.unsigned_abs() as i32;
    if chi > 0 {
        let denom = e + m - u0;
        if denom == 0.0 || !denom.is_finite() {
            return Err(Error::InvalidConfig {
                reason: "series start singular: potential at origin equals E + m",
            });
        }
        let sigma = (2 * k + 1) as f64 / denom;
        Ok((
            c * math::powi(r0, k + 1),
            sigma * c * math::powi(r0, k),
            sigma,
        ))
    } else {
        let sigma = (u0 - e + m) / (2 * k + 1) as f64;
        Ok((
            c * math::powi(r0, k),
            sigma * c * math::powi(r0, k + 1),
            sigma,
        ))
    }
}

/// Integrate the coupled equations outward from the series start until the
/// requested node of `g` plus a fitting margin (`10/k`) has been passed.
///
/// The grid is split at the shape's discontinuities so that every
/// Runge-Kutta stage samples a single branch of the potential; for the
/// square shape this keeps the scheme at full order through `r = a`.
pub fn integrate_radial(
    pot: &PotentialSpec,
    channel: &Channel,
    energy: f64,
    mass: f64,
    cfg: &IntegrationConfig,
) -> Result<RadialSolution> {
    cfg.validate()?;
    if !(energy > mass) {
        return Err(Error::BelowThreshold { energy, mass });
    }
    let k_out = math::sqrt(energy * energy - mass * mass);
    let chi = channel.chi() as f64;
    let a = pot.range;
    let r0 = cfg.start_radius;

    // Region boundaries: series start, shape breakpoints, far-step switch.
    let mut bounds: Vec<f64> = Vec::new();
    bounds.push(r0);
    for &bx in pot.shape.breakpoints() {
        let rb = bx * a;
        if rb > r0 && rb < cfg.far_start {
            bounds.push(rb);
        }
    }
    bounds.push(cfg.far_start);

    let (f0, g0, sigma) = series_start(
        channel.chi(),
        energy,
        mass,
        pot.value(r0),
        r0,
        cfg.origin_amplitude,
    )?;

    let hard_cap = cfg.max_radius.unwrap_or(
        cfg.far_start + ((cfg.node_index + 12) as f64 * core::f64::consts::PI + 20.0) / k_out,
    );
    let estimated = ((cfg.far_start - r0) / cfg.step) as usize
        + ((hard_cap - cfg.far_start) / cfg.far_step) as usize
        + 16;
    let mut grid = Vec::with_capacity(estimated);
    let mut fs = Vec::with_capacity(estimated);
    let mut gs = Vec::with_capacity(estimated);
    grid.push(r0);
    fs.push(f0);
    gs.push(g0);

    let (mut r, mut f, mut g) = (r0, f0, g0);
    let mut nodes_found: u32 = 0;
    let mut stop_at: Option<f64> = None;

    // Fine regions up to far_start, each stepped to land exactly on its
    // upper bound.
    for span in bounds.windows(2) {
        let (lo, hi) = (span[0], span[1]);
        let lo_is_break = lo != r0 && lo != cfg.far_start;
        let hi_is_break = hi != cfg.far_start;
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
        let n = math::ceil((hi - lo) / cfg.step).max(1.0) as usize;
        let h = (hi - lo) / n as f64;
        for i in 0..n {
            let (nf, ng) = rk4_step(&region_pot, chi, energy, mass, r, f, g, h);
            r = if i == n - 1 { hi } else { lo + (i + 1) as f64 * h };
            f = nf;
            g = ng;
            if math::abs(f) > COMPONENT_CAP || math::abs(g) > COMPONENT_CAP {
                return Err(Error::IntegrationOverflow { radius: r });
            }
            if gs[gs.len() - 1] * g < 0.0 {
                nodes_found += 1;
                if nodes_found == cfg.node_index && stop_at.is_none() {
                    stop_at = Some(r + 10.0 / k_out);
                }
            }
            grid.push(r);
            fs.push(f);
            gs.push(g);
        }
    }

    // Coarse region: march until the node margin or the cap.
    let far_pot = |rr: f64| pot.value(rr);
    let h = cfg.far_step;
    loop {
        if let Some(target) = stop_at {
            if r >= target {
                break;
            }
        }
        if r >= hard_cap {
            return Err(Error::NodeNotFound {
                wanted: cfg.node_index,
                found: nodes_found,
                radius: r,
            });
        }
        let (nf, ng) = rk4_step(&far_pot, chi, energy, mass, r, f, g, h);
        r += h;
        f = nf;
        g = ng;
        if math::abs(f) > COMPONENT_CAP || math::abs(g) > COMPONENT_CAP {
            return Err(Error::IntegrationOverflow { radius: r });
        }
        if gs[gs.len() - 1] * g < 0.0 {
            nodes_found += 1;
            if nodes_found == cfg.node_index && stop_at.is_none() {
                stop_at = Some(r + 10.0 / k_out);
            }
        }
        grid.push(r);
        fs.push(f);
        gs.push(g);
    }

    Ok(RadialSolution {
        grid,
        f: fs,
        g: gs,
        boundary: BoundaryInfo::Series {
            origin_amplitude: cfg.origin_amplitude,
            sigma,
        },
    })
}

/// Location of a node of `g`: the interpolated radius and the grid index
/// just below it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeLocation {
    pub radius: f64,
    pub lower_index: usize,
}

/// The `nu`-th sign change of `g`, counting every node outward from the
/// start of the grid, located by linear interpolation.
pub fn find_node(sol: &RadialSolution, nu: u32) -> Result<NodeLocation> {
    if nu == 0 {
        return Err(Error::InvalidConfig {
            reason: "node index must be >= 1",
        });
    }
    let mut count = 0u32;
    for i in 1..sol.grid.len() {
        if sol.g[i - 1] * sol.g[i] < 0.0 {
            count += 1;
            if count == nu {
                let t = sol.g[i - 1] / (sol.g[i - 1] - sol.g[i]);
                return Ok(NodeLocation {
                    radius: sol.grid[i - 1] + t * (sol.grid[i] - sol.grid[i - 1]),
                    lower_index: i - 1,
                });
            }
        }
    }
    Err(Error::NodeNotFound {
        wanted: nu,
        found: count,
        radius: *sol.grid.last().unwrap_or(&0.0),
    })
}

/// Sine fit of the large component near the fit node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericalPhaseResult {
    /// Windowed numerical phase in `[-pi/2, pi/2]`.
    pub delta: f64,
    /// Fitted asymptotic amplitude `D > 0`.
    pub amplitude: f64,
    /// Fitted local phase `theta` at the fit radius.
    pub theta: f64,
    /// Interpolated radius of the anchor node.
    pub node_radius: f64,
    /// Amplitude at the origin for a unit asymptotic wave, `C / D`.
    pub origin_amplitude: f64,
}

/// Fit `f(r) = D sin(k r + delta')` from two adjacent samples near the
/// `nu`-th node of `g` and window the phase:
///
/// ```text
/// theta = atan2(sin(kh) s, (beta/alpha - cos(kh)) s),  s = sign(alpha)
/// D = alpha / sin(theta)
/// delta_1 = theta - k r + l_chi pi/2,   delta = delta_1 wrapped to [-pi/2, pi/2]
/// ```
///
/// The `l_chi pi/2` offset undoes the partial wave's asymptotic phase for
/// any channel. For `l_chi > 0` the pure-sine model is only asymptotically
/// valid: the fit carries an `O(1/(k r_nu))` bias, so raise the node index
/// when that matters. Degenerate sample pairs (`beta/alpha = cos(kh)` or
/// `alpha = beta`) need no special casing in this form; `atan2` resolves
/// them.
pub fn numerical_phase(
    sol: &RadialSolution,
    channel: &Channel,
    momentum: f64,
    cfg: &IntegrationConfig,
) -> Result<NumericalPhaseResult> {
    let node = find_node(sol, cfg.node_index)?;
    let mut i = node.lower_index;
    // f is near its extremum at a node of g; step right if the left sample
    // happens to vanish.
    if sol.f[i] == 0.0 && i + 2 < sol.grid.len() {
        i += 1;
    }
    let alpha = sol.f[i];
    let beta = sol.f[i + 1];
    if math::abs(alpha) < 1e-12 && math::abs(beta) < 1e-12 {
        return Err(Error::DegenerateFit {
            radius: sol.grid[i],
        });
    }
    let h = sol.grid[i + 1] - sol.grid[i];
    let s = if alpha >= 0.0 { 1.0 } else { -1.0 };
    let theta = math::atan2(
        math::sin(momentum * h) * s,
        (beta / alpha - math::cos(momentum * h)) * s,
    );
    let amplitude = alpha / math::sin(theta);
    let delta_1 =
        theta - momentum * sol.grid[i] + channel.l_chi() as f64 * core::f64::consts::FRAC_PI_2;
    let delta = wrap_half_pi(delta_1);
    let origin_amplitude = match sol.boundary {
        BoundaryInfo::Series {
            origin_amplitude, ..
        } => origin_amplitude / amplitude,
        BoundaryInfo::Matched { .. } => 1.0 / amplitude,
    };
    Ok(NumericalPhaseResult {
        delta,
        amplitude,
        theta,
        node_radius: node.radius,
        origin_amplitude,
    })
}

/// Integrate and fit in one go.
pub fn scattering_phase(
    pot: &PotentialSpec,
    channel: &Channel,
    momentum: f64,
    mass: f64,
    cfg: &IntegrationConfig,
) -> Result<NumericalPhaseResult> {
    if !(momentum > 0.0) {
        return Err(Error::NonpositiveMomentum { k: momentum });
    }
    let energy = math::sqrt(mass * mass + momentum * momentum);
    let sol = integrate_radial(pot, channel, energy, mass, cfg)?;
    numerical_phase(&sol, channel, momentum, cfg)
}

/// One point of a resonance curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    /// Scan coordinate (coupling `v` or momentum `p`).
    pub x: f64,
    /// Amplitude at the origin `C`.
    pub amplitude_at_origin: f64,
    /// Windowed numerical phase.
    pub delta: f64,
}

/// Resonance curve with per-point failures kept aside.
#[derive(Debug, Clone, PartialEq)]
pub struct ResonanceCurve {
    pub points: Vec<CurvePoint>,
    pub failures: Vec<(f64, Error)>,
}

/// `C(v)` and `delta(v)` over a coupling grid at fixed incident momentum.
/// Every point is an independent integration; failures are recorded and the
/// scan continues.
pub fn resonance_curve_vs_coupling(
    template: &PotentialSpec,
    channel: &Channel,
    momentum: f64,
    couplings: &[f64],
    mass: f64,
    cfg: &IntegrationConfig,
) -> ResonanceCurve {
    let mut points = Vec::with_capacity(couplings.len());
    let mut failures = Vec::new();
    for &v in couplings {
        let pot = template.with_coupling(v);
        match scattering_phase(&pot, channel, momentum, mass, cfg) {
            Ok(r) => points.push(CurvePoint {
                x: v,
                amplitude_at_origin: r.origin_amplitude,
                delta: r.delta,
            }),
            Err(e) => failures.push((v, e)),
        }
    }
    ResonanceCurve { points, failures }
}

/// `C(p)` and `delta(p)` over a momentum grid at fixed coupling.
pub fn resonance_curve_vs_momentum(
    pot: &PotentialSpec,
    channel: &Channel,
    momenta: &[f64],
    mass: f64,
    cfg: &IntegrationConfig,
) -> ResonanceCurve {
    let mut points = Vec::with_capacity(momenta.len());
    let mut failures = Vec::new();
    for &p in momenta {
        match scattering_phase(pot, channel, p, mass, cfg) {
            Ok(r) => points.push(CurvePoint {
                x: p,
                amplitude_at_origin: r.origin_amplitude,
                delta: r.delta,
            }),
            Err(e) => failures.push((p, e)),
        }
    }
    ResonanceCurve { points, failures }
}

/// Closed-form amplitude at the origin for the square shape, normalized the
/// same way as the numerical `C`: a unit-amplitude asymptotic `f` wave.
///
/// From the matched coefficients with `a1 = 1` the asymptotic amplitude of
/// `f` is `A/k` and the series-start coefficient is `q^{l_chi}/(2 l_chi+1)!!`,
/// so `C = (k/A) q^{l_chi} / (2 l_chi + 1)!!` with `q` the interior momentum
/// scale. The barrier case is the same formula after `V -> -V`.
pub fn analytic_c_square(sys: &DiracSquareSystem, energy: f64) -> Result<f64> {
    let kin = DiracKinematics::scattering(sys, energy)?;
    let coeffs = crate::dirac::match_coefficients(sys, energy)?;
    let lc = sys.channel().l_chi();
    Ok(kin.k / coeffs.amplitude * math::powi(kin.interior_scale, lc as i32)
        / double_factorial_f64(2 * lc as i32 + 1))
}
