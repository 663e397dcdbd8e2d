//! Command implementations.

use partialwave::critical::{
    find_general_criticals, find_square_criticals, CriticalCondition, EnergySign, ShootingSettings,
};
use partialwave::dirac::DiracSquareSystem;
use partialwave::radial::{integrate_radial, numerical_phase, scattering_phase, IntegrationConfig};
use partialwave::resonance::{detect_resonances, CrossingKind};
use partialwave::schrodinger::{wigner_time_delay, SchrodingerWell};
use partialwave::{
    Channel, PhaseShiftSample, PotentialSign, PotentialSpec, Shape,
};

use crate::output::{fmt, sidecar_path, CsvWriter};
use crate::{
    CliError, CriticalArgs, Model, PhaseShiftArgs, PotentialArgs, ResonanceScanArgs, ScanAxis,
    ShapeArg, SignArg, UnitsArg, WavefunctionArgs, HBARC_MEV_FM,
};

/// Resolved potential in internal (natural) units.
struct Resolved {
    shape: Shape,
    sign: PotentialSign,
    coupling: f64,
    range: f64,
    mass: f64,
    mev_fm: bool,
}

impl Resolved {
    fn spec(&self) -> Result<PotentialSpec, CliError> {
        Ok(PotentialSpec::new(
            self.shape.clone(),
            self.sign,
            self.coupling,
            self.range,
        )?)
    }

    fn signed_depth(&self) -> f64 {
        match self.sign {
            PotentialSign::Well => self.coupling,
            PotentialSign::Barrier => -self.coupling,
        }
    }

    fn length_out(&self, x: f64) -> f64 {
        if self.mev_fm {
            x * HBARC_MEV_FM
        } else {
            x
        }
    }
}

fn resolve(p: &PotentialArgs) -> Result<Resolved, CliError> {
    if !(p.range > 0.0) {
        return Err(CliError::config("--range must be positive"));
    }
    if !(p.mass > 0.0) {
        return Err(CliError::config("--mass must be positive"));
    }
    if !(p.depth >= 0.0) {
        return Err(CliError::config("--depth must be >= 0"));
    }
    let shape = match p.shape {
        ShapeArg::Square => Shape::Square,
        ShapeArg::Gaussian => Shape::Gaussian,
        ShapeArg::Exponential => Shape::Exponential,
        ShapeArg::WoodsSaxon => Shape::WoodsSaxon,
        ShapeArg::Tabulated => {
            let path = p
                .shape_file
                .as_ref()
                .ok_or_else(|| CliError::config("--shape tabulated requires --shape-file"))?;
            Shape::Tabulated(crate::tabulated::load(path)?)
        }
    };
    let mev_fm = p.units == UnitsArg::MevFm;
    let range = if mev_fm { p.range / HBARC_MEV_FM } else { p.range };
    Ok(Resolved {
        shape,
        sign: match p.sign {
            SignArg::Well => PotentialSign::Well,
            SignArg::Barrier => PotentialSign::Barrier,
        },
        coupling: p.depth,
        range,
        mass: p.mass,
        mev_fm,
    })
}

fn echo_potential(w: &mut CsvWriter, p: &PotentialArgs) {
    w.echo("shape", format!("{:?}", p.shape).to_lowercase());
    if let Some(f) = &p.shape_file {
        w.echo("shape_file", f.display());
    }
    w.echo("sign", format!("{:?}", p.sign).to_lowercase());
    w.echo("depth", fmt(p.depth));
    w.echo("range", fmt(p.range));
    w.echo("mass", fmt(p.mass));
    w.echo(
        "units",
        match p.units {
            UnitsArg::Natural => "natural",
            UnitsArg::MevFm => "mev-fm",
        },
    );
}

fn grid(from: f64, to: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if points < 2 {
        return Err(CliError::config("--points must be at least 2"));
    }
    if !(from < to) {
        return Err(CliError::config("--from must lie below --to"));
    }
    Ok((0..points)
        .map(|i| from + (to - from) * i as f64 / (points - 1) as f64)
        .collect())
}

fn integration_config(r: &Resolved, nu: u32, step: Option<f64>) -> Result<IntegrationConfig, CliError> {
    let mut cfg = IntegrationConfig::for_range(r.range).with_node_index(nu);
    if let Some(h) = step {
        let h = if r.mev_fm { h / HBARC_MEV_FM } else { h };
        if !(h > 0.0) {
            return Err(CliError::config("--step must be positive"));
        }
        cfg = cfg.with_step(h);
    }
    Ok(cfg)
}

fn schrodinger_l(label: &str) -> Result<u32, CliError> {
    let s = label.trim();
    if let Ok(l) = s.parse::<u32>() {
        return Ok(l);
    }
    match s {
        "s" => Ok(0),
        "p" => Ok(1),
        "d" => Ok(2),
        "f" => Ok(3),
        _ => Err(CliError::config(format!(
            "--channel {s:?} is not a Schrodinger partial wave (use l or s/p/d/f)"
        ))),
    }
}

/// Fold a sequence of mod-pi phases onto a continuous branch.
fn unwrap_mod_pi(deltas: &mut [f64]) {
    for i in 1..deltas.len() {
        let shift = ((deltas[i - 1] - deltas[i]) / core::f64::consts::PI).round();
        deltas[i] += shift * core::f64::consts::PI;
    }
}

pub fn phase_shift(args: &PhaseShiftArgs) -> Result<(), CliError> {
    let r = resolve(&args.potential)?;
    let axis = grid(args.from, args.to, args.points)?;
    let axis_name = match args.scan {
        ScanAxis::E => "energy",
        ScanAxis::K | ScanAxis::P => "momentum",
        ScanAxis::V => {
            return Err(CliError::config(
                "--scan v is a resonance-scan axis; phase-shift scans e or k",
            ))
        }
    };

    let samples: Vec<PhaseShiftSample> = match args.model {
        Model::Schrodinger => {
            if args.potential.shape != ShapeArg::Square {
                return Err(CliError::config(
                    "--model schrodinger supports --shape square only",
                ));
            }
            if args.potential.sign != SignArg::Well {
                return Err(CliError::config(
                    "--model schrodinger supports --sign well only",
                ));
            }
            let l = schrodinger_l(&args.channel)?;
            let well = SchrodingerWell::new(r.coupling, r.range, r.mass)?;
            let ks: Vec<f64> = match args.scan {
                ScanAxis::E => {
                    if !(args.from > 0.0) {
                        return Err(CliError::config("--from must be positive (energy scan)"));
                    }
                    axis.iter().map(|&e| (2.0 * r.mass * e).sqrt()).collect()
                }
                _ => {
                    if !(args.from > 0.0) {
                        return Err(CliError::config("--from must be positive (momentum scan)"));
                    }
                    axis.clone()
                }
            };
            partialwave::schrodinger::phase_curve(&well, l, &ks)?
        }
        Model::Dirac => {
            let channel = Channel::parse(&args.channel)?;
            let energies: Vec<f64> = match args.scan {
                ScanAxis::E => axis.clone(),
                _ => axis
                    .iter()
                    .map(|&k| (r.mass * r.mass + k * k).sqrt())
                    .collect(),
            };
            if energies[0] <= r.mass {
                return Err(CliError::config(
                    "--from must start above threshold (|E| > m, k > 0)",
                ));
            }
            if args.potential.shape == ShapeArg::Square {
                let sys =
                    DiracSquareSystem::new(r.signed_depth(), r.range, r.mass, channel)?;
                partialwave::dirac::phase_curve(&sys, &energies)?
            } else {
                // Numerical curve: windowed phases unwrapped mod pi.
                let cfg = integration_config(&r, args.nu, args.step)?;
                let pot = r.spec()?;
                let mut deltas = Vec::with_capacity(energies.len());
                for &e in &energies {
                    let p = (e * e - r.mass * r.mass).sqrt();
                    let res = scattering_phase(&pot, &channel, p, r.mass, &cfg)?;
                    deltas.push(res.delta);
                }
                unwrap_mod_pi(&mut deltas);
                energies
                    .iter()
                    .zip(&deltas)
                    .map(|(&e, &d)| PhaseShiftSample {
                        k: (e * e - r.mass * r.mass).sqrt(),
                        energy: e,
                        delta: d,
                        tan_delta: d.tan(),
                        sin2_delta: d.sin().powi(2),
                    })
                    .collect()
            }
        }
    };

    let tau = wigner_time_delay(&samples)?;
    let mut w = CsvWriter::new(
        "phase-shift",
        vec![axis_name, "delta", "tan_delta", "sin2_delta", "time_delay"],
    );
    w.echo("model", format!("{:?}", args.model).to_lowercase());
    echo_potential(&mut w, &args.potential);
    w.echo("channel", &args.channel);
    w.echo("scan", axis_name);
    w.echo("from", fmt(args.from));
    w.echo("to", fmt(args.to));
    w.echo("points", args.points);
    w.echo("nu", args.nu);
    if let Some(h) = args.step {
        w.echo("step", fmt(h));
    }
    for ((x, s), t) in axis.iter().zip(&samples).zip(&tau) {
        w.row(vec![*x, s.delta, s.tan_delta, s.sin2_delta, *t]);
    }
    w.write(&args.out)
}

pub fn critical(args: &CriticalArgs) -> Result<(), CliError> {
    let r = resolve(&args.potential)?;
    if args.count < 1 {
        return Err(CliError::config("--count must be at least 1"));
    }
    let s_ch = Channel::parse("s1/2").unwrap();
    let p_ch = Channel::parse("p1/2").unwrap();

    // Column conditions. Sector layout: barrier (+) and well (-) criticals
    // at E = m; the square barrier columns go through the crossed well
    // conditions at E = -m, which the crossing symmetry makes exact.
    let values = |cond: &CriticalCondition, sign: PotentialSign| -> Result<Vec<f64>, CliError> {
        if args.potential.shape == ShapeArg::Square {
            let cond = if sign == PotentialSign::Barrier {
                CriticalCondition::new(cond.channel.crossed(), flip(cond.energy_sign))
            } else {
                *cond
            };
            Ok(find_square_criticals(&cond, r.mass, r.range, args.count)?
                .into_iter()
                .map(|c| c.value)
                .collect())
        } else {
            let mut settings = ShootingSettings::default();
            if let Some(h) = args.step {
                let h = if r.mev_fm { h / HBARC_MEV_FM } else { h };
                settings.step_factor = h / r.range;
            }
            let template = PotentialSpec::new(r.shape.clone(), sign, 1.0, r.range)?;
            Ok(find_general_criticals(&template, cond, r.mass, args.count, &settings)?
                .into_iter()
                .map(|c| c.value)
                .collect())
        }
    };

    let (labels, columns): (Vec<&str>, Vec<Vec<f64>>) = if args.wells_only {
        (
            vec!["s_e_plus_m", "s_e_minus_m", "p_e_plus_m", "p_e_minus_m"],
            vec![
                values(
                    &CriticalCondition::new(s_ch, EnergySign::PlusM),
                    PotentialSign::Well,
                )?,
                values(
                    &CriticalCondition::new(s_ch, EnergySign::MinusM),
                    PotentialSign::Well,
                )?,
                values(
                    &CriticalCondition::new(p_ch, EnergySign::PlusM),
                    PotentialSign::Well,
                )?,
                values(
                    &CriticalCondition::new(p_ch, EnergySign::MinusM),
                    PotentialSign::Well,
                )?,
            ],
        )
    } else {
        (
            vec!["s12_barrier", "s12_well", "p12_barrier", "p12_well"],
            vec![
                values(
                    &CriticalCondition::new(s_ch, EnergySign::PlusM),
                    PotentialSign::Barrier,
                )?,
                values(
                    &CriticalCondition::new(s_ch, EnergySign::PlusM),
                    PotentialSign::Well,
                )?,
                values(
                    &CriticalCondition::new(p_ch, EnergySign::PlusM),
                    PotentialSign::Barrier,
                )?,
                values(
                    &CriticalCondition::new(p_ch, EnergySign::PlusM),
                    PotentialSign::Well,
                )?,
            ],
        )
    };

    let mut w = CsvWriter::new(
        "critical",
        std::iter::once("n")
            .chain(labels.iter().copied())
            .collect::<Vec<_>>(),
    );
    echo_potential(&mut w, &args.potential);
    w.echo("count", args.count);
    w.echo("wells_only", args.wells_only);
    for n in 0..args.count as usize {
        let mut row = vec![(n + 1) as f64];
        for col in &columns {
            row.push(col[n]);
        }
        w.row(row);
    }
    w.write(&args.out)
}

fn flip(sign: EnergySign) -> EnergySign {
    match sign {
        EnergySign::PlusM => EnergySign::MinusM,
        EnergySign::MinusM => EnergySign::PlusM,
    }
}

pub fn resonance_scan(args: &ResonanceScanArgs) -> Result<(), CliError> {
    let r = resolve(&args.potential)?;
    let channel = Channel::parse(&args.channel)?;
    let axis = grid(args.from, args.to, args.points)?;
    let cfg = integration_config(&r, args.nu, args.step)?;

    let (axis_name, curve) = match args.scan {
        ScanAxis::V => {
            let p = args.momentum.ok_or_else(|| {
                CliError::config("--scan v needs a fixed --momentum")
            })?;
            if !(p > 0.0) {
                return Err(CliError::config("--momentum must be positive"));
            }
            if args.from < 0.0 {
                return Err(CliError::config("--from must be >= 0 for coupling scans"));
            }
            let template = PotentialSpec::new(r.shape.clone(), r.sign, 0.0, r.range)?;
            (
                "coupling",
                partialwave::radial::resonance_curve_vs_coupling(
                    &template, &channel, p, &axis, r.mass, &cfg,
                ),
            )
        }
        ScanAxis::P | ScanAxis::K => {
            if !(args.from > 0.0) {
                return Err(CliError::config("--from must be positive for momentum scans"));
            }
            let pot = r.spec()?;
            (
                "momentum",
                partialwave::radial::resonance_curve_vs_momentum(
                    &pot, &channel, &axis, r.mass, &cfg,
                ),
            )
        }
        ScanAxis::E => {
            return Err(CliError::config(
                "--scan must be v or p for resonance scans",
            ))
        }
    };

    for (x, err) in &curve.failures {
        eprintln!("point {axis_name}={x}: {err}");
    }

    let mut w = CsvWriter::new("resonance-scan", vec![axis_name, "c", "delta"]);
    echo_potential(&mut w, &args.potential);
    w.echo("channel", &args.channel);
    w.echo("scan", axis_name);
    w.echo("from", fmt(args.from));
    w.echo("to", fmt(args.to));
    w.echo("points", args.points);
    if let Some(p) = args.momentum {
        w.echo("momentum", fmt(p));
    }
    w.echo("nu", args.nu);
    for pt in &curve.points {
        w.row(vec![pt.x, pt.amplitude_at_origin, pt.delta]);
    }
    w.write(&args.out)?;

    // Peak summary sidecar: local maxima of C located by a three-point
    // parabola; momentum scans also report widths from the phase curve.
    if let Some(out) = &args.out {
        let mut peaks = CsvWriter::new(
            "resonance-scan peaks",
            if args.scan == ScanAxis::V {
                vec!["position", "c_peak"]
            } else {
                vec!["position", "c_peak", "gamma_fwhm", "time_delay"]
            },
        );
        peaks.comment(&format!("peaks of c over the {axis_name} grid"));
        let pts = &curve.points;
        let widths = if args.scan != ScanAxis::V {
            momentum_scan_widths(pts, r.mass)
        } else {
            Vec::new()
        };
        for i in 1..pts.len().saturating_sub(1) {
            let (c0, c1, c2) = (
                pts[i - 1].amplitude_at_origin,
                pts[i].amplitude_at_origin,
                pts[i + 1].amplitude_at_origin,
            );
            if c1 > c0 && c1 >= c2 {
                let h = pts[i + 1].x - pts[i].x;
                let denom = c0 - 2.0 * c1 + c2;
                let (xv, cv) = if denom < 0.0 {
                    let t = 0.5 * (c0 - c2) / denom;
                    (pts[i].x + t * h, c1 - 0.25 * (c0 - c2) * t)
                } else {
                    (pts[i].x, c1)
                };
                if args.scan == ScanAxis::V {
                    peaks.row(vec![xv, cv]);
                } else {
                    let (gamma, tau) = widths
                        .iter()
                        .min_by(|a, b| {
                            (a.0 - xv).abs().partial_cmp(&(b.0 - xv).abs()).unwrap()
                        })
                        .filter(|(p_at, ..)| (p_at - xv).abs() < 10.0 * h)
                        .map(|&(_, g, t)| (g, t))
                        .unwrap_or((f64::NAN, f64::NAN));
                    peaks.row(vec![xv, cv, gamma, tau]);
                }
            }
        }
        peaks.write(&Some(sidecar_path(out)))?;
    }
    Ok(())
}

/// Rising pi/2 crossings of the momentum-scan phase curve, as
/// `(p, gamma_fwhm_or_nan, time_delay)`.
fn momentum_scan_widths(
    pts: &[partialwave::radial::CurvePoint],
    mass: f64,
) -> Vec<(f64, f64, f64)> {
    if pts.len() < 10 {
        return Vec::new();
    }
    let mut deltas: Vec<f64> = pts.iter().map(|p| p.delta).collect();
    unwrap_mod_pi(&mut deltas);
    let samples: Vec<PhaseShiftSample> = pts
        .iter()
        .zip(&deltas)
        .map(|(p, &d)| PhaseShiftSample {
            k: p.x,
            energy: (mass * mass + p.x * p.x).sqrt(),
            delta: d,
            tan_delta: d.tan(),
            sin2_delta: d.sin().powi(2),
        })
        .collect();
    match detect_resonances(&samples) {
        Ok(peaks) => peaks
            .into_iter()
            .filter(|p| p.kind == CrossingKind::Resonance)
            .map(|p| {
                let k = (p.energy * p.energy - mass * mass).max(0.0).sqrt();
                (k, p.width_fwhm.unwrap_or(f64::NAN), p.time_delay)
            })
            .collect(),
        Err(_) => Vec::new(),
    }
}

pub fn wavefunction(args: &WavefunctionArgs) -> Result<(), CliError> {
    let r = resolve(&args.potential)?;
    let channel = Channel::parse(&args.channel)?;
    if !(args.momentum > 0.0) {
        return Err(CliError::config("--momentum must be positive"));
    }
    let cfg = integration_config(&r, args.nu, args.step)?;
    let pot = r.spec()?;
    let energy = (r.mass * r.mass + args.momentum * args.momentum).sqrt();

    // First pass with C = 1 fixes C(v); the dump then uses it so the
    // asymptotic f oscillates with unit amplitude.
    let fit = scattering_phase(&pot, &channel, args.momentum, r.mass, &cfg)?;
    let cfg_scaled = cfg.with_origin_amplitude(fit.origin_amplitude);
    let sol = integrate_radial(&pot, &channel, energy, r.mass, &cfg_scaled)?;
    let refit = numerical_phase(&sol, &channel, args.momentum, &cfg_scaled)?;

    let mut w = CsvWriter::new("wavefunction", vec!["r", "f", "g"]);
    echo_potential(&mut w, &args.potential);
    w.echo("channel", &args.channel);
    w.echo("momentum", fmt(args.momentum));
    w.echo("nu", args.nu);
    w.echo("delta", fmt(refit.delta));
    w.echo("c", fmt(fit.origin_amplitude));
    w.echo("node_radius", fmt(r.length_out(refit.node_radius)));
    w.echo("asymptotic_amplitude", fmt(refit.amplitude));
    for i in 0..sol.grid.len() {
        w.row(vec![r.length_out(sol.grid[i]), sol.f[i], sol.g[i]]);
    }
    w.write(&args.out)
}
