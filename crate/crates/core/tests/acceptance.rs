//! Acceptance suite: every pinned reference check runs here, one test per
//! criterion, each printing a PASS/FAIL line (visible with
//! `cargo test --test acceptance -- --nocapture`).
//!
//! Two criteria are knowingly red and left red on purpose:
//!
//! * criterion 1: the pinned MeV depths are inconsistent with
//!   `hbar c = 197.3269631 MeV fm` at the 0.005 MeV tolerance. The exact
//!   closed-form roots land 0.006-0.018 MeV above every pinned entry, a
//!   uniform ~7.7e-5 relative scale offset (equivalent to a ~8.0006 fm
//!   radius or hbar c ~ 197.312). Verified independently with
//!   multiple-precision root finding; no standard value of the conversion
//!   constant reproduces the pinned digits.
//! * criterion 6: at exactly v = 6.8 the Gaussian-barrier observables are
//!   r_20 = 643.1 and C = 2.65 (two independent integrators agree); the
//!   pinned pair (635.2, 12.8) only occurs near the resonance peak
//!   v ~ 6.755-6.766, so no single run at v = 6.8 can satisfy both pins.

use std::time::Instant;

use partialwave::critical::{
    find_general_criticals, find_square_criticals, pwave_critical_closed_form,
    swave_supercritical_closed_form, CriticalCondition, EnergySign, ShootingSettings,
};
use partialwave::dirac::{tan_delta_parts, DiracSquareSystem};
use partialwave::phase::phase_distance_mod_pi;
use partialwave::radial::{
    analytic_c_square, integrate_radial, numerical_phase, scattering_phase, IntegrationConfig,
};
use partialwave::resonance::{
    detect_resonances, refine_resonance, width_ratio, CrossingKind, ResonancePeak,
};
use partialwave::schrodinger::{phase_curve as schrodinger_curve, SchrodingerWell};
use partialwave::{Channel, PhaseShiftSample, PotentialSign, PotentialSpec, Shape};

const HBARC: f64 = 197.3269631; // MeV fm
const ELECTRON_MASS_MEV: f64 = 0.511;
const RANGE_8FM: f64 = 8.0 / HBARC;

struct Report {
    name: &'static str,
    failures: Vec<String>,
}

impl Report {
    fn new(name: &'static str) -> Self {
        Report {
            name,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        if !ok {
            self.failures.push(detail);
        }
    }

    fn finish(self, started: Instant, budget_s: f64) {
        let elapsed = started.elapsed().as_secs_f64();
        let mut failures = self.failures;
        if elapsed > budget_s {
            failures.push(format!("runtime {elapsed:.2} s exceeds {budget_s} s"));
        }
        if failures.is_empty() {
            println!("{}: PASS ({elapsed:.2} s)", self.name);
        } else {
            println!("{}: FAIL ({elapsed:.2} s)", self.name);
            for f in &failures {
                println!("    {f}");
            }
            panic!("{} failed:\n{}", self.name, failures.join("\n"));
        }
    }
}

fn chan(chi: i32) -> Channel {
    Channel::from_chi(chi).unwrap()
}

/// Continuous-branch Dirac curve over an energy grid.
fn dirac_curve(sys: &DiracSquareSystem, grid: &[f64]) -> Vec<PhaseShiftSample> {
    partialwave::dirac::phase_curve(sys, grid).unwrap()
}

fn geomspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);
    let mut x = lo;
    (0..n)
        .map(|_| {
            let v = x;
            x *= ratio;
            v
        })
        .collect()
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// First rising pi/2 crossing above threshold, refined on tight windows.
fn refined_first_resonance(sys: &DiracSquareSystem, scan_hi_offset: f64) -> ResonancePeak {
    let m = sys.mass();
    let grid: Vec<f64> = geomspace(1e-7, scan_hi_offset, 6000)
        .into_iter()
        .map(|x| m * (1.0 + x))
        .collect();
    let curve = dirac_curve(sys, &grid);
    let peaks = detect_resonances(&curve).unwrap();
    let coarse = peaks
        .iter()
        .find(|p| p.kind == CrossingKind::Resonance)
        .expect("no rising crossing found");
    refine_resonance(
        |e| tan_delta_parts(sys, e),
        coarse,
        m * (1.0 + 1e-12),
        3,
    )
    .unwrap()
}

#[test]
fn criterion_01_table1_mev_depths() {
    let started = Instant::now();
    let mut rep = Report::new("criterion 1 (square-well MeV depth table)");
    let expected: [(i32, EnergySign, [f64; 3]); 4] = [
        (-1, EnergySign::PlusM, [75.947, 153.434, 230.919]),
        (-1, EnergySign::MinusM, [77.997, 155.480, 232.964]),
        (1, EnergySign::PlusM, [76.975, 154.458, 231.942]),
        (1, EnergySign::MinusM, [79.012, 156.498, 233.983]),
    ];
    for (chi, sign, values) in expected {
        let cond = CriticalCondition::new(chan(chi), sign);
        let found =
            find_square_criticals(&cond, ELECTRON_MASS_MEV, RANGE_8FM, 3).unwrap();
        for (c, want) in found.iter().zip(values) {
            rep.check(
                (c.value - want).abs() <= 0.005,
                format!(
                    "chi={chi} {sign:?} n={}: {:.4} MeV vs pinned {want} (diff {:+.4})",
                    c.index,
                    c.value,
                    c.value - want
                ),
            );
        }
    }
    rep.finish(started, 1.0);
}

#[test]
fn criterion_02_table2_square_couplings() {
    let started = Instant::now();
    let mut rep = Report::new("criterion 2 (unit square coupling table)");
    let (m, a) = (1.0, 1.0);
    // Sector layout: barrier columns come from the crossed well conditions.
    let sectors: [(&str, i32, EnergySign, [f64; 3]); 4] = [
        ("s1/2(+)", 1, EnergySign::MinusM, [5.27, 8.40, 11.54]),
        ("s1/2(-)", -1, EnergySign::PlusM, [1.11, 4.20, 7.33]),
        ("p1/2(+)", -1, EnergySign::MinusM, [4.30, 7.36, 10.48]),
        ("p1/2(-)", 1, EnergySign::PlusM, [2.30, 5.36, 8.48]),
    ];
    for (label, chi, sign, values) in sectors {
        let cond = CriticalCondition::new(chan(chi), sign);
        let found = find_square_criticals(&cond, m, a, 3).unwrap();
        for (c, want) in found.iter().zip(values) {
            rep.check(
                (c.value - want).abs() <= 0.01,
                format!("{label} n={}: {:.4} vs {want}", c.index, c.value),
            );
        }
        // p-sector closed forms to 1e-6.
        if label == "p1/2(-)" {
            for c in &found {
                let exact = pwave_critical_closed_form(c.index, m, a);
                rep.check(
                    (c.value - exact).abs() <= 1e-6,
                    format!("{label} n={} vs closed form {exact}", c.index),
                );
            }
        }
        if label == "p1/2(+)" {
            for c in &found {
                let exact = swave_supercritical_closed_form(c.index, m, a);
                rep.check(
                    (c.value - exact).abs() <= 1e-6,
                    format!("{label} n={} vs closed form {exact}", c.index),
                );
            }
        }
    }
    rep.finish(started, 1.0);
}

#[test]
fn criterion_03_table3_gaussian_couplings() {
    let started = Instant::now();
    let mut rep = Report::new("criterion 3 (Gaussian coupling table, shooting)");
    let m = 1.0;
    let settings = ShootingSettings::default();
    let sectors: [(&str, PotentialSign, i32, [f64; 3]); 4] = [
        ("s1/2(+)", PotentialSign::Barrier, -1, [6.75, 10.42, 14.04]),
        ("s1/2(-)", PotentialSign::Well, -1, [1.26, 4.37, 7.70]),
        ("p1/2(+)", PotentialSign::Barrier, 1, [5.62, 9.23, 12.83]),
        ("p1/2(-)", PotentialSign::Well, 1, [2.96, 6.11, 9.44]),
    ];
    for (label, sign, chi, values) in sectors {
        let template = PotentialSpec::new(Shape::Gaussian, sign, 1.0, 1.0).unwrap();
        let cond = CriticalCondition::new(chan(chi), EnergySign::PlusM);
        let found = find_general_criticals(&template, &cond, m, 3, &settings).unwrap();
        for (c, want) in found.iter().zip(values) {
            rep.check(
                (c.value - want).abs() <= 0.02,
                format!("{label} n={}: {:.4} vs {want}", c.index, c.value),
            );
        }
    }
    rep.finish(started, 60.0);
}

#[test]
fn criterion_04_kev_widths_and_ratios() {
    let started = Instant::now();
    let mut rep = Report::new("criterion 4 (keV resonance widths)");
    let (m, a) = (ELECTRON_MASS_MEV, RANGE_8FM);
    // (chi, signed depth in MeV, pinned width in keV)
    let cases = [
        (-1, 75.187, 41.83),
        (1, 76.205, 11.5),
        (-1, -79.802, 43.1),
        (1, -78.777, 11.8),
    ];
    let mut widths = Vec::new();
    for (chi, depth, want_kev) in cases {
        let sys = DiracSquareSystem::new(depth, a, m, chan(chi)).unwrap();
        let peak = refined_first_resonance(&sys, 4.0);
        let gamma_kev = peak.width_fwhm.expect("half maxima must be bracketed") * 1e3;
        widths.push(peak);
        rep.check(
            ((gamma_kev - want_kev) / want_kev).abs() <= 0.05,
            format!("chi={chi} V={depth}: width {gamma_kev:.3} keV vs {want_kev}"),
        );
    }
    let well_ratio = width_ratio(&widths[0], &widths[1]);
    rep.check(
        ((well_ratio - 3.6) / 3.6).abs() <= 0.10,
        format!("well width ratio {well_ratio:.3} vs 3.6"),
    );
    let barrier_ratio = width_ratio(&widths[2], &widths[3]);
    rep.check(
        ((barrier_ratio - 3.7) / 3.7).abs() <= 0.10,
        format!("barrier width ratio {barrier_ratio:.3} vs 3.7"),
    );
    rep.finish(started, 60.0);
}

#[test]
fn criterion_05_wide_swave_ratio_230() {
    let started = Instant::now();
    let mut rep = Report::new("criterion 5 (s/p width ratio ~230)");
    // Both resonances sit at E - m ~ 0.02 and are fully resolved by the
    // coarse geometric grid, so no window refinement is needed (the wide s
    // peak would blow a +-5 Gamma window far past the steep threshold rise).
    let first_peak = |chi: i32, v: f64| -> ResonancePeak {
        let sys = DiracSquareSystem::new(v, 1.0, 1.0, chan(chi)).unwrap();
        let grid: Vec<f64> = geomspace(1e-7, 3.0, 6000)
            .into_iter()
            .map(|x| 1.0 + x)
            .collect();
        let curve = dirac_curve(&sys, &grid);
        detect_resonances(&curve)
            .unwrap()
            .into_iter()
            .find(|p| p.kind == CrossingKind::Resonance)
            .expect("no rising crossing found")
    };
    let ps = first_peak(-1, 4.195);
    let pp = first_peak(1, 2.25);
    // The wide s resonance never climbs to 3 pi/4, so the ratio falls back
    // to the time-delay widths of both peaks.
    let ratio = width_ratio(&ps, &pp);
    rep.check(
        ((ratio - 230.0) / 230.0).abs() <= 0.15,
        format!(
            "ratio {ratio:.1} vs 230 (s: fwhm {:?}, 1/tau {:.4}; p: 1/tau {:.6})",
            ps.width_fwhm, ps.width_from_delay, pp.width_from_delay
        ),
    );
    rep.finish(started, 60.0);
}

#[test]
fn criterion_06_gaussian_barrier_checkpoint() {
    let started = Instant::now();
    let mut rep = Report::new("criterion 6 (Gaussian barrier v=6.8 checkpoint)");
    let pot = PotentialSpec::new(Shape::Gaussian, PotentialSign::Barrier, 6.8, 1.0).unwrap();
    let ch = chan(-1);
    let p: f64 = 0.1;
    let e = (1.0 + p * p).sqrt();
    let cfg = IntegrationConfig::for_range(1.0);
    let sol = integrate_radial(&pot, &ch, e, 1.0, &cfg).unwrap();
    let fit = numerical_phase(&sol, &ch, p, &cfg).unwrap();
    rep.check(
        (fit.node_radius - 635.2).abs() <= 0.5,
        format!(
            "r_20 = {:.1} vs pinned 635.2 (the exact model puts the resonant pair near v ~ 6.76)",
            fit.node_radius
        ),
    );
    rep.check(
        (fit.origin_amplitude - 12.8).abs() <= 0.2,
        format!(
            "C = {:.3} vs pinned 12.8 (peak C ~ 13.1 sits at v ~ 6.757, not at v = 6.8)",
            fit.origin_amplitude
        ),
    );
    rep.finish(started, 60.0);
}

#[test]
fn criterion_07_crossing_identities() {
    let started = Instant::now();
    let mut rep = Report::new("criterion 7 (crossing identities)");
    let m = 1.0;
    let settings = ShootingSettings::default();
    // Square: barrier criticals by shooting vs crossed-well closed forms.
    let square = PotentialSpec::new(Shape::Square, PotentialSign::Barrier, 1.0, 1.0).unwrap();
    for (chi_barrier, chi_well) in [(-1, 1), (1, -1)] {
        let shot = find_general_criticals(
            &square,
            &CriticalCondition::new(chan(chi_barrier), EnergySign::PlusM),
            m,
            3,
            &settings,
        )
        .unwrap();
        let closed = find_square_criticals(
            &CriticalCondition::new(chan(chi_well), EnergySign::MinusM),
            m,
            1.0,
            3,
        )
        .unwrap();
        for (s, c) in shot.iter().zip(&closed) {
            let rel = ((s.value - c.value) / c.value).abs();
            rep.check(
                rel <= 1e-3,
                format!(
                    "square chi={chi_barrier} barrier n={}: {:.5} vs supercritical {:.5}",
                    s.index, s.value, c.value
                ),
            );
        }
    }
    // Gaussian: barrier criticals at E=+m vs supercritical wells at E=-m,
    // two genuinely different integrations related by the crossing map.
    let gauss_barrier =
        PotentialSpec::new(Shape::Gaussian, PotentialSign::Barrier, 1.0, 1.0).unwrap();
    let gauss_well = PotentialSpec::new(Shape::Gaussian, PotentialSign::Well, 1.0, 1.0).unwrap();
    for (chi_barrier, chi_well) in [(-1, 1), (1, -1)] {
        let barrier = find_general_criticals(
            &gauss_barrier,
            &CriticalCondition::new(chan(chi_barrier), EnergySign::PlusM),
            m,
            3,
            &settings,
        )
        .unwrap();
        let well = find_general_criticals(
            &gauss_well,
            &CriticalCondition::new(chan(chi_well), EnergySign::MinusM),
            m,
            3,
            &settings,
        )
        .unwrap();
        for (b, w) in barrier.iter().zip(&well) {
            let rel = ((b.value - w.value) / w.value).abs();
            rep.check(
                rel <= 1e-3,
                format!(
                    "gaussian chi={chi_barrier} barrier n={}: {:.5} vs supercritical {:.5}",
                    b.index, b.value, w.value
                ),
            );
        }
    }
    rep.finish(started, 60.0);
}

#[test]
fn criterion_08_numerical_vs_analytic_oracle() {
    let started = Instant::now();
    let mut rep = Report::new("criterion 8 (numerical phase/amplitude oracle)");
    let m = 1.0;
    // Representative couplings per (channel, sign); the far fit node keeps
    // the sine-model bias below the phase tolerance for l_chi = 1.
    let couplings = |chi: i32, sign: PotentialSign| match (chi, sign) {
        (-1, PotentialSign::Well) => 4.195,
        (1, PotentialSign::Well) => 2.25,
        (-1, PotentialSign::Barrier) => 5.2,
        (1, PotentialSign::Barrier) => 4.3,
        _ => unreachable!(),
    };
    for p in [0.05, 0.1, 0.3] {
        let e = (m * m + p * p as f64).sqrt();
        for chi in [-1, 1] {
            for sign in [PotentialSign::Well, PotentialSign::Barrier] {
                let v = couplings(chi, sign);
                let ch = chan(chi);
                let pot = PotentialSpec::new(Shape::Square, sign, v, 1.0).unwrap();
                let cfg = IntegrationConfig::for_range(1.0).with_node_index(150);
                let num = scattering_phase(&pot, &ch, p, m, &cfg).unwrap();
                let depth = match sign {
                    PotentialSign::Well => v,
                    PotentialSign::Barrier => -v,
                };
                let sys = DiracSquareSystem::new(depth, 1.0, m, ch).unwrap();
                let ana = partialwave::dirac::phase_shift(&sys, e).unwrap();
                let ddelta = phase_distance_mod_pi(num.delta, ana.delta).abs();
                rep.check(
                    ddelta < 5e-3,
                    format!("p={p} chi={chi} {sign:?}: |d delta| = {ddelta:.2e}"),
                );
                let c_exact = analytic_c_square(&sys, e).unwrap();
                let c_rel = ((num.origin_amplitude - c_exact) / c_exact).abs();
                rep.check(
                    c_rel < 0.01,
                    format!("p={p} chi={chi} {sign:?}: C rel = {c_rel:.2e}"),
                );
            }
        }
    }
    rep.finish(started, 60.0);
}

#[test]
fn criterion_09_wigner_contrast() {
    let started = Instant::now();
    let mut rep = Report::new("criterion 9 (no Schrodinger s resonances vs Dirac)");
    // Schrodinger: 100 subcritical depths, zero rising pi/2 crossings.
    let (ms, a) = (0.5, 1.0);
    let vc = partialwave::schrodinger::critical_depth(0, 1, ms, a).unwrap();
    let mut schrodinger_crossings = 0usize;
    for i in 0..100 {
        let v = vc * (0.05 + 0.94 * i as f64 / 99.0);
        let well = SchrodingerWell::new(v, a, ms).unwrap();
        let grid = geomspace(1e-3, 30.0, 500);
        let curve = schrodinger_curve(&well, 0, &grid).unwrap();
        for peak in detect_resonances(&curve).unwrap() {
            if peak.kind == CrossingKind::Resonance {
                schrodinger_crossings += 1;
            }
        }
    }
    rep.check(
        schrodinger_crossings == 0,
        format!("{schrodinger_crossings} Schrodinger s-wave rising crossings"),
    );
    // Dirac: subcritical scan with at least one resonance. Below the first
    // s critical the phase tops out just under pi/2 (same as the
    // nonrelativistic well); the s-wave resonances live below the higher
    // criticals, so the grid sits under the second one -- the same regime
    // the V = 4.195m demonstration uses.
    let md = 1.0;
    let cond = CriticalCondition::new(chan(-1), EnergySign::PlusM);
    let vc_dirac = find_square_criticals(&cond, md, 1.0, 2).unwrap()[1].value;
    let mut dirac_crossings = 0usize;
    for i in 0..100 {
        let v = vc_dirac * (0.80 + 0.199 * i as f64 / 99.0);
        let sys = DiracSquareSystem::new(v, 1.0, md, chan(-1)).unwrap();
        let grid: Vec<f64> = geomspace(1e-6, 1.5, 700)
            .into_iter()
            .map(|x| md * (1.0 + x))
            .collect();
        let curve = dirac_curve(&sys, &grid);
        for peak in detect_resonances(&curve).unwrap() {
            if peak.kind == CrossingKind::Resonance {
                dirac_crossings += 1;
            }
        }
    }
    rep.check(
        dirac_crossings >= 1,
        format!("{dirac_crossings} Dirac s-wave rising crossings"),
    );
    rep.finish(started, 60.0);
}

#[test]
fn criterion_10_levinson_endpoints() {
    let started = Instant::now();
    let mut rep = Report::new("criterion 10 (Levinson endpoint values)");
    let (m, a) = (0.5, 1.0);
    let vc = partialwave::schrodinger::critical_depth(0, 1, m, a).unwrap();
    let targets = [
        (0.97 * vc, 0.0),
        (vc, core::f64::consts::FRAC_PI_2),
        (1.05 * vc, core::f64::consts::PI),
    ];
    for (v, want) in targets {
        let well = SchrodingerWell::new(v, a, m).unwrap();
        let grid = geomspace(1e-4, 30.0, 1400);
        let delta0 = schrodinger_curve(&well, 0, &grid).unwrap()[0].delta;
        rep.check(
            (delta0 - want).abs() <= 1e-2,
            format!("V = {v:.4}: delta(1e-4) = {delta0:.5} vs {want:.5}"),
        );
    }
    rep.finish(started, 60.0);
}

#[test]
fn criterion_11_numerical_hygiene() {
    let started = Instant::now();
    let mut rep = Report::new("criterion 11 (step-halving and node independence)");
    let m = 1.0;
    let p = 0.1;
    let ch = chan(-1);
    for (sign, v) in [
        (PotentialSign::Barrier, 6.8),
        (PotentialSign::Well, 4.0),
    ] {
        let pot = PotentialSpec::new(Shape::Gaussian, sign, v, 1.0).unwrap();
        let base = IntegrationConfig::for_range(1.0);
        let half = base.with_step(base.step / 2.0);
        let quarter = base.with_step(base.step / 4.0);
        let d0 = scattering_phase(&pot, &ch, p, m, &base).unwrap().delta;
        let d1 = scattering_phase(&pot, &ch, p, m, &half).unwrap().delta;
        let d2 = scattering_phase(&pot, &ch, p, m, &quarter).unwrap().delta;
        let step1 = (d1 - d0).abs();
        let step2 = (d2 - d1).abs();
        rep.check(
            step1 < 1e-4,
            format!("{sign:?} v={v}: halving changed delta by {step1:.2e}"),
        );
        // 4th-order scheme: successive differences shrink until they hit
        // the rounding floor (the defaults already sit at ~1e-10).
        rep.check(
            step2 <= step1 || step1 < 1e-8,
            format!("{sign:?} v={v}: no monotone decrease ({step1:.2e} -> {step2:.2e})"),
        );
        // nu = 20 vs 25.
        let nu25 = base.with_node_index(25);
        let d25 = scattering_phase(&pot, &ch, p, m, &nu25).unwrap().delta;
        let dnu = phase_distance_mod_pi(d25, d0).abs();
        rep.check(
            dnu < 1e-3,
            format!("{sign:?} v={v}: nu 20 -> 25 changed delta by {dnu:.2e}"),
        );
    }
    rep.finish(started, 60.0);
}
