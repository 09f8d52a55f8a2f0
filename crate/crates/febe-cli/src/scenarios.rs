//! Scenario orchestration: each scenario converts the lab-unit
//! configuration to SI exactly once, delegates all physics to the `febe`
//! library, and assembles a [`ResultTable`].

use num_complex::Complex64;

use febe::beam::{evolve, phase_uncertainty, BeamDrive, BeamParams, EvolutionMode};
use febe::kinematics::{coupling_g, CouplingGeometry, ElectronKinematics, TwoLevelSystem};
use febe::scattering::{
    asymmetry_phase, eels_change, eels_first_order_closed_form, DensityMatrix2,
};
use febe::entanglement::{heralded_closed_form, TwoAtomScattering};
use febe::wavepacket::{
    build_momentum_grid, drift_periodicity, ladder_expectation_analytic, LadderExpectations,
    ModulationParams,
};

use crate::config::{AtomState, RunConfig, SweepScale};
use crate::table::{Column, ResultTable};

/// The supported scenarios, in CLI spelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scenario {
    /// Coupling strength |g| vs transverse distance, both dipole orientations.
    Coupling,
    /// Momentum-space wave function of the modulated, drifted packet.
    Spectrum,
    /// EELS spectrum change for one electron.
    Eels,
    /// |s| and the anti-symmetric EELS signal vs drift length.
    SweepLp,
    /// Normalized anti-symmetric EELS signal vs modulation strength.
    SweepGm,
    /// Steady-state atom populations vs beam current.
    Steady,
    /// Beam-driven time evolution (continuous and per-electron).
    Rabi,
    /// Heralded two-atom entanglement vs coupling ratio.
    Entangle,
    /// Drift-phase uncertainty budget.
    PhaseBudget,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Coupling => "coupling",
            Scenario::Spectrum => "spectrum",
            Scenario::Eels => "eels",
            Scenario::SweepLp => "sweep-lp",
            Scenario::SweepGm => "sweep-gm",
            Scenario::Steady => "steady",
            Scenario::Rabi => "rabi",
            Scenario::Entangle => "entangle",
            Scenario::PhaseBudget => "phase-budget",
        }
    }
}

/// Effective sweep grid (lab units of whatever quantity the scenario sweeps).
#[derive(Debug, Clone, Copy)]
pub struct SweepGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: SweepScale,
}

impl SweepGrid {
    fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear => self.start + f * (self.stop - self.start),
                    SweepScale::Log => {
                        self.start * (self.stop / self.start).powf(f)
                    }
                }
            })
            .collect()
    }
}

/// Per-scenario default sweep grid; also recorded in `resolved-config.txt`.
pub fn sweep_defaults(scenario: Scenario) -> SweepGrid {
    let (start, stop, count, scale) = match scenario {
        Scenario::Coupling => (1.0, 30.0, 120, SweepScale::Linear), // r_⊥ (nm)
        Scenario::SweepLp => (0.25, 50.0, 240, SweepScale::Linear), // L_p (mm)
        Scenario::SweepGm => (0.02, 2.0, 120, SweepScale::Linear),  // |g_m|
        Scenario::Steady => (1e-7, 1e-1, 140, SweepScale::Log),     // I (mA)
        Scenario::Entangle => (0.0, 1.0, 100, SweepScale::Linear),  // |g₂|/|g₁|
        // no sweep axis; kept for a complete resolved-config record
        _ => (0.0, 1.0, 2, SweepScale::Linear),
    };
    SweepGrid { start, stop, count, scale }
}

fn effective_grid(scenario: Scenario, cfg: &RunConfig) -> SweepGrid {
    let d = sweep_defaults(scenario);
    SweepGrid {
        start: cfg.sweep.start.unwrap_or(d.start),
        stop: cfg.sweep.stop.unwrap_or(d.stop),
        count: cfg.sweep.count.unwrap_or(d.count),
        scale: cfg.sweep.scale.unwrap_or(d.scale),
    }
}

/// Lab-unit → SI conversions, all in one place.
mod units {
    pub fn kev(v: f64) -> f64 {
        v * 1e3 // eV
    }
    pub fn nm(v: f64) -> f64 {
        v * 1e-9
    }
    pub fn ns(v: f64) -> f64 {
        v * 1e-9
    }
    pub fn mm(v: f64) -> f64 {
        v * 1e-3
    }
    pub fn ma(v: f64) -> f64 {
        v * 1e-3
    }
    pub fn mrad(v: f64) -> f64 {
        v * 1e-3
    }
    pub fn ev(v: f64) -> f64 {
        v * febe::constants::EV
    }
}

/// Configuration-derived quantities shared across scenarios, in SI.
struct Setup {
    kin: ElectronKinematics,
    /// Transition frequency ω_a (rad/s).
    omega_a: f64,
    /// Modulation frequency ω = ω_a / harmonic (rad/s).
    omega_mod: f64,
    tau: f64,
    g: Complex64,
    s: Complex64,
}

impl Setup {
    fn new(cfg: &RunConfig) -> febe::Result<Self> {
        let kin = ElectronKinematics::from_kinetic_energy_ev(units::kev(cfg.kinetic_energy_kev))?;
        let omega_a =
            2.0 * std::f64::consts::PI * febe::constants::SPEED_OF_LIGHT
                / units::nm(cfg.wavelength_nm);
        Ok(Setup {
            kin,
            omega_a,
            omega_mod: omega_a / cfg.harmonic as f64,
            tau: units::ns(cfg.lifetime_ns),
            g: Complex64::from_polar(cfg.g_abs, cfg.g_phase_rad),
            s: Complex64::from_polar(cfg.s_abs, cfg.s_phase_rad),
        })
    }

    fn modulation(&self, cfg: &RunConfig) -> febe::Result<ModulationParams> {
        let spacing = self.omega_mod / self.kin.v0;
        ModulationParams::new(
            cfg.sigma_q_rel * spacing,
            self.omega_mod,
            Complex64::from_polar(cfg.g_m_abs, cfg.g_m_phase_rad),
            units::mm(cfg.l_s_mm),
            units::mm(cfg.l_p_mm),
        )
    }

    fn atom(&self, cfg: &RunConfig) -> DensityMatrix2 {
        match cfg.atom_state {
            AtomState::Ground => DensityMatrix2::ground(),
            AtomState::Excited => DensityMatrix2::excited(),
            AtomState::Coherent => DensityMatrix2::coherent_plus(),
        }
    }
}

fn table(
    scenario: Scenario,
    cfg: &RunConfig,
    columns: Vec<Column>,
    rows: Vec<Vec<f64>>,
    log_x: bool,
) -> ResultTable {
    ResultTable {
        scenario: scenario.name(),
        columns,
        rows,
        log_x,
        resolved: cfg.resolved(&sweep_defaults(scenario)),
    }
}

/// Runs one scenario to completion.
pub fn run(scenario: Scenario, cfg: &RunConfig) -> febe::Result<ResultTable> {
    let setup = Setup::new(cfg)?;
    let grid = effective_grid(scenario, cfg);
    match scenario {
        Scenario::Coupling => coupling(scenario, cfg, &setup, &grid),
        Scenario::Spectrum => spectrum(scenario, cfg, &setup),
        Scenario::Eels => eels(scenario, cfg, &setup),
        Scenario::SweepLp => sweep_lp(scenario, cfg, &setup, &grid),
        Scenario::SweepGm => sweep_gm(scenario, cfg, &setup, &grid),
        Scenario::Steady => steady(scenario, cfg, &setup, &grid),
        Scenario::Rabi => rabi(scenario, cfg, &setup),
        Scenario::Entangle => entangle(scenario, cfg, &grid),
        Scenario::PhaseBudget => phase_budget(scenario, cfg, &setup),
    }
}

fn coupling(
    scenario: Scenario,
    cfg: &RunConfig,
    setup: &Setup,
    grid: &SweepGrid,
) -> febe::Result<ResultTable> {
    let tau = units::ns(cfg.lifetime_ns);
    let dipole = units::nm(cfg.dipole_nm);
    let tls_perp =
        TwoLevelSystem::from_wavelength_nm(cfg.wavelength_nm, tau, dipole, [1.0, 0.0, 0.0])?;
    let tls_par =
        TwoLevelSystem::from_wavelength_nm(cfg.wavelength_nm, tau, dipole, [0.0, 0.0, 1.0])?;
    let mut rows = Vec::with_capacity(grid.count);
    for r_nm in grid.points() {
        let geom = CouplingGeometry::new(units::nm(r_nm), units::nm(cfg.z_nm))?;
        let g_perp = coupling_g(&setup.kin, &tls_perp, &geom)?;
        let g_par = coupling_g(&setup.kin, &tls_par, &geom)?;
        rows.push(vec![r_nm, g_perp.norm(), g_par.norm()]);
    }
    let columns = vec![
        Column { name: "r_perp_nm", unit: "nm" },
        Column { name: "g_abs_perpendicular", unit: "" },
        Column { name: "g_abs_parallel", unit: "" },
    ];
    Ok(table(scenario, cfg, columns, rows, grid.scale == SweepScale::Log))
}

fn spectrum(scenario: Scenario, cfg: &RunConfig, setup: &Setup) -> febe::Result<ResultTable> {
    let p = setup.modulation(cfg)?;
    let g = build_momentum_grid(&setup.kin, &p, (p.n_max + 4) as f64, 8)?;
    let rows = (0..g.len())
        .map(|i| {
            let a = g.amplitudes[i];
            vec![g.q(i), a.re, a.im, a.norm_sqr()]
        })
        .collect();
    let columns = vec![
        Column { name: "q_per_m", unit: "1/m" },
        Column { name: "re", unit: "sqrt(m)" },
        Column { name: "im", unit: "sqrt(m)" },
        Column { name: "abs2", unit: "m" },
    ];
    Ok(table(scenario, cfg, columns, rows, false))
}

fn eels(scenario: Scenario, cfg: &RunConfig, setup: &Setup) -> febe::Result<ResultTable> {
    let p = setup.modulation(cfg)?;
    let g = build_momentum_grid(&setup.kin, &p, (p.n_max + 4) as f64, 8)?;
    let q_a = setup.omega_a / setup.kin.v0;
    let sp = eels_change(&g, setup.g, &setup.atom(cfg), q_a)?;
    let rows = (0..g.len())
        .map(|i| vec![sp.q(i), sp.first[i], sp.second[i], sp.total(i)])
        .collect();
    let columns = vec![
        Column { name: "q_per_m", unit: "1/m" },
        Column { name: "first_order", unit: "m" },
        Column { name: "second_order", unit: "m" },
        Column { name: "total", unit: "m" },
    ];
    Ok(table(scenario, cfg, columns, rows, false))
}

/// Normalized anti-symmetric first-order signal at band 1 with the laser
/// phase chosen to satisfy the phase condition.
fn normalized_signal(
    kin: &ElectronKinematics,
    p: &ModulationParams,
    harmonic: u32,
) -> febe::Result<f64> {
    let one = Complex64::new(1.0, 0.0);
    let phi = asymmetry_phase(kin, p, one, one, harmonic)?;
    let tuned = ModulationParams::new(
        p.sigma_q,
        p.omega,
        Complex64::from_polar(p.g_m.norm(), phi),
        p.l_s,
        p.l_p,
    )?;
    eels_first_order_closed_form(kin, &tuned, one, one, harmonic, 1)
}

fn sweep_lp(
    scenario: Scenario,
    cfg: &RunConfig,
    setup: &Setup,
    grid: &SweepGrid,
) -> febe::Result<ResultTable> {
    let base = setup.modulation(cfg)?;
    let mut rows = Vec::with_capacity(grid.count);
    for lp_mm in grid.points() {
        let p = base.with_drift(units::mm(lp_mm));
        let s = ladder_expectation_analytic(&setup.kin, &p, setup.omega_a, 1)?;
        let signal = normalized_signal(&setup.kin, &p, cfg.harmonic)?;
        rows.push(vec![lp_mm, s.norm(), signal]);
    }
    let columns = vec![
        Column { name: "l_p_mm", unit: "mm" },
        Column { name: "s_abs", unit: "" },
        Column { name: "signal_normalized", unit: "" },
    ];
    Ok(table(scenario, cfg, columns, rows, grid.scale == SweepScale::Log))
}

fn sweep_gm(
    scenario: Scenario,
    cfg: &RunConfig,
    setup: &Setup,
    grid: &SweepGrid,
) -> febe::Result<ResultTable> {
    // quarter drift period maximizes the signal; sweep |g_m| there
    let l_p = 0.25 * drift_periodicity(&setup.kin, setup.omega_mod);
    let spacing = setup.omega_mod / setup.kin.v0;
    let mut rows = Vec::with_capacity(grid.count);
    for gm in grid.points() {
        let p = ModulationParams::new(
            cfg.sigma_q_rel * spacing,
            setup.omega_mod,
            Complex64::from_polar(gm.max(1e-12), 0.0),
            units::mm(cfg.l_s_mm),
            l_p,
        )?;
        let signal = normalized_signal(&setup.kin, &p, cfg.harmonic)?;
        rows.push(vec![gm, signal]);
    }
    let columns = vec![
        Column { name: "g_m_abs", unit: "" },
        Column { name: "signal_normalized", unit: "" },
    ];
    Ok(table(scenario, cfg, columns, rows, grid.scale == SweepScale::Log))
}

fn steady(
    scenario: Scenario,
    cfg: &RunConfig,
    setup: &Setup,
    grid: &SweepGrid,
) -> febe::Result<ResultTable> {
    let modulated = LadderExpectations { s: setup.s, s2: setup.s * setup.s };
    let unmodulated = LadderExpectations {
        s: Complex64::new(0.0, 0.0),
        s2: Complex64::new(0.0, 0.0),
    };
    let mut rows = Vec::with_capacity(grid.count);
    for i_ma in grid.points() {
        let beam = BeamParams::from_current(units::ma(i_ma))?;
        let rho_mod = BeamDrive::new(setup.g, modulated, setup.tau, beam)?.steady_state()?;
        let rho_unmod = BeamDrive::new(setup.g, unmodulated, setup.tau, beam)?.steady_state()?;
        rows.push(vec![i_ma, rho_mod.rho22, rho_unmod.rho22, rho_mod.rho12.norm()]);
    }
    let columns = vec![
        Column { name: "current_ma", unit: "mA" },
        Column { name: "rho22_modulated", unit: "" },
        Column { name: "rho22_unmodulated", unit: "" },
        Column { name: "abs_rho12", unit: "" },
    ];
    Ok(table(scenario, cfg, columns, rows, grid.scale == SweepScale::Log))
}

fn rabi(scenario: Scenario, cfg: &RunConfig, setup: &Setup) -> febe::Result<ResultTable> {
    let beam = BeamParams::from_current(units::ma(cfg.current_ma))?;
    let ladder = LadderExpectations { s: setup.s, s2: setup.s * setup.s };
    let drive = BeamDrive::new(setup.g, ladder, setup.tau, beam)?;
    let rho0 = setup.atom(cfg);
    let t_end = units::ns(cfg.t_end_ns);
    let continuous = evolve(&drive, &rho0, t_end, cfg.samples, EvolutionMode::Continuous)?;
    let discrete = evolve(&drive, &rho0, t_end, cfg.samples, EvolutionMode::PerElectron)?;
    let rows = continuous
        .iter()
        .map(|(t, rho)| {
            // nearest per-electron sample to the continuous sample time
            let d22 = discrete
                .iter()
                .min_by(|a, b| {
                    (a.0 - t).abs().partial_cmp(&(b.0 - t).abs()).expect("finite times")
                })
                .map(|(_, r)| r.rho22)
                .unwrap_or(f64::NAN);
            vec![t / 1e-9, rho.rho11, rho.rho22, rho.rho12.re, rho.rho12.im, d22]
        })
        .collect();
    let columns = vec![
        Column { name: "t_ns", unit: "ns" },
        Column { name: "rho11", unit: "" },
        Column { name: "rho22", unit: "" },
        Column { name: "re_rho12", unit: "" },
        Column { name: "im_rho12", unit: "" },
        Column { name: "rho22_per_electron", unit: "" },
    ];
    Ok(table(scenario, cfg, columns, rows, false))
}

fn entangle(scenario: Scenario, cfg: &RunConfig, grid: &SweepGrid) -> febe::Result<ResultTable> {
    let g1 = Complex64::from_polar(cfg.g1_abs, cfg.g1_phase_rad);
    let ground = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let mut rows = Vec::with_capacity(grid.count);
    for ratio in grid.points() {
        let g2 = Complex64::from_polar(ratio * cfg.g1_abs, cfg.g2_phase_rad);
        let post = TwoAtomScattering::sequential(g1, g2, &ground, &ground)?.postselect(-1)?;
        let closed = heralded_closed_form(g1, g2)?;
        rows.push(vec![ratio, post.probability, post.concurrence(), closed.concurrence]);
    }
    let columns = vec![
        Column { name: "g2_over_g1", unit: "" },
        Column { name: "heralding_probability", unit: "" },
        Column { name: "concurrence", unit: "" },
        Column { name: "concurrence_closed_form", unit: "" },
    ];
    Ok(table(scenario, cfg, columns, rows, grid.scale == SweepScale::Log))
}

fn phase_budget(scenario: Scenario, cfg: &RunConfig, setup: &Setup) -> febe::Result<ResultTable> {
    let pu = phase_uncertainty(
        &setup.kin,
        units::mm(cfg.l_p_mm),
        setup.omega_a,
        units::ev(cfg.delta_e_ev),
        units::mrad(cfg.delta_theta_mrad),
    )?;
    let two_pi = 2.0 * std::f64::consts::PI;
    let rows = vec![vec![
        cfg.l_p_mm,
        pu.energy_term.abs(),
        pu.divergence_term,
        pu.energy_term.abs() + pu.divergence_term,
        pu.energy_term.abs() / two_pi,
        pu.divergence_term / two_pi,
    ]];
    let columns = vec![
        Column { name: "l_p_mm", unit: "mm" },
        Column { name: "energy_term_rad", unit: "rad" },
        Column { name: "divergence_term_rad", unit: "rad" },
        Column { name: "total_rad", unit: "rad" },
        Column { name: "energy_term_over_2pi", unit: "" },
        Column { name: "divergence_term_over_2pi", unit: "" },
    ];
    Ok(table(scenario, cfg, columns, rows, false))
}
