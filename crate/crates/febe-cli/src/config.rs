//! Flat `key = value` configuration in lab units, with command-line
//! overrides. Unknown keys, unparsable values, and out-of-range magnitudes
//! are hard errors that name the offending key and source line.

use std::fmt;

/// Initial atomic state selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomState {
    Ground,
    Excited,
    /// (|1⟩ + |2⟩)/√2.
    Coherent,
}

impl fmt::Display for AtomState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AtomState::Ground => "ground",
            AtomState::Excited => "excited",
            AtomState::Coherent => "coherent",
        };
        f.write_str(s)
    }
}

/// Axis spacing of a sweep grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScale {
    Linear,
    Log,
}

impl fmt::Display for SweepScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepScale::Linear => "linear",
            SweepScale::Log => "log",
        })
    }
}

/// Sweep-grid overrides; unset fields fall back to the scenario defaults.
#[derive(Debug, Clone, Copy, Default)]
pub struct SweepOverrides {
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub count: Option<usize>,
    pub scale: Option<SweepScale>,
}

/// Fully resolved run configuration. All quantities are in lab units
/// (keV, nm, ns, mA, mrad, mm); conversion to SI happens once, in the
/// scenario boundary layer.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub kinetic_energy_kev: f64,
    pub wavelength_nm: f64,
    pub lifetime_ns: f64,
    pub dipole_nm: f64,
    pub r_perp_nm: f64,
    pub z_nm: f64,
    pub g_abs: f64,
    pub g_phase_rad: f64,
    pub g_m_abs: f64,
    pub g_m_phase_rad: f64,
    /// σ_q in units of ω/v₀.
    pub sigma_q_rel: f64,
    pub l_s_mm: f64,
    pub l_p_mm: f64,
    pub harmonic: u32,
    pub atom_state: AtomState,
    pub s_abs: f64,
    pub s_phase_rad: f64,
    pub current_ma: f64,
    pub t_end_ns: f64,
    pub samples: usize,
    pub g1_abs: f64,
    pub g1_phase_rad: f64,
    pub g2_phase_rad: f64,
    pub delta_e_ev: f64,
    pub delta_theta_mrad: f64,
    pub sweep: SweepOverrides,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            kinetic_energy_kev: 60.0,
            wavelength_nm: 620.0,
            lifetime_ns: 4.5,
            dipole_nm: 0.27,
            r_perp_nm: 10.0,
            z_nm: 0.0,
            g_abs: 1e-3,
            g_phase_rad: 0.0,
            g_m_abs: 0.68,
            g_m_phase_rad: 0.0,
            sigma_q_rel: 1e-2,
            l_s_mm: 0.0,
            l_p_mm: 9.82,
            harmonic: 1,
            atom_state: AtomState::Ground,
            s_abs: 0.58,
            s_phase_rad: 0.0,
            current_ma: 1e-4,
            t_end_ns: 20.0,
            samples: 400,
            g1_abs: 1e-3,
            g1_phase_rad: 0.0,
            g2_phase_rad: 0.0,
            delta_e_ev: 0.5,
            delta_theta_mrad: 2.0,
            sweep: SweepOverrides::default(),
        }
    }
}

/// Configuration error with the key and source location that caused it.
#[derive(Debug)]
pub struct ConfigError {
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for ConfigError {}

fn err(msg: impl Into<String>) -> ConfigError {
    ConfigError { message: msg.into() }
}

/// Every accepted key, in the order used for `resolved-config.txt`.
pub const KEYS: &[&str] = &[
    "electron.kinetic_energy_kev",
    "tls.wavelength_nm",
    "tls.lifetime_ns",
    "tls.dipole_nm",
    "geometry.r_perp_nm",
    "geometry.z_nm",
    "coupling.g_abs",
    "coupling.g_phase_rad",
    "modulation.g_m_abs",
    "modulation.g_m_phase_rad",
    "modulation.sigma_q_rel",
    "modulation.l_s_mm",
    "modulation.l_p_mm",
    "modulation.harmonic",
    "atom.state",
    "beam.s_abs",
    "beam.s_phase_rad",
    "beam.current_ma",
    "rabi.t_end_ns",
    "rabi.samples",
    "entangle.g1_abs",
    "entangle.g1_phase_rad",
    "entangle.g2_phase_rad",
    "phase.delta_e_ev",
    "phase.delta_theta_mrad",
    "sweep.start",
    "sweep.stop",
    "sweep.count",
    "sweep.scale",
];

impl RunConfig {
    fn set(&mut self, key: &str, value: &str, at: &str) -> Result<(), ConfigError> {
        let f = |what: &str| -> Result<f64, ConfigError> {
            value
                .parse::<f64>()
                .map_err(|_| err(format!("{at}: key `{key}`: expected a {what}, got `{value}`")))
        };
        let n = || -> Result<usize, ConfigError> {
            value
                .parse::<usize>()
                .map_err(|_| err(format!("{at}: key `{key}`: expected a count, got `{value}`")))
        };
        match key {
            "electron.kinetic_energy_kev" => self.kinetic_energy_kev = f("number")?,
            "tls.wavelength_nm" => self.wavelength_nm = f("number")?,
            "tls.lifetime_ns" => self.lifetime_ns = f("number")?,
            "tls.dipole_nm" => self.dipole_nm = f("number")?,
            "geometry.r_perp_nm" => self.r_perp_nm = f("number")?,
            "geometry.z_nm" => self.z_nm = f("number")?,
            "coupling.g_abs" => self.g_abs = f("number")?,
            "coupling.g_phase_rad" => self.g_phase_rad = f("number")?,
            "modulation.g_m_abs" => self.g_m_abs = f("number")?,
            "modulation.g_m_phase_rad" => self.g_m_phase_rad = f("number")?,
            "modulation.sigma_q_rel" => self.sigma_q_rel = f("number")?,
            "modulation.l_s_mm" => self.l_s_mm = f("number")?,
            "modulation.l_p_mm" => self.l_p_mm = f("number")?,
            "modulation.harmonic" => {
                self.harmonic = value.parse::<u32>().map_err(|_| {
                    err(format!("{at}: key `{key}`: expected a harmonic order, got `{value}`"))
                })?
            }
            "atom.state" => {
                self.atom_state = match value {
                    "ground" => AtomState::Ground,
                    "excited" => AtomState::Excited,
                    "coherent" => AtomState::Coherent,
                    _ => {
                        return Err(err(format!(
                            "{at}: key `{key}`: expected ground|excited|coherent, got `{value}`"
                        )))
                    }
                }
            }
            "beam.s_abs" => self.s_abs = f("number")?,
            "beam.s_phase_rad" => self.s_phase_rad = f("number")?,
            "beam.current_ma" => self.current_ma = f("number")?,
            "rabi.t_end_ns" => self.t_end_ns = f("number")?,
            "rabi.samples" => self.samples = n()?,
            "entangle.g1_abs" => self.g1_abs = f("number")?,
            "entangle.g1_phase_rad" => self.g1_phase_rad = f("number")?,
            "entangle.g2_phase_rad" => self.g2_phase_rad = f("number")?,
            "phase.delta_e_ev" => self.delta_e_ev = f("number")?,
            "phase.delta_theta_mrad" => self.delta_theta_mrad = f("number")?,
            "sweep.start" => self.sweep.start = Some(f("number")?),
            "sweep.stop" => self.sweep.stop = Some(f("number")?),
            "sweep.count" => self.sweep.count = Some(n()?),
            "sweep.scale" => {
                self.sweep.scale = Some(match value {
                    "linear" => SweepScale::Linear,
                    "log" => SweepScale::Log,
                    _ => {
                        return Err(err(format!(
                            "{at}: key `{key}`: expected linear|log, got `{value}`"
                        )))
                    }
                })
            }
            _ => return Err(err(format!("{at}: unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Range checks that do not depend on the scenario.
    fn validate(&self) -> Result<(), ConfigError> {
        let positive = [
            ("electron.kinetic_energy_kev", self.kinetic_energy_kev),
            ("tls.wavelength_nm", self.wavelength_nm),
            ("tls.lifetime_ns", self.lifetime_ns),
            ("tls.dipole_nm", self.dipole_nm),
            ("geometry.r_perp_nm", self.r_perp_nm),
            ("modulation.sigma_q_rel", self.sigma_q_rel),
            ("beam.current_ma", self.current_ma),
            ("rabi.t_end_ns", self.t_end_ns),
        ];
        for (key, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(err(format!("key `{key}` must be positive, got {v}")));
            }
        }
        let nonnegative = [
            ("coupling.g_abs", self.g_abs),
            ("modulation.g_m_abs", self.g_m_abs),
            ("modulation.l_s_mm", self.l_s_mm),
            ("modulation.l_p_mm", self.l_p_mm),
            ("entangle.g1_abs", self.g1_abs),
            ("phase.delta_e_ev", self.delta_e_ev),
            ("phase.delta_theta_mrad", self.delta_theta_mrad),
        ];
        for (key, v) in nonnegative {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(err(format!("key `{key}` must be nonnegative, got {v}")));
            }
        }
        if self.harmonic == 0 {
            return Err(err("key `modulation.harmonic` must be ≥ 1"));
        }
        if self.samples < 2 {
            return Err(err("key `rabi.samples` must be ≥ 2"));
        }
        if let Some(c) = self.sweep.count {
            if c < 2 {
                return Err(err("key `sweep.count` must be ≥ 2"));
            }
        }
        if let (Some(a), Some(b)) = (self.sweep.start, self.sweep.stop) {
            if !(a < b) {
                return Err(err(format!(
                    "sweep range must satisfy start < stop, got {a} .. {b}"
                )));
            }
        }
        if self.sweep.scale == Some(SweepScale::Log) {
            if let Some(a) = self.sweep.start {
                if !(a > 0.0) {
                    return Err(err("log sweeps need sweep.start > 0"));
                }
            }
        }
        Ok(())
    }

    /// The effective value of every key, for the reproducibility record.
    pub fn resolved(&self, defaults: &super::scenarios::SweepGrid) -> Vec<(String, String)> {
        let sw = |v: Option<f64>, d: f64| format!("{:.11e}", v.unwrap_or(d));
        KEYS.iter()
            .map(|&key| {
                let value = match key {
                    "electron.kinetic_energy_kev" => format!("{:.11e}", self.kinetic_energy_kev),
                    "tls.wavelength_nm" => format!("{:.11e}", self.wavelength_nm),
                    "tls.lifetime_ns" => format!("{:.11e}", self.lifetime_ns),
                    "tls.dipole_nm" => format!("{:.11e}", self.dipole_nm),
                    "geometry.r_perp_nm" => format!("{:.11e}", self.r_perp_nm),
                    "geometry.z_nm" => format!("{:.11e}", self.z_nm),
                    "coupling.g_abs" => format!("{:.11e}", self.g_abs),
                    "coupling.g_phase_rad" => format!("{:.11e}", self.g_phase_rad),
                    "modulation.g_m_abs" => format!("{:.11e}", self.g_m_abs),
                    "modulation.g_m_phase_rad" => format!("{:.11e}", self.g_m_phase_rad),
                    "modulation.sigma_q_rel" => format!("{:.11e}", self.sigma_q_rel),
                    "modulation.l_s_mm" => format!("{:.11e}", self.l_s_mm),
                    "modulation.l_p_mm" => format!("{:.11e}", self.l_p_mm),
                    "modulation.harmonic" => self.harmonic.to_string(),
                    "atom.state" => self.atom_state.to_string(),
                    "beam.s_abs" => format!("{:.11e}", self.s_abs),
                    "beam.s_phase_rad" => format!("{:.11e}", self.s_phase_rad),
                    "beam.current_ma" => format!("{:.11e}", self.current_ma),
                    "rabi.t_end_ns" => format!("{:.11e}", self.t_end_ns),
                    "rabi.samples" => self.samples.to_string(),
                    "entangle.g1_abs" => format!("{:.11e}", self.g1_abs),
                    "entangle.g1_phase_rad" => format!("{:.11e}", self.g1_phase_rad),
                    "entangle.g2_phase_rad" => format!("{:.11e}", self.g2_phase_rad),
                    "phase.delta_e_ev" => format!("{:.11e}", self.delta_e_ev),
                    "phase.delta_theta_mrad" => format!("{:.11e}", self.delta_theta_mrad),
                    "sweep.start" => sw(self.sweep.start, defaults.start),
                    "sweep.stop" => sw(self.sweep.stop, defaults.stop),
                    "sweep.count" => {
                        self.sweep.count.unwrap_or(defaults.count).to_string()
                    }
                    "sweep.scale" => self.sweep.scale.unwrap_or(defaults.scale).to_string(),
                    _ => unreachable!("key list and resolver out of sync"),
                };
                (key.to_string(), value)
            })
            .collect()
    }
}

/// Parses the optional config file, then applies `--set key=value`
/// overrides in order (file < flags).
pub fn parse_config(file: Option<&str>, sets: &[String]) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    if let Some(text) = file {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = format!("line {}", lineno + 1);
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("{at}: expected `key = value`, got `{line}`")))?;
            cfg.set(key.trim(), value.trim(), &at)?;
        }
    }
    for (i, setting) in sets.iter().enumerate() {
        let at = format!("--set #{}", i + 1);
        let (key, value) = setting
            .split_once('=')
            .ok_or_else(|| err(format!("{at}: expected `key=value`, got `{setting}`")))?;
        cfg.set(key.trim(), value.trim(), &at)?;
    }
    cfg.validate()?;
    Ok(cfg)
}
