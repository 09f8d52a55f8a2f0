//! PINEM-modulated Gaussian electron wave packet in momentum space and the
//! ladder-operator expectations s = ⟨b⟩ and s₂ = ⟨b²⟩.

use num_complex::Complex64;

use crate::bessel::{bessel_j, bessel_j_peak, bessel_j_sequence};
use crate::error::{Error, Result};
use crate::kinematics::ElectronKinematics;

/// Tolerated sideband-weight deficit when choosing the cutoff adaptively.
const CUTOFF_TARGET: f64 = 1e-12;
/// Deficit beyond which a grid build is rejected outright.
const CUTOFF_HARD: f64 = 1e-9;

/// Laser modulation imprinted on the electron packet, plus the geometry of
/// the source → modulator → atom beamline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulationParams {
    /// Momentum-space spread of the unmodulated Gaussian packet (1/m).
    pub sigma_q: f64,
    /// Modulation angular frequency (rad/s).
    pub omega: f64,
    /// Complex modulation strength g_m.
    pub g_m: Complex64,
    /// Source-to-modulator distance (m).
    pub l_s: f64,
    /// Modulator-to-atom drift length (m).
    pub l_p: f64,
    /// Sideband cutoff; |n| ≤ n_max sidebands are retained.
    pub n_max: usize,
}

impl ModulationParams {
    /// Builds the parameter set, choosing `n_max` so the Bessel-weight sum
    /// Σ J_n(2|g_m|)² is complete to within 1e-12.
    pub fn new(sigma_q: f64, omega: f64, g_m: Complex64, l_s: f64, l_p: f64) -> Result<Self> {
        if !(sigma_q > 0.0) {
            return Err(Error::domain("sigma_q must be positive"));
        }
        if !(omega > 0.0) {
            return Err(Error::domain("modulation frequency must be positive"));
        }
        if !(l_s >= 0.0 && l_p >= 0.0) {
            return Err(Error::domain("drift lengths must be nonnegative"));
        }
        let x = 2.0 * g_m.norm();
        let mut n_max = 1;
        loop {
            let js = bessel_j_sequence(n_max, x);
            let sum = js[0] * js[0] + 2.0 * js[1..].iter().map(|j| j * j).sum::<f64>();
            if 1.0 - sum < CUTOFF_TARGET {
                break;
            }
            n_max += 1;
        }
        Ok(ModulationParams { sigma_q, omega, g_m, l_s, l_p, n_max })
    }

    /// Same as [`ModulationParams::new`] with an explicit (possibly
    /// insufficient) sideband cutoff.
    pub fn with_n_max(
        sigma_q: f64,
        omega: f64,
        g_m: Complex64,
        l_s: f64,
        l_p: f64,
        n_max: usize,
    ) -> Result<Self> {
        let mut p = Self::new(sigma_q, omega, g_m, l_s, l_p)?;
        p.n_max = n_max.max(1);
        Ok(p)
    }

    pub fn with_drift(&self, l_p: f64) -> Self {
        ModulationParams { l_p, ..*self }
    }

    /// Sideband weight J_n(2|g_m|) e^{inφ_gm} for |n| ≤ n_max.
    pub fn sideband_weights(&self) -> Vec<Complex64> {
        let x = 2.0 * self.g_m.norm();
        let phi = if self.g_m.norm() > 0.0 { self.g_m.arg() } else { 0.0 };
        let js = bessel_j_sequence(self.n_max, x);
        let mut out = Vec::with_capacity(2 * self.n_max + 1);
        for n in -(self.n_max as i32)..=(self.n_max as i32) {
            let j = js[n.unsigned_abs() as usize]
                * if n < 0 && n % 2 != 0 { -1.0 } else { 1.0 };
            out.push(Complex64::from_polar(1.0, n as f64 * phi) * j);
        }
        out
    }

    /// Residual weight 1 − Σ_{|n| ≤ n_max} J_n(2|g_m|)².
    pub fn cutoff_deficit(&self) -> f64 {
        let x = 2.0 * self.g_m.norm();
        let js = bessel_j_sequence(self.n_max, x);
        let sum = js[0] * js[0] + 2.0 * js[1..].iter().map(|j| j * j).sum::<f64>();
        (1.0 - sum).max(0.0)
    }
}

/// Uniformly sampled momentum-space wave function around the central
/// momentum; normalized so Σ|Ψ|²·Δq = 1.
#[derive(Debug, Clone)]
pub struct MomentumGrid {
    pub q_min: f64,
    pub bin_width: f64,
    pub amplitudes: Vec<Complex64>,
}

impl MomentumGrid {
    pub fn q(&self, i: usize) -> f64 {
        self.q_min + i as f64 * self.bin_width
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.bin_width
    }

    /// Probability density |Ψ(q)|² at bin i.
    pub fn density(&self, i: usize) -> f64 {
        self.amplitudes[i].norm_sqr()
    }

    /// A single-momentum (monochromatic) state: all weight in the center bin
    /// of a grid with `2*half + 1` bins of width `bin_width`.
    pub fn monochromatic(bin_width: f64, half: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 2 * half + 1];
        amplitudes[half] = Complex64::new(1.0 / bin_width.sqrt(), 0.0);
        MomentumGrid { q_min: -(half as f64) * bin_width, bin_width, amplitudes }
    }

    /// Multiplies every amplitude by a global phase (diagnostic; physical
    /// observables must be invariant under this).
    pub fn rotate_global_phase(&mut self, phi: f64) {
        let f = Complex64::from_polar(1.0, phi);
        for a in &mut self.amplitudes {
            *a *= f;
        }
    }

    /// CSV serialization: q (1/m), re, im, |amp|².
    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,re,im,abs2\n");
        for (i, a) in self.amplitudes.iter().enumerate() {
            out.push_str(&format!(
                "{:.11e},{:.11e},{:.11e},{:.11e}\n",
                self.q(i),
                a.re,
                a.im,
                a.norm_sqr()
            ));
        }
        out
    }
}

/// Ladder-operator expectations of the incident electron state.
#[derive(Debug, Clone, Copy)]
pub struct LadderExpectations {
    pub s: Complex64,
    pub s2: Complex64,
}

/// Samples the modulated, drifted packet on a uniform momentum grid.
///
/// `window` is the half-extent in multiples of ω/v₀; `bins_per_sigma` sets
/// the resolution (samples per σ_q). The bin width is chosen to divide ω/v₀
/// exactly so that sideband shifts land on grid points.
pub fn build_momentum_grid(
    kin: &ElectronKinematics,
    modp: &ModulationParams,
    window: f64,
    bins_per_sigma: usize,
) -> Result<MomentumGrid> {
    if window < (modp.n_max + 2) as f64 {
        return Err(Error::grid(format!(
            "window {window} too small for n_max = {} (need ≥ n_max + 2)",
            modp.n_max
        )));
    }
    if bins_per_sigma < 8 {
        return Err(Error::grid("need at least 8 bins per sigma_q"));
    }
    let deficit = modp.cutoff_deficit();
    if deficit > CUTOFF_HARD {
        return Err(Error::CutoffDeficit { deficit });
    }
    let spacing = modp.omega / kin.v0;
    let per_spacing = (spacing * bins_per_sigma as f64 / modp.sigma_q).ceil() as usize;
    let bin_width = spacing / per_spacing as f64;
    let half = (window * per_spacing as f64).round() as usize;
    let n_bins = 2 * half + 1;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_bins];

    let weights = modp.sideband_weights();
    let norm_pref = (2.0 * std::f64::consts::PI * modp.sigma_q * modp.sigma_q).powf(-0.25);
    let reach = 45.0 * modp.sigma_q;
    for (wi, w) in weights.iter().enumerate() {
        let n = wi as i32 - modp.n_max as i32;
        let center = n as f64 * spacing;
        let i_lo = (((center - reach) - (-(half as f64) * bin_width)) / bin_width).floor().max(0.0)
            as usize;
        let i_hi =
            ((((center + reach) + (half as f64) * bin_width) / bin_width).ceil() as usize).min(n_bins - 1);
        for i in i_lo..=i_hi {
            let q = (i as f64 - half as f64) * bin_width;
            let d = q - center;
            if d.abs() > reach {
                continue;
            }
            let envelope = (-d * d / (4.0 * modp.sigma_q * modp.sigma_q)).exp();
            // dispersion phase accumulated from source to modulator
            let phase_s = -(d + kin.zeta * d * d) * modp.l_s;
            amplitudes[i] += w * norm_pref * envelope * Complex64::from_polar(1.0, phase_s);
        }
    }
    // drift phase from modulator to atom, then exact renormalization
    for (i, a) in amplitudes.iter_mut().enumerate() {
        if a.norm_sqr() == 0.0 {
            continue;
        }
        let q = (i as f64 - half as f64) * bin_width;
        let phase_p = -(q + kin.zeta * q * q) * modp.l_p;
        *a *= Complex64::from_polar(1.0, phase_p);
    }
    let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * bin_width;
    if norm <= 0.0 {
        return Err(Error::grid("grid carries no amplitude"));
    }
    let scale = 1.0 / norm.sqrt();
    for a in &mut amplitudes {
        *a *= scale;
    }
    Ok(MomentumGrid { q_min: -(half as f64) * bin_width, bin_width, amplitudes })
}

/// Overlap Σ_q Ψ(q + q_shift) Ψ*(q) Δq — the grid evaluation of ⟨b^n⟩ when
/// q_shift = n·ω_a/v₀.
pub fn ladder_expectation_grid(grid: &MomentumGrid, q_shift: f64) -> Result<Complex64> {
    let ratio = q_shift / grid.bin_width;
    let shift = ratio.round();
    if (ratio - shift).abs() > 1e-9 * ratio.abs().max(1.0) {
        return Err(Error::grid(format!(
            "q_shift = {q_shift:e} is not a bin multiple (ratio {ratio}); rebuild on a finer grid"
        )));
    }
    let shift = shift as i64;
    let n = grid.len() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let j = i + shift;
        if j < 0 || j >= n {
            continue;
        }
        acc += grid.amplitudes[j as usize] * grid.amplitudes[i as usize].conj();
    }
    Ok(acc * grid.bin_width)
}

/// Closed-form evaluation of s (order 1) or s₂ (order 2) for the modulated
/// Gaussian packet; valid on and off resonance.
pub fn ladder_expectation_analytic(
    kin: &ElectronKinematics,
    modp: &ModulationParams,
    omega_a: f64,
    order: u8,
) -> Result<Complex64> {
    if !(order == 1 || order == 2) {
        return Err(Error::domain(format!("ladder expectation order must be 1 or 2, got {order}")));
    }
    if !(omega_a > 0.0) {
        return Err(Error::domain("omega_a must be positive"));
    }
    let omega_eff = order as f64 * omega_a;
    let q_eff = omega_eff / kin.v0;
    let spacing = modp.omega / kin.v0;
    let r = omega_eff / modp.omega;
    let gm_abs = modp.g_m.norm();
    let phi_gm = if gm_abs > 0.0 { modp.g_m.arg() } else { 0.0 };
    // 1/(4|g_m| L_pc) = ζ ω²/v₀², so the sine argument stays finite as g_m→0
    let sine_arg = kin.zeta * modp.l_p * spacing * q_eff;
    let bessel_arg = 4.0 * gm_abs * sine_arg.sin();

    let l0 = r.round() as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for side in 0..2 {
        let mut l = if side == 0 { l0 } else { l0 - 1 };
        let step: i64 = if side == 0 { 1 } else { -1 };
        loop {
            let lf = l as f64;
            let detune = lf - r;
            let env1 = (-(spacing * detune).powi(2) / (8.0 * modp.sigma_q * modp.sigma_q)).exp();
            if env1 < 1e-16 && (lf - r).abs() > 2.0 {
                break;
            }
            let j = bessel_j(l as i32, bessel_arg);
            let env3 = (-2.0
                * (modp.sigma_q * kin.zeta * spacing * (modp.l_s * detune - modp.l_p * r)).powi(2))
            .exp();
            // resumming the Bessel double sum leaves e^{−ilπ/2}, as a direct
            // numeric evaluation of the double sum confirms
            let phase =
                lf * (phi_gm - std::f64::consts::FRAC_PI_2) + modp.l_s * spacing * detune;
            let term = Complex64::from_polar(j * env1 * env3, phase);
            sum += term;
            if term.norm() < 1e-14 && (lf - r).abs() > (modp.n_max as f64 + 2.0) {
                break;
            }
            l += step;
            if (l - l0).abs() > 500 {
                break;
            }
        }
    }
    Ok(Complex64::from_polar(1.0, -modp.l_p * q_eff) * sum)
}

/// Convenience: s and s₂ for the transition frequency `omega_a`.
pub fn ladder_expectations(
    kin: &ElectronKinematics,
    modp: &ModulationParams,
    omega_a: f64,
) -> Result<LadderExpectations> {
    Ok(LadderExpectations {
        s: ladder_expectation_analytic(kin, modp, omega_a, 1)?,
        s2: ladder_expectation_analytic(kin, modp, omega_a, 2)?,
    })
}

/// Ideal drift length for perfect classical bunching,
/// L_{p,c} = γ³mv₀³/(2|g_m|ħω²) = v₀²/(4ζ|g_m|ω²).
pub fn classical_bunching_length(kin: &ElectronKinematics, modp: &ModulationParams) -> Result<f64> {
    let gm = modp.g_m.norm();
    if gm == 0.0 {
        return Err(Error::domain("bunching length undefined for |g_m| = 0"));
    }
    Ok(kin.v0 * kin.v0 / (4.0 * kin.zeta * gm * modp.omega * modp.omega))
}

/// Period of the EELS/|s| pattern in the drift length: 4πγ³mv₀³/(ħω²).
pub fn drift_periodicity(kin: &ElectronKinematics, omega: f64) -> f64 {
    2.0 * std::f64::consts::PI * kin.v0 * kin.v0 / (kin.zeta * omega * omega)
}

/// Result of maximizing |s| over the drift length at harmonic order l.
#[derive(Debug, Clone, Copy)]
pub struct MaxSOverDrift {
    pub l_p_opt: f64,
    pub s_max: f64,
    /// Whether 4|g_m| reaches the first peak of J_l; if false the returned
    /// maximum is the best achievable below the Bessel peak.
    pub peak_reached: bool,
}

/// Scans the drift length over one period of the resonant |s| formula
/// (ω_a = l·ω) and returns the maximizing drift length and |s|.
pub fn max_s_over_drift(
    kin: &ElectronKinematics,
    modp: &ModulationParams,
    l: u32,
) -> Result<MaxSOverDrift> {
    if l == 0 {
        return Err(Error::domain("harmonic order must be ≥ 1"));
    }
    let gm = modp.g_m.norm();
    if gm == 0.0 {
        return Err(Error::domain("|g_m| = 0 gives s = 0 for every drift length"));
    }
    // |s|(φ) = |J_l(4|g_m| sin φ)| with φ = ζ l ω² L_p / v₀²; φ ∈ (0, π/2]
    // covers the full range of the sine.
    let f = |phi: f64| bessel_j(l as i32, 4.0 * gm * phi.sin()).abs();
    let mut best_phi = 0.0;
    let mut best = -1.0;
    let n_scan = 4000;
    for i in 1..=n_scan {
        let phi = std::f64::consts::FRAC_PI_2 * i as f64 / n_scan as f64;
        let v = f(phi);
        if v > best {
            best = v;
            best_phi = phi;
        }
    }
    // golden-section refinement around the best scan point
    let golden = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut a = (best_phi - std::f64::consts::FRAC_PI_2 / n_scan as f64).max(0.0);
    let mut b = (best_phi + std::f64::consts::FRAC_PI_2 / n_scan as f64)
        .min(std::f64::consts::FRAC_PI_2);
    let mut c = b - golden * (b - a);
    let mut d = a + golden * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..120 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - golden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + golden * (b - a);
            fd = f(d);
        }
    }
    let phi_opt = 0.5 * (a + b);
    let s_max = f(phi_opt);
    let (x_peak, _) = bessel_j_peak(l);
    let peak_reached = 4.0 * gm >= x_peak;
    let l_p_opt = phi_opt * kin.v0 * kin.v0 / (kin.zeta * l as f64 * modp.omega * modp.omega);
    Ok(MaxSOverDrift { l_p_opt, s_max, peak_reached })
}

/// Diagnostic real-space density |ψ(z)|² by direct Fourier transform of the
/// momentum grid (z relative to the packet center).
pub fn real_space_density(grid: &MomentumGrid, z_values: &[f64]) -> Vec<f64> {
    z_values
        .iter()
        .map(|&z| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, a) in grid.amplitudes.iter().enumerate() {
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                acc += a * Complex64::from_polar(1.0, grid.q(i) * z);
            }
            (acc * grid.bin_width).norm_sqr() / (2.0 * std::f64::consts::PI)
        })
        .collect()
}
