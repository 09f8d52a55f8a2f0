//! Single-pass scattering of one free electron off a two-level system:
//! perturbation of the atomic density matrix and the electron energy-loss
//! spectrum (EELS) change, both to second order in the coupling g.

use num_complex::Complex64;

use crate::bessel::{bessel_j, bessel_j_sequence};
use crate::error::{Error, Result};
use crate::kinematics::ElectronKinematics;
use crate::linalg::Mat4;
use crate::wavepacket::{LadderExpectations, ModulationParams, MomentumGrid};

/// Coupling magnitude above which the single-interaction perturbative
/// expressions are refused.
pub const PERTURBATIVE_LIMIT: f64 = 0.1;

/// Density matrix of the two-level system; ρ21 is implied by Hermiticity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    pub rho11: f64,
    pub rho22: f64,
    pub rho12: Complex64,
}

impl DensityMatrix2 {
    pub fn new(rho11: f64, rho22: f64, rho12: Complex64) -> Result<Self> {
        if (rho11 + rho22 - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!("trace must be 1, got {}", rho11 + rho22)));
        }
        if rho11 < -1e-12 || rho22 < -1e-12 {
            return Err(Error::domain("populations must be nonnegative"));
        }
        // allow the O(|g|⁴) positivity overshoot of truncated perturbative
        // updates
        if rho11 * rho22 - rho12.norm_sqr() < -1e-6 {
            return Err(Error::domain("density matrix must be positive semidefinite"));
        }
        Ok(DensityMatrix2 { rho11, rho22, rho12 })
    }

    pub fn ground() -> Self {
        DensityMatrix2 { rho11: 1.0, rho22: 0.0, rho12: Complex64::new(0.0, 0.0) }
    }

    pub fn excited() -> Self {
        DensityMatrix2 { rho11: 0.0, rho22: 1.0, rho12: Complex64::new(0.0, 0.0) }
    }

    /// (|1⟩ + |2⟩)/√2 — maximal real coherence.
    pub fn coherent_plus() -> Self {
        DensityMatrix2 { rho11: 0.5, rho22: 0.5, rho12: Complex64::new(0.5, 0.0) }
    }

    /// Pure state cos(θ/2)|1⟩ + e^{iφ} sin(θ/2)|2⟩.
    pub fn pure(theta: f64, phi: f64) -> Self {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        DensityMatrix2 {
            rho11: c * c,
            rho22: s * s,
            rho12: Complex64::from_polar(c * s, -phi),
        }
    }

    pub fn rho21(&self) -> Complex64 {
        self.rho12.conj()
    }

    /// [ρ11, ρ22, ρ12, ρ21] ordering used by the 4×4 dynamics.
    pub fn as_vector(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.rho11, 0.0),
            Complex64::new(self.rho22, 0.0),
            self.rho12,
            self.rho12.conj(),
        ]
    }

    /// Rebuilds from a dynamics vector, enforcing Hermiticity and trace.
    pub fn from_vector(u: &[Complex64; 4]) -> Result<Self> {
        if u[0].im.abs() > 1e-9 || u[1].im.abs() > 1e-9 {
            return Err(Error::domain("populations acquired imaginary parts"));
        }
        if (u[2] - u[3].conj()).norm() > 1e-9 {
            return Err(Error::domain("coherences violate Hermiticity"));
        }
        DensityMatrix2::new(u[0].re, u[1].re, u[2])
    }

    pub fn purity(&self) -> f64 {
        self.rho11 * self.rho11 + self.rho22 * self.rho22 + 2.0 * self.rho12.norm_sqr()
    }
}

/// Perturbation matrix M for the atomic four-vector, Δu = −iMu.
pub fn perturbation_matrix(g: Complex64, ladder: &LadderExpectations) -> Mat4 {
    let i = Complex64::new(0.0, 1.0);
    let g2 = Complex64::new(g.norm_sqr(), 0.0);
    let (s, s2) = (ladder.s, ladder.s2);
    let gs = g * s;
    let gcs = (g * s).conj();
    let mut m = Mat4::zeros();
    m.0[0] = [-i * g2, i * g2, -gs, gcs];
    m.0[1] = [i * g2, -i * g2, gs, -gcs];
    m.0[2] = [-gcs, gcs, -i * g2, i * (g * g * s2).conj()];
    m.0[3] = [gs, -gs, i * g * g * s2, -i * g2];
    m
}

/// Change of the atomic state after one electron passes, Δρ from Δu = −iMu.
pub fn apply_to_atom(
    g: Complex64,
    ladder: &LadderExpectations,
    rho: &DensityMatrix2,
) -> Result<DensityMatrix2> {
    if g.norm() >= PERTURBATIVE_LIMIT {
        return Err(Error::domain(format!(
            "|g| = {:.3} outside the perturbative regime (< {PERTURBATIVE_LIMIT})",
            g.norm()
        )));
    }
    let m = perturbation_matrix(g, ladder);
    let u = rho.as_vector();
    let du = m.matvec(&u);
    let minus_i = Complex64::new(0.0, -1.0);
    let mut out = u;
    for k in 0..4 {
        out[k] += minus_i * du[k];
    }
    DensityMatrix2::from_vector(&out)
}

/// Mean electron energy change per pass in units of ħω_a:
/// Δ⟨E⟩/ħω_a = |g|²(ρ22 − ρ11) − 2 Im(g s ρ12).
pub fn average_energy_change(g: Complex64, s: Complex64, rho: &DensityMatrix2) -> f64 {
    g.norm_sqr() * (rho.rho22 - rho.rho11) - 2.0 * (g * s * rho.rho12).im
}

/// EELS change resolved on the momentum grid, split into the part linear in
/// g (∝ ρ12) and the part quadratic in g.
#[derive(Debug, Clone)]
pub struct SpectrumChange {
    pub q_min: f64,
    pub bin_width: f64,
    pub first: Vec<f64>,
    pub second: Vec<f64>,
}

impl SpectrumChange {
    pub fn q(&self, i: usize) -> f64 {
        self.q_min + i as f64 * self.bin_width
    }

    pub fn total(&self, i: usize) -> f64 {
        self.first[i] + self.second[i]
    }

    /// ⟨Δq⟩ = Σ q Δρ(q) Δq — momentum first moment of the change.
    pub fn first_moment(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.first.len() {
            acc += self.q(i) * (self.first[i] + self.second[i]);
        }
        acc * self.bin_width
    }

    /// Total probability change (should vanish to truncation error).
    pub fn zeroth_moment(&self) -> f64 {
        self.first.iter().zip(&self.second).map(|(a, b)| a + b).sum::<f64>() * self.bin_width
    }
}

/// Δρ_e(k) for one electron scattering off the atom, to second order in g.
///
/// `q_a = ω_a/v₀` must coincide with a grid bin multiple.
pub fn eels_change(
    grid: &MomentumGrid,
    g: Complex64,
    rho: &DensityMatrix2,
    q_a: f64,
) -> Result<SpectrumChange> {
    if g.norm() >= PERTURBATIVE_LIMIT {
        return Err(Error::domain(format!(
            "|g| = {:.3} outside the perturbative regime (< {PERTURBATIVE_LIMIT})",
            g.norm()
        )));
    }
    let ratio = q_a / grid.bin_width;
    let shift = ratio.round();
    if (ratio - shift).abs() > 1e-9 * ratio.abs().max(1.0) {
        return Err(Error::grid(format!(
            "q_a = {q_a:e} is not a bin multiple; rebuild the grid with a commensurate bin width"
        )));
    }
    let shift = shift as i64;
    let n = grid.len() as i64;
    let psi = |j: i64| -> Complex64 {
        if j < 0 || j >= n {
            Complex64::new(0.0, 0.0)
        } else {
            grid.amplitudes[j as usize]
        }
    };
    let g2 = g.norm_sqr();
    let mut first = vec![0.0; grid.len()];
    let mut second = vec![0.0; grid.len()];
    for i in 0..n {
        let p0 = psi(i);
        let p_up = psi(i + shift); // Ψ(k + q_a)
        let p_dn = psi(i - shift); // Ψ(k − q_a)
        let cross = g * rho.rho12 * (p_up * p0.conj() - p0 * p_dn.conj());
        first[i as usize] = 2.0 * cross.im;
        second[i as usize] =
            g2 * (rho.rho11 * p_up.norm_sqr() + rho.rho22 * p_dn.norm_sqr() - p0.norm_sqr());
    }
    Ok(SpectrumChange { q_min: grid.q_min, bin_width: grid.bin_width, first, second })
}

/// Which part of the spectrum change to inspect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumPart {
    First,
    Second,
    Total,
}

/// Sideband-integrated spectrum change: index n covers −n_max..=n_max in
/// steps of the modulation spacing ω/v₀.
#[derive(Debug, Clone)]
pub struct SidebandSpectrum {
    pub n_max: usize,
    pub first: Vec<f64>,
    pub second: Vec<f64>,
}

impl SidebandSpectrum {
    fn idx(&self, band: i32) -> usize {
        (band + self.n_max as i32) as usize
    }

    pub fn first_order(&self, band: i32) -> f64 {
        self.first[self.idx(band)]
    }

    pub fn second_order(&self, band: i32) -> f64 {
        self.second[self.idx(band)]
    }

    pub fn total(&self, band: i32) -> f64 {
        self.first_order(band) + self.second_order(band)
    }

    fn part_value(&self, part: SpectrumPart, band: i32) -> f64 {
        match part {
            SpectrumPart::First => self.first_order(band),
            SpectrumPart::Second => self.second_order(band),
            SpectrumPart::Total => self.total(band),
        }
    }

    /// Residual symmetry f(n) + f(−n), normalized to the largest |f(n)|;
    /// 0 for a perfectly anti-symmetric part.
    pub fn asymmetry_defect(&self, part: SpectrumPart) -> f64 {
        let mut peak = 0.0f64;
        let mut defect = 0.0f64;
        for band in 1..=self.n_max as i32 {
            let a = self.part_value(part, band);
            let b = self.part_value(part, -band);
            peak = peak.max(a.abs()).max(b.abs());
            defect = defect.max((a + b).abs());
        }
        if peak == 0.0 {
            0.0
        } else {
            defect / peak
        }
    }
}

/// Integrates a grid-resolved spectrum change over windows of width
/// `spacing` centered on each sideband.
pub fn integrate_sidebands(
    sp: &SpectrumChange,
    spacing: f64,
    n_max: usize,
) -> Result<SidebandSpectrum> {
    if !(spacing > 0.0) {
        return Err(Error::domain("sideband spacing must be positive"));
    }
    let bands = 2 * n_max + 1;
    let mut first = vec![0.0; bands];
    let mut second = vec![0.0; bands];
    for i in 0..sp.first.len() {
        let band = (sp.q(i) / spacing).round() as i64;
        if band.unsigned_abs() as usize > n_max {
            continue;
        }
        let b = (band + n_max as i64) as usize;
        first[b] += sp.first[i] * sp.bin_width;
        second[b] += sp.second[i] * sp.bin_width;
    }
    Ok(SidebandSpectrum { n_max, first, second })
}

/// Closed-form sideband-integrated first-order EELS change 2·Im f_n for the
/// resonant case ω_a = l·ω:
/// f_n = gρ12 e^{−i(L_p ω_a/v₀ − lφ_gm)} e^{−i2n(ω/v₀)ζL_p ω_a/v₀}
///       × [J_{n+l}J_n e^{−iα} − J_nJ_{n−l} e^{iα}],  α = ζL_p(ω_a/v₀)².
pub fn eels_first_order_closed_form(
    kin: &ElectronKinematics,
    modp: &ModulationParams,
    g: Complex64,
    rho12: Complex64,
    l: u32,
    band: i32,
) -> Result<f64> {
    if l == 0 {
        return Err(Error::OffResonance(
            "closed form needs resonance with a positive harmonic, l ≥ 1".into(),
        ));
    }
    let omega_a = l as f64 * modp.omega;
    let q_a = omega_a / kin.v0;
    let spacing = modp.omega / kin.v0;
    if modp.sigma_q * 10.0 > spacing {
        return Err(Error::OffResonance(format!(
            "closed form assumes σ_q ≪ ω/v₀ (σ_q = {:.3e}, ω/v₀ = {:.3e})",
            modp.sigma_q, spacing
        )));
    }
    let x = 2.0 * modp.g_m.norm();
    let phi_gm = if modp.g_m.norm() > 0.0 { modp.g_m.arg() } else { 0.0 };
    let jn = |k: i32| bessel_j(k, x);
    let alpha = kin.zeta * modp.l_p * q_a * q_a;
    let bracket = jn(band + l as i32) * jn(band)
        * Complex64::from_polar(1.0, -alpha)
        - jn(band) * jn(band - l as i32) * Complex64::from_polar(1.0, alpha);
    let phase = Complex64::from_polar(
        1.0,
        -(modp.l_p * q_a - l as f64 * phi_gm) - 2.0 * band as f64 * spacing * kin.zeta * modp.l_p * q_a,
    );
    let f_n = g * rho12 * phase * bracket;
    Ok(2.0 * f_n.im)
}

/// Modulation-laser phase that maximizes the anti-symmetric EELS part:
/// ∠g + ∠ρ12 − L_p ω_a/v₀ + lφ_gm = (l−1)π/2 (mod π), solved for φ_gm.
pub fn asymmetry_phase(
    kin: &ElectronKinematics,
    modp: &ModulationParams,
    g: Complex64,
    rho12: Complex64,
    l: u32,
) -> Result<f64> {
    if l == 0 {
        return Err(Error::domain("harmonic order must be ≥ 1"));
    }
    if rho12.norm() == 0.0 {
        return Err(Error::domain("phase condition undefined for ρ12 = 0"));
    }
    let omega_a = l as f64 * modp.omega;
    let target = (l as f64 - 1.0) * std::f64::consts::FRAC_PI_2;
    let phi = (target - g.arg() - rho12.arg() + modp.l_p * omega_a / kin.v0) / l as f64;
    Ok(phi.rem_euclid(2.0 * std::f64::consts::PI))
}

/// Outcome of the numeric search for the modulation strength maximizing the
/// anti-symmetric first-order EELS signal (ω_a = ω, phase condition met).
#[derive(Debug, Clone, Copy)]
pub struct OptimalModulation {
    pub g_m: f64,
    /// Sideband carrying the strongest signal.
    pub band: i32,
    /// Drift phase α = ζL_p(ω/v₀)² at the optimum.
    pub alpha: f64,
    /// Peak |Δρ_e^{(1)}| normalized to |g ρ12|.
    pub signal: f64,
}

/// Sweeps |g_m| and the drift phase, maximizing the normalized anti-symmetric
/// first-order signal 2|Im f_n|/|gρ12| for l = 1.
pub fn optimal_modulation(gm_max: f64, n_gm: usize) -> Result<OptimalModulation> {
    if !(gm_max > 0.0) || n_gm < 8 {
        return Err(Error::domain("need gm_max > 0 and at least 8 sweep points"));
    }
    // with the phase condition enforced, the normalized signal at band n is
    // |J_{n+1}J_n sin((2n+1)α) − J_nJ_{n−1} sin((2n−1)α)| × 2
    let eval = |gm: f64| -> (f64, i32, f64) {
        let n_j = ((2.0 * gm).ceil() as usize + 24).max(8);
        let js = bessel_j_sequence(n_j + 1, 2.0 * gm);
        let j = |k: i32| -> f64 {
            let a = k.unsigned_abs() as usize;
            if a >= js.len() {
                0.0
            } else {
                js[a] * if k < 0 && k % 2 != 0 { -1.0 } else { 1.0 }
            }
        };
        let mut best = (0.0f64, 0i32, 0.0f64);
        let n_alpha = 720;
        for ia in 0..n_alpha {
            let alpha = 2.0 * std::f64::consts::PI * ia as f64 / n_alpha as f64;
            for band in 1..=(n_j as i32) {
                let v = 2.0
                    * (j(band + 1) * j(band) * ((2.0 * band as f64 + 1.0) * alpha).sin()
                        - j(band) * j(band - 1) * ((2.0 * band as f64 - 1.0) * alpha).sin())
                    .abs();
                if v > best.0 {
                    best = (v, band, alpha);
                }
            }
        }
        best
    };
    let mut best_gm = 0.0;
    let mut best = (0.0f64, 0i32, 0.0f64);
    for i in 1..=n_gm {
        let gm = gm_max * i as f64 / n_gm as f64;
        let v = eval(gm);
        if v.0 > best.0 {
            best = v;
            best_gm = gm;
        }
    }
    // golden-section refinement of g_m around the best sweep point
    let golden = (5.0_f64.sqrt() - 1.0) / 2.0;
    let step = gm_max / n_gm as f64;
    let (mut a, mut b) = ((best_gm - step).max(1e-6), (best_gm + step).min(gm_max));
    for _ in 0..60 {
        let c = b - golden * (b - a);
        let d = a + golden * (b - a);
        if eval(c).0 > eval(d).0 {
            b = d;
        } else {
            a = c;
        }
    }
    let gm = 0.5 * (a + b);
    let (signal, band, alpha) = eval(gm);
    Ok(OptimalModulation { g_m: gm, band, alpha, signal })
}
