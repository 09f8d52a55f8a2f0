//! One electron scattering sequentially off two two-level atoms: the shared
//! momentum ladder mediates atom–atom entanglement, heralded by the electron
//! energy loss.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scattering::PERTURBATIVE_LIMIT;

/// Joint pure state of (electron momentum shift) ⊗ (atom 1) ⊗ (atom 2)
/// after both scattering events. The electron starts monochromatic; after
/// two passes its momentum shift m (in units of ω_a/v₀) lies in −2..=+2.
#[derive(Debug, Clone)]
pub struct TwoAtomScattering {
    /// amplitudes[m + 2][i][j]: shift m, atom 1 in state i, atom 2 in j
    /// (0 = ground, 1 = excited).
    pub amplitudes: [[[Complex64; 2]; 2]; 5],
}

/// Pure two-atom state obtained by projecting on one electron shift.
#[derive(Debug, Clone, Copy)]
pub struct PostSelectedPair {
    /// Normalized amplitudes a[i][j] in the {1,2} ⊗ {1,2} basis.
    pub amplitudes: [[Complex64; 2]; 2],
    /// Probability of the heralding outcome.
    pub probability: f64,
}

impl PostSelectedPair {
    /// Concurrence of the pure two-qubit state, C = 2|a₁₁a₂₂ − a₁₂a₂₁|.
    pub fn concurrence(&self) -> f64 {
        concurrence_pure(&self.amplitudes)
    }
}

/// Concurrence of a normalized pure two-qubit state.
pub fn concurrence_pure(a: &[[Complex64; 2]; 2]) -> f64 {
    2.0 * (a[0][0] * a[1][1] - a[0][1] * a[1][0]).norm()
}

fn check_atom_state(psi: &[Complex64; 2], which: &str) -> Result<()> {
    let n = psi[0].norm_sqr() + psi[1].norm_sqr();
    if (n - 1.0).abs() > 1e-9 {
        return Err(Error::domain(format!("{which} state not normalized (norm² = {n})")));
    }
    Ok(())
}

impl TwoAtomScattering {
    /// Applies S = (1 − |g|²/2) − i(g b σ⁺ + g* b† σ⁻) for atom 1 then
    /// atom 2 to the product state |m=0⟩ ⊗ ψ₁ ⊗ ψ₂.
    pub fn sequential(
        g1: Complex64,
        g2: Complex64,
        atom1: &[Complex64; 2],
        atom2: &[Complex64; 2],
    ) -> Result<Self> {
        for (g, which) in [(g1, "first"), (g2, "second")] {
            if g.norm() >= PERTURBATIVE_LIMIT {
                return Err(Error::domain(format!(
                    "|g| = {:.3} for the {which} atom outside the perturbative regime",
                    g.norm()
                )));
            }
        }
        check_atom_state(atom1, "atom 1")?;
        check_atom_state(atom2, "atom 2")?;

        let zero = Complex64::new(0.0, 0.0);
        let mut amps = [[[zero; 2]; 2]; 5];
        for i in 0..2 {
            for j in 0..2 {
                amps[2][i][j] = atom1[i] * atom2[j];
            }
        }
        let scatter = |amps: &[[[Complex64; 2]; 2]; 5], g: Complex64, atom: usize| {
            let mut out = [[[zero; 2]; 2]; 5];
            let minus_i = Complex64::new(0.0, -1.0);
            let elastic = Complex64::new(1.0 - 0.5 * g.norm_sqr(), 0.0);
            for mi in 0..5 {
                for i in 0..2 {
                    for j in 0..2 {
                        let a = amps[mi][i][j];
                        if a.norm_sqr() == 0.0 {
                            continue;
                        }
                        out[mi][i][j] += elastic * a;
                        let level = if atom == 0 { i } else { j };
                        // g b σ⁺: excite the atom, lower the electron
                        if level == 0 && mi > 0 {
                            let (ni, nj) = if atom == 0 { (1, j) } else { (i, 1) };
                            out[mi - 1][ni][nj] += minus_i * g * a;
                        }
                        // g* b† σ⁻: de-excite the atom, raise the electron
                        if level == 1 && mi < 4 {
                            let (ni, nj) = if atom == 0 { (0, j) } else { (i, 0) };
                            out[mi + 1][ni][nj] += minus_i * g.conj() * a;
                        }
                    }
                }
            }
            out
        };
        let after1 = scatter(&amps, g1, 0);
        let after2 = scatter(&after1, g2, 1);
        Ok(TwoAtomScattering { amplitudes: after2 })
    }

    pub fn shift_probability(&self, m: i32) -> f64 {
        if !(-2..=2).contains(&m) {
            return 0.0;
        }
        let block = &self.amplitudes[(m + 2) as usize];
        block.iter().flatten().map(|a| a.norm_sqr()).sum()
    }

    /// Total norm; deviates from 1 only at O(g⁴) because the elastic
    /// amplitude is truncated at |g|².
    pub fn norm(&self) -> f64 {
        (-2..=2).map(|m| self.shift_probability(m)).sum()
    }

    /// Projects on electron shift m and renormalizes the atom pair.
    pub fn postselect(&self, m: i32) -> Result<PostSelectedPair> {
        if !(-2..=2).contains(&m) {
            return Err(Error::domain(format!("electron shift {m} outside −2..=2")));
        }
        let probability = self.shift_probability(m);
        if probability < 1e-30 {
            return Err(Error::domain(format!(
                "post-selection on shift {m} has vanishing probability"
            )));
        }
        let block = &self.amplitudes[(m + 2) as usize];
        let scale = 1.0 / probability.sqrt();
        let mut amplitudes = *block;
        for row in &mut amplitudes {
            for a in row {
                *a *= scale;
            }
        }
        Ok(PostSelectedPair { amplitudes, probability })
    }
}

/// Heralded entanglement figures for ground-state atoms and single-loss
/// post-selection, in leading order: probability |g₁|² + |g₂|² and
/// concurrence 2|g₁g₂|/(|g₁|² + |g₂|²).
#[derive(Debug, Clone, Copy)]
pub struct HeraldedEntanglement {
    pub probability: f64,
    pub concurrence: f64,
}

/// Leading-order closed form for the single-loss heralding of two
/// ground-state atoms.
pub fn heralded_closed_form(g1: Complex64, g2: Complex64) -> Result<HeraldedEntanglement> {
    let (p1, p2) = (g1.norm_sqr(), g2.norm_sqr());
    if p1 + p2 == 0.0 {
        return Err(Error::domain("both couplings vanish; nothing is heralded"));
    }
    Ok(HeraldedEntanglement {
        probability: p1 + p2,
        concurrence: 2.0 * (g1 * g2).norm() / (p1 + p2),
    })
}
