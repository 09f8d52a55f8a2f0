//! Electron kinematics, the two-level system, and the electron--atom
//! coupling coefficient.

use num_complex::Complex64;

use crate::bessel::bessel_k;
use crate::constants::{
    ELECTRON_MASS, ELECTRON_REST_ENERGY, ELEMENTARY_CHARGE, EV, HBAR, SPEED_OF_LIGHT,
    VACUUM_PERMITTIVITY,
};
use crate::error::{Error, Result};

/// Relativistic kinematics of the electron wave packet's central momentum.
///
/// `zeta` is the dispersion curvature ζ = ħ/(2γ³ m v₀), the coefficient of
/// the quadratic term in E(q) = γmc² + ħv₀q + ħv₀ζq².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectronKinematics {
    pub kinetic_energy_ev: f64,
    pub beta: f64,
    pub gamma: f64,
    pub v0: f64,
    pub zeta: f64,
}

impl ElectronKinematics {
    pub fn from_kinetic_energy_ev(e_kin_ev: f64) -> Result<Self> {
        if !(e_kin_ev > 0.0) {
            return Err(Error::domain(format!(
                "kinetic energy must be positive, got {e_kin_ev} eV"
            )));
        }
        let gamma = 1.0 + e_kin_ev * EV / ELECTRON_REST_ENERGY;
        let beta = (1.0 - 1.0 / (gamma * gamma)).sqrt();
        let v0 = beta * SPEED_OF_LIGHT;
        let zeta = HBAR / (2.0 * gamma.powi(3) * ELECTRON_MASS * v0);
        Ok(ElectronKinematics { kinetic_energy_ev: e_kin_ev, beta, gamma, v0, zeta })
    }

    /// Dispersion E(q) about the central momentum, in J, with the rest +
    /// central-momentum terms included.
    pub fn dispersion(&self, q: f64) -> f64 {
        self.gamma * ELECTRON_REST_ENERGY
            + HBAR * self.v0 * q
            + HBAR * self.v0 * self.zeta * q * q
    }
}

/// Two-level system: transition frequency, lifetime, and transition dipole.
///
/// The dipole orientation is a unit vector expressed in the scattering
/// frame: component 0 along ê_⊥ (from the beam axis toward the atom),
/// component 1 along the orthogonal transverse direction (which never
/// couples), component 2 along the propagation axis ê_z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelSystem {
    pub omega_a: f64,
    pub tau: f64,
    pub dipole_length: f64,
    pub orientation: [f64; 3],
}

impl TwoLevelSystem {
    pub fn new(omega_a: f64, tau: f64, dipole_length: f64, orientation: [f64; 3]) -> Result<Self> {
        if !(omega_a > 0.0) {
            return Err(Error::domain("transition frequency must be positive"));
        }
        if !(tau > 0.0) {
            return Err(Error::domain("lifetime must be positive"));
        }
        if !(dipole_length >= 0.0) {
            return Err(Error::domain("dipole length must be nonnegative"));
        }
        let norm2: f64 = orientation.iter().map(|c| c * c).sum();
        if (norm2 - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!(
                "dipole orientation must be a unit vector (norm² = {norm2})"
            )));
        }
        Ok(TwoLevelSystem { omega_a, tau, dipole_length, orientation })
    }

    /// Construct from the transition wavelength in vacuum.
    pub fn from_wavelength_nm(
        wavelength_nm: f64,
        tau: f64,
        dipole_length: f64,
        orientation: [f64; 3],
    ) -> Result<Self> {
        if !(wavelength_nm > 0.0) {
            return Err(Error::domain("wavelength must be positive"));
        }
        let omega_a = 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / (wavelength_nm * 1e-9);
        Self::new(omega_a, tau, dipole_length, orientation)
    }
}

/// Transverse and longitudinal position of the atom relative to the beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingGeometry {
    pub r_perp: f64,
    pub z_a: f64,
}

impl CouplingGeometry {
    pub fn new(r_perp: f64, z_a: f64) -> Result<Self> {
        if !(r_perp > 0.0) {
            return Err(Error::domain(format!(
                "transverse distance must be positive, got {r_perp}"
            )));
        }
        Ok(CouplingGeometry { r_perp, z_a })
    }
}

/// Dimensionless coupling coefficient g between the free electron and the
/// two-level transition, with relativistic correction:
///
/// g = e²ω_a/(2πε₀γħv₀²) e^{iω_a z_a/v₀}
///     [-K₁(ω_a r_⊥/γv₀) ê_⊥ + (i/γ) K₀(ω_a r_⊥/γv₀) ê_z] · l₂₁
pub fn coupling_g(
    kin: &ElectronKinematics,
    tls: &TwoLevelSystem,
    geom: &CouplingGeometry,
) -> Result<Complex64> {
    let arg = (tls.omega_a * geom.r_perp / (kin.gamma * kin.v0)).abs();
    let k0 = bessel_k(0, arg)?;
    let k1 = bessel_k(1, arg)?;
    let prefactor = ELEMENTARY_CHARGE * ELEMENTARY_CHARGE * tls.omega_a
        / (2.0 * std::f64::consts::PI * VACUUM_PERMITTIVITY * kin.gamma * HBAR * kin.v0 * kin.v0);
    let l_perp = tls.dipole_length * tls.orientation[0];
    let l_z = tls.dipole_length * tls.orientation[2];
    let field = Complex64::new(-k1 * l_perp, k0 * l_z / kin.gamma);
    let phase = Complex64::from_polar(1.0, tls.omega_a * geom.z_a / kin.v0);
    Ok(prefactor * phase * field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snv() -> TwoLevelSystem {
        TwoLevelSystem::from_wavelength_nm(620.0, 4.5e-9, 0.27e-9, [1.0, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn kinematics_60kev() {
        let k = ElectronKinematics::from_kinetic_energy_ev(60e3).unwrap();
        assert!((k.beta - 0.45).abs() < 0.005);
        assert!((k.gamma - 1.12).abs() < 0.005);
        // internal consistency
        assert!((k.gamma - 1.0 / (1.0 - k.beta * k.beta).sqrt()).abs() < 1e-12 * k.gamma);
        assert!((k.v0 - k.beta * SPEED_OF_LIGHT).abs() < 1e-12 * k.v0);
    }

    #[test]
    fn kinematics_nonrelativistic_limit() {
        let k = ElectronKinematics::from_kinetic_energy_ev(1e-3).unwrap();
        assert!(k.beta < 1e-3);
        assert!((k.gamma - 1.0).abs() < 1e-8);
    }

    #[test]
    fn kinematics_rejects_nonpositive_energy() {
        assert!(ElectronKinematics::from_kinetic_energy_ev(0.0).is_err());
        assert!(ElectronKinematics::from_kinetic_energy_ev(-5.0).is_err());
    }

    #[test]
    fn zeta_matches_finite_difference_of_dispersion() {
        // ζ is the curvature of E(q)/(ħ v₀); finite-difference the dispersion
        let k = ElectronKinematics::from_kinetic_energy_ev(60e3).unwrap();
        // large h keeps the curvature term above the fp noise of the huge
        // rest-energy offset; the dispersion is exactly quadratic so any h
        // works analytically
        let q0 = 0.0;
        let h = 1e9;
        let d2 = (k.dispersion(q0 + h) - 2.0 * k.dispersion(q0) + k.dispersion(q0 - h)) / (h * h);
        let zeta_fd = d2 / (2.0 * HBAR * k.v0);
        assert!((zeta_fd / k.zeta - 1.0).abs() < 1e-6);
    }

    #[test]
    fn coupling_magnitude_snv_60kev() {
        let kin = ElectronKinematics::from_kinetic_energy_ev(60e3).unwrap();
        let geom = CouplingGeometry::new(10e-9, 0.0).unwrap();
        let g = coupling_g(&kin, &snv(), &geom).unwrap();
        let mag = g.norm();
        assert!(mag > 5e-4 && mag < 2e-3, "|g| = {mag:e}");
    }

    #[test]
    fn coupling_decays_at_large_distance() {
        let kin = ElectronKinematics::from_kinetic_energy_ev(60e3).unwrap();
        let tls = snv();
        let r = 100.0 * kin.gamma * kin.v0 / tls.omega_a;
        let geom = CouplingGeometry::new(r, 0.0).unwrap();
        let g = coupling_g(&kin, &tls, &geom).unwrap();
        assert!(g.norm() < 1e-12);
    }

    #[test]
    fn coupling_grows_at_lower_energy() {
        let tls = snv();
        let geom = CouplingGeometry::new(10e-9, 0.0).unwrap();
        let mags: Vec<f64> = [600.0, 6e3, 60e3]
            .iter()
            .map(|&e| {
                let kin = ElectronKinematics::from_kinetic_energy_ev(e).unwrap();
                coupling_g(&kin, &tls, &geom).unwrap().norm()
            })
            .collect();
        assert!(mags[0] > mags[1] && mags[1] > mags[2], "{mags:?}");
    }

    #[test]
    fn coupling_linear_in_dipole_length() {
        let kin = ElectronKinematics::from_kinetic_energy_ev(60e3).unwrap();
        let geom = CouplingGeometry::new(10e-9, 0.0).unwrap();
        let t1 = snv();
        let t2 = TwoLevelSystem::from_wavelength_nm(620.0, 4.5e-9, 0.54e-9, [1.0, 0.0, 0.0]).unwrap();
        let g1 = coupling_g(&kin, &t1, &geom).unwrap();
        let g2 = coupling_g(&kin, &t2, &geom).unwrap();
        assert!((g2.norm() / g1.norm() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn coupling_phase_advances_with_atom_position() {
        let kin = ElectronKinematics::from_kinetic_energy_ev(60e3).unwrap();
        let tls = snv();
        let dz = 3.7e-9;
        let g0 = coupling_g(&kin, &tls, &CouplingGeometry::new(10e-9, 0.0).unwrap()).unwrap();
        let g1 = coupling_g(&kin, &tls, &CouplingGeometry::new(10e-9, dz).unwrap()).unwrap();
        assert!((g1.norm() / g0.norm() - 1.0).abs() < 1e-14);
        let dphi = (g1 / g0).arg();
        let expected = (tls.omega_a * dz / kin.v0).rem_euclid(2.0 * std::f64::consts::PI);
        let expected = if expected > std::f64::consts::PI {
            expected - 2.0 * std::f64::consts::PI
        } else {
            expected
        };
        assert!((dphi - expected).abs() < 1e-12);
    }

    #[test]
    fn coupling_nonrelativistic_consistency() {
        // for γ-1 < 1e-6 the relativistic form matches the γ=1 form to 1e-4
        let kin = ElectronKinematics::from_kinetic_energy_ev(0.5).unwrap();
        assert!(kin.gamma - 1.0 < 1e-6);
        let tls = TwoLevelSystem::from_wavelength_nm(620.0, 4.5e-9, 0.27e-9,
            [0.6, 0.0, 0.8]).unwrap();
        let geom = CouplingGeometry::new(2e-9, 0.0).unwrap();
        let g = coupling_g(&kin, &tls, &geom).unwrap();
        // γ=1 form evaluated directly
        let arg = tls.omega_a * geom.r_perp / kin.v0;
        let pref = ELEMENTARY_CHARGE * ELEMENTARY_CHARGE * tls.omega_a
            / (2.0 * std::f64::consts::PI * VACUUM_PERMITTIVITY * HBAR * kin.v0 * kin.v0);
        let gnr = pref
            * Complex64::new(
                -bessel_k(1, arg).unwrap() * tls.dipole_length * 0.6,
                bessel_k(0, arg).unwrap() * tls.dipole_length * 0.8,
            );
        assert!((g - gnr).norm() / gnr.norm() < 1e-4);
    }

    #[test]
    fn geometry_rejects_nonpositive_rperp() {
        assert!(CouplingGeometry::new(0.0, 0.0).is_err());
        assert!(CouplingGeometry::new(-1e-9, 0.0).is_err());
    }
}
