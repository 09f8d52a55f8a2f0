//! Physical constants, CODATA 2018 recommended values (SI units).
//!
//! | symbol | value                      | unit  |
//! |--------|----------------------------|-------|
//! | e      | 1.602176634e-19            | C     |
//! | h      | 6.62607015e-34             | J s   |
//! | ħ      | 1.0545718176461565e-34     | J s   |
//! | m_e    | 9.1093837015e-31           | kg    |
//! | c      | 299792458                  | m/s   |
//! | ε₀     | 8.8541878128e-12           | F/m   |

/// Elementary charge (C). Exact by SI definition.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Planck constant (J s). Exact by SI definition.
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant ħ = h/2π (J s).
pub const HBAR: f64 = 6.626_070_15e-34 / (2.0 * std::f64::consts::PI);

/// Electron rest mass (kg).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// Speed of light in vacuum (m/s). Exact by SI definition.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Vacuum electric permittivity (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// One electronvolt (J).
pub const EV: f64 = ELEMENTARY_CHARGE;

/// Electron rest energy m_e c² (J).
pub const ELECTRON_REST_ENERGY: f64 = ELECTRON_MASS * SPEED_OF_LIGHT * SPEED_OF_LIGHT;
