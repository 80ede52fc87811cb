//! Physical constants and the invariant `k²` of a photon.
//!
//! All internal arithmetic works in GeV based natural quantities: rest
//! energies `m c²` in GeV and the Lorentz invariant `k²` in GeV² through
//! `ħc`. SI values only appear here and at the output boundary of the
//! Coulomb potential.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant (J s), CODATA 2018 exact.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum (m/s), exact.
pub const C_SI: f64 = 299_792_458.0;
/// Elementary charge (C), exact.
pub const E_SI: f64 = 1.602_176_634e-19;
/// On-shell vacuum permittivity `ε₀ = ε₀(0)` (F/m), CODATA 2018.
pub const EPS0_SI: f64 = 8.854_187_812_8e-12;
/// Electron rest energy (GeV), CODATA 2018.
pub const ELECTRON_MASS_GEV: f64 = 0.510_998_950_00e-3;
/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Frozen table of SI constants with the derived quantities the model needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// J s
    pub hbar: f64,
    /// m/s
    pub c: f64,
    /// C
    pub e: f64,
    /// F/m
    pub eps0: f64,
    /// Fine structure constant `e²/(4π ε₀ ħ c)`.
    pub alpha: f64,
    /// `ħc` in GeV fm.
    pub hbar_c_gev_fm: f64,
}

impl PhysicalConstants {
    /// SI values with the derived fields populated.
    pub fn si() -> Self {
        let (hbar, c, e, eps0) = (HBAR_SI, C_SI, E_SI, EPS0_SI);
        Self {
            hbar,
            c,
            e,
            eps0,
            alpha: fine_structure(e, eps0, hbar, c),
            hbar_c_gev_fm: hbar * c / (e * 1e9) * 1e15,
        }
    }

    /// `μ₀ = 1/(ε₀ c²)` (H/m).
    pub fn mu0(&self) -> f64 {
        1.0 / (self.eps0 * self.c * self.c)
    }

    /// `ħc` in GeV m.
    pub fn hbar_c_gev_m(&self) -> f64 {
        self.hbar_c_gev_fm * 1e-15
    }

    /// Reduced Compton wavelength of the electron `ħ/(m_e c)` in metres.
    pub fn electron_compton_m(&self) -> f64 {
        self.hbar_c_gev_m() / ELECTRON_MASS_GEV
    }

    /// Converts a spatial wavenumber (1/m) into an energy `ħc|k|` in GeV.
    pub fn wavenumber_to_gev(&self, k_per_m: f64) -> f64 {
        k_per_m * self.hbar_c_gev_m()
    }

    /// Converts an invariant `k²` in m⁻² into GeV².
    pub fn k2_si_to_gev2(&self, k2_per_m2: f64) -> f64 {
        let hc = self.hbar_c_gev_m();
        k2_per_m2 * hc * hc
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::si()
    }
}

/// Same as [`PhysicalConstants::si`].
pub fn make_si_constants() -> PhysicalConstants {
    PhysicalConstants::si()
}

/// `α = e²/(4π ε₀ ħ c)`.
pub fn fine_structure(e: f64, eps0: f64, hbar: f64, c: f64) -> f64 {
    e * e / (4.0 * std::f64::consts::PI * eps0 * hbar * c)
}

/// Kinematic regime of a virtual photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `k² < 0`, e.g. static Coulomb exchange.
    Spacelike,
    /// `k² = 0`, a free photon.
    OnShell,
    /// `k² > 0`, pair-creation kinematics.
    Timelike,
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spacelike" => Ok(Self::Spacelike),
            "on_shell" | "on-shell" | "onshell" => Ok(Self::OnShell),
            "timelike" => Ok(Self::Timelike),
            other => Err(Error::InvalidInput(format!("unknown regime `{other}`"))),
        }
    }
}

/// Lorentz invariant `k² = ω²/c² − |k|²`, stored as `sign(k²)(ħc√|k²|)²` in GeV².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wavevector {
    k2_gev2: f64,
}

impl Wavevector {
    pub fn from_gev2(k2_gev2: f64) -> Result<Self> {
        if !k2_gev2.is_finite() {
            return Err(Error::InvalidInput(format!(
                "k² must be finite, got {k2_gev2}"
            )));
        }
        Ok(Self { k2_gev2 })
    }

    pub fn on_shell() -> Self {
        Self { k2_gev2: 0.0 }
    }

    /// Builds the invariant from `ω` (rad/s) and a spatial wavevector (1/m).
    pub fn from_si(omega: f64, k_vec: [f64; 3], consts: &PhysicalConstants) -> Result<Self> {
        let spatial: f64 = k_vec.iter().map(|k| k * k).sum();
        let temporal = (omega / consts.c).powi(2);
        Self::from_gev2(consts.k2_si_to_gev2(temporal - spatial))
    }

    pub fn k2_gev2(&self) -> f64 {
        self.k2_gev2
    }

    /// `ħc√|k²|` in GeV.
    pub fn energy_gev(&self) -> f64 {
        self.k2_gev2.abs().sqrt()
    }

    pub fn regime(&self) -> Regime {
        if self.k2_gev2 < 0.0 {
            Regime::Spacelike
        } else if self.k2_gev2 > 0.0 {
            Regime::Timelike
        } else {
            Regime::OnShell
        }
    }
}

/// Invariant `k²` for an energy scale `Q` (GeV) in the requested regime.
pub fn k2_from_energy(q_gev: f64, regime: Regime) -> Result<Wavevector> {
    if !(q_gev >= 0.0) || !q_gev.is_finite() {
        return Err(Error::InvalidInput(format!(
            "energy scale must be finite and non-negative, got {q_gev}"
        )));
    }
    let q2 = q_gev * q_gev;
    let k2 = match regime {
        Regime::Spacelike => -q2,
        Regime::Timelike => q2,
        Regime::OnShell => 0.0,
    };
    Wavevector::from_gev2(k2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn alpha_matches_inverse_137() {
        let c = make_si_constants();
        assert_relative_eq!(1.0 / c.alpha, 137.035_999, max_relative = 1e-8);
        // recomputing from the stored fields reproduces the derived value bit for bit
        assert_eq!(c.alpha, fine_structure(c.e, c.eps0, c.hbar, c.c));
    }

    #[test]
    fn mu0_closes_light_speed() {
        let c = make_si_constants();
        assert_relative_eq!(c.eps0 * c.mu0() * c.c * c.c, 1.0, max_relative = 1e-15);
    }

    #[test]
    fn hbar_c() {
        let c = make_si_constants();
        assert_relative_eq!(c.hbar_c_gev_fm, 0.197_326_980_4, max_relative = 1e-9);
    }

    #[test]
    fn energy_to_k2() {
        assert_eq!(
            k2_from_energy(1.0, Regime::Spacelike).unwrap().k2_gev2(),
            -1.0
        );
        assert_eq!(k2_from_energy(0.0, Regime::OnShell).unwrap().k2_gev2(), 0.0);
        assert_eq!(
            k2_from_energy(0.25, Regime::Timelike).unwrap().k2_gev2(),
            0.0625
        );
        assert!(k2_from_energy(-1.0, Regime::Spacelike).is_err());
        assert!(k2_from_energy(f64::NAN, Regime::Spacelike).is_err());
    }

    #[test]
    fn regime_follows_sign() {
        assert_eq!(
            Wavevector::from_gev2(-2.0).unwrap().regime(),
            Regime::Spacelike
        );
        assert_eq!(
            Wavevector::from_gev2(0.0).unwrap().regime(),
            Regime::OnShell
        );
        assert_eq!(
            Wavevector::from_gev2(3.0).unwrap().regime(),
            Regime::Timelike
        );
    }

    #[test]
    fn si_wavevector_on_shell() {
        let c = make_si_constants();
        let k = 1e7;
        let w = Wavevector::from_si(k * c.c, [0.0, 0.0, k], &c).unwrap();
        assert!(w.k2_gev2().abs() < 1e-30);
    }

    proptest! {
        #[test]
        fn energy_round_trip(q in 0.0f64..1e20, timelike in any::<bool>()) {
            let regime = if timelike { Regime::Timelike } else { Regime::Spacelike };
            let w = k2_from_energy(q, regime).unwrap();
            let back = w.energy_gev();
            prop_assert!((back - q).abs() <= 1e-12 * q.max(f64::MIN_POSITIVE));
        }
    }
}
