//! Screened Coulomb potential of a static unit charge.
//!
//! In k-space `Φ(k) = e / (|k|² ε₀(−|k|²))`. Transforming to r-space and
//! subtracting the bare term analytically leaves
//!
//! ```text
//! Φ(r) = e/(4πε₀ r) · [1 + (2/π) ∫₀^∞ sin(q r)/q · g(q) dq]
//! ```
//!
//! with `g = ΔΠ/(1 − ΔΠ)` (full) or `g = ΔΠ` (linearized). Lengths are in
//! units of the electron reduced Compton wavelength `ħ/(m_e c)` and
//! wavenumbers in `m_e c/ħ`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::{PhysicalConstants, Wavevector, ELECTRON_MASS_GEV, EULER_GAMMA};
use crate::error::{Error, Result};
use crate::polarization::{delta_pi_exact, delta_pi_exact_with, eps0_from_delta_pi, POLE_GUARD};
use crate::quadrature::{sine_transform, OscillatoryOptions, QuadOptions};
use crate::registry::ParticleRegistry;

/// How a sample was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialMethod {
    NumericFull,
    NumericLinearized,
    AsymptoticSmallR,
    AsymptoticLargeR,
}

/// Screening function used in the sine transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ScreeningMode {
    /// `1/(1 − ΔΠ) − 1`
    #[default]
    Full,
    /// `ΔΠ`, first order in the polarizability.
    Linearized,
}

impl std::str::FromStr for ScreeningMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Self::Full),
            "linearized" => Ok(Self::Linearized),
            other => Err(Error::InvalidInput(format!(
                "unknown screening mode `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSample {
    /// `r m_e c/ħ`
    pub r_over_compton: f64,
    /// Volts, for charge `e` at the origin.
    pub phi_coulomb: f64,
    /// `(Φ − Φ_bare)/Φ_bare`
    pub correction: f64,
    pub method: PotentialMethod,
    /// Error estimate on `correction`; zero for closed forms.
    pub abs_error: f64,
    /// The transform hit `q_max` before the accelerated sum settled.
    pub truncated: bool,
}

/// Numerical settings for [`phi_r_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombOptions {
    /// Tolerance for each `ΔΠ` evaluation.
    pub polarization: QuadOptions,
    pub transform: OscillatoryOptions,
    /// Upper wavenumber (units of `m_e c/ħ`); `None` picks `400π/r`.
    pub q_max: Option<f64>,
}

impl Default for CoulombOptions {
    fn default() -> Self {
        Self {
            polarization: QuadOptions {
                abs_tol: 1e-30,
                rel_tol: 1e-13,
                max_intervals: 400,
            },
            transform: OscillatoryOptions {
                abs_tol: 1e-20,
                rel_tol: 1e-10,
                ..OscillatoryOptions::default()
            },
            q_max: None,
        }
    }
}

impl CoulombOptions {
    /// Halves every tolerance.
    pub fn tightened(&self) -> Self {
        let mut out = *self;
        out.polarization.abs_tol *= 0.5;
        out.polarization.rel_tol *= 0.5;
        out.transform.abs_tol *= 0.5;
        out.transform.rel_tol *= 0.5;
        out.transform.cycle.abs_tol *= 0.5;
        out.transform.cycle.rel_tol *= 0.5;
        out
    }
}

fn bare_volts(r_over_compton: f64, consts: &PhysicalConstants) -> f64 {
    let r_m = r_over_compton * consts.electron_compton_m();
    consts.e / (4.0 * PI * consts.eps0 * r_m)
}

fn check_r(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "distance must be positive and finite, got {r}"
        )))
    }
}

/// `Φ(k) = e/(|k|² ε₀(−|k|²))` for a spatial wavenumber in 1/m (V m²).
pub fn phi_k(kmag: f64, reg: &ParticleRegistry, consts: &PhysicalConstants) -> Result<f64> {
    if !(kmag > 0.0) || !kmag.is_finite() {
        return Err(Error::InvalidInput(format!(
            "wavenumber must be positive, got {kmag}"
        )));
    }
    let e_gev = consts.wavenumber_to_gev(kmag);
    let k2 = Wavevector::from_gev2(-e_gev * e_gev)?;
    let eps = eps0_from_delta_pi(delta_pi_exact(k2, reg, consts)?, consts)?;
    Ok(consts.e / (kmag * kmag * eps))
}

/// Screening function `g(q)` at wavenumber `q` in units of `m_e c/ħ`.
fn screening(
    q: f64,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
    mode: ScreeningMode,
    opts: &QuadOptions,
) -> Result<f64> {
    let e = q * ELECTRON_MASS_GEV;
    let dp = delta_pi_exact_with(Wavevector::from_gev2(-e * e)?, reg, consts, opts)?
        .value
        .re;
    Ok(match mode {
        ScreeningMode::Linearized => dp,
        ScreeningMode::Full => {
            let d = 1.0 - dp;
            if d.abs() < POLE_GUARD {
                return Err(Error::LandauPole { distance: d.abs() });
            }
            dp / d
        }
    })
}

/// Screened potential at `r` (units of `ħ/(m_e c)`) with default settings.
pub fn phi_r(
    r_over_compton: f64,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
    mode: ScreeningMode,
) -> Result<PotentialSample> {
    phi_r_with(
        r_over_compton,
        reg,
        consts,
        mode,
        &CoulombOptions::default(),
    )
}

pub fn phi_r_with(
    r_over_compton: f64,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
    mode: ScreeningMode,
    opts: &CoulombOptions,
) -> Result<PotentialSample> {
    let r = r_over_compton;
    check_r(r)?;
    let mut transform = opts.transform;
    transform.q_max = opts.q_max.unwrap_or(400.0 * PI / r);
    // the screening function is analytic up to distance 2 from the real
    // axis; wait until the half periods are smooth on that scale
    transform.min_cycles = transform
        .min_cycles
        .max(transform.levels + 4 + (4.0 * r / PI).ceil() as usize);

    let mut failure: Option<Error> = None;
    let est = sine_transform(
        |q| {
            if q == 0.0 || failure.is_some() {
                return 0.0;
            }
            match screening(q, reg, consts, mode, &opts.polarization) {
                Ok(g) => g / q,
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        r,
        &transform,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let correction = 2.0 / PI * est.value;
    Ok(PotentialSample {
        r_over_compton: r,
        phi_coulomb: bare_volts(r, consts) * (1.0 + correction),
        correction,
        method: match mode {
            ScreeningMode::Full => PotentialMethod::NumericFull,
            ScreeningMode::Linearized => PotentialMethod::NumericLinearized,
        },
        abs_error: 2.0 / PI * est.abs_error,
        truncated: !est.converged,
    })
}

/// Electron-loop correction for `r ≪ ħ/(m_e c)`:
/// `(2α/3π)(ln(ħ/(m_e c r)) − γ − 5/6)`.
pub fn phi_small_r(r_over_compton: f64, consts: &PhysicalConstants) -> Result<PotentialSample> {
    check_r(r_over_compton)?;
    let correction =
        2.0 * consts.alpha / (3.0 * PI) * ((1.0 / r_over_compton).ln() - EULER_GAMMA - 5.0 / 6.0);
    Ok(PotentialSample {
        r_over_compton,
        phi_coulomb: bare_volts(r_over_compton, consts) * (1.0 + correction),
        correction,
        method: PotentialMethod::AsymptoticSmallR,
        abs_error: 0.0,
        truncated: false,
    })
}

/// Electron-loop correction for `r ≫ ħ/(m_e c)`:
/// `(α/(4√π)) e^{−2x}/x^{3/2}` with `x = m_e c r/ħ`.
pub fn phi_large_r(r_over_compton: f64, consts: &PhysicalConstants) -> Result<PotentialSample> {
    check_r(r_over_compton)?;
    let x = r_over_compton;
    let correction = consts.alpha / (4.0 * PI.sqrt()) * (-2.0 * x).exp() / x.powf(1.5);
    Ok(PotentialSample {
        r_over_compton,
        phi_coulomb: bare_volts(r_over_compton, consts) * (1.0 + correction),
        correction,
        method: PotentialMethod::AsymptoticLargeR,
        abs_error: 0.0,
        truncated: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;
    use approx::assert_relative_eq;

    /// Spectral form of the electron-loop correction,
    /// `(2α/3π) ∫₁^∞ e^{−2rt} (1 + 1/(2t²)) √(t²−1)/t² dt`, which follows
    /// from closing the transform around the pair-production cut.
    fn spectral_oracle(r: f64, alpha: f64) -> f64 {
        // t = 1 + u², removes the square-root endpoint
        let f = |u: f64| {
            let t = 1.0 + u * u;
            (-2.0 * r * (t - 1.0)).exp() * (1.0 + 0.5 / (t * t)) * (t * t - 1.0).sqrt() / (t * t)
                * 2.0
                * u
        };
        let upper = (60.0 / r).sqrt().max(1.0) * 2.0;
        let est = integrate(
            f,
            &[0.0, upper * 0.25, upper * 0.5, upper],
            &QuadOptions::new(0.0, 1e-14),
        );
        2.0 * alpha / (3.0 * PI) * (-2.0 * r).exp() * est.value
    }

    #[test]
    fn small_r_zero_crossing() {
        let c = PhysicalConstants::si();
        let r = (-(EULER_GAMMA + 5.0 / 6.0)).exp();
        assert!(phi_small_r(r, &c).unwrap().correction.abs() < 1e-17);
    }

    #[test]
    fn asymptotic_values() {
        let c = PhysicalConstants::si();
        let large = phi_large_r(1.0, &c).unwrap().correction;
        assert_relative_eq!(
            large,
            c.alpha / (4.0 * PI.sqrt()) * (-2.0f64).exp(),
            max_relative = 1e-14
        );
        assert!((large - 1.39e-4).abs() < 0.01e-4);
        let small = phi_small_r(1e-3, &c).unwrap().correction;
        // (2α/3π)(ln 1000 − γ − 5/6), evaluated independently
        assert_relative_eq!(small, 8.512_678_504e-3, max_relative = 1e-8);
    }

    #[test]
    fn bare_limit_in_k_space() {
        let c = PhysicalConstants::si();
        let reg = ParticleRegistry::electron_only();
        let k = 1.0;
        let bare = c.e / (k * k * c.eps0);
        assert_relative_eq!(phi_k(k, &reg, &c).unwrap(), bare, max_relative = 1e-15);
        assert!(phi_k(0.0, &reg, &c).is_err());
    }

    #[test]
    fn linearized_matches_spectral_oracle() {
        let c = PhysicalConstants::si();
        let reg = ParticleRegistry::electron_only();
        for r in [0.01, 0.1, 1.0, 3.0] {
            let s = phi_r(r, &reg, &c, ScreeningMode::Linearized).unwrap();
            let oracle = spectral_oracle(r, c.alpha);
            assert!(!s.truncated, "r = {r}: {s:?}");
            assert_relative_eq!(s.correction, oracle, max_relative = 1e-7);
        }
    }

    #[test]
    fn far_field_is_bare() {
        let c = PhysicalConstants::si();
        let s = phi_r(
            100.0,
            &ParticleRegistry::electron_only(),
            &c,
            ScreeningMode::Linearized,
        )
        .unwrap();
        assert!(s.correction.abs() <= 1e-10, "{s:?}");
    }

    #[test]
    fn rejects_non_positive_r() {
        let c = PhysicalConstants::si();
        let reg = ParticleRegistry::electron_only();
        assert!(phi_r(0.0, &reg, &c, ScreeningMode::Full).is_err());
        assert!(phi_small_r(-1.0, &c).is_err());
        assert!(phi_large_r(f64::NAN, &c).is_err());
    }

    #[test]
    fn tiny_q_max_is_flagged() {
        let c = PhysicalConstants::si();
        let opts = CoulombOptions {
            q_max: Some(50.0),
            ..CoulombOptions::default()
        };
        let s = phi_r_with(
            0.01,
            &ParticleRegistry::electron_only(),
            &c,
            ScreeningMode::Linearized,
            &opts,
        )
        .unwrap();
        assert!(s.truncated);
    }
}
