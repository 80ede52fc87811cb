//! Landau pole of the one-loop coupling and the semiclassical geometric factor.
//!
//! With the on-shell polarizability cut off at `Λ`,
//! `Π₂(0) = (α/3π) Σq² ln(Λ²/m̄²)`. The pole is where this reaches one:
//! `ħcΛ_L = m̄c² exp(3π / (2α Σq²))`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::{PhysicalConstants, Wavevector};
use crate::error::{Error, Result};
use crate::polarization::{delta_pi_asymptotic, pi2_zero};
use crate::registry::ParticleRegistry;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LandauResult {
    /// `ħcΛ_L` in GeV.
    pub lambda_l_gev: f64,
    pub f_factor: f64,
    /// `m̄c²` in GeV.
    pub mean_mass_gev: f64,
    pub charge_sum: f64,
    /// `f·4πα·Σq²`; one by construction.
    pub closure: f64,
}

/// Closed-form pole of the lumped, A-free form.
pub fn solve_landau_pole(
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
) -> Result<LandauResult> {
    let charge_sum = reg.effective_charge_sum();
    let mean_mass_gev = reg.mean_mass_gev();
    if !(charge_sum > 0.0) || !(mean_mass_gev > 0.0) {
        return Err(Error::InvalidRegistry(
            "Landau pole needs Σq² > 0 and m̄ > 0".to_owned(),
        ));
    }
    let log_ratio = 3.0 * PI / (2.0 * consts.alpha * charge_sum);
    let lambda_l_gev = mean_mass_gev * log_ratio.exp();
    if !lambda_l_gev.is_finite() {
        return Err(Error::InvalidInput(format!(
            "Landau pole overflows: ln(Λ_L/m̄) = {log_ratio}"
        )));
    }
    let mut res = LandauResult {
        lambda_l_gev,
        f_factor: 0.0,
        mean_mass_gev,
        charge_sum,
        closure: 0.0,
    };
    res.f_factor = geometric_factor(&res);
    res.closure = semiclassical_closure(&res, consts);
    Ok(res)
}

/// `f = ln(Λ_L²/m̄²)/(12π²)`.
pub fn geometric_factor(res: &LandauResult) -> f64 {
    (res.lambda_l_gev / res.mean_mass_gev).ln() * 2.0 / (12.0 * PI * PI)
}

/// `f·4πα·Σq²/e²`; the semiclassical sum rule demands one.
pub fn semiclassical_closure(res: &LandauResult, consts: &PhysicalConstants) -> f64 {
    geometric_factor(res) * 4.0 * PI * consts.alpha * res.charge_sum
}

/// Which equation the bisection fallback drives to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleCondition {
    /// `Π₂(0)` with cutoff `Λ`, no `A` factor.
    CutoffPolarizability,
    /// The large-`|k²|` log form of `ΔΠ(−Λ²)`, which carries `A`.
    AsymptoticDeltaPi,
}

/// Bisection in `ln Λ` for registries with per-species masses.
pub fn solve_landau_pole_bisection(
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
    condition: PoleCondition,
) -> Result<f64> {
    let residual = |ln_lambda: f64| -> Result<f64> {
        let lambda = ln_lambda.exp();
        let v = match condition {
            PoleCondition::CutoffPolarizability => pi2_zero(lambda, reg, consts, false)?,
            PoleCondition::AsymptoticDeltaPi => {
                delta_pi_asymptotic(Wavevector::from_gev2(-lambda * lambda)?, reg, consts)?
            }
        };
        Ok(v - 1.0)
    };
    let mut lo = (reg.max_mass_gev() * 4.0).ln();
    let mut hi = lo + 10.0;
    if residual(lo)? >= 0.0 {
        return Err(Error::InvalidInput(
            "pole lies below the heaviest mass".to_owned(),
        ));
    }
    while residual(hi)? < 0.0 {
        hi += 10.0;
        if hi > 700.0 {
            return Err(Error::InvalidInput(
                "no Landau pole below exp(700) GeV".to_owned(),
            ));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if residual(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi.abs() {
            break;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarization::log_form_a;
    use crate::registry::{preset, Preset};
    use approx::assert_relative_eq;

    #[test]
    fn sm_paper_preset_near_1e30() {
        let c = PhysicalConstants::si();
        let res = solve_landau_pole(&preset(Preset::SmPaper), &c).unwrap();
        assert!(
            res.lambda_l_gev > 1e29 && res.lambda_l_gev < 1e31,
            "{}",
            res.lambda_l_gev
        );
        // one-line evaluation 0.25·exp(3π/(18α))
        let oracle = 0.25 * (3.0 * PI / (18.0 * c.alpha)).exp();
        assert_relative_eq!(res.lambda_l_gev, oracle, max_relative = 1e-13);
        // the exponent amplifies the last digits of 1/α by ~72
        let codata = 0.25 * (3.0 * PI / 18.0 * 137.035_999_084f64).exp();
        assert_relative_eq!(res.lambda_l_gev, codata, max_relative = 1e-6);
        assert_relative_eq!(res.closure, 1.0, max_relative = 1e-9);
        assert!((res.f_factor - 1.2116).abs() < 1e-3, "f = {}", res.f_factor);
        let round_trip = pi2_zero(res.lambda_l_gev, &preset(Preset::SmPaper), &c, false).unwrap();
        assert_relative_eq!(round_trip, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn susy_halves_the_log() {
        let c = PhysicalConstants::si();
        let sm = solve_landau_pole(&preset(Preset::SmPaper), &c).unwrap();
        let susy = solve_landau_pole(&preset(Preset::SusyDoubled), &c).unwrap();
        let ratio = (susy.lambda_l_gev / 0.25).ln() / (sm.lambda_l_gev / 0.25).ln();
        assert_relative_eq!(ratio, 0.5, max_relative = 1e-12);
        assert_relative_eq!(susy.f_factor, 0.5 * sm.f_factor, max_relative = 1e-12);
        assert!(susy.lambda_l_gev > 1e14 && susy.lambda_l_gev < 1e21);
    }

    #[test]
    fn monotone_in_inputs() {
        let c = PhysicalConstants::si();
        let reg = |sum: f64, m: f64| ParticleRegistry::new(vec![], Some(sum), Some(m)).unwrap();
        let mut last = f64::INFINITY;
        for sum in [4.0, 6.0, 9.0, 12.0, 18.0] {
            let l = solve_landau_pole(&reg(sum, 0.25), &c).unwrap().lambda_l_gev;
            assert!(l < last);
            last = l;
        }
        let mut last = 0.0;
        for m in [0.01, 0.1, 0.25, 1.0] {
            let l = solve_landau_pole(&reg(9.0, m), &c).unwrap().lambda_l_gev;
            assert!(l > last);
            last = l;
        }
    }

    #[test]
    fn bisection_agrees_with_closed_form() {
        let c = PhysicalConstants::si();
        let reg = preset(Preset::SmFermions);
        let closed = solve_landau_pole(&reg, &c).unwrap().lambda_l_gev;
        let bis =
            solve_landau_pole_bisection(&reg, &c, PoleCondition::CutoffPolarizability).unwrap();
        assert_relative_eq!(bis, closed, max_relative = 1e-10);
        // the log form with A pushes the pole up by √A
        let with_a =
            solve_landau_pole_bisection(&reg, &c, PoleCondition::AsymptoticDeltaPi).unwrap();
        assert_relative_eq!(with_a / closed, log_form_a().sqrt(), max_relative = 1e-10);
    }
}
