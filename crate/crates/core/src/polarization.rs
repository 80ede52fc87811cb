//! One-loop vacuum polarizability and the quantities that run with it:
//! permittivity, permeability, effective coupling and the dressed photon
//! propagator.
//!
//! `ΔΠ(k²) = (2α/π) Σ_j w_j ∫₀¹ x(1−x) ln[1 − s_j x(1−x)] dx` with
//! `s_j = k²/m_j²` (GeV units) and `w_j = mult_j (q_j/e)²`. Spacelike `k²`
//! gives `ΔΠ > 0`. Above threshold (`s > 4`) the log argument turns
//! negative on an interval; the branch inherited from `k² + iη` gives
//! `Im ln(−|a|) = −π`, hence `Im ΔΠ ≤ 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{PhysicalConstants, Wavevector};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::registry::{MassTerm, ParticleRegistry};

/// `A = exp(5/3)` in the large-`|k²|` log form.
pub fn log_form_a() -> f64 {
    (5.0f64 / 3.0).exp()
}

/// `|1 − ΔΠ|` below which the coupling is treated as divergent.
pub const POLE_GUARD: f64 = 1e-9;

/// Exact or large-`|k²|` evaluation of `ΔΠ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PolarizationMode {
    #[default]
    Exact,
    Asymptotic,
}

impl std::str::FromStr for PolarizationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "asymptotic" => Ok(Self::Asymptotic),
            other => Err(Error::InvalidInput(format!(
                "unknown polarization mode `{other}`"
            ))),
        }
    }
}

/// Complex value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEstimate {
    pub value: Complex64,
    pub abs_error: f64,
}

/// Roots of `1 − s x(1−x)` inside `(0, 1/2]`, present only above threshold.
fn lower_root(s: f64) -> Option<f64> {
    if s >= 4.0 {
        let disc = (1.0 - 4.0 / s).max(0.0).sqrt();
        Some((2.0 / s) / (1.0 + disc))
    } else {
        None
    }
}

/// `x(1−x) ln[1 − s x(1−x)]` for `s < 4`, written so that no cancellation
/// occurs close to threshold: `1 − s x(1−x) = 1 − s/4 + s(x − ½)²`.
fn below_threshold_integrand(s: f64, x: f64) -> f64 {
    let u = x * (1.0 - x);
    let log = if s <= 2.0 {
        (-s * u).ln_1p()
    } else {
        let d = x - 0.5;
        (1.0 - 0.25 * s + s * d * d).ln()
    };
    u * log
}

/// Real part for `s ≥ 4` using the factorised argument `s(x − x₁)(x − x₂)`.
fn above_threshold_integrand(s: f64, x1: f64, x: f64) -> f64 {
    let u = x * (1.0 - x);
    let a = (s * (x - x1) * (x - (1.0 - x1))).abs();
    if a > 0.0 {
        u * a.ln()
    } else {
        0.0
    }
}

/// `J(s) = ∫₀¹ x(1−x) ln[1 − s x(1−x)] dx` for a single loop, with the
/// quadrature error estimate. Uses the symmetry `x ↔ 1−x`.
pub fn loop_integral(s: f64, opts: &QuadOptions) -> Result<ComplexEstimate> {
    if !s.is_finite() {
        return Err(Error::InvalidInput(format!(
            "loop argument must be finite, got {s}"
        )));
    }
    if s == 0.0 {
        return Ok(ComplexEstimate {
            value: Complex64::new(0.0, 0.0),
            abs_error: 0.0,
        });
    }
    let half_opts = QuadOptions {
        abs_tol: 0.25 * opts.abs_tol,
        rel_tol: opts.rel_tol,
        max_intervals: opts.max_intervals,
    };
    let (re, im) = match lower_root(s) {
        None => {
            let re = integrate(|x| below_threshold_integrand(s, x), &[0.0, 0.5], &half_opts)
                .require(&half_opts)?;
            (re, None)
        }
        Some(x1) => {
            let re = integrate(
                |x| above_threshold_integrand(s, x1, x),
                &[0.0, x1, 0.5],
                &half_opts,
            )
            .require(&half_opts)?;
            let im =
                integrate(|x| -PI * x * (1.0 - x), &[x1, 0.5], &half_opts).require(&half_opts)?;
            (re, Some(im))
        }
    };
    let im_value = im.map_or(0.0, |e| e.value);
    let im_err = im.map_or(0.0, |e| e.abs_error);
    Ok(ComplexEstimate {
        value: Complex64::new(2.0 * re.value, 2.0 * im_value),
        abs_error: 2.0 * (re.abs_error + im_err),
    })
}

fn prefactor(consts: &PhysicalConstants) -> f64 {
    2.0 * consts.alpha / PI
}

/// `ΔΠ` contributed by one mass term.
pub fn delta_pi_term(
    k2: Wavevector,
    term: MassTerm,
    consts: &PhysicalConstants,
    opts: &QuadOptions,
) -> Result<ComplexEstimate> {
    let s = k2.k2_gev2() / (term.mass_gev * term.mass_gev);
    let scale = prefactor(consts) * term.weight;
    let inner = QuadOptions {
        abs_tol: opts.abs_tol / scale,
        ..*opts
    };
    let j = loop_integral(s, &inner)?;
    Ok(ComplexEstimate {
        value: j.value * scale,
        abs_error: j.abs_error * scale,
    })
}

/// Exact one-loop `ΔΠ(k²)` with its quadrature error estimate.
pub fn delta_pi_exact_with(
    k2: Wavevector,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
    opts: &QuadOptions,
) -> Result<ComplexEstimate> {
    let terms = reg.mass_terms();
    let per_term = QuadOptions {
        abs_tol: opts.abs_tol / terms.len() as f64,
        ..*opts
    };
    let mut value = Complex64::new(0.0, 0.0);
    let mut abs_error = 0.0;
    for term in terms {
        let t = delta_pi_term(k2, term, consts, &per_term)?;
        value += t.value;
        abs_error += t.abs_error;
    }
    Ok(ComplexEstimate { value, abs_error })
}

/// Exact one-loop `ΔΠ(k²)` at the default tolerance (absolute 1e-12).
pub fn delta_pi_exact(
    k2: Wavevector,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
) -> Result<Complex64> {
    Ok(delta_pi_exact_with(k2, reg, consts, &QuadOptions::default())?.value)
}

/// Large-`|k²|` log form `(α/3π) Σ w_j ln(|k²|/(A m_j²))`.
pub fn delta_pi_asymptotic(
    k2: Wavevector,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
) -> Result<f64> {
    let k2 = k2.k2_gev2().abs();
    if k2 == 0.0 {
        return Err(Error::InvalidInput(
            "log form of ΔΠ diverges at k² = 0".to_owned(),
        ));
    }
    let a = log_form_a();
    Ok(consts.alpha / (3.0 * PI)
        * reg
            .mass_terms()
            .iter()
            .map(|t| t.weight * (k2 / (a * t.mass_gev * t.mass_gev)).ln())
            .sum::<f64>())
}

/// `ΔΠ` in the requested mode.
pub fn delta_pi(
    k2: Wavevector,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
    mode: PolarizationMode,
) -> Result<Complex64> {
    match mode {
        PolarizationMode::Exact => delta_pi_exact(k2, reg, consts),
        PolarizationMode::Asymptotic => {
            Ok(Complex64::new(delta_pi_asymptotic(k2, reg, consts)?, 0.0))
        }
    }
}

/// On-shell polarizability `Π₂(0)` with a hard cutoff `Λ` (GeV).
///
/// With `include_a` every term is `ln(Λ²/(A m_j²))` with its own mass;
/// without it the lumped form `Σq² ln(Λ²/m̄²)` is used.
pub fn pi2_zero(
    cutoff_gev: f64,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
    include_a: bool,
) -> Result<f64> {
    if !(cutoff_gev > reg.max_mass_gev()) || !cutoff_gev.is_finite() {
        return Err(Error::InvalidInput(format!(
            "cutoff {cutoff_gev} GeV must exceed the largest mass scale {} GeV",
            reg.max_mass_gev()
        )));
    }
    let l2 = cutoff_gev * cutoff_gev;
    let sum = if include_a {
        let a = log_form_a();
        reg.mass_terms()
            .iter()
            .map(|t| t.weight * (l2 / (a * t.mass_gev * t.mass_gev)).ln())
            .sum::<f64>()
    } else {
        let m = reg.mean_mass_gev();
        reg.effective_charge_sum() * (l2 / (m * m)).ln()
    };
    Ok(consts.alpha / (3.0 * PI) * sum)
}

fn guard_pole(delta_pi: Complex64) -> Result<()> {
    let distance = (Complex64::new(1.0, 0.0) - delta_pi).norm();
    if distance < POLE_GUARD {
        Err(Error::LandauPole { distance })
    } else {
        Ok(())
    }
}

/// `ε₀(1 − Re ΔΠ)` (F/m).
pub fn eps0_from_delta_pi(delta_pi: Complex64, consts: &PhysicalConstants) -> Result<f64> {
    guard_pole(delta_pi)?;
    Ok(consts.eps0 * (1.0 - delta_pi.re))
}

/// `1/(c² ε₀(k²))` (H/m).
pub fn mu0_from_delta_pi(delta_pi: Complex64, consts: &PhysicalConstants) -> Result<f64> {
    let eps = eps0_from_delta_pi(delta_pi, consts)?;
    Ok(1.0 / (consts.c * consts.c * eps))
}

/// `α/(1 − ΔΠ)`.
pub fn alpha_eff_from_delta_pi(
    delta_pi: Complex64,
    consts: &PhysicalConstants,
) -> Result<Complex64> {
    guard_pole(delta_pi)?;
    Ok(consts.alpha / (Complex64::new(1.0, 0.0) - delta_pi))
}

pub fn eps0_of_k2(
    k2: Wavevector,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
) -> Result<f64> {
    eps0_from_delta_pi(delta_pi_exact(k2, reg, consts)?, consts)
}

pub fn mu0_of_k2(
    k2: Wavevector,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
) -> Result<f64> {
    mu0_from_delta_pi(delta_pi_exact(k2, reg, consts)?, consts)
}

pub fn alpha_eff(
    k2: Wavevector,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
) -> Result<Complex64> {
    alpha_eff_from_delta_pi(delta_pi_exact(k2, reg, consts)?, consts)
}

/// Everything that runs with `k²`, evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationResult {
    pub k2: Wavevector,
    pub delta_pi: Complex64,
    /// F/m
    pub eps0_of_k2: f64,
    /// H/m
    pub mu0_of_k2: f64,
    pub alpha_eff: Complex64,
    /// `Z₃ = 1 − Π₂(0)` for the cutoff passed to [`evaluate`].
    pub z3_at_cutoff: Option<f64>,
}

/// Evaluates [`PolarizationResult`]; `cutoff_gev` populates `Z₃` (lumped, A-free form).
pub fn evaluate(
    k2: Wavevector,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
    mode: PolarizationMode,
    cutoff_gev: Option<f64>,
) -> Result<PolarizationResult> {
    let dp = delta_pi(k2, reg, consts, mode)?;
    let z3_at_cutoff = cutoff_gev
        .map(|l| pi2_zero(l, reg, consts, false).map(|p| 1.0 - p))
        .transpose()?;
    Ok(PolarizationResult {
        k2,
        delta_pi: dp,
        eps0_of_k2: eps0_from_delta_pi(dp, consts)?,
        mu0_of_k2: mu0_from_delta_pi(dp, consts)?,
        alpha_eff: alpha_eff_from_delta_pi(dp, consts)?,
        z3_at_cutoff,
    })
}

/// Diagonal part of the dressed propagator, multiplying `−g^{μν}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorValue {
    pub k2: Wavevector,
    pub eta: f64,
    /// `1/(ε₀(k²)(k² + iη))` in (F/m)⁻¹ GeV⁻²; the tensor is `−diagonal·g^{μν}`.
    pub diagonal: Complex64,
}

fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "η must be a small positive number, got {eta}"
        )))
    }
}

/// Closed form `1/(ε₀(1 − ΔΠ)(k² + iη))` for a given `ΔΠ`.
pub fn propagator_from_delta_pi(
    k2: Wavevector,
    eta: f64,
    delta_pi: Complex64,
    consts: &PhysicalConstants,
) -> Result<PropagatorValue> {
    check_eta(eta)?;
    guard_pole(delta_pi)?;
    let eps = consts.eps0 * (Complex64::new(1.0, 0.0) - delta_pi);
    let denom = eps * Complex64::new(k2.k2_gev2(), eta);
    Ok(PropagatorValue {
        k2,
        eta,
        diagonal: denom.inv(),
    })
}

/// Partial sum `1/(ε₀(k² + iη)) Σ_{n=0}^{N} ΔΠⁿ` of the chain of loop insertions.
pub fn propagator_series_from_delta_pi(
    k2: Wavevector,
    eta: f64,
    n_terms: usize,
    delta_pi: Complex64,
    consts: &PhysicalConstants,
) -> Result<Complex64> {
    check_eta(eta)?;
    let magnitude = delta_pi.norm();
    if magnitude >= 1.0 {
        return Err(Error::SeriesDivergence { magnitude });
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for _ in 0..=n_terms {
        sum += power;
        power *= delta_pi;
    }
    Ok(sum / (consts.eps0 * Complex64::new(k2.k2_gev2(), eta)))
}

pub fn propagator(
    k2: Wavevector,
    eta: f64,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
) -> Result<PropagatorValue> {
    check_eta(eta)?;
    propagator_from_delta_pi(k2, eta, delta_pi_exact(k2, reg, consts)?, consts)
}

pub fn propagator_series(
    k2: Wavevector,
    eta: f64,
    n_terms: usize,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
) -> Result<Complex64> {
    check_eta(eta)?;
    propagator_series_from_delta_pi(k2, eta, n_terms, delta_pi_exact(k2, reg, consts)?, consts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{k2_from_energy, Regime, ELECTRON_MASS_GEV};
    use crate::registry::{preset, ChargedSpecies, Preset};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn consts() -> PhysicalConstants {
        PhysicalConstants::si()
    }

    /// Composite Simpson over `[0, 1]` with `n` panels, splitting the range
    /// at the roots of the log argument when they exist.
    fn simpson_oracle(s: f64, n: usize) -> (f64, f64) {
        let f = |x: f64| {
            let u = x * (1.0 - x);
            let a = 1.0 - s * u;
            if a == 0.0 {
                0.0
            } else {
                u * a.abs().ln()
            }
        };
        let simpson = |a: f64, b: f64, n: usize| {
            let n = n + n % 2;
            let h = (b - a) / n as f64;
            let mut acc = f(a) + f(b);
            for i in 1..n {
                acc += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            acc * h / 3.0
        };
        if s > 4.0 {
            let d = (1.0 - 4.0 / s).sqrt();
            let (x1, x2) = (0.5 * (1.0 - d), 0.5 * (1.0 + d));
            let re = simpson(0.0, x1, n / 3) + simpson(x1, x2, n / 3) + simpson(x2, 1.0, n / 3);
            // ∫_{x1}^{x2} x(1−x) dx
            let poly = |x: f64| x * x / 2.0 - x * x * x / 3.0;
            (re, -PI * (poly(x2) - poly(x1)))
        } else {
            (simpson(0.0, 1.0, n), 0.0)
        }
    }

    #[test]
    fn zero_on_shell() {
        let dp =
            delta_pi_exact(Wavevector::on_shell(), &preset(Preset::SmPaper), &consts()).unwrap();
        assert_eq!(dp, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn spacelike_matches_simpson() {
        let c = consts();
        let reg = ParticleRegistry::electron_only();
        let k2 = k2_from_energy(10.0 * ELECTRON_MASS_GEV, Regime::Spacelike).unwrap();
        let dp = delta_pi_exact(k2, &reg, &c).unwrap();
        let (j, _) = simpson_oracle(-100.0, 1_000_000);
        let oracle = 2.0 * c.alpha / PI * j;
        assert!(dp.re > 0.0);
        assert_eq!(dp.im, 0.0);
        assert_relative_eq!(dp.re, oracle, max_relative = 1e-8);
    }

    #[test]
    fn timelike_above_threshold() {
        let c = consts();
        let reg = ParticleRegistry::electron_only();
        let k2 = k2_from_energy(3.0 * ELECTRON_MASS_GEV, Regime::Timelike).unwrap();
        let est = delta_pi_exact_with(k2, &reg, &c, &QuadOptions::default()).unwrap();
        let (re, im) = simpson_oracle(9.0, 3_000_000);
        let pref = 2.0 * c.alpha / PI;
        assert!(est.value.im < 0.0);
        assert_relative_eq!(est.value.im, pref * im, max_relative = 1e-12);
        assert!((est.value.re - pref * re).abs() < 1e-9);
        assert!(est.abs_error <= 1e-8);
    }

    #[test]
    fn below_threshold_is_real() {
        let c = consts();
        let k2 = Wavevector::from_gev2(2.0 * ELECTRON_MASS_GEV * ELECTRON_MASS_GEV).unwrap();
        let dp = delta_pi_exact(k2, &ParticleRegistry::electron_only(), &c).unwrap();
        assert_eq!(dp.im, 0.0);
        assert!(dp.re < 0.0);
        // exactly at threshold the argument is a perfect square
        let k2 = Wavevector::from_gev2(4.0 * ELECTRON_MASS_GEV * ELECTRON_MASS_GEV).unwrap();
        assert_eq!(
            delta_pi_exact(k2, &ParticleRegistry::electron_only(), &c)
                .unwrap()
                .im,
            0.0
        );
    }

    #[test]
    fn asymptotic_vanishes_at_a_m2() {
        let c = consts();
        let k2 =
            Wavevector::from_gev2(-log_form_a() * ELECTRON_MASS_GEV * ELECTRON_MASS_GEV).unwrap();
        assert!(
            delta_pi_asymptotic(k2, &ParticleRegistry::electron_only(), &c)
                .unwrap()
                .abs()
                < 1e-15
        );
        assert!(delta_pi_asymptotic(
            Wavevector::on_shell(),
            &ParticleRegistry::electron_only(),
            &c
        )
        .is_err());
    }

    #[test]
    fn asymptotic_close_to_exact_at_large_ratio() {
        let c = consts();
        let reg = ParticleRegistry::electron_only();
        let k2 = Wavevector::from_gev2(-1e6 * ELECTRON_MASS_GEV * ELECTRON_MASS_GEV).unwrap();
        let exact = delta_pi_exact(k2, &reg, &c).unwrap().re;
        let asym = delta_pi_asymptotic(k2, &reg, &c).unwrap();
        assert!(((asym - exact) / exact).abs() < 0.01);
    }

    #[test]
    fn lumped_asymptotic_is_nine_units() {
        let c = consts();
        let paper = preset(Preset::SmPaper);
        let unit =
            ParticleRegistry::new(vec![ChargedSpecies::new("unit", 1.0, 0.25, 1)], None, None)
                .unwrap();
        let k2 = Wavevector::from_gev2(-1e6 * 0.0625).unwrap();
        assert_relative_eq!(
            delta_pi_asymptotic(k2, &paper, &c).unwrap(),
            9.0 * delta_pi_asymptotic(k2, &unit, &c).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn pi2_zero_values() {
        let c = consts();
        let paper = preset(Preset::SmPaper);
        let at_pole = pi2_zero(1e30, &paper, &c, false).unwrap();
        assert!((at_pole - 1.0).abs() < 0.05, "{at_pole}");
        // closed form (α/3π)·9·ln(10³⁰/0.0625)
        let expected = c.alpha / (3.0 * PI) * 9.0 * (1e30f64 / 0.0625).ln();
        assert_relative_eq!(
            pi2_zero(1e15, &paper, &c, false).unwrap(),
            expected,
            max_relative = 1e-14
        );
        assert_relative_eq!(expected, 0.500_684_721_968, max_relative = 1e-9);
        let e = ParticleRegistry::electron_only();
        let lam = log_form_a().sqrt() * ELECTRON_MASS_GEV;
        assert!(pi2_zero(lam, &e, &c, true).unwrap().abs() < 1e-15);
        assert!(pi2_zero(1e-4, &e, &c, true).is_err());
    }

    #[test]
    fn running_quantities_at_zero() {
        let c = consts();
        let reg = preset(Preset::SmFermions);
        let r = evaluate(
            Wavevector::on_shell(),
            &reg,
            &c,
            PolarizationMode::Exact,
            Some(1e19),
        )
        .unwrap();
        assert_eq!(r.eps0_of_k2, c.eps0);
        assert_eq!(r.alpha_eff, Complex64::new(c.alpha, 0.0));
        assert_relative_eq!(r.mu0_of_k2, c.mu0(), max_relative = 1e-15);
        assert!(r.z3_at_cutoff.unwrap() < 1.0);
    }

    #[test]
    fn synthetic_alpha_eff() {
        let c = consts();
        let a = alpha_eff_from_delta_pi(Complex64::new(0.5, 0.0), &c).unwrap();
        assert_relative_eq!(a.re, 2.0 * c.alpha, max_relative = 1e-15);
        assert!(matches!(
            alpha_eff_from_delta_pi(Complex64::new(1.0, 0.0), &c),
            Err(Error::LandauPole { .. })
        ));
        assert!(matches!(
            eps0_from_delta_pi(Complex64::new(1.0 - 1e-12, 0.0), &c),
            Err(Error::LandauPole { .. })
        ));
    }

    #[test]
    fn alpha_eff_at_z_scale_electron_loop() {
        let c = consts();
        let reg = ParticleRegistry::electron_only();
        let k2 = k2_from_energy(91.1876, Regime::Spacelike).unwrap();
        let s = k2.k2_gev2() / (ELECTRON_MASS_GEV * ELECTRON_MASS_GEV);
        let (j, _) = simpson_oracle(s, 2_000_000);
        let dp_oracle = 2.0 * c.alpha / PI * j;
        let ratio = alpha_eff(k2, &reg, &c).unwrap().re / c.alpha;
        assert_relative_eq!(ratio, 1.0 / (1.0 - dp_oracle), max_relative = 1e-9);
    }

    #[test]
    fn series_matches_closed_form() {
        let c = consts();
        let k2 = Wavevector::from_gev2(-2.0).unwrap();
        let dp = Complex64::new(0.3, 0.0);
        let closed = propagator_from_delta_pi(k2, 1e-12, dp, &c)
            .unwrap()
            .diagonal;
        let partial = propagator_series_from_delta_pi(k2, 1e-12, 40, dp, &c).unwrap();
        assert!((partial - closed).norm() / closed.norm() <= 1e-6);
        let zero = Complex64::new(0.0, 0.0);
        for n in [0, 1, 7] {
            let a = propagator_series_from_delta_pi(k2, 1e-9, n, zero, &c).unwrap();
            let b = propagator_from_delta_pi(k2, 1e-9, zero, &c)
                .unwrap()
                .diagonal;
            assert_relative_eq!(a.re, b.re, max_relative = 1e-15);
        }
        assert!(matches!(
            propagator_series_from_delta_pi(k2, 1e-9, 5, Complex64::new(1.0, 0.0), &c),
            Err(Error::SeriesDivergence { .. })
        ));
        assert!(propagator_from_delta_pi(k2, 0.0, zero, &c).is_err());
    }

    #[test]
    fn spacelike_propagator_real_in_eta_limit() {
        let c = consts();
        let reg = ParticleRegistry::electron_only();
        let k2 = Wavevector::from_gev2(-1e-4).unwrap();
        let mut last = None;
        for eta in [1e-7, 1e-9, 1e-11, 1e-13] {
            let d = propagator(k2, eta, &reg, &c).unwrap().diagonal;
            assert!(d.im.abs() <= 2.0 * eta / 1e-4 * d.re.abs());
            if let Some(prev) = last {
                let prev: Complex64 = prev;
                assert!((d.re - prev.re).abs() <= 1e-6 * d.re.abs());
            }
            last = Some(d);
        }
    }

    #[test]
    fn permittivity_times_permeability() {
        let c = consts();
        let reg = preset(Preset::SmFermions);
        for q in [1e-3, 1.0, 1e3] {
            let k2 = k2_from_energy(q, Regime::Spacelike).unwrap();
            let eps = eps0_of_k2(k2, &reg, &c).unwrap();
            let mu = mu0_of_k2(k2, &reg, &c).unwrap();
            assert_relative_eq!(eps * mu * c.c * c.c, 1.0, max_relative = 1e-12);
            assert!(eps < c.eps0);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn linear_in_species(log_q in -3.0f64..4.0) {
            let c = consts();
            let reg = preset(Preset::SmFermions);
            let k2 = k2_from_energy(10f64.powf(log_q), Regime::Spacelike).unwrap();
            let total = delta_pi_exact(k2, &reg, &c).unwrap().re;
            let mut by_species = 0.0;
            for s in reg.species().iter().rev() {
                let single = ParticleRegistry::new(
                    vec![ChargedSpecies::new(&s.name, s.charge_over_e, s.mass_gev, 1)], None, None).unwrap();
                by_species += f64::from(s.multiplicity) * delta_pi_exact(k2, &single, &c).unwrap().re;
            }
            prop_assert!((total - by_species).abs() <= 1e-12 * total.abs());
        }

        #[test]
        fn cutoff_differences_do_not_see_a(l1 in 1e3f64..1e20, l2 in 1e3f64..1e20) {
            let c = consts();
            let reg = preset(Preset::SmFermions);
            let with_a = pi2_zero(l1, &reg, &c, true).unwrap() - pi2_zero(l2, &reg, &c, true).unwrap();
            let expected = c.alpha / (3.0 * PI) * 8.0 * (l1 * l1 / (l2 * l2)).ln();
            prop_assert!((with_a - expected).abs() <= 1e-12);
        }
    }

    #[test]
    fn monotone_in_spacelike_momentum() {
        let c = consts();
        let reg = preset(Preset::SmFermions);
        let mut last = 0.0;
        for i in 0..60 {
            let q = 10f64.powf(-5.0 + 0.25 * i as f64);
            let dp =
                delta_pi_exact(k2_from_energy(q, Regime::Spacelike).unwrap(), &reg, &c).unwrap();
            assert!(dp.re > last, "q = {q}");
            assert_eq!(dp.im, 0.0);
            last = dp.re;
        }
    }

    #[test]
    fn imaginary_part_sign_above_all_thresholds() {
        let c = consts();
        let reg = preset(Preset::SmFermions);
        for q in [400.0, 1e3, 1e5] {
            let dp =
                delta_pi_exact(k2_from_energy(q, Regime::Timelike).unwrap(), &reg, &c).unwrap();
            assert!(dp.im < 0.0);
        }
    }
}
