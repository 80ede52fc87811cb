use num_complex::Complex64;
use serde_json::json;
use vacuum_dielectric::coulomb::{
    phi_large_r, phi_r_with, phi_small_r, CoulombOptions, PotentialSample, ScreeningMode,
};
use vacuum_dielectric::field::{
    make_plane_wave, make_wave_with_frequency, maxwell_residual, norm3,
};
use vacuum_dielectric::landau::{solve_landau_pole, solve_landau_pole_bisection, PoleCondition};
use vacuum_dielectric::polarization::{
    delta_pi_asymptotic, delta_pi_exact_with, pi2_zero, POLE_GUARD,
};
use vacuum_dielectric::quadrature::QuadOptions;
use vacuum_dielectric::{
    make_si_constants, preset, Error, ParticleRegistry, PhysicalConstants, Preset, Wavevector,
};

use crate::config::{resolve_registry, Config, ResolvedRegistry};
use crate::output::{
    csv_header, emit, emit_json, num, registry_hash, CliError, CliResult, VERSION,
};
use crate::{
    DumpArgs, LandauArgs, ModeArg, PotentialArgs, Quantity, RegimeArg, Scale, ScreeningArg,
    SweepArgs, WaveCheckArgs,
};

fn electron_only() -> CliResult<(ParticleRegistry, String)> {
    Ok((
        ParticleRegistry::electron_only(),
        "electron_only".to_owned(),
    ))
}

fn sm_paper() -> CliResult<(ParticleRegistry, String)> {
    Ok((preset(Preset::SmPaper), "preset:sm_paper".to_owned()))
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn check_tolerance(tol: Option<f64>) -> CliResult<Option<f64>> {
    match tol {
        Some(t) if !(t > 0.0) || !t.is_finite() => {
            Err(invalid(format!("--tolerance must be positive, got {t}")))
        }
        other => Ok(other),
    }
}

fn screening(arg: Option<ScreeningArg>) -> ScreeningMode {
    match arg {
        Some(ScreeningArg::Linearized) => ScreeningMode::Linearized,
        _ => ScreeningMode::Full,
    }
}

fn screening_name(mode: ScreeningMode) -> &'static str {
    match mode {
        ScreeningMode::Full => "full",
        ScreeningMode::Linearized => "linearized",
    }
}

/// Grid endpoints are hit exactly.
pub fn grid(from: f64, to: f64, points: usize, scale: Scale) -> CliResult<Vec<f64>> {
    if !from.is_finite() || !to.is_finite() {
        return Err(invalid("grid bounds must be finite"));
    }
    if points < 2 {
        return Err(invalid(format!(
            "--points must be at least 2, got {points}"
        )));
    }
    if !(from < to) {
        return Err(invalid(format!(
            "--from ({from}) must be below --to ({to})"
        )));
    }
    let last = (points - 1) as f64;
    let mut out: Vec<f64> = match scale {
        Scale::Log => {
            if !(from > 0.0) {
                return Err(invalid(format!("log grid needs --from > 0, got {from}")));
            }
            let (a, b) = (from.ln(), to.ln());
            (0..points)
                .map(|i| (a + (b - a) * i as f64 / last).exp())
                .collect()
        }
        Scale::Linear => {
            if from < 0.0 {
                return Err(invalid(format!(
                    "linear grid needs --from >= 0, got {from}"
                )));
            }
            (0..points)
                .map(|i| from + (to - from) * i as f64 / last)
                .collect()
        }
    };
    out[0] = from;
    out[points - 1] = to;
    Ok(out)
}

fn at_point(i: usize, name: &str, x: f64, e: Error) -> CliError {
    let msg = format!("grid point {i} ({name} = {x:e}): {e}");
    match CliError::from(e) {
        CliError::Numerical(_) => CliError::Numerical(msg),
        _ => CliError::Validation(msg),
    }
}

pub fn sweep(args: &SweepArgs, invocation: &[String]) -> CliResult<()> {
    let cfg = Config::load(args.config.as_deref())?;
    let quantity = args
        .quantity
        .or(cfg.quantity)
        .ok_or_else(|| invalid("--quantity is required"))?;
    let from = args
        .from
        .or(cfg.from)
        .ok_or_else(|| invalid("--from is required"))?;
    let to = args
        .to
        .or(cfg.to)
        .ok_or_else(|| invalid("--to is required"))?;
    let points = args
        .points
        .or(cfg.points)
        .ok_or_else(|| invalid("--points is required"))?;
    let scale = args.scale.or(cfg.scale).unwrap_or(Scale::Log);
    let tolerance = check_tolerance(args.tolerance.or(cfg.tolerance))?;
    let xs = grid(from, to, points, scale)?;
    let consts = make_si_constants();

    let fallback = if quantity == Quantity::PhiR {
        electron_only
    } else {
        sm_paper
    };
    let ResolvedRegistry { registry: reg, .. } = resolve_registry(&args.registry, &cfg, fallback)?;
    let mut text = csv_header(&reg, invocation);

    if quantity == Quantity::PhiR {
        let mode = screening(args.screening.or(cfg.screening));
        let mut opts = CoulombOptions::default();
        if let Some(t) = tolerance {
            opts.transform.abs_tol = t;
        }
        text.push_str("r_over_compton,phi_volts,correction,abs_error,method,truncated\n");
        for (i, &r) in xs.iter().enumerate() {
            if r == 0.0 {
                return Err(invalid("phi_r needs r > 0; use a positive --from"));
            }
            match phi_r_with(r, &reg, &consts, mode, &opts) {
                Ok(s) => {
                    if s.truncated {
                        eprintln!("warning: grid point {i} (r = {r:e}) truncated at q_max; error estimate {:e}", s.abs_error);
                    }
                    text.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        num(r),
                        num(s.phi_coulomb),
                        num(s.correction),
                        num(s.abs_error),
                        method_name(&s),
                        s.truncated
                    ));
                }
                Err(Error::LandauPole { .. }) => {
                    let method = match mode {
                        ScreeningMode::Full => "numeric_full",
                        ScreeningMode::Linearized => "numeric_linearized",
                    };
                    text.push_str(&format!("{},POLE,POLE,POLE,{method},false\n", num(r)));
                }
                Err(e) => return Err(at_point(i, "r", r, e)),
            }
        }
        return emit(&text, args.output.as_deref());
    }

    let mode = args.mode.or(cfg.mode).unwrap_or(ModeArg::Exact);
    let sign = match args.regime.or(cfg.regime).unwrap_or(RegimeArg::Spacelike) {
        RegimeArg::Spacelike => -1.0,
        RegimeArg::Timelike => 1.0,
    };
    let mut qopts = QuadOptions::default();
    if let Some(t) = tolerance {
        qopts.abs_tol = t;
        qopts.rel_tol = 0.0;
    }
    let (with_eps, with_alpha) = match quantity {
        Quantity::DeltaPi => (true, true),
        Quantity::Eps0 => (true, false),
        Quantity::AlphaEff => (false, true),
        Quantity::PhiR => unreachable!(),
    };
    text.push_str("q_gev,k2_gev2,re_delta_pi,im_delta_pi");
    if with_eps {
        text.push_str(",eps0_ratio");
    }
    if with_alpha {
        text.push_str(",re_alpha_eff_ratio,im_alpha_eff_ratio");
    }
    text.push('\n');
    for (i, &q) in xs.iter().enumerate() {
        let k2 = Wavevector::from_gev2(sign * q * q).map_err(|e| at_point(i, "Q", q, e))?;
        let dp = match mode {
            ModeArg::Exact => delta_pi_exact_with(k2, &reg, &consts, &qopts).map(|c| c.value),
            ModeArg::Asymptotic => {
                delta_pi_asymptotic(k2, &reg, &consts).map(|v| Complex64::new(v, 0.0))
            }
        }
        .map_err(|e| at_point(i, "Q", q, e))?;
        text.push_str(&format!(
            "{},{},{},{}",
            num(q),
            num(k2.k2_gev2()),
            num(dp.re),
            num(dp.im)
        ));
        let gap = Complex64::new(1.0, 0.0) - dp;
        let pole = gap.norm() < POLE_GUARD;
        if with_eps {
            if pole {
                text.push_str(",POLE");
            } else {
                text.push_str(&format!(",{}", num(1.0 - dp.re)));
            }
        }
        if with_alpha {
            if pole {
                text.push_str(",POLE,POLE");
            } else {
                let ratio = gap.inv();
                text.push_str(&format!(",{},{}", num(ratio.re), num(ratio.im)));
            }
        }
        text.push('\n');
    }
    emit(&text, args.output.as_deref())
}

fn method_name(s: &PotentialSample) -> String {
    serde_json::to_value(s.method)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn header(command: &str, reg: &ResolvedRegistry, invocation: &[String]) -> serde_json::Value {
    json!({
        "command": command,
        "version": VERSION,
        "invocation": invocation.join(" "),
        "registry_source": reg.source,
        "registry_sha256": registry_hash(&reg.registry),
    })
}

fn merge(mut base: serde_json::Value, extra: serde_json::Value) -> serde_json::Value {
    if let (Some(b), serde_json::Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

pub fn landau(args: &LandauArgs, invocation: &[String]) -> CliResult<()> {
    let cfg = Config::load(args.config.as_deref())?;
    let reg = resolve_registry(&args.registry, &cfg, sm_paper)?;
    let consts = make_si_constants();
    let res = solve_landau_pole(&reg.registry, &consts)?;
    let round_trip = pi2_zero(res.lambda_l_gev, &reg.registry, &consts, false)?;
    let with_a =
        solve_landau_pole_bisection(&reg.registry, &consts, PoleCondition::AsymptoticDeltaPi)?;
    let report = json!({
        "lambda_l_gev": res.lambda_l_gev,
        "log10_lambda_l_gev": res.lambda_l_gev.log10(),
        "lambda_l_with_log_constant_gev": with_a,
        "f_factor": res.f_factor,
        "closure": res.closure,
        "pi2_zero_at_pole": round_trip,
        "charge_sum": res.charge_sum,
        "mean_mass_gev": res.mean_mass_gev,
        "alpha": consts.alpha,
        "warnings": reg.registry.warnings(),
    });
    emit_json(
        &merge(header("landau", &reg, invocation), report),
        args.output.as_deref(),
    )
}

fn sample_json(s: &PotentialSample) -> serde_json::Value {
    json!({
        "method": method_name(s),
        "phi_volts": s.phi_coulomb,
        "correction": s.correction,
        "abs_error": s.abs_error,
        "truncated": s.truncated,
    })
}

pub fn potential(args: &PotentialArgs, invocation: &[String]) -> CliResult<()> {
    let cfg = Config::load(args.config.as_deref())?;
    let r = args.r.or(cfg.r).ok_or_else(|| invalid("--r is required"))?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(invalid(format!("--r must be positive, got {r}")));
    }
    let reg = resolve_registry(&args.registry, &cfg, electron_only)?;
    let mode = screening(args.screening.or(cfg.screening));
    let consts = make_si_constants();
    let mut opts = CoulombOptions::default();
    if let Some(t) = check_tolerance(args.tolerance.or(cfg.tolerance))? {
        opts.transform.abs_tol = t;
    }
    opts.q_max = args.q_max.or(cfg.q_max);
    if let Some(q) = opts.q_max {
        if !(q > 0.0) {
            return Err(invalid(format!("--q-max must be positive, got {q}")));
        }
    }
    let numeric = phi_r_with(r, &reg.registry, &consts, mode, &opts)?;
    if numeric.truncated {
        eprintln!(
            "warning: transform truncated at q_max; error estimate {:e}",
            numeric.abs_error
        );
    }
    let small = phi_small_r(r, &consts)?;
    let large = phi_large_r(r, &consts)?;
    let report = json!({
        "r_over_compton": r,
        "r_m": r * consts.electron_compton_m(),
        "screening": screening_name(mode),
        "bare_volts": numeric.phi_coulomb / (1.0 + numeric.correction),
        "numeric": sample_json(&numeric),
        "small_r": sample_json(&small),
        "large_r": sample_json(&large),
    });
    emit_json(
        &merge(header("potential", &reg, invocation), report),
        args.output.as_deref(),
    )
}

pub fn wave_check(args: &WaveCheckArgs, invocation: &[String]) -> CliResult<()> {
    let cfg = Config::load(args.config.as_deref())?;
    let k = args.k.or(cfg.k).ok_or_else(|| invalid("--k is required"))?;
    let e0 = args
        .e0
        .or(cfg.e0)
        .ok_or_else(|| invalid("--e0 is required"))?;
    let omega_scale = args.omega_scale.or(cfg.omega_scale).unwrap_or(1.0);
    let tolerance = check_tolerance(args.tolerance.or(cfg.tolerance))?.unwrap_or(1e-12);
    let reg = resolve_registry(&args.registry, &cfg, electron_only)?;
    let consts: PhysicalConstants = make_si_constants();
    let e0c = e0.map(|x| Complex64::new(x, 0.0));
    let wave = if omega_scale == 1.0 {
        make_plane_wave(k, e0c, &consts)?
    } else {
        let kn = k.iter().map(|x| x * x).sum::<f64>().sqrt();
        make_wave_with_frequency(k, e0c, omega_scale * kn * consts.c, &reg.registry, &consts)?
    };
    let zero = Complex64::new(0.0, 0.0);
    let res = maxwell_residual(&wave, zero, &[zero; 3]);
    let pass = res.max() <= tolerance;
    let report = json!({
        "k_per_m": wave.k_vec,
        "omega_rad_per_s": wave.omega,
        "omega_scale": omega_scale,
        "e0": wave.e0,
        "b0": wave.b0,
        "d_norm": norm3(&wave.d0),
        "h_norm": norm3(&wave.h0),
        "eps0_ratio": wave.eps0_k2 / consts.eps0,
        "gauss_residual": res.gauss,
        "ampere_residual": res.ampere,
        "omega_d_norm": res.scale,
        "tolerance": tolerance,
        "result": if pass { "PASS" } else { "FAIL" },
    });
    emit_json(
        &merge(header("wave-check", &reg, invocation), report),
        args.output.as_deref(),
    )
}

pub fn registry_dump(args: &DumpArgs, invocation: &[String]) -> CliResult<()> {
    let reg = resolve_registry(&args.registry, &Config::default(), || {
        Err(invalid("registry dump needs --preset or --registry"))
    })?;
    let r = &reg.registry;
    let report = json!({
        "registry": r,
        "summary": {
            "charge_sum": r.effective_charge_sum(),
            "mean_mass_gev": r.mean_mass_gev(),
            "max_mass_gev": r.max_mass_gev(),
            "species_count": r.species().len(),
            "charge_sum_overridden": r.is_override_only(),
            "warnings": r.warnings(),
        },
    });
    emit_json(
        &merge(header("registry dump", &reg, invocation), report),
        args.output.as_deref(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_and_spacing() {
        let g = grid(1e-3, 1e3, 7, Scale::Log).unwrap();
        assert_eq!(g.len(), 7);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[6], 1e3);
        assert!((g[3] - 1.0).abs() < 1e-14);
        let l = grid(0.0, 1.0, 5, Scale::Linear).unwrap();
        assert_eq!(l, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn grid_validation() {
        assert!(grid(0.0, 1.0, 3, Scale::Log).is_err());
        assert!(grid(1.0, 1.0, 3, Scale::Log).is_err());
        assert!(grid(2.0, 1.0, 3, Scale::Linear).is_err());
        assert!(grid(1.0, 2.0, 1, Scale::Linear).is_err());
        assert!(grid(-1.0, 2.0, 3, Scale::Linear).is_err());
        assert!(grid(1.0, f64::INFINITY, 3, Scale::Log).is_err());
    }
}
