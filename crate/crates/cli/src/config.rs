//! Optional JSON config. Every key mirrors a flag; flags win.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use vacuum_dielectric::{load_registry, preset, ParticleRegistry, Preset};

use crate::output::{CliError, CliResult};
use crate::{ModeArg, Quantity, RegimeArg, RegistryArgs, Scale, ScreeningArg};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub quantity: Option<Quantity>,
    pub preset: Option<String>,
    pub registry: Option<PathBuf>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub points: Option<usize>,
    pub scale: Option<Scale>,
    pub mode: Option<ModeArg>,
    pub screening: Option<ScreeningArg>,
    pub regime: Option<RegimeArg>,
    pub tolerance: Option<f64>,
    pub r: Option<f64>,
    pub q_max: Option<f64>,
    pub k: Option<[f64; 3]>,
    pub e0: Option<[f64; 3]>,
    pub omega_scale: Option<f64>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::Validation(format!("cannot read config {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))
    }
}

/// Where the registry came from, for error messages and reports.
#[derive(Debug, Clone)]
pub struct ResolvedRegistry {
    pub registry: ParticleRegistry,
    pub source: String,
}

/// Flags first, then the config; `fallback` when neither names one.
pub fn resolve_registry(
    args: &RegistryArgs,
    cfg: &Config,
    fallback: impl FnOnce() -> CliResult<(ParticleRegistry, String)>,
) -> CliResult<ResolvedRegistry> {
    let (preset_name, file) = if args.preset.is_some() || args.registry.is_some() {
        (args.preset.clone(), args.registry.clone())
    } else {
        if cfg.preset.is_some() && cfg.registry.is_some() {
            return Err(CliError::Validation(
                "config sets both `preset` and `registry`".to_owned(),
            ));
        }
        (cfg.preset.clone(), cfg.registry.clone())
    };
    if let Some(name) = preset_name {
        let p: Preset = name
            .parse()
            .map_err(|e: vacuum_dielectric::Error| CliError::Validation(e.to_string()))?;
        return Ok(ResolvedRegistry {
            registry: preset(p),
            source: format!("preset:{name}"),
        });
    }
    if let Some(path) = file {
        let text = fs::read_to_string(&path).map_err(|e| {
            CliError::Validation(format!("cannot read registry {}: {e}", path.display()))
        })?;
        let registry = load_registry(&text)
            .map_err(|e| CliError::Validation(format!("registry {}: {e}", path.display())))?;
        return Ok(ResolvedRegistry {
            registry,
            source: format!("file:{}", path.display()),
        });
    }
    let (registry, source) = fallback()?;
    Ok(ResolvedRegistry { registry, source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(serde_json::from_str::<Config>(r#"{"pionts": 3}"#).is_err());
        let c: Config =
            serde_json::from_str(r#"{"points": 3, "quantity": "alpha_eff", "scale": "linear"}"#)
                .unwrap();
        assert_eq!(c.points, Some(3));
        assert_eq!(c.quantity, Some(Quantity::AlphaEff));
        assert_eq!(c.scale, Some(Scale::Linear));
    }

    #[test]
    fn flags_override_config() {
        let cfg = Config {
            preset: Some("susy_doubled".into()),
            ..Default::default()
        };
        let args = RegistryArgs {
            preset: Some("sm_paper".into()),
            registry: None,
        };
        let r = resolve_registry(&args, &cfg, || unreachable!()).unwrap();
        assert_eq!(r.registry, preset(Preset::SmPaper));
        let r = resolve_registry(&RegistryArgs::default(), &cfg, || unreachable!()).unwrap();
        assert_eq!(r.registry, preset(Preset::SusyDoubled));
    }
}
