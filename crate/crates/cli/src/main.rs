//! `vacuum`: sweeps, Landau-pole reports, potential profiles and plane-wave
//! checks for the vacuum dielectric model.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "vacuum",
    version,
    about = "Vacuum polarization, running coupling and screened Coulomb tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate a quantity over a grid (CSV).
    Sweep(SweepArgs),
    /// Landau pole, geometric factor and closure (JSON).
    Landau(LandauArgs),
    /// Screened Coulomb potential at one distance (JSON).
    Potential(PotentialArgs),
    /// Maxwell residuals of a single plane wave (JSON).
    WaveCheck(WaveCheckArgs),
    /// Registry operations.
    Registry {
        #[command(subcommand)]
        action: RegistryAction,
    },
}

#[derive(Debug, Subcommand)]
enum RegistryAction {
    /// Validate a registry and echo it with a summary (JSON).
    Dump(DumpArgs),
}

#[derive(Debug, Clone, Args, Default)]
pub struct RegistryArgs {
    /// Built-in registry: sm_paper, sm_fermions or susy_doubled.
    #[arg(long, conflicts_with = "registry")]
    pub preset: Option<String>,
    /// Registry document (JSON).
    #[arg(long)]
    pub registry: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Quantity {
    DeltaPi,
    AlphaEff,
    Eps0,
    PhiR,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    Exact,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScreeningArg {
    Full,
    Linearized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeArg {
    Spacelike,
    Timelike,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// What to tabulate.
    #[arg(long, value_enum)]
    pub quantity: Option<Quantity>,
    #[command(flatten)]
    pub registry: RegistryArgs,
    /// Lower grid bound: energy scale Q in GeV, or r in units of ħ/(m_e c) for phi_r.
    #[arg(long)]
    pub from: Option<f64>,
    /// Upper grid bound.
    #[arg(long)]
    pub to: Option<f64>,
    /// Number of grid points (at least 2).
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum)]
    pub scale: Option<Scale>,
    /// Loop integral or large-|k²| log form.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Screening function for phi_r.
    #[arg(long, value_enum)]
    pub screening: Option<ScreeningArg>,
    /// Sign of k² = ±Q².
    #[arg(long, value_enum)]
    pub regime: Option<RegimeArg>,
    /// Absolute quadrature tolerance.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// JSON file with defaults for any of these options.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LandauArgs {
    #[command(flatten)]
    pub registry: RegistryArgs,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    /// Distance in units of ħ/(m_e c).
    #[arg(long)]
    pub r: Option<f64>,
    #[command(flatten)]
    pub registry: RegistryArgs,
    #[arg(long, value_enum)]
    pub screening: Option<ScreeningArg>,
    /// Absolute tolerance on the correction.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Upper wavenumber of the transform, in m_e c/ħ.
    #[arg(long)]
    pub q_max: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct WaveCheckArgs {
    /// Wavevector kx,ky,kz in 1/m.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub k: Option<[f64; 3]>,
    /// Electric amplitude Ex,Ey,Ez in V/m.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub e0: Option<[f64; 3]>,
    /// Multiplies the on-shell frequency |k|c; 1 keeps the wave on shell.
    #[arg(long)]
    pub omega_scale: Option<f64>,
    #[command(flatten)]
    pub registry: RegistryArgs,
    /// Residual threshold for PASS, relative to |ωD|.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DumpArgs {
    #[command(flatten)]
    pub registry: RegistryArgs,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got `{s}`"));
    }
    let mut out = [0.0; 3];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let invocation: Vec<String> = std::env::args().skip(1).collect();
    let result = match cli.command {
        Command::Sweep(a) => commands::sweep(&a, &invocation),
        Command::Landau(a) => commands::landau(&a, &invocation),
        Command::Potential(a) => commands::potential(&a, &invocation),
        Command::WaveCheck(a) => commands::wave_check(&a, &invocation),
        Command::Registry {
            action: RegistryAction::Dump(a),
        } => commands::registry_dump(&a, &invocation),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

impl From<vacuum_dielectric::Error> for CliError {
    fn from(e: vacuum_dielectric::Error) -> Self {
        use vacuum_dielectric::Error as E;
        match e {
            E::NonConvergence { .. } | E::LandauPole { .. } | E::SeriesDivergence { .. } => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn vec3_parsing() {
        assert_eq!(parse_vec3("1, -2,3e7").unwrap(), [1.0, -2.0, 3e7]);
        assert!(parse_vec3("1,2").is_err());
        assert!(parse_vec3("1,x,2").is_err());
    }
}
