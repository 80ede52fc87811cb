use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use sha2::{Digest, Sha256};
use vacuum_dielectric::ParticleRegistry;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config or registry: exit code 2.
    Validation(String),
    /// Quadrature or pole failure: exit code 3.
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Numerical(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// SHA-256 of the registry's canonical JSON form.
pub fn registry_hash(reg: &ParticleRegistry) -> String {
    let canonical = serde_json::to_string(reg).expect("registry serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// Round-trip CSV number; negative zero prints as zero.
pub fn num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

pub fn csv_header(reg: &ParticleRegistry, invocation: &[String]) -> String {
    format!(
        "# vacuum {VERSION}\n# registry_sha256: {}\n# command: {}\n",
        registry_hash(reg),
        invocation.join(" ")
    )
}

pub fn emit(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn emit_json(value: &serde_json::Value, path: Option<&Path>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    emit(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use vacuum_dielectric::{preset, Preset};

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(-0.0), num(0.0));
    }

    #[test]
    fn hash_distinguishes_registries() {
        let a = registry_hash(&preset(Preset::SmPaper));
        let b = registry_hash(&preset(Preset::SusyDoubled));
        assert_eq!(a.len(), 64);
        assert_ne!(a, b);
        assert_eq!(a, registry_hash(&preset(Preset::SmPaper)));
    }
}
