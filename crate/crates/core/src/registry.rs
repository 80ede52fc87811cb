//! Charged species whose virtual pairs polarize the vacuum.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One charged elementary particle type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChargedSpecies {
    pub name: String,
    /// `q_j / e`
    pub charge_over_e: f64,
    /// Rest energy `m_j c²` in GeV.
    pub mass_gev: f64,
    /// Colour or other degeneracy count.
    pub multiplicity: u32,
}

impl ChargedSpecies {
    pub fn new(name: &str, charge_over_e: f64, mass_gev: f64, multiplicity: u32) -> Self {
        Self {
            name: name.to_owned(),
            charge_over_e,
            mass_gev,
            multiplicity,
        }
    }

    /// `multiplicity · (q/e)²`
    pub fn charge_weight(&self) -> f64 {
        f64::from(self.multiplicity) * self.charge_over_e * self.charge_over_e
    }

    fn validate(&self) -> Result<()> {
        let fail = |reason: &str| {
            Err(Error::InvalidSpecies {
                species: self.name.clone(),
                reason: reason.to_owned(),
            })
        };
        if self.name.trim().is_empty() {
            return fail("name must not be empty");
        }
        if !self.charge_over_e.is_finite() || self.charge_over_e == 0.0 {
            return fail("charge_over_e must be finite and nonzero");
        }
        if !self.mass_gev.is_finite() || self.mass_gev <= 0.0 {
            return fail("mass_gev must be finite and positive");
        }
        if self.multiplicity == 0 {
            return fail("multiplicity must be at least 1");
        }
        Ok(())
    }

    fn is_w_boson(&self) -> bool {
        let n = self.name.trim().to_ascii_lowercase();
        let stem = n.trim_end_matches(['+', '-', '±']);
        matches!(stem, "w" | "w_boson" | "w boson" | "w-boson")
    }
}

/// Validated set of charged species, optionally with the lumped charge sum
/// and mean mass used by the closed-form Landau-pole estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleRegistry {
    #[serde(default)]
    species: Vec<ChargedSpecies>,
    /// `Σ q_j²/e²` replacing the computed sum when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    charge_sum_override: Option<f64>,
    /// `m̄ c²` in GeV, the mean of the log rest energies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mean_log_mass_gev: Option<f64>,
}

/// Named registries shipped with the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    /// `Σq² = 9e²` with `m̄c² = 0.25 GeV`.
    SmPaper,
    /// Standard Model charged fermions with per-species masses.
    SmFermions,
    /// `SmPaper` with the particle count doubled.
    SusyDoubled,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::SmPaper, Preset::SmFermions, Preset::SusyDoubled];

    pub fn name(self) -> &'static str {
        match self {
            Preset::SmPaper => "sm_paper",
            Preset::SmFermions => "sm_fermions",
            Preset::SusyDoubled => "susy_doubled",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_owned()))
    }
}

const SM_PAPER_CHARGE_SUM: f64 = 9.0;
const SM_PAPER_MEAN_MASS_GEV: f64 = 0.25;

/// Charged leptons and quarks, rest energies in GeV.
fn sm_fermion_table() -> Vec<ChargedSpecies> {
    vec![
        ChargedSpecies::new("electron", -1.0, 0.000_510_998_95, 1),
        ChargedSpecies::new("muon", -1.0, 0.105_658_375_5, 1),
        ChargedSpecies::new("tau", -1.0, 1.776_86, 1),
        ChargedSpecies::new("up", 2.0 / 3.0, 0.002_16, 3),
        ChargedSpecies::new("charm", 2.0 / 3.0, 1.27, 3),
        ChargedSpecies::new("top", 2.0 / 3.0, 172.69, 3),
        ChargedSpecies::new("down", -1.0 / 3.0, 0.004_67, 3),
        ChargedSpecies::new("strange", -1.0 / 3.0, 0.093_4, 3),
        ChargedSpecies::new("bottom", -1.0 / 3.0, 4.18, 3),
    ]
}

/// A named preset registry.
pub fn preset(p: Preset) -> ParticleRegistry {
    let lumped = |sum: f64| ParticleRegistry {
        species: Vec::new(),
        charge_sum_override: Some(sum),
        mean_log_mass_gev: Some(SM_PAPER_MEAN_MASS_GEV),
    };
    match p {
        Preset::SmPaper => lumped(SM_PAPER_CHARGE_SUM),
        Preset::SusyDoubled => lumped(2.0 * SM_PAPER_CHARGE_SUM),
        Preset::SmFermions => ParticleRegistry {
            species: sm_fermion_table(),
            charge_sum_override: None,
            mean_log_mass_gev: None,
        },
    }
}

/// Looks up a preset by its name.
pub fn preset_by_name(name: &str) -> Result<ParticleRegistry> {
    Ok(preset(name.parse()?))
}

/// Parses and validates a registry document (JSON).
pub fn load_registry(source: &str) -> Result<ParticleRegistry> {
    let reg: ParticleRegistry = serde_json::from_str(source).map_err(|e| Error::RegistryParse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    reg.validate()?;
    Ok(reg)
}

/// A `(charge weight, rest energy)` pair entering the loop sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassTerm {
    pub weight: f64,
    pub mass_gev: f64,
}

impl ParticleRegistry {
    /// Builds and validates a registry.
    pub fn new(
        species: Vec<ChargedSpecies>,
        charge_sum_override: Option<f64>,
        mean_log_mass_gev: Option<f64>,
    ) -> Result<Self> {
        let reg = Self {
            species,
            charge_sum_override,
            mean_log_mass_gev,
        };
        reg.validate()?;
        Ok(reg)
    }

    pub fn electron_only() -> Self {
        Self {
            species: vec![sm_fermion_table().swap_remove(0)],
            charge_sum_override: None,
            mean_log_mass_gev: None,
        }
    }

    pub fn species(&self) -> &[ChargedSpecies] {
        &self.species
    }

    pub fn charge_sum_override(&self) -> Option<f64> {
        self.charge_sum_override
    }

    /// The `mean_log_mass_gev` field as given, without the derived fallback.
    pub fn mean_log_mass_input(&self) -> Option<f64> {
        self.mean_log_mass_gev
    }

    pub fn is_override_only(&self) -> bool {
        self.charge_sum_override.is_some()
    }

    /// `Σq²/e²`: the override if present, else `Σ mult·(q/e)²`.
    pub fn effective_charge_sum(&self) -> f64 {
        self.charge_sum_override
            .unwrap_or_else(|| self.species.iter().map(ChargedSpecies::charge_weight).sum())
    }

    /// `m̄c²` in GeV. When not given, the charge-weighted mean of the log
    /// rest energies, so that `Σ w_j ln(Λ²/m_j²) = W ln(Λ²/m̄²)` holds exactly.
    pub fn mean_mass_gev(&self) -> f64 {
        if let Some(m) = self.mean_log_mass_gev {
            return m;
        }
        let (mut wsum, mut wlog) = (0.0, 0.0);
        for s in &self.species {
            let w = s.charge_weight();
            wsum += w;
            wlog += w * s.mass_gev.ln();
        }
        (wlog / wsum).exp()
    }

    /// Largest mass scale that a cutoff must exceed.
    pub fn max_mass_gev(&self) -> f64 {
        if self.is_override_only() {
            self.mean_mass_gev()
        } else {
            self.species.iter().map(|s| s.mass_gev).fold(0.0, f64::max)
        }
    }

    /// Terms of the loop sum. A lumped registry contributes a single term at `m̄`.
    pub fn mass_terms(&self) -> Vec<MassTerm> {
        match self.charge_sum_override {
            Some(sum) => vec![MassTerm {
                weight: sum,
                mass_gev: self.mean_mass_gev(),
            }],
            None => self
                .species
                .iter()
                .map(|s| MassTerm {
                    weight: s.charge_weight(),
                    mass_gev: s.mass_gev,
                })
                .collect(),
        }
    }

    /// Non-fatal remarks about the registry contents.
    pub fn warnings(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .species
            .iter()
            .filter(|s| s.is_w_boson())
            .map(|s| {
                format!(
                    "species `{}` is a vector boson; its loop is evaluated with the fermion kernel",
                    s.name
                )
            })
            .collect();
        if self.charge_sum_override.is_some() && !self.species.is_empty() {
            out.push(
                "charge_sum_override is set; per-species masses are ignored in favour of the mean mass"
                    .to_owned(),
            );
        }
        out
    }

    /// Returns a copy with every multiplicity scaled by `factor`.
    pub fn with_scaled_multiplicity(&self, factor: u32) -> Self {
        let mut out = self.clone();
        for s in &mut out.species {
            s.multiplicity *= factor;
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for s in &self.species {
            s.validate()?;
            if !seen.insert(s.name.as_str()) {
                return Err(Error::InvalidSpecies {
                    species: s.name.clone(),
                    reason: "duplicate species name".to_owned(),
                });
            }
        }
        if let Some(sum) = self.charge_sum_override {
            if !sum.is_finite() || sum <= 0.0 {
                return Err(Error::InvalidRegistry(format!(
                    "charge_sum_override must be finite and positive, got {sum}"
                )));
            }
            if self.mean_log_mass_gev.is_none() {
                return Err(Error::InvalidRegistry(
                    "charge_sum_override requires mean_log_mass_gev".to_owned(),
                ));
            }
        }
        if let Some(m) = self.mean_log_mass_gev {
            if !m.is_finite() || m <= 0.0 {
                return Err(Error::InvalidRegistry(format!(
                    "mean_log_mass_gev must be finite and positive, got {m}"
                )));
            }
        }
        if self.effective_charge_sum() <= 0.0 {
            return Err(Error::InvalidRegistry(
                "registry has no charged species and no charge_sum_override".to_owned(),
            ));
        }
        Ok(())
    }
}
