//! Dielectric model of the quantum vacuum.
//!
//! The vacuum permittivity runs with the photon off-shellness `k²` as
//! `ε₀(k²) = ε₀[1 − ΔΠ(k²)]`, where `ΔΠ` is the one-loop polarizability
//! summed over charged species. The permeability follows from
//! `ε₀(k²)μ₀(k²) = 1/c²`, so the light speed stays fixed while the coupling
//! `α/(1 − ΔΠ)` runs.
//!
//! Modules:
//! - [`constants`]: SI constants and the invariant `k²`.
//! - [`registry`]: charged species, presets and file ingestion.
//! - [`polarization`]: `ΔΠ`, running permittivity, coupling and propagator.
//! - [`landau`]: the Landau pole and the geometric factor `f`.
//! - [`coulomb`]: screened potential of a static charge.
//! - [`field`]: plane waves, field tensors and Maxwell residuals.
//! - [`quadrature`]: adaptive Gauss–Kronrod and the sine-transform driver.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod coulomb;
pub mod error;
pub mod field;
pub mod landau;
pub mod polarization;
pub mod quadrature;
pub mod registry;

pub use constants::{k2_from_energy, make_si_constants, PhysicalConstants, Regime, Wavevector};
pub use error::{Error, Result};
pub use registry::{load_registry, preset, ChargedSpecies, ParticleRegistry, Preset};
