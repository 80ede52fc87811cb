//! Reciprocal-space field algebra: four-vectors with the (+,−,−,−) metric,
//! the field tensor, single-mode plane waves with the running constitutive
//! relations, and the identities tying the induced fermion current to the
//! field tensor.
//!
//! Fields are complex phasors of a single mode `exp(i(k·x − ωt))`, so
//! `∇ → ik` and `∂/∂t → −iω`. Products such as `E²` are bilinear (no
//! complex conjugation).

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{PhysicalConstants, Wavevector};
use crate::error::{Error, Result};
use crate::polarization::{delta_pi_exact, eps0_from_delta_pi};
use crate::registry::ParticleRegistry;

pub type C3 = [Complex64; 3];

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn c3(v: [f64; 3]) -> C3 {
    v.map(|x| Complex64::new(x, 0.0))
}

pub fn dot3(a: &C3, b: &C3) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: &C3, b: &C3) -> C3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn scale3(s: Complex64, a: &C3) -> C3 {
    a.map(|x| s * x)
}

fn add3(a: &C3, b: &C3) -> C3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub3(a: &C3, b: &C3) -> C3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Euclidean norm of a complex 3-vector (Hermitian).
pub fn norm3(a: &C3) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Contravariant four-vector `(a⁰, a¹, a², a³)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourVector {
    pub t: Complex64,
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl FourVector {
    pub fn new(t: Complex64, spatial: C3) -> Self {
        Self {
            t,
            x: spatial[0],
            y: spatial[1],
            z: spatial[2],
        }
    }

    pub fn real(t: f64, spatial: [f64; 3]) -> Self {
        Self::new(Complex64::new(t, 0.0), c3(spatial))
    }

    pub fn zero() -> Self {
        Self::new(ZERO, [ZERO; 3])
    }

    pub fn components(&self) -> [Complex64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    pub fn from_components(c: [Complex64; 4]) -> Self {
        Self {
            t: c[0],
            x: c[1],
            y: c[2],
            z: c[3],
        }
    }

    pub fn spatial(&self) -> C3 {
        [self.x, self.y, self.z]
    }

    /// Covariant components `a_μ = g_{μν} a^ν`.
    pub fn lowered(&self) -> [Complex64; 4] {
        [self.t, -self.x, -self.y, -self.z]
    }

    /// Minkowski product `a⁰b⁰ − a·b`.
    pub fn dot(&self, other: &FourVector) -> Complex64 {
        self.t * other.t - dot3(&self.spatial(), &other.spatial())
    }

    /// Largest component magnitude.
    pub fn max_abs(&self) -> f64 {
        self.components()
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Pure boost with velocity `β c`.
    pub fn boosted(&self, beta: [f64; 3]) -> Self {
        let b2: f64 = beta.iter().map(|b| b * b).sum();
        if b2 == 0.0 {
            return *self;
        }
        let gamma = 1.0 / (1.0 - b2).sqrt();
        let bv = c3(beta);
        let bx = dot3(&bv, &self.spatial());
        let t = gamma * (self.t - bx);
        let coeff = (gamma - 1.0) / b2 * bx - gamma * self.t;
        let spatial = add3(&self.spatial(), &scale3(coeff, &bv));
        Self::new(t, spatial)
    }
}

impl Add for FourVector {
    type Output = FourVector;

    fn add(self, o: FourVector) -> FourVector {
        Self::new(self.t + o.t, add3(&self.spatial(), &o.spatial()))
    }
}

impl Sub for FourVector {
    type Output = FourVector;

    fn sub(self, o: FourVector) -> FourVector {
        Self::new(self.t - o.t, sub3(&self.spatial(), &o.spatial()))
    }
}

impl Mul<FourVector> for Complex64 {
    type Output = FourVector;

    fn mul(self, v: FourVector) -> FourVector {
        FourVector::from_components(v.components().map(|c| self * c))
    }
}

const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Antisymmetric field tensor, contravariant `F^{μν}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldTensor {
    pub components: [[Complex64; 4]; 4],
}

impl FieldTensor {
    /// `F^{0i} = −E_i/c`, `F^{ij} = −ε_{ijk} B_k`.
    pub fn from_fields(e: &C3, b: &C3, c: f64) -> Self {
        let mut f = [[ZERO; 4]; 4];
        for i in 0..3 {
            f[0][i + 1] = -e[i] / c;
            f[i + 1][0] = e[i] / c;
        }
        f[1][2] = -b[2];
        f[2][1] = b[2];
        f[2][3] = -b[0];
        f[3][2] = b[0];
        f[3][1] = -b[1];
        f[1][3] = b[1];
        Self { components: f }
    }

    /// `F^{νμ} = −i k^ν A^μ + i k^μ A^ν`.
    pub fn from_potential(k: &FourVector, a: &FourVector) -> Self {
        let kc = k.components();
        let ac = a.components();
        let mut f = [[ZERO; 4]; 4];
        for nu in 0..4 {
            for mu in 0..4 {
                f[nu][mu] = -I * kc[nu] * ac[mu] + I * kc[mu] * ac[nu];
            }
        }
        Self { components: f }
    }

    pub fn electric(&self, c: f64) -> C3 {
        [1, 2, 3].map(|i| -c * self.components[0][i])
    }

    pub fn magnetic(&self) -> C3 {
        let f = &self.components;
        [-f[2][3], -f[3][1], -f[1][2]]
    }

    /// Covariant `F_{μν}`.
    pub fn lowered(&self) -> [[Complex64; 4]; 4] {
        let mut out = [[ZERO; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                out[mu][nu] = METRIC[mu] * METRIC[nu] * self.components[mu][nu];
            }
        }
        out
    }

    /// `F_{νμ} F^{νμ}`.
    pub fn contraction(&self) -> Complex64 {
        let low = self.lowered();
        low.iter()
            .flatten()
            .zip(self.components.iter().flatten())
            .map(|(l, u)| l * u)
            .sum()
    }

    /// `−F_{νμ}F^{νμ}/(2μ₀)`, which equals `ε₀E² − B²/μ₀`.
    pub fn lagrangian_density(&self, consts: &PhysicalConstants) -> Complex64 {
        -self.contraction() / (2.0 * consts.mu0())
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..4).all(|m| (0..4).all(|n| self.components[m][n] == -self.components[n][m]))
    }
}

/// `ε₀E·E − B·B/μ₀` from 3-vectors.
pub fn field_invariant(e: &C3, b: &C3, consts: &PhysicalConstants) -> Complex64 {
    consts.eps0 * dot3(e, e) - dot3(b, b) / consts.mu0()
}

/// `−i F_{μν} k^ν`, the matrix form of the source-side contraction.
pub fn contract_kf(k: &FourVector, f: &FieldTensor) -> FourVector {
    let low = f.lowered();
    let kc = k.components();
    let mut out = [ZERO; 4];
    for (mu, slot) in out.iter_mut().enumerate() {
        *slot = -I * (0..4).map(|nu| low[mu][nu] * kc[nu]).sum::<Complex64>();
    }
    FourVector::from_components(out)
}

/// The same contraction assembled directly from `E`, `B`, `ω` and `k`:
/// `(−i k·E/c, iωE/c² + i k×B)`.
pub fn contract_kf_components(omega: Complex64, k: &C3, e: &C3, b: &C3, c: f64) -> FourVector {
    let t = -I * dot3(k, e) / c;
    let kxb = cross3(k, b);
    let spatial = [0, 1, 2].map(|i| I * omega * e[i] / (c * c) + I * kxb[i]);
    FourVector::new(t, spatial)
}

/// Induced fermion current `j^μ = −(Π/μ₀)(k² A^μ − k^μ (k·A))`.
pub fn fermion_current(
    k: &FourVector,
    a: &FourVector,
    pi_value: f64,
    consts: &PhysicalConstants,
) -> FourVector {
    let k2 = k.dot(k);
    let ka = k.dot(a);
    let coeff = Complex64::new(-pi_value / consts.mu0(), 0.0);
    coeff * ((k2 * *a) - (ka * *k))
}

/// Pair `(−j^μA_μ, Π(ε₀E² − B²/μ₀))` for the induced current; the two agree.
///
/// The first entry is the interaction term of the Lagrangian computed from
/// four-vector contractions; the second is built from the 3-vector fields of
/// `F^{νμ} = −ik^νA^μ + ik^μA^ν`.
pub fn lagrangian_identity_check(
    k: &FourVector,
    a: &FourVector,
    pi_value: f64,
    consts: &PhysicalConstants,
) -> (Complex64, Complex64) {
    let j = fermion_current(k, a, pi_value, consts);
    let interaction = -j.dot(a);
    let f = FieldTensor::from_potential(k, a);
    let em = pi_value * field_invariant(&f.electric(consts.c), &f.magnetic(), consts);
    (interaction, em)
}

/// Boosts `(E, B)` with velocity `β c`.
pub fn boost_fields(e: &C3, b: &C3, beta: [f64; 3], c: f64) -> (C3, C3) {
    let b2: f64 = beta.iter().map(|x| x * x).sum();
    if b2 == 0.0 {
        return (*e, *b);
    }
    let gamma = 1.0 / (1.0 - b2).sqrt();
    let bv = c3(beta);
    let g = Complex64::new(gamma, 0.0);
    let tail = Complex64::new(gamma * gamma / (gamma + 1.0), 0.0);
    // v × B with v = βc
    let vxb = scale3(Complex64::new(c, 0.0), &cross3(&bv, b));
    let vxe_c2 = scale3(Complex64::new(1.0 / c, 0.0), &cross3(&bv, e));
    let e_new = sub3(
        &scale3(g, &add3(e, &vxb)),
        &scale3(tail * dot3(&bv, e), &bv),
    );
    let b_new = sub3(
        &scale3(g, &sub3(b, &vxe_c2)),
        &scale3(tail * dot3(&bv, b), &bv),
    );
    (e_new, b_new)
}

/// A single Fourier mode with its constitutive fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveField {
    /// 1/m
    pub k_vec: [f64; 3],
    /// rad/s
    pub omega: f64,
    /// V/m
    pub e0: C3,
    /// T
    pub b0: C3,
    /// `ε₀(k²) E0`
    pub d0: C3,
    /// `c² ε₀(k²) B0`
    pub h0: C3,
    /// `ε₀(k²)` used for `D` and `H` (F/m).
    pub eps0_k2: f64,
}

fn transverse_check(k_vec: [f64; 3], e0: &C3) -> Result<()> {
    let kn = k_vec.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(kn > 0.0) || !kn.is_finite() {
        return Err(Error::InvalidInput(format!(
            "|k| must be positive, got {kn}"
        )));
    }
    let en = norm3(e0);
    if en == 0.0 {
        return Ok(());
    }
    let dot = dot3(&c3(k_vec), e0).norm();
    if dot > 1e-12 * kn * en {
        return Err(Error::NonTransverse { dot });
    }
    Ok(())
}

fn assemble(k_vec: [f64; 3], omega: f64, e0: C3, eps0_k2: f64, c: f64) -> PlaneWaveField {
    let b0 = scale3(Complex64::new(1.0 / omega, 0.0), &cross3(&c3(k_vec), &e0));
    let d0 = scale3(Complex64::new(eps0_k2, 0.0), &e0);
    let h0 = scale3(Complex64::new(c * c * eps0_k2, 0.0), &b0);
    PlaneWaveField {
        k_vec,
        omega,
        e0,
        b0,
        d0,
        h0,
        eps0_k2,
    }
}

/// On-shell wave `ω = |k|c` with `B0 = k×E0/ω`; `ε₀(0) = ε₀` since nothing runs.
pub fn make_plane_wave(
    k_vec: [f64; 3],
    e0: C3,
    consts: &PhysicalConstants,
) -> Result<PlaneWaveField> {
    transverse_check(k_vec, &e0)?;
    let omega = k_vec.iter().map(|x| x * x).sum::<f64>().sqrt() * consts.c;
    Ok(assemble(k_vec, omega, e0, consts.eps0, consts.c))
}

/// Wave with an arbitrary frequency; off shell the permittivity runs.
pub fn make_wave_with_frequency(
    k_vec: [f64; 3],
    e0: C3,
    omega: f64,
    reg: &ParticleRegistry,
    consts: &PhysicalConstants,
) -> Result<PlaneWaveField> {
    transverse_check(k_vec, &e0)?;
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidInput(format!(
            "ω must be positive, got {omega}"
        )));
    }
    let k2 = Wavevector::from_si(omega, k_vec, consts)?;
    let eps = eps0_from_delta_pi(delta_pi_exact(k2, reg, consts)?, consts)?;
    Ok(assemble(k_vec, omega, e0, eps, consts.c))
}

impl PlaneWaveField {
    /// `(ω/c, k)`
    pub fn four_wavevector(&self, c: f64) -> FourVector {
        FourVector::real(self.omega / c, self.k_vec)
    }

    pub fn field_tensor(&self, c: f64) -> FieldTensor {
        FieldTensor::from_fields(&self.e0, &self.b0, c)
    }
}

/// Residuals of `ik·D = ρ` and `ik×H + iωD = j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxwellResidual {
    pub gauss_abs: f64,
    pub ampere_abs: f64,
    /// `|ωD|`
    pub scale: f64,
    /// `gauss_abs / scale` (raw value when the scale vanishes).
    pub gauss: f64,
    pub ampere: f64,
}

impl MaxwellResidual {
    pub fn max(&self) -> f64 {
        self.gauss.max(self.ampere)
    }
}

pub fn maxwell_residual(w: &PlaneWaveField, rho: Complex64, j: &C3) -> MaxwellResidual {
    let k = c3(w.k_vec);
    let gauss_abs = (I * dot3(&k, &w.d0) - rho).norm();
    let curl_h = scale3(I, &cross3(&k, &w.h0));
    let dd = scale3(I * w.omega, &w.d0);
    let ampere_abs = norm3(&sub3(&add3(&curl_h, &dd), j));
    let scale = w.omega * norm3(&w.d0);
    let norm = if scale > 0.0 { scale } else { 1.0 };
    MaxwellResidual {
        gauss_abs,
        ampere_abs,
        scale,
        gauss: gauss_abs / norm,
        ampere: ampere_abs / norm,
    }
}
