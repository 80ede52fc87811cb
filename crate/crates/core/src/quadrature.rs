//! Globally adaptive Gauss–Kronrod (10/21 point) quadrature with
//! QUADPACK-style error estimates, plus a sine-transform driver that
//! partitions at the zeros of the kernel and accelerates the alternating
//! tail by repeated averaging of partial sums.

// nodes and weights are kept at their published precision
#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_175_966_920,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// 10-point Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_intervals: 2000,
        }
    }
}

impl QuadOptions {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    /// Requested error bound for an integral of magnitude `value`.
    pub fn bound(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl Estimate {
    /// Turns an unconverged estimate into [`Error::NonConvergence`].
    pub fn require(self, opts: &QuadOptions) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                achieved: self.abs_error,
                requested: opts.bound(self.value),
            })
        }
    }
}

/// One Gauss–Kronrod 21 point panel on `[a, b]`: `(value, error estimate)`.
pub fn gauss_kronrod_21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = WGK[10] * fc;
    let mut resg = 0.0;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Adaptive integration over consecutive segments of `points` (sorted,
/// endpoints included). Interior points mark known singularities.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, points: &[f64], opts: &QuadOptions) -> Estimate {
    assert!(points.len() >= 2, "need at least the two endpoints");
    let mut panels: Vec<Panel> = Vec::with_capacity(points.len() + 16);
    for w in points.windows(2) {
        if w[1] > w[0] {
            let (value, error) = gauss_kronrod_21(&mut f, w[0], w[1]);
            panels.push(Panel {
                a: w[0],
                b: w[1],
                value,
                error,
            });
        }
    }
    let mut evaluations = 21 * panels.len();
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        if err <= opts.bound(total) {
            return Estimate {
                value: total,
                abs_error: err,
                evaluations,
                converged: true,
            };
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                (p.b - p.a) > 4.0 * f64::EPSILON * p.a.abs().max(p.b.abs()).max(1e-300)
            })
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i);
        let Some(i) = worst else {
            return Estimate {
                value: total,
                abs_error: err,
                evaluations,
                converged: false,
            };
        };
        if panels.len() >= opts.max_intervals {
            return Estimate {
                value: total,
                abs_error: err,
                evaluations,
                converged: false,
            };
        }
        let p = panels.swap_remove(i);
        let mid = 0.5 * (p.a + p.b);
        let (v1, e1) = gauss_kronrod_21(&mut f, p.a, mid);
        let (v2, e2) = gauss_kronrod_21(&mut f, mid, p.b);
        evaluations += 42;
        panels.push(Panel {
            a: p.a,
            b: mid,
            value: v1,
            error: e1,
        });
        panels.push(Panel {
            a: mid,
            b: p.b,
            value: v2,
            error: e2,
        });
    }
}

/// Settings for [`sine_transform`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatoryOptions {
    /// Target on the accelerated sum.
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Tolerances for each half period.
    pub cycle: QuadOptions,
    /// Largest `q` the partition may reach before giving up.
    pub q_max: f64,
    /// Averaging depth of the Euler-type transform.
    pub levels: usize,
    /// Half periods summed before acceleration is attempted.
    pub min_cycles: usize,
}

impl Default for OscillatoryOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-22,
            rel_tol: 1e-11,
            cycle: QuadOptions {
                abs_tol: 1e-24,
                rel_tol: 1e-13,
                max_intervals: 400,
            },
            q_max: f64::INFINITY,
            levels: 20,
            min_cycles: 24,
        }
    }
}

/// Result of [`sine_transform`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatoryEstimate {
    pub value: f64,
    pub abs_error: f64,
    pub cycles: usize,
    /// Upper end of the last integrated half period.
    pub q_reached: f64,
    pub converged: bool,
}

/// `∫₀^∞ sin(r q) h(q) dq` for `h` smooth and slowly varying at large `q`.
///
/// The range is cut at the zeros `nπ/r` of the kernel. Half period
/// contributions alternate in sign; their partial sums are averaged
/// `levels` times (Euler transform of the alternating tail).
pub fn sine_transform<H: FnMut(f64) -> f64>(
    mut h: H,
    r: f64,
    opts: &OscillatoryOptions,
) -> Result<OscillatoryEstimate> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidInput(format!(
            "sine transform needs r > 0, got {r}"
        )));
    }
    let period = std::f64::consts::PI / r;
    let levels = opts.levels.max(1);
    let mut partial: Vec<f64> = Vec::new();
    let mut running = 0.0;
    let mut previous: Option<f64> = None;
    let mut best: Option<(f64, f64)> = None;
    let mut n = 0usize;
    // partial sums cannot resolve less than a few ulps of the largest term
    let mut largest = 0.0f64;
    loop {
        let a = n as f64 * period;
        let b = (n + 1) as f64 * period;
        if b > opts.q_max {
            let tail = if n >= 2 {
                (partial[n - 1] - partial[n - 2]).abs()
            } else {
                f64::INFINITY
            };
            let (value, abs_error) = best.unwrap_or((running, tail));
            return Ok(OscillatoryEstimate {
                value,
                abs_error,
                cycles: n,
                q_reached: a,
                converged: false,
            });
        }
        let est = integrate(|q| (r * q).sin() * h(q), &[a, b], &opts.cycle);
        let est = est.require(&opts.cycle)?;
        running += est.value;
        largest = largest.max(est.value.abs());
        partial.push(running);
        n += 1;
        if n < opts.min_cycles.max(levels + 2) {
            continue;
        }
        let accelerated = euler_average(&partial[partial.len() - levels - 1..]);
        let shallower = euler_average(&partial[partial.len() - levels..]);
        if let Some(prev) = previous {
            let err = (accelerated - prev)
                .abs()
                .max((accelerated - shallower).abs())
                .max(4.0 * f64::EPSILON * largest);
            if best.is_none_or(|(_, e)| err < e) {
                best = Some((accelerated, err));
            }
            if err <= opts.abs_tol.max(opts.rel_tol * accelerated.abs()) {
                return Ok(OscillatoryEstimate {
                    value: accelerated,
                    abs_error: err,
                    cycles: n,
                    q_reached: b,
                    converged: true,
                });
            }
        }
        previous = Some(accelerated);
    }
}

/// Repeated pairwise averaging of consecutive partial sums, collapsed into
/// binomial weights: `Σ C(k,i) S_i / 2^k` with `k = sums.len() - 1`.
fn euler_average(sums: &[f64]) -> f64 {
    let k = sums.len() - 1;
    let mut weight = 1.0;
    let mut acc = 0.0;
    for (i, s) in sums.iter().enumerate() {
        acc += weight * s;
        weight *= (k - i) as f64 / (i + 1) as f64;
    }
    acc / 2f64.powi(k as i32)
}
