//! Empirical survival curves and the two estimators of the limit law.
//!
//! The survival function `Psi_d(R)` is the limiting fraction of primitive
//! vectors whose scaled Frobenius number exceeds `R`; by the covering-radius
//! identity it equals the probability that a random unit-covolume lattice
//! has `rho > R`. Both estimators live here: one enumerates primitive
//! vectors in a dilated box and scales their Frobenius numbers, the other
//! samples lattices directly and computes `rho`. The Kolmogorov-Smirnov
//! distance between the two curves is the headline convergence check.
//!
//! The shifted statistic `(F + sum a) / (prod a)^{1/(d-1)}` is the default:
//! it equals the covering radius of the normalized lattice exactly, while
//! the raw `F / (prod a)^{1/(d-1)}` of the limit theorem drags a drift of
//! `sum a / (prod a)^{1/(d-1)}` that only decays like `T^{-1/(d-1)}`.

use crate::covering::{covering_radius_exact_2d, CoveringError};
use crate::frobenius::{frobenius, FrobeniusError};
use crate::intvec::{enumerate_primitive, Domain, IntVecError, PrimitiveVector};
use crate::randlat::{sample_haar_2d, sample_schmidt_framed, FrameOrder, RandLatError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Relative corner cut: enumerated vectors with some coordinate below
/// `CORNER_ETA * T` are counted into `corner_fraction`. The corner of the
/// box contributes vanishing mass in the limit but is kept in the curve.
pub const CORNER_ETA: f64 = 0.05;

/// Dilations above this make the box enumeration a batch job, not a call.
const MAX_DILATION: i64 = 10_000;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("sample set is empty")]
    EmptySample,
    #[error("sample values must be finite")]
    NonFiniteSample,
    #[error("enumeration produced no vectors")]
    EmptyEnumeration,
    #[error("exact pipeline supports dimensions 2 and 3, got {0}")]
    DimensionUnsupported(usize),
    #[error("dilation must be in [1, {MAX_DILATION}], got {0}")]
    DilationOutOfRange(i64),
    #[error(transparent)]
    IntVec(#[from] IntVecError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error(transparent)]
    RandLat(#[from] RandLatError),
}

/// Empirical survival function: `eval(R)` is the fraction of samples
/// strictly greater than `R`. Non-increasing and right-continuous, 1 below
/// the smallest sample and 0 from the largest sample on.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SurvivalCurve {
    values: Vec<f64>,
}

impl SurvivalCurve {
    /// Sorts the samples. Rejects empty input and non-finite values.
    pub fn new(mut values: Vec<f64>) -> Result<Self, StatsError> {
        if values.is_empty() {
            return Err(StatsError::EmptySample);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(StatsError::NonFiniteSample);
        }
        values.sort_unstable_by(f64::total_cmp);
        Ok(Self { values })
    }

    /// Fraction of samples strictly greater than `r`.
    pub fn eval(&self, r: f64) -> f64 {
        let above = self.values.len() - self.values.partition_point(|&v| v <= r);
        above as f64 / self.values.len() as f64
    }

    /// Samples in ascending order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        // The constructor rejects empty input.
        false
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("curve is nonempty")
    }
}

/// Kolmogorov-Smirnov distance: the largest gap between the two survival
/// functions. Both are right-continuous steps, constant between pooled
/// sample points, so evaluating at every sample of either curve is exact.
pub fn ks_distance(a: &SurvivalCurve, b: &SurvivalCurve) -> f64 {
    let mut worst = 0f64;
    for &v in a.values().iter().chain(b.values()) {
        worst = worst.max((a.eval(v) - b.eval(v)).abs());
    }
    worst
}

/// Largest single-value atom as a fraction of the sample. Distributions
/// with continuous limits should show atoms at the `1/n` noise floor; a
/// macroscopic atom flags a genuine discontinuity.
pub fn continuity_smoke(curve: &SurvivalCurve) -> f64 {
    let v = curve.values();
    let mut longest = 1usize;
    let mut run = 1usize;
    for w in v.windows(2) {
        run = if w[0] == w[1] { run + 1 } else { 1 };
        longest = longest.max(run);
    }
    longest as f64 / v.len() as f64
}

/// Which scaling of the Frobenius number goes into the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `F / (prod a)^{1/(d-1)}`, the statistic of the limit theorem.
    Raw,
    /// `(F + sum a) / (prod a)^{1/(d-1)}`, the covering radius itself.
    Shifted,
}

fn scaled_statistic(a: &PrimitiveVector, f: i128, variant: Variant) -> f64 {
    let d = a.dim();
    let scale = (a.product() as f64).powf(1.0 / (d as f64 - 1.0));
    match variant {
        Variant::Raw => f as f64 / scale,
        Variant::Shifted => (f + a.sum()) as f64 / scale,
    }
}

/// Survival curve of scaled Frobenius numbers over a dilated box, plus the
/// counting side data of the same enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct FrobeniusCurve {
    pub curve: SurvivalCurve,
    pub variant: Variant,
    /// Primitive points of the positive dilated box (no floor-2 cut).
    pub primitive_count: u64,
    /// `primitive_count / (T^d vol(domain))`, an estimator of `1/zeta(d)`.
    pub density: f64,
    /// Fraction of curve vectors with a coordinate below `CORNER_ETA * T`.
    pub corner_fraction: f64,
}

/// Enumerates `a` primitive with entries >= 2 in `t * domain` and builds
/// the survival curve of the chosen scaled statistic. One pass also counts
/// all primitive points of the positive box for the density estimate.
pub fn psi_from_frobenius(
    d: usize,
    t: i64,
    domain: &Domain,
    variant: Variant,
) -> Result<FrobeniusCurve, StatsError> {
    if !(2..=3).contains(&d) {
        return Err(StatsError::DimensionUnsupported(d));
    }
    if domain.dim() != d {
        return Err(IntVecError::DomainMismatch {
            domain: domain.dim(),
            expected: d,
        }
        .into());
    }
    if !(1..=MAX_DILATION).contains(&t) {
        return Err(StatsError::DilationOutOfRange(t));
    }

    let corner_cut = CORNER_ETA * t as f64;
    let mut primitive_count = 0u64;
    let mut corner = 0u64;
    let mut flat: Vec<i64> = Vec::new();
    for a in enumerate_primitive(domain, t, false)? {
        primitive_count += 1;
        let c = a.coords();
        if c.iter().all(|&x| x >= 2) {
            corner += u64::from(c.iter().any(|&x| (x as f64) < corner_cut));
            flat.extend_from_slice(c);
        }
    }
    if flat.is_empty() {
        return Err(StatsError::EmptyEnumeration);
    }

    let values: Vec<f64> = flat
        .par_chunks(d)
        .map(|c| {
            let a = PrimitiveVector::new(c.to_vec()).expect("enumerated vectors are primitive");
            let f = frobenius(&a).expect("entries >= 2 by the floor-2 cut").f;
            scaled_statistic(&a, f, variant)
        })
        .collect();
    let curve_len = values.len() as f64;
    Ok(FrobeniusCurve {
        curve: SurvivalCurve::new(values)?,
        variant,
        primitive_count,
        density: primitive_count as f64 / ((t as f64).powi(d as i32) * domain.volume()),
        corner_fraction: corner as f64 / curve_len,
    })
}

/// How to draw the random lattices for the direct estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "method")]
pub enum LatticeMethod {
    Haar2d,
    Schmidt { norm_scale: f64, order: FrameOrder },
}

/// Survival curve of covering radii over `count` sampled lattices. Sample
/// `i` draws from an RNG stream derived from `(seed, i)`, so results are
/// independent of thread scheduling.
pub fn psi_from_lattices(
    d: usize,
    count: usize,
    method: LatticeMethod,
    seed: u64,
) -> Result<SurvivalCurve, StatsError> {
    if d != 3 {
        return Err(StatsError::DimensionUnsupported(d));
    }
    if count == 0 {
        return Err(StatsError::EmptySample);
    }
    let values: Vec<f64> = (0..count)
        .into_par_iter()
        .map(|i| -> Result<f64, StatsError> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let basis = match method {
                LatticeMethod::Haar2d => sample_haar_2d(&mut rng)?.basis,
                LatticeMethod::Schmidt { norm_scale, order } => {
                    sample_schmidt_framed(d, norm_scale, order, &mut rng)?.basis
                }
            };
            Ok(covering_radius_exact_2d(&basis)?.rho)
        })
        .collect::<Result<_, _>>()?;
    SurvivalCurve::new(values)
}

/// Everything one experiment run needs to be rerun bit-exactly, plus its
/// curve and summary numbers. Consumed by the command-line front end.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub source: String,
    pub dimension: usize,
    /// Dilation for enumeration runs, sample count for sampler runs.
    pub size: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corner_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_against: Option<f64>,
    pub max_atom: f64,
    pub curve: SurvivalCurve,
}
