//! Random unit-covolume lattices.
//!
//! Two samplers feed the covering-radius statistics. The planar one draws
//! from the invariant probability on unit-covolume 2-D lattices using the
//! classical parametrization: a point `tau = x + iy` of the modular
//! fundamental domain `{|x| <= 1/2, x^2 + y^2 >= 1}` carrying the hyperbolic
//! density `(3/pi) y^{-2}`, plus an independent rotation. The other scales
//! the kernel lattice of a random primitive vector `a` into an orthonormal
//! frame of the hyperplane `a^perp`; as `|a|` grows these rescaled kernels
//! equidistribute toward the same invariant measure, which is exactly what
//! the acceptance experiments quantify.
//!
//! Samplers take the RNG explicitly. Parallel drivers derive one independent
//! stream per sample index from a single seed; nothing here holds state.

use crate::covering::{CoveringError, LatticeBasis};
use crate::intvec::{is_primitive, kernel_sublattice, IntVecError, PrimitiveVector};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

/// Hard cap on rejection loops. Acceptance rates are bounded well away from
/// zero (>= 2/3 for the planar sampler), so hitting the cap means the random
/// source is broken, not that the draw was unlucky.
const REJECTION_CAP: usize = 10_000;

#[derive(Debug, Error, PartialEq)]
pub enum RandLatError {
    #[error("rejection stall")]
    RejectionStall,
    #[error("direction vector must be nonzero")]
    ZeroVector,
    #[error("({x}, {y}) lies outside the fundamental domain")]
    OutsideFundamentalDomain { x: f64, y: f64 },
    #[error("sampler needs dimension >= 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("norm scale must be >= 1000, got {0}")]
    NormScaleTooSmall(f64),
    #[error(transparent)]
    IntVec(#[from] IntVecError),
    #[error(transparent)]
    Covering(#[from] CoveringError),
}

/// A unit-covolume planar lattice drawn from the invariant measure, kept
/// together with the parameters that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HaarSample2D {
    /// Fundamental-domain point `(x, y)`.
    pub tau: (f64, f64),
    /// Rotation angle in `[0, 2pi)`.
    pub theta: f64,
    /// `(1/sqrt(y)) {(1,0), (x,y)}` rotated by `theta`; `|det| = 1`.
    pub basis: LatticeBasis<f64>,
}

/// Assembles the lattice for explicit parameters, validating domain
/// membership: `|x| <= 1/2`, `y > 0`, `x^2 + y^2 >= 1`.
pub fn haar_2d_from_parameters(x: f64, y: f64, theta: f64) -> Result<HaarSample2D, RandLatError> {
    if !(x.abs() <= 0.5 && y > 0.0 && x * x + y * y >= 1.0) {
        return Err(RandLatError::OutsideFundamentalDomain { x, y });
    }
    let s = 1.0 / y.sqrt();
    let (sin, cos) = theta.sin_cos();
    // Row vectors rotate as v -> v R with R = [[cos, sin], [-sin, cos]].
    let rot = |v: [f64; 2]| vec![v[0] * cos - v[1] * sin, v[0] * sin + v[1] * cos];
    let basis = LatticeBasis::new(vec![rot([s, 0.0]), rot([x * s, y * s])])?;
    Ok(HaarSample2D {
        tau: (x, y),
        theta,
        basis,
    })
}

/// One draw from the invariant probability on unit-covolume 2-D lattices.
///
/// `x` is uniform on `[-1/2, 1/2]` and `y` has density proportional to
/// `y^{-2}` on `[sqrt(3)/2, inf)` (inverse-CDF transform); the pair is kept
/// when `x^2 + y^2 >= 1`, which restricts the proposal to the fundamental
/// domain and realizes the normalized density `(3/pi) y^{-2}` there. The
/// acceptance rate is `pi sqrt(3)/6 ~ 0.91`.
pub fn sample_haar_2d<R: Rng + ?Sized>(rng: &mut R) -> Result<HaarSample2D, RandLatError> {
    for _ in 0..REJECTION_CAP {
        let x = rng.gen::<f64>() - 0.5;
        // gen() is in [0, 1), so the denominator stays positive.
        let y = (3f64.sqrt() / 2.0) / (1.0 - rng.gen::<f64>());
        if x * x + y * y >= 1.0 {
            let theta = rng.gen::<f64>() * std::f64::consts::TAU;
            return haar_2d_from_parameters(x, y, theta);
        }
    }
    Err(RandLatError::RejectionStall)
}

/// Which way the Gram-Schmidt completion walks the coordinate seeds. The two
/// orders give genuinely different frame maps; distributional results must
/// not depend on the choice, and the acceptance experiments check that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameOrder {
    Ascending,
    Descending,
}

/// Orthogonal matrix `K` with `a_hat . K = (0, ..., 0, 1)`: column `j < d-1`
/// is the `j`-th Gram-Schmidt completion vector of `a_hat`, the last column
/// is `a_hat` itself. Multiplying a row vector by `K` expresses it in this
/// frame, so vectors orthogonal to `a_hat` land in the first `d-1`
/// coordinates.
///
/// Deterministic, and continuous away from the seams where the surviving
/// seed set or a sign pivot changes; `-e_d` maps to the reflection
/// `diag(1, ..., 1, -1)`.
pub fn frame(a_hat: &[f64]) -> Result<Vec<Vec<f64>>, RandLatError> {
    frame_ordered(a_hat, FrameOrder::Ascending)
}

/// [`frame`] with an explicit seed order.
pub fn frame_ordered(a_hat: &[f64], order: FrameOrder) -> Result<Vec<Vec<f64>>, RandLatError> {
    let d = a_hat.len();
    let norm = a_hat.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(norm > 1e-9) || a_hat.iter().any(|v| !v.is_finite()) {
        return Err(RandLatError::ZeroVector);
    }
    let unit: Vec<f64> = a_hat.iter().map(|v| v / norm).collect();

    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(d);
    let seeds: Vec<usize> = match order {
        FrameOrder::Ascending => (0..d).collect(),
        FrameOrder::Descending => (0..d).rev().collect(),
    };
    for s in seeds {
        if rows.len() == d - 1 {
            break;
        }
        let mut v = vec![0.0; d];
        v[s] = 1.0;
        for _ in 0..2 {
            project_out(&mut v, &unit);
            for row in &rows {
                project_out(&mut v, row);
            }
        }
        let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        // At most one seed can fall this close to the span of the others
        // together with a_hat; if two did, every e_j would be within 1e-6
        // of one proper subspace, which no subspace of R^d achieves.
        if len < 1e-6 {
            continue;
        }
        for x in &mut v {
            *x /= len;
        }
        canonicalize_sign(&mut v);
        rows.push(v);
    }
    assert_eq!(rows.len(), d - 1, "coordinate seeds span the space");
    rows.push(unit);

    // Transpose: internal rows become the columns of K.
    Ok((0..d)
        .map(|i| (0..d).map(|j| rows[j][i]).collect())
        .collect())
}

fn project_out(v: &mut [f64], u: &[f64]) {
    let dot: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
    for (x, y) in v.iter_mut().zip(u) {
        *x -= dot * y;
    }
}

/// Flip `v` so its largest-magnitude coordinate is positive (first such
/// coordinate on ties). Makes the frame independent of arithmetic noise in
/// the orthogonalization order.
fn canonicalize_sign(v: &mut [f64]) {
    let mut pivot = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[pivot].abs() {
            pivot = i;
        }
    }
    if v[pivot] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// A unit-covolume `(d-1)`-lattice obtained from the kernel lattice of a
/// primitive integer vector.
#[derive(Debug, Clone, Serialize)]
pub struct SchmidtSample {
    pub a: PrimitiveVector,
    /// Kernel basis of `{m : m . a = 0}` in an orthonormal frame of
    /// `a^perp`, scaled by `|a|^{-1/(d-1)}`; `|det| = 1`.
    pub basis: LatticeBasis<f64>,
}

/// The rescaled kernel lattice of one explicit `a`.
///
/// The kernel lattice has covolume `|a|` inside the hyperplane `a^perp`;
/// expressing it in an orthonormal frame preserves that, and the scaling
/// `|a|^{-1/(d-1)}` divides the covolume by exactly `|a|`.
pub fn schmidt_lattice(
    a: &PrimitiveVector,
    order: FrameOrder,
) -> Result<SchmidtSample, RandLatError> {
    let d = a.dim();
    if d < 3 {
        return Err(RandLatError::DimensionTooSmall(d));
    }
    let kernel = kernel_sublattice(a)?;
    let norm = a
        .coords()
        .iter()
        .map(|&c| (c as f64) * (c as f64))
        .sum::<f64>()
        .sqrt();
    let a_hat: Vec<f64> = a.coords().iter().map(|&c| c as f64 / norm).collect();
    let k = frame_ordered(&a_hat, order)?;
    let scale = norm.powf(-1.0 / (d as f64 - 1.0));
    let rows: Vec<Vec<f64>> = kernel
        .iter()
        .map(|m| {
            (0..d - 1)
                .map(|j| {
                    let coord: f64 = m.iter().zip(&k).map(|(&mi, ki)| mi as f64 * ki[j]).sum();
                    coord * scale
                })
                .collect()
        })
        .collect();
    Ok(SchmidtSample {
        a: a.clone(),
        basis: LatticeBasis::new(rows)?,
    })
}

/// One draw of the kernel-lattice sampler: `a` uniform among primitive
/// integer vectors in the ball of radius `norm_scale` (coordinate-box
/// proposal, rejection on the ball and on primitivity), then
/// [`schmidt_lattice`]. Requires `d >= 3` and `norm_scale >= 1000`.
pub fn sample_schmidt<R: Rng + ?Sized>(
    d: usize,
    norm_scale: f64,
    rng: &mut R,
) -> Result<SchmidtSample, RandLatError> {
    sample_schmidt_framed(d, norm_scale, FrameOrder::Ascending, rng)
}

/// [`sample_schmidt`] with an explicit frame order.
pub fn sample_schmidt_framed<R: Rng + ?Sized>(
    d: usize,
    norm_scale: f64,
    order: FrameOrder,
    rng: &mut R,
) -> Result<SchmidtSample, RandLatError> {
    if d < 3 {
        return Err(RandLatError::DimensionTooSmall(d));
    }
    if !(norm_scale >= 1e3) {
        return Err(RandLatError::NormScaleTooSmall(norm_scale));
    }
    let n = norm_scale.floor() as i64;
    let r2 = (norm_scale * norm_scale).floor() as i128;
    for _ in 0..REJECTION_CAP {
        let coords: Vec<i64> = (0..d).map(|_| rng.gen_range(-n..=n)).collect();
        let inside = coords.iter().map(|&c| c as i128 * c as i128).sum::<i128>() <= r2;
        if !inside || coords.iter().all(|&c| c == 0) || !is_primitive(&coords)? {
            continue;
        }
        let a = PrimitiveVector::new(coords)?;
        return schmidt_lattice(&a, order);
    }
    Err(RandLatError::RejectionStall)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::covering_radius_exact_2d;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn forced_parameters_give_the_square_lattice() {
        let s = haar_2d_from_parameters(0.0, 1.0, 0.0).unwrap();
        let rows = s.basis.rows();
        assert_eq!(rows[0], vec![1.0, 0.0]);
        assert_eq!(rows[1], vec![0.0, 1.0]);
    }

    #[test]
    fn rotation_preserves_covolume() {
        let s = haar_2d_from_parameters(0.3, 1.2, 1.0).unwrap();
        assert!((s.basis.covolume() - 1.0).abs() <= 1e-12);
        let want = [1.0f64.cos() / 1.2f64.sqrt(), 1.0f64.sin() / 1.2f64.sqrt()];
        for (got, want) in s.basis.rows()[0].iter().zip(want) {
            assert!((got - want).abs() <= 1e-12);
        }
    }

    #[test]
    fn parameters_outside_the_domain_are_rejected() {
        for (x, y) in [(0.6, 2.0), (0.3, 0.8), (0.0, -1.0), (0.0, 0.0)] {
            assert_eq!(
                haar_2d_from_parameters(x, y, 0.0),
                Err(RandLatError::OutsideFundamentalDomain { x, y }),
                "(x, y) = ({x}, {y})"
            );
        }
    }

    #[test]
    fn haar_marginals_match_the_density() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let total = 100_000;
        let (mut x_pos, mut y_tail, mut x_mid) = (0usize, 0usize, 0usize);
        for _ in 0..total {
            let s = sample_haar_2d(&mut rng).unwrap();
            assert!((s.basis.covolume() - 1.0).abs() <= 1e-12);
            let (x, y) = s.tau;
            x_pos += usize::from(x > 0.0);
            y_tail += usize::from(y > 2.0);
            x_mid += usize::from(x.abs() < 0.25);
        }
        let freq = |c: usize| c as f64 / total as f64;
        // Closed forms for the density (3/pi) y^{-2} on the fundamental
        // domain: P(x > 0) = 1/2 by symmetry, P(y > 2) = 3/(2 pi), and
        // P(|x| < t) = (6/pi) asin(t).
        assert!((freq(x_pos) - 0.5).abs() <= 0.01, "P(x>0) = {}", freq(x_pos));
        let want_tail = 3.0 / (2.0 * std::f64::consts::PI);
        assert!(
            (freq(y_tail) - want_tail).abs() <= 0.01,
            "P(y>2) = {} want {}",
            freq(y_tail),
            want_tail
        );
        let want_mid = 6.0 / std::f64::consts::PI * 0.25f64.asin();
        assert!(
            (freq(x_mid) - want_mid).abs() <= 0.01,
            "P(|x|<1/4) = {} want {}",
            freq(x_mid),
            want_mid
        );
    }

    #[test]
    fn sampling_is_reproducible() {
        let draw = || {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            (0..5)
                .map(|_| sample_haar_2d(&mut rng).unwrap())
                .flat_map(|s| s.basis.rows().concat())
                .collect::<Vec<f64>>()
        };
        assert_eq!(draw(), draw());
    }

    #[test]
    fn no_planar_sample_beats_the_universal_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..300 {
            let s = sample_haar_2d(&mut rng).unwrap();
            let rho = covering_radius_exact_2d(&s.basis).unwrap().rho;
            assert!(rho >= 3f64.sqrt() - 1e-9, "rho = {rho} for tau = {:?}", s.tau);
        }
    }

    fn orthogonality_defect(k: &[Vec<f64>]) -> f64 {
        let d = k.len();
        let mut worst = 0f64;
        for i in 0..d {
            for j in 0..d {
                let dot: f64 = (0..d).map(|r| k[r][i] * k[r][j]).sum();
                worst = worst.max((dot - f64::from(u8::from(i == j))).abs());
            }
        }
        worst
    }

    #[test]
    fn frame_aligns_the_direction_with_the_last_axis() {
        let id = frame(&[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(id, vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0]
        ]);
        // The antipode is a seam: it maps to a fixed reflection.
        let refl = frame(&[0.0, 0.0, -1.0]).unwrap();
        assert_eq!(refl, vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, -1.0]
        ]);

        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for d in [3usize, 4, 5] {
            for _ in 0..50 {
                let v: Vec<f64> = (0..d).map(|_| rng.gen::<f64>() - 0.5).collect();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm < 1e-3 {
                    continue;
                }
                let unit: Vec<f64> = v.iter().map(|x| x / norm).collect();
                for order in [FrameOrder::Ascending, FrameOrder::Descending] {
                    let k = frame_ordered(&unit, order).unwrap();
                    assert!(orthogonality_defect(&k) <= 1e-12);
                    for j in 0..d {
                        let img: f64 = (0..d).map(|i| unit[i] * k[i][j]).sum();
                        let want = f64::from(u8::from(j == d - 1));
                        assert!((img - want).abs() <= 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn frame_rejects_the_zero_vector() {
        assert_eq!(frame(&[0.0, 0.0, 0.0]), Err(RandLatError::ZeroVector));
    }

    #[test]
    fn kernel_of_the_third_axis_is_the_square_lattice() {
        let a = PrimitiveVector::new(vec![0, 0, 1]).unwrap();
        let s = schmidt_lattice(&a, FrameOrder::Ascending).unwrap();
        assert_eq!(s.basis.rows(), &[vec![1.0, 0.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn schmidt_samples_have_unit_covolume() {
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        for _ in 0..1000 {
            let s = sample_schmidt(3, 1e3, &mut rng).unwrap();
            assert!(
                (s.basis.covolume() - 1.0).abs() <= 1e-9,
                "a = {:?}",
                s.a.coords()
            );
        }
        for _ in 0..50 {
            let s = sample_schmidt(4, 1e3, &mut rng).unwrap();
            assert!((s.basis.covolume() - 1.0).abs() <= 1e-9);
            assert_eq!(s.basis.dim(), 3);
        }
    }

    #[test]
    fn schmidt_preconditions_are_enforced() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        assert_eq!(
            sample_schmidt(2, 1e4, &mut rng).unwrap_err(),
            RandLatError::DimensionTooSmall(2)
        );
        assert_eq!(
            sample_schmidt(3, 10.0, &mut rng).unwrap_err(),
            RandLatError::NormScaleTooSmall(10.0)
        );
    }
}
