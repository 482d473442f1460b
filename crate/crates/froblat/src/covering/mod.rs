//! Covering radii of the standard simplex with respect to lattices.
//!
//! The covering radius of `Delta = {x >= 0 : x_1 + ... + x_n <= 1}` with
//! respect to a full-rank lattice `L` is the smallest `rho` such that
//! `rho * Delta + L` covers all of space. Equivalently it is the supremum
//! over translates `zeta` of the smallest value `(v - zeta) . e` over lattice
//! points `v` componentwise above `zeta`: the size of the largest open
//! simplex translate containing no lattice point.
//!
//! Three computations are offered: a closed form in dimension 1, an exact
//! maximal-empty-simplex search in dimension 2 (rational or float scalars),
//! and a grid oracle in any dimension that returns a guaranteed lower bound
//! with a published convergence bound.

mod exact;
mod grid;
mod scalar;

pub use exact::covering_radius_exact_2d;
pub use grid::{covering_radius_grid, grid_gap_bound};
pub use scalar::{Scalar, Sign, FLOAT_EPS};

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoveringError {
    #[error("basis must be square and nonempty")]
    NotSquare,
    #[error("basis entries must be finite")]
    NonFinite,
    #[error("basis is singular")]
    DegenerateBasis,
    #[error("operation supports dimension {want}, got {got}")]
    DimensionUnsupported { got: usize, want: usize },
    #[error("weights must be positive integers")]
    WeightNotPositive,
    #[error("grid resolution must be >= 1")]
    ZeroGrid,
    #[error("scale must be positive")]
    NonPositiveScale,
    #[error("enumeration bound exceeded; basis is too degenerate for the search box")]
    EnumerationBoundExceeded,
}

/// Row basis of a full-rank lattice: row `i` is the `i`-th basis vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeBasis<S> {
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> LatticeBasis<S> {
    /// Validates squareness, finiteness, and nonsingularity.
    pub fn new(rows: Vec<Vec<S>>) -> Result<Self, CoveringError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(CoveringError::NotSquare);
        }
        if rows.iter().flatten().any(|x| !x.is_finite_val()) {
            return Err(CoveringError::NonFinite);
        }
        let basis = Self { rows };
        if basis.det().sign_eps() == Sign::Boundary {
            return Err(CoveringError::DegenerateBasis);
        }
        Ok(basis)
    }

    /// Basis from integer rows.
    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self, CoveringError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| S::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    /// Determinant by Gaussian elimination with abs-max pivoting.
    pub fn det(&self) -> S {
        let n = self.dim();
        let mut m = self.rows.clone();
        let mut det = S::one();
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&i, &j| scalar::scmp(&abs(&m[i][k]), &abs(&m[j][k])))
                .expect("nonempty range");
            if pivot != k {
                m.swap(pivot, k);
                det = -det;
            }
            if num_eq_zero(&m[k][k]) {
                return S::zero();
            }
            det = det * m[k][k].clone();
            for i in k + 1..n {
                let f = m[i][k].clone() / m[k][k].clone();
                for j in k..n {
                    m[i][j] = m[i][j].clone() - f.clone() * m[k][j].clone();
                }
            }
        }
        det
    }

    /// |det|, the covolume of the lattice.
    pub fn covolume(&self) -> S {
        abs(&self.det())
    }

    /// The lattice point with the given coefficient row, `n * B`.
    pub fn point(&self, coeffs: &[i64]) -> Vec<S> {
        let n = self.dim();
        (0..n)
            .map(|j| {
                let mut acc = S::zero();
                for i in 0..n {
                    acc = acc + S::from_int(coeffs[i]) * self.rows[i][j].clone();
                }
                acc
            })
            .collect()
    }

    /// Inverse matrix (basis is nonsingular by construction).
    pub(crate) fn inverse(&self) -> Vec<Vec<S>> {
        let n = self.dim();
        let mut m = self.rows.clone();
        let mut inv: Vec<Vec<S>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { S::one() } else { S::zero() })
                    .collect()
            })
            .collect();
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&i, &j| scalar::scmp(&abs(&m[i][k]), &abs(&m[j][k])))
                .expect("nonempty range");
            m.swap(pivot, k);
            inv.swap(pivot, k);
            let p = m[k][k].clone();
            for j in 0..n {
                m[k][j] = m[k][j].clone() / p.clone();
                inv[k][j] = inv[k][j].clone() / p.clone();
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = m[i][k].clone();
                if num_eq_zero(&f) {
                    continue;
                }
                for j in 0..n {
                    m[i][j] = m[i][j].clone() - f.clone() * m[k][j].clone();
                    inv[i][j] = inv[i][j].clone() - f.clone() * inv[k][j].clone();
                }
            }
        }
        inv
    }

    /// Rescaled lattice `c * L`.
    pub fn scaled(&self, c: &S) -> Result<Self, CoveringError> {
        Self::new(
            self.rows
                .iter()
                .map(|r| r.iter().map(|x| x.clone() * c.clone()).collect())
                .collect(),
        )
    }
}

pub(crate) fn abs<S: Scalar>(x: &S) -> S {
    if x.sign_eps() == Sign::Neg {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Exact zero test (no tolerance), used where structural zeros matter.
fn num_eq_zero<S: Scalar>(x: &S) -> bool {
    *x == S::zero()
}

/// A covering radius together with the maximal empty simplex that attains it.
#[derive(Debug, Clone, Serialize)]
pub struct CoveringResult<S> {
    /// The covering radius.
    pub rho: S,
    /// Translate: the open simplex `rho * Delta + zeta` is lattice-free.
    pub zeta: Vec<S>,
    /// One lattice point in the relative interior of each facet of the
    /// closed simplex, listed as [left facet(s)..., hypotenuse].
    pub witnesses: Vec<Vec<S>>,
    /// Float flavor only: some test landed within tolerance of a facet, so
    /// the configuration involves a near-degeneracy.
    pub boundary_degenerate: bool,
    /// Number of search-box enlargements that were needed (0 normally).
    pub retries: u32,
}

/// Covering radius of `[0, 1]` with respect to `g Z`: exactly `g`.
pub fn covering_radius_1d<S: Scalar>(g: &S) -> Result<S, CoveringError> {
    match g.sign_eps() {
        Sign::Pos => Ok(g.clone()),
        _ => Err(CoveringError::NonPositiveScale),
    }
}

/// Covering radius of the weighted simplex `{x >= 0 : x . w <= 1}` with
/// respect to an integer lattice, computed exactly.
///
/// Scaling coordinates by `diag(w)` maps the weighted simplex to the
/// standard one and the lattice to `L diag(w)`, so
/// `rho_w(L) = rho(Delta; L diag(w))`. The returned configuration lives in
/// the scaled coordinates.
pub fn covering_radius_weighted(
    basis_rows: &[Vec<i64>],
    weights: &[i64],
) -> Result<(BigRational, CoveringResult<BigRational>), CoveringError> {
    let n = weights.len();
    if basis_rows.len() != n || basis_rows.iter().any(|r| r.len() != n) {
        return Err(CoveringError::NotSquare);
    }
    if weights.iter().any(|&w| w <= 0) {
        return Err(CoveringError::WeightNotPositive);
    }
    let scaled_rows: Vec<Vec<BigRational>> = basis_rows
        .iter()
        .map(|r| {
            r.iter()
                .zip(weights)
                .map(|(&x, &w)| BigRational::from_integer((x as i128 * w as i128).into()))
                .collect()
        })
        .collect();
    match n {
        1 => {
            let g = abs(&scaled_rows[0][0]);
            if num_eq_zero(&g) {
                return Err(CoveringError::DegenerateBasis);
            }
            // rho([0,1]; gZ) = g; the maximal empty interval is (0, g).
            let result = CoveringResult {
                rho: g.clone(),
                zeta: vec![BigRational::from_integer(0.into())],
                witnesses: vec![vec![BigRational::from_integer(0.into())], vec![g.clone()]],
                boundary_degenerate: false,
                retries: 0,
            };
            Ok((g, result))
        }
        2 => {
            let basis = LatticeBasis::new(scaled_rows)?;
            let result = covering_radius_exact_2d(&basis)?;
            Ok((result.rho.clone(), result))
        }
        _ => Err(CoveringError::DimensionUnsupported { got: n, want: 2 }),
    }
}

/// Re-verify a planar covering configuration from scratch: witnesses must be
/// lattice points in the relative interiors of the three facets, and the open
/// simplex must be lattice-free by direct enumeration. Diagnostic; used by
/// tests and available to callers that want independent confirmation.
pub fn verify_covering_result<S: Scalar>(
    basis: &LatticeBasis<S>,
    result: &CoveringResult<S>,
) -> bool {
    exact::verify_result(basis, result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_closed_form() {
        assert_eq!(covering_radius_1d(&6.0), Ok(6.0));
        assert_eq!(covering_radius_1d(&1.0), Ok(1.0));
        assert_eq!(covering_radius_1d(&0.0), Err(CoveringError::NonPositiveScale));
        assert_eq!(covering_radius_1d(&-2.0), Err(CoveringError::NonPositiveScale));
    }

    #[test]
    fn weighted_line_lattice() {
        // rho({x >= 0 : 2x <= 1}; 3Z) = 6.
        let (rho, _) = covering_radius_weighted(&[vec![3]], &[2]).unwrap();
        assert_eq!(rho, BigRational::from_integer(6.into()));
    }

    #[test]
    fn weighted_plane_lattice() {
        // The lattice {m : 3 m_1 + 4 m_2 == 0 mod 5} against weights (3, 4):
        // the scaled covering radius comes out at 14 = F(3,4,5) + 3 + 4 + 5.
        let (rho, res) =
            covering_radius_weighted(&[vec![1, 3], vec![0, 5]], &[3, 4]).unwrap();
        assert_eq!(rho, BigRational::from_integer(14.into()));
        assert!(verify_covering_result(
            &LatticeBasis::from_integer_rows(&[vec![3, 12], vec![0, 20]]).unwrap(),
            &res
        ));
    }

    #[test]
    fn unit_weights_reduce_to_the_plain_radius() {
        let (rho, _) =
            covering_radius_weighted(&[vec![1, 0], vec![0, 1]], &[1, 1]).unwrap();
        assert_eq!(rho, BigRational::from_integer(2.into()));
    }

    #[test]
    fn weighted_rejects_nonpositive_weights() {
        let r = covering_radius_weighted(&[vec![1, 0], vec![0, 1]], &[1, 0]);
        assert!(matches!(r, Err(CoveringError::WeightNotPositive)));
    }

    #[test]
    fn degenerate_basis_is_rejected() {
        let r = LatticeBasis::<f64>::new(vec![vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert_eq!(r.unwrap_err(), CoveringError::DegenerateBasis);
    }

    #[test]
    fn covolume_of_integer_basis() {
        let b = LatticeBasis::<f64>::from_integer_rows(&[vec![1, 3], vec![0, 5]]).unwrap();
        assert!((b.covolume() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_roundtrip() {
        let b = LatticeBasis::<f64>::new(vec![vec![0.7, 0.2], vec![-0.4, 1.9]]).unwrap();
        let inv = b.inverse();
        // B * B^{-1} = I.
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = 0.0;
                for k in 0..2 {
                    acc += b.rows()[i][k] * inv[k][j];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((acc - want).abs() < 1e-12);
            }
        }
    }
}
