//! Primitive integer vectors and the integer lattices derived from them.
//!
//! A vector is *primitive* when the gcd of its entries is 1, i.e. it is not a
//! proper multiple of another integer vector. This module enumerates
//! primitive vectors in dilated rational boxes, generates higher-dimensional
//! Farey points, and computes two sublattices attached to a primitive `a`:
//! the kernel lattice `{m : m . a = 0}` and the residue lattice
//! `{m : m . (a_1, ..., a_{d-1}) == 0 mod a_d}`. All lattice bases are
//! returned in row-style Hermite normal form so equal lattices get equal
//! bases.

use serde::Serialize;
use thiserror::Error;

/// Errors for vector validation, enumeration, and lattice construction.
#[derive(Debug, Error, PartialEq)]
pub enum IntVecError {
    #[error("zero vector has no primitive decomposition")]
    ZeroVector,
    #[error("vector is not primitive (content {content})")]
    NotPrimitive { content: i64 },
    #[error("need dimension >= 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("domain has dimension {domain} but {expected} was requested")]
    DomainMismatch { domain: usize, expected: usize },
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(i64),
    #[error("Farey sequence would hold ~{estimate:.2e} points; use the streaming iterator")]
    FareyTooLarge { estimate: f64 },
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
}

/// A nonzero integer vector whose entries have gcd 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PrimitiveVector {
    coords: Vec<i64>,
}

impl PrimitiveVector {
    /// Validates gcd(coords) == 1 and dimension >= 2.
    pub fn new(coords: Vec<i64>) -> Result<Self, IntVecError> {
        if coords.len() < 2 {
            return Err(IntVecError::DimensionTooSmall(coords.len()));
        }
        match is_primitive(&coords)? {
            true => Ok(Self { coords }),
            false => Err(IntVecError::NotPrimitive {
                content: gcd_slice(&coords),
            }),
        }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Sum of the entries.
    pub fn sum(&self) -> i128 {
        self.coords.iter().map(|&c| c as i128).sum()
    }

    /// Product of the entries.
    pub fn product(&self) -> i128 {
        self.coords.iter().map(|&c| c as i128).product()
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &c| gcd_i64(g, c))
}

/// Whether gcd of the entries is 1. The zero vector is rejected.
pub fn is_primitive(v: &[i64]) -> Result<bool, IntVecError> {
    if v.iter().all(|&c| c == 0) {
        return Err(IntVecError::ZeroVector);
    }
    Ok(gcd_slice(v) == 1)
}

/// An axis-aligned box with rational corners, used as an enumeration domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    lower: Vec<num_rational::Rational64>,
    upper: Vec<num_rational::Rational64>,
}

impl Domain {
    /// Requires matching corner dimensions and lower <= upper per coordinate.
    pub fn new(
        lower: Vec<num_rational::Rational64>,
        upper: Vec<num_rational::Rational64>,
    ) -> Result<Self, IntVecError> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(IntVecError::DomainMismatch {
                domain: lower.len(),
                expected: upper.len(),
            });
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Err(IntVecError::DomainMismatch {
                domain: lower.len(),
                expected: upper.len(),
            });
        }
        Ok(Self { lower, upper })
    }

    /// The unit cube `[0,1]^d`.
    pub fn unit_cube(d: usize) -> Self {
        let zero = num_rational::Rational64::from_integer(0);
        let one = num_rational::Rational64::from_integer(1);
        Self {
            lower: vec![zero; d],
            upper: vec![one; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Volume of the box.
    pub fn volume(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| ratio_to_f64(*u - *l))
            .product()
    }

    /// Integer bounds of `t * [lower, upper]`, clamped to positive entries;
    /// `floor2` raises the floor to 2 so every vector is a valid Frobenius
    /// argument.
    fn dilated_bounds(&self, t: i64, floor2: bool) -> (Vec<i64>, Vec<i64>) {
        let scale = num_rational::Rational64::from_integer(t);
        let floor = if floor2 { 2 } else { 1 };
        let lo = self
            .lower
            .iter()
            .map(|l| (*l * scale).ceil().to_integer().max(floor))
            .collect();
        let hi = self
            .upper
            .iter()
            .map(|u| (*u * scale).floor().to_integer())
            .collect();
        (lo, hi)
    }
}

fn ratio_to_f64(r: num_rational::Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Lexicographic iterator over primitive integer points of a dilated box.
pub struct PrimitiveIter {
    lo: Vec<i64>,
    hi: Vec<i64>,
    /// Next candidate to test, None once the odometer has wrapped.
    cursor: Option<Vec<i64>>,
}

impl PrimitiveIter {
    fn advance(lo: &[i64], hi: &[i64], cur: &mut Vec<i64>) -> bool {
        for i in (0..cur.len()).rev() {
            if cur[i] < hi[i] {
                cur[i] += 1;
                for j in i + 1..cur.len() {
                    cur[j] = lo[j];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for PrimitiveIter {
    type Item = PrimitiveVector;

    fn next(&mut self) -> Option<PrimitiveVector> {
        loop {
            let cur = self.cursor.as_mut()?;
            let candidate = cur.clone();
            if !Self::advance(&self.lo, &self.hi, cur) {
                self.cursor = None;
            }
            if gcd_slice(&candidate) == 1 {
                return Some(PrimitiveVector { coords: candidate });
            }
        }
    }
}

/// Streams the primitive integer points of `scale * domain` in lexicographic
/// order. Coordinates are clamped to >= 1, so boxes touching the axes count
/// only their positive-orthant interior. With `floor2` every coordinate is
/// required to be >= 2, the precondition of the Frobenius solver.
pub fn enumerate_primitive(
    domain: &Domain,
    scale: i64,
    floor2: bool,
) -> Result<PrimitiveIter, IntVecError> {
    if domain.dim() < 2 {
        return Err(IntVecError::DimensionTooSmall(domain.dim()));
    }
    if scale <= 0 {
        return Err(IntVecError::NonPositiveScale(scale));
    }
    let (lo, hi) = domain.dilated_bounds(scale, floor2);
    let cursor = if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        None
    } else {
        Some(lo.clone())
    };
    Ok(PrimitiveIter { lo, hi, cursor })
}

/// A point `p/q` of the generalized Farey sequence: `p` in `[0,q)^{d-1}`
/// with `gcd(p_1, ..., p_{d-1}, q) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FareyPoint {
    pub p: Vec<i64>,
    pub q: i64,
}

impl FareyPoint {
    /// The point as coordinates in `[0,1)^{d-1}`.
    pub fn value(&self) -> Vec<f64> {
        self.p.iter().map(|&pi| pi as f64 / self.q as f64).collect()
    }
}

/// Streaming generator of the order-`Q` Farey points in dimension `d`,
/// ordered by denominator and then lexicographically by numerator.
pub struct FareyIter {
    q_max: i64,
    q: i64,
    /// Numerator odometer for the current denominator, None between levels.
    p: Option<Vec<i64>>,
    dim_minus_1: usize,
}

impl Iterator for FareyIter {
    type Item = FareyPoint;

    fn next(&mut self) -> Option<FareyPoint> {
        loop {
            if self.p.is_none() {
                if self.q >= self.q_max {
                    return None;
                }
                self.q += 1;
                self.p = Some(vec![0; self.dim_minus_1]);
            }
            let cur = self.p.as_mut().unwrap();
            let candidate = cur.clone();
            let hi = vec![self.q - 1; self.dim_minus_1];
            let lo = vec![0; self.dim_minus_1];
            if !PrimitiveIter::advance(&lo, &hi, cur) {
                self.p = None;
            }
            let mut g = self.q;
            for &pi in &candidate {
                g = gcd_i64(g, pi);
            }
            if g == 1 {
                return Some(FareyPoint {
                    p: candidate,
                    q: self.q,
                });
            }
        }
    }
}

/// Lazy Farey sequence of order `q_max` in dimension `d` (numerators have
/// length `d - 1`).
pub fn farey_iter(q_max: i64, d: usize) -> Result<FareyIter, IntVecError> {
    if d < 2 {
        return Err(IntVecError::DimensionTooSmall(d));
    }
    if q_max < 1 {
        return Err(IntVecError::NonPositiveScale(q_max));
    }
    Ok(FareyIter {
        q_max,
        q: 0,
        p: None,
        dim_minus_1: d - 1,
    })
}

/// Materialized points are capped here; larger requests must stream.
const FAREY_MATERIALIZE_CAP: f64 = 1e8;

/// The full order-`Q` Farey sequence in dimension `d`. The count grows like
/// `Q^d / (d zeta(d))`; requests estimated past 1e8 points are refused in
/// favour of [`farey_iter`].
pub fn farey_sequence(q_max: i64, d: usize) -> Result<Vec<FareyPoint>, IntVecError> {
    if d >= 2 {
        let estimate = (q_max as f64).powi(d as i32) / (d as f64 * zeta(d as f64));
        if estimate > FAREY_MATERIALIZE_CAP {
            return Err(IntVecError::FareyTooLarge { estimate });
        }
    }
    Ok(farey_iter(q_max, d)?.collect())
}

/// Riemann zeta by direct summation, adequate for s >= 2.
pub(crate) fn zeta(s: f64) -> f64 {
    (1..200_000).map(|n| (n as f64).powf(-s)).sum()
}

// ---------------------------------------------------------------------------
// Integer matrix helpers: extended gcd, Hermite form, small determinants.
// Everything runs in i128; inputs at the documented desk scale (entries below
// ~1e6, dimension <= 8) stay far from overflow.
// ---------------------------------------------------------------------------

/// (g, x, y) with g = gcd(a, b) >= 0 and a x + b y = g.
fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i128, 0i128);
    let (mut y0, mut y1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// Row-style Hermite normal form of a full-row-rank integer matrix: pivots
/// positive, entries above each pivot reduced into [0, pivot). Row span is
/// preserved, so this is a canonical basis of the lattice the rows generate.
pub(crate) fn hnf_rows(mut m: Vec<Vec<i128>>) -> Vec<Vec<i128>> {
    let rows = m.len();
    if rows == 0 {
        return m;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if m[i][c] == 0 {
                continue;
            }
            let (g, x, y) = xgcd(m[r][c], m[i][c]);
            let (pr, pi) = (m[r][c] / g, m[i][c] / g);
            for k in 0..cols {
                let (vr, vi) = (m[r][k], m[i][k]);
                m[r][k] = x * vr + y * vi;
                m[i][k] = -pi * vr + pr * vi;
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            for k in 0..cols {
                m[r][k] = -m[r][k];
            }
        }
        for i in 0..r {
            let q = m[i][c].div_euclid(m[r][c]);
            if q != 0 {
                for k in 0..cols {
                    m[i][k] -= q * m[r][k];
                }
            }
        }
        r += 1;
    }
    m
}

/// Determinant by fraction-free (Bareiss) elimination.
#[cfg(test)]
pub(crate) fn det_i128(mat: &[Vec<i128>]) -> i128 {
    let n = mat.len();
    let mut m: Vec<Vec<i128>> = mat.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// det(K K^T) for a row basis K, i.e. the squared covolume of the lattice
/// the rows span inside the ambient space.
#[cfg(test)]
pub(crate) fn gram_det(rows: &[Vec<i128>]) -> i128 {
    let k = rows.len();
    let gram: Vec<Vec<i128>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    det_i128(&gram)
}

fn kernel_raw(a: &[i64]) -> Vec<Vec<i128>> {
    let d = a.len();
    let mut c: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut u: Vec<Vec<i128>> = (0..d)
        .map(|i| (0..d).map(|j| (i == j) as i128).collect())
        .collect();
    // Column reduction of a^T with the row operations mirrored into u, so
    // u * a^T = c holds throughout.
    loop {
        let mut pivot = None;
        for (i, &ci) in c.iter().enumerate() {
            if ci != 0 && pivot.is_none_or(|p: usize| c[p].abs() > ci.abs()) {
                pivot = Some(i);
            }
        }
        let p = pivot.expect("primitive vector is nonzero");
        let mut reduced_any = false;
        for i in 0..d {
            if i == p || c[i] == 0 {
                continue;
            }
            let q = c[i].div_euclid(c[p]);
            c[i] -= q * c[p];
            if q != 0 {
                for k in 0..d {
                    let up = u[p][k];
                    u[i][k] -= q * up;
                }
            }
            reduced_any = true;
        }
        if !reduced_any {
            // Single nonzero left; gcd 1 means it is +-1.
            if c[p] < 0 {
                for k in 0..d {
                    u[p][k] = -u[p][k];
                }
            }
            u.swap(0, p);
            break;
        }
    }
    u.drain(1..).collect()
}

fn rows_to_i64(rows: Vec<Vec<i128>>) -> Result<Vec<Vec<i64>>, IntVecError> {
    rows.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| IntVecError::Overflow))
                .collect()
        })
        .collect()
}

/// Hermite-form basis of the saturated kernel `{m in Z^d : m . a = 0}`,
/// returned as `d - 1` rows of length `d`. The lattice has covolume `|a|`
/// inside the hyperplane it spans.
pub fn kernel_sublattice(a: &PrimitiveVector) -> Result<Vec<Vec<i64>>, IntVecError> {
    rows_to_i64(hnf_rows(kernel_raw(a.coords())))
}

/// Hermite-form basis of `{m in Z^{d-1} : m . (a_1, ..., a_{d-1}) == 0 mod a_d}`,
/// a full-rank sublattice of determinant `a_d`. Entries of `a` must be positive.
pub fn residue_sublattice(a: &PrimitiveVector) -> Result<Vec<Vec<i64>>, IntVecError> {
    if a.coords().iter().any(|&c| c <= 0) {
        return Err(IntVecError::NotPrimitive { content: 0 });
    }
    let d = a.dim();
    // Rows m of the kernel of (a_1, ..., a_{d-1}, -a_d) satisfy
    // m' . a' = m_d a_d; dropping the last coordinate is a bijection onto the
    // residue lattice because a_d != 0 determines m_d from m'.
    let mut signed: Vec<i64> = a.coords().to_vec();
    signed[d - 1] = -signed[d - 1];
    let projected: Vec<Vec<i128>> = kernel_raw(&signed)
        .into_iter()
        .map(|mut row| {
            row.pop();
            row
        })
        .collect();
    rows_to_i64(hnf_rows(projected))
}
