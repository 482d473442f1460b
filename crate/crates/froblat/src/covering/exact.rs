//! Exact covering radii of the standard 2-simplex via maximal empty
//! simplex translates.
//!
//! At `R = rho` there is a translate `zeta` whose open simplex
//! `R Delta^o + zeta` contains no lattice point while each of the three
//! closed facets carries a lattice point in its relative interior.
//! Conversely any translate with those properties certifies `R <= rho`, so
//! the largest such `R` equals rho and the first valid configuration in
//! (R descending, witnesses lexicographic) order is canonical.
//!
//! Normalization: translating by a lattice vector moves the left-facet
//! witness to the origin, so `zeta = (0, z)` with `z = v2_y < 0` where
//! `v2 = (s, z)`, `0 < s < R`, is the bottom-facet witness and the
//! hypotenuse witness `v3` fixes `R = v3 . e - z`.
//!
//! Search space: the witness triangle `conv(0, v2, v3)` has its interior and
//! open edges inside the open simplex, so it is lattice-free with no interior
//! edge points; by Pick's theorem its area is half the covolume, i.e. the
//! coefficient vectors of `(v2, v3)` form a unimodular pair. For each
//! primitive coefficient vector `n2` the mates are the two integer lines
//! `n3 = n3_base(sigma) + k n2`, `sigma = det = +-1`, which turns the search
//! into line scans instead of quadratic pairing.

use super::scalar::{scmp, Scalar, Sign};
use super::{grid, CoveringError, CoveringResult, LatticeBasis};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Hard ceiling on candidate pops across one search attempt; beyond this the
/// basis is declared too degenerate (never a wrong answer).
const POP_BUDGET: u64 = 30_000_000;

/// Hard ceiling on a single line's candidate window.
const LINE_WINDOW_CAP: f64 = 5e6;

fn xgcd64(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
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

/// Strictness outcome for one inequality check.
enum Strict {
    Ok { grazing: bool },
    Fail,
}

/// `x > 0` with the flavor's boundary semantics: the float flavor accepts a
/// grazing value (within tolerance of the facet) but reports it.
fn strict_pos<S: Scalar>(x: &S) -> Strict {
    match x.sign_eps() {
        Sign::Pos => Strict::Ok { grazing: false },
        Sign::Boundary => {
            if S::EXACT {
                Strict::Fail
            } else {
                Strict::Ok { grazing: true }
            }
        }
        Sign::Neg => Strict::Fail,
    }
}

struct Line<S> {
    /// Bottom-facet witness and its coefficients.
    v2: [S; 2],
    n2: [i64; 2],
    /// Base point of the `det = sigma` mate line and its coefficients.
    v3_base: [S; 2],
    n3_base: [i64; 2],
    /// Candidate window and cursor direction (`k` advances by `step`).
    k_next: i64,
    k_last: i64,
    step: i64,
    exhausted: bool,
    /// The bottom witness grazed a facet (float flavor only).
    v2_grazing: bool,
}

struct Entry<S> {
    r: S,
    v2: [S; 2],
    v3: [S; 2],
    line: usize,
    k: i64,
    grazing: bool,
}

impl<S: Scalar> PartialEq for Entry<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_entry(other) == Ordering::Equal
    }
}
impl<S: Scalar> Eq for Entry<S> {}
impl<S: Scalar> PartialOrd for Entry<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<S: Scalar> Ord for Entry<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_entry(other)
    }
}

impl<S: Scalar> Entry<S> {
    /// Max-heap order: largest R first, then lexicographically smallest
    /// (v2, v3) first (reversed comparisons so the heap max is the canonical
    /// next candidate).
    fn cmp_entry(&self, other: &Self) -> Ordering {
        scmp(&self.r, &other.r)
            .then_with(|| scmp(&other.v2[0], &self.v2[0]))
            .then_with(|| scmp(&other.v2[1], &self.v2[1]))
            .then_with(|| scmp(&other.v3[0], &self.v3[0]))
            .then_with(|| scmp(&other.v3[1], &self.v3[1]))
    }
}

/// Exact covering radius of `Delta = {x >= 0, x_1 + x_2 <= 1}` for a planar
/// lattice, with the maximal empty simplex that attains it.
///
/// The search box is certified from the grid oracle: `rho <= grid + bound`,
/// so witnesses (whose coordinates are bounded by `rho` in absolute value)
/// lie inside the box. The retry doublings guard against float-edge cases
/// and are recorded in the result.
pub fn covering_radius_exact_2d<S: Scalar>(
    basis: &LatticeBasis<S>,
) -> Result<CoveringResult<S>, CoveringError> {
    if basis.dim() != 2 {
        return Err(CoveringError::DimensionUnsupported {
            got: basis.dim(),
            want: 2,
        });
    }
    // The radius and the canonical witnesses are lattice invariants, but the
    // search cost scales with the basis's orthogonality defect (coefficient
    // boxes inflate by it). Reduce first; callers routinely pass skewed
    // kernel bases.
    let basis = &reduce_basis(basis)?;
    let fb = LatticeBasis::<f64>::new(
        basis
            .rows()
            .iter()
            .map(|r| r.iter().map(Scalar::to_f64).collect())
            .collect(),
    )?;
    let lb = grid::covering_radius_grid(&fb, 32)?;
    let vub = lb + grid::grid_gap_bound(&fb, 32);
    let mut w = vub * 1.0625 + 1e-9;
    for attempt in 0..3u32 {
        if let Some(mut res) = search(basis, &fb, w)? {
            res.retries = attempt;
            debug_assert!(
                res.rho.to_f64() <= vub * 1.01 + 1e-6,
                "found radius above the certified upper bound"
            );
            return Ok(res);
        }
        w *= 2.0;
    }
    Err(CoveringError::EnumerationBoundExceeded)
}

/// Lagrange-reduces the basis: reduction steps are chosen on the f64 shadow
/// and applied to the scalar rows through an exact unimodular matrix, so the
/// lattice is unchanged. Steps must strictly shorten the longer row, which
/// terminates even when the shadow rounds.
fn reduce_basis<S: Scalar>(basis: &LatticeBasis<S>) -> Result<LatticeBasis<S>, CoveringError> {
    let mut b: Vec<[f64; 2]> = basis
        .rows()
        .iter()
        .map(|r| [r[0].to_f64(), r[1].to_f64()])
        .collect();
    let mut u = [[1i64, 0i64], [0, 1]];
    let norm = |v: &[f64; 2]| v[0] * v[0] + v[1] * v[1];
    for _ in 0..64 {
        if norm(&b[0]) > norm(&b[1]) {
            b.swap(0, 1);
            u.swap(0, 1);
        }
        let mu = (b[0][0] * b[1][0] + b[0][1] * b[1][1]) / norm(&b[0]);
        let k = mu.round();
        if k == 0.0 || k.abs() >= 9e15 {
            break;
        }
        let cand = [b[1][0] - k * b[0][0], b[1][1] - k * b[0][1]];
        if norm(&cand) >= norm(&b[1]) {
            break;
        }
        b[1] = cand;
        let k = k as i64;
        u[1] = [u[1][0] - k * u[0][0], u[1][1] - k * u[0][1]];
    }
    if u == [[1, 0], [0, 1]] {
        return LatticeBasis::new(basis.rows().to_vec());
    }
    let rows = basis.rows();
    let combine = |c: &[i64; 2]| -> Vec<S> {
        (0..2)
            .map(|x| {
                S::from_int(c[0]) * rows[0][x].clone() + S::from_int(c[1]) * rows[1][x].clone()
            })
            .collect()
    };
    LatticeBasis::new(vec![combine(&u[0]), combine(&u[1])])
}

fn search<S: Scalar>(
    basis: &LatticeBasis<S>,
    fb: &LatticeBasis<f64>,
    w: f64,
) -> Result<Option<CoveringResult<S>>, CoveringError> {
    let inv_f = fb.inverse();
    let w_s = S::from_f64(w);

    // Coefficient ranges covering the ambient box [0, w] x [-w, 0].
    let ((i_lo, i_hi), (j_lo, j_hi)) = coeff_box(&inv_f, [0.0, -w], [w, 0.0]);

    let mut lines: Vec<Line<S>> = Vec::new();
    for i in i_lo..=i_hi {
        for j in j_lo..=j_hi {
            if (i, j) == (0, 0) {
                continue;
            }
            let (g, alpha, beta) = xgcd64(i, j);
            if g != 1 {
                continue;
            }
            let v2 = basis.point(&[i, j]);
            let v2 = [v2[0].clone(), v2[1].clone()];
            let mut grazing = false;
            match strict_pos(&v2[0]) {
                Strict::Ok { grazing: gz } => grazing |= gz,
                Strict::Fail => continue,
            }
            match strict_pos(&(-v2[1].clone())) {
                Strict::Ok { grazing: gz } => grazing |= gz,
                Strict::Fail => continue,
            }
            if scmp(&v2[0], &w_s) == Ordering::Greater {
                continue;
            }
            for sigma in [1i64, -1] {
                // det((i, j), n3) = sigma with alpha i + beta j = 1.
                let n3_base = [-sigma * beta, sigma * alpha];
                if let Some(line) = make_line(basis, fb, &v2, [i, j], n3_base, w)? {
                    let mut line = line;
                    line.v2_grazing = grazing;
                    lines.push(line);
                }
            }
        }
    }

    let mut heap: BinaryHeap<Entry<S>> = BinaryHeap::new();
    for idx in 0..lines.len() {
        if let Some(e) = next_entry(&mut lines, idx) {
            heap.push(e);
        }
    }

    let mut pops: u64 = 0;
    while let Some(top) = heap.pop() {
        pops += 1;
        if pops > POP_BUDGET {
            return Err(CoveringError::EnumerationBoundExceeded);
        }
        let line_idx = top.line;
        let n2 = lines[line_idx].n2;
        let n3 = [
            lines[line_idx].n3_base[0] + top.k * n2[0],
            lines[line_idx].n3_base[1] + top.k * n2[1],
        ];
        match freeness(basis, &inv_f, &top, n2, n3) {
            Freeness::Free { grazed } => {
                let z = lines[line_idx].v2[1].clone();
                return Ok(Some(CoveringResult {
                    rho: top.r.clone(),
                    zeta: vec![S::zero(), z],
                    witnesses: vec![
                        vec![S::zero(), S::zero()],
                        vec![top.v2[0].clone(), top.v2[1].clone()],
                        vec![top.v3[0].clone(), top.v3[1].clone()],
                    ],
                    boundary_degenerate: lines[line_idx].v2_grazing || top.grazing || grazed,
                    retries: 0,
                }));
            }
            Freeness::Occupied => {
                if let Some(e) = next_entry(&mut lines, line_idx) {
                    heap.push(e);
                }
            }
        }
    }
    Ok(None)
}

/// Coefficient box covering an ambient axis box, conservatively widened.
fn coeff_box(inv: &[Vec<f64>], lo: [f64; 2], hi: [f64; 2]) -> ((i64, i64), (i64, i64)) {
    let mut mins = [f64::INFINITY; 2];
    let mut maxs = [f64::NEG_INFINITY; 2];
    for x in [lo[0], hi[0]] {
        for y in [lo[1], hi[1]] {
            for j in 0..2 {
                let c = x * inv[0][j] + y * inv[1][j];
                mins[j] = mins[j].min(c);
                maxs[j] = maxs[j].max(c);
            }
        }
    }
    (
        (mins[0].floor() as i64 - 1, maxs[0].ceil() as i64 + 1),
        (mins[1].floor() as i64 - 1, maxs[1].ceil() as i64 + 1),
    )
}

/// Builds the candidate line for one `(v2, sigma)` choice: the f64 window of
/// `k` values satisfying the facet inequalities, and the scan direction that
/// yields (R descending, v3 lexicographic) order. Exact per-candidate checks
/// happen in [`next_entry`]; the window only has to cover.
fn make_line<S: Scalar>(
    basis: &LatticeBasis<S>,
    fb: &LatticeBasis<f64>,
    v2: &[S; 2],
    n2: [i64; 2],
    n3_base: [i64; 2],
    w: f64,
) -> Result<Option<Line<S>>, CoveringError> {
    let v3b = basis.point(&n3_base);
    let v3b = [v3b[0].clone(), v3b[1].clone()];

    let v2f = [
        n2[0] as f64 * fb.rows()[0][0] + n2[1] as f64 * fb.rows()[1][0],
        n2[0] as f64 * fb.rows()[0][1] + n2[1] as f64 * fb.rows()[1][1],
    ];
    let v3bf = [
        n3_base[0] as f64 * fb.rows()[0][0] + n3_base[1] as f64 * fb.rows()[1][0],
        n3_base[0] as f64 * fb.rows()[0][1] + n3_base[1] as f64 * fb.rows()[1][1],
    ];
    let z = v2f[1];
    // v2 . e doubles as the facet-2 witness level and the per-k increment.
    let e2 = v2f[0] + v2f[1];
    let e3b = v3bf[0] + v3bf[1];

    let mut klo = -LINE_WINDOW_CAP;
    let mut khi = LINE_WINDOW_CAP;
    let mut infeasible = false;
    // Each constraint has the form c0 + k c1 > b.
    let mut add = |c0: f64, c1: f64, b: f64| {
        let scale = 1.0 + c0.abs() + b.abs();
        if c1.abs() <= 1e-14 * scale {
            if c0 <= b - 1e-6 * scale {
                infeasible = true;
            }
        } else if c1 > 0.0 {
            klo = klo.max((b - c0) / c1);
        } else {
            khi = khi.min((b - c0) / c1);
        }
    };
    add(v3bf[0], v2f[0], 0.0); // v3_x > 0
    add(v3bf[1] - z, v2f[1], 0.0); // v3_y > z
    add(e3b, e2, e2.max(0.0)); // R > 0, R + z > 0, and s < R combined
    add(-e3b, -e2, -(w * 1.001 + z)); // R <= w (performance cut)
    if infeasible || klo > khi + 1.0 {
        return Ok(None);
    }
    if khi - klo > LINE_WINDOW_CAP {
        return Err(CoveringError::EnumerationBoundExceeded);
    }
    let k_first = klo.floor() as i64 - 1;
    let k_last = khi.ceil() as i64 + 1;

    // Scan direction for (R desc, v3 lex asc): R moves with k by sign(ve);
    // on an exactly R-constant line, v3 lex order follows v2's leading sign.
    let ve_exact = v2[0].clone() + v2[1].clone();
    let descending_from_khi = match ve_exact.partial_cmp(&S::zero()) {
        Some(Ordering::Greater) => true,
        Some(Ordering::Less) => false,
        _ => match v2[0].partial_cmp(&S::zero()) {
            Some(Ordering::Greater) => false, // v3_x increases with k
            _ => true,                        // fall back to v3_y via v2_y < 0
        },
    };
    let (k_next, k_last, step) = if descending_from_khi {
        (k_last, k_first, -1i64)
    } else {
        (k_first, k_last, 1i64)
    };
    Ok(Some(Line {
        v2: v2.clone(),
        n2,
        v3_base: v3b,
        n3_base,
        k_next,
        k_last,
        step,
        exhausted: false,
        v2_grazing: false,
    }))
}

/// Advances a line cursor to its next exactly-valid candidate, if any.
fn next_entry<S: Scalar>(lines: &mut [Line<S>], idx: usize) -> Option<Entry<S>> {
    let line = &mut lines[idx];
    if line.exhausted {
        return None;
    }
    loop {
        let k = line.k_next;
        let done = k == line.k_last;
        if done {
            line.exhausted = true;
        } else {
            line.k_next += line.step;
        }
        let kv = S::from_int(k);
        let v3 = [
            line.v3_base[0].clone() + kv.clone() * line.v2[0].clone(),
            line.v3_base[1].clone() + kv * line.v2[1].clone(),
        ];
        let z = line.v2[1].clone();
        let r = v3[0].clone() + v3[1].clone() - z.clone();
        let mut grazing = false;
        let mut ok = true;
        for value in [
            v3[0].clone(),                         // hypotenuse witness right of facet 1
            v3[1].clone() - z.clone(),             // hypotenuse witness above facet 2
            r.clone(),                             // positive radius
            r.clone() + z.clone(),                 // origin inside facet 1
            r.clone() - line.v2[0].clone(),        // bottom witness left of hypotenuse
        ] {
            match strict_pos(&value) {
                Strict::Ok { grazing: gz } => grazing |= gz,
                Strict::Fail => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Some(Entry {
                r,
                v2: line.v2.clone(),
                v3,
                line: idx,
                k,
                grazing,
            });
        }
        if done {
            return None;
        }
    }
}

enum Freeness {
    Free { grazed: bool },
    Occupied,
}

/// Is the open simplex `R Delta^o + (0, z)` free of lattice points?
///
/// Probes a few coefficient neighborhoods near the centroid and the corners
/// first (cheap rejection), then enumerates the full coefficient box. The
/// witnesses themselves are excluded by coefficient identity.
fn freeness<S: Scalar>(
    basis: &LatticeBasis<S>,
    inv_f: &[Vec<f64>],
    entry: &Entry<S>,
    n2: [i64; 2],
    n3: [i64; 2],
) -> Freeness {
    let r_f = entry.r.to_f64();
    let z_f = entry.v2[1].to_f64();
    let z = entry.v2[1].clone();

    let is_witness = |i: i64, j: i64| (i == 0 && j == 0) || ([i, j] == n2) || ([i, j] == n3);
    let mut grazed = false;
    // Strictly inside <=> all three margins positive beyond tolerance.
    let test = |i: i64, j: i64, grazed: &mut bool| -> bool {
        if is_witness(i, j) {
            return false;
        }
        let v = basis.point(&[i, j]);
        let m1 = v[0].clone();
        let m2 = v[1].clone() - z.clone();
        let m3 = entry.r.clone() - m1.clone() - m2.clone();
        let signs = [m1.sign_eps(), m2.sign_eps(), m3.sign_eps()];
        if signs.iter().all(|s| *s == Sign::Pos) {
            return true;
        }
        if !S::EXACT && signs.iter().all(|s| *s != Sign::Neg) {
            *grazed = true;
        }
        false
    };

    // Probe neighborhoods: centroid plus points pulled toward each corner.
    let centers = [
        (r_f / 3.0, z_f + r_f / 3.0),
        (0.04 * r_f, z_f + 0.04 * r_f),
        (0.92 * r_f, z_f + 0.04 * r_f),
        (0.04 * r_f, z_f + 0.92 * r_f),
    ];
    for (cx, cy) in centers {
        let ci = (cx * inv_f[0][0] + cy * inv_f[1][0]).round() as i64;
        let cj = (cx * inv_f[0][1] + cy * inv_f[1][1]).round() as i64;
        for di in -1..=1 {
            for dj in -1..=1 {
                if test(ci + di, cj + dj, &mut grazed) {
                    return Freeness::Occupied;
                }
            }
        }
    }

    let ((i_lo, i_hi), (j_lo, j_hi)) = coeff_box(inv_f, [0.0, z_f], [r_f, z_f + r_f]);
    for i in i_lo..=i_hi {
        for j in j_lo..=j_hi {
            if test(i, j, &mut grazed) {
                return Freeness::Occupied;
            }
        }
    }
    Freeness::Free { grazed }
}

/// Re-verification used by diagnostics and tests: checks witness lattice
/// membership, facet interiority, and lattice-freeness in f64 from scratch.
pub(super) fn verify_result<S: Scalar>(
    basis: &LatticeBasis<S>,
    res: &CoveringResult<S>,
) -> bool {
    let fb: Vec<Vec<f64>> = basis
        .rows()
        .iter()
        .map(|r| r.iter().map(Scalar::to_f64).collect())
        .collect();
    let Ok(fbasis) = LatticeBasis::<f64>::new(fb) else {
        return false;
    };
    let inv = fbasis.inverse();
    let rho = res.rho.to_f64();
    let zeta = [res.zeta[0].to_f64(), res.zeta[1].to_f64()];
    if res.witnesses.len() != 3 || rho <= 0.0 {
        return false;
    }
    let tol = 1e-6 * (1.0 + rho);

    let wpts: Vec<[f64; 2]> = res
        .witnesses
        .iter()
        .map(|w| [w[0].to_f64(), w[1].to_f64()])
        .collect();
    let mut wcoeffs = Vec::new();
    for w in &wpts {
        let ci = (w[0] * inv[0][0] + w[1] * inv[1][0]).round();
        let cj = (w[0] * inv[0][1] + w[1] * inv[1][1]).round();
        let rx = ci * fbasis.rows()[0][0] + cj * fbasis.rows()[1][0];
        let ry = ci * fbasis.rows()[0][1] + cj * fbasis.rows()[1][1];
        if (rx - w[0]).abs() > tol || (ry - w[1]).abs() > tol {
            return false; // not a lattice point
        }
        wcoeffs.push((ci as i64, cj as i64));
    }

    let [w1, w2, w3] = [wpts[0], wpts[1], wpts[2]];
    let on_facets = (w1[0] - zeta[0]).abs() <= tol
        && w1[1] >= zeta[1] - tol
        && w1[1] <= zeta[1] + rho + tol
        && (w2[1] - zeta[1]).abs() <= tol
        && w2[0] >= zeta[0] - tol
        && w2[0] <= zeta[0] + rho + tol
        && ((w3[0] - zeta[0]) + (w3[1] - zeta[1]) - rho).abs() <= tol
        && w3[0] >= zeta[0] - tol
        && w3[1] >= zeta[1] - tol;
    if !on_facets {
        return false;
    }

    // Freeness by direct enumeration.
    let ((i_lo, i_hi), (j_lo, j_hi)) = coeff_box(
        &inv,
        [zeta[0], zeta[1]],
        [zeta[0] + rho, zeta[1] + rho],
    );
    for i in i_lo..=i_hi {
        for j in j_lo..=j_hi {
            if wcoeffs.contains(&(i, j)) {
                continue;
            }
            let vx = i as f64 * fbasis.rows()[0][0] + j as f64 * fbasis.rows()[1][0];
            let vy = i as f64 * fbasis.rows()[0][1] + j as f64 * fbasis.rows()[1][1];
            let m1 = vx - zeta[0];
            let m2 = vy - zeta[1];
            let m3 = rho - m1 - m2;
            if m1 > tol && m2 > tol && m3 > tol {
                return false;
            }
        }
    }
    true
}
