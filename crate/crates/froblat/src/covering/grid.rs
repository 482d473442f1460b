//! Grid lower-bound oracle for covering radii.
//!
//! `g(zeta) = min {(v - zeta) . e : v in L, v > zeta componentwise}` is
//! evaluated on a regular grid of translates inside one fundamental domain;
//! the maximum is a lower bound for `rho = sup_zeta g(zeta)`.
//!
//! Convergence bound: pick `zeta*` near the supremum and push it up to
//! `zeta* + delta e` with `delta = sum_i ||b_i||_inf / (2 grid_n)`. Some grid
//! point `zeta'` is within `delta` of the pushed point in every ambient
//! coordinate, hence `zeta' = zeta* + w` with `0 <= w <= 2 delta e`. Every
//! lattice point strictly above `zeta'` is strictly above `zeta*`, so its
//! objective is at least `rho - w . e >= rho - 2 n delta`. That gives
//! `rho - max_grid g <= n * sum_i ||b_i||_inf / grid_n`, the value published
//! by [`grid_gap_bound`].

use super::{CoveringError, LatticeBasis};

/// Gauss-reduce a planar basis: shortest vector first, second vector with
/// projection coefficient in [-1/2, 1/2]. The lattice is unchanged.
///
/// A step is taken only if it strictly shortens the longer vector; at a
/// projection coefficient of exactly +-1/2 both roundings tie and reducing
/// anyway would ping-pong forever.
fn gauss_reduce(rows: &[Vec<f64>]) -> [[f64; 2]; 2] {
    let mut b1 = [rows[0][0], rows[0][1]];
    let mut b2 = [rows[1][0], rows[1][1]];
    loop {
        let n1 = b1[0] * b1[0] + b1[1] * b1[1];
        let n2 = b2[0] * b2[0] + b2[1] * b2[1];
        if n2 < n1 {
            std::mem::swap(&mut b1, &mut b2);
            continue;
        }
        let mu = ((b1[0] * b2[0] + b1[1] * b2[1]) / n1).round();
        let c = [b2[0] - mu * b1[0], b2[1] - mu * b1[1]];
        if mu == 0.0 || c[0] * c[0] + c[1] * c[1] >= n2 {
            return [b1, b2];
        }
        b2 = c;
    }
}

/// Published convergence bound: `rho - covering_radius_grid <= this`.
///
/// In dimension 2 the bound (like the oracle) is taken on the Gauss-reduced
/// basis, which only tightens it.
pub fn grid_gap_bound(basis: &LatticeBasis<f64>, grid_n: usize) -> f64 {
    let n = basis.dim();
    let sum_inf: f64 = if n == 2 {
        gauss_reduce(basis.rows())
            .iter()
            .map(|r| r.iter().fold(0f64, |m, x| m.max(x.abs())))
            .sum()
    } else {
        basis
            .rows()
            .iter()
            .map(|r| r.iter().fold(0f64, |m, x| m.max(x.abs())))
            .sum()
    };
    n as f64 * sum_inf / grid_n as f64
}

/// `g(zeta)` for a planar lattice, scanning the O(1) basis-vector rows that
/// meet the region `{v > zeta, (v - zeta) . e <= v_init}`.
fn deep_value_2d(b1: [f64; 2], b2: [f64; 2], inv: &[[f64; 2]; 2], zeta: [f64; 2]) -> f64 {
    // Unconditional upper bound on g: rounding coefficients of
    // zeta + (h1 + e, h2 + e) lands componentwise within [e, 2h + e] above
    // zeta, where h_j is half the j-th column 1-norm.
    let h1 = 0.5 * (b1[0].abs() + b2[0].abs());
    let h2 = 0.5 * (b1[1].abs() + b2[1].abs());
    let v_init = 2.0 * (h1 + h2) + 1.0;
    let mut best = v_init;

    // Coefficient ranges of the bounding box [zeta, zeta + v_init e].
    let (mut k2_lo, mut k2_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut k1_lo, mut k1_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for cx in [zeta[0], zeta[0] + v_init] {
        for cy in [zeta[1], zeta[1] + v_init] {
            let c1 = cx * inv[0][0] + cy * inv[1][0];
            let c2 = cx * inv[0][1] + cy * inv[1][1];
            k1_lo = k1_lo.min(c1);
            k1_hi = k1_hi.max(c1);
            k2_lo = k2_lo.min(c2);
            k2_hi = k2_hi.max(c2);
        }
    }
    let k1_range = ((k1_lo.floor() - 1.0) as i64, (k1_hi.ceil() + 1.0) as i64);

    for k2 in (k2_lo.floor() as i64 - 1)..=(k2_hi.ceil() as i64 + 1) {
        let base = [k2 as f64 * b2[0], k2 as f64 * b2[1]];
        // Feasible k1 interval from v_x > zeta_x and v_y > zeta_y; the
        // objective is linear in k1, so the minimum sits at an endpoint.
        let mut lo = k1_range.0 as f64;
        let mut hi = k1_range.1 as f64;
        let mut feasible = true;
        for (bc, zc, off) in [(b1[0], zeta[0], base[0]), (b1[1], zeta[1], base[1])] {
            if bc.abs() < 1e-300 {
                if off <= zc {
                    feasible = false;
                    break;
                }
            } else {
                let bound = (zc - off) / bc;
                if bc > 0.0 {
                    lo = lo.max(bound);
                } else {
                    hi = hi.min(bound);
                }
            }
        }
        if !feasible {
            continue;
        }
        let k_first = lo.floor() as i64 + 1; // strict: smallest integer > lo
        let k_last = if hi.fract() == 0.0 {
            hi as i64 - 1
        } else {
            hi.floor() as i64
        };
        for k1 in [k_first, k_last] {
            if k1 < k_first || k1 > k_last {
                continue;
            }
            let vx = base[0] + k1 as f64 * b1[0];
            let vy = base[1] + k1 as f64 * b1[1];
            if vx > zeta[0] && vy > zeta[1] {
                best = best.min(vx - zeta[0] + vy - zeta[1]);
            }
        }
    }
    best
}

/// `g(zeta)` in any dimension by odometer enumeration of the coefficient box
/// covering `[zeta, zeta + v_init e]`.
fn deep_value_nd(basis: &LatticeBasis<f64>, inv: &[Vec<f64>], zeta: &[f64]) -> f64 {
    let n = basis.dim();
    let h: Vec<f64> = (0..n)
        .map(|j| 0.5 * basis.rows().iter().map(|r| r[j].abs()).sum::<f64>())
        .collect();
    // Rounding all coefficients of any target point moves it by at most h_j
    // per coordinate, so some lattice point lies in (zeta, zeta + 2h + e],
    // giving the unconditional bound v_init on the value.
    let v_init = 2.0 * h.iter().sum::<f64>() + 1.0;

    // A point with objective < g has every margin < g, so it lies in the
    // box (zeta, zeta + g e). Scan a small box first and grow it toward the
    // certified bound only while nothing inside dominates zeta.
    let mut g = (2.0 * h.iter().cloned().fold(0f64, f64::max) + 1.0).min(v_init);
    loop {
        let best = scan_above_box(basis, inv, zeta, g, v_init);
        if best < g || g >= v_init {
            return best;
        }
        g = (2.0 * g).min(v_init);
    }
}

/// Minimum objective over lattice points strictly above `zeta` within the
/// coefficient box covering `[zeta, zeta + extent * e]`; `cap` if none.
fn scan_above_box(
    basis: &LatticeBasis<f64>,
    inv: &[Vec<f64>],
    zeta: &[f64],
    extent: f64,
    cap: f64,
) -> f64 {
    let n = basis.dim();
    let mut best = cap;
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    // 2^n corners of the bounding box.
    for mask in 0..(1usize << n) {
        let corner: Vec<f64> = (0..n)
            .map(|j| zeta[j] + if mask >> j & 1 == 1 { extent } else { 0.0 })
            .collect();
        for j in 0..n {
            let c: f64 = (0..n).map(|i| corner[i] * inv[i][j]).sum();
            lo[j] = lo[j].min(c.floor() as i64 - 1);
            hi[j] = hi[j].max(c.ceil() as i64 + 1);
        }
    }

    let mut k = lo.clone();
    'outer: loop {
        let mut obj = 0.0;
        let mut above = true;
        for j in 0..n {
            let vj: f64 = (0..n).map(|i| k[i] as f64 * basis.rows()[i][j]).sum();
            if vj <= zeta[j] {
                above = false;
                break;
            }
            obj += vj - zeta[j];
        }
        if above {
            best = best.min(obj);
        }
        for j in (0..n).rev() {
            if k[j] < hi[j] {
                k[j] += 1;
                for i in j + 1..n {
                    k[i] = lo[i];
                }
                continue 'outer;
            }
        }
        break;
    }
    best
}

/// Lower bound for the covering radius from a `grid_n`-per-axis grid of
/// translates over one fundamental domain. Guaranteed `<=` the true value;
/// the deficit is at most [`grid_gap_bound`].
pub fn covering_radius_grid(
    basis: &LatticeBasis<f64>,
    grid_n: usize,
) -> Result<f64, CoveringError> {
    if grid_n == 0 {
        return Err(CoveringError::ZeroGrid);
    }
    let n = basis.dim();
    match n {
        1 => {
            let b = basis.rows()[0][0].abs();
            // g for a line lattice: distance from zeta up to the next point;
            // the grid maximum over [0, b) is (grid_n - 1)/grid_n * b... the
            // supremum b is approached from below as the grid refines.
            let mut best = 0f64;
            for i in 0..grid_n {
                let zeta = i as f64 / grid_n as f64 * b;
                let k = (zeta / b).floor() + 1.0;
                best = best.max(k * b - zeta);
            }
            Ok(best)
        }
        2 => {
            let [b1, b2] = gauss_reduce(basis.rows());
            let reduced = LatticeBasis::new(vec![b1.to_vec(), b2.to_vec()])?;
            let inv_v = reduced.inverse();
            let inv = [[inv_v[0][0], inv_v[0][1]], [inv_v[1][0], inv_v[1][1]]];
            let mut best = 0f64;
            for i in 0..grid_n {
                for j in 0..grid_n {
                    let t1 = i as f64 / grid_n as f64;
                    let t2 = j as f64 / grid_n as f64;
                    let zeta = [t1 * b1[0] + t2 * b2[0], t1 * b1[1] + t2 * b2[1]];
                    let g = deep_value_2d(b1, b2, &inv, zeta);
                    best = best.max(g);
                }
            }
            Ok(best)
        }
        _ => {
            let inv = basis.inverse();
            let mut best = 0f64;
            let mut t = vec![0usize; n];
            'grid: loop {
                let zeta: Vec<f64> = (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|i| t[i] as f64 / grid_n as f64 * basis.rows()[i][j])
                            .sum()
                    })
                    .collect();
                best = best.max(deep_value_nd(basis, &inv, &zeta));
                for j in (0..n).rev() {
                    if t[j] + 1 < grid_n {
                        t[j] += 1;
                        t[j + 1..].iter_mut().for_each(|x| *x = 0);
                        continue 'grid;
                    }
                }
                break;
            }
            Ok(best)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity2() -> LatticeBasis<f64> {
        LatticeBasis::from_integer_rows(&[vec![1, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn integer_lattice_approaches_two() {
        let b = identity2();
        let g = covering_radius_grid(&b, 64).unwrap();
        let bound = grid_gap_bound(&b, 64);
        assert!(g <= 2.0 + 1e-12);
        assert!(g >= 2.0 - bound, "g = {g}, bound = {bound}");
        // The strict constraint attains the supremum at zeta = 0 itself:
        // (1,1) strictly dominates it, so the grid maximum is exactly 2.
        assert!((g - 2.0).abs() < 1e-12);
    }

    #[test]
    fn line_lattice() {
        let b = LatticeBasis::from_integer_rows(&[vec![1]]).unwrap();
        let g = covering_radius_grid(&b, 128).unwrap();
        assert!(g <= 1.0 && g >= 1.0 - grid_gap_bound(&b, 128));
    }

    #[test]
    fn resolutions_sandwich_the_same_value() {
        // Any grid value is <= rho, and any grid value + its bound is >= rho,
        // so coarse <= fine + fine_bound for every resolution pair.
        let rows = vec![vec![0.9, 0.1], vec![-0.3, 1.15]];
        let b = LatticeBasis::new(rows).unwrap();
        let evals: Vec<(f64, f64)> = [8usize, 16, 32, 64, 128]
            .iter()
            .map(|&gn| {
                (
                    covering_radius_grid(&b, gn).unwrap(),
                    grid_gap_bound(&b, gn),
                )
            })
            .collect();
        for (g_coarse, _) in &evals {
            for (g_fine, bound_fine) in &evals {
                assert!(g_coarse <= &(g_fine + bound_fine + 1e-12));
            }
        }
    }

    #[test]
    fn cubic_lattice_in_three_dimensions() {
        let b = LatticeBasis::from_integer_rows(&[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ])
        .unwrap();
        let g = covering_radius_grid(&b, 8).unwrap();
        // (1,1,1) strictly dominates zeta = 0, so the maximum 3 is on-grid.
        assert!((g - 3.0).abs() <= 1e-12, "g = {g}");
    }

    #[test]
    fn rejects_zero_grid() {
        assert_eq!(
            covering_radius_grid(&identity2(), 0),
            Err(CoveringError::ZeroGrid)
        );
    }
}
