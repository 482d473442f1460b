//! The exact identity between Frobenius numbers and covering radii.
//!
//! For a primitive `a = (a_1, ..., a_d)` with entries at least 2, write
//! `a' = (a_1, ..., a_{d-1})` and let `L_a` be the residue lattice
//! `{m in Z^{d-1} : m . a' == 0 mod a_d}`. Then
//!
//! ```text
//! F(a) + a_1 + ... + a_d = rho_w(L_a)
//! ```
//!
//! where `rho_w` is the covering radius of `{x >= 0 : x . a' <= 1}` with
//! respect to `L_a`. Both sides are integers and are computed independently
//! here (shortest paths on residues vs. empty-simplex search), so the
//! equality is asserted exactly on every call; a violation is reported as an
//! error rather than silently propagated, since it can only mean a bug.
//!
//! Dividing by `(a_1 ... a_d)^{1/(d-1)}` turns the right-hand side into the
//! covering radius of a unit-covolume lattice, which is what makes Frobenius
//! statistics comparable to random-lattice statistics.

use crate::covering::{
    covering_radius_grid, covering_radius_weighted, CoveringError, LatticeBasis,
};
use crate::frobenius::{frobenius, FrobeniusError};
use crate::intvec::{residue_sublattice, IntVecError, PrimitiveVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

/// Grid resolution for the lower-bound fallback in dimensions the exact
/// planar engine does not cover.
const FALLBACK_GRID_N: usize = 16;

#[derive(Debug, Error)]
pub enum BridgeError {
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error(transparent)]
    IntVec(#[from] IntVecError),
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error("bridge identity violated: F + sum(a) = {expected} but rho_w = {found}")]
    IdentityViolated { expected: i128, found: String },
}

/// The weighted covering radius attached to `a`: exact when the residue
/// lattice is 1- or 2-dimensional (`d <= 3`), otherwise a certified grid
/// lower bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum RhoW {
    Exact(i128),
    GridLowerBound(f64),
}

#[derive(Debug, Clone, Serialize)]
pub struct BridgeResult {
    pub a: Vec<i64>,
    pub f: i128,
    pub rho_w: RhoW,
    /// `F / (prod a)^{1/(d-1)}`.
    pub scaled_raw: f64,
    /// `(F + sum a) / (prod a)^{1/(d-1)}`, the covering radius of the
    /// normalized lattice.
    pub scaled_shifted: f64,
}

fn require_entries_at_least_two(a: &PrimitiveVector) -> Result<(), BridgeError> {
    if let Some(&c) = a.coords().iter().find(|&&c| c < 2) {
        return Err(BridgeError::Frobenius(FrobeniusError::EntryTooSmall(c)));
    }
    Ok(())
}

/// Frobenius number, weighted covering radius, and the scaled statistics of
/// one primitive vector, with the connecting identity verified exactly.
pub fn bridge(a: &PrimitiveVector) -> Result<BridgeResult, BridgeError> {
    require_entries_at_least_two(a)?;
    let d = a.dim();
    let f = frobenius(a)?.f;
    let sum = a.sum();
    let expected = f + sum;

    let rho_w = if d <= 3 {
        let rows = residue_sublattice(a)?;
        let weights = &a.coords()[..d - 1];
        let (rho, _) = covering_radius_weighted(&rows, weights)?;
        if rho != BigRational::from_integer(BigInt::from(expected)) {
            return Err(BridgeError::IdentityViolated {
                expected,
                found: rho.to_string(),
            });
        }
        RhoW::Exact(expected)
    } else {
        let rows = residue_sublattice(a)?;
        let weights = &a.coords()[..d - 1];
        let scaled: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(weights)
                    .map(|(&x, &w)| x as f64 * w as f64)
                    .collect()
            })
            .collect();
        let fb = LatticeBasis::new(scaled)?;
        RhoW::GridLowerBound(covering_radius_grid(&fb, FALLBACK_GRID_N)?)
    };

    let scale = (a.product() as f64).powf(1.0 / (d as f64 - 1.0));
    Ok(BridgeResult {
        a: a.coords().to_vec(),
        f,
        rho_w,
        scaled_raw: f as f64 / scale,
        scaled_shifted: expected as f64 / scale,
    })
}

/// The unit-covolume lattice whose covering radius equals `scaled_shifted`:
/// `(prod a)^{-1/(d-1)} * L_a * diag(a')`.
pub fn normalized_lattice(a: &PrimitiveVector) -> Result<LatticeBasis<f64>, BridgeError> {
    require_entries_at_least_two(a)?;
    let d = a.dim();
    let rows = residue_sublattice(a)?;
    let weights = &a.coords()[..d - 1];
    let scale = (a.product() as f64).powf(-1.0 / (d as f64 - 1.0));
    let scaled: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .zip(weights)
                .map(|(&x, &w)| x as f64 * w as f64 * scale)
                .collect()
        })
        .collect();
    Ok(LatticeBasis::new(scaled)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::covering_radius_exact_2d;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pv(coords: &[i64]) -> PrimitiveVector {
        PrimitiveVector::new(coords.to_vec()).unwrap()
    }

    fn random_triple(rng: &mut ChaCha8Rng, max: i64) -> PrimitiveVector {
        loop {
            let coords: Vec<i64> = (0..3).map(|_| rng.gen_range(2..=max)).collect();
            if let Ok(p) = PrimitiveVector::new(coords) {
                return p;
            }
        }
    }

    #[test]
    fn three_four_five() {
        let r = bridge(&pv(&[3, 4, 5])).unwrap();
        assert_eq!(r.f, 2);
        assert_eq!(r.rho_w, RhoW::Exact(14));
        let scale = 60f64.sqrt();
        assert!((r.scaled_shifted - 14.0 / scale).abs() <= 1e-12);
        assert!((r.scaled_raw - 2.0 / scale).abs() <= 1e-12);
    }

    #[test]
    fn coprime_pair_is_the_sylvester_case() {
        let r = bridge(&pv(&[2, 3])).unwrap();
        assert_eq!(r.f, 1);
        assert_eq!(r.rho_w, RhoW::Exact(6));
        // d = 2 collapses to the degenerate law: the shifted statistic is
        // (a1 a2) / (a1 a2) = 1 for every coprime pair.
        assert_eq!(r.scaled_shifted, 1.0);
    }

    #[test]
    fn repeated_entries_are_fine() {
        let r = bridge(&pv(&[2, 2, 3])).unwrap();
        assert_eq!(r.f, 1);
        assert_eq!(r.rho_w, RhoW::Exact(8));
    }

    #[test]
    fn entries_below_two_are_rejected() {
        assert!(matches!(
            bridge(&pv(&[1, 2, 3])),
            Err(BridgeError::Frobenius(FrobeniusError::EntryTooSmall(1)))
        ));
        assert!(matches!(
            normalized_lattice(&pv(&[1, 2])),
            Err(BridgeError::Frobenius(FrobeniusError::EntryTooSmall(1)))
        ));
    }

    #[test]
    fn identity_holds_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let a = random_triple(&mut rng, 60);
            let r = bridge(&a).unwrap();
            assert_eq!(r.rho_w, RhoW::Exact(r.f + a.sum()), "a = {:?}", a.coords());
            assert!(
                r.scaled_shifted >= 3f64.sqrt() - 1e-9,
                "a = {:?}: {} below the planar covering bound",
                a.coords(),
                r.scaled_shifted
            );
        }
    }

    #[test]
    fn two_dimensional_law_is_degenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut done = 0;
        while done < 50 {
            let x = rng.gen_range(2..=80i64);
            let y = rng.gen_range(2..=80i64);
            let Ok(a) = PrimitiveVector::new(vec![x, y]) else {
                continue;
            };
            done += 1;
            let r = bridge(&a).unwrap();
            assert!((r.scaled_shifted - 1.0).abs() <= 1e-12, "a = ({x}, {y})");
        }
    }

    #[test]
    fn normalized_lattice_of_the_standard_example() {
        let b = normalized_lattice(&pv(&[3, 4, 5])).unwrap();
        let s = 1.0 / 60f64.sqrt();
        let expect = [[3.0 * s, 12.0 * s], [0.0, 20.0 * s]];
        for (row, erow) in b.rows().iter().zip(expect) {
            for (x, e) in row.iter().zip(erow) {
                assert!((x - e).abs() <= 1e-12);
            }
        }
        let rho = covering_radius_exact_2d(&b).unwrap().rho;
        let r = bridge(&pv(&[3, 4, 5])).unwrap();
        assert!((rho - r.scaled_shifted).abs() <= 1e-9);
    }

    #[test]
    fn normalized_lattice_has_unit_covolume() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..50 {
            let a = random_triple(&mut rng, 60);
            let b = normalized_lattice(&a).unwrap();
            assert!(
                (b.covolume() - 1.0).abs() <= 1e-12,
                "a = {:?}: covolume {}",
                a.coords(),
                b.covolume()
            );
        }
    }

    #[test]
    fn four_dimensional_input_gets_a_flagged_lower_bound() {
        let r = bridge(&pv(&[2, 3, 5, 7])).unwrap();
        assert_eq!(r.f, 1); // 2 and 3 alone already leave only 1 uncovered
        let RhoW::GridLowerBound(v) = r.rho_w else {
            panic!("expected a grid lower bound, got {:?}", r.rho_w);
        };
        assert!(v > 0.0 && v <= 18.0 + 1e-6, "lower bound {v}");
    }
}
