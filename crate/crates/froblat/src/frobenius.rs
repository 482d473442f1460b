//! Exact Frobenius numbers.
//!
//! For a primitive `a = (a_1, ..., a_d)` with all entries >= 2, the Frobenius
//! number `F(a)` is the largest integer that is not a nonnegative integer
//! combination of the `a_i`. The solver reduces to residue classes modulo
//! `m = min(a)`: with `N_r` the smallest positive representable integer
//! congruent to `r (mod m)`, every representable integer in class `r` is
//! `N_r + k m`, so `F(a) = max_{r != 0} N_r - m`. The `N_r` are single-source
//! shortest paths in a graph on `Z/mZ` with an edge `r -> r + a_j (mod m)` of
//! weight `a_j` for every coefficient, solved by Dijkstra's algorithm.

use crate::intvec::PrimitiveVector;
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use thiserror::Error;

/// Solver memory is proportional to `min(a)`; refuse beyond this.
const MODULUS_CAP: i64 = 100_000_000;

/// Brute-force scan windows are capped here.
const SCAN_CAP: i128 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrobeniusError {
    #[error("every entry must be >= 2, got {0}")]
    EntryTooSmall(i64),
    #[error("entries {0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("modulus {0} exceeds the solver cap {MODULUS_CAP}")]
    ModulusTooLarge(i64),
    #[error("scan bound {0} is too small to certify the answer")]
    BoundTooSmall(i128),
    #[error("scan bound {0} exceeds the cap {SCAN_CAP}")]
    BoundTooLarge(i128),
}

/// Frobenius number together with the residue table that witnesses it.
#[derive(Debug, Clone, Serialize)]
pub struct FrobeniusResult {
    /// The Frobenius number `F(a)`.
    pub f: i128,
    /// Modulus used for the residue reduction, `min(a)`.
    pub modulus: i64,
    /// `table[r]` is the smallest positive representable integer congruent
    /// to `r` modulo `modulus`; `table[0] = modulus`.
    pub table: Vec<i128>,
}

/// Closed form for two coprime coefficients: `a1 a2 - a1 - a2`.
pub fn sylvester(a1: i64, a2: i64) -> Result<i128, FrobeniusError> {
    for v in [a1, a2] {
        if v < 2 {
            return Err(FrobeniusError::EntryTooSmall(v));
        }
    }
    let mut g = (a1, a2);
    while g.1 != 0 {
        g = (g.1, g.0 % g.1);
    }
    if g.0 != 1 {
        return Err(FrobeniusError::NotCoprime(a1, a2));
    }
    Ok(a1 as i128 * a2 as i128 - a1 as i128 - a2 as i128)
}

fn check_entries(a: &PrimitiveVector) -> Result<(), FrobeniusError> {
    match a.coords().iter().find(|&&c| c < 2) {
        Some(&c) => Err(FrobeniusError::EntryTooSmall(c)),
        None => Ok(()),
    }
}

/// Exact Frobenius number of a primitive vector with entries >= 2.
///
/// Runs Dijkstra on `min(a)` residue classes; edges whose coefficient is a
/// multiple of the modulus are loops and are skipped. Primitivity makes the
/// graph strongly connected, so every class gets a finite distance.
pub fn frobenius(a: &PrimitiveVector) -> Result<FrobeniusResult, FrobeniusError> {
    check_entries(a)?;
    let m = *a.coords().iter().min().expect("dim >= 2");
    if m > MODULUS_CAP {
        return Err(FrobeniusError::ModulusTooLarge(m));
    }
    let m_us = m as usize;
    let mut edges: Vec<i64> = a
        .coords()
        .iter()
        .copied()
        .filter(|&c| c % m != 0)
        .collect();
    edges.sort_unstable();
    edges.dedup();

    let mut dist = vec![i128::MAX; m_us];
    let mut done = vec![false; m_us];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0i128, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if done[r] {
            continue;
        }
        done[r] = true;
        for &w in &edges {
            let to = (r + (w % m) as usize) % m_us;
            let nd = d + w as i128;
            if nd < dist[to] {
                dist[to] = nd;
                heap.push(Reverse((nd, to)));
            }
        }
    }

    let f = dist[1..]
        .iter()
        .map(|&d| {
            debug_assert!(d < i128::MAX, "primitive input leaves no class unreachable");
            d - m as i128
        })
        .max()
        .unwrap_or(1 - m as i128); // m == 1 cannot occur (entries >= 2)
    dist[0] = m as i128;
    Ok(FrobeniusResult {
        f,
        modulus: m,
        table: dist,
    })
}

/// Brute force with an explicit scan bound: marks representable integers in
/// `[0, bound]` and certifies the answer by checking that the `min(a)`
/// integers after the reported Frobenius number are all representable (then
/// everything larger is too, by adding copies of `min(a)`).
pub fn frobenius_bruteforce_with_bound(
    a: &PrimitiveVector,
    bound: i128,
) -> Result<i128, FrobeniusError> {
    check_entries(a)?;
    if bound > SCAN_CAP {
        return Err(FrobeniusError::BoundTooLarge(bound));
    }
    let m = *a.coords().iter().min().expect("dim >= 2") as i128;
    let n = bound as usize;
    let mut rep = vec![false; n + 1];
    rep[0] = true;
    for v in 1..=n {
        rep[v] = a
            .coords()
            .iter()
            .any(|&c| v >= c as usize && rep[v - c as usize]);
    }
    let f = match (1..=n).rev().find(|&v| !rep[v]) {
        Some(v) => v as i128,
        None => return Err(FrobeniusError::BoundTooSmall(bound)),
    };
    let certified = f + m <= bound && (1..=m).all(|k| rep[(f + k) as usize]);
    if !certified {
        return Err(FrobeniusError::BoundTooSmall(bound));
    }
    Ok(f)
}

/// Brute-force Frobenius number with an automatic scan bound.
///
/// A shortest path in the residue graph uses at most `min(a) - 1` edges, so
/// `F(a) + min(a) <= (min(a) - 1) max(a)`; the scan window `2 min(a) max(a)`
/// therefore always certifies. Intended as an oracle for small inputs.
pub fn frobenius_bruteforce(a: &PrimitiveVector) -> Result<i128, FrobeniusError> {
    check_entries(a)?;
    let min = *a.coords().iter().min().expect("dim >= 2") as i128;
    let max = *a.coords().iter().max().expect("dim >= 2") as i128;
    frobenius_bruteforce_with_bound(a, 2 * min * max)
}
