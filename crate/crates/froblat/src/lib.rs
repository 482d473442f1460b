//! Frobenius numbers, covering radii of simplices with respect to lattices,
//! and the survival statistics that connect the two.
//!
//! The library is organised around one identity: for a primitive integer
//! vector `a = (a_1, ..., a_d)` with all entries at least 2, the Frobenius
//! number satisfies
//!
//! ```text
//! F(a) + a_1 + ... + a_d  =  rho_w(L_a)
//! ```
//!
//! where `rho_w` is the covering radius of the weighted simplex
//! `{x >= 0 : a_1 x_1 + ... + a_{d-1} x_{d-1} <= 1}` with respect to the
//! residue lattice `L_a = {m : m . (a_1, ..., a_{d-1}) == 0 mod a_d}`.
//! Rescaling by `(a_1 ... a_d)^{1/(d-1)}` turns Frobenius statistics over
//! growing integer boxes into covering-radius statistics over random
//! unit-covolume lattices, which can be sampled directly.
//!
//! Module map:
//!
//! * [`intvec`]: primitive integer vectors, box enumeration, Farey points,
//!   kernel and residue sublattices (integer elimination + Hermite form).
//! * [`frobenius`]: exact Frobenius numbers via shortest paths on residues,
//!   plus a brute-force cross-check.
//! * [`covering`]: covering radii of the standard simplex: exact planar
//!   algorithm, 1-D closed form, grid lower-bound oracle, weighted variant.
//! * [`bridge`]: the identity above, tying `frobenius` to `covering`.
//! * [`randlat`]: random unit-covolume lattices (planar Haar sampler and the
//!   kernel-lattice sampler driven by random primitive vectors).
//! * [`stats`]: survival curves, Kolmogorov-Smirnov distances, and the
//!   experiment drivers that produce the limit-law estimates.

pub mod bridge;
pub mod covering;
pub mod frobenius;
pub mod intvec;
pub mod randlat;
pub mod stats;

pub use bridge::{bridge, normalized_lattice, BridgeError, BridgeResult, RhoW};
pub use covering::{
    covering_radius_1d, covering_radius_exact_2d, covering_radius_grid, covering_radius_weighted,
    grid_gap_bound, CoveringError, CoveringResult, LatticeBasis,
};
pub use frobenius::{frobenius, frobenius_bruteforce, sylvester, FrobeniusResult};
pub use intvec::{
    enumerate_primitive, farey_sequence, is_primitive, kernel_sublattice, residue_sublattice,
    Domain, FareyPoint, IntVecError, PrimitiveVector,
};
pub use stats::{
    continuity_smoke, ks_distance, psi_from_frobenius, psi_from_lattices, ExperimentReport,
    FrobeniusCurve, LatticeMethod, StatsError, SurvivalCurve, Variant,
};
