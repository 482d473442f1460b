//! Acceptance gate: ten criteria, one test and one printed pass/fail line
//! each (run with `--nocapture` to see the lines of passing criteria).
//!
//! Exact identities are asserted with zero tolerance; statistical criteria
//! carry the budgets pinned below. Monte-Carlo inputs use fixed seeds, so
//! every run checks the same instances.

use froblat::covering::{
    covering_radius_1d, covering_radius_exact_2d, covering_radius_grid,
    covering_radius_weighted, grid_gap_bound, LatticeBasis,
};
use froblat::frobenius::{frobenius, frobenius_bruteforce, sylvester};
use froblat::intvec::{enumerate_primitive, farey_iter, residue_sublattice, Domain, PrimitiveVector};
use froblat::randlat::{sample_haar_2d, FrameOrder};
use froblat::stats::{
    continuity_smoke, ks_distance, psi_from_frobenius, psi_from_lattices, LatticeMethod,
    SurvivalCurve, Variant,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

/// KS budget for the statistical convergence criteria (6 and 7).
const KS_BUDGET: f64 = 0.05;
/// Relative tolerance for the counting asymptotics (criterion 8).
const COUNT_TOL: f64 = 0.02;
/// Largest admissible empirical atom of the rho curve (criterion 10).
const ATOM_BUDGET: f64 = 0.03;
/// Absolute tolerance where a value is pinned by an exact formula but
/// computed in floats.
const EXACT_EPS: f64 = 1e-12;
/// Slack for float comparisons between independently rounded pipelines.
const FLOAT_EPS: f64 = 1e-9;
/// `1/zeta(3)`, the primitive-vector density in dimension 3.
const INV_ZETA_3: f64 = 0.8319073725807075;
/// `zeta(3)`.
const ZETA_3: f64 = 1.2020569031595943;
/// Farey points of order 100 in dimension 3: `sum_{q<=100} J_2(q)` with
/// `J_2` the second Jordan totient, evaluated independently.
const FAREY_COUNT_Q100_D3: usize = 280_608;

const HAAR_COUNT: usize = 10_000;
const HAAR_SEED: u64 = 271_828;
const SCHMIDT_SEED: u64 = 314_159;
const SCHMIDT_NORM: f64 = 1e5;

/// The shared 10^4-sample Haar rho-curve (criteria 5, 6, 7, 10).
fn haar_curve() -> &'static SurvivalCurve {
    static CURVE: OnceLock<SurvivalCurve> = OnceLock::new();
    CURVE.get_or_init(|| {
        psi_from_lattices(3, HAAR_COUNT, LatticeMethod::Haar2d, HAAR_SEED)
            .expect("haar sampling succeeds")
    })
}

/// Prints the criterion's verdict line, then fails the test on any error
/// or on a blown runtime budget.
fn gate(n: u32, label: &str, started: Instant, budget: Option<Duration>, mut errors: Vec<String>) {
    let elapsed = started.elapsed();
    if let Some(b) = budget {
        if elapsed > b {
            errors.push(format!("runtime {elapsed:.2?} exceeds budget {b:?}"));
        }
    }
    if errors.is_empty() {
        println!("[PASS] criterion {n}: {label} ({elapsed:.2?})");
    } else {
        println!("[FAIL] criterion {n}: {label} ({elapsed:.2?})");
        for e in &errors {
            println!("       {e}");
        }
        panic!("criterion {n} failed: {}", errors.join("; "));
    }
}

/// Draws a primitive vector with `d` coordinates uniform in `[2, hi]`.
fn random_primitive<R: Rng>(d: usize, hi: i64, rng: &mut R) -> PrimitiveVector {
    loop {
        let coords: Vec<i64> = (0..d).map(|_| rng.gen_range(2..=hi)).collect();
        if let Ok(a) = PrimitiveVector::new(coords) {
            return a;
        }
    }
}

#[test]
fn criterion_01_sylvester_closed_form() {
    let t0 = Instant::now();
    let mut errors = Vec::new();
    let mut pairs = 0u32;
    for a1 in 2..=200i64 {
        for a2 in (a1 + 1)..=200 {
            let Ok(a) = PrimitiveVector::new(vec![a1, a2]) else {
                continue;
            };
            pairs += 1;
            let closed = sylvester(a1, a2).expect("entries >= 2");
            assert_eq!(closed, (a1 as i128) * (a2 as i128) - a1 as i128 - a2 as i128);
            let solved = frobenius(&a).expect("coprime input").f;
            if solved != closed {
                errors.push(format!("F({a1},{a2}) = {solved}, closed form {closed}"));
            }
        }
    }
    assert!(pairs > 10_000, "exhaustive sweep covers all coprime pairs");
    gate(
        1,
        "solver matches the two-coordinate closed form on all coprime pairs up to 200",
        t0,
        Some(Duration::from_secs(1)),
        errors,
    );
}

#[test]
fn criterion_02_bruteforce_oracle_equivalence() {
    let t0 = Instant::now();
    let mut errors = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..500 {
        let d = 3 + i % 3;
        let a = random_primitive(d, 40, &mut rng);
        let fast = frobenius(&a).expect("valid input").f;
        let slow = frobenius_bruteforce(&a).expect("valid input");
        if fast != slow {
            errors.push(format!("F{:?}: solver {fast}, oracle {slow}", a.coords()));
        }
    }
    gate(
        2,
        "solver equals the brute-force oracle on 500 random vectors, d in {3,4,5}",
        t0,
        Some(Duration::from_secs(10)),
        errors,
    );
}

#[test]
fn criterion_03_bridge_identity_exact() {
    let t0 = Instant::now();
    let mut errors = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let a = random_primitive(3, 60, &mut rng);
        let f = frobenius(&a).expect("valid input").f;
        let expected = f + a.coords().iter().map(|&c| c as i128).sum::<i128>();
        let rows = residue_sublattice(&a).expect("primitive input");
        let (rho, _) =
            covering_radius_weighted(&rows, &a.coords()[..2]).expect("rank-2 sublattice");
        if rho != BigRational::from_integer(BigInt::from(expected)) {
            errors.push(format!("a = {:?}: F + sum = {expected}, rho_w = {rho}", a.coords()));
        }
    }
    gate(
        3,
        "F + sum(a) equals the weighted covering radius exactly on 500 random vectors",
        t0,
        Some(Duration::from_secs(60)),
        errors,
    );
}

#[test]
fn criterion_04_known_covering_radii() {
    let t0 = Instant::now();
    let mut errors = Vec::new();

    let one = covering_radius_1d(&BigRational::one()).expect("positive generator");
    if one != BigRational::one() {
        errors.push(format!("rho(Delta; Z) = {one}, want 1"));
    }

    let exact_rows = vec![
        vec![BigRational::one(), BigRational::zero()],
        vec![BigRational::zero(), BigRational::one()],
    ];
    let exact_basis = LatticeBasis::new(exact_rows).expect("identity basis");
    let rho_exact = covering_radius_exact_2d(&exact_basis).expect("exact engine").rho;
    if rho_exact != BigRational::from_integer(BigInt::from(2)) {
        errors.push(format!("exact rho(Delta; Z^2) = {rho_exact}, want 2"));
    }

    let float_basis =
        LatticeBasis::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).expect("identity basis");
    let rho_float = covering_radius_exact_2d(&float_basis).expect("exact engine").rho;
    let rho_grid = covering_radius_grid(&float_basis, 256).expect("grid oracle");
    if (rho_float - 2.0).abs() > EXACT_EPS {
        errors.push(format!("float rho(Delta; Z^2) = {rho_float}, want 2"));
    }
    if (rho_grid - 2.0).abs() > EXACT_EPS {
        errors.push(format!("grid rho(Delta; Z^2) = {rho_grid}, want 2"));
    }

    gate(
        4,
        "rho(Delta; Z) = 1 and rho(Delta; Z^2) = 2 on the exact and grid engines",
        t0,
        None,
        errors,
    );
}

#[test]
fn criterion_05_lower_support_sqrt3() {
    let t0 = Instant::now();
    let mut errors = Vec::new();
    let curve = haar_curve();
    let support = 3f64.sqrt();
    if curve.min() < support - 1e-9 {
        errors.push(format!("min rho {} below sqrt(3) - 1e-9", curve.min()));
    }
    let at_edge = curve.eval(support - 1e-6);
    if at_edge != 1.0 {
        errors.push(format!("survival({}) = {at_edge}, want 1", support - 1e-6));
    }
    gate(
        5,
        "10^4 Haar lattices never dip below the universal minimum sqrt(3)",
        t0,
        Some(Duration::from_secs(300)),
        errors,
    );
}

#[test]
fn criterion_06_frobenius_vs_haar_ks() {
    let t0 = Instant::now();
    let mut errors = Vec::new();
    let fc = psi_from_frobenius(3, 150, &Domain::unit_cube(3), Variant::Shifted)
        .expect("enumeration succeeds");
    let ks = ks_distance(&fc.curve, haar_curve());
    if ks > KS_BUDGET {
        errors.push(format!("KS(frobenius T=150, haar 10^4) = {ks} > {KS_BUDGET}"));
    }
    gate(
        6,
        "shifted scaled Frobenius statistics match the Haar rho law within KS 0.05",
        t0,
        Some(Duration::from_secs(900)),
        errors,
    );
}

#[test]
fn criterion_07_schmidt_equidistribution() {
    let t0 = Instant::now();
    let mut errors = Vec::new();
    for order in [FrameOrder::Ascending, FrameOrder::Descending] {
        let method = LatticeMethod::Schmidt {
            norm_scale: SCHMIDT_NORM,
            order,
        };
        let curve =
            psi_from_lattices(3, HAAR_COUNT, method, SCHMIDT_SEED).expect("schmidt sampling");
        let ks = ks_distance(&curve, haar_curve());
        if ks > KS_BUDGET {
            errors.push(format!("KS(schmidt {order:?}, haar) = {ks} > {KS_BUDGET}"));
        }
    }
    gate(
        7,
        "10^4 Schmidt samples match Haar within KS 0.05 under both frame orders",
        t0,
        Some(Duration::from_secs(900)),
        errors,
    );
}

#[test]
fn criterion_08_counting_asymptotics() {
    let t0 = Instant::now();
    let mut errors = Vec::new();

    let farey = farey_iter(100, 3).expect("valid order").count();
    if farey != FAREY_COUNT_Q100_D3 {
        errors.push(format!(
            "|F_100| = {farey}, independent totient count {FAREY_COUNT_Q100_D3}"
        ));
    }
    let asym = 100f64.powi(3) / (3.0 * ZETA_3);
    let rel = (farey as f64 - asym).abs() / asym;
    if rel > COUNT_TOL {
        errors.push(format!("|F_100| off the asymptotic by {rel:.4} > {COUNT_TOL}"));
    }

    let primitive = enumerate_primitive(&Domain::unit_cube(3), 100, false)
        .expect("valid box")
        .count();
    let density = primitive as f64 / 100f64.powi(3);
    let rel = (density - INV_ZETA_3).abs() / INV_ZETA_3;
    if rel > COUNT_TOL {
        errors.push(format!(
            "primitive density {density} off 1/zeta(3) by {rel:.4} > {COUNT_TOL}"
        ));
    }

    gate(
        8,
        "Farey and primitive-point counts sit within 2% of their zeta asymptotics",
        t0,
        None,
        errors,
    );
}

#[test]
fn criterion_09_grid_sandwiched_by_exact() {
    let t0 = Instant::now();
    let mut errors = Vec::new();
    for i in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        rng.set_stream(i);
        let basis = sample_haar_2d(&mut rng).expect("haar sampling").basis;
        let exact = covering_radius_exact_2d(&basis).expect("exact engine").rho;
        let grid = covering_radius_grid(&basis, 256).expect("grid oracle");
        let bound = grid_gap_bound(&basis, 256);
        if grid > exact + FLOAT_EPS {
            errors.push(format!("sample {i}: grid {grid} above exact {exact}"));
        }
        if exact - grid > bound + FLOAT_EPS {
            errors.push(format!(
                "sample {i}: gap {} exceeds published bound {bound}",
                exact - grid
            ));
        }
    }
    gate(
        9,
        "grid lower bound stays within its published gap of the exact radius",
        t0,
        None,
        errors,
    );
}

#[test]
fn criterion_10_continuity_and_degenerate_law() {
    let t0 = Instant::now();
    let mut errors = Vec::new();

    let atom = continuity_smoke(haar_curve());
    if atom > ATOM_BUDGET {
        errors.push(format!("largest rho-curve atom {atom} > {ATOM_BUDGET}"));
    }

    let fc = psi_from_frobenius(2, 60, &Domain::unit_cube(2), Variant::Shifted)
        .expect("enumeration succeeds");
    if fc.curve.values().iter().any(|&v| v != 1.0) {
        errors.push("a two-coordinate shifted statistic differs from 1".into());
    }
    if fc.curve.eval(0.999_999) != 1.0 || fc.curve.eval(1.0) != 0.0 {
        errors.push(format!(
            "degenerate law: survival(1-eps) = {}, survival(1) = {}",
            fc.curve.eval(0.999_999),
            fc.curve.eval(1.0)
        ));
    }

    gate(
        10,
        "rho curve has no atom above 0.03 and d=2 reproduces the unit step exactly",
        t0,
        None,
        errors,
    );
}
