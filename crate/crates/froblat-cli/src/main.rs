//! Command-line front end for the froblat library.
//!
//! Subcommands map onto library operations and emit CSV or JSON. Tabular
//! output starts with a `# key: value` metadata block carrying the version,
//! the seed, and every parameter of the run; JSON output embeds the same
//! fields. Identical invocations produce byte-identical output: no
//! timestamps, no environment leakage, RNG streams derived from the seed.
//!
//! Frozen CSV column contracts: survival curves are `R,survival`; bridge
//! batches are `a1..ad,F,rho_w,scaled`; sampled lattices are row-major
//! basis entries `b11..bnn`.
//!
//! Exit codes: 0 success, 2 precondition violation, 3 violated internal
//! identity, 64 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use froblat::bridge::{bridge, normalized_lattice, BridgeError, BridgeResult, RhoW};
use froblat::covering::{
    covering_radius_exact_2d, covering_radius_grid, grid_gap_bound, LatticeBasis,
};
use froblat::frobenius::frobenius;
use froblat::intvec::{enumerate_primitive, farey_iter, Domain, PrimitiveVector};
use froblat::randlat::{sample_haar_2d, sample_schmidt, FrameOrder};
use froblat::stats::{
    continuity_smoke, ks_distance, psi_from_frobenius, psi_from_lattices, ExperimentReport,
    LatticeMethod, SurvivalCurve, Variant,
};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt::Display;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

const VERSION: &str = concat!("froblat ", env!("CARGO_PKG_VERSION"));

/// Norm scale used by the kernel-lattice sampler when `--T` is not given.
const DEFAULT_SCHMIDT_NORM: i64 = 100_000;

#[derive(Parser)]
#[command(
    name = "froblat",
    version,
    about = "Frobenius numbers, simplex covering radii, and their shared limit law"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Frobenius number of coprime entries, each at least 2.
    Frobenius {
        /// Entries of the vector (two or more).
        #[arg(required = true, num_args = 2..)]
        a: Vec<i64>,
    },
    /// Frobenius number, weighted covering radius, and scaled statistics.
    ///
    /// With explicit entries: one JSON document, including the normalized
    /// lattice. With --count: CSV rows `a1..ad,F,rho_w,scaled` over random
    /// vectors with entries in [2, T].
    Bridge {
        /// Explicit entries; omit when sampling with --count.
        #[arg(num_args = 0..)]
        a: Vec<i64>,
        /// Dimension of random vectors.
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Coordinate cap for random vectors.
        #[arg(long = "T", default_value_t = 60)]
        t: i64,
        /// Number of random vectors; switches to CSV batch output.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Which scaled statistic fills the `scaled` column.
        #[arg(long, value_enum, default_value_t = VariantArg::Shifted)]
        variant: VariantArg,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Covering radius of the standard simplex for an explicit row basis.
    Rho {
        #[arg(long)]
        dim: usize,
        /// Row-major basis entries, dim * dim of them.
        #[arg(required = true, allow_negative_numbers = true)]
        entries: Vec<f64>,
        /// Grid resolution: compute the certified lower bound instead.
        #[arg(long)]
        grid: Option<usize>,
        /// Force the exact engine (the default in dimensions 1 and 2).
        #[arg(long, conflicts_with = "grid")]
        exact: bool,
        /// json prints the full configuration (deep hole, witnesses).
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Sample unit-covolume lattices: CSV, one row-major basis per line.
    SampleLattice {
        /// Dimension of the sampled lattices (haar2d requires 2; schmidt
        /// draws its primitive vector in dimension dim + 1).
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Norm scale for schmidt (defaults to 100000).
        #[arg(long = "T")]
        t: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Survival curve of one estimator of the limit law.
    ///
    /// CSV `R,survival` evaluated on an R-grid, or the full JSON report
    /// with --format json.
    Psi {
        #[arg(long, value_enum)]
        source: SourceArg,
        /// Defaults to 3, the exact pipeline.
        #[arg(long)]
        dim: Option<usize>,
        /// Box dilation (frobenius source) or schmidt norm scale.
        #[arg(long = "T")]
        t: Option<i64>,
        /// Box "l1,u1;l2,u2;..." with integer or p/q corners (default
        /// unit cube).
        #[arg(long)]
        domain: Option<String>,
        /// Sample count for the lattice sources.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = VariantArg::Shifted)]
        variant: VariantArg,
        /// Number of R-grid steps in the CSV output.
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kolmogorov-Smirnov distance between two estimator curves.
    ///
    /// Shares the psi flags; the second source reuses them, except that a
    /// sampled second source draws from seed + 1 so two equal sampler
    /// sources stay independent.
    Compare {
        #[arg(long, value_enum)]
        source: SourceArg,
        #[arg(long, value_enum)]
        against: SourceArg,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long = "T")]
        t: Option<i64>,
        #[arg(long)]
        domain: Option<String>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = VariantArg::Shifted)]
        variant: VariantArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generalized Farey points of order T: CSV `p1..p(d-1),q`.
    Farey {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long = "T")]
        t: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count primitive points of the dilated box; JSON with the density.
    CountPrimitive {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long = "T")]
        t: i64,
        #[arg(long)]
        domain: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    #[value(name = "raw")]
    Raw,
    #[value(name = "shifted")]
    Shifted,
}

impl VariantArg {
    fn to_variant(self) -> Variant {
        match self {
            VariantArg::Raw => Variant::Raw,
            VariantArg::Shifted => Variant::Shifted,
        }
    }

    fn name(self) -> &'static str {
        match self {
            VariantArg::Raw => "raw",
            VariantArg::Shifted => "shifted",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    #[value(name = "haar2d")]
    Haar2d,
    #[value(name = "schmidt")]
    Schmidt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    #[value(name = "frobenius")]
    Frobenius,
    #[value(name = "haar2d")]
    Haar2d,
    #[value(name = "schmidt")]
    Schmidt,
}

impl SourceArg {
    fn name(self) -> &'static str {
        match self {
            SourceArg::Frobenius => "frobenius",
            SourceArg::Haar2d => "haar2d",
            SourceArg::Schmidt => "schmidt",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    #[value(name = "csv")]
    Csv,
    #[value(name = "json")]
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

fn precondition<E: Display>(e: E) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

fn internal<E: Display>(e: E) -> Failure {
    Failure {
        code: 3,
        message: e.to_string(),
    }
}

fn from_bridge(e: BridgeError) -> Failure {
    match e {
        BridgeError::IdentityViolated { .. } => internal(e),
        other => precondition(other),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive here as non-error exits.
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn writer(out: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => {
            let f = File::create(p)
                .map_err(|e| precondition(format!("cannot write {}: {e}", p.display())))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(io::stdout().lock()),
    })
}

fn emit(w: &mut dyn Write, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), Failure> {
    body(w).map_err(precondition)?;
    w.flush().map_err(precondition)
}

fn header<K: AsRef<str>>(
    w: &mut dyn Write,
    command: &str,
    fields: &[(K, String)],
) -> io::Result<()> {
    writeln!(w, "# version: {VERSION}")?;
    writeln!(w, "# command: {command}")?;
    for (k, v) in fields {
        writeln!(w, "# {}: {v}", k.as_ref())?;
    }
    Ok(())
}

/// JSON envelope stamping the version onto any serializable body.
#[derive(Serialize)]
struct Versioned<T: Serialize> {
    version: &'static str,
    #[serde(flatten)]
    body: T,
}

fn to_json<T: Serialize>(body: T) -> Result<String, Failure> {
    serde_json::to_string_pretty(&Versioned {
        version: VERSION,
        body,
    })
    .map_err(internal)
}

fn parse_ratio(s: &str) -> Result<Rational64, Failure> {
    let s = s.trim();
    let bad = |_| precondition(format!("`{s}` is not an integer or p/q rational"));
    match s.split_once('/') {
        Some((num, den)) => {
            let d: i64 = den.trim().parse().map_err(bad)?;
            if d == 0 {
                return Err(precondition("rational with zero denominator"));
            }
            Ok(Rational64::new(num.trim().parse().map_err(bad)?, d))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(bad)?)),
    }
}

/// Parses "l1,u1;l2,u2;..." into a box, defaulting to the unit cube.
fn parse_domain(spec: Option<&str>, d: usize) -> Result<Domain, Failure> {
    let Some(spec) = spec else {
        return Ok(Domain::unit_cube(d));
    };
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for part in spec.split(';') {
        let (l, u) = part
            .split_once(',')
            .ok_or_else(|| precondition(format!("domain segment `{part}` must be `lower,upper`")))?;
        lower.push(parse_ratio(l)?);
        upper.push(parse_ratio(u)?);
    }
    if lower.len() != d {
        return Err(precondition(format!(
            "domain has {} coordinates but --dim is {d}",
            lower.len()
        )));
    }
    Domain::new(lower, upper).map_err(precondition)
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Frobenius { a } => {
            let a = PrimitiveVector::new(a).map_err(precondition)?;
            let f = frobenius(&a).map_err(precondition)?.f;
            println!("{f}");
            Ok(())
        }
        Cmd::Bridge {
            a,
            dim,
            t,
            count,
            seed,
            variant,
            out,
        } => match count {
            None if a.is_empty() => Err(precondition("give vector entries or --count")),
            None => {
                let a = PrimitiveVector::new(a).map_err(precondition)?;
                let res = bridge(&a).map_err(from_bridge)?;
                let basis = normalized_lattice(&a).map_err(from_bridge)?;
                #[derive(Serialize)]
                struct BridgeDoc {
                    #[serde(flatten)]
                    result: BridgeResult,
                    normalized_basis: Vec<Vec<f64>>,
                }
                let doc = to_json(BridgeDoc {
                    result: res,
                    normalized_basis: basis.rows().to_vec(),
                })?;
                let mut w = writer(out.as_ref())?;
                emit(&mut w, |w| writeln!(w, "{doc}"))
            }
            Some(count) => {
                if !a.is_empty() {
                    return Err(precondition("give vector entries or --count, not both"));
                }
                bridge_batch(dim, t, count, seed, variant, out.as_ref())
            }
        },
        Cmd::Rho {
            dim,
            entries,
            grid,
            exact,
            format,
        } => rho_cmd(dim, &entries, grid, exact, format),
        Cmd::SampleLattice {
            dim,
            method,
            count,
            seed,
            t,
            out,
        } => sample_lattice_cmd(dim, method, count, seed, t, out.as_ref()),
        Cmd::Psi {
            source,
            dim,
            t,
            domain,
            count,
            seed,
            variant,
            grid,
            format,
            out,
        } => {
            if grid == 0 {
                return Err(precondition("--grid must be at least 1"));
            }
            let d = dim.unwrap_or(3);
            let (curve, report, meta) =
                build_curve(source, d, t, domain.as_deref(), count, seed, variant)?;
            let mut w = writer(out.as_ref())?;
            match format {
                FormatArg::Json => {
                    let doc = to_json(&report)?;
                    emit(&mut w, |w| writeln!(w, "{doc}"))
                }
                FormatArg::Csv => emit(&mut w, |w| {
                    header(w, "psi", &meta)?;
                    writeln!(w, "R,survival")?;
                    let rmax = curve.max();
                    for i in 0..=grid {
                        let r = rmax * i as f64 / grid as f64;
                        writeln!(w, "{r},{}", curve.eval(r))?;
                    }
                    Ok(())
                }),
            }
        }
        Cmd::Compare {
            source,
            against,
            dim,
            t,
            domain,
            count,
            seed,
            variant,
            out,
        } => {
            let d = dim.unwrap_or(3);
            let (first, _, mut meta) =
                build_curve(source, d, t, domain.as_deref(), count, seed, variant)?;
            // Independent stream for the second source even when both
            // sources are the same sampler.
            let seed_b = seed.wrapping_add(1);
            let (second, _, meta_b) =
                build_curve(against, d, t, domain.as_deref(), count, seed_b, variant)?;
            meta.push(("against".into(), against.name().to_string()));
            for (k, v) in meta_b {
                meta.push((format!("against-{k}"), v));
            }
            let ks = ks_distance(&first, &second);
            let mut w = writer(out.as_ref())?;
            emit(&mut w, |w| {
                header(w, "compare", &meta)?;
                writeln!(w, "{ks}")
            })
        }
        Cmd::Farey { dim, t, out } => {
            let iter = farey_iter(t, dim).map_err(precondition)?;
            let mut w = writer(out.as_ref())?;
            emit(&mut w, |w| {
                header(
                    w,
                    "farey",
                    &[("dim", dim.to_string()), ("T", t.to_string())],
                )?;
                let cols: Vec<String> = (1..dim).map(|i| format!("p{i}")).collect();
                writeln!(w, "{},q", cols.join(","))?;
                for pt in iter {
                    let nums: Vec<String> = pt.p.iter().map(i64::to_string).collect();
                    writeln!(w, "{},{}", nums.join(","), pt.q)?;
                }
                Ok(())
            })
        }
        Cmd::CountPrimitive {
            dim,
            t,
            domain,
            out,
        } => {
            let dom = parse_domain(domain.as_deref(), dim)?;
            let count = enumerate_primitive(&dom, t, false)
                .map_err(precondition)?
                .count() as u64;
            #[derive(Serialize)]
            struct CountDoc {
                dim: usize,
                t: i64,
                domain: String,
                count: u64,
                density: f64,
            }
            let doc = to_json(CountDoc {
                dim,
                t,
                domain: domain.unwrap_or_else(|| "unit cube".into()),
                count,
                density: count as f64 / ((t as f64).powi(dim as i32) * dom.volume()),
            })?;
            let mut w = writer(out.as_ref())?;
            emit(&mut w, |w| writeln!(w, "{doc}"))
        }
    }
}

fn bridge_batch(
    dim: usize,
    t: i64,
    count: usize,
    seed: u64,
    variant: VariantArg,
    out: Option<&PathBuf>,
) -> Result<(), Failure> {
    if dim < 2 {
        return Err(precondition("--dim must be at least 2"));
    }
    if t < 2 {
        return Err(precondition("--T must be at least 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(count);
    for _ in 0..count {
        let a = loop {
            let coords: Vec<i64> = (0..dim).map(|_| rng.gen_range(2..=t)).collect();
            if let Ok(a) = PrimitiveVector::new(coords) {
                break a;
            }
        };
        rows.push(bridge(&a).map_err(from_bridge)?);
    }
    let mut w = writer(out)?;
    emit(&mut w, |w| {
        header(
            w,
            "bridge",
            &[
                ("dim", dim.to_string()),
                ("T", t.to_string()),
                ("count", count.to_string()),
                ("seed", seed.to_string()),
                ("variant", variant.name().to_string()),
            ],
        )?;
        let cols: Vec<String> = (1..=dim).map(|i| format!("a{i}")).collect();
        writeln!(w, "{},F,rho_w,scaled", cols.join(","))?;
        for r in &rows {
            let coords: Vec<String> = r.a.iter().map(i64::to_string).collect();
            let rho_w = match &r.rho_w {
                RhoW::Exact(v) => v.to_string(),
                RhoW::GridLowerBound(v) => v.to_string(),
            };
            let scaled = match variant {
                VariantArg::Raw => r.scaled_raw,
                VariantArg::Shifted => r.scaled_shifted,
            };
            writeln!(w, "{},{},{rho_w},{scaled}", coords.join(","), r.f)?;
        }
        Ok(())
    })
}

fn rho_cmd(
    dim: usize,
    entries: &[f64],
    grid: Option<usize>,
    exact: bool,
    format: FormatArg,
) -> Result<(), Failure> {
    if dim == 0 || entries.len() != dim * dim {
        return Err(precondition(format!(
            "expected {} basis entries for --dim {dim}, got {}",
            dim * dim,
            entries.len()
        )));
    }
    let rows: Vec<Vec<f64>> = entries.chunks(dim).map(<[f64]>::to_vec).collect();
    let basis = LatticeBasis::new(rows).map_err(precondition)?;
    if let Some(n) = grid {
        let lower = covering_radius_grid(&basis, n).map_err(precondition)?;
        match format {
            FormatArg::Csv => println!("{lower}"),
            FormatArg::Json => {
                #[derive(Serialize)]
                struct GridDoc {
                    rho_lower_bound: f64,
                    gap_bound: f64,
                    grid: usize,
                }
                println!(
                    "{}",
                    to_json(GridDoc {
                        rho_lower_bound: lower,
                        gap_bound: grid_gap_bound(&basis, n),
                        grid: n,
                    })?
                );
            }
        }
        return Ok(());
    }
    let _ = exact; // exact is the default; the flag only blocks --grid
    match dim {
        1 => {
            let rho = basis.rows()[0][0].abs();
            match format {
                FormatArg::Csv => println!("{rho}"),
                FormatArg::Json => {
                    #[derive(Serialize)]
                    struct RhoDoc {
                        rho: f64,
                    }
                    println!("{}", to_json(RhoDoc { rho })?);
                }
            }
            Ok(())
        }
        2 => {
            let res = covering_radius_exact_2d(&basis).map_err(precondition)?;
            match format {
                FormatArg::Csv => println!("{}", res.rho),
                FormatArg::Json => println!("{}", to_json(&res)?),
            }
            Ok(())
        }
        _ => Err(precondition(
            "the exact engine covers dimensions 1 and 2; pass --grid N for a lower bound",
        )),
    }
}

fn sample_lattice_cmd(
    dim: usize,
    method: MethodArg,
    count: usize,
    seed: u64,
    t: Option<i64>,
    out: Option<&PathBuf>,
) -> Result<(), Failure> {
    let mut fields = vec![
        ("dim", dim.to_string()),
        ("count", count.to_string()),
        ("seed", seed.to_string()),
    ];
    let mut bases: Vec<Vec<f64>> = Vec::with_capacity(count);
    match method {
        MethodArg::Haar2d => {
            if dim != 2 {
                return Err(precondition("haar2d samples 2-dimensional lattices"));
            }
            fields.insert(0, ("method", "haar2d".into()));
            for i in 0..count {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let s = sample_haar_2d(&mut rng).map_err(precondition)?;
                bases.push(s.basis.rows().concat());
            }
        }
        MethodArg::Schmidt => {
            let norm = t.unwrap_or(DEFAULT_SCHMIDT_NORM);
            fields.insert(0, ("method", "schmidt".into()));
            fields.push(("T", norm.to_string()));
            for i in 0..count {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let s = sample_schmidt(dim + 1, norm as f64, &mut rng).map_err(precondition)?;
                bases.push(s.basis.rows().concat());
            }
        }
    }
    let mut w = writer(out)?;
    emit(&mut w, |w| {
        header(w, "sample-lattice", &fields)?;
        let cols: Vec<String> = (1..=dim)
            .flat_map(|i| (1..=dim).map(move |j| format!("b{i}{j}")))
            .collect();
        writeln!(w, "{}", cols.join(","))?;
        for b in &bases {
            let cells: Vec<String> = b.iter().map(f64::to_string).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    })
}

/// Builds the survival curve for one source plus its report and the
/// metadata lines shared by the CSV and compare outputs.
#[allow(clippy::type_complexity)]
fn build_curve(
    source: SourceArg,
    d: usize,
    t: Option<i64>,
    domain: Option<&str>,
    count: usize,
    seed: u64,
    variant: VariantArg,
) -> Result<(SurvivalCurve, ExperimentReport, Vec<(String, String)>), Failure> {
    let mut meta: Vec<(String, String)> = vec![
        ("source".into(), source.name().to_string()),
        ("dim".into(), d.to_string()),
        ("seed".into(), seed.to_string()),
    ];
    match source {
        SourceArg::Frobenius => {
            let t = t.unwrap_or(100);
            let dom = parse_domain(domain, d)?;
            let fc =
                psi_from_frobenius(d, t, &dom, variant.to_variant()).map_err(precondition)?;
            meta.push(("T".into(), t.to_string()));
            meta.push((
                "domain".into(),
                domain.unwrap_or("unit cube").to_string(),
            ));
            meta.push(("variant".into(), variant.name().to_string()));
            meta.push(("primitive-count".into(), fc.primitive_count.to_string()));
            meta.push(("density".into(), fc.density.to_string()));
            meta.push(("corner-fraction".into(), fc.corner_fraction.to_string()));
            let report = ExperimentReport {
                source: "frobenius".into(),
                dimension: d,
                size: t as u64,
                seed: Some(seed),
                variant: Some(variant.to_variant()),
                primitive_count: Some(fc.primitive_count),
                density: Some(fc.density),
                corner_fraction: Some(fc.corner_fraction),
                ks_against: None,
                max_atom: continuity_smoke(&fc.curve),
                curve: fc.curve.clone(),
            };
            Ok((fc.curve, report, meta))
        }
        SourceArg::Haar2d | SourceArg::Schmidt => {
            let method = match source {
                SourceArg::Haar2d => LatticeMethod::Haar2d,
                _ => {
                    let norm = t.unwrap_or(DEFAULT_SCHMIDT_NORM);
                    meta.push(("T".into(), norm.to_string()));
                    LatticeMethod::Schmidt {
                        norm_scale: norm as f64,
                        order: FrameOrder::Ascending,
                    }
                }
            };
            meta.push(("count".into(), count.to_string()));
            let curve = psi_from_lattices(d, count, method, seed).map_err(precondition)?;
            let report = ExperimentReport {
                source: source.name().into(),
                dimension: d,
                size: count as u64,
                seed: Some(seed),
                variant: None,
                primitive_count: None,
                density: None,
                corner_fraction: None,
                ks_against: None,
                max_atom: continuity_smoke(&curve),
                curve: curve.clone(),
            };
            Ok((curve, report, meta))
        }
    }
}
