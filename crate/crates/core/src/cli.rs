//! Command-line front end. Exit codes: 0 ok, 1 usage, 2 bad input data,
//! 3 a `verify` mismatch or a failed benchmark equality check.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{self, ApparentBenchConfig, StreamBenchConfig};
use crate::coboundary::{apparent_cofacet, coboundary, Coboundary};
use crate::error::Error;
use crate::metric::{DistanceMatrix, NeighborhoodLists, PointCloud};
use crate::oracle;
use crate::simplex::{
    canonical_cmp, classify_first_full_diameter_facet, write_vertices, Simplex, Vertex,
};
use crate::stream::{
    baseline_simplex_stream, edge_stream, full_filtration_stream, vertex_stream, SimplexStream,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

const VERIFY_MAX_POINTS: usize = 25;

#[derive(Debug, Parser)]
#[command(
    name = "ripstream",
    version,
    about = "Vietoris-Rips simplex streams and coboundaries in filtration order"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the simplices of one dimension, or of all dimensions up to --max-dim.
    Stream(StreamArgs),
    /// Print the cofacets of one simplex in filtration order.
    Coboundary(CoboundaryArgs),
    /// List apparent pairs whose facet has the given dimension.
    ApparentPairs(ApparentArgs),
    /// Check the fast paths against brute force on a small input.
    Verify(VerifyArgs),
    /// Run the benchmark harness and print CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    PointCloud,
    LowerDistanceMatrix,
    DistanceMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum Algorithm {
    Inorder,
    Colex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Stream,
    Apparent,
}

#[derive(Debug, Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "lower-distance-matrix")]
    format: Format,
}

#[derive(Debug, Args)]
struct StreamArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, conflicts_with = "max_dim", required_unless_present = "max_dim")]
    dim: Option<usize>,
    #[arg(long)]
    max_dim: Option<usize>,
    /// `auto` (enclosing radius) or a distance.
    #[arg(long, default_value = "auto")]
    threshold: String,
    #[arg(long, value_enum, default_value = "inorder")]
    algorithm: Algorithm,
    #[arg(long)]
    skip_apparent: bool,
    #[arg(long)]
    counts_only: bool,
}

#[derive(Debug, Args)]
struct CoboundaryArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Comma separated vertices, any order.
    #[arg(long)]
    simplex: String,
    /// `auto`, a distance, or omitted for no bound.
    #[arg(long)]
    threshold: Option<String>,
    #[arg(long)]
    stats: bool,
}

#[derive(Debug, Args)]
struct ApparentArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value = "auto")]
    threshold: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "random", conflicts_with = "random")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "lower-distance-matrix")]
    format: Format,
    /// Use a random cloud of this many points instead of --input.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 3)]
    ambient_dim: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Stream dimensions to check: `2,3` or `2..4`.
    #[arg(long, default_value = "2..3")]
    dims: String,
    #[arg(long, default_value = "auto")]
    threshold: String,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long = "n", value_delimiter = ',', default_value = "25,50")]
    sizes: Vec<usize>,
    /// Defaults to 3 for `stream` and 5 for `apparent`.
    #[arg(long)]
    ambient_dim: Option<usize>,
    #[arg(long, default_value = "2,3")]
    dims: String,
    #[arg(long, default_value_t = 3)]
    repeat: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Data(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_data_error() {
            Failure::Data(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Stream(a) => cmd_stream(&a, out),
        Command::Coboundary(a) => cmd_coboundary(&a, out),
        Command::ApparentPairs(a) => cmd_apparent_pairs(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DATA
        }
        Err(Failure::Mismatch) => {
            let _ = writeln!(err, "error: verification failed");
            EXIT_MISMATCH
        }
    }
}

fn load(path: &PathBuf, format: Format) -> Result<DistanceMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    let m = match format {
        Format::PointCloud => DistanceMatrix::from_points(&PointCloud::parse_csv(&text)?),
        Format::LowerDistanceMatrix => DistanceMatrix::parse_lower(&text)?,
        Format::DistanceMatrix => DistanceMatrix::parse_full(&text)?,
    };
    Ok(m)
}

fn resolve_threshold(text: &str, m: &DistanceMatrix) -> Result<f64, Failure> {
    if text == "auto" {
        return Ok(m.enclosing_radius());
    }
    match text.parse::<f64>() {
        Ok(r) if r >= 0.0 && !r.is_nan() => Ok(r),
        _ => Err(Failure::Usage(format!(
            "bad threshold `{text}`: expected `auto` or a distance"
        ))),
    }
}

fn parse_dims(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("bad dimension list `{text}`"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}

fn vertex_list(vertices: &[Vertex]) -> String {
    let mut s = String::new();
    write_vertices(&mut s, vertices).expect("writing to a String");
    s
}

/// Simplices of one dimension from the selected algorithm.
fn dimension_stream<'a>(
    m: &'a DistanceMatrix,
    nl: &'a NeighborhoodLists,
    dim: usize,
    threshold: f64,
    algorithm: Algorithm,
    skip_apparent: bool,
) -> Box<dyn Iterator<Item = Simplex> + 'a> {
    match (dim, algorithm) {
        (0, _) => Box::new(vertex_stream(m)),
        (1, _) => Box::new(edge_stream(m, threshold).into_iter()),
        (_, Algorithm::Inorder) => {
            Box::new(SimplexStream::new(m, nl, dim, threshold, skip_apparent))
        }
        (_, Algorithm::Colex) => {
            let all = baseline_simplex_stream(m, dim, threshold).into_iter();
            if skip_apparent {
                Box::new(all.filter(move |tau| !is_apparent_cofacet(tau, nl, m)))
            } else {
                Box::new(all)
            }
        }
    }
}

fn is_apparent_cofacet(tau: &Simplex, nl: &NeighborhoodLists, m: &DistanceMatrix) -> bool {
    let facet = classify_first_full_diameter_facet(tau)
        .expect("dimension >= 2")
        .facet;
    apparent_cofacet(&facet, nl, m)
        .expect("facet has dimension >= 1")
        .is_some_and(|t| t.vertices() == tau.vertices())
}

fn cmd_stream(a: &StreamArgs, out: &mut dyn Write) -> CmdResult {
    let m = load(&a.input.input, a.input.format)?;
    let threshold = resolve_threshold(&a.threshold, &m)?;
    let nl = NeighborhoodLists::new(&m);
    if let Some(max_dim) = a.max_dim {
        if a.skip_apparent {
            return Err(Failure::Usage(
                "--skip-apparent needs a single --dim".into(),
            ));
        }
        let merged: Box<dyn Iterator<Item = Simplex>> = match a.algorithm {
            Algorithm::Inorder => Box::new(full_filtration_stream(&m, &nl, max_dim, threshold)),
            Algorithm::Colex => {
                let mut all: Vec<Simplex> = (0..=max_dim)
                    .flat_map(|d| dimension_stream(&m, &nl, d, threshold, Algorithm::Colex, false))
                    .collect();
                all.sort_by(canonical_cmp);
                Box::new(all.into_iter())
            }
        };
        if a.counts_only {
            let mut counts = vec![0usize; max_dim + 1];
            merged.for_each(|s| counts[s.dim()] += 1);
            for (d, c) in counts.iter().enumerate() {
                writeln!(out, "{d} {c}")?;
            }
        } else {
            for s in merged {
                writeln!(out, "{s}")?;
            }
        }
        return Ok(());
    }
    let dim = a.dim.expect("clap requires --dim or --max-dim");
    let stream = dimension_stream(&m, &nl, dim, threshold, a.algorithm, a.skip_apparent);
    if a.counts_only {
        writeln!(out, "{dim} {}", stream.count())?;
    } else {
        for s in stream {
            writeln!(out, "{s}")?;
        }
    }
    Ok(())
}

fn parse_simplex(text: &str, m: &DistanceMatrix) -> Result<Simplex, Failure> {
    let mut vertices = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<Vertex>()
                .map_err(|_| Failure::Usage(format!("bad vertex `{t}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    vertices.sort_unstable();
    vertices.dedup();
    Ok(Simplex::new(vertices, m)?)
}

fn cmd_coboundary(a: &CoboundaryArgs, out: &mut dyn Write) -> CmdResult {
    let m = load(&a.input.input, a.input.format)?;
    let threshold = a
        .threshold
        .as_deref()
        .map(|t| resolve_threshold(t, &m))
        .transpose()?;
    let sigma = parse_simplex(&a.simplex, &m)?;
    if sigma.dim() == 0 {
        return Err(Failure::Usage(
            "coboundary needs at least two vertices".into(),
        ));
    }
    let nl = NeighborhoodLists::new(&m);
    let mut cob: Coboundary = coboundary(&sigma, &nl, &m, threshold)?;
    cob.find_candidate();
    for (w, d) in cob.by_ref() {
        writeln!(out, "{w} {d}")?;
    }
    if a.stats {
        let st = cob.stats();
        writeln!(
            out,
            "init_pops={} baseline_visits={}",
            st.init_pops, st.baseline_visits
        )?;
    }
    Ok(())
}

fn cmd_apparent_pairs(a: &ApparentArgs, out: &mut dyn Write) -> CmdResult {
    if a.dim == 0 {
        return Err(Failure::Usage("apparent pairs start at dimension 1".into()));
    }
    let m = load(&a.input.input, a.input.format)?;
    let threshold = resolve_threshold(&a.threshold, &m)?;
    let nl = NeighborhoodLists::new(&m);
    for sigma in dimension_stream(&m, &nl, a.dim, threshold, Algorithm::Inorder, false) {
        if let Some(tau) = apparent_cofacet(&sigma, &nl, &m)? {
            writeln!(
                out,
                "{} {} {}",
                vertex_list(sigma.vertices()),
                vertex_list(tau.vertices()),
                sigma.diameter()
            )?;
        }
    }
    Ok(())
}

struct Report<'w> {
    out: &'w mut dyn Write,
    failures: usize,
}

impl Report<'_> {
    fn check(
        &mut self,
        ok: bool,
        what: &str,
        detail: impl FnOnce() -> String,
    ) -> std::io::Result<()> {
        if ok {
            writeln!(self.out, "ok {what}")
        } else {
            self.failures += 1;
            writeln!(self.out, "MISMATCH {what}: {}", detail())
        }
    }
}

fn first_difference(a: &[Simplex], b: &[Simplex]) -> String {
    let pos = a
        .iter()
        .zip(b)
        .position(|(x, y)| x != y)
        .unwrap_or(a.len().min(b.len()));
    let show = |s: Option<&Simplex>| s.map_or("<end>".to_string(), |s| s.to_string());
    format!(
        "at #{pos}: got {} expected {}",
        show(a.get(pos)),
        show(b.get(pos))
    )
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let m = match (a.random, &a.input) {
        (Some(n), _) => DistanceMatrix::from_points(&bench::random_cloud(n, a.ambient_dim, a.seed)),
        (None, Some(path)) => load(path, a.format)?,
        (None, None) => unreachable!("clap requires --input or --random"),
    };
    if m.len() > VERIFY_MAX_POINTS {
        return Err(Failure::Usage(format!(
            "verify is limited to {VERIFY_MAX_POINTS} points, input has {}",
            m.len()
        )));
    }
    let dims = parse_dims(&a.dims)?;
    if dims.iter().any(|&d| d < 2) {
        return Err(Failure::Usage(
            "verify checks stream dimensions >= 2".into(),
        ));
    }
    let threshold = resolve_threshold(&a.threshold, &m)?;
    let nl = NeighborhoodLists::new(&m);
    let mut report = Report { out, failures: 0 };

    for &dim in &dims {
        let expected = oracle::brute_simplices(&m, dim, threshold);
        let raw: Vec<Simplex> = SimplexStream::new(&m, &nl, dim, threshold, false).collect();
        let monotone = raw.windows(2).all(|w| w[0].diameter() <= w[1].diameter());
        report.check(monotone, &format!("inorder dim {dim} order"), || {
            "diameter decreased".into()
        })?;
        let mut inorder = raw;
        inorder.sort_by(canonical_cmp);
        report.check(
            inorder == expected,
            &format!("inorder dim {dim} ({} simplices)", expected.len()),
            || first_difference(&inorder, &expected),
        )?;
        let colex = baseline_simplex_stream(&m, dim, threshold);
        report.check(colex == expected, &format!("colex dim {dim}"), || {
            first_difference(&colex, &expected)
        })?;

        let apparent: Vec<Vec<Vertex>> = oracle::brute_apparent_pairs(&m, dim - 1, threshold)
            .into_iter()
            .map(|(_, tau)| tau.vertices().to_vec())
            .collect();
        let kept: Vec<Simplex> = expected
            .iter()
            .filter(|s| !apparent.iter().any(|t| t.as_slice() == s.vertices()))
            .cloned()
            .collect();
        let mut skipped: Vec<Simplex> = SimplexStream::new(&m, &nl, dim, threshold, true).collect();
        skipped.sort_by(canonical_cmp);
        report.check(skipped == kept, &format!("skip-apparent dim {dim}"), || {
            first_difference(&skipped, &kept)
        })?;
    }

    let top = dims.iter().copied().max().unwrap_or(2);
    for dim in 1..top {
        let pairs = oracle::brute_apparent_pairs(&m, dim, threshold);
        let mut bad = None;
        let simplices = oracle::brute_simplices(&m, dim, threshold);
        for sigma in &simplices {
            let got = apparent_cofacet(sigma, &nl, &m)?;
            let want = pairs
                .iter()
                .find(|(s, _)| s.vertices() == sigma.vertices())
                .map(|(_, t)| t);
            if got.as_ref().map(Simplex::vertices) != want.map(Simplex::vertices) {
                bad = Some(sigma.to_string());
                break;
            }
        }
        report.check(
            bad.is_none(),
            &format!("apparent pairs dim {dim} ({} pairs)", pairs.len()),
            || format!("facet {}", bad.clone().unwrap_or_default()),
        )?;

        // every simplex when small, otherwise an even sample
        let stride = simplices.len().div_ceil(200).max(1);
        let mut bad = None;
        for sigma in simplices.iter().step_by(stride) {
            let got: Vec<(Vertex, f64)> = coboundary(sigma, &nl, &m, Some(threshold))?.collect();
            let ordered = got.windows(2).all(|w| w[0].1 <= w[1].1);
            let mut sorted = got;
            sorted.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            if !ordered || sorted != oracle::brute_cofacets(sigma, &m, threshold) {
                bad = Some(sigma.to_string());
                break;
            }
        }
        report.check(bad.is_none(), &format!("coboundaries dim {dim}"), || {
            format!("simplex {}", bad.clone().unwrap_or_default())
        })?;
    }

    if report.failures > 0 {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> CmdResult {
    match a.mode {
        Mode::Stream => {
            let cfg = StreamBenchConfig {
                sizes: a.sizes.clone(),
                ambient_dim: a.ambient_dim.unwrap_or(3),
                dims: parse_dims(&a.dims)?,
                repeat: a.repeat,
                seed: a.seed,
            };
            let rows = bench::run_stream_bench(&cfg)?;
            bench::write_csv(&mut *out, &rows)?;
            if rows.iter().any(|r| !r.equal) {
                return Err(Failure::Mismatch);
            }
        }
        Mode::Apparent => {
            let cfg = ApparentBenchConfig {
                sizes: a.sizes.clone(),
                ambient_dim: a.ambient_dim.unwrap_or(5),
                repeat: a.repeat,
                seed: a.seed,
            };
            bench::write_csv(&mut *out, &bench::run_apparent_bench(&cfg)?)?;
        }
    }
    Ok(())
}
