//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O, parse or generation failure, 2 invalid arguments,
//! 3 `--verify` mismatch.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bench::{run_op, BenchRow, Grid, Op};
use crate::datasets::{generate, read_points, write_points, DatasetSpec, Family};
use crate::error::Error;
use crate::filters::{union_input, Algorithm, TreeKind};
use crate::oracle::pareto_frontier;
use crate::point::{dedup, minkowski_sum, PointSet};
use crate::stats::FilterStats;
use crate::tree::{DominanceTree, LeafCapacity, NdPlusTree, QndPlusTree, TndPlusTree};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ndplus", version, about = "Pareto union and sum filtering with ND+ trees")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a synthetic point set.
    Generate(GenerateArgs),
    /// Pareto frontier of one point set.
    Filter(FilterArgs),
    /// Pareto frontier of the union of two point sets.
    Union(PairArgs),
    /// Pareto frontier of the Minkowski sum of two point sets.
    Sum(PairArgs),
    /// Tree shape and query cost for a point set.
    Stats(StatsArgs),
    /// Run a benchmark grid and write CSV.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_parser = parse_with::<Family>)]
    family: Family,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    oversample: usize,
    #[arg(long)]
    plateau_fraction: Option<f64>,
    #[arg(long)]
    plateau_dims: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct AlgoArgs {
    #[arg(long, value_parser = parse_with::<Algorithm>)]
    algo: Algorithm,
    #[arg(long, value_parser = parse_with::<TreeKind>)]
    tree: TreeKind,
    #[arg(long, default_value_t = LeafCapacity::DEFAULT.get())]
    m: usize,
    #[arg(long)]
    out: PathBuf,
    /// Also write one CSV benchmark row.
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Check the result against the brute-force oracle.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
struct FilterArgs {
    input: PathBuf,
    #[command(flatten)]
    common: AlgoArgs,
}

#[derive(Args, Debug)]
struct PairArgs {
    a: PathBuf,
    b: PathBuf,
    #[command(flatten)]
    common: AlgoArgs,
}

#[derive(Args, Debug)]
struct StatsArgs {
    input: PathBuf,
    #[arg(long, value_parser = parse_with::<TreeKind>)]
    tree: TreeKind,
    #[arg(long, default_value_t = LeafCapacity::DEFAULT.get())]
    m: usize,
    /// Point file whose points are run as dominance queries.
    #[arg(long)]
    queries: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_with::<Family>)]
    families: Vec<Family>,
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    #[arg(long, value_delimiter = ',', value_parser = parse_with::<Op>)]
    ops: Vec<Op>,
    #[arg(long, value_delimiter = ',', value_parser = parse_with::<Algorithm>)]
    algos: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', value_parser = parse_with::<TreeKind>)]
    trees: Vec<TreeKind>,
    #[arg(long, default_value_t = LeafCapacity::DEFAULT.get())]
    m: usize,
    #[arg(long)]
    out: PathBuf,
}

fn parse_with<T: std::str::FromStr<Err = Error>>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_)
            | Error::UnsupportedDimension(_)
            | Error::InvalidMask { .. } => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Error::from(e).into()
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.cmd {
        Command::Generate(a) => cmd_generate(a),
        Command::Filter(a) => cmd_filter(a),
        Command::Union(a) => cmd_pair(Op::Union, a),
        Command::Sum(a) => cmd_pair(Op::Sum, a),
        Command::Stats(a) => cmd_stats(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn leaf_capacity(m: usize) -> std::result::Result<LeafCapacity, Failure> {
    LeafCapacity::new(m).map_err(Failure::from)
}

fn cmd_generate(a: GenerateArgs) -> CmdResult {
    let mut spec = DatasetSpec::new(a.family, a.d, a.n, a.seed);
    spec.oversample = a.oversample;
    if let Some(f) = a.plateau_fraction {
        spec.plateau_fraction = f;
    }
    spec.plateau_dims = a.plateau_dims;
    spec.validate()?;
    let ds = generate(&spec)?;
    write_points(&ds.points, &a.out)?;
    Ok(())
}

fn load(path: &Path) -> std::result::Result<PointSet, Failure> {
    Ok(dedup(read_points(path)?))
}

fn run_and_write(
    op: Op,
    common: &AlgoArgs,
    a: &PointSet,
    b: Option<&PointSet>,
) -> CmdResult {
    if !op.supports(common.algo) {
        return Err(usage(format!(
            "{} applies only to the union of two Pareto sets",
            common.algo
        )));
    }
    let m = leaf_capacity(common.m)?;
    let res = run_op(op, common.algo, common.tree, a, b, m)?;
    write_points(&res.frontier, &common.out)?;
    if let Some(path) = &common.stats {
        let row = BenchRow::from_result("file", op, common.algo, common.tree, 0, m, a, b, &res);
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(BenchRow::HEADER)?;
        w.write_record(row.record())?;
        w.flush()?;
    }
    if common.verify {
        let input = match (op, b) {
            (Op::Union, Some(b)) => union_input(a, b)?,
            (Op::Sum, Some(b)) => minkowski_sum(a, b)?,
            _ => a.clone(),
        };
        if !pareto_frontier(&input).set_eq(&res.frontier) {
            return Err(Failure {
                code: EXIT_MISMATCH,
                message: "result differs from the brute-force frontier".into(),
            });
        }
    }
    Ok(())
}

fn cmd_filter(a: FilterArgs) -> CmdResult {
    if a.common.algo == Algorithm::SymNd {
        return Err(usage("symnd applies only to the union of two Pareto sets"));
    }
    leaf_capacity(a.common.m)?;
    let input = load(&a.input)?;
    run_and_write(Op::Filter, &a.common, &input, None)
}

fn cmd_pair(op: Op, a: PairArgs) -> CmdResult {
    if !op.supports(a.common.algo) {
        return Err(usage("symnd applies only to the union of two Pareto sets"));
    }
    leaf_capacity(a.common.m)?;
    let mut first = load(&a.a)?;
    let mut second = load(&a.b)?;
    if a.common.algo == Algorithm::SymNd {
        first = first.verify_pareto()?;
        second = second.verify_pareto()?;
    }
    run_and_write(op, &a.common, &first, Some(&second))
}

fn cmd_stats(a: StatsArgs, out: &mut dyn Write) -> CmdResult {
    let m = leaf_capacity(a.m)?;
    let input = load(&a.input)?;
    let queries = a.queries.as_deref().map(load).transpose()?;
    match a.tree {
        TreeKind::NdPlus => report::<NdPlusTree>(a.tree, &input, m, queries.as_ref(), out),
        TreeKind::QndPlus => report::<QndPlusTree>(a.tree, &input, m, queries.as_ref(), out),
        TreeKind::TndPlus => report::<TndPlusTree>(a.tree, &input, m, queries.as_ref(), out),
    }
}

fn report<T: DominanceTree>(
    kind: TreeKind,
    input: &PointSet,
    m: LeafCapacity,
    queries: Option<&PointSet>,
    out: &mut dyn Write,
) -> CmdResult {
    let tree = T::build_masked(input, m, crate::point::DimMask::EMPTY)?;
    let s = tree.shape_stats();
    writeln!(out, "tree={kind} m={m} points={}", s.points)?;
    writeln!(out, "max_height={} min_height={} bi={}", s.max_depth, s.min_depth, s.balance_indicator)?;
    writeln!(out, "avg_leaf_depth={:.3} nodes={} leaves={}", s.avg_leaf_depth, s.nodes, s.leaves)?;
    if let Some(queries) = queries {
        if queries.dim() != input.dim() {
            return Err(Error::DimensionMismatch {
                expected: input.dim(),
                found: queries.dim(),
            }
            .into());
        }
        let mut stats = FilterStats::default();
        let mut dominated = 0usize;
        for q in queries {
            if tree.dominated(q, crate::point::DimMask::EMPTY, &mut stats)? {
                dominated += 1;
            }
        }
        let per = |v: u64| v as f64 / queries.len().max(1) as f64;
        writeln!(
            out,
            "queries={} dominated={dominated} avg_comparisons={:.3} avg_node_visits={:.3}",
            queries.len(),
            per(stats.comparisons),
            per(stats.node_visits)
        )?;
    }
    Ok(())
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> CmdResult {
    let grid = Grid {
        families: a.families,
        dims: a.dims,
        sizes: a.sizes,
        seeds: a.seeds,
        ops: a.ops,
        algos: a.algos,
        trees: a.trees,
        m: leaf_capacity(a.m)?,
    };
    grid.validate()?;
    let file = BufWriter::new(File::create(&a.out)?);
    let rows = grid.run(file)?;
    writeln!(out, "wrote {rows} rows to {}", a.out.display())?;
    Ok(())
}
