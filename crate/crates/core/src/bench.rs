//! Benchmark grid over datasets, operations, algorithms and trees, emitted as CSV.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::datasets::{gen_uniform_raw, generate, DatasetSpec, Family};
use crate::error::{Error, Result};
use crate::filters::{filter_set, pareto_sum, pareto_union, Algorithm, FilterResult, TreeKind};
use crate::oracle::pareto_frontier;
use crate::point::PointSet;
use crate::tree::LeafCapacity;

/// Derives the seed of the second operand from the first.
pub const SECOND_SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Union,
    Sum,
    Filter,
}

impl Op {
    pub const ALL: [Op; 3] = [Op::Union, Op::Sum, Op::Filter];

    pub fn name(self) -> &'static str {
        match self {
            Op::Union => "union",
            Op::Sum => "sum",
            Op::Filter => "filter",
        }
    }

    pub fn supports(self, algo: Algorithm) -> bool {
        algo != Algorithm::SymNd || self == Op::Union
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Op {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "union" => Ok(Op::Union),
            "sum" => Ok(Op::Sum),
            "filter" => Ok(Op::Filter),
            _ => Err(Error::InvalidArgument(format!("unknown operation `{s}`"))),
        }
    }
}

/// One measured run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub family: String,
    pub d: usize,
    pub n_a: usize,
    pub n_b: usize,
    pub op: Op,
    pub algorithm: Algorithm,
    pub tree: TreeKind,
    pub seed: u64,
    pub m: usize,
    pub output_size: usize,
    pub comparisons: u64,
    pub node_visits: u64,
    pub leaf_scans: u64,
    pub elapsed_ns: u64,
}

impl BenchRow {
    pub const HEADER: [&'static str; 14] = [
        "family",
        "d",
        "n_a",
        "n_b",
        "op",
        "algorithm",
        "tree",
        "seed",
        "m",
        "output_size",
        "comparisons",
        "node_visits",
        "leaf_scans",
        "elapsed_ns",
    ];

    pub fn record(&self) -> [String; 14] {
        [
            self.family.clone(),
            self.d.to_string(),
            self.n_a.to_string(),
            self.n_b.to_string(),
            self.op.to_string(),
            self.algorithm.to_string(),
            self.tree.to_string(),
            self.seed.to_string(),
            self.m.to_string(),
            self.output_size.to_string(),
            self.comparisons.to_string(),
            self.node_visits.to_string(),
            self.leaf_scans.to_string(),
            self.elapsed_ns.to_string(),
        ]
    }

    #[allow(clippy::too_many_arguments)]
    pub fn from_result(
        family: &str,
        op: Op,
        algorithm: Algorithm,
        tree: TreeKind,
        seed: u64,
        m: LeafCapacity,
        a: &PointSet,
        b: Option<&PointSet>,
        res: &FilterResult,
    ) -> Self {
        Self {
            family: family.to_string(),
            d: a.dim(),
            n_a: a.len(),
            n_b: b.map_or(0, PointSet::len),
            op,
            algorithm,
            tree,
            seed,
            m: m.get(),
            output_size: res.frontier.len(),
            comparisons: res.stats.comparisons,
            node_visits: res.stats.node_visits,
            leaf_scans: res.stats.leaf_scans,
            elapsed_ns: res.stats.elapsed_ns,
        }
    }
}

/// A Pareto set of the family. For [`Family::Uniform`] this is the frontier of `n` raw points.
pub fn pareto_input(family: Family, d: usize, n: usize, seed: u64) -> Result<PointSet> {
    if family == Family::Uniform {
        Ok(pareto_frontier(&gen_uniform_raw(d, n, seed)?))
    } else {
        Ok(generate(&DatasetSpec::new(family, d, n, seed))?.points)
    }
}

/// Operands for one grid cell: two Pareto sets for unions and sums, one raw sample for filtering.
pub fn op_inputs(
    family: Family,
    d: usize,
    n: usize,
    seed: u64,
    op: Op,
) -> Result<(PointSet, Option<PointSet>)> {
    match op {
        Op::Union | Op::Sum => Ok((
            pareto_input(family, d, n, seed)?,
            Some(pareto_input(family, d, n, seed ^ SECOND_SEED_MIX)?),
        )),
        Op::Filter => {
            let f = if family == Family::Uniform {
                gen_uniform_raw(d, n, seed)?
            } else {
                generate(&DatasetSpec::new(family, d, n, seed))?.points
            };
            Ok((f, None))
        }
    }
}

pub fn run_op(
    op: Op,
    algo: Algorithm,
    kind: TreeKind,
    a: &PointSet,
    b: Option<&PointSet>,
    m: LeafCapacity,
) -> Result<FilterResult> {
    let second = || b.ok_or_else(|| Error::InvalidArgument(format!("{op} needs two inputs")));
    match op {
        Op::Union => pareto_union(a, second()?, algo, kind, m),
        Op::Sum => pareto_sum(a, second()?, algo, kind, m),
        Op::Filter => filter_set(a, algo, kind, m),
    }
}

/// Cartesian benchmark grid.
#[derive(Clone, Debug)]
pub struct Grid {
    pub families: Vec<Family>,
    pub dims: Vec<usize>,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub ops: Vec<Op>,
    pub algos: Vec<Algorithm>,
    pub trees: Vec<TreeKind>,
    pub m: LeafCapacity,
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        let lists = [
            ("families", self.families.is_empty()),
            ("dims", self.dims.is_empty()),
            ("sizes", self.sizes.is_empty()),
            ("seeds", self.seeds.is_empty()),
            ("ops", self.ops.is_empty()),
            ("algos", self.algos.is_empty()),
            ("trees", self.trees.is_empty()),
        ];
        if let Some((name, _)) = lists.iter().find(|(_, empty)| *empty) {
            return Err(Error::InvalidArgument(format!("empty {name} list")));
        }
        for &family in &self.families {
            for &d in &self.dims {
                for &n in &self.sizes {
                    DatasetSpec::new(family, d, n, 0).validate()?;
                }
            }
        }
        Ok(())
    }

    /// Cells that will produce a row, in output order.
    pub fn cells(&self) -> usize {
        let pairs: usize = self
            .ops
            .iter()
            .map(|op| self.algos.iter().filter(|a| op.supports(**a)).count() * self.trees.len())
            .sum();
        self.families.len() * self.dims.len() * self.sizes.len() * self.seeds.len() * pairs
    }

    /// Runs every cell, writing one CSV row each and flushing after every row.
    pub fn run<W: Write>(&self, out: W) -> Result<usize> {
        self.validate()?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(BenchRow::HEADER)?;
        w.flush()?;
        let mut rows = 0;
        for &family in &self.families {
            for &d in &self.dims {
                for &n in &self.sizes {
                    for &seed in &self.seeds {
                        for &op in &self.ops {
                            let (a, b) = op_inputs(family, d, n, seed, op)?;
                            for &algo in self.algos.iter().filter(|a| op.supports(**a)) {
                                for &kind in &self.trees {
                                    let res = run_op(op, algo, kind, &a, b.as_ref(), self.m)?;
                                    let row = BenchRow::from_result(
                                        family.name(),
                                        op,
                                        algo,
                                        kind,
                                        seed,
                                        self.m,
                                        &a,
                                        b.as_ref(),
                                        &res,
                                    );
                                    w.write_record(row.record())?;
                                    w.flush()?;
                                    rows += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(rows)
    }
}
