//! Dominance filters built on the index trees.
//!
//! Every filter deduplicates its input, processes points in lexicographic order and never
//! removes a point once accepted: a later point in that order cannot dominate an earlier one.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::point::{check_same_dim, dedup, lex_sort, minkowski_sum, DimMask, Point, PointSet};
use crate::stats::FilterStats;
use crate::tree::{DominanceTree, LeafCapacity, NdPlusTree, QndPlusTree, TndPlusTree};

/// Index structure backing a filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeKind {
    NdPlus,
    QndPlus,
    TndPlus,
}

impl TreeKind {
    pub const ALL: [TreeKind; 3] = [TreeKind::NdPlus, TreeKind::QndPlus, TreeKind::TndPlus];

    pub fn name(self) -> &'static str {
        match self {
            TreeKind::NdPlus => "nd",
            TreeKind::QndPlus => "qnd",
            TreeKind::TndPlus => "tnd",
        }
    }
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TreeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nd" | "ndplus" => Ok(TreeKind::NdPlus),
            "qnd" | "qndplus" => Ok(TreeKind::QndPlus),
            "tnd" | "tndplus" => Ok(TreeKind::TndPlus),
            _ => Err(Error::InvalidArgument(format!("unknown tree kind `{s}`"))),
        }
    }
}

/// Filtering algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    PlainNdRed,
    PreNd,
    /// Only defined for unions of two Pareto sets.
    SymNd,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::PlainNdRed, Algorithm::PreNd, Algorithm::SymNd];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::PlainNdRed => "plainndred",
            Algorithm::PreNd => "prend",
            Algorithm::SymNd => "symnd",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plainndred" => Ok(Algorithm::PlainNdRed),
            "prend" => Ok(Algorithm::PreNd),
            "symnd" => Ok(Algorithm::SymNd),
            _ => Err(Error::InvalidArgument(format!("unknown algorithm `{s}`"))),
        }
    }
}

/// Frontier of a filtering run together with its instrumentation.
#[derive(Clone, Debug)]
pub struct FilterResult {
    pub frontier: PointSet,
    pub stats: FilterStats,
}

macro_rules! with_tree {
    ($kind:expr, $t:ident => $body:expr) => {
        match $kind {
            TreeKind::NdPlus => {
                type $t = NdPlusTree;
                $body
            }
            TreeKind::QndPlus => {
                type $t = QndPlusTree;
                $body
            }
            TreeKind::TndPlus => {
                type $t = TndPlusTree;
                $body
            }
        }
    };
}

fn finish(dim: usize, kept: Vec<Point>, mut stats: FilterStats, start: Instant) -> FilterResult {
    stats.add_elapsed(start.elapsed());
    FilterResult {
        frontier: PointSet::from_parts(dim, kept, true),
        stats,
    }
}

/// Single pass over `f` in lexicographic order, keeping every point not dominated by an
/// earlier kept point. The tree ignores the first dimension: after sorting, an earlier
/// point is never larger there.
pub fn plain_nd_red(f: &PointSet, kind: TreeKind, m: LeafCapacity) -> Result<FilterResult> {
    with_tree!(kind, T => plain_nd_red_with::<T>(f, m))
}

fn plain_nd_red_with<T: DominanceTree>(f: &PointSet, m: LeafCapacity) -> Result<FilterResult> {
    let start = Instant::now();
    let d = f.dim();
    let sorted = lex_sort(dedup(f.clone()));
    let mut stats = FilterStats::default();
    let mut tree = T::empty(d, m, DimMask::EMPTY.with(0))?;
    let mut kept = Vec::new();
    for p in sorted.into_points() {
        if !tree.dominated(&p, DimMask::EMPTY, &mut stats)? {
            tree.insert(p.clone())?;
            kept.push(p);
        }
    }
    Ok(finish(d, kept, stats, start))
}

/// Splits `f` into a guaranteed-Pareto part `P` and the remainder `Q`.
///
/// Scans `f` in lexicographic order keeping the running minimum of every dimension but the
/// first; a point that lowers any of those minima goes to `P`, every other point to `Q`.
/// Both parts are returned in lexicographic order. For `d == 2`, `P` is the full frontier.
pub fn pareto_subset(f: &PointSet) -> (PointSet, PointSet) {
    let d = f.dim();
    let sorted = lex_sort(dedup(f.clone()));
    let mut y = vec![f64::INFINITY; d];
    let (mut p_part, mut q_part) = (Vec::new(), Vec::new());
    for p in sorted.into_points() {
        let mut improves = false;
        for j in 1..d {
            if p[j] < y[j] {
                y[j] = p[j];
                improves = true;
            }
        }
        if improves {
            p_part.push(p);
        } else {
            q_part.push(p);
        }
    }
    (
        PointSet::from_parts(d, p_part, true),
        PointSet::from_parts(d, q_part, false),
    )
}

/// Builds a tree over the `P` part of [`pareto_subset`] and then filters `Q` against it,
/// inserting each survivor.
pub fn pre_nd(f: &PointSet, kind: TreeKind, m: LeafCapacity) -> Result<FilterResult> {
    with_tree!(kind, T => pre_nd_with::<T>(f, m))
}

fn pre_nd_with<T: DominanceTree>(f: &PointSet, m: LeafCapacity) -> Result<FilterResult> {
    let start = Instant::now();
    let (p_part, q_part) = pareto_subset(f);
    let mut stats = FilterStats::default();
    let mut tree = T::build_masked(&p_part, m, DimMask::EMPTY)?;
    let mut kept = p_part.into_points();
    for q in q_part.into_points() {
        if !tree.dominated(&q, DimMask::EMPTY, &mut stats)? {
            tree.insert(q.clone())?;
            kept.push(q);
        }
    }
    Ok(finish(f.dim(), kept, stats, start))
}

/// Pareto union of two verified Pareto sets.
///
/// Drops the points of `b` dominated by `a`, then the points of `a` dominated by what is
/// left of `b`. Points of `b` that also occur in `a` are removed first.
pub fn sym_nd(a: &PointSet, b: &PointSet, kind: TreeKind, m: LeafCapacity) -> Result<FilterResult> {
    check_same_dim(a.dim(), b.dim())?;
    if !a.is_pareto_verified() || !b.is_pareto_verified() {
        return Err(Error::NotParetoVerified);
    }
    with_tree!(kind, T => sym_nd_with::<T>(a, b, m))
}

fn sym_nd_with<T: DominanceTree>(a: &PointSet, b: &PointSet, m: LeafCapacity) -> Result<FilterResult> {
    let start = Instant::now();
    let d = a.dim();
    let in_a: std::collections::HashSet<&Point> = a.iter().collect();
    let b_only: Vec<Point> = b.iter().filter(|p| !in_a.contains(p)).cloned().collect();
    let mut stats = FilterStats::default();

    let tree_a = T::build_masked(a, m, DimMask::EMPTY)?;
    let mut b_kept = Vec::with_capacity(b_only.len());
    for p in b_only {
        if !tree_a.dominated(&p, DimMask::EMPTY, &mut stats)? {
            b_kept.push(p);
        }
    }
    drop(tree_a);

    let b_kept = PointSet::from_parts(d, b_kept, true);
    let tree_b = T::build_masked(&b_kept, m, DimMask::EMPTY)?;
    let mut kept = Vec::with_capacity(a.len() + b_kept.len());
    for p in a {
        if !tree_b.dominated(p, DimMask::EMPTY, &mut stats)? {
            kept.push(p.clone());
        }
    }
    kept.extend(b_kept.into_points());
    Ok(finish(d, kept, stats, start))
}

/// `A ∪ B` without repeated points.
pub fn union_input(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    check_same_dim(a.dim(), b.dim())?;
    let points = a.iter().chain(b.iter()).cloned().collect();
    Ok(dedup(PointSet::from_parts(a.dim(), points, false)))
}

/// Filters a single point set. `SymNd` needs two inputs and is rejected.
pub fn filter_set(
    f: &PointSet,
    algo: Algorithm,
    kind: TreeKind,
    m: LeafCapacity,
) -> Result<FilterResult> {
    match algo {
        Algorithm::PlainNdRed => plain_nd_red(f, kind, m),
        Algorithm::PreNd => pre_nd(f, kind, m),
        Algorithm::SymNd => Err(Error::InvalidArgument(
            "symnd applies only to the union of two Pareto sets".into(),
        )),
    }
}

/// Pareto union `ND(A ∪ B)`.
pub fn pareto_union(
    a: &PointSet,
    b: &PointSet,
    algo: Algorithm,
    kind: TreeKind,
    m: LeafCapacity,
) -> Result<FilterResult> {
    match algo {
        Algorithm::SymNd => sym_nd(a, b, kind, m),
        _ => filter_set(&union_input(a, b)?, algo, kind, m),
    }
}

/// Pareto sum `ND(A ⊕ B)`. `SymNd` is rejected.
pub fn pareto_sum(
    a: &PointSet,
    b: &PointSet,
    algo: Algorithm,
    kind: TreeKind,
    m: LeafCapacity,
) -> Result<FilterResult> {
    if algo == Algorithm::SymNd {
        return filter_set(a, algo, kind, m);
    }
    filter_set(&minkowski_sum(a, b)?, algo, kind, m)
}
