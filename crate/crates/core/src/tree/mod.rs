//! Leaf-oriented index trees for dominance queries.
//!
//! All three variants store up to `m` points per leaf, keep a lower-bound vector per
//! node, and answer "is `p` dominated by a stored point?" with bound pruning:
//!
//! * [`NdPlusTree`]: binary, median split, split dimension cycles with depth.
//! * [`QndPlusTree`]: binary; a plateau at the median (`Q1 == Q2`) sends the plateau
//!   right and drops the split dimension inside that subtree.
//! * [`TndPlusTree`]: ternary; a plateau (`Q1 == Q2` or `Q2 == Q3`) gets its own
//!   middle child with the split dimension dropped.

mod common;
mod nd;
mod qnd;
mod tnd;

pub use nd::NdPlusTree;
pub use qnd::QndPlusTree;
pub use tnd::TndPlusTree;

use std::fmt;

use crate::error::{Error, Result};
use crate::point::{DimMask, Point, PointSet};
use crate::stats::FilterStats;

/// Maximum number of points per leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeafCapacity(usize);

impl LeafCapacity {
    pub const DEFAULT: LeafCapacity = LeafCapacity(8);

    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("leaf capacity must be >= 1".into()));
        }
        Ok(Self(m))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

impl Default for LeafCapacity {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Display for LeafCapacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Shape summary of a built tree. Depths count edges from the root.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TreeShapeStats {
    pub max_depth: usize,
    pub min_depth: usize,
    /// `max_depth - min_depth`.
    pub balance_indicator: usize,
    pub avg_leaf_depth: f64,
    pub nodes: usize,
    pub leaves: usize,
    pub points: usize,
}

/// A leaf seen from outside: its root-to-leaf path (`L`, `M`, `R` per edge), depth and points.
#[derive(Clone, Debug)]
pub struct LeafView<'a> {
    pub path: String,
    pub depth: usize,
    pub points: &'a [Point],
}

/// Operations shared by the three tree variants.
pub trait DominanceTree: Sized {
    /// Empty tree for `dim`-dimensional points. Dimensions in `base` are never split on and
    /// are meant to be masked in every query.
    fn empty(dim: usize, m: LeafCapacity, base: DimMask) -> Result<Self>;

    /// Batch-builds a tree over a deduplicated point set.
    fn build_masked(points: &PointSet, m: LeafCapacity, base: DimMask) -> Result<Self>;

    fn build(points: &PointSet, m: LeafCapacity) -> Self {
        Self::build_masked(points, m, DimMask::EMPTY)
            .expect("an empty mask is valid for every supported dimensionality")
    }

    /// Inserts a point that is not coordinate-identical to a stored one.
    fn insert(&mut self, p: Point) -> Result<()>;

    /// Whether some stored point dominates `p` under `mask`.
    ///
    /// With an empty mask this is Pareto dominance (a stored copy of `p` itself does not
    /// count). With a non-empty mask it is weak dominance on the remaining dimensions.
    fn dominated(&self, p: &Point, mask: DimMask, stats: &mut FilterStats) -> Result<bool>;

    fn shape_stats(&self) -> TreeShapeStats;

    /// Leaves in left-to-right order.
    fn leaves(&self) -> Vec<LeafView<'_>>;

    /// Full structural check: partition, lower-bound and exclusion invariants.
    fn validate(&self) -> Result<(), String>;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn dim(&self) -> usize;
}
