//! Dominance filtering for Pareto unions and Minkowski sums.
//!
//! Points are minimized in every coordinate. The crate provides three leaf-oriented index
//! trees ([`NdPlusTree`], [`QndPlusTree`], [`TndPlusTree`]), the filters built on them
//! ([`plain_nd_red`], [`pre_nd`], [`sym_nd`]), a brute-force [`oracle_pareto`], seeded
//! dataset generators and a plain-text point file format.
//!
//! ```
//! use ndplus::{minkowski_sum, pre_nd, PointSet, TreeKind, LeafCapacity};
//!
//! let a = PointSet::from_rows(&[[3.0, 5.0, 4.0], [5.0, 2.0, 1.0]]).unwrap();
//! let b = PointSet::from_rows(&[[2.0, 1.0, 3.0], [6.0, 3.0, 2.0]]).unwrap();
//! let sum = minkowski_sum(&a, &b).unwrap();
//! let res = pre_nd(&sum, TreeKind::QndPlus, LeafCapacity::DEFAULT).unwrap();
//! assert_eq!(res.frontier.len(), 3);
//! ```

pub mod bench;
pub mod cli;
pub mod datasets;
mod error;
pub mod filters;
pub mod golden;
mod oracle;
mod point;
mod select;
mod stats;
pub mod tree;

pub use error::{Error, Result};
pub use filters::{
    filter_set, pareto_subset, pareto_sum, pareto_union, plain_nd_red, pre_nd, sym_nd,
    union_input, Algorithm, FilterResult, TreeKind,
};
pub use oracle::{frontier_prefix, oracle_pareto, pareto_frontier};
pub use point::{
    dedup, dominates, lex_cmp, lex_sort, minkowski_sum, DimMask, Point, PointSet, MAX_DIM,
    MIN_DIM,
};
pub use select::{quartiles, select_kth, Quartiles};
pub use stats::FilterStats;
pub use tree::{
    DominanceTree, LeafCapacity, LeafView, NdPlusTree, QndPlusTree, TndPlusTree, TreeShapeStats,
};
