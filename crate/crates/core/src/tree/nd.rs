//! Binary median-split tree with per-node lower bounds.

use crate::error::{Error, Result};
use crate::point::{check_same_dim, DimMask, Point, PointSet};
use crate::select::upper_median;
use crate::stats::FilterStats;
use crate::tree::common::{self, below_bound, leaf_bounds, scan_leaf, widen, NodeView};
use crate::tree::{DominanceTree, LeafCapacity, LeafView, TreeShapeStats};

#[derive(Debug)]
struct Node {
    lb: Box<[f64]>,
    level: usize,
    /// Split dimension; for a leaf, the dimension it will split on when it overflows.
    dim: usize,
    kind: Kind,
}

#[derive(Debug)]
enum Kind {
    Leaf(Vec<Point>),
    Split {
        q: f64,
        left: Option<Box<Node>>,
        right: Option<Box<Node>>,
    },
}

struct Ctx<'a> {
    d: usize,
    m: usize,
    active: &'a [usize],
}

impl Ctx<'_> {
    #[inline]
    fn split_dim(&self, level: usize) -> usize {
        self.active[level % self.active.len()]
    }
}

/// ND⁺-tree: the split dimension of a level-`ℓ` node is the `ℓ mod k`-th active dimension.
///
/// Points with a value below the node's median go left, the rest go right.
#[derive(Debug)]
pub struct NdPlusTree {
    d: usize,
    m: LeafCapacity,
    base: DimMask,
    active: Vec<usize>,
    root: Option<Box<Node>>,
    len: usize,
}

impl NdPlusTree {
    fn ctx(&self) -> Ctx<'_> {
        Ctx {
            d: self.d,
            m: self.m.get(),
            active: &self.active,
        }
    }

    pub fn leaf_capacity(&self) -> LeafCapacity {
        self.m
    }
}

fn leaf(points: Vec<Point>, level: usize, ctx: &Ctx) -> Box<Node> {
    Box::new(Node {
        lb: leaf_bounds(&points, ctx.d),
        level,
        dim: ctx.split_dim(level),
        kind: Kind::Leaf(points),
    })
}

/// Upper median of `dim`. When that median is also the minimum the left side would be
/// empty; the next larger value is used instead if there is one.
fn split_value(points: &[Point], dim: usize) -> (f64, bool) {
    let mut values: Vec<f64> = points.iter().map(|p| p[dim]).collect();
    let k = values.len() / 2;
    let q = upper_median(&mut values);
    if values[..k].iter().any(|&v| v < q) {
        return (q, false);
    }
    match values[k + 1..].iter().copied().filter(|&v| v > q).reduce(f64::min) {
        Some(next) => (next, false),
        None => (q, true),
    }
}

fn build_node(points: Vec<Point>, level: usize, ctx: &Ctx, stalled: usize) -> Result<Box<Node>> {
    if points.len() <= ctx.m {
        return Ok(leaf(points, level, ctx));
    }
    let dim = ctx.split_dim(level);
    let (q, constant) = split_value(&points, dim);
    let stalled = if constant { stalled + 1 } else { 0 };
    if stalled > ctx.active.len() {
        return Err(Error::InvalidArgument(format!(
            "more than {} points coincide on all active dimensions; deduplicate the input",
            ctx.m
        )));
    }
    let (left, right): (Vec<Point>, Vec<Point>) = points.into_iter().partition(|p| p[dim] < q);
    let left = if left.is_empty() {
        None
    } else {
        Some(build_node(left, level + 1, ctx, stalled)?)
    };
    let right = if right.is_empty() {
        None
    } else {
        Some(build_node(right, level + 1, ctx, stalled)?)
    };
    let mut lb = vec![f64::INFINITY; ctx.d].into_boxed_slice();
    for child in left.iter().chain(right.iter()) {
        widen(&mut lb, &child.lb);
    }
    Ok(Box::new(Node {
        lb,
        level,
        dim,
        kind: Kind::Split { q, left, right },
    }))
}

fn insert_node(node: &mut Box<Node>, p: Point, ctx: &Ctx) -> Result<()> {
    widen(&mut node.lb, p.coords());
    let level = node.level;
    match &mut node.kind {
        Kind::Leaf(points) => {
            points.push(p);
            if points.len() > ctx.m {
                let points = std::mem::take(points);
                *node = build_node(points, level, ctx, 0)?;
            }
            Ok(())
        }
        Kind::Split { q, left, right } => {
            let slot = if p[node.dim] < *q { left } else { right };
            match slot {
                Some(child) => insert_node(child, p, ctx),
                None => {
                    *slot = Some(leaf(vec![p], level + 1, ctx));
                    Ok(())
                }
            }
        }
    }
}

fn dominated_node(
    node: &Node,
    p: &Point,
    mask: DimMask,
    stats: &mut FilterStats,
) -> bool {
    stats.node_visits += 1;
    if below_bound(p.coords(), &node.lb, mask) {
        return false;
    }
    match &node.kind {
        Kind::Leaf(points) => scan_leaf(points, p, mask, DimMask::EMPTY, stats),
        Kind::Split { q, left, right } => {
            let in_left = left
                .as_deref()
                .is_some_and(|c| dominated_node(c, p, mask, stats));
            if in_left || (p[node.dim] < *q && !mask.contains(node.dim)) {
                return in_left;
            }
            right
                .as_deref()
                .is_some_and(|c| dominated_node(c, p, mask, stats))
        }
    }
}

impl NodeView for Node {
    fn level(&self) -> usize {
        self.level
    }

    fn lb(&self) -> &[f64] {
        &self.lb
    }

    fn leaf_points(&self) -> Option<&[Point]> {
        match &self.kind {
            Kind::Leaf(points) => Some(points),
            Kind::Split { .. } => None,
        }
    }

    fn children(&self) -> Vec<(char, &Self)> {
        match &self.kind {
            Kind::Leaf(_) => Vec::new(),
            Kind::Split { left, right, .. } => [('L', left), ('R', right)]
                .into_iter()
                .filter_map(|(c, n)| n.as_deref().map(|n| (c, n)))
                .collect(),
        }
    }
}

fn check_partition(node: &Node, ctx: &Ctx) -> Result<(), String> {
    if node.dim != ctx.split_dim(node.level) {
        return Err(format!(
            "node at level {} splits on {} instead of {}",
            node.level,
            node.dim,
            ctx.split_dim(node.level)
        ));
    }
    if let Kind::Split { q, left, right } = &node.kind {
        let dim = node.dim;
        if let Some(l) = left.as_deref() {
            if common::leaves(Some(l))
                .iter()
                .flat_map(|leaf| leaf.points)
                .any(|p| p[dim] >= *q)
            {
                return Err(format!("left subtree at level {} has a value >= {q}", node.level));
            }
            check_partition(l, ctx)?;
        }
        if let Some(r) = right.as_deref() {
            if common::leaves(Some(r))
                .iter()
                .flat_map(|leaf| leaf.points)
                .any(|p| p[dim] < *q)
            {
                return Err(format!("right subtree at level {} has a value < {q}", node.level));
            }
            check_partition(r, ctx)?;
        }
    }
    Ok(())
}

impl DominanceTree for NdPlusTree {
    fn empty(dim: usize, m: LeafCapacity, base: DimMask) -> Result<Self> {
        base.validate(dim)?;
        Ok(Self {
            d: dim,
            m,
            base,
            active: base.active(dim).collect(),
            root: None,
            len: 0,
        })
    }

    fn build_masked(points: &PointSet, m: LeafCapacity, base: DimMask) -> Result<Self> {
        let mut tree = Self::empty(points.dim(), m, base)?;
        if !points.is_empty() {
            tree.root = Some(build_node(points.points().to_vec(), 0, &tree.ctx(), 0)?);
            tree.len = points.len();
        }
        Ok(tree)
    }

    fn insert(&mut self, p: Point) -> Result<()> {
        check_same_dim(self.d, p.dim())?;
        let ctx = Ctx {
            d: self.d,
            m: self.m.get(),
            active: &self.active,
        };
        match &mut self.root {
            Some(root) => insert_node(root, p, &ctx)?,
            None => self.root = Some(leaf(vec![p], 0, &ctx)),
        }
        self.len += 1;
        Ok(())
    }

    fn dominated(&self, p: &Point, mask: DimMask, stats: &mut FilterStats) -> Result<bool> {
        check_same_dim(self.d, p.dim())?;
        let mask = mask.union(self.base);
        Ok(self
            .root
            .as_deref()
            .is_some_and(|root| dominated_node(root, p, mask, stats)))
    }

    fn shape_stats(&self) -> TreeShapeStats {
        common::shape_stats(self.root.as_deref())
    }

    fn leaves(&self) -> Vec<LeafView<'_>> {
        common::leaves(self.root.as_deref())
    }

    fn validate(&self) -> Result<(), String> {
        let Some(root) = self.root.as_deref() else {
            return if self.len == 0 {
                Ok(())
            } else {
                Err("empty root with non-zero length".into())
            };
        };
        let points = common::check_bounds(root, self.d, self.m.get())?;
        if points.len() != self.len {
            return Err(format!("{} stored points, expected {}", points.len(), self.len));
        }
        check_partition(root, &self.ctx())
    }

    fn len(&self) -> usize {
        self.len
    }

    fn dim(&self) -> usize {
        self.d
    }
}
