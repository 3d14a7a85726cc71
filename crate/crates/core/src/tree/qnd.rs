//! Binary quartile tree: plateau-aware splits with dimension exclusion.

use crate::error::{Error, Result};
use crate::point::{check_same_dim, DimMask, Point, PointSet};
use crate::select::quartiles_in_place;
use crate::stats::FilterStats;
use crate::tree::common::{self, below_bound, leaf_bounds, scan_leaf, widen, NodeView};
use crate::tree::{DominanceTree, LeafCapacity, LeafView, TreeShapeStats};

#[derive(Debug)]
struct Node {
    lb: Box<[f64]>,
    level: usize,
    dim: usize,
    /// Dimensions dropped on the way down (base mask plus plateau dimensions).
    excluded: DimMask,
    kind: Kind,
}

#[derive(Debug)]
enum Kind {
    Leaf(Vec<Point>),
    Split {
        q: f64,
        /// Right subtree holds exactly the points with value `q` in `dim`.
        plateau: bool,
        left: Option<Box<Node>>,
        right: Option<Box<Node>>,
    },
}

#[derive(Clone, Copy, Debug)]
struct Ctx {
    d: usize,
    m: usize,
}

/// QND⁺-tree.
///
/// Each split computes the quartiles of the split dimension. If `Q1 == Q2` the points
/// equal to `Q2` go right (a plateau) and that dimension is excluded below; otherwise
/// points below `Q2` go left and the rest right. A child splits on the next active
/// dimension after its parent's, in cyclic order.
#[derive(Debug)]
pub struct QndPlusTree {
    ctx: Ctx,
    m: LeafCapacity,
    base: DimMask,
    root: Option<Box<Node>>,
    len: usize,
}

/// Next active dimension; a subtree with every dimension excluded keeps its parent's.
fn child_dim(parent_dim: usize, excluded: DimMask, d: usize) -> usize {
    excluded.next_active(parent_dim, d).unwrap_or(parent_dim)
}

fn leaf(points: Vec<Point>, level: usize, dim: usize, excluded: DimMask, ctx: Ctx) -> Box<Node> {
    Box::new(Node {
        lb: leaf_bounds(&points, ctx.d),
        level,
        dim,
        excluded,
        kind: Kind::Leaf(points),
    })
}

fn build_node(
    points: Vec<Point>,
    level: usize,
    dim: usize,
    excluded: DimMask,
    ctx: Ctx,
) -> Result<Box<Node>> {
    if points.len() <= ctx.m {
        return Ok(leaf(points, level, dim, excluded, ctx));
    }
    if excluded.contains(dim) {
        return Err(Error::InvalidArgument(
            "all dimensions excluded before the points fit a leaf; deduplicate the input".into(),
        ));
    }
    let mut values: Vec<f64> = points.iter().map(|p| p[dim]).collect();
    let qs = quartiles_in_place(&mut values);
    let q = qs.q2;
    let plateau = qs.q1 == qs.q2;
    let (left, right): (Vec<Point>, Vec<Point>) = if plateau {
        points.into_iter().partition(|p| p[dim] != q)
    } else {
        points.into_iter().partition(|p| p[dim] < q)
    };
    let right_excluded = if plateau { excluded.with(dim) } else { excluded };
    let left = if left.is_empty() {
        None
    } else {
        let cd = child_dim(dim, excluded, ctx.d);
        Some(build_node(left, level + 1, cd, excluded, ctx)?)
    };
    let right = if right.is_empty() {
        None
    } else {
        let cd = child_dim(dim, right_excluded, ctx.d);
        Some(build_node(right, level + 1, cd, right_excluded, ctx)?)
    };
    let mut lb = vec![f64::INFINITY; ctx.d].into_boxed_slice();
    for child in left.iter().chain(right.iter()) {
        widen(&mut lb, &child.lb);
    }
    Ok(Box::new(Node {
        lb,
        level,
        dim,
        excluded,
        kind: Kind::Split {
            q,
            plateau,
            left,
            right,
        },
    }))
}

fn insert_node(node: &mut Box<Node>, p: Point, ctx: Ctx) -> Result<()> {
    widen(&mut node.lb, p.coords());
    let (level, dim, excluded) = (node.level, node.dim, node.excluded);
    match &mut node.kind {
        Kind::Leaf(points) => {
            points.push(p);
            if points.len() > ctx.m {
                let points = std::mem::take(points);
                *node = build_node(points, level, dim, excluded, ctx)?;
            }
            Ok(())
        }
        Kind::Split {
            q,
            plateau,
            left,
            right,
        } => {
            let v = p[dim];
            let go_left = v < *q || (*plateau && v != *q);
            let (slot, child_excluded) = if go_left {
                (left, excluded)
            } else if *plateau {
                (right, excluded.with(dim))
            } else {
                (right, excluded)
            };
            match slot {
                Some(child) => insert_node(child, p, ctx),
                None => {
                    let cd = child_dim(dim, child_excluded, ctx.d);
                    *slot = Some(leaf(vec![p], level + 1, cd, child_excluded, ctx));
                    Ok(())
                }
            }
        }
    }
}

fn dominated_node(
    node: &Node,
    p: &Point,
    user: DimMask,
    internal: DimMask,
    stats: &mut FilterStats,
) -> bool {
    stats.node_visits += 1;
    if below_bound(p.coords(), &node.lb, user.union(internal)) {
        return false;
    }
    match &node.kind {
        Kind::Leaf(points) => scan_leaf(points, p, user, internal, stats),
        Kind::Split {
            q,
            plateau,
            left,
            right,
        } => {
            if left
                .as_deref()
                .is_some_and(|c| dominated_node(c, p, user, internal, stats))
            {
                return true;
            }
            if p[node.dim] < *q && !user.contains(node.dim) {
                return false;
            }
            let right_internal = if *plateau {
                internal.with(node.dim)
            } else {
                internal
            };
            right
                .as_deref()
                .is_some_and(|c| dominated_node(c, p, user, right_internal, stats))
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

fn subtree_points(node: &Node) -> impl Iterator<Item = &Point> {
    common::leaves(Some(node))
        .into_iter()
        .flat_map(|leaf| leaf.points.iter())
}

fn check_partition(node: &Node, d: usize, base: DimMask) -> Result<(), String> {
    let exhausted = node.excluded.next_active(node.dim, d).is_none();
    if node.excluded.contains(node.dim) && !(exhausted && node.leaf_points().is_some()) {
        return Err(format!(
            "node at level {} splits on excluded dimension {}",
            node.level, node.dim
        ));
    }
    // dimensions excluded below a plateau are constant within the subtree
    for j in node.excluded.difference(base).iter() {
        let mut values = subtree_points(node).map(|p| p[j]);
        if let Some(first) = values.next() {
            if values.any(|v| v != first) {
                return Err(format!(
                    "excluded dimension {j} is not constant under level {}",
                    node.level
                ));
            }
        }
    }
    let Kind::Split {
        q,
        plateau,
        left,
        right,
    } = &node.kind
    else {
        return Ok(());
    };
    let dim = node.dim;
    for (child, is_left) in [(left, true), (right, false)] {
        let Some(child) = child.as_deref() else {
            continue;
        };
        let expect_excluded = if *plateau && !is_left {
            node.excluded.with(dim)
        } else {
            node.excluded
        };
        if child.excluded != expect_excluded {
            return Err(format!("child mask mismatch under level {}", node.level));
        }
        if child.dim != child_dim(dim, expect_excluded, d) {
            return Err(format!("child split dimension out of cycle under level {}", node.level));
        }
        let bad = subtree_points(child).any(|p| {
            let v = p[dim];
            match (*plateau, is_left) {
                (true, true) => v == *q,
                (true, false) => v != *q,
                (false, true) => v >= *q,
                (false, false) => v < *q,
            }
        });
        if bad {
            return Err(format!(
                "{} subtree at level {} violates the {} partition on {q}",
                if is_left { "left" } else { "right" },
                node.level,
                if *plateau { "plateau" } else { "median" },
            ));
        }
        check_partition(child, d, base)?;
    }
    Ok(())
}

impl QndPlusTree {
    fn root_dim(&self) -> usize {
        self.base
            .next_active(self.ctx.d - 1, self.ctx.d)
            .expect("validated mask keeps an active dimension")
    }

    pub fn leaf_capacity(&self) -> LeafCapacity {
        self.m
    }

    /// Number of internal nodes that applied plateau partitioning.
    pub fn plateau_nodes(&self) -> usize {
        fn count(node: &Node) -> usize {
            match &node.kind {
                Kind::Leaf(_) => 0,
                Kind::Split {
                    plateau,
                    left,
                    right,
                    ..
                } => {
                    usize::from(*plateau)
                        + left.as_deref().map_or(0, count)
                        + right.as_deref().map_or(0, count)
                }
            }
        }
        self.root.as_deref().map_or(0, count)
    }
}

impl DominanceTree for QndPlusTree {
    fn empty(dim: usize, m: LeafCapacity, base: DimMask) -> Result<Self> {
        base.validate(dim)?;
        Ok(Self {
            ctx: Ctx { d: dim, m: m.get() },
            m,
            base,
            root: None,
            len: 0,
        })
    }

    fn build_masked(points: &PointSet, m: LeafCapacity, base: DimMask) -> Result<Self> {
        let mut tree = Self::empty(points.dim(), m, base)?;
        if !points.is_empty() {
            let root = build_node(
                points.points().to_vec(),
                0,
                tree.root_dim(),
                base,
                tree.ctx,
            )?;
            tree.root = Some(root);
            tree.len = points.len();
        }
        Ok(tree)
    }

    fn insert(&mut self, p: Point) -> Result<()> {
        check_same_dim(self.ctx.d, p.dim())?;
        match &mut self.root {
            Some(root) => insert_node(root, p, self.ctx)?,
            None => {
                let dim = self.root_dim();
                self.root = Some(leaf(vec![p], 0, dim, self.base, self.ctx));
            }
        }
        self.len += 1;
        Ok(())
    }

    fn dominated(&self, p: &Point, mask: DimMask, stats: &mut FilterStats) -> Result<bool> {
        check_same_dim(self.ctx.d, p.dim())?;
        let user = mask.union(self.base);
        Ok(self
            .root
            .as_deref()
            .is_some_and(|root| dominated_node(root, p, user, DimMask::EMPTY, stats)))
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
        let points = common::check_bounds(root, self.ctx.d, self.ctx.m)?;
        if points.len() != self.len {
            return Err(format!("{} stored points, expected {}", points.len(), self.len));
        }
        if root.excluded != self.base || root.dim != self.root_dim() {
            return Err("root mask or split dimension mismatch".into());
        }
        check_partition(root, self.ctx.d, self.base)
    }

    fn len(&self) -> usize {
        self.len
    }

    fn dim(&self) -> usize {
        self.ctx.d
    }
}
