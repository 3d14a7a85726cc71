//! Ternary tree: plateaus at the median get a middle child with the split dimension dropped.

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
    excluded: DimMask,
    kind: Kind,
}

#[derive(Debug)]
enum Kind {
    Leaf(Vec<Point>),
    Split {
        q: f64,
        /// Three-way split: left `< q`, middle `== q`, right `> q`.
        plateau: bool,
        left: Option<Box<Node>>,
        middle: Option<Box<Node>>,
        right: Option<Box<Node>>,
    },
}

#[derive(Clone, Copy, Debug)]
struct Ctx {
    d: usize,
    m: usize,
}

/// TND⁺-tree.
///
/// A split with `Q1 == Q2` or `Q2 == Q3` in its dimension is three-way around `q = Q2`,
/// and the middle subtree no longer uses that dimension. Other splits are median splits
/// (`< q` left, `>= q` right) without a middle child.
#[derive(Debug)]
pub struct TndPlusTree {
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

fn subtree(
    points: Vec<Point>,
    parent_dim: usize,
    level: usize,
    excluded: DimMask,
    ctx: Ctx,
) -> Result<Option<Box<Node>>> {
    if points.is_empty() {
        return Ok(None);
    }
    let dim = child_dim(parent_dim, excluded, ctx.d);
    build_node(points, level, dim, excluded, ctx).map(Some)
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
    let plateau = qs.q1 == qs.q2 || qs.q2 == qs.q3;
    let (left, middle, right) = if plateau {
        let mut parts = (Vec::new(), Vec::new(), Vec::new());
        for p in points {
            let v = p[dim];
            if v < q {
                parts.0.push(p);
            } else if v == q {
                parts.1.push(p);
            } else {
                parts.2.push(p);
            }
        }
        parts
    } else {
        let (l, r): (Vec<Point>, Vec<Point>) = points.into_iter().partition(|p| p[dim] < q);
        (l, Vec::new(), r)
    };
    let left = subtree(left, dim, level + 1, excluded, ctx)?;
    let middle = subtree(middle, dim, level + 1, excluded.with(dim), ctx)?;
    let right = subtree(right, dim, level + 1, excluded, ctx)?;
    let mut lb = vec![f64::INFINITY; ctx.d].into_boxed_slice();
    for child in [&left, &middle, &right].into_iter().flatten() {
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
            middle,
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
            left,
            middle,
            right,
            ..
        } => {
            let v = p[dim];
            let (slot, child_excluded) = if v < *q {
                (left, excluded)
            } else if v == *q && middle.is_some() {
                (middle, excluded.with(dim))
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
            left,
            middle,
            right,
            ..
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
            if middle
                .as_deref()
                .is_some_and(|c| dominated_node(c, p, user, internal.with(node.dim), stats))
            {
                return true;
            }
            right
                .as_deref()
                .is_some_and(|c| dominated_node(c, p, user, internal, stats))
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
            Kind::Split {
                left,
                middle,
                right,
                ..
            } => [('L', left), ('M', middle), ('R', right)]
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
        middle,
        right,
    } = &node.kind
    else {
        return Ok(());
    };
    if middle.is_some() && !plateau {
        return Err(format!("middle child under a median split at level {}", node.level));
    }
    let dim = node.dim;
    for (child, slot) in [(left, 'L'), (middle, 'M'), (right, 'R')] {
        let Some(child) = child.as_deref() else {
            continue;
        };
        let expect_excluded = if slot == 'M' {
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
            match (slot, *plateau) {
                ('L', _) => v >= *q,
                ('M', _) => v != *q,
                (_, true) => v <= *q,
                (_, false) => v < *q,
            }
        });
        if bad {
            return Err(format!(
                "child {slot} at level {} violates the partition on {q}",
                node.level + 1
            ));
        }
        check_partition(child, d, base)?;
    }
    Ok(())
}

impl TndPlusTree {
    fn root_dim(&self) -> usize {
        self.base
            .next_active(self.ctx.d - 1, self.ctx.d)
            .expect("validated mask keeps an active dimension")
    }

    pub fn leaf_capacity(&self) -> LeafCapacity {
        self.m
    }

    /// Number of internal nodes that applied three-way partitioning.
    pub fn plateau_nodes(&self) -> usize {
        fn count(node: &Node) -> usize {
            match &node.kind {
                Kind::Leaf(_) => 0,
                Kind::Split {
                    plateau,
                    left,
                    middle,
                    right,
                    ..
                } => {
                    usize::from(*plateau)
                        + [left, middle, right]
                            .into_iter()
                            .map(|c| c.as_deref().map_or(0, count))
                            .sum::<usize>()
                }
            }
        }
        self.root.as_deref().map_or(0, count)
    }
}

impl DominanceTree for TndPlusTree {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::{generate, DatasetSpec, Family};
    use crate::golden::plateau_example_set;
    use crate::tree::test_util::{expect_leaves, leaf_sets, pt};
    use crate::tree::NdPlusTree;

    fn m(k: usize) -> LeafCapacity {
        LeafCapacity::new(k).unwrap()
    }

    fn golden() -> TndPlusTree {
        TndPlusTree::build(&plateau_example_set(), m(4))
    }

    #[test]
    fn golden_structure_and_shape() {
        let tree = golden();
        tree.validate().unwrap();
        assert_eq!(
            leaf_sets(&tree),
            expect_leaves(&[
                ("L", &[[1., 10., 2.]]),
                ("ML", &[[2., 7., 8.], [2., 8., 7.]]),
                ("MR", &[[2., 9., 6.], [2., 11., 1.], [2., 12., 0.]]),
                ("RL", &[[7., 6., 1.], [8., 6., 0.]]),
                ("RM", &[[4., 7., 4.], [5., 7., 3.], [6., 7., 2.]]),
            ])
        );
        let st = tree.shape_stats();
        assert_eq!((st.max_depth, st.min_depth, st.balance_indicator), (2, 1, 1));
        assert_eq!(tree.plateau_nodes(), 2);
    }

    #[test]
    fn insert_routing() {
        let mut tree = golden();
        tree.insert(pt(&[2., 10., 3.])).unwrap();
        tree.insert(pt(&[0., 9., 9.])).unwrap();
        tree.insert(pt(&[9., 9., 9.])).unwrap();
        tree.validate().unwrap();
        let leaves = leaf_sets(&tree);
        let find = |path: &str| &leaves.iter().find(|(p, _)| p == path).unwrap().1;
        assert!(find("MR").contains(&pt(&[2., 10., 3.])));
        assert!(find("L").contains(&pt(&[0., 9., 9.])));
        assert!(find("RR").contains(&pt(&[9., 9., 9.])));
    }

    #[test]
    fn dominance_queries() {
        let tree = golden();
        let mut stats = FilterStats::default();
        assert!(tree.dominated(&pt(&[3., 12., 1.]), DimMask::EMPTY, &mut stats).unwrap());

        let mut stats = FilterStats::default();
        assert!(!tree.dominated(&pt(&[0., 0., 0.]), DimMask::EMPTY, &mut stats).unwrap());
        assert_eq!(stats.leaf_scans, 0);

        for p in plateau_example_set().iter() {
            assert!(!tree.dominated(p, DimMask::EMPTY, &mut stats).unwrap(), "{p:?}");
        }
    }

    #[test]
    fn constant_split_dimension_goes_to_middle() {
        let rows: Vec<[f64; 3]> = (0..10).map(|i| [5., i as f64, 9. - i as f64]).collect();
        let tree = TndPlusTree::build(&PointSet::from_rows(&rows).unwrap(), m(4));
        tree.validate().unwrap();
        match &tree.root.as_deref().unwrap().kind {
            Kind::Split {
                plateau,
                left,
                middle,
                right,
                ..
            } => {
                assert!(*plateau);
                assert!(left.is_none() && right.is_none());
                assert!(middle.as_ref().unwrap().excluded.contains(0));
            }
            Kind::Leaf(_) => panic!("root should split"),
        }
    }

    #[test]
    fn distinct_values_match_nd_shape() {
        for seed in 0..5 {
            let s = generate(&DatasetSpec::new(Family::Urs, 4, 300, seed)).unwrap().points;
            let nd = NdPlusTree::build(&s, m(4));
            let tnd = TndPlusTree::build(&s, m(4));
            tnd.validate().unwrap();
            assert_eq!(tnd.plateau_nodes(), 0);
            assert_eq!(leaf_sets(&nd), leaf_sets(&tnd));
        }
    }

    #[test]
    fn inserts_keep_invariants() {
        let s = generate(&DatasetSpec::new(Family::Ursp, 4, 200, 8)).unwrap().points;
        let mut tree = TndPlusTree::empty(4, m(3), DimMask::EMPTY).unwrap();
        for p in s.iter() {
            tree.insert(p.clone()).unwrap();
        }
        tree.validate().unwrap();
        assert_eq!(tree.len(), 200);
    }
}
