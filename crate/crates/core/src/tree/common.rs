//! Helpers shared by the tree variants.

use crate::point::{dominates_raw, DimMask, Point};
use crate::stats::FilterStats;
use crate::tree::{LeafView, TreeShapeStats};

pub(crate) trait NodeView: Sized {
    fn level(&self) -> usize;
    fn lb(&self) -> &[f64];
    fn leaf_points(&self) -> Option<&[Point]>;
    /// Present children with their edge labels, left to right.
    fn children(&self) -> Vec<(char, &Self)>;
}

pub(crate) fn leaf_bounds(points: &[Point], dim: usize) -> Box<[f64]> {
    let mut lb = vec![f64::INFINITY; dim].into_boxed_slice();
    for p in points {
        widen(&mut lb, p.coords());
    }
    lb
}

#[inline]
pub(crate) fn widen(lb: &mut [f64], p: &[f64]) {
    for (b, v) in lb.iter_mut().zip(p) {
        if *v < *b {
            *b = *v;
        }
    }
}

/// True when `p` is below the bound in some unmasked dimension, so nothing under the
/// node can dominate it.
#[inline]
pub(crate) fn below_bound(p: &[f64], lb: &[f64], mask: DimMask) -> bool {
    if mask.is_empty() {
        p.iter().zip(lb).any(|(v, b)| v < b)
    } else {
        p.iter()
            .zip(lb)
            .enumerate()
            .any(|(j, (v, b))| v < b && !mask.contains(j))
    }
}

/// Pairwise scan of a leaf.
///
/// `user` is the caller's mask; `internal` holds plateau dimensions collected on the way
/// down, where every stored point is known to be `<= p`. With an empty user mask a stored
/// copy of `p` is not a dominator.
#[inline]
pub(crate) fn scan_leaf(
    points: &[Point],
    p: &Point,
    user: DimMask,
    internal: DimMask,
    stats: &mut FilterStats,
) -> bool {
    stats.leaf_scans += 1;
    let mask = user.union(internal);
    for s in points {
        stats.comparisons += 1;
        if dominates_raw(s.coords(), p.coords(), mask) {
            if user.is_empty() && !internal.is_empty() && s == p {
                continue;
            }
            return true;
        }
    }
    false
}

pub(crate) fn shape_stats<N: NodeView>(root: Option<&N>) -> TreeShapeStats {
    let Some(root) = root else {
        return TreeShapeStats::default();
    };
    let mut st = TreeShapeStats {
        min_depth: usize::MAX,
        ..TreeShapeStats::default()
    };
    let mut depth_sum = 0usize;
    let mut stack = vec![(root, 0usize)];
    while let Some((node, depth)) = stack.pop() {
        st.nodes += 1;
        if let Some(points) = node.leaf_points() {
            st.leaves += 1;
            st.points += points.len();
            st.max_depth = st.max_depth.max(depth);
            st.min_depth = st.min_depth.min(depth);
            depth_sum += depth;
        } else {
            stack.extend(node.children().into_iter().map(|(_, c)| (c, depth + 1)));
        }
    }
    st.balance_indicator = st.max_depth - st.min_depth;
    st.avg_leaf_depth = depth_sum as f64 / st.leaves as f64;
    st
}

pub(crate) fn leaves<N: NodeView>(root: Option<&N>) -> Vec<LeafView<'_>> {
    fn walk<'a, N: NodeView>(node: &'a N, path: &mut String, out: &mut Vec<LeafView<'a>>) {
        if let Some(points) = node.leaf_points() {
            out.push(LeafView {
                path: path.clone(),
                depth: path.len(),
                points,
            });
            return;
        }
        for (label, child) in node.children() {
            path.push(label);
            walk(child, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    if let Some(root) = root {
        walk(root, &mut String::new(), &mut out);
    }
    out
}

/// Collects the points under `node`, checking on the way that every node's lower bound is
/// the exact component-wise minimum of its points and that levels increase by one per edge.
pub(crate) fn check_bounds<N: NodeView>(
    node: &N,
    dim: usize,
    m: usize,
) -> Result<Vec<&Point>, String> {
    let points: Vec<&Point> = match node.leaf_points() {
        Some(points) => {
            if points.is_empty() || points.len() > m {
                return Err(format!(
                    "leaf at level {} holds {} points (capacity {m})",
                    node.level(),
                    points.len()
                ));
            }
            points.iter().collect()
        }
        None => {
            let children = node.children();
            if children.is_empty() {
                return Err(format!("internal node at level {} has no children", node.level()));
            }
            let mut all = Vec::new();
            for (_, child) in children {
                if child.level() != node.level() + 1 {
                    return Err(format!(
                        "child level {} under parent level {}",
                        child.level(),
                        node.level()
                    ));
                }
                all.extend(check_bounds(child, dim, m)?);
            }
            all
        }
    };
    let mut expect = vec![f64::INFINITY; dim];
    for p in &points {
        widen(&mut expect, p.coords());
    }
    if node.lb() != expect.as_slice() {
        return Err(format!(
            "lower bound {:?} at level {} differs from minimum {:?}",
            node.lb(),
            node.level(),
            expect
        ));
    }
    Ok(points)
}
