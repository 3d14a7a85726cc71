//! Brute-force reference for dominance filtering.

use crate::point::{dominates_raw, lex_cmp, DimMask, PointSet};
use crate::stats::FilterStats;

/// All-pairs Pareto frontier: keeps every point not dominated by another point of `f`.
///
/// Output preserves input order and is marked verified. Expects a deduplicated input;
/// coordinate-identical copies do not dominate each other and would all survive.
pub fn oracle_pareto(f: &PointSet, stats: &mut FilterStats) -> PointSet {
    let points = f.points();
    let mut kept = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let mut dominated = false;
        for (j, q) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            stats.comparisons += 1;
            if dominates_raw(q.coords(), p.coords(), DimMask::EMPTY) {
                dominated = true;
                break;
            }
        }
        if !dominated {
            kept.push(p.clone());
        }
    }
    PointSet::from_parts(f.dim(), kept, true)
}

/// Convenience wrapper that discards the tally.
pub fn pareto_frontier(f: &PointSet) -> PointSet {
    oracle_pareto(f, &mut FilterStats::default())
}

/// The first `limit` points of [`pareto_frontier`]`(f)`, in input order.
///
/// Sort-filter-skyline: points are visited by increasing coordinate sum (ties broken
/// lexicographically), so every dominated point meets one of its frontier dominators
/// before itself, and each point is compared only with the frontier found so far.
/// Expects a deduplicated input.
pub fn frontier_prefix(f: &PointSet, limit: usize) -> PointSet {
    let d = f.dim();
    let points = f.points();
    let sums: Vec<f64> = points.iter().map(|p| p.coords().iter().sum()).collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        sums[i]
            .total_cmp(&sums[j])
            .then_with(|| lex_cmp(&points[i], &points[j]))
    });
    let mut window: Vec<f64> = Vec::new();
    let mut on_frontier = vec![false; points.len()];
    for i in order {
        let p = points[i].coords();
        if !window
            .chunks_exact(d)
            .any(|q| dominates_raw(q, p, DimMask::EMPTY))
        {
            window.extend_from_slice(p);
            on_frontier[i] = true;
        }
    }
    let kept = points
        .iter()
        .zip(on_frontier)
        .filter(|(_, keep)| *keep)
        .map(|(p, _)| p.clone())
        .take(limit)
        .collect();
    PointSet::from_parts(d, kept, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::{dedup, minkowski_sum, PointSet};

    fn set(rows: &[&[f64]]) -> PointSet {
        PointSet::from_rows(rows).unwrap()
    }

    #[test]
    fn small_sum_frontier() {
        let a = set(&[&[3., 5., 4.], &[5., 2., 1.]]);
        let b = set(&[&[2., 1., 3.], &[6., 3., 2.]]);
        let sum = minkowski_sum(&a, &b).unwrap();
        let mut stats = FilterStats::default();
        let front = oracle_pareto(&sum, &mut stats);
        assert_eq!(
            front.points(),
            set(&[&[5., 6., 7.], &[7., 3., 4.], &[11., 5., 3.]]).points()
        );
        assert!(front.is_pareto_verified());
        assert!(stats.comparisons > 0);
    }

    #[test]
    fn pareto_set_unchanged_and_duplicates() {
        let s = crate::golden::plateau_example_set();
        let front = pareto_frontier(&s);
        assert_eq!(front.points(), s.points());

        let d = dedup(set(&[&[1., 1.], &[1., 1.]]));
        assert_eq!(pareto_frontier(&d).len(), 1);
    }

    #[test]
    fn prefix_matches_full_frontier() {
        let raw = crate::datasets::gen_uniform_raw(3, 400, 2).unwrap();
        let full = pareto_frontier(&raw);
        assert_eq!(frontier_prefix(&raw, usize::MAX).points(), full.points());
        assert_eq!(frontier_prefix(&raw, 5).points(), &full.points()[..5]);
    }
}
