mod common;

use common::{grid_set, has_dominator, plateau_set, rng};
use ndplus::datasets::{generate, DatasetSpec, Family};
use ndplus::{
    dominates, lex_sort, minkowski_sum, oracle_pareto, pareto_frontier, pareto_subset, pareto_sum,
    pareto_union, plain_nd_red, pre_nd, sym_nd, union_input, Algorithm, DimMask, DominanceTree,
    FilterStats, LeafCapacity, NdPlusTree, Point, PointSet, QndPlusTree, TndPlusTree, TreeKind,
};
use proptest::prelude::*;
use rand::Rng;

fn point_strategy(d: usize, levels: i32) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((0..levels).prop_map(f64::from), d)
}

fn set_strategy(max_n: usize) -> impl Strategy<Value = PointSet> {
    (2usize..=5, 1i32..12).prop_flat_map(move |(d, levels)| {
        prop::collection::vec(point_strategy(d, levels), 1..max_n).prop_map(move |rows| {
            ndplus::dedup(PointSet::from_rows(&rows).unwrap())
        })
    })
}

fn pareto_pair_strategy() -> impl Strategy<Value = (PointSet, PointSet)> {
    (2usize..=5, 2i32..12).prop_flat_map(|(d, levels)| {
        (
            prop::collection::vec(point_strategy(d, levels), 1..60),
            prop::collection::vec(point_strategy(d, levels), 1..60),
        )
            .prop_map(|(a, b)| {
                let a = pareto_frontier(&ndplus::dedup(PointSet::from_rows(&a).unwrap()));
                let b = pareto_frontier(&ndplus::dedup(PointSet::from_rows(&b).unwrap()));
                (a, b)
            })
    })
}

fn m_strategy() -> impl Strategy<Value = LeafCapacity> {
    (1usize..=9).prop_map(|m| LeafCapacity::new(m).unwrap())
}

fn check_tree<T: DominanceTree>(s: &PointSet, m: LeafCapacity, queries: &[Point]) {
    let tree = T::build(s, m);
    tree.validate().unwrap();
    assert_eq!(tree.len(), s.len());
    let mut stats = FilterStats::default();
    for q in queries.iter().chain(s.iter()) {
        assert_eq!(
            tree.dominated(q, DimMask::EMPTY, &mut stats).unwrap(),
            has_dominator(s, q, DimMask::EMPTY),
            "query {q:?}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dominance_is_a_strict_partial_order(
        (p, q, r) in (2usize..=5).prop_flat_map(|d| (point_strategy(d, 3), point_strategy(d, 3), point_strategy(d, 3)))
    ) {
        let (p, q, r) = (Point::new(p).unwrap(), Point::new(q).unwrap(), Point::new(r).unwrap());
        let e = DimMask::EMPTY;
        prop_assert!(!dominates(&p, &p, e).unwrap());
        prop_assert!(!(dominates(&p, &q, e).unwrap() && dominates(&q, &p, e).unwrap()));
        if dominates(&p, &q, e).unwrap() && dominates(&q, &r, e).unwrap() {
            prop_assert!(dominates(&p, &r, e).unwrap());
        }
    }

    #[test]
    fn lex_order_never_puts_a_dominator_later(s in set_strategy(120)) {
        let sorted = lex_sort(s);
        let pts = sorted.points();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                prop_assert!(!dominates(&pts[j], &pts[i], DimMask::EMPTY).unwrap());
            }
        }
    }

    #[test]
    fn oracle_is_idempotent(s in set_strategy(120)) {
        let once = pareto_frontier(&s);
        let twice = oracle_pareto(&once, &mut FilterStats::default());
        prop_assert!(once.set_eq(&twice));
        prop_assert_eq!(once.len(), twice.len());
    }

    #[test]
    fn trees_agree_with_brute_force(
        s in set_strategy(150),
        m in m_strategy(),
        extra in prop::collection::vec(point_strategy(5, 12), 0..30),
    ) {
        let d = s.dim();
        let queries: Vec<Point> = extra.into_iter().map(|c| Point::new(c[..d].to_vec()).unwrap()).collect();
        check_tree::<NdPlusTree>(&s, m, &queries);
        check_tree::<QndPlusTree>(&s, m, &queries);
        check_tree::<TndPlusTree>(&s, m, &queries);
    }

    #[test]
    fn masked_queries_agree_with_brute_force(
        s in set_strategy(100),
        m in m_strategy(),
        mask_bits in 0u64..32,
    ) {
        let d = s.dim();
        let excluded: Vec<usize> = (0..d).filter(|j| mask_bits >> j & 1 == 1).collect();
        prop_assume!(excluded.len() < d);
        let mask = DimMask::excluding(d, &excluded).unwrap();
        let nd = NdPlusTree::build(&s, m);
        let qnd = QndPlusTree::build(&s, m);
        let tnd = TndPlusTree::build(&s, m);
        let mut st = FilterStats::default();
        for q in s.iter() {
            let want = has_dominator(&s, q, mask);
            prop_assert_eq!(nd.dominated(q, mask, &mut st).unwrap(), want);
            prop_assert_eq!(qnd.dominated(q, mask, &mut st).unwrap(), want);
            prop_assert_eq!(tnd.dominated(q, mask, &mut st).unwrap(), want);
        }
    }

    #[test]
    fn inserts_preserve_structure_and_answers(s in set_strategy(150), m in m_strategy(), split in 0usize..150) {
        let pts = s.points();
        let k = split.min(pts.len());
        let head = PointSet::new(s.dim(), pts[..k].to_vec()).unwrap();
        fn run<T: DominanceTree>(head: &PointSet, rest: &[Point], all: &PointSet, m: LeafCapacity) {
            let mut t = T::build(head, m);
            for p in rest {
                t.insert(p.clone()).unwrap();
            }
            t.validate().unwrap();
            assert_eq!(t.len(), all.len());
            let stored: std::collections::HashSet<Point> =
                t.leaves().iter().flat_map(|l| l.points.iter().cloned()).collect();
            assert_eq!(stored.len(), all.len());
            let mut st = FilterStats::default();
            for q in all.iter() {
                assert_eq!(t.dominated(q, DimMask::EMPTY, &mut st).unwrap(), has_dominator(all, q, DimMask::EMPTY));
            }
        }
        run::<NdPlusTree>(&head, &pts[k..], &s, m);
        run::<QndPlusTree>(&head, &pts[k..], &s, m);
        run::<TndPlusTree>(&head, &pts[k..], &s, m);
    }

    #[test]
    fn pareto_subset_contracts(s in set_strategy(150)) {
        let (p, q) = pareto_subset(&s);
        let front = pareto_frontier(&s);
        prop_assert_eq!(p.len() + q.len(), s.len());
        prop_assert!(ndplus::union_input(&p, &q).unwrap().set_eq(&s));
        let in_front: std::collections::HashSet<&Point> = front.iter().collect();
        prop_assert!(p.iter().all(|x| in_front.contains(x)));
        prop_assert!(q.points().windows(2).all(|w| ndplus::lex_cmp(&w[0], &w[1]).is_lt()));
        if s.dim() == 2 {
            prop_assert!(p.set_eq(&front));
        }
    }

    #[test]
    fn all_combinations_match_the_oracle((a, b) in pareto_pair_strategy(), m in m_strategy()) {
        let u = pareto_frontier(&union_input(&a, &b).unwrap());
        let s = pareto_frontier(&minkowski_sum(&a, &b).unwrap());
        for kind in TreeKind::ALL {
            for algo in Algorithm::ALL {
                let res = pareto_union(&a, &b, algo, kind, m).unwrap();
                prop_assert!(res.frontier.set_eq(&u), "union {} {}", algo, kind);
                prop_assert_eq!(res.frontier.len(), u.len());
                if algo != Algorithm::SymNd {
                    let res = pareto_sum(&a, &b, algo, kind, m).unwrap();
                    prop_assert!(res.frontier.set_eq(&s), "sum {} {}", algo, kind);
                    prop_assert_eq!(res.frontier.len(), s.len());
                }
            }
        }
    }

    #[test]
    fn comparison_bounds(s in set_strategy(200), m in m_strategy()) {
        let n = s.len() as u64;
        let d = s.dim() as u64;
        let pairs = n * n.saturating_sub(1) / 2;
        for kind in TreeKind::ALL {
            prop_assert!(plain_nd_red(&s, kind, m).unwrap().stats.comparisons <= (d - 1) * pairs);
            prop_assert!(pre_nd(&s, kind, m).unwrap().stats.comparisons <= d * pairs);
        }
    }

    #[test]
    fn sym_nd_is_symmetric_and_bounded((a, b) in pareto_pair_strategy(), m in m_strategy()) {
        let d = a.dim() as u64;
        let (na, nb) = (a.len() as u64, b.len() as u64);
        for kind in TreeKind::ALL {
            let ab = sym_nd(&a, &b, kind, m).unwrap();
            let ba = sym_nd(&b, &a, kind, m).unwrap();
            prop_assert!(ab.frontier.set_eq(&ba.frontier));
            prop_assert!(ab.stats.comparisons <= d * (na * nb + na * na + nb * nb));
        }
    }

    #[test]
    fn filtering_is_idempotent(s in set_strategy(150), m in m_strategy()) {
        for kind in TreeKind::ALL {
            for f in [plain_nd_red, pre_nd] {
                let once = f(&s, kind, m).unwrap().frontier;
                let twice = f(&once, kind, m).unwrap().frontier;
                prop_assert!(once.set_eq(&twice));
                prop_assert_eq!(once.len(), twice.len());
            }
            let front = pareto_frontier(&s);
            let self_union = sym_nd(&front, &front.clone(), kind, m).unwrap().frontier;
            prop_assert!(self_union.set_eq(&front));
            prop_assert_eq!(self_union.len(), front.len());
        }
    }

    #[test]
    fn point_files_round_trip(
        rows in (2usize..=6).prop_flat_map(|d| prop::collection::vec(
            prop::collection::vec(prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO, d), 0..40)),
    ) {
        let d = rows.first().map_or(3, Vec::len);
        let pts = rows.into_iter().map(|r| Point::new(r).unwrap()).collect();
        let s = PointSet::new(d, pts).unwrap();
        let mut buf = Vec::new();
        ndplus::datasets::write_points_to(&s, &mut buf).unwrap();
        let back = ndplus::datasets::read_points_from(buf.as_slice(), std::path::Path::new("mem")).unwrap();
        prop_assert_eq!(back.dim(), s.dim());
        let bits = |s: &PointSet| -> Vec<u64> { s.iter().flat_map(|p| p.coords().iter().map(|v| v.to_bits())).collect() };
        prop_assert_eq!(bits(&back), bits(&s));
    }

    #[test]
    fn select_matches_sort(values in prop::collection::vec(-1e6f64..1e6, 1..2000), k in any::<prop::sample::Index>()) {
        let k = k.index(values.len());
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        prop_assert_eq!(ndplus::select_kth(&values, k).unwrap(), sorted[k]);
        let q = ndplus::quartiles(&values).unwrap();
        prop_assert!(q.q1 <= q.q2 && q.q2 <= q.q3);
    }
}

/// Large-regime agreement: n up to 2000, d in 2..=10, 50 seeds, plateau-injected inputs.
#[test]
fn trees_agree_with_oracle_on_large_plateau_sets() {
    for seed in 0..50u64 {
        let mut r = rng(seed);
        let d = r.gen_range(2..=10);
        let n = r.gen_range(1..=2000);
        let raw = if seed % 2 == 0 {
            plateau_set(&mut r, d, n)
        } else {
            grid_set(&mut r, d, n, 6)
        };
        let s = pareto_frontier(&raw);
        let m = LeafCapacity::new(r.gen_range(1..=12)).unwrap();
        let queries: Vec<Point> = raw.iter().take(300).cloned().collect();
        check_tree::<NdPlusTree>(&s, m, &queries);
        check_tree::<QndPlusTree>(&s, m, &queries);
        check_tree::<TndPlusTree>(&s, m, &queries);
    }
}

#[test]
fn node_count_and_height_bounds() {
    for seed in 0..20u64 {
        let mut r = rng(seed);
        let d = r.gen_range(2..=8);
        let n = r.gen_range(2..=3000);
        let m = LeafCapacity::new(r.gen_range(1..=10)).unwrap();
        // continuous coordinates: no ties, so no degenerate median splits
        let s = ndplus::datasets::gen_uniform_raw(d, n, seed).unwrap();
        let nd = NdPlusTree::build(&s, m).shape_stats();
        assert!(nd.nodes < 2 * s.len());
        assert_eq!(nd.nodes, 2 * nd.leaves - 1);

        let p = plateau_set(&mut r, d, n);
        let bound = |n: usize| {
            let ratio = (n as f64 / m.get() as f64).max(1.0);
            (ratio.ln() / (4.0f64 / 3.0).ln()).ceil() as usize + d + 2
        };
        for depth in [
            QndPlusTree::build(&p, m).shape_stats().max_depth,
            TndPlusTree::build(&p, m).shape_stats().max_depth,
        ] {
            assert!(depth <= bound(p.len()), "depth {depth} > {}", bound(p.len()));
        }
    }
}

#[test]
fn worst_case_split_balance() {
    // every non-excluding split leaves at most ceil(3n/4) points on one side
    for seed in 0..10u64 {
        let mut r = rng(seed);
        let s = plateau_set(&mut r, 4, 1500);
        let tree = QndPlusTree::build(&s, LeafCapacity::new(4).unwrap());
        tree.validate().unwrap();
        let tnd = TndPlusTree::build(&s, LeafCapacity::new(4).unwrap());
        tnd.validate().unwrap();
    }
}

#[test]
fn generators_are_pareto_exact_and_deterministic() {
    for family in Family::PARETO {
        for d in 3..=10 {
            let spec = DatasetSpec::new(family, d, 300, d as u64);
            let a = generate(&spec).unwrap().points;
            let b = generate(&spec).unwrap().points;
            assert_eq!(a.len(), 300);
            assert_eq!(a.points(), b.points());
            assert_eq!(pareto_frontier(&a).len(), a.len(), "{family} d={d}");
        }
    }
    for d in 2..=10 {
        let s = generate(&DatasetSpec::new(Family::Urs, d, 1000, 1)).unwrap().points;
        assert_eq!(pareto_frontier(&s).len(), 1000);
    }
}

fn max_multiplicity(s: &PointSet) -> usize {
    (0..s.dim())
        .map(|j| {
            let mut counts = std::collections::HashMap::new();
            for p in s.iter() {
                *counts.entry(p[j].to_bits()).or_insert(0usize) += 1;
            }
            counts.into_values().max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

#[test]
fn plateau_families_repeat_values() {
    for family in [Family::Ursp, Family::Urspc] {
        for seed in 0..10 {
            let s = generate(&DatasetSpec::new(family, 5, 400, seed)).unwrap().points;
            assert!(
                max_multiplicity(&s) as f64 >= 0.05 * 400.0,
                "{family} seed {seed}: {}",
                max_multiplicity(&s)
            );
        }
    }
}

fn mode(values: &[f64]) -> f64 {
    let mut counts = std::collections::HashMap::new();
    for v in values {
        *counts.entry(v.to_bits()).or_insert(0usize) += 1;
    }
    let (bits, _) = counts.into_iter().max_by_key(|&(b, c)| (c, b)).unwrap();
    f64::from_bits(bits)
}

#[test]
fn correlated_families_are_correlated() {
    for family in [Family::Ursc, Family::Urspc] {
        for d in [3, 4, 5, 6, 8, 10] {
            for seed in 0..10 {
                let ds = generate(&DatasetSpec::new(family, d, 500, seed)).unwrap();
                let (a, b, c) = ds.correlated.unwrap();
                let s = &ds.points;
                // rows whose correlated coordinates were overwritten by a plateau are left out
                let touched: Vec<(usize, f64)> = ds
                    .plateau_dims
                    .iter()
                    .filter(|j| [a, b, c].contains(j))
                    .map(|&j| (j, mode(&s.column(j))))
                    .collect();
                let rows: Vec<&Point> = s
                    .iter()
                    .filter(|p| touched.iter().all(|&(j, v)| p[j] != v))
                    .collect();
                assert!(rows.len() >= 250, "{family} d={d} seed {seed}: {} rows", rows.len());
                let col = |j: usize| rows.iter().map(|p| p[j]).collect::<Vec<_>>();
                let (ab, ac) = (pearson(&col(a), &col(b)), pearson(&col(a), &col(c)));
                assert!(ab > 0.8 && ac < -0.8, "{family} d={d} seed {seed}: {ab} {ac}");
            }
        }
    }
}
