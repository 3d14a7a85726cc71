//! Union of two generated Pareto sets, checked against the brute-force frontier.

use ndplus::datasets::{generate, DatasetSpec, Family};
use ndplus::{pareto_frontier, pareto_union, union_input, Algorithm, LeafCapacity, TreeKind};

fn main() -> ndplus::Result<()> {
    let a = generate(&DatasetSpec::new(Family::Ursp, 5, 2000, 1))?.points;
    let b = generate(&DatasetSpec::new(Family::Ursp, 5, 2000, 2))?.points;
    let want = pareto_frontier(&union_input(&a, &b)?);
    println!("|A| = {}, |B| = {}, |ND(A u B)| = {}", a.len(), b.len(), want.len());

    for algo in Algorithm::ALL {
        for tree in TreeKind::ALL {
            let res = pareto_union(&a, &b, algo, tree, LeafCapacity::DEFAULT)?;
            assert!(res.frontier.set_eq(&want));
            println!(
                "{algo:>10} {tree:>3}: {:>9} comparisons {:>8} node visits {:>6.1} ms",
                res.stats.comparisons,
                res.stats.node_visits,
                res.stats.elapsed_ns as f64 / 1e6
            );
        }
    }
    Ok(())
}
