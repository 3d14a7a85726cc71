//! Pareto sum of two small 3-d sets with every applicable algorithm and tree.

use ndplus::golden::sum_example_sets;
use ndplus::{minkowski_sum, pareto_sum, Algorithm, LeafCapacity, TreeKind};

fn main() -> ndplus::Result<()> {
    let (a, b) = sum_example_sets();
    let sum = minkowski_sum(&a, &b)?;
    println!("A (+) B has {} points:", sum.len());
    for p in &sum {
        println!("  {:?}", p.coords());
    }

    for algo in [Algorithm::PlainNdRed, Algorithm::PreNd] {
        for tree in TreeKind::ALL {
            let res = pareto_sum(&a, &b, algo, tree, LeafCapacity::DEFAULT)?;
            println!(
                "{algo:>10} {tree}: {} points, {} comparisons",
                res.frontier.len(),
                res.stats.comparisons
            );
        }
    }
    Ok(())
}
