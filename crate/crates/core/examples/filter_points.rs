//! Dominance-filters a raw uniform sample and reports the work done by each tree.

use ndplus::datasets::gen_uniform_raw;
use ndplus::{filter_set, Algorithm, LeafCapacity, TreeKind};

fn main() -> ndplus::Result<()> {
    let raw = gen_uniform_raw(4, 20_000, 7)?;
    for tree in TreeKind::ALL {
        let res = filter_set(&raw, Algorithm::PreNd, tree, LeafCapacity::DEFAULT)?;
        println!(
            "{tree}: {} of {} points survive, {} comparisons",
            res.frontier.len(),
            raw.len(),
            res.stats.comparisons
        );
    }
    Ok(())
}
