//! Tree shape and query cost on a set where half the points share the median in one dimension.

use ndplus::datasets::{generate, inject_plateau, DatasetSpec, Family};
use ndplus::{
    DimMask, DominanceTree, FilterStats, LeafCapacity, NdPlusTree, PointSet, QndPlusTree,
    TndPlusTree,
};

fn measure<T: DominanceTree>(name: &str, s: &PointSet, queries: &PointSet) {
    let tree = T::build(s, LeafCapacity::DEFAULT);
    let st = tree.shape_stats();
    let mut stats = FilterStats::default();
    for q in queries {
        tree.dominated(q, DimMask::EMPTY, &mut stats).unwrap();
    }
    println!(
        "{name:<5} height {:>2} BI {:>2} nodes {:>5} comparisons/query {:>8.1}",
        st.max_depth,
        st.balance_indicator,
        st.nodes,
        stats.comparisons as f64 / queries.len() as f64
    );
}

fn with_plateau(n: usize, seed: u64) -> ndplus::Result<PointSet> {
    let s = generate(&DatasetSpec::new(Family::Urs, 8, n, seed))?.points;
    inject_plateau(&s, 2, 0.5, seed)
}

fn main() -> ndplus::Result<()> {
    let points = with_plateau(10_000, 3)?;
    let queries = with_plateau(1000, 4)?;
    measure::<NdPlusTree>("ND+", &points, &queries);
    measure::<QndPlusTree>("QND+", &points, &queries);
    measure::<TndPlusTree>("TND+", &points, &queries);
    Ok(())
}
