//! Builds the three tree variants on an 11-point set with a plateau and prints their leaves.

use ndplus::golden::plateau_example_set;
use ndplus::{DominanceTree, LeafCapacity, NdPlusTree, QndPlusTree, TndPlusTree};

fn show<T: DominanceTree>(name: &str, tree: &T) {
    let st = tree.shape_stats();
    println!(
        "{name}: depth {}..{} (BI {}), {} nodes",
        st.min_depth, st.max_depth, st.balance_indicator, st.nodes
    );
    for leaf in tree.leaves() {
        let pts: Vec<&[f64]> = leaf.points.iter().map(|p| p.coords()).collect();
        println!("  {:<4} {:?}", leaf.path, pts);
    }
}

fn main() {
    let s = plateau_example_set();
    let m = LeafCapacity::new(4).unwrap();
    show("ND+", &NdPlusTree::build(&s, m));
    show("QND+", &QndPlusTree::build(&s, m));
    show("TND+", &TndPlusTree::build(&s, m));
}
