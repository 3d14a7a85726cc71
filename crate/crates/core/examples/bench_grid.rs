//! A small benchmark grid written as CSV to stdout.

use ndplus::bench::{Grid, Op};
use ndplus::datasets::Family;
use ndplus::{Algorithm, LeafCapacity, TreeKind};

fn main() -> ndplus::Result<()> {
    let grid = Grid {
        families: vec![Family::Urs, Family::Urspc],
        dims: vec![4],
        sizes: vec![100],
        seeds: vec![1, 2],
        ops: vec![Op::Union, Op::Sum],
        algos: Algorithm::ALL.to_vec(),
        trees: TreeKind::ALL.to_vec(),
        m: LeafCapacity::DEFAULT,
    };
    eprintln!("{} rows", grid.cells());
    grid.run(std::io::stdout().lock())?;
    Ok(())
}
