//! Small reference point sets with hand-checked structure.

use crate::point::PointSet;

/// Eleven 3-d points with a plateau at value 2 in the first dimension.
pub const PLATEAU_EXAMPLE: [[f64; 3]; 11] = [
    [1., 10., 2.],
    [2., 9., 6.],
    [2., 8., 7.],
    [2., 12., 0.],
    [2., 7., 8.],
    [2., 11., 1.],
    [4., 7., 4.],
    [5., 7., 3.],
    [6., 7., 2.],
    [7., 6., 1.],
    [8., 6., 0.],
];

/// Two 2-point Pareto sets whose Minkowski sum has one dominated point.
pub const SUM_EXAMPLE_A: [[f64; 3]; 2] = [[3., 5., 4.], [5., 2., 1.]];
pub const SUM_EXAMPLE_B: [[f64; 3]; 2] = [[2., 1., 3.], [6., 3., 2.]];

pub fn plateau_example_set() -> PointSet {
    verified(&PLATEAU_EXAMPLE)
}

pub fn sum_example_sets() -> (PointSet, PointSet) {
    (verified(&SUM_EXAMPLE_A), verified(&SUM_EXAMPLE_B))
}

fn verified(rows: &[[f64; 3]]) -> PointSet {
    PointSet::from_rows(rows)
        .and_then(PointSet::verify_pareto)
        .expect("reference sets are Pareto sets")
}
