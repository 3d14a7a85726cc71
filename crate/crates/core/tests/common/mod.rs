#![allow(dead_code)]

use ndplus::{dedup, Point, PointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deduplicated random points with integer coordinates in `0..levels`; small `levels`
/// produce many ties and plateaus.
pub fn grid_set(rng: &mut ChaCha8Rng, d: usize, n: usize, levels: u32) -> PointSet {
    let points = (0..n)
        .map(|_| {
            Point::new(
                (0..d)
                    .map(|_| f64::from(rng.gen_range(0..levels)))
                    .collect::<Vec<_>>(),
            )
            .unwrap()
        })
        .collect();
    dedup(PointSet::new(d, points).unwrap())
}

/// Random set where one dimension is constant for about half of the points.
pub fn plateau_set(rng: &mut ChaCha8Rng, d: usize, n: usize) -> PointSet {
    let j = rng.gen_range(0..d);
    let v: f64 = rng.gen();
    let points = (0..n)
        .map(|_| {
            let mut c: Vec<f64> = (0..d).map(|_| rng.gen()).collect();
            if rng.gen_bool(0.5) {
                c[j] = v;
            }
            Point::new(c).unwrap()
        })
        .collect();
    dedup(PointSet::new(d, points).unwrap())
}

/// Brute-force "is `p` dominated by a member of `s`".
pub fn has_dominator(s: &PointSet, p: &Point, mask: ndplus::DimMask) -> bool {
    s.iter().any(|q| ndplus::dominates(q, p, mask).unwrap())
}
