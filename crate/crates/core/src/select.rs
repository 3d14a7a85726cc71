//! Order statistics used for splitting: k-th smallest value, upper median and
//! nearest-rank quartiles.

use crate::error::{Error, Result};

/// Returns the value at 0-based position `k` of the sorted order of `values`.
///
/// Runs in linear time on a scratch copy; `values` is left untouched.
pub fn select_kth(values: &[f64], k: usize) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput("select_kth"));
    }
    if k >= values.len() {
        return Err(Error::InvalidArgument(format!(
            "select_kth: index {k} out of range for {} values",
            values.len()
        )));
    }
    let mut scratch = values.to_vec();
    Ok(select_in_place(&mut scratch, k))
}

/// Selects in place; afterwards `values[..k]` holds values `<=` the result and
/// `values[k + 1..]` values `>=` it.
#[inline]
pub(crate) fn select_in_place(values: &mut [f64], k: usize) -> f64 {
    let (_, kth, _) = values.select_nth_unstable_by(k, f64::total_cmp);
    *kth
}

/// Upper median: `sorted[n / 2]`.
pub(crate) fn upper_median(values: &mut [f64]) -> f64 {
    let k = values.len() / 2;
    select_in_place(values, k)
}

/// Nearest-rank quartiles at 0-based positions `n/4`, `n/2`, `3n/4` of the sorted order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quartiles {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

pub fn quartiles(values: &[f64]) -> Result<Quartiles> {
    if values.is_empty() {
        return Err(Error::EmptyInput("quartiles"));
    }
    let mut scratch = values.to_vec();
    Ok(quartiles_in_place(&mut scratch))
}

/// Quartiles computed with three selections: the median over the whole slice, then
/// Q1 on the lower part and Q3 on the upper part.
pub(crate) fn quartiles_in_place(values: &mut [f64]) -> Quartiles {
    let n = values.len();
    debug_assert!(n > 0);
    let (i1, i2, i3) = (n / 4, n / 2, 3 * n / 4);
    let q2 = select_in_place(values, i2);
    let q1 = if i1 == i2 {
        q2
    } else {
        select_in_place(&mut values[..i2], i1)
    };
    let q3 = if i3 == i2 {
        q2
    } else {
        let upper = &mut values[i2 + 1..];
        select_in_place(upper, i3 - i2 - 1)
    };
    Quartiles { q1, q2, q3 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// First-dimension values of the 11-point plateau example set.
    const DIM1_S: [f64; 11] = [1., 2., 2., 2., 2., 2., 4., 5., 6., 7., 8.];

    #[test]
    fn select_examples() {
        assert_eq!(select_kth(&[5., 1., 3.], 1).unwrap(), 3.);
        assert_eq!(select_kth(&[2., 2., 2.], 0).unwrap(), 2.);
        assert_eq!(select_kth(&DIM1_S, 5).unwrap(), 2.);
        assert!(matches!(select_kth(&[], 0), Err(Error::EmptyInput(_))));
        assert!(select_kth(&[1.], 1).is_err());
    }

    #[test]
    fn quartile_examples() {
        let q = quartiles(&[2., 1., 2., 2., 7., 2., 4., 5., 6., 2., 8.]).unwrap();
        assert_eq!((q.q1, q.q2, q.q3), (2., 2., 6.));
        // left part of the quartile tree, second dimension
        let q = quartiles(&[6., 6., 7., 7., 7., 10.]).unwrap();
        assert_eq!((q.q1, q.q2), (6., 7.));
        // right part of the ternary tree, second dimension
        let q = quartiles(&[6., 6., 7., 7., 7.]).unwrap();
        assert_eq!((q.q2, q.q3), (7., 7.));
        let q = quartiles(&[4.5; 9]).unwrap();
        assert_eq!((q.q1, q.q2, q.q3), (4.5, 4.5, 4.5));
        assert!(quartiles(&[]).is_err());
        let q = quartiles(&[3.]).unwrap();
        assert_eq!((q.q1, q.q2, q.q3), (3., 3., 3.));
    }

    fn sorted(v: &[f64]) -> Vec<f64> {
        let mut s = v.to_vec();
        s.sort_by(f64::total_cmp);
        s
    }

    proptest! {
        #[test]
        fn select_matches_sort(
            values in prop::collection::vec(-50i32..50, 1..10_000),
            frac in 0.0f64..1.0,
        ) {
            let values: Vec<f64> = values.into_iter().map(f64::from).collect();
            let k = ((values.len() as f64) * frac) as usize;
            let k = k.min(values.len() - 1);
            prop_assert_eq!(select_kth(&values, k).unwrap(), sorted(&values)[k]);
        }

        #[test]
        fn quartiles_match_sort(values in prop::collection::vec(-20i32..20, 1..500)) {
            let values: Vec<f64> = values.into_iter().map(f64::from).collect();
            let s = sorted(&values);
            let n = s.len();
            let q = quartiles(&values).unwrap();
            prop_assert_eq!(q.q1, s[n / 4]);
            prop_assert_eq!(q.q2, s[n / 2]);
            prop_assert_eq!(q.q3, s[3 * n / 4]);
            prop_assert!(q.q1 <= q.q2 && q.q2 <= q.q3);
        }
    }
}
