//! Points, point sets, dimension masks and the dominance relation.
//!
//! All objectives are minimized. Dimensions are 0-based throughout the crate.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Index;

use crate::error::{Error, Result};

/// Largest supported dimensionality. Dimension masks are stored as a single `u64`.
pub const MAX_DIM: usize = 64;

/// Smallest supported dimensionality.
pub const MIN_DIM: usize = 2;

/// An immutable objective vector with finite coordinates.
///
/// Negative zero is normalized to positive zero on construction, so equality and
/// hashing on the bit patterns agree with numeric equality.
#[derive(Clone, PartialEq)]
pub struct Point {
    coords: Box<[f64]>,
}

impl Point {
    pub fn new(coords: impl Into<Vec<f64>>) -> Result<Self> {
        let mut coords: Vec<f64> = coords.into();
        check_dim(coords.len())?;
        for (index, value) in coords.iter_mut().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    index,
                    value: *value,
                });
            }
            if *value == 0.0 {
                *value = 0.0;
            }
        }
        Ok(Self {
            coords: coords.into_boxed_slice(),
        })
    }

    /// Builds a point from values already known to be finite and of valid length.
    pub(crate) fn from_finite(coords: Vec<f64>) -> Self {
        debug_assert!(coords.iter().all(|v| v.is_finite()));
        let coords: Vec<f64> = coords
            .into_iter()
            .map(|v| if v == 0.0 { 0.0 } else { v })
            .collect();
        Self {
            coords: coords.into_boxed_slice(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Component-wise sum of two points of equal dimensionality.
    pub fn add(&self, other: &Point) -> Result<Point> {
        check_same_dim(self.dim(), other.dim())?;
        Ok(Point::from_finite(
            self.coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }
}

// Coordinates are finite and -0.0 is normalized, so numeric equality is an equivalence.
impl Eq for Point {}

impl PartialEq<[f64]> for Point {
    fn eq(&self, other: &[f64]) -> bool {
        *self.coords == *other
    }
}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for v in self.coords.iter() {
            v.to_bits().hash(state);
        }
    }
}

impl Index<usize> for Point {
    type Output = f64;

    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

pub(crate) fn check_same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Set of dimensions ignored by dominance checks and by splitting.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct DimMask {
    bits: u64,
}

impl DimMask {
    pub const EMPTY: DimMask = DimMask { bits: 0 };

    pub fn empty() -> Self {
        Self::EMPTY
    }

    /// Mask excluding the given dimensions. Fails if any index is out of range for `dim`
    /// or if no active dimension would remain.
    pub fn excluding(dim: usize, excluded: &[usize]) -> Result<Self> {
        let mut mask = Self::EMPTY;
        for &j in excluded {
            if j >= dim {
                return Err(Error::InvalidMask {
                    dim,
                    reason: "excluded index out of range",
                });
            }
            mask = mask.with(j);
        }
        mask.validate(dim)?;
        Ok(mask)
    }

    /// Checks that all excluded indices are below `dim` and at least one dimension stays active.
    pub fn validate(self, dim: usize) -> Result<()> {
        check_dim(dim)?;
        if dim < 64 && self.bits >> dim != 0 {
            return Err(Error::InvalidMask {
                dim,
                reason: "excluded index out of range",
            });
        }
        if self.len() >= dim {
            return Err(Error::InvalidMask {
                dim,
                reason: "no active dimension remains",
            });
        }
        Ok(())
    }

    #[inline]
    #[must_use]
    pub fn with(self, j: usize) -> Self {
        debug_assert!(j < MAX_DIM);
        Self {
            bits: self.bits | (1u64 << j),
        }
    }

    #[inline]
    pub fn contains(self, j: usize) -> bool {
        j < MAX_DIM && (self.bits >> j) & 1 == 1
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    #[must_use]
    pub fn union(self, other: DimMask) -> Self {
        Self {
            bits: self.bits | other.bits,
        }
    }

    #[inline]
    #[must_use]
    pub fn difference(self, other: DimMask) -> Self {
        Self {
            bits: self.bits & !other.bits,
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_DIM).filter(move |&j| self.contains(j))
    }

    /// Active (non-excluded) dimensions among `0..dim`, in increasing order.
    pub fn active(self, dim: usize) -> impl Iterator<Item = usize> {
        (0..dim).filter(move |&j| !self.contains(j))
    }

    /// First active dimension strictly after `after` in cyclic order over `0..dim`.
    pub(crate) fn next_active(self, after: usize, dim: usize) -> Option<usize> {
        (1..=dim)
            .map(|k| (after + k) % dim)
            .find(|&j| !self.contains(j))
    }
}

impl fmt::Debug for DimMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Dominance under a mask.
///
/// With an empty mask this is Pareto dominance: `p != q` and `p[i] <= q[i]` for every `i`.
/// With a non-empty mask it is weak dominance over the active dimensions only.
pub fn dominates(p: &Point, q: &Point, mask: DimMask) -> Result<bool> {
    check_same_dim(p.dim(), q.dim())?;
    mask.validate(p.dim())?;
    Ok(dominates_raw(p.coords(), q.coords(), mask))
}

#[inline]
pub(crate) fn dominates_raw(p: &[f64], q: &[f64], mask: DimMask) -> bool {
    debug_assert_eq!(p.len(), q.len());
    if mask.is_empty() {
        let mut strict = false;
        for (a, b) in p.iter().zip(q) {
            if a > b {
                return false;
            }
            strict |= a < b;
        }
        strict
    } else {
        p.iter()
            .zip(q)
            .enumerate()
            .all(|(j, (a, b))| a <= b || mask.contains(j))
    }
}

/// Lexicographic comparison on coordinates.
pub fn lex_cmp(p: &Point, q: &Point) -> Ordering {
    for (a, b) in p.coords().iter().zip(q.coords()) {
        match a.total_cmp(b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    p.dim().cmp(&q.dim())
}

/// An ordered collection of points of one dimensionality.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
    pareto_verified: bool,
}

impl PointSet {
    pub fn empty(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            points: Vec::new(),
            pareto_verified: false,
        })
    }

    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        check_dim(dim)?;
        for p in &points {
            check_same_dim(dim, p.dim())?;
        }
        Ok(Self {
            dim,
            points,
            pareto_verified: false,
        })
    }

    /// Builds a set from raw rows; the dimensionality is taken from the first row.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows
            .first()
            .map(|r| r.as_ref().len())
            .ok_or(Error::EmptyInput("PointSet::from_rows"))?;
        let points = rows
            .iter()
            .map(|r| Point::new(r.as_ref().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, points)
    }

    pub(crate) fn from_parts(dim: usize, points: Vec<Point>, pareto_verified: bool) -> Self {
        debug_assert!(points.iter().all(|p| p.dim() == dim));
        Self {
            dim,
            points,
            pareto_verified,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub fn is_pareto_verified(&self) -> bool {
        self.pareto_verified
    }

    /// Checks the set with the brute-force oracle and marks it as a verified Pareto set.
    ///
    /// Fails with [`Error::NotParetoVerified`] if the set contains duplicates or a dominated point.
    pub fn verify_pareto(mut self) -> Result<Self> {
        if self.pareto_verified {
            return Ok(self);
        }
        let deduped = dedup(self.clone());
        if deduped.len() != self.len() {
            return Err(Error::NotParetoVerified);
        }
        let mut stats = crate::stats::FilterStats::default();
        let frontier = crate::oracle::oracle_pareto(&self, &mut stats);
        if frontier.len() != self.len() {
            return Err(Error::NotParetoVerified);
        }
        self.pareto_verified = true;
        Ok(self)
    }

    /// Order-insensitive equality of the coordinate sets.
    pub fn set_eq(&self, other: &PointSet) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let a: HashSet<&Point> = self.points.iter().collect();
        let b: HashSet<&Point> = other.points.iter().collect();
        a == b
    }

    /// Values of one coordinate across all points.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.points.iter().map(|p| p[j]).collect()
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Sorts the set lexicographically.
pub fn lex_sort(mut s: PointSet) -> PointSet {
    s.points.sort_by(lex_cmp);
    s
}

/// Removes coordinate-identical repeats, keeping the first occurrence of each point.
pub fn dedup(s: PointSet) -> PointSet {
    let PointSet {
        dim,
        points,
        pareto_verified,
    } = s;
    let mut seen = HashSet::with_capacity(points.len());
    let mut kept = Vec::with_capacity(points.len());
    for p in points {
        if seen.insert(p.clone()) {
            kept.push(p);
        }
    }
    PointSet {
        dim,
        points: kept,
        pareto_verified,
    }
}

/// Minkowski sum `A ⊕ B`, deduplicated, in row-major order over `(a, b)`.
pub fn minkowski_sum(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    check_same_dim(a.dim(), b.dim())?;
    let mut sums = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            sums.push(Point::from_finite(
                p.coords()
                    .iter()
                    .zip(q.coords())
                    .map(|(x, y)| x + y)
                    .collect(),
            ));
        }
    }
    Ok(dedup(PointSet::from_parts(a.dim(), sums, false)))
}
