//! Seeded synthetic Pareto sets and the point file format.
//!
//! All four Pareto families start from points drawn uniformly in `(0, 1]^d` and scaled to
//! unit Euclidean norm, which makes them mutually non-dominated. The plateau and
//! correlation variants then perturb the sample, filter it with the brute-force oracle and
//! keep the first `n` survivors, enlarging the sample until enough points survive.
//!
//! The random source is ChaCha8 seeded from the spec's `u64` seed.

mod io;

pub use io::{read_points, read_points_from, write_points, write_points_to, HEADER};

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracle::frontier_prefix;
use crate::point::{check_dim, dedup, Point, PointSet};
use crate::select::upper_median;

/// Largest raw sample a generator will draw before giving up.
pub const MAX_RAW_POINTS: usize = 1 << 24;

/// Retry rounds before a generator gives up.
pub const MAX_ROUNDS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Unit-sphere points.
    Urs,
    /// Unit-sphere points with plateaus.
    Ursp,
    /// Unit-sphere points with one proportional and one inversely proportional dimension.
    Ursc,
    /// Correlation and plateaus combined.
    Urspc,
    /// Raw points uniform in `(0, 1]^d`. Not a Pareto set; used as filter input.
    Uniform,
}

impl Family {
    pub const PARETO: [Family; 4] = [Family::Urs, Family::Ursp, Family::Ursc, Family::Urspc];

    pub fn name(self) -> &'static str {
        match self {
            Family::Urs => "urs",
            Family::Ursp => "ursp",
            Family::Ursc => "ursc",
            Family::Urspc => "urspc",
            Family::Uniform => "uniform",
        }
    }

    pub fn min_dim(self) -> usize {
        match self {
            Family::Ursc | Family::Urspc => 3,
            _ => 2,
        }
    }

    /// Whether generated sets are Pareto sets.
    pub fn is_pareto(self) -> bool {
        self != Family::Uniform
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "urs" => Ok(Family::Urs),
            "ursp" => Ok(Family::Ursp),
            "ursc" => Ok(Family::Ursc),
            "urspc" => Ok(Family::Urspc),
            "uniform" => Ok(Family::Uniform),
            _ => Err(Error::InvalidArgument(format!("unknown dataset family `{s}`"))),
        }
    }
}

/// Generation parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct DatasetSpec {
    pub family: Family,
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    /// Initial raw sample size as a multiple of `n`; doubled on every retry.
    pub oversample: usize,
    /// Share of the raw sample overwritten with the pivot in each plateau dimension.
    pub plateau_fraction: f64,
    /// Number of plateau dimensions. Defaults to `⌈d/2⌉` for URSP and `⌈d/3⌉` for URSPC.
    pub plateau_dims: Option<usize>,
}

impl DatasetSpec {
    pub fn new(family: Family, d: usize, n: usize, seed: u64) -> Self {
        Self {
            family,
            d,
            n,
            seed,
            oversample: 4,
            plateau_fraction: 0.2,
            plateau_dims: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_dim(self.d)?;
        if self.d < self.family.min_dim() {
            return Err(Error::InvalidArgument(format!(
                "{} needs d >= {}",
                self.family,
                self.family.min_dim()
            )));
        }
        if self.n == 0 {
            return Err(Error::InvalidArgument("n must be >= 1".into()));
        }
        if self.oversample == 0 {
            return Err(Error::InvalidArgument("oversample must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.plateau_fraction) {
            return Err(Error::InvalidArgument(
                "plateau fraction must lie in [0, 1]".into(),
            ));
        }
        if let Some(k) = self.plateau_dims {
            if k >= self.d {
                return Err(Error::InvalidArgument(format!(
                    "at most {} plateau dimensions for d = {}",
                    self.d - 1,
                    self.d
                )));
            }
        }
        Ok(())
    }

    fn plateau_count(&self) -> usize {
        self.plateau_dims.unwrap_or(match self.family {
            Family::Ursp => self.d.div_ceil(2),
            Family::Urspc => self.d.div_ceil(3),
            _ => 0,
        })
    }
}

/// Generated points plus the dimensions the generator perturbed.
#[derive(Clone, Debug)]
pub struct Dataset {
    pub points: PointSet,
    pub plateau_dims: Vec<usize>,
    /// `(a, b, c)`: `b` follows `a`, `c` follows `1.05 - a`.
    pub correlated: Option<(usize, usize, usize)>,
    /// Raw sampling rounds used.
    pub rounds: usize,
}

/// Runs the generator described by `spec`.
pub fn generate(spec: &DatasetSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let d = spec.d;
    if spec.family == Family::Uniform {
        let points = uniform_points(&mut rng, d, spec.n);
        return Ok(Dataset {
            points,
            plateau_dims: Vec::new(),
            correlated: None,
            rounds: 1,
        });
    }
    let correlated = matches!(spec.family, Family::Ursc | Family::Urspc).then(|| {
        let idx = sample(&mut rng, d, 3);
        (idx.index(0), idx.index(1), idx.index(2))
    });
    let plateau_dims = sample(&mut rng, d, spec.plateau_count()).into_vec();

    let mut factor = if spec.family == Family::Urs {
        1
    } else {
        spec.oversample
    };
    for round in 1..=MAX_ROUNDS {
        let raw_n = spec
            .n
            .checked_mul(factor)
            .filter(|&r| r <= MAX_RAW_POINTS)
            .ok_or_else(|| {
                Error::Generation(format!(
                    "raw sample would exceed {MAX_RAW_POINTS} points after {} rounds",
                    round - 1
                ))
            })?;
        let mut raw: Vec<Vec<f64>> = (0..raw_n).map(|_| sphere_point(&mut rng, d)).collect();
        if let Some((a, b, c)) = correlated {
            for p in &mut raw {
                correlate(&mut rng, p, a, b, c);
            }
        }
        for &j in &plateau_dims {
            add_plateau(&mut rng, &mut raw, j, spec.plateau_fraction);
        }
        let raw = dedup(PointSet::from_parts(
            d,
            raw.into_iter().map(Point::from_finite).collect(),
            false,
        ));
        let frontier = frontier_prefix(&raw, spec.n);
        if frontier.len() == spec.n {
            return Ok(Dataset {
                points: frontier,
                plateau_dims,
                correlated,
                rounds: round,
            });
        }
        factor = factor.saturating_mul(2);
    }
    Err(Error::Generation(format!(
        "fewer than {} Pareto points after {MAX_ROUNDS} rounds",
        spec.n
    )))
}

fn expect_family(spec: &DatasetSpec, family: Family) -> Result<()> {
    if spec.family == family {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "spec is for {}, not {family}",
            spec.family
        )))
    }
}

pub fn gen_urs(spec: &DatasetSpec) -> Result<PointSet> {
    expect_family(spec, Family::Urs)?;
    generate(spec).map(|ds| ds.points)
}

pub fn gen_ursp(spec: &DatasetSpec) -> Result<PointSet> {
    expect_family(spec, Family::Ursp)?;
    generate(spec).map(|ds| ds.points)
}

pub fn gen_ursc(spec: &DatasetSpec) -> Result<PointSet> {
    expect_family(spec, Family::Ursc)?;
    generate(spec).map(|ds| ds.points)
}

pub fn gen_urspc(spec: &DatasetSpec) -> Result<PointSet> {
    expect_family(spec, Family::Urspc)?;
    generate(spec).map(|ds| ds.points)
}

/// `n` distinct points uniform in `(0, 1]^d`, not filtered.
pub fn gen_uniform_raw(d: usize, n: usize, seed: u64) -> Result<PointSet> {
    check_dim(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(uniform_points(&mut rng, d, n))
}

fn unit_interval(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - rng.gen::<f64>()
}

fn uniform_points(rng: &mut ChaCha8Rng, d: usize, n: usize) -> PointSet {
    let mut set = PointSet::from_parts(d, Vec::with_capacity(n), false);
    while set.len() < n {
        let mut points = set.into_points();
        while points.len() < n {
            points.push(Point::from_finite(
                (0..d).map(|_| unit_interval(rng)).collect(),
            ));
        }
        set = dedup(PointSet::from_parts(d, points, false));
    }
    set
}

fn sphere_point(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    let mut p: Vec<f64> = (0..d).map(|_| unit_interval(rng)).collect();
    let norm = p.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut p {
        *v /= norm;
    }
    p
}

fn correlate(rng: &mut ChaCha8Rng, p: &mut [f64], a: usize, b: usize, c: usize) {
    let e1: f64 = rng.gen_range(-0.05..0.05);
    let e2: f64 = rng.gen_range(-0.05..0.05);
    p[b] = (p[a] * (1.0 + e1)).max(f64::MIN_POSITIVE);
    p[c] = ((1.05 - p[a]) * (1.0 + e2)).max(f64::MIN_POSITIVE);
}

/// Puts `round(fraction * n)` random points of `s` on a plateau at the upper median of
/// dimension `dim`, then removes repeated points.
///
/// The result is not re-filtered, so it may contain dominated points.
pub fn inject_plateau(s: &PointSet, dim: usize, fraction: f64, seed: u64) -> Result<PointSet> {
    if dim >= s.dim() {
        return Err(Error::InvalidArgument(format!(
            "plateau dimension {dim} out of range for d={}",
            s.dim()
        )));
    }
    if !(0.0..=1.0).contains(&fraction) {
        return Err(Error::InvalidArgument(format!(
            "plateau fraction must be in [0, 1], got {fraction}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw: Vec<Vec<f64>> = s.iter().map(|p| p.coords().to_vec()).collect();
    add_plateau(&mut rng, &mut raw, dim, fraction);
    let points = raw
        .into_iter()
        .map(Point::new)
        .collect::<Result<Vec<_>>>()?;
    Ok(dedup(PointSet::new(s.dim(), points)?))
}

/// Overwrites dimension `j` of a random `fraction` of the points with the column's upper median.
fn add_plateau(rng: &mut ChaCha8Rng, raw: &mut [Vec<f64>], j: usize, fraction: f64) {
    if raw.is_empty() {
        return;
    }
    let mut column: Vec<f64> = raw.iter().map(|p| p[j]).collect();
    let pivot = upper_median(&mut column);
    let k = ((raw.len() as f64) * fraction).round() as usize;
    for i in sample(rng, raw.len(), k.min(raw.len())) {
        raw[i][j] = pivot;
    }
}
