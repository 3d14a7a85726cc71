//! Plain-text point files.
//!
//! ```text
//! # pareto-points v1
//! d=3 n=2
//! 1 10 2
//! 2 9.5 6
//! ```

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::point::{check_dim, Point, PointSet};

pub const HEADER: &str = "# pareto-points v1";

/// Shortest representation that parses back to the same `f64`.
fn format_coord(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn write_points_to<W: Write>(s: &PointSet, mut w: W) -> Result<()> {
    writeln!(w, "{HEADER}")?;
    writeln!(w, "d={} n={}", s.dim(), s.len())?;
    let mut line = String::new();
    for p in s {
        line.clear();
        for (j, v) in p.coords().iter().enumerate() {
            if j > 0 {
                line.push(' ');
            }
            line.push_str(&format_coord(*v));
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_points(s: &PointSet, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path.as_ref())?;
    write_points_to(s, BufWriter::new(file))
}

pub fn read_points(path: impl AsRef<Path>) -> Result<PointSet> {
    let path = path.as_ref();
    let file = File::open(path)?;
    read_points_from(BufReader::new(file), path)
}

/// Parses a point file; `source` only labels error messages.
pub fn read_points_from<R: BufRead>(reader: R, source: &Path) -> Result<PointSet> {
    let err = |line: usize, message: String| Error::Parse {
        path: source.to_path_buf(),
        line,
        message,
    };
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (no, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
    if header?.trim_end() != HEADER {
        return Err(err(no, format!("expected `{HEADER}`")));
    }

    let (no, sizes) = lines
        .next()
        .ok_or_else(|| err(2, "missing `d=<int> n=<int>` line".into()))?;
    let sizes = sizes?;
    let (d, n) = parse_sizes(sizes.trim()).ok_or_else(|| {
        err(no, format!("expected `d=<int> n=<int>`, found `{}`", sizes.trim()))
    })?;
    check_dim(d).map_err(|e| err(no, e.to_string()))?;

    let mut points = Vec::with_capacity(n.min(1 << 20));
    for (no, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if points.len() == n {
            if trimmed.is_empty() {
                continue;
            }
            return Err(err(no, format!("more than n={n} rows")));
        }
        let coords = trimmed
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| err(no, format!("`{tok}` is not a number")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if coords.len() != d {
            return Err(err(no, format!("expected {d} columns, found {}", coords.len())));
        }
        points.push(Point::new(coords).map_err(|e| err(no, e.to_string()))?);
    }
    if points.len() != n {
        return Err(err(
            points.len() + 3,
            format!("expected {n} rows, found {}", points.len()),
        ));
    }
    PointSet::new(d, points)
}

fn parse_sizes(s: &str) -> Option<(usize, usize)> {
    let mut parts = s.split_whitespace();
    let d = parts.next()?.strip_prefix("d=")?.parse().ok()?;
    let n = parts.next()?.strip_prefix("n=")?.parse().ok()?;
    parts.next().is_none().then_some((d, n))
}
