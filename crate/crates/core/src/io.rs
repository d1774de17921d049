//! Plain-text instance and coloring files.
//!
//! Instance file:
//!
//! ```text
//! <point count>
//! <x> <y>          one line per point
//! family <m>       optional section
//! <u> <v>          one line per crossing-family edge
//! ```
//!
//! Coloring file:
//!
//! ```text
//! <n> <color count>
//! <u> <v> <color>  one line per edge of K_n, u < v
//! ```
//!
//! Blank lines and lines starting with `#` are ignored by the parsers. The
//! writers emit no comments, single spaces, edges in lexicographic order and
//! a trailing newline, so their output is canonical.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::coloring::{edge_count, Coloring, ColoringError, Edge};
use crate::geometry::{GeometryError, Point, PointSet};
use crate::quasi::{CrossingFamily, QuasiError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    UnexpectedEnd(String),
    #[error("invalid point set: {0}")]
    Geometry(#[from] GeometryError),
    #[error("invalid crossing family: {0}")]
    Family(#[from] QuasiError),
    #[error("line {line}: {source}")]
    Coloring { line: usize, source: ColoringError },
    #[error("edge {0} has no line")]
    MissingEdge(Edge),
}

/// A point set with an optional crossing family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub points: PointSet,
    pub family: Option<CrossingFamily>,
}

/// Non-empty, non-comment lines with their 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        Lines {
            inner: text.lines().enumerate(),
        }
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, line) in self.inner.by_ref() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Some((i + 1, line.split_whitespace().collect()));
        }
        None
    }
}

fn fields<T: FromStr>(line: usize, tokens: &[&str], expected: usize) -> Result<Vec<T>, FormatError> {
    if tokens.len() != expected {
        return Err(FormatError::Parse {
            line,
            message: format!("expected {expected} fields, found {}", tokens.len()),
        });
    }
    tokens
        .iter()
        .map(|t| {
            t.parse().map_err(|_| FormatError::Parse {
                line,
                message: format!("invalid number {t:?}"),
            })
        })
        .collect()
}

fn edge_at(line: usize, u: usize, v: usize, n: usize) -> Result<Edge, FormatError> {
    if u == v || u >= n || v >= n {
        return Err(FormatError::Parse {
            line,
            message: format!("{u} {v} is not an edge of K_{n}"),
        });
    }
    Ok(Edge::new(u, v))
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let mut lines = Lines::new(text);
    let (line, tokens) = lines
        .next()
        .ok_or_else(|| FormatError::UnexpectedEnd("missing point count".into()))?;
    let count = fields::<usize>(line, &tokens, 1)?[0];
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let (line, tokens) = lines.next().ok_or_else(|| {
            FormatError::UnexpectedEnd(format!("expected {count} points, found {}", points.len()))
        })?;
        let xy = fields::<i64>(line, &tokens, 2)?;
        points.push(Point::new(xy[0], xy[1]));
    }
    let points = PointSet::new(points)?;

    let family = match lines.next() {
        None => None,
        Some((line, tokens)) => {
            if tokens.first() != Some(&"family") {
                return Err(FormatError::Parse {
                    line,
                    message: "expected a `family <m>` section after the points".into(),
                });
            }
            let m = fields::<usize>(line, &tokens[1..], 1)?[0];
            let mut edges = Vec::with_capacity(m);
            for _ in 0..m {
                let (line, tokens) = lines.next().ok_or_else(|| {
                    FormatError::UnexpectedEnd(format!("expected {m} family edges, found {}", edges.len()))
                })?;
                let uv = fields::<usize>(line, &tokens, 2)?;
                edges.push(edge_at(line, uv[0], uv[1], count)?);
            }
            let family = CrossingFamily::new(edges);
            family.check_pairwise_crossing(&points)?;
            Some(family)
        }
    };
    if let Some((line, _)) = lines.next() {
        return Err(FormatError::Parse {
            line,
            message: "trailing content".into(),
        });
    }
    Ok(Instance { points, family })
}

pub fn write_instance(instance: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "{}", instance.points.len()).unwrap();
    for p in instance.points.points() {
        writeln!(out, "{} {}", p.x, p.y).unwrap();
    }
    if let Some(family) = &instance.family {
        writeln!(out, "family {}", family.size()).unwrap();
        for e in &family.edges {
            writeln!(out, "{} {}", e.u, e.v).unwrap();
        }
    }
    out
}

/// Parses a coloring and checks that every edge of `K_n` appears exactly
/// once with a color below the declared count.
pub fn parse_coloring(text: &str) -> Result<Coloring, FormatError> {
    let mut lines = Lines::new(text);
    let (line, tokens) = lines
        .next()
        .ok_or_else(|| FormatError::UnexpectedEnd("missing header".into()))?;
    let header = fields::<usize>(line, &tokens, 2)?;
    let (n, colors) = (header[0], header[1]);
    let colors = u32::try_from(colors).map_err(|_| FormatError::Parse {
        line,
        message: format!("color count {colors} is too large"),
    })?;
    let mut coloring = Coloring::uncolored(n, colors);
    for (line, tokens) in lines {
        let uvc = fields::<usize>(line, &tokens, 3)?;
        let edge = edge_at(line, uvc[0], uvc[1], n)?;
        let color = u32::try_from(uvc[2]).unwrap_or(u32::MAX);
        coloring
            .assign(edge, color)
            .map_err(|source| FormatError::Coloring { line, source })?;
    }
    if let Err(ColoringError::Uncolored(e)) = coloring.check_total() {
        return Err(FormatError::MissingEdge(e));
    }
    debug_assert_eq!(coloring.iter().count(), edge_count(n));
    Ok(coloring)
}

/// Panics if the coloring is not total.
pub fn write_coloring(coloring: &Coloring) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", coloring.n(), coloring.num_colors()).unwrap();
    for (e, c) in coloring.iter() {
        let c = c.unwrap_or_else(|| panic!("edge {e} has no color"));
        writeln!(out, "{} {} {}", e.u, e.v, c).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::slope_partition;
    use crate::geometry::gen_perfect_crossing_family_pointset;

    #[test]
    fn triangle() {
        let inst = parse_instance("3\n0 0\n4 0\n1 3\n").unwrap();
        assert_eq!(inst.points.len(), 3);
        assert_eq!(inst.points.point(2), Point::new(1, 3));
        assert_eq!(inst.family, None);
        assert_eq!(write_instance(&inst), "3\n0 0\n4 0\n1 3\n");
    }

    #[test]
    fn comments_and_blank_lines() {
        let inst = parse_instance("# a triangle\n\n3\n0 0\n  4 0 \n# apex\n1 3\n\n").unwrap();
        assert_eq!(inst.points.len(), 3);
    }

    #[test]
    fn collinear_instance_names_the_triple() {
        let err = parse_instance("4\n0 0\n1 1\n5 0\n2 2\n").unwrap_err();
        assert_eq!(err, FormatError::Geometry(GeometryError::CollinearTriple(0, 1, 3)));
        assert!(err.to_string().contains("0, 1 and 3"));
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        let err = parse_instance("3\n0 0\n4 x\n1 3\n").unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 3, .. }), "{err}");
        let err = parse_instance("3\n0 0\n4 0 1\n1 3\n").unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 3, .. }));
        assert!(matches!(parse_instance("3\n0 0\n"), Err(FormatError::UnexpectedEnd(_))));
        let err = parse_instance("3\n0 0\n4 0\n1 3\nextra\n").unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 5, .. }));
    }

    #[test]
    fn family_section_round_trips() {
        let (points, family) = gen_perfect_crossing_family_pointset(4, 2).unwrap();
        let inst = Instance {
            points,
            family: Some(CrossingFamily::new(family)),
        };
        let text = write_instance(&inst);
        assert!(text.contains("family 4\n"));
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn non_crossing_family_is_rejected() {
        let text = "4\n0 0\n10 0\n10 10\n0 10\nfamily 2\n0 1\n2 3\n";
        assert!(matches!(
            parse_instance(text),
            Err(FormatError::Family(QuasiError::FamilyNotCrossing(..)))
        ));
        let text = "4\n0 0\n10 0\n10 10\n0 10\nfamily 2\n0 2\n1 3\n";
        assert_eq!(parse_instance(text).unwrap().family.unwrap().size(), 2);
    }

    #[test]
    fn coloring_round_trip() {
        let c = slope_partition(6, 3);
        let text = write_coloring(&c);
        assert!(text.starts_with("6 2\n0 1 0\n0 2 0\n"));
        assert_eq!(parse_coloring(&text).unwrap(), c);
        assert_eq!(write_coloring(&parse_coloring(&text).unwrap()), text);
    }

    #[test]
    fn coloring_errors() {
        let text = write_coloring(&slope_partition(6, 3));
        let missing: String = text.lines().filter(|l| !l.starts_with("0 5 ")).map(|l| format!("{l}\n")).collect();
        assert_eq!(parse_coloring(&missing), Err(FormatError::MissingEdge(Edge::new(0, 5))));

        let duplicated = format!("{text}1 0 1\n");
        assert!(matches!(
            parse_coloring(&duplicated),
            Err(FormatError::Coloring {
                line: 17,
                source: ColoringError::AlreadyColored { .. }
            })
        ));

        let bad_color = text.replacen("0 1 0\n", "0 1 2\n", 1);
        assert!(matches!(
            parse_coloring(&bad_color),
            Err(FormatError::Coloring {
                line: 2,
                source: ColoringError::ColorOutOfRange { .. }
            })
        ));
        assert!(matches!(parse_coloring("3 1\n0 3 0\n"), Err(FormatError::Parse { line: 2, .. })));
    }
}
