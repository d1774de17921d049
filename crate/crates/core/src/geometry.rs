//! Exact integer geometry: orientation and crossing predicates, point-set
//! validation and seeded instance generators.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coloring::Edge;

/// Largest admissible absolute coordinate. Orientation determinants of
/// points within this box are evaluated exactly in `i128`.
pub const COORD_LIMIT: i64 = 1 << 30;

const CONVEX_RADIUS: f64 = 1_000_000.0;
const RANDOM_BOX: i64 = 1 << 20;
const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("point {index} = {point} exceeds the coordinate limit 2^30")]
    CoordinateOutOfRange { index: usize, point: Point },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("points {0}, {1} and {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("point-set validation needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("{what} generation failed after {attempts} attempts: {reason}")]
    GenerationFailed {
        what: &'static str,
        attempts: usize,
        reason: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Point {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }
}

/// Sign of the determinant of `(b - a, c - a)`.
pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    let det = (b.x as i128 - a.x as i128) * (c.y as i128 - a.y as i128)
        - (b.y as i128 - a.y as i128) * (c.x as i128 - a.x as i128);
    match det.cmp(&0) {
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
        Ordering::Greater => Orientation::CounterClockwise,
    }
}

/// True iff the relative interiors of the two segments intersect in a single
/// point. Segments sharing an endpoint never cross.
pub fn segments_cross(e1: (Point, Point), e2: (Point, Point)) -> bool {
    let (a, b) = e1;
    let (c, d) = e2;
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let o1 = orientation(a, b, c).sign();
    let o2 = orientation(a, b, d).sign();
    let o3 = orientation(c, d, a).sign();
    let o4 = orientation(c, d, b).sign();
    o1 * o2 < 0 && o3 * o4 < 0
}

/// A point set in general position: coordinates within [`COORD_LIMIT`],
/// pairwise distinct, no three collinear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<PointSet, GeometryError> {
        for (index, &point) in points.iter().enumerate() {
            if point.x.abs() > COORD_LIMIT || point.y.abs() > COORD_LIMIT {
                return Err(GeometryError::CoordinateOutOfRange { index, point });
            }
        }
        if let Some((i, j)) = find_duplicate(&points) {
            return Err(GeometryError::DuplicatePoint(i, j));
        }
        if let Some((i, j, k)) = find_collinear_triple(&points) {
            return Err(GeometryError::CollinearTriple(i, j, k));
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn segment(&self, e: Edge) -> (Point, Point) {
        (self.points[e.u], self.points[e.v])
    }

    pub fn edges_cross(&self, e: Edge, f: Edge) -> bool {
        !e.shares_endpoint(&f) && segments_cross(self.segment(e), self.segment(f))
    }

    /// For each edge, how many other edges of the slice it crosses.
    pub fn crossing_counts(&self, edges: &[Edge]) -> Vec<usize> {
        let mut counts = vec![0; edges.len()];
        for a in 0..edges.len() {
            for b in a + 1..edges.len() {
                if self.edges_cross(edges[a], edges[b]) {
                    counts[a] += 1;
                    counts[b] += 1;
                }
            }
        }
        counts
    }

    /// The sub-point-set on `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet {
            points: indices.iter().map(|&i| self.points[i]).collect(),
        }
    }

    /// Convex-position report for a set already known to be in general
    /// position.
    pub fn validate(&self) -> Result<ValidationReport, GeometryError> {
        validate_pointset(&self.points)
    }
}

fn find_duplicate(points: &[Point]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| (points[i], i));
    order
        .windows(2)
        .find(|w| points[w[0]] == points[w[1]])
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
}

fn find_collinear_triple(points: &[Point]) -> Option<(usize, usize, usize)> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orientation(points[i], points[j], points[k]) == Orientation::Collinear {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub general_position: bool,
    pub convex_position: bool,
    /// Clockwise cyclic order of the indices, starting at index 0. Present
    /// only for convex sets.
    pub convex_cyclic_order: Option<Vec<usize>>,
    pub collinear_triple: Option<(usize, usize, usize)>,
}

pub fn validate_pointset(points: &[Point]) -> Result<ValidationReport, GeometryError> {
    if points.len() < 3 {
        return Err(GeometryError::TooFewPoints(points.len()));
    }
    let collinear_triple = find_collinear_triple(points);
    let general_position = collinear_triple.is_none();
    let mut convex_cyclic_order = None;
    if general_position {
        let mut hull = convex_hull_ccw(points);
        if hull.len() == points.len() {
            hull.reverse();
            let start = hull.iter().position(|&i| i == 0).expect("hull contains every index");
            hull.rotate_left(start);
            convex_cyclic_order = Some(hull);
        }
    }
    Ok(ValidationReport {
        general_position,
        convex_position: convex_cyclic_order.is_some(),
        convex_cyclic_order,
        collinear_triple,
    })
}

/// Indices of strict hull vertices in counter-clockwise order (monotone chain).
fn convex_hull_ccw(points: &[Point]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| points[i]);
    order.dedup_by_key(|&mut i| points[i]);
    if order.len() < 3 {
        return order;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * order.len());
    for pass in [order.clone(), order.iter().rev().copied().collect()] {
        let floor = hull.len();
        for &i in &pass {
            while hull.len() >= floor + 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if orientation(points[a], points[b], points[i]) == Orientation::CounterClockwise {
                    break;
                }
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` integer points near a circle of radius 10^6, in convex and general
/// position, whose clockwise order is the index order.
pub fn gen_convex_polygon(n: usize, seed: u64) -> Result<PointSet, GeometryError> {
    if n < 3 {
        return Err(GeometryError::TooFewPoints(n));
    }
    let mut rng = rng_for(seed);
    let identity: Vec<usize> = (0..n).collect();
    let mut reason = String::new();
    for _ in 0..MAX_ATTEMPTS {
        let points: Vec<Point> = (0..n)
            .map(|i| {
                let angle = PI / 2.0 - 2.0 * PI * i as f64 / n as f64;
                Point::new(
                    (CONVEX_RADIUS * angle.cos()).round() as i64 + rng.gen_range(-1..=1),
                    (CONVEX_RADIUS * angle.sin()).round() as i64 + rng.gen_range(-1..=1),
                )
            })
            .collect();
        match PointSet::new(points) {
            Ok(set) => {
                let report = set.validate()?;
                if report.convex_cyclic_order.as_deref() == Some(&identity[..]) {
                    return Ok(set);
                }
                reason = "rounded points were not in clockwise convex position".into();
            }
            Err(e) => reason = e.to_string(),
        }
    }
    Err(GeometryError::GenerationFailed {
        what: "convex polygon",
        attempts: MAX_ATTEMPTS,
        reason,
    })
}

/// `n` points drawn uniformly from `[0, 2^20)^2`, rejecting any point that
/// duplicates or is collinear with earlier points.
pub fn gen_random_pointset(n: usize, seed: u64) -> Result<PointSet, GeometryError> {
    let mut rng = rng_for(seed);
    let mut points: Vec<Point> = Vec::with_capacity(n);
    while points.len() < n {
        let mut placed = false;
        for _ in 0..MAX_ATTEMPTS {
            let p = Point::new(rng.gen_range(0..RANDOM_BOX), rng.gen_range(0..RANDOM_BOX));
            if !is_degenerate_with(&points, p) {
                points.push(p);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(GeometryError::GenerationFailed {
                what: "random point set",
                attempts: MAX_ATTEMPTS,
                reason: format!("no admissible position for point {}", points.len()),
            });
        }
    }
    PointSet::new(points)
}

fn is_degenerate_with(points: &[Point], p: Point) -> bool {
    points.iter().enumerate().any(|(i, &a)| {
        a == p
            || points[i + 1..]
                .iter()
                .any(|&b| orientation(a, b, p) == Orientation::Collinear)
    })
}

/// `2n` points together with `n` pairwise crossing edges covering every
/// point once.
///
/// Edge endpoints are placed at nearly antipodal directions with jittered
/// angles and radii, so the set is generally not in convex position. The
/// point order is shuffled.
pub fn gen_perfect_crossing_family_pointset(
    n: usize,
    seed: u64,
) -> Result<(PointSet, Vec<Edge>), GeometryError> {
    if n == 0 {
        return Err(GeometryError::TooFewPoints(0));
    }
    let mut rng = rng_for(seed);
    let spacing = PI / n as f64;
    let mut reason = String::new();
    for _ in 0..MAX_ATTEMPTS {
        let polar = |angle: f64, rng: &mut ChaCha8Rng| {
            let r = CONVEX_RADIUS * rng.gen_range(0.4..=1.0);
            Point::new((r * angle.cos()).round() as i64, (r * angle.sin()).round() as i64)
        };
        let mut chords = Vec::with_capacity(n);
        for i in 0..n {
            let base = spacing * i as f64;
            let a = base + spacing * rng.gen_range(-0.2..=0.2);
            let b = base + PI + spacing * rng.gen_range(-0.2..=0.2);
            chords.push((polar(a, &mut rng), polar(b, &mut rng)));
        }
        let mut slots: Vec<usize> = (0..2 * n).collect();
        slots.shuffle(&mut rng);
        let mut points = vec![Point::new(0, 0); 2 * n];
        let mut family = Vec::with_capacity(n);
        for (i, &(a, b)) in chords.iter().enumerate() {
            points[slots[2 * i]] = a;
            points[slots[2 * i + 1]] = b;
            family.push(Edge::new(slots[2 * i], slots[2 * i + 1]));
        }
        let set = match PointSet::new(points) {
            Ok(set) => set,
            Err(e) => {
                reason = e.to_string();
                continue;
            }
        };
        let crossing = family
            .iter()
            .enumerate()
            .all(|(i, &e)| family[i + 1..].iter().all(|&f| set.edges_cross(e, f)));
        if crossing {
            family.sort();
            return Ok((set, family));
        }
        reason = "sampled chords were not pairwise crossing".into();
    }
    Err(GeometryError::GenerationFailed {
        what: "perfect crossing family",
        attempts: MAX_ATTEMPTS,
        reason,
    })
}
