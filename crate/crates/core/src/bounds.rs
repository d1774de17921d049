//! Closed-form edge, crossing and color bounds, crossing counts, and an
//! exact brute-force oracle for the densest convex k-plane graph.

use std::fmt;

use thiserror::Error;

use crate::clique::DEFAULT_BUDGET;
use crate::coloring::Edge;
use crate::convex::{
    block_planarity, choose_block_size, convex_edges_cross, slope_partition, verify_k_planar,
};
use crate::geometry::{gen_convex_polygon, PointSet};
use crate::quasi::theorem7_partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("k = {k} is outside the range {range} where this bound is proven")]
    KOutOfRange { k: usize, range: &'static str },
    #[error("crossing lemma needs e >= 9n/2, got n = {n}, e = {e}")]
    CrossingLemmaHypothesis { n: usize, e: usize },
    #[error("bound needs n >= {min}, got {n}")]
    TooFewPoints { n: usize, min: usize },
    #[error("brute-force oracle supports 3 <= n <= {max}, got {n}")]
    OracleSize { n: usize, max: usize },
    #[error("quasi-planar color bounds need 3 <= k and 2m <= n, got n = {n}, m = {m}, k = {k}")]
    QuasiPrecondition { n: usize, m: usize, k: usize },
}

/// A multiple of 1/2, stored exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub fn from_twice(twice: i64) -> HalfInteger {
        HalfInteger { twice }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn floor(self) -> i64 {
        self.twice.div_euclid(2)
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.twice < 0 { "-" } else { "" };
        let abs = self.twice.unsigned_abs();
        if abs.is_multiple_of(2) {
            write!(f, "{sign}{}", abs / 2)
        } else {
            write!(f, "{sign}{}.5", abs / 2)
        }
    }
}

/// Maximum edge count `(k+4)/2 * n - (k+3)` of a convex k-plane graph,
/// `k <= 4`.
pub fn edge_bound_small_k(n: usize, k: usize) -> Result<HalfInteger, BoundsError> {
    if k > 4 {
        return Err(BoundsError::KOutOfRange { k, range: "0..=4" });
    }
    if n < 2 {
        return Err(BoundsError::TooFewPoints { n, min: 2 });
    }
    let (n, k) = (n as i64, k as i64);
    Ok(HalfInteger::from_twice((k + 4) * n - 2 * (k + 3)))
}

/// `sqrt(243k/40) * n`, evaluated in `f64`.
pub fn edge_bound_general(n: usize, k: usize) -> Result<f64, BoundsError> {
    if k < 5 {
        return Err(BoundsError::KOutOfRange { k, range: ">= 5" });
    }
    Ok((243.0 * k as f64 / 40.0).sqrt() * n as f64)
}

/// Crossing pairs among chords of a convex `n`-gon.
pub fn count_convex_crossings(n: usize, edges: &[Edge]) -> u64 {
    let mut count = 0;
    for (i, &e) in edges.iter().enumerate() {
        count += edges[i + 1..]
            .iter()
            .filter(|&&f| convex_edges_cross(n, e, f))
            .count() as u64;
    }
    count
}

/// Crossing pairs among segments over a point set.
pub fn count_crossings(points: &PointSet, edges: &[Edge]) -> u64 {
    let mut count = 0;
    for (i, &e) in edges.iter().enumerate() {
        count += edges[i + 1..]
            .iter()
            .filter(|&&f| points.edges_cross(e, f))
            .count() as u64;
    }
    count
}

fn check_crossing_lemma(n: usize, e: usize) -> Result<(), BoundsError> {
    if n == 0 || 2 * e < 9 * n {
        Err(BoundsError::CrossingLemmaHypothesis { n, e })
    } else {
        Ok(())
    }
}

/// `(20/243) e^3 / n^2`, valid for convex drawings with `e >= 9n/2`.
pub fn crossing_lemma_bound(n: usize, e: usize) -> Result<f64, BoundsError> {
    check_crossing_lemma(n, e)?;
    let (n, e) = (n as f64, e as f64);
    Ok(20.0 * e * e * e / (243.0 * n * n))
}

/// Exact comparison `crossings >= (20/243) e^3 / n^2`.
pub fn crossing_lemma_holds(n: usize, e: usize, crossings: u64) -> Result<bool, BoundsError> {
    check_crossing_lemma(n, e)?;
    let (n, e, cr) = (n as u128, e as u128, crossings as u128);
    Ok(243 * n * n * cr >= 20 * e * e * e)
}

/// `5e - 15n + 25`: crossings forced by peeling a convex graph with at least
/// `4n - 7` edges down to a plane one.
pub fn peeling_bound(n: usize, e: usize) -> i64 {
    5 * e as i64 - 15 * n as i64 + 25
}

/// A k-plane graph has at most `k e / 2` crossings.
pub fn double_counting_holds(k: usize, e: usize, crossings: u64) -> bool {
    2 * crossings <= (k * e) as u64
}

/// Exact maximum of a convex k-plane graph on `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPlaneOracle {
    pub size: usize,
    /// Hull edges plus the chosen diagonals, in cyclic-position labels.
    pub witness: Vec<Edge>,
    pub proven_optimal: bool,
    pub nodes: u64,
}

pub const ORACLE_MAX_N: usize = 12;

/// Largest convex k-plane graph on `n` points, by branch and bound over the
/// diagonals.
///
/// Hull edges cross nothing and are always included. Rotational symmetry
/// is broken by the longest included diagonal: some rotation of any optimum
/// contains `{0, t}` where `t` is the longest diagonal length used, so one
/// search per `t` with `{0, t}` forced and longer diagonals excluded covers
/// every optimum up to rotation.
pub fn max_k_plane_subgraph(n: usize, k: usize, budget: u64) -> Result<KPlaneOracle, BoundsError> {
    if !(3..=ORACLE_MAX_N).contains(&n) {
        return Err(BoundsError::OracleSize { n, max: ORACLE_MAX_N });
    }
    let length = |e: Edge| (e.v - e.u).min(n - (e.v - e.u));
    let diagonals: Vec<Edge> = Edge::all(n).filter(|&e| length(e) >= 2).collect();
    let crosses: Vec<u64> = diagonals
        .iter()
        .map(|&d| {
            diagonals
                .iter()
                .enumerate()
                .filter(|&(_, &f)| convex_edges_cross(n, d, f))
                .fold(0u64, |mask, (j, _)| mask | 1 << j)
        })
        .collect();

    let mut search = DiagonalSearch {
        k,
        crosses: &crosses,
        counts: vec![0; diagonals.len()],
        order: Vec::new(),
        best: 0,
        best_mask: 0,
        nodes: 0,
        budget,
        aborted: false,
    };
    for t in (2..=n / 2).rev() {
        let forced = diagonals.iter().position(|&d| d == Edge::new(0, t)).expect("{0,t} is a diagonal");
        let mut order: Vec<usize> = (0..diagonals.len())
            .filter(|&j| j != forced && length(diagonals[j]) <= t)
            .collect();
        order.sort_by_key(|&j| (length(diagonals[j]), j));
        search.order = order;
        // A single diagonal always respects k.
        search.include(forced);
        search.dfs(0, 1 << forced, 1);
        search.exclude(forced);
        if search.aborted {
            break;
        }
    }

    let mut witness: Vec<Edge> = (0..n).map(|i| Edge::new(i, (i + 1) % n)).collect();
    witness.extend(
        diagonals
            .iter()
            .enumerate()
            .filter(|&(j, _)| search.best_mask >> j & 1 == 1)
            .map(|(_, &d)| d),
    );
    witness.sort();
    assert!(
        verify_k_planar(n, &witness, k).is_ok(),
        "oracle witness must be k-plane"
    );
    Ok(KPlaneOracle {
        size: witness.len(),
        witness,
        proven_optimal: !search.aborted,
        nodes: search.nodes,
    })
}

struct DiagonalSearch<'a> {
    k: usize,
    crosses: &'a [u64],
    /// For each diagonal, how many included diagonals cross it.
    counts: Vec<usize>,
    order: Vec<usize>,
    best: usize,
    best_mask: u64,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl DiagonalSearch<'_> {
    fn include(&mut self, d: usize) {
        let mut mask = self.crosses[d];
        while mask != 0 {
            self.counts[mask.trailing_zeros() as usize] += 1;
            mask &= mask - 1;
        }
    }

    fn exclude(&mut self, d: usize) {
        let mut mask = self.crosses[d];
        while mask != 0 {
            self.counts[mask.trailing_zeros() as usize] -= 1;
            mask &= mask - 1;
        }
    }

    fn can_include(&self, d: usize, included: u64) -> bool {
        if self.counts[d] > self.k {
            return false;
        }
        let mut mask = self.crosses[d] & included;
        while mask != 0 {
            if self.counts[mask.trailing_zeros() as usize] >= self.k {
                return false;
            }
            mask &= mask - 1;
        }
        true
    }

    fn dfs(&mut self, depth: usize, included: u64, size: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if size > self.best {
            self.best = size;
            self.best_mask = included;
        }
        if depth == self.order.len() {
            return;
        }
        let open = self.order[depth..]
            .iter()
            .filter(|&&j| self.counts[j] <= self.k)
            .count();
        if size + open <= self.best {
            return;
        }
        let d = self.order[depth];
        if self.can_include(d, included) {
            self.include(d);
            self.dfs(depth + 1, included | 1 << d, size + 1);
            self.exclude(d);
            if self.aborted {
                return;
            }
        }
        self.dfs(depth + 1, included, size);
    }
}

/// Lower and upper bound on the number of classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColorBounds {
    pub lower: usize,
    pub upper: usize,
}

/// Color bounds for k-planar partitions of a convex `K_n`.
///
/// `lower` is the least integer at least `(n-1) / (2 sqrt(243k/40))`,
/// computed exactly as the least `L` with `243 k L^2 >= 10 (n-1)^2`;
/// `upper` is `ceil(n / s)` for the slope partition with block size
/// [`choose_block_size`]`(k)`.
pub fn kplanar_color_bounds(n: usize, k: usize) -> Result<ColorBounds, BoundsError> {
    if n < 3 {
        return Err(BoundsError::TooFewPoints { n, min: 3 });
    }
    if k < 1 {
        return Err(BoundsError::KOutOfRange { k, range: ">= 1" });
    }
    let target = 10 * (n as u128 - 1).pow(2);
    let mut lower = 0u128;
    while 243 * k as u128 * lower * lower < target {
        lower += 1;
    }
    Ok(ColorBounds {
        lower: lower as usize,
        upper: n.div_ceil(choose_block_size(k)),
    })
}

/// `ceil(n(n-3) / (3n-8))` colors are needed in any 1-planar partition of a
/// convex `K_n`; this equals `ceil(n/3)`.
pub fn one_planar_lower_bound(n: usize) -> Result<usize, BoundsError> {
    if n < 5 {
        return Err(BoundsError::TooFewPoints { n, min: 5 });
    }
    Ok((n * (n - 3)).div_ceil(3 * n - 8))
}

/// Color bounds for k-quasi-planar partitions of `K(P)`, `|P| = n`, with a
/// largest crossing family of size `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiColorBounds {
    pub lower: usize,
    pub upper: usize,
    pub note: Option<&'static str>,
}

pub fn quasi_color_bounds(n: usize, m: usize, k: usize) -> Result<QuasiColorBounds, BoundsError> {
    if k < 3 || 2 * m > n {
        return Err(BoundsError::QuasiPrecondition { n, m, k });
    }
    if k > m {
        return Ok(QuasiColorBounds {
            lower: 1,
            upper: 1,
            note: Some("k exceeds the largest crossing family; one class suffices"),
        });
    }
    let lower = m.div_ceil(k - 1);
    Ok(QuasiColorBounds {
        lower,
        upper: lower + (n - 2 * m).div_ceil(k - 1),
        note: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundValue {
    Exact(HalfInteger),
    Real(f64),
    Count(i64),
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(h) => write!(f, "{h}"),
            BoundValue::Real(r) => write!(f, "{r:.4}"),
            BoundValue::Count(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// The observed value must not exceed the formula.
    AtMost,
    /// The observed value must reach the formula.
    AtLeast,
}

/// One bound evaluated on one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub instance: String,
    pub formula_value: BoundValue,
    pub direction: Direction,
    pub observed_value: i64,
    pub satisfied: bool,
}

impl BoundReport {
    fn new(
        name: &'static str,
        instance: String,
        formula_value: BoundValue,
        direction: Direction,
        observed_value: i64,
    ) -> BoundReport {
        let satisfied = match (formula_value, direction) {
            (BoundValue::Exact(h), Direction::AtMost) => observed_value <= h.floor(),
            (BoundValue::Exact(h), Direction::AtLeast) => 2 * observed_value >= h.twice(),
            (BoundValue::Real(r), Direction::AtMost) => observed_value as f64 <= r,
            (BoundValue::Real(r), Direction::AtLeast) => observed_value as f64 >= r,
            (BoundValue::Count(c), Direction::AtMost) => observed_value <= c,
            (BoundValue::Count(c), Direction::AtLeast) => observed_value >= c,
        };
        BoundReport {
            name,
            instance,
            formula_value,
            direction,
            observed_value,
            satisfied,
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.direction {
            Direction::AtMost => "<=",
            Direction::AtLeast => ">=",
        };
        write!(
            f,
            "{:<24} {:<40} observed {:>8} {rel} {:>12}  {}",
            self.name,
            self.instance,
            self.observed_value,
            self.formula_value.to_string(),
            if self.satisfied { "ok" } else { "VIOLATED" }
        )
    }
}

/// Largest convex n-gon size on which [`bound_reports`] runs the exact
/// k-plane oracle.
const REPORT_ORACLE_MAX_N: usize = 8;
/// Largest point count on which [`bound_reports`] runs the combined
/// quasi-planar partition.
const REPORT_QUASI_MAX_N: usize = 14;

/// Every bound that applies to a convex `K_n` and a given `k`, checked
/// against constructions and oracles.
pub fn bound_reports(n: usize, k: usize, budget: u64) -> Result<Vec<BoundReport>, BoundsError> {
    if n < 3 {
        return Err(BoundsError::TooFewPoints { n, min: 3 });
    }
    let mut reports = Vec::new();
    let all: Vec<Edge> = Edge::all(n).collect();
    let e = all.len();

    // Densest k-plane graph: exact for small n, otherwise the largest class
    // of a k-planar slope partition (still a convex k-plane graph).
    let (observed, source) = if n <= REPORT_ORACLE_MAX_N {
        let oracle = max_k_plane_subgraph(n, k, budget.max(DEFAULT_BUDGET))?;
        (oracle.size, "max k-plane subgraph")
    } else {
        let s = choose_block_size(k).min(n);
        let largest = if block_planarity(s) <= k {
            slope_partition(n, s).classes().iter().map(Vec::len).max().unwrap_or(0)
        } else {
            n
        };
        (largest, "largest slope class")
    };
    let instance = format!("convex n={n} k={k} ({source})");
    if k <= 4 {
        reports.push(BoundReport::new(
            "edge bound k<=4",
            instance,
            BoundValue::Exact(edge_bound_small_k(n, k)?),
            Direction::AtMost,
            observed as i64,
        ));
    } else {
        reports.push(BoundReport::new(
            "edge bound k>=5",
            instance,
            BoundValue::Real(edge_bound_general(n, k)?),
            Direction::AtMost,
            observed as i64,
        ));
    }

    let crossings = count_convex_crossings(n, &all) as i64;
    if 2 * e >= 9 * n {
        reports.push(BoundReport::new(
            "convex crossing lemma",
            format!("convex K_{n}, e={e}"),
            BoundValue::Real(crossing_lemma_bound(n, e)?),
            Direction::AtLeast,
            crossings,
        ));
    }
    if e + 7 >= 4 * n {
        reports.push(BoundReport::new(
            "peeling bound",
            format!("convex K_{n}, e={e}"),
            BoundValue::Count(peeling_bound(n, e)),
            Direction::AtLeast,
            crossings,
        ));
    }

    if k >= 1 {
        let bounds = kplanar_color_bounds(n, k)?;
        let s = choose_block_size(k);
        let used = slope_partition(n, s).num_colors() as i64;
        reports.push(BoundReport::new(
            "k-planar colors lower",
            format!("slope partition n={n} s={s}"),
            BoundValue::Count(bounds.lower as i64),
            Direction::AtLeast,
            used,
        ));
        reports.push(BoundReport::new(
            "k-planar colors upper",
            format!("slope partition n={n} s={s}"),
            BoundValue::Count(bounds.upper as i64),
            Direction::AtMost,
            used,
        ));
        if k == 1 && n >= 5 {
            reports.push(BoundReport::new(
                "1-planar colors lower",
                format!("slope partition n={n} s=3"),
                BoundValue::Count(one_planar_lower_bound(n)? as i64),
                Direction::AtLeast,
                used,
            ));
        }
    }

    if k >= 3 && n <= REPORT_QUASI_MAX_N {
        let points = gen_convex_polygon(n, 0).expect("small convex polygons always generate");
        if let Ok(partition) = theorem7_partition(&points, k, budget) {
            let m = partition.m();
            let bounds = quasi_color_bounds(n, m, k)?;
            let instance = format!("convex n={n} m={m} k={k}");
            reports.push(BoundReport::new(
                "quasi colors upper",
                instance.clone(),
                BoundValue::Count(bounds.upper as i64),
                Direction::AtMost,
                partition.colors_used as i64,
            ));
            reports.push(BoundReport::new(
                "quasi colors lower",
                instance,
                BoundValue::Count(bounds.lower as i64),
                Direction::AtLeast,
                partition.colors_used as i64,
            ));
        }
    }
    Ok(reports)
}
