//! Combinatorial machinery for point sets in convex position.
//!
//! Vertices are identified with their positions `0..n` in the cyclic order
//! of the hull. Two chords cross iff their endpoints interleave, so nothing
//! here needs coordinates. Slopes are those of the corresponding chords of a
//! regular `n`-gon: `{i, j}` and `{k, l}` are parallel iff
//! `i + j ≡ k + l (mod n)`.

use crate::coloring::{Coloring, Edge};

/// An edge between cyclic positions `i = u < j = v` of a convex polygon.
pub type ConvexEdge = Edge;

/// One of the `n` chord directions of a regular `n`-gon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlopeClass(pub usize);

pub fn slope_class(n: usize, e: ConvexEdge) -> SlopeClass {
    debug_assert!(e.v < n);
    SlopeClass((e.u + e.v) % n)
}

/// True iff the chords share no endpoint and exactly one endpoint of `f`
/// lies strictly between the endpoints of `e`.
pub fn convex_edges_cross(n: usize, e: ConvexEdge, f: ConvexEdge) -> bool {
    debug_assert!(e.v < n && f.v < n);
    if e.shares_endpoint(&f) {
        return false;
    }
    let inside = |x: usize| e.u < x && x < e.v;
    inside(f.u) != inside(f.v)
}

/// Colors edge `e` with `slope(e) / s`: consecutive runs of `s` slopes
/// starting at slope 0 form the classes, the last run may be shorter.
pub fn slope_partition(n: usize, s: usize) -> Coloring {
    assert!(s >= 1, "block size must be positive");
    let colors = n.div_ceil(s) as u32;
    Coloring::from_fn(n, colors, |e| (slope_class(n, e).0 / s) as u32)
        .expect("slope colors are below ceil(n/s)")
}

/// 1-based position of the slope of `e` inside its block of size `s`.
pub fn interval_offset(n: usize, s: usize, e: ConvexEdge) -> usize {
    slope_class(n, e).0 % s + 1
}

/// Largest number of same-class edges crossed by one edge of a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassCrossings {
    pub max_per_edge: usize,
    pub witness: Edge,
}

/// Per-edge crossing counts inside `edges`.
pub fn crossing_counts(n: usize, edges: &[ConvexEdge]) -> Vec<usize> {
    let mut counts = vec![0; edges.len()];
    for a in 0..edges.len() {
        for b in a + 1..edges.len() {
            if convex_edges_cross(n, edges[a], edges[b]) {
                counts[a] += 1;
                counts[b] += 1;
            }
        }
    }
    counts
}

/// `None` if the class is empty.
pub fn max_crossings_in_class(n: usize, coloring: &Coloring, color: u32) -> Option<ClassCrossings> {
    let class = coloring.class(color);
    let counts = crossing_counts(n, &class);
    // First edge attaining the maximum, for a stable witness.
    let best = counts
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, usize)>, (i, &c)| match best {
            Some((_, b)) if b >= c => best,
            _ => Some((i, c)),
        })?;
    Some(ClassCrossings {
        max_per_edge: best.1,
        witness: class[best.0],
    })
}

/// An edge crossed by more than `k` others.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KPlanarViolation {
    pub edge: Edge,
    pub crossings: usize,
}

pub fn verify_k_planar(n: usize, edges: &[ConvexEdge], k: usize) -> Result<(), KPlanarViolation> {
    check_crossing_counts(edges, &crossing_counts(n, edges), k)
}

pub fn check_crossing_counts(edges: &[Edge], counts: &[usize], k: usize) -> Result<(), KPlanarViolation> {
    match counts.iter().position(|&c| c > k) {
        Some(i) => Err(KPlanarViolation {
            edge: edges[i],
            crossings: counts[i],
        }),
        None => Ok(()),
    }
}

/// Local crossing number guaranteed for slope blocks of size `s`.
pub fn block_planarity(s: usize) -> usize {
    s.saturating_sub(1) * s.saturating_sub(2) / 2
}

/// Largest `s >= 3` with `(s-1)(s-2)/2 <= k`; 3 when `k < 1`.
pub fn choose_block_size(k: usize) -> usize {
    let mut s = 3;
    while block_planarity(s + 1) <= k {
        s += 1;
    }
    s
}

/// Relabels a coloring of cyclic positions to point indices, where
/// `cyclic_order[pos]` is the index of the point at position `pos`.
pub fn relabel(coloring: &Coloring, cyclic_order: &[usize]) -> Coloring {
    let n = coloring.n();
    assert_eq!(cyclic_order.len(), n);
    let mut out = Coloring::uncolored(n, coloring.num_colors());
    for (e, c) in coloring.iter() {
        if let Some(c) = c {
            out.assign(Edge::new(cyclic_order[e.u], cyclic_order[e.v]), c)
                .expect("relabeling a permutation keeps edges distinct");
        }
    }
    out
}
