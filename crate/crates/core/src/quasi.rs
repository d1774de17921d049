//! Crossing families and k-quasi-planar partitions of `K(P)` for point sets
//! in general position.
//!
//! Three constructions live here: the double-star spanning trees for even
//! point counts, the halving-line partition for sets whose edges contain a
//! perfect crossing family, and the combined partition for arbitrary sets
//! that colors a maximum crossing family's endpoints with the halving-line
//! partition and the remaining points as unions of stars.

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::clique::BitGraph;
use crate::coloring::{Coloring, Edge};
use crate::geometry::{orientation, Orientation, Point, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuasiError {
    #[error("double-star partition needs an even number of at least 2 points, got {0}")]
    OddPointCount(usize),
    #[error("k must be at least {min}, got {k}")]
    KTooSmall { k: usize, min: usize },
    #[error("crossing family is not perfect: {0}")]
    NotPerfect(String),
    #[error("family edges {0} and {1} do not cross")]
    FamilyNotCrossing(Edge, Edge),
    #[error("crossing family search stopped after {nodes} nodes with size {best} not proven maximum")]
    NotProvenOptimal { best: usize, nodes: u64 },
    #[error("edge {0} is not covered by any halving-line class")]
    Uncovered(Edge),
}

/// The crossing relation on the edges of `K(P)` (or of an edge subset).
#[derive(Clone, Debug)]
pub struct CrossingGraph {
    points: PointSet,
    edges: Vec<Edge>,
    graph: BitGraph,
}

impl CrossingGraph {
    /// Crossing graph of an arbitrary edge set over `points`.
    pub fn for_edges(points: &PointSet, edges: &[Edge]) -> CrossingGraph {
        let mut graph = BitGraph::new(edges.len());
        for a in 0..edges.len() {
            for b in a + 1..edges.len() {
                if points.edges_cross(edges[a], edges[b]) {
                    graph.add_edge(a, b);
                }
            }
        }
        CrossingGraph {
            points: points.clone(),
            edges: edges.to_vec(),
            graph,
        }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// Whether the `a`-th and `b`-th edges cross.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.graph.has_edge(a, b)
    }

    pub fn crossing_pairs(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn graph(&self) -> &BitGraph {
        &self.graph
    }
}

pub fn build_crossing_graph(points: &PointSet) -> CrossingGraph {
    let edges: Vec<Edge> = Edge::all(points.len()).collect();
    CrossingGraph::for_edges(points, &edges)
}

/// A set of pairwise crossing edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingFamily {
    pub edges: Vec<Edge>,
    /// Whether the family is certified to be a largest one. Families built
    /// from external input carry `false`.
    pub proven_optimal: bool,
}

impl CrossingFamily {
    pub fn new(mut edges: Vec<Edge>) -> CrossingFamily {
        edges.sort();
        CrossingFamily {
            edges,
            proven_optimal: false,
        }
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// First non-crossing pair, if any.
    pub fn check_pairwise_crossing(&self, points: &PointSet) -> Result<(), QuasiError> {
        for (i, &e) in self.edges.iter().enumerate() {
            for &f in &self.edges[i + 1..] {
                if !points.edges_cross(e, f) {
                    return Err(QuasiError::FamilyNotCrossing(e, f));
                }
            }
        }
        Ok(())
    }
}

/// Largest crossing family, found as a maximum clique of the crossing graph.
/// The returned family is re-checked against the exact predicate.
pub fn max_crossing_family(graph: &CrossingGraph, budget: u64) -> CrossingFamily {
    let result = graph.graph.max_clique(budget);
    let family = CrossingFamily {
        edges: result.vertices.iter().map(|&i| graph.edges[i]).collect(),
        proven_optimal: result.proven_optimal,
    };
    assert!(
        family.check_pairwise_crossing(&graph.points).is_ok(),
        "clique search returned a non-crossing family"
    );
    family
}

/// `Ok` iff no `k` edges of `edges` pairwise cross; otherwise returns `k`
/// pairwise crossing edges.
pub fn is_k_quasi_planar(points: &PointSet, edges: &[Edge], k: usize) -> Result<(), Vec<Edge>> {
    assert!(k >= 2, "k-quasi-planarity needs k >= 2");
    let graph = CrossingGraph::for_edges(points, edges);
    match graph.graph.find_clique_of_size(k) {
        Some(clique) => Err(clique.iter().map(|&i| edges[i]).collect()),
        None => Ok(()),
    }
}

/// `n` edge-disjoint spanning trees of `K(P)` for `|P| = 2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub point_count: usize,
    pub trees: Vec<Vec<Edge>>,
}

impl TreeDecomposition {
    /// Tree `i` becomes color `i`. Fails if two trees share an edge.
    pub fn to_coloring(&self) -> Result<Coloring, crate::ColoringError> {
        let mut coloring = Coloring::uncolored(self.point_count, self.trees.len() as u32);
        for (color, tree) in self.trees.iter().enumerate() {
            for &e in tree {
                coloring.assign(e, color as u32)?;
            }
        }
        Ok(coloring)
    }
}

/// Double stars on consecutive pairs of the points sorted by `(x, y)`.
///
/// With sorted points `p_1..p_2n`, tree `T_i` joins `p_{2i-1}` to the even
/// points before it and the odd points after it, and `p_{2i}` to the odd
/// points up to `p_{2i-1}` and the even points after it.
pub fn double_star_partition(points: &PointSet) -> Result<TreeDecomposition, QuasiError> {
    let count = points.len();
    if count < 2 || count % 2 == 1 {
        return Err(QuasiError::OddPointCount(count));
    }
    let mut sorted: Vec<usize> = (0..count).collect();
    sorted.sort_by_key(|&i| points.point(i));
    // 1-based labels as in the usual statement: p(l) for l in 1..=2n.
    let p = |label: usize| sorted[label - 1];
    let n = count / 2;
    let trees = (1..=n)
        .map(|i| {
            let (odd, even) = (p(2 * i - 1), p(2 * i));
            let mut tree = Vec::with_capacity(count - 1);
            tree.extend((1..i).map(|j| Edge::new(odd, p(2 * j))));
            tree.extend((i + 1..=n).map(|j| Edge::new(odd, p(2 * j - 1))));
            tree.extend((1..=i).map(|j| Edge::new(even, p(2 * j - 1))));
            tree.extend((i + 1..=n).map(|j| Edge::new(even, p(2 * j))));
            tree.sort();
            tree
        })
        .collect();
    Ok(TreeDecomposition {
        point_count: count,
        trees,
    })
}

/// True iff `edges` has `n - 1` edges and connects all `n` vertices.
pub fn verify_spanning_tree(n: usize, edges: &[Edge]) -> bool {
    if n == 0 || edges.len() != n - 1 || edges.iter().any(|e| e.v >= n) {
        return false;
    }
    let mut components = UnionFind::<usize>::new(n);
    edges.iter().all(|e| components.union(e.u, e.v))
}

/// True iff the coloring is over `K(P)` and colors each edge exactly once.
pub fn verify_partition(points: &PointSet, coloring: &Coloring) -> bool {
    coloring.n() == points.len() && coloring.is_total()
}

/// One supporting line of a perfect crossing family.
///
/// The edge is directed from `rear` to `forward` so that its direction
/// angle lies in `[0, pi)`. `left_side` holds the points strictly left of
/// the directed line plus `forward`, `right_side` the points strictly right
/// plus `rear`: this is the split produced by rotating the line slightly
/// clockwise about the segment midpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalvingLine {
    pub edge: Edge,
    pub forward: usize,
    pub rear: usize,
    pub left_side: Vec<usize>,
    pub right_side: Vec<usize>,
}

impl HalvingLine {
    pub fn is_left(&self, v: usize) -> bool {
        self.left_side.binary_search(&v).is_ok()
    }
}

/// Halving lines ordered by direction angle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalvingLineSystem {
    pub lines: Vec<HalvingLine>,
}

fn direction(points: &PointSet, from: usize, to: usize) -> (i64, i64) {
    let (a, b) = (points.point(from), points.point(to));
    (b.x - a.x, b.y - a.y)
}

fn in_upper_half(d: (i64, i64)) -> bool {
    d.1 > 0 || (d.1 == 0 && d.0 > 0)
}

/// Checks that `family` covers each point exactly once and pairwise crosses.
pub fn check_perfect(points: &PointSet, family: &CrossingFamily) -> Result<(), QuasiError> {
    if points.len() != 2 * family.size() {
        return Err(QuasiError::NotPerfect(format!(
            "{} edges on {} points",
            family.size(),
            points.len()
        )));
    }
    let mut seen = vec![false; points.len()];
    for e in &family.edges {
        for v in [e.u, e.v] {
            if v >= points.len() {
                return Err(QuasiError::NotPerfect(format!("edge {e} leaves the point set")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(QuasiError::NotPerfect(format!("point {v} is covered twice")));
            }
        }
    }
    family.check_pairwise_crossing(points)
}

pub fn halving_line_system(
    points: &PointSet,
    family: &CrossingFamily,
) -> Result<HalvingLineSystem, QuasiError> {
    check_perfect(points, family)?;
    let n = family.size();
    let mut lines: Vec<HalvingLine> = family
        .edges
        .iter()
        .map(|&e| {
            let (rear, forward) = if in_upper_half(direction(points, e.u, e.v)) {
                (e.u, e.v)
            } else {
                (e.v, e.u)
            };
            let (q, p): (Point, Point) = (points.point(rear), points.point(forward));
            let mut left_side = vec![forward];
            let mut right_side = vec![rear];
            for v in (0..points.len()).filter(|&v| !e.contains(v)) {
                match orientation(q, p, points.point(v)) {
                    Orientation::CounterClockwise => left_side.push(v),
                    Orientation::Clockwise => right_side.push(v),
                    Orientation::Collinear => unreachable!("general position"),
                }
            }
            left_side.sort_unstable();
            right_side.sort_unstable();
            HalvingLine {
                edge: e,
                forward,
                rear,
                left_side,
                right_side,
            }
        })
        .collect();
    lines.sort_by(|a, b| {
        let da = direction(points, a.rear, a.forward);
        let db = direction(points, b.rear, b.forward);
        let cross = da.0 as i128 * db.1 as i128 - da.1 as i128 * db.0 as i128;
        0.cmp(&cross)
    });
    for line in &lines {
        if line.left_side.len() != n || line.right_side.len() != n {
            return Err(QuasiError::NotPerfect(format!(
                "line through {} splits the points {}/{}",
                line.edge,
                line.left_side.len(),
                line.right_side.len()
            )));
        }
    }
    Ok(HalvingLineSystem { lines })
}

/// Partition of `K(P)` into `ceil(n / (k-1))` k-quasi-planar classes for a
/// set of `2n` points with a perfect crossing family.
///
/// Lines are taken in groups of `k - 1`. Class `l` is the complete graph on
/// the group's endpoints `X_l` plus, on each side of the group's first
/// line, the complete bipartite graph between `X_l` and the other points on
/// that side. An edge covered by several classes gets the lowest one.
pub fn halving_line_partition(
    points: &PointSet,
    family: &CrossingFamily,
    k: usize,
) -> Result<Coloring, QuasiError> {
    if k < 3 {
        return Err(QuasiError::KTooSmall { k, min: 3 });
    }
    let system = halving_line_system(points, family)?;
    let n = system.lines.len();
    let group_size = k - 1;
    let colors = n.div_ceil(group_size);
    let mut group_of = vec![0; points.len()];
    for (i, line) in system.lines.iter().enumerate() {
        group_of[line.edge.u] = i / group_size;
        group_of[line.edge.v] = i / group_size;
    }
    let covers = |group: usize, e: Edge| {
        let (in_u, in_v) = (group_of[e.u] == group, group_of[e.v] == group);
        if in_u && in_v {
            return true;
        }
        let first = &system.lines[group * group_size];
        in_u != in_v && first.is_left(e.u) == first.is_left(e.v)
    };
    let mut coloring = Coloring::uncolored(points.len(), colors as u32);
    for e in Edge::all(points.len()) {
        let group = (0..colors).find(|&g| covers(g, e)).ok_or(QuasiError::Uncovered(e))?;
        coloring
            .assign(e, group as u32)
            .expect("each edge is assigned once");
    }
    Ok(coloring)
}

/// Output of [`theorem7_partition`].
#[derive(Clone, Debug)]
pub struct CombinedPartition {
    pub coloring: Coloring,
    /// A certified largest crossing family.
    pub family: CrossingFamily,
    pub colors_used: usize,
    /// Set when `k` exceeds the largest crossing family and a single class
    /// suffices.
    pub note: Option<String>,
}

impl CombinedPartition {
    pub fn m(&self) -> usize {
        self.family.size()
    }
}

/// k-quasi-planar partition of an arbitrary `K(P)` with at most
/// `ceil(m/(k-1)) + ceil((|P| - 2m)/(k-1))` classes, where `m` is the size
/// of a largest crossing family.
///
/// The family's endpoints are colored by [`halving_line_partition`]; the
/// remaining points are split by index into groups of `k - 1`, and an edge
/// touching a remaining point takes the color of the lowest group it
/// touches, so each such class is a union of at most `k - 1` stars.
pub fn theorem7_partition(
    points: &PointSet,
    k: usize,
    budget: u64,
) -> Result<CombinedPartition, QuasiError> {
    if k < 3 {
        return Err(QuasiError::KTooSmall { k, min: 3 });
    }
    let graph = build_crossing_graph(points);
    let family = max_crossing_family(&graph, budget);
    if !family.proven_optimal {
        return Err(QuasiError::NotProvenOptimal {
            best: family.size(),
            nodes: budget,
        });
    }
    let m = family.size();
    if k > m {
        let coloring = Coloring::from_fn(points.len(), 1, |_| 0).expect("single color");
        return Ok(CombinedPartition {
            colors_used: 1,
            coloring,
            family,
            note: Some(format!(
                "k = {k} exceeds the largest crossing family m = {m}; one class suffices"
            )),
        });
    }

    // Family endpoints in index order, and their positions in the subset.
    let mut inner: Vec<usize> = family.edges.iter().flat_map(|e| [e.u, e.v]).collect();
    inner.sort_unstable();
    let mut local = vec![usize::MAX; points.len()];
    for (i, &v) in inner.iter().enumerate() {
        local[v] = i;
    }
    let sub = points.subset(&inner);
    let sub_family = CrossingFamily::new(
        family
            .edges
            .iter()
            .map(|e| Edge::new(local[e.u], local[e.v]))
            .collect(),
    );
    let inner_coloring = halving_line_partition(&sub, &sub_family, k)?;

    let outer: Vec<usize> = (0..points.len()).filter(|&v| local[v] == usize::MAX).collect();
    let group_size = k - 1;
    let inner_colors = m.div_ceil(group_size);
    let colors = inner_colors + outer.len().div_ceil(group_size);
    let mut outer_group = vec![usize::MAX; points.len()];
    for (i, &v) in outer.iter().enumerate() {
        outer_group[v] = i / group_size;
    }

    let mut coloring = Coloring::uncolored(points.len(), colors as u32);
    for e in Edge::all(points.len()) {
        let color = match outer_group[e.u].min(outer_group[e.v]) {
            usize::MAX => inner_coloring
                .color(Edge::new(local[e.u], local[e.v]))
                .expect("inner coloring is total"),
            group => (inner_colors + group) as u32,
        };
        coloring.assign(e, color).expect("each edge is assigned once");
    }
    Ok(CombinedPartition {
        colors_used: coloring.used_colors(),
        coloring,
        family,
        note: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{gen_convex_polygon, gen_perfect_crossing_family_pointset, gen_random_pointset};

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b)
    }

    #[test]
    fn crossing_graph_examples() {
        let tri = gen_convex_polygon(3, 0).unwrap();
        let g = build_crossing_graph(&tri);
        assert_eq!((g.edges().len(), g.crossing_pairs()), (3, 0));
        for n in 4..=10 {
            let g = build_crossing_graph(&gen_convex_polygon(n, 2).unwrap());
            let c4 = n * (n - 1) * (n - 2) * (n - 3) / 24;
            assert_eq!(g.crossing_pairs(), c4);
        }
        let g = build_crossing_graph(&gen_convex_polygon(4, 2).unwrap());
        let diagonals = (
            g.edges().iter().position(|&x| x == e(0, 2)).unwrap(),
            g.edges().iter().position(|&x| x == e(1, 3)).unwrap(),
        );
        assert!(g.adjacent(diagonals.0, diagonals.1));
    }

    #[test]
    fn convex_crossing_families() {
        let k6 = build_crossing_graph(&gen_convex_polygon(6, 0).unwrap());
        let family = max_crossing_family(&k6, 1000);
        assert!(family.proven_optimal);
        assert_eq!(family.edges, vec![e(0, 3), e(1, 4), e(2, 5)]);
        let k5 = build_crossing_graph(&gen_convex_polygon(5, 0).unwrap());
        assert_eq!(max_crossing_family(&k5, 1000).size(), 2);
    }

    #[test]
    fn generated_family_is_found() {
        let (set, _) = gen_perfect_crossing_family_pointset(4, 11).unwrap();
        let family = max_crossing_family(&build_crossing_graph(&set), 1_000_000);
        assert!(family.proven_optimal);
        assert!(family.size() >= 4);
    }

    #[test]
    fn quasi_planarity_examples() {
        let hexagon = gen_convex_polygon(6, 0).unwrap();
        let all: Vec<Edge> = Edge::all(6).collect();
        let witness = is_k_quasi_planar(&hexagon, &all, 3).unwrap_err();
        assert_eq!(witness, vec![e(0, 3), e(1, 4), e(2, 5)]);
        assert!(is_k_quasi_planar(&hexagon, &all, 4).is_ok());
        let star: Vec<Edge> = (1..6).map(|v| e(0, v)).collect();
        assert!(is_k_quasi_planar(&hexagon, &star, 2).is_ok());
    }

    #[test]
    fn double_star_four_points() {
        // Already sorted by x.
        let set = PointSet::new(vec![
            Point::new(0, 0),
            Point::new(1, 5),
            Point::new(2, 1),
            Point::new(3, 7),
        ])
        .unwrap();
        let d = double_star_partition(&set).unwrap();
        assert_eq!(d.trees, vec![vec![e(0, 1), e(0, 2), e(1, 3)], vec![e(0, 3), e(1, 2), e(2, 3)]]);
        assert!(verify_partition(&set, &d.to_coloring().unwrap()));
    }

    #[test]
    fn double_star_sorts_by_x_then_y() {
        let set = PointSet::new(vec![Point::new(5, 0), Point::new(0, 1), Point::new(0, 0), Point::new(9, 4)])
            .unwrap();
        let d = double_star_partition(&set).unwrap();
        // Sorted labels: p1 = 2, p2 = 1, p3 = 0, p4 = 3.
        assert_eq!(d.trees[0], vec![e(0, 2), e(1, 2), e(1, 3)]);
    }

    #[test]
    fn double_star_edge_cases() {
        let two = PointSet::new(vec![Point::new(0, 0), Point::new(1, 1)]).unwrap();
        assert_eq!(double_star_partition(&two).unwrap().trees, vec![vec![e(0, 1)]]);
        let three = gen_random_pointset(3, 0).unwrap();
        assert_eq!(double_star_partition(&three), Err(QuasiError::OddPointCount(3)));
        let set = gen_random_pointset(16, 4).unwrap();
        for tree in double_star_partition(&set).unwrap().trees {
            assert!(verify_spanning_tree(16, &tree));
            assert!(is_k_quasi_planar(&set, &tree, 3).is_ok());
        }
    }

    #[test]
    fn spanning_tree_examples() {
        assert!(verify_spanning_tree(3, &[e(0, 1), e(1, 2)]));
        assert!(!verify_spanning_tree(4, &[e(0, 1), e(2, 3)]));
        assert!(!verify_spanning_tree(4, &[e(0, 1), e(1, 2), e(0, 2)]));
        assert!(!verify_spanning_tree(3, &[e(0, 1)]));
        let set = gen_random_pointset(10, 1).unwrap();
        for tree in double_star_partition(&set).unwrap().trees {
            assert!(verify_spanning_tree(10, &tree));
        }
    }

    #[test]
    fn partition_check_detects_missing_edge() {
        let set = gen_convex_polygon(6, 0).unwrap();
        let mut c = crate::convex::slope_partition(6, 3);
        assert!(verify_partition(&set, &c));
        c.unassign(e(0, 5));
        assert!(!verify_partition(&set, &c));
    }

    #[test]
    fn halving_lines_split_evenly() {
        let (set, family) = gen_perfect_crossing_family_pointset(1, 0).unwrap();
        let sys = halving_line_system(&set, &CrossingFamily::new(family)).unwrap();
        assert_eq!(sys.lines.len(), 1);
        assert_eq!((sys.lines[0].left_side.len(), sys.lines[0].right_side.len()), (1, 1));

        let (set, family) = gen_perfect_crossing_family_pointset(3, 5).unwrap();
        let sys = halving_line_system(&set, &CrossingFamily::new(family)).unwrap();
        for line in &sys.lines {
            assert_eq!(line.left_side.len(), 3);
            assert_eq!(line.right_side.len(), 3);
            assert!(line.is_left(line.forward) && !line.is_left(line.rear));
            for v in 0..6 {
                assert!(line.is_left(v) != line.right_side.contains(&v));
            }
        }
    }

    #[test]
    fn halving_line_rejects_bad_families() {
        let (set, family) = gen_perfect_crossing_family_pointset(3, 5).unwrap();
        let partial = CrossingFamily::new(family[..2].to_vec());
        assert!(matches!(halving_line_system(&set, &partial), Err(QuasiError::NotPerfect(_))));
        let hexagon = gen_convex_polygon(6, 0).unwrap();
        let non_crossing = CrossingFamily::new(vec![e(0, 1), e(2, 3), e(4, 5)]);
        assert!(matches!(
            halving_line_system(&hexagon, &non_crossing),
            Err(QuasiError::FamilyNotCrossing(..))
        ));
        let family = CrossingFamily::new(family);
        assert_eq!(
            halving_line_partition(&set, &family, 2),
            Err(QuasiError::KTooSmall { k: 2, min: 3 })
        );
    }

    #[test]
    fn halving_partition_examples() {
        for (n, k, colors) in [(5, 3, 3), (3, 4, 1), (6, 4, 2)] {
            let (set, family) = gen_perfect_crossing_family_pointset(n, 17).unwrap();
            let c = halving_line_partition(&set, &CrossingFamily::new(family), k).unwrap();
            assert_eq!(c.num_colors(), colors);
            assert!(verify_partition(&set, &c));
            for class in c.classes() {
                assert!(is_k_quasi_planar(&set, &class, k).is_ok());
            }
        }
    }

    #[test]
    fn combined_partition_on_random_sets() {
        let set = gen_random_pointset(12, 3).unwrap();
        let p = theorem7_partition(&set, 3, crate::clique::DEFAULT_BUDGET).unwrap();
        assert!(verify_partition(&set, &p.coloring));
        for class in p.coloring.classes() {
            assert!(is_k_quasi_planar(&set, &class, 3).is_ok());
        }
        let m = p.m();
        assert!(p.colors_used <= m.div_ceil(2) + (12 - 2 * m).div_ceil(2));
    }

    #[test]
    fn combined_partition_single_class_when_k_exceeds_m() {
        let set = gen_convex_polygon(6, 0).unwrap();
        let p = theorem7_partition(&set, 4, 1000).unwrap();
        assert_eq!(p.m(), 3);
        assert_eq!(p.colors_used, 1);
        assert!(p.note.is_some());
    }

    #[test]
    fn combined_partition_refuses_unproven_family() {
        let set = gen_random_pointset(12, 3).unwrap();
        assert!(matches!(theorem7_partition(&set, 3, 1), Err(QuasiError::NotProvenOptimal { .. })));
    }
}
