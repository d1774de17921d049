use proptest::prelude::*;

use kpartition::bounds::{
    count_convex_crossings, double_counting_holds, edge_bound_general, edge_bound_small_k,
    kplanar_color_bounds, max_k_plane_subgraph, quasi_color_bounds,
};
use kpartition::clique::DEFAULT_BUDGET;
use kpartition::convex::{
    block_planarity, choose_block_size, convex_edges_cross, crossing_counts, interval_offset,
    slope_partition, verify_k_planar,
};
use kpartition::geometry::{
    gen_convex_polygon, gen_perfect_crossing_family_pointset, gen_random_pointset, orientation,
    segments_cross, Point,
};
use kpartition::io::{parse_coloring, parse_instance, write_coloring, write_instance, Instance};
use kpartition::quasi::{
    build_crossing_graph, double_star_partition, halving_line_partition, halving_line_system,
    is_k_quasi_planar, max_crossing_family, theorem7_partition, verify_partition,
    verify_spanning_tree, CrossingFamily,
};
use kpartition::{Coloring, Edge};

const HALF: i64 = 1 << 29;

fn point() -> impl Strategy<Value = Point> {
    (-HALF..=HALF, -HALF..=HALF).prop_map(|(x, y)| Point::new(x, y))
}

/// Brute-force maximum k-plane subgraph of the convex `K_n` over all edge
/// subsets.
fn brute_force_k_plane(n: usize, k: usize) -> usize {
    let edges: Vec<Edge> = Edge::all(n).collect();
    let mut best = 0;
    for mask in 0u32..(1 << edges.len()) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let chosen: Vec<Edge> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        if verify_k_planar(n, &chosen, k).is_ok() {
            best = size;
        }
    }
    best
}

proptest! {
    #[test]
    fn orientation_is_antisymmetric_and_cyclic(a in point(), b in point(), c in point()) {
        let o = orientation(a, b, c).sign();
        prop_assert_eq!(orientation(b, a, c).sign(), -o);
        prop_assert_eq!(orientation(a, c, b).sign(), -o);
        prop_assert_eq!(orientation(b, c, a).sign(), o);
    }

    #[test]
    fn orientation_is_translation_invariant(a in point(), b in point(), c in point(), dx in -HALF..=HALF, dy in -HALF..=HALF) {
        let t = |p: Point| Point::new(p.x + dx, p.y + dy);
        prop_assert_eq!(orientation(a, b, c), orientation(t(a), t(b), t(c)));
    }

    #[test]
    fn segments_cross_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        let x = segments_cross((a, b), (c, d));
        prop_assert_eq!(x, segments_cross((c, d), (a, b)));
        prop_assert_eq!(x, segments_cross((b, a), (c, d)));
        prop_assert_eq!(x, segments_cross((a, b), (d, c)));
    }

    #[test]
    fn convex_crossing_matches_geometry(n in 4usize..=10, seed in any::<u64>()) {
        let points = gen_convex_polygon(n, seed).unwrap();
        let edges: Vec<Edge> = Edge::all(n).collect();
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                prop_assert_eq!(convex_edges_cross(n, e, f), points.edges_cross(e, f), "{} {}", e, f);
            }
        }
    }

    #[test]
    fn slope_classes_meet_position_bound(n in 5usize..=24, s_frac in 0.0f64..1.0) {
        let s = 3 + ((n - 2) as f64 * s_frac) as usize;
        let s = s.min(n);
        let k = block_planarity(s);
        for class in slope_partition(n, s).classes() {
            for (&e, &count) in class.iter().zip(&crossing_counts(n, &class)) {
                let j = interval_offset(n, s, e);
                prop_assert!(count <= k - (s - j) * (j - 1));
            }
            prop_assert!(double_counting_holds(k, class.len(), count_convex_crossings(n, &class)));
        }
    }

    #[test]
    fn pigeonhole_lower_bound_is_consistent(n in 3usize..=400, k in 5usize..=80) {
        let bounds = kplanar_color_bounds(n, k).unwrap();
        let per_class = edge_bound_general(n, k).unwrap();
        prop_assert!(bounds.lower as f64 * per_class >= (n * (n - 1) / 2) as f64 - 1e-9);
        if bounds.lower > 1 {
            prop_assert!((bounds.lower - 1) as f64 * per_class < (n * (n - 1) / 2) as f64);
        }
        prop_assert!(bounds.lower <= bounds.upper);
        prop_assert!(block_planarity(choose_block_size(k)) <= k);
    }

    #[test]
    fn quasi_bounds_are_ordered(m in 1usize..=50, extra in 0usize..=50, k in 3usize..=60) {
        let n = 2 * m + extra;
        let b = quasi_color_bounds(n, m, k).unwrap();
        prop_assert!(b.lower <= b.upper);
        prop_assert!(b.lower >= 1);
    }

    #[test]
    fn halving_lines_split_evenly(n in 2usize..=9, seed in any::<u64>()) {
        let (points, family) = gen_perfect_crossing_family_pointset(n, seed).unwrap();
        let family = CrossingFamily::new(family);
        let system = halving_line_system(&points, &family).unwrap();
        prop_assert_eq!(system.lines.len(), n);
        for line in &system.lines {
            prop_assert_eq!(line.left_side.len(), n);
            prop_assert_eq!(line.right_side.len(), n);
            prop_assert!(line.is_left(line.forward) && !line.is_left(line.rear));
            for other in system.lines.iter().filter(|o| o.edge != line.edge) {
                prop_assert_ne!(line.is_left(other.edge.u), line.is_left(other.edge.v));
            }
        }
    }

    #[test]
    fn halving_partition_is_valid(n in 2usize..=8, k in 3usize..=9, seed in any::<u64>()) {
        let (points, family) = gen_perfect_crossing_family_pointset(n, seed).unwrap();
        let coloring = halving_line_partition(&points, &CrossingFamily::new(family), k).unwrap();
        prop_assert_eq!(coloring.num_colors() as usize, n.div_ceil(k - 1));
        prop_assert!(verify_partition(&points, &coloring));
        for class in coloring.classes() {
            prop_assert!(is_k_quasi_planar(&points, &class, k).is_ok());
        }
    }

    #[test]
    fn combined_partition_is_within_bounds(size in 4usize..=12, k in 3usize..=5, seed in any::<u64>()) {
        let points = gen_random_pointset(size, seed).unwrap();
        let result = theorem7_partition(&points, k, DEFAULT_BUDGET).unwrap();
        let bounds = quasi_color_bounds(size, result.m(), k).unwrap();
        prop_assert!(result.colors_used >= bounds.lower && result.colors_used <= bounds.upper);
        prop_assert!(verify_partition(&points, &result.coloring));
        for class in result.coloring.classes() {
            prop_assert!(is_k_quasi_planar(&points, &class, k).is_ok());
        }
    }

    #[test]
    fn double_stars_are_quasi_planar_trees(half in 2usize..=10, seed in any::<u64>()) {
        let points = gen_random_pointset(2 * half, seed).unwrap();
        let trees = double_star_partition(&points).unwrap();
        prop_assert!(verify_partition(&points, &trees.to_coloring().unwrap()));
        for tree in &trees.trees {
            prop_assert!(verify_spanning_tree(points.len(), tree));
            prop_assert!(is_k_quasi_planar(&points, tree, 3).is_ok());
        }
    }

    #[test]
    fn instance_round_trip(size in 3usize..=20, seed in any::<u64>(), kind in 0u8..3) {
        let instance = match kind {
            0 => Instance { points: gen_convex_polygon(size, seed).unwrap(), family: None },
            1 => Instance { points: gen_random_pointset(size, seed).unwrap(), family: None },
            _ => {
                let (points, family) = gen_perfect_crossing_family_pointset(size / 2 + 1, seed).unwrap();
                Instance { points, family: Some(CrossingFamily::new(family)) }
            }
        };
        let text = write_instance(&instance);
        let parsed = parse_instance(&text).unwrap();
        prop_assert_eq!(&parsed, &instance);
        prop_assert_eq!(write_instance(&parsed), text);
    }

    #[test]
    fn coloring_round_trip(n in 2usize..=15, colors in 1u32..=6, seed in any::<u64>()) {
        let coloring = Coloring::from_fn(n, colors, |e| ((e.u as u64 * 31 + e.v as u64 * 17 + seed) % colors as u64) as u32).unwrap();
        let text = write_coloring(&coloring);
        let parsed = parse_coloring(&text).unwrap();
        prop_assert_eq!(write_coloring(&parsed), text);
        prop_assert_eq!(parsed.classes(), coloring.classes());
    }
}

#[test]
fn convex_max_crossing_family_is_half_n() {
    for n in 4..=12 {
        let points = gen_convex_polygon(n, 7).unwrap();
        let family = max_crossing_family(&build_crossing_graph(&points), DEFAULT_BUDGET);
        assert!(family.proven_optimal);
        assert_eq!(family.size(), n / 2, "n={n}");
        family.check_pairwise_crossing(&points).unwrap();
    }
}

#[test]
fn oracle_matches_brute_force() {
    for n in 3..=6 {
        for k in 0..=4 {
            let oracle = max_k_plane_subgraph(n, k, DEFAULT_BUDGET).unwrap();
            assert_eq!(oracle.size, brute_force_k_plane(n, k), "n={n} k={k}");
            assert_eq!(oracle.witness.len(), oracle.size);
            verify_k_planar(n, &oracle.witness, k).unwrap();
        }
    }
}

#[test]
fn oracle_is_monotone_and_within_formula() {
    let mut previous_row: Option<Vec<usize>> = None;
    for n in 4..=8 {
        let row: Vec<usize> = (0..=4)
            .map(|k| max_k_plane_subgraph(n, k, DEFAULT_BUDGET).unwrap().size)
            .collect();
        for k in 0..=4 {
            assert!(row[k] as i64 <= edge_bound_small_k(n, k).unwrap().floor());
            if k > 0 {
                assert!(row[k] >= row[k - 1], "n={n} k={k}");
            }
            if let Some(prev) = &previous_row {
                assert!(row[k] > prev[k], "n={n} k={k}");
            }
        }
        previous_row = Some(row);
    }
}
