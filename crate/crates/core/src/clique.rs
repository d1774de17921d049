//! Exact maximum clique search by branch and bound.
//!
//! Vertices are renumbered in smallest-last (degeneracy) order, reversed, so
//! that high-core vertices come first. Each node greedily colors its
//! candidate set in that order; a candidate with color `c` can extend the
//! current clique by at most `c` vertices, which bounds the subtree.

use fixedbitset::FixedBitSet;

/// Node limit used when the caller does not supply one.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueResult {
    /// Vertices of the best clique found, sorted ascending.
    pub vertices: Vec<usize>,
    /// False if the node budget ran out before optimality was proven.
    pub proven_optimal: bool,
    pub nodes: u64,
}

/// Undirected simple graph stored as adjacency bitsets.
#[derive(Clone, Debug)]
pub struct BitGraph {
    adjacency: Vec<FixedBitSet>,
}

impl BitGraph {
    pub fn new(vertex_count: usize) -> BitGraph {
        BitGraph {
            adjacency: vec![FixedBitSet::with_capacity(vertex_count); vertex_count],
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b);
        self.adjacency[a].insert(b);
        self.adjacency[b].insert(a);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].ones()
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &a)| vertices[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// Smallest-last ordering: repeatedly removes a vertex of minimum
    /// remaining degree. Returns the removal order.
    fn degeneracy_order(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (degree[v], v))
                .expect("a vertex remains");
            removed[v] = true;
            order.push(v);
            for w in self.adjacency[v].ones() {
                if !removed[w] {
                    degree[w] -= 1;
                }
            }
        }
        order
    }

    /// Exact maximum clique, unless `budget` search nodes are exhausted.
    pub fn max_clique(&self, budget: u64) -> CliqueResult {
        self.search(None, budget)
    }

    /// Some clique of exactly `size` vertices, or `None` if none exists.
    /// Runs without a node limit.
    pub fn find_clique_of_size(&self, size: usize) -> Option<Vec<usize>> {
        if size == 0 {
            return Some(Vec::new());
        }
        let result = self.search(Some(size), u64::MAX);
        (result.vertices.len() >= size).then(|| result.vertices[..size].to_vec())
    }

    fn search(&self, target: Option<usize>, budget: u64) -> CliqueResult {
        let n = self.vertex_count();
        let mut order = self.degeneracy_order();
        order.reverse();
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let adjacency: Vec<FixedBitSet> = order
            .iter()
            .map(|&v| {
                let mut row = FixedBitSet::with_capacity(n);
                for w in self.adjacency[v].ones() {
                    row.insert(position[w]);
                }
                row
            })
            .collect();

        let mut search = Search {
            adjacency: &adjacency,
            best: Vec::new(),
            // Only cliques larger than `floor` are worth recording.
            floor: target.map_or(0, |t| t - 1),
            target,
            nodes: 0,
            budget,
            aborted: false,
        };
        let mut candidates = FixedBitSet::with_capacity(n);
        candidates.insert_range(..);
        let mut current = Vec::new();
        if n > 0 {
            search.expand(&mut current, candidates);
        }
        let mut vertices: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
        vertices.sort_unstable();
        CliqueResult {
            vertices,
            proven_optimal: !search.aborted,
            nodes: search.nodes,
        }
    }
}

struct Search<'a> {
    adjacency: &'a [FixedBitSet],
    best: Vec<usize>,
    floor: usize,
    target: Option<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.aborted || self.target.is_some_and(|t| self.best.len() >= t)
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut candidates: FixedBitSet) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let (vertices, bounds) = self.color_sort(&candidates);
        for idx in (0..vertices.len()).rev() {
            if current.len() + bounds[idx] <= self.floor || self.done() {
                return;
            }
            let v = vertices[idx];
            current.push(v);
            let mut next = candidates.clone();
            next.intersect_with(&self.adjacency[v]);
            if next.is_clear() {
                if current.len() > self.floor {
                    self.best = current.clone();
                    self.floor = current.len();
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            candidates.set(v, false);
        }
    }

    /// Greedy sequential coloring of `candidates` in vertex order. Returns
    /// the vertices grouped by color together with each vertex's color
    /// number (1-based), which is non-decreasing along the list.
    fn color_sort(&self, candidates: &FixedBitSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = candidates.clone();
        let mut vertices = Vec::with_capacity(candidates.count_ones(..));
        let mut bounds = Vec::with_capacity(vertices.capacity());
        let mut color = 0;
        while !uncolored.is_clear() {
            color += 1;
            let mut available = uncolored.clone();
            while let Some(v) = available.minimum() {
                vertices.push(v);
                bounds.push(color);
                uncolored.set(v, false);
                available.set(v, false);
                available.difference_with(&self.adjacency[v]);
            }
        }
        (vertices, bounds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> BitGraph {
        let mut g = BitGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    fn brute_force_clique_number(g: &BitGraph) -> usize {
        let n = g.vertex_count();
        (0u32..1 << n)
            .filter(|&mask| {
                let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                g.is_clique(&vs)
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_graphs() {
        assert_eq!(BitGraph::new(0).max_clique(10).vertices, Vec::<usize>::new());
        assert_eq!(graph(3, &[]).max_clique(10).vertices.len(), 1);
        let cycle5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(cycle5.max_clique(100).vertices.len(), 2);
        let k4_plus = graph(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]);
        let r = k4_plus.max_clique(100);
        assert_eq!(r.vertices, vec![0, 1, 2, 3]);
        assert!(r.proven_optimal);
    }

    #[test]
    fn target_search() {
        let cycle5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(cycle5.find_clique_of_size(3), None);
        let found = cycle5.find_clique_of_size(2).unwrap();
        assert!(cycle5.is_clique(&found));
        assert_eq!(cycle5.find_clique_of_size(0), Some(vec![]));
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let mut g = BitGraph::new(30);
        for a in 0..30 {
            for b in a + 1..30 {
                if (a * 7 + b * 3) % 5 != 0 {
                    g.add_edge(a, b);
                }
            }
        }
        assert!(!g.max_clique(2).proven_optimal);
        assert!(g.max_clique(DEFAULT_BUDGET).proven_optimal);
    }

    #[test]
    fn matches_brute_force_on_pseudorandom_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.gen_range(1..=14);
            let density = rng.gen_range(0.1..0.9);
            let mut g = BitGraph::new(n);
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(density) {
                        g.add_edge(a, b);
                    }
                }
            }
            let r = g.max_clique(DEFAULT_BUDGET);
            assert!(g.is_clique(&r.vertices));
            assert_eq!(r.vertices.len(), brute_force_clique_number(&g));
        }
    }
}
