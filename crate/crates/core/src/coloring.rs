use std::fmt;

use thiserror::Error;

/// An edge of a complete graph on vertices `0..n`, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the edge between `a` and `b` in either order.
    ///
    /// Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "self-loop {a}-{a} is not an edge");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.u == other.u || self.u == other.v || self.v == other.u || self.v == other.v
    }

    pub fn contains(&self, vertex: usize) -> bool {
        self.u == vertex || self.v == vertex
    }

    /// All `n(n-1)/2` edges of `K_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Edge> {
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| Edge { u, v }))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

pub fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of `e` in the lexicographic enumeration of [`Edge::all`].
pub fn edge_index(n: usize, e: Edge) -> usize {
    debug_assert!(e.u < e.v && e.v < n);
    e.u * (2 * n - e.u - 1) / 2 + (e.v - e.u - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("edge {0} is outside K_{1}")]
    EdgeOutOfRange(Edge, usize),
    #[error("color {color} of edge {edge} is not below the color count {count}")]
    ColorOutOfRange { edge: Edge, color: u32, count: u32 },
    #[error("edge {edge} already has color {existing}")]
    AlreadyColored { edge: Edge, existing: u32 },
    #[error("edge {0} has no color")]
    Uncolored(Edge),
}

/// An assignment of colors `0..num_colors` to the edges of `K_n`.
///
/// Edges can be assigned at most once, so color classes are always
/// disjoint. Totality is checked by [`Coloring::check_total`]; every
/// constructor in this crate produces total colorings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    n: usize,
    num_colors: u32,
    colors: Vec<Option<u32>>,
}

impl Coloring {
    pub fn uncolored(n: usize, num_colors: u32) -> Coloring {
        Coloring {
            n,
            num_colors,
            colors: vec![None; edge_count(n)],
        }
    }

    /// Colors every edge with `color_of(edge)`.
    pub fn from_fn(
        n: usize,
        num_colors: u32,
        mut color_of: impl FnMut(Edge) -> u32,
    ) -> Result<Coloring, ColoringError> {
        let mut coloring = Coloring::uncolored(n, num_colors);
        for e in Edge::all(n) {
            coloring.assign(e, color_of(e))?;
        }
        Ok(coloring)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn assign(&mut self, edge: Edge, color: u32) -> Result<(), ColoringError> {
        if edge.v >= self.n {
            return Err(ColoringError::EdgeOutOfRange(edge, self.n));
        }
        if color >= self.num_colors {
            return Err(ColoringError::ColorOutOfRange {
                edge,
                color,
                count: self.num_colors,
            });
        }
        let slot = &mut self.colors[edge_index(self.n, edge)];
        if let Some(existing) = *slot {
            return Err(ColoringError::AlreadyColored { edge, existing });
        }
        *slot = Some(color);
        Ok(())
    }

    /// Removes the color of `edge`, returning it.
    pub fn unassign(&mut self, edge: Edge) -> Option<u32> {
        self.colors[edge_index(self.n, edge)].take()
    }

    pub fn color(&self, edge: Edge) -> Option<u32> {
        self.colors.get(edge_index(self.n, edge)).copied().flatten()
    }

    /// Every edge with its color, in lexicographic edge order.
    pub fn iter(&self) -> impl Iterator<Item = (Edge, Option<u32>)> + '_ {
        Edge::all(self.n).zip(self.colors.iter().copied())
    }

    pub fn check_total(&self) -> Result<(), ColoringError> {
        match self.iter().find(|(_, c)| c.is_none()) {
            Some((e, _)) => Err(ColoringError::Uncolored(e)),
            None => Ok(()),
        }
    }

    pub fn is_total(&self) -> bool {
        self.check_total().is_ok()
    }

    /// Edges of one color class, in lexicographic order.
    pub fn class(&self, color: u32) -> Vec<Edge> {
        self.iter()
            .filter(|&(_, c)| c == Some(color))
            .map(|(e, _)| e)
            .collect()
    }

    pub fn classes(&self) -> Vec<Vec<Edge>> {
        let mut classes = vec![Vec::new(); self.num_colors as usize];
        for (e, c) in self.iter() {
            if let Some(c) = c {
                classes[c as usize].push(e);
            }
        }
        classes
    }

    /// Number of colors that are actually used by at least one edge.
    pub fn used_colors(&self) -> usize {
        self.classes().iter().filter(|c| !c.is_empty()).count()
    }
}
