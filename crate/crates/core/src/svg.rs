//! SVG drawings of colored complete geometric graphs.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::coloring::{Coloring, Edge};
use crate::geometry::PointSet;

/// Stroke colors by class id, cycled when there are more classes.
pub const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f", "#393b79", "#637939",
];

const UNCOLORED: &str = "#cccccc";

/// Where the vertices are drawn.
#[derive(Clone, Copy, Debug)]
pub enum Layout<'a> {
    /// The given coordinates, scaled to fit.
    Points(&'a PointSet),
    /// Vertices evenly spaced clockwise on a circle, vertex 0 on top.
    Convex,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    pub size: f64,
    pub margin: f64,
    pub point_radius: f64,
    pub stroke_width: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            size: 600.0,
            margin: 20.0,
            point_radius: 4.0,
            stroke_width: 1.5,
        }
    }
}

fn positions(layout: Layout<'_>, n: usize, options: &SvgOptions) -> Vec<(f64, f64)> {
    let inner = options.size - 2.0 * options.margin;
    match layout {
        Layout::Convex => {
            let center = options.size / 2.0;
            let radius = inner / 2.0;
            (0..n)
                .map(|i| {
                    let angle = -PI / 2.0 + 2.0 * PI * i as f64 / n as f64;
                    (center + radius * angle.cos(), center + radius * angle.sin())
                })
                .collect()
        }
        Layout::Points(points) => {
            assert_eq!(points.len(), n, "layout and coloring disagree on n");
            let xs = points.points().iter().map(|p| p.x);
            let ys = points.points().iter().map(|p| p.y);
            let (min_x, max_x) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
            let (min_y, max_y) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0));
            let span = (max_x - min_x).max(max_y - min_y).max(1) as f64;
            let scale = inner / span;
            // Center the drawing along the shorter axis; flip y.
            let off_x = options.margin + (inner - (max_x - min_x) as f64 * scale) / 2.0;
            let off_y = options.margin + (inner - (max_y - min_y) as f64 * scale) / 2.0;
            points
                .points()
                .iter()
                .map(|p| {
                    (
                        off_x + (p.x - min_x) as f64 * scale,
                        options.size - off_y - (p.y - min_y) as f64 * scale,
                    )
                })
                .collect()
        }
    }
}

fn write_edges(out: &mut String, stroke: &str, edges: &[Edge], pos: &[(f64, f64)]) {
    if edges.is_empty() {
        return;
    }
    writeln!(out, "  <g stroke=\"{stroke}\">").unwrap();
    for e in edges {
        let (a, b) = (pos[e.u], pos[e.v]);
        writeln!(
            out,
            "    <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
            a.0, a.1, b.0, b.1
        )
        .unwrap();
    }
    writeln!(out, "  </g>").unwrap();
}

/// Renders the coloring as an SVG 1.1 document. Output depends only on the
/// inputs.
pub fn render_svg(layout: Layout<'_>, coloring: &Coloring, options: &SvgOptions) -> String {
    let n = coloring.n();
    let pos = positions(layout, n, options);
    let mut out = String::new();
    writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>").unwrap();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">",
        s = options.size
    )
    .unwrap();
    writeln!(
        out,
        "  <g fill=\"none\" stroke-width=\"{}\" stroke-linecap=\"round\">",
        options.stroke_width
    )
    .unwrap();
    let mut uncolored = Vec::new();
    let mut classes = vec![Vec::new(); coloring.num_colors() as usize];
    for (e, c) in coloring.iter() {
        match c {
            Some(c) => classes[c as usize].push(e),
            None => uncolored.push(e),
        }
    }
    write_edges(&mut out, UNCOLORED, &uncolored, &pos);
    for (color, class) in classes.iter().enumerate() {
        write_edges(&mut out, PALETTE[color % PALETTE.len()], class, &pos);
    }
    writeln!(out, "  </g>").unwrap();
    writeln!(out, "  <g fill=\"black\">").unwrap();
    for (i, (x, y)) in pos.iter().enumerate() {
        writeln!(
            out,
            "    <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{}\"><title>{i}</title></circle>",
            options.point_radius
        )
        .unwrap();
    }
    writeln!(out, "  </g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}
