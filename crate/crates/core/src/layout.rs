//! Two-level cyclic layout and SVG rendering.
//!
//! Strongly connected components sit on one big circle in canonical order
//! (largest first); the vertices of each component sit on the component's own
//! circle, ordered along a depth-first traversal so that tree edges join
//! neighbors on the circle. Edges are straight segments colored by letter,
//! loops are small circles next to their vertex and parallel edges fan out
//! from the vertex. Edge crossings are never looked at, which keeps the whole
//! pipeline linear in vertices plus edges.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use crate::automaton::Automaton;
use crate::graph::scc;

pub const VERTEX_RADIUS: f64 = 10.0;
const LOOP_RADIUS: f64 = VERTEX_RADIUS / 2.0;
const SPACING: f64 = 3.0 * VERTEX_RADIUS;
const MIN_SCC_RADIUS: f64 = 2.0 * VERTEX_RADIUS;
const GAP: f64 = 3.0 * VERTEX_RADIUS;
const MARGIN: f64 = 2.0 * VERTEX_RADIUS;
const FAN_STEP: f64 = 0.35;
const SIDE_SHIFT: f64 = 0.2;

/// Okabe–Ito palette.
pub const PALETTE: [&str; 8] = [
    "#E69F00", "#56B4E9", "#009E73", "#F0E442", "#0072B2", "#D55E00", "#CC79A7", "#000000",
];
const DASHES: [&str; 4] = ["", "6 3", "2 3", "8 3 2 3"];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    fn polar(center: Point, radius: f64, angle: f64) -> Point {
        Point {
            x: center.x + radius * angle.cos(),
            y: center.y + radius * angle.sin(),
        }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn angle_to(self, other: Point) -> f64 {
        (other.y - self.y).atan2(other.x - self.x)
    }

    fn shifted(self, dx: f64, dy: f64) -> Point {
        Point {
            x: self.x + dx,
            y: self.y + dy,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SccCircle {
    pub center: Point,
    pub radius: f64,
    /// Vertices in circle order.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeSegment {
    pub from: usize,
    pub to: usize,
    pub letter: usize,
    pub start: Point,
    pub end: Point,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoopMarker {
    pub vertex: usize,
    pub letter: usize,
    pub center: Point,
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayoutModel {
    pub width: f64,
    pub height: f64,
    /// Rendered width in pixels; the view box keeps layout coordinates.
    pub display_width: Option<f64>,
    pub letters: usize,
    pub vertex_radius: f64,
    pub sccs: Vec<SccCircle>,
    pub positions: Vec<Point>,
    pub vertex_scc: Vec<usize>,
    pub edges: Vec<EdgeSegment>,
    pub loops: Vec<LoopMarker>,
}

fn scc_radius(size: usize) -> f64 {
    (size as f64 * SPACING / TAU).max(MIN_SCC_RADIUS)
}

/// Preorder of a depth-first walk inside one component, edges in letter order.
fn circle_order(a: &Automaton, members: &[usize], comp: &[usize], c: usize, seen: &mut [bool]) -> Vec<usize> {
    let mut order = Vec::with_capacity(members.len());
    for &root in members {
        if seen[root] {
            continue;
        }
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            order.push(v);
            for l in (0..a.d()).rev() {
                if let Some(t) = a.target(v, l) {
                    if comp[t] == c && !seen[t] {
                        stack.push(t);
                    }
                }
            }
        }
    }
    order
}

pub fn compute_layout(a: &Automaton) -> LayoutModel {
    let n = a.n();
    let partition = scc(&a.transition_graph());
    let comp: Vec<usize> = (0..n).map(|v| partition.component_of(v)).collect();

    let radii: Vec<f64> = partition.sizes().into_iter().map(scc_radius).collect();
    let shares: Vec<f64> = radii.iter().map(|r| r + GAP).collect();
    let outer = if radii.len() > 1 { shares.iter().sum() } else { 0.0 };

    let mut centers = Vec::with_capacity(radii.len());
    let mut swept = 0.0;
    for share in &shares {
        let angle = -PI / 2.0 + if outer > 0.0 { (swept + share / 2.0) / outer * TAU } else { 0.0 };
        centers.push(Point::polar(Point { x: 0.0, y: 0.0 }, outer, angle));
        swept += share;
    }

    let extent = centers
        .iter()
        .zip(&radii)
        .map(|(c, r)| c.x.abs().max(c.y.abs()) + r + GAP)
        .fold(0.0, f64::max)
        + MARGIN;
    let size = 2.0 * extent;
    for c in &mut centers {
        *c = c.shifted(extent, extent);
    }

    let mut seen = vec![false; n];
    let mut positions = vec![Point { x: 0.0, y: 0.0 }; n];
    let mut sccs = Vec::with_capacity(radii.len());
    for (c, members) in partition.components().iter().enumerate() {
        let vertices = circle_order(a, members, &comp, c, &mut seen);
        let m = vertices.len() as f64;
        for (k, &v) in vertices.iter().enumerate() {
            positions[v] = Point::polar(centers[c], radii[c], -PI / 2.0 + TAU * k as f64 / m);
        }
        sccs.push(SccCircle {
            center: centers[c],
            radius: radii[c],
            vertices,
        });
    }

    let mut edges = Vec::new();
    let mut loops = Vec::new();
    let mut by_target: Vec<(usize, usize)> = Vec::with_capacity(a.d());
    for v in 0..n {
        by_target.clear();
        by_target.extend((0..a.d()).filter_map(|l| a.target(v, l).map(|t| (t, l))));
        by_target.sort_unstable();

        let own_loops: Vec<usize> = by_target.iter().filter(|&&(t, _)| t == v).map(|&(_, l)| l).collect();
        if !own_loops.is_empty() {
            let base = sccs[comp[v]].center.angle_to(positions[v]);
            let step = if own_loops.len() <= 8 { PI / 4.0 } else { TAU / own_loops.len() as f64 };
            let mid = (own_loops.len() - 1) as f64 / 2.0;
            for (k, &letter) in own_loops.iter().enumerate() {
                let angle = base + (k as f64 - mid) * step;
                loops.push(LoopMarker {
                    vertex: v,
                    letter,
                    center: Point::polar(positions[v], VERTEX_RADIUS + LOOP_RADIUS, angle),
                    radius: LOOP_RADIUS,
                });
            }
        }

        let mut i = 0;
        while i < by_target.len() {
            let t = by_target[i].0;
            let j = by_target[i..].iter().take_while(|&&(x, _)| x == t).count() + i;
            if t != v {
                let dir = positions[v].angle_to(positions[t]);
                let mid = (j - i - 1) as f64 / 2.0;
                for (k, &(_, letter)) in by_target[i..j].iter().enumerate() {
                    let fan = (k as f64 - mid) * FAN_STEP + SIDE_SHIFT;
                    edges.push(EdgeSegment {
                        from: v,
                        to: t,
                        letter,
                        start: Point::polar(positions[v], VERTEX_RADIUS, dir + fan),
                        end: Point::polar(positions[t], VERTEX_RADIUS, dir + PI - fan),
                    });
                }
            }
            i = j;
        }
    }

    LayoutModel {
        width: size,
        height: size,
        display_width: None,
        letters: a.d(),
        vertex_radius: VERTEX_RADIUS,
        sccs,
        positions,
        vertex_scc: comp,
        edges,
        loops,
    }
}

pub fn letter_color(letter: usize) -> &'static str {
    PALETTE[letter % PALETTE.len()]
}

fn letter_dash(letter: usize) -> &'static str {
    DASHES[(letter / PALETTE.len()) % DASHES.len()]
}

fn stroke_attrs(out: &mut String, letter: usize) {
    write!(out, r#" stroke="{}""#, letter_color(letter)).unwrap();
    let dash = letter_dash(letter);
    if !dash.is_empty() {
        write!(out, r#" stroke-dasharray="{dash}""#).unwrap();
    }
}

/// SVG 1.1 document for `m`.
pub fn render_svg(m: &LayoutModel) -> String {
    let mut out = String::with_capacity(256 + 120 * (m.positions.len() + m.edges.len() + m.loops.len()));
    let (w, h) = match m.display_width {
        Some(px) => (px, px * m.height / m.width),
        None => (m.width, m.height),
    };
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}" viewBox="0 0 {:.2} {:.2}">"#,
        m.width, m.height
    )
    .unwrap();
    out.push_str("<defs>\n");
    for (color, fill) in PALETTE.iter().enumerate().take(m.letters) {
        writeln!(
            out,
            r#"<marker id="arrow-{color}" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M 0 0 L 10 5 L 0 10 z" fill="{fill}"/></marker>"#,
        )
        .unwrap();
    }
    out.push_str("</defs>\n");
    out.push_str(r#"<rect width="100%" height="100%" fill="white"/>"#);
    out.push('\n');

    for s in &m.sccs {
        writeln!(
            out,
            r##"<circle class="scc" cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="#DDDDDD" stroke-dasharray="4 4"/>"##,
            s.center.x, s.center.y, s.radius
        )
        .unwrap();
    }
    for e in &m.edges {
        write!(
            out,
            r#"<line class="edge" data-letter="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}""#,
            e.letter, e.start.x, e.start.y, e.end.x, e.end.y
        )
        .unwrap();
        stroke_attrs(&mut out, e.letter);
        writeln!(out, r#" stroke-width="1.5" marker-end="url(#arrow-{})"/>"#, e.letter % PALETTE.len()).unwrap();
    }
    for l in &m.loops {
        write!(
            out,
            r#"<circle class="loop" data-letter="{}" cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none""#,
            l.letter, l.center.x, l.center.y, l.radius
        )
        .unwrap();
        stroke_attrs(&mut out, l.letter);
        out.push_str(" stroke-width=\"1.5\"/>\n");
    }
    for (v, p) in m.positions.iter().enumerate() {
        writeln!(
            out,
            r##"<circle class="vertex" cx="{:.2}" cy="{:.2}" r="{:.2}" fill="#FFFFFF" stroke="#333333"/>"##,
            p.x, p.y, m.vertex_radius
        )
        .unwrap();
        writeln!(
            out,
            r#"<text class="vertex-label" x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle" dominant-baseline="central">{v}</text>"#,
            p.x, p.y
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
