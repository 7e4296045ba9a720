//! Plain SVG output for graphs, quotients, barcodes and distance matrices.

use std::fmt::Write;

use rand::Rng;

use crate::compare::mds_embed;
use crate::model::{Barcode, DecoratedReebGraph, DistanceMatrix, FunctionGraph};
use crate::synthetic::rng;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;

struct Frame {
    min: (f64, f64),
    scale: f64,
}

impl Frame {
    fn fit(points: &[(f64, f64)]) -> Frame {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for &(x, y) in points {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        if points.is_empty() {
            (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-12);
        Frame {
            min: (x0, y0),
            scale: (SIZE - 2.0 * MARGIN) / span,
        }
    }

    /// SVG coordinates, y pointing up.
    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        (
            MARGIN + (p.0 - self.min.0) * self.scale,
            SIZE - MARGIN - (p.1 - self.min.1) * self.scale,
        )
    }
}

fn open_svg() -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n\
         <rect class=\"background\" x=\"0\" y=\"0\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>\n"
    )
}

fn colour(t: f64) -> String {
    // blue to red ramp
    let t = if t.is_finite() {
        t.clamp(0.0, 1.0)
    } else {
        0.0
    };
    let r = (40.0 + 200.0 * t) as u8;
    let b = (240.0 - 200.0 * t) as u8;
    format!("rgb({r},80,{b})")
}

fn normalise(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    values
        .iter()
        .map(|&v| if span > 0.0 { (v - lo) / span } else { 0.5 })
        .collect()
}

fn draw_network(
    points: &[(f64, f64)],
    edges: &[(usize, usize)],
    heat: &[f64],
    radius: f64,
) -> String {
    let frame = Frame::fit(points);
    let mut svg = open_svg();
    for &(a, b) in edges {
        let (x1, y1) = frame.map(points[a]);
        let (x2, y2) = frame.map(points[b]);
        let _ = writeln!(
            svg,
            "<line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"#888\" stroke-width=\"1\"/>"
        );
    }
    for (p, &t) in points.iter().zip(heat) {
        let (x, y) = frame.map(*p);
        let _ = writeln!(
            svg,
            "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{radius}\" fill=\"{}\"/>",
            colour(t)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Seeded force-directed layout (Fruchterman-Reingold) for graphs without
/// positions.
pub fn spring_layout(n: usize, edges: &[(usize, usize)], seed: u64) -> Vec<(f64, f64)> {
    let mut r = rng(seed, 0);
    let mut pos: Vec<(f64, f64)> = (0..n)
        .map(|_| (r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
        .collect();
    if n < 2 {
        return pos;
    }
    let k = (4.0 / n as f64).sqrt();
    let mut temp = 0.2;
    for _ in 0..200 {
        let mut disp = vec![(0.0, 0.0); n];
        for i in 0..n {
            for j in (i + 1)..n {
                let dx = pos[i].0 - pos[j].0;
                let dy = pos[i].1 - pos[j].1;
                let d = (dx * dx + dy * dy).sqrt().max(1e-6);
                let f = k * k / d;
                disp[i].0 += dx / d * f;
                disp[i].1 += dy / d * f;
                disp[j].0 -= dx / d * f;
                disp[j].1 -= dy / d * f;
            }
        }
        for &(a, b) in edges {
            let dx = pos[a].0 - pos[b].0;
            let dy = pos[a].1 - pos[b].1;
            let d = (dx * dx + dy * dy).sqrt().max(1e-6);
            let f = d * d / k;
            disp[a].0 -= dx / d * f;
            disp[a].1 -= dy / d * f;
            disp[b].0 += dx / d * f;
            disp[b].1 += dy / d * f;
        }
        for (p, d) in pos.iter_mut().zip(&disp) {
            let len = (d.0 * d.0 + d.1 * d.1).sqrt().max(1e-12);
            let step = len.min(temp);
            p.0 += d.0 / len * step;
            p.1 += d.1 / len * step;
        }
        temp *= 0.97;
    }
    pos
}

fn planar(positions: &[Vec<f64>]) -> Vec<(f64, f64)> {
    positions
        .iter()
        .map(|p| {
            (
                p.first().copied().unwrap_or(0.0),
                p.get(1).copied().unwrap_or(0.0),
            )
        })
        .collect()
}

/// Nodes coloured by their first value coordinate. Uses the first two
/// position coordinates, or a seeded spring layout.
pub fn render_graph(graph: &FunctionGraph, seed: u64) -> String {
    let points = match graph.positions() {
        Some(p) => planar(p),
        None => spring_layout(graph.node_count(), graph.edges(), seed),
    };
    draw_network(
        &points,
        graph.edges(),
        &normalise(&graph.scalar_values()),
        3.0,
    )
}

/// Quotient nodes at the mean position of their members when the original
/// graph has positions, otherwise at a planar MDS of the quotient metric.
pub fn render_drg(drg: &DecoratedReebGraph, graph: Option<&FunctionGraph>) -> String {
    let k = drg.class_count;
    let points: Vec<(f64, f64)> = match graph.and_then(|g| g.positions()) {
        Some(pos) => {
            let flat = planar(pos);
            let mut sum = vec![(0.0, 0.0, 0usize); k];
            for (v, &c) in drg.class_of.iter().enumerate() {
                sum[c].0 += flat[v].0;
                sum[c].1 += flat[v].1;
                sum[c].2 += 1;
            }
            sum.iter()
                .map(|&(x, y, m)| (x / m as f64, y / m as f64))
                .collect()
        }
        None => mds_embed(&drg.metric.to_square(k), 2)
            .expect("two dimensions")
            .into_iter()
            .map(|p| (p[0], p[1]))
            .collect(),
    };
    let heat: Vec<f64> = match graph {
        Some(g) => {
            let vals = g.scalar_values();
            normalise(
                &drg.representative
                    .iter()
                    .map(|&r| vals[r])
                    .collect::<Vec<_>>(),
            )
        }
        None => vec![0.5; k],
    };
    draw_network(&points, &drg.edges, &heat, 5.0)
}

/// Birth-death scatter with the diagonal. Open bars are drawn at their
/// truncation scale with a hollow marker.
pub fn render_barcode(barcode: &Barcode) -> String {
    let hi = barcode
        .intervals()
        .iter()
        .map(|i| i.death.value())
        .fold(1e-9f64, f64::max);
    let frame = Frame::fit(&[(0.0, 0.0), (hi, hi)]);
    let mut svg = open_svg();
    let (x1, y1) = frame.map((0.0, 0.0));
    let (x2, y2) = frame.map((hi, hi));
    let _ = writeln!(
        svg,
        "<line class=\"diagonal\" x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"black\" stroke-dasharray=\"4 3\"/>"
    );
    for i in barcode.intervals() {
        let (x, y) = frame.map((i.birth, i.death.value()));
        let fill = if i.death.is_open() {
            "none".to_string()
        } else {
            colour(i.dim as f64 / 2.0)
        };
        let _ = writeln!(
            svg,
            "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" fill=\"{fill}\" stroke=\"{}\"/>",
            colour(i.dim as f64 / 2.0)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// One cell per matrix entry, shaded by distance.
pub fn render_heatmap(dist: &DistanceMatrix) -> String {
    let n = dist.size();
    let hi = dist.as_slice().iter().copied().fold(0.0f64, f64::max);
    let cell = (SIZE - 2.0 * MARGIN) / n.max(1) as f64;
    let mut svg = open_svg();
    for i in 0..n {
        for j in 0..n {
            let t = if hi > 0.0 { dist.get(i, j) / hi } else { 0.0 };
            let _ = writeln!(
                svg,
                "<rect class=\"cell\" x=\"{:.3}\" y=\"{:.3}\" width=\"{cell:.3}\" height=\"{cell:.3}\" fill=\"{}\"/>",
                MARGIN + j as f64 * cell,
                MARGIN + i as f64 * cell,
                colour(t)
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}

/// Scatter of embedded points, coloured by label.
pub fn render_scatter(points: &[Vec<f64>], labels: &[usize]) -> String {
    let flat = planar(points);
    let top = labels.iter().copied().max().unwrap_or(0).max(1) as f64;
    let heat: Vec<f64> = labels.iter().map(|&l| l as f64 / top).collect();
    draw_network(&flat, &[], &heat, 5.0)
}
