//! Sign-grid contouring of the square-root residual.
//!
//! The residual is sampled on a square grid, crossing edges are refined by
//! bisection, and cell segments are chained into polylines. Saddle cells
//! are split by the sign of the residual at the cell center. Crossings of
//! the curve with itself are repaired afterwards in [`super::nodes`].

use std::collections::HashMap;

use rayon::prelude::*;

use super::{
    circles_horizontal, embed_section, nodes, section_residual, SectionCurve, SectionProblem,
};
use crate::error::{Result, ToricError};
use crate::geometry::Point2;

pub const DEFAULT_RESOLUTION: usize = 512;
pub const MIN_RESOLUTION: usize = 16;

const MAX_BISECTION: usize = 60;
const BISECTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub(crate) struct Polyline {
    pub points: Vec<Point2>,
    pub closed: bool,
}

/// The sampled residual on a `(n + 1) x (n + 1)` vertex grid over
/// `[-half, half]^2`.
pub(crate) struct Grid {
    pub n: usize,
    pub half: f64,
    values: Vec<f64>,
}

impl Grid {
    fn sample(sp: &SectionProblem, n: usize, half: f64) -> Self {
        let stride = n + 1;
        let mut values = vec![0.0; stride * stride];
        values
            .par_chunks_mut(stride)
            .enumerate()
            .for_each(|(j, row)| {
                let w = coord(j, n, half);
                for (i, v) in row.iter_mut().enumerate() {
                    *v = section_residual(coord(i, n, half), w, sp);
                }
            });
        Self { n, half, values }
    }

    fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * (self.n + 1) + i]
    }

    fn negative(&self, i: usize, j: usize) -> bool {
        self.value(i, j) < 0.0
    }

    pub fn cell_size(&self) -> f64 {
        2.0 * self.half / self.n as f64
    }

    fn vertex(&self, i: usize, j: usize) -> Point2 {
        Point2::new(coord(i, self.n, self.half), coord(j, self.n, self.half))
    }
}

/// Symmetric grid coordinate; index `n / 2` maps to exactly zero.
fn coord(i: usize, n: usize, half: f64) -> f64 {
    (2.0 * i as f64 - n as f64) / n as f64 * half
}

/// Traces the section inside the bounding square at `resolution` cells per
/// axis. Horizontal planes are handed to [`circles_horizontal`].
pub fn trace_section(sp: &SectionProblem, resolution: usize) -> Result<SectionCurve> {
    if resolution < MIN_RESOLUTION {
        return Err(ToricError::InvalidParams(format!(
            "resolution >= {MIN_RESOLUTION} required (got {resolution})"
        )));
    }
    let tp = sp.torus();
    if sp.plane().rho() > tp.bounding_radius() {
        return Ok(SectionCurve::empty(0.0));
    }
    if sp.is_horizontal() {
        return circles_horizontal(sp, 4 * resolution);
    }

    let half = sp.disk_radius() + 2.0 / resolution as f64;
    let grid = Grid::sample(sp, resolution, half);
    let mut march = March::new(&grid, sp);
    march.run();
    let lines = march.chain();
    let lines = nodes::resolve_nodes(sp, lines, grid.cell_size(), &march.saddles);

    let diag = grid.cell_size() * std::f64::consts::SQRT_2;
    let mut curve = SectionCurve::empty(half);
    for line in lines {
        if line.points.len() < 2 {
            continue;
        }
        let ends_meet = line.points[0].dist(*line.points.last().unwrap()) <= diag;
        curve.closed.push(line.closed || ends_meet);
        curve.polylines2d.push(line.points);
    }
    Ok(embed_section(curve, sp))
}

struct March<'a> {
    grid: &'a Grid,
    sp: &'a SectionProblem,
    edge_points: HashMap<u64, u32>,
    points: Vec<Point2>,
    segments: Vec<(u32, u32)>,
    saddles: Vec<Point2>,
}

#[derive(Clone, Copy)]
enum Edge {
    Bottom,
    Right,
    Top,
    Left,
}

impl<'a> March<'a> {
    fn new(grid: &'a Grid, sp: &'a SectionProblem) -> Self {
        Self {
            grid,
            sp,
            edge_points: HashMap::new(),
            points: Vec::new(),
            segments: Vec::new(),
            saddles: Vec::new(),
        }
    }

    fn run(&mut self) {
        let n = self.grid.n;
        for j in 0..n {
            for i in 0..n {
                self.cell(i, j);
            }
        }
    }

    fn cell(&mut self, i: usize, j: usize) {
        let g = self.grid;
        let c0 = g.negative(i, j);
        let c1 = g.negative(i + 1, j);
        let c2 = g.negative(i + 1, j + 1);
        let c3 = g.negative(i, j + 1);
        let crossings = [c0 != c1, c1 != c2, c3 != c2, c0 != c3];
        let count = crossings.iter().filter(|c| **c).count();
        match count {
            0 => {}
            2 => {
                let mut found = [Edge::Bottom; 2];
                let mut k = 0;
                for (edge, hit) in [Edge::Bottom, Edge::Right, Edge::Top, Edge::Left]
                    .into_iter()
                    .zip(crossings)
                {
                    if hit {
                        found[k] = edge;
                        k += 1;
                    }
                }
                self.segment(i, j, found[0], found[1]);
            }
            4 => {
                let h = g.cell_size();
                let v = g.vertex(i, j);
                let center = Point2::new(v.t + 0.5 * h, v.w + 0.5 * h);
                self.saddles.push(center);
                let center_negative = section_residual(center.t, center.w, self.sp) < 0.0;
                if center_negative == c0 {
                    // c0 and c2 join through the center; cut off corners 1 and 3
                    self.segment(i, j, Edge::Bottom, Edge::Right);
                    self.segment(i, j, Edge::Top, Edge::Left);
                } else {
                    self.segment(i, j, Edge::Left, Edge::Bottom);
                    self.segment(i, j, Edge::Right, Edge::Top);
                }
            }
            _ => unreachable!("a square cell has an even number of sign changes"),
        }
    }

    fn segment(&mut self, i: usize, j: usize, a: Edge, b: Edge) {
        let pa = self.edge_point(i, j, a);
        let pb = self.edge_point(i, j, b);
        self.segments.push((pa, pb));
    }

    fn edge_point(&mut self, i: usize, j: usize, edge: Edge) -> u32 {
        let stride = (self.grid.n + 1) as u64;
        // horizontal edge from (i, j) has even id, vertical odd
        let (i0, j0, i1, j1, vertical) = match edge {
            Edge::Bottom => (i, j, i + 1, j, false),
            Edge::Top => (i, j + 1, i + 1, j + 1, false),
            Edge::Left => (i, j, i, j + 1, true),
            Edge::Right => (i + 1, j, i + 1, j + 1, true),
        };
        let id = 2 * (j0 as u64 * stride + i0 as u64) + vertical as u64;
        if let Some(&k) = self.edge_points.get(&id) {
            return k;
        }
        let p = self.refine(i0, j0, i1, j1);
        let k = self.points.len() as u32;
        self.points.push(p);
        self.edge_points.insert(id, k);
        k
    }

    fn refine(&self, i0: usize, j0: usize, i1: usize, j1: usize) -> Point2 {
        let g = self.grid;
        let mut a = g.vertex(i0, j0);
        let mut b = g.vertex(i1, j1);
        let mut fa = g.value(i0, j0);
        let mut fb = g.value(i1, j1);
        if fa.abs() <= BISECTION_TOL {
            return a;
        }
        if fb.abs() <= BISECTION_TOL {
            return b;
        }
        for _ in 0..MAX_BISECTION {
            let m = Point2::new(0.5 * (a.t + b.t), 0.5 * (a.w + b.w));
            if m == a || m == b {
                break;
            }
            let fm = section_residual(m.t, m.w, self.sp);
            if fm.abs() <= BISECTION_TOL {
                return m;
            }
            if (fm < 0.0) == (fa < 0.0) {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
        }
        if fa.abs() <= fb.abs() {
            a
        } else {
            b
        }
    }

    /// Joins segments sharing an edge point into polylines.
    fn chain(&self) -> Vec<Polyline> {
        const NONE: u32 = u32::MAX;
        let count = self.points.len();
        let mut adj = vec![[NONE; 2]; count];
        for &(a, b) in &self.segments {
            for (from, to) in [(a, b), (b, a)] {
                let slot = &mut adj[from as usize];
                if slot[0] == NONE {
                    slot[0] = to;
                } else {
                    slot[1] = to;
                }
            }
        }
        let degree = |k: usize| adj[k].iter().filter(|v| **v != NONE).count();

        let mut visited = vec![false; count];
        let walk = |start: usize, visited: &mut Vec<bool>| -> Polyline {
            let mut points = vec![self.points[start]];
            visited[start] = true;
            let mut prev = NONE;
            let mut cur = start as u32;
            let mut closed = false;
            loop {
                let [n0, n1] = adj[cur as usize];
                let next = if n0 != prev && n0 != NONE { n0 } else { n1 };
                // a two-point cycle lists the same neighbour twice
                let next = if next == NONE || (next == prev && n0 == n1) {
                    NONE
                } else {
                    next
                };
                if next == NONE {
                    break;
                }
                if next as usize == start {
                    closed = true;
                    break;
                }
                if visited[next as usize] {
                    break;
                }
                visited[next as usize] = true;
                points.push(self.points[next as usize]);
                prev = cur;
                cur = next;
            }
            Polyline { points, closed }
        };

        let mut lines = Vec::new();
        // open chains first, from their free ends
        for k in 0..count {
            if !visited[k] && degree(k) == 1 {
                lines.push(walk(k, &mut visited));
            }
        }
        for k in 0..count {
            if !visited[k] {
                lines.push(walk(k, &mut visited));
            }
        }
        for line in &mut lines {
            dedup(line, self.grid.half);
        }
        lines.retain(|l| !l.points.is_empty());
        lines
    }
}

/// Drops repeated points, which appear when the residual vanishes exactly
/// at a grid vertex shared by several crossing edges.
fn dedup(line: &mut Polyline, scale: f64) {
    let eps = 1e-13 * scale.max(1.0);
    line.points.dedup_by(|b, a| a.dist(*b) <= eps);
    if line.closed && line.points.len() > 1 {
        let first = line.points[0];
        if line.points.last().unwrap().dist(first) <= eps {
            line.points.pop();
        }
    }
}
