//! Repair of self-crossings.
//!
//! Where two branches of the section cross (the lemniscate node, the two
//! points shared by the Villarceau circles) the sign grid cannot tell which
//! arcs continue into which, and the chained polylines turn sharply near
//! the crossing. Such nodes are located as saddle points of the residual
//! that lie on the curve. Polylines are cut open around each node and the
//! loose ends are re-paired so every branch continues straight through the
//! node, which is inserted as an explicit vertex.

use super::trace::Polyline;
use super::{section_residual, SectionProblem};
use crate::geometry::Point2;

/// Residual bound for accepting a saddle point as a node on the curve.
const NODE_TOL: f64 = 1e-10;
/// Chord turning angle above which a polyline vertex seeds a node search.
const CORNER_ANGLE: f64 = 0.5;
const CORNER_SPAN: usize = 2;

#[derive(Debug, Clone, Copy)]
struct Node {
    at: Point2,
    radius: f64,
}

pub(crate) fn resolve_nodes(
    sp: &SectionProblem,
    lines: Vec<Polyline>,
    cell: f64,
    saddles: &[Point2],
) -> Vec<Polyline> {
    let mut seeds: Vec<Point2> = saddles.to_vec();
    for line in &lines {
        seeds.extend(corners(line));
    }
    let mut nodes: Vec<Node> = Vec::new();
    for seed in seeds {
        let Some(node) = locate_node(sp, seed, cell) else {
            continue;
        };
        if nodes.iter().all(|n| n.at.dist(node.at) > cell) {
            nodes.push(node);
        }
    }
    if nodes.is_empty() {
        return lines;
    }
    rejoin(lines, &nodes)
}

fn corners(line: &Polyline) -> Vec<Point2> {
    let pts = &line.points;
    let n = pts.len();
    if n < 2 * CORNER_SPAN + 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let range = if line.closed {
        0..n
    } else {
        CORNER_SPAN..n - CORNER_SPAN
    };
    for k in range {
        let prev = pts[(k + n - CORNER_SPAN) % n];
        let next = pts[(k + CORNER_SPAN) % n];
        let d1 = pts[k] - prev;
        let d2 = next - pts[k];
        let (l1, l2) = (d1.norm(), d2.norm());
        if l1 == 0.0 || l2 == 0.0 {
            continue;
        }
        let cos = ((d1.t * d2.t + d1.w * d2.w) / (l1 * l2)).clamp(-1.0, 1.0);
        if cos.acos() > CORNER_ANGLE {
            out.push(pts[k]);
        }
    }
    out
}

/// Newton iteration on the gradient from `seed`. Accepts the limit when it
/// is a saddle of the residual lying on the curve within a few cells of the
/// seed.
fn locate_node(sp: &SectionProblem, seed: Point2, cell: f64) -> Option<Node> {
    let mut p = seed;
    let mut converged = false;
    for _ in 0..50 {
        let (g, [htt, htw, hww]) = sp.residual_derivatives(p)?;
        let det = htt * hww - htw * htw;
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let dt = -(hww * g[0] - htw * g[1]) / det;
        let dw = -(htt * g[1] - htw * g[0]) / det;
        p = Point2::new(p.t + dt, p.w + dw);
        if !(p.t.is_finite() && p.w.is_finite()) || p.dist(seed) > 4.0 * cell {
            return None;
        }
        if dt.hypot(dw) <= 1e-15 * (1.0 + p.norm()) {
            converged = true;
            break;
        }
    }
    if !converged || section_residual(p.t, p.w, sp).abs() > NODE_TOL {
        return None;
    }
    let (_, [htt, htw, hww]) = sp.residual_derivatives(p)?;
    let det = htt * hww - htw * htw;
    if det >= 0.0 {
        // an extremum on the curve is an isolated point, not a crossing
        return None;
    }
    // half-angle between the two branch tangents from the eigenvalues
    let mean = 0.5 * (htt + hww);
    let spread = (0.25 * (htt - hww).powi(2) + htw * htw).sqrt();
    let (pos, neg) = (mean + spread, mean - spread);
    let beta = (pos / -neg).sqrt().atan();
    let crossing = (2.0 * beta).min(std::f64::consts::PI - 2.0 * beta);
    let radius = (3.0 * cell / (0.5 * crossing).sin()).min(30.0 * cell);
    Some(Node { at: p, radius })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct End {
    piece: usize,
    // false: start of the piece, true: its last point
    tail: bool,
}

fn rejoin(lines: Vec<Polyline>, nodes: &[Node]) -> Vec<Polyline> {
    let near = |p: Point2| nodes.iter().position(|n| p.dist(n.at) < n.radius);

    let mut out = Vec::new();
    let mut pieces: Vec<Vec<Point2>> = Vec::new();
    // node index owning each piece end
    let mut owners: Vec<[Option<usize>; 2]> = Vec::new();

    for line in lines {
        let tags: Vec<Option<usize>> = line.points.iter().map(|p| near(*p)).collect();
        if tags.iter().all(Option::is_none) {
            out.push(line);
            continue;
        }
        let n = line.points.len();
        // rotate closed loops to start at a removed vertex so runs do not wrap
        let start = if line.closed {
            tags.iter().position(Option::is_some).unwrap()
        } else {
            0
        };
        let mut current: Vec<Point2> = Vec::new();
        let mut head_owner: Option<usize> = None;
        let mut last_tag: Option<usize> = None;
        for step in 0..n {
            let k = (start + step) % n;
            match tags[k] {
                Some(node) => {
                    if !current.is_empty() {
                        pieces.push(std::mem::take(&mut current));
                        owners.push([head_owner, Some(node)]);
                    }
                    last_tag = Some(node);
                }
                None => {
                    if current.is_empty() {
                        head_owner = last_tag;
                    }
                    current.push(line.points[k]);
                }
            }
        }
        if !current.is_empty() {
            let tail_owner = if line.closed { tags[start] } else { None };
            pieces.push(current);
            owners.push([head_owner, tail_owner]);
        }
    }

    // collect ends per node and pair them for the straightest continuation
    let mut joins: Vec<[Option<(End, usize)>; 2]> = vec![[None, None]; pieces.len()];
    for (node_index, node) in nodes.iter().enumerate() {
        let ends: Vec<End> = owners
            .iter()
            .enumerate()
            .flat_map(|(piece, o)| {
                [(false, o[0]), (true, o[1])]
                    .into_iter()
                    .filter(move |(_, owner)| *owner == Some(node_index))
                    .map(move |(tail, _)| End { piece, tail })
            })
            .collect();
        for (a, b) in pair_ends(&ends, &pieces, node.at) {
            joins[a.piece][a.tail as usize] = Some((b, node_index));
            joins[b.piece][b.tail as usize] = Some((a, node_index));
        }
    }

    let mut used = vec![false; pieces.len()];
    for first in 0..pieces.len() {
        if used[first] {
            continue;
        }
        // back up to a free end, if the chain has one
        let mut begin = End {
            piece: first,
            tail: false,
        };
        while let Some((other, _)) = joins[begin.piece][begin.tail as usize] {
            if other.piece == first {
                break;
            }
            begin = End {
                piece: other.piece,
                tail: !other.tail,
            };
        }
        let mut points = Vec::new();
        let mut closed = false;
        let mut at = begin;
        loop {
            used[at.piece] = true;
            let piece = &pieces[at.piece];
            if at.tail {
                points.extend(piece.iter().rev());
            } else {
                points.extend(piece.iter());
            }
            let exit = End {
                piece: at.piece,
                tail: !at.tail,
            };
            match joins[exit.piece][exit.tail as usize] {
                Some((next, node)) => {
                    points.push(nodes[node].at);
                    if next == begin {
                        closed = true;
                        break;
                    }
                    if used[next.piece] {
                        break;
                    }
                    at = next;
                }
                None => break,
            }
        }
        out.push(Polyline { points, closed });
    }
    out
}

/// Minimum-turning perfect matching of the ends meeting at `node`.
fn pair_ends(ends: &[End], pieces: &[Vec<Point2>], node: Point2) -> Vec<(End, End)> {
    let tip = |e: End| {
        let piece = &pieces[e.piece];
        if e.tail {
            *piece.last().unwrap()
        } else {
            piece[0]
        }
    };
    let unit = |v: Point2| {
        let l = v.norm();
        if l > 0.0 {
            Point2::new(v.t / l, v.w / l)
        } else {
            v
        }
    };
    // cost of arriving through `a` and leaving through `b`
    let cost = |a: End, b: End| {
        let din = unit(node - tip(a));
        let dout = unit(tip(b) - node);
        1.0 - (din.t * dout.t + din.w * dout.w)
    };

    if ends.len() <= 8 {
        let mut best = (f64::INFINITY, Vec::new());
        let mut current = Vec::new();
        let mut free: Vec<End> = ends.to_vec();
        if free.len() % 2 == 1 {
            free.pop();
        }
        search(&mut free, &mut current, 0.0, &cost, &mut best);
        best.1
    } else {
        let mut free: Vec<End> = ends.to_vec();
        let mut pairs = Vec::new();
        while free.len() >= 2 {
            let a = free.remove(0);
            let (k, _) = free.iter().enumerate().map(|(k, b)| (k, cost(a, *b))).fold(
                (0, f64::INFINITY),
                |acc, x| if x.1 < acc.1 { x } else { acc },
            );
            pairs.push((a, free.remove(k)));
        }
        pairs
    }
}

fn search(
    free: &mut Vec<End>,
    current: &mut Vec<(End, End)>,
    total: f64,
    cost: &impl Fn(End, End) -> f64,
    best: &mut (f64, Vec<(End, End)>),
) {
    if free.is_empty() {
        if total < best.0 {
            *best = (total, current.clone());
        }
        return;
    }
    let a = free.remove(0);
    for k in 0..free.len() {
        let b = free.remove(k);
        current.push((a, b));
        search(free, current, total + cost(a, b), cost, best);
        current.pop();
        free.insert(k, b);
    }
    free.insert(0, a);
}
