//! Polyline arrangements with exact rational coordinates, their intersection
//! graphs, planarisation, a BFS-level separator, and the extremal
//! four-clique construction.
//!
//! Arrangements must be in general position: distinct curves meet only in
//! transversal crossings of segment interiors, no point lies on three curves,
//! and a curve does not meet itself outside the joints of consecutive
//! segments. Violations are rejected, never perturbed away.

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Signed, Zero};
use rand::Rng as _;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::biclique::{exact_empty_pair, greedy_empty_pair, BicliquePair, EXACT_CAPACITY};
use crate::error::{Error, Result};
use crate::graph::DenseGraph;
use crate::rational::{parse_rational, to_f64, Rational};
use crate::rng::seeded;

/// Attempts per curve before [`random_curves`] gives up.
pub const MAX_RETRIES: usize = 1000;

/// Largest coordinate magnitude once all points are put over a common
/// denominator. Crossing coordinates and the dot products used to order them
/// along a curve stay well inside `i128` below this.
pub const MAX_GRID: i128 = 1 << 24;

/// The arrangement fits on an integer grid of side at most [`MAX_GRID`].
fn check_grid(curves: &[Polyline]) -> Result<()> {
    let too_big = |got: i128| Error::Capacity {
        what: "coordinate grid",
        got: usize::try_from(got).unwrap_or(usize::MAX),
        limit: MAX_GRID as usize,
    };
    let coords = || curves.iter().flat_map(|c| c.points()).flat_map(|p| [p.x, p.y]);
    let mut lcm: i128 = 1;
    for v in coords() {
        lcm = num_integer::lcm(lcm, *v.denom());
        if lcm > MAX_GRID {
            return Err(too_big(lcm));
        }
    }
    for v in coords() {
        match v.numer().checked_abs().and_then(|n| n.checked_mul(lcm / v.denom())) {
            Some(scaled) if scaled <= MAX_GRID => {}
            Some(scaled) => return Err(too_big(scaled)),
            None => return Err(too_big(i128::MAX)),
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(Rational::from_integer(x as i128), Rational::from_integer(y as i128))
    }

    fn sub(&self, o: &Point) -> (Rational, Rational) {
        (self.x - o.x, self.y - o.y)
    }
}

fn cross(a: (Rational, Rational), b: (Rational, Rational)) -> Rational {
    a.0 * b.1 - a.1 * b.0
}

fn dot(a: (Rational, Rational), b: (Rational, Rational)) -> Rational {
    a.0 * b.0 + a.1 * b.1
}

/// Sign of the turn `a -> b -> c`.
fn orient(a: &Point, b: &Point, c: &Point) -> i8 {
    let v = cross(b.sub(a), c.sub(a));
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// `c` is collinear with `a b` and inside its closed bounding box.
fn on_segment(a: &Point, b: &Point, c: &Point) -> bool {
    orient(a, b, c) == 0 && c.x >= a.x.min(b.x) && c.x <= a.x.max(b.x) && c.y >= a.y.min(b.y) && c.y <= a.y.max(b.y)
}

fn coord_json(r: &Rational) -> [i128; 2] {
    [*r.numer(), *r.denom()]
}

fn coord_from_json(v: &serde_json::Value) -> std::result::Result<Rational, String> {
    match v {
        serde_json::Value::Array(a) if a.len() == 2 => {
            let n = a[0].as_i64().ok_or("numerator must be an integer")?;
            let d = a[1].as_i64().ok_or("denominator must be an integer")?;
            if d == 0 {
                return Err("zero denominator".into());
            }
            Ok(Rational::new(n as i128, d as i128))
        }
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(|n| Rational::from_integer(n as i128))
            .ok_or_else(|| "coordinate must be an integer or [num, den]".into()),
        serde_json::Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
        _ => Err("coordinate must be [num, den]".into()),
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [coord_json(&self.x), coord_json(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[serde_json::Value; 2]>::deserialize(d)?;
        Ok(Point::new(
            coord_from_json(&x).map_err(D::Error::custom)?,
            coord_from_json(&y).map_err(D::Error::custom)?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Polyline {
    points: Vec<Point>,
}

impl Polyline {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::input("a polyline needs at least two points"));
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("consecutive polyline points must differ"));
        }
        Ok(Polyline { points })
    }

    pub fn segment(a: Point, b: Point) -> Result<Self> {
        Polyline::new(vec![a, b])
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.points.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn segment_count(&self) -> usize {
        self.points.len() - 1
    }
}

impl<'de> Deserialize<'de> for Polyline {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Polyline::new(Vec::<Point>::deserialize(d)?).map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    /// Curve indices, smaller first.
    pub curves: (usize, usize),
    /// Segment index on each curve.
    pub segments: (usize, usize),
    pub point: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Contact {
    None,
    Proper(Point),
    Touch,
}

fn contact_by_orientation(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> Contact {
    let o1 = orient(p1, p2, q1);
    let o2 = orient(p1, p2, q2);
    let o3 = orient(q1, q2, p1);
    let o4 = orient(q1, q2, p2);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        let d = p2.sub(p1);
        let t = cross(q1.sub(p1), q2.sub(q1)) / cross(d, q2.sub(q1));
        return Contact::Proper(Point::new(p1.x + t * d.0, p1.y + t * d.1));
    }
    if (o1 == 0 && on_segment(p1, p2, q1))
        || (o2 == 0 && on_segment(p1, p2, q2))
        || (o3 == 0 && on_segment(q1, q2, p1))
        || (o4 == 0 && on_segment(q1, q2, p2))
    {
        return Contact::Touch;
    }
    Contact::None
}

/// Consecutive segments `a b`, `b c` of one curve overlap beyond the joint.
fn folds_back(a: &Point, b: &Point, c: &Point) -> bool {
    orient(a, b, c) == 0 && dot(a.sub(b), c.sub(b)).is_positive()
}

struct Seg<'a> {
    curve: usize,
    index: usize,
    p: &'a Point,
    q: &'a Point,
}

fn all_segments(curves: &[Polyline]) -> Vec<Seg<'_>> {
    curves
        .iter()
        .enumerate()
        .flat_map(|(c, pl)| {
            pl.segments().enumerate().map(move |(i, (p, q))| Seg {
                curve: c,
                index: i,
                p,
                q,
            })
        })
        .collect()
}

fn position_error(s: &Seg, t: &Seg) -> Error {
    if s.curve == t.curve {
        Error::input(format!(
            "curve {} meets itself (segments {} and {})",
            s.curve, s.index, t.index
        ))
    } else {
        Error::input(format!(
            "curves {} and {} are not in general position (segments {} and {} touch or overlap)",
            s.curve, t.curve, s.index, t.index
        ))
    }
}

fn make_crossing(s: &Seg, t: &Seg, point: Point) -> Crossing {
    if s.curve < t.curve {
        Crossing {
            curves: (s.curve, t.curve),
            segments: (s.index, t.index),
            point,
        }
    } else {
        Crossing {
            curves: (t.curve, s.curve),
            segments: (t.index, s.index),
            point,
        }
    }
}

fn finish(mut out: Vec<Crossing>) -> Result<Vec<Crossing>> {
    out.sort_by_key(|c| (c.curves, c.segments));
    let mut at: HashMap<&Point, (usize, usize)> = HashMap::new();
    for c in &out {
        if let Some(prev) = at.insert(&c.point, c.curves) {
            return Err(Error::input(format!(
                "curves {:?} and {:?} cross at the same point",
                prev, c.curves
            )));
        }
    }
    Ok(out)
}

/// All crossings, testing every segment pair with orientation predicates.
/// Rejects arrangements that are not in general position.
pub fn crossings(curves: &[Polyline]) -> Result<Vec<Crossing>> {
    check_grid(curves)?;
    let segs = all_segments(curves);
    let mut out = Vec::new();
    for (i, s) in segs.iter().enumerate() {
        for t in &segs[i + 1..] {
            if s.curve == t.curve && t.index == s.index + 1 {
                if folds_back(s.p, s.q, t.q) {
                    return Err(position_error(s, t));
                }
                continue;
            }
            match contact_by_orientation(s.p, s.q, t.p, t.q) {
                Contact::None => {}
                Contact::Touch => return Err(position_error(s, t)),
                Contact::Proper(_) if s.curve == t.curve => return Err(position_error(s, t)),
                Contact::Proper(p) => out.push(make_crossing(s, t, p)),
            }
        }
    }
    finish(out)
}

fn contact_by_parameters(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> Contact {
    let d1 = p2.sub(p1);
    let d2 = q2.sub(q1);
    let w = q1.sub(p1);
    let denom = cross(d1, d2);
    let zero = Rational::zero();
    let one = Rational::one();
    if denom.is_zero() {
        if !cross(w, d1).is_zero() {
            return Contact::None;
        }
        // Collinear: compare the projections onto d1.
        let len = dot(d1, d1);
        let a = dot(w, d1) / len;
        let b = dot(q2.sub(p1), d1) / len;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        return if hi < zero || lo > one {
            Contact::None
        } else {
            Contact::Touch
        };
    }
    let t = cross(w, d2) / denom;
    let u = cross(w, d1) / denom;
    if t < zero || t > one || u < zero || u > one {
        Contact::None
    } else if t > zero && t < one && u > zero && u < one {
        Contact::Proper(Point::new(p1.x + t * d1.0, p1.y + t * d1.1))
    } else {
        Contact::Touch
    }
}

/// Same result as [`crossings`], computed independently: segments sorted by
/// their left edge, pairs filtered by bounding boxes, and intersections found
/// by solving for the two segment parameters.
pub fn crossings_bbox(curves: &[Polyline]) -> Result<Vec<Crossing>> {
    check_grid(curves)?;
    let segs = all_segments(curves);
    let bbox = |s: &Seg| (s.p.x.min(s.q.x), s.p.x.max(s.q.x), s.p.y.min(s.q.y), s.p.y.max(s.q.y));
    let boxes: Vec<_> = segs.iter().map(bbox).collect();
    let mut order: Vec<usize> = (0..segs.len()).collect();
    order.sort_by(|&a, &b| boxes[a].0.cmp(&boxes[b].0));
    let mut out = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if boxes[j].0 > boxes[i].1 {
                break;
            }
            if boxes[j].2 > boxes[i].3 || boxes[j].3 < boxes[i].2 {
                continue;
            }
            let (s, t) = if (segs[i].curve, segs[i].index) < (segs[j].curve, segs[j].index) {
                (&segs[i], &segs[j])
            } else {
                (&segs[j], &segs[i])
            };
            let c = contact_by_parameters(s.p, s.q, t.p, t.q);
            if s.curve == t.curve && t.index == s.index + 1 {
                // Sharing the joint is expected; anything collinear past it is not.
                let d1 = s.q.sub(s.p);
                let d2 = t.q.sub(t.p);
                if cross(d1, d2).is_zero() && dot(d1, d2).is_negative() {
                    return Err(position_error(s, t));
                }
                continue;
            }
            match c {
                Contact::None => {}
                Contact::Touch => return Err(position_error(s, t)),
                Contact::Proper(_) if s.curve == t.curve => return Err(position_error(s, t)),
                Contact::Proper(p) => out.push(make_crossing(s, t, p)),
            }
        }
    }
    finish(out)
}

/// Curves in general position together with their crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveArrangement {
    curves: Vec<Polyline>,
    crossings: Vec<Crossing>,
}

impl CurveArrangement {
    pub fn new(curves: Vec<Polyline>) -> Result<Self> {
        let crossings = crossings(&curves)?;
        Ok(CurveArrangement { curves, crossings })
    }

    pub fn curves(&self) -> &[Polyline] {
        &self.curves
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn segment_count(&self) -> usize {
        self.curves.iter().map(Polyline::segment_count).sum()
    }

    /// Parses a JSON list of polylines.
    pub fn from_json(s: &str) -> Result<Self> {
        let curves: Vec<Polyline> = serde_json::from_str(s).map_err(|e| Error::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        CurveArrangement::new(curves)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.curves).expect("polylines serialise")
    }
}

/// Vertices are curves, joined when they cross at least once.
pub fn intersection_graph(a: &CurveArrangement) -> DenseGraph {
    let mut g = DenseGraph::empty(a.len());
    for c in a.crossings() {
        g.add_edge(c.curves.0, c.curves.1);
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlanarVertex {
    /// `end` is 0 for the first point of the curve, 1 for the last.
    Endpoint {
        curve: usize,
        end: usize,
    },
    Crossing {
        index: usize,
    },
}

/// The plane graph of an arrangement: curve endpoints and crossings as
/// vertices, the pieces of curves between them as edges. Curve `c` owns
/// vertices `2c` and `2c + 1`; crossing `i` is vertex `2n + i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Planarization {
    pub vertices: Vec<PlanarVertex>,
    /// Edges in curve order; parallel edges are kept.
    pub arcs: Vec<(usize, usize)>,
    /// Curve that each arc belongs to.
    pub owner: Vec<usize>,
}

impl Planarization {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.arcs {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Curves passing through a vertex.
    pub fn curves_at(&self, v: usize, a: &CurveArrangement) -> Vec<usize> {
        match self.vertices[v] {
            PlanarVertex::Endpoint { curve, .. } => vec![curve],
            PlanarVertex::Crossing { index } => {
                let (x, y) = a.crossings()[index].curves;
                vec![x, y]
            }
        }
    }

    /// Each curve contributes one more arc than it has crossings, and each
    /// crossing lies on two curves.
    pub fn euler_consistent(&self, a: &CurveArrangement) -> bool {
        let mut on_curve = vec![0usize; a.len()];
        for c in a.crossings() {
            on_curve[c.curves.0] += 1;
            on_curve[c.curves.1] += 1;
        }
        let expected: usize = on_curve.iter().map(|k| k + 1).sum();
        self.arcs.len() == expected
            && self.vertices.len() == 2 * a.len() + a.crossings().len()
            && on_curve.iter().sum::<usize>() == 2 * a.crossings().len()
    }
}

pub fn planarize(a: &CurveArrangement) -> Planarization {
    let n = a.len();
    let mut vertices: Vec<PlanarVertex> = (0..n)
        .flat_map(|curve| [0, 1].map(|end| PlanarVertex::Endpoint { curve, end }))
        .collect();
    vertices.extend((0..a.crossings().len()).map(|index| PlanarVertex::Crossing { index }));
    // (segment, position along it, vertex) for every crossing on each curve.
    let mut stops: Vec<Vec<(usize, Rational, usize)>> = vec![Vec::new(); n];
    for (i, c) in a.crossings().iter().enumerate() {
        for (curve, seg) in [(c.curves.0, c.segments.0), (c.curves.1, c.segments.1)] {
            let pts = a.curves()[curve].points();
            let along = dot(c.point.sub(&pts[seg]), pts[seg + 1].sub(&pts[seg]));
            stops[curve].push((seg, along, 2 * n + i));
        }
    }
    let mut arcs = Vec::new();
    let mut owner = Vec::new();
    for (curve, mut list) in stops.into_iter().enumerate() {
        list.sort();
        let mut prev = 2 * curve;
        for (_, _, v) in list {
            arcs.push((prev, v));
            owner.push(curve);
            prev = v;
        }
        arcs.push((prev, 2 * curve + 1));
        owner.push(curve);
    }
    Planarization { vertices, arcs, owner }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparatorMethod {
    /// No component was too large.
    Empty,
    /// One BFS level.
    Level,
    /// Two BFS levels around the median.
    Bands,
    /// Two BFS levels plus a fundamental cycle of the BFS tree in the band between them.
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separator {
    pub vertices: Vec<usize>,
    /// Largest component after removing `vertices`.
    pub max_component: usize,
    /// `floor(2|V| / 3)`.
    pub limit: usize,
    pub method: SeparatorMethod,
}

fn largest_component(adj: &[Vec<usize>], removed: &[bool]) -> usize {
    let mut seen = removed.to_vec();
    let mut best = 0;
    let mut queue = VecDeque::new();
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut size = 0;
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        best = best.max(size);
    }
    best
}

fn bfs(adj: &[Vec<usize>], root: usize) -> (Vec<usize>, Vec<usize>) {
    let mut depth = vec![usize::MAX; adj.len()];
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([root]);
    depth[root] = 0;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    (depth, parent)
}

/// Non-tree edges of the band tried as fundamental cycles.
const CYCLE_CANDIDATES: usize = 48;

/// Separator of a graph given by adjacency lists: removing it leaves no
/// component larger than `2|V|/3`. Candidates are single BFS levels, the
/// two-level band cut around the median level, and that band cut plus a
/// fundamental cycle; the smallest valid one is returned. A median level is
/// always valid, so the bound holds on every input; the size is only measured.
pub fn graph_separator(adj: &[Vec<usize>]) -> Separator {
    let n = adj.len();
    let limit = 2 * n / 3;
    let mut removed = vec![false; n];
    let mut best = Separator {
        vertices: Vec::new(),
        max_component: largest_component(adj, &removed),
        limit,
        method: SeparatorMethod::Empty,
    };
    if best.max_component <= limit {
        return best;
    }
    // The component above the limit; there is exactly one.
    let mut start = 0;
    loop {
        let (d, _) = bfs(adj, start);
        if d.iter().filter(|&&x| x != usize::MAX).count() > limit {
            break;
        }
        start = (start + 1..n)
            .find(|&v| d[v] == usize::MAX)
            .expect("large component exists");
    }
    let (d, _) = bfs(adj, start);
    let root = (0..n)
        .filter(|&v| d[v] != usize::MAX)
        .max_by_key(|&v| (d[v], std::cmp::Reverse(v)))
        .unwrap();
    let (depth, parent) = bfs(adj, root);
    let height = depth.iter().filter(|&&x| x != usize::MAX).max().copied().unwrap_or(0);
    let mut levels = vec![Vec::new(); height + 1];
    for v in 0..n {
        if depth[v] != usize::MAX {
            levels[depth[v]].push(v);
        }
    }
    let size: usize = levels.iter().map(Vec::len).sum();
    let mut prefix = vec![0usize; height + 2];
    for i in 0..=height {
        prefix[i + 1] = prefix[i] + levels[i].len();
    }
    let mut consider = |vertices: Vec<usize>, method: SeparatorMethod, best: &mut Separator| {
        if !matches!(best.method, SeparatorMethod::Empty) && vertices.len() >= best.vertices.len() {
            return;
        }
        for &v in &vertices {
            removed[v] = true;
        }
        let max_component = largest_component(adj, &removed);
        for &v in &vertices {
            removed[v] = false;
        }
        if max_component <= limit {
            let mut vertices = vertices;
            vertices.sort_unstable();
            *best = Separator {
                vertices,
                max_component,
                limit,
                method,
            };
        }
    };

    let mut single: Vec<usize> = (0..=height)
        .filter(|&i| prefix[i] <= limit && size - prefix[i + 1] <= limit)
        .collect();
    single.sort_by_key(|&i| (levels[i].len(), prefix[i].max(size - prefix[i + 1]), i));
    if let Some(&i) = single.first() {
        consider(levels[i].clone(), SeparatorMethod::Level, &mut best);
    }

    // Band cut: levels l0 <= m < l2 chosen as in the planar separator
    // theorem; "level -1" and "level height + 1" are empty.
    let m = (0..=height).find(|&i| prefix[i + 1] * 2 >= size).unwrap_or(height);
    let level_len = |i: isize| -> usize {
        if i < 0 || i as usize > height {
            0
        } else {
            levels[i as usize].len()
        }
    };
    let l0 = (-1..=m as isize)
        .min_by_key(|&l| (level_len(l) + 2 * (m as isize - l) as usize, std::cmp::Reverse(l)))
        .unwrap();
    let l2 = (m as isize + 1..=height as isize + 1)
        .min_by_key(|&l| (level_len(l) + 2 * (l - m as isize - 1) as usize, l))
        .unwrap();
    let mut band: Vec<usize> = Vec::new();
    for l in [l0, l2] {
        if l >= 0 && (l as usize) <= height {
            band.extend_from_slice(&levels[l as usize]);
        }
    }
    let inside = |v: usize| depth[v] != usize::MAX && (depth[v] as isize) > l0 && (depth[v] as isize) < l2;
    let middle = (0..n).filter(|&v| inside(v)).count();
    if middle <= limit {
        consider(band, SeparatorMethod::Bands, &mut best);
    } else {
        let mut non_tree = Vec::new();
        for u in 0..n {
            if !inside(u) {
                continue;
            }
            for &v in &adj[u] {
                if u < v && inside(v) && parent[u] != v && parent[v] != u {
                    non_tree.push((u, v));
                }
            }
        }
        let step = (non_tree.len() / CYCLE_CANDIDATES).max(1);
        for &(u, v) in non_tree.iter().step_by(step).take(CYCLE_CANDIDATES) {
            // Tree paths from u and v up to their meeting point, stopping at the
            // first band level (which is removed anyway).
            let mut cycle = Vec::new();
            let (mut a, mut b) = (u, v);
            while a != b && inside(a) && inside(b) {
                if depth[a] >= depth[b] {
                    cycle.push(a);
                    a = parent[a];
                } else {
                    cycle.push(b);
                    b = parent[b];
                }
            }
            for mut x in [a, b] {
                while inside(x) {
                    cycle.push(x);
                    x = parent[x];
                }
            }
            cycle.extend_from_slice(&band);
            cycle.sort_unstable();
            cycle.dedup();
            consider(cycle, SeparatorMethod::Cycle, &mut best);
        }
    }
    best
}

pub fn planar_separator(p: &Planarization) -> Separator {
    graph_separator(&p.adjacency())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparatorBiclique {
    pub curves: usize,
    pub crossings: usize,
    pub planar_vertices: usize,
    pub planar_separator: Separator,
    /// Curves through a planar separator vertex.
    pub separator_curves: Vec<usize>,
    /// Components of the intersection graph once the separator curves are gone.
    pub components: usize,
    pub pair: BicliquePair,
    /// `|S| / sqrt(crossings)` for the planar separator `S`; absent without crossings.
    pub separator_ratio: Option<f64>,
    /// The pair was re-checked against the intersection graph.
    pub verified: bool,
}

/// Planar separator of the arrangement, lifted to the curves through it; the
/// remaining components of the intersection graph are packed into two groups
/// (largest first, each into the currently smaller group) and the groups are
/// cut to equal size.
pub fn separator_biclique(a: &CurveArrangement) -> SeparatorBiclique {
    let p = planarize(a);
    let sep = planar_separator(&p);
    let mut separator_curves: Vec<usize> = sep.vertices.iter().flat_map(|&v| p.curves_at(v, a)).collect();
    separator_curves.sort_unstable();
    separator_curves.dedup();
    let g = intersection_graph(a);
    let mut gone = vec![false; a.len()];
    for &c in &separator_curves {
        gone[c] = true;
    }
    let rest: Vec<usize> = (0..a.len()).filter(|&c| !gone[c]).collect();
    let mut comps: Vec<Vec<usize>> = g
        .induced(&rest)
        .components()
        .into_iter()
        .map(|c| c.into_iter().map(|i| rest[i]).collect())
        .collect();
    comps.sort_by_key(|c: &Vec<usize>| (std::cmp::Reverse(c.len()), c[0]));
    let mut groups: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for c in &comps {
        let s = usize::from(groups[1].len() < groups[0].len());
        groups[s].extend_from_slice(c);
    }
    let k = groups[0].len().min(groups[1].len());
    let pick = |grp: &Vec<usize>| {
        let mut v = grp.clone();
        v.sort_unstable();
        v.truncate(k);
        v
    };
    let pair = BicliquePair {
        a: pick(&groups[0]),
        b: pick(&groups[1]),
    };
    let verified = pair.is_empty_pair_in(&g);
    let crossings = a.crossings().len();
    SeparatorBiclique {
        curves: a.len(),
        crossings,
        planar_vertices: p.vertex_count(),
        separator_ratio: (crossings > 0).then(|| sep.vertices.len() as f64 / (crossings as f64).sqrt()),
        planar_separator: sep,
        separator_curves,
        components: comps.len(),
        pair,
        verified,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FourPartGraph {
    #[serde(rename = "graph6", serialize_with = "graph6_str")]
    pub graph: DenseGraph,
    pub parts: Vec<Vec<usize>>,
    /// `floor((1/4 + eps) n^2 / 2)`.
    pub budget: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub p: Rational,
    /// Samples rejected for exceeding the budget.
    pub resamples: usize,
}

fn graph6_str<S: Serializer>(g: &DenseGraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::graph6::encode(g))
}

/// Four cliques of sizes as equal as possible, with each pair between parts
/// present with the probability that makes the expected edge count equal
/// the budget `(1/4 + eps) n^2 / 2`. Samples over budget are redrawn.
pub fn extremal_four_part_graph(n: usize, eps: Rational, seed: u64) -> Result<FourPartGraph> {
    if n < 4 {
        return Err(Error::arg("n must be at least 4"));
    }
    let sizes: Vec<usize> = (0..4).map(|i| n / 4 + usize::from(i < n % 4)).collect();
    let mut parts = Vec::new();
    let mut next = 0;
    for s in &sizes {
        parts.push((next..next + s).collect::<Vec<_>>());
        next += s;
    }
    let nn = n as i128;
    let bound = (Rational::new(1, 4) + eps) * Rational::from_integer(nn * nn) / Rational::from_integer(2);
    let intra: usize = sizes.iter().map(|s| s * s.saturating_sub(1) / 2).sum();
    if bound < Rational::from_integer(intra as i128) {
        return Err(Error::arg(format!(
            "eps too small: the four cliques alone have {intra} edges, above the bound {}",
            to_f64(&bound)
        )));
    }
    let budget = *bound.floor().numer() as usize;
    let inter = n * (n - 1) / 2 - intra;
    let p = if inter == 0 {
        Rational::zero()
    } else {
        Rational::new((budget - intra).min(inter) as i128, inter as i128)
    };
    let pf = to_f64(&p);
    let mut rng = seeded(seed);
    let mut part_of = vec![0; n];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            part_of[v] = i;
        }
    }
    for resamples in 0..MAX_RETRIES {
        let mut g = DenseGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if part_of[u] == part_of[v] || (pf > 0.0 && rng.gen_bool(pf)) {
                    g.add_edge(u, v);
                }
            }
        }
        if g.edge_count() <= budget {
            return Ok(FourPartGraph {
                graph: g,
                parts,
                budget,
                p,
                resamples,
            });
        }
    }
    Err(Error::Generation(format!(
        "no sample within the edge budget after {MAX_RETRIES} draws"
    )))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub seed: u64,
    pub edges: usize,
    pub budget: usize,
    /// Largest balanced empty pair, i.e. bi-clique of the complement.
    pub biclique: usize,
    /// False when the greedy heuristic was used (above the exact capacity).
    pub exact: bool,
    pub log2_n: f64,
}

pub fn measure_biclique_growth(ns: &[usize], eps: Rational, seeds: &[u64]) -> Result<Vec<GrowthRow>> {
    let mut rows = Vec::new();
    for &n in ns {
        for &seed in seeds {
            let g = extremal_four_part_graph(n, eps, seed)?;
            let exact = n <= EXACT_CAPACITY;
            let pair = if exact {
                exact_empty_pair(&g.graph, EXACT_CAPACITY)?
            } else {
                greedy_empty_pair(&g.graph)
            };
            rows.push(GrowthRow {
                n,
                seed,
                edges: g.graph.edge_count(),
                budget: g.budget,
                biclique: pair.size(),
                exact,
                log2_n: (n as f64).log2(),
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomCurves {
    pub n: usize,
    pub segments: usize,
    /// Coordinates are integers in `[0, bbox]`.
    pub bbox: i64,
    /// Largest coordinate change between consecutive points; defaults to `bbox`.
    #[serde(default)]
    pub step: Option<i64>,
}

/// Seeded random-walk polylines with integer coordinates. A curve that would
/// break general position is redrawn, up to [`MAX_RETRIES`] times.
pub fn random_curves(params: &RandomCurves, seed: u64) -> Result<CurveArrangement> {
    if params.n == 0 || params.segments == 0 || params.bbox < 2 {
        return Err(Error::arg("n and segments must be positive and bbox at least 2"));
    }
    let step = params.step.unwrap_or(params.bbox).clamp(1, params.bbox);
    let mut rng = seeded(seed);
    let mut curves: Vec<Polyline> = Vec::new();
    let mut points: HashMap<Point, ()> = HashMap::new();
    for _ in 0..params.n {
        let mut accepted = None;
        for _ in 0..MAX_RETRIES {
            let mut pts = vec![Point::int(
                rng.gen_range(0..=params.bbox),
                rng.gen_range(0..=params.bbox),
            )];
            while pts.len() <= params.segments {
                let last = pts.last().unwrap();
                let (lx, ly) = (*last.x.numer() as i64, *last.y.numer() as i64);
                let x = (lx + rng.gen_range(-step..=step)).clamp(0, params.bbox);
                let y = (ly + rng.gen_range(-step..=step)).clamp(0, params.bbox);
                let p = Point::int(x, y);
                if p != *last {
                    pts.push(p);
                }
            }
            let candidate = Polyline::new(pts)?;
            if let Some(new_points) = fits(&curves, &candidate, &points) {
                accepted = Some((candidate, new_points));
                break;
            }
        }
        let Some((c, new_points)) = accepted else {
            return Err(Error::Generation(format!(
                "could not place curve {} in general position after {MAX_RETRIES} attempts",
                curves.len()
            )));
        };
        for p in new_points {
            points.insert(p, ());
        }
        curves.push(c);
    }
    CurveArrangement::new(curves)
}

/// Crossing points the new curve would add, or `None` if it breaks general position.
fn fits(curves: &[Polyline], c: &Polyline, taken: &HashMap<Point, ()>) -> Option<Vec<Point>> {
    let own: Vec<(&Point, &Point)> = c.segments().collect();
    for (i, s) in own.iter().enumerate() {
        for (j, t) in own.iter().enumerate().skip(i + 1) {
            if j == i + 1 {
                if folds_back(s.0, s.1, t.1) {
                    return None;
                }
            } else if contact_by_orientation(s.0, s.1, t.0, t.1) != Contact::None {
                return None;
            }
        }
    }
    let bbox = |a: &Point, b: &Point| (a.x.min(b.x), a.x.max(b.x), a.y.min(b.y), a.y.max(b.y));
    let own_boxes: Vec<_> = own.iter().map(|s| bbox(s.0, s.1)).collect();
    let mut new_points = Vec::new();
    for other in curves {
        for t in other.segments() {
            let tb = bbox(t.0, t.1);
            for (s, sb) in own.iter().zip(&own_boxes) {
                if sb.0 > tb.1 || tb.0 > sb.1 || sb.2 > tb.3 || tb.2 > sb.3 {
                    continue;
                }
                match contact_by_orientation(s.0, s.1, t.0, t.1) {
                    Contact::None => {}
                    Contact::Touch => return None,
                    Contact::Proper(p) => {
                        if taken.contains_key(&p) || new_points.contains(&p) {
                            return None;
                        }
                        new_points.push(p);
                    }
                }
            }
        }
    }
    Some(new_points)
}
