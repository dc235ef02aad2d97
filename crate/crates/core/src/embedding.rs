//! Step-by-step embedding of an induced weak-2-subdivision of `H` into a
//! graph built from a reduced graph by a block model.
//!
//! Branch vertices are placed first, in the order of the admissibility
//! witness, then the two side vertices of each `H`-edge, edges sorted by
//! their earlier endpoint. Each placement strips the neighbourhood of the
//! new vertex from the candidate sets of the other active indices, so every
//! non-edge of the subdivision stays a non-edge.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::admissibility::{find_witness, verify_witness, AdmissibilityWitness, Host};
use crate::error::{Error, Result};
use crate::graph::{iter_bits, words_for, DenseGraph};
use crate::graph6;
use crate::rational::{parse_rational, serde_str, to_f64, Rational};
use crate::rng::{seeded, Rng};
use crate::subdivision::{
    allowed_extra_pairs, is_weak_subdivision, two_subdivision, weak_contains_weak, SubdivisionPattern,
    WeakSubdivisionWitness,
};
use crate::turan::WeightedCompleteGraph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularPartitionModel {
    pub reduced: WeightedCompleteGraph,
    pub block_size: usize,
    pub p_in: f64,
    pub seed: u64,
}

/// Samples the block model: blocks of `block_size` consecutive vertices,
/// pairs inside a block joined with probability `p_in`, pairs between
/// blocks `i` and `j` with probability `w(ij)`.
pub fn sample_block_model(m: &RegularPartitionModel) -> Result<(DenseGraph, Vec<Vec<usize>>)> {
    if m.block_size == 0 {
        return Err(Error::arg("block size must be at least 1"));
    }
    if !(0.0..=1.0).contains(&m.p_in) {
        return Err(Error::arg("p_in must lie in [0, 1]"));
    }
    let k = m.reduced.k();
    let n = k * m.block_size;
    let block = |v: usize| v / m.block_size;
    let mut probs = vec![vec![m.p_in; k]; k];
    for (i, j) in m.reduced.pairs() {
        let p = to_f64(&m.reduced.get(i, j));
        probs[i][j] = p;
        probs[j][i] = p;
    }
    let mut rng = seeded(m.seed);
    let mut g = DenseGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let p = probs[block(u)][block(v)];
            if p >= 1.0 || (p > 0.0 && rng.gen_bool(p)) {
                g.add_edge(u, v);
            }
        }
    }
    let partition = (0..k)
        .map(|i| (i * m.block_size..(i + 1) * m.block_size).collect())
        .collect();
    Ok((g, partition))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityEstimate {
    pub max_deviation: f64,
    /// Block pair where the maximum was seen.
    pub worst_pair: Option<(usize, usize)>,
    /// Always true: subsets are sampled, so this is a lower bound on the
    /// true irregularity.
    pub sampled: bool,
}

/// Samples `trials` subset pairs per block pair, each side at least a
/// `lambda` fraction of its block, and reports the largest density gap.
pub fn check_regularity_sampled(
    g: &DenseGraph,
    partition: &[Vec<usize>],
    lambda: f64,
    trials: usize,
    rng: &mut Rng,
) -> Result<RegularityEstimate> {
    if trials == 0 {
        return Err(Error::arg("trials must be at least 1"));
    }
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::arg("lambda must lie in (0, 1]"));
    }
    let mut best = RegularityEstimate {
        max_deviation: 0.0,
        worst_pair: None,
        sampled: true,
    };
    for i in 0..partition.len() {
        for j in i + 1..partition.len() {
            let (a, b) = (&partition[i], &partition[j]);
            if a.is_empty() || b.is_empty() {
                continue;
            }
            let full = to_f64(&g.pair_density(a, b)?);
            for _ in 0..trials {
                let sa = sample_subset(a, lambda, rng);
                let sb = sample_subset(b, lambda, rng);
                let dev = (to_f64(&g.pair_density(&sa, &sb)?) - full).abs();
                if dev > best.max_deviation || best.worst_pair.is_none() {
                    best.max_deviation = best.max_deviation.max(dev);
                    best.worst_pair = Some((i, j));
                }
            }
        }
    }
    Ok(best)
}

fn sample_subset(set: &[usize], lambda: f64, rng: &mut Rng) -> Vec<usize> {
    let min = ((lambda * set.len() as f64).ceil() as usize).clamp(1, set.len());
    let size = rng.gen_range(min..=set.len());
    let mut v: Vec<usize> = set.choose_multiple(rng, size).copied().collect();
    v.sort_unstable();
    v
}

type Bits = Vec<u64>;

fn bits_of(n: usize, vs: impl IntoIterator<Item = usize>) -> Bits {
    let mut b = vec![0u64; words_for(n)];
    for v in vs {
        b[v / 64] |= 1 << (v % 64);
    }
    b
}

fn count(b: &[u64]) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn meet_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn minus(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x &= !y;
    }
}

fn intersect(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x &= y;
    }
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Deviation check of a single vertex against each target set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Average {
    Yes,
    No,
    /// A target set is empty; its position in the target list.
    EmptyTarget(usize),
}

fn average_against(g: &DenseGraph, v: usize, targets: &[(&[u64], f64)], lambda: f64) -> Average {
    for (idx, (set, w)) in targets.iter().enumerate() {
        let size = count(set);
        if size == 0 {
            return Average::EmptyTarget(idx);
        }
        let ratio = meet_count(g.row(v), set) as f64 / size as f64;
        if (ratio - w).abs() >= lambda {
            return Average::No;
        }
    }
    Average::Yes
}

/// First candidate (in vertex order) whose neighbourhood meets every target
/// set `U_j` in a fraction within `lambda` of the expected weight `w_j`.
pub fn find_average_vertex(
    g: &DenseGraph,
    candidates: &[usize],
    targets: &[(Vec<usize>, f64)],
    lambda: f64,
) -> Result<Option<usize>> {
    if targets.iter().any(|(t, _)| t.is_empty()) {
        return Err(Error::arg("target sets must be nonempty"));
    }
    let sets: Vec<Bits> = targets.iter().map(|(t, _)| bits_of(g.n(), t.iter().copied())).collect();
    let refs: Vec<(&[u64], f64)> = sets.iter().zip(targets).map(|(s, (_, w))| (s.as_slice(), *w)).collect();
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable();
    Ok(sorted
        .into_iter()
        .find(|&v| average_against(g, v, &refs, lambda) == Average::Yes))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingParams {
    #[serde(with = "serde_str")]
    pub eps1: Rational,
    pub lambda: f64,
    pub beta: f64,
    /// Case 2 needs both candidate pools to have at least `delta n` vertices.
    pub delta: f64,
}

/// Images of the branch vertices and of the side vertices of `H`'s 2-subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    /// `branch[x]` for each vertex `x` of `H`.
    pub branch: Vec<usize>,
    /// `side[(x, y)]`: side vertex next to `x` on the edge `xy`.
    pub side: BTreeMap<(usize, usize), usize>,
}

impl Embedding {
    /// The map in the vertex numbering of [`two_subdivision`].
    pub fn subdivision_map(&self, h: &DenseGraph) -> Vec<usize> {
        let mut out = self.branch.clone();
        for (u, v) in h.edges() {
            out.push(self.side[&(u, v)]);
            out.push(self.side[&(v, u)]);
        }
        out
    }
}

impl Serialize for Embedding {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            branch: BTreeMap<String, usize>,
            side: BTreeMap<String, usize>,
        }
        Repr {
            branch: self
                .branch
                .iter()
                .enumerate()
                .map(|(x, &v)| (x.to_string(), v))
                .collect(),
            side: self.side.iter().map(|(&(x, y), &v)| (format!("{x},{y}"), v)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Embedding {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            branch: BTreeMap<String, usize>,
            side: BTreeMap<String, usize>,
        }
        let r = Repr::deserialize(d)?;
        let mut branch = vec![usize::MAX; r.branch.len()];
        for (k, v) in r.branch {
            let x: usize = k.parse().map_err(D::Error::custom)?;
            *branch
                .get_mut(x)
                .ok_or_else(|| D::Error::custom("branch key out of range"))? = v;
        }
        let mut side = BTreeMap::new();
        for (k, v) in r.side {
            let (x, y) = k
                .split_once(',')
                .ok_or_else(|| D::Error::custom("side key must be \"x,y\""))?;
            let x: usize = x.parse().map_err(D::Error::custom)?;
            let y: usize = y.parse().map_err(D::Error::custom)?;
            side.insert((x, y), v);
        }
        Ok(Embedding { branch, side })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "cause", rename_all = "snake_case")]
pub enum FailureCause {
    /// No vertex of `U_i` has enough neighbours inside `U_i`.
    NoDenseVertex {
        index: usize,
    },
    NoAverageVertex {
        index: usize,
    },
    /// A candidate set needed at this step is empty.
    EmptyCandidates {
        index: usize,
    },
    /// The averaging pools of a thin edge are smaller than `delta n`.
    BelowFullness {
        a: usize,
        b: usize,
    },
    NoCrossEdge {
        a: usize,
        b: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureReport {
    /// 1-based; steps `1..=h` place branch vertices.
    pub step: usize,
    #[serde(flatten)]
    pub cause: FailureCause,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Branch {
        index: usize,
    },
    /// `thin` is true when the reduced edge is below `eps1` (the fullness case).
    Edge {
        a: usize,
        b: usize,
        thin: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub kind: StepKind,
    /// `|U_i|` after the step, by index.
    pub sizes: Vec<usize>,
    /// Sets only shrank, placed vertices see no active foreign set, and a
    /// branch step left its own set inside the new vertex's neighbourhood.
    pub invariants_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Embedded(Embedding),
    Failed(FailureReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingRun {
    pub outcome: Outcome,
    pub steps: Vec<StepRecord>,
}

impl EmbeddingRun {
    pub fn embedding(&self) -> Option<&Embedding> {
        match &self.outcome {
            Outcome::Embedded(e) => Some(e),
            Outcome::Failed(_) => None,
        }
    }
}

struct State<'a> {
    g: &'a DenseGraph,
    h: usize,
    /// Reduced weight between the blocks of indices `i` and `j`.
    w: Vec<Vec<f64>>,
    u: Vec<Bits>,
    /// `(index, vertex)` for every placed vertex.
    placed: Vec<(usize, usize)>,
    branch_done: Vec<bool>,
    /// Unembedded edges per index.
    pending: Vec<usize>,
    lambda: f64,
    steps: Vec<StepRecord>,
}

impl State<'_> {
    fn active(&self, i: usize) -> bool {
        !self.branch_done[i] || self.pending[i] > 0
    }

    fn targets<'s>(&self, sets: &'s [Bits], own: usize) -> (Vec<usize>, Vec<(&'s [u64], f64)>) {
        let idx: Vec<usize> = (0..self.h).filter(|&j| j != own && self.active(j)).collect();
        let refs = idx.iter().map(|&j| (sets[j].as_slice(), self.w[own][j])).collect();
        (idx, refs)
    }

    /// First vertex of `pool` average against the active sets `sets[j]`, `j != own`.
    fn pick(&self, pool: &[u64], sets: &[Bits], own: usize, step: usize) -> std::result::Result<usize, FailureReport> {
        let (idx, refs) = self.targets(sets, own);
        for v in iter_bits(pool) {
            match average_against(self.g, v, &refs, self.lambda) {
                Average::Yes => return Ok(v),
                Average::No => {}
                Average::EmptyTarget(t) => {
                    return Err(FailureReport {
                        step,
                        cause: FailureCause::EmptyCandidates { index: idx[t] },
                    })
                }
            }
        }
        Err(FailureReport {
            step,
            cause: FailureCause::NoAverageVertex { index: own },
        })
    }

    fn all_average(&self, pool: &[u64], own: usize, step: usize) -> std::result::Result<Bits, FailureReport> {
        let (idx, refs) = self.targets(&self.u, own);
        let mut out = vec![0u64; pool.len()];
        for v in iter_bits(pool) {
            match average_against(self.g, v, &refs, self.lambda) {
                Average::Yes => out[v / 64] |= 1 << (v % 64),
                Average::No => {}
                Average::EmptyTarget(t) => {
                    return Err(FailureReport {
                        step,
                        cause: FailureCause::EmptyCandidates { index: idx[t] },
                    })
                }
            }
        }
        Ok(out)
    }

    fn nonempty(&self, i: usize, step: usize) -> std::result::Result<(), FailureReport> {
        if count(&self.u[i]) == 0 {
            Err(FailureReport {
                step,
                cause: FailureCause::EmptyCandidates { index: i },
            })
        } else {
            Ok(())
        }
    }

    fn record(&mut self, step: usize, kind: StepKind, before: &[Bits]) {
        let shrank = self.u.iter().zip(before).all(|(a, b)| is_subset(a, b));
        let separated = self.placed.iter().all(|&(i, v)| {
            (0..self.h).all(|j| j == i || !self.active(j) || meet_count(self.g.row(v), &self.u[j]) == 0)
        });
        let own = match kind {
            StepKind::Branch { index } => {
                let v = self.placed.last().expect("branch placed").1;
                is_subset(&self.u[index], self.g.row(v))
            }
            StepKind::Edge { .. } => true,
        };
        let sizes = self.u.iter().map(|s| count(s)).collect();
        self.steps.push(StepRecord {
            step,
            kind,
            sizes,
            invariants_ok: shrank && separated && own,
        });
    }
}

/// Runs the embedding. `witness` must show that the reduced graph restricted
/// to its image is `(H, eps1)`-admissible; `partition[q]` is the block of
/// reduced vertex `q`.
pub fn embed_weak_2_subdivision(
    g: &DenseGraph,
    partition: &[Vec<usize>],
    r: &WeightedCompleteGraph,
    h: &DenseGraph,
    witness: &AdmissibilityWitness,
    params: &EmbeddingParams,
) -> Result<EmbeddingRun> {
    if partition.len() != r.k() {
        return Err(Error::arg("partition must have one block per reduced vertex"));
    }
    if partition.iter().flatten().any(|&v| v >= g.n()) {
        return Err(Error::arg("partition names a vertex outside the graph"));
    }
    if !verify_witness(&Host::Weighted(r, params.eps1), h, witness) {
        return Err(Error::arg("witness does not certify admissibility"));
    }
    let hn = h.n();
    let n = g.n();
    let mut pos = vec![0usize; hn];
    for (i, &x) in witness.order.iter().enumerate() {
        pos[x] = i;
    }
    let blocks: Vec<usize> = witness.order.iter().map(|&x| witness.map[x]).collect();
    let w: Vec<Vec<f64>> = (0..hn)
        .map(|i| {
            (0..hn)
                .map(|j| {
                    if i == j {
                        0.0
                    } else {
                        to_f64(&r.get(blocks[i], blocks[j]))
                    }
                })
                .collect()
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = h
        .edges()
        .into_iter()
        .map(|(x, y)| (pos[x].min(pos[y]), pos[x].max(pos[y])))
        .collect();
    edges.sort_unstable();
    let mut pending = vec![0usize; hn];
    for &(a, b) in &edges {
        pending[a] += 1;
        pending[b] += 1;
    }
    let mut st = State {
        g,
        h: hn,
        w,
        u: blocks
            .iter()
            .map(|&q| bits_of(n, partition[q].iter().copied()))
            .collect(),
        placed: Vec::new(),
        branch_done: vec![false; hn],
        pending,
        lambda: params.lambda,
        steps: Vec::new(),
    };
    let mut branch = vec![usize::MAX; hn];
    let mut side = BTreeMap::new();
    let fail = |st: State, report: FailureReport| EmbeddingRun {
        outcome: Outcome::Failed(report),
        steps: st.steps,
    };

    for s in 0..hn {
        let step = s + 1;
        let before = st.u.clone();
        if let Err(e) = st.nonempty(s, step) {
            return Ok(fail(st, e));
        }
        let size = count(&st.u[s]) as f64;
        let dense: Vec<usize> = iter_bits(&st.u[s])
            .filter(|&v| meet_count(g.row(v), &st.u[s]) as f64 >= params.beta * size)
            .collect();
        if dense.is_empty() {
            return Ok(fail(
                st,
                FailureReport {
                    step,
                    cause: FailureCause::NoDenseVertex { index: s },
                },
            ));
        }
        let pool = bits_of(n, dense);
        let v = match st.pick(&pool, &st.u, s, step) {
            Ok(v) => v,
            Err(e) => return Ok(fail(st, e)),
        };
        st.branch_done[s] = true;
        for j in 0..hn {
            if j != s && st.active(j) {
                minus(&mut st.u[j], g.row(v));
            }
        }
        intersect(&mut st.u[s], g.row(v));
        st.placed.push((s, v));
        branch[witness.order[s]] = v;
        st.record(step, StepKind::Branch { index: s }, &before);
    }

    for (e, &(a, b)) in edges.iter().enumerate() {
        let step = hn + e + 1;
        let before = st.u.clone();
        let thin = r.get(blocks[a], blocks[b]) < params.eps1;
        for i in [a, b] {
            if let Err(e) = st.nonempty(i, step) {
                return Ok(fail(st, e));
            }
        }
        let (sa, sb) = if !thin {
            let u = match st.pick(&st.u[a], &st.u, a, step) {
                Ok(v) => v,
                Err(e) => return Ok(fail(st, e)),
            };
            let mut next = st.u.clone();
            for j in 0..hn {
                if j != a && st.active(j) {
                    minus(&mut next[j], g.row(u));
                }
            }
            let mut pool = st.u[b].clone();
            intersect(&mut pool, g.row(u));
            let w = match st.pick(&pool, &next, b, step) {
                Ok(v) => v,
                Err(e) => return Ok(fail(st, e)),
            };
            for j in 0..hn {
                if j != b && st.active(j) {
                    minus(&mut next[j], g.row(w));
                }
            }
            st.u = next;
            (u, w)
        } else {
            let wa = match st.all_average(&st.u[a], a, step) {
                Ok(p) => p,
                Err(e) => return Ok(fail(st, e)),
            };
            let wb = match st.all_average(&st.u[b], b, step) {
                Ok(p) => p,
                Err(e) => return Ok(fail(st, e)),
            };
            let need = params.delta * n as f64;
            if (count(&wa) as f64) < need || (count(&wb) as f64) < need {
                return Ok(fail(
                    st,
                    FailureReport {
                        step,
                        cause: FailureCause::BelowFullness { a, b },
                    },
                ));
            }
            let Some((x, y)) = iter_bits(&wa).find_map(|x| {
                let mut m = wb.clone();
                intersect(&mut m, g.row(x));
                let y = iter_bits(&m).next();
                y.map(|y| (x, y))
            }) else {
                return Ok(fail(
                    st,
                    FailureReport {
                        step,
                        cause: FailureCause::NoCrossEdge { a, b },
                    },
                ));
            };
            for j in a + 1..hn {
                if j != b && st.active(j) {
                    minus(&mut st.u[j], g.row(x));
                    minus(&mut st.u[j], g.row(y));
                }
            }
            minus(&mut st.u[a], g.row(y));
            minus(&mut st.u[b], g.row(x));
            (x, y)
        };
        st.pending[a] -= 1;
        st.pending[b] -= 1;
        st.placed.push((a, sa));
        st.placed.push((b, sb));
        let (xa, xb) = (witness.order[a], witness.order[b]);
        side.insert((xa, xb), sa);
        side.insert((xb, xa), sb);
        st.record(step, StepKind::Edge { a, b, thin }, &before);
    }
    Ok(EmbeddingRun {
        outcome: Outcome::Embedded(Embedding { branch, side }),
        steps: st.steps,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingCheck {
    /// All subdivision edges present and every other pair absent, except
    /// side vertices next to the same branch vertex.
    pub strict: bool,
    /// Same, but tolerating any extra edge the weak-2-subdivision definition
    /// allows (side vertices of edges sharing an endpoint).
    pub weak: bool,
    /// For complete `H`: the induced subgraph is a weak-subdivision of `K_h`.
    pub weak_subdivision: Option<bool>,
    pub diffs: Vec<String>,
}

impl EmbeddingCheck {
    pub fn ok(&self) -> bool {
        self.strict && self.weak_subdivision != Some(false)
    }
}

fn subdivision_label(h: &DenseGraph, v: usize) -> String {
    if v < h.n() {
        return format!("v{v}");
    }
    let e = (v - h.n()) / 2;
    let (x, y) = h.edges()[e];
    if (v - h.n()).is_multiple_of(2) {
        format!("s{x},{y}")
    } else {
        format!("s{y},{x}")
    }
}

/// Checks `map` (numbered as [`two_subdivision`] of `h`) against `g`.
pub fn verify_embedding(g: &DenseGraph, h: &DenseGraph, map: &[usize]) -> Result<EmbeddingCheck> {
    let sub = two_subdivision(h);
    if map.len() != sub.n() {
        return Err(Error::arg(format!("map must have {} entries", sub.n())));
    }
    let mut seen = HashSet::new();
    if map.iter().any(|&v| v >= g.n() || !seen.insert(v)) {
        return Err(Error::arg("map must be injective into the graph"));
    }
    let h_edges = h.edges();
    let owner = |v: usize| -> Option<usize> {
        (v >= h.n()).then(|| {
            let (x, y) = h_edges[(v - h.n()) / 2];
            if (v - h.n()).is_multiple_of(2) {
                x
            } else {
                y
            }
        })
    };
    let weak_allowed: HashSet<(usize, usize)> = allowed_extra_pairs(h).into_iter().collect();
    let mut check = EmbeddingCheck {
        strict: true,
        weak: true,
        weak_subdivision: None,
        diffs: Vec::new(),
    };
    for x in 0..sub.n() {
        for y in x + 1..sub.n() {
            let present = g.has_edge(map[x], map[y]);
            let required = sub.has_edge(x, y);
            if required && !present {
                check.strict = false;
                check.weak = false;
                check.diffs.push(format!(
                    "missing edge {}-{}",
                    subdivision_label(h, x),
                    subdivision_label(h, y)
                ));
            } else if !required && present {
                let same_branch = matches!((owner(x), owner(y)), (Some(p), Some(q)) if p == q);
                let weak_ok = weak_allowed.contains(&(x, y));
                if !same_branch {
                    check.strict = false;
                }
                if !weak_ok {
                    check.weak = false;
                }
                if !same_branch || !weak_ok {
                    check.diffs.push(format!(
                        "extra edge {}-{}{}",
                        subdivision_label(h, x),
                        subdivision_label(h, y),
                        if weak_ok {
                            " (allowed by the weak definition)"
                        } else {
                            ""
                        }
                    ));
                }
            }
        }
    }
    if h.edge_count() == h.n() * h.n().saturating_sub(1) / 2 && h.n() >= 3 {
        check.weak_subdivision = Some(is_weak_subdivision(&g.induced(map), h.n())?.is_some());
    }
    Ok(check)
}

/// For `H` realising a partial subdivision `p` of `K_5`: an induced
/// weak-subdivision of `K_5` inside the embedded vertices, in `g`'s labels.
pub fn extract_k5(
    g: &DenseGraph,
    p: &SubdivisionPattern,
    map: &[usize],
) -> Result<Option<(Vec<usize>, WeakSubdivisionWitness)>> {
    let local = g.induced(map);
    let subset = weak_contains_weak(p, &local)?;
    let Some(w) = is_weak_subdivision(&local.induced(&subset), p.t)? else {
        return Ok(None);
    };
    Ok(Some((subset.iter().map(|&i| map[i]).collect(), w)))
}

/// A batch of seeded runs on a block model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbedConfig {
    /// `K<t>` or a graph6 string.
    pub h: String,
    /// Defaults to weight 1/2 on every pair of `|V(H)|` blocks.
    #[serde(default)]
    pub reduced: Option<WeightedCompleteGraph>,
    pub block_size: usize,
    #[serde(default = "default_p_in")]
    pub p_in: f64,
    #[serde(with = "serde_str")]
    pub eps1: Rational,
    pub lambda: f64,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default)]
    pub delta: f64,
    pub seed_start: u64,
    pub seed_count: u64,
}

fn default_p_in() -> f64 {
    0.25
}

fn default_beta() -> f64 {
    0.2
}

impl EmbedConfig {
    pub fn pattern_graph(&self) -> Result<DenseGraph> {
        if let Some(t) = self.h.strip_prefix('K') {
            if let Ok(t) = t.parse::<usize>() {
                return Ok(DenseGraph::complete(t));
            }
        }
        graph6::decode(&self.h)
    }

    pub fn reduced_graph(&self, h: &DenseGraph) -> WeightedCompleteGraph {
        self.reduced
            .clone()
            .unwrap_or_else(|| WeightedCompleteGraph::constant(h.n(), parse_rational("1/2").expect("literal")))
    }

    pub fn params(&self) -> EmbeddingParams {
        EmbeddingParams {
            eps1: self.eps1,
            lambda: self.lambda,
            beta: self.beta,
            delta: self.delta,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatchRow {
    pub seed: u64,
    pub success: bool,
    /// Passed the strict check (and the subdivision check for complete `H`).
    pub verified: bool,
    pub failure_step: Option<usize>,
    pub cause: Option<String>,
    /// Smallest candidate set after the last completed step.
    pub min_set_size: usize,
    pub steps: usize,
}

fn cause_name(c: &FailureCause) -> &'static str {
    match c {
        FailureCause::NoDenseVertex { .. } => "no_dense_vertex",
        FailureCause::NoAverageVertex { .. } => "no_average_vertex",
        FailureCause::EmptyCandidates { .. } => "empty_candidates",
        FailureCause::BelowFullness { .. } => "below_fullness",
        FailureCause::NoCrossEdge { .. } => "no_cross_edge",
    }
}

/// One seed of a batch.
pub fn run_seed(
    config: &EmbedConfig,
    h: &DenseGraph,
    r: &WeightedCompleteGraph,
    witness: &AdmissibilityWitness,
    seed: u64,
) -> Result<(BatchRow, EmbeddingRun)> {
    let model = RegularPartitionModel {
        reduced: r.clone(),
        block_size: config.block_size,
        p_in: config.p_in,
        seed,
    };
    let (g, partition) = sample_block_model(&model)?;
    let run = embed_weak_2_subdivision(&g, &partition, r, h, witness, &config.params())?;
    let min_set_size = run
        .steps
        .last()
        .map(|s| s.sizes.iter().copied().min().unwrap_or(0))
        .unwrap_or(config.block_size);
    let row = match &run.outcome {
        Outcome::Embedded(e) => BatchRow {
            seed,
            success: true,
            verified: verify_embedding(&g, h, &e.subdivision_map(h))?.ok(),
            failure_step: None,
            cause: None,
            min_set_size,
            steps: run.steps.len(),
        },
        Outcome::Failed(f) => BatchRow {
            seed,
            success: false,
            verified: false,
            failure_step: Some(f.step),
            cause: Some(cause_name(&f.cause).to_string()),
            min_set_size,
            steps: run.steps.len(),
        },
    };
    Ok((row, run))
}

/// Runs every seed of the configuration, rows in seed order.
pub fn run_batch(config: &EmbedConfig) -> Result<Vec<BatchRow>> {
    let h = config.pattern_graph()?;
    let r = config.reduced_graph(&h);
    if r.k() != h.n() {
        return Err(Error::input("the reduced graph must have one vertex per vertex of H"));
    }
    let all: Vec<usize> = (0..r.k()).collect();
    let witness = find_witness(&Host::Weighted(&r, config.eps1), &all, &h)?
        .ok_or_else(|| Error::input("the reduced graph is not admissible for H"))?;
    let seeds: Vec<u64> = (config.seed_start..config.seed_start + config.seed_count).collect();
    let run = |&seed: &u64| run_seed(config, &h, &r, &witness, seed).map(|(row, _)| row);
    #[cfg(feature = "parallel")]
    let rows: Vec<Result<BatchRow>> = {
        use rayon::prelude::*;
        seeds.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Result<BatchRow>> = seeds.iter().map(run).collect();
    rows.into_iter().collect()
}

/// Fraction of successful seeds.
pub fn success_rate(rows: &[BatchRow]) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    rows.iter().filter(|r| r.success).count() as f64 / rows.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{half, rat};

    fn config(h: &str, n: usize, seeds: u64) -> EmbedConfig {
        EmbedConfig {
            h: h.into(),
            reduced: None,
            block_size: n,
            p_in: 0.25,
            eps1: rat(1, 5),
            lambda: 0.05,
            beta: 0.2,
            delta: 0.0,
            seed_start: 0,
            seed_count: seeds,
        }
    }

    #[test]
    fn block_model_extremes() {
        let m = RegularPartitionModel {
            reduced: WeightedCompleteGraph::constant(3, rat(0, 1)),
            block_size: 5,
            p_in: 0.0,
            seed: 1,
        };
        assert_eq!(sample_block_model(&m).unwrap().0.edge_count(), 0);
        let m = RegularPartitionModel {
            reduced: WeightedCompleteGraph::constant(3, rat(1, 1)),
            p_in: 1.0,
            ..m
        };
        let (g, part) = sample_block_model(&m).unwrap();
        assert_eq!(g, DenseGraph::complete(15));
        assert_eq!(part[2], vec![10, 11, 12, 13, 14]);
        let m = RegularPartitionModel { block_size: 0, ..m };
        assert!(sample_block_model(&m).is_err());
    }

    #[test]
    fn block_model_density_and_determinism() {
        let mut inside = 0;
        for seed in 0..20 {
            let m = RegularPartitionModel {
                reduced: WeightedCompleteGraph::constant(2, half()),
                block_size: 1000,
                p_in: 0.0,
                seed,
            };
            let (g, part) = sample_block_model(&m).unwrap();
            let d = to_f64(&g.pair_density(&part[0], &part[1]).unwrap());
            if (d - 0.5).abs() <= 0.05 {
                inside += 1;
            }
            if seed == 0 {
                assert_eq!(sample_block_model(&m).unwrap().0, g);
            }
        }
        assert_eq!(inside, 20);
    }

    #[test]
    fn regularity_examples() {
        let mut g = DenseGraph::empty(20);
        for u in 0..10 {
            for v in 10..20 {
                g.add_edge(u, v);
            }
        }
        let part = vec![(0..10).collect::<Vec<_>>(), (10..20).collect()];
        let mut rng = seeded(0);
        let r = check_regularity_sampled(&g, &part, 0.1, 50, &mut rng).unwrap();
        assert_eq!(r.max_deviation, 0.0);
        assert!(r.sampled);
        let r = check_regularity_sampled(&DenseGraph::empty(20), &part, 0.1, 50, &mut rng).unwrap();
        assert_eq!(r.max_deviation, 0.0);
        assert!(check_regularity_sampled(&g, &part, 0.1, 0, &mut rng).is_err());

        let m = RegularPartitionModel {
            reduced: WeightedCompleteGraph::constant(2, half()),
            block_size: 1000,
            p_in: 0.2,
            seed: 4,
        };
        let (g, part) = sample_block_model(&m).unwrap();
        let r = check_regularity_sampled(&g, &part, 0.1, 20, &mut rng).unwrap();
        assert!(r.max_deviation <= 0.1, "{}", r.max_deviation);
    }

    #[test]
    fn average_vertex_examples() {
        let mut g = DenseGraph::empty(8);
        for u in 0..4 {
            for v in 4..8 {
                g.add_edge(u, v);
            }
        }
        let t = vec![((4..8).collect::<Vec<_>>(), 1.0)];
        assert_eq!(find_average_vertex(&g, &[2, 1, 3], &t, 0.1).unwrap(), Some(1));
        let lonely = DenseGraph::empty(8);
        let t = vec![((4..8).collect::<Vec<_>>(), 0.5)];
        assert_eq!(find_average_vertex(&lonely, &[0, 1], &t, 0.1).unwrap(), None);
        assert!(find_average_vertex(&g, &[0], &[(vec![], 0.5)], 0.1).is_err());
    }

    #[test]
    fn tiny_blocks_fail_at_step_one() {
        let rows = run_batch(&config("K4", 1, 3)).unwrap();
        for r in rows {
            assert!(!r.success);
            assert_eq!(r.failure_step, Some(1));
        }
    }

    fn runs(cfg: &EmbedConfig, seeds: u64) -> Vec<(BatchRow, EmbeddingRun)> {
        let h = cfg.pattern_graph().unwrap();
        let r = cfg.reduced_graph(&h);
        let all: Vec<usize> = (0..r.k()).collect();
        let w = find_witness(&Host::Weighted(&r, cfg.eps1), &all, &h).unwrap().unwrap();
        (0..seeds)
            .map(|seed| run_seed(cfg, &h, &r, &w, seed).unwrap())
            .collect()
    }

    #[test]
    fn successful_runs_verify() {
        let mut cfg = config("K3", 600, 10);
        cfg.lambda = 0.1;
        let h = DenseGraph::complete(3);
        let out = runs(&cfg, 10);
        let mut successes = 0;
        for (seed, (row, run)) in out.iter().enumerate() {
            assert!(run.steps.iter().all(|s| s.invariants_ok));
            if let Some(e) = run.embedding() {
                successes += 1;
                assert!(row.verified);
                assert_eq!(e.subdivision_map(&h).len(), 9);
                assert!(run
                    .steps
                    .iter()
                    .all(|s| !matches!(s.kind, StepKind::Edge { thin: true, .. })));
                let again = runs(&cfg, seed as u64 + 1).pop().unwrap().1;
                assert_eq!(&again, run);
            }
        }
        assert!(successes >= 5, "{successes}");
    }

    #[test]
    fn thin_edge_takes_the_fullness_case() {
        let mut r = WeightedCompleteGraph::constant(3, rat(3, 10));
        r.set(0, 1, rat(1, 10));
        let mut cfg = config("K3", 600, 10);
        cfg.reduced = Some(r);
        cfg.lambda = 0.1;
        let mut thin_steps = 0;
        let mut successes = 0;
        for (row, run) in runs(&cfg, 10) {
            assert!(run.steps.iter().all(|s| s.invariants_ok));
            thin_steps += run
                .steps
                .iter()
                .filter(|s| matches!(s.kind, StepKind::Edge { thin: true, .. }))
                .count();
            if row.success {
                successes += 1;
                assert!(row.verified);
            }
        }
        assert!(thin_steps > 0 && successes > 0, "{thin_steps} {successes}");
    }

    #[test]
    fn verify_detects_tampering() {
        let h = DenseGraph::complete(3);
        let sub = two_subdivision(&h);
        let map: Vec<usize> = (0..sub.n()).collect();
        let c = verify_embedding(&sub, &h, &map).unwrap();
        assert!(c.ok() && c.weak && c.diffs.is_empty());
        let mut g = sub.clone();
        g.remove_edge(0, 3);
        let c = verify_embedding(&g, &h, &map).unwrap();
        assert!(!c.ok());
        assert_eq!(c.diffs, vec!["missing edge v0-s0,1".to_string()]);
        let mut g = sub.clone();
        g.add_edge(0, 4);
        let c = verify_embedding(&g, &h, &map).unwrap();
        assert!(!c.strict && !c.weak);
        // Side vertices next to different branch vertices on edges sharing one.
        let mut g = sub.clone();
        g.add_edge(4, 6);
        let c = verify_embedding(&g, &h, &map).unwrap();
        assert!(!c.strict && c.weak);
        let mut g = sub.clone();
        g.add_edge(3, 5);
        assert!(verify_embedding(&g, &h, &map).unwrap().ok());
    }

    #[test]
    fn embedding_json() {
        let e = Embedding {
            branch: vec![7, 9],
            side: [((0, 1), 3), ((1, 0), 4)].into_iter().collect(),
        };
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"branch":{"0":7,"1":9},"side":{"0,1":3,"1,0":4}}"#);
        assert_eq!(serde_json::from_str::<Embedding>(&s).unwrap(), e);
    }

    #[test]
    fn k5_extraction_from_a_partial_pattern() {
        let p = SubdivisionPattern::new(5, vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        let hp = p.realize();
        let sub = two_subdivision(&hp);
        let map: Vec<usize> = (0..sub.n()).collect();
        let (vs, w) = extract_k5(&sub, &p, &map).unwrap().unwrap();
        assert!(w.verify(&sub.induced(&vs)));
    }
}
