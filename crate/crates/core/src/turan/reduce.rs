//! Weight reduction: rounding stray weight values away, repairing the
//! weight-1 relation into an equivalence, and copying one representative's
//! weights across each class. Every move is logged so a run can be replayed.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DenseGraph;
use crate::rational::{half, is_unit_interval, serde_str, Rational};

use super::WeightedCompleteGraph;

pub type Triple = (usize, usize, usize);

/// All `(x, y, z)` with `x < y`, `w(xy) = 0` and `w(xz) + w(yz) >= 1`.
pub fn dangerous_triples(r: &WeightedCompleteGraph) -> Vec<Triple> {
    let k = r.k();
    let mut out = Vec::new();
    for x in 0..k {
        for y in x + 1..k {
            if !r.get(x, y).is_zero() {
                continue;
            }
            for z in 0..k {
                if z != x && z != y && r.get(x, z) + r.get(y, z) >= Rational::one() {
                    out.push((x, y, z));
                }
            }
        }
    }
    out
}

/// One transformation of the weight function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// Weights equal to `r` become `q`; with a partner, weights equal to
    /// `1 - r` become `1 - q`.
    Round {
        #[serde(with = "serde_str")]
        r: Rational,
        #[serde(with = "serde_str")]
        q: Rational,
        paired: bool,
    },
    /// `into` takes over the weights of `from` (`w(from, into) = 1`).
    Absorb { from: usize, into: usize },
    /// `left` and `right` both take over the weights of `center`.
    Merge { center: usize, left: usize, right: usize },
    /// Every member of a class takes over the weights of `representative`
    /// towards vertices outside the class.
    Copy { representative: usize, members: Vec<usize> },
}

impl Move {
    pub fn apply(&self, r: &mut WeightedCompleteGraph) {
        let k = r.k();
        match self {
            Move::Round { r: from, q, paired } => {
                let partner = Rational::one() - from;
                let pairs: Vec<_> = r.pairs().collect();
                for (x, y) in pairs {
                    let w = r.get(x, y);
                    if w == *from {
                        r.set(x, y, *q);
                    } else if *paired && w == partner {
                        r.set(x, y, Rational::one() - q);
                    }
                }
            }
            Move::Absorb { from, into } => {
                for u in 0..k {
                    if u != *from && u != *into {
                        r.set(*into, u, r.get(*from, u));
                    }
                }
            }
            Move::Merge { center, left, right } => {
                for u in 0..k {
                    if u != *center && u != *left && u != *right {
                        let w = r.get(*center, u);
                        r.set(*left, u, w);
                        r.set(*right, u, w);
                    }
                }
                r.set(*left, *right, r.get(*center, *right));
            }
            Move::Copy {
                representative,
                members,
            } => {
                for u in 0..k {
                    if members.contains(&u) {
                        continue;
                    }
                    let w = r.get(*representative, u);
                    for &y in members {
                        if y != *representative {
                            r.set(y, u, w);
                        }
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    #[serde(flatten)]
    pub action: Move,
    #[serde(with = "serde_str")]
    pub weight_before: Rational,
    #[serde(with = "serde_str")]
    pub weight_after: Rational,
    pub dangerous_before: Vec<Triple>,
    pub dangerous_after: Vec<Triple>,
    pub free_values_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub initial: WeightedCompleteGraph,
    pub steps: Vec<TraceStep>,
}

/// A broken trace property, located by step index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceIssue {
    pub step: usize,
    pub what: String,
}

impl ReductionTrace {
    pub fn new(initial: WeightedCompleteGraph) -> Self {
        ReductionTrace {
            initial,
            steps: Vec::new(),
        }
    }

    fn record(&mut self, current: &mut WeightedCompleteGraph, action: Move) {
        let weight_before = current.total();
        let dangerous_before = dangerous_triples(current);
        action.apply(current);
        self.steps.push(TraceStep {
            action,
            weight_before,
            weight_after: current.total(),
            dangerous_before,
            dangerous_after: dangerous_triples(current),
            free_values_after: current.free_values().len(),
        });
    }

    /// Appends a trace that starts where this one ends.
    pub fn extend(&mut self, other: ReductionTrace) {
        self.steps.extend(other.steps);
    }

    /// Every intermediate weighting, starting with the initial one.
    pub fn states(&self) -> Vec<WeightedCompleteGraph> {
        let mut cur = self.initial.clone();
        let mut out = vec![cur.clone()];
        for s in &self.steps {
            s.action.apply(&mut cur);
            out.push(cur.clone());
        }
        out
    }

    pub fn final_state(&self) -> WeightedCompleteGraph {
        self.states().pop().expect("states include the initial weighting")
    }

    /// Replays the moves and reports recorded numbers that do not match,
    /// total weight that increases, and rounding steps that lose a dangerous
    /// triple or do not remove a class `{v, 1 - v}` of stray values (the
    /// number of stray values itself may stay the same, since the target can
    /// be the complement of a value that is present). Repair and copy moves
    /// may lose dangerous triples; they preserve admissibility-freeness by
    /// duplicating a vertex instead.
    pub fn check(&self) -> Vec<TraceIssue> {
        let mut issues = Vec::new();
        let states = self.states();
        for (i, s) in self.steps.iter().enumerate() {
            let (a, b) = (&states[i], &states[i + 1]);
            let mut bad = |what: String| issues.push(TraceIssue { step: i, what });
            if a.total() != s.weight_before || b.total() != s.weight_after {
                bad("recorded weights do not match the replay".into());
            }
            if dangerous_triples(a) != s.dangerous_before || dangerous_triples(b) != s.dangerous_after {
                bad("recorded dangerous triples do not match the replay".into());
            }
            if s.weight_after > s.weight_before {
                bad("total weight increased".into());
            }
            if !matches!(s.action, Move::Round { .. }) {
                continue;
            }
            if let Some(t) = s
                .dangerous_before
                .iter()
                .find(|t| s.dangerous_after.binary_search(t).is_err())
            {
                bad(format!("dangerous triple {t:?} lost"));
            }
            if stray_classes(b) >= stray_classes(a) || b.free_values().len() > a.free_values().len() {
                bad("rounding did not remove a value class".into());
            }
        }
        issues
    }
}

/// Number of classes `{v, 1 - v}` met by the stray values.
pub fn stray_classes(r: &WeightedCompleteGraph) -> usize {
    let values = r.free_values();
    values
        .iter()
        .filter(|&&v| v < half() || !values.contains(&(Rational::one() - v)))
        .count()
}

/// The rounding target below `r`: the largest value under `r` (and not
/// under 1/2 when `r > 1/2`) that is a stray value or the complement of one.
fn round_target(values: &std::collections::BTreeSet<Rational>, r: Rational) -> Rational {
    let floor = if r > half() { half() } else { Rational::zero() };
    values
        .iter()
        .flat_map(|&v| [v, Rational::one() - v])
        .filter(|&v| v < r && v >= floor)
        .max()
        .unwrap_or(floor)
}

/// The rounding move for the current weights, or `None` once only 0, 1/2
/// and 1 remain. The largest stray value is handled first; when its
/// complement is also present the more frequent of the two is rounded.
pub fn next_round(r: &WeightedCompleteGraph) -> Option<Move> {
    let values = r.free_values();
    let top = *values.iter().next_back()?;
    let partner = Rational::one() - top;
    if !values.contains(&partner) {
        let q = round_target(&values, top);
        return Some(Move::Round {
            r: top,
            q,
            paired: false,
        });
    }
    let count = |v: Rational| r.weights().iter().filter(|&&w| w == v).count();
    let chosen = if count(partner) > count(top) { partner } else { top };
    let q = round_target(&values, chosen);
    Some(Move::Round {
        r: chosen,
        q,
        paired: true,
    })
}

/// Rounds weights until every weight is 0, 1/2 or 1.
pub fn collapse_weights(r: &WeightedCompleteGraph) -> (WeightedCompleteGraph, ReductionTrace) {
    let mut trace = ReductionTrace::new(r.clone());
    let mut cur = r.clone();
    while let Some(m) = next_round(&cur) {
        trace.record(&mut cur, m);
    }
    (cur, trace)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalized {
    /// Classes ordered by smallest member, members ascending.
    pub partition: Vec<Vec<usize>>,
    pub weights: WeightedCompleteGraph,
    pub trace: ReductionTrace,
}

fn check_three_valued(r: &WeightedCompleteGraph) -> Result<()> {
    if r.free_values().is_empty() {
        Ok(())
    } else {
        Err(Error::arg("weights must lie in {0, 1/2, 1}"))
    }
}

/// A repair move for a non-transitive weight-1 relation, if one is needed.
fn next_repair(r: &WeightedCompleteGraph) -> Option<Move> {
    let k = r.k();
    let one = Rational::one();
    let deg: Vec<Rational> = (0..k).map(|v| r.degree(v)).collect();
    let mut fallback = None;
    for y in 0..k {
        for x in 0..k {
            if x == y || r.get(x, y) != one {
                continue;
            }
            for z in x + 1..k {
                if z == y || r.get(y, z) != one || r.get(x, z) == one {
                    continue;
                }
                if deg[y] > deg[x] {
                    return Some(Move::Absorb { from: x, into: y });
                }
                if deg[y] > deg[z] {
                    return Some(Move::Absorb { from: z, into: y });
                }
                fallback.get_or_insert(Move::Merge {
                    center: y,
                    left: x,
                    right: z,
                });
            }
        }
    }
    fallback
}

/// Classes of the weight-1 relation.
fn one_classes(r: &WeightedCompleteGraph) -> Vec<Vec<usize>> {
    r.graph_where(|w| w.is_one()).components()
}

/// Repairs the weight-1 relation into an equivalence, then applies the class
/// copy operators in class order. The result has weight 1 inside classes and
/// a single weight, 0 or 1/2, between any two classes.
pub fn normalize_partition(r: &WeightedCompleteGraph) -> Result<Normalized> {
    check_three_valued(r)?;
    let mut trace = ReductionTrace::new(r.clone());
    let mut cur = r.clone();
    while let Some(m) = next_repair(&cur) {
        trace.record(&mut cur, m);
    }
    let partition = one_classes(&cur);
    for class in &partition {
        if class.len() < 2 {
            continue;
        }
        let representative = *class
            .iter()
            .min_by(|a, b| cur.degree(**a).cmp(&cur.degree(**b)).then(a.cmp(b)))
            .expect("nonempty class");
        trace.record(
            &mut cur,
            Move::Copy {
                representative,
                members: class.clone(),
            },
        );
    }
    Ok(Normalized {
        partition,
        weights: cur,
        trace,
    })
}

/// The weight between classes `a` and `b` if it is uniform.
pub fn block_weight(r: &WeightedCompleteGraph, a: &[usize], b: &[usize]) -> Option<Rational> {
    let w = r.get(a[0], b[0]);
    a.iter().all(|&x| b.iter().all(|&y| r.get(x, y) == w)).then_some(w)
}

/// Weight 1 inside every class and a uniform 0 or 1/2 between classes, with
/// the classes partitioning the vertex set.
pub fn is_block_uniform(r: &WeightedCompleteGraph, partition: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; r.k()];
    for class in partition {
        for &v in class {
            if v >= r.k() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    if seen.contains(&false) || partition.iter().any(Vec::is_empty) {
        return false;
    }
    let inside = partition
        .iter()
        .all(|c| c.iter().all(|&x| c.iter().all(|&y| x == y || r.get(x, y).is_one())));
    inside
        && partition.iter().enumerate().all(|(i, a)| {
            partition[i + 1..]
                .iter()
                .all(|b| matches!(block_weight(r, a, b), Some(w) if w.is_zero() || w == half()))
        })
}

/// Collapse followed by normalisation, with one combined trace.
pub fn reduce(r: &WeightedCompleteGraph) -> Result<Normalized> {
    let (collapsed, mut trace) = collapse_weights(r);
    let normalized = normalize_partition(&collapsed)?;
    trace.extend(normalized.trace);
    Ok(Normalized {
        partition: normalized.partition,
        weights: normalized.weights,
        trace,
    })
}

/// Completes a reduced graph that may miss edges: missing pairs get weight
/// 1, weights at most `eps1` drop to 0, and the rest grow by `eps1`, capped
/// at 1. `edges` lists `(x, y, w)` once per present pair.
pub fn complete_ize(k: usize, edges: &[(usize, usize, Rational)], eps1: Rational) -> Result<WeightedCompleteGraph> {
    if !(eps1 > Rational::zero() && eps1 < Rational::one()) {
        return Err(Error::arg("eps1 must lie in (0, 1)"));
    }
    let mut out = WeightedCompleteGraph::constant(k, Rational::one());
    let mut seen = DenseGraph::empty(k);
    for &(x, y, w) in edges {
        if x >= k || y >= k || x == y {
            return Err(Error::arg(format!("invalid pair ({x}, {y})")));
        }
        if seen.has_edge(x, y) {
            return Err(Error::arg(format!("pair ({x}, {y}) listed twice")));
        }
        if !is_unit_interval(&w) {
            return Err(Error::arg("weights must lie in [0, 1]"));
        }
        seen.add_edge(x, y);
        let v = if w <= eps1 {
            Rational::zero()
        } else {
            (w + eps1).min(Rational::one())
        };
        out.set(x, y, v);
    }
    Ok(out)
}
