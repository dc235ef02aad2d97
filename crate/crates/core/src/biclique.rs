//! Balanced empty pairs (bi-cliques of the complement), fullness and
//! `(alpha, beta)`-density.

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{iter_mask, DenseGraph};
use crate::rational::{ceil_to_usize, Rational};
use crate::rng::Rng;

pub const EXACT_CAPACITY: usize = 28;
pub const EXACT_DENSITY_CAPACITY: usize = 22;
pub const DEFAULT_SAMPLES_PER_SIZE: usize = 10_000;

/// Disjoint equal-size vertex sets with no edge between them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliquePair {
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
}

impl BicliquePair {
    pub fn size(&self) -> usize {
        self.a.len()
    }

    fn normalized(mut a: Vec<usize>, mut b: Vec<usize>) -> Self {
        let k = a.len().min(b.len());
        a.truncate(k);
        b.truncate(k);
        a.sort_unstable();
        b.sort_unstable();
        BicliquePair { a, b }
    }

    /// Keeps the first `k` vertices of each side.
    pub fn truncated(&self, k: usize) -> Self {
        BicliquePair::normalized(
            self.a.iter().copied().take(k).collect(),
            self.b.iter().copied().take(k).collect(),
        )
    }

    /// Checks balance, disjointness and the absence of `A`-`B` edges in `g`.
    pub fn is_empty_pair_in(&self, g: &DenseGraph) -> bool {
        if self.a.len() != self.b.len() {
            return false;
        }
        let mut side = vec![0u8; g.n()];
        for (set, tag) in [(&self.a, 1), (&self.b, 2)] {
            for &v in set {
                if v >= g.n() || side[v] != 0 {
                    return false;
                }
                side[v] = tag;
            }
        }
        self.a.iter().all(|&u| self.b.iter().all(|&v| !g.has_edge(u, v)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairMode {
    Exact,
    Greedy,
}

pub fn max_balanced_empty_pair(g: &DenseGraph, mode: PairMode) -> Result<BicliquePair> {
    match mode {
        PairMode::Exact => exact_empty_pair(g, EXACT_CAPACITY),
        PairMode::Greedy => Ok(greedy_empty_pair(g)),
    }
}

struct Search<'a> {
    adj: &'a [u64],
    best: usize,
    best_pair: (u64, u64),
    ceiling: usize,
}

impl Search<'_> {
    // `a` is the current side A, `c` the vertices above min(A) with no
    // neighbour in A, `cand` the vertices that may still join A.
    fn grow(&mut self, a: u64, c: u64, cand: u64) {
        let size = (a.count_ones() as usize).min(c.count_ones() as usize);
        if size > self.best {
            self.best = size;
            self.best_pair = (a, c);
        }
        if self.best >= self.ceiling {
            return;
        }
        let k = self.best;
        // A vertex can only join A if it leaves more than `best` vertices for B.
        let mut useful = 0u64;
        for v in iter_mask(cand) {
            if (c & !self.adj[v] & !(1 << v)).count_ones() as usize > k {
                useful |= 1 << v;
            }
        }
        let mut rest = useful;
        while rest != 0 {
            if a.count_ones() as usize + rest.count_ones() as usize <= k {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let c2 = c & !self.adj[v] & !(1 << v);
            self.grow(a | 1 << v, c2, rest & !(1u64 << v));
            if self.best >= self.ceiling {
                return;
            }
        }
    }
}

/// Branch and bound over side `A` (built in increasing vertex order) with the
/// common non-neighbourhood as the pool for `B`; `min A < min B` removes the
/// swap symmetry.
pub fn exact_empty_pair(g: &DenseGraph, capacity: usize) -> Result<BicliquePair> {
    let n = g.n();
    if n > capacity || n > 64 {
        return Err(Error::Capacity {
            what: "vertices for exact bi-clique search",
            got: n,
            limit: capacity.min(64),
        });
    }
    let adj = g.masks();
    let mut s = Search {
        adj: &adj,
        best: 0,
        best_pair: (0, 0),
        ceiling: n / 2,
    };
    for a0 in 0..n {
        if n - a0 <= 2 * s.best + 1 {
            break;
        }
        let above = if a0 + 1 >= 64 { 0 } else { !0u64 << (a0 + 1) } & low_mask(n);
        let c = above & !adj[a0];
        s.grow(1 << a0, c, above);
        if s.best >= s.ceiling {
            break;
        }
    }
    let (a, c) = s.best_pair;
    let k = s.best;
    Ok(BicliquePair::normalized(
        iter_mask(a).take(k).collect(),
        iter_mask(c).take(k).collect(),
    ))
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Alternating peeling: each side in turn takes the vertex of its pool with
/// the fewest neighbours in the opposing pool (ties to the smaller index), and
/// the opposing pool loses that vertex's neighbourhood.
pub fn greedy_empty_pair(g: &DenseGraph) -> BicliquePair {
    let n = g.n();
    // pool[s][v]: v may still join side s.
    let mut pool = [vec![true; n], vec![true; n]];
    // into[s][v]: neighbours of v inside pool[1 - s].
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut into = [degrees.clone(), degrees];
    let mut sides: [Vec<usize>; 2] = [Vec::new(), Vec::new()];

    let remove = |pool: &mut [Vec<bool>; 2], into: &mut [Vec<usize>; 2], s: usize, v: usize| {
        if pool[s][v] {
            pool[s][v] = false;
            for u in g.neighbors(v) {
                into[1 - s][u] -= 1;
            }
        }
    };

    for turn in 0.. {
        let s = turn % 2;
        let pick = (0..n).filter(|&v| pool[s][v]).min_by_key(|&v| (into[s][v], v));
        let Some(v) = pick else { break };
        sides[s].push(v);
        remove(&mut pool, &mut into, 0, v);
        remove(&mut pool, &mut into, 1, v);
        for u in g.neighbors(v) {
            remove(&mut pool, &mut into, 1 - s, u);
        }
    }
    let [a, b] = sides;
    BicliquePair::normalized(a, b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullnessVerdict {
    pub full: bool,
    /// Set when the verdict is proven; greedy search cannot prove fullness.
    pub certain: bool,
    pub threshold: usize,
    pub witness: Option<BicliquePair>,
}

/// Every two sets of size at least `ceil(delta n)` are joined by an edge.
pub fn is_delta_full(g: &DenseGraph, delta: Rational, mode: PairMode) -> Result<FullnessVerdict> {
    let zero = Rational::from_integer(0);
    if delta <= zero || delta >= Rational::new(1, 2) {
        return Err(Error::arg("delta must lie strictly between 0 and 1/2"));
    }
    let threshold = ceil_to_usize(&(delta * Rational::from_integer(g.n() as i128)));
    let pair = max_balanced_empty_pair(g, mode)?;
    if pair.size() >= threshold {
        Ok(FullnessVerdict {
            full: false,
            certain: true,
            threshold,
            witness: Some(pair.truncated(threshold)),
        })
    } else {
        Ok(FullnessVerdict {
            full: true,
            certain: mode == PairMode::Exact,
            threshold,
            witness: None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityMode {
    Exact,
    Sampled { samples_per_size: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityVerdict {
    pub dense: bool,
    /// Sampled verdicts of "dense" are evidence, not proof.
    pub sampled: bool,
    pub witness: Option<Vec<usize>>,
}

fn induced_edges(adj: &[u64], mask: u64) -> u32 {
    iter_mask(mask).map(|v| (adj[v] & mask).count_ones()).sum::<u32>() / 2
}

/// Every induced subgraph on at least `alpha n` vertices has density at least
/// `beta`, with density `|E| / m^2`.
pub fn is_alpha_beta_dense(
    g: &DenseGraph,
    alpha: Rational,
    beta: Rational,
    mode: DensityMode,
) -> Result<DensityVerdict> {
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    if alpha <= zero || alpha > one || beta < zero || beta > one {
        return Err(Error::arg("need 0 < alpha <= 1 and 0 <= beta <= 1"));
    }
    let n = g.n();
    let min_size = ceil_to_usize(&(alpha * Rational::from_integer(n as i128))).max(1);
    let violates = |edges: usize, m: usize| Rational::new(edges as i128, (m * m) as i128) < beta;
    match mode {
        DensityMode::Exact => {
            if n > EXACT_DENSITY_CAPACITY {
                return Err(Error::Capacity {
                    what: "vertices for exact density check",
                    got: n,
                    limit: EXACT_DENSITY_CAPACITY,
                });
            }
            let adj = g.masks();
            // Smallest sets first: small sets are the likeliest violators.
            for m in min_size..=n {
                let mut mask: u64 = (1u64 << m) - 1;
                while mask < 1u64 << n {
                    if violates(induced_edges(&adj, mask) as usize, m) {
                        return Ok(DensityVerdict {
                            dense: false,
                            sampled: false,
                            witness: Some(iter_mask(mask).collect()),
                        });
                    }
                    // Gosper's hack: next mask with the same popcount.
                    let c = mask & mask.wrapping_neg();
                    let r = mask + c;
                    mask = (((r ^ mask) >> 2) / c) | r;
                }
            }
            Ok(DensityVerdict {
                dense: true,
                sampled: false,
                witness: None,
            })
        }
        DensityMode::Sampled { samples_per_size, seed } => {
            let mut rng: Rng = crate::rng::seeded(seed);
            for m in min_size..=n {
                for _ in 0..samples_per_size {
                    let mut set = sample(&mut rng, n, m).into_vec();
                    set.sort_unstable();
                    let h = g.induced(&set);
                    if violates(h.edge_count(), m) {
                        return Ok(DensityVerdict {
                            dense: false,
                            sampled: true,
                            witness: Some(set),
                        });
                    }
                    if m == n {
                        break;
                    }
                }
            }
            Ok(DensityVerdict {
                dense: true,
                sampled: true,
                witness: None,
            })
        }
    }
}
