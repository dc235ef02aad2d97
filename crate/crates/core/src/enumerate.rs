//! Canonical forms and isomorph-free enumeration of small graphs.
//!
//! Canonical labelling is individualisation-refinement: refine an ordered
//! partition to an equitable one, branch on every vertex of the first
//! non-singleton cell, and keep the largest adjacency certificate over all
//! discrete leaves. Without automorphism pruning this is exponential on very
//! symmetric graphs, which is irrelevant at the sizes used here (n <= 12).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{iter_mask, DenseGraph};

pub const MAX_CANON_N: usize = 64;

/// Golden counts of unlabelled graphs on `n` vertices, `n = 0..=8`.
pub const GRAPH_COUNTS: [usize; 9] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346];

/// Upper-triangle adjacency bits of a graph under its canonical ordering;
/// two graphs are isomorphic iff their forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> DenseGraph {
        let mut g = DenseGraph::empty(self.n);
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.bits[k / 64] >> (k % 64) & 1 == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }
}

fn certificate(adj: &[u64], order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let total = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; total.div_ceil(64)];
    let mut k = 0;
    for j in 1..n {
        let row = adj[order[j]];
        for &oi in &order[..j] {
            if row >> oi & 1 == 1 {
                bits[k / 64] |= 1 << (k % 64);
            }
            k += 1;
        }
    }
    // Compare from the first bit: reverse within the vector so that the
    // lexicographic order of `Vec<u64>` matches the bit sequence.
    for w in bits.iter_mut() {
        *w = w.reverse_bits();
    }
    bits
}

/// Splits cells by neighbour counts into each cell until nothing changes.
fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    let mut changed = true;
    while changed {
        changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut next = Vec::with_capacity(cells.len());
            let mut split_any = false;
            for &cell in cells.iter() {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut groups: Vec<(u32, u64)> = Vec::new();
                for v in iter_mask(cell) {
                    let c = (adj[v] & splitter).count_ones();
                    match groups.iter_mut().find(|(k, _)| *k == c) {
                        Some((_, m)) => *m |= 1 << v,
                        None => groups.push((c, 1 << v)),
                    }
                }
                if groups.len() > 1 {
                    split_any = true;
                    groups.sort_unstable_by_key(|&(c, _)| c);
                }
                next.extend(groups.into_iter().map(|(_, m)| m));
            }
            if split_any {
                *cells = next;
                changed = true;
            }
            s += 1;
        }
    }
}

struct Canon<'a> {
    adj: &'a [u64],
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Canon<'_> {
    fn search(&mut self, mut cells: Vec<u64>) {
        refine(self.adj, &mut cells);
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            let cert = certificate(self.adj, &order);
            if self.best.as_ref().is_none_or(|(b, _)| cert > *b) {
                self.best = Some((cert, order));
            }
            return;
        };
        let cell = cells[target];
        for v in iter_mask(cell) {
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1 << v);
            child.push(cell & !(1 << v));
            child.extend_from_slice(&cells[target + 1..]);
            self.search(child);
        }
    }
}

/// Canonical ordering of `g` starting from the ordered partition `cells`
/// (vertex colours). Returns the form and the vertex at each canonical position.
pub fn canonical_with_partition(g: &DenseGraph, cells: Vec<u64>) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.n();
    if n > MAX_CANON_N {
        return Err(Error::Capacity {
            what: "vertices for canonical labelling",
            got: n,
            limit: MAX_CANON_N,
        });
    }
    if n == 0 {
        return Ok((CanonicalForm { n: 0, bits: Vec::new() }, Vec::new()));
    }
    let adj = g.masks();
    let mut c = Canon { adj: &adj, best: None };
    c.search(cells.into_iter().filter(|&m| m != 0).collect());
    let (_, order) = c.best.expect("at least one leaf");
    let form = CanonicalForm {
        n,
        bits: raw_bits(g, &order),
    };
    Ok((form, order))
}

fn raw_bits(g: &DenseGraph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut bits = vec![0u64; (n * n.saturating_sub(1) / 2).div_ceil(64)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(order[i], order[j]) {
                bits[k / 64] |= 1 << (k % 64);
            }
            k += 1;
        }
    }
    bits
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

pub fn canonical_form(g: &DenseGraph) -> Result<CanonicalForm> {
    canonical_with_partition(g, vec![full_mask(g.n())]).map(|(f, _)| f)
}

/// The graph relabelled into canonical order.
pub fn canonical_graph(g: &DenseGraph) -> Result<DenseGraph> {
    canonical_form(g).map(|f| f.to_graph())
}

pub fn are_isomorphic(a: &DenseGraph, b: &DenseGraph) -> Result<bool> {
    Ok(a.n() == b.n() && canonical_form(a)? == canonical_form(b)?)
}

/// Orbits of the automorphism group, each sorted, ordered by smallest member.
pub fn vertex_orbits(g: &DenseGraph) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let all = full_mask(n);
    let mut forms = Vec::with_capacity(n);
    for v in 0..n {
        let (f, _) = canonical_with_partition(g, vec![1 << v, all & !(1 << v)])?;
        forms.push(f);
    }
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if orbit_of[v] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let members: Vec<usize> = (v..n).filter(|&u| forms[u] == forms[v]).collect();
        for &u in &members {
            orbit_of[u] = id;
        }
        orbits.push(members);
    }
    Ok(orbits)
}

fn canonize_all(candidates: Vec<DenseGraph>) -> Vec<CanonicalForm> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        candidates
            .into_par_iter()
            .map(|g| canonical_form(&g).expect("small graph"))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        candidates
            .into_iter()
            .map(|g| canonical_form(&g).expect("small graph"))
            .collect()
    }
}

fn check_enum_capacity(n: usize) -> Result<()> {
    const LIMIT: usize = 10;
    if n > LIMIT {
        return Err(Error::Capacity {
            what: "vertices for exhaustive graph enumeration",
            got: n,
            limit: LIMIT,
        });
    }
    Ok(())
}

/// All graphs on `n` vertices up to isomorphism, in canonical form, sorted.
///
/// Every graph on `n` vertices is a graph on `n - 1` vertices plus one vertex
/// joined to some subset, so extending each class representative by every
/// subset and deduplicating canonical forms is complete.
pub fn graphs_by_vertex_extension(n: usize) -> Result<Vec<DenseGraph>> {
    check_enum_capacity(n)?;
    let mut level = vec![CanonicalForm { n: 0, bits: Vec::new() }];
    for m in 1..=n {
        let mut candidates = Vec::new();
        for form in &level {
            let base = form.to_graph();
            for subset in 0..1u64 << (m - 1) {
                let mut g = DenseGraph::empty(m);
                for (u, v) in base.edges() {
                    g.add_edge(u, v);
                }
                for u in iter_mask(subset) {
                    g.add_edge(u, m - 1);
                }
                candidates.push(g);
            }
        }
        let set: HashSet<CanonicalForm> = canonize_all(candidates).into_iter().collect();
        level = set.into_iter().collect();
        level.sort();
    }
    Ok(level.iter().map(|f| f.to_graph()).collect())
}

/// Same classes as [`graphs_by_vertex_extension`], reached by adding one edge
/// at a time from the empty graph.
pub fn graphs_by_edge_addition(n: usize) -> Result<Vec<DenseGraph>> {
    check_enum_capacity(n)?;
    let mut all: Vec<CanonicalForm> = Vec::new();
    let mut level = vec![canonical_form(&DenseGraph::empty(n))?];
    while !level.is_empty() {
        all.extend(level.iter().cloned());
        let mut candidates = Vec::new();
        for form in &level {
            let g = form.to_graph();
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        let mut h = g.clone();
                        h.add_edge(u, v);
                        candidates.push(h);
                    }
                }
            }
        }
        let set: HashSet<CanonicalForm> = canonize_all(candidates).into_iter().collect();
        level = set.into_iter().collect();
    }
    all.sort();
    Ok(all.iter().map(|f| f.to_graph()).collect())
}
