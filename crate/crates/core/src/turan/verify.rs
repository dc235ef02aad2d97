//! Exhaustive checks of the finite statements behind the 1/4 bound.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::admissibility::{find_witness, verify_witness, AdmissibilityWitness, FamilyOracle, Host};
use crate::enumerate::graphs_by_vertex_extension;
use crate::error::{Error, Result};
use crate::graph::{iter_mask, DenseGraph};
use crate::graph6;
use crate::rational::{rat, serde_opt_str, Rational};
use crate::subdivision::partial_subdivisions;

use super::quotient::phi_weight;
use super::simplex::minimize_phi;

pub const MAX_SWEEP_S: usize = 7;

/// Partial subdivisions of `K5` with at most 8 vertices, smallest first.
pub fn k5_family() -> Vec<DenseGraph> {
    partial_subdivisions(5, 8)
        .expect("fixed parameters")
        .iter()
        .map(|p| p.realize())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub graph6: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub cases: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scope: String,
    pub graph_count: usize,
    pub admissible_free_count: usize,
    #[serde(with = "serde_opt_str")]
    pub min_phi: Option<Rational>,
    pub extremal_graphs: Vec<String>,
    pub violations: Vec<Violation>,
    pub checks: Vec<CheckSummary>,
}

impl VerificationReport {
    pub fn new(scope: impl Into<String>) -> Self {
        VerificationReport {
            scope: scope.into(),
            graph_count: 0,
            admissible_free_count: 0,
            min_phi: None,
            extremal_graphs: Vec::new(),
            violations: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Adds an admissible-free graph with its minimum to the running
    /// minimum and extremal list.
    fn record_minimum(&mut self, g6: String, value: Rational) {
        match self.min_phi {
            Some(m) if value > m => {}
            Some(m) if value == m => self.extremal_graphs.push(g6),
            _ => {
                self.min_phi = Some(value);
                self.extremal_graphs = vec![g6];
            }
        }
    }

    /// Combines two reports over disjoint parts of the same sweep.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.graph_count += other.graph_count;
        self.admissible_free_count += other.admissible_free_count;
        if let Some(m) = other.min_phi {
            for g in other.extremal_graphs {
                self.record_minimum(g, m);
            }
        }
        self.violations.extend(other.violations);
        for c in other.checks {
            match self.checks.iter_mut().find(|x| x.name == c.name) {
                Some(x) => {
                    x.cases += c.cases;
                    x.violations += c.violations;
                }
                None => self.checks.push(c),
            }
        }
        self.finish()
    }

    fn finish(mut self) -> Self {
        self.extremal_graphs.sort();
        self.extremal_graphs.dedup();
        self.violations
            .sort_by(|a, b| (&a.check, &a.graph6, &a.detail).cmp(&(&b.check, &b.graph6, &b.detail)));
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    fn check(&mut self, name: &str, cases: usize, found: Vec<Violation>) {
        self.checks.push(CheckSummary {
            name: name.to_string(),
            cases,
            violations: found.len(),
        });
        self.violations.extend(found);
    }
}

fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

fn violation(check: &str, g: Option<&DenseGraph>, detail: impl Into<String>) -> Violation {
    Violation {
        check: check.to_string(),
        graph6: g.map(graph6::encode),
        detail: detail.into(),
    }
}

/// Every graph on `s` vertices up to isomorphism, with a flag telling
/// whether it has no admissible subgraph for the family.
pub fn sweep(s: usize, oracle: &FamilyOracle) -> Result<Vec<(DenseGraph, bool)>> {
    let graphs = graphs_by_vertex_extension(s)?;
    let flags = par_map(&graphs, |g| oracle.is_admissible_free(g));
    graphs
        .into_iter()
        .zip(flags)
        .map(|(g, f)| f.map(|free| (g, free)))
        .collect()
}

fn free_graphs(s: usize, oracle: &FamilyOracle) -> Result<Vec<DenseGraph>> {
    Ok(sweep(s, oracle)?
        .into_iter()
        .filter(|(_, f)| *f)
        .map(|(g, _)| g)
        .collect())
}

/// Every admissible-free graph on `s` vertices has `min phi >= 1/4`.
pub fn verify_prop_quarter(s: usize, family: &[DenseGraph]) -> Result<VerificationReport> {
    if s == 0 {
        return Err(Error::arg("s must be at least 1"));
    }
    if s > MAX_SWEEP_S {
        return Err(Error::Capacity {
            what: "s for the exhaustive sweep",
            got: s,
            limit: MAX_SWEEP_S,
        });
    }
    let oracle = FamilyOracle::new(family.to_vec())?;
    let swept = sweep(s, &oracle)?;
    let free: Vec<DenseGraph> = swept.iter().filter(|(_, f)| *f).map(|(g, _)| g.clone()).collect();
    let minima = par_map(&free, |g| minimize_phi(g).map(|m| m.value));
    let mut report = VerificationReport::new(format!("quarter bound s={s}"));
    report.graph_count = swept.len();
    report.admissible_free_count = free.len();
    let quarter = rat(1, 4);
    let mut bad = Vec::new();
    for (g, value) in free.iter().zip(minima) {
        let value = value?;
        report.record_minimum(graph6::encode(g), value);
        if value < quarter {
            bad.push(violation("min phi >= 1/4", Some(g), format!("min phi = {value}")));
        }
    }
    report.check("min phi >= 1/4", free.len(), bad);
    Ok(report.finish())
}

/// No graph on 8 vertices is admissible-free.
pub fn verify_claim_s8(family: &[DenseGraph]) -> Result<VerificationReport> {
    let oracle = FamilyOracle::new(family.to_vec())?;
    let swept = sweep(8, &oracle)?;
    let mut report = VerificationReport::new("s8");
    report.graph_count = swept.len();
    let free: Vec<&DenseGraph> = swept.iter().filter(|(_, f)| *f).map(|(g, _)| g).collect();
    report.admissible_free_count = free.len();
    let bad = free
        .iter()
        .map(|g| violation("no admissible-free graph", Some(g), "admissible-free on 8 vertices"))
        .collect();
    report.check("no admissible-free graph", swept.len(), bad);
    Ok(report.finish())
}

fn two_adjacent_edges(g: &DenseGraph) -> bool {
    (0..g.n()).any(|v| g.degree(v) >= 2)
}

fn two_disjoint_edges(g: &DenseGraph) -> bool {
    let e = g.edges();
    e.iter()
        .enumerate()
        .any(|(i, &(a, b))| e[i + 1..].iter().any(|&(c, d)| a != c && a != d && b != c && b != d))
}

/// A 4-vertex graph that is a 4-cycle or a path with three edges.
fn is_c4_or_p4(g: &DenseGraph) -> bool {
    let mut deg: Vec<usize> = (0..4).map(|v| g.degree(v)).collect();
    deg.sort_unstable();
    match g.edge_count() {
        4 => deg == [2, 2, 2, 2],
        3 => deg == [1, 1, 2, 2],
        _ => false,
    }
}

fn k5_admissible(g: &DenseGraph) -> Result<bool> {
    let all: Vec<usize> = (0..g.n()).collect();
    Ok(find_witness(&Host::Graph(g), &all, &DenseGraph::complete(5))?.is_some())
}

/// `(a, b, A)` in one of the three forbidden configurations.
fn forbidden_pair_config(g: &DenseGraph, a: usize, b: usize, set: &[usize]) -> bool {
    let none = |v: usize| set.iter().all(|&x| !g.has_edge(v, x));
    let all = |v: usize| set.iter().all(|&x| g.has_edge(v, x));
    (none(a) && none(b)) || (none(a) && all(b)) || (g.has_edge(a, b) && all(a) && all(b))
}

/// The explicit witness for a configuration: `b, a` first, then `A` with
/// its single non-edge (if there is exactly one) placed last.
fn pair_config_witness(g: &DenseGraph, a: usize, b: usize, set: &[usize]) -> AdmissibilityWitness {
    let mut xs = set.to_vec();
    let non_edges: Vec<(usize, usize)> = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .filter(|&(i, j)| !g.has_edge(xs[i], xs[j]))
        .collect();
    if let [(i, j)] = non_edges[..] {
        let k = 3 - i - j;
        xs = vec![xs[k], xs[i], xs[j]];
    }
    AdmissibilityWitness {
        order: (0..5).collect(),
        map: vec![b, a, xs[0], xs[1], xs[2]],
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| iter_mask(m).collect())
        .collect()
}

/// `Q` has a cycle through exactly `len` vertices. Uses `2^n` memory, so it
/// is meant for graphs with a handful of vertices.
pub fn has_cycle_of_length(g: &DenseGraph, len: usize) -> bool {
    let n = g.n();
    if len < 3 || len > n {
        return false;
    }
    let masks = g.masks();
    // Paths starting at their smallest vertex `s`.
    for s in 0..n {
        let higher = !((1u64 << (s + 1)) - 1) & ((1u64 << n) - 1);
        let mut reach = vec![0u64; 1 << n];
        reach[1 << s] = 1 << s;
        for mask in 0usize..1 << n {
            if mask & (1 << s) == 0 || reach[mask] == 0 || (mask as u64) & !(higher | 1 << s) != 0 {
                continue;
            }
            let size = mask.count_ones() as usize;
            for v in iter_mask(reach[mask]) {
                if size == len {
                    if masks[v] >> s & 1 == 1 {
                        return true;
                    }
                    continue;
                }
                for u in iter_mask(masks[v] & higher & !(mask as u64)) {
                    reach[mask | 1 << u] |= 1 << u;
                }
            }
        }
    }
    false
}

fn four_number_inequality_holds(a: Rational, b: Rational, c: Rational, d: Rational) -> bool {
    a * d + b * c <= a * c + b * d && a * c + b * d <= a * b + c * d
}

/// Checks the two factorisations on `{0,1,2}^4`, which determines a
/// polynomial of degree at most two in each variable.
fn four_number_factorizations() -> Vec<Violation> {
    let mut out = Vec::new();
    for code in 0..81 {
        let v: Vec<i64> = (0..4).map(|i| (code / 3i64.pow(i)) % 3).collect();
        let (a, b, c, d) = (v[0], v[1], v[2], v[3]);
        if (a * c + b * d) - (a * d + b * c) != (b - a) * (d - c) {
            out.push(violation("four-number factorization", None, format!("first at {v:?}")));
        }
        if (a * b + c * d) - (a * c + b * d) != (d - a) * (c - b) {
            out.push(violation("four-number factorization", None, format!("second at {v:?}")));
        }
    }
    out
}

/// Observations on small admissible-free graphs, the four-number
/// inequality, and the cycle bound for 7-vertex graphs.
pub fn verify_observations(family: &[DenseGraph]) -> Result<VerificationReport> {
    let oracle = FamilyOracle::new(family.to_vec())?;
    let mut report = VerificationReport::new("observations");
    let five = graphs_by_vertex_extension(5)?;
    let k4 = DenseGraph::complete(4);
    let k5 = DenseGraph::complete(5);

    // Five vertices without two adjacent or two disjoint edges are K5-admissible.
    let mut bad = Vec::new();
    for g in &five {
        if !(two_adjacent_edges(g) && two_disjoint_edges(g)) && !k5_admissible(g)? {
            bad.push(violation(
                "five vertices, edge pairs",
                Some(g),
                "missing edge pattern but not K5-admissible",
            ));
        }
    }
    report.check("five vertices, edge pairs", five.len(), bad);

    // Each configuration of a pair against a triple has the explicit witness.
    let mut bad = Vec::new();
    let mut cases = 0;
    for g in &five {
        for a in 0..5 {
            for b in 0..5 {
                if a == b {
                    continue;
                }
                let set: Vec<usize> = (0..5).filter(|&x| x != a && x != b).collect();
                if forbidden_pair_config(g, a, b, &set) {
                    cases += 1;
                    let w = pair_config_witness(g, a, b, &set);
                    if !verify_witness(&Host::Graph(g), &k5, &w) {
                        bad.push(violation("pair against triple witness", Some(g), format!("a={a} b={b}")));
                    }
                }
            }
        }
    }
    report.check("pair against triple witness", cases, bad);

    // Four vertices are K4-admissible unless they form C4 or P4, and a vertex
    // joined to all or none of them extends the witness to K5.
    let mut bad = Vec::new();
    let four = graphs_by_vertex_extension(4)?;
    for g in &four {
        let all: Vec<usize> = (0..4).collect();
        if !is_c4_or_p4(g) && find_witness(&Host::Graph(g), &all, &k4)?.is_none() {
            bad.push(violation("four vertices", Some(g), "not K4-admissible"));
        }
    }
    report.check("four vertices", four.len(), bad);
    let mut bad = Vec::new();
    let mut cases = 0;
    for g in &five {
        for v in 0..5 {
            let set: Vec<usize> = (0..5).filter(|&x| x != v).collect();
            let d = g.degree(v);
            if (d != 0 && d != 4) || is_c4_or_p4(&g.induced(&set)) {
                continue;
            }
            cases += 1;
            let inner = find_witness(&Host::Graph(g), &set, &k4)?;
            let ok = inner.is_some_and(|w| {
                let mut order = vec![4];
                order.extend(&w.order);
                let mut map = w.map.clone();
                map.push(v);
                verify_witness(&Host::Graph(g), &k5, &AdmissibilityWitness { order, map })
            });
            if !ok {
                bad.push(violation("vertex extension", Some(g), format!("v={v}")));
            }
        }
    }
    report.check("vertex extension", cases, bad);

    // The observations as statements about admissible-free graphs.
    let mut free_all = Vec::new();
    for s in 5..=8 {
        let free = free_graphs(s, &oracle)?;
        report.graph_count += graphs_by_vertex_extension(s)?.len();
        report.admissible_free_count += free.len();
        free_all.extend(free);
    }
    let mut b12 = Vec::new();
    let mut b13 = Vec::new();
    let mut b14 = Vec::new();
    let mut b15 = Vec::new();
    for g in &free_all {
        let n = g.n();
        for set in subsets(n, 5) {
            let h = g.induced(&set);
            if !(two_adjacent_edges(&h) && two_disjoint_edges(&h)) {
                b12.push(violation("free graphs, edge pairs", Some(g), format!("subset {set:?}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let rest: Vec<usize> = (0..n).filter(|&x| x != a && x != b).collect();
                for idx in subsets(rest.len(), 3) {
                    let set: Vec<usize> = idx.iter().map(|&i| rest[i]).collect();
                    if forbidden_pair_config(g, a, b, &set) {
                        b13.push(violation(
                            "free graphs, pair against triple",
                            Some(g),
                            format!("a={a} b={b} A={set:?}"),
                        ));
                    }
                }
            }
        }
        for v in 0..n {
            let rest: Vec<usize> = (0..n).filter(|&x| x != v).collect();
            for idx in subsets(rest.len(), 4) {
                let set: Vec<usize> = idx.iter().map(|&i| rest[i]).collect();
                let joined = set.iter().filter(|&&x| g.has_edge(v, x)).count();
                if (joined == 0 || joined == 4) && !is_c4_or_p4(&g.induced(&set)) {
                    b14.push(violation("free graphs, vertex extension", Some(g), format!("v={v} A={set:?}")));
                }
            }
        }
        if n >= 7 && (0..n).any(|v| n - 1 - g.degree(v) > 4) {
            b15.push(violation("free graphs, complement degree", Some(g), "complement degree above 4"));
        }
    }
    let count = free_all.len();
    report.check("free graphs, edge pairs", count, b12);
    report.check("free graphs, pair against triple", count, b13);
    report.check("free graphs, vertex extension", count, b14);
    report.check("free graphs, complement degree", free_all.iter().filter(|g| g.n() >= 7).count(), b15);

    // The four-number inequality on a grid, and its factorisations.
    let mut bad = Vec::new();
    let mut cases = 0;
    let grid: Vec<Rational> = (0..=20).map(|i| rat(i, 20)).collect();
    for (i, &a) in grid.iter().enumerate() {
        for (j, &b) in grid.iter().enumerate().skip(i) {
            for (l, &c) in grid.iter().enumerate().skip(j) {
                for &d in &grid[l..] {
                    cases += 1;
                    if !four_number_inequality_holds(a, b, c, d) {
                        bad.push(violation("four-number inequality grid", None, format!("{a} {b} {c} {d}")));
                    }
                }
            }
        }
    }
    report.check("four-number inequality grid", cases, bad);
    report.check("four-number factorization", 81, four_number_factorizations());

    // Seven vertices with a 6- or 7-cycle have min phi >= 1/4.
    let seven = graphs_by_vertex_extension(7)?;
    let with_cycle: Vec<&DenseGraph> = seven
        .iter()
        .filter(|g| has_cycle_of_length(g, 6) || has_cycle_of_length(g, 7))
        .collect();
    let minima = par_map(&with_cycle, |g| minimize_phi(g).map(|m| m.value));
    let mut bad = Vec::new();
    for (g, m) in with_cycle.iter().zip(minima) {
        let m = m?;
        if m < rat(1, 4) {
            bad.push(violation("long cycle bound", Some(g), format!("min phi = {m}")));
        }
    }
    report.check("long cycle bound", with_cycle.len(), bad);
    Ok(report.finish())
}

/// Integer partitions of `s` into at most `parts` parts, largest first.
fn integer_partitions(s: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if parts == 0 {
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(s, s, parts, &mut Vec::new(), &mut out);
    out
}

/// Disjoint union of cliques of the given sizes, with the block of each vertex.
fn clique_union(sizes: &[usize]) -> (DenseGraph, Vec<usize>) {
    let s: usize = sizes.iter().sum();
    let mut g = DenseGraph::empty(s);
    let mut block = Vec::with_capacity(s);
    let mut start = 0;
    for (i, &k) in sizes.iter().enumerate() {
        for u in start..start + k {
            block.push(i);
            for v in u + 1..start + k {
                g.add_edge(u, v);
            }
        }
        start += k;
    }
    (g, block)
}

/// For every union of at most `t - 1` cliques on `s` vertices: the
/// half-squares identity for `phi`, and `min phi >= 1/(2s) + 1/(2(t-1))`.
pub fn verify_clique_partition_bound(t: usize, s: usize) -> Result<VerificationReport> {
    if !(3..=5).contains(&t) {
        return Err(Error::arg("t must lie in 3..=5"));
    }
    if s == 0 {
        return Err(Error::arg("s must be at least 1"));
    }
    if s > 10 {
        return Err(Error::Capacity {
            what: "s for the clique-partition check",
            got: s,
            limit: 10,
        });
    }
    let mut report = VerificationReport::new(format!("clique-bound t={t} s={s}"));
    let bound = rat(1, 2 * s as i128) + rat(1, 2 * (t as i128 - 1));
    let mut identity_bad = Vec::new();
    let mut bound_bad = Vec::new();
    let partitions = integer_partitions(s, t - 1);
    for sizes in &partitions {
        let (g, block) = clique_union(sizes);
        let m = minimize_phi(&g)?;
        report.graph_count += 1;
        report.record_minimum(graph6::encode(&g), m.value);
        let total: i128 = (1..=s as i128).sum();
        let tilted: Vec<Rational> = (1..=s as i128).map(|i| rat(i, total)).collect();
        for phi in [&m.phi, &tilted] {
            let squares = phi.iter().fold(Rational::zero(), |a, p| a + p * p);
            let mut sums = vec![Rational::zero(); sizes.len()];
            for (v, p) in phi.iter().enumerate() {
                sums[block[v]] += p;
            }
            let blocks = sums.iter().fold(Rational::zero(), |a, p| a + p * p);
            if phi_weight(&g, phi) != (squares + blocks) / 2 {
                identity_bad.push(violation("half-squares identity", Some(&g), format!("sizes {sizes:?}")));
            }
        }
        if m.value < bound {
            bound_bad.push(violation(
                "clique bound",
                Some(&g),
                format!("sizes {sizes:?}: {}", m.value),
            ));
        }
    }
    report.check("half-squares identity", 2 * partitions.len(), identity_bad);
    report.check("clique bound", partitions.len(), bound_bad);
    debug_assert!(Rational::one() > bound);
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shape() {
        let f = k5_family();
        assert_eq!(f.len(), 12);
        assert_eq!(f[0], DenseGraph::complete(5));
        assert!(f.iter().all(|h| (5..=8).contains(&h.n())));
    }

    #[test]
    fn long_cycles() {
        assert!(has_cycle_of_length(&DenseGraph::cycle(7), 7));
        assert!(!has_cycle_of_length(&DenseGraph::cycle(7), 6));
        assert!(has_cycle_of_length(&DenseGraph::complete(6), 6));
        assert!(!has_cycle_of_length(&DenseGraph::path(7), 3));
        let mut wheel = DenseGraph::cycle(6).disjoint_union(&DenseGraph::empty(1));
        for v in 0..6 {
            wheel.add_edge(6, v);
        }
        assert!(has_cycle_of_length(&wheel, 7));
        assert!(minimize_phi(&wheel).unwrap().value >= rat(1, 4));
    }

    #[test]
    fn small_sweeps() {
        let fam = k5_family();
        let r = verify_prop_quarter(4, &fam).unwrap();
        assert_eq!(r.graph_count, 11);
        assert_eq!(r.admissible_free_count, 11);
        assert_eq!(r.min_phi, Some(rat(1, 4)));
        assert_eq!(r.extremal_graphs, vec![graph6::encode(&DenseGraph::empty(4))]);
        let r = verify_prop_quarter(5, &fam).unwrap();
        assert!(r.passed());
        for g6 in &r.extremal_graphs {
            assert!(graph6::decode(g6).unwrap().edge_count() >= 2);
        }
        assert!(matches!(verify_prop_quarter(8, &fam), Err(Error::Capacity { .. })));
        assert!(verify_prop_quarter(0, &fam).is_err());
    }

    #[test]
    fn five_vertex_free_graphs_have_two_edges() {
        let oracle = FamilyOracle::new(k5_family()).unwrap();
        for g in free_graphs(5, &oracle).unwrap() {
            assert!(g.edge_count() >= 2);
        }
    }

    #[test]
    fn clique_bound_examples() {
        let r = verify_clique_partition_bound(3, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.min_phi, Some(rat(1, 2)));
        let r = verify_clique_partition_bound(5, 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.min_phi, Some(rat(1, 4)));
        assert!(verify_clique_partition_bound(4, 6).unwrap().passed());
        assert!(verify_clique_partition_bound(6, 4).is_err());
        assert!(verify_clique_partition_bound(4, 11).is_err());
        assert_eq!(integer_partitions(6, 3).len(), 7);
    }

    #[test]
    fn four_number_examples() {
        assert!(four_number_factorizations().is_empty());
        assert!(four_number_inequality_holds(rat(0, 1), rat(0, 1), rat(1, 1), rat(1, 1)));
        // (c - a)(d - b) is the gap between the outer two sums.
        let (a, b, c, d) = (rat(1, 10), rat(1, 5), rat(1, 2), rat(1, 1));
        assert_eq!((a * b + c * d) - (a * d + b * c), (c - a) * (d - b));
        assert_ne!((a * b + c * d) - (a * c + b * d), (c - a) * (d - b));
    }

    #[test]
    fn report_merge_is_order_independent() {
        let mut a = VerificationReport::new("x");
        a.graph_count = 2;
        a.record_minimum("D??".into(), rat(1, 3));
        let mut b = VerificationReport::new("x");
        b.graph_count = 3;
        b.record_minimum("D?_".into(), rat(1, 4));
        b.check("c", 3, vec![violation("c", None, "d")]);
        let ab = a.clone().merge(b.clone());
        let ba = b.merge(a);
        assert_eq!(ab.graph_count, 5);
        assert_eq!(ab.min_phi, Some(rat(1, 4)));
        assert_eq!(ab.extremal_graphs, ba.extremal_graphs);
        assert_eq!(ab.violations, ba.violations);
        let s = serde_json::to_string(&ab).unwrap();
        assert!(s.contains("\"min_phi\":\"1/4\""));
    }
}
