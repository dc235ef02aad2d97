//! Admissibility of small (weighted) graphs for a pattern graph `H`.
//!
//! For a bijection `b` and an order on `V(H)`, a thin image `b(x)b(y)` of an
//! `H`-edge with `x` before `y` forbids every later `z` that "blocks" it (both
//! `b(x)b(z)` and `b(y)b(z)` present, or weights summing past the bound). Seen
//! from the host side, an order on the host vertices makes the pair `{u, v}`
//! usable for an `H`-edge iff it is not thin or all of its blockers come
//! before both `u` and `v`; the subset is admissible iff for some order `H`
//! embeds as a spanning subgraph of the usable pairs. The search enumerates
//! host orders back to front, since the usability of a pair only depends on
//! which vertices follow it, and tests the embedding once per distinct set of
//! unusable pairs.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::RwLock;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::enumerate::{canonical_form, vertex_orbits, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{iter_mask, DenseGraph};
use crate::rational::Rational;
use crate::turan::WeightedCompleteGraph;

pub const MAX_H: usize = 12;

/// `order` lists the vertices of `H` from first to last; `map[x]` is the
/// host vertex `b(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityWitness {
    pub order: Vec<usize>,
    pub map: Vec<usize>,
}

impl Serialize for AdmissibilityWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            order: &'a [usize],
            map: BTreeMap<String, usize>,
        }
        Repr {
            order: &self.order,
            map: self.map.iter().enumerate().map(|(x, &q)| (x.to_string(), q)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AdmissibilityWitness {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            order: Vec<usize>,
            map: BTreeMap<String, usize>,
        }
        let r = Repr::deserialize(d)?;
        let h = r.order.len();
        let mut map = vec![usize::MAX; h];
        for (key, q) in r.map {
            let x: usize = key.parse().map_err(D::Error::custom)?;
            if x >= h {
                return Err(D::Error::custom(format!("map key {x} out of range")));
            }
            map[x] = q;
        }
        if map.contains(&usize::MAX) {
            return Err(D::Error::custom("map must cover every H-vertex"));
        }
        Ok(AdmissibilityWitness { order: r.order, map })
    }
}

/// The host side of an admissibility question.
#[derive(Clone, Copy, Debug)]
pub enum Host<'a> {
    /// Unweighted: thin pairs are non-edges, blockers are common neighbours.
    Graph(&'a DenseGraph),
    /// Weighted with threshold `eps`: thin is `w <= eps`, fat is
    /// `w >= 1 - eps`, and `c` blocks a thin `uv` when
    /// `w(uc) + w(vc) >= 1 - eps`. `eps = 0` is the zero-threshold variant.
    Weighted(&'a WeightedCompleteGraph, Rational),
}

impl Host<'_> {
    pub fn n(&self) -> usize {
        match self {
            Host::Graph(g) => g.n(),
            Host::Weighted(r, _) => r.k(),
        }
    }

    fn thin(&self, u: usize, v: usize) -> bool {
        match self {
            Host::Graph(g) => !g.has_edge(u, v),
            Host::Weighted(r, eps) => r.get(u, v) <= *eps,
        }
    }

    fn fat(&self, u: usize, v: usize) -> bool {
        match self {
            Host::Graph(_) => false,
            Host::Weighted(r, eps) => r.get(u, v) >= Rational::one() - eps,
        }
    }

    fn blocks(&self, u: usize, v: usize, c: usize) -> bool {
        match self {
            Host::Graph(g) => g.has_edge(u, c) && g.has_edge(v, c),
            Host::Weighted(r, eps) => r.get(u, c) + r.get(v, c) >= Rational::one() - eps,
        }
    }
}

/// Thin/fat/blocker structure of a host subset in local indices.
struct Instance {
    h: usize,
    thin: Vec<u64>,
    /// `blockers[u * h + v]`: local vertices blocking the pair `uv`.
    blockers: Vec<u64>,
    has_fat: bool,
}

impl Instance {
    fn new(host: &Host, subset: &[usize]) -> Self {
        let h = subset.len();
        let mut thin = vec![0u64; h];
        let mut blockers = vec![0u64; h * h];
        let mut has_fat = false;
        for a in 0..h {
            for b in a + 1..h {
                let (u, v) = (subset[a], subset[b]);
                has_fat |= host.fat(u, v);
                if host.thin(u, v) {
                    thin[a] |= 1 << b;
                    thin[b] |= 1 << a;
                    let mut m = 0u64;
                    for c in 0..h {
                        if c != a && c != b && host.blocks(u, v, subset[c]) {
                            m |= 1 << c;
                        }
                    }
                    blockers[a * h + b] = m;
                    blockers[b * h + a] = m;
                }
            }
        }
        Instance {
            h,
            thin,
            blockers,
            has_fat,
        }
    }
}

/// Backtracking spanning-subgraph embedding of `pattern` into `target`
/// (both as adjacency masks on the same number of vertices).
fn spanning_embedding(pattern: &[u64], target: &[u64]) -> Option<Vec<usize>> {
    let h = pattern.len();
    let pdeg: Vec<u32> = pattern.iter().map(|m| m.count_ones()).collect();
    let tdeg: Vec<u32> = target.iter().map(|m| m.count_ones()).collect();
    // Highest degree first, then keep each next vertex attached to placed ones.
    let mut order: Vec<usize> = Vec::with_capacity(h);
    let mut placed = 0u64;
    while order.len() < h {
        let next = (0..h)
            .filter(|&x| placed >> x & 1 == 0)
            .max_by_key(|&x| ((pattern[x] & placed).count_ones(), pdeg[x], usize::MAX - x))
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }
    let mut map = vec![usize::MAX; h];
    fn rec(
        i: usize,
        order: &[usize],
        pattern: &[u64],
        target: &[u64],
        pdeg: &[u32],
        tdeg: &[u32],
        map: &mut [usize],
        used: u64,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let x = order[i];
        for v in 0..target.len() {
            if used >> v & 1 == 1 || tdeg[v] < pdeg[x] {
                continue;
            }
            let ok = iter_mask(pattern[x]).all(|y| map[y] == usize::MAX || target[v] >> map[y] & 1 == 1);
            if ok {
                map[x] = v;
                if rec(i + 1, order, pattern, target, pdeg, tdeg, map, used | 1 << v) {
                    return true;
                }
                map[x] = usize::MAX;
            }
        }
        false
    }
    if rec(0, &order, pattern, target, &pdeg, &tdeg, &mut map, 0) {
        Some(map)
    } else {
        None
    }
}

struct OrderSearch<'a> {
    inst: &'a Instance,
    pattern: &'a [u64],
    pdeg_sorted: Vec<u32>,
    pattern_edges: u32,
    /// Representatives allowed as the last vertex of the order.
    last_choices: u64,
    /// Unusable-pair sets already tested, with the outcome.
    memo: HashMap<Vec<u64>, Option<Vec<usize>>>,
    seq: Vec<usize>,
    forbidden: Vec<u64>,
}

impl OrderSearch<'_> {
    fn full(&self) -> u64 {
        if self.inst.h == 64 {
            !0
        } else {
            (1u64 << self.inst.h) - 1
        }
    }

    fn feasible(&self) -> bool {
        let h = self.inst.h as u32;
        let nf: u32 = self.forbidden.iter().map(|m| m.count_ones()).sum::<u32>() / 2;
        if h * (h - 1) / 2 - nf < self.pattern_edges {
            return false;
        }
        let mut ub: Vec<u32> = self.forbidden.iter().map(|m| h - 1 - m.count_ones()).collect();
        ub.sort_unstable_by(|a, b| b.cmp(a));
        ub.iter().zip(&self.pdeg_sorted).all(|(u, p)| u >= p)
    }

    /// Places vertices from last to first; `suffix` holds those already placed.
    fn place(&mut self, suffix: u64) -> Option<Vec<usize>> {
        if suffix == self.full() {
            if let Some(r) = self.memo.get(&self.forbidden) {
                return r.clone();
            }
            let usable: Vec<u64> = (0..self.inst.h)
                .map(|u| self.full() & !self.forbidden[u] & !(1 << u))
                .collect();
            let r = spanning_embedding(self.pattern, &usable);
            self.memo.insert(self.forbidden.clone(), r.clone());
            return r;
        }
        let choices = if suffix == 0 {
            self.last_choices
        } else {
            self.full() & !suffix
        };
        for v in iter_mask(choices) {
            let mut added = 0u64;
            for u in iter_mask(suffix & self.inst.thin[v]) {
                if self.inst.blockers[v * self.inst.h + u] & suffix & !(1 << u) != 0 {
                    added |= 1 << u;
                }
            }
            self.forbidden[v] |= added;
            for u in iter_mask(added) {
                self.forbidden[u] |= 1 << v;
            }
            self.seq.push(v);
            if self.feasible() {
                if let Some(map) = self.place(suffix | 1 << v) {
                    return Some(map);
                }
            }
            self.seq.pop();
            self.forbidden[v] &= !added;
            for u in iter_mask(added) {
                self.forbidden[u] &= !(1 << v);
            }
        }
        None
    }
}

fn check_size(h: &DenseGraph, subset_len: usize) -> Result<()> {
    if h.n() != subset_len {
        return Err(Error::arg(format!(
            "H has {} vertices but the host subset has {subset_len}",
            h.n()
        )));
    }
    if h.n() > MAX_H {
        return Err(Error::Capacity {
            what: "vertices for admissibility search",
            got: h.n(),
            limit: MAX_H,
        });
    }
    Ok(())
}

/// Searches for a witness that `host[subset]` is admissible for `h`.
pub fn find_witness(host: &Host, subset: &[usize], h: &DenseGraph) -> Result<Option<AdmissibilityWitness>> {
    check_size(h, subset.len())?;
    let inst = Instance::new(host, subset);
    if inst.has_fat {
        return Ok(None);
    }
    let hn = h.n();
    if hn == 0 {
        return Ok(Some(AdmissibilityWitness {
            order: vec![],
            map: vec![],
        }));
    }
    let pattern = h.masks();
    let mut pdeg_sorted: Vec<u32> = pattern.iter().map(|m| m.count_ones()).collect();
    pdeg_sorted.sort_unstable_by(|a, b| b.cmp(a));
    let all = (1u64 << hn) - 1;
    // Automorphisms of the host subgraph permute orders and embeddings, so the
    // last vertex only needs one representative per orbit.
    let last_choices = match host {
        Host::Graph(g) => vertex_orbits(&g.induced(subset))?
            .iter()
            .fold(0u64, |m, o| m | 1 << o[0]),
        Host::Weighted(..) => all,
    };
    let mut search = OrderSearch {
        inst: &inst,
        pattern: &pattern,
        pdeg_sorted,
        pattern_edges: h.edge_count() as u32,
        last_choices,
        memo: HashMap::new(),
        seq: Vec::with_capacity(hn),
        forbidden: vec![0; hn],
    };
    let Some(local_map) = search.place(0) else {
        return Ok(None);
    };
    // `seq` runs from last to first.
    let mut pos = vec![0usize; hn];
    for (i, &v) in search.seq.iter().rev().enumerate() {
        pos[v] = i;
    }
    let mut order: Vec<usize> = (0..hn).collect();
    order.sort_by_key(|&x| pos[local_map[x]]);
    Ok(Some(AdmissibilityWitness {
        order,
        map: local_map.iter().map(|&l| subset[l]).collect(),
    }))
}

/// Checks a witness directly against the definition, in `O(h^3)`.
pub fn verify_witness(host: &Host, h: &DenseGraph, w: &AdmissibilityWitness) -> bool {
    let hn = h.n();
    if w.order.len() != hn || w.map.len() != hn {
        return false;
    }
    let mut pos = vec![usize::MAX; hn];
    for (i, &x) in w.order.iter().enumerate() {
        if x >= hn || pos[x] != usize::MAX {
            return false;
        }
        pos[x] = i;
    }
    let mut seen = HashSet::new();
    if w.map.iter().any(|&q| q >= host.n() || !seen.insert(q)) {
        return false;
    }
    for a in 0..hn {
        for b in a + 1..hn {
            if host.fat(w.map[a], w.map[b]) {
                return false;
            }
        }
    }
    for (x, y) in h.edges() {
        let (x, y) = if pos[x] < pos[y] { (x, y) } else { (y, x) };
        if !host.thin(w.map[x], w.map[y]) {
            continue;
        }
        for z in 0..hn {
            if z != x && z != y && pos[x] < pos[z] && host.blocks(w.map[x], w.map[y], w.map[z]) {
                return false;
            }
        }
    }
    true
}

/// `(R, w)` restricted to `subset` is `(H, eps)`-admissible.
pub fn is_eps_admissible(
    r: &WeightedCompleteGraph,
    subset: &[usize],
    h: &DenseGraph,
    eps: Rational,
) -> Result<Option<AdmissibilityWitness>> {
    find_witness(&Host::Weighted(r, eps), subset, h)
}

/// The `eps = 0` case: thin is weight 0, fat is weight 1, sums must stay below 1.
pub fn is_zero_admissible(
    r: &WeightedCompleteGraph,
    subset: &[usize],
    h: &DenseGraph,
) -> Result<Option<AdmissibilityWitness>> {
    is_eps_admissible(r, subset, h, Rational::zero())
}

/// `q` (all of it) is `H`-admissible.
pub fn is_h_admissible(q: &DenseGraph, h: &DenseGraph) -> Result<Option<AdmissibilityWitness>> {
    let all: Vec<usize> = (0..q.n()).collect();
    find_witness(&Host::Graph(q), &all, h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleSubgraph {
    pub subset: Vec<usize>,
    /// Index into the family.
    pub member: usize,
    pub witness: AdmissibilityWitness,
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
    fn rec(
        n: usize,
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if cur.len() == k {
            return f(cur);
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            if rec(n, k, v + 1, cur, f)? {
                return Ok(true);
            }
            cur.pop();
        }
        Ok(false)
    }
    rec(n, k, 0, &mut Vec::new(), f)
}

fn family_sizes(family: &[DenseGraph]) -> Vec<usize> {
    let mut sizes: Vec<usize> = family.iter().map(DenseGraph::n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
}

/// First admissible subgraph: subset sizes ascending, subsets in
/// lexicographic order, then family members in the given order.
pub fn find_admissible_subgraph(host: &Host, family: &[DenseGraph]) -> Result<Option<AdmissibleSubgraph>> {
    if family.is_empty() {
        return Err(Error::arg("family must be nonempty"));
    }
    let mut found = None;
    for size in family_sizes(family) {
        if size > host.n() {
            break;
        }
        for_each_subset(host.n(), size, &mut |subset| {
            for (member, h) in family.iter().enumerate() {
                if h.n() != size {
                    continue;
                }
                if let Some(witness) = find_witness(host, subset, h)? {
                    found = Some(AdmissibleSubgraph {
                        subset: subset.to_vec(),
                        member,
                        witness,
                    });
                    return Ok(true);
                }
            }
            Ok(false)
        })?;
        if found.is_some() {
            break;
        }
    }
    Ok(found)
}

/// Admissibility queries on unweighted graphs with answers cached per
/// isomorphism class of the host subgraph; safe to share between threads.
pub struct FamilyOracle {
    family: Vec<DenseGraph>,
    cache: RwLock<HashMap<CanonicalForm, bool>>,
}

impl FamilyOracle {
    pub fn new(family: Vec<DenseGraph>) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::arg("family must be nonempty"));
        }
        Ok(FamilyOracle {
            family,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn family(&self) -> &[DenseGraph] {
        &self.family
    }

    /// Some family member of the same size admits `q` as a whole.
    pub fn admits(&self, q: &DenseGraph) -> Result<bool> {
        let form = canonical_form(q)?;
        if let Some(&hit) = self.cache.read().expect("cache lock").get(&form) {
            return Ok(hit);
        }
        let mut hit = false;
        for h in self.family.iter().filter(|h| h.n() == q.n()) {
            if is_h_admissible(q, h)?.is_some() {
                hit = true;
                break;
            }
        }
        self.cache.write().expect("cache lock").insert(form, hit);
        Ok(hit)
    }

    /// No induced subgraph of `q` is admissible for any family member.
    pub fn is_admissible_free(&self, q: &DenseGraph) -> Result<bool> {
        for size in family_sizes(&self.family) {
            if size > q.n() {
                break;
            }
            let hit = for_each_subset(q.n(), size, &mut |subset| self.admits(&q.induced(subset)))?;
            if hit {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn cached_classes(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{half, rat};
    use crate::rng::seeded;
    use crate::subdivision::partial_subdivisions;
    use crate::testutil::arb_graph_range;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::Rng as _;

    fn family() -> Vec<DenseGraph> {
        partial_subdivisions(5, 8)
            .unwrap()
            .iter()
            .map(|p| p.realize())
            .collect()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(p: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
            if i == p.len() {
                out.push(p.clone());
                return;
            }
            for j in i..p.len() {
                p.swap(i, j);
                rec(p, i + 1, out);
                p.swap(i, j);
            }
        }
        let mut out = Vec::new();
        rec(&mut (0..n).collect(), 0, &mut out);
        out
    }

    /// Reference: every bijection against every order, straight from the definition.
    fn brute_force(host: &Host, subset: &[usize], h: &DenseGraph) -> bool {
        let perms = permutations(h.n());
        perms.iter().any(|b| {
            let map: Vec<usize> = b.iter().map(|&i| subset[i]).collect();
            perms.iter().any(|order| {
                verify_witness(
                    host,
                    h,
                    &AdmissibilityWitness {
                        order: order.clone(),
                        map: map.clone(),
                    },
                )
            })
        })
    }

    fn star(n: usize) -> DenseGraph {
        let mut g = DenseGraph::empty(n);
        for v in 1..n {
            g.add_edge(0, v);
        }
        g
    }

    #[test]
    fn weighted_examples() {
        let k5 = DenseGraph::complete(5);
        let all: Vec<usize> = (0..5).collect();
        let r = WeightedCompleteGraph::constant(5, half());
        let w = is_eps_admissible(&r, &all, &k5, rat(1, 4)).unwrap().unwrap();
        assert!(verify_witness(&Host::Weighted(&r, rat(1, 4)), &k5, &w));
        let mut fat = r.clone();
        fat.set(1, 2, rat(1, 1));
        assert!(is_eps_admissible(&fat, &all, &k5, rat(1, 10)).unwrap().is_none());
        assert!(is_zero_admissible(&fat, &all, &k5).unwrap().is_none());
        let zero = WeightedCompleteGraph::constant(5, rat(0, 1));
        assert!(is_eps_admissible(&zero, &all, &k5, rat(1, 10)).unwrap().is_some());
        assert!(is_zero_admissible(&r, &all, &k5).unwrap().is_some());
        assert!(is_eps_admissible(&r, &all[..4], &k5, rat(1, 4)).is_err());
    }

    #[test]
    fn unweighted_examples() {
        let k5 = DenseGraph::complete(5);
        assert!(is_h_admissible(&DenseGraph::empty(5), &k5).unwrap().is_some());
        let w = is_h_admissible(&star(5), &k5).unwrap().unwrap();
        // The centre must come first.
        assert_eq!(w.map[w.order[0]], 0);
        assert!(verify_witness(&Host::Graph(&star(5)), &k5, &w));
        assert!(is_h_admissible(&DenseGraph::cycle(5), &k5).unwrap().is_none());
        assert!(!brute_force(&Host::Graph(&DenseGraph::cycle(5)), &[0, 1, 2, 3, 4], &k5));
    }

    #[test]
    fn witness_json_shape() {
        let w = is_h_admissible(&star(5), &DenseGraph::complete(5)).unwrap().unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert!(s.starts_with("{\"order\":["));
        assert!(s.contains("\"map\":{\"0\":"));
        let back: AdmissibilityWitness = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn find_examples() {
        let fam = family();
        let q = DenseGraph::empty(7);
        let hit = find_admissible_subgraph(&Host::Graph(&q), &fam).unwrap().unwrap();
        assert_eq!(hit.subset, vec![0, 1, 2, 3, 4]);
        assert_eq!(hit.member, 0);
        let small = DenseGraph::complete(4);
        assert!(find_admissible_subgraph(&Host::Graph(&small), &fam).unwrap().is_none());
        // A vertex with five non-neighbours.
        let mut g = DenseGraph::complete(7);
        for v in 1..6 {
            g.remove_edge(0, v);
        }
        let hit = find_admissible_subgraph(&Host::Graph(&g), &fam).unwrap().unwrap();
        assert!(verify_witness(&Host::Graph(&g), &fam[hit.member], &hit.witness));
    }

    #[test]
    fn half_encoding_matches_unweighted_on_all_small_graphs() {
        let fam = family();
        for n in 5..=6 {
            for q in crate::enumerate::graphs_by_vertex_extension(n).unwrap() {
                let r = WeightedCompleteGraph::from_graph_half(&q);
                let all: Vec<usize> = (0..n).collect();
                for h in fam.iter().filter(|h| h.n() == n) {
                    let a = is_h_admissible(&q, h).unwrap().is_some();
                    let b = is_zero_admissible(&r, &all, h).unwrap().is_some();
                    assert_eq!(a, b, "{q:?}");
                }
            }
        }
    }

    #[test]
    fn oracle_agrees_with_direct_search() {
        let fam = family();
        let oracle = FamilyOracle::new(fam.clone()).unwrap();
        let mut rng = seeded(8);
        for _ in 0..40 {
            let q = DenseGraph::gnp(7, rng.gen_range(0.3..0.8), &mut rng);
            let direct = find_admissible_subgraph(&Host::Graph(&q), &fam).unwrap().is_none();
            assert_eq!(oracle.is_admissible_free(&q).unwrap(), direct);
        }
    }

    fn random_weighting(k: usize, rng: &mut crate::rng::Rng) -> WeightedCompleteGraph {
        let vals = [
            rat(0, 1),
            rat(1, 10),
            rat(1, 4),
            rat(2, 5),
            half(),
            rat(3, 5),
            rat(9, 10),
            rat(1, 1),
        ];
        let w = (0..k * (k - 1) / 2)
            .map(|_| vals[rng.gen_range(0..vals.len())])
            .collect();
        WeightedCompleteGraph::from_pairs(k, w).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn search_matches_brute_force_unweighted(q in arb_graph_range(4, 5), hseed in any::<u64>()) {
            let mut rng = seeded(hseed);
            let h = DenseGraph::gnp(q.n(), 0.6, &mut rng);
            let all: Vec<usize> = (0..q.n()).collect();
            let found = find_witness(&Host::Graph(&q), &all, &h).unwrap();
            prop_assert_eq!(found.is_some(), brute_force(&Host::Graph(&q), &all, &h));
            if let Some(w) = found {
                prop_assert!(verify_witness(&Host::Graph(&q), &h, &w));
            }
        }

        #[test]
        fn search_matches_brute_force_weighted(seed in any::<u64>(), eps_num in 0i128..4) {
            let mut rng = seeded(seed);
            let k = rng.gen_range(4..=5);
            let r = random_weighting(k, &mut rng);
            let h = DenseGraph::gnp(k, 0.7, &mut rng);
            let eps = rat(eps_num, 10);
            let host = Host::Weighted(&r, eps);
            let all: Vec<usize> = (0..k).collect();
            let found = find_witness(&host, &all, &h).unwrap();
            prop_assert_eq!(found.is_some(), brute_force(&host, &all, &h));
            if let Some(w) = found {
                prop_assert!(verify_witness(&host, &h, &w));
            }
        }

        #[test]
        fn result_is_invariant_under_relabelling(q in arb_graph_range(5, 7), seed in any::<u64>()) {
            let fam = family();
            let mut perm: Vec<usize> = (0..q.n()).collect();
            perm.shuffle(&mut seeded(seed));
            let p = q.relabel(&perm);
            let a = find_admissible_subgraph(&Host::Graph(&q), &fam).unwrap();
            let b = find_admissible_subgraph(&Host::Graph(&p), &fam).unwrap();
            prop_assert_eq!(a.is_some(), b.is_some());
            if let Some(hit) = b {
                prop_assert!(verify_witness(&Host::Graph(&p), &fam[hit.member], &hit.witness));
            }
        }

        #[test]
        fn eps_zero_is_the_zero_variant(seed in any::<u64>()) {
            let mut rng = seeded(seed);
            let r = random_weighting(6, &mut rng);
            let all: Vec<usize> = (0..6).collect();
            let h = DenseGraph::gnp(6, 0.6, &mut rng);
            prop_assert_eq!(
                is_eps_admissible(&r, &all, &h, rat(0, 1)).unwrap(),
                is_zero_admissible(&r, &all, &h).unwrap()
            );
        }
    }
}
