//! Vertex-weighted quotient graphs and their weight `phi(Q)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DenseGraph;
use crate::graph6;
use crate::rational::{half, rat, Rational};

use super::reduce::{block_weight, is_block_uniform};
use super::WeightedCompleteGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexWeightedGraph {
    q: DenseGraph,
    phi: Vec<Rational>,
}

impl VertexWeightedGraph {
    pub fn new(q: DenseGraph, phi: Vec<Rational>) -> Result<Self> {
        if phi.len() != q.n() {
            return Err(Error::arg("one weight per vertex required"));
        }
        if phi.iter().any(|p| *p < Rational::zero()) {
            return Err(Error::arg("vertex weights must be nonnegative"));
        }
        if phi.iter().fold(Rational::zero(), |a, b| a + b) != Rational::one() {
            return Err(Error::arg("vertex weights must sum to 1"));
        }
        Ok(VertexWeightedGraph { q, phi })
    }

    pub fn uniform(q: DenseGraph) -> Result<Self> {
        let s = q.n();
        if s == 0 {
            return Err(Error::EmptyGraph);
        }
        Self::new(q, vec![rat(1, s as i128); s])
    }

    pub fn graph(&self) -> &DenseGraph {
        &self.q
    }

    pub fn phi(&self) -> &[Rational] {
        &self.phi
    }

    pub fn weight(&self) -> Rational {
        phi_weight(&self.q, &self.phi)
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    graph6: String,
    #[serde(with = "serde_phi")]
    phi: Vec<Rational>,
}

pub(crate) mod serde_phi {
    use super::*;
    use crate::rational::{fmt_rational, parse_rational};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(fmt_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl Serialize for VertexWeightedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            graph6: graph6::encode(&self.q),
            phi: self.phi.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexWeightedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        let q = graph6::decode(&r.graph6).map_err(serde::de::Error::custom)?;
        VertexWeightedGraph::new(q, r.phi).map_err(serde::de::Error::custom)
    }
}

/// `sum phi(a)^2 + sum over edges ab of phi(a) phi(b)`.
pub fn phi_weight(q: &DenseGraph, phi: &[Rational]) -> Rational {
    let squares = phi.iter().fold(Rational::zero(), |a, p| a + p * p);
    q.edges().into_iter().fold(squares, |a, (x, y)| a + phi[x] * phi[y])
}

/// Quotient of a block-uniform weighting: one vertex per class, weighted by
/// its share of the vertices, adjacent when the classes meet at weight 1/2.
/// The identity `w(R) = k^2/2 (phi(Q) - 1/k)` is checked exactly.
pub fn quotient(partition: &[Vec<usize>], r: &WeightedCompleteGraph) -> Result<VertexWeightedGraph> {
    if !is_block_uniform(r, partition) {
        return Err(Error::arg("weighting is not block-uniform for the partition"));
    }
    let k = r.k() as i128;
    let s = partition.len();
    let mut q = DenseGraph::empty(s);
    for a in 0..s {
        for b in a + 1..s {
            if block_weight(r, &partition[a], &partition[b]) == Some(half()) {
                q.add_edge(a, b);
            }
        }
    }
    let phi = partition.iter().map(|c| rat(c.len() as i128, k)).collect();
    let out = VertexWeightedGraph::new(q, phi)?;
    if r.total() != total_from_phi(k, out.weight()) {
        return Err(Error::input("total weight disagrees with the quotient identity"));
    }
    Ok(out)
}

/// `k^2/2 (phi - 1/k)`.
pub fn total_from_phi(k: i128, phi: Rational) -> Rational {
    rat(k * k, 2) * (phi - rat(1, k))
}
