//! Complete graphs with exact rational edge weights in `[0, 1]`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::DenseGraph;
use crate::rational::{fmt_rational, half, is_unit_interval, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedCompleteGraph {
    k: usize,
    w: Vec<Rational>,
}

#[inline]
fn pair_index(k: usize, x: usize, y: usize) -> usize {
    let (x, y) = if x < y { (x, y) } else { (y, x) };
    x * k - x * (x + 1) / 2 + (y - x - 1)
}

impl WeightedCompleteGraph {
    pub fn constant(k: usize, value: Rational) -> Self {
        WeightedCompleteGraph {
            k,
            w: vec![value; k * k.saturating_sub(1) / 2],
        }
    }

    /// Weights listed for pairs `(x, y)`, `x < y`, in lexicographic order.
    pub fn from_pairs(k: usize, w: Vec<Rational>) -> Result<Self> {
        if w.len() != k * k.saturating_sub(1) / 2 {
            return Err(Error::arg(format!(
                "expected {} weights for k={k}",
                k * k.saturating_sub(1) / 2
            )));
        }
        if let Some(bad) = w.iter().find(|r| !is_unit_interval(r)) {
            return Err(Error::arg(format!("weight {} outside [0,1]", fmt_rational(bad))));
        }
        Ok(WeightedCompleteGraph { k, w })
    }

    /// Edges of `q` get weight 1/2, non-edges 0.
    pub fn from_graph_half(q: &DenseGraph) -> Self {
        let k = q.n();
        let mut r = Self::constant(k, Rational::zero());
        for (u, v) in q.edges() {
            r.set(u, v, half());
        }
        r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Rational {
        self.w[pair_index(self.k, x, y)]
    }

    pub fn set(&mut self, x: usize, y: usize, value: Rational) {
        debug_assert!(x != y && is_unit_interval(&value));
        let i = pair_index(self.k, x, y);
        self.w[i] = value;
    }

    pub fn weights(&self) -> &[Rational] {
        &self.w
    }

    /// Pairs `(x, y)`, `x < y`, in the order of [`Self::weights`].
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.k).flat_map(move |x| (x + 1..self.k).map(move |y| (x, y)))
    }

    /// `w(R)`, the sum of all weights.
    pub fn total(&self) -> Rational {
        self.w.iter().fold(Rational::zero(), |a, b| a + b)
    }

    /// `d_w(x)`.
    pub fn degree(&self, x: usize) -> Rational {
        (0..self.k)
            .filter(|&y| y != x)
            .fold(Rational::zero(), |a, y| a + self.get(x, y))
    }

    /// `F_w`: weight values other than 0, 1/2 and 1.
    pub fn free_values(&self) -> BTreeSet<Rational> {
        self.w
            .iter()
            .copied()
            .filter(|r| !r.is_zero() && *r != half() && !r.is_one())
            .collect()
    }

    pub fn restrict(&self, subset: &[usize]) -> Self {
        let mut r = Self::constant(subset.len(), Rational::zero());
        for i in 0..subset.len() {
            for j in i + 1..subset.len() {
                r.set(i, j, self.get(subset[i], subset[j]));
            }
        }
        r
    }

    /// Graph of the pairs whose weight satisfies `pred`.
    pub fn graph_where(&self, pred: impl Fn(Rational) -> bool) -> DenseGraph {
        let mut g = DenseGraph::empty(self.k);
        for (x, y) in self.pairs() {
            if pred(self.get(x, y)) {
                g.add_edge(x, y);
            }
        }
        g
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    k: usize,
    /// `[x, y, "p/q"]` for every pair.
    edges: Vec<(usize, usize, String)>,
}

impl Serialize for WeightedCompleteGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            k: self.k,
            edges: self
                .pairs()
                .map(|(x, y)| (x, y, fmt_rational(&self.get(x, y))))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedCompleteGraph {
    /// Pairs not listed default to weight 0.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        let mut g = WeightedCompleteGraph::constant(r.k, Rational::zero());
        for (x, y, w) in r.edges {
            if x == y || x >= r.k || y >= r.k {
                return Err(D::Error::custom(format!("pair ({x},{y}) out of range")));
            }
            let w = parse_rational(&w).map_err(D::Error::custom)?;
            if !is_unit_interval(&w) {
                return Err(D::Error::custom(format!("weight {} outside [0,1]", fmt_rational(&w))));
            }
            g.set(x, y, w);
        }
        Ok(g)
    }
}
