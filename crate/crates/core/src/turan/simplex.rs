//! Exact minimum of `phi(Q)` over the probability simplex.
//!
//! `phi` is the quadratic form `x^T M x` with `M` = identity plus 1/2 on
//! edges. On each support `S` the stationarity system `2 M_S x = mu 1`,
//! `sum x = 1` is solved by fraction-free elimination; a feasible solution
//! has value `mu / 2`. A minimiser with smallest support is always such a
//! point: if the system were singular there, the null direction keeps the
//! value constant and leads to a smaller support.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DenseGraph;
use crate::rational::{serde_str, Rational};

use super::quotient::{phi_weight, serde_phi};

pub const MAX_SIMPLEX_N: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiMinimum {
    #[serde(with = "serde_str")]
    pub value: Rational,
    #[serde(with = "serde_phi")]
    pub phi: Vec<Rational>,
    /// Vertices with positive weight at the optimum.
    pub support: Vec<usize>,
    /// Common value of `(2 M phi)_a` on the support.
    #[serde(with = "serde_str")]
    pub multiplier: Rational,
    pub faces: usize,
    pub stationary_points: usize,
}

/// Solves `a x = b` for square integer `a` by Bareiss elimination, or
/// `None` when `a` is singular.
pub fn solve_fraction_free(a: &[Vec<i128>], b: &[i128]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let mut prev = 1i128;
    for k in 0..n {
        let p = (k..n).find(|&i| m[i][k] != 0)?;
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n]);
        for j in i + 1..n {
            acc -= Rational::from_integer(m[i][j]) * x[j];
        }
        x[i] = acc / Rational::from_integer(m[i][i]);
    }
    Some(x)
}

/// The stationary point on support `s` (given as a bitmask), if the system
/// is regular.
fn face_point(q: &DenseGraph, support: &[usize]) -> Option<(Vec<Rational>, Rational)> {
    let m = support.len();
    let mut a = vec![vec![0i128; m + 1]; m + 1];
    let mut b = vec![0i128; m + 1];
    for (i, &u) in support.iter().enumerate() {
        for (j, &v) in support.iter().enumerate() {
            a[i][j] = if i == j {
                2
            } else if q.has_edge(u, v) {
                1
            } else {
                0
            };
        }
        a[i][m] = -1;
        a[m][i] = 1;
    }
    b[m] = 1;
    let x = solve_fraction_free(&a, &b)?;
    let mu = x[m];
    Some((x[..m].to_vec(), mu))
}

/// Exact global minimum of `phi(Q)` over the simplex by enumerating faces.
/// Among equal values the smallest support (then the first in mask order)
/// is reported.
pub fn minimize_phi(q: &DenseGraph) -> Result<PhiMinimum> {
    let s = q.n();
    if s == 0 {
        return Err(Error::EmptyGraph);
    }
    if s > MAX_SIMPLEX_N {
        return Err(Error::Capacity {
            what: "vertices for simplex minimisation",
            got: s,
            limit: MAX_SIMPLEX_N,
        });
    }
    let mut best: Option<PhiMinimum> = None;
    let mut stationary_points = 0;
    let faces = (1usize << s) - 1;
    for mask in 1..=faces {
        let support: Vec<usize> = (0..s).filter(|v| mask >> v & 1 == 1).collect();
        let Some((x, mu)) = face_point(q, &support) else {
            continue;
        };
        if x.iter().any(|v| !v.is_positive()) {
            continue;
        }
        stationary_points += 1;
        let value = mu / 2;
        let better = match &best {
            None => true,
            Some(b) => value < b.value || (value == b.value && support.len() < b.support.len()),
        };
        if better {
            let mut phi = vec![Rational::zero(); s];
            for (&v, &p) in support.iter().zip(&x) {
                phi[v] = p;
            }
            best = Some(PhiMinimum {
                value,
                phi,
                support,
                multiplier: mu,
                faces: 0,
                stationary_points: 0,
            });
        }
    }
    let mut best = best.expect("every vertex alone is a stationary face");
    best.faces = faces;
    best.stationary_points = stationary_points;
    Ok(best)
}

/// `(2 M phi)_a` for every vertex.
pub fn gradient(q: &DenseGraph, phi: &[Rational]) -> Vec<Rational> {
    (0..q.n())
        .map(|a| q.neighbors(a).fold(phi[a] * 2, |acc, b| acc + phi[b]))
        .collect()
}

/// Checks a certificate: `phi` lies on the simplex with the stated support,
/// its value matches, the gradient equals the multiplier on the support and
/// is at least the multiplier elsewhere.
pub fn check_certificate(q: &DenseGraph, m: &PhiMinimum) -> bool {
    let s = q.n();
    if m.phi.len() != s || m.phi.iter().any(|p| p.is_negative()) {
        return false;
    }
    if m.phi.iter().fold(Rational::zero(), |a, b| a + b) != Rational::one() {
        return false;
    }
    let support: Vec<usize> = (0..s).filter(|&v| m.phi[v].is_positive()).collect();
    if support != m.support || phi_weight(q, &m.phi) != m.value || m.value * 2 != m.multiplier {
        return false;
    }
    let g = gradient(q, &m.phi);
    (0..s).all(|a| {
        if m.phi[a].is_positive() {
            g[a] == m.multiplier
        } else {
            g[a] >= m.multiplier
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, to_f64};
    use crate::rng::seeded;
    use crate::testutil::arb_graph_range;
    use proptest::prelude::*;

    fn phi_f64(q: &DenseGraph, x: &[f64]) -> f64 {
        let mut v: f64 = x.iter().map(|a| a * a).sum();
        for (a, b) in q.edges() {
            v += x[a] * x[b];
        }
        v
    }

    /// Every composition of `steps` into `s` parts.
    fn grid_min(q: &DenseGraph, steps: usize) -> f64 {
        fn rec(q: &DenseGraph, i: usize, left: usize, steps: usize, x: &mut Vec<f64>, best: &mut f64) {
            let s = q.n();
            if i == s - 1 {
                x[i] = left as f64 / steps as f64;
                *best = best.min(phi_f64(q, x));
                return;
            }
            for c in 0..=left {
                x[i] = c as f64 / steps as f64;
                rec(q, i + 1, left - c, steps, x, best);
            }
        }
        let mut best = f64::INFINITY;
        rec(q, 0, steps, steps, &mut vec![0.0; q.n()], &mut best);
        best
    }

    #[test]
    fn fraction_free_solver() {
        let a = vec![vec![2, 1], vec![1, 3]];
        assert_eq!(solve_fraction_free(&a, &[3, 5]), Some(vec![rat(4, 5), rat(7, 5)]));
        assert_eq!(solve_fraction_free(&[vec![1, 2], vec![2, 4]], &[1, 1]), None);
        let a = vec![vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]];
        let x = solve_fraction_free(&a, &[1, 2, 3]).unwrap();
        for (row, rhs) in a.iter().zip([1, 2, 3]) {
            let lhs = row.iter().zip(&x).fold(rat(0, 1), |acc, (&c, v)| acc + *v * c);
            assert_eq!(lhs, rat(rhs, 1));
        }
    }

    #[test]
    fn exact_examples() {
        for s in 1..=MAX_SIMPLEX_N {
            let e = minimize_phi(&DenseGraph::empty(s)).unwrap();
            assert_eq!(e.value, rat(1, s as i128));
            assert!(e.phi.iter().all(|p| *p == rat(1, s as i128)));
            let k = minimize_phi(&DenseGraph::complete(s)).unwrap();
            assert_eq!(k.value, rat(s as i128 + 1, 2 * s as i128));
        }
        let c5 = minimize_phi(&DenseGraph::cycle(5)).unwrap();
        assert!(check_certificate(&DenseGraph::cycle(5), &c5));
        assert!((to_f64(&c5.value) - grid_min(&DenseGraph::cycle(5), 200)).abs() < 1e-9);
        assert!(minimize_phi(&DenseGraph::empty(13)).is_err());
        assert!(minimize_phi(&DenseGraph::empty(0)).is_err());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let q = DenseGraph::path(4);
        let mut m = minimize_phi(&q).unwrap();
        assert!(check_certificate(&q, &m));
        m.value += rat(1, 100);
        assert!(!check_certificate(&q, &m));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn certificate_and_grid(q in arb_graph_range(1, 6)) {
            let m = minimize_phi(&q).unwrap();
            prop_assert!(check_certificate(&q, &m));
            let steps = if q.n() <= 4 { 60 } else { 20 };
            let g = grid_min(&q, steps);
            prop_assert!(to_f64(&m.value) <= g + 1e-12);
        }

        #[test]
        fn random_points_never_beat_the_minimum(q in arb_graph_range(2, 10), seed in any::<u64>()) {
            use rand::Rng as _;
            let m = minimize_phi(&q).unwrap();
            let mut rng = seeded(seed);
            for _ in 0..50 {
                let raw: Vec<i128> = (0..q.n()).map(|_| rng.gen_range(0..20)).collect();
                let total: i128 = raw.iter().sum();
                if total == 0 {
                    continue;
                }
                let phi: Vec<Rational> = raw.iter().map(|&r| rat(r, total)).collect();
                prop_assert!(phi_weight(&q, &phi) >= m.value);
            }
        }
    }
}
