//! Degree bookkeeping for maps into loop-group flag manifolds.
//!
//! For a Levi set `Δ0` of finite nodes, `λ̂_i = λ_i - Σ_j n_ij λ_j` is the
//! Levi fundamental weight: it lies in `span{α_k : k ∈ Δ0}` and pairs to
//! `δ_ik` with the Levi coroots. Pairing with `α_j^∨` gives
//! `n_ij = -<λ̂_i, α_j^∨>`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::affine::Crossing;
use crate::linalg::QMatrix;
use crate::rootsys::RootSystem;
use crate::{qi, Error, Result, Q};

/// Charges `k_i` indexed by the crossed nodes of a crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDegree {
    nodes: Vec<usize>,
    values: Vec<i64>,
}

impl MultiDegree {
    /// `values` are listed in increasing node order.
    pub fn new(c: &Crossing, values: Vec<i64>) -> Result<Self> {
        let nodes = c.crossed_nodes();
        if nodes.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: nodes.len(),
                got: values.len(),
            });
        }
        Ok(MultiDegree { nodes, values })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, node: usize) -> Option<i64> {
        self.nodes
            .iter()
            .position(|&n| n == node)
            .map(|p| self.values[p])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviConstants {
    /// Finite Levi nodes `Δ0` (1-based).
    pub delta0: Vec<usize>,
    /// Finite nodes outside `Δ0` (1-based).
    pub crossed: Vec<usize>,
    /// `n[(i, j)]` for `i ∈ Δ0`, `j` crossed.
    pub n: BTreeMap<(usize, usize), Q>,
    /// `N_j = Σ_i n_ij`.
    pub big_n: BTreeMap<usize, Q>,
}

impl LeviConstants {
    pub fn n_ij(&self, i: usize, j: usize) -> Option<&Q> {
        self.n.get(&(i, j))
    }

    pub fn big_n(&self, j: usize) -> Option<&Q> {
        self.big_n.get(&j)
    }
}

pub fn levi_constants(rs: &RootSystem, delta0: &[usize]) -> Result<LeviConstants> {
    let r = rs.rank();
    let mut d0: Vec<usize> = delta0.to_vec();
    d0.sort_unstable();
    d0.dedup();
    if let Some(&bad) = d0.iter().find(|&&i| i == 0 || i > r) {
        return Err(Error::NodeMismatch(format!(
            "Levi node {bad} not in 1..={r}"
        )));
    }
    let crossed: Vec<usize> = (1..=r).filter(|j| !d0.contains(j)).collect();
    let cartan = rs.cartan_matrix();
    // cartan[l][k] = <α_k, α_l^∨>; restrict to Δ0 and solve for λ̂_i's coefficients.
    let sub = QMatrix::from_rows(
        d0.iter()
            .map(|&l| d0.iter().map(|&k| qi(cartan[l - 1][k - 1])).collect())
            .collect(),
    );
    let inv = if d0.is_empty() {
        QMatrix::zeros(0, 0)
    } else {
        sub.inverse()
            .ok_or_else(|| Error::Internal("singular Levi Cartan matrix".into()))?
    };
    let mut n = BTreeMap::new();
    let mut big_n: BTreeMap<usize, Q> = crossed.iter().map(|&j| (j, Q::zero())).collect();
    for (a, &i) in d0.iter().enumerate() {
        let coeffs = inv.col(a);
        for &j in &crossed {
            let v: Q = -d0
                .iter()
                .zip(&coeffs)
                .map(|(&k, c)| c * qi(cartan[j - 1][k - 1]))
                .sum::<Q>();
            *big_n.get_mut(&j).expect("crossed node") += &v;
            n.insert((i, j), v);
        }
    }
    Ok(LeviConstants {
        delta0: d0,
        crossed,
        n,
        big_n,
    })
}

/// `n_i0` (the comarks) and `N_0 = Σ_i n_i0`.
pub fn affine_node_constants(rs: &RootSystem) -> (Vec<Q>, Q) {
    let n: Vec<Q> = rs.comarks().iter().map(|&c| qi(c)).collect();
    let total = n.iter().sum();
    (n, total)
}

/// `d = 4 Σ_{crossed i} (1 + N_i) k_i`.
pub fn formal_degree(rs: &RootSystem, c: &Crossing, k: &MultiDegree) -> Result<i64> {
    c.check_for(rs)?;
    if k.nodes() != c.crossed_nodes().as_slice() {
        return Err(Error::NodeMismatch(format!(
            "multi-degree on nodes {:?} does not match crossing {c}",
            k.nodes()
        )));
    }
    let levi = levi_constants(
        rs,
        &c.uncrossed_nodes()
            .into_iter()
            .filter(|&i| i > 0)
            .collect::<Vec<_>>(),
    )?;
    let (_, n0) = affine_node_constants(rs);
    let mut d = Q::zero();
    for (&node, &ki) in k.nodes().iter().zip(k.values()) {
        let big_n = if node == 0 {
            n0.clone()
        } else {
            levi.big_n(node).cloned().expect("crossed finite node")
        };
        d += (Q::one() + big_n) * qi(ki);
    }
    d *= qi(4);
    if !d.is_integer() {
        return Err(Error::Internal(format!(
            "non-integral degree {}",
            crate::fmt_q(&d)
        )));
    }
    i64::try_from(d.to_integer()).map_err(|_| Error::ResourceLimit("degree overflow".into()))
}

/// Framed instanton moduli dimension `4 h^∨ k`.
pub fn instanton_dimension(rs: &RootSystem, k: u64) -> i64 {
    4 * rs.dual_coxeter() * k as i64
}

/// `(k + j_1, k + j_1 + j_2, ..., k + Σ j, k)`.
pub fn charges(k: i64, j: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(j.len() + 1);
    let mut acc = k;
    for x in j {
        acc += x;
        out.push(acc);
    }
    out.push(k);
    out
}

/// `(k_1, ..., k_n) ↦ (k_n, k_1, ..., k_{n-1})`.
pub fn hecke_degree_action(n: usize, k: &[i64]) -> Result<Vec<i64>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("need n >= 2, got {n}")));
    }
    if k.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: k.len(),
        });
    }
    let mut out = k.to_vec();
    out.rotate_right(1);
    Ok(out)
}
