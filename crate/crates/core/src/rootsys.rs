//! Classical finite root systems in standard epsilon coordinates.
//!
//! Roots are stored as integer coefficient vectors in the basis of simple
//! roots; ambient coordinates are recovered with [`RootSystem::to_ambient`].
//! Three pairings are available:
//!
//! * the raw Euclidean dot product of ambient coordinates,
//! * the normalized pairing with `(theta, theta) = 2`,
//! * the Killing-induced pairing, which is the normalized one divided by
//!   `2 h^vee`, so that `<theta, theta> = 1 / h^vee`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::linalg::{dot, vscale, QMatrix};
use crate::{q, qi, Error, Result, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    /// Smallest supported rank.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
        }
    }

    fn rank_constraint(self) -> &'static str {
        match self {
            Family::A => "type A requires rank >= 1",
            Family::B => "type B requires rank >= 2",
            Family::C => "type C requires rank >= 2",
            Family::D => "type D requires rank >= 4",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::InvalidInput(format!(
                "unknown family '{other}' (expected A, B, C or D)"
            ))),
        }
    }
}

/// Coefficients of a root (or any element of the root lattice) in the simple roots.
pub type RootCoeffs = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    simple_roots: Vec<Vec<Q>>,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)`.
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<RootCoeffs>,
    /// Positive roots followed by their negatives, in the same order.
    roots: Vec<RootCoeffs>,
    root_index: HashMap<RootCoeffs, usize>,
    theta: RootCoeffs,
    fundamental_weights: Vec<Vec<Q>>,
    rho: Vec<Q>,
    /// Multiplies the Euclidean dot product to give `(theta, theta) = 2`.
    norm_scale: Q,
    /// Multiplies the normalized pairing to give the Killing-induced one.
    killing_scale: Q,
    comarks: Vec<i64>,
    h_vee: i64,
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<Self> {
        if rank < family.min_rank() {
            return Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                constraint: family.rank_constraint(),
            });
        }
        let simple_roots = ambient_simple_roots(family, rank);
        let cartan = cartan_from_ambient(&simple_roots);
        let positive_roots = positive_roots_by_saturation(&cartan);
        let mut roots = positive_roots.clone();
        roots.extend(
            positive_roots
                .iter()
                .map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()),
        );
        let root_index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();

        // Saturation emits roots by ascending height, so the highest root is last.
        let theta = positive_roots
            .last()
            .cloned()
            .ok_or_else(|| Error::Internal("empty root system".into()))?;

        let mut rs = RootSystem {
            family,
            rank,
            simple_roots,
            cartan,
            positive_roots,
            roots,
            root_index,
            theta,
            fundamental_weights: Vec::new(),
            rho: Vec::new(),
            norm_scale: Q::one(),
            killing_scale: Q::one(),
            comarks: Vec::new(),
            h_vee: 0,
        };

        let theta_amb = rs.to_ambient(&rs.theta);
        rs.norm_scale = qi(2) / dot(&theta_amb, &theta_amb);
        rs.fundamental_weights = rs.solve_fundamental_weights()?;
        rs.rho = rs
            .fundamental_weights
            .iter()
            .fold(vec![Q::zero(); rs.ambient_dim()], |acc, w| {
                crate::linalg::vadd(&acc, w)
            });

        let theta_sq = rs.normalized_dot(&theta_amb, &theta_amb);
        let mut comarks = Vec::with_capacity(rank);
        for w in &rs.fundamental_weights {
            let c = qi(2) * rs.normalized_dot(&theta_amb, w) / &theta_sq;
            if !c.is_integer() {
                return Err(Error::Internal(format!("non-integral comark {c}")));
            }
            comarks.push(i64::try_from(c.to_integer()).expect("comark fits in i64"));
        }
        rs.h_vee = 1 + comarks.iter().sum::<i64>();
        rs.comarks = comarks;
        rs.killing_scale = q(1, 2 * rs.h_vee);
        Ok(rs)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the ambient epsilon space (`rank + 1` for type A).
    pub fn ambient_dim(&self) -> usize {
        self.simple_roots[0].len()
    }

    pub fn simple_roots(&self) -> &[Vec<Q>] {
        &self.simple_roots
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[RootCoeffs] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// All roots: positive ones first, then their negatives in the same order.
    pub fn roots(&self) -> &[RootCoeffs] {
        &self.roots
    }

    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.root_index.get(coeffs).copied()
    }

    pub fn is_root(&self, coeffs: &[i64]) -> bool {
        self.root_index.contains_key(coeffs)
    }

    pub fn is_positive_index(&self, idx: usize) -> bool {
        idx < self.positive_roots.len()
    }

    /// Index of the negative of the root at `idx`.
    pub fn negate_index(&self, idx: usize) -> usize {
        let p = self.positive_roots.len();
        if idx < p {
            idx + p
        } else {
            idx - p
        }
    }

    pub fn theta(&self) -> &RootCoeffs {
        &self.theta
    }

    pub fn theta_ambient(&self) -> Vec<Q> {
        self.to_ambient(&self.theta)
    }

    pub fn fundamental_weights(&self) -> &[Vec<Q>] {
        &self.fundamental_weights
    }

    pub fn rho(&self) -> &[Q] {
        &self.rho
    }

    /// Factor converting the `(theta, theta) = 2` pairing into the Killing-induced one.
    pub fn killing_scale(&self) -> &Q {
        &self.killing_scale
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.h_vee
    }

    /// `(comarks, h^vee)` with `h^vee = 1 + sum of comarks`.
    pub fn comarks_and_dual_coxeter(&self) -> (Vec<i64>, i64) {
        (self.comarks.clone(), self.h_vee)
    }

    pub fn height(coeffs: &[i64]) -> i64 {
        coeffs.iter().sum()
    }

    pub fn to_ambient(&self, coeffs: &[i64]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.ambient_dim()];
        for (c, a) in coeffs.iter().zip(&self.simple_roots) {
            if *c != 0 {
                let s = qi(*c);
                for (x, y) in v.iter_mut().zip(a) {
                    *x += &s * y;
                }
            }
        }
        v
    }

    /// Expands an ambient vector in simple roots; fails off the root lattice.
    pub fn simple_expansion(&self, v: &[Q]) -> Result<RootCoeffs> {
        self.check_dim(v)?;
        let basis = QMatrix::from_rows(self.simple_roots.clone()).transpose();
        let x = basis.solve(v).ok_or(Error::NotInRootLattice)?;
        x.into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(i64::try_from(c.to_integer()).map_err(|_| Error::NotInRootLattice)?)
                } else {
                    Err(Error::NotInRootLattice)
                }
            })
            .collect()
    }

    fn check_dim(&self, v: &[Q]) -> Result<()> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: v.len(),
            });
        }
        Ok(())
    }

    fn normalized_dot(&self, v: &[Q], w: &[Q]) -> Q {
        dot(v, w) * &self.norm_scale
    }

    /// Pairing normalized so that `(theta, theta) = 2`.
    pub fn normalized_pair(&self, v: &[Q], w: &[Q]) -> Result<Q> {
        self.check_dim(v)?;
        self.check_dim(w)?;
        Ok(self.normalized_dot(v, w))
    }

    /// Killing-induced pairing on the weight space.
    pub fn killing_pair(&self, v: &[Q], w: &[Q]) -> Result<Q> {
        Ok(self.normalized_pair(v, w)? * &self.killing_scale)
    }

    /// `2 <rho, theta> + <theta, theta>` in the Killing normalization.
    pub fn strange_identity(&self) -> Q {
        let theta = self.theta_ambient();
        let rt = self.killing_pair(&self.rho, &theta).expect("same space");
        let tt = self.killing_pair(&theta, &theta).expect("same space");
        qi(2) * rt + tt
    }

    /// `<beta, alpha_i^vee>` for `beta` given in simple-root coefficients.
    pub fn pair_with_coroot(&self, beta: &[i64], i: usize) -> i64 {
        self.cartan[i].iter().zip(beta).map(|(a, b)| a * b).sum()
    }

    /// Simple reflection `s_i` applied to a root-lattice element.
    pub fn reflect(&self, beta: &[i64], i: usize) -> RootCoeffs {
        let mut out = beta.to_vec();
        out[i] -= self.pair_with_coroot(beta, i);
        out
    }

    /// Extended Cartan matrix with node 0 the affine root `delta - theta`.
    ///
    /// Entry `(i, j)` is `2 (a_i, a_j) / (a_i, a_i)`; `delta` pairs trivially
    /// with everything, so `alpha_0` pairs like `-theta`.
    pub fn extended_cartan_matrix(&self) -> Vec<Vec<i64>> {
        let mut nodes = Vec::with_capacity(self.rank + 1);
        nodes.push(vscale(&qi(-1), &self.theta_ambient()));
        nodes.extend(self.simple_roots.iter().cloned());
        cartan_from_ambient(&nodes)
    }

    fn solve_fundamental_weights(&self) -> Result<Vec<Vec<Q>>> {
        // lambda_i = sum_k m_ik alpha_k with <lambda_i, alpha_j^vee> = delta_ij,
        // i.e. M * G = I where G_kj = <alpha_k, alpha_j^vee> = cartan[j][k].
        let g = QMatrix::from_rows(
            (0..self.rank)
                .map(|k| (0..self.rank).map(|j| qi(self.cartan[j][k])).collect())
                .collect(),
        );
        let m = g
            .inverse()
            .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
        Ok((0..self.rank)
            .map(|i| {
                let mut v = vec![Q::zero(); self.ambient_dim()];
                for k in 0..self.rank {
                    let c = &m[(i, k)];
                    for (x, y) in v.iter_mut().zip(&self.simple_roots[k]) {
                        *x += c * y;
                    }
                }
                v
            })
            .collect())
    }
}

fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

fn diff(dim: usize, i: usize, j: usize) -> Vec<Q> {
    let mut v = unit(dim, i);
    v[j] = qi(-1);
    v
}

fn ambient_simple_roots(family: Family, rank: usize) -> Vec<Vec<Q>> {
    let n = rank;
    match family {
        Family::A => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
        Family::B => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(unit(n, n - 1));
            s
        }
        Family::C => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(vscale(&qi(2), &unit(n, n - 1)));
            s
        }
        Family::D => {
            let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = unit(n, n - 2);
            last[n - 1] = Q::one();
            s.push(last);
            s
        }
    }
}

fn cartan_from_ambient(nodes: &[Vec<Q>]) -> Vec<Vec<i64>> {
    nodes
        .iter()
        .map(|ai| {
            let aii = dot(ai, ai);
            nodes
                .iter()
                .map(|aj| {
                    let v = qi(2) * dot(ai, aj) / &aii;
                    assert!(v.is_integer(), "non-integral Cartan entry");
                    i64::try_from(v.to_integer()).expect("small Cartan entry")
                })
                .collect()
        })
        .collect()
}

fn pair_with(cartan: &[Vec<i64>], beta: &[i64], i: usize) -> i64 {
    cartan[i].iter().zip(beta).map(|(a, b)| a * b).sum()
}

fn simple(rank: usize, i: usize) -> RootCoeffs {
    let mut v = vec![0; rank];
    v[i] = 1;
    v
}

/// Positive roots by climbing root strings from the simple roots.
///
/// For a positive root `beta` and simple `alpha_i`, the `alpha_i`-string
/// through `beta` runs from `beta - p alpha_i` to `beta + q alpha_i` with
/// `p - q = <beta, alpha_i^vee>`; `p` is read off the roots already found at
/// lower heights. Output is sorted by height, then lexicographically.
pub fn positive_roots_by_saturation(cartan: &[Vec<i64>]) -> Vec<RootCoeffs> {
    let rank = cartan.len();
    let mut found: HashSet<RootCoeffs> = HashSet::new();
    let mut layers: Vec<BTreeSet<RootCoeffs>> = vec![(0..rank).map(|i| simple(rank, i)).collect()];
    found.extend(layers[0].iter().cloned());
    loop {
        let mut next = BTreeSet::new();
        for beta in layers.last().expect("non-empty") {
            for i in 0..rank {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if found.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - pair_with(cartan, beta, i);
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        found.extend(next.iter().cloned());
        layers.push(next);
    }
    layers.into_iter().flatten().collect()
}

/// Positive roots as the orbit of the simple roots under simple reflections.
///
/// Independent of [`positive_roots_by_saturation`]; same output ordering.
pub fn positive_roots_by_reflection(cartan: &[Vec<i64>]) -> Vec<RootCoeffs> {
    let rank = cartan.len();
    let mut seen: HashSet<RootCoeffs> = (0..rank).map(|i| simple(rank, i)).collect();
    let mut queue: Vec<RootCoeffs> = seen.iter().cloned().collect();
    while let Some(beta) = queue.pop() {
        for i in 0..rank {
            let mut img = beta.clone();
            img[i] -= pair_with(cartan, &beta, i);
            if seen.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    let mut pos: Vec<RootCoeffs> = seen
        .into_iter()
        .filter(|r| r.iter().all(|&c| c >= 0))
        .collect();
    pos.sort_by(|a, b| {
        RootSystem::height(a)
            .cmp(&RootSystem::height(b))
            .then(a.cmp(b))
    });
    pos
}

/// `alpha_1+2alpha_2` style label for a root-lattice element.
pub fn root_label(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push_str(&format!("alpha_{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
