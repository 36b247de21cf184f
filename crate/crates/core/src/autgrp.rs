//! Symmetries of extended Dynkin diagrams and their action on crossings.
//!
//! An automorphism is a permutation of the nodes `0..=r` preserving the
//! extended Cartan matrix, which records edges, multiplicities and arrow
//! directions at once.

use std::fmt;

use crate::affine::Crossing;
use crate::rootsys::{Family, RootSystem};
use crate::{Error, Result};

/// Node permutation; `perm[i]` is the image of node `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(nodes: usize) -> Self {
        DiagramAutomorphism {
            perm: (0..nodes).collect(),
        }
    }

    /// Wraps a permutation; fails if `perm` is not a bijection of `0..len`.
    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidInput(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        Ok(DiagramAutomorphism { perm })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn num_nodes(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, node: usize) -> usize {
        self.perm[node]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.num_nodes(), other.num_nodes());
        DiagramAutomorphism {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        DiagramAutomorphism { perm: inv }
    }

    pub fn preserves(&self, cartan: &[Vec<i64>]) -> bool {
        let n = self.perm.len();
        cartan.len() == n
            && (0..n).all(|i| (0..n).all(|j| cartan[self.perm[i]][self.perm[j]] == cartan[i][j]))
    }
}

impl fmt::Display for DiagramAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.perm.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All permutations preserving `cartan`, by depth-first assignment with
/// pairwise pruning. Sorted lexicographically, so the identity comes first.
pub fn automorphisms_of_matrix(cartan: &[Vec<i64>]) -> Vec<DiagramAutomorphism> {
    let n = cartan.len();
    let signature = |i: usize| {
        let mut row = cartan[i].clone();
        row.sort_unstable();
        let mut col: Vec<i64> = (0..n).map(|j| cartan[j][i]).collect();
        col.sort_unstable();
        (row, col)
    };
    let sigs: Vec<_> = (0..n).map(signature).collect();

    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(cartan, &sigs, &mut perm, &mut used, &mut out);
    out.sort();
    out
}

type Signature = (Vec<i64>, Vec<i64>);

fn extend(
    cartan: &[Vec<i64>],
    sigs: &[Signature],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<DiagramAutomorphism>,
) {
    let k = perm.len();
    let n = cartan.len();
    if k == n {
        out.push(DiagramAutomorphism { perm: perm.clone() });
        return;
    }
    for v in 0..n {
        if used[v] || sigs[v] != sigs[k] {
            continue;
        }
        let compatible = perm
            .iter()
            .enumerate()
            .all(|(j, &pj)| cartan[v][pj] == cartan[k][j] && cartan[pj][v] == cartan[j][k]);
        if !compatible {
            continue;
        }
        used[v] = true;
        perm.push(v);
        extend(cartan, sigs, perm, used, out);
        perm.pop();
        used[v] = false;
    }
}

/// Automorphism group of the extended Dynkin diagram of `rs`.
pub fn automorphism_group(rs: &RootSystem) -> Vec<DiagramAutomorphism> {
    automorphisms_of_matrix(&rs.extended_cartan_matrix())
}

/// `D_4`: the extended diagram is a star with four leaves, whose symmetry
/// group is the full `S_4` rather than the order-8 group of `D_n`, `n >= 5`.
pub fn is_exceptional(rs: &RootSystem) -> bool {
    rs.family() == Family::D && rs.rank() == 4
}

/// `(sigma . c)(i) = c(sigma^-1(i))`.
pub fn act_on_crossing(sigma: &DiagramAutomorphism, c: &Crossing) -> Result<Crossing> {
    if sigma.num_nodes() != c.num_nodes() {
        return Err(Error::NodeMismatch(format!(
            "automorphism on {} nodes applied to crossing on {}",
            sigma.num_nodes(),
            c.num_nodes()
        )));
    }
    let inv = sigma.inverse();
    Ok(Crossing::new(
        (0..c.num_nodes())
            .map(|i| c.is_crossed(inv.apply(i)))
            .collect(),
    ))
}

/// Some automorphism taking `c` to a standard crossing (node 0 crossed), if any.
pub fn standardizable(rs: &RootSystem, c: &Crossing) -> Result<Option<DiagramAutomorphism>> {
    c.check_for(rs)?;
    if c.is_improper() {
        return Err(Error::ImproperCrossing);
    }
    Ok(automorphism_group(rs)
        .into_iter()
        .find(|s| c.is_crossed(s.inverse().apply(0))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn group(f: Family, r: usize) -> Vec<DiagramAutomorphism> {
        automorphism_group(&RootSystem::build(f, r).unwrap())
    }

    #[test]
    fn orders() {
        assert_eq!(group(Family::A, 1).len(), 2);
        for n in 3..=6 {
            assert_eq!(group(Family::A, n - 1).len(), 2 * n, "A{}", n - 1);
        }
        for n in 2..=5 {
            assert_eq!(group(Family::B, n).len(), 2, "B{n}");
            assert_eq!(group(Family::C, n).len(), 2, "C{n}");
        }
        assert_eq!(group(Family::D, 4).len(), 24);
        assert_eq!(group(Family::D, 5).len(), 8);
    }

    #[test]
    fn matches_exhaustive_permutation_search() {
        for (f, r) in [
            (Family::A, 4),
            (Family::B, 4),
            (Family::C, 3),
            (Family::D, 4),
            (Family::D, 5),
        ] {
            let rs = RootSystem::build(f, r).unwrap();
            let m = rs.extended_cartan_matrix();
            let brute: Vec<DiagramAutomorphism> = (0..=r)
                .permutations(r + 1)
                .map(|p| DiagramAutomorphism { perm: p })
                .filter(|s| s.preserves(&m))
                .sorted()
                .collect();
            assert_eq!(automorphism_group(&rs), brute, "{f}{r}");
        }
    }

    #[test]
    fn group_closed() {
        let g = group(Family::D, 5);
        assert!(g[0].is_identity());
        for a in &g {
            assert!(g.contains(&a.inverse()));
            for b in &g {
                assert!(g.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn sl2_swap_exchanges_standard_and_exotic() {
        let g = group(Family::A, 1);
        let swap = g.iter().find(|s| !s.is_identity()).unwrap();
        let c = Crossing::only_affine_node(1);
        assert_eq!(
            act_on_crossing(swap, &c).unwrap(),
            Crossing::from_nodes(1, &[1]).unwrap()
        );
    }

    #[test]
    fn action_is_group_action() {
        let g = group(Family::D, 4);
        let id = &g[0];
        for c in Crossing::all(4) {
            assert_eq!(act_on_crossing(id, &c).unwrap(), c);
            for a in &g {
                assert_eq!(act_on_crossing(&a.compose(&a.inverse()), &c).unwrap(), c);
                for b in g.iter().take(6) {
                    let lhs = act_on_crossing(&a.compose(b), &c).unwrap();
                    let rhs = act_on_crossing(a, &act_on_crossing(b, &c).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        assert!(act_on_crossing(id, &Crossing::borel(3)).is_err());
    }

    #[test]
    fn standardizable_examples() {
        let rs = RootSystem::build(Family::D, 5).unwrap();
        let only2 = Crossing::from_nodes(5, &[2]).unwrap();
        assert_eq!(standardizable(&rs, &only2).unwrap(), None);
        let only1 = Crossing::from_nodes(5, &[1]).unwrap();
        let s = standardizable(&rs, &only1).unwrap().unwrap();
        assert!(act_on_crossing(&s, &only1).unwrap().is_crossed(0));
        assert_eq!(
            standardizable(&rs, &Crossing::new(vec![false; 6])),
            Err(Error::ImproperCrossing)
        );

        let a = RootSystem::build(Family::A, 4).unwrap();
        for c in Crossing::all(4).filter(|c| !c.is_improper()) {
            assert!(standardizable(&a, &c).unwrap().is_some());
        }
    }

    #[test]
    fn from_perm_validates() {
        assert!(DiagramAutomorphism::from_perm(vec![1, 0, 2]).is_ok());
        assert!(DiagramAutomorphism::from_perm(vec![1, 1, 2]).is_err());
        assert!(DiagramAutomorphism::from_perm(vec![0, 3, 1]).is_err());
    }
}
