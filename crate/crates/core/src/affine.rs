//! Crossings of the extended Dynkin diagram and the parabolic subalgebras of
//! the loop algebra they determine.
//!
//! A crossing assigns 0 or 1 to each of the nodes `alpha_0 = delta - theta,
//! alpha_1, ..., alpha_r`; extended Z-linearly this is a function `chi` on
//! affine roots. The parabolic is spanned by the root spaces `z^n g_alpha`
//! with `chi(n delta + alpha) >= 0` together with the Cartan part.

use std::collections::BTreeSet;
use std::fmt;

use crate::rootsys::RootSystem;
use crate::{Error, Result, Q};

/// Crossed nodes of an extended diagram; index 0 is the affine node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    crossed: Vec<bool>,
}

impl Crossing {
    pub fn new(crossed: Vec<bool>) -> Self {
        Crossing { crossed }
    }

    /// Crossing on the extended diagram of a rank-`rank` system with the given nodes crossed.
    pub fn from_nodes(rank: usize, nodes: &[usize]) -> Result<Self> {
        let mut crossed = vec![false; rank + 1];
        for &i in nodes {
            if i > rank {
                return Err(Error::NodeMismatch(format!(
                    "node {i} out of range 0..={rank}"
                )));
            }
            crossed[i] = true;
        }
        Ok(Crossing { crossed })
    }

    pub fn borel(rank: usize) -> Self {
        Crossing {
            crossed: vec![true; rank + 1],
        }
    }

    /// Maximal parabolic of loops regular at `z = 0`.
    pub fn only_affine_node(rank: usize) -> Self {
        let mut crossed = vec![false; rank + 1];
        crossed[0] = true;
        Crossing { crossed }
    }

    /// All `2^(rank+1)` crossings, bit `i` of the counter giving node `i`.
    pub fn all(rank: usize) -> impl Iterator<Item = Crossing> {
        let nodes = rank + 1;
        (0u64..(1 << nodes)).map(move |mask| Crossing {
            crossed: (0..nodes).map(|i| mask >> i & 1 == 1).collect(),
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.crossed.len()
    }

    pub fn is_crossed(&self, node: usize) -> bool {
        self.crossed[node]
    }

    /// `chi(alpha_node)`.
    pub fn value(&self, node: usize) -> i64 {
        i64::from(self.crossed[node])
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.crossed
    }

    pub fn crossed_nodes(&self) -> Vec<usize> {
        (0..self.crossed.len())
            .filter(|&i| self.crossed[i])
            .collect()
    }

    pub fn uncrossed_nodes(&self) -> Vec<usize> {
        (0..self.crossed.len())
            .filter(|&i| !self.crossed[i])
            .collect()
    }

    pub fn is_improper(&self) -> bool {
        self.crossed.iter().all(|&x| !x)
    }

    pub fn check_for(&self, rs: &RootSystem) -> Result<()> {
        if self.num_nodes() != rs.rank() + 1 {
            return Err(Error::NodeMismatch(format!(
                "crossing has {} nodes, extended diagram of {}{} has {}",
                self.num_nodes(),
                rs.family(),
                rs.rank(),
                rs.rank() + 1
            )));
        }
        Ok(())
    }

    /// `chi` on a root-lattice element of the finite system.
    pub fn chi_finite(&self, coeffs: &[i64]) -> i64 {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * self.value(i + 1))
            .sum()
    }

    /// `chi(delta) = chi(alpha_0) + chi(theta)`.
    pub fn chi_delta(&self, rs: &RootSystem) -> i64 {
        self.value(0) + self.chi_finite(rs.theta())
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.crossed_nodes().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", nodes.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParabolicClass {
    /// Node 0 crossed: loops whose value at `z = 0` lies in a finite parabolic.
    Standard,
    /// Node 0 uncrossed, some other node crossed: has a level `-1` piece.
    Exotic,
    /// Nothing crossed: the whole loop algebra.
    Improper,
}

impl ParabolicClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ParabolicClass::Standard => "standard",
            ParabolicClass::Exotic => "exotic",
            ParabolicClass::Improper => "improper",
        }
    }
}

impl fmt::Display for ParabolicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Root data of the parabolic determined by a crossing. Root sets hold
/// indices into [`RootSystem::roots`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineParabolic {
    pub crossing: Crossing,
    pub klass: ParabolicClass,
    /// Uncrossed nodes (the simple roots of the Levi factor).
    pub delta_chi: BTreeSet<usize>,
    /// Finite roots with `chi(alpha) >= 0`.
    pub finite_parabolic_roots: BTreeSet<usize>,
    /// Finite roots allowed at level `-1`.
    pub q_chi_roots: BTreeSet<usize>,
}

/// One `z`-level of a parabolic: allowed finite roots and whether the Cartan
/// part (`h` at level 0, `z^n h` otherwise) is included.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedPiece {
    pub roots: BTreeSet<usize>,
    pub cartan: bool,
}

/// `chi(n delta + alpha)` for `alpha` a root-lattice element (or zero).
pub fn chi_affine(c: &Crossing, rs: &RootSystem, n: i64, alpha: &[i64]) -> Result<i64> {
    c.check_for(rs)?;
    if alpha.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: alpha.len(),
        });
    }
    Ok(n * c.chi_delta(rs) + c.chi_finite(alpha))
}

/// As [`chi_affine`] with `alpha` in ambient coordinates.
pub fn chi_affine_ambient(c: &Crossing, rs: &RootSystem, n: i64, alpha: &[Q]) -> Result<i64> {
    let coeffs = rs.simple_expansion(alpha)?;
    chi_affine(c, rs, n, &coeffs)
}

pub fn classify_parabolic(c: &Crossing, rs: &RootSystem) -> Result<AffineParabolic> {
    c.check_for(rs)?;
    let klass = if c.is_improper() {
        ParabolicClass::Improper
    } else if c.is_crossed(0) {
        ParabolicClass::Standard
    } else {
        ParabolicClass::Exotic
    };
    let delta_chi = c.uncrossed_nodes().into_iter().collect();
    let chi_theta = c.chi_finite(rs.theta());
    let mut finite_parabolic_roots = BTreeSet::new();
    let mut q_chi_roots = BTreeSet::new();
    for (idx, root) in rs.roots().iter().enumerate() {
        let v = c.chi_finite(root);
        if v >= 0 {
            finite_parabolic_roots.insert(idx);
        }
        // Level -1 is non-negative only when chi(alpha_0) = 0 and chi(alpha) = chi(theta).
        if !c.is_crossed(0) && v == chi_theta {
            q_chi_roots.insert(idx);
        }
    }
    Ok(AffineParabolic {
        crossing: c.clone(),
        klass,
        delta_chi,
        finite_parabolic_roots,
        q_chi_roots,
    })
}

/// Level-`n` piece by evaluating `chi(n delta + alpha)` on every root and on zero.
pub fn graded_component(p: &AffineParabolic, rs: &RootSystem, n: i64) -> GradedPiece {
    let c = &p.crossing;
    let level = n * c.chi_delta(rs);
    GradedPiece {
        roots: rs
            .roots()
            .iter()
            .enumerate()
            .filter(|(_, r)| level + c.chi_finite(r) >= 0)
            .map(|(i, _)| i)
            .collect(),
        cartan: level >= 0,
    }
}

/// Level-`n` piece from the case analysis on `n`.
pub fn graded_component_closed_form(p: &AffineParabolic, rs: &RootSystem, n: i64) -> GradedPiece {
    let all: BTreeSet<usize> = (0..rs.roots().len()).collect();
    if p.klass == ParabolicClass::Improper {
        return GradedPiece {
            roots: all,
            cartan: true,
        };
    }
    match n {
        n if n <= -2 => GradedPiece::default(),
        -1 => GradedPiece {
            roots: p.q_chi_roots.clone(),
            cartan: false,
        },
        0 => GradedPiece {
            roots: p.finite_parabolic_roots.clone(),
            cartan: true,
        },
        _ => GradedPiece {
            roots: all,
            cartan: true,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn sys(f: Family, r: usize) -> RootSystem {
        RootSystem::build(f, r).unwrap()
    }

    #[test]
    fn chi_examples() {
        let rs = sys(Family::A, 2);
        let c = Crossing::only_affine_node(2);
        let neg_theta: Vec<i64> = rs.theta().iter().map(|x| -x).collect();
        assert_eq!(chi_affine(&c, &rs, 1, &neg_theta).unwrap(), 1);
        assert_eq!(chi_affine(&c, &rs, 0, rs.theta()).unwrap(), 0);
        for c in Crossing::all(2).filter(|c| !c.is_improper()) {
            for r in rs.roots() {
                assert!(chi_affine(&c, &rs, -2, r).unwrap() < 0);
            }
        }
    }

    #[test]
    fn chi_ambient_rejects_off_lattice() {
        let rs = sys(Family::B, 2);
        let c = Crossing::borel(2);
        assert_eq!(
            chi_affine_ambient(&c, &rs, 0, &[crate::q(1, 2), crate::q(1, 2)]),
            Err(Error::NotInRootLattice)
        );
        assert_eq!(
            chi_affine_ambient(&c, &rs, 1, &rs.theta_ambient()).unwrap(),
            1 + 2 * 3
        );
    }

    #[test]
    fn sl2_examples() {
        let rs = sys(Family::A, 1);
        let std = classify_parabolic(&Crossing::only_affine_node(1), &rs).unwrap();
        assert_eq!(std.klass, ParabolicClass::Standard);
        assert_eq!(std.finite_parabolic_roots.len(), 2);
        assert!(std.q_chi_roots.is_empty());

        let exotic = classify_parabolic(&Crossing::from_nodes(1, &[1]).unwrap(), &rs).unwrap();
        assert_eq!(exotic.klass, ParabolicClass::Exotic);
        let q: Vec<_> = exotic
            .q_chi_roots
            .iter()
            .map(|&i| rs.roots()[i].clone())
            .collect();
        assert_eq!(q, vec![vec![1]]);
    }

    #[test]
    fn borel_has_borel_finite_part() {
        for (f, r) in [(Family::A, 3), (Family::C, 2), (Family::D, 4)] {
            let rs = sys(f, r);
            let p = classify_parabolic(&Crossing::borel(r), &rs).unwrap();
            assert_eq!(p.klass, ParabolicClass::Standard);
            let pos: BTreeSet<usize> = (0..rs.num_positive_roots()).collect();
            assert_eq!(p.finite_parabolic_roots, pos);
        }
    }

    #[test]
    fn improper_is_everything() {
        let rs = sys(Family::C, 2);
        let c = Crossing::new(vec![false; 3]);
        let p = classify_parabolic(&c, &rs).unwrap();
        assert_eq!(p.klass, ParabolicClass::Improper);
        for n in -3..3 {
            let g = graded_component(&p, &rs, n);
            assert_eq!(g.roots.len(), rs.roots().len());
            assert!(g.cartan);
        }
    }

    #[test]
    fn q_chi_matches_definition_level_condition() {
        // {alpha : chi(alpha) = chi(delta)} agrees with the derived level -1 condition.
        for (f, r) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
        ] {
            let rs = sys(f, r);
            for c in Crossing::all(r) {
                let p = classify_parabolic(&c, &rs).unwrap();
                let by_def: BTreeSet<usize> = (0..rs.roots().len())
                    .filter(|&i| c.chi_finite(&rs.roots()[i]) == c.chi_delta(&rs))
                    .collect();
                assert_eq!(p.q_chi_roots, by_def, "{f}{r} {c}");
                if p.klass == ParabolicClass::Exotic {
                    assert!(!p.q_chi_roots.is_empty());
                }
                if p.klass == ParabolicClass::Standard {
                    assert!(p.q_chi_roots.is_empty());
                }
            }
        }
    }

    #[test]
    fn mismatched_crossing_rejected() {
        let rs = sys(Family::A, 2);
        assert!(matches!(
            classify_parabolic(&Crossing::borel(3), &rs),
            Err(Error::NodeMismatch(_))
        ));
        assert!(Crossing::from_nodes(2, &[3]).is_err());
    }

    #[test]
    fn crossings_determine_distinct_levis() {
        let rs = sys(Family::D, 4);
        let mut seen = std::collections::HashSet::new();
        for c in Crossing::all(4) {
            let p = classify_parabolic(&c, &rs).unwrap();
            assert!(seen.insert(p.delta_chi.clone()));
            assert_eq!(p.klass == ParabolicClass::Standard, c.is_crossed(0));
        }
    }
}
