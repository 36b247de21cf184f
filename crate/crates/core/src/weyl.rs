//! The affine Weyl group `W ⋉ Ť` with `Ť` the coroot lattice.
//!
//! An element `t_λ w` is stored as the integer matrix of `w` on simple-root
//! coefficients, the matrix of `w` on simple-coroot coefficients, and the
//! translation `λ` in simple coroots. It acts on affine roots by
//! `(n, α) ↦ (n - <λ, wα>, wα)`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::affine::Crossing;
use crate::linalg::QMatrix;
use crate::rootsys::{RootCoeffs, RootSystem};
use crate::{qi, Error, Result};

/// Hard cap on enumeration length.
pub const MAX_ENUM_LENGTH: usize = 40;
/// Hard cap on the number of enumerated elements.
pub const MAX_ENUM_ELEMENTS: usize = 2_000_000;
const MAX_LEVI_ORDER: usize = 500_000;

/// `n δ + α`; `alpha` is a finite root (or zero) in simple-root coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub n: i64,
    pub alpha: RootCoeffs,
}

impl AffineRoot {
    pub fn new(n: i64, alpha: RootCoeffs) -> Self {
        AffineRoot { n, alpha }
    }

    pub fn is_positive(&self) -> bool {
        self.n > 0 || (self.n == 0 && finite_sign(&self.alpha) > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.n < 0 || (self.n == 0 && finite_sign(&self.alpha) < 0)
    }

    /// `chi(n δ + α)` for a crossing.
    pub fn chi(&self, c: &Crossing, rs: &RootSystem) -> i64 {
        self.n * c.chi_delta(rs) + c.chi_finite(&self.alpha)
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}delta+{}",
            self.n,
            crate::rootsys::root_label(&self.alpha)
        )
    }
}

/// Sign of a root given by coefficients: all coefficients share a sign.
fn finite_sign(alpha: &[i64]) -> i64 {
    alpha.iter().find(|&&c| c != 0).map_or(0, |c| c.signum())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineWeylElement {
    rank: usize,
    /// Row-major action on simple-root coefficients.
    root_action: Vec<i64>,
    /// Row-major action on simple-coroot coefficients (determined by `root_action`).
    coroot_action: Vec<i64>,
    translation: Vec<i64>,
}

impl AffineWeylElement {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Matrix of the finite part acting on simple-root coefficients.
    pub fn finite_matrix(&self) -> Vec<Vec<i64>> {
        self.root_action
            .chunks(self.rank)
            .map(<[i64]>::to_vec)
            .collect()
    }

    /// Translation in simple-coroot coefficients.
    pub fn translation(&self) -> &[i64] {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.translation.iter().all(|&x| x == 0)
            && (0..self.rank).all(|i| {
                (0..self.rank).all(|j| self.root_action[i * self.rank + j] == i64::from(i == j))
            })
    }

    pub fn is_translation_free(&self) -> bool {
        self.translation.iter().all(|&x| x == 0)
    }

    /// Finite part applied to a root-lattice element.
    pub fn apply_finite(&self, beta: &[i64]) -> RootCoeffs {
        mat_vec(&self.root_action, self.rank, beta)
    }

    fn apply_coroot(&self, lambda: &[i64]) -> Vec<i64> {
        mat_vec(&self.coroot_action, self.rank, lambda)
    }
}

fn mat_vec(m: &[i64], r: usize, v: &[i64]) -> Vec<i64> {
    (0..r)
        .map(|i| (0..r).map(|j| m[i * r + j] * v[j]).sum())
        .collect()
}

fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] += x * b[k * r + j];
            }
        }
    }
    out
}

fn identity(r: usize) -> Vec<i64> {
    let mut m = vec![0; r * r];
    for i in 0..r {
        m[i * r + i] = 1;
    }
    m
}

fn int_inverse(m: &[i64], r: usize) -> Vec<i64> {
    let q = QMatrix::from_rows(
        m.chunks(r)
            .map(|row| row.iter().map(|&x| qi(x)).collect())
            .collect(),
    );
    let inv = q.inverse().expect("Weyl group elements are invertible");
    (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .map(|(i, j)| {
            let x = &inv[(i, j)];
            assert!(
                x.is_integer(),
                "non-integral inverse of a Weyl group element"
            );
            i64::try_from(x.to_integer()).expect("small entry")
        })
        .collect()
}

/// An element together with a reduced word in the generators `σ_0..σ_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub element: AffineWeylElement,
    pub word: Vec<usize>,
}

impl Reduced {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// Birkhoff stratum indexed by a Hasse element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub element: Reduced,
    pub codimension: usize,
    pub cell_dimension: usize,
}

/// `w = hasse · levi` with `ℓ(w) = ℓ(hasse) + ℓ(levi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub hasse: AffineWeylElement,
    pub levi: AffineWeylElement,
}

/// Affine Weyl group of a finite root system.
#[derive(Clone, Debug)]
pub struct AffineWeyl {
    rs: RootSystem,
    generators: Vec<AffineWeylElement>,
}

impl AffineWeyl {
    pub fn new(rs: &RootSystem) -> Self {
        let r = rs.rank();
        let cartan = rs.cartan_matrix();
        let mut generators = Vec::with_capacity(r + 1);

        // σ_0 = t_{θ^∨} s_θ, with θ^∨ = Σ comark_i α_i^∨.
        let theta = rs.theta();
        let comarks = rs.comarks();
        let mut root_action = identity(r);
        let mut coroot_action = identity(r);
        for k in 0..r {
            for j in 0..r {
                // <α_j, θ^∨> = Σ_i comark_i cartan[i][j]
                let pair: i64 = (0..r).map(|i| comarks[i] * cartan[i][j]).sum();
                root_action[k * r + j] -= theta[k] * pair;
                // <θ, α_j^∨> = Σ_k cartan[j][k] θ_k
                let pair: i64 = (0..r).map(|m| cartan[j][m] * theta[m]).sum();
                coroot_action[k * r + j] -= comarks[k] * pair;
            }
        }
        generators.push(AffineWeylElement {
            rank: r,
            root_action,
            coroot_action,
            translation: comarks.to_vec(),
        });

        for i in 0..r {
            let mut root_action = identity(r);
            let mut coroot_action = identity(r);
            for j in 0..r {
                root_action[i * r + j] -= cartan[i][j];
                coroot_action[i * r + j] -= cartan[j][i];
            }
            generators.push(AffineWeylElement {
                rank: r,
                root_action,
                coroot_action,
                translation: vec![0; r],
            });
        }
        AffineWeyl {
            rs: rs.clone(),
            generators,
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn identity(&self) -> AffineWeylElement {
        let r = self.rank();
        AffineWeylElement {
            rank: r,
            root_action: identity(r),
            coroot_action: identity(r),
            translation: vec![0; r],
        }
    }

    /// `σ_i`, with `σ_0` the reflection in `δ - θ`.
    pub fn generator(&self, i: usize) -> &AffineWeylElement {
        &self.generators[i]
    }

    pub fn generators(&self) -> &[AffineWeylElement] {
        &self.generators
    }

    /// Pure translation `t_λ`.
    pub fn translation(&self, lambda: &[i64]) -> Result<AffineWeylElement> {
        if lambda.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: lambda.len(),
            });
        }
        let mut t = self.identity();
        t.translation = lambda.to_vec();
        Ok(t)
    }

    /// Simple affine root `α_i`: `(1, -θ)` for `i = 0`, `(0, α_i)` otherwise.
    pub fn simple_root(&self, i: usize) -> AffineRoot {
        if i == 0 {
            AffineRoot::new(1, self.rs.theta().iter().map(|x| -x).collect())
        } else {
            let mut a = vec![0; self.rank()];
            a[i - 1] = 1;
            AffineRoot::new(0, a)
        }
    }

    /// `(t_λ w)(t_λ' w') = t_{λ + wλ'} ww'`.
    pub fn multiply(&self, a: &AffineWeylElement, b: &AffineWeylElement) -> AffineWeylElement {
        let r = self.rank();
        let moved = a.apply_coroot(&b.translation);
        AffineWeylElement {
            rank: r,
            root_action: mat_mul(&a.root_action, &b.root_action, r),
            coroot_action: mat_mul(&a.coroot_action, &b.coroot_action, r),
            translation: a
                .translation
                .iter()
                .zip(&moved)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    /// `(t_λ w)^{-1} = t_{-w^{-1}λ} w^{-1}`.
    pub fn inverse(&self, w: &AffineWeylElement) -> AffineWeylElement {
        let r = self.rank();
        let root_action = int_inverse(&w.root_action, r);
        let coroot_action = int_inverse(&w.coroot_action, r);
        let translation = mat_vec(&coroot_action, r, &w.translation)
            .into_iter()
            .map(|x| -x)
            .collect();
        AffineWeylElement {
            rank: r,
            root_action,
            coroot_action,
            translation,
        }
    }

    /// Evaluates a word `σ_{i_1} ... σ_{i_k}`.
    pub fn from_word(&self, word: &[usize]) -> Result<AffineWeylElement> {
        let mut w = self.identity();
        for &i in word {
            if i > self.rank() {
                return Err(Error::NodeMismatch(format!("generator {i} out of range")));
            }
            w = self.multiply(&w, &self.generators[i]);
        }
        Ok(w)
    }

    /// `<λ, β>` for a coroot-lattice `λ` and a root-lattice `β`.
    fn pair(&self, lambda: &[i64], beta: &[i64]) -> i64 {
        lambda
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, m)| m * self.rs.pair_with_coroot(beta, i))
            .sum()
    }

    pub fn act(&self, w: &AffineWeylElement, r: &AffineRoot) -> AffineRoot {
        let image = w.apply_finite(&r.alpha);
        let shift = self.pair(&w.translation, &image);
        AffineRoot::new(r.n - shift, image)
    }

    /// Positive affine roots sent to negative ones.
    ///
    /// Only real roots can be inverted. For each finite root `α` the image
    /// level is `n - c` with `c = <λ, wα>`, so every `n > max |c|` stays
    /// positive and the scan over `n` below that bound is exhaustive.
    pub fn inversion_set(&self, w: &AffineWeylElement) -> BTreeSet<AffineRoot> {
        let shifts: Vec<(usize, RootCoeffs, i64)> = self
            .rs
            .roots()
            .iter()
            .enumerate()
            .map(|(idx, a)| {
                let img = w.apply_finite(a);
                let c = self.pair(&w.translation, &img);
                (idx, img, c)
            })
            .collect();
        let bound = shifts.iter().map(|(_, _, c)| c.abs()).max().unwrap_or(0);
        let mut out = BTreeSet::new();
        for (idx, img, c) in shifts {
            let alpha = &self.rs.roots()[idx];
            let n_min = if self.rs.is_positive_index(idx) { 0 } else { 1 };
            for n in n_min..=bound.max(n_min) {
                let image = AffineRoot::new(n - c, img.clone());
                if image.is_negative() {
                    out.insert(AffineRoot::new(n, alpha.clone()));
                }
            }
        }
        out
    }

    /// Length as the number of inverted positive affine roots.
    pub fn length(&self, w: &AffineWeylElement) -> usize {
        self.inversion_set(w).len()
    }

    /// Breadth-first enumeration of all elements of length `<= max_length`,
    /// grouped by length, each with a reduced word.
    pub fn enumerate_by_length(&self, max_length: usize) -> Result<Vec<Vec<Reduced>>> {
        if max_length > MAX_ENUM_LENGTH {
            return Err(Error::ResourceLimit(format!(
                "length {max_length} exceeds the enumeration cap {MAX_ENUM_LENGTH}"
            )));
        }
        let id = Reduced {
            element: self.identity(),
            word: Vec::new(),
        };
        let mut seen: HashSet<AffineWeylElement> = HashSet::from([id.element.clone()]);
        let mut levels = vec![vec![id]];
        for _ in 0..max_length {
            let mut next = Vec::new();
            for w in levels.last().expect("non-empty") {
                for (i, g) in self.generators.iter().enumerate() {
                    let e = self.multiply(&w.element, g);
                    if seen.insert(e.clone()) {
                        let mut word = w.word.clone();
                        word.push(i);
                        next.push(Reduced { element: e, word });
                    }
                }
            }
            if seen.len() > MAX_ENUM_ELEMENTS {
                return Err(Error::ResourceLimit(format!(
                    "more than {MAX_ENUM_ELEMENTS} elements"
                )));
            }
            levels.push(next);
        }
        Ok(levels)
    }

    /// Finite group `W_P` generated by the reflections at uncrossed nodes.
    pub fn levi_subgroup(&self, c: &Crossing) -> Result<Vec<AffineWeylElement>> {
        c.check_for(&self.rs)?;
        if c.is_improper() {
            return Err(Error::ImproperCrossing);
        }
        let gens: Vec<&AffineWeylElement> = c
            .uncrossed_nodes()
            .into_iter()
            .map(|i| &self.generators[i])
            .collect();
        let mut seen: HashSet<AffineWeylElement> = HashSet::from([self.identity()]);
        let mut out = vec![self.identity()];
        let mut k = 0;
        while k < out.len() {
            for g in &gens {
                let e = self.multiply(&out[k], g);
                if seen.insert(e.clone()) {
                    out.push(e);
                }
            }
            if out.len() > MAX_LEVI_ORDER {
                return Err(Error::ResourceLimit("Levi Weyl group too large".into()));
            }
            k += 1;
        }
        Ok(out)
    }

    /// Minimal length in its coset `w W_P`: `w` keeps every uncrossed simple root positive.
    pub fn is_hasse(&self, w: &AffineWeylElement, c: &Crossing) -> bool {
        c.uncrossed_nodes()
            .into_iter()
            .all(|i| self.act(w, &self.simple_root(i)).is_positive())
    }

    /// Hasse diagram elements of length `<= max_length`, ordered by length.
    pub fn hasse_elements(&self, c: &Crossing, max_length: usize) -> Result<Vec<Reduced>> {
        c.check_for(&self.rs)?;
        Ok(self
            .enumerate_by_length(max_length)?
            .into_iter()
            .flatten()
            .filter(|w| self.is_hasse(&w.element, c))
            .collect())
    }

    /// Unique `w = w1 w2` with `w1` Hasse and `w2 ∈ W_P`, checking length additivity.
    pub fn factorize(&self, w: &AffineWeylElement, c: &Crossing) -> Result<Factorization> {
        self.factorize_in(w, c, &self.levi_subgroup(c)?)
    }

    /// As [`AffineWeyl::factorize`] with a precomputed `W_P`.
    pub fn factorize_in(
        &self,
        w: &AffineWeylElement,
        c: &Crossing,
        levi: &[AffineWeylElement],
    ) -> Result<Factorization> {
        let mut found = Vec::new();
        for u in levi {
            let w1 = self.multiply(w, &self.inverse(u));
            if self.is_hasse(&w1, c) {
                found.push(Factorization {
                    hasse: w1,
                    levi: u.clone(),
                });
            }
        }
        if found.len() != 1 {
            return Err(Error::Internal(format!(
                "expected one Hasse factorization, found {}",
                found.len()
            )));
        }
        let f = found.pop().expect("one element");
        if self.length(w) != self.length(&f.hasse) + self.length(&f.levi) {
            return Err(Error::Internal("length is not additive".into()));
        }
        Ok(f)
    }

    /// Roots of the unipotent radical: affine roots with `chi > 0`.
    pub fn in_unipotent_radical(&self, r: &AffineRoot, c: &Crossing) -> bool {
        r.chi(c, &self.rs) > 0
    }

    /// Birkhoff strata indexed by Hasse elements of length `<= max_length`.
    pub fn birkhoff_strata(&self, c: &Crossing, max_length: usize) -> Result<Vec<Stratum>> {
        Ok(self
            .hasse_elements(c, max_length)?
            .into_iter()
            .map(|w| {
                let l = w.length();
                Stratum {
                    element: w,
                    codimension: l,
                    cell_dimension: l,
                }
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn group(f: Family, r: usize) -> AffineWeyl {
        AffineWeyl::new(&RootSystem::build(f, r).unwrap())
    }

    #[test]
    fn act_examples() {
        let g = group(Family::A, 1);
        let r = AffineRoot::new(3, vec![-1]);
        assert_eq!(g.act(&g.identity(), &r), r);
        assert_eq!(
            g.act(g.generator(1), &AffineRoot::new(0, vec![1])),
            AffineRoot::new(0, vec![-1])
        );
        let t = g.translation(&[1]).unwrap();
        assert_eq!(
            g.act(&t, &AffineRoot::new(0, vec![1])),
            AffineRoot::new(-2, vec![1])
        );
        // σ_0 negates α_0
        assert_eq!(
            g.act(g.generator(0), &g.simple_root(0)),
            AffineRoot::new(-1, vec![1])
        );
    }

    #[test]
    fn generators_are_involutions_and_negate_their_roots() {
        for (f, r) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 2),
            (Family::D, 4),
        ] {
            let g = group(f, r);
            for i in 0..=r {
                let s = g.generator(i);
                assert!(g.multiply(s, s).is_identity(), "{f}{r} σ{i}");
                let a = g.simple_root(i);
                let img = g.act(s, &a);
                assert_eq!(
                    img,
                    AffineRoot::new(-a.n, a.alpha.iter().map(|x| -x).collect())
                );
                assert_eq!(g.length(s), 1);
                assert_eq!(g.inversion_set(s), BTreeSet::from([a]));
            }
        }
    }

    #[test]
    fn action_is_compatible_with_multiplication() {
        let g = group(Family::C, 2);
        let a = g.from_word(&[0, 1, 2, 1]).unwrap();
        let b = g.from_word(&[2, 0, 1]).unwrap();
        let ab = g.multiply(&a, &b);
        for alpha in g.root_system().roots() {
            for n in -2..3 {
                let r = AffineRoot::new(n, alpha.clone());
                assert_eq!(g.act(&ab, &r), g.act(&a, &g.act(&b, &r)));
            }
        }
        assert!(g.multiply(&a, &g.inverse(&a)).is_identity());
    }

    #[test]
    fn translation_length_in_a1() {
        let g = group(Family::A, 1);
        assert_eq!(g.length(&g.identity()), 0);
        assert_eq!(g.length(&g.translation(&[1]).unwrap()), 2);
        assert_eq!(g.length(&g.translation(&[-3]).unwrap()), 6);
    }

    #[test]
    fn a1_profile() {
        let g = group(Family::A, 1);
        let counts: Vec<usize> = g
            .enumerate_by_length(3)
            .unwrap()
            .iter()
            .map(Vec::len)
            .collect();
        assert_eq!(counts, vec![1, 2, 2, 2]);
    }

    #[test]
    fn a2_first_levels() {
        let g = group(Family::A, 2);
        let levels = g.enumerate_by_length(1).unwrap();
        assert_eq!(levels[0].len(), 1);
        assert!(levels[0][0].element.is_identity());
        assert_eq!(levels[1].len(), 3);
        let words: Vec<_> = levels[1].iter().map(|w| w.word.clone()).collect();
        assert_eq!(words, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn enumeration_cap() {
        let g = group(Family::A, 1);
        assert!(matches!(
            g.enumerate_by_length(MAX_ENUM_LENGTH + 1),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn hasse_borel_is_everything() {
        let g = group(Family::A, 2);
        let all: usize = g.enumerate_by_length(4).unwrap().iter().map(Vec::len).sum();
        assert_eq!(g.hasse_elements(&Crossing::borel(2), 4).unwrap().len(), all);
    }

    #[test]
    fn hasse_a1_maximal_one_per_length() {
        let g = group(Family::A, 1);
        let h = g.hasse_elements(&Crossing::only_affine_node(1), 7).unwrap();
        let lengths: Vec<usize> = h.iter().map(Reduced::length).collect();
        assert_eq!(lengths, (0..=7).collect::<Vec<_>>());
    }

    #[test]
    fn levi_subgroup_orders() {
        let g = group(Family::A, 2);
        assert_eq!(
            g.levi_subgroup(&Crossing::only_affine_node(2))
                .unwrap()
                .len(),
            6
        );
        assert_eq!(g.levi_subgroup(&Crossing::borel(2)).unwrap().len(), 1);
        assert_eq!(
            g.levi_subgroup(&Crossing::new(vec![false; 3])),
            Err(Error::ImproperCrossing)
        );
        let c = group(Family::C, 2);
        // uncrossed {0, 2}: two commuting reflections
        assert_eq!(
            c.levi_subgroup(&Crossing::from_nodes(2, &[1]).unwrap())
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn strata_dimensions_are_lengths() {
        let g = group(Family::A, 2);
        for s in g
            .birkhoff_strata(&Crossing::from_nodes(2, &[1]).unwrap(), 4)
            .unwrap()
        {
            assert_eq!(s.codimension, s.element.length());
            assert_eq!(s.cell_dimension, s.element.length());
        }
    }
}
