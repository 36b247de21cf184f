//! Laurent-polynomial matrices, the outer conjugations of the classical loop
//! algebras, periodic infinite-matrix windows and parabolic membership.
//!
//! Entries are polynomials in `w = z^{1/m}`; `m` is the root order of the
//! matrix. Loop algebra elements have `m = 1`. Conjugators live at `m = 2` or
//! `m = n`, and products are lifted to a common root order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::affine::{classify_parabolic, graded_component_closed_form, Crossing, GradedPiece};
use crate::autgrp::DiagramAutomorphism;
use crate::linalg::QMatrix;
use crate::rootsys::{Family, RootCoeffs, RootSystem};
use crate::{fmt_q, qi, Error, Result, Q};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0)
    }

    /// `c w^e`.
    pub fn monomial(c: Q, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i64, Q> {
        &self.terms
    }

    pub fn coeff(&self, e: i64) -> Q {
        self.terms.get(&e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, e: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
        }
    }

    fn map_exponents(&self, f: impl Fn(i64) -> i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (f(e), c.clone())).collect(),
        }
    }

    /// Renders with exponents `e / m` in `z`.
    pub fn render(&self, m: i64) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (&e, c) in &self.terms {
            let g = e.gcd(&m);
            let power = match (e / g, m / g) {
                (0, _) => String::new(),
                (1, 1) => "z".into(),
                (num, 1) => format!("z^{num}"),
                (num, den) => format!("z^({num}/{den})"),
            };
            let term = if power.is_empty() {
                fmt_q(c)
            } else if c.is_one() {
                power
            } else if (-c).is_one() {
                format!("-{power}")
            } else {
                format!("{}*{power}", fmt_q(c))
            };
            match term.strip_prefix('-') {
                Some(rest) if !out.is_empty() => out.push_str(&format!(" - {rest}")),
                _ if !out.is_empty() => out.push_str(&format!(" + {term}")),
                _ => out.push_str(&term),
            }
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&qi(-1))
    }
}

/// Square matrix of Laurent polynomials in `z^{1/m}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    size: usize,
    root_order: i64,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(size: usize, root_order: i64) -> Self {
        assert!(root_order >= 1);
        LaurentMatrix {
            size,
            root_order,
            entries: vec![LaurentPoly::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, 1);
        for i in 0..size {
            m.set(i, i, LaurentPoly::constant(Q::one()));
        }
        m
    }

    /// `Σ M_k z^k` from `(k, M_k)` pairs.
    pub fn from_levels(size: usize, levels: &[(i64, QMatrix)]) -> Result<Self> {
        let mut m = Self::zeros(size, 1);
        for (k, mk) in levels {
            if mk.rows() != size || mk.cols() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    got: mk.rows().max(mk.cols()),
                });
            }
            for i in 0..size {
                for j in 0..size {
                    m.entries[i * size + j].add_term(*k, mk[(i, j)].clone());
                }
            }
        }
        Ok(m)
    }

    /// `c z^k E_{ij}`.
    pub fn elementary(size: usize, i: usize, j: usize, k: i64, c: Q) -> Self {
        let mut m = Self::zeros(size, 1);
        m.set(i, j, LaurentPoly::monomial(c, k));
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn root_order(&self) -> i64 {
        self.root_order
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.entries[i * self.size + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn scale(&self, s: &Q) -> Self {
        LaurentMatrix {
            size: self.size,
            root_order: self.root_order,
            entries: self.entries.iter().map(|p| p.scale(s)).collect(),
        }
    }

    /// Re-expresses over `z^{1/m}` for a multiple `m` of the current root order.
    pub fn lift(&self, m: i64) -> Self {
        assert!(
            m % self.root_order == 0,
            "root order {m} is not a multiple of {}",
            self.root_order
        );
        let f = m / self.root_order;
        LaurentMatrix {
            size: self.size,
            root_order: m,
            entries: self
                .entries
                .iter()
                .map(|p| p.map_exponents(|e| e * f))
                .collect(),
        }
    }

    pub fn is_integer_powered(&self) -> bool {
        self.entries
            .iter()
            .all(|p| p.terms.keys().all(|e| e % self.root_order == 0))
    }

    /// Reduces to root order 1; fails if some exponent is fractional in `z`.
    pub fn to_integer_powered(&self) -> Result<Self> {
        if !self.is_integer_powered() {
            return Err(Error::Internal(
                "fractional powers of z in a loop algebra element".into(),
            ));
        }
        let m = self.root_order;
        Ok(LaurentMatrix {
            size: self.size,
            root_order: 1,
            entries: self
                .entries
                .iter()
                .map(|p| p.map_exponents(|e| e / m))
                .collect(),
        })
    }

    /// Integer `z`-exponents carrying a nonzero coefficient.
    pub fn levels(&self) -> Result<BTreeSet<i64>> {
        let g = self.to_integer_powered()?;
        Ok(g.entries
            .iter()
            .flat_map(|p| p.terms.keys().copied())
            .collect())
    }

    /// Coefficient matrix of `z^k`.
    pub fn coefficient(&self, k: i64) -> QMatrix {
        let e = k * self.root_order;
        let mut out = QMatrix::zeros(self.size, self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                out[(i, j)] = self.get(i, j).coeff(e);
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Inverse of a monomial matrix (one nonzero monomial per row and column).
    pub fn monomial_inverse(&self) -> Result<Self> {
        let mut out = Self::zeros(self.size, self.root_order);
        let mut seen = vec![false; self.size];
        for i in 0..self.size {
            let nonzero: Vec<usize> = (0..self.size)
                .filter(|&j| !self.get(i, j).is_zero())
                .collect();
            let [j] = nonzero[..] else {
                return Err(Error::InvalidInput("not a monomial matrix".into()));
            };
            let p = self.get(i, j);
            if p.terms.len() != 1 || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidInput("not a monomial matrix".into()));
            }
            let (&e, c) = p.terms.iter().next().expect("one term");
            out.set(j, i, LaurentPoly::monomial(c.recip(), -e));
        }
        Ok(out)
    }

    fn combine(&self, other: &Self, f: impl Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly) -> Self {
        assert_eq!(self.size, other.size, "size mismatch");
        let m = self.root_order.lcm(&other.root_order);
        let (a, b) = (self.lift(m), other.lift(m));
        LaurentMatrix {
            size: self.size,
            root_order: m,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(x, y)| f(x, y))
                .collect(),
        }
    }
}

impl Mul for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.size, rhs.size, "size mismatch");
        let m = self.root_order.lcm(&rhs.root_order);
        let (a, b) = (self.lift(m), rhs.lift(m));
        let n = self.size;
        let mut out = LaurentMatrix::zeros(n, m);
        for i in 0..n {
            for k in 0..n {
                let x = a.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = b.get(k, j);
                    if !y.is_zero() {
                        let s = &out.entries[i * n + j] + &(x * y);
                        out.entries[i * n + j] = s;
                    }
                }
            }
        }
        out
    }
}

impl Add for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn add(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        self.combine(rhs, |x, y| x + y)
    }
}

impl Sub for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn sub(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        self.combine(rhs, |x, y| x + &(-y))
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LaurentMatrix {}x{} [", self.size, self.size)?;
        for row in self.render() {
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl LaurentMatrix {
    /// Entries rendered as strings, row by row.
    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| self.get(i, j).render(self.root_order))
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OuterKind {
    /// `X = [[0, z^{-1/2}], [z^{1/2}, 0]]` on `sl(2)`.
    FlipSl2,
    /// `A(z)`: subdiagonal `z^{1/n}`, corner `z^{(1-n)/n}`; `A(z)^n = 1`.
    ShiftSln,
    /// `A(z^{-1})`, which acts on the periodic infinite matrix as the shift of
    /// scalar indices by one.
    ShiftSlnReciprocal,
    /// `[[0, z^{-1/2} I], [z^{1/2} I, 0]]` on `so(2n)`, oriented like the
    /// flip so that it permutes the affine simple roots.
    SlipSo2n,
    /// Exchange of basis vectors `n` and `n + 1` in `so(2n)`.
    PermSo,
    /// The permutation conjugated by the slip.
    PermSoShifted,
}

impl OuterKind {
    pub const ALL: [OuterKind; 6] = [
        OuterKind::FlipSl2,
        OuterKind::ShiftSln,
        OuterKind::ShiftSlnReciprocal,
        OuterKind::SlipSo2n,
        OuterKind::PermSo,
        OuterKind::PermSoShifted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OuterKind::FlipSl2 => "flip-sl2",
            OuterKind::ShiftSln => "shift-sln",
            OuterKind::ShiftSlnReciprocal => "shift-sln-reciprocal",
            OuterKind::SlipSo2n => "slip-so2n",
            OuterKind::PermSo => "perm-so",
            OuterKind::PermSoShifted => "perm-so-shifted",
        }
    }

    fn check_size(self, size: usize) -> Result<()> {
        let ok = match self {
            OuterKind::FlipSl2 => size == 2,
            OuterKind::ShiftSln | OuterKind::ShiftSlnReciprocal => size >= 2,
            OuterKind::SlipSo2n | OuterKind::PermSo | OuterKind::PermSoShifted => {
                size >= 2 && size.is_multiple_of(2)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{} does not act on {size}x{size} matrices",
                self.name()
            )))
        }
    }
}

impl fmt::Display for OuterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OuterKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('_', "-").to_ascii_lowercase();
        OuterKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::InvalidInput(format!("unknown conjugation {s:?}")))
    }
}

/// The conjugating matrix of `kind` acting on `size x size` matrices.
pub fn conjugator(kind: OuterKind, size: usize) -> Result<LaurentMatrix> {
    kind.check_size(size)?;
    let one = Q::one;
    let half = size / 2;
    Ok(match kind {
        OuterKind::FlipSl2 => {
            let mut x = LaurentMatrix::zeros(2, 2);
            x.set(0, 1, LaurentPoly::monomial(one(), -1));
            x.set(1, 0, LaurentPoly::monomial(one(), 1));
            x
        }
        OuterKind::ShiftSln | OuterKind::ShiftSlnReciprocal => {
            let s = if kind == OuterKind::ShiftSln { 1 } else { -1 };
            let n = size as i64;
            let mut a = LaurentMatrix::zeros(size, n);
            a.set(0, size - 1, LaurentPoly::monomial(one(), s * (1 - n)));
            for i in 0..size - 1 {
                a.set(i + 1, i, LaurentPoly::monomial(one(), s));
            }
            a
        }
        OuterKind::SlipSo2n => {
            let mut x = LaurentMatrix::zeros(size, 2);
            for i in 0..half {
                x.set(i, half + i, LaurentPoly::monomial(one(), -1));
                x.set(half + i, i, LaurentPoly::monomial(one(), 1));
            }
            x
        }
        OuterKind::PermSo => perm_matrix(size),
        OuterKind::PermSoShifted => {
            let slip = conjugator(OuterKind::SlipSo2n, size)?;
            &(&slip * &perm_matrix(size)) * &slip.monomial_inverse()?
        }
    })
}

fn perm_matrix(size: usize) -> LaurentMatrix {
    let half = size / 2;
    let mut p = LaurentMatrix::zeros(size, 1);
    for i in 0..size {
        let j = if i == half - 1 {
            half
        } else if i == half {
            half - 1
        } else {
            i
        };
        p.set(i, j, LaurentPoly::constant(Q::one()));
    }
    p
}

/// Row `i` of a monomial matrix as `(column, coefficient, exponent)`.
fn monomial_rows(x: &LaurentMatrix) -> Result<Vec<(usize, Q, i64)>> {
    (0..x.size)
        .map(|i| {
            let mut nz = (0..x.size).filter(|&j| !x.get(i, j).is_zero());
            match (nz.next(), nz.next()) {
                (Some(j), None) if x.get(i, j).terms.len() == 1 => {
                    let (&e, c) = x.get(i, j).terms.iter().next().expect("one term");
                    Ok((j, c.clone(), e))
                }
                _ => Err(Error::InvalidInput("not a monomial matrix".into())),
            }
        })
        .collect()
}

/// `X g X^{-1}` for monomial `X`: entry `(i, j)` is `x_i x_j^{-1} g_{p(i) p(j)}`
/// where `X_{i p(i)} = x_i`.
fn conjugate_monomial(x: &LaurentMatrix, g: &LaurentMatrix) -> Result<LaurentMatrix> {
    let rows = monomial_rows(x)?;
    let m = x.root_order.lcm(&g.root_order);
    let g = g.lift(m);
    let f = m / x.root_order;
    let n = g.size;
    let mut out = LaurentMatrix::zeros(n, m);
    for (i, (pi, ci, ei)) in rows.iter().enumerate() {
        for (j, (pj, cj, ej)) in rows.iter().enumerate() {
            let s = ci / cj;
            let shift = (ei - ej) * f;
            let src = g.get(*pi, *pj);
            out.entries[i * n + j] = LaurentPoly {
                terms: src
                    .terms
                    .iter()
                    .map(|(&e, c)| (e + shift, c * &s))
                    .collect(),
            };
        }
    }
    Ok(out)
}

/// `X g X^{-1}`, re-expressed in integer powers of `z`.
pub fn conjugate_outer(g: &LaurentMatrix, kind: OuterKind) -> Result<LaurentMatrix> {
    if !g.is_integer_powered() {
        return Err(Error::InvalidInput(
            "conjugated element must be integer-powered".into(),
        ));
    }
    let x = conjugator(kind, g.size())?;
    conjugate_monomial(&x, g)?.to_integer_powered()
}

/// `X^{-1} g X`.
pub fn conjugate_outer_inverse(g: &LaurentMatrix, kind: OuterKind) -> Result<LaurentMatrix> {
    if !g.is_integer_powered() {
        return Err(Error::InvalidInput(
            "conjugated element must be integer-powered".into(),
        ));
    }
    let x = conjugator(kind, g.size())?.monomial_inverse()?;
    conjugate_monomial(&x, g)?.to_integer_powered()
}

/// Finite section of the periodic infinite matrix: block `(i, j)` is the
/// coefficient of `z^{i-j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixWindow {
    pub block_size: usize,
    pub lo: i64,
    pub hi: i64,
    pub blocks: BTreeMap<(i64, i64), QMatrix>,
}

impl MatrixWindow {
    /// Entry at scalar indices `(K, L)`, where `K = n i + a` addresses row `a`
    /// of block row `i`.
    pub fn scalar_entry(&self, k: i64, l: i64) -> Option<&Q> {
        let n = self.block_size as i64;
        let (bi, a) = (k.div_euclid(n), k.rem_euclid(n) as usize);
        let (bj, b) = (l.div_euclid(n), l.rem_euclid(n) as usize);
        self.blocks.get(&(bi, bj)).map(|m| &m[(a, b)])
    }

    /// Scalar index range covered by the window.
    pub fn scalar_range(&self) -> std::ops::RangeInclusive<i64> {
        let n = self.block_size as i64;
        self.lo * n..=(self.hi + 1) * n - 1
    }

    /// `M_[i,j] = M_[i+1,j+1]` wherever both blocks are present.
    pub fn is_periodic(&self) -> bool {
        self.blocks
            .iter()
            .all(|(&(i, j), m)| self.blocks.get(&(i + 1, j + 1)).is_none_or(|m2| m2 == m))
    }
}

pub fn window(g: &LaurentMatrix, lo: i64, hi: i64) -> Result<MatrixWindow> {
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty window [{lo}, {hi}]")));
    }
    let g = g.to_integer_powered()?;
    let mut blocks = BTreeMap::new();
    for i in lo..=hi {
        for j in lo..=hi {
            blocks.insert((i, j), g.coefficient(i - j));
        }
    }
    Ok(MatrixWindow {
        block_size: g.size(),
        lo,
        hi,
        blocks,
    })
}

/// Matrix families of the defining representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryFamily {
    SoEven,
    SoOdd,
    Sp,
}

impl SymmetryFamily {
    /// Partner index `σ(a)` (0-based) of the invariant form.
    fn partner(self, size: usize, a: usize) -> usize {
        size - 1 - a
    }

    /// Sign `ε` in `M_ab = ε M_{σ(b) σ(a)}`.
    fn sign(self, size: usize, a: usize, b: usize) -> i64 {
        match self {
            SymmetryFamily::SoEven | SymmetryFamily::SoOdd => -1,
            SymmetryFamily::Sp => {
                let half = size / 2;
                if (a < half) == (b < half) {
                    -1
                } else {
                    1
                }
            }
        }
    }

    fn check_size(self, size: usize) -> Result<()> {
        let ok = match self {
            SymmetryFamily::SoOdd => size % 2 == 1,
            _ => size.is_multiple_of(2) && size > 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{self:?} does not act on {size}x{size} matrices"
            )))
        }
    }
}

impl FromStr for SymmetryFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('_', "-").to_ascii_lowercase().as_str() {
            "so-even" => Ok(SymmetryFamily::SoEven),
            "so-odd" => Ok(SymmetryFamily::SoOdd),
            "sp" => Ok(SymmetryFamily::Sp),
            _ => Err(Error::InvalidInput(format!(
                "unknown symmetry family {s:?}"
            ))),
        }
    }
}

fn check_relations(m: &QMatrix, family: SymmetryFamily) -> bool {
    let n = m.rows();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let (pb, pa) = (family.partner(n, b), family.partner(n, a));
            m[(a, b)] == qi(family.sign(n, a, b)) * &m[(pb, pa)]
        })
    })
}

/// Entry relations of `so(2n)`, `so(2n+1)` (anti-diagonal form) or `sp(2n)`
/// (form `[[0, J], [-J, 0]]`, `J` anti-diagonal) on every `z`-coefficient.
pub fn symmetry_check(g: &LaurentMatrix, family: SymmetryFamily) -> Result<bool> {
    family.check_size(g.size())?;
    let levels = g.levels()?;
    Ok(levels
        .into_iter()
        .all(|k| check_relations(&g.coefficient(k), family)))
}

/// Defining representation of a classical root system: the weight of each
/// basis vector in the ambient coordinates of `rs`.
#[derive(Clone, Debug)]
pub struct MatrixModel {
    family: Family,
    size: usize,
    weights: Vec<Vec<Q>>,
    /// Index into `rs.roots()` of the weight of `E_ab`, row-major.
    entry_roots: Vec<Option<usize>>,
}

impl MatrixModel {
    pub fn new(rs: &RootSystem) -> Self {
        let r = rs.rank();
        let dim = rs.ambient_dim();
        let eps = |i: usize, s: i64| {
            let mut v = vec![Q::zero(); dim];
            v[i] = qi(s);
            v
        };
        let weights: Vec<Vec<Q>> = match rs.family() {
            Family::A => (0..=r).map(|i| eps(i, 1)).collect(),
            Family::C | Family::D => (0..2 * r)
                .map(|i| {
                    if i < r {
                        eps(i, 1)
                    } else {
                        eps(2 * r - 1 - i, -1)
                    }
                })
                .collect(),
            Family::B => (0..=2 * r)
                .map(|i| match i.cmp(&r) {
                    std::cmp::Ordering::Less => eps(i, 1),
                    std::cmp::Ordering::Equal => vec![Q::zero(); dim],
                    std::cmp::Ordering::Greater => eps(2 * r - i, -1),
                })
                .collect(),
        };
        let by_weight: std::collections::HashMap<Vec<Q>, usize> = rs
            .roots()
            .iter()
            .enumerate()
            .map(|(i, r)| (rs.to_ambient(r), i))
            .collect();
        let size = weights.len();
        let entry_roots = (0..size * size)
            .map(|e| {
                let (a, b) = (e / size, e % size);
                let w: Vec<Q> = weights[a]
                    .iter()
                    .zip(&weights[b])
                    .map(|(x, y)| x - y)
                    .collect();
                by_weight.get(&w).copied()
            })
            .collect();
        MatrixModel {
            family: rs.family(),
            size,
            weights,
            entry_roots,
        }
    }

    /// Root index of the weight of `E_ab`, if that weight is a root.
    pub fn entry_root(&self, a: usize, b: usize) -> Option<usize> {
        self.entry_roots[a * self.size + b]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn symmetry(&self) -> Option<SymmetryFamily> {
        match self.family {
            Family::A => None,
            Family::B => Some(SymmetryFamily::SoOdd),
            Family::C => Some(SymmetryFamily::Sp),
            Family::D => Some(SymmetryFamily::SoEven),
        }
    }

    /// Weight of the matrix unit `E_ab`.
    pub fn entry_weight(&self, a: usize, b: usize) -> Vec<Q> {
        self.weights[a]
            .iter()
            .zip(&self.weights[b])
            .map(|(x, y)| x - y)
            .collect()
    }

    /// Whether a constant matrix lies in the finite Lie algebra.
    pub fn in_algebra(&self, m: &QMatrix) -> bool {
        match self.symmetry() {
            None => (0..self.size)
                .map(|i| m[(i, i)].clone())
                .sum::<Q>()
                .is_zero(),
            Some(f) => check_relations(m, f),
        }
    }

    /// A root vector for `beta` (simple-root coefficients): `E_ab` plus its
    /// partner entry forced by the invariant form.
    pub fn root_vector(&self, rs: &RootSystem, beta: &[i64]) -> Result<QMatrix> {
        let target = rs.to_ambient(beta);
        let (a, b) = (0..self.size)
            .flat_map(|a| (0..self.size).map(move |b| (a, b)))
            .find(|&(a, b)| a != b && self.entry_weight(a, b) == target)
            .ok_or(Error::NotInRootLattice)?;
        let mut m = QMatrix::zeros(self.size, self.size);
        m[(a, b)] = Q::one();
        if let Some(f) = self.symmetry() {
            let (pb, pa) = (f.partner(self.size, b), f.partner(self.size, a));
            if (pb, pa) != (a, b) {
                m[(pb, pa)] = qi(f.sign(self.size, a, b));
            }
        }
        Ok(m)
    }

    /// Basis of the Cartan subalgebra.
    pub fn cartan_basis(&self) -> Vec<QMatrix> {
        let n = self.size;
        match self.symmetry() {
            None => (0..n - 1)
                .map(|i| {
                    let mut m = QMatrix::zeros(n, n);
                    m[(i, i)] = Q::one();
                    m[(i + 1, i + 1)] = qi(-1);
                    m
                })
                .collect(),
            Some(_) => (0..n / 2)
                .map(|i| {
                    let mut m = QMatrix::zeros(n, n);
                    m[(i, i)] = Q::one();
                    m[(n - 1 - i, n - 1 - i)] = qi(-1);
                    m
                })
                .collect(),
        }
    }
}

/// Checks every `z`-coefficient against the graded pieces of the parabolic.
pub fn parabolic_membership(g: &LaurentMatrix, rs: &RootSystem, c: &Crossing) -> Result<bool> {
    let model = MatrixModel::new(rs);
    if g.size() != model.size() {
        return Err(Error::DimensionMismatch {
            expected: model.size(),
            got: g.size(),
        });
    }
    let p = classify_parabolic(c, rs)?;
    for k in g.levels()? {
        let m = g.coefficient(k);
        if !model.in_algebra(&m) {
            return Ok(false);
        }
        let piece = graded_component_closed_form(&p, rs, k);
        for a in 0..model.size() {
            for b in 0..model.size() {
                if m[(a, b)].is_zero() {
                    continue;
                }
                let allowed = if a == b {
                    piece.cartan
                } else {
                    model
                        .entry_root(a, b)
                        .is_some_and(|i| piece.roots.contains(&i))
                };
                if !allowed {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Basis of the parabolic of `c` in `z`-levels `lo..=hi`: root vectors
/// `z^k E_beta` and `z^k h` for the allowed pieces.
pub fn parabolic_basis(
    rs: &RootSystem,
    c: &Crossing,
    lo: i64,
    hi: i64,
) -> Result<Vec<LaurentMatrix>> {
    let model = MatrixModel::new(rs);
    let p = classify_parabolic(c, rs)?;
    let mut out = Vec::new();
    for k in lo..=hi {
        let GradedPiece { roots, cartan } = graded_component_closed_form(&p, rs, k);
        if cartan {
            for h in model.cartan_basis() {
                out.push(LaurentMatrix::from_levels(model.size(), &[(k, h)])?);
            }
        }
        for idx in roots {
            let e = model.root_vector(rs, &rs.roots()[idx])?;
            out.push(LaurentMatrix::from_levels(model.size(), &[(k, e)])?);
        }
    }
    Ok(out)
}

/// Root vector of the affine simple root `α_i`: `z E_{-θ}` for `i = 0`.
pub fn affine_simple_root_vector(rs: &RootSystem, i: usize) -> Result<LaurentMatrix> {
    let model = MatrixModel::new(rs);
    let (k, beta): (i64, RootCoeffs) = if i == 0 {
        (1, rs.theta().iter().map(|x| -x).collect())
    } else {
        let mut b = vec![0; rs.rank()];
        b[i - 1] = 1;
        (0, b)
    };
    LaurentMatrix::from_levels(model.size(), &[(k, model.root_vector(rs, &beta)?)])
}

/// Node permutation induced by a conjugation, read off from where it sends
/// the affine simple root vectors.
pub fn induced_node_permutation(kind: OuterKind, rs: &RootSystem) -> Result<DiagramAutomorphism> {
    let model = MatrixModel::new(rs);
    let r = rs.rank();
    let simple: Vec<(i64, RootCoeffs)> = (0..=r)
        .map(|i| {
            if i == 0 {
                (1, rs.theta().iter().map(|x| -x).collect())
            } else {
                let mut b = vec![0; r];
                b[i - 1] = 1;
                (0, b)
            }
        })
        .collect();
    let mut perm = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let img = conjugate_outer(&affine_simple_root_vector(rs, i)?, kind)?;
        let levels: Vec<i64> = img.levels()?.into_iter().collect();
        let [k] = levels[..] else {
            return Err(Error::Internal(format!(
                "{kind} spreads a root vector over several levels"
            )));
        };
        let m = img.coefficient(k);
        let (a, b) = (0..model.size())
            .flat_map(|a| (0..model.size()).map(move |b| (a, b)))
            .find(|&(a, b)| !m[(a, b)].is_zero())
            .ok_or_else(|| Error::Internal("root vector mapped to zero".into()))?;
        let beta = rs.simple_expansion(&model.entry_weight(a, b))?;
        let j = simple
            .iter()
            .position(|s| *s == (k, beta.clone()))
            .ok_or_else(|| {
                Error::Internal(format!(
                    "{kind} does not permute the simple roots of {}{}",
                    rs.family(),
                    r
                ))
            })?;
        perm.push(j);
    }
    DiagramAutomorphism::from_perm(perm)
}
