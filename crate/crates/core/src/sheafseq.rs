//! Index combinatorics of the nested sheaf sequences `E^{i,j}` attached to
//! parabolics of the classical loop groups.
//!
//! Labels run over `1..=n` for `GL(n)`, `1..=2n` for `Sp(2n)`, `1..=2n+1`
//! for `SO(2n+1)`, and for `SO(2n)` over `1..2n` with positions `n` and `2n`
//! carrying a `±` tag.

use std::fmt;
use std::str::FromStr;

use crate::affine::Crossing;
use crate::rootsys::Family;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SheafFamily {
    Gl,
    Sp,
    SoOdd,
    SoEven,
}

impl SheafFamily {
    pub const ALL: [SheafFamily; 4] = [
        SheafFamily::Gl,
        SheafFamily::Sp,
        SheafFamily::SoOdd,
        SheafFamily::SoEven,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SheafFamily::Gl => "gl",
            SheafFamily::Sp => "sp",
            SheafFamily::SoOdd => "so-odd",
            SheafFamily::SoEven => "so-even",
        }
    }

    /// Finite root system type and rank of the loop group.
    pub fn root_data(self, n: usize) -> (Family, usize) {
        match self {
            SheafFamily::Gl => (Family::A, n - 1),
            SheafFamily::Sp => (Family::C, n),
            SheafFamily::SoOdd => (Family::B, n),
            SheafFamily::SoEven => (Family::D, n),
        }
    }

    /// Rank of the underlying vector bundle.
    pub fn bundle_rank(self, n: usize) -> usize {
        match self {
            SheafFamily::Gl => n,
            SheafFamily::Sp | SheafFamily::SoEven => 2 * n,
            SheafFamily::SoOdd => 2 * n + 1,
        }
    }

    fn check_n(self, n: usize) -> Result<()> {
        let min = match self {
            SheafFamily::SoEven => 2,
            _ => 1,
        };
        if n < min {
            return Err(Error::InvalidInput(format!(
                "{} needs n >= {min}, got {n}",
                self.name()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for SheafFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SheafFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" | "sl" => Ok(SheafFamily::Gl),
            "sp" => Ok(SheafFamily::Sp),
            "so-odd" | "so_odd" => Ok(SheafFamily::SoOdd),
            "so-even" | "so_even" => Ok(SheafFamily::SoEven),
            _ => Err(Error::InvalidInput(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Minus,
    None,
    Plus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub pos: usize,
    pub tag: Tag,
}

impl Label {
    pub fn plain(pos: usize) -> Self {
        Label {
            pos,
            tag: Tag::None,
        }
    }

    pub fn plus(pos: usize) -> Self {
        Label {
            pos,
            tag: Tag::Plus,
        }
    }

    pub fn minus(pos: usize) -> Self {
        Label {
            pos,
            tag: Tag::Minus,
        }
    }

    fn with_pos(self, pos: usize) -> Self {
        Label { pos, tag: self.tag }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            Tag::None => write!(f, "{}", self.pos),
            Tag::Plus => write!(f, "{}+", self.pos),
            Tag::Minus => write!(f, "{}-", self.pos),
        }
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (digits, tag) = if let Some(d) = s.strip_suffix('+') {
            (d, Tag::Plus)
        } else if let Some(d) = s.strip_suffix('-') {
            (d, Tag::Minus)
        } else {
            (s, Tag::None)
        };
        let pos = digits
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad label {s:?}")))?;
        Ok(Label { pos, tag })
    }
}

/// `E^{i,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SheafIndex {
    pub i: i64,
    pub label: Label,
}

impl SheafIndex {
    pub fn new(i: i64, label: Label) -> Self {
        SheafIndex { i, label }
    }

    pub fn plain(i: i64, j: usize) -> Self {
        SheafIndex::new(i, Label::plain(j))
    }
}

impl fmt::Display for SheafIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.label)
    }
}

/// All labels of one period, in sequence order.
pub fn label_set(family: SheafFamily, n: usize) -> Result<Vec<Label>> {
    family.check_n(n)?;
    Ok(match family {
        SheafFamily::SoEven => {
            let mut out = Vec::with_capacity(2 * n + 2);
            for p in 1..=2 * n {
                if p == n || p == 2 * n {
                    out.push(Label::minus(p));
                    out.push(Label::plus(p));
                } else {
                    out.push(Label::plain(p));
                }
            }
            out
        }
        _ => (1..=family.bundle_rank(n)).map(Label::plain).collect(),
    })
}

pub fn check_label(family: SheafFamily, n: usize, label: Label) -> Result<()> {
    if label_set(family, n)?.contains(&label) {
        Ok(())
    } else {
        Err(Error::InvalidLabel {
            family: format!("{family}({n})"),
            label: label.to_string(),
        })
    }
}

/// `R(i - 1) + j` with `R` the bundle rank.
pub fn sheaf_degree(family: SheafFamily, n: usize, idx: SheafIndex) -> Result<i64> {
    check_label(family, n, idx.label)?;
    Ok(family.bundle_rank(n) as i64 * (idx.i - 1) + idx.label.pos as i64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub family: SheafFamily,
    pub n: usize,
    pub surviving_labels: Vec<Label>,
    pub source_crossing: Crossing,
}

/// Labels kept by a crossing: each crossed node keeps the flag steps it
/// controls; the rest are deleted.
pub fn sequence_spec(family: SheafFamily, n: usize, c: &Crossing) -> Result<SequenceSpec> {
    family.check_n(n)?;
    let (_, rank) = family.root_data(n);
    if c.num_nodes() != rank + 1 {
        return Err(Error::NodeMismatch(format!(
            "crossing has {} nodes, {family}({n}) needs {}",
            c.num_nodes(),
            rank + 1
        )));
    }
    let x = |i: usize| c.is_crossed(i);
    let mut keep = Vec::new();
    match family {
        SheafFamily::Gl => {
            keep.extend((1..n).filter(|&j| x(j)).map(Label::plain));
            if x(0) {
                keep.push(Label::plain(n));
            }
        }
        SheafFamily::Sp => {
            for j in 1..n {
                if x(j) {
                    keep.extend([Label::plain(j), Label::plain(2 * n - j)]);
                }
            }
            if x(n) {
                keep.push(Label::plain(n));
            }
            if x(0) {
                keep.push(Label::plain(2 * n));
            }
        }
        SheafFamily::SoOdd => {
            for j in 1..=n {
                if x(j) {
                    keep.extend([Label::plain(j), Label::plain(2 * n + 1 - j)]);
                }
            }
            if x(0) {
                keep.push(Label::plain(2 * n + 1));
            }
        }
        SheafFamily::SoEven => {
            for k in 2..n.saturating_sub(1) {
                if x(k) {
                    keep.extend([Label::plain(k), Label::plain(2 * n - k)]);
                }
            }
            // The two tagged steps at n determine the untagged steps beside them,
            // and likewise at 2n.
            if x(n - 1) {
                keep.push(Label::minus(n));
            }
            if x(n) {
                keep.push(Label::plus(n));
            }
            if x(n - 1) && x(n) {
                keep.extend([Label::plain(n - 1), Label::plain(n + 1)]);
            }
            if x(1) {
                keep.push(Label::minus(2 * n));
            }
            if x(0) {
                keep.push(Label::plus(2 * n));
            }
            if x(0) && x(1) {
                keep.extend([Label::plain(1), Label::plain(2 * n - 1)]);
            }
        }
    }
    keep.sort();
    keep.dedup();
    Ok(SequenceSpec {
        family,
        n,
        surviving_labels: keep,
        source_crossing: c.clone(),
    })
}

/// Skyscraper lengths `(j_2 - j_1, ..., n + j_1 - j_k)` of a `GL(n)` sequence.
pub fn quotient_sizes(spec: &SequenceSpec) -> Result<Vec<usize>> {
    if spec.family != SheafFamily::Gl {
        return Err(Error::Unsupported(format!(
            "quotient sizes for {}",
            spec.family
        )));
    }
    let js: Vec<usize> = spec.surviving_labels.iter().map(|l| l.pos).collect();
    let (Some(&first), Some(&last)) = (js.first(), js.last()) else {
        return Err(Error::InvalidInput("empty sequence".into()));
    };
    let mut out: Vec<usize> = js.windows(2).map(|w| w[1] - w[0]).collect();
    out.push(spec.n + first - last);
    Ok(out)
}

/// Index relabeling induced by the Hecke transform of the family.
pub fn hecke_index_shift(family: SheafFamily, n: usize, idx: SheafIndex) -> Result<SheafIndex> {
    check_label(family, n, idx.label)?;
    let (i, l) = (idx.i, idx.label);
    Ok(match family {
        SheafFamily::Gl if l.pos < n => SheafIndex::new(i, l.with_pos(l.pos + 1)),
        SheafFamily::Gl => SheafIndex::plain(i + 1, 1),
        SheafFamily::Sp | SheafFamily::SoEven if l.pos <= n => {
            SheafIndex::new(i, l.with_pos(l.pos + n))
        }
        SheafFamily::Sp | SheafFamily::SoEven => SheafIndex::new(i + 1, l.with_pos(l.pos - n)),
        SheafFamily::SoOdd if l.pos == 2 * n + 1 => SheafIndex::plain(i + 1, 1),
        SheafFamily::SoOdd if l.pos == 1 => SheafIndex::plain(i - 1, 2 * n + 1),
        SheafFamily::SoOdd => idx,
    })
}

pub fn hecke_index_shift_inverse(
    family: SheafFamily,
    n: usize,
    idx: SheafIndex,
) -> Result<SheafIndex> {
    check_label(family, n, idx.label)?;
    let (i, l) = (idx.i, idx.label);
    Ok(match family {
        SheafFamily::Gl if l.pos > 1 => SheafIndex::new(i, l.with_pos(l.pos - 1)),
        SheafFamily::Gl => SheafIndex::plain(i - 1, n),
        SheafFamily::Sp | SheafFamily::SoEven if l.pos > n => {
            SheafIndex::new(i, l.with_pos(l.pos - n))
        }
        SheafFamily::Sp | SheafFamily::SoEven => SheafIndex::new(i - 1, l.with_pos(l.pos + n)),
        SheafFamily::SoOdd => return hecke_index_shift(family, n, idx),
    })
}

fn flip_tag(idx: SheafIndex, pos: usize) -> SheafIndex {
    let tag = match idx.label.tag {
        Tag::Plus if idx.label.pos == pos => Tag::Minus,
        Tag::Minus if idx.label.pos == pos => Tag::Plus,
        t => t,
    };
    SheafIndex::new(
        idx.i,
        Label {
            pos: idx.label.pos,
            tag,
        },
    )
}

/// `SO(2n)`: exchanges `(n,+)` and `(n,-)`, fixing everything else.
pub fn swap_middle_tags(n: usize, idx: SheafIndex) -> Result<SheafIndex> {
    check_label(SheafFamily::SoEven, n, idx.label)?;
    Ok(flip_tag(idx, n))
}

/// `SO(2n)`: exchanges `(2n,+)` and `(2n,-)`, fixing everything else.
pub fn swap_end_tags(n: usize, idx: SheafIndex) -> Result<SheafIndex> {
    check_label(SheafFamily::SoEven, n, idx.label)?;
    Ok(flip_tag(idx, 2 * n))
}

/// `z`-exponent of the basis vector `e_c` of the lattice `E^{i,j}`:
/// `z^{-i} e_c` for `c <= j`, `z^{-i+1} e_c` otherwise.
pub fn basis_exponents(n: usize, idx: SheafIndex) -> Result<Vec<i64>> {
    if idx.label.tag != Tag::None || idx.label.pos == 0 || idx.label.pos > 2 * n {
        return Err(Error::InvalidLabel {
            family: format!("quadratic form on rank {}", 2 * n),
            label: idx.label.to_string(),
        });
    }
    Ok((1..=2 * n)
        .map(|c| {
            if c <= idx.label.pos {
                -idx.i
            } else {
                -idx.i + 1
            }
        })
        .collect())
}

/// Valuation of the pairing `<e_a, e_{2n+1-a}>` on the basis of `E^{i,j}`
/// for each hyperbolic pair `a = 1..=n`.
pub fn quad_form_valuations(n: usize, idx: SheafIndex) -> Result<Vec<i64>> {
    let p = basis_exponents(n, idx)?;
    Ok((0..n).map(|a| p[a] + p[2 * n - 1 - a]).collect())
}
