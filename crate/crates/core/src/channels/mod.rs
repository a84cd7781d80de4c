//! The six asymmetric channel families and their canonical element
//! encodings.
//!
//! | family     | inputs                         | `x ⤳ y` when                   | rank              |
//! |------------|--------------------------------|--------------------------------|-------------------|
//! | `subset`   | subsets of `{1..n}`            | `y ⊆ x`                        | cardinality       |
//! | `multiset` | multiplicity vectors in `N^n`  | `μ_y <= μ_x` coordinatewise    | cardinality       |
//! | `zchannel` | words in `{0..a-1}^n`          | `y_i <= x_i` for all `i`       | Manhattan weight  |
//! | `subspace` | subspaces of `F_p^n`           | `y` is a subspace of `x`       | dimension         |
//! | `deletion` | words over `{0..a-1}`          | `y` is a subsequence of `x`    | length            |
//! | `shift`    | binary words, length n weight w| `λ_x <= λ_y` coordinatewise    | `Σ λ̃_x(i)`        |
//!
//! Multiset and deletion channels have infinitely many inputs and always
//! carry an explicit rank range. The dual of any channel swaps input and
//! output; it is represented by a flag rather than a separate type.

mod element;
pub(crate) mod subspace;

use std::fmt;

pub use element::{Element, MultisetElem, SeqElem, ShiftElem, SubsetElem, SubspaceElem, WordElem};

use crate::count::{binomial, compositions_count, partitions_count, q_binomial, BigCount};
use crate::error::{Error, Result};
use crate::poset::{GradedChannel, RankRange, ENUMERATION_LIMIT};
use element::parse_symbol;
use subspace::Fp;

/// Largest alphabet (and field) size with a single-character symbol.
pub const MAX_ALPHABET: u32 = 36;

/// A channel family together with its structural parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Subsets of `{1, ..., n}` under set reduction.
    Subset { n: u32 },
    /// Multisets over `{1, ..., n}` under multiset reduction.
    Multiset { n: u32 },
    /// Words in `{0, ..., a-1}^n` whose symbols can only decrease.
    ZChannel { a: u32, n: u32 },
    /// Subspaces of `F_p^n` under dimension reduction.
    Subspace { p: u32, n: u32 },
    /// Words over `{0, ..., a-1}` under symbol deletion.
    Deletion { a: u32 },
    /// Binary words of length `n` and weight `w` whose ones shift right.
    Shift { n: u32, w: u32 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Subset { .. } => "subset",
            Family::Multiset { .. } => "multiset",
            Family::ZChannel { .. } => "zchannel",
            Family::Subspace { .. } => "subspace",
            Family::Deletion { .. } => "deletion",
            Family::Shift { .. } => "shift",
        }
    }

    pub const NAMES: [&'static str; 6] = ["subset", "multiset", "zchannel", "subspace", "deletion", "shift"];

    /// Structural parameters in canonical order.
    pub fn params(&self) -> Vec<(&'static str, u32)> {
        match *self {
            Family::Subset { n } | Family::Multiset { n } => vec![("n", n)],
            Family::ZChannel { a, n } => vec![("a", a), ("n", n)],
            Family::Subspace { p, n } => vec![("p", p), ("n", n)],
            Family::Deletion { a } => vec![("a", a)],
            Family::Shift { n, w } => vec![("n", n), ("w", w)],
        }
    }

    /// The full rank range, or `None` for the infinite families.
    pub fn natural_range(&self) -> Option<RankRange> {
        let top = match *self {
            Family::Subset { n } | Family::Subspace { n, .. } => n as usize,
            Family::ZChannel { a, n } => n as usize * (a as usize - 1),
            Family::Shift { n, w } => w as usize * (n - w) as usize,
            Family::Multiset { .. } | Family::Deletion { .. } => return None,
        };
        Some(RankRange::single(0).with_hi(top))
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::domain(msg));
        match *self {
            Family::Subset { n } if n == 0 || n > SubsetElem::MAX_WIDTH => {
                bad(format!("subset channel needs 1 <= n <= {}, got {n}", SubsetElem::MAX_WIDTH))
            }
            Family::Multiset { n: 0 } => bad("multiset channel needs n >= 1".into()),
            Family::ZChannel { a, .. } | Family::Deletion { a } if !(2..=MAX_ALPHABET).contains(&a) => {
                bad(format!("alphabet size must be in 2..={MAX_ALPHABET}, got {a}"))
            }
            Family::ZChannel { n: 0, .. } => bad("zchannel needs n >= 1".into()),
            Family::Subspace { p, .. } if !subspace::is_prime(p) || p > MAX_ALPHABET => {
                bad(format!("subspace channel needs a prime p <= {MAX_ALPHABET}, got {p}"))
            }
            Family::Subspace { n: 0, .. } => bad("subspace channel needs n >= 1".into()),
            Family::Shift { n, w } if n == 0 || w > n => {
                bad(format!("shift channel needs n >= 1 and w <= n, got n={n}, w={w}"))
            }
            _ => Ok(()),
        }
    }

    /// `|X_l|` in the unrestricted poset.
    pub fn level_size(&self, l: usize) -> BigCount {
        let li = l as i64;
        match *self {
            Family::Subset { n } => binomial(n as u64, li),
            Family::Multiset { n } => binomial(l as u64 + n as u64 - 1, n as i64 - 1),
            Family::ZChannel { a, n } => compositions_count(a as u64 - 1, n as u64, li),
            Family::Subspace { p, n } => q_binomial(n as u64, li, p as u64).expect("p >= 2"),
            Family::Deletion { a } => BigCount::pow(a as u64, l as u32),
            Family::Shift { n, w } => partitions_count((n - w) as u64, w as u64, li),
        }
    }
}

impl RankRange {
    fn with_hi(self, hi: usize) -> RankRange {
        RankRange::new(self.lo(), hi).expect("hi >= lo")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        for (k, v) in self.params() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// A concrete channel: a family, the rank range its inputs are restricted
/// to, and whether it is the dual.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Channel {
    family: Family,
    range: RankRange,
    dual: bool,
}

impl Channel {
    /// Builds a channel. Finite families default to their full rank range;
    /// `multiset` and `deletion` require one.
    pub fn new(family: Family, range: Option<RankRange>) -> Result<Self> {
        family.validate()?;
        let range = match (family.natural_range(), range) {
            (Some(natural), Some(r)) if !natural.contains_range(&r) => {
                return Err(Error::domain(format!("rank range {r} outside {} bounds {natural}", family.name())))
            }
            (Some(natural), r) => r.unwrap_or(natural),
            (None, Some(r)) => r,
            (None, None) => {
                return Err(Error::domain(format!(
                    "{} channel has infinitely many inputs and needs a rank range",
                    family.name()
                )))
            }
        };
        Ok(Channel { family, range, dual: false })
    }

    pub fn subset(n: u32) -> Result<Self> {
        Self::new(Family::Subset { n }, None)
    }

    pub fn multiset(n: u32, lo: usize, hi: usize) -> Result<Self> {
        Self::new(Family::Multiset { n }, Some(RankRange::new(lo, hi)?))
    }

    pub fn zchannel(a: u32, n: u32) -> Result<Self> {
        Self::new(Family::ZChannel { a, n }, None)
    }

    pub fn subspace(p: u32, n: u32) -> Result<Self> {
        Self::new(Family::Subspace { p, n }, None)
    }

    pub fn deletion(a: u32, lo: usize, hi: usize) -> Result<Self> {
        Self::new(Family::Deletion { a }, Some(RankRange::new(lo, hi)?))
    }

    pub fn shift(n: u32, w: u32) -> Result<Self> {
        Self::new(Family::Shift { n, w }, None)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// The channel with input and output roles swapped.
    pub fn dual(&self) -> Channel {
        Channel { dual: !self.dual, ..self.clone() }
    }

    /// The same channel restricted to ranks in `r`.
    pub fn restrict(&self, r: RankRange) -> Result<Channel> {
        if !self.range.contains_range(&r) {
            return Err(Error::domain(format!("rank range {r} outside channel range {}", self.range)));
        }
        Ok(Channel { range: r, ..self.clone() })
    }

    /// Whether the rank range is the family's full range (always false for
    /// the infinite families).
    pub fn is_unrestricted(&self) -> bool {
        self.family.natural_range() == Some(self.range)
    }

    /// Parameters as written in code-file headers: the family parameters,
    /// `lo`/`hi` when the range is not the family's full range, and `dual=1`
    /// for duals.
    pub fn header_params(&self) -> Vec<(&'static str, u64)> {
        let mut out: Vec<(&'static str, u64)> = self.family.params().into_iter().map(|(k, v)| (k, v as u64)).collect();
        if !self.is_unrestricted() {
            out.push(("lo", self.range.lo() as u64));
            out.push(("hi", self.range.hi() as u64));
        }
        if self.dual {
            out.push(("dual", 1));
        }
        out
    }

    fn check(&self, x: &Element) -> Result<()> {
        let fail = |why: String| Err(Error::domain(format!("{x} is not a {} input: {why}", self.family.name())));
        match (&self.family, x) {
            (Family::Subset { n }, Element::Subset(s)) if s.width() != *n => {
                fail(format!("width {} != {n}", s.width()))
            }
            (Family::Subset { .. }, Element::Subset(_)) => Ok(()),
            (Family::Multiset { n }, Element::Multiset(m)) if m.0.len() != *n as usize => {
                fail(format!("length {} != {n}", m.0.len()))
            }
            (Family::Multiset { .. }, Element::Multiset(_)) => Ok(()),
            (Family::ZChannel { a, n }, Element::Word(w)) => {
                if w.0.len() != *n as usize {
                    fail(format!("length {} != {n}", w.0.len()))
                } else if w.0.iter().any(|&s| s as u32 >= *a) {
                    fail(format!("symbol outside alphabet of size {a}"))
                } else {
                    Ok(())
                }
            }
            (Family::Deletion { a }, Element::Seq(s)) if s.0.iter().any(|&v| v as u32 >= *a) => {
                fail(format!("symbol outside alphabet of size {a}"))
            }
            (Family::Deletion { .. }, Element::Seq(_)) => Ok(()),
            (Family::Subspace { p, n }, Element::Subspace(u)) => {
                if subspace::is_canonical_rref(&u.rows, *n as usize, *p) {
                    Ok(())
                } else {
                    fail("basis is not a canonical RREF matrix".into())
                }
            }
            (Family::Shift { n, w }, Element::Shift(s)) => {
                let valid = s.n == *n
                    && s.adjusted.len() == *w as usize
                    && s.adjusted.windows(2).all(|p| p[0] <= p[1])
                    && s.adjusted.last().is_none_or(|&v| v <= n - w);
                if valid {
                    Ok(())
                } else {
                    fail(format!("not a weight-{w} word of length {n}"))
                }
            }
            _ => fail(format!("element is a {}", x.kind_name())),
        }?;
        let r = x.rank();
        if !self.range.contains(r) {
            return fail(format!("rank {r} outside {}", self.range));
        }
        Ok(())
    }

    /// `x ⤳ y` in the undualized channel; both inputs already checked.
    fn reaches(&self, x: &Element, y: &Element) -> bool {
        match (x, y) {
            (Element::Subset(x), Element::Subset(y)) => y.is_subset_of(x),
            (Element::Multiset(x), Element::Multiset(y)) => y.0.iter().zip(&x.0).all(|(b, a)| b <= a),
            (Element::Word(x), Element::Word(y)) => y.0.iter().zip(&x.0).all(|(b, a)| b <= a),
            (Element::Seq(x), Element::Seq(y)) => is_subsequence(&y.0, &x.0),
            (Element::Subspace(x), Element::Subspace(y)) => {
                let Family::Subspace { p, .. } = self.family else { unreachable!() };
                subspace::is_subspace(&y.rows, &x.rows, Fp::new(p))
            }
            (Element::Shift(x), Element::Shift(y)) => {
                x.adjusted.len() == y.adjusted.len() && x.adjusted.iter().zip(&y.adjusted).all(|(a, b)| a <= b)
            }
            _ => unreachable!("checked elements share the channel's kind"),
        }
    }

    /// Parses the canonical text encoding of an input of this channel.
    ///
    /// Subspace rows may be any spanning set of vectors; they are reduced
    /// to the canonical basis.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        let symbols = |text: &str, bound: u32| -> Result<Vec<u8>> {
            text.chars()
                .map(|c| {
                    parse_symbol(c)
                        .filter(|&v| (v as u32) < bound)
                        .ok_or_else(|| Error::parse(format!("invalid symbol {c:?} in {s:?}")))
                })
                .collect()
        };
        let elem = match self.family {
            Family::Subset { .. } => {
                let bits = symbols(s, 2)?;
                if bits.len() > SubsetElem::MAX_WIDTH as usize {
                    return Err(Error::parse(format!("subset word {s:?} is too long")));
                }
                let mask = bits.iter().enumerate().fold(0u64, |m, (i, &b)| m | (b as u64) << i);
                Element::Subset(SubsetElem::new(bits.len() as u32, mask))
            }
            Family::Multiset { .. } => {
                let mult = s
                    .split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::parse(format!("invalid multiplicity {v:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Element::Multiset(MultisetElem(mult))
            }
            Family::ZChannel { a, .. } => Element::Word(WordElem(symbols(s, a)?)),
            Family::Deletion { a } => {
                if s == "-" {
                    Element::Seq(SeqElem(Vec::new()))
                } else {
                    Element::Seq(SeqElem(symbols(s, a)?))
                }
            }
            Family::Subspace { p, n } => {
                let rows = if s == "-" {
                    Vec::new()
                } else {
                    s.split(';').map(|row| symbols(row, p)).collect::<Result<Vec<_>>>()?
                };
                if rows.iter().any(|r| r.len() != n as usize) {
                    return Err(Error::parse(format!("subspace rows in {s:?} must have length {n}")));
                }
                Element::Subspace(SubspaceElem { rows: subspace::rref(rows, Fp::new(p)) })
            }
            Family::Shift { n, .. } => {
                let bits = symbols(s, 2)?;
                if bits.len() != n as usize {
                    return Err(Error::parse(format!("shift word {s:?} must have length {n}")));
                }
                let positions: Vec<u32> =
                    bits.iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i as u32 + 1).collect();
                Element::Shift(ShiftElem::from_positions(n, &positions))
            }
        };
        if s.is_empty() && !matches!(self.family, Family::Subset { .. }) {
            return Err(Error::parse("empty element encoding"));
        }
        self.check(&elem)?;
        Ok(elem)
    }

    /// Level enumeration with an explicit size cap.
    pub fn enumerate_level_limited(&self, l: usize, limit: u64) -> Result<Vec<Element>> {
        let size = self.level_size(l);
        if size > BigCount::from(limit) {
            return Err(Error::Resource { what: format!("level {l} of {}", self.family), count: size, limit });
        }
        if size.is_zero() {
            return Ok(Vec::new());
        }
        let mut out: Vec<Element> = match self.family {
            Family::Subset { n } => subspace::combinations(n as usize, l)
                .into_iter()
                .map(|c| Element::Subset(SubsetElem::new(n, c.iter().fold(0, |m, &i| m | 1 << i))))
                .collect(),
            Family::Multiset { n } => bounded_compositions(l, n as usize, l)
                .into_iter()
                .map(|v| Element::Multiset(MultisetElem(v.into_iter().map(|x| x as u32).collect())))
                .collect(),
            Family::ZChannel { a, n } => bounded_compositions(l, n as usize, a as usize - 1)
                .into_iter()
                .map(|v| Element::Word(WordElem(v.into_iter().map(|x| x as u8).collect())))
                .collect(),
            Family::Deletion { a } => {
                let mut words = vec![Vec::new()];
                for _ in 0..l {
                    words = words
                        .into_iter()
                        .flat_map(|w: Vec<u8>| {
                            (0..a as u8).map(move |s| {
                                let mut w = w.clone();
                                w.push(s);
                                w
                            })
                        })
                        .collect();
                }
                words.into_iter().map(|w| Element::Seq(SeqElem(w))).collect()
            }
            Family::Subspace { p, n } => subspace::enumerate(n as usize, l, p)
                .into_iter()
                .map(|rows| Element::Subspace(SubspaceElem { rows }))
                .collect(),
            Family::Shift { n, w } => nondecreasing(w as usize, (n - w) as usize, l)
                .into_iter()
                .map(|adjusted| Element::Shift(ShiftElem { n, adjusted }))
                .collect(),
        };
        out.sort();
        debug_assert_eq!(BigCount::from(out.len()), size);
        Ok(out)
    }
}

impl GradedChannel for Channel {
    fn rank(&self, x: &Element) -> Result<usize> {
        self.check(x)?;
        Ok(x.rank())
    }

    fn leq(&self, y: &Element, x: &Element) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(if self.dual { self.reaches(y, x) } else { self.reaches(x, y) })
    }

    fn level_size(&self, l: usize) -> BigCount {
        if self.range.contains(l) {
            self.family.level_size(l)
        } else {
            BigCount::zero()
        }
    }

    fn enumerate_level(&self, l: usize) -> Result<Vec<Element>> {
        self.enumerate_level_limited(l, ENUMERATION_LIMIT)
    }

    fn rank_range(&self) -> RankRange {
        self.range
    }

    fn is_dual(&self) -> bool {
        self.dual
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} range={}", self.family, self.range)?;
        if self.dual {
            f.write_str(" (dual)")?;
        }
        Ok(())
    }
}

/// Greedy left-to-right embedding of `needle` into `hay`.
pub(crate) fn is_subsequence(needle: &[u8], hay: &[u8]) -> bool {
    let mut it = hay.iter();
    needle.iter().all(|c| it.any(|h| h == c))
}

/// Vectors of length `parts` with entries in `0..=max` summing to `total`.
fn bounded_compositions(total: usize, parts: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, slots: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if remaining > slots * max {
            return;
        }
        for v in 0..=max.min(remaining) {
            prefix.push(v);
            go(remaining - v, slots - 1, max, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, max, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// Nondecreasing vectors of length `len` with entries in `0..=max` summing
/// to `total`.
fn nondecreasing(len: usize, max: usize, total: usize) -> Vec<Vec<u32>> {
    fn go(remaining: usize, slots: usize, floor: usize, max: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for v in floor..=max {
            // Every later entry is at least v.
            if v * slots > remaining {
                break;
            }
            if remaining - v > (slots - 1) * max {
                continue;
            }
            prefix.push(v as u32);
            go(remaining - v, slots - 1, v, max, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, len, 0, max, &mut Vec::with_capacity(len), &mut out);
    out
}
