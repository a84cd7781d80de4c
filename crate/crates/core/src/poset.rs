//! The graded-channel contract and channel-agnostic algorithms over it.
//!
//! A channel is described by the relation `x ⤳ y` ("input `x` can produce
//! output `y`"). For every channel in this crate that relation is a partial
//! order with a rank function, so a code detects up to `t` errors exactly
//! when no two distinct codewords are comparable with a rank gap of at most
//! `t`.

use std::fmt;

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::Element;

/// Default cap on the number of elements any enumeration may produce.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;
/// Cap on the total element count for exhaustive triple (axiom) checks.
pub const AXIOM_CHECK_LIMIT: u64 = 200;
/// Cap on the smaller level of a pair in [`normalized_matching_check`].
pub const MATCHING_LEVEL_LIMIT: u64 = 20;

/// An inclusive range of ranks `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RankRange {
    lo: usize,
    hi: usize,
}

impl RankRange {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::domain(format!("empty rank range [{lo}, {hi}]")));
        }
        Ok(RankRange { lo, hi })
    }

    pub fn single(rank: usize) -> Self {
        RankRange { lo: rank, hi: rank }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    /// `hi - lo`: the largest rank difference inside the range.
    pub fn span(&self) -> usize {
        self.hi - self.lo
    }

    pub fn contains(&self, rank: usize) -> bool {
        (self.lo..=self.hi).contains(&rank)
    }

    pub fn contains_range(&self, other: &RankRange) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn ranks(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl fmt::Display for RankRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A graded asymmetric channel.
pub trait GradedChannel {
    /// Rank of `x`, or a domain error if `x` is not an input of this channel.
    fn rank(&self, x: &Element) -> Result<usize>;

    /// `true` iff `x ⤳ y`, i.e. `y ⪯ x` in the channel's poset. For a dual
    /// channel the roles of input and output are swapped.
    fn leq(&self, y: &Element, x: &Element) -> Result<bool>;

    /// `|X_l|`, zero outside [`rank_range`](Self::rank_range).
    fn level_size(&self, l: usize) -> BigCount;

    /// All elements of rank `l`, duplicate free and sorted.
    fn enumerate_level(&self, l: usize) -> Result<Vec<Element>>;

    fn rank_range(&self) -> RankRange;

    fn is_dual(&self) -> bool;

    /// Comparable in either direction.
    fn comparable(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(self.leq(x, y)? || self.leq(y, x)?)
    }
}

/// Level sizes `|X_l|` for `l` in a rank range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelProfile {
    lo: usize,
    sizes: Vec<BigCount>,
}

impl LevelProfile {
    pub fn new(lo: usize, sizes: Vec<BigCount>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::domain("level profile needs at least one rank"));
        }
        Ok(LevelProfile { lo, sizes })
    }

    pub fn from_u64(lo: usize, sizes: &[u64]) -> Result<Self> {
        Self::new(lo, sizes.iter().map(|&s| BigCount::from(s)).collect())
    }

    pub fn of<C: GradedChannel + ?Sized>(ch: &C, r: RankRange) -> Self {
        LevelProfile { lo: r.lo, sizes: r.ranks().map(|l| ch.level_size(l)).collect() }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.lo + self.sizes.len() - 1
    }

    pub fn range(&self) -> RankRange {
        RankRange { lo: self.lo, hi: self.hi() }
    }

    pub fn size(&self, rank: usize) -> &BigCount {
        &self.sizes[rank - self.lo]
    }

    pub fn sizes(&self) -> &[BigCount] {
        &self.sizes
    }

    pub fn total(&self) -> BigCount {
        self.sizes.iter().sum()
    }

    /// Nondecreasing then nonincreasing.
    pub fn is_unimodal(&self) -> bool {
        let peak = self.sizes.windows(2).position(|w| w[1] < w[0]).unwrap_or(self.sizes.len() - 1);
        self.sizes[peak..].windows(2).all(|w| w[1] <= w[0])
    }
}

/// A set of ranks with pairwise gaps larger than `t`, and the total size of
/// the corresponding levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSelection {
    /// Residue class of the ranks modulo `t + 1` (of the first rank when the
    /// selection is not an arithmetic progression).
    pub residue: usize,
    pub ranks: Vec<usize>,
    pub total: BigCount,
}

fn modulus(t: usize) -> usize {
    t.saturating_add(1)
}

/// The largest residue-class sum
/// `max_m sum { |X_l| : lo <= l <= hi, l ≡ m (mod t + 1) }`.
///
/// Ties go to the smallest residue `m`.
pub fn residue_optimum(levels: &LevelProfile, t: usize) -> RankSelection {
    let step = modulus(t);
    let (lo, hi) = (levels.lo, levels.hi());
    let mut best: Option<RankSelection> = None;
    // Each residue class meeting [lo, hi] has exactly one start in [lo, lo + t].
    for start in lo..=hi.min(lo.saturating_add(t)) {
        let ranks: Vec<usize> = (start..=hi).step_by(step).collect();
        let total: BigCount = ranks.iter().map(|&l| levels.size(l)).sum();
        let residue = start % step;
        let better = match &best {
            None => true,
            Some(b) => total > b.total || (total == b.total && residue < b.residue),
        };
        if better {
            best = Some(RankSelection { residue, ranks, total });
        }
    }
    best.expect("range is nonempty")
}

/// The exact maximum of `sum |X_l|` over all rank sets whose pairwise gaps
/// exceed `t`, by dynamic programming over ranks.
///
/// This is the chain-maximization form of Kleitman's bound and does not
/// assume unimodal level sizes. Among maximizers it prefers including
/// lower (nonempty) ranks.
pub fn kleitman_rank_selection(levels: &LevelProfile, t: usize) -> RankSelection {
    let n = levels.sizes.len();
    let step = modulus(t);
    // best[i] = optimum using only ranks lo + i .. hi.
    let mut best = vec![BigCount::zero(); n + 1];
    for i in (0..n).rev() {
        let take = levels.sizes[i].clone() + best.get(i.saturating_add(step)).unwrap_or(&BigCount::zero());
        best[i] = take.max(best[i + 1].clone());
    }
    let mut ranks = Vec::new();
    let mut i = 0;
    while i < n {
        let size = &levels.sizes[i];
        let take = size.clone() + best.get(i.saturating_add(step)).unwrap_or(&BigCount::zero());
        if !size.is_zero() && take == best[i] {
            ranks.push(levels.lo + i);
            i = i.saturating_add(step);
        } else {
            i += 1;
        }
    }
    let residue = ranks.first().map_or(levels.lo, |&r| r) % step;
    RankSelection { residue, ranks, total: best[0].clone() }
}

/// No two distinct elements of `s` are comparable.
pub fn is_antichain<C: GradedChannel + ?Sized>(ch: &C, s: &[Element]) -> Result<bool> {
    Ok(violating_pairs(ch, s, usize::MAX)?.is_empty())
}

/// All ordered pairs `(x, y)` of distinct members of `s` with `x ⤳ y` and
/// `|rank(x) - rank(y)| <= t`.
///
/// The set detects up to `t` errors iff the result is empty. Pass
/// `usize::MAX` for `t` to list every comparable pair.
pub fn violating_pairs<C: GradedChannel + ?Sized>(ch: &C, s: &[Element], t: usize) -> Result<Vec<(Element, Element)>> {
    let ranks = s.iter().map(|x| ch.rank(x)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (i, x) in s.iter().enumerate() {
        for (j, y) in s.iter().enumerate() {
            if i == j || x == y || ranks[i].abs_diff(ranks[j]) > t {
                continue;
            }
            if ch.leq(y, x)? {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(out)
}

fn check_guard(what: impl FnOnce() -> String, count: &BigCount, limit: u64) -> Result<()> {
    if *count > BigCount::from(limit) {
        return Err(Error::Resource { what: what(), count: count.clone(), limit });
    }
    Ok(())
}

/// Every element with rank in `r`, level by level, refusing to produce more
/// than `limit` elements.
pub fn enumerate_range<C: GradedChannel + ?Sized>(ch: &C, r: RankRange, limit: u64) -> Result<Vec<Vec<Element>>> {
    let total = LevelProfile::of(ch, r).total();
    check_guard(|| format!("rank range {r}"), &total, limit)?;
    r.ranks().map(|l| ch.enumerate_level(l)).collect()
}

/// Covers between adjacent levels: `adj[i]` lists the indices in `upper`
/// comparable to `lower[i]`.
fn cover_lists<C: GradedChannel + ?Sized>(ch: &C, lower: &[Element], upper: &[Element]) -> Result<Vec<Vec<usize>>> {
    lower
        .iter()
        .map(|x| {
            let mut adj = Vec::new();
            for (j, y) in upper.iter().enumerate() {
                if ch.comparable(x, y)? {
                    adj.push(j);
                }
            }
            Ok(adj)
        })
        .collect()
}

/// Whether the number of elements covering `x` and the number covered by
/// `x` depend only on the rank of `x`, within the restriction to `r`.
pub fn is_regular<C: GradedChannel + ?Sized>(ch: &C, r: RankRange) -> Result<bool> {
    let levels = enumerate_range(ch, r, ENUMERATION_LIMIT)?;
    let mut up_degrees: Vec<Vec<usize>> = levels.iter().map(|lvl| vec![0; lvl.len()]).collect();
    let mut down_degrees = up_degrees.clone();
    for k in 1..levels.len() {
        let adj = cover_lists(ch, &levels[k - 1], &levels[k])?;
        for (i, nbrs) in adj.iter().enumerate() {
            up_degrees[k - 1][i] = nbrs.len();
            for &j in nbrs {
                down_degrees[k][j] += 1;
            }
        }
    }
    let constant = |v: &Vec<usize>| v.windows(2).all(|w| w[0] == w[1]);
    Ok(up_degrees.iter().all(constant) && down_degrees.iter().all(constant))
}

/// Exhaustive normalized matching test between every pair of adjacent
/// levels of `r`: for every subset `A` of one level, its neighbourhood `N(A)`
/// in the other satisfies `|N(A)| / |other| >= |A| / |level|`.
///
/// The property holds from below iff it holds from above, so the subsets are
/// drawn from the smaller level of each pair; that level may hold at most
/// [`MATCHING_LEVEL_LIMIT`] elements.
pub fn normalized_matching_check<C: GradedChannel + ?Sized>(ch: &C, r: RankRange) -> Result<bool> {
    for l in r.lo..r.hi {
        let small = ch.level_size(l).min(ch.level_size(l + 1));
        check_guard(|| format!("levels {l} and {}", l + 1), &small, MATCHING_LEVEL_LIMIT)?;
        let lower = ch.enumerate_level(l)?;
        let upper = ch.enumerate_level(l + 1)?;
        let adj = if lower.len() <= upper.len() {
            cover_lists(ch, &lower, &upper)?
        } else {
            cover_lists(ch, &upper, &lower)?
        };
        let (small_len, big_len) = (lower.len().min(upper.len()), lower.len().max(upper.len()));
        if !normalized_matching(&adj, small_len, big_len) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Walks all subsets of the small side in Gray-code order, tracking how
/// many chosen elements touch each element of the big side.
fn normalized_matching(adj: &[Vec<usize>], small_len: usize, big_len: usize) -> bool {
    let mut touch = vec![0u32; big_len];
    let mut covered = 0usize;
    let mut chosen = 0usize;
    let mut in_set = vec![false; small_len];
    for step in 1u64..(1u64 << small_len) {
        let flip = step.trailing_zeros() as usize;
        if in_set[flip] {
            in_set[flip] = false;
            chosen -= 1;
            for &j in &adj[flip] {
                touch[j] -= 1;
                if touch[j] == 0 {
                    covered -= 1;
                }
            }
        } else {
            in_set[flip] = true;
            chosen += 1;
            for &j in &adj[flip] {
                if touch[j] == 0 {
                    covered += 1;
                }
                touch[j] += 1;
            }
        }
        if (covered as u128) * (small_len as u128) < (chosen as u128) * (big_len as u128) {
            return false;
        }
    }
    true
}

/// A failure of the partial-order or grading axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    Reflexivity(Element),
    Antisymmetry(Element, Element),
    Transitivity(Element, Element, Element),
    /// Distinct comparable elements whose ranks do not move in the channel's
    /// direction.
    RankCompatibility(Element, Element),
}

/// Exhaustively checks reflexivity, antisymmetry, transitivity and strict
/// rank monotonicity (in one fixed direction) over the restriction to `r`,
/// which may hold at most [`AXIOM_CHECK_LIMIT`] elements.
pub fn check_poset_axioms<C: GradedChannel + ?Sized>(ch: &C, r: RankRange) -> Result<Option<AxiomViolation>> {
    let elems: Vec<Element> = enumerate_range(ch, r, AXIOM_CHECK_LIMIT)?.into_iter().flatten().collect();
    let n = elems.len();
    let mut rel = vec![false; n * n];
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            rel[i * n + j] = ch.leq(x, y)?;
        }
    }
    let ranks = elems.iter().map(|x| ch.rank(x)).collect::<Result<Vec<_>>>()?;
    let mut direction: Option<bool> = None;
    for i in 0..n {
        if !rel[i * n + i] {
            return Ok(Some(AxiomViolation::Reflexivity(elems[i].clone())));
        }
        for j in 0..n {
            if i == j || !rel[i * n + j] {
                continue;
            }
            if rel[j * n + i] {
                return Ok(Some(AxiomViolation::Antisymmetry(elems[i].clone(), elems[j].clone())));
            }
            // elems[i] ⪯ elems[j] strictly: ranks must differ, always the same way.
            let up = ranks[i] < ranks[j];
            if ranks[i] == ranks[j] || *direction.get_or_insert(up) != up {
                return Ok(Some(AxiomViolation::RankCompatibility(elems[i].clone(), elems[j].clone())));
            }
            for k in 0..n {
                if rel[j * n + k] && !rel[i * n + k] {
                    return Ok(Some(AxiomViolation::Transitivity(
                        elems[i].clone(),
                        elems[j].clone(),
                        elems[k].clone(),
                    )));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(sizes: &[u64]) -> LevelProfile {
        LevelProfile::from_u64(0, sizes).unwrap()
    }

    /// Best sum over every rank subset with gaps > t.
    fn brute_force(sizes: &[u64], t: usize) -> u64 {
        let n = sizes.len();
        (0u32..1 << n)
            .filter(|mask| {
                let ranks: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                ranks.windows(2).all(|w| w[1] - w[0] > t)
            })
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| sizes[i]).sum())
            .max()
            .unwrap()
    }

    #[test]
    fn residue_boolean_four() {
        let sel = residue_optimum(&profile(&[1, 4, 6, 4, 1]), 1);
        assert_eq!(sel.total, BigCount::from(8u64));
        assert_eq!(sel.ranks, vec![0, 2, 4]);
        assert_eq!(sel.residue, 0);
    }

    #[test]
    fn residue_multiset_range() {
        let sel = residue_optimum(&profile(&[1, 2, 3, 4]), 1);
        assert_eq!(sel.total, BigCount::from(6u64));
        assert_eq!(sel.ranks, vec![1, 3]);
        assert_eq!(sel.residue, 1);
    }

    #[test]
    fn residue_degenerates_to_single_level() {
        let p = profile(&[1, 4, 6, 4, 1]);
        for t in [4, 5, 100, usize::MAX] {
            let sel = residue_optimum(&p, t);
            assert_eq!(sel.total, BigCount::from(6u64));
            assert_eq!(sel.ranks, vec![2]);
        }
    }

    #[test]
    fn residue_tie_takes_smallest_residue() {
        // Residues 0 and 1 both give 2 under t = 1.
        let sel = residue_optimum(&LevelProfile::from_u64(3, &[1, 1, 1, 1]).unwrap(), 1);
        assert_eq!(sel.residue, 0);
        assert_eq!(sel.ranks, vec![4, 6]);
    }

    #[test]
    fn kleitman_examples() {
        assert_eq!(kleitman_rank_selection(&profile(&[1, 4, 6, 4, 1]), 1).total, BigCount::from(8u64));
        let sel = kleitman_rank_selection(&profile(&[5, 1, 5]), 1);
        assert_eq!(sel.total, BigCount::from(10u64));
        assert_eq!(sel.ranks, vec![0, 2]);
        let sel = kleitman_rank_selection(&profile(&[3, 1, 4, 1, 5]), 0);
        assert_eq!(sel.total, BigCount::from(14u64));
        assert_eq!(sel.ranks, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn kleitman_beats_residue_on_irregular_profiles() {
        // Gap-2 ranks {0, 3} beat every residue class of t = 1.
        let p = profile(&[5, 0, 0, 5, 0]);
        assert_eq!(kleitman_rank_selection(&p, 1).total, BigCount::from(10u64));
        assert_eq!(residue_optimum(&p, 1).total, BigCount::from(5u64));
    }

    #[test]
    fn kleitman_matches_subset_search() {
        let profiles: [&[u64]; 5] = [&[1, 4, 6, 4, 1], &[5, 1, 5], &[2, 7, 1, 8, 2, 8], &[0, 0, 3], &[9]];
        for sizes in profiles {
            for t in 0..=sizes.len() {
                let sel = kleitman_rank_selection(&profile(sizes), t);
                assert_eq!(sel.total, BigCount::from(brute_force(sizes, t)), "{sizes:?} t={t}");
                assert!(sel.ranks.windows(2).all(|w| w[1] - w[0] > t));
                let sum: BigCount = sel.ranks.iter().map(|&r| BigCount::from(sizes[r])).sum();
                assert_eq!(sum, sel.total);
            }
        }
    }

    #[test]
    fn unimodality() {
        assert!(profile(&[1, 4, 6, 4, 1]).is_unimodal());
        assert!(profile(&[1, 2, 3]).is_unimodal());
        assert!(profile(&[3, 3, 1]).is_unimodal());
        assert!(!profile(&[5, 1, 5]).is_unimodal());
    }

    #[test]
    fn matching_core() {
        // Complete bipartite 2 x 3 has the property; a lone edge does not.
        assert!(normalized_matching(&[vec![0, 1, 2], vec![0, 1, 2]], 2, 3));
        assert!(!normalized_matching(&[vec![0], vec![0]], 2, 3));
    }

    #[test]
    fn rank_range_rejects_inverted_bounds() {
        assert!(RankRange::new(3, 2).is_err());
        assert_eq!(RankRange::new(1, 4).unwrap().span(), 3);
    }
}
