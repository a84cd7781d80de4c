//! Optimal code sizes, code construction, verification, and the code file
//! format.
//!
//! Sizes come from two independent routes: the rank-selection dynamic
//! program over level sizes (valid for any normal channel), and the
//! per-family closed forms. [`optimal_code_size`] reports both.

use std::fmt;
use std::str::FromStr;

use crate::channels::{Channel, Element, Family};
use crate::count::{binomial, compositions_count, partitions_count, q_binomial, BigCount};
use crate::error::{Error, Result};
use crate::poset::{
    enumerate_range, kleitman_rank_selection, residue_optimum, violating_pairs, GradedChannel, LevelProfile, RankRange,
    ENUMERATION_LIMIT,
};

/// How many errors a code must detect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Radius {
    /// Any comparable pair of codewords must differ in rank by more than `t`.
    Errors(usize),
    /// No two codewords may be comparable at all.
    All,
}

impl Radius {
    /// The numeric radius over `r`. Detecting all error patterns is the
    /// same as detecting `r.span()` errors there.
    pub fn effective(&self, r: RankRange) -> usize {
        match *self {
            Radius::Errors(t) => t,
            Radius::All => r.span(),
        }
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Errors(t) => write!(f, "{t}"),
            Radius::All => f.write_str("all"),
        }
    }
}

impl FromStr for Radius {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "all" => Ok(Radius::All),
            other => other
                .parse()
                .map(Radius::Errors)
                .map_err(|_| Error::parse(format!("expected a non-negative integer or \"all\", got {s:?}"))),
        }
    }
}

/// Optimal code size for a channel, rank range and radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeReport {
    pub radius: Radius,
    /// Best rank selection over all rank sets with gaps larger than `t`.
    pub generic_total: BigCount,
    /// Best single residue class modulo `t + 1`; equals `generic_total` on
    /// rank-unimodal ranges.
    pub residue_total: BigCount,
    /// The family's closed-form value, when one applies to the range.
    pub closed_form_total: Option<BigCount>,
    pub residue: usize,
    pub ranks: Vec<usize>,
    /// The closed form is only a lower bound (shift channel with finite `t`).
    pub bound_only: bool,
}

/// The maximum size of a code in `ch` restricted to `r` detecting up to `t`
/// errors.
///
/// The rank-selection dynamic program is the ground truth; the residue
/// form is carried along as a cross-check. The reported residue and ranks
/// are the residue class when it attains the optimum, otherwise the DP's
/// selection.
pub fn optimal_code_size(ch: &Channel, r: RankRange, t: Radius) -> Result<SizeReport> {
    if !ch.rank_range().contains_range(&r) {
        return Err(Error::domain(format!("rank range {r} outside channel range {}", ch.rank_range())));
    }
    let eff = t.effective(r);
    let levels = LevelProfile::of(ch, r);
    let dp = kleitman_rank_selection(&levels, eff);
    let by_residue = residue_optimum(&levels, eff);
    let closed_form_total = match (ch.family().natural_range(), ch.family()) {
        (Some(natural), _) if natural != r => None,
        (_, family) => Some(closed_form_size(family, r, eff)?),
    };
    let bound_only = matches!(ch.family(), Family::Shift { .. }) && eff < r.span();
    let (residue, ranks) =
        if by_residue.total == dp.total { (by_residue.residue, by_residue.ranks) } else { (dp.residue, dp.ranks) };
    Ok(SizeReport {
        radius: t,
        generic_total: dp.total,
        residue_total: by_residue.total,
        closed_form_total,
        residue,
        ranks,
        bound_only,
    })
}

/// `sum { size(l) : lo <= l <= hi, l ≡ m (mod t + 1) }`
fn residue_class_sum(lo: usize, hi: usize, m: usize, t: usize, size: impl Fn(usize) -> BigCount) -> BigCount {
    let step = t.saturating_add(1);
    (lo..=hi).filter(|l| l % step == m % step).map(size).sum()
}

/// `sum_{i = 0}^{floor((hi - lo) / (t + 1))} size(hi - i (t + 1))`
fn top_anchored_sum(lo: usize, hi: usize, t: usize, size: impl Fn(usize) -> BigCount) -> BigCount {
    let step = t.saturating_add(1);
    (0..=(hi - lo) / step).map(|i| size(hi - i * step)).sum()
}

/// Evaluates the family's closed-form optimum exactly as displayed, with
/// its stated maximizing residue.
///
/// Finite families take their full rank range; `multiset` and `deletion`
/// take any range. For `shift` the value is a lower bound unless `t`
/// covers the whole range.
pub fn closed_form_size(family: &Family, range: RankRange, t: usize) -> Result<BigCount> {
    if let Some(natural) = family.natural_range() {
        if natural != range {
            return Err(Error::domain(format!(
                "the {} closed form covers the full rank range {natural}, not {range}",
                family.name()
            )));
        }
    }
    let (lo, hi) = (range.lo(), range.hi());
    let total = match *family {
        Family::Subset { n } => residue_class_sum(0, hi, n as usize / 2, t, |l| binomial(n as u64, l as i64)),
        Family::Multiset { n } => {
            if n == 0 {
                return Err(Error::domain("multiset closed form needs n >= 1"));
            }
            top_anchored_sum(lo, hi, t, |l| binomial((l + n as usize - 1) as u64, n as i64 - 1))
        }
        Family::ZChannel { a, n } => {
            if a < 2 {
                return Err(Error::domain("zchannel closed form needs a >= 2"));
            }
            let top = n as usize * (a as usize - 1);
            residue_class_sum(0, hi, top / 2, t, |l| compositions_count(a as u64 - 1, n as u64, l as i64))
        }
        Family::Subspace { p, n } => {
            residue_class_sum(0, hi, n as usize / 2, t, |l| q_binomial(n as u64, l as i64, p as u64).expect("p >= 2"))
        }
        Family::Deletion { a } => {
            if a < 2 {
                return Err(Error::domain("deletion closed form needs a >= 2"));
            }
            top_anchored_sum(lo, hi, t, |l| BigCount::pow(a as u64, l as u32))
        }
        Family::Shift { n, w } => {
            if w > n {
                return Err(Error::domain(format!("shift closed form needs w <= n, got n={n}, w={w}")));
            }
            let top = (w * (n - w)) as usize;
            residue_class_sum(0, hi, top / 2, t, |l| partitions_count((n - w) as u64, w as u64, l as i64))
        }
    };
    Ok(total)
}

/// A set of codewords for a channel and a detection radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    pub channel: Channel,
    pub radius: Radius,
    /// Sorted by rank, then by encoding.
    pub codewords: Vec<Element>,
}

impl Code {
    pub fn new(channel: Channel, radius: Radius, mut codewords: Vec<Element>) -> Self {
        codewords.sort_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| a.cmp(b)));
        Code { channel, radius, codewords }
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Renders the code file: `#channel=`, `#params=` and `#t=` header
    /// lines, then one canonical encoding per line.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("#channel={}\n", self.channel.family().name());
        let params: Vec<String> = self.channel.header_params().iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("#params={}\n#t={}\n", params.join(","), self.radius));
        for c in &self.codewords {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }
}

/// A union of the levels chosen by [`optimal_code_size`].
///
/// The result is restricted to `r`, has exactly `generic_total` codewords,
/// and detects up to `t` errors.
pub fn construct_code(ch: &Channel, r: RankRange, t: Radius) -> Result<Code> {
    let report = optimal_code_size(ch, r, t)?;
    let restricted = ch.restrict(r)?;
    let chosen: BigCount = report.ranks.iter().map(|&l| restricted.level_size(l)).sum();
    if chosen > BigCount::from(ENUMERATION_LIMIT) {
        return Err(Error::Resource {
            what: format!("code for {restricted}"),
            count: chosen,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut codewords = Vec::new();
    for &l in &report.ranks {
        codewords.extend(restricted.enumerate_level(l)?);
    }
    Ok(Code::new(restricted, t, codewords))
}

/// Outcome of checking a code against a radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub pass: bool,
    /// Ordered pairs `(x, y)` of codewords with `x ⤳ y` too close in rank.
    pub violations: Vec<(Element, Element)>,
}

/// Checks that `code` detects up to `t` errors in `ch` (or, for
/// [`Radius::All`], that it is an antichain).
pub fn verify_code(ch: &Channel, code: &Code, t: Radius) -> Result<VerifyReport> {
    let t = match t {
        Radius::Errors(t) => t,
        Radius::All => usize::MAX,
    };
    let violations = violating_pairs(ch, &code.codewords, t)?;
    Ok(VerifyReport { pass: violations.is_empty(), violations })
}

/// Builds a channel from a family name and `key=value` parameters as they
/// appear in code-file headers (`lo`, `hi` and `dual` are optional).
pub fn channel_from_params(family: &str, params: &[(String, u64)]) -> Result<Channel> {
    let get = |key: &str| params.iter().find(|(k, _)| k == key).map(|&(_, v)| v);
    let need = |key: &str| -> Result<u32> {
        let v = get(key).ok_or_else(|| Error::parse(format!("{family} channel needs parameter {key}")))?;
        u32::try_from(v).map_err(|_| Error::parse(format!("parameter {key}={v} is too large")))
    };
    let (fam, allowed): (Family, &[&str]) = match family {
        "subset" => (Family::Subset { n: need("n")? }, &["n"]),
        "multiset" => (Family::Multiset { n: need("n")? }, &["n"]),
        "zchannel" => (Family::ZChannel { a: need("a")?, n: need("n")? }, &["a", "n"]),
        "subspace" => (Family::Subspace { p: need("p")?, n: need("n")? }, &["p", "n"]),
        "deletion" => (Family::Deletion { a: need("a")? }, &["a"]),
        "shift" => (Family::Shift { n: need("n")?, w: need("w")? }, &["n", "w"]),
        other => {
            return Err(Error::parse(format!(
                "unknown channel family {other:?} (expected one of {})",
                Family::NAMES.join(", ")
            )))
        }
    };
    if let Some((k, _)) =
        params.iter().find(|(k, _)| !allowed.contains(&k.as_str()) && !["lo", "hi", "dual"].contains(&k.as_str()))
    {
        return Err(Error::parse(format!("unexpected parameter {k} for {family} channel")));
    }
    let range = match (get("lo"), get("hi")) {
        (None, None) => None,
        (Some(lo), Some(hi)) => Some(RankRange::new(lo as usize, hi as usize)?),
        _ => return Err(Error::parse("lo and hi must be given together")),
    };
    let ch = Channel::new(fam, range)?;
    Ok(match get("dual") {
        None | Some(0) => ch,
        Some(1) => ch.dual(),
        Some(v) => return Err(Error::parse(format!("dual must be 0 or 1, got {v}"))),
    })
}

/// A parsed code file before its elements are bound to a channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFile {
    pub channel: Option<Channel>,
    pub radius: Option<Radius>,
    /// `(1-based line number, encoding)` for every codeword line.
    pub lines: Vec<(usize, String)>,
}

impl CodeFile {
    /// Parses headers and collects codeword lines. Blank lines are skipped.
    /// Errors carry the offending line number.
    pub fn parse(text: &str) -> Result<CodeFile> {
        let mut family: Option<(usize, String)> = None;
        let mut params: Option<(usize, Vec<(String, u64)>)> = None;
        let mut radius = None;
        let mut lines = Vec::new();
        let at = |no: usize, e: Error| Error::parse(format!("line {no}: {e}"));
        for (i, raw) in text.lines().enumerate() {
            let no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let Some(header) = line.strip_prefix('#') else {
                lines.push((no, line.to_string()));
                continue;
            };
            let (key, value) =
                header.split_once('=').ok_or_else(|| at(no, Error::parse(format!("malformed header {line:?}"))))?;
            match key.trim() {
                "channel" => family = Some((no, value.trim().to_string())),
                "params" => params = Some((no, parse_params(value).map_err(|e| at(no, e))?)),
                "t" => radius = Some(value.parse::<Radius>().map_err(|e| at(no, e))?),
                other => return Err(at(no, Error::parse(format!("unknown header {other:?}")))),
            }
        }
        let channel = match (family, params) {
            (Some((no, f)), Some((_, p))) => Some(channel_from_params(&f, &p).map_err(|e| at(no, e))?),
            (Some((no, _)), None) => return Err(at(no, Error::parse("#channel without #params"))),
            (None, Some((no, _))) => return Err(at(no, Error::parse("#params without #channel"))),
            (None, None) => None,
        };
        Ok(CodeFile { channel, radius, lines })
    }

    /// Parses every codeword line as an element of `channel`.
    pub fn elements(&self, channel: &Channel) -> Result<Vec<Element>> {
        self.lines
            .iter()
            .map(|(no, s)| channel.parse_element(s).map_err(|e| Error::parse(format!("line {no}: {e}"))))
            .collect()
    }
}

fn parse_params(text: &str) -> Result<Vec<(String, u64)>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::parse(format!("expected key=value, got {kv:?}")))?;
            let v = v
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::parse(format!("parameter {k} needs a non-negative integer, got {v:?}")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

/// Every element of `ch` with rank in `r`, in `(rank, encoding)` order.
pub(crate) fn all_elements(ch: &Channel, r: RankRange, limit: u64) -> Result<Vec<Element>> {
    Ok(enumerate_range(ch, r, limit)?.into_iter().flatten().collect())
}
