//! Exact counting functions for level sizes.
//!
//! Every cardinality in this crate is a [`BigCount`]: Gaussian coefficients
//! outgrow 64 bits at very modest parameters (`[40, 20]_2` already has 120
//! bits), so nothing here ever touches floating point or fixed-width
//! overflow.
//!
//! Results are memoized per function and argument tuple. The caches are
//! process-wide and only ever filled with the value the computation would
//! return anyway, so callers cannot observe them.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An arbitrary-precision non-negative integer.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn pow(base: u64, exp: u32) -> Self {
        BigCount(BigUint::from(base).pow(exp))
    }

    /// Returns the value as a `u64` when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<usize> for BigCount {
    fn from(v: usize) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for BigCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(format!("not a non-negative decimal integer: {s:?}")));
        }
        BigUint::from_str(s).map(BigCount).map_err(|e| Error::parse(format!("{s:?}: {e}")))
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for BigCount {
    type Output = BigCount;
    fn add(self, rhs: &'a BigCount) -> BigCount {
        BigCount(self.0 + &rhs.0)
    }
}

impl<'a> AddAssign<&'a BigCount> for BigCount {
    fn add_assign(&mut self, rhs: &'a BigCount) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for BigCount {
    fn add_assign(&mut self, rhs: BigCount) {
        self.0 += rhs.0;
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigCount> for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &'a BigCount) -> BigCount {
        BigCount(self.0 * &rhs.0)
    }
}

impl MulAssign<&BigCount> for BigCount {
    fn mul_assign(&mut self, rhs: &BigCount) {
        self.0 *= &rhs.0;
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a BigCount> for BigCount {
    fn sum<I: Iterator<Item = &'a BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |acc, x| acc + x)
    }
}

struct Memo<K, V> {
    map: OnceLock<Mutex<HashMap<K, V>>>,
}

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    const fn new() -> Self {
        Memo { map: OnceLock::new() }
    }

    fn get_or_compute(&self, key: K, compute: impl FnOnce() -> V) -> V {
        let map = self.map.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(v) = map.lock().unwrap().get(&key) {
            return v.clone();
        }
        // Computed outside the lock; a racing fill stores the same value.
        let v = compute();
        map.lock().unwrap().entry(key).or_insert_with(|| v.clone());
        v
    }
}

static BINOMIAL: Memo<(u64, u64), BigCount> = Memo::new();
static Q_BINOMIAL: Memo<(u64, u64, u64), BigCount> = Memo::new();
static COMPOSITIONS: Memo<(u64, u64), Arc<Vec<BigCount>>> = Memo::new();
static PARTITIONS: Memo<(u64, u64), Arc<Vec<BigCount>>> = Memo::new();

/// The binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigCount {
    if k < 0 || k as u64 > n {
        return BigCount::zero();
    }
    let k = (k as u64).min(n - k as u64);
    BINOMIAL.get_or_compute((n, k), || {
        // After step i the accumulator is C(n, i + 1), so each division is exact.
        let mut acc = BigUint::one();
        for i in 0..k {
            acc *= n - i;
            acc /= i + 1;
        }
        BigCount(acc)
    })
}

/// The Gaussian coefficient `[n, l]_q`: the number of `l`-dimensional
/// subspaces of an `n`-dimensional space over a field with `q` elements.
///
/// Zero when `l < 0` or `l > n`. Rejects `q < 2`.
pub fn q_binomial(n: u64, l: i64, q: u64) -> Result<BigCount> {
    if q < 2 {
        return Err(Error::domain(format!("q-binomial base must be at least 2, got {q}")));
    }
    if l < 0 || l as u64 > n {
        return Ok(BigCount::zero());
    }
    let l = (l as u64).min(n - l as u64);
    Ok(Q_BINOMIAL.get_or_compute((n, l, q), || {
        let q = BigUint::from(q);
        let one = BigUint::one();
        let mut acc = BigUint::one();
        // After step i the accumulator is [n, i + 1]_q.
        for i in 0..l {
            acc *= q.pow((n - i) as u32) - &one;
            let den = q.pow((i + 1) as u32) - &one;
            debug_assert!((&acc % &den).is_zero());
            acc /= den;
        }
        BigCount(acc)
    }))
}

/// Row of `c(N, M, .)`: entry `l` counts vectors in `{0,...,N}^M` summing to `l`.
fn composition_row(max_part: u64, parts: u64) -> Arc<Vec<BigCount>> {
    COMPOSITIONS.get_or_compute((max_part, parts), || {
        let width = max_part as usize;
        let mut row = vec![BigCount::one()];
        for _ in 0..parts {
            let len = row.len() + width;
            let mut next = Vec::with_capacity(len);
            // Sliding window over row[l - width ..= l].
            let mut window = BigCount::zero();
            for l in 0..len {
                if l < row.len() {
                    window += &row[l];
                }
                if l > width {
                    let leaving = &row[l - width - 1];
                    window = BigCount(window.0 - &leaving.0);
                }
                next.push(window.clone());
            }
            row = next;
        }
        Arc::new(row)
    })
}

/// Restricted compositions `c(N, M, l)`: vectors in `{0, 1, ..., N}^M` with
/// coordinate sum `l`. Zero when `l < 0` or `l > N * M`.
///
/// With this convention `c(a - 1, n, l)` is the number of words in
/// `{0, ..., a - 1}^n` of Manhattan weight `l`.
pub fn compositions_count(max_part: u64, parts: u64, l: i64) -> BigCount {
    if l < 0 || l as u64 > max_part.saturating_mul(parts) {
        return BigCount::zero();
    }
    composition_row(max_part, parts)[l as usize].clone()
}

/// Row of `p(N, M, .)` built column by column from
/// `p(N, M, l) = p(N, M - 1, l) + p(N - 1, M, l - M)`.
fn partition_row(max_part: u64, max_parts: u64) -> Arc<Vec<BigCount>> {
    PARTITIONS.get_or_compute((max_part, max_parts), || {
        let big_n = max_part as usize;
        // prev[i] = row of p(i, j - 1, .), starting from j = 0 where only the
        // empty partition exists.
        let mut prev: Vec<Vec<BigCount>> = vec![vec![BigCount::one()]; big_n + 1];
        for j in 1..=max_parts as usize {
            let mut cur: Vec<Vec<BigCount>> = Vec::with_capacity(big_n + 1);
            cur.push(vec![BigCount::one()]);
            for i in 1..=big_n {
                let len = i * j + 1;
                let mut row = vec![BigCount::zero(); len];
                for (l, v) in prev[i].iter().enumerate() {
                    row[l] += v;
                }
                for (l, v) in cur[i - 1].iter().enumerate() {
                    row[l + j] += v;
                }
                cur.push(row);
            }
            prev = cur;
        }
        Arc::new(prev.pop().unwrap())
    })
}

/// Restricted partitions `p(N, M, l)`: partitions of `l` into at most `M`
/// positive parts, each part at most `N`. Zero when `l < 0` or `l > N * M`.
pub fn partitions_count(max_part: u64, max_parts: u64, l: i64) -> BigCount {
    if l < 0 || l as u64 > max_part.saturating_mul(max_parts) {
        return BigCount::zero();
    }
    if l == 0 {
        return BigCount::one();
    }
    partition_row(max_part, max_parts)[l as usize].clone()
}
