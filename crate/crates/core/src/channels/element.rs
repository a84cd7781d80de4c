use std::cmp::Ordering;
use std::fmt;

/// A subset of `{1, ..., width}`; bit `i` set means `i + 1` is a member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetElem {
    width: u32,
    mask: u64,
}

impl SubsetElem {
    pub const MAX_WIDTH: u32 = 64;

    pub fn new(width: u32, mask: u64) -> Self {
        assert!(width <= Self::MAX_WIDTH);
        assert!(width == 64 || mask >> width == 0, "mask wider than {width}");
        SubsetElem { width, mask }
    }

    /// Builds a subset from 1-based members.
    pub fn from_members(width: u32, members: &[u32]) -> Self {
        let mask = members.iter().fold(0u64, |m, &i| {
            assert!((1..=width).contains(&i));
            m | 1 << (i - 1)
        });
        SubsetElem::new(width, mask)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, member: u32) -> bool {
        member >= 1 && member <= self.width && self.mask >> (member - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_subset_of(&self, other: &SubsetElem) -> bool {
        self.mask & !other.mask == 0
    }

    fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width).map(|i| self.mask >> i & 1 == 1)
    }
}

impl Ord for SubsetElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits().cmp(other.bits()).then(self.width.cmp(&other.width))
    }
}

impl PartialOrd for SubsetElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A multiset over `{1, ..., n}` given by its multiplicity vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultisetElem(pub Vec<u32>);

/// A fixed-length word over `{0, ..., a - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordElem(pub Vec<u8>);

/// A variable-length word over `{0, ..., a - 1}`; the empty word is allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeqElem(pub Vec<u8>);

/// A subspace of `F_p^n`, stored as its reduced row echelon basis.
///
/// The zero space has no rows. Equal subspaces have identical matrices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubspaceElem {
    pub(crate) rows: Vec<Vec<u8>>,
}

impl SubspaceElem {
    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// A binary word of length `n` and weight `w`, stored as the adjusted
/// position vector `lambda - (1, 2, ..., w)`, which is nondecreasing with
/// entries in `0..=n-w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShiftElem {
    pub(crate) n: u32,
    pub(crate) adjusted: Vec<u32>,
}

impl ShiftElem {
    /// From the 1-based positions of the ones.
    pub fn from_positions(n: u32, positions: &[u32]) -> Self {
        let adjusted = positions.iter().enumerate().map(|(i, &pos)| pos - (i as u32 + 1)).collect();
        ShiftElem { n, adjusted }
    }

    pub fn adjusted(&self) -> &[u32] {
        &self.adjusted
    }

    /// The 1-based positions of the ones.
    pub fn positions(&self) -> Vec<u32> {
        self.adjusted.iter().enumerate().map(|(i, &a)| a + i as u32 + 1).collect()
    }

    pub fn weight(&self) -> usize {
        self.adjusted.len()
    }

    fn word(&self) -> Vec<u8> {
        let mut word = vec![0u8; self.n as usize];
        for pos in self.positions() {
            word[pos as usize - 1] = 1;
        }
        word
    }
}

impl Ord for ShiftElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word().cmp(&other.word())
    }
}

impl PartialOrd for ShiftElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An input of one of the six channel families.
///
/// Elements order lexicographically by their canonical text encoding
/// (symbol by symbol), which is the enumeration order used throughout.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Subset(SubsetElem),
    Multiset(MultisetElem),
    Word(WordElem),
    Seq(SeqElem),
    Subspace(SubspaceElem),
    Shift(ShiftElem),
}

impl Element {
    /// The rank of the element in its family's poset.
    pub fn rank(&self) -> usize {
        match self {
            Element::Subset(s) => s.len(),
            Element::Multiset(m) => m.0.iter().map(|&v| v as usize).sum(),
            Element::Word(w) => w.0.iter().map(|&v| v as usize).sum(),
            Element::Seq(s) => s.0.len(),
            Element::Subspace(u) => u.dim(),
            Element::Shift(x) => x.adjusted.iter().map(|&v| v as usize).sum(),
        }
    }

    pub(crate) fn kind_name(&self) -> &'static str {
        match self {
            Element::Subset(_) => "subset",
            Element::Multiset(_) => "multiset",
            Element::Word(_) => "word",
            Element::Seq(_) => "sequence",
            Element::Subspace(_) => "subspace",
            Element::Shift(_) => "shift word",
        }
    }
}

pub(crate) fn symbol(v: u8) -> char {
    char::from_digit(v as u32, 36).expect("symbol below 36")
}

pub(crate) fn parse_symbol(c: char) -> Option<u8> {
    c.to_digit(36).map(|d| d as u8)
}

fn write_symbols(f: &mut fmt::Formatter<'_>, symbols: &[u8]) -> fmt::Result {
    symbols.iter().try_for_each(|&v| write!(f, "{}", symbol(v)))
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Subset(s) => s.bits().try_for_each(|b| f.write_str(if b { "1" } else { "0" })),
            Element::Multiset(m) => {
                for (i, v) in m.0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            Element::Word(w) => write_symbols(f, &w.0),
            Element::Seq(s) if s.0.is_empty() => f.write_str("-"),
            Element::Seq(s) => write_symbols(f, &s.0),
            Element::Subspace(u) if u.rows.is_empty() => f.write_str("-"),
            Element::Subspace(u) => {
                for (i, row) in u.rows.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write_symbols(f, row)?;
                }
                Ok(())
            }
            Element::Shift(x) => write_symbols(f, &x.word()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_encoding_lists_member_one_first() {
        let x = SubsetElem::from_members(7, &[1, 2, 5, 7]);
        assert_eq!(Element::Subset(x.clone()).to_string(), "1100101");
        assert!(x.contains(5) && !x.contains(3));
        assert_eq!(x.len(), 4);
    }

    #[test]
    fn shift_positions_round_trip() {
        let x = ShiftElem::from_positions(7, &[1, 2, 5, 7]);
        assert_eq!(x.adjusted(), &[0, 0, 2, 3]);
        assert_eq!(x.positions(), vec![1, 2, 5, 7]);
        assert_eq!(Element::Shift(x.clone()).to_string(), "1100101");
        assert_eq!(Element::Shift(x).rank(), 5);
    }

    #[test]
    fn order_follows_encoding() {
        let mut v: Vec<Element> =
            [0b011u64, 0b101, 0b110].iter().map(|&m| Element::Subset(SubsetElem::new(3, m))).collect();
        v.sort();
        let enc: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert_eq!(enc, ["011", "101", "110"]);

        let a = Element::Shift(ShiftElem::from_positions(4, &[1, 2]));
        let b = Element::Shift(ShiftElem::from_positions(4, &[2, 4]));
        assert_eq!(a.to_string(), "1100");
        assert_eq!(b.to_string(), "0101");
        assert!(b < a);
    }

    #[test]
    fn empty_renderings() {
        assert_eq!(Element::Seq(SeqElem(vec![])).to_string(), "-");
        assert_eq!(Element::Subspace(SubspaceElem { rows: vec![] }).to_string(), "-");
        assert_eq!(Element::Multiset(MultisetElem(vec![2, 0, 1])).to_string(), "2,0,1");
    }
}
