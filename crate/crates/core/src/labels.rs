//! Small sets of vertex labels `1..=31`, stored as a bitmask.

use std::cmp::Ordering;
use std::fmt;

/// Largest label a [`LabelSet`] can hold.
pub const MAX_LABEL: usize = 31;

/// A set of labels drawn from `1..=MAX_LABEL`. Bit `i` stands for label `i`;
/// bit 0 is never set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LabelSet(u32);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    pub fn from_bits(bits: u32) -> Self {
        debug_assert_eq!(bits & 1, 0, "label 0 is not a valid label");
        LabelSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_LABEL);
        if n == 0 {
            return Self::EMPTY;
        }
        LabelSet(((1u64 << (n + 1)) - 2) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        assert!((1..=MAX_LABEL).contains(&i), "label {i} out of range");
        LabelSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i <= MAX_LABEL && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        *self = self.with(i);
    }

    pub fn with(self, i: usize) -> Self {
        self | Self::singleton(i)
    }

    pub fn without(self, i: usize) -> Self {
        if i > MAX_LABEL {
            return self;
        }
        LabelSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: LabelSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> LabelIter {
        LabelIter(self.0)
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = LabelSet> {
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(LabelSet(cur))
        })
    }

    /// Compare as sorted integer sequences, lexicographically.
    pub fn lex_cmp(self, other: LabelSet) -> Ordering {
        self.iter().cmp(other.iter())
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::ops::BitOr for LabelSet {
    type Output = LabelSet;
    fn bitor(self, rhs: Self) -> Self {
        LabelSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for LabelSet {
    type Output = LabelSet;
    fn bitand(self, rhs: Self) -> Self {
        LabelSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for LabelSet {
    type Output = LabelSet;
    fn sub(self, rhs: Self) -> Self {
        LabelSet(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for LabelSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = LabelSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl IntoIterator for LabelSet {
    type Item = usize;
    type IntoIter = LabelIter;
    fn into_iter(self) -> LabelIter {
        self.iter()
    }
}

pub struct LabelIter(u32);

impl Iterator for LabelIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for LabelIter {}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
