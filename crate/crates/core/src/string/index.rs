use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Length of a string index: either exact, or known only to be at least the
/// window-limited bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Length {
    Finite(usize),
    /// The chain left the window after this many steps; the true length is
    /// this value or larger (possibly infinite).
    AtLeast(usize),
}

impl Length {
    /// Number of steps known inside the window.
    pub fn known(self) -> usize {
        match self {
            Length::Finite(m) | Length::AtLeast(m) => m,
        }
    }

    pub fn is_censored(self) -> bool {
        matches!(self, Length::AtLeast(_))
    }
}

/// The pair `(m, I)` naming the string module `M(m, I)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringIndex {
    length: Length,
    set: BTreeSet<usize>,
}

/// One letter of the word attached to an index. `End` marks the end of a
/// finite word; it sorts after `t` and before `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    T,
    End,
    S,
}

/// Result of comparing two indices in the string order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexOrder {
    Less,
    Equal,
    Greater,
    /// The letters decide nothing inside the censored prefix.
    IncomparableWindow,
}

impl StringIndex {
    pub fn finite(m: usize, set: impl IntoIterator<Item = usize>) -> Result<StringIndex> {
        StringIndex::build(Length::Finite(m), set.into_iter().collect())
    }

    pub fn censored(bound: usize, set: impl IntoIterator<Item = usize>) -> Result<StringIndex> {
        StringIndex::build(Length::AtLeast(bound), set.into_iter().collect())
    }

    pub fn new(length: Length, set: BTreeSet<usize>) -> Result<StringIndex> {
        StringIndex::build(length, set)
    }

    fn build(length: Length, set: BTreeSet<usize>) -> Result<StringIndex> {
        let m = length.known();
        if let Some(&bad) = set.iter().find(|&&i| i == 0 || i > m) {
            return Err(Error::InvalidIndex(format!("{bad} is outside 1..={m}")));
        }
        Ok(StringIndex { length, set })
    }

    /// Builds an index from its letters (`true` for `s`).
    pub fn from_letters(letters: &[bool], censored: bool) -> StringIndex {
        let set = letters
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i + 1)
            .collect();
        let length = if censored {
            Length::AtLeast(letters.len())
        } else {
            Length::Finite(letters.len())
        };
        StringIndex { length, set }
    }

    pub fn length(&self) -> Length {
        self.length
    }

    /// The known length: `m`, or the censoring bound.
    pub fn m(&self) -> usize {
        self.length.known()
    }

    pub fn is_censored(&self) -> bool {
        self.length.is_censored()
    }

    pub fn set(&self) -> &BTreeSet<usize> {
        &self.set
    }

    pub fn contains(&self, i: usize) -> bool {
        self.set.contains(&i)
    }

    /// `true` when step `i` (from `x_{i-1}` to `x_i`) is an `s`-step.
    pub fn is_s_step(&self, i: usize) -> bool {
        self.set.contains(&i)
    }

    /// Whether `I = {1..m}`: every step is an `s`-step.
    pub fn is_all_s(&self) -> bool {
        self.set.len() == self.m()
    }

    /// Letter at position `i >= 1`, or `None` if it lies past a censored
    /// prefix.
    pub fn letter(&self, i: usize) -> Option<Letter> {
        debug_assert!(i >= 1);
        let m = self.m();
        if i <= m {
            Some(if self.set.contains(&i) { Letter::S } else { Letter::T })
        } else {
            match self.length {
                Length::Finite(_) => Some(Letter::End),
                Length::AtLeast(_) => None,
            }
        }
    }

    /// Compares in the string order: lexicographic on words with
    /// `t < End < s`.
    ///
    /// A word therefore precedes its extensions by `s` but follows its
    /// extensions by `t`. Putting the end of a word below both letters makes
    /// the minimal pure chain fail to split off in general; the smallest
    /// witness is `M(2,∅) ⊕ Σ M(0,∅)` with `m0 = x_0`, where the chain of
    /// index `(1,∅)` through `x_1 + z` is pure but has no retraction.
    pub fn compare(&self, other: &StringIndex) -> IndexOrder {
        let horizon = self.m().max(other.m()) + 1;
        for i in 1..=horizon {
            match (self.letter(i), other.letter(i)) {
                (Some(a), Some(b)) => match a.cmp(&b) {
                    Ordering::Less => return IndexOrder::Less,
                    Ordering::Greater => return IndexOrder::Greater,
                    Ordering::Equal if a == Letter::End => return IndexOrder::Equal,
                    Ordering::Equal => {}
                },
                _ => return IndexOrder::IncomparableWindow,
            }
        }
        unreachable!("two finite words agree past their ends")
    }
}

pub fn index_compare(a: &StringIndex, b: &StringIndex) -> IndexOrder {
    a.compare(b)
}

impl fmt::Display for StringIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.length {
            Length::Finite(m) => write!(f, "m={m}, ")?,
            Length::AtLeast(m) => write!(f, "m>={m}, ")?,
        }
        write!(f, "I={{")?;
        for (k, i) in self.set.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn idx(m: usize, set: &[usize]) -> StringIndex {
        StringIndex::finite(m, set.iter().copied()).unwrap()
    }

    #[test]
    fn prefix_before_an_s_letter_is_smaller() {
        assert_eq!(idx(0, &[]).compare(&idx(5, &[1, 3, 4])), IndexOrder::Less);
        assert_eq!(idx(5, &[1, 3, 4]).compare(&idx(0, &[])), IndexOrder::Greater);
    }

    #[test]
    fn prefix_before_a_t_letter_is_larger() {
        assert_eq!(idx(1, &[]).compare(&idx(2, &[])), IndexOrder::Greater);
        assert_eq!(idx(2, &[1]).compare(&idx(4, &[1, 4])), IndexOrder::Greater);
    }

    #[test]
    fn t_before_s() {
        assert_eq!(idx(1, &[]).compare(&idx(1, &[1])), IndexOrder::Less);
        assert_eq!(idx(3, &[]).compare(&idx(1, &[1])), IndexOrder::Less);
        assert_eq!(idx(3, &[2]).compare(&idx(1, &[])), IndexOrder::Greater);
    }

    #[test]
    fn equal_indices() {
        assert_eq!(idx(2, &[1]).compare(&idx(2, &[1])), IndexOrder::Equal);
    }

    #[test]
    fn rejects_out_of_range_steps() {
        assert!(StringIndex::finite(2, [3]).is_err());
        assert!(StringIndex::finite(2, [0]).is_err());
    }

    #[test]
    fn censored_comparisons() {
        let c = StringIndex::censored(3, [1]).unwrap();
        // Decided inside the known prefix.
        assert_eq!(c.compare(&idx(2, &[1, 2])), IndexOrder::Less);
        assert_eq!(c.compare(&idx(1, &[1])), IndexOrder::Less);
        assert_eq!(c.compare(&idx(2, &[1])), IndexOrder::Less);
        assert_eq!(c.compare(&idx(0, &[])), IndexOrder::Greater);
        // A finite word of length 3 agreeing with the prefix could be equal.
        assert_eq!(c.compare(&idx(3, &[1])), IndexOrder::IncomparableWindow);
        assert_eq!(c.compare(&idx(5, &[1, 5])), IndexOrder::IncomparableWindow);
        assert_eq!(c.compare(&c), IndexOrder::IncomparableWindow);
    }

    fn arb_index() -> impl Strategy<Value = StringIndex> {
        (0usize..6).prop_flat_map(|m| {
            proptest::collection::btree_set(1..=m.max(1), 0..=m).prop_map(move |s| {
                let s: BTreeSet<usize> = s.into_iter().filter(|&x| x <= m).collect();
                StringIndex::new(Length::Finite(m), s).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn word_order_matches_clauses(a in arb_index(), b in arb_index()) {
            let le = crate::string::oracle::le_by_clauses(&a, &b);
            let cmp = a.compare(&b);
            prop_assert_eq!(le, matches!(cmp, IndexOrder::Less | IndexOrder::Equal));
            let rev = b.compare(&a);
            let flipped = match cmp {
                IndexOrder::Less => IndexOrder::Greater,
                IndexOrder::Greater => IndexOrder::Less,
                o => o,
            };
            prop_assert_eq!(rev, flipped);
        }
    }
}
