//! Small sets of colors represented as 64-bit masks.
//!
//! Colors are the integers `1..=64`; color `c` occupies bit `c - 1`. Every
//! edge label and every vertex code in this crate is a `ColorSet`, so set
//! union, membership and comparison are single machine operations.

use std::fmt;

/// Maximum number of distinct colors a palette may use.
pub const MAX_COLORS: u32 = 64;

/// A set of colors drawn from `1..=64`, packed into a `u64` mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(u64);

impl ColorSet {
    /// The empty set.
    pub const EMPTY: ColorSet = ColorSet(0);

    /// Builds a set from a raw mask. Bit `i` stands for color `i + 1`.
    #[inline(always)]
    pub const fn from_mask(mask: u64) -> Self {
        ColorSet(mask)
    }

    /// The singleton `{c}`. Panics if `c` is outside `1..=64`.
    #[inline]
    pub fn single(c: u32) -> Self {
        assert!(c >= 1 && c <= MAX_COLORS, "color {c} outside 1..=64");
        ColorSet(1u64 << (c - 1))
    }

    /// Builds a set from a slice of colors.
    pub fn from_colors(colors: &[u32]) -> Self {
        let mut s = ColorSet::EMPTY;
        for &c in colors {
            s.insert(c);
        }
        s
    }

    /// The full set `{1, ..., k}`. Panics if `k > 64`.
    #[inline]
    pub fn first_k(k: u32) -> Self {
        assert!(k <= MAX_COLORS, "palette {k} exceeds 64 colors");
        if k == 0 {
            ColorSet::EMPTY
        } else {
            ColorSet(u64::MAX >> (64 - k))
        }
    }

    #[inline(always)]
    pub const fn mask(self) -> u64 {
        self.0
    }

    #[inline(always)]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Number of colors in the set.
    #[inline(always)]
    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline(always)]
    pub const fn contains(self, c: u32) -> bool {
        c >= 1 && c <= MAX_COLORS && self.0 & (1u64 << (c - 1)) != 0
    }

    #[inline]
    pub fn insert(&mut self, c: u32) {
        assert!(c >= 1 && c <= MAX_COLORS, "color {c} outside 1..=64");
        self.0 |= 1u64 << (c - 1);
    }

    #[inline]
    pub fn remove(&mut self, c: u32) {
        assert!(c >= 1 && c <= MAX_COLORS, "color {c} outside 1..=64");
        self.0 &= !(1u64 << (c - 1));
    }

    #[inline(always)]
    pub const fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    #[inline(always)]
    pub const fn with(self, c: u32) -> ColorSet {
        ColorSet(self.0 | (1u64 << (c - 1)))
    }

    #[inline(always)]
    pub const fn without(self, c: u32) -> ColorSet {
        ColorSet(self.0 & !(1u64 << (c - 1)))
    }

    /// True if `self` is a subset of `other`.
    #[inline(always)]
    pub const fn is_subset_of(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest color in the set, or 0 if empty.
    #[inline]
    pub const fn max_color(self) -> u32 {
        if self.0 == 0 {
            0
        } else {
            64 - self.0.leading_zeros()
        }
    }

    /// Colors in increasing order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let c = rest.trailing_zeros() + 1;
                rest &= rest - 1;
                Some(c)
            }
        })
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ColorSet {
    /// Renders as `{1,3}`; the empty set renders as `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for c in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_set_basics() {
        let s = ColorSet::EMPTY;
        assert!(s.is_empty());
        assert_eq!(s.len(), 0);
        assert_eq!(s.max_color(), 0);
        assert_eq!(s.to_string(), "{}");
    }

    #[test]
    fn insert_remove_contains() {
        let mut s = ColorSet::EMPTY;
        s.insert(3);
        s.insert(1);
        assert!(s.contains(1) && s.contains(3) && !s.contains(2));
        assert_eq!(s.len(), 2);
        s.remove(3);
        assert_eq!(s, ColorSet::single(1));
    }

    #[test]
    fn union_and_subset() {
        let a = ColorSet::from_colors(&[1, 2]);
        let b = ColorSet::from_colors(&[2, 4]);
        assert_eq!(a.union(b), ColorSet::from_colors(&[1, 2, 4]));
        assert!(a.is_subset_of(ColorSet::first_k(3)));
        assert!(!b.is_subset_of(ColorSet::first_k(3)));
    }

    #[test]
    fn first_k_covers_prefix() {
        assert_eq!(ColorSet::first_k(0), ColorSet::EMPTY);
        assert_eq!(ColorSet::first_k(3), ColorSet::from_colors(&[1, 2, 3]));
        assert_eq!(ColorSet::first_k(64).len(), 64);
    }

    #[test]
    fn display_sorted_comma_joined() {
        let s = ColorSet::from_colors(&[4, 1, 3]);
        assert_eq!(s.to_string(), "{1,3,4}");
        assert_eq!(ColorSet::single(7).to_string(), "{7}");
    }

    #[test]
    fn iter_increasing() {
        let s = ColorSet::from_colors(&[5, 2, 64]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![2, 5, 64]);
    }

    #[test]
    fn max_color_is_highest_bit() {
        assert_eq!(ColorSet::from_colors(&[2, 9]).max_color(), 9);
        assert_eq!(ColorSet::single(64).max_color(), 64);
    }

    #[test]
    #[should_panic]
    fn color_zero_rejected() {
        ColorSet::single(0);
    }

    #[test]
    #[should_panic]
    fn color_above_64_rejected() {
        let mut s = ColorSet::EMPTY;
        s.insert(65);
    }
}
