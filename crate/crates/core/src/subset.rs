//! Bit-indexed subsets of a ground set of at most 32 elements.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, Not, Sub};

/// A subset of a matroid ground set, bit `i` standing for the `i`-th element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Subset {
        assert!(n <= 32, "ground sets are capped at 32 elements");
        if n == 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | (1 << i))
    }

    #[inline]
    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement inside a ground set of size `n`.
    #[inline]
    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    /// Smallest element, if any.
    #[inline]
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, in increasing numeric order of their bit patterns.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }

    /// All `k`-element subsets of `self`, lexicographic in sorted element order.
    pub fn subsets_of_size(self, k: usize) -> KSubsets {
        let elems: Vec<usize> = self.iter().collect();
        let state = (k <= elems.len()).then(|| (0..k).collect());
        KSubsets { elems, state }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitOrAssign for Subset {
    fn bitor_assign(&mut self, rhs: Subset) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl BitAndAssign for Subset {
    fn bitand_assign(&mut self, rhs: Subset) {
        self.0 &= rhs.0;
    }
}

impl BitXor for Subset {
    type Output = Subset;
    fn bitxor(self, rhs: Subset) -> Subset {
        Subset(self.0 ^ rhs.0)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

/// Raw complement over all 32 bits; callers mask with [`Subset::full`].
impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_indices(iter)
    }
}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = Elements;
    fn into_iter(self) -> Elements {
        self.iter()
    }
}

#[derive(Clone)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(i as usize)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Submask enumeration, ascending.
#[derive(Clone)]
pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Subset;
    #[inline]
    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // next submask in increasing order
            Some(((cur | !self.mask).wrapping_add(1)) & self.mask)
        };
        Some(Subset(cur))
    }
}

#[derive(Clone)]
pub struct KSubsets {
    elems: Vec<usize>,
    state: Option<Vec<usize>>,
}

impl Iterator for KSubsets {
    type Item = Subset;
    fn next(&mut self) -> Option<Subset> {
        let idx = self.state.as_mut()?;
        let out = Subset::from_indices(idx.iter().map(|&i| self.elems[i]));
        let n = self.elems.len();
        let k = idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.state = None;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_enumeration_is_complete_and_ordered() {
        let mask = Subset(0b1011_0100);
        let subs: Vec<Subset> = mask.subsets().collect();
        assert_eq!(subs.len(), 16);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|s| s.is_subset_of(mask)));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn k_subsets_count_and_order() {
        let s = Subset::full(6);
        let three: Vec<Subset> = s.subsets_of_size(3).collect();
        assert_eq!(three.len(), 20);
        assert_eq!(three[0], Subset::from_indices([0, 1, 2]));
        assert_eq!(three[1], Subset::from_indices([0, 1, 3]));
        assert_eq!(*three.last().unwrap(), Subset::from_indices([3, 4, 5]));
        assert_eq!(s.subsets_of_size(0).count(), 1);
        assert_eq!(s.subsets_of_size(7).count(), 0);
    }

    #[test]
    fn set_algebra() {
        let a = Subset::from_indices([0, 2, 4]);
        let b = Subset::from_indices([2, 3]);
        assert_eq!(a | b, Subset::from_indices([0, 2, 3, 4]));
        assert_eq!(a & b, Subset::singleton(2));
        assert_eq!(a - b, Subset::from_indices([0, 4]));
        assert_eq!(a.complement(5), Subset::from_indices([1, 3]));
        assert_eq!(a.min(), Some(0));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2, 4]);
    }
}
