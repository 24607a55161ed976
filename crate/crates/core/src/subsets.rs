//! `k`-subsets of a ground set of at most 64 points, stored as one machine
//! word. Enumeration order is colexicographic, which for bitmasks is simply
//! ascending integer value; the position of a subset in that order is its
//! combinadic rank.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: u32 = 64;

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
///
/// Panics if the value does not fit in a `u64` (never happens for `n <= 64`).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// The ground set `Ω = {0, …, m-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    m: u32,
}

impl GroundSet {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_GROUND {
            return Err(Error::InvalidParams(format!(
                "ground set size must be in 1..={MAX_GROUND}, got {m}"
            )));
        }
        Ok(GroundSet { m })
    }

    pub fn size(&self) -> u32 {
        self.m
    }

    fn full_mask(&self) -> u64 {
        if self.m == 64 {
            u64::MAX
        } else {
            (1u64 << self.m) - 1
        }
    }

    /// Whether every point of `s` lies in this ground set.
    pub fn contains(&self, s: KSubset) -> bool {
        s.bits & !self.full_mask() == 0
    }

    /// Build a subset from explicit points.
    pub fn subset(&self, points: &[u32]) -> Result<KSubset> {
        let mut bits = 0u64;
        for &p in points {
            if p >= self.m {
                return Err(Error::SubsetOutOfRange);
            }
            bits |= 1 << p;
        }
        Ok(KSubset { bits })
    }

    /// Build a subset from a raw mask, rejecting points outside the ground set.
    pub fn subset_from_bits(&self, bits: u64) -> Result<KSubset> {
        let s = KSubset { bits };
        if !self.contains(s) {
            return Err(Error::SubsetOutOfRange);
        }
        Ok(s)
    }

    /// The complement of `s` inside this ground set.
    pub fn complement(&self, s: KSubset) -> KSubset {
        KSubset {
            bits: !s.bits & self.full_mask(),
        }
    }

    /// Number of `k`-subsets, `C(m, k)`.
    pub fn count(&self, k: u32) -> u64 {
        binomial(u64::from(self.m), u64::from(k))
    }

    /// All `k`-subsets in colex order (list index equals rank). Empty when `k > m`.
    pub fn enumerate_k_subsets(&self, k: u32) -> Vec<KSubset> {
        self.iter_k_subsets(k).collect()
    }

    pub fn iter_k_subsets(&self, k: u32) -> KSubsets {
        let next = if k > self.m {
            None
        } else if k == 64 {
            Some(u64::MAX)
        } else {
            Some((1u64 << k) - 1)
        };
        KSubsets {
            next,
            limit: self.full_mask(),
        }
    }

    /// Colex rank of `s` among subsets of the same size.
    pub fn rank(&self, s: KSubset) -> Result<usize> {
        if !self.contains(s) {
            return Err(Error::SubsetOutOfRange);
        }
        let mut rank = 0u64;
        for (i, p) in s.points().enumerate() {
            rank += binomial(u64::from(p), i as u64 + 1);
        }
        Ok(rank as usize)
    }

    /// Inverse of [`GroundSet::rank`].
    pub fn unrank(&self, k: u32, rank: usize) -> Result<KSubset> {
        if k > self.m || rank as u64 >= self.count(k) {
            return Err(Error::SubsetOutOfRange);
        }
        let mut rest = rank as u64;
        let mut bits = 0u64;
        let mut top = self.m;
        for i in (1..=k).rev() {
            // largest c < top with C(c, i) <= rest
            let mut c = top - 1;
            while binomial(u64::from(c), u64::from(i)) > rest {
                c -= 1;
            }
            bits |= 1 << c;
            rest -= binomial(u64::from(c), u64::from(i));
            top = c;
        }
        Ok(KSubset { bits })
    }
}

/// Colex iterator over the `k`-subsets of a ground set (Gosper's hack).
#[derive(Debug, Clone)]
pub struct KSubsets {
    next: Option<u64>,
    limit: u64,
}

impl Iterator for KSubsets {
    type Item = KSubset;

    fn next(&mut self) -> Option<KSubset> {
        let cur = self.next?;
        if cur & !self.limit != 0 {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            // overflow: the subset was the topmost block of set bits in the word
            cur.checked_add(low)
                .map(|ripple| (((ripple ^ cur) >> 2) / low) | ripple)
        };
        Some(KSubset { bits: cur })
    }
}

/// A subset of the ground set, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KSubset {
    bits: u64,
}

impl KSubset {
    pub const EMPTY: KSubset = KSubset { bits: 0 };

    /// Raw mask; callers that need ground-set validation go through
    /// [`GroundSet::subset_from_bits`].
    pub fn from_bits(bits: u64) -> Self {
        KSubset { bits }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of points.
    pub fn k(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, p: u32) -> bool {
        p < 64 && self.bits >> p & 1 == 1
    }

    pub fn disjoint(&self, other: KSubset) -> bool {
        self.bits & other.bits == 0
    }

    pub fn intersection_size(&self, other: KSubset) -> u32 {
        (self.bits & other.bits).count_ones()
    }

    pub fn union(&self, other: KSubset) -> KSubset {
        KSubset {
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: KSubset) -> KSubset {
        KSubset {
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(&self, other: KSubset) -> KSubset {
        KSubset {
            bits: self.bits & !other.bits,
        }
    }

    /// The `count` smallest points of this set (all of it if shorter).
    pub fn lowest(&self, count: u32) -> KSubset {
        let mut bits = 0u64;
        for p in self.points().take(count as usize) {
            bits |= 1 << p;
        }
        KSubset { bits }
    }

    /// Points in ascending order.
    pub fn points(&self) -> Points {
        Points { bits: self.bits }
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

pub struct Points {
    bits: u64,
}

impl Iterator for Points {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.bits == 0 {
            return None;
        }
        let p = self.bits.trailing_zeros();
        self.bits &= self.bits - 1;
        Some(p)
    }
}

/// Free-function form of [`KSubset::disjoint`].
pub fn disjoint(a: KSubset, b: KSubset) -> bool {
    a.disjoint(b)
}

/// Free-function form of [`KSubset::intersection_size`].
pub fn intersection_size(a: KSubset, b: KSubset) -> u32 {
    a.intersection_size(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(ground: &GroundSet, pts: &[u32]) -> KSubset {
        ground.subset(pts).unwrap()
    }

    #[test]
    fn enumerate_small() {
        let g = GroundSet::new(3).unwrap();
        let masks: Vec<u64> = g.enumerate_k_subsets(2).iter().map(|s| s.bits()).collect();
        assert_eq!(masks, vec![0b011, 0b101, 0b110]);
        assert_eq!(GroundSet::new(5).unwrap().enumerate_k_subsets(2).len(), 10);
        assert_eq!(GroundSet::new(7).unwrap().enumerate_k_subsets(2).len(), 21);
    }

    #[test]
    fn enumerate_edge_cases() {
        let g = GroundSet::new(4).unwrap();
        assert!(g.enumerate_k_subsets(5).is_empty());
        assert_eq!(g.enumerate_k_subsets(0), vec![KSubset::EMPTY]);
        assert_eq!(g.enumerate_k_subsets(4).len(), 1);
        let full = GroundSet::new(64).unwrap();
        assert_eq!(full.enumerate_k_subsets(64).len(), 1);
        assert_eq!(full.enumerate_k_subsets(63).len(), 64);
        assert_eq!(full.iter_k_subsets(1).count(), 64);
    }

    #[test]
    fn ground_set_bounds() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::new(65).is_err());
        assert!(GroundSet::new(64).is_ok());
    }

    #[test]
    fn rank_examples() {
        let g5 = GroundSet::new(5).unwrap();
        assert_eq!(g5.rank(set(&g5, &[0, 1])).unwrap(), 0);
        assert_eq!(g5.rank(set(&g5, &[3, 4])).unwrap(), 9);
        let g7 = GroundSet::new(7).unwrap();
        let s = set(&g7, &[0, 2]);
        assert_eq!(g7.unrank(2, g7.rank(s).unwrap()).unwrap(), s);
        for (i, s) in g7.enumerate_k_subsets(2).into_iter().enumerate() {
            assert_eq!(g7.rank(s).unwrap(), i);
            assert_eq!(g7.unrank(2, i).unwrap(), s);
        }
    }

    #[test]
    fn rank_rejects_out_of_range() {
        let g5 = GroundSet::new(5).unwrap();
        assert_eq!(
            g5.rank(KSubset::from_bits(1 << 5)),
            Err(Error::SubsetOutOfRange)
        );
        assert!(g5.subset(&[5]).is_err());
        assert!(g5.unrank(2, 10).is_err());
    }

    #[test]
    fn set_algebra() {
        let g = GroundSet::new(8).unwrap();
        assert!(set(&g, &[0, 1]).disjoint(set(&g, &[2, 3])));
        assert!(!set(&g, &[0, 1]).disjoint(set(&g, &[1, 2])));
        assert!(!set(&g, &[0, 1]).disjoint(set(&g, &[0, 1])));
        assert_eq!(
            set(&g, &[0, 1, 2]).intersection_size(set(&g, &[2, 3, 4])),
            1
        );
        assert_eq!(set(&g, &[0, 1]).intersection_size(set(&g, &[0, 1])), 2);
        assert_eq!(set(&g, &[0, 1]).intersection_size(set(&g, &[2, 3])), 0);
        assert_eq!(set(&g, &[1, 4, 6, 7]).lowest(2), set(&g, &[1, 4]));
        assert_eq!(g.complement(set(&g, &[0, 7])).k(), 6);
        assert_eq!(set(&g, &[3, 1]).to_string(), "{1,3}");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial(10, 0), 1);
    }

    proptest! {
        #[test]
        fn enumeration_is_a_ranked_bijection(m in 1u32..=12, k in 0u32..=12) {
            let g = GroundSet::new(m).unwrap();
            let all = g.enumerate_k_subsets(k);
            prop_assert_eq!(all.len() as u64, binomial(u64::from(m), u64::from(k)));
            for (i, s) in all.iter().enumerate() {
                prop_assert_eq!(s.k(), k);
                prop_assert!(g.contains(*s));
                prop_assert_eq!(g.rank(*s).unwrap(), i);
                prop_assert_eq!(g.unrank(k, i).unwrap(), *s);
            }
            prop_assert!(all.windows(2).all(|w| w[0].bits() < w[1].bits()));
        }

        #[test]
        fn disjoint_iff_empty_intersection(a in any::<u64>(), b in any::<u64>()) {
            let (a, b) = (KSubset::from_bits(a), KSubset::from_bits(b));
            prop_assert_eq!(a.disjoint(b), a.intersection_size(b) == 0);
        }
    }
}
