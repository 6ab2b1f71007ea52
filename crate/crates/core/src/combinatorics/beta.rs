use std::fmt;

use serde::{Deserialize, Serialize};

use super::{abacus_push_down, join_row, sorted_distinct, Partition};
use crate::Result;

/// A β-set in canonical form: strictly increasing naturals, never containing 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BetaSet {
    elements: Vec<u32>,
}

/// Rank, defect and class maximum of a β-set class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BetaStats {
    pub rank: u32,
    pub defect: u32,
    pub class_max: u32,
}

impl BetaSet {
    /// The empty β-set, the class of `(0)`.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Canonical representative of the class of `raw`.
    ///
    /// While `0` is an element it is removed and every remaining element is
    /// decremented. Fails if `raw` has repeated entries.
    pub fn normalize(raw: &[u32]) -> Result<Self> {
        Ok(Self::from_sorted(sorted_distinct(raw)?))
    }

    /// Normalise a sorted, duplicate-free vector.
    pub(crate) fn from_sorted(sorted: Vec<u32>) -> Self {
        let lead = sorted
            .iter()
            .enumerate()
            .take_while(|&(i, &x)| x as usize == i)
            .count();
        let shift = lead as u32;
        Self {
            elements: sorted[lead..].iter().map(|&x| x - shift).collect(),
        }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The equivalent representative with `extra` additional leading beads,
    /// i.e. `(0 1 … extra-1  x1+extra …)`.
    pub fn representative(&self, extra: u32) -> Vec<u32> {
        (0..extra)
            .chain(self.elements.iter().map(|&x| x + extra))
            .collect()
    }

    pub fn rank(&self) -> u32 {
        raw_rank(&self.elements)
    }

    pub fn defect(&self) -> u32 {
        raw_defect(&self.elements)
    }

    /// `max([λ])`: 0 for the class of `(0)`, otherwise the largest element of
    /// the canonical representative.
    pub fn class_max(&self) -> u32 {
        self.elements.last().copied().unwrap_or(0)
    }

    pub fn stats(&self) -> BetaStats {
        BetaStats {
            rank: self.rank(),
            defect: self.defect(),
            class_max: self.class_max(),
        }
    }

    /// The d-core.
    pub fn d_core(&self, d: u32) -> BetaSet {
        self.d_core_with_weight(d).0
    }

    /// The d-core together with the number of d-hooks removed to reach it.
    pub fn d_core_with_weight(&self, d: u32) -> (BetaSet, u32) {
        let pushed = abacus_push_down(&self.elements, d);
        let before: u64 = self.elements.iter().map(|&x| u64::from(x)).sum();
        let after: u64 = pushed.iter().map(|&x| u64::from(x)).sum();
        let weight = ((before - after) / u64::from(d)) as u32;
        (Self::from_sorted(pushed), weight)
    }

    pub fn is_d_core(&self, d: u32) -> bool {
        self.d_core_with_weight(d).1 == 0
    }

    /// The partition `(x1, x2 - 1, …, xa - (a-1))` encoded by this β-set.
    pub fn to_partition(&self) -> Partition {
        Partition::from_ascending_unchecked(
            self.elements
                .iter()
                .enumerate()
                .map(|(i, &x)| x - i as u32)
                .collect(),
        )
    }
}

/// `Σ xi - a(a-1)/2` for any strictly increasing set.
pub(crate) fn raw_rank(sorted: &[u32]) -> u32 {
    let a = sorted.len() as u64;
    let sum: u64 = sorted.iter().map(|&x| u64::from(x)).sum();
    (sum - a * a.saturating_sub(1) / 2) as u32
}

/// `o - e` if `o >= e`, else `e - o - 1`, counting odd and even elements.
pub(crate) fn raw_defect(set: &[u32]) -> u32 {
    let odd = set.iter().filter(|&&x| x % 2 == 1).count() as u32;
    let even = set.len() as u32 - odd;
    if odd >= even {
        odd - even
    } else {
        even - odd - 1
    }
}

impl fmt::Display for BetaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join_row(&self.elements))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(xs: &[u32]) -> BetaSet {
        BetaSet::normalize(xs).unwrap()
    }

    #[test]
    fn normalize_strips_leading_run() {
        assert_eq!(b(&[0, 1, 4]).elements(), &[2]);
        assert_eq!(b(&[]).elements(), &[] as &[u32]);
        assert_eq!(b(&[1, 3]).elements(), &[1, 3]);
        assert_eq!(b(&[4, 0, 1]).elements(), &[2]);
        assert_eq!(b(&[0]).elements(), &[] as &[u32]);
    }

    #[test]
    fn normalize_preserves_rank() {
        assert_eq!(raw_rank(&[0, 1, 4]), 2);
        assert_eq!(b(&[0, 1, 4]).rank(), 2);
    }

    #[test]
    fn normalize_rejects_duplicates() {
        assert!(BetaSet::normalize(&[1, 1]).is_err());
    }

    #[test]
    fn stats_examples() {
        assert_eq!(
            b(&[1, 3]).stats(),
            BetaStats { rank: 3, defect: 2, class_max: 3 }
        );
        assert_eq!(
            b(&[2]).stats(),
            BetaStats { rank: 2, defect: 0, class_max: 2 }
        );
        assert_eq!(
            BetaSet::empty().stats(),
            BetaStats { rank: 0, defect: 0, class_max: 0 }
        );
    }

    #[test]
    fn defect_stable_under_shift() {
        for raw in [vec![1, 3], vec![2], vec![1, 2, 5], vec![]] {
            let beta = b(&raw);
            for extra in 0..5 {
                assert_eq!(raw_defect(&beta.representative(extra)), beta.defect());
                assert_eq!(raw_rank(&beta.representative(extra)), beta.rank());
            }
        }
    }

    #[test]
    fn core_examples() {
        assert_eq!(b(&[4]).d_core(2), BetaSet::empty());
        assert_eq!(b(&[1, 3]).d_core(2), b(&[1, 3]));
        for x in 0..10 {
            assert_eq!(b(&[x]).d_core(1), BetaSet::empty());
        }
    }

    #[test]
    fn core_weight_accounts_for_rank() {
        let beta = b(&[2, 5, 7]);
        for d in 1..6 {
            let (core, w) = beta.d_core_with_weight(d);
            assert_eq!(beta.rank(), core.rank() + d * w);
        }
    }

    #[test]
    fn display() {
        assert_eq!(b(&[1, 3]).to_string(), "(1 3)");
        assert_eq!(BetaSet::empty().to_string(), "()");
    }
}
