use std::fmt;

use serde::{Deserialize, Serialize};

use super::{abacus_push_down, join_row, sorted_distinct, Partition};
use crate::Result;

/// An unordered pair of finite sets of naturals, in canonical form.
///
/// `0` never lies in both rows, and `(len(top), top) >= (len(bottom), bottom)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symbol {
    top: Vec<u32>,
    bottom: Vec<u32>,
}

/// Rank, defect and class maximum of a symbol class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolStats {
    pub rank: u32,
    pub defect: u32,
    pub class_max: u32,
}

impl Symbol {
    /// Canonical representative of the class of the pair `{s, t}`.
    pub fn normalize(s: &[u32], t: &[u32]) -> Result<Self> {
        Ok(Self::from_sorted(sorted_distinct(s)?, sorted_distinct(t)?))
    }

    pub(crate) fn from_sorted(mut s: Vec<u32>, mut t: Vec<u32>) -> Self {
        let lead = s
            .iter()
            .zip(&t)
            .enumerate()
            .take_while(|&(i, (&x, &y))| x as usize == i && y as usize == i)
            .count();
        if lead > 0 {
            let shift = lead as u32;
            s = s[lead..].iter().map(|&x| x - shift).collect();
            t = t[lead..].iter().map(|&y| y - shift).collect();
        }
        if (s.len(), &s) < (t.len(), &t) {
            std::mem::swap(&mut s, &mut t);
        }
        Self { top: s, bottom: t }
    }

    /// The symbol encoded by a bipartition at defect `defect`: the first
    /// partition fills the longer row.
    pub fn from_bipartition(alpha: &Partition, beta: &Partition, defect: u32) -> Self {
        let k = defect as usize;
        let b = beta.parts().len().max(alpha.parts().len().saturating_sub(k));
        let a = b + k;
        Self::from_sorted(beta_row(alpha.parts(), a), beta_row(beta.parts(), b))
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    /// Both rows identical (only possible at defect 0).
    pub fn is_degenerate(&self) -> bool {
        self.top == self.bottom
    }

    /// Equivalent representative with `extra` simultaneous leading zeros.
    pub fn representative(&self, extra: u32) -> (Vec<u32>, Vec<u32>) {
        let shift = |row: &[u32]| -> Vec<u32> {
            (0..extra).chain(row.iter().map(|&x| x + extra)).collect()
        };
        (shift(&self.top), shift(&self.bottom))
    }

    pub fn rank(&self) -> u32 {
        raw_rank(&self.top, &self.bottom)
    }

    pub fn defect(&self) -> u32 {
        (self.top.len() - self.bottom.len()) as u32
    }

    /// `max(Σ)`: 0 for the class of `(0 / 0)`, else the largest entry.
    pub fn class_max(&self) -> u32 {
        let a = self.top.last().copied().unwrap_or(0);
        let b = self.bottom.last().copied().unwrap_or(0);
        a.max(b)
    }

    pub fn stats(&self) -> SymbolStats {
        SymbolStats {
            rank: self.rank(),
            defect: self.defect(),
            class_max: self.class_max(),
        }
    }

    /// Remove d-hooks inside each row until none is left.
    pub fn d_core(&self, d: u32) -> Symbol {
        Self::from_sorted(
            abacus_push_down(&self.top, d),
            abacus_push_down(&self.bottom, d),
        )
    }

    /// Remove d-cohooks (`x` leaves one row, `x - d` enters the other) until
    /// none is left.
    ///
    /// An entry `x` of row `r` sits on runner `x mod d` at level `x div d`; a
    /// cohook lowers the level by one and flips the row, so
    /// `r xor (level mod 2)` is constant along every move. Each
    /// (runner, twisted row) line is then an ordinary one-dimensional abacus.
    pub fn d_cocore(&self, d: u32) -> Symbol {
        assert!(d >= 1, "cohook length must be positive");
        let d_us = d as usize;
        let mut counts = vec![[0u32; 2]; d_us];
        for (row, entries) in [(0usize, &self.top), (1usize, &self.bottom)] {
            for &x in entries.iter() {
                let level = (x / d) as usize;
                counts[(x % d) as usize][row ^ (level & 1)] += 1;
            }
        }
        let mut rows = [Vec::new(), Vec::new()];
        for (runner, per_line) in counts.iter().enumerate() {
            for (twist, &c) in per_line.iter().enumerate() {
                for level in 0..c {
                    let row = twist ^ (level as usize & 1);
                    rows[row].push(runner as u32 + level * d);
                }
            }
        }
        let [mut s, mut t] = rows;
        s.sort_unstable();
        t.sort_unstable();
        Self::from_sorted(s, t)
    }

    /// Two-row rendering, top row above bottom row.
    pub fn two_row(&self) -> String {
        format!("{}\n{}", join_row(&self.top), join_row(&self.bottom))
    }
}

fn beta_row(parts: &[u32], len: usize) -> Vec<u32> {
    let pad = len - parts.len();
    std::iter::repeat(0)
        .take(pad)
        .chain(parts.iter().copied())
        .enumerate()
        .map(|(i, p)| p + i as u32)
        .collect()
}

/// `Σ x + Σ y - ⌊((a+b-1)/2)²⌋` for any pair of sorted rows.
pub(crate) fn raw_rank(s: &[u32], t: &[u32]) -> u32 {
    let sum: i64 = s.iter().chain(t).map(|&x| i64::from(x)).sum();
    let m = (s.len() + t.len()) as i64 - 1;
    let rank = sum - m * m / 4;
    u32::try_from(rank).expect("symbol rank is non-negative")
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = join_row(&self.top);
        let bottom = join_row(&self.bottom);
        match (top.is_empty(), bottom.is_empty()) {
            (true, true) => write!(f, "( / )"),
            (false, true) => write!(f, "({top} / )"),
            (true, false) => write!(f, "( / {bottom})"),
            (false, false) => write!(f, "({top} / {bottom})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: &[u32], b: &[u32]) -> Symbol {
        Symbol::normalize(a, b).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let one = s(&[0, 2], &[0, 1]);
        assert_eq!(one.top(), &[1]);
        assert_eq!(one.bottom(), &[0]);
        let cusp = s(&[0, 1, 2], &[]);
        assert_eq!(cusp.top(), &[0, 1, 2]);
        assert!(cusp.bottom().is_empty());
        assert_eq!(s(&[], &[]), Symbol::default());
        assert_eq!(s(&[0], &[0]), Symbol::default());
    }

    #[test]
    fn row_order_is_fixed() {
        assert_eq!(s(&[1], &[0, 2]), s(&[0, 2], &[1]));
        assert_eq!(s(&[2], &[1]).top(), &[2]);
        assert_eq!(s(&[1], &[2]).top(), &[2]);
    }

    #[test]
    fn rejects_duplicates() {
        assert!(Symbol::normalize(&[1, 1], &[]).is_err());
        assert!(Symbol::normalize(&[1], &[3, 3]).is_err());
    }

    #[test]
    fn stats_examples() {
        assert_eq!(
            s(&[0, 1, 2], &[]).stats(),
            SymbolStats { rank: 2, defect: 3, class_max: 2 }
        );
        assert_eq!(
            s(&[0, 2], &[1]).stats(),
            SymbolStats { rank: 2, defect: 1, class_max: 2 }
        );
        assert_eq!(
            s(&[0], &[0]).stats(),
            SymbolStats { rank: 0, defect: 0, class_max: 0 }
        );
    }

    #[test]
    fn cores_of_sp4_cuspidal() {
        let cusp = s(&[0, 1, 2], &[]);
        // 1-hooks: the staircase is already a 1-core
        assert_eq!(cusp.d_core(1), cusp);
        let co = cusp.d_cocore(1);
        assert!(co.defect() < 3);
        // base symbol of every 1-core chain
        assert_eq!(s(&[1], &[]).d_core(1), s(&[0], &[]));
        assert_eq!(s(&[2], &[1]).d_core(1), Symbol::default());
    }

    #[test]
    fn core_is_identity_below_d() {
        let sigma = s(&[0, 2], &[1]);
        assert_eq!(sigma.d_core(3), sigma);
        assert_eq!(sigma.d_cocore(3), sigma);
    }

    #[test]
    fn from_bipartition_matches_rank() {
        let alpha = Partition::new(&[1, 1]).unwrap();
        let beta = Partition::default();
        let sigma = Symbol::from_bipartition(&alpha, &beta, 1);
        assert_eq!(sigma.rank(), 2);
        assert_eq!(sigma.defect(), 1);
        let cusp = Symbol::from_bipartition(&Partition::default(), &Partition::default(), 3);
        assert_eq!(cusp, s(&[0, 1, 2], &[]));
    }

    #[test]
    fn display() {
        assert_eq!(s(&[0, 2], &[1]).to_string(), "(0 2 / 1)");
        assert_eq!(s(&[2], &[]).to_string(), "(2 / )");
        assert_eq!(Symbol::default().to_string(), "( / )");
    }
}
