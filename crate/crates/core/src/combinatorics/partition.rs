use serde::{Deserialize, Serialize};

use super::BetaSet;
use crate::{error::invalid, Result};

/// An integer partition stored with weakly increasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Build from parts in any order. Zero parts are rejected.
    pub fn new(parts: &[u32]) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid(format!("partition parts must be positive: {parts:?}")));
        }
        let mut parts = parts.to_vec();
        parts.sort_unstable();
        Ok(Self { parts })
    }

    pub(crate) fn from_ascending_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(!parts.contains(&0));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The β-set `(a1, a2 + 1, …, ak + (k-1))`.
    pub fn to_beta(&self) -> BetaSet {
        BetaSet::from_sorted(
            self.parts
                .iter()
                .enumerate()
                .map(|(i, &a)| a + i as u32)
                .collect(),
        )
    }

    /// All partitions of `n`, in lexicographic order of their ascending parts.
    pub fn all(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill(n, 1, &mut cur, &mut out);
        out
    }
}

fn fill(remaining: u32, min_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for part in min_part..=remaining {
        // the rest must still fit parts >= part
        if remaining - part != 0 && remaining - part < part {
            continue;
        }
        cur.push(part);
        fill(remaining - part, part, cur, out);
        cur.pop();
    }
}
