//! β-sets, partitions and symbols.
//!
//! All three types are kept in a canonical form so that equality of values is
//! equality of equivalence classes:
//!
//! - a [`BetaSet`] never contains `0` (the strip rule `(0 x1+1 …) ↦ (x1 …)` has
//!   been applied until `0` is gone);
//! - a [`Symbol`] never has `0` in both rows, and its rows are ordered so that
//!   `(len, row)` of the first row is lexicographically at least that of the
//!   second.
//!
//! Hooks are always *removed*: cores are computed by descent.

mod beta;
mod partition;
mod symbol;

pub use beta::{BetaSet, BetaStats};
pub use partition::Partition;
pub use symbol::{Symbol, SymbolStats};

/// Whether a β-set of rank `m` and defect `k` exists: `m - k(k+1)/2` must be
/// even and non-negative.
pub fn beta_set_exists(m: u32, k: u32) -> bool {
    let base = u64::from(k) * (u64::from(k) + 1) / 2;
    let m = u64::from(m);
    m >= base && (m - base) % 2 == 0
}

/// Largest `max([λ])` over the β-set classes of rank `m` and defect `k`, or
/// `None` when no such class exists.
pub fn beta_max_bound(m: u32, k: u32) -> Option<u32> {
    if !beta_set_exists(m, k) {
        return None;
    }
    if k == 0 {
        return Some(m);
    }
    let k = i64::from(k);
    let v = i64::from(m) - (k * k - 3 * k + 2) / 2;
    Some(u32::try_from(v).expect("bound is non-negative when the class exists"))
}

/// Rank of the cuspidal symbol `(0 1 … k-1 / −)` of defect `k` (and of
/// `(0 / 0)` for `k = 0`), which equals `⌊k²/4⌋`.
pub fn cuspidal_symbol_rank(k: u32) -> u32 {
    k * k / 4
}

/// Largest `max(Σ)` over the symbol classes of rank `n` and defect `k`, or
/// `None` when `n` is below the rank of the defect-`k` cuspidal symbol.
pub fn symbol_max_bound(n: u32, k: u32) -> Option<u32> {
    if n < cuspidal_symbol_rank(k) {
        return None;
    }
    let n64 = i64::from(n);
    let k64 = i64::from(k);
    let v = match k {
        0 => n64,
        _ if k % 2 == 1 => n64 - (k64 * k64 - 4 * k64 + 3) / 4,
        _ => n64 - (k64 * k64 - 4 * k64 + 4) / 4,
    };
    Some(u32::try_from(v).expect("bound is non-negative when the class exists"))
}

/// Shared helper: validate that `raw` has no duplicates and return it sorted.
pub(crate) fn sorted_distinct(raw: &[u32]) -> crate::Result<Vec<u32>> {
    let mut v = raw.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(crate::error::invalid(format!(
            "duplicate entries in {raw:?}"
        )));
    }
    Ok(v)
}

/// Push every bead of a sorted set of naturals as far down its runner modulo
/// `d` as possible. Returns the resulting sorted set.
pub(crate) fn abacus_push_down(sorted: &[u32], d: u32) -> Vec<u32> {
    assert!(d >= 1, "hook length must be positive");
    let d_us = d as usize;
    let mut counts = vec![0u32; d_us];
    for &x in sorted {
        counts[(x % d) as usize] += 1;
    }
    let mut out: Vec<u32> = counts
        .iter()
        .enumerate()
        .flat_map(|(r, &c)| (0..c).map(move |j| r as u32 + j * d))
        .collect();
    out.sort_unstable();
    out
}

/// Render a sorted row as space separated numbers.
pub(crate) fn join_row(row: &[u32]) -> String {
    row.iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
