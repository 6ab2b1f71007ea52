//! Unipotent characters of finite reductive groups and their partitions into
//! 1-series, d-series and `(d,1)`-series.
//!
//! Characters of a product are tuples of per-factor labels, and every
//! partition of a product is the product of the per-factor partitions. A
//! factor obtained by restriction of scalars from a degree-`m` extension sees
//! `d / gcd(d, m)` in place of `d`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{cuspidal_symbol_rank, BetaSet, Partition, Symbol};
use crate::cyclotomic::d_prime;
use crate::error::invalid;
use crate::exceptional::ExceptionalTable;
use crate::group::{Family, FiniteGroupSpec, SimpleFactor};
use crate::{Error, Result};

/// Label of a unipotent character of one simple factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FactorLabel {
    /// Types A and ²A: a partition of `rank + 1`.
    Partition(Partition),
    /// Types B, C, D and ²D. Degenerate D symbols carry index 0 or 1.
    Symbol { symbol: Symbol, degenerate: Option<u8> },
    /// The unique unipotent character of a torus.
    Trivial,
    /// Exceptional types: a whole 1-series, named by its cuspidal support.
    Series(String),
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorLabel::Partition(p) => write!(f, "{}", p.to_beta()),
            FactorLabel::Symbol { symbol, degenerate: None } => write!(f, "{symbol}"),
            FactorLabel::Symbol { symbol, degenerate: Some(i) } => write!(f, "{symbol}[{i}]"),
            FactorLabel::Trivial => f.write_str("1"),
            FactorLabel::Series(name) => f.write_str(name),
        }
    }
}

/// A unipotent character of a product group: one label per factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct UnipotentChar {
    pub labels: Vec<FactorLabel>,
}

impl fmt::Display for UnipotentChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.labels.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.labels.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// A partition of the unipotent characters of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct D1Partition {
    pub classes: Vec<Vec<UnipotentChar>>,
    pub trivial_class_index: Option<usize>,
}

impl D1Partition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing `ch`.
    pub fn class_of(&self, ch: &UnipotentChar) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(ch).is_ok())
    }

    /// Total number of characters covered.
    pub fn num_chars(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }
}

/// Identifies a 1-series of a simple factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeriesKey {
    /// The only 1-series (type A, tori).
    Principal,
    /// Symbols and β-sets: the defect determines the 1-series.
    Defect(u32),
    /// Exceptional types.
    Named(String),
}

/// Identifies a `(d,1)`-series of a simple factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum D1Key {
    /// The `(d,1)`-series containing the trivial character, when it merges
    /// several 1-series (or is the only series).
    Merged,
    /// A single 1-series that is a `(d,1)`-series on its own.
    Single(SeriesKey),
    /// A tabulated class of an exceptional type.
    Tabulated(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum DKey {
    Whole,
    Beta(BetaSet),
    Symbol(Symbol),
}

/// `d` as seen by a factor defined over a degree-`m` extension.
pub fn effective_d(factor: &SimpleFactor, d: u64) -> u64 {
    d / d.gcd(&u64::from(factor.ext_degree))
}

fn check_d(d: u64) -> Result<()> {
    if d == 0 {
        Err(invalid("d must be positive"))
    } else {
        Ok(())
    }
}

/// The defect threshold `k_{G,d}` for a factor of type ²A, B, C, D or ²D and
/// rank `n`, or `-1` when no admissible defect qualifies.
///
/// For ²A the caller passes the Ennola index `d'`:
///
/// - ²A: largest `k >= 1` with `(k² - 3k + 2)/2 <= n + 1 - d`;
/// - B, C: largest odd `k` with `(k² - 4k + 3)/4 <= n - d/2`;
/// - D, ²D: largest even `k >= 2` with `(k² - 4k + 4)/4 <= n - d/2`.
pub fn k_threshold(family: Family, n: u32, d: u64) -> Result<i64> {
    let n = i64::from(n);
    let d = i64::try_from(d).map_err(|_| invalid("d out of range"))?;
    // each inequality is scaled to integers; the left side never decreases in k
    let (start, step, budget, lhs): (i64, i64, i64, fn(i64) -> i64) = match family {
        Family::TwistedA => (1, 1, 2 * (n + 1 - d), |k| k * k - 3 * k + 2),
        Family::B | Family::C => (1, 2, 4 * n - 2 * d, |k| k * k - 4 * k + 3),
        Family::D | Family::TwistedD => (2, 2, 4 * n - 2 * d, |k| k * k - 4 * k + 4),
        other => {
            return Err(invalid(format!("no defect threshold for family {other:?}")));
        }
    };
    let mut best = -1;
    let mut k = start;
    while lhs(k) <= budget {
        best = k;
        k += step;
    }
    Ok(best)
}

/// The threshold that governs the `(d,1)`-series of `factor`, when the
/// series merge at all: `None` for types A and tori, for ²A with `d'` even,
/// for B/C/D/²D with `d` odd, and for exceptional types.
pub fn factor_k_threshold(factor: &SimpleFactor, d: u64) -> Option<i64> {
    let de = effective_d(factor, d);
    match factor.family {
        Family::TwistedA => {
            let dd = d_prime(de);
            (dd % 2 == 1).then(|| k_threshold(Family::TwistedA, factor.rank, dd).ok())?
        }
        fam if fam.uses_symbols() => {
            (de % 2 == 0).then(|| k_threshold(fam, factor.rank, de).ok())?
        }
        _ => None,
    }
}

fn bipartitions(w: u32) -> Vec<(Partition, Partition)> {
    (0..=w)
        .flat_map(|i| {
            let right = Partition::all(w - i);
            Partition::all(i)
                .into_iter()
                .flat_map(move |a| right.clone().into_iter().map(move |b| (a.clone(), b)))
        })
        .collect()
}

fn symbols_of_defect(n: u32, k: u32) -> Vec<Symbol> {
    let base = cuspidal_symbol_rank(k);
    if base > n {
        return Vec::new();
    }
    let mut out: Vec<Symbol> = bipartitions(n - base)
        .iter()
        .map(|(a, b)| Symbol::from_bipartition(a, b, k))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn symbol_labels(n: u32, defects: impl Iterator<Item = u32>) -> Vec<FactorLabel> {
    let mut out = Vec::new();
    for k in defects.take_while(|&k| cuspidal_symbol_rank(k) <= n) {
        for symbol in symbols_of_defect(n, k) {
            if symbol.is_degenerate() {
                for i in 0..2 {
                    out.push(FactorLabel::Symbol { symbol: symbol.clone(), degenerate: Some(i) });
                }
            } else {
                out.push(FactorLabel::Symbol { symbol, degenerate: None });
            }
        }
    }
    out
}

/// Unipotent character labels of one simple factor.
pub fn factor_characters(
    factor: &SimpleFactor,
    table: Option<&ExceptionalTable>,
) -> Result<Vec<FactorLabel>> {
    let n = factor.rank;
    let mut labels = match factor.family {
        Family::A | Family::TwistedA => Partition::all(n + 1)
            .into_iter()
            .map(FactorLabel::Partition)
            .collect(),
        Family::B | Family::C => symbol_labels(n, (1..).step_by(2)),
        Family::D => symbol_labels(n, (0..).step_by(4)),
        Family::TwistedD => symbol_labels(n, (2..).step_by(4)),
        Family::Torus => vec![FactorLabel::Trivial],
        Family::Exceptional(t) => {
            let names = table.and_then(|tb| tb.series_names(t)).ok_or_else(|| {
                Error::UnsupportedType(format!("no SERIES data supplied for {t}"))
            })?;
            names.iter().cloned().map(FactorLabel::Series).collect()
        }
    };
    labels.sort();
    Ok(labels)
}

/// Label of the trivial character of one factor.
pub fn trivial_label(factor: &SimpleFactor) -> FactorLabel {
    let n = factor.rank;
    let symbol = |s: &[u32], t: &[u32]| FactorLabel::Symbol {
        symbol: Symbol::normalize(s, t).expect("distinct entries"),
        degenerate: None,
    };
    match factor.family {
        Family::A | Family::TwistedA => {
            FactorLabel::Partition(Partition::new(&[n + 1]).expect("positive part"))
        }
        Family::B | Family::C => symbol(&[n], &[]),
        Family::D => symbol(&[n], &[0]),
        Family::TwistedD => symbol(&[0, n], &[]),
        Family::Torus => FactorLabel::Trivial,
        Family::Exceptional(_) => FactorLabel::Series("1".to_string()),
    }
}

/// All unipotent characters of a classical group, sorted.
pub fn enumerate_unipotent(g: &FiniteGroupSpec) -> Result<Vec<UnipotentChar>> {
    enumerate_unipotent_with(g, None)
}

/// All unipotent characters, taking exceptional 1-series names from `table`.
pub fn enumerate_unipotent_with(
    g: &FiniteGroupSpec,
    table: Option<&ExceptionalTable>,
) -> Result<Vec<UnipotentChar>> {
    let mut chars = vec![UnipotentChar { labels: Vec::new() }];
    for factor in &g.factors {
        let labels = factor_characters(factor, table)?;
        chars = chars
            .into_iter()
            .flat_map(|c| {
                labels.iter().map(move |l| {
                    let mut next = c.labels.clone();
                    next.push(l.clone());
                    UnipotentChar { labels: next }
                })
            })
            .collect();
    }
    chars.sort();
    Ok(chars)
}

/// The 1-series of a single character label.
pub fn one_series_key(factor: &SimpleFactor, label: &FactorLabel) -> Result<SeriesKey> {
    Ok(match (factor.family, label) {
        (Family::A | Family::Torus, _) => SeriesKey::Principal,
        (Family::TwistedA, FactorLabel::Partition(p)) => SeriesKey::Defect(p.to_beta().defect()),
        (_, FactorLabel::Symbol { symbol, .. }) => SeriesKey::Defect(symbol.defect()),
        (_, FactorLabel::Series(name)) => SeriesKey::Named(name.clone()),
        _ => return Err(invalid(format!("label {label} does not belong to {factor}"))),
    })
}

fn d_series_key(factor: &SimpleFactor, label: &FactorLabel, d: u64) -> Result<DKey> {
    let de = u32::try_from(effective_d(factor, d)).map_err(|_| invalid("d out of range"))?;
    Ok(match (factor.family, label) {
        (Family::Torus, _) => DKey::Whole,
        (Family::A, FactorLabel::Partition(p)) => DKey::Beta(p.to_beta().d_core(de)),
        (Family::TwistedA, FactorLabel::Partition(p)) => {
            DKey::Beta(p.to_beta().d_core(d_prime(u64::from(de)) as u32))
        }
        (fam, FactorLabel::Symbol { symbol, .. }) if fam.uses_symbols() => {
            if de % 2 == 1 {
                DKey::Symbol(symbol.d_core(de))
            } else {
                DKey::Symbol(symbol.d_cocore(de / 2))
            }
        }
        (Family::Exceptional(t), _) => {
            return Err(Error::UnsupportedType(format!("no d-series combinatorics for {t}")))
        }
        _ => return Err(invalid(format!("label {label} does not belong to {factor}"))),
    })
}

/// The `(d,1)`-series containing the 1-series `series` of `factor`.
pub fn d1_class_key(
    factor: &SimpleFactor,
    d: u64,
    series: &SeriesKey,
    table: Option<&ExceptionalTable>,
) -> Result<D1Key> {
    check_d(d)?;
    let de = effective_d(factor, d);
    let merged_below = |threshold: i64| -> Result<D1Key> {
        match series {
            SeriesKey::Defect(k) if i64::from(*k) <= threshold => Ok(D1Key::Merged),
            SeriesKey::Defect(_) => Ok(D1Key::Single(series.clone())),
            other => Err(invalid(format!("{other:?} is not a defect series of {factor}"))),
        }
    };
    match factor.family {
        Family::A | Family::Torus => Ok(D1Key::Merged),
        Family::TwistedA => {
            let dd = d_prime(de);
            if dd % 2 == 0 {
                merged_below(-1)
            } else {
                merged_below(k_threshold(Family::TwistedA, factor.rank, dd)?)
            }
        }
        fam if fam.uses_symbols() => {
            if de % 2 == 1 {
                merged_below(-1)
            } else {
                merged_below(k_threshold(fam, factor.rank, de)?)
            }
        }
        Family::Exceptional(t) => {
            let SeriesKey::Named(name) = series else {
                return Err(invalid(format!("{series:?} is not a 1-series of {t}")));
            };
            let classes = table.map(|tb| tb.d1_classes(t, de)).unwrap_or_default();
            classes
                .iter()
                .position(|c| c.contains(name))
                .map(D1Key::Tabulated)
                .ok_or_else(|| invalid(format!("{name:?} is not a known 1-series of {t}")))
        }
        _ => unreachable!("all families handled"),
    }
}

fn partition_by<K: Ord>(
    g: &FiniteGroupSpec,
    table: Option<&ExceptionalTable>,
    mut key: impl FnMut(&SimpleFactor, &FactorLabel) -> Result<K>,
) -> Result<D1Partition> {
    let chars = enumerate_unipotent_with(g, table)?;
    let mut groups: BTreeMap<Vec<K>, Vec<UnipotentChar>> = BTreeMap::new();
    for ch in chars {
        let k = g
            .factors
            .iter()
            .zip(&ch.labels)
            .map(|(f, l)| key(f, l))
            .collect::<Result<Vec<_>>>()?;
        groups.entry(k).or_default().push(ch);
    }
    let mut classes: Vec<Vec<UnipotentChar>> = groups.into_values().collect();
    for c in &mut classes {
        c.sort();
    }
    classes.sort();
    let trivial = UnipotentChar { labels: g.factors.iter().map(trivial_label).collect() };
    let trivial_class_index = classes.iter().position(|c| c.binary_search(&trivial).is_ok());
    Ok(D1Partition { classes, trivial_class_index })
}

/// Partition into 1-series (Harish-Chandra series).
pub fn one_series_partition(g: &FiniteGroupSpec) -> Result<D1Partition> {
    one_series_partition_with(g, None)
}

pub fn one_series_partition_with(
    g: &FiniteGroupSpec,
    table: Option<&ExceptionalTable>,
) -> Result<D1Partition> {
    partition_by(g, table, one_series_key)
}

/// Partition into d-series: equal d-cores (types A, ²A via `d'`, and
/// B/C/D/²D for odd `d`) or equal `d/2`-cocores (B/C/D/²D, even `d`).
pub fn d_series_partition(g: &FiniteGroupSpec, d: u64) -> Result<D1Partition> {
    check_d(d)?;
    partition_by(g, None, |f, l| d_series_key(f, l, d))
}

/// Partition into `(d,1)`-series.
pub fn d1_series_partition(g: &FiniteGroupSpec, d: u64) -> Result<D1Partition> {
    d1_series_partition_with(g, d, None)
}

pub fn d1_series_partition_with(
    g: &FiniteGroupSpec,
    d: u64,
    table: Option<&ExceptionalTable>,
) -> Result<D1Partition> {
    check_d(d)?;
    partition_by(g, table, |f, l| d1_class_key(f, d, &one_series_key(f, l)?, table))
}
