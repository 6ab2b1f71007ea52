//! Brute-force verifiers for the closed forms used elsewhere in the crate.
//!
//! Each check walks the objects within its bounds directly (hook additions,
//! exhaustive removal orders, explicit closures) and compares against the
//! fast path. The first disagreement, in a deterministic order, is reported.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::blocks::{sp_block_partition, sp_sc, sp_sim_at_vertex, sp_type_vertex_range, sp_types};
use crate::blocks::{Regime, SpType, TypeLabel};
use crate::combinatorics::{beta_set_exists, beta_max_bound, symbol_max_bound};
use crate::cyclotomic::{is_prime, multiplicative_order};
use crate::error::invalid;
use crate::group::{Family, FiniteGroupSpec, SimpleFactor};
use crate::series::{d1_series_partition, d_series_partition, one_series_partition, D1Partition};
use crate::{BetaSet, Partition, Result, Symbol};

/// Outcome of one oracle run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub params: String,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl CheckReport {
    fn new(name: &str, params: String, counterexample: Option<String>) -> Self {
        Self {
            name: name.to_owned(),
            params,
            passed: counterexample.is_none(),
            counterexample,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} [{}]", self.name, self.params)?;
        if let Some(c) = &self.counterexample {
            write!(f, ": {c}")?;
        }
        Ok(())
    }
}

/// Canonical β-sets of rank `m` and defect `k`, grown from the staircase of
/// defect `k` by adding 2-hooks.
pub fn enumerate_beta_sets(m: u32, k: u32) -> Vec<BetaSet> {
    let Some(core) = (0..=2 * k + 1).map(staircase).find(|b| b.defect() == k) else {
        return Vec::new();
    };
    let r0 = core.rank();
    if m < r0 || (m - r0) % 2 == 1 {
        return Vec::new();
    }
    let mut level = BTreeSet::from([core]);
    for _ in 0..(m - r0) / 2 {
        level = level.iter().flat_map(|b| add_hooks(&b.representative(2), 2)).collect();
    }
    level.into_iter().collect()
}

/// β-set of the partition `(j, j-1, …, 1)`.
fn staircase(j: u32) -> BetaSet {
    let parts: Vec<u32> = (1..=j).collect();
    Partition::new(&parts).expect("positive parts").to_beta()
}

fn add_hooks(rep: &[u32], h: u32) -> Vec<BetaSet> {
    rep.iter()
        .filter(|&&x| !rep.contains(&(x + h)))
        .map(|&x| {
            let moved: Vec<u32> = rep.iter().map(|&y| if y == x { x + h } else { y }).collect();
            BetaSet::normalize(&moved).expect("distinct entries")
        })
        .collect()
}

/// Canonical symbols of rank `n` and defect `k`, grown from
/// `(0 1 … k-1 / −)` by adding 1-hooks.
pub fn enumerate_symbols(n: u32, k: u32) -> Vec<Symbol> {
    let core = Symbol::normalize(&(0..k).collect::<Vec<_>>(), &[]).expect("distinct entries");
    let r0 = core.rank();
    if n < r0 {
        return Vec::new();
    }
    let mut level = BTreeSet::from([core]);
    for _ in 0..n - r0 {
        level = level.iter().flat_map(symbol_hook_additions).collect();
    }
    level.into_iter().collect()
}

fn symbol_hook_additions(sym: &Symbol) -> Vec<Symbol> {
    let (s, t) = sym.representative(1);
    let mut out = Vec::new();
    for (row, other, swapped) in [(&s, &t, false), (&t, &s, true)] {
        for &x in row.iter().filter(|&&x| !row.contains(&(x + 1))) {
            let moved: Vec<u32> = row.iter().map(|&y| if y == x { x + 1 } else { y }).collect();
            let sym = if swapped {
                Symbol::normalize(other, &moved)
            } else {
                Symbol::normalize(&moved, other)
            };
            out.push(sym.expect("distinct entries"));
        }
    }
    out
}

/// Every terminal state reachable from `start` under `moves`.
fn terminals<T, F>(start: T, moves: &F, memo: &mut HashMap<T, BTreeSet<T>>) -> BTreeSet<T>
where
    T: Clone + Ord + std::hash::Hash,
    F: Fn(&T) -> Vec<T>,
{
    if let Some(done) = memo.get(&start) {
        return done.clone();
    }
    let next = moves(&start);
    let out = if next.is_empty() {
        BTreeSet::from([start.clone()])
    } else {
        next.into_iter().flat_map(|n| terminals(n, moves, memo)).collect()
    };
    memo.insert(start, out.clone());
    out
}

fn beta_removals(b: &BetaSet, d: u32) -> Vec<BetaSet> {
    let rep = b.elements();
    rep.iter()
        .filter(|&&x| x >= d && !rep.contains(&(x - d)))
        .map(|&x| {
            let moved: Vec<u32> = rep.iter().map(|&y| if y == x { x - d } else { y }).collect();
            BetaSet::normalize(&moved).expect("distinct entries")
        })
        .collect()
}

/// `cross`: the entry lands in the other row (a cohook) instead of its own.
fn symbol_removals(sym: &Symbol, d: u32, cross: bool) -> Vec<Symbol> {
    let (s, t) = (sym.top().to_vec(), sym.bottom().to_vec());
    let mut out = Vec::new();
    for (row, other, swapped) in [(&s, &t, false), (&t, &s, true)] {
        for &x in row.iter().filter(|&&x| x >= d) {
            let target = if cross { other } else { row };
            if target.contains(&(x - d)) {
                continue;
            }
            let (a, b) = if cross {
                let a: Vec<u32> = row.iter().copied().filter(|&y| y != x).collect();
                let mut b = other.clone();
                b.push(x - d);
                (a, b)
            } else {
                let a: Vec<u32> = row.iter().map(|&y| if y == x { x - d } else { y }).collect();
                (a, other.clone())
            };
            let sym = if swapped { Symbol::normalize(&b, &a) } else { Symbol::normalize(&a, &b) };
            out.push(sym.expect("distinct entries"));
        }
    }
    out
}

/// Symbols of rank at most `max_rank`, any defect.
fn symbols_up_to(max_rank: u32) -> Vec<Symbol> {
    let mut out = Vec::new();
    for n in 0..=max_rank {
        let mut k = 0;
        while k * k / 4 <= n {
            out.extend(enumerate_symbols(n, k));
            k += 1;
        }
    }
    out
}

/// All maximal `d`-hook removal sequences end at one core, and it equals the
/// abacus result. Symbols are checked for cores and cocores.
pub fn check_core_confluence(max_rank: u32, max_d: u32) -> CheckReport {
    let params = format!("max_rank={max_rank}, max_d={max_d}");
    CheckReport::new("core_confluence", params, core_confluence(max_rank, max_rank, max_d))
}

/// As [`check_core_confluence`] with separate bounds for β-sets and symbols.
pub fn check_core_confluence_split(max_beta_rank: u32, max_symbol_rank: u32, max_d: u32) -> CheckReport {
    let params = format!("beta_rank<={max_beta_rank}, symbol_rank<={max_symbol_rank}, max_d={max_d}");
    CheckReport::new(
        "core_confluence",
        params,
        core_confluence(max_beta_rank, max_symbol_rank, max_d),
    )
}

fn core_confluence(beta_rank: u32, symbol_rank: u32, max_d: u32) -> Option<String> {
    let symbols = symbols_up_to(symbol_rank);
    for d in 1..=max_d {
        let mut memo = HashMap::new();
        for m in 0..=beta_rank {
            for p in Partition::all(m) {
                let b = p.to_beta();
                let ends = terminals(b.clone(), &|x: &BetaSet| beta_removals(x, d), &mut memo);
                if ends.len() != 1 || ends.first() != Some(&b.d_core(d)) {
                    return Some(format!("β-set {b}, d={d}: removal ends {ends:?}, abacus {}", b.d_core(d)));
                }
            }
        }
        for cross in [false, true] {
            let mut memo = HashMap::new();
            for sym in &symbols {
                let moves = |x: &Symbol| symbol_removals(x, d, cross);
                let ends = terminals(sym.clone(), &moves, &mut memo);
                let fast = if cross { sym.d_cocore(d) } else { sym.d_core(d) };
                if ends.len() != 1 || ends.first() != Some(&fast) {
                    let what = if cross { "cocore" } else { "core" };
                    let ends: Vec<String> = ends.iter().map(ToString::to_string).collect();
                    return Some(format!("symbol {sym}, d={d} {what}: removal ends {ends:?}, abacus {fast}"));
                }
            }
        }
    }
    None
}

/// Existence and maximum lemmas for β-sets and symbols against the
/// hook-addition enumerations, with an extra pass over all partitions.
pub fn check_lemmas(max_rank: u32, max_k: u32) -> CheckReport {
    let params = format!("max_rank={max_rank}, max_k={max_k}");
    CheckReport::new("lemmas", params, lemmas(max_rank, max_k))
}

fn lemmas(max_rank: u32, max_k: u32) -> Option<String> {
    for m in 0..=max_rank {
        let brute: Vec<BetaSet> = Partition::all(m).iter().map(Partition::to_beta).collect();
        for k in 0..=max_k {
            let list = enumerate_beta_sets(m, k);
            if list.is_empty() == beta_set_exists(m, k) {
                return Some(format!("β-sets m={m}, k={k}: enumeration size {}", list.len()));
            }
            let direct: BTreeSet<&BetaSet> = brute.iter().filter(|b| b.defect() == k).collect();
            if direct != list.iter().collect() {
                return Some(format!("β-sets m={m}, k={k}: hook enumeration differs from partitions"));
            }
            let max = list.iter().map(BetaSet::class_max).max();
            if max != beta_max_bound(m, k) {
                return Some(format!("β-sets m={m}, k={k}: max {max:?}, closed form {:?}", beta_max_bound(m, k)));
            }
        }
        for k in 0..=max_k {
            let list = enumerate_symbols(m, k);
            if list.iter().any(|s| s.rank() != m || s.defect() != k) {
                return Some(format!("symbols n={m}, k={k}: enumeration left its stratum"));
            }
            let r0 = (k * k / 4) as i64;
            let expected = if i64::from(m) < r0 {
                0
            } else if k == 0 {
                // rows are unordered at defect 0
                let diagonal = if m % 2 == 0 { Partition::all(m / 2).len() } else { 0 };
                (bipartitions(m) + diagonal) / 2
            } else {
                bipartitions(m - r0 as u32)
            };
            if list.len() != expected {
                return Some(format!("symbols n={m}, k={k}: {} found, {expected} bipartitions", list.len()));
            }
            let max = list.iter().map(Symbol::class_max).max();
            if max != symbol_max_bound(m, k) {
                return Some(format!("symbols n={m}, k={k}: max {max:?}, closed form {:?}", symbol_max_bound(m, k)));
            }
        }
    }
    None
}

fn bipartitions(n: u32) -> usize {
    (0..=n).map(|a| Partition::all(a).len() * Partition::all(n - a).len()).sum()
}

/// `S_c` by quantifying over every vertex of the facet closure:
/// `i < s(s-1) + d/2` and `i > n - d/2 - s'(s'-1)` for all admissible `i`.
pub fn check_sc_unfolded(n: u32, d: u64) -> Result<CheckReport> {
    if d == 0 || d % 2 == 1 {
        return Err(invalid(format!("d must be positive and even, got {d}")));
    }
    let half = i64::try_from(d / 2).map_err(|_| invalid("d too large"))?;
    let unfolded: Vec<SpType> = sp_types(n)
        .into_iter()
        .filter(|t| {
            let (s, s2) = (i64::from(t.s), i64::from(t.s2));
            let (lo, hi) = (s * (s + 1), i64::from(n) - s2 * (s2 + 1));
            (lo..=hi).all(|i| i < s * (s - 1) + half && i > i64::from(n) - half - s2 * (s2 - 1))
        })
        .collect();
    let closed = sp_sc(n, d)?;
    let counterexample = (unfolded != closed).then(|| {
        let show = |v: &[SpType]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        format!("unfolded {{{}}}, closed form {{{}}}", show(&unfolded), show(&closed))
    });
    Ok(CheckReport::new("sc_unfolded", format!("n={n}, d={d}"), counterexample))
}

/// Class of every cuspidal defect in the `(d,1)`-series of `Sp_2r`, built as
/// the finest common coarsening of the 1-series and `d`-series.
fn defect_classes(rank: u32, d: u64) -> Result<HashMap<u32, usize>> {
    let g = FiniteGroupSpec::simple(Family::C, rank)?;
    let (labels, classes) = coarsening(&g, d)?;
    let mut out = HashMap::new();
    for (ch, class) in labels.iter().zip(classes) {
        if let Some(crate::series::FactorLabel::Symbol { symbol, .. }) = ch.labels.first() {
            // the 1-core of a symbol is its cuspidal symbol
            out.entry(symbol.d_core(1).defect()).or_insert(class);
        }
    }
    Ok(out)
}

/// Characters of `g` and a class id for each, merging whatever shares a
/// 1-series or a `d`-series.
fn coarsening(g: &FiniteGroupSpec, d: u64) -> Result<(Vec<crate::series::UnipotentChar>, Vec<usize>)> {
    let one = one_series_partition(g)?;
    let dd = d_series_partition(g, d)?;
    let chars: Vec<_> = one.classes.iter().flatten().cloned().collect();
    let index: HashMap<_, usize> = chars.iter().cloned().zip(0..).collect();
    let mut uf = UnionFind::<usize>::new(chars.len());
    for class in one.classes.iter().chain(&dd.classes) {
        for pair in class.windows(2) {
            uf.union(index[&pair[0]], index[&pair[1]]);
        }
    }
    let labels = uf.into_labeling();
    Ok((chars, labels))
}

fn as_set_partition<T: Ord + Clone>(classes: &[Vec<T>]) -> BTreeSet<BTreeSet<T>> {
    classes.iter().map(|c| c.iter().cloned().collect()).collect()
}

/// Transitive closure of the vertex relations over all vertices of the
/// standard apartment, against [`sp_block_partition`]. Skipped for `ℓ = 2`.
pub fn check_block_closure(n: u32, q: u64, ell: u64) -> Result<CheckReport> {
    let params = format!("n={n}, q={q}, ell={ell}");
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    if !is_prime(ell) {
        return Err(invalid(format!("ℓ = {ell} is not prime")));
    }
    if q % ell == 0 {
        return Err(invalid(format!("ℓ = {ell} divides q = {q}")));
    }
    let fast = sp_block_partition(n, q, ell)?;
    if ell == 2 {
        let c = (fast.regime != Regime::Ell2 || !fast.is_single_block())
            .then(|| "ℓ = 2 did not give a single block".to_owned());
        return Ok(CheckReport::new("block_closure", params + " (ell=2: single block only)", c));
    }
    let d = multiplicative_order(q, ell)?;
    let per_rank: Vec<HashMap<u32, usize>> = (0..=n)
        .map(|r| if r == 0 { Ok(HashMap::new()) } else { defect_classes(r, d) })
        .collect::<Result<_>>()?;
    let same = |r: u32, a: u32, b: u32| a == b || (r > 0 && per_rank[r as usize].get(&a) == per_rank[r as usize].get(&b));

    let types = sp_types(n);
    let mut uf = UnionFind::<usize>::new(types.len());
    for (a, &t) in types.iter().enumerate() {
        for (b, &u) in types.iter().enumerate().skip(a + 1) {
            for i in 0..=n {
                let inside = sp_type_vertex_range(n, t)?.contains(&i) && sp_type_vertex_range(n, u)?.contains(&i);
                let (t1, t2) = t.defects();
                let (u1, u2) = u.defects();
                let related = inside && same(i, t1, u1) && same(n - i, t2, u2);
                if related != sp_sim_at_vertex(n, d, i, t, u)? {
                    let c = format!("vertex {i}: {t} vs {u}, oracle {related}");
                    return Ok(CheckReport::new("block_closure", params, Some(c)));
                }
                if related {
                    uf.union(a, b);
                }
            }
        }
    }
    let labels = uf.into_labeling();
    let mut closure: HashMap<usize, Vec<TypeLabel>> = HashMap::new();
    for (t, l) in types.iter().zip(labels) {
        closure.entry(l).or_default().push(TypeLabel::Sp(*t));
    }
    let closure: Vec<Vec<TypeLabel>> = closure.into_values().collect();
    let c = (as_set_partition(&closure) != as_set_partition(&fast.classes))
        .then(|| format!("closure {} vs partition {}", render(&closure), render(&fast.classes)));
    Ok(CheckReport::new("block_closure", params, c))
}

fn render<T: fmt::Display + Ord + Clone>(classes: &[Vec<T>]) -> String {
    let sets = as_set_partition(classes);
    let parts: Vec<String> = sets
        .iter()
        .map(|c| format!("{{{}}}", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")))
        .collect();
    parts.join(" ")
}

/// The finest common coarsening of the 1-series and `d`-series partitions
/// equals the `(d,1)`-series partition.
pub fn check_d1_minimality(g: &FiniteGroupSpec, d: u64) -> Result<CheckReport> {
    let params = format!("g={g}, d={d}");
    let (chars, labels) = coarsening(g, d)?;
    let mut merged: HashMap<usize, Vec<_>> = HashMap::new();
    for (ch, l) in chars.into_iter().zip(labels) {
        merged.entry(l).or_default().push(ch);
    }
    let merged: Vec<Vec<_>> = merged.into_values().collect();
    let fast: D1Partition = d1_series_partition(g, d)?;
    let c = (as_set_partition(&merged) != as_set_partition(&fast.classes)).then(|| {
        format!("coarsening has {} classes, closed form {}", merged.len(), fast.classes.len())
    });
    Ok(CheckReport::new("d1_minimality", params, c))
}

/// The classical simple factors of rank at most `max_rank` swept by the
/// minimality check.
pub fn classical_factors(max_rank: u32) -> Vec<SimpleFactor> {
    let mut out = Vec::new();
    for family in [Family::A, Family::TwistedA, Family::B, Family::C, Family::D, Family::TwistedD] {
        let lo = if matches!(family, Family::D | Family::TwistedD) { 2 } else { 1 };
        for r in lo..=max_rank {
            out.push(SimpleFactor::new(family, r).expect("valid classical factor"));
        }
    }
    out
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_enumeration_examples() {
        assert_eq!(enumerate_beta_sets(1, 1), vec![BetaSet::normalize(&[1]).unwrap()]);
        assert!(!enumerate_beta_sets(3, 1).is_empty());
        assert!(enumerate_beta_sets(2, 1).is_empty());
        assert!(enumerate_beta_sets(2, 2).is_empty());
        assert_eq!(enumerate_beta_sets(0, 0), vec![BetaSet::empty()]);
        let total: usize = (0..8).map(|k| enumerate_beta_sets(6, k).len()).sum();
        assert_eq!(total, Partition::all(6).len());
    }

    #[test]
    fn symbol_enumeration_examples() {
        assert_eq!(enumerate_symbols(2, 3), vec![Symbol::normalize(&[0, 1, 2], &[]).unwrap()]);
        assert_eq!(enumerate_symbols(2, 1).len(), 5);
        assert!(enumerate_symbols(1, 3).is_empty());
        assert_eq!(enumerate_symbols(0, 0).len(), 1);
    }

    #[test]
    fn single_bead_cores() {
        for x in 1..12u32 {
            for d in 1..5 {
                let b = BetaSet::normalize(&[x]).unwrap();
                let mut memo = HashMap::new();
                let ends = terminals(b, &|y: &BetaSet| beta_removals(y, d), &mut memo);
                assert_eq!(ends.len(), 1);
                assert_eq!(ends.first().unwrap().is_empty(), x % d == 0);
            }
        }
    }

    #[test]
    fn small_checks_pass() {
        assert!(check_core_confluence(4, 3).passed);
        assert!(check_core_confluence(0, 5).passed);
        let r = check_lemmas(6, 4);
        assert!(r.passed, "{r}");
    }

    #[test]
    fn sc_unfolded_examples() {
        assert!(check_sc_unfolded(4, 6).unwrap().passed);
        assert!(check_sc_unfolded(2, 2).unwrap().passed);
        assert!(check_sc_unfolded(3, 10).unwrap().passed);
        assert!(check_sc_unfolded(3, 3).is_err());
    }

    #[test]
    fn closure_examples() {
        let r = check_block_closure(4, 3, 7).unwrap();
        assert!(r.passed, "{r}");
        assert!(check_block_closure(2, 3, 5).unwrap().passed);
        assert!(check_block_closure(1, 2, 3).unwrap().passed);
        assert!(check_block_closure(2, 3, 2).unwrap().passed);
        assert!(check_block_closure(2, 9, 3).is_err());
    }

    #[test]
    fn minimality_examples() {
        for (g, d) in [("C2", 2), ("A3", 2), ("C3", 4), ("2A3", 3), ("D4", 2), ("2D3", 6)] {
            let r = check_d1_minimality(&g.parse().unwrap(), d).unwrap();
            assert!(r.passed, "{r}");
        }
        let r = check_d1_minimality(&"C2".parse().unwrap(), 2).unwrap();
        assert!(r.passed);
        assert_eq!(d1_series_partition(&"C2".parse().unwrap(), 2).unwrap().len(), 1);
    }

    #[test]
    fn report_display() {
        let r = CheckReport::new("x", "a=1".into(), Some("bad".into()));
        assert!(!r.passed);
        assert_eq!(r.to_string(), "FAIL x [a=1]: bad");
    }
}
