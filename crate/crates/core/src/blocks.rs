//! Depth-zero unipotent `ℓ`-blocks of `Sp_2n(F)` and `SL_n(F)`.
//!
//! The unipotent depth-zero types of `Sp_2n(F)` are indexed by pairs
//! `(s, s')` with `s(s+1) + s'(s'+1) <= n`: the type `t(s, s')` is the
//! cuspidal unipotent character of `Sp_{2s(s+1)} × Sp_{2s'(s'+1)}` placed on
//! the facet where those are the reductive quotient. Only the `n + 1` vertex
//! classes `x_0 … x_n` are modelled; `x_i` has reductive quotient
//! `Sp_2i × Sp_2(n-i)`.

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{is_prime, multiplicative_order, order_poly};
use crate::error::invalid;
use crate::group::{Family, FiniteGroupSpec, SimpleFactor};
use crate::series::{d1_class_key, SeriesKey};
use crate::Result;

/// A pair `(s, s')` indexing a unipotent depth-zero type of `Sp_2n(F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpType {
    pub s: u32,
    pub s2: u32,
}

impl SpType {
    pub fn new(s: u32, s2: u32) -> Self {
        Self { s, s2 }
    }

    /// `s(s+1) + s'(s'+1)`, the smallest `n` for which the type exists.
    pub fn weight(self) -> u64 {
        tri(self.s) + tri(self.s2)
    }

    /// Defect of the cuspidal symbol `(0 1 … 2s / −)` of each factor.
    pub fn defects(self) -> (u32, u32) {
        (2 * self.s + 1, 2 * self.s2 + 1)
    }
}

impl fmt::Display for SpType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.s2)
    }
}

/// `s(s+1)`.
fn tri(s: u32) -> u64 {
    u64::from(s) * (u64::from(s) + 1)
}

/// A unipotent depth-zero type of `Sp_2n(F)` or `SL_n(F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    Sp(SpType),
    /// The single unipotent type of `SL_n(F)`: a chamber with the trivial
    /// character of its (torus) reductive quotient.
    Chamber,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::Sp(t) => write!(f, "{t}"),
            TypeLabel::Chamber => f.write_str("(C,1)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `ℓ = 2`: the whole unipotent category is one block.
    Ell2,
    /// `ℓ` divides no reductive quotient: every type is its own block.
    Banal,
    DOdd,
    DEven,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Ell2 => "ell2",
            Regime::Banal => "banal",
            Regime::DOdd => "d_odd",
            Regime::DEven => "d_even",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PadicGroup {
    Sp,
    Sl,
}

/// A partition of the unipotent depth-zero types into `ℓ`-blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    pub group: PadicGroup,
    pub n: u32,
    pub q: u64,
    pub ell: u64,
    pub d: u64,
    pub regime: Regime,
    pub classes: Vec<Vec<TypeLabel>>,
    /// Index of the class of `t(0,0)` when it is merged from several types by
    /// the even-`d` rule. `None` when that class is vacuous (every type is
    /// isolated) or the regime does not merge.
    pub merged_class: Option<usize>,
    /// Whether `ℓ` satisfies the goodness condition for every reductive
    /// quotient (odd `ℓ`, as only classical types occur).
    pub ell_good: bool,
}

impl BlockPartition {
    /// The whole unipotent category is a single block.
    pub fn is_single_block(&self) -> bool {
        self.classes.len() == 1
    }

    pub fn class_of(&self, label: TypeLabel) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&label))
    }
}

/// `S¹(G)`: all `(s, s')` with `s(s+1) + s'(s'+1) <= n`, sorted.
pub fn sp_types(n: u32) -> Vec<SpType> {
    let n = u64::from(n);
    let mut out = Vec::new();
    let mut s = 0;
    while tri(s) <= n {
        let mut s2 = 0;
        while tri(s) + tri(s2) <= n {
            out.push(SpType::new(s, s2));
            s2 += 1;
        }
        s += 1;
    }
    out
}

/// The reductive quotient `Sp_2i × Sp_2(n-i)` at vertex `x_i`, without
/// rank-0 factors.
pub fn sp_vertex_quotient(n: u32, i: u32) -> Result<FiniteGroupSpec> {
    if i > n {
        return Err(invalid(format!("vertex index {i} exceeds n = {n}")));
    }
    let factors = [i, n - i]
        .into_iter()
        .filter(|&r| r > 0)
        .map(|r| SimpleFactor::new(Family::C, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteGroupSpec::new(factors))
}

/// The vertices `x_i` lying in the closure of the facet of `t`:
/// `s(s+1) <= i <= n - s'(s'+1)`.
pub fn sp_type_vertex_range(n: u32, t: SpType) -> Result<RangeInclusive<u32>> {
    if t.weight() > u64::from(n) {
        return Err(invalid(format!("{t} is not a type of Sp_{}", 2 * n)));
    }
    let lo = tri(t.s) as u32;
    let hi = n - tri(t.s2) as u32;
    Ok(lo..=hi)
}

/// Whether the series of the cuspidal pair of defect `defect_a` and
/// `defect_b` lie in the same `(d,1)`-series of `Sp_2r`.
fn same_d1_class(rank: u32, d: u64, defect_a: u32, defect_b: u32) -> Result<bool> {
    if defect_a == defect_b {
        return Ok(true);
    }
    if rank == 0 {
        return Ok(false);
    }
    let factor = SimpleFactor::new(Family::C, rank)?;
    let a = d1_class_key(&factor, d, &SeriesKey::Defect(defect_a), None)?;
    let b = d1_class_key(&factor, d, &SeriesKey::Defect(defect_b), None)?;
    Ok(a == b)
}

/// The relation `t ≃_{x_i} u`: equal, or both facets contain `x_i` and the
/// Harish-Chandra series they induce in `Sp_2i × Sp_2(n-i)` lie in one
/// `(d,1)`-series.
pub fn sp_sim_at_vertex(n: u32, d: u64, i: u32, t: SpType, u: SpType) -> Result<bool> {
    if i > n {
        return Err(invalid(format!("vertex index {i} exceeds n = {n}")));
    }
    if d == 0 {
        return Err(invalid("d must be positive"));
    }
    if t == u {
        return Ok(true);
    }
    let rt = sp_type_vertex_range(n, t)?;
    let ru = sp_type_vertex_range(n, u)?;
    if !rt.contains(&i) || !ru.contains(&i) {
        return Ok(false);
    }
    let (t1, t2) = t.defects();
    let (u1, u2) = u.defects();
    Ok(same_d1_class(i, d, t1, u1)? && same_d1_class(n - i, d, t2, u2)?)
}

/// `S_c`: the types forming a block on their own when `d` is even,
/// `s(s+1) + s'(s'-1) > n - d/2` and `s'(s'+1) + s(s-1) > n - d/2`.
pub fn sp_sc(n: u32, d: u64) -> Result<Vec<SpType>> {
    if d == 0 || d % 2 == 1 {
        return Err(invalid(format!("S_c needs a positive even d, got {d}")));
    }
    let rhs = i128::from(n) - i128::from(d / 2);
    let below = |s: u32| -> i128 { i128::from(s) * (i128::from(s) - 1) };
    Ok(sp_types(n)
        .into_iter()
        .filter(|t| {
            tri(t.s) as i128 + below(t.s2) > rhs && tri(t.s2) as i128 + below(t.s) > rhs
        })
        .collect())
}

fn check_ell(q: u64, ell: u64) -> Result<u64> {
    if !is_prime(ell) {
        return Err(invalid(format!("ℓ = {ell} is not prime")));
    }
    if q < 2 {
        return Err(invalid(format!("q = {q} must be at least 2")));
    }
    multiplicative_order(q, ell)
}

fn banal(g: &FiniteGroupSpec, d: u64, ell: u64) -> Result<bool> {
    Ok(!order_poly(g)?.divisible_by_prime(d, ell))
}

/// The `ℓ`-blocks of the unipotent depth-zero category of `Sp_2n(F)`.
pub fn sp_block_partition(n: u32, q: u64, ell: u64) -> Result<BlockPartition> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let d = check_ell(q, ell)?;
    let types = sp_types(n);
    let singletons = |ts: &[SpType]| -> Vec<Vec<TypeLabel>> {
        ts.iter().map(|&t| vec![TypeLabel::Sp(t)]).collect()
    };
    // every vertex quotient is a subgroup of Sp_2n(k), so ℓ is banal for all of
    // them exactly when it is banal for Sp_2n(k)
    let whole = FiniteGroupSpec::simple(Family::C, n)?;
    let (regime, classes, merged_class) = if ell == 2 {
        let all = types.iter().map(|&t| TypeLabel::Sp(t)).collect();
        (Regime::Ell2, vec![all], None)
    } else if banal(&whole, d, ell)? {
        (Regime::Banal, singletons(&types), None)
    } else if d % 2 == 1 {
        (Regime::DOdd, singletons(&types), None)
    } else {
        let isolated = sp_sc(n, d)?;
        let rest: Vec<TypeLabel> = types
            .iter()
            .filter(|t| !isolated.contains(t))
            .map(|&t| TypeLabel::Sp(t))
            .collect();
        let mut classes = singletons(&isolated);
        let merged = if rest.is_empty() {
            None
        } else {
            classes.push(rest);
            Some(())
        };
        classes.sort();
        let merged_class = merged.and_then(|_| classes.iter().position(|c| c.contains(&TypeLabel::Sp(SpType::new(0, 0)))));
        (Regime::DEven, classes, merged_class)
    };
    Ok(BlockPartition {
        group: PadicGroup::Sp,
        n,
        q,
        ell,
        d,
        regime,
        classes,
        merged_class,
        ell_good: ell != 2,
    })
}

/// The `ℓ`-blocks of the unipotent depth-zero category of `SL_n(F)`: always
/// a single block.
pub fn sl_block_partition(n: u32, q: u64, ell: u64) -> Result<BlockPartition> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let d = check_ell(q, ell)?;
    let regime = if ell == 2 {
        Regime::Ell2
    } else if n >= 2 && banal(&FiniteGroupSpec::simple(Family::A, n - 1)?, d, ell)? {
        Regime::Banal
    } else if d % 2 == 1 {
        Regime::DOdd
    } else {
        Regime::DEven
    };
    Ok(BlockPartition {
        group: PadicGroup::Sl,
        n,
        q,
        ell,
        d,
        regime,
        classes: vec![vec![TypeLabel::Chamber]],
        merged_class: None,
        ell_good: ell != 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: u32, s2: u32) -> SpType {
        SpType::new(s, s2)
    }

    #[test]
    fn types_examples() {
        assert_eq!(sp_types(2), vec![t(0, 0), t(0, 1), t(1, 0)]);
        assert_eq!(sp_types(4), vec![t(0, 0), t(0, 1), t(1, 0), t(1, 1)]);
        assert_eq!(sp_types(1), vec![t(0, 0)]);
        assert!(sp_types(6).contains(&t(2, 0)));
    }

    #[test]
    fn vertex_quotients() {
        assert_eq!(sp_vertex_quotient(4, 2).unwrap(), "C2 x C2".parse().unwrap());
        assert_eq!(sp_vertex_quotient(4, 0).unwrap(), "C4".parse().unwrap());
        assert_eq!(sp_vertex_quotient(4, 4).unwrap(), "C4".parse().unwrap());
        assert!(sp_vertex_quotient(4, 5).is_err());
    }

    #[test]
    fn vertex_ranges() {
        assert_eq!(sp_type_vertex_range(4, t(1, 1)).unwrap(), 2..=2);
        assert_eq!(sp_type_vertex_range(4, t(0, 0)).unwrap(), 0..=4);
        assert_eq!(sp_type_vertex_range(2, t(1, 0)).unwrap(), 2..=2);
        assert!(sp_type_vertex_range(2, t(1, 1)).is_err());
    }

    #[test]
    fn vertex_relation_examples() {
        assert!(sp_sim_at_vertex(4, 6, 2, t(1, 1), t(1, 1)).unwrap());
        assert!(sp_sim_at_vertex(2, 2, 2, t(1, 0), t(0, 0)).unwrap());
        assert!(!sp_sim_at_vertex(4, 6, 2, t(1, 1), t(0, 0)).unwrap());
        assert!(sp_sim_at_vertex(4, 6, 7, t(0, 0), t(0, 0)).is_err());
    }

    #[test]
    fn sc_examples() {
        assert!(sp_sc(2, 2).unwrap().is_empty());
        assert_eq!(sp_sc(4, 6).unwrap(), vec![t(1, 1)]);
        for n in 1..10 {
            assert_eq!(sp_sc(n, 2 * u64::from(n) + 2).unwrap(), sp_types(n));
        }
        assert!(sp_sc(4, 3).is_err());
    }

    #[test]
    fn sp_blocks_examples() {
        let b = sp_block_partition(2, 3, 2).unwrap();
        assert_eq!(b.regime, Regime::Ell2);
        assert_eq!(b.classes, vec![vec![
            TypeLabel::Sp(t(0, 0)),
            TypeLabel::Sp(t(0, 1)),
            TypeLabel::Sp(t(1, 0)),
        ]]);

        let b = sp_block_partition(4, 3, 7).unwrap();
        assert_eq!(b.d, 6);
        assert_eq!(b.regime, Regime::DEven);
        assert_eq!(b.classes.len(), 2);
        assert!(b.classes.contains(&vec![TypeLabel::Sp(t(1, 1))]));
        let merged = &b.classes[b.merged_class.unwrap()];
        assert_eq!(merged.len(), 3);

        // q = 4, ℓ = 3: d = 1
        let b = sp_block_partition(2, 4, 3).unwrap();
        assert_eq!(b.regime, Regime::DOdd);
        assert_eq!(b.classes.len(), 3);
        assert!(sp_block_partition(2, 9, 3).is_err());
        assert!(sp_block_partition(2, 5, 4).is_err());
    }

    #[test]
    fn sp_banal() {
        // q = 2, ℓ = 31: d = 5 and Φ5 first divides |Sp_2i(2)| at i = 5
        let b = sp_block_partition(4, 2, 31).unwrap();
        assert_eq!(b.d, 5);
        assert_eq!(b.regime, Regime::Banal);
        assert!(b.classes.iter().all(|c| c.len() == 1));
        // q = 3, ℓ = 41: d = 8 > 2n
        let b = sp_block_partition(3, 3, 41).unwrap();
        assert_eq!(b.regime, Regime::Banal);
        assert_eq!(b.merged_class, None);
    }

    #[test]
    fn sl_single_block() {
        for (n, q, ell) in [(3, 5, 2), (2, 7, 3), (1, 2, 3), (5, 4, 3)] {
            let b = sl_block_partition(n, q, ell).unwrap();
            assert!(b.is_single_block());
            assert_eq!(b.classes, vec![vec![TypeLabel::Chamber]]);
        }
        assert!(sl_block_partition(3, 6, 3).is_err());
    }
}
