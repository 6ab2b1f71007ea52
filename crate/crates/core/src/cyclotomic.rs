//! Exact cyclotomic polynomial arithmetic and factored order polynomials.
//!
//! [`CycPoly`] is generic over the coefficient ring; anything implementing
//! [`Coefficient`] (`i64`, `i128`, `BigInt`, …) works. Order polynomials of
//! groups are only ever kept factored, as a [`CycFactorization`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_prime::nt_funcs::{factorize64, is_prime64};
use num_traits::{Num, Zero};
use serde::{Deserialize, Serialize};

use crate::error::invalid;
use crate::group::{Family, FiniteGroupSpec, SimpleFactor};
use crate::{Error, Result};

/// Coefficient ring for [`CycPoly`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> {}

impl<T> Coefficient for T where T: Clone + PartialEq + fmt::Debug + Num + Neg<Output = T> {}

/// A polynomial with coefficients in ascending degree, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> CycPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^deg`.
    pub fn monomial(c: T, deg: usize) -> Self {
        let mut coeffs = vec![T::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut p = Self::monomial(T::one(), n);
        p.coeffs[0] = p.coeffs[0].clone() - T::one();
        Self::new(p.coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `p(x^a)`.
    pub fn substitute_power(&self, a: usize) -> Self {
        assert!(a >= 1, "substitution exponent must be positive");
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut coeffs = vec![T::zero(); deg * a + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * a] = c.clone();
        }
        Self::new(coeffs)
    }

    /// `p(-x)`.
    pub fn negate_x(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Quotient and remainder by a divisor with leading coefficient `±1`.
    ///
    /// Returns `None` for other divisors (exact division would need a field).
    pub fn div_rem_monic(&self, divisor: &Self) -> Option<(Self, Self)> {
        let lead = divisor.leading()?.clone();
        let unit = if lead == T::one() {
            T::one()
        } else if lead == -T::one() {
            -T::one()
        } else {
            return None;
        };
        let dd = divisor.degree()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() * unit.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
            }
            quot[i] = c;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient, or `None` if `divisor` is not monic up to sign or does
    /// not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_monic(divisor)?;
        r.is_zero().then_some(q)
    }
}

impl<T: Coefficient> Add for &CycPoly<T> {
    type Output = CycPoly<T>;

    fn add(self, rhs: Self) -> CycPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        CycPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    let b = rhs.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<T: Coefficient> Neg for &CycPoly<T> {
    type Output = CycPoly<T>;

    fn neg(self) -> CycPoly<T> {
        CycPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Coefficient> Sub for &CycPoly<T> {
    type Output = CycPoly<T>;

    fn sub(self, rhs: Self) -> CycPoly<T> {
        self + &(-rhs)
    }
}

impl<T: Coefficient> Mul for &CycPoly<T> {
    type Output = CycPoly<T>;

    fn mul(self, rhs: Self) -> CycPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return CycPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        CycPoly::new(out)
    }
}

impl<T: Coefficient + fmt::Display> fmt::Display for CycPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The `n`-th cyclotomic polynomial, by iterated exact division of `x^n - 1`.
pub fn cyclotomic_poly<T: Coefficient>(n: u64) -> Result<CycPoly<T>> {
    if n == 0 {
        return Err(invalid("cyclotomic index must be positive"));
    }
    let divs = divisors(n);
    let mut table: BTreeMap<u64, CycPoly<T>> = BTreeMap::new();
    for &e in &divs {
        let mut p = CycPoly::<T>::x_pow_minus_one(e as usize);
        for (&f, phi) in table.iter().filter(|(&f, _)| e % f == 0) {
            debug_assert!(f < e);
            p = p.exact_div(phi).expect("cyclotomic factors divide x^n - 1");
        }
        table.insert(e, p);
    }
    Ok(table.remove(&n).expect("n divides itself"))
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(m)) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Whether `ell` is prime.
pub fn is_prime(ell: u64) -> bool {
    is_prime64(ell)
}

/// The order of `q` modulo the prime `ell`.
pub fn multiplicative_order(q: u64, ell: u64) -> Result<u64> {
    if !is_prime64(ell) {
        return Err(invalid(format!("{ell} is not prime")));
    }
    if q % ell == 0 {
        return Err(invalid(format!("{ell} divides q = {q}")));
    }
    let mut order = ell - 1;
    for (p, _) in factorize64(ell - 1) {
        while order % p == 0 && powmod(q, order / p, ell) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// The Ennola index `d'`: `Φ_d(-x) = ±Φ_{d'}(x)`.
pub fn d_prime(d: u64) -> u64 {
    assert!(d >= 1, "cyclotomic index must be positive");
    match d % 4 {
        1 | 3 => 2 * d,
        2 => d / 2,
        _ => d,
    }
}

/// A polynomial `x^x_power · ∏ Φ_e^{mult}` kept in factored form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycFactorization {
    pub x_power: u64,
    pub factors: BTreeMap<u64, u32>,
}

impl CycFactorization {
    pub fn one() -> Self {
        Self::default()
    }

    /// `Φ_e` for every divisor `e` of `j`: the factorization of `x^j - 1`.
    pub fn x_pow_minus_one(j: u64) -> Self {
        let mut out = Self::one();
        for e in divisors(j) {
            out.push(e, 1);
        }
        out
    }

    pub fn push(&mut self, index: u64, mult: u32) {
        if mult > 0 {
            *self.factors.entry(index).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, index: u64) -> u32 {
        self.factors.get(&index).copied().unwrap_or(0)
    }

    pub fn contains(&self, index: u64) -> bool {
        self.multiplicity(index) > 0
    }

    pub fn is_one(&self) -> bool {
        self.x_power == 0 && self.factors.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.x_power += other.x_power;
        for (&e, &m) in &other.factors {
            out.push(e, m);
        }
        out
    }

    /// Apply `e ↦ f(e)` to every cyclotomic index.
    pub fn map_indices(&self, f: impl Fn(u64) -> u64) -> Self {
        let mut out = Self { x_power: self.x_power, factors: BTreeMap::new() };
        for (&e, &m) in &self.factors {
            out.push(f(e), m);
        }
        out
    }

    /// The factorization of `p(x^a)`.
    pub fn substitute_power(&self, a: u64) -> Self {
        let mut out = Self { x_power: self.x_power * a, factors: BTreeMap::new() };
        for (&e, &m) in &self.factors {
            for (&f, &k) in &compose_factorization(e, a).factors {
                out.push(f, k * m);
            }
        }
        out
    }

    /// Multiply the factors out.
    pub fn expand<T: Coefficient>(&self) -> CycPoly<T> {
        let mut acc = CycPoly::monomial(T::one(), self.x_power as usize);
        for (&e, &m) in &self.factors {
            let phi = cyclotomic_poly::<T>(e).expect("indices are positive");
            for _ in 0..m {
                acc = &acc * &phi;
            }
        }
        acc
    }

    /// Whether `ℓ` divides the value at `q`, for a prime `ℓ ∤ q` with
    /// `d = ord_ℓ(q)`: some `Φ_e` with `e ∈ {d, dℓ, dℓ², …}` must occur.
    pub fn divisible_by_prime(&self, d: u64, ell: u64) -> bool {
        self.factors.keys().any(|&e| {
            if e % d != 0 {
                return false;
            }
            let mut r = e / d;
            while r % ell == 0 {
                r /= ell;
            }
            r == 1
        })
    }
}

impl fmt::Display for CycFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.x_power > 0 {
            parts.push(format!("x^{}", self.x_power));
        }
        for (&e, &m) in &self.factors {
            parts.push(if m == 1 { format!("Φ{e}") } else { format!("Φ{e}^{m}") });
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("·"))
        }
    }
}

/// `Φ_n(x^a) = ∏_{k | a'} Φ_{k·a_n·n}(x)` where `a = a_n·a'`, `a'` is coprime
/// to `n` and every prime of `a_n` divides `n`.
pub fn compose_factorization(n: u64, a: u64) -> CycFactorization {
    assert!(n >= 1 && a >= 1, "indices must be positive");
    let mut rest = a;
    let mut a_n = 1;
    loop {
        let g = rest.gcd(&n);
        if g == 1 {
            break;
        }
        rest /= g;
        a_n *= g;
    }
    let mut out = CycFactorization::one();
    for k in divisors(rest) {
        out.push(k * a_n * n, 1);
    }
    out
}

/// The factored polynomial order of one simple factor.
pub fn factor_order_poly(factor: &SimpleFactor) -> Result<CycFactorization> {
    let r = u64::from(factor.rank);
    let mut out = CycFactorization::one();
    match factor.family {
        Family::A | Family::TwistedA => {
            out.x_power = r * (r + 1) / 2;
            for j in 2..=r + 1 {
                out = out.mul(&CycFactorization::x_pow_minus_one(j));
            }
            if factor.family == Family::TwistedA {
                out = out.map_indices(d_prime);
            }
        }
        Family::B | Family::C => {
            out.x_power = r * r;
            for j in 1..=r {
                out = out.mul(&CycFactorization::x_pow_minus_one(2 * j));
            }
        }
        Family::D | Family::TwistedD => {
            out.x_power = r * (r - 1);
            for j in 1..r {
                out = out.mul(&CycFactorization::x_pow_minus_one(2 * j));
            }
            if factor.family == Family::D {
                out = out.mul(&CycFactorization::x_pow_minus_one(r));
            } else {
                for e in divisors(2 * r).into_iter().filter(|e| r % e != 0) {
                    out.push(e, 1);
                }
            }
        }
        Family::Torus => out.push(1, factor.rank),
        Family::Exceptional(t) => {
            return Err(Error::UnsupportedType(format!(
                "no order polynomial for exceptional type {t}"
            )))
        }
    }
    Ok(if factor.ext_degree > 1 {
        out.substitute_power(u64::from(factor.ext_degree))
    } else {
        out
    })
}

/// The factored polynomial order of a classical group.
pub fn order_poly(g: &FiniteGroupSpec) -> Result<CycFactorization> {
    g.factors
        .iter()
        .try_fold(CycFactorization::one(), |acc, f| Ok(acc.mul(&factor_order_poly(f)?)))
}

/// Whether `Φ_d` divides the polynomial order of `g`.
pub fn phi_d_divides_order(g: &FiniteGroupSpec, d: u64) -> Result<bool> {
    Ok(order_poly(g)?.contains(d))
}

/// Whether the prime `ell` divides `|G(q)|`.
pub fn ell_divides_order(g: &FiniteGroupSpec, q: u64, ell: u64) -> Result<bool> {
    let d = multiplicative_order(q, ell)?;
    let poly = order_poly(g)?;
    // ℓ ∤ q, so the x-power never contributes
    Ok(poly.divisible_by_prime(d, ell))
}
