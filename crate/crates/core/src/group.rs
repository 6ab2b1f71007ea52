//! Finite reductive groups described as products of simple factors, each
//! possibly obtained by restriction of scalars from a degree-`m` extension.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::invalid;
use crate::{Error, Result};

/// The exceptional simple types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExceptionalType {
    ThreeD4,
    G2,
    F4,
    E6,
    TwoE6,
    E7,
    E8,
}

impl ExceptionalType {
    pub const ALL: [ExceptionalType; 7] = [
        ExceptionalType::ThreeD4,
        ExceptionalType::G2,
        ExceptionalType::F4,
        ExceptionalType::E6,
        ExceptionalType::TwoE6,
        ExceptionalType::E7,
        ExceptionalType::E8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExceptionalType::ThreeD4 => "3D4",
            ExceptionalType::G2 => "G2",
            ExceptionalType::F4 => "F4",
            ExceptionalType::E6 => "E6",
            ExceptionalType::TwoE6 => "2E6",
            ExceptionalType::E7 => "E7",
            ExceptionalType::E8 => "E8",
        }
    }

    pub fn rank(self) -> u32 {
        match self {
            ExceptionalType::ThreeD4 => 4,
            ExceptionalType::G2 => 2,
            ExceptionalType::F4 => 4,
            ExceptionalType::E6 | ExceptionalType::TwoE6 => 6,
            ExceptionalType::E7 => 7,
            ExceptionalType::E8 => 8,
        }
    }
}

impl FromStr for ExceptionalType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnsupportedType(format!("unknown exceptional type {s:?}")))
    }
}

impl fmt::Display for ExceptionalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Type of a simple factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    TwistedA,
    B,
    C,
    D,
    TwistedD,
    Exceptional(ExceptionalType),
    Torus,
}

impl Family {
    pub fn is_classical(self) -> bool {
        !matches!(self, Family::Exceptional(_))
    }

    /// Families whose unipotent characters are labelled by symbols.
    pub fn uses_symbols(self) -> bool {
        matches!(self, Family::B | Family::C | Family::D | Family::TwistedD)
    }

    fn prefix(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::TwistedA => "2A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::TwistedD => "2D",
            Family::Exceptional(t) => t.name(),
            Family::Torus => "T",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "2A" => Family::TwistedA,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "2D" => Family::TwistedD,
            "T" | "TORUS" => Family::Torus,
            other => Family::Exceptional(other.parse()?),
        })
    }
}

/// One simple factor `Res_{k_m/k}(G)` of type `family` and rank `rank`,
/// with `ext_degree = m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimpleFactor {
    pub family: Family,
    pub rank: u32,
    pub ext_degree: u32,
}

impl SimpleFactor {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        Self::with_extension(family, rank, 1)
    }

    pub fn with_extension(family: Family, rank: u32, ext_degree: u32) -> Result<Self> {
        if ext_degree == 0 {
            return Err(invalid("extension degree must be at least 1"));
        }
        let rank = match family {
            Family::Exceptional(t) => {
                if rank != 0 && rank != t.rank() {
                    return Err(invalid(format!("{t} has rank {}, not {rank}", t.rank())));
                }
                t.rank()
            }
            Family::Torus => rank,
            _ if rank == 0 => return Err(invalid(format!("{} needs rank >= 1", family.prefix()))),
            _ => rank,
        };
        Ok(Self { family, rank, ext_degree })
    }

    /// The trivial group, modelled as the rank-0 torus.
    pub fn trivial() -> Self {
        Self { family: Family::Torus, rank: 0, ext_degree: 1 }
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Exceptional(t) => write!(f, "{t}")?,
            fam => write!(f, "{}{}", fam.prefix(), self.rank)?,
        }
        if self.ext_degree != 1 {
            write!(f, "@{}", self.ext_degree)?;
        }
        Ok(())
    }
}

impl FromStr for SimpleFactor {
    type Err = Error;

    /// `C2`, `2A3`, `2D4@2`, `T1`, `E8`, `3D4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, ext) = match s.split_once('@') {
            Some((b, e)) => (
                b,
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| invalid(format!("bad extension degree in {s:?}")))?,
            ),
            None => (s, 1),
        };
        if let Ok(t) = body.parse::<ExceptionalType>() {
            return Self::with_extension(Family::Exceptional(t), t.rank(), ext);
        }
        let split = body
            .char_indices()
            .skip_while(|(_, c)| c.is_ascii_digit())
            .find(|(_, c)| c.is_ascii_digit())
            .map(|(i, _)| i)
            .unwrap_or(body.len());
        let (fam, rank) = body.split_at(split);
        let family: Family = fam.parse()?;
        let rank = if rank.is_empty() && family == Family::Torus {
            1
        } else {
            rank.parse()
                .map_err(|_| invalid(format!("bad rank in factor {s:?}")))?
        };
        Self::with_extension(family, rank, ext)
    }
}

/// A finite reductive group given as a direct product of simple factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteGroupSpec {
    pub factors: Vec<SimpleFactor>,
}

impl FiniteGroupSpec {
    pub fn new(factors: Vec<SimpleFactor>) -> Self {
        Self { factors }
    }

    pub fn simple(family: Family, rank: u32) -> Result<Self> {
        Ok(Self::new(vec![SimpleFactor::new(family, rank)?]))
    }

    /// The trivial group (no factors).
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_classical(&self) -> bool {
        self.factors.iter().all(|f| f.family.is_classical())
    }
}

impl fmt::Display for FiniteGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" x "))
    }
}

impl FromStr for FiniteGroupSpec {
    type Err = Error;

    /// Factors separated by `x` or `*`, e.g. `C2 x C2` or `2A3*T1`. `1` is the
    /// trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Self::trivial());
        }
        let factors = s
            .split(|c| c == '*' || c == 'x' || c == 'X')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        if factors.is_empty() {
            return Err(invalid(format!("empty group description {s:?}")));
        }
        Ok(Self::new(factors))
    }
}
