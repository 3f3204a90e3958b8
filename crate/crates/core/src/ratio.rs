use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Exact;

/// A non-negative exact rational extended with `+∞`.
///
/// Strength values live here: `Ψ(S)` is infinite exactly when `S = V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRatio<W: Exact> {
    Finite(Ratio<W>),
    Infinite,
}

impl<W: Exact> ExtRatio<W> {
    pub fn new(numer: W, denom: W) -> Self {
        ExtRatio::Finite(Ratio::new(numer, denom))
    }

    pub fn zero() -> Self {
        ExtRatio::Finite(Ratio::from_integer(W::zero()))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRatio::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRatio::Finite(r) if *r.numer() == W::zero())
    }

    pub fn finite(&self) -> Option<Ratio<W>> {
        match self {
            ExtRatio::Finite(r) => Some(*r),
            ExtRatio::Infinite => None,
        }
    }

    /// True when this value is at least `lambda`.
    pub fn at_least(&self, lambda: &Ratio<W>) -> bool {
        match self {
            ExtRatio::Finite(r) => r >= lambda,
            ExtRatio::Infinite => true,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRatio::Finite(r) => r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN),
            ExtRatio::Infinite => f64::INFINITY,
        }
    }
}

impl<W: Exact> From<Ratio<W>> for ExtRatio<W> {
    fn from(r: Ratio<W>) -> Self {
        ExtRatio::Finite(r)
    }
}

impl<W: Exact> fmt::Display for ExtRatio<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRatio::Finite(r) if *r.denom() == W::one() => write!(f, "{}", r.numer()),
            ExtRatio::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            ExtRatio::Infinite => f.write_str("inf"),
        }
    }
}

/// Serialized form of an exact value: `{"num": p, "den": q}` or `"inf"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatioRepr {
    Finite { num: i64, den: i64 },
    Infinite(InfTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfTag {
    #[serde(rename = "inf")]
    Inf,
}

impl RatioRepr {
    pub fn from_ratio<W: Exact>(r: &Ratio<W>) -> Result<Self> {
        let overflow = || Error::Overflow("ratio does not fit in 64 bits");
        Ok(RatioRepr::Finite {
            num: r.numer().to_i64().ok_or_else(overflow)?,
            den: r.denom().to_i64().ok_or_else(overflow)?,
        })
    }

    pub fn from_ext<W: Exact>(r: &ExtRatio<W>) -> Result<Self> {
        match r {
            ExtRatio::Finite(r) => RatioRepr::from_ratio(r),
            ExtRatio::Infinite => Ok(RatioRepr::Infinite(InfTag::Inf)),
        }
    }

    pub fn to_ext<W: Exact>(&self) -> Option<ExtRatio<W>> {
        match *self {
            RatioRepr::Finite { num, den } if den != 0 => {
                Some(ExtRatio::Finite(Ratio::new(W::from_i64(num)?, W::from_i64(den)?)))
            }
            RatioRepr::Finite { .. } => None,
            RatioRepr::Infinite(_) => Some(ExtRatio::Infinite),
        }
    }
}
