//! The extended non-negative rationals `[0, ∞]` as a value quantale.
//!
//! Order is the usual one with `inf` on top, addition is truncated rational
//! addition, meet/join are min/max. The well-above relation is decidable:
//! `b ≻ a` iff `b > a` numerically or `b = inf`. The second clause makes
//! `inf ≻ inf` hold, which keeps the quantale axioms checkable on sampled
//! sets and makes the relation reflexive exactly at the top.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(BigRational),
    Infinity,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtRational::Finite(BigRational::one())
    }

    pub fn infinity() -> Self {
        ExtRational::Infinity
    }

    /// Build `p/q` from machine integers. Errors on `q = 0`.
    pub fn ratio(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Invalid("rational with zero denominator".into()));
        }
        Ok(ExtRational::Finite(BigRational::new(
            BigInt::from(p),
            BigInt::from(q),
        )))
    }

    /// Wrap an exact rational; negative values are rejected since the
    /// quantale carrier is `[0, ∞]`.
    pub fn from_big(r: BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::Invalid(format!("negative rational {r}")));
        }
        Ok(ExtRational::Finite(r))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRational::Finite(r) if r.is_zero())
    }

    pub fn add(&self, other: &ExtRational) -> ExtRational {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinity,
        }
    }

    pub fn meet(&self, other: &ExtRational) -> ExtRational {
        self.min(other).clone()
    }

    pub fn join(&self, other: &ExtRational) -> ExtRational {
        self.max(other).clone()
    }

    /// `b.well_above(a)` decides `b ≻ a`.
    pub fn well_above(&self, a: &ExtRational) -> bool {
        match (self, a) {
            (ExtRational::Infinity, _) => true,
            (ExtRational::Finite(b), ExtRational::Finite(a)) => b > a,
            (ExtRational::Finite(_), ExtRational::Infinity) => false,
        }
    }

    /// Exact half; `inf` halves to itself. The caller is responsible for
    /// checking positivity (see `QuantaleHandle::positive_halve`).
    pub fn halve(&self) -> ExtRational {
        match self {
            ExtRational::Finite(r) => {
                ExtRational::Finite(r / BigRational::from_integer(BigInt::from(2)))
            }
            ExtRational::Infinity => ExtRational::Infinity,
        }
    }

    /// Midpoint of two finite values; used by the law checker to build
    /// interpolation witnesses.
    pub fn midpoint(&self, other: &ExtRational) -> Option<ExtRational> {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => Some(ExtRational::Finite(
                (a + b) / BigRational::from_integer(BigInt::from(2)),
            )),
            _ => None,
        }
    }

    pub fn plus_one(&self) -> ExtRational {
        self.add(&ExtRational::one())
    }

    /// Canonical string form: `"p/q"` in lowest terms, or `"inf"`.
    pub fn canonical_string(&self) -> String {
        match self {
            ExtRational::Finite(r) => format!("{}/{}", r.numer(), r.denom()),
            ExtRational::Infinity => "inf".to_string(),
        }
    }

    /// Accepts `"inf"`, `"p/q"`, or a bare integer `"p"`; emission always
    /// uses `canonical_string`, so round-trips are byte-stable.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            return Ok(ExtRational::Infinity);
        }
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p, q),
            None => (s, "1"),
        };
        let p: BigInt = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
        let q: BigInt = q
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Self::from_big(BigRational::new(p, q))
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinity) => Ordering::Less,
            (ExtRational::Infinity, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}
