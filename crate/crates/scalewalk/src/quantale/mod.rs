//! Value quantales: the extended rationals `[0, ∞]` and the free quantale
//! Ω(S) over a finite ground set, behind a common runtime-dispatched handle.
//!
//! A `QuantaleHandle` names a quantale instance; a `QuantaleValue` is an
//! element tagged by kind. All operations validate that values belong to the
//! handle they are used with and report `Error::KindMismatch` otherwise.

mod laws;
mod omega;
mod rational;

pub use laws::{check_quantale_laws, check_quantale_laws_with_add, LawCheck, LawMode, LawReport};
pub use omega::{enumerate_carrier, BitSet, OmegaElement, CARRIER_SIZES};
pub use rational::ExtRational;

use crate::error::{Error, Result};

/// Default cap on the ground size for carrier enumeration; `Ω(S)` has 168
/// elements at `|S| = 4` and explodes beyond.
pub const DEFAULT_GROUND_BUDGET: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuantaleValue {
    Rational(ExtRational),
    Omega(OmegaElement),
}

impl QuantaleValue {
    pub fn rational(p: u64, q: u64) -> Result<Self> {
        Ok(QuantaleValue::Rational(ExtRational::ratio(p, q)?))
    }

    pub fn as_rational(&self) -> Option<&ExtRational> {
        match self {
            QuantaleValue::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_omega(&self) -> Option<&OmegaElement> {
        match self {
            QuantaleValue::Omega(e) => Some(e),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuantaleHandle {
    ExtRational,
    /// Ω over a labelled ground set; the labels give antichain indices a
    /// stable serialized meaning.
    Omega { ground: Vec<String> },
}

impl QuantaleHandle {
    pub fn ext_rational() -> Self {
        QuantaleHandle::ExtRational
    }

    pub fn omega(ground: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for g in &ground {
            if !seen.insert(g) {
                return Err(Error::Invalid(format!("duplicate ground label {g:?}")));
            }
        }
        Ok(QuantaleHandle::Omega { ground })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            QuantaleHandle::ExtRational => "ext_rational",
            QuantaleHandle::Omega { .. } => "omega",
        }
    }

    pub fn ground(&self) -> Option<&[String]> {
        match self {
            QuantaleHandle::Omega { ground } => Some(ground),
            QuantaleHandle::ExtRational => None,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground().map_or(0, |g| g.len())
    }

    /// Check that a value belongs to this quantale.
    pub fn validate(&self, v: &QuantaleValue) -> Result<()> {
        match (self, v) {
            (QuantaleHandle::ExtRational, QuantaleValue::Rational(_)) => Ok(()),
            (QuantaleHandle::Omega { ground }, QuantaleValue::Omega(e)) => {
                if e.ground_size() == ground.len() {
                    Ok(())
                } else {
                    Err(Error::KindMismatch(format!(
                        "omega value over ground size {} used with ground size {}",
                        e.ground_size(),
                        ground.len()
                    )))
                }
            }
            _ => Err(Error::KindMismatch(format!(
                "{} value used with {} quantale",
                match v {
                    QuantaleValue::Rational(_) => "ext_rational",
                    QuantaleValue::Omega(_) => "omega",
                },
                self.kind()
            ))),
        }
    }

    fn validate2(&self, a: &QuantaleValue, b: &QuantaleValue) -> Result<()> {
        self.validate(a)?;
        self.validate(b)
    }

    pub fn zero(&self) -> QuantaleValue {
        match self {
            QuantaleHandle::ExtRational => QuantaleValue::Rational(ExtRational::zero()),
            QuantaleHandle::Omega { ground } => {
                QuantaleValue::Omega(OmegaElement::zero(ground.len()))
            }
        }
    }

    pub fn infinity(&self) -> QuantaleValue {
        match self {
            QuantaleHandle::ExtRational => QuantaleValue::Rational(ExtRational::infinity()),
            QuantaleHandle::Omega { ground } => {
                QuantaleValue::Omega(OmegaElement::infinity(ground.len()))
            }
        }
    }

    pub fn leq(&self, a: &QuantaleValue, b: &QuantaleValue) -> Result<bool> {
        self.validate2(a, b)?;
        Ok(match (a, b) {
            (QuantaleValue::Rational(a), QuantaleValue::Rational(b)) => a <= b,
            (QuantaleValue::Omega(a), QuantaleValue::Omega(b)) => a.leq(b),
            _ => unreachable!(),
        })
    }

    pub fn meet(&self, a: &QuantaleValue, b: &QuantaleValue) -> Result<QuantaleValue> {
        self.validate2(a, b)?;
        Ok(match (a, b) {
            (QuantaleValue::Rational(a), QuantaleValue::Rational(b)) => {
                QuantaleValue::Rational(a.meet(b))
            }
            (QuantaleValue::Omega(a), QuantaleValue::Omega(b)) => QuantaleValue::Omega(a.meet(b)),
            _ => unreachable!(),
        })
    }

    pub fn join(&self, a: &QuantaleValue, b: &QuantaleValue) -> Result<QuantaleValue> {
        self.validate2(a, b)?;
        Ok(match (a, b) {
            (QuantaleValue::Rational(a), QuantaleValue::Rational(b)) => {
                QuantaleValue::Rational(a.join(b))
            }
            (QuantaleValue::Omega(a), QuantaleValue::Omega(b)) => QuantaleValue::Omega(a.join(b)),
            _ => unreachable!(),
        })
    }

    /// Binary meet and join in one call.
    pub fn lattice_ops(
        &self,
        a: &QuantaleValue,
        b: &QuantaleValue,
    ) -> Result<(QuantaleValue, QuantaleValue)> {
        Ok((self.meet(a, b)?, self.join(a, b)?))
    }

    pub fn add(&self, a: &QuantaleValue, b: &QuantaleValue) -> Result<QuantaleValue> {
        self.validate2(a, b)?;
        Ok(match (a, b) {
            (QuantaleValue::Rational(a), QuantaleValue::Rational(b)) => {
                QuantaleValue::Rational(a.add(b))
            }
            (QuantaleValue::Omega(a), QuantaleValue::Omega(b)) => QuantaleValue::Omega(a.add(b)),
            _ => unreachable!(),
        })
    }

    /// `well_above(b, a)` decides `b ≻ a`.
    pub fn well_above(&self, b: &QuantaleValue, a: &QuantaleValue) -> Result<bool> {
        self.validate2(a, b)?;
        Ok(match (b, a) {
            (QuantaleValue::Rational(b), QuantaleValue::Rational(a)) => b.well_above(a),
            (QuantaleValue::Omega(b), QuantaleValue::Omega(a)) => b.well_above(a),
            _ => unreachable!(),
        })
    }

    /// Shorthand for `well_above(v, 0)`.
    pub fn is_positive(&self, v: &QuantaleValue) -> Result<bool> {
        self.well_above(v, &self.zero())
    }

    /// A positive `δ` with `δ + δ ≤ ε`, for positive `ε`. For the rationals
    /// this is `ε/2`; Ω has idempotent addition, so `ε` itself works.
    pub fn positive_halve(&self, eps: &QuantaleValue) -> Result<QuantaleValue> {
        self.validate(eps)?;
        if !self.is_positive(eps)? {
            return Err(Error::Precondition(
                "positive_halve needs a positive argument".into(),
            ));
        }
        Ok(match eps {
            QuantaleValue::Rational(r) => {
                if r.is_infinite() {
                    QuantaleValue::Rational(ExtRational::infinity())
                } else {
                    QuantaleValue::Rational(r.halve())
                }
            }
            QuantaleValue::Omega(e) => QuantaleValue::Omega(e.clone()),
        })
    }

    /// Meet of arbitrarily many values; the empty meet is ∞ (the top).
    pub fn meet_many<'a>(
        &self,
        values: impl IntoIterator<Item = &'a QuantaleValue>,
    ) -> Result<QuantaleValue> {
        let mut acc = self.infinity();
        for v in values {
            acc = self.meet(&acc, v)?;
        }
        Ok(acc)
    }

    /// Join of arbitrarily many values; the empty join is 0 (the bottom).
    pub fn join_many<'a>(
        &self,
        values: impl IntoIterator<Item = &'a QuantaleValue>,
    ) -> Result<QuantaleValue> {
        let mut acc = self.zero();
        for v in values {
            acc = self.join(&acc, v)?;
        }
        Ok(acc)
    }

    /// Enumerate the whole carrier (omega only, small grounds).
    pub fn enumerate(&self, max_ground: usize) -> Result<Vec<QuantaleValue>> {
        match self {
            QuantaleHandle::Omega { ground } => Ok(enumerate_carrier(ground.len(), max_ground)?
                .into_iter()
                .map(QuantaleValue::Omega)
                .collect()),
            QuantaleHandle::ExtRational => Err(Error::Precondition(
                "carrier enumeration is only available for omega quantales".into(),
            )),
        }
    }
}

/// Brute-force definitional check of `b ≻ a`: for every subset `S` of the
/// enumerated carrier with `a ≥ ⋀S` there must be some `s ∈ S` with `b ≥ s`.
/// The empty subset participates (its meet is ∞), which is why nothing is
/// well above ∞. Exponential in the carrier, so gated to small grounds; this
/// is the oracle the closed-form `well_above` is validated against.
pub fn well_above_bruteforce(
    handle: &QuantaleHandle,
    b: &QuantaleValue,
    a: &QuantaleValue,
    max_ground: usize,
) -> Result<bool> {
    let carrier = handle.enumerate(max_ground)?;
    if carrier.len() > 20 {
        return Err(Error::Budget(format!(
            "brute-force well-above over 2^{} subsets refused",
            carrier.len()
        )));
    }
    for mask in 0u32..(1u32 << carrier.len()) {
        let subset: Vec<&QuantaleValue> = carrier
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, v)| v)
            .collect();
        let meet = handle.meet_many(subset.iter().copied())?;
        if handle.leq(&meet, a)? {
            let witnessed = subset
                .iter()
                .map(|s| handle.leq(s, b))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .any(|x| x);
            if !witnessed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_mismatch_is_detected() {
        let ext = QuantaleHandle::ext_rational();
        let omega = QuantaleHandle::omega(vec!["u".into()]).unwrap();
        let r = QuantaleValue::rational(1, 2).unwrap();
        let o = omega.zero();
        assert!(ext.leq(&r, &o).is_err());
        assert!(omega.add(&o, &r).is_err());
        // Ground-size mismatches are kind mismatches too.
        let omega2 = QuantaleHandle::omega(vec!["u".into(), "v".into()]).unwrap();
        assert!(omega2.validate(&o).is_err());
    }

    #[test]
    fn positive_halve_contract() {
        let ext = QuantaleHandle::ext_rational();
        for eps in [
            QuantaleValue::rational(1, 3).unwrap(),
            QuantaleValue::Rational(ExtRational::infinity()),
        ] {
            let d = ext.positive_halve(&eps).unwrap();
            assert!(ext.is_positive(&d).unwrap());
            assert!(ext.leq(&ext.add(&d, &d).unwrap(), &eps).unwrap());
        }
        assert!(ext.positive_halve(&ext.zero()).is_err());

        let omega = QuantaleHandle::omega(vec!["u".into(), "v".into()]).unwrap();
        // Every element of Ω is positive, so even ∞ and 0 halve (to
        // themselves, since + is idempotent).
        for eps in omega.enumerate(4).unwrap() {
            let d = omega.positive_halve(&eps).unwrap();
            assert_eq!(d, eps);
            assert!(omega.leq(&omega.add(&d, &d).unwrap(), &eps).unwrap());
        }
    }

    #[test]
    fn empty_meet_is_top_empty_join_is_bottom() {
        let ext = QuantaleHandle::ext_rational();
        assert_eq!(ext.meet_many([]).unwrap(), ext.infinity());
        assert_eq!(ext.join_many([]).unwrap(), ext.zero());
        let omega = QuantaleHandle::omega(vec!["u".into()]).unwrap();
        assert_eq!(omega.meet_many([]).unwrap(), omega.infinity());
        assert_eq!(omega.join_many([]).unwrap(), omega.zero());
    }

    #[test]
    fn well_above_matches_bruteforce_on_small_grounds() {
        // The closed-form antichain rule must agree with the definitional
        // subset check on every pair of every enumerable carrier.
        for g in 0..=2usize {
            let ground = (0..g).map(|i| format!("g{i}")).collect();
            let omega = QuantaleHandle::omega(ground).unwrap();
            let carrier = omega.enumerate(4).unwrap();
            for b in &carrier {
                for a in &carrier {
                    let fast = omega.well_above(b, a).unwrap();
                    let slow = well_above_bruteforce(&omega, b, a, 4).unwrap();
                    assert_eq!(fast, slow, "ground {g}, b={b:?} a={a:?}");
                }
            }
        }
        // On the singleton ground (a 3-chain 0 < ↓{∅} < ∞) the relation is
        // simply "b ≥ a and a ≠ ∞".
        let omega = QuantaleHandle::omega(vec!["u".into()]).unwrap();
        let carrier = omega.enumerate(4).unwrap();
        assert_eq!(carrier.len(), 3);
        for b in &carrier {
            for a in &carrier {
                let expected = omega.leq(a, b).unwrap() && !a.as_omega().unwrap().is_infinity();
                assert_eq!(omega.well_above(b, a).unwrap(), expected);
            }
        }
    }
}
