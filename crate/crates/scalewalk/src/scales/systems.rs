//! Scale systems Σ and the membership predicate.
//!
//! A scale system carves out a class of scales; connectedness notions then
//! quantify over the class. `All` and `Uniform` are structural, the bounded
//! variants constrain radii from below, and `ExpansionRate` ties radii to
//! the distance from a reference point through an expansion map α.

use crate::error::{Error, Result};
use crate::quantale::{BitSet, ExtRational, OmegaElement, QuantaleHandle, QuantaleValue};
use crate::spaces::VMetricSpace;

use super::Scale;

/// How to pick the fixed lower bound ε_V in an omega quantale when a scale
/// system must apply across quantales of different grounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaEpsRule {
    /// ε_V = 0 — positive in omega quantales, where it bounds nothing out.
    Zero,
    /// ε_V = ↓{∅}, the minimum positive element with a one-set family.
    DownEmpty,
}

/// The ε_V of `BoundedBelowFixed`: either a concrete value (usable only on
/// spaces over the matching quantale) or a per-quantale rule.
#[derive(Clone, Debug, PartialEq)]
pub enum EpsSelection {
    Value(QuantaleValue),
    PerQuantale { ext: ExtRational, omega: OmegaEpsRule },
}

impl EpsSelection {
    pub fn resolve(&self, q: &QuantaleHandle) -> Result<QuantaleValue> {
        let eps = match self {
            EpsSelection::Value(v) => {
                q.validate(v)?;
                v.clone()
            }
            EpsSelection::PerQuantale { ext, omega } => match q.ground() {
                None => QuantaleValue::Rational(ext.clone()),
                Some(ground) => match omega {
                    OmegaEpsRule::Zero => q.zero(),
                    OmegaEpsRule::DownEmpty => {
                        QuantaleValue::Omega(OmegaElement::principal(BitSet::empty(ground.len())))
                    }
                },
            },
        };
        if !q.is_positive(&eps)? {
            return Err(Error::Invalid(format!(
                "bounded-below scale system needs a positive ε, got {}",
                crate::io::value_string(&eps)
            )));
        }
        Ok(eps)
    }

    fn describe(&self) -> String {
        match self {
            EpsSelection::Value(v) => crate::io::value_string(v),
            EpsSelection::PerQuantale { ext, omega } => format!(
                "ext:{},omega:{}",
                ext.canonical_string(),
                match omega {
                    OmegaEpsRule::Zero => "zero",
                    OmegaEpsRule::DownEmpty => "down-empty",
                }
            ),
        }
    }
}

/// The expansion map α: V → V of `ExpansionRate`. Rational quantales use a
/// step function over thresholds (total because the first threshold is 0);
/// omega quantales use an explicit table, and applying it to a value
/// outside the table is an input error.
#[derive(Clone, Debug, PartialEq)]
pub enum AlphaSelection {
    RationalSteps(Vec<(ExtRational, ExtRational)>),
    OmegaTable(Vec<(OmegaElement, OmegaElement)>),
}

impl AlphaSelection {
    pub fn rational_steps(pairs: Vec<(ExtRational, ExtRational)>) -> Result<Self> {
        if pairs.first().map(|(t, _)| !t.is_zero()).unwrap_or(true) {
            return Err(Error::Invalid(
                "expansion map needs a first threshold of 0".into(),
            ));
        }
        if pairs.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Invalid(
                "expansion map thresholds must increase strictly".into(),
            ));
        }
        Ok(AlphaSelection::RationalSteps(pairs))
    }

    pub fn omega_table(pairs: Vec<(OmegaElement, OmegaElement)>) -> Result<Self> {
        for i in 1..pairs.len() {
            if pairs[..i].iter().any(|(k, _)| k == &pairs[i].0) {
                return Err(Error::Invalid("expansion table repeats a key".into()));
            }
        }
        Ok(AlphaSelection::OmegaTable(pairs))
    }

    pub fn apply(&self, q: &QuantaleHandle, d: &QuantaleValue) -> Result<QuantaleValue> {
        q.validate(d)?;
        match (self, d) {
            (AlphaSelection::RationalSteps(pairs), QuantaleValue::Rational(v)) => {
                let hit = pairs.iter().rev().find(|(t, _)| t <= v).ok_or_else(|| {
                    Error::Invalid(format!(
                        "expansion map not defined at {}",
                        v.canonical_string()
                    ))
                })?;
                Ok(QuantaleValue::Rational(hit.1.clone()))
            }
            (AlphaSelection::OmegaTable(pairs), QuantaleValue::Omega(v)) => pairs
                .iter()
                .find(|(k, _)| k == v)
                .map(|(_, out)| QuantaleValue::Omega(out.clone()))
                .ok_or_else(|| {
                    Error::Invalid(format!(
                        "expansion table not defined at {}",
                        crate::io::value_string(d)
                    ))
                }),
            _ => Err(Error::KindMismatch(
                "expansion map and distance live in different quantales".into(),
            )),
        }
    }

}

#[derive(Clone, Debug, PartialEq)]
pub enum ScaleSystem {
    /// Σ_a — every scale.
    All,
    /// Σ_u — constant scales.
    Uniform,
    /// Σ_0 — scales whose radii admit a common positive lower bound.
    BoundedBelowExists,
    /// Σ_{ε_V} — scales with every radius ≥ a fixed positive ε_V.
    BoundedBelowFixed(EpsSelection),
    /// Σ_α — scales dominating α(d(x, ·)) for some reference point x.
    ExpansionRate(AlphaSelection),
}

impl ScaleSystem {
    pub fn id(&self) -> String {
        match self {
            ScaleSystem::All => "all".into(),
            ScaleSystem::Uniform => "uniform".into(),
            ScaleSystem::BoundedBelowExists => "bounded-exists".into(),
            ScaleSystem::BoundedBelowFixed(sel) => format!("bounded({})", sel.describe()),
            ScaleSystem::ExpansionRate(_) => "expansion".into(),
        }
    }
}

/// Which rule certified a scale as a member of Σ_0, if any. The meet test
/// is decisive on finite spaces — a finite meet of positive radii is
/// positive by the quantale axiom — so the carrier search that backs it up
/// is never expected to fire; it exists so the membership decision matches
/// the definition literally, and the report says which rule answered.
pub fn sigma0_rule(m: &VMetricSpace, r: &Scale) -> Result<Option<&'static str>> {
    let q = m.quantale();
    let meet = q.meet_many(r.radii())?;
    if q.is_positive(&meet)? {
        return Ok(Some("meet-positive"));
    }
    if let Some(ground) = q.ground() {
        if ground.len() <= crate::quantale::DEFAULT_GROUND_BUDGET {
            for eps in q.enumerate(ground.len())? {
                if q.is_positive(&eps)?
                    && r.radii().iter().try_fold(true, |acc, radius| {
                        Ok::<_, Error>(acc && q.leq(&eps, radius)?)
                    })?
                {
                    return Ok(Some("positive-search"));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_member_scale(m: &VMetricSpace, r: &Scale, sigma: &ScaleSystem) -> Result<bool> {
    if r.radii().len() != m.n() {
        return Err(Error::Invalid("scale does not match the space".into()));
    }
    let q = m.quantale();
    match sigma {
        ScaleSystem::All => Ok(true),
        ScaleSystem::Uniform => Ok(r.is_constant()),
        ScaleSystem::BoundedBelowExists => Ok(sigma0_rule(m, r)?.is_some()),
        ScaleSystem::BoundedBelowFixed(sel) => {
            let eps = sel.resolve(q)?;
            for radius in r.radii() {
                if !q.leq(&eps, radius)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        ScaleSystem::ExpansionRate(alpha) => {
            'refs: for x in 0..m.n() {
                for y in 0..m.n() {
                    let floor = alpha.apply(q, m.dist(x, y))?;
                    if !q.leq(&floor, r.radius(y))? {
                        continue 'refs;
                    }
                }
                return Ok(true);
            }
            Ok(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{flagg_metrize, grid, sierpinski, two_point_infinity};

    fn ratv(p: u64, q: u64) -> QuantaleValue {
        QuantaleValue::rational(p, q).unwrap()
    }

    fn ext(p: u64, q: u64) -> ExtRational {
        ExtRational::ratio(p, q).unwrap()
    }

    #[test]
    fn uniform_membership_is_constancy() {
        let g = grid(3, &ext(1, 2)).unwrap();
        let c = Scale::uniform(&g, ratv(1, 4)).unwrap();
        let v = Scale::new(&g, vec![ratv(1, 4), ratv(1, 4), ratv(1, 2)], "mixed").unwrap();
        assert!(is_member_scale(&g, &c, &ScaleSystem::Uniform).unwrap());
        assert!(!is_member_scale(&g, &v, &ScaleSystem::Uniform).unwrap());
        assert!(is_member_scale(&g, &v, &ScaleSystem::All).unwrap());
    }

    #[test]
    fn sigma0_holds_on_finite_spaces_via_the_meet_rule() {
        let g = grid(4, &ext(1, 3)).unwrap();
        let r = Scale::new(
            &g,
            vec![ratv(1, 100), ratv(1, 7), ratv(5, 1), ratv(1, 9)],
            "spread",
        )
        .unwrap();
        assert_eq!(sigma0_rule(&g, &r).unwrap(), Some("meet-positive"));
        assert!(is_member_scale(&g, &r, &ScaleSystem::BoundedBelowExists).unwrap());

        let m = flagg_metrize(&sierpinski()).unwrap();
        let zero = Scale::uniform(&m, m.quantale().zero()).unwrap();
        // In omega even the zero constant is positive, so the meet rule fires.
        assert_eq!(sigma0_rule(&m, &zero).unwrap(), Some("meet-positive"));
    }

    #[test]
    fn bounded_fixed_checks_the_floor() {
        let g = grid(3, &ext(1, 2)).unwrap();
        let sigma = ScaleSystem::BoundedBelowFixed(EpsSelection::Value(ratv(1, 2)));
        let ok = Scale::new(&g, vec![ratv(1, 2), ratv(3, 4), ratv(2, 1)], "above").unwrap();
        let no = Scale::new(&g, vec![ratv(1, 2), ratv(1, 4), ratv(2, 1)], "dips").unwrap();
        assert!(is_member_scale(&g, &ok, &sigma).unwrap());
        assert!(!is_member_scale(&g, &no, &sigma).unwrap());
        assert_eq!(sigma.id(), "bounded(1/2)");

        // A non-positive ε is an input error, not an empty system.
        let bad = ScaleSystem::BoundedBelowFixed(EpsSelection::Value(ratv(0, 1)));
        assert!(is_member_scale(&g, &ok, &bad).is_err());
    }

    #[test]
    fn eps_selection_resolves_per_quantale() {
        let sel = EpsSelection::PerQuantale {
            ext: ext(1, 3),
            omega: OmegaEpsRule::DownEmpty,
        };
        let g = grid(2, &ext(1, 1)).unwrap();
        assert_eq!(sel.resolve(g.quantale()).unwrap(), ratv(1, 3));
        let m = flagg_metrize(&sierpinski()).unwrap();
        let eps = sel.resolve(m.quantale()).unwrap();
        let QuantaleValue::Omega(o) = &eps else {
            panic!("expected omega")
        };
        assert_eq!(o.to_index_lists(), vec![Vec::<usize>::new()]);

        let zero_rule = EpsSelection::PerQuantale {
            ext: ext(1, 3),
            omega: OmegaEpsRule::Zero,
        };
        assert_eq!(zero_rule.resolve(m.quantale()).unwrap(), m.quantale().zero());
    }

    #[test]
    fn expansion_rate_membership_needs_a_reference_point() {
        let g = grid(3, &ext(1, 2)).unwrap();
        // α: below 1/2 → 1/4, from 1/2 on → 1.
        let alpha = AlphaSelection::rational_steps(vec![
            (ExtRational::zero(), ext(1, 4)),
            (ext(1, 2), ext(1, 1)),
        ])
        .unwrap();
        let sigma = ScaleSystem::ExpansionRate(alpha);
        let member = Scale::new(&g, vec![ratv(1, 4), ratv(1, 1), ratv(3, 2)], "ref0").unwrap();
        assert!(is_member_scale(&g, &member, &sigma).unwrap());
        let not = Scale::new(&g, vec![ratv(1, 4), ratv(1, 4), ratv(1, 1)], "low").unwrap();
        assert!(!is_member_scale(&g, &not, &sigma).unwrap());
        // The ∞ constant is always a member: every floor is dominated.
        let inf = Scale::uniform(&g, g.quantale().infinity()).unwrap();
        assert!(is_member_scale(&g, &inf, &sigma).unwrap());
    }

    #[test]
    fn expansion_map_validation_and_totality() {
        assert!(AlphaSelection::rational_steps(vec![(ext(1, 2), ext(1, 1))]).is_err());
        assert!(AlphaSelection::rational_steps(vec![
            (ExtRational::zero(), ext(1, 1)),
            (ExtRational::zero(), ext(2, 1)),
        ])
        .is_err());

        let alpha =
            AlphaSelection::rational_steps(vec![(ExtRational::zero(), ext(1, 4))]).unwrap();
        let g = grid(2, &ext(1, 1)).unwrap();
        assert_eq!(
            alpha.apply(g.quantale(), &g.quantale().infinity()).unwrap(),
            ratv(1, 4)
        );

        // Omega tables reject unknown inputs.
        let m = flagg_metrize(&sierpinski()).unwrap();
        let table = AlphaSelection::omega_table(vec![(
            m.dist(0, 0).as_omega().unwrap().clone(),
            m.dist(0, 0).as_omega().unwrap().clone(),
        )])
        .unwrap();
        assert!(table.apply(m.quantale(), m.dist(0, 1)).is_err());
        // And mixing quantales is a kind error.
        let tpi = two_point_infinity();
        assert!(table.apply(tpi.quantale(), tpi.dist(0, 1)).is_err());
    }
}
