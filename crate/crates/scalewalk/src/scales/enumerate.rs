//! Scale enumeration: the finite quantifier ranges behind every "for all
//! scales in Σ" statement.
//!
//! Three regimes, picked automatically:
//!
//! * **Full carrier** — omega quantales with small grounds, when
//!   |carrier|^|points| fits the budget: literally every scale, filtered by
//!   membership.
//! * **Class representatives** — one radius per *step pattern* per point.
//!   The strict step pattern of a radius `r` at `x` is `{y : d(x,y) ≺ r}`,
//!   which in Ω depends only on which antichain members of the distances
//!   from `x` contain `∪antichain(r)`; intersection-closing those members
//!   and taking the atoms element of each closed set yields a pool that
//!   realizes every pattern a member scale can have, while staying inside
//!   the system (bounded-below and expansion floors cap the closure by the
//!   floor's member union, which keeps every representative above the
//!   floor). In the rationals the distances themselves are the class
//!   endpoints and total order makes the same lift trivial. Complete for
//!   every step-determined question — components, connectedness verdicts,
//!   continuity — and validated against the full carrier in tests.
//! * **Sampled** — over budget: the canonical finest scale (when the space
//!   is a metrization output) plus a deterministic seeded draw from the
//!   pools. The only regime whose enumeration is marked non-exhaustive.
//!
//! The weak variant needs the pointwise-least scales too (its patterns
//! move at different boundaries), so pools always include the bottom 0 in
//! omega — positive there — and half the least positive distance in the
//! rationals; both are the unique hardest scales for their variant, which
//! is all the weak-side consumers quantify against.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quantale::{BitSet, ExtRational, OmegaElement, QuantaleValue, CARRIER_SIZES};
use crate::spaces::VMetricSpace;

use super::systems::{is_member_scale, ScaleSystem};
use super::{canonical_finest_scale, Scale};

/// Default cap on how many scales an enumeration may produce.
pub const DEFAULT_SCALE_BUDGET: usize = 1_000_000;

/// Grounds above this size never get full-carrier enumeration.
const CARRIER_GROUND_LIMIT: usize = 4;

/// Fixed seed for the sampled regime: the draw is part of the observable
/// contract (same call, same scales), not a source of variety.
const SAMPLE_SEED: u64 = 0x5ca1e;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    FullCarrier,
    ClassReps,
    UniformThresholds,
    Sampled,
}

#[derive(Clone, Debug)]
pub struct ScaleEnumeration {
    pub scales: Vec<Scale>,
    /// Whether the scales exhaust the system for step-determined questions:
    /// `FullCarrier` literally, the representative modes up to step
    /// pattern. Only `Sampled` clears this.
    pub exhaustive: bool,
    pub mode: EnumMode,
}

pub fn enumerate_scales(
    m: &VMetricSpace,
    sigma: &ScaleSystem,
    budget: usize,
) -> Result<ScaleEnumeration> {
    if budget == 0 {
        return Err(Error::Budget("scale enumeration budget of 0".into()));
    }
    if m.n() == 0 {
        let scales = vec![Scale::new(m, vec![], "enum#0")?];
        return Ok(ScaleEnumeration {
            scales,
            exhaustive: true,
            mode: EnumMode::FullCarrier,
        });
    }

    if matches!(sigma, ScaleSystem::Uniform) {
        return uniform_enumeration(m, budget);
    }

    if let Some(ground) = m.quantale().ground() {
        let g = ground.len();
        if g <= CARRIER_GROUND_LIMIT
            && (CARRIER_SIZES[g] as u128).pow(m.n() as u32) <= budget as u128
        {
            let carrier = m.quantale().enumerate(g)?;
            let pools = vec![carrier; m.n()];
            let scales = assemble(m, sigma, &pools)?;
            return finish(m, sigma, scales, true, EnumMode::FullCarrier);
        }
    }

    let pool_sets = member_pools(m, sigma)?;
    let total: u128 = pool_sets
        .iter()
        .map(|pools| {
            pools.iter().fold(1u128, |acc, p| {
                acc.saturating_mul(p.len() as u128)
            })
        })
        .fold(0u128, u128::saturating_add);
    if total <= budget as u128 {
        let mut scales = Vec::new();
        let mut seen = BTreeSet::new();
        for pools in &pool_sets {
            for s in assemble(m, sigma, pools)? {
                if seen.insert(s.radii().to_vec()) {
                    scales.push(s);
                }
            }
        }
        return finish(m, sigma, scales, true, EnumMode::ClassReps);
    }

    sampled_enumeration(m, sigma, &pool_sets, budget)
}

fn finish(
    m: &VMetricSpace,
    sigma: &ScaleSystem,
    scales: Vec<Scale>,
    exhaustive: bool,
    mode: EnumMode,
) -> Result<ScaleEnumeration> {
    if scales.is_empty() {
        return Err(Error::Invalid(format!(
            "empty scale system {} on this space",
            sigma.id()
        )));
    }
    let scales = scales
        .into_iter()
        .enumerate()
        .map(|(k, s)| Scale::new(m, s.radii().to_vec(), format!("enum#{k}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScaleEnumeration {
        scales,
        exhaustive,
        mode,
    })
}

/// All pool combinations, filtered by membership.
fn assemble(m: &VMetricSpace, sigma: &ScaleSystem, pools: &[Vec<QuantaleValue>]) -> Result<Vec<Scale>> {
    if pools.iter().any(|p| p.is_empty()) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; pools.len()];
    loop {
        let radii: Vec<QuantaleValue> = idx
            .iter()
            .enumerate()
            .map(|(point, &k)| pools[point][k].clone())
            .collect();
        let candidate = Scale::new(m, radii, "candidate")?;
        if is_member_scale(m, &candidate, sigma)? {
            out.push(candidate);
        }
        let mut carry = idx.len();
        for i in (0..idx.len()).rev() {
            idx[i] += 1;
            if idx[i] < pools[i].len() {
                carry = i;
                break;
            }
            idx[i] = 0;
        }
        if carry == idx.len() {
            return Ok(out);
        }
    }
}

fn uniform_enumeration(m: &VMetricSpace, budget: usize) -> Result<ScaleEnumeration> {
    let pool = match m.quantale().ground() {
        None => ext_global_pool(m),
        Some(_) => omega_global_pool(m),
    };
    if pool.len() > budget {
        let pools = vec![vec![pool]];
        return sampled_enumeration(m, &ScaleSystem::Uniform, &pools, budget);
    }
    let mut scales = Vec::new();
    for eps in pool {
        scales.push(Scale::uniform(m, eps)?);
    }
    finish(m, &ScaleSystem::Uniform, scales, true, EnumMode::UniformThresholds)
}

/// The constant radii that exhaust every uniform step pattern on `m`, one
/// representative per pattern class. Callers that quantify over "all ε ≻ 0"
/// (entourage fixes, uniform clopenness) only need these.
pub fn uniform_radius_pool(m: &VMetricSpace) -> Vec<QuantaleValue> {
    match m.quantale().ground() {
        None => ext_global_pool(m),
        Some(_) => omega_global_pool(m),
    }
}

/// Constant-scale candidates over the rationals: each positive finite
/// distance (tops of the strict classes, bottoms of the weak ones), half
/// the least positive distance (the weak class below everything), one past
/// the largest finite distance, and ∞.
pub(super) fn ext_global_pool(m: &VMetricSpace) -> Vec<QuantaleValue> {
    let mut finite_positive = BTreeSet::new();
    let mut max_finite = ExtRational::zero();
    for row in m.matrix() {
        for v in row {
            let r = v.as_rational().expect("ext metric");
            if !r.is_infinite() {
                if !r.is_zero() {
                    finite_positive.insert(r.clone());
                }
                if *r > max_finite {
                    max_finite = r.clone();
                }
            }
        }
    }
    let mut pool = BTreeSet::new();
    if let Some(least) = finite_positive.iter().next() {
        pool.insert(least.halve());
    }
    pool.extend(finite_positive);
    pool.insert(max_finite.plus_one());
    pool.insert(ExtRational::infinity());
    pool.into_iter().map(QuantaleValue::Rational).collect()
}

/// Constant-scale candidates in Ω: atoms elements of the ∩-closure of all
/// antichain members in the matrix, plus the lattice ends.
pub(super) fn omega_global_pool(m: &VMetricSpace) -> Vec<QuantaleValue> {
    let g = m.quantale().ground_size();
    let cap = BitSet::full(g);
    let mut sets = BTreeSet::new();
    sets.insert(cap.clone());
    for row in m.matrix() {
        for v in row {
            for member in v.as_omega().expect("omega metric").antichain() {
                sets.insert(member.clone());
            }
        }
    }
    let closed = intersection_closure(sets);
    let mut pool: BTreeSet<OmegaElement> = closed.iter().map(OmegaElement::atoms).collect();
    pool.insert(OmegaElement::zero(g));
    pool.insert(OmegaElement::infinity(g));
    pool.into_iter().map(QuantaleValue::Omega).collect()
}

fn intersection_closure(start: BTreeSet<BitSet>) -> BTreeSet<BitSet> {
    let mut closed = start;
    loop {
        let mut fresh = Vec::new();
        for a in &closed {
            for b in &closed {
                let i = a.intersect(b);
                if !closed.contains(&i) && !fresh.contains(&i) {
                    fresh.push(i);
                }
            }
        }
        if fresh.is_empty() {
            return closed;
        }
        closed.extend(fresh);
    }
}

/// Per-point pattern pools for each "branch" of the system — one branch
/// for the structural systems, one per reference point for expansion
/// systems (their floors depend on the reference).
fn member_pools(m: &VMetricSpace, sigma: &ScaleSystem) -> Result<Vec<Vec<Vec<QuantaleValue>>>> {
    let q = m.quantale();
    match sigma {
        ScaleSystem::All | ScaleSystem::BoundedBelowExists | ScaleSystem::Uniform => {
            let pools = (0..m.n())
                .map(|y| point_pool(m, y, None))
                .collect::<Result<Vec<_>>>()?;
            Ok(vec![pools])
        }
        ScaleSystem::BoundedBelowFixed(sel) => {
            let eps = sel.resolve(q)?;
            let pools = (0..m.n())
                .map(|y| point_pool(m, y, Some(&eps)))
                .collect::<Result<Vec<_>>>()?;
            Ok(vec![pools])
        }
        ScaleSystem::ExpansionRate(alpha) => {
            let mut branches = Vec::with_capacity(m.n());
            for x in 0..m.n() {
                let mut pools = Vec::with_capacity(m.n());
                for y in 0..m.n() {
                    let floor = alpha.apply(q, m.dist(x, y))?;
                    pools.push(point_pool(m, y, Some(&floor))?);
                }
                branches.push(pools);
            }
            Ok(branches)
        }
    }
}

/// The pattern pool at one point, optionally floored: every radius in the
/// pool dominates the floor, and every member radius ≥ floor has a
/// pattern-equal pool entry.
pub(super) fn point_pool(m: &VMetricSpace, y: usize, floor: Option<&QuantaleValue>) -> Result<Vec<QuantaleValue>> {
    match m.quantale().ground() {
        None => {
            let floor = match floor {
                None => None,
                Some(QuantaleValue::Rational(r)) => Some(r),
                Some(_) => unreachable!("validated by resolve/apply"),
            };
            Ok(ext_point_pool(m, y, floor))
        }
        Some(ground) => {
            let cap = match floor {
                None => BitSet::full(ground.len()),
                Some(QuantaleValue::Omega(e)) => e.member_union(),
                Some(_) => unreachable!("validated by resolve/apply"),
            };
            Ok(omega_point_pool(m, y, &cap, floor))
        }
    }
}

fn ext_point_pool(m: &VMetricSpace, y: usize, floor: Option<&ExtRational>) -> Vec<QuantaleValue> {
    let mut finite_positive = BTreeSet::new();
    let mut max_finite = ExtRational::zero();
    for z in 0..m.n() {
        let r = m.dist(y, z).as_rational().expect("ext metric");
        if !r.is_infinite() {
            if !r.is_zero() {
                finite_positive.insert(r.clone());
            }
            if *r > max_finite {
                max_finite = r.clone();
            }
        }
    }
    let mut pool = BTreeSet::new();
    if let Some(least) = finite_positive.iter().next() {
        pool.insert(least.halve());
    }
    pool.extend(finite_positive);
    pool.insert(max_finite.plus_one());
    pool.insert(ExtRational::infinity());
    if let Some(f) = floor {
        pool.retain(|r| r >= f);
        if !f.is_zero() {
            pool.insert(f.clone());
        }
    }
    pool.into_iter().map(QuantaleValue::Rational).collect()
}

fn omega_point_pool(
    m: &VMetricSpace,
    y: usize,
    cap: &BitSet,
    floor: Option<&QuantaleValue>,
) -> Vec<QuantaleValue> {
    let g = cap.bits();
    let mut sets = BTreeSet::new();
    sets.insert(cap.clone());
    for z in 0..m.n() {
        for member in m.dist(y, z).as_omega().expect("omega metric").antichain() {
            sets.insert(member.intersect(cap));
        }
    }
    let closed = intersection_closure(sets);
    let mut pool: BTreeSet<OmegaElement> = closed.iter().map(OmegaElement::atoms).collect();
    pool.insert(OmegaElement::infinity(g));
    match floor {
        None => {
            pool.insert(OmegaElement::zero(g));
        }
        Some(QuantaleValue::Omega(e)) => {
            pool.insert(e.clone());
        }
        Some(_) => unreachable!("validated by resolve/apply"),
    }
    pool.into_iter().map(QuantaleValue::Omega).collect()
}

fn sampled_enumeration(
    m: &VMetricSpace,
    sigma: &ScaleSystem,
    pool_sets: &[Vec<Vec<QuantaleValue>>],
    budget: usize,
) -> Result<ScaleEnumeration> {
    let mut scales = Vec::new();
    let mut seen = BTreeSet::new();
    if let Ok(canon) = canonical_finest_scale(m) {
        if is_member_scale(m, &canon, sigma)? {
            seen.insert(canon.radii().to_vec());
            scales.push(canon);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut attempts = 0usize;
    let attempt_cap = budget.saturating_mul(16).max(64);
    while scales.len() < budget && attempts < attempt_cap {
        attempts += 1;
        let branch = &pool_sets[rng.gen_range(0..pool_sets.len())];
        let radii: Vec<QuantaleValue> = if matches!(sigma, ScaleSystem::Uniform) {
            let pool = &branch[0];
            vec![pool[rng.gen_range(0..pool.len())].clone(); m.n()]
        } else {
            (0..m.n())
                .map(|y| {
                    let pool = &branch[y];
                    pool[rng.gen_range(0..pool.len())].clone()
                })
                .collect()
        };
        let candidate = Scale::new(m, radii, "candidate")?;
        if is_member_scale(m, &candidate, sigma)? && seen.insert(candidate.radii().to_vec()) {
            scales.push(candidate);
        }
    }
    finish(m, sigma, scales, false, EnumMode::Sampled)
}
