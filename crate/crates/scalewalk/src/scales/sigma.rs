//! Σ-level notions: components, clopen sets, and continuity.
//!
//! These quantify over a whole scale system. Components intersect the
//! per-scale partitions; clopen detection searches radii pointwise and
//! assembles a witness scale, which is cheaper and more complete than
//! scanning enumerated scales; continuity runs the ∀R ∃S alternation over
//! the two spaces' enumerations.

use crate::error::{Error, Result};
use crate::quantale::QuantaleValue;
use crate::spaces::{full_mask, VMetricSpace};

use super::enumerate::{enumerate_scales, ext_global_pool, omega_global_pool, point_pool};
use super::systems::{is_member_scale, ScaleSystem};
use super::{r_components, ComponentPartition, Scale, StepVariant};

#[derive(Clone, Debug)]
pub struct SigmaComponents {
    pub partition: ComponentPartition,
    /// Exact when the scale enumeration was exhaustive; otherwise the
    /// partition is a coarsening (an upper bound) of the true components.
    pub exhaustive: bool,
}

/// `C^Σ`: the common refinement of R-components over every enumerated
/// Σ-scale, strict steps.
pub fn sigma_components(
    m: &VMetricSpace,
    sigma: &ScaleSystem,
    budget: usize,
) -> Result<SigmaComponents> {
    let e = enumerate_scales(m, sigma, budget)?;
    let id = sigma.id();
    let mut acc = ComponentPartition::trivial(m.n(), id.clone());
    for scale in &e.scales {
        let parts = r_components(m, scale, StepVariant::Strict)?;
        acc = acc.meet(&parts, id.clone());
    }
    Ok(SigmaComponents {
        partition: acc,
        exhaustive: e.exhaustive,
    })
}

/// Points at strict-ball distance: `{y : d(x, y) ≺ r}`.
fn strict_ball(m: &VMetricSpace, x: usize, r: &QuantaleValue) -> Result<u64> {
    let mut out = 0u64;
    for y in 0..m.n() {
        if m.quantale().well_above(r, m.dist(x, y))? {
            out |= 1 << y;
        }
    }
    Ok(out)
}

/// A radius at `x` achieving the zero-distance ball: in Ω the bottom 0 is
/// positive and does it exactly; in the rationals half the least positive
/// distance from `x` (1 when there is none).
fn tightest_radius(m: &VMetricSpace, x: usize) -> Result<QuantaleValue> {
    match m.quantale().ground() {
        Some(_) => Ok(m.quantale().zero()),
        None => {
            let mut least: Option<QuantaleValue> = None;
            for y in 0..m.n() {
                let d = m.dist(x, y);
                let r = d.as_rational().expect("ext metric");
                if !r.is_zero() && !r.is_infinite() && least.as_ref().map(|l| d < l).unwrap_or(true)
                {
                    least = Some(d.clone());
                }
            }
            Ok(match least {
                Some(QuantaleValue::Rational(v)) => QuantaleValue::Rational(v.halve()),
                _ => QuantaleValue::rational(1, 1)?,
            })
        }
    }
}

/// All Σ-clopen subsets: sets fixed, along with their complements, by the
/// ball operator of a single Σ-scale. Searched pointwise — each point only
/// needs some admissible radius whose ball stays on the point's side — and
/// the assembled witness scale is membership-checked before the set is
/// accepted.
pub fn sigma_clopen_sets(m: &VMetricSpace, sigma: &ScaleSystem) -> Result<Vec<u64>> {
    let n = m.n();
    if n > 20 {
        return Err(Error::Budget(format!(
            "clopen scan over 2^{n} subsets refused"
        )));
    }
    let full = full_mask(n);
    let q = m.quantale();
    let mut out = Vec::new();

    // Pointwise radius candidates per system "branch" (expansion systems
    // get one branch per reference point, with the matching floors).
    let branches: Vec<Vec<Vec<QuantaleValue>>> = match sigma {
        ScaleSystem::All | ScaleSystem::BoundedBelowExists => {
            let per_point = (0..n)
                .map(|x| tightest_radius(m, x).map(|r| vec![r]))
                .collect::<Result<Vec<_>>>()?;
            vec![per_point]
        }
        ScaleSystem::Uniform => Vec::new(), // handled below: one shared radius
        ScaleSystem::BoundedBelowFixed(sel) => {
            let eps = sel.resolve(q)?;
            vec![vec![vec![eps]; n]]
        }
        ScaleSystem::ExpansionRate(alpha) => {
            let mut branches = Vec::with_capacity(n);
            for x in 0..n {
                let mut pools = Vec::with_capacity(n);
                for y in 0..n {
                    let floor = alpha.apply(q, m.dist(x, y))?;
                    pools.push(point_pool(m, y, Some(&floor))?);
                }
                branches.push(pools);
            }
            branches
        }
    };

    let uniform_pool = match sigma {
        ScaleSystem::Uniform => match q.ground() {
            None => ext_global_pool(m),
            Some(_) => omega_global_pool(m),
        },
        _ => Vec::new(),
    };

    'sets: for set in 0..=full {
        let witness_radii: Option<Vec<QuantaleValue>> = match sigma {
            ScaleSystem::Uniform => {
                let mut found = None;
                'eps: for eps in &uniform_pool {
                    for x in 0..n {
                        let side = if set & (1 << x) != 0 { set } else { full & !set };
                        if strict_ball(m, x, eps)? & !side != 0 {
                            continue 'eps;
                        }
                    }
                    found = Some(vec![eps.clone(); n]);
                    break;
                }
                found
            }
            _ => {
                let mut found = None;
                'branch: for pools in &branches {
                    let mut radii = Vec::with_capacity(n);
                    for (x, pool) in pools.iter().enumerate() {
                        let side = if set & (1 << x) != 0 { set } else { full & !set };
                        let mut winner = None;
                        for r in pool {
                            if strict_ball(m, x, r)? & !side == 0 {
                                winner = Some(r.clone());
                                break;
                            }
                        }
                        match winner {
                            Some(r) => radii.push(r),
                            None => continue 'branch,
                        }
                    }
                    found = Some(radii);
                    break;
                }
                found
            }
        };
        let Some(radii) = witness_radii else {
            continue 'sets;
        };
        let witness = Scale::new(m, radii, format!("clopen-witness#{set:b}"))?;
        if is_member_scale(m, &witness, sigma)? {
            out.push(set);
        }
    }
    Ok(out)
}

/// A point map between spaces, by target indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    indices: Vec<usize>,
}

impl PointMap {
    pub fn new(mx: &VMetricSpace, my: &VMetricSpace, indices: Vec<usize>) -> Result<Self> {
        if indices.len() != mx.n() {
            return Err(Error::Invalid(format!(
                "map covers {} of {} points",
                indices.len(),
                mx.n()
            )));
        }
        if indices.iter().any(|&i| i >= my.n()) {
            return Err(Error::Invalid("map hits a point outside the target".into()));
        }
        Ok(PointMap { indices })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.indices[x]
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

#[derive(Clone, Debug)]
pub struct ContinuityReport {
    pub continuous: bool,
    /// The target-side scale with no matching source-side scale, when the
    /// verdict is negative.
    pub witness: Option<Scale>,
    /// Both enumerations were exhaustive, so the verdict is exact.
    pub exact: bool,
}

/// Σ-continuity of `f: X → Y`: for every Σ-scale `R` on `Y` there is a
/// Σ-scale `S` on `X` with `d(x,x') ≺ S(x) ⟹ d(fx,fx') ≺ R(fx)`.
pub fn is_sigma_continuous(
    mx: &VMetricSpace,
    my: &VMetricSpace,
    f: &PointMap,
    sigma: &ScaleSystem,
    budget: usize,
) -> Result<ContinuityReport> {
    if f.indices().len() != mx.n() {
        return Err(Error::Invalid("map does not match the source space".into()));
    }
    let targets = enumerate_scales(my, sigma, budget)?;
    let sources = enumerate_scales(mx, sigma, budget)?;
    let exact = targets.exhaustive && sources.exhaustive;

    // Pair predicates are step patterns, so flatten them into bitmasks over
    // source pairs once per scale: the ∀R ∃S alternation then reduces to
    // subset tests between masks instead of re-deciding ≻ per (R, S, pair).
    let nx = mx.n();
    let words = (nx * nx).div_ceil(64);
    let mask_of = |test: &mut dyn FnMut(usize, usize) -> Result<bool>| -> Result<Vec<u64>> {
        let mut mask = vec![0u64; words];
        for x in 0..nx {
            for x2 in 0..nx {
                if test(x, x2)? {
                    let bit = x * nx + x2;
                    mask[bit / 64] |= 1 << (bit % 64);
                }
            }
        }
        Ok(mask)
    };
    let premises: Vec<Vec<u64>> = sources
        .scales
        .iter()
        .map(|s| mask_of(&mut |x, x2| mx.quantale().well_above(s.radius(x), mx.dist(x, x2))))
        .collect::<Result<_>>()?;

    for r in &targets.scales {
        let ok = mask_of(&mut |x, x2| {
            my.quantale()
                .well_above(r.radius(f.apply(x)), my.dist(f.apply(x), f.apply(x2)))
        })?;
        let matched = premises
            .iter()
            .any(|p| p.iter().zip(&ok).all(|(pw, ow)| pw & !ow == 0));
        if !matched {
            return Ok(ContinuityReport {
                continuous: false,
                witness: Some(r.clone()),
                exact,
            });
        }
    }
    Ok(ContinuityReport {
        continuous: true,
        witness: None,
        exact,
    })
}
