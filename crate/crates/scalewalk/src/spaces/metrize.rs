//! Metrization of finite topological spaces and the constructions that go
//! back: induced open-ball topologies and topological products.
//!
//! The metrization targets Ω(τ): the ground set is the topology itself, and
//! `d(x, y)` is the principal element on `τ_{x→y} = {U : x ∈ U ⟹ y ∈ U}`.
//! Distances are therefore never ∞ (τ_{x→y} always holds ∅), and the
//! triangle inequality falls out of `τ_{x→y} ∩ τ_{y→z} ⊆ τ_{x→z}` — the
//! validating constructor re-checks it anyway.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::quantale::{BitSet, ExtRational, OmegaElement, QuantaleHandle, QuantaleValue};
use crate::spaces::{
    full_mask, generate_topology, open_ball, FiniteTopSpace, VMetricSpace, DEFAULT_MAX_OPENS,
};

/// For omega metrics whose ground is too large to enumerate, induced
/// topologies use principal radii `↓T` with `|T| ≥ |ground| − slack`.
pub(crate) const DEFAULT_PRINCIPAL_SLACK: usize = 2;

fn tau_arrow(t: &FiniteTopSpace, x: usize, y: usize) -> BitSet {
    let g = t.opens().len();
    let indices: Vec<usize> = t
        .opens()
        .iter()
        .enumerate()
        .filter(|(_, &u)| u & (1 << x) == 0 || u & (1 << y) != 0)
        .map(|(i, _)| i)
        .collect();
    BitSet::from_indices(g, &indices)
}

/// Metrize a finite topological space over Ω(τ).
pub fn flagg_metrize(t: &FiniteTopSpace) -> Result<VMetricSpace> {
    let ground: Vec<String> = t.opens().iter().map(|&u| t.render_open(u)).collect();
    let handle = QuantaleHandle::omega(ground)?;
    let n = t.n();
    let d: Vec<Vec<QuantaleValue>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| QuantaleValue::Omega(OmegaElement::principal(tau_arrow(t, x, y))))
                .collect()
        })
        .collect();
    let mut m = VMetricSpace::new(handle, t.points().to_vec(), d, false)?;
    m.flagg_source = Some(Box::new(t.clone()));
    Ok(m)
}

fn namespaced(i: usize, t: &FiniteTopSpace) -> Result<FiniteTopSpace> {
    let points = t.points().iter().map(|p| format!("{i}:{p}")).collect();
    FiniteTopSpace::new(points, t.opens().to_vec())
}

/// Metrize a whole family over one shared quantale Ω(S), S = ⋃ᵢ τᵢ.
///
/// Members keep disjoint point universes (labels are namespaced by member
/// index when the family has more than one space), so opens of different
/// members are distinct elements of S except for ∅, which is shared. A
/// one-member family degenerates to `flagg_metrize`.
pub fn mutual_metrize(family: &[FiniteTopSpace]) -> Result<Vec<VMetricSpace>> {
    match family {
        [] => Err(Error::Precondition("mutual_metrize needs a non-empty family".into())),
        [single] => Ok(vec![flagg_metrize(single)?]),
        _ => {
            let spaces: Vec<FiniteTopSpace> = family
                .iter()
                .enumerate()
                .map(|(i, t)| namespaced(i, t))
                .collect::<Result<_>>()?;
            // Shared ground: ∅ once, then each member's non-empty opens in
            // their canonical order. `owner[k]` pairs a ground index with the
            // member and open it came from (None for ∅).
            let mut ground_labels = vec!["{}".to_string()];
            let mut owner: Vec<Option<(usize, u64)>> = vec![None];
            for (i, s) in spaces.iter().enumerate() {
                for &u in s.opens() {
                    if u != 0 {
                        ground_labels.push(s.render_open(u));
                        owner.push(Some((i, u)));
                    }
                }
            }
            let g = ground_labels.len();
            let handle = QuantaleHandle::omega(ground_labels)?;
            let mut out = Vec::with_capacity(spaces.len());
            for (i, s) in spaces.iter().enumerate() {
                let n = s.n();
                let mut d = Vec::with_capacity(n);
                for x in 0..n {
                    let mut row = Vec::with_capacity(n);
                    for y in 0..n {
                        // σ_{x→y} over the shared ground: foreign opens never
                        // contain x, so they pass vacuously; own opens get
                        // the usual implication test.
                        let indices: Vec<usize> = (0..g)
                            .filter(|&k| match owner[k] {
                                None => true,
                                Some((j, u)) => j != i || u & (1 << x) == 0 || u & (1 << y) != 0,
                            })
                            .collect();
                        row.push(QuantaleValue::Omega(OmegaElement::principal(
                            BitSet::from_indices(g, &indices),
                        )));
                    }
                    d.push(row);
                }
                let mut m = VMetricSpace::new(handle.clone(), s.points().to_vec(), d, false)?;
                m.flagg_source = Some(Box::new(s.clone()));
                out.push(m);
            }
            Ok(out)
        }
    }
}

pub(crate) enum RadiusRoute {
    /// Every element of the enumerated Ω carrier (exact; ground ≤ 4).
    Carrier,
    /// Principal elements `↓T` for `|T| ≥ ground − slack`.
    Principal(usize),
}

fn candidate_radii(m: &VMetricSpace, route: &RadiusRoute) -> Result<Vec<QuantaleValue>> {
    match m.quantale() {
        QuantaleHandle::ExtRational => {
            let mut finite: Vec<ExtRational> = Vec::new();
            for row in m.matrix() {
                for v in row {
                    let r = v.as_rational().expect("validated ext_rational");
                    if !r.is_infinite() {
                        finite.push(r.clone());
                    }
                }
            }
            finite.sort();
            finite.dedup();
            let mut radii: Vec<QuantaleValue> = finite
                .iter()
                .filter(|r| !r.is_zero())
                .cloned()
                .map(QuantaleValue::Rational)
                .collect();
            // One radius past the largest finite distance captures the
            // "all finite neighbours" ball, and ∞ captures everything.
            let top = finite.last().cloned().unwrap_or_else(ExtRational::zero);
            radii.push(QuantaleValue::Rational(top.plus_one()));
            radii.push(QuantaleValue::Rational(ExtRational::infinity()));
            Ok(radii)
        }
        QuantaleHandle::Omega { ground } => match route {
            RadiusRoute::Carrier => m.quantale().enumerate(4),
            RadiusRoute::Principal(slack) => {
                let g = ground.len();
                let mut radii = Vec::new();
                let mut removal = vec![0usize; *slack + 1];
                // All subsets T with |T| ≥ g − slack, enumerated by choosing
                // which indices to drop (combinations of size 0..=slack).
                for drop_count in 0..=*slack.min(&g) {
                    combinations(g, drop_count, &mut removal, 0, 0, &mut |chosen| {
                        let kept: Vec<usize> =
                            (0..g).filter(|i| !chosen.contains(i)).collect();
                        radii.push(QuantaleValue::Omega(OmegaElement::principal(
                            BitSet::from_indices(g, &kept),
                        )));
                    });
                }
                Ok(radii)
            }
        },
    }
}

fn combinations(
    n: usize,
    k: usize,
    scratch: &mut Vec<usize>,
    start: usize,
    depth: usize,
    emit: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        emit(&scratch[..k]);
        return;
    }
    for i in start..n {
        scratch[depth] = i;
        combinations(n, k, scratch, i + 1, depth + 1, emit);
    }
}

pub(crate) fn induced_topology_route(
    m: &VMetricSpace,
    route: &RadiusRoute,
    max_opens: usize,
) -> Result<FiniteTopSpace> {
    let radii = candidate_radii(m, route)?;
    let mut balls = Vec::new();
    for x in 0..m.n() {
        for eps in &radii {
            balls.push(open_ball(m, x, eps)?);
        }
    }
    generate_topology(m.points().to_vec(), &balls, max_opens)
}

/// The open-ball topology of a metric space: the topology generated by all
/// balls of positive radius.
///
/// For ext_rational metrics the finitely many distance values are the only
/// thresholds that matter. For omega metrics with ground ≤ 4 every carrier
/// element is tried (exact); larger grounds fall back to principal radii
/// near the top of the ground, which is validated against the exact route on
/// the small cases by tests, and suffices for metrization outputs where the
/// ball at `↓(full ground)` is already the minimal open neighborhood.
pub fn induced_topology(m: &VMetricSpace) -> Result<FiniteTopSpace> {
    induced_topology_with(m, DEFAULT_PRINCIPAL_SLACK, DEFAULT_MAX_OPENS)
}

pub fn induced_topology_with(
    m: &VMetricSpace,
    slack: usize,
    max_opens: usize,
) -> Result<FiniteTopSpace> {
    let route = match m.quantale() {
        QuantaleHandle::Omega { ground } if ground.len() > 4 => RadiusRoute::Principal(slack),
        _ => RadiusRoute::Carrier,
    };
    induced_topology_route(m, &route, max_opens)
}

/// Topological product: points are tuples, opens are generated by boxes of
/// factor opens closed under union.
///
/// Implementation detail: for finite spaces that family is exactly the
/// up-sets of the componentwise specialization preorder (every up-set is the
/// union of the minimal boxes of its elements), so the opens are enumerated
/// by walking up-sets of the quotient poset instead of a quadratic closure
/// fixpoint. Tests pin the equivalence against the direct box closure.
pub fn product_topology(factors: &[FiniteTopSpace]) -> Result<FiniteTopSpace> {
    product_topology_with_budget(factors, DEFAULT_MAX_OPENS)
}

pub fn product_topology_with_budget(
    factors: &[FiniteTopSpace],
    max_opens: usize,
) -> Result<FiniteTopSpace> {
    if factors.is_empty() {
        return Err(Error::Precondition("product needs at least one factor".into()));
    }
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    let mut total = 1usize;
    for f in factors {
        total = total
            .checked_mul(f.n())
            .ok_or_else(|| Error::Budget("product point count overflows".into()))?;
    }
    if total > super::MAX_POINTS {
        return Err(Error::Budget(format!(
            "product has {total} points, over the {} cap",
            super::MAX_POINTS
        )));
    }

    // Tuple index = mixed-radix number, first factor most significant.
    let k = factors.len();
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for f in factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..f.n()).map(move |i| {
                    let mut t2 = t.clone();
                    t2.push(i);
                    t2
                })
            })
            .collect();
    }
    let points: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .iter()
                .enumerate()
                .map(|(fi, &pi)| factors[fi].points()[pi].as_str())
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();

    // Componentwise specialization preorder on tuples.
    let leq = |a: &[usize], b: &[usize]| -> bool {
        (0..k).all(|fi| factors[fi].specialization_leq(a[fi], b[fi]))
    };
    // Collapse to equivalence classes; `class_of[p]` maps points to classes.
    let mut class_of = vec![usize::MAX; total];
    let mut class_members: Vec<u64> = Vec::new();
    for p in 0..total {
        if class_of[p] != usize::MAX {
            continue;
        }
        let c = class_members.len();
        let mut members = 0u64;
        for q in p..total {
            if class_of[q] == usize::MAX && leq(&tuples[p], &tuples[q]) && leq(&tuples[q], &tuples[p]) {
                class_of[q] = c;
                members |= 1 << q;
            }
        }
        class_members.push(members);
    }
    let nc = class_members.len();
    // below[c] = classes ⊑ c (strictly or not), as a class mask.
    let mut below = vec![0u64; nc];
    for (c, below_c) in below.iter_mut().enumerate() {
        let rep_c = &tuples[class_members[c].trailing_zeros() as usize];
        for (b, &members_b) in class_members.iter().enumerate() {
            let rep_b = &tuples[members_b.trailing_zeros() as usize];
            if leq(rep_b, rep_c) {
                *below_c |= 1 << b;
            }
        }
    }

    // Every up-set arises from the full set by peeling minimal classes.
    let full_classes = full_mask(nc);
    let mut seen: HashSet<u64> = [full_classes, 0].into_iter().collect();
    let mut frontier = vec![full_classes];
    while let Some(u) = frontier.pop() {
        for (c, &below_c) in below.iter().enumerate() {
            let bit = 1u64 << c;
            if u & bit != 0 && below_c & u & !bit == 0 {
                let next = u & !bit;
                if seen.insert(next) {
                    if seen.len() > max_opens {
                        return Err(Error::Budget(format!(
                            "product topology exceeds {max_opens} opens"
                        )));
                    }
                    frontier.push(next);
                }
            }
        }
    }
    let opens: Vec<u64> = seen
        .into_iter()
        .map(|class_mask| {
            (0..nc)
                .filter(|&c| class_mask & (1 << c) != 0)
                .fold(0u64, |acc, c| acc | class_members[c])
        })
        .collect();
    FiniteTopSpace::new_preclosed(points, opens)
}

/// Direct box-union closure of the product opens; quadratic, test oracle
/// for `product_topology`.
#[cfg(test)]
pub(crate) fn product_topology_boxes(factors: &[FiniteTopSpace]) -> Result<FiniteTopSpace> {
    if factors.len() < 2 {
        return Err(Error::Precondition("box oracle needs ≥ 2 factors".into()));
    }
    let mut boxes: Vec<u64> = vec![0];
    let mut widths: Vec<usize> = Vec::new();
    let mut total = 1usize;
    for f in factors {
        widths.push(f.n());
        total *= f.n();
    }
    let index = |t: &[usize]| -> usize {
        let mut idx = 0;
        for (fi, &pi) in t.iter().enumerate() {
            idx = idx * widths[fi] + pi;
        }
        idx
    };
    // Enumerate every choice of one open per factor.
    let mut choice = vec![0usize; factors.len()];
    loop {
        let mut mask = 0u64;
        for p in 0..total {
            // Decode p into a tuple and test membership componentwise.
            let mut rem = p;
            let mut inside = true;
            let mut t = vec![0usize; factors.len()];
            for fi in (0..factors.len()).rev() {
                t[fi] = rem % widths[fi];
                rem /= widths[fi];
            }
            for (fi, f) in factors.iter().enumerate() {
                if f.opens()[choice[fi]] & (1 << t[fi]) == 0 {
                    inside = false;
                    break;
                }
            }
            if inside {
                mask |= 1 << index(&t);
            }
        }
        boxes.push(mask);
        let mut fi = factors.len();
        loop {
            if fi == 0 {
                // Labels built independently of `product_topology`.
                let mut points = vec![String::new(); total];
                for (p, label) in points.iter_mut().enumerate() {
                    let mut rem = p;
                    let mut t = vec![0usize; factors.len()];
                    for fj in (0..factors.len()).rev() {
                        t[fj] = rem % widths[fj];
                        rem /= widths[fj];
                    }
                    let parts: Vec<&str> = t
                        .iter()
                        .enumerate()
                        .map(|(fj, &pj)| factors[fj].points()[pj].as_str())
                        .collect();
                    *label = format!("({})", parts.join(","));
                }
                return generate_topology(points, &boxes, DEFAULT_MAX_OPENS);
            }
            fi -= 1;
            choice[fi] += 1;
            if choice[fi] < factors[fi].opens().len() {
                break;
            }
            choice[fi] = 0;
        }
    }
}
