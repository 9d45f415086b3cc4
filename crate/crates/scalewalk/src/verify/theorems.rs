//! The eight theorem checks behind `run_theorem`, one per statement.
//!
//! Every check follows the same discipline: compute the machinery's verdict,
//! compute an independent oracle's verdict, compare, and replay any mismatch
//! once before reporting it. Sampled scale enumerations only bound the true
//! components from above, so a "connected" verdict is trusted only when the
//! enumeration was exhaustive — a "disconnected" verdict is sound either way.

use std::cmp::Ordering;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec;
use crate::io;
use crate::quantale::{ExtRational, OmegaElement, QuantaleHandle, QuantaleValue};
use crate::scales::{
    ball_of_set, canonical_finest_scale, enumerate_scales, find_walk, is_member_scale,
    is_sigma_continuous, is_step, r_components, sigma_clopen_sets, sigma_components,
    AlphaSelection, EpsSelection, OmegaEpsRule, PointMap, Scale, ScaleSystem,
    StepVariant,
};
use crate::spaces::{
    closure_of, discrete, flagg_metrize, full_mask, grid, induced_topology,
    product_topology_with_budget, subspace, two_point_infinity, FiniteTopSpace, VMetricSpace,
};

use super::corpus::{enumerate_topologies, instance_rng, random_ext_metric, Corpus};
use super::report::{Counterexample, VerificationReport};
use super::{
    clopen_oracle, only_trivial, uniformly_clopen_oracle, zero_graph_components,
    zero_graph_connected,
};

/// The ids `run_theorem` dispatches on, in the order the full suite runs.
pub const THEOREM_IDS: [&str; 8] = [
    "connectedness-equivalence",
    "compactness",
    "component-properties",
    "sigma-lemma",
    "hierarchy",
    "structure",
    "interval-product",
    "alterstep",
];

/// Dispatch a theorem check by id. `seed` feeds the randomized draws of the
/// structure theorems; `sigma` overrides the system for the Σ-lemma (which
/// defaults to all scales). The interval/product check ignores the corpus —
/// it enumerates its own factors — and runs at default parameters.
pub fn run_theorem(
    id: &str,
    corpus: &Corpus,
    seed: u64,
    sigma: Option<&ScaleSystem>,
) -> Result<VerificationReport> {
    match id {
        "connectedness-equivalence" => verify_connectedness_equivalence(corpus),
        "compactness" => verify_compactness_theorem(corpus),
        "component-properties" => verify_component_properties(corpus),
        "sigma-lemma" => verify_sigma_lemma(corpus, sigma.unwrap_or(&ScaleSystem::All)),
        "hierarchy" => verify_hierarchy(corpus),
        "structure" => verify_structure_theorems(corpus, seed),
        "interval-product" => verify_interval_and_product(&IntervalProductParams::default()),
        "alterstep" => verify_alterstep(corpus),
        _ => Err(Error::Invalid(format!(
            "unknown theorem {id:?}; known ids: {}",
            THEOREM_IDS.join(", ")
        ))),
    }
}

/// Restriction every uniform-side check inherits: only the uniformity the
/// Flagg metric induces is examined, not every compatible uniformity.
const UNIFORMITY_NOTE: &str = "uniform route restricted to the Flagg-metric uniformity";

fn topology_doc(t: &FiniteTopSpace) -> String {
    io::to_canonical_string(&io::topology_to_json(t))
        .trim_end()
        .to_string()
}

fn set_label(points: &[String], mask: u64) -> String {
    let names: Vec<&str> = (0..points.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| points[i].as_str())
        .collect();
    format!("{{{}}}", names.join(","))
}

fn all_point_maps(nx: usize, ny: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; nx];
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == nx {
                return out;
            }
            cur[i] += 1;
            if cur[i] < ny {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// A Σ-connectivity verdict plus whether it can be leaned on: sampled
/// enumerations coarsen the partition, so only "disconnected" (or an
/// exhaustive run) is conclusive.
struct SystemVerdict {
    connected: bool,
    trusted: bool,
    exhausted: bool,
}

fn system_verdict(m: &VMetricSpace, sigma: &ScaleSystem, budget: usize) -> Result<SystemVerdict> {
    let sc = sigma_components(m, sigma, budget)?;
    let connected = sc.partition.n_blocks() <= 1;
    Ok(SystemVerdict {
        connected,
        trusted: sc.exhaustive || !connected,
        exhausted: sc.exhaustive,
    })
}

/// Subspace Σ\_all-connectivity with the same trust accounting.
fn subspace_verdict(m: &VMetricSpace, mask: u64, budget: usize) -> Result<SystemVerdict> {
    if mask == 0 || mask & (mask - 1) == 0 {
        return Ok(SystemVerdict {
            connected: true,
            trusted: true,
            exhausted: true,
        });
    }
    let sub = subspace(m, mask)?;
    system_verdict(&sub, &ScaleSystem::All, budget)
}

// ---------------------------------------------------------------------------
// connectedness-equivalence

/// Largest instance the all-scales enumerated route runs on: the per-point
/// pattern pools multiply out, so past this size that route costs minutes
/// per corpus while the canonical, uniform, and clopen routes stay cheap
/// at every size.
const ENUM_ROUTE_MAX_POINTS: usize = 3;

struct EquivalenceOutcome {
    oracle: bool,
    routes: Vec<(&'static str, bool)>,
    skipped: Vec<String>,
    exhausted: bool,
}

fn equivalence_routes(t: &FiniteTopSpace, budget: usize) -> Result<EquivalenceOutcome> {
    let oracle = t.n() > 0 && only_trivial(&clopen_oracle(t), t.full_mask());
    let m = flagg_metrize(t)?;
    let mut routes = Vec::new();
    let mut skipped = Vec::new();
    let mut exhausted = true;

    let canonical = canonical_finest_scale(&m)?;
    let canon = r_components(&m, &canonical, StepVariant::Strict)?.n_blocks() <= 1;
    routes.push(("canonical-scale components", canon));

    let mut systems = vec![("uniform components", ScaleSystem::Uniform)];
    if t.n() <= ENUM_ROUTE_MAX_POINTS {
        systems.insert(0, ("all-scales components", ScaleSystem::All));
    } else {
        skipped.push(format!(
            "all-scales route restricted to instances with ≤ {ENUM_ROUTE_MAX_POINTS} points"
        ));
    }
    for (name, sigma) in systems {
        let v = system_verdict(&m, &sigma, budget)?;
        exhausted &= v.exhausted;
        if v.trusted {
            routes.push((name, v.connected));
        } else {
            skipped.push(format!("{name} route sampled past the budget on some instances"));
        }
    }

    let uclopen = only_trivial(&uniformly_clopen_oracle(&m)?, t.full_mask());
    routes.push(("uniformly-clopen oracle", uclopen));

    Ok(EquivalenceOutcome {
        oracle,
        routes,
        skipped,
        exhausted,
    })
}

/// Connectedness of the space, of its Flagg metrization under the canonical
/// scale, under every enumerated scale, and of the induced uniformity must
/// be one and the same verdict, with the clopen scan as the oracle.
pub fn verify_connectedness_equivalence(corpus: &Corpus) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("connectedness-equivalence");
    report.note(UNIFORMITY_NOTE);
    report.note(format!("corpus {}", corpus.describe()));
    let budget = corpus.scale_budget();
    let outcomes = exec::map_collect(corpus.spaces(), |t| equivalence_routes(t, budget));
    let mut exhausted = corpus.is_exhaustive();
    for (t, outcome) in corpus.spaces().iter().zip(outcomes) {
        let outcome = outcome?;
        report.count_instances(1);
        exhausted &= outcome.exhausted;
        for note in outcome.skipped {
            report.note(note);
        }
        if let Some(&(route, verdict)) = outcome
            .routes
            .iter()
            .find(|(_, v)| *v != outcome.oracle)
        {
            let again = equivalence_routes(t, budget)?;
            let mut witness = format!(
                "clopen oracle says connected={}, but the {} route says {}",
                outcome.oracle, route, verdict
            );
            if again.routes.iter().all(|(_, v)| *v == again.oracle) {
                witness.push_str(" [replay diverged]");
            }
            report.fail(topology_doc(t), witness);
        }
    }
    report.require_exhausted(exhausted);
    Ok(report)
}

// ---------------------------------------------------------------------------
// compactness

fn compactness_instance(t: &FiniteTopSpace, budget: usize) -> Result<(Option<String>, bool)> {
    let conn = only_trivial(&clopen_oracle(t), t.full_mask());
    let m = flagg_metrize(t)?;
    let mut exhausted = true;
    let mut systems = vec![("uniform connectedness", ScaleSystem::Uniform)];
    if t.n() <= ENUM_ROUTE_MAX_POINTS {
        systems.insert(0, ("Σ-connectedness", ScaleSystem::All));
    }
    for (name, sigma) in systems {
        let v = system_verdict(&m, &sigma, budget)?;
        if !v.trusted {
            exhausted = false;
            continue;
        }
        if v.connected != conn {
            return Ok((
                Some(format!(
                    "finite (hence compact) space is topologically connected={conn} but {name} is {}",
                    v.connected
                )),
                exhausted,
            ));
        }
    }
    Ok((None, exhausted))
}

/// Replays the proof that uniform connectedness plus compactness forces
/// connectedness, for one scale: halve the radii, extract a finite subcover
/// of the halved balls, take the positive meet ε of the kept radii, split
/// each weak ε-step through a covering centre, then splice ε-walks into
/// R-walks — checking every inequality the argument asserts.
fn halving_replay(m: &VMetricSpace, r: &Scale) -> Result<Option<String>> {
    let q = m.quantale();
    let n = m.n();
    let mut halved = Vec::with_capacity(n);
    for x in 0..n {
        let h = q.positive_halve(r.radius(x))?;
        if !q.is_positive(&h)? {
            return Ok(Some("halved radius lost positivity".into()));
        }
        if !q.leq(&q.add(&h, &h)?, r.radius(x))? {
            return Ok(Some("R'(x) + R'(x) ≰ R(x) after halving".into()));
        }
        halved.push(h);
    }
    let rp = Scale::new(m, halved, format!("{}-halved", r.id()))?;

    let mut centres = Vec::new();
    let mut covered = 0u64;
    for x in 0..n {
        if covered >> x & 1 == 0 {
            centres.push(x);
            covered |= ball_of_set(m, &rp, 1 << x)?;
        }
    }
    if covered != full_mask(n) {
        return Ok(Some("halved balls around their own centres fail to cover".into()));
    }

    let eps = q.meet_many(centres.iter().map(|&k| rp.radius(k)))?;
    if !q.is_positive(&eps)? {
        return Ok(Some(
            "finite meet of positive radii is not positive".into(),
        ));
    }

    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let fwd = q.leq(m.dist(x, y), &eps)?;
            if !fwd && !q.leq(m.dist(y, x), &eps)? {
                continue;
            }
            if let Err(broken) = split_step(m, r, &rp, &centres, x, y, fwd)? {
                return Ok(Some(broken));
            }
        }
    }

    let eps_scale = Scale::uniform(m, eps.clone())?;
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let Some(walk) = find_walk(m, &eps_scale, a, b, StepVariant::Weak)? else {
                return Ok(Some(format!(
                    "uniformly connected instance has no weak ε-walk from {a} to {b}"
                )));
            };
            let mut spliced = vec![a];
            for w in walk.indices().windows(2) {
                let fwd = q.leq(m.dist(w[0], w[1]), &eps)?;
                match split_step(m, r, &rp, &centres, w[0], w[1], fwd)? {
                    Ok(k) => {
                        spliced.push(k);
                        spliced.push(w[1]);
                    }
                    Err(broken) => return Ok(Some(broken)),
                }
            }
            for w in spliced.windows(2) {
                if w[0] != w[1] && !is_step(m, r, w[0], w[1], StepVariant::Weak)? {
                    return Ok(Some(format!(
                        "spliced pair ({},{}) is not a weak R-step",
                        w[0], w[1]
                    )));
                }
            }
            if spliced.first() != Some(&a) || spliced.last() != Some(&b) {
                return Ok(Some("splicing lost a walk endpoint".into()));
            }
        }
    }
    Ok(None)
}

/// One weak ε-step split through a covering centre; returns the centre or
/// the first inequality of the argument that failed to hold.
fn split_step(
    m: &VMetricSpace,
    r: &Scale,
    rp: &Scale,
    centres: &[usize],
    x: usize,
    y: usize,
    forward: bool,
) -> Result<std::result::Result<usize, String>> {
    let q = m.quantale();
    let (anchor, other) = if forward { (x, y) } else { (y, x) };
    let mut centre = None;
    for &k in centres {
        if q.well_above(rp.radius(k), m.dist(k, anchor))? {
            centre = Some(k);
            break;
        }
    }
    let Some(k) = centre else {
        return Ok(Err(format!("no halved ball covers point {anchor}")));
    };
    let leg = q.add(m.dist(k, anchor), m.dist(anchor, other))?;
    let doubled = q.add(rp.radius(k), rp.radius(k))?;
    let claims = [
        ("d(k,·) ≰ d(k,anchor) + step", q.leq(m.dist(k, other), &leg)?),
        ("d(k,anchor) + step ≰ 2R'(k)", q.leq(&leg, &doubled)?),
        ("2R'(k) ≰ R(k)", q.leq(&doubled, r.radius(k))?),
        ("d(k,anchor) ≰ R(k)", q.leq(m.dist(k, anchor), r.radius(k))?),
        ("d(k,other) ≰ R(k)", q.leq(m.dist(k, other), r.radius(k))?),
    ];
    for (claim, ok) in claims {
        if !ok {
            return Ok(Err(format!("ε-step ({x},{y}) through centre {k}: {claim}")));
        }
    }
    Ok(Ok(k))
}

const REPLAY_CAP: usize = 40;

/// On finite spaces connectedness and uniform connectedness must coincide,
/// and the halving argument behind the compact converse replays cleanly on
/// connected instances.
pub fn verify_compactness_theorem(corpus: &Corpus) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("compactness");
    report.note(UNIFORMITY_NOTE);
    report.note(format!("corpus {}", corpus.describe()));
    let budget = corpus.scale_budget();
    if corpus.spaces().iter().any(|t| t.n() > ENUM_ROUTE_MAX_POINTS) {
        report.note(format!(
            "Σ-connectedness route restricted to instances with ≤ {ENUM_ROUTE_MAX_POINTS} points"
        ));
    }
    let outcomes = exec::map_collect(corpus.spaces(), |t| compactness_instance(t, budget));
    let mut exhausted = corpus.is_exhaustive();
    for (t, outcome) in corpus.spaces().iter().zip(outcomes) {
        let (witness, instance_exhausted) = outcome?;
        report.count_instances(1);
        exhausted &= instance_exhausted;
        if let Some(w) = witness {
            let w = match compactness_instance(t, budget)?.0 {
                Some(_) => w,
                None => format!("{w} [replay diverged]"),
            };
            report.fail(topology_doc(t), w);
        }
    }

    let mut replayed_instances = 0usize;
    let mut replayed_scales = 0usize;
    for t in corpus.spaces() {
        if replayed_instances >= REPLAY_CAP || t.n() > 3 {
            continue;
        }
        if !only_trivial(&clopen_oracle(t), t.full_mask()) {
            continue;
        }
        let m = flagg_metrize(t)?;
        let mut scales = vec![canonical_finest_scale(&m)?];
        scales.extend(enumerate_scales(&m, &ScaleSystem::All, budget)?.scales);
        scales.truncate(17);
        for r in &scales {
            replayed_scales += 1;
            if let Some(broken) = halving_replay(&m, r)? {
                let broken = match halving_replay(&m, r)? {
                    Some(_) => broken,
                    None => format!("{broken} [replay diverged]"),
                };
                report.fail(topology_doc(t), format!("scale {}: {broken}", r.id()));
            }
        }
        replayed_instances += 1;
    }
    report.note(format!(
        "halving argument replayed on {replayed_instances} connected instances ({replayed_scales} scales)"
    ));
    report.require_exhausted(exhausted);
    Ok(report)
}

// ---------------------------------------------------------------------------
// component-properties

fn component_fixity(t: &FiniteTopSpace, budget: usize) -> Result<(Option<String>, bool)> {
    let m = flagg_metrize(t)?;
    let full = full_mask(m.n());
    let en = enumerate_scales(&m, &ScaleSystem::All, budget)?;
    for r in &en.scales {
        let parts = r_components(&m, r, StepVariant::Strict)?;
        for &block in parts.blocks() {
            if ball_of_set(&m, r, block)? != block {
                return Ok((
                    Some(format!(
                        "component {} of scale {} is not ball-fixed",
                        set_label(m.points(), block),
                        r.id()
                    )),
                    en.exhaustive,
                ));
            }
            let co = full & !block;
            if co != 0 && ball_of_set(&m, r, co)? != co {
                return Ok((
                    Some(format!(
                        "complement of component {} of scale {} is not ball-fixed",
                        set_label(m.points(), block),
                        r.id()
                    )),
                    en.exhaustive,
                ));
            }
        }
    }
    let sc = sigma_components(&m, &ScaleSystem::All, budget)?;
    for &block in sc.partition.blocks() {
        if closure_of(&m, block)? != block {
            return Ok((
                Some(format!(
                    "Σ-component {} is not closed",
                    set_label(m.points(), block)
                )),
                en.exhaustive && sc.exhaustive,
            ));
        }
    }
    Ok((None, en.exhaustive && sc.exhaustive))
}

const MAP_ENUM_CAP: u128 = 256;
const MAP_SAMPLES: usize = 8;

/// Components and their complements are fixed by their own balls, the
/// all-scales component of a point is closed, and continuous images of
/// connected sets stay connected.
pub fn verify_component_properties(corpus: &Corpus) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("component-properties");
    report.note(format!("corpus {}", corpus.describe()));
    let budget = corpus.scale_budget();
    let outcomes = exec::map_collect(corpus.spaces(), |t| component_fixity(t, budget));
    let mut exhausted = corpus.is_exhaustive();
    for (t, outcome) in corpus.spaces().iter().zip(outcomes) {
        let (witness, instance_exhausted) = outcome?;
        report.count_instances(1);
        exhausted &= instance_exhausted;
        if let Some(w) = witness {
            let w = match component_fixity(t, budget)?.0 {
                Some(_) => w,
                None => format!("{w} [replay diverged]"),
            };
            report.fail(topology_doc(t), w);
        }
    }

    // Image phase: maps from each instance to itself and to its successor,
    // enumerated completely when small and sampled otherwise. Only exact
    // continuity verdicts and exactly-known source components are used, so
    // a failed image check is a genuine counterexample.
    let small: Vec<&FiniteTopSpace> = corpus.spaces().iter().filter(|t| t.n() <= 3).collect();
    let mut checked_maps = 0usize;
    for (i, &tx) in small.iter().enumerate() {
        let mx = flagg_metrize(tx)?;
        let sx = sigma_components(&mx, &ScaleSystem::All, budget)?;
        if !sx.exhaustive {
            report.require_exhausted(false);
            continue;
        }
        let mut partners = vec![i];
        if small.len() > 1 {
            partners.push((i + 1) % small.len());
        }
        for j in partners {
            let ty = small[j];
            let my = flagg_metrize(ty)?;
            let total = (my.n() as u128).saturating_pow(mx.n() as u32);
            let maps = if total <= MAP_ENUM_CAP {
                all_point_maps(mx.n(), my.n())
            } else {
                report.require_exhausted(false);
                let mut rng = instance_rng(corpus.seed(), 0x4d00_0000 ^ ((i as u64) << 16 | j as u64));
                (0..MAP_SAMPLES)
                    .map(|_| (0..mx.n()).map(|_| rng.gen_range(0..my.n())).collect())
                    .collect()
            };
            for indices in maps {
                let f = PointMap::new(&mx, &my, indices)?;
                let cont = is_sigma_continuous(&mx, &my, &f, &ScaleSystem::All, budget)?;
                if !cont.exact {
                    report.require_exhausted(false);
                    continue;
                }
                if !cont.continuous {
                    continue;
                }
                checked_maps += 1;
                for &block in sx.partition.blocks() {
                    let image = (0..mx.n())
                        .filter(|&x| block >> x & 1 == 1)
                        .fold(0u64, |acc, x| acc | 1 << f.apply(x));
                    let v = subspace_verdict(&my, image, budget)?;
                    if !v.connected {
                        let witness = format!(
                            "continuous image {} of connected {} is disconnected",
                            set_label(my.points(), image),
                            set_label(mx.points(), block),
                        );
                        report.fail(topology_doc(tx), witness);
                    }
                }
            }
        }
    }
    report.note(format!(
        "image phase checked {checked_maps} continuous maps on instances with ≤ 3 points"
    ));
    report.require_exhausted(exhausted);
    Ok(report)
}

// ---------------------------------------------------------------------------
// sigma-lemma

fn is_sigma_discrete(m: &VMetricSpace, sigma: &ScaleSystem) -> Result<bool> {
    let clopens = sigma_clopen_sets(m, sigma)?;
    Ok((0..m.n()).all(|z| clopens.contains(&(1 << z))))
}

fn sigma_discrete_targets(sigma: &ScaleSystem) -> Result<Vec<(String, VMetricSpace)>> {
    let mut candidates = vec![("two_point_infinity".to_string(), two_point_infinity())];
    for n in [2usize, 3] {
        candidates.push((
            format!("flagg(discrete({n}))"),
            flagg_metrize(&discrete(n)?)?,
        ));
    }
    let mut out = Vec::new();
    for (name, m) in candidates {
        if is_sigma_discrete(&m, sigma)? {
            out.push((name, m));
        }
    }
    Ok(out)
}

struct LemmaOutcome {
    witness: Option<String>,
    exhausted: bool,
}

fn sigma_lemma_instance(
    t: &FiniteTopSpace,
    sigma: &ScaleSystem,
    targets: &[(String, VMetricSpace)],
    budget: usize,
) -> Result<LemmaOutcome> {
    let m = flagg_metrize(t)?;
    let n = m.n();
    let full = full_mask(n);
    let mut exhausted = true;

    let walks = system_verdict(&m, sigma, budget)?;
    exhausted &= walks.trusted;

    let clopens = sigma_clopen_sets(&m, sigma)?;
    let no_nontrivial_clopen = only_trivial(&clopens, full);

    // Maps into {•,∘}: all 2^n of them; constants must come back continuous
    // and any continuous nonconstant map falsifies the verdict.
    let tpi = two_point_infinity();
    let mut two_point_constant = true;
    for mask in 0..=full {
        let indices: Vec<usize> = (0..n).map(|x| (mask >> x & 1) as usize).collect();
        let f = PointMap::new(&m, &tpi, indices)?;
        let cont = is_sigma_continuous(&m, &tpi, &f, sigma, budget)?;
        exhausted &= cont.exact;
        let constant = mask == 0 || mask == full;
        if constant && cont.exact && !cont.continuous {
            return Ok(LemmaOutcome {
                witness: Some(format!(
                    "constant map to {{•,∘}} judged discontinuous (mask {mask:b})"
                )),
                exhausted,
            });
        }
        if !constant && cont.continuous && cont.exact {
            two_point_constant = false;
        }
    }

    // Maps into every Σ-discrete target, enumerated completely.
    let mut discrete_constant = true;
    'targets: for (_, target) in targets {
        let total = (target.n() as u128).saturating_pow(n as u32);
        if total > 4096 {
            exhausted = false;
            continue;
        }
        for indices in all_point_maps(n, target.n()) {
            let constant = indices.iter().all(|&i| i == indices[0]);
            if constant {
                continue;
            }
            let f = PointMap::new(&m, target, indices)?;
            let cont = is_sigma_continuous(&m, target, &f, sigma, budget)?;
            exhausted &= cont.exact;
            if cont.continuous && cont.exact {
                discrete_constant = false;
                break 'targets;
            }
        }
    }

    let verdicts = [
        ("Σ-walk connectivity", walks.connected),
        ("maps to Σ-discrete targets all constant", discrete_constant),
        ("maps to {•,∘} all constant", two_point_constant),
        ("only trivial Σ-clopen sets", no_nontrivial_clopen),
    ];
    if walks.trusted {
        if let Some(&(name, v)) = verdicts.iter().find(|(_, v)| *v != walks.connected) {
            return Ok(LemmaOutcome {
                witness: Some(format!(
                    "verdicts diverge: Σ-walks say connected={} but {name} says {v}",
                    walks.connected
                )),
                exhausted,
            });
        }
    }

    // The lemma's proof builds an indicator map from any nontrivial Σ-clopen
    // set; every one found must indeed be Σ-continuous and nonconstant.
    if exhausted {
        for &c in clopens.iter().filter(|&&c| c != 0 && c != full) {
            let indices: Vec<usize> = (0..n).map(|x| usize::from(c >> x & 1 == 0)).collect();
            let f = PointMap::new(&m, &tpi, indices)?;
            let cont = is_sigma_continuous(&m, &tpi, &f, sigma, budget)?;
            if !cont.continuous {
                return Ok(LemmaOutcome {
                    witness: Some(format!(
                        "indicator of Σ-clopen {} is not Σ-continuous",
                        set_label(m.points(), c)
                    )),
                    exhausted,
                });
            }
        }
    }

    Ok(LemmaOutcome {
        witness: None,
        exhausted,
    })
}

/// The four-way equivalence for Σ-connectedness: walks, maps to Σ-discrete
/// targets, maps to the two-point space with infinite distances, and the
/// absence of nontrivial Σ-clopen sets must all give one verdict, and every
/// Σ-discrete target must be totally Σ-disconnected.
pub fn verify_sigma_lemma(corpus: &Corpus, sigma: &ScaleSystem) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("sigma-lemma");
    report.note(format!("corpus {}", corpus.describe()));
    report.note(format!("sigma {}", sigma.id()));
    let budget = corpus.scale_budget();
    let targets = sigma_discrete_targets(sigma)?;
    let names: Vec<&str> = targets.iter().map(|(n, _)| n.as_str()).collect();
    report.note(format!("Σ-discrete targets sampled: [{}]", names.join(", ")));
    report.require_exhausted(false);

    for (name, target) in &targets {
        let tc = sigma_components(target, sigma, budget)?;
        if let Some(&block) = tc.partition.blocks().iter().find(|b| b.count_ones() > 1) {
            report.fail(
                name.clone(),
                format!(
                    "Σ-discrete target has a non-singleton component {}",
                    set_label(target.points(), block)
                ),
            );
        }
    }

    let outcomes = exec::map_collect(corpus.spaces(), |t| {
        sigma_lemma_instance(t, sigma, &targets, budget)
    });
    let mut inexact = 0usize;
    for (t, outcome) in corpus.spaces().iter().zip(outcomes) {
        let outcome = outcome?;
        report.count_instances(1);
        if !outcome.exhausted {
            inexact += 1;
        }
        if let Some(w) = outcome.witness {
            let w = match sigma_lemma_instance(t, sigma, &targets, budget)?.witness {
                Some(_) => w,
                None => format!("{w} [replay diverged]"),
            };
            report.fail(topology_doc(t), w);
        }
    }
    if inexact > 0 {
        report.note(format!(
            "{inexact} instances ran with sampled enumerations; their verdicts are one-sided"
        ));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// hierarchy

/// The identity expansion map on the values the instance actually takes —
/// the simplest Σ\_α whose membership question is nontrivial.
fn identity_alpha(m: &VMetricSpace) -> Result<AlphaSelection> {
    if m.quantale().ground().is_some() {
        let mut keys: Vec<OmegaElement> = Vec::new();
        for row in m.matrix() {
            for v in row {
                let e = v.as_omega().expect("omega metric carries omega values");
                if !keys.contains(e) {
                    keys.push(e.clone());
                }
            }
        }
        AlphaSelection::omega_table(keys.into_iter().map(|e| (e.clone(), e)).collect())
    } else {
        let mut vals: Vec<ExtRational> = vec![ExtRational::zero()];
        for row in m.matrix() {
            for v in row {
                let r = v.as_rational().expect("rational metric carries rationals");
                if !vals.contains(r) {
                    vals.push(r.clone());
                }
            }
        }
        vals.sort_by(|a, b| {
            if a == b {
                Ordering::Equal
            } else if &a.meet(b) == a {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        });
        AlphaSelection::rational_steps(vals.into_iter().map(|r| (r.clone(), r)).collect())
    }
}

fn shipped_systems(m: &VMetricSpace) -> Result<Vec<(&'static str, ScaleSystem)>> {
    Ok(vec![
        ("all", ScaleSystem::All),
        ("bounded-below-exists", ScaleSystem::BoundedBelowExists),
        ("uniform", ScaleSystem::Uniform),
        (
            "bounded-below-fixed",
            ScaleSystem::BoundedBelowFixed(EpsSelection::PerQuantale {
                ext: ExtRational::ratio(1, 2)?,
                omega: OmegaEpsRule::DownEmpty,
            }),
        ),
        ("expansion-rate", ScaleSystem::ExpansionRate(identity_alpha(m)?)),
    ])
}

/// Containments between systems and the verdicts they force.
const HIERARCHY_ORDER: [(&str, &str); 4] = [
    ("all", "bounded-below-exists"),
    ("bounded-below-exists", "uniform"),
    ("bounded-below-exists", "bounded-below-fixed"),
    ("all", "expansion-rate"),
];

fn hierarchy_instance(
    m: &VMetricSpace,
    oracle_connected: bool,
    budget: usize,
) -> Result<(Option<String>, bool)> {
    let systems = shipped_systems(m)?;
    let mut verdicts: Vec<(&'static str, SystemVerdict)> = Vec::new();
    let mut exhausted = true;
    for (name, sigma) in systems {
        let v = system_verdict(m, &sigma, budget)?;
        exhausted &= v.trusted;
        verdicts.push((name, v));
    }
    let get = |name: &str| verdicts.iter().find(|(n, _)| *n == name).map(|(_, v)| v);
    for (larger, smaller) in HIERARCHY_ORDER {
        let (big, small) = (get(larger).unwrap(), get(smaller).unwrap());
        if big.trusted && small.trusted && big.connected && !small.connected {
            return Ok((
                Some(format!(
                    "{larger}-connected instance is not {smaller}-connected, violating Σ' ⊆ Σ monotonicity"
                )),
                exhausted,
            ));
        }
    }
    // Main theorem anchor: the topological verdict must match Σ_all exactly
    // and force every smaller system's verdict to "connected".
    let all = get("all").unwrap();
    if all.trusted && all.connected != oracle_connected {
        return Ok((
            Some(format!(
                "topologically connected={oracle_connected} but all-scales verdict is {}",
                all.connected
            )),
            exhausted,
        ));
    }
    if oracle_connected {
        for (name, v) in &verdicts {
            if v.trusted && !v.connected {
                return Ok((
                    Some(format!("connected instance fails {name}-connectedness")),
                    exhausted,
                ));
            }
        }
    }
    Ok((None, exhausted))
}

/// Smaller scale systems can only be easier to connect: verdicts must be
/// monotone along every shipped containment, and topological connectedness
/// forces them all.
pub fn verify_hierarchy(corpus: &Corpus) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("hierarchy");
    report.note(format!("corpus {}", corpus.describe()));
    report.note(
        "systems: all ⊇ bounded-below-exists ⊇ {uniform, bounded-below-fixed(1/2 | ↓∅)}; all ⊇ expansion-rate(identity)",
    );
    let budget = corpus.scale_budget();
    let mut exhausted = corpus.is_exhaustive();

    for t in corpus.spaces() {
        let oracle = only_trivial(&clopen_oracle(t), t.full_mask());
        let m = flagg_metrize(t)?;
        report.count_instances(1);
        let (witness, instance_exhausted) = hierarchy_instance(&m, oracle, budget)?;
        exhausted &= instance_exhausted;
        if let Some(w) = witness {
            let w = match hierarchy_instance(&m, oracle, budget)?.0 {
                Some(_) => w,
                None => format!("{w} [replay diverged]"),
            };
            report.fail(topology_doc(t), w);
        }
    }

    // Fixed rational-side extras: the corpus is all Flagg metrics, so these
    // keep the ext quantale in the hierarchy picture.
    let mut extras: Vec<(String, VMetricSpace)> = vec![
        ("grid(5,1/4)".into(), grid(5, &ExtRational::ratio(1, 4)?)?),
        ("grid(3,1/2)".into(), grid(3, &ExtRational::ratio(1, 2)?)?),
        ("two_point_infinity".into(), two_point_infinity()),
    ];
    for k in 0..4u64 {
        let mut rng = instance_rng(corpus.seed(), 0xe100_0000 + k);
        let m = random_ext_metric(4, k % 2 == 0, &mut rng)?;
        extras.push((format!("random_ext_metric(4, symmetric={}, draw {k})", k % 2 == 0), m));
    }
    for (desc, m) in &extras {
        let oracle = only_trivial(
            &clopen_oracle(&induced_topology(m)?),
            full_mask(m.n()),
        );
        report.count_instances(1);
        let (witness, _) = hierarchy_instance(m, oracle, budget)?;
        if let Some(w) = witness {
            let w = match hierarchy_instance(m, oracle, budget)?.0 {
                Some(_) => w,
                None => format!("{w} [replay diverged]"),
            };
            report.fail(desc.clone(), w);
        }
    }
    report.note("extras: grid(5,1/4), grid(3,1/2), two_point_infinity, 4 random rational metrics");
    report.require_exhausted(exhausted);
    Ok(report)
}

// ---------------------------------------------------------------------------
// structure

const STRUCTURE_DRAWS: usize = 500;

/// Scale budget for the draw pool: draws keep at most 16 scales per entry,
/// so there is no point enumerating past a small sample.
const POOL_SCALE_BUDGET: usize = 64;

struct PoolEntry {
    desc: String,
    m: VMetricSpace,
    components: Vec<u64>,
    scales: Vec<Scale>,
}

struct StructurePool {
    entries: Vec<PoolEntry>,
    grid_index: usize,
    grid_eps: QuantaleValue,
}

fn pool_entry(desc: String, m: VMetricSpace) -> Result<PoolEntry> {
    let components = zero_graph_components(&m);
    let mut scales = enumerate_scales(&m, &ScaleSystem::All, POOL_SCALE_BUDGET)?.scales;
    scales.truncate(16);
    Ok(PoolEntry {
        desc,
        m,
        components,
        scales,
    })
}

fn build_pool(corpus: &Corpus, seed: u64) -> Result<StructurePool> {
    let mut entries = Vec::new();
    for t in corpus.spaces() {
        entries.push(pool_entry(topology_doc(t), flagg_metrize(t)?)?);
    }
    for k in 0..4u64 {
        let mut rng = instance_rng(seed, 0xe000_0000 + k);
        let m = random_ext_metric(4, k % 2 == 0, &mut rng)?;
        entries.push(pool_entry(
            format!("random_ext_metric(4, symmetric={}, draw {k})", k % 2 == 0),
            m,
        )?);
    }
    let eighth = ExtRational::ratio(1, 8)?;
    entries.push(pool_entry("grid(9,1/8)".into(), grid(9, &eighth)?)?);
    Ok(StructurePool {
        grid_index: entries.len() - 1,
        entries,
        grid_eps: QuantaleValue::Rational(eighth),
    })
}

/// Closure theorem draw: a connected C (an all-scales component of a random
/// point), a random D between C and its closure; D must come back connected.
fn draw_closure(e: &PoolEntry, rng: &mut ChaCha8Rng) -> Result<Option<Counterexample>> {
    let n = e.m.n();
    let z = rng.gen_range(0..n);
    let c = e
        .components
        .iter()
        .copied()
        .find(|b| b >> z & 1 == 1)
        .expect("point in a block");
    let k = closure_of(&e.m, c)?;
    let mut d = c;
    for i in 0..n {
        if k >> i & 1 == 1 && d >> i & 1 == 0 && rng.gen_bool(0.5) {
            d |= 1 << i;
        }
    }
    if zero_graph_connected(&e.m, d) {
        Ok(None)
    } else {
        Ok(Some(Counterexample {
            instance: e.desc.clone(),
            witness: format!(
                "closure: C={} is connected but D={} inside cl(C)={} is not",
                set_label(e.m.points(), c),
                set_label(e.m.points(), d),
                set_label(e.m.points(), k),
            ),
        }))
    }
}

/// Chain theorem draw on zero-distance links: consecutive pair sets along a
/// random specialization path intersect, so their union must be connected.
fn draw_chain_links(e: &PoolEntry, rng: &mut ChaCha8Rng) -> Result<Option<Counterexample>> {
    let n = e.m.n();
    let q = e.m.quantale();
    let zero = q.zero();
    let start = rng.gen_range(0..n);
    let mut path = vec![start];
    for _ in 0..3 {
        let last = *path.last().expect("nonempty path");
        let nbrs: Vec<usize> = (0..n)
            .filter(|&y| {
                y != last && (*e.m.dist(last, y) == zero || *e.m.dist(y, last) == zero)
            })
            .collect();
        if nbrs.is_empty() {
            break;
        }
        path.push(nbrs[rng.gen_range(0..nbrs.len())]);
    }
    let sets: Vec<u64> = if path.len() == 1 {
        vec![1 << start]
    } else {
        path.windows(2).map(|w| 1 << w[0] | 1 << w[1]).collect()
    };
    for &s in &sets {
        if !zero_graph_connected(&e.m, s) {
            return Ok(Some(Counterexample {
                instance: e.desc.clone(),
                witness: format!(
                    "chain: zero-linked pair {} is not connected",
                    set_label(e.m.points(), s)
                ),
            }));
        }
    }
    let union = sets.iter().fold(0u64, |a, &b| a | b);
    if zero_graph_connected(&e.m, union) {
        Ok(None)
    } else {
        Ok(Some(Counterexample {
            instance: e.desc.clone(),
            witness: format!(
                "chain: union {} of pairwise-linked sets is disconnected",
                set_label(e.m.points(), union)
            ),
        }))
    }
}

/// Chain theorem draw on the grid: contiguous ranges sharing endpoints are
/// each ε-connected at ε = the spacing (weak steps), so their union is too.
fn draw_chain_ranges(
    e: &PoolEntry,
    eps: &QuantaleValue,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Counterexample>> {
    let n = e.m.n();
    let mut c1 = rng.gen_range(0..n);
    let mut c2 = rng.gen_range(0..n);
    if c1 > c2 {
        std::mem::swap(&mut c1, &mut c2);
    }
    let range_mask = |lo: usize, hi: usize| (lo..=hi).fold(0u64, |a, i| a | 1 << i);
    let sets = [
        range_mask(0, c1),
        range_mask(c1, c2),
        range_mask(c2, n - 1),
    ];
    let connected_at_eps = |mask: u64| -> Result<bool> {
        let sub = subspace(&e.m, mask)?;
        let r = Scale::uniform(&sub, eps.clone())?;
        Ok(r_components(&sub, &r, StepVariant::Weak)?.n_blocks() <= 1)
    };
    for &s in &sets {
        if !connected_at_eps(s)? {
            return Ok(Some(Counterexample {
                instance: e.desc.clone(),
                witness: format!(
                    "chain: contiguous range {} is not weakly ε-connected at the spacing",
                    set_label(e.m.points(), s)
                ),
            }));
        }
    }
    let union = sets.iter().fold(0u64, |a, &b| a | b);
    if connected_at_eps(union)? {
        Ok(None)
    } else {
        Ok(Some(Counterexample {
            instance: e.desc.clone(),
            witness: format!(
                "chain: union {} of endpoint-sharing ranges is not weakly ε-connected",
                set_label(e.m.points(), union)
            ),
        }))
    }
}

/// Common-point theorem draw: connected balls around one point, together
/// with the point itself; the union must be connected.
fn draw_common(e: &PoolEntry, rng: &mut ChaCha8Rng) -> Result<Option<Counterexample>> {
    let n = e.m.n();
    let z = rng.gen_range(0..n);
    let mut family = vec![1u64 << z];
    for _ in 0..3 {
        if e.scales.is_empty() {
            break;
        }
        let r = &e.scales[rng.gen_range(0..e.scales.len())];
        let ball = ball_of_set(&e.m, r, 1 << z)?;
        if zero_graph_connected(&e.m, ball) {
            family.push(ball);
        }
    }
    let union = family.iter().fold(0u64, |a, &b| a | b);
    if zero_graph_connected(&e.m, union) {
        Ok(None)
    } else {
        Ok(Some(Counterexample {
            instance: e.desc.clone(),
            witness: format!(
                "common point: union {} of connected balls around {} is disconnected",
                set_label(e.m.points(), union),
                e.m.points()[z],
            ),
        }))
    }
}

/// Records, per shipped system, whether restricting member scales to random
/// subsets stayed inside the system on the drawn samples.
fn hereditary_notes(
    pool: &StructurePool,
    seed: u64,
    budget: usize,
    report: &mut VerificationReport,
) -> Result<()> {
    let names = [
        "all",
        "bounded-below-exists",
        "uniform",
        "bounded-below-fixed",
        "expansion-rate",
    ];
    for (si, name) in names.iter().enumerate() {
        let mut samples = 0usize;
        let mut witness: Option<String> = None;
        'entries: for (ei, e) in pool.entries.iter().enumerate().take(6) {
            let n = e.m.n();
            if n < 2 {
                continue;
            }
            let sigma = shipped_systems(&e.m)?.swap_remove(si).1;
            let mut rng = instance_rng(seed, 0xb000_0000 + ((si as u64) << 8) + ei as u64);
            let en = enumerate_scales(&e.m, &sigma, budget)?;
            for r in en.scales.iter().take(4) {
                for _ in 0..2 {
                    let mask = rng.gen_range(1..full_mask(n));
                    let sub = subspace(&e.m, mask)?;
                    let radii: Vec<QuantaleValue> = (0..n)
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| r.radius(i).clone())
                        .collect();
                    let restricted = Scale::new(&sub, radii, format!("{}|sub", r.id()))?;
                    samples += 1;
                    if !is_member_scale(&sub, &restricted, &sigma)? {
                        witness = Some(format!(
                            "restriction of {} to {} on {} leaves the system",
                            r.id(),
                            set_label(e.m.points(), mask),
                            e.desc,
                        ));
                        break 'entries;
                    }
                }
            }
        }
        report.note(match witness {
            Some(w) => format!("hereditary status: {name}: not hereditary — {w}"),
            None => format!(
                "hereditary status: {name}: restrictions stayed in the system on {samples} samples"
            ),
        });
    }
    Ok(())
}

/// Closure, chain-union, and common-point theorems on randomized draws.
pub fn verify_structure_theorems(corpus: &Corpus, seed: u64) -> Result<VerificationReport> {
    verify_structure_theorems_with_draws(corpus, seed, STRUCTURE_DRAWS)
}

/// The draw-count-parameterized body of `verify_structure_theorems`.
pub fn verify_structure_theorems_with_draws(
    corpus: &Corpus,
    seed: u64,
    draws: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("structure");
    report.note(format!("corpus {}", corpus.describe()));
    report.note(format!(
        "{draws} draws per theorem over the corpus metrics, 4 random rational metrics, and grid(9,1/8)"
    ));
    report.require_exhausted(false);
    let budget = corpus.scale_budget();
    let pool = build_pool(corpus, seed)?;

    let indices: Vec<usize> = (0..draws).collect();
    let run = |tag: u64, which: &(dyn Fn(&PoolEntry, &mut ChaCha8Rng) -> Result<Option<Counterexample>> + Sync)| -> Vec<Result<Option<Counterexample>>> {
        exec::map_collect(&indices, |&k| {
            let e = &pool.entries[k % pool.entries.len()];
            let mut rng = instance_rng(seed, tag + k as u64);
            which(e, &mut rng)
        })
    };

    let closure_results = run(0xa100_0000, &draw_closure);
    let chain_results = exec::map_collect(&indices, |&k| {
        let mut rng = instance_rng(seed, 0xa200_0000 + k as u64);
        if k % 2 == 1 {
            draw_chain_ranges(&pool.entries[pool.grid_index], &pool.grid_eps, &mut rng)
        } else {
            draw_chain_links(&pool.entries[k % pool.entries.len()], &mut rng)
        }
    });
    let common_results = run(0xa300_0000, &draw_common);

    for (tag, results) in [
        (0xa100_0000u64, closure_results),
        (0xa200_0000, chain_results),
        (0xa300_0000, common_results),
    ] {
        for (k, res) in results.into_iter().enumerate() {
            report.count_instances(1);
            if let Some(ce) = res? {
                // deterministic replay from (seed, draw index)
                let mut rng = instance_rng(seed, tag + k as u64);
                let again = match tag {
                    0xa100_0000 => draw_closure(&pool.entries[k % pool.entries.len()], &mut rng)?,
                    0xa200_0000 => {
                        if k % 2 == 1 {
                            draw_chain_ranges(
                                &pool.entries[pool.grid_index],
                                &pool.grid_eps,
                                &mut rng,
                            )?
                        } else {
                            draw_chain_links(&pool.entries[k % pool.entries.len()], &mut rng)?
                        }
                    }
                    _ => draw_common(&pool.entries[k % pool.entries.len()], &mut rng)?,
                };
                let ce = match again {
                    Some(_) => ce,
                    None => Counterexample {
                        witness: format!("{} [replay diverged]", ce.witness),
                        instance: ce.instance,
                    },
                };
                report.record(Some(ce));
            }
        }
    }

    hereditary_notes(&pool, seed, budget, &mut report)?;
    Ok(report)
}

// ---------------------------------------------------------------------------
// interval-product

/// Budgets for the interval surrogate and the finite-product check.
#[derive(Clone, Debug)]
pub struct IntervalProductParams {
    /// Grid sizes 2..=`max_grid` enter the δ/ε sweep.
    pub max_grid: usize,
    /// Spacings δ to build grids at; ε sweeps over the same list.
    pub meshes: Vec<ExtRational>,
    /// Products take 2..=`max_factors` factors.
    pub max_factors: usize,
    /// Factors are all topologies on at most this many points.
    pub max_factor_points: usize,
    /// Open-family cap for materializing a product topology; products past
    /// it are checked by the preorder oracle only.
    pub opens_budget: usize,
    /// Every `triple_stride`-th three-factor product also runs the full
    /// metric route (all of them run the preorder oracle).
    pub triple_stride: usize,
}

impl Default for IntervalProductParams {
    fn default() -> Self {
        let mesh = |p, q| ExtRational::ratio(p, q).expect("static mesh");
        IntervalProductParams {
            max_grid: 9,
            meshes: vec![mesh(1, 8), mesh(1, 4), mesh(1, 2), mesh(1, 1)],
            max_factors: 3,
            max_factor_points: 3,
            opens_budget: 512,
            triple_stride: 97,
        }
    }
}

/// Product connectivity via componentwise specialization: two tuples are
/// comparable when one dominates the other in every coordinate, and a finite
/// space is connected exactly when its comparability graph is. No product
/// topology or metric is ever materialized here.
fn product_connected_by_preorder(factors: &[&FiniteTopSpace]) -> bool {
    let ns: Vec<usize> = factors.iter().map(|f| f.n()).collect();
    let total: usize = ns.iter().product();
    if total <= 1 {
        return true;
    }
    let digits = |mut p: usize| -> Vec<usize> {
        let mut out = vec![0usize; ns.len()];
        for i in (0..ns.len()).rev() {
            out[i] = p % ns[i];
            p /= ns[i];
        }
        out
    };
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let tuples: Vec<Vec<usize>> = (0..total).map(digits).collect();
    for p in 0..total {
        for q in p + 1..total {
            let forward = (0..ns.len()).all(|i| factors[i].specialization_leq(tuples[p][i], tuples[q][i]));
            let backward =
                (0..ns.len()).all(|i| factors[i].specialization_leq(tuples[q][i], tuples[p][i]));
            if forward || backward {
                let (a, b) = (find(&mut parent, p), find(&mut parent, q));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let root = find(&mut parent, 0);
    (1..total).all(|p| find(&mut parent, p) == root)
}

fn product_routes(
    factors: &[&FiniteTopSpace],
    expected: bool,
    opens_budget: usize,
    metric_route: bool,
) -> Result<std::result::Result<bool, String>> {
    let oracle = product_connected_by_preorder(factors);
    if oracle != expected {
        return Ok(Err(format!(
            "preorder oracle says connected={oracle}, factors say {expected}"
        )));
    }
    if !metric_route {
        return Ok(Ok(false));
    }
    let owned: Vec<FiniteTopSpace> = factors.iter().map(|&f| f.clone()).collect();
    let pt = match product_topology_with_budget(&owned, opens_budget) {
        Ok(pt) => pt,
        Err(Error::Budget(_)) => return Ok(Ok(false)),
        Err(e) => return Err(e),
    };
    let via_opens = only_trivial(&clopen_oracle(&pt), pt.full_mask());
    if via_opens != expected {
        return Ok(Err(format!(
            "materialized product clopen scan says connected={via_opens}, factors say {expected}"
        )));
    }
    let m = flagg_metrize(&pt)?;
    let canonical = canonical_finest_scale(&m)?;
    let via_walks = r_components(&m, &canonical, StepVariant::Strict)?.n_blocks() <= 1;
    if via_walks != expected {
        return Ok(Err(format!(
            "Flagg metrization of the product says connected={via_walks}, factors say {expected}"
        )));
    }
    Ok(Ok(true))
}

/// Interval surrogate and finite products: grid(n, δ) is weakly ε-connected
/// iff δ ≤ ε (and strictly iff ε ≻ δ); a finite product is connected iff all
/// factors are, agreeing across the preorder oracle, the materialized
/// topology, and its Flagg metrization; Flagg factor metrics stay finite.
pub fn verify_interval_and_product(params: &IntervalProductParams) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("interval-product");
    report.note(format!(
        "grids 2..={} at {} meshes; factors: all topologies on ≤ {} points; ≤ {} factors",
        params.max_grid,
        params.meshes.len(),
        params.max_factor_points,
        params.max_factors,
    ));

    // (a) the interval surrogate
    for n in 2..=params.max_grid {
        for delta in &params.meshes {
            let g = grid(n, delta)?;
            let q = g.quantale().clone();
            for eps in &params.meshes {
                report.count_instances(1);
                let ev = QuantaleValue::Rational(eps.clone());
                let dv = QuantaleValue::Rational(delta.clone());
                let r = Scale::uniform(&g, ev.clone())?;
                let weak = r_components(&g, &r, StepVariant::Weak)?.n_blocks() <= 1;
                let strict = r_components(&g, &r, StepVariant::Strict)?.n_blocks() <= 1;
                let expect_weak = q.leq(&dv, &ev)?;
                let expect_strict = q.well_above(&ev, &dv)?;
                if weak != expect_weak || strict != expect_strict {
                    report.fail(
                        format!("grid({n},{})", delta.canonical_string()),
                        format!(
                            "ε={}: weak connected={weak} (expected {expect_weak}), strict connected={strict} (expected {expect_strict})",
                            eps.canonical_string()
                        ),
                    );
                }
            }
        }
    }

    // (b) products over every small factor topology
    let mut factors = Vec::new();
    for n in 1..=params.max_factor_points {
        factors.extend(enumerate_topologies(n)?);
    }
    let connected: Vec<bool> = factors
        .iter()
        .map(|t| only_trivial(&clopen_oracle(t), t.full_mask()))
        .collect();

    for t in &factors {
        report.count_instances(1);
        let m = flagg_metrize(t)?;
        let inf = m.quantale().infinity();
        if m.matrix().iter().flatten().any(|v| *v == inf) {
            report.fail(
                topology_doc(t),
                "Flagg metric of a finite space reaches ∞, breaking local finiteness",
            );
        }
    }

    let mut metric_checked = 0usize;
    let mut budget_skips = 0usize;
    if params.max_factors >= 2 {
        for (i, ti) in factors.iter().enumerate() {
            for (j, tj) in factors.iter().enumerate() {
                report.count_instances(1);
                let pair = [ti, tj];
                let expected = connected[i] && connected[j];
                match product_routes(&pair, expected, params.opens_budget, true)? {
                    Ok(ran_metric) => {
                        if ran_metric {
                            metric_checked += 1;
                        } else {
                            budget_skips += 1;
                        }
                    }
                    Err(w) => {
                        let again = product_routes(&pair, expected, params.opens_budget, true)?;
                        let w = if again.is_err() {
                            w
                        } else {
                            format!("{w} [replay diverged]")
                        };
                        report.fail(format!("{} × {}", topology_doc(ti), topology_doc(tj)), w);
                    }
                }
            }
        }
    }
    if params.max_factors >= 3 {
        let stride = params.triple_stride.max(1);
        let mut index = 0usize;
        for (i, ti) in factors.iter().enumerate() {
            for (j, tj) in factors.iter().enumerate() {
                for (k, tk) in factors.iter().enumerate() {
                    report.count_instances(1);
                    let triple = [ti, tj, tk];
                    let expected = connected[i] && connected[j] && connected[k];
                    let metric_route = index % stride == 0;
                    index += 1;
                    match product_routes(&triple, expected, params.opens_budget, metric_route)? {
                        Ok(ran_metric) => {
                            if ran_metric {
                                metric_checked += 1;
                            } else if metric_route {
                                budget_skips += 1;
                            }
                        }
                        Err(w) => {
                            let again =
                                product_routes(&triple, expected, params.opens_budget, metric_route)?;
                            let w = if again.is_err() {
                                w
                            } else {
                                format!("{w} [replay diverged]")
                            };
                            report.fail(
                                format!(
                                    "{} × {} × {}",
                                    topology_doc(ti),
                                    topology_doc(tj),
                                    topology_doc(tk)
                                ),
                                w,
                            );
                        }
                    }
                }
            }
        }
        report.require_exhausted(false);
        report.note(format!(
            "three-factor metric route sampled at stride {stride}; preorder oracle ran on every product"
        ));
    }
    report.note(format!(
        "materialized metric route ran on {metric_checked} products; {budget_skips} skipped past the opens budget"
    ));
    Ok(report)
}

// ---------------------------------------------------------------------------
// alterstep

/// Finds `R'` with `0 ≺ R' ≺ v` by searching the instance's radius pool and
/// falling back to the closed form (halving on rationals, the principal
/// family of the member union on omega values).
fn interpolant(
    q: &QuantaleHandle,
    pool: &[QuantaleValue],
    v: &QuantaleValue,
) -> Result<Option<QuantaleValue>> {
    for cand in pool {
        if q.is_positive(cand)? && q.well_above(v, cand)? {
            return Ok(Some(cand.clone()));
        }
    }
    let fallback = match v {
        QuantaleValue::Rational(_) => q.positive_halve(v)?,
        QuantaleValue::Omega(e) => QuantaleValue::Omega(OmegaElement::principal(e.member_union())),
    };
    if q.is_positive(&fallback)? && q.well_above(v, &fallback)? {
        return Ok(Some(fallback));
    }
    Ok(None)
}

fn alterstep_instance(t: &FiniteTopSpace, budget: usize) -> Result<(Option<String>, bool)> {
    let m = flagg_metrize(t)?;
    let q = m.quantale();
    let n = m.n();
    let en = enumerate_scales(&m, &ScaleSystem::All, budget)?;
    let pool = crate::scales::uniform_radius_pool(&m);

    let mut weak_all = true;
    let mut strict_all = true;
    for r in &en.scales {
        let strict = r_components(&m, r, StepVariant::Strict)?.n_blocks() <= 1;
        let weak = r_components(&m, r, StepVariant::Weak)?.n_blocks() <= 1;
        if strict && !weak {
            return Ok((
                Some(format!(
                    "scale {}: strict-step connectivity without weak-step connectivity",
                    r.id()
                )),
                en.exhaustive,
            ));
        }
        strict_all &= strict;
        weak_all &= weak;
    }
    if strict_all != weak_all {
        return Ok((
            Some(format!(
                "∀-scale verdicts diverge: strict says {strict_all}, weak says {weak_all}"
            )),
            en.exhaustive,
        ));
    }

    // The interpolation argument: for each scale R pick R' with
    // 0 ≺ R'(x) ≺ R(x); every weak R'-step must then be a strict R-step.
    for r in &en.scales {
        let mut radii = Vec::with_capacity(n);
        for x in 0..n {
            match interpolant(q, &pool, r.radius(x))? {
                Some(v) => radii.push(v),
                None => {
                    return Ok((
                        Some(format!(
                            "no interpolant 0 ≺ R' ≺ {} found for scale {}",
                            io::to_canonical_string(&io::value_to_json(r.radius(x))).trim_end(),
                            r.id()
                        )),
                        en.exhaustive,
                    ));
                }
            }
        }
        let rp = Scale::new(&m, radii, format!("{}-interpolant", r.id()))?;
        for x in 0..n {
            for y in 0..n {
                if x != y
                    && is_step(&m, &rp, x, y, StepVariant::Weak)?
                    && !is_step(&m, &r, x, y, StepVariant::Strict)?
                {
                    return Ok((
                        Some(format!(
                            "weak ({x},{y})-step of the interpolant of {} does not lift to a strict step",
                            r.id()
                        )),
                        en.exhaustive,
                    ));
                }
            }
        }
    }
    Ok((None, en.exhaustive))
}

/// Defining walks with weak steps (d ≤ R) instead of strict ones (d ≺ R)
/// leaves the all-scales connectivity verdict unchanged, via an explicit
/// interpolating scale.
pub fn verify_alterstep(corpus: &Corpus) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("alterstep");
    report.note(format!("corpus {}", corpus.describe()));
    let budget = corpus.scale_budget();
    let outcomes = exec::map_collect(corpus.spaces(), |t| alterstep_instance(t, budget));
    let mut exhausted = corpus.is_exhaustive();
    for (t, outcome) in corpus.spaces().iter().zip(outcomes) {
        let (witness, instance_exhausted) = outcome?;
        report.count_instances(1);
        exhausted &= instance_exhausted;
        if let Some(w) = witness {
            let w = match alterstep_instance(t, budget)?.0 {
                Some(_) => w,
                None => format!("{w} [replay diverged]"),
            };
            report.fail(topology_doc(t), w);
        }
    }
    report.require_exhausted(exhausted);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::sierpinski;

    fn small(n: usize) -> Corpus {
        Corpus::exhaustive(n).unwrap()
    }

    #[test]
    fn equivalence_holds_on_the_small_exhaustive_corpus() {
        let report = verify_connectedness_equivalence(&small(3)).unwrap();
        assert!(report.holds(), "{:?}", report.counterexample());
        assert_eq!(report.instances(), 34);
        assert!(report.exhaustive());
    }

    #[test]
    fn equivalence_routes_agree_on_fixed_spaces() {
        // Sierpiński: connected by the oracle and by both metric routes.
        let s = sierpinski();
        assert!(only_trivial(&clopen_oracle(&s), s.full_mask()));
        let m = flagg_metrize(&s).unwrap();
        let canonical = canonical_finest_scale(&m).unwrap();
        assert_eq!(
            r_components(&m, &canonical, StepVariant::Strict)
                .unwrap()
                .n_blocks(),
            1
        );
        assert!(only_trivial(
            &uniformly_clopen_oracle(&m).unwrap(),
            s.full_mask()
        ));
        // discrete(2): disconnected by every route.
        let d = discrete(2).unwrap();
        assert!(!only_trivial(&clopen_oracle(&d), d.full_mask()));
        let md = flagg_metrize(&d).unwrap();
        let canonical = canonical_finest_scale(&md).unwrap();
        assert_eq!(
            r_components(&md, &canonical, StepVariant::Strict)
                .unwrap()
                .n_blocks(),
            2
        );
        assert!(!only_trivial(
            &uniformly_clopen_oracle(&md).unwrap(),
            d.full_mask()
        ));
    }

    #[test]
    fn compactness_holds_and_replays_the_halving_argument() {
        let report = verify_compactness_theorem(&small(3)).unwrap();
        assert!(report.holds(), "{:?}", report.counterexample());
        assert!(report.exhaustive());
        assert!(report
            .notes()
            .iter()
            .any(|n| n.starts_with("halving argument replayed on") && !n.contains(" 0 connected")));
    }

    #[test]
    fn halving_replay_passes_on_sierpinski() {
        let m = flagg_metrize(&sierpinski()).unwrap();
        let r = canonical_finest_scale(&m).unwrap();
        assert_eq!(halving_replay(&m, &r).unwrap(), None);
    }

    #[test]
    fn two_point_infinity_is_consistently_disconnected() {
        let tpi = two_point_infinity();
        let uni = sigma_components(&tpi, &ScaleSystem::Uniform, 10_000).unwrap();
        assert_eq!(uni.partition.n_blocks(), 2);
        assert!(!induced_topology(&tpi).unwrap().is_connected());
    }

    #[test]
    fn component_properties_hold_on_the_small_corpus() {
        let report = verify_component_properties(&small(2)).unwrap();
        assert!(report.holds(), "{:?}", report.counterexample());
        assert!(report.exhaustive());
        assert!(report
            .notes()
            .iter()
            .any(|n| n.contains("image phase checked") && !n.contains("checked 0 ")));
    }

    #[test]
    fn sigma_lemma_agrees_for_three_systems() {
        let corpus = small(2);
        let sigmas = [
            ScaleSystem::All,
            ScaleSystem::Uniform,
            ScaleSystem::BoundedBelowFixed(EpsSelection::PerQuantale {
                ext: ExtRational::ratio(1, 2).unwrap(),
                omega: OmegaEpsRule::DownEmpty,
            }),
        ];
        for sigma in &sigmas {
            let report = verify_sigma_lemma(&corpus, sigma).unwrap();
            assert!(
                report.holds(),
                "sigma {}: {:?}",
                sigma.id(),
                report.counterexample()
            );
            assert_eq!(report.instances(), 5);
        }
    }

    #[test]
    fn hierarchy_is_monotone_on_the_small_corpus() {
        let report = verify_hierarchy(&small(2)).unwrap();
        assert!(report.holds(), "{:?}", report.counterexample());
        // corpus instances plus the seven rational-side extras
        assert_eq!(report.instances(), 5 + 7);
    }

    #[test]
    fn structure_draws_pass_on_a_random_corpus() {
        let corpus = Corpus::random(3, 4, 11).unwrap();
        let report = verify_structure_theorems_with_draws(&corpus, 11, 18).unwrap();
        assert!(report.holds(), "{:?}", report.counterexample());
        assert_eq!(report.instances(), 54);
        assert!(!report.exhaustive());
        assert!(report
            .notes()
            .iter()
            .any(|n| n.starts_with("hereditary status: uniform:")));
    }

    #[test]
    fn closure_example_on_sierpinski() {
        // C = {a} has closure {a,b}; every D between them must be connected.
        let m = flagg_metrize(&sierpinski()).unwrap();
        let a = 1u64 << m.label_index("a").unwrap();
        let closure = closure_of(&m, a).unwrap();
        assert_eq!(closure, 0b11);
        let v = subspace_verdict(&m, closure, 10_000).unwrap();
        assert!(v.connected && v.trusted);
    }

    #[test]
    fn interval_product_holds_at_small_parameters() {
        let params = IntervalProductParams {
            max_grid: 5,
            meshes: vec![
                ExtRational::ratio(1, 4).unwrap(),
                ExtRational::ratio(1, 2).unwrap(),
            ],
            max_factors: 2,
            max_factor_points: 2,
            opens_budget: 256,
            triple_stride: 1,
        };
        let report = verify_interval_and_product(&params).unwrap();
        assert!(report.holds(), "{:?}", report.counterexample());
        // 4 grid sizes × 2 δ × 2 ε, 5 factor topologies, 25 pairs
        assert_eq!(report.instances(), 16 + 5 + 25);
    }

    #[test]
    fn product_examples_match_the_oracle() {
        let s = sierpinski();
        let d = discrete(2).unwrap();
        assert!(product_connected_by_preorder(&[&s, &s]));
        assert!(!product_connected_by_preorder(&[&d, &s]));
        // and the materialized routes agree on both
        assert!(matches!(
            product_routes(&[&s, &s], true, 512, true).unwrap(),
            Ok(true)
        ));
        assert!(matches!(
            product_routes(&[&d, &s], false, 512, true).unwrap(),
            Ok(true)
        ));
    }

    #[test]
    fn alterstep_agrees_on_the_small_corpus_and_the_grid() {
        let report = verify_alterstep(&small(2)).unwrap();
        assert!(report.holds(), "{:?}", report.counterexample());
        assert!(report.exhaustive());
        // Threshold scales on grid(3,1/2): the ∀-scale weak and strict
        // verdicts agree even though individual scales differ per variant.
        let g = grid(3, &ExtRational::ratio(1, 2).unwrap()).unwrap();
        let en = enumerate_scales(&g, &ScaleSystem::All, 10_000).unwrap();
        let mut weak_all = true;
        let mut strict_all = true;
        for r in &en.scales {
            weak_all &= r_components(&g, r, StepVariant::Weak).unwrap().n_blocks() <= 1;
            strict_all &= r_components(&g, r, StepVariant::Strict).unwrap().n_blocks() <= 1;
        }
        assert_eq!(weak_all, strict_all);
    }

    #[test]
    fn run_theorem_dispatches_and_rejects_unknown_ids() {
        let corpus = small(2);
        let report = run_theorem("alterstep", &corpus, 0, None).unwrap();
        assert_eq!(report.theorem(), "alterstep");
        assert!(run_theorem("nope", &corpus, 0, None).is_err());
        for id in THEOREM_IDS {
            assert!(!id.is_empty());
        }
    }
}
