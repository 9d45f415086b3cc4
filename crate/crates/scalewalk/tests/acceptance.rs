//! The acceptance gate: one test per criterion, each printing its pass line
//! once every assertion behind it has held, so a `--nocapture` run doubles
//! as a checklist. Criterion 12 (byte-identical CLI reruns) lives with the
//! CLI crate; everything else is here.

use scalewalk::quantale::{
    check_quantale_laws, well_above_bruteforce, ExtRational, LawMode, QuantaleHandle,
};
use scalewalk::scales::{EpsSelection, OmegaEpsRule, ScaleSystem};
use scalewalk::spaces::{flagg_metrize, induced_topology};
use scalewalk::verify::{
    enumerate_topologies, verify_alterstep, verify_compactness_theorem,
    verify_component_properties, verify_connectedness_equivalence, verify_interval_and_product,
    verify_sigma_lemma, verify_structure_theorems, Corpus, IntervalProductParams,
    TOPOLOGY_COUNTS,
};

fn pass(number: u32, title: &str) {
    println!("acceptance {number:02} ({title}): pass");
}

#[test]
fn criterion_01_quantale_laws() {
    for labels in [vec!["u".to_string()], vec!["u".to_string(), "v".to_string()]] {
        let q = QuantaleHandle::omega(labels).unwrap();
        let rep = check_quantale_laws(&q, 1_000_000, 7).unwrap();
        assert!(rep.all_hold(), "{:?}", rep.failing());
        assert!(
            rep.checks.iter().all(|c| c.mode == LawMode::Exhaustive),
            "small omega grounds must be checked exhaustively"
        );
    }
    let omega3 =
        QuantaleHandle::omega(vec!["u".to_string(), "v".to_string(), "w".to_string()]).unwrap();
    for q in [QuantaleHandle::ext_rational(), omega3] {
        let rep = check_quantale_laws(&q, 2_000, 7).unwrap();
        assert!(rep.all_hold(), "{:?}", rep.failing());
        let cases: usize = rep.checks.iter().map(|c| c.cases).sum();
        assert!(cases >= 1_000, "only {cases} cases exercised");
    }
    pass(1, "quantale laws");
}

#[test]
fn criterion_02_well_above_oracle() {
    for labels in [vec!["u".to_string()], vec!["u".to_string(), "v".to_string()]] {
        let two = labels.len() == 2;
        let q = QuantaleHandle::omega(labels).unwrap();
        let carrier = q.enumerate(2).unwrap();
        if two {
            assert_eq!(carrier.len(), 6);
        }
        for b in &carrier {
            for a in &carrier {
                assert_eq!(
                    q.well_above(b, a).unwrap(),
                    well_above_bruteforce(&q, b, a, 2).unwrap(),
                    "antichain rule disagrees with the definition at ({b:?}, {a:?})"
                );
            }
        }
    }
    pass(2, "well-above rule matches the brute-force definition");
}

#[test]
fn criterion_03_metrization_fidelity() {
    let mut total = 0usize;
    for n in 1..=4usize {
        let ts = enumerate_topologies(n).unwrap();
        assert_eq!(ts.len(), TOPOLOGY_COUNTS[n], "topology count at n = {n}");
        for t in &ts {
            let back = induced_topology(&flagg_metrize(t).unwrap()).unwrap();
            assert_eq!(back.opens(), t.opens(), "round trip changed the opens");
            total += 1;
        }
    }
    assert_eq!(total, 389);
    pass(3, "induced_topology inverts flagg_metrize on all 389 topologies");
}

#[test]
fn criterion_04_main_equivalence() {
    let small = verify_connectedness_equivalence(&Corpus::exhaustive(3).unwrap()).unwrap();
    assert!(small.counterexample().is_none(), "{:?}", small.counterexample());
    assert!(small.exhaustive(), "n ≤ 3 run must exhaust every route");
    let full = verify_connectedness_equivalence(&Corpus::exhaustive(4).unwrap()).unwrap();
    assert!(full.counterexample().is_none(), "{:?}", full.counterexample());
    assert_eq!(full.instances(), 389);
    pass(4, "clopen, canonical, enumerated, and uniform verdicts agree");
}

#[test]
fn criterion_05_compactness() {
    let report = verify_compactness_theorem(&Corpus::exhaustive(4).unwrap()).unwrap();
    assert!(report.counterexample().is_none(), "{:?}", report.counterexample());
    assert!(report.exhaustive());
    assert_eq!(report.instances(), 389);
    pass(5, "connected ⟺ uniformly connected on the exhaustive corpus");
}

#[test]
fn criterion_06_sigma_lemma() {
    let corpus = Corpus::exhaustive(3).unwrap();
    let systems = [
        ScaleSystem::All,
        ScaleSystem::Uniform,
        ScaleSystem::BoundedBelowFixed(EpsSelection::PerQuantale {
            ext: ExtRational::ratio(1, 2).unwrap(),
            omega: OmegaEpsRule::DownEmpty,
        }),
    ];
    for sigma in &systems {
        let report = verify_sigma_lemma(&corpus, sigma).unwrap();
        assert!(
            report.counterexample().is_none(),
            "sigma {}: {:?}",
            sigma.id(),
            report.counterexample()
        );
        assert_eq!(report.instances(), 34);
    }
    pass(6, "the four Σ-connectedness conditions agree for three systems");
}

#[test]
fn criterion_07_component_properties() {
    let small = verify_component_properties(&Corpus::exhaustive(3).unwrap()).unwrap();
    assert!(small.counterexample().is_none(), "{:?}", small.counterexample());
    assert!(small.exhaustive());
    let full =
        verify_component_properties(&Corpus::exhaustive(4).unwrap().with_scale_budget(96))
            .unwrap();
    assert!(full.counterexample().is_none(), "{:?}", full.counterexample());
    assert_eq!(full.instances(), 389);
    pass(7, "components and complements ball-fixed, components closed");
}

#[test]
fn criterion_08_grid_boundary() {
    let meshes: Vec<ExtRational> = [(1u64, 8u64), (1, 4), (1, 2), (1, 1)]
        .iter()
        .map(|&(p, q)| ExtRational::ratio(p, q).unwrap())
        .collect();
    let params = IntervalProductParams {
        max_grid: 9,
        meshes,
        max_factors: 2,
        max_factor_points: 1,
        opens_budget: 512,
        triple_stride: 97,
    };
    let report = verify_interval_and_product(&params).unwrap();
    assert!(report.counterexample().is_none(), "{:?}", report.counterexample());
    // 8 grid sizes × 4 spacings × 4 radii, plus the two trivial one-point
    // product instances that ride along.
    assert!(report.instances() >= 128);
    pass(8, "grid(n,δ) is weakly ε-connected exactly when δ ≤ ε");
}

#[test]
fn criterion_09_structure_draws() {
    let report = verify_structure_theorems(&Corpus::random(3, 4, 2026).unwrap(), 2026).unwrap();
    assert!(report.counterexample().is_none(), "{:?}", report.counterexample());
    // 500 seeded draws per theorem: closure, chain union, common point.
    assert_eq!(report.instances(), 1500);
    assert!(report
        .notes()
        .iter()
        .any(|n| n.starts_with("hereditary status:")));
    pass(9, "closure, chain-union, and common-point draws all hold");
}

#[test]
fn criterion_10_products() {
    let report = verify_interval_and_product(&IntervalProductParams::default()).unwrap();
    assert!(report.counterexample().is_none(), "{:?}", report.counterexample());
    // 128 grid instances + 34 local-finiteness checks + 34² ordered pairs
    // + 34³ ordered triples over the ≤ 3-point factor corpus.
    assert_eq!(report.instances(), 128 + 34 + 1156 + 39304);
    pass(10, "product connected ⟺ every factor connected");
}

#[test]
fn criterion_11_alterstep() {
    let report = verify_alterstep(&Corpus::exhaustive(3).unwrap()).unwrap();
    assert!(report.counterexample().is_none(), "{:?}", report.counterexample());
    assert!(report.exhaustive());
    assert_eq!(report.instances(), 34);
    pass(11, "weak and strict Σ-verdicts agree on the n ≤ 3 corpus");
}
