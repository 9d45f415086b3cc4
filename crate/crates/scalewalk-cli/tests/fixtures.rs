//! The checked-in fixture files are exactly the library's canonical
//! serializations of standard instances. The match test keeps them from
//! drifting; run the ignored regeneration test after changing a codec:
//!
//! ```text
//! cargo test -p scalewalk-cli --test fixtures regenerate -- --ignored
//! ```

use std::fs;
use std::path::PathBuf;

use scalewalk::io;
use scalewalk::quantale::{ExtRational, QuantaleValue};
use scalewalk::scales::Scale;
use scalewalk::spaces::{standard_space, StandardSpace};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn expected_files() -> Vec<(&'static str, String)> {
    let sierpinski = match standard_space("sierpinski").unwrap() {
        StandardSpace::Top(t) => io::to_canonical_string(&io::topology_to_json(&t)),
        StandardSpace::Metric(_) => unreachable!("sierpinski is a topology"),
    };
    let grid5 = match standard_space("grid(5,1/4)").unwrap() {
        StandardSpace::Metric(m) => m,
        StandardSpace::Top(_) => unreachable!("grid is a metric"),
    };
    let quarter = Scale::uniform(
        &grid5,
        QuantaleValue::Rational(ExtRational::ratio(1, 4).unwrap()),
    )
    .unwrap();
    let quarter_json = io::to_canonical_string(&io::scale_to_json(&grid5, &quarter));
    let grid5_json = io::to_canonical_string(&io::metric_to_json(&grid5));

    // Two points at every finite distance from each other: disconnected
    // under any scale, the fixture for exit-code-1 paths.
    let split = match standard_space("two_point_infinity").unwrap() {
        StandardSpace::Metric(m) => io::to_canonical_string(&io::metric_to_json(&m)),
        StandardSpace::Top(_) => unreachable!("two_point_infinity is a metric"),
    };

    vec![
        ("sierpinski.json", sierpinski),
        ("grid5.json", grid5_json),
        ("quarter-scale.json", quarter_json),
        ("split.json", split),
    ]
}

#[test]
fn fixtures_match_the_library_constructions() {
    for (name, want) in expected_files() {
        let path = fixture_dir().join(name);
        let got = fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("cannot read fixture {}: {e}", path.display()));
        assert_eq!(got, want, "fixture {name} drifted from its construction");
    }
}

#[test]
#[ignore = "writes the fixture files; run explicitly after codec changes"]
fn regenerate_fixtures() {
    for (name, content) in expected_files() {
        fs::write(fixture_dir().join(name), content).unwrap();
    }
}
