//! Canonical JSON interchange for every document the tools read or write.
//!
//! Emission is canonical — object keys sorted (serde_json's default map),
//! set-like arrays in their stored order, one trailing newline — so any two
//! runs producing the same document produce the same bytes, and fixtures
//! can be diffed exactly. Parsing is lenient where harmless (bare integers
//! for rationals, opens listed in any order) except that omega values must
//! arrive as canonical antichains: a non-canonical family is rejected, not
//! repaired.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::quantale::{ExtRational, OmegaElement, QuantaleHandle, QuantaleValue};
use crate::scales::{ComponentPartition, Scale, Walk};
use crate::spaces::{FiniteTopSpace, VMetricSpace};

/// Short human-readable form of a value: `3/4`, `inf`, or the antichain
/// index lists `[[0,2],[1]]`. Used inside ids and error messages.
pub fn value_string(v: &QuantaleValue) -> String {
    match v {
        QuantaleValue::Rational(r) => r.canonical_string(),
        QuantaleValue::Omega(e) => serde_json::to_string(&e.to_index_lists()).expect("plain json"),
    }
}

pub fn value_to_json(v: &QuantaleValue) -> Value {
    match v {
        QuantaleValue::Rational(r) => Value::String(r.canonical_string()),
        QuantaleValue::Omega(e) => json!(e.to_index_lists()),
    }
}

pub fn value_from_json(q: &QuantaleHandle, j: &Value) -> Result<QuantaleValue> {
    match q {
        QuantaleHandle::ExtRational => match j {
            Value::String(s) => Ok(QuantaleValue::Rational(ExtRational::parse(s)?)),
            Value::Number(n) => {
                let i = n
                    .as_u64()
                    .ok_or_else(|| Error::Parse(format!("rational out of range: {n}")))?;
                Ok(QuantaleValue::Rational(ExtRational::ratio(i, 1)?))
            }
            other => Err(Error::Parse(format!(
                "expected a rational string, got {other}"
            ))),
        },
        QuantaleHandle::Omega { ground } => {
            let lists: Vec<Vec<usize>> = serde_json::from_value(j.clone())
                .map_err(|e| Error::Parse(format!("expected an antichain index array: {e}")))?;
            Ok(QuantaleValue::Omega(OmegaElement::from_index_lists(
                ground.len(),
                &lists,
            )?))
        }
    }
}

fn quantale_to_json(q: &QuantaleHandle) -> Value {
    match q {
        QuantaleHandle::ExtRational => json!({"kind": "ext_rational"}),
        QuantaleHandle::Omega { ground } => json!({"kind": "omega", "ground": ground}),
    }
}

fn quantale_from_json(j: &Value) -> Result<QuantaleHandle> {
    let kind = j
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("quantale needs a \"kind\"".into()))?;
    match kind {
        "ext_rational" => Ok(QuantaleHandle::ext_rational()),
        "omega" => {
            let ground: Vec<String> =
                serde_json::from_value(j.get("ground").cloned().unwrap_or(Value::Null))
                    .map_err(|e| Error::Parse(format!("omega ground labels: {e}")))?;
            QuantaleHandle::omega(ground)
        }
        other => Err(Error::Parse(format!("unknown quantale kind {other:?}"))),
    }
}

/// Serialize with canonical layout and a trailing newline.
pub fn to_canonical_string(doc: &Value) -> String {
    let mut s = serde_json::to_string(doc).expect("document serialization");
    s.push('\n');
    s
}

pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))
}

pub fn doc_type(doc: &Value) -> Result<&str> {
    doc.get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("document needs a \"type\" field".into()))
}

fn string_list(j: Option<&Value>, what: &str) -> Result<Vec<String>> {
    serde_json::from_value(j.cloned().unwrap_or(Value::Null))
        .map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn topology_to_json(t: &FiniteTopSpace) -> Value {
    let opens: Vec<Vec<&str>> = t
        .opens()
        .iter()
        .map(|&u| {
            (0..t.n())
                .filter(|&i| u & (1 << i) != 0)
                .map(|i| t.points()[i].as_str())
                .collect()
        })
        .collect();
    json!({"type": "topology", "points": t.points(), "opens": opens})
}

pub fn topology_from_json(doc: &Value) -> Result<FiniteTopSpace> {
    if doc_type(doc)? != "topology" {
        return Err(Error::Parse("not a topology document".into()));
    }
    let points = string_list(doc.get("points"), "topology points")?;
    let opens_labels: Vec<Vec<String>> =
        serde_json::from_value(doc.get("opens").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Parse(format!("topology opens: {e}")))?;
    let index_of = |label: &str| -> Result<usize> {
        points
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| Error::Parse(format!("open references unknown point {label:?}")))
    };
    let mut opens = Vec::with_capacity(opens_labels.len());
    for labels in &opens_labels {
        let mut mask = 0u64;
        for l in labels {
            let i = index_of(l)?;
            if mask & (1 << i) != 0 {
                return Err(Error::Parse(format!("open repeats point {l:?}")));
            }
            mask |= 1 << i;
        }
        opens.push(mask);
    }
    FiniteTopSpace::new(points, opens)
}

pub fn metric_to_json(m: &VMetricSpace) -> Value {
    let d: Vec<Vec<Value>> = m
        .matrix()
        .iter()
        .map(|row| row.iter().map(value_to_json).collect())
        .collect();
    json!({
        "type": "metric",
        "quantale": quantale_to_json(m.quantale()),
        "symmetric": m.is_symmetric_flagged(),
        "points": m.points(),
        "d": d,
    })
}

pub fn metric_from_json(doc: &Value) -> Result<VMetricSpace> {
    if doc_type(doc)? != "metric" {
        return Err(Error::Parse("not a metric document".into()));
    }
    let q = quantale_from_json(
        doc.get("quantale")
            .ok_or_else(|| Error::Parse("metric needs a \"quantale\"".into()))?,
    )?;
    let points = string_list(doc.get("points"), "metric points")?;
    let symmetric = doc
        .get("symmetric")
        .and_then(Value::as_bool)
        .ok_or_else(|| Error::Parse("metric needs a boolean \"symmetric\"".into()))?;
    let rows = doc
        .get("d")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("metric needs a \"d\" matrix".into()))?;
    let mut d = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("metric rows must be arrays".into()))?;
        d.push(
            row.iter()
                .map(|v| value_from_json(&q, v))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    VMetricSpace::new(q, points, d, symmetric)
}

pub fn scale_to_json(m: &VMetricSpace, r: &Scale) -> Value {
    let radii: Vec<Value> = r.radii().iter().map(value_to_json).collect();
    json!({"type": "scale", "points": m.points(), "radii": radii})
}

pub fn scale_from_json(m: &VMetricSpace, doc: &Value) -> Result<Scale> {
    if doc_type(doc)? != "scale" {
        return Err(Error::Parse("not a scale document".into()));
    }
    let points = string_list(doc.get("points"), "scale points")?;
    if points != m.points() {
        return Err(Error::Invalid(
            "scale points do not match the metric space".into(),
        ));
    }
    let radii = doc
        .get("radii")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("scale needs a \"radii\" array".into()))?
        .iter()
        .map(|v| value_from_json(m.quantale(), v))
        .collect::<Result<Vec<_>>>()?;
    Scale::new(m, radii, "file")
}

pub fn partition_to_json(m: &VMetricSpace, p: &ComponentPartition) -> Value {
    let blocks: Vec<Vec<&str>> = p
        .blocks()
        .iter()
        .map(|&b| {
            (0..m.n())
                .filter(|&i| b & (1 << i) != 0)
                .map(|i| m.points()[i].as_str())
                .collect()
        })
        .collect();
    json!({"type": "partition", "scale": p.scale_id(), "blocks": blocks})
}

pub fn walk_to_json(m: &VMetricSpace, w: Option<&Walk>) -> Value {
    match w {
        Some(w) => json!({"type": "walk", "found": true, "points": w.labels(m)}),
        None => json!({"type": "walk", "found": false, "points": Value::Null}),
    }
}

/// Re-key an arbitrary object into a new document shell. Used by report
/// writers that assemble their own fields.
pub fn document(kind: &str, fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    map.insert("type".into(), Value::String(kind.into()));
    for (k, v) in fields {
        map.insert(k.into(), v);
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::BitSet;
    use crate::spaces::{flagg_metrize, grid, sierpinski, two_point_infinity};

    #[test]
    fn value_round_trips() {
        let q = QuantaleHandle::ext_rational();
        for s in ["0/1", "3/4", "7/1", "inf"] {
            let v = value_from_json(&q, &Value::String(s.into())).unwrap();
            assert_eq!(value_to_json(&v), Value::String(s.into()));
        }
        // Lenient inputs normalize.
        let v = value_from_json(&q, &json!(3)).unwrap();
        assert_eq!(value_to_json(&v), Value::String("3/1".into()));
        let v = value_from_json(&q, &Value::String("6/8".into())).unwrap();
        assert_eq!(value_to_json(&v), Value::String("3/4".into()));
        assert!(value_from_json(&q, &Value::String("-1/2".into())).is_err());
        assert!(value_from_json(&q, &json!([[0]])).is_err());
    }

    #[test]
    fn omega_values_must_be_canonical() {
        let q = QuantaleHandle::omega(vec!["u".into(), "v".into(), "w".into()]).unwrap();
        let v = value_from_json(&q, &json!([[0, 2], [1]])).unwrap();
        assert_eq!(value_to_json(&v), json!([[0, 2], [1]]));
        // {0} ⊂ {0,2} — not an antichain.
        assert!(value_from_json(&q, &json!([[0], [0, 2]])).is_err());
        // Out-of-range index.
        assert!(value_from_json(&q, &json!([[3]])).is_err());
        // Wrong element order.
        assert!(value_from_json(&q, &json!([[1], [0, 2]])).is_err());
    }

    #[test]
    fn topology_document_round_trip() {
        let t = sierpinski();
        let doc = topology_to_json(&t);
        let text = to_canonical_string(&doc);
        assert_eq!(
            text,
            "{\"opens\":[[],[\"a\"],[\"a\",\"b\"]],\"points\":[\"a\",\"b\"],\"type\":\"topology\"}\n"
        );
        let back = topology_from_json(&parse_document(&text).unwrap()).unwrap();
        assert_eq!(back, t);
        assert_eq!(to_canonical_string(&topology_to_json(&back)), text);
    }

    #[test]
    fn topology_parser_accepts_any_open_order_but_rejects_junk() {
        let doc = json!({
            "type": "topology",
            "points": ["a", "b"],
            "opens": [["b", "a"], [], ["a"]],
        });
        let t = topology_from_json(&doc).unwrap();
        assert_eq!(t, sierpinski());

        let missing_closure = json!({
            "type": "topology",
            "points": ["a", "b", "c"],
            "opens": [[], ["a"], ["b"], ["a", "b", "c"]],
        });
        assert!(topology_from_json(&missing_closure).is_err());
        let unknown_point = json!({
            "type": "topology",
            "points": ["a"],
            "opens": [[], ["z"], ["a"]],
        });
        assert!(topology_from_json(&unknown_point).is_err());
    }

    #[test]
    fn metric_documents_round_trip_both_quantales() {
        for m in [
            two_point_infinity(),
            grid(3, &ExtRational::ratio(1, 2).unwrap()).unwrap(),
            flagg_metrize(&sierpinski()).unwrap(),
        ] {
            let text = to_canonical_string(&metric_to_json(&m));
            let back = metric_from_json(&parse_document(&text).unwrap()).unwrap();
            assert_eq!(back, m);
            assert_eq!(to_canonical_string(&metric_to_json(&back)), text);
        }
    }

    #[test]
    fn flagg_metric_serializes_the_expected_antichains() {
        let m = flagg_metrize(&sierpinski()).unwrap();
        let doc = metric_to_json(&m);
        // d(b,a) is the zero element: all three opens {}, {a}, {a,b}.
        assert_eq!(doc["d"][1][0], json!([[0, 1, 2]]));
        assert_eq!(doc["d"][0][1], json!([[0, 2]]));
        assert_eq!(doc["quantale"]["ground"], json!(["{}", "{a}", "{a,b}"]));
    }

    #[test]
    fn scale_partition_walk_documents() {
        let g = grid(3, &ExtRational::ratio(1, 2).unwrap()).unwrap();
        let r = Scale::uniform(&g, QuantaleValue::rational(1, 2).unwrap()).unwrap();
        let text = to_canonical_string(&scale_to_json(&g, &r));
        assert_eq!(
            text,
            "{\"points\":[\"0\",\"1/2\",\"1\"],\"radii\":[\"1/2\",\"1/2\",\"1/2\"],\"type\":\"scale\"}\n"
        );
        let back = scale_from_json(&g, &parse_document(&text).unwrap()).unwrap();
        assert_eq!(back.radii(), r.radii());

        let mismatched = grid(2, &ExtRational::one()).unwrap();
        assert!(scale_from_json(&mismatched, &parse_document(&text).unwrap()).is_err());

        let parts = crate::scales::r_components(&g, &r, crate::scales::StepVariant::Weak).unwrap();
        let pdoc = partition_to_json(&g, &parts);
        assert_eq!(pdoc["blocks"], json!([["0", "1/2", "1"]]));

        let walk = crate::scales::find_walk(&g, &r, 0, 2, crate::scales::StepVariant::Weak)
            .unwrap()
            .unwrap();
        assert_eq!(
            walk_to_json(&g, Some(&walk)),
            json!({"type": "walk", "found": true, "points": ["0", "1/2", "1"]})
        );
        assert_eq!(
            walk_to_json(&g, None),
            json!({"type": "walk", "found": false, "points": null})
        );
    }

    #[test]
    fn canonical_keys_are_sorted() {
        let doc = document(
            "report",
            vec![("zeta", json!(1)), ("alpha", json!(2)), ("mid", json!(3))],
        );
        assert_eq!(
            to_canonical_string(&doc),
            "{\"alpha\":2,\"mid\":3,\"type\":\"report\",\"zeta\":1}\n"
        );
    }

    #[test]
    fn omega_scale_files_reject_noncanonical_radii() {
        let m = flagg_metrize(&sierpinski()).unwrap();
        let mut doc = scale_to_json(&m, &Scale::uniform(&m, m.quantale().zero()).unwrap());
        assert_eq!(doc["radii"][0], json!([[0, 1, 2]]));
        doc["radii"][0] = json!([[0], [0, 1, 2]]);
        assert!(scale_from_json(&m, &doc).is_err());
    }

    #[test]
    fn bitset_index_lists_agree_with_value_strings() {
        let e = OmegaElement::principal(BitSet::from_indices(3, &[0, 2]));
        let v = QuantaleValue::Omega(e);
        assert_eq!(value_string(&v), "[[0,2]]");
        assert_eq!(
            value_string(&QuantaleValue::rational(9, 6).unwrap()),
            "3/2"
        );
    }
}
