//! Verification reports: which statement ran, over how many instances,
//! whether its quantifiers were exhausted, and the first counterexample.

use serde_json::{json, Value};

/// A failing instance with enough detail to re-run the check by hand.
/// Counterexamples are only recorded after the failing check has been
/// replayed once, so a report never carries a flaky failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// The instance, as its canonical document or constructor description.
    pub instance: String,
    /// What disagreed.
    pub witness: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    theorem: String,
    instances: usize,
    exhaustive: bool,
    counterexample: Option<Counterexample>,
    notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(theorem: impl Into<String>) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            instances: 0,
            exhaustive: true,
            counterexample: None,
            notes: Vec::new(),
        }
    }

    pub fn theorem(&self) -> &str {
        &self.theorem
    }

    pub fn instances(&self) -> usize {
        self.instances
    }

    /// True when every quantifier in the statement was either exhausted or
    /// runs over the whole corpus of an exhaustive corpus.
    pub fn exhaustive(&self) -> bool {
        self.exhaustive
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        self.counterexample.as_ref()
    }

    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn count_instances(&mut self, k: usize) {
        self.instances += k;
    }

    /// And-accumulates: one sampled quantifier anywhere makes the whole
    /// report non-exhaustive.
    pub fn require_exhausted(&mut self, exhausted: bool) {
        self.exhaustive &= exhausted;
    }

    pub fn note(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.notes.contains(&text) {
            self.notes.push(text);
        }
    }

    /// Records the first counterexample; later ones are dropped so the
    /// report stays small and deterministic.
    pub fn fail(&mut self, instance: impl Into<String>, witness: impl Into<String>) {
        if self.counterexample.is_none() {
            self.counterexample = Some(Counterexample {
                instance: instance.into(),
                witness: witness.into(),
            });
        }
    }

    pub fn record(&mut self, counterexample: Option<Counterexample>) {
        if let Some(ce) = counterexample {
            self.fail(ce.instance, ce.witness);
        }
    }

    /// The report as a JSON document. `ms` is pinned to zero: reports feed
    /// byte-identical-rerun checks, and a wall clock would break those for
    /// no informational gain on corpora this small.
    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem,
            "instances": self.instances,
            "exhaustive": self.exhaustive,
            "counterexample": match &self.counterexample {
                None => Value::Null,
                Some(ce) => json!({ "instance": ce.instance, "witness": ce.witness }),
            },
            "ms": 0,
            "notes": self.notes,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "theorem {}\ninstances {}{}\n",
            self.theorem,
            self.instances,
            if self.exhaustive { " (exhaustive)" } else { " (sampled)" }
        );
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        match &self.counterexample {
            None => out.push_str("result: verified\n"),
            Some(ce) => {
                out.push_str(&format!(
                    "result: COUNTEREXAMPLE\ninstance: {}\nwitness: {}\n",
                    ce.instance.trim_end(),
                    ce.witness
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::to_canonical_string;

    #[test]
    fn report_shape_and_rendering() {
        let mut r = VerificationReport::new("compactness");
        r.count_instances(34);
        r.note("uniform route restricted to the Flagg-metric uniformity");
        assert!(r.holds());
        assert_eq!(
            to_canonical_string(&r.to_json()),
            "{\"counterexample\":null,\"exhaustive\":true,\"instances\":34,\"ms\":0,\
             \"notes\":[\"uniform route restricted to the Flagg-metric uniformity\"],\
             \"theorem\":\"compactness\"}\n"
        );
        assert!(r.render_text().contains("result: verified"));

        r.require_exhausted(false);
        r.fail("inst", "first");
        r.fail("other", "second");
        assert!(!r.holds());
        assert_eq!(r.counterexample().unwrap().witness, "first");
        assert!(r.render_text().contains("COUNTEREXAMPLE"));
        assert!(r.render_text().contains("(sampled)"));
    }
}
