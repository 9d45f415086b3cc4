//! Command-line front end: topology, metric, and scale files in; verdicts,
//! partitions, walks, and verification reports out.
//!
//! Every report echoes the flags it ran with (defaults resolved), so a
//! verdict is reproducible from its own header, and JSON output goes
//! through the library's canonical serializer so identical invocations are
//! byte-identical. Exit codes: 0 — success or the property holds; 1 — the
//! property fails and a counterexample or witness was emitted; 2 — input,
//! parse, or budget error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use scalewalk::error::{Error, Result};
use scalewalk::io;
use scalewalk::quantale::{check_quantale_laws, QuantaleHandle, QuantaleValue};
use scalewalk::scales::{
    canonical_finest_scale, enumerate_scales, find_walk, r_components, AlphaSelection,
    EpsSelection, Scale, ScaleSystem, StepVariant, DEFAULT_SCALE_BUDGET,
};
use scalewalk::spaces::{flagg_metrize, induced_topology, VMetricSpace};
use scalewalk::verify::{random_preorder_space, run_theorem, Corpus};

#[derive(Parser)]
#[command(name = "scalewalk", version, about = "Quantale-valued metrics, scales, and walk connectivity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Flagg-metrize a topology file into a metric file
    Metrize(MetrizeArgs),
    /// Component partition of a space under one scale
    Components(ComponentsArgs),
    /// A walk between two points under one scale, if any (exit 1 if none)
    Walk(WalkArgs),
    /// Topological connectedness via the canonical finest scale (exit 1 if
    /// disconnected); plain metrics are judged via their induced topology
    Connected(ConnectedArgs),
    /// Uniform connectedness: walks under every constant scale
    UniformConnected(UniformConnectedArgs),
    /// Σ-connectedness for a chosen scale system
    SigmaConnected(SigmaConnectedArgs),
    /// Run one theorem verification over a corpus (exit 1 on counterexample)
    Verify(VerifyArgs),
    /// Check the value-quantale laws for a carrier (exit 1 on a failing law)
    Laws(LawsArgs),
    /// Generate a random topology or metric, deterministic in the seed
    Random(RandomArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Strict,
    Weak,
}

impl Variant {
    fn step(self) -> StepVariant {
        match self {
            Variant::Strict => StepVariant::Strict,
            Variant::Weak => StepVariant::Weak,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Variant::Strict => "strict",
            Variant::Weak => "weak",
        }
    }
}

/// Exactly one way to choose the scale for `components` and `walk`.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct ScaleChoice {
    /// Scale file ({"type":"scale","points":...,"radii":...})
    #[arg(long, value_name = "FILE")]
    scale: Option<PathBuf>,
    /// The canonical finest scale of the space
    #[arg(long)]
    canonical: bool,
    /// Constant scale at this radius (e.g. 1/4, or an antichain [[0,1]])
    #[arg(long, value_name = "EPS")]
    uniform: Option<String>,
}

impl ScaleChoice {
    fn resolve(&self, m: &VMetricSpace) -> Result<Scale> {
        if let Some(path) = &self.scale {
            return io::scale_from_json(m, &read_doc(path)?);
        }
        if let Some(raw) = &self.uniform {
            return Scale::uniform(m, parse_value(m.quantale(), raw)?);
        }
        canonical_finest_scale(m)
    }

    fn echo(&self) -> String {
        if let Some(path) = &self.scale {
            format!("--scale {}", path.display())
        } else if let Some(eps) = &self.uniform {
            format!("--uniform {eps}")
        } else {
            "--canonical".into()
        }
    }
}

#[derive(Args)]
struct MetrizeArgs {
    /// Topology file to metrize
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    /// Where to write the metric file (stdout when omitted)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ComponentsArgs {
    /// Metric file, or a topology file to metrize on load
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    #[command(flatten)]
    scale: ScaleChoice,
    #[arg(long, value_enum, default_value = "strict")]
    variant: Variant,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct WalkArgs {
    /// Metric file, or a topology file to metrize on load
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    #[command(flatten)]
    scale: ScaleChoice,
    /// Label of the starting point
    #[arg(long, value_name = "POINT")]
    from: String,
    /// Label of the target point
    #[arg(long, value_name = "POINT")]
    to: String,
    #[arg(long, value_enum, default_value = "strict")]
    variant: Variant,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct ConnectedArgs {
    /// Metric file, or a topology file to metrize on load
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    #[arg(long, value_enum, default_value = "strict")]
    variant: Variant,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct UniformConnectedArgs {
    /// Metric file, or a topology file to metrize on load
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    #[arg(long, value_enum, default_value = "strict")]
    variant: Variant,
    /// Scale enumeration budget
    #[arg(long, default_value_t = DEFAULT_SCALE_BUDGET)]
    budget: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct SigmaConnectedArgs {
    /// Metric file, or a topology file to metrize on load
    #[arg(long, value_name = "FILE")]
    r#in: PathBuf,
    /// all | uniform | bounded:EPS | bounded-exists | expansion:FILE
    #[arg(long, value_name = "SYSTEM")]
    system: String,
    #[arg(long, value_enum, default_value = "strict")]
    variant: Variant,
    /// Scale enumeration budget
    #[arg(long, default_value_t = DEFAULT_SCALE_BUDGET)]
    budget: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem id (see `verify --theorem help` for the list)
    #[arg(long, value_name = "ID")]
    theorem: String,
    /// exhaustive:N or random:N:COUNT
    #[arg(long, value_name = "SPEC", default_value = "exhaustive:3")]
    corpus: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Scale enumeration budget per instance
    #[arg(long, default_value_t = DEFAULT_SCALE_BUDGET)]
    budget: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct LawsArgs {
    /// ext_rational, or omega:N for a ground set of N labels
    #[arg(long, value_name = "KIND")]
    quantale: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampling budget for laws that cannot be checked exhaustively
    #[arg(long, default_value_t = 2_000)]
    budget: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum RandomKind {
    Topology,
    Metric,
}

impl RandomKind {
    fn name(self) -> &'static str {
        match self {
            RandomKind::Topology => "topology",
            RandomKind::Metric => "metric",
        }
    }
}

#[derive(Args)]
struct RandomArgs {
    /// What to generate: a topology (random preorder) or a rational metric
    #[arg(long, value_enum, default_value = "topology")]
    kind: RandomKind,
    #[arg(long, value_name = "N")]
    points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the instance (stdout when omitted)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Metrize(a) => metrize(a),
        Command::Components(a) => components(a),
        Command::Walk(a) => walk(a),
        Command::Connected(a) => connected(a),
        Command::UniformConnected(a) => uniform_connected(a),
        Command::SigmaConnected(a) => sigma_connected(a),
        Command::Verify(a) => verify(a),
        Command::Laws(a) => laws(a),
        Command::Random(a) => random(a),
    }
}

// ---------------------------------------------------------------------------
// file plumbing

fn read_doc(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    io::parse_document(&text)
}

/// Load a space for the metric-consuming commands: metric files as they
/// are, topology files through `flagg_metrize`.
fn load_space(path: &Path) -> Result<VMetricSpace> {
    let doc = read_doc(path)?;
    match io::doc_type(&doc)? {
        "metric" => io::metric_from_json(&doc),
        "topology" => flagg_metrize(&io::topology_from_json(&doc)?),
        other => Err(Error::Parse(format!(
            "expected a metric or topology document, found {other:?}"
        ))),
    }
}

fn write_artifact(doc: &Value, out: Option<&Path>) -> Result<Option<String>> {
    let text = io::to_canonical_string(doc);
    match out {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
            Ok(Some(path.display().to_string()))
        }
        None => {
            print!("{text}");
            Ok(None)
        }
    }
}

/// A quantale value from the command line: JSON when it parses as JSON
/// (antichain arrays, bare integers), otherwise a rational string like 1/4.
fn parse_value(q: &QuantaleHandle, raw: &str) -> Result<QuantaleValue> {
    let j = serde_json::from_str::<Value>(raw).unwrap_or_else(|_| Value::String(raw.into()));
    io::value_from_json(q, &j)
}

fn parse_system(m: &VMetricSpace, raw: &str) -> Result<ScaleSystem> {
    if raw == "all" {
        return Ok(ScaleSystem::All);
    }
    if raw == "uniform" {
        return Ok(ScaleSystem::Uniform);
    }
    if raw == "bounded-exists" {
        return Ok(ScaleSystem::BoundedBelowExists);
    }
    if let Some(eps) = raw.strip_prefix("bounded:") {
        let eps = parse_value(m.quantale(), eps)?;
        return Ok(ScaleSystem::BoundedBelowFixed(EpsSelection::Value(eps)));
    }
    if let Some(path) = raw.strip_prefix("expansion:") {
        let doc = read_doc(Path::new(path))?;
        return Ok(ScaleSystem::ExpansionRate(alpha_from_json(
            m.quantale(),
            &doc,
        )?));
    }
    Err(Error::Invalid(format!(
        "unknown scale system {raw:?} (expected all | uniform | bounded:EPS | bounded-exists | expansion:FILE)"
    )))
}

/// Expansion-map file: {"type":"expansion-map","map":[[arg,value],...]} with
/// both columns in the value syntax of the space's quantale. Rational maps
/// read the pairs as a step function over thresholds; omega maps as an
/// exact table.
fn alpha_from_json(q: &QuantaleHandle, doc: &Value) -> Result<AlphaSelection> {
    if io::doc_type(doc)? != "expansion-map" {
        return Err(Error::Parse("not an expansion-map document".into()));
    }
    let rows = doc
        .get("map")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("expansion-map needs a \"map\" array".into()))?;
    let mut pairs = Vec::with_capacity(rows.len());
    for row in rows {
        let pair = row
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Parse("expansion-map rows must be [arg, value] pairs".into()))?;
        pairs.push((
            io::value_from_json(q, &pair[0])?,
            io::value_from_json(q, &pair[1])?,
        ));
    }
    match q {
        QuantaleHandle::ExtRational => AlphaSelection::rational_steps(
            pairs
                .into_iter()
                .map(|(a, b)| match (a, b) {
                    (QuantaleValue::Rational(a), QuantaleValue::Rational(b)) => (a, b),
                    _ => unreachable!("value_from_json matches the handle"),
                })
                .collect(),
        ),
        QuantaleHandle::Omega { .. } => AlphaSelection::omega_table(
            pairs
                .into_iter()
                .map(|(a, b)| match (a, b) {
                    (QuantaleValue::Omega(a), QuantaleValue::Omega(b)) => (a, b),
                    _ => unreachable!("value_from_json matches the handle"),
                })
                .collect(),
        ),
    }
}

fn parse_corpus(raw: &str, seed: u64, budget: usize) -> Result<Corpus> {
    let corpus = if let Some(n) = raw.strip_prefix("exhaustive:") {
        let n = n
            .parse()
            .map_err(|_| Error::Invalid(format!("bad corpus size in {raw:?}")))?;
        Corpus::exhaustive(n)?
    } else if let Some(rest) = raw.strip_prefix("random:") {
        let (n, count) = rest
            .split_once(':')
            .ok_or_else(|| Error::Invalid(format!("random corpus needs N:COUNT, got {raw:?}")))?;
        let n = n
            .parse()
            .map_err(|_| Error::Invalid(format!("bad point count in {raw:?}")))?;
        let count = count
            .parse()
            .map_err(|_| Error::Invalid(format!("bad instance count in {raw:?}")))?;
        Corpus::random(n, count, seed)?
    } else {
        return Err(Error::Invalid(format!(
            "unknown corpus {raw:?} (expected exhaustive:N or random:N:COUNT)"
        )));
    };
    Ok(corpus.with_scale_budget(budget))
}

/// Print a report document: canonical JSON, or the caller's text rendering.
fn emit(format: Format, doc: &Value, text: &str) {
    match format {
        Format::Json => print!("{}", io::to_canonical_string(doc)),
        Format::Text => println!("{text}"),
    }
}

// ---------------------------------------------------------------------------
// commands

fn metrize(a: MetrizeArgs) -> Result<u8> {
    let doc = read_doc(&a.r#in)?;
    let t = io::topology_from_json(&doc)?;
    let m = flagg_metrize(&t)?;
    let artifact = io::metric_to_json(&m);
    let command = format!(
        "scalewalk metrize --in {}{} --format {}",
        a.r#in.display(),
        a.out
            .as_deref()
            .map(|p| format!(" --out {}", p.display()))
            .unwrap_or_default(),
        a.format.name(),
    );
    match write_artifact(&artifact, a.out.as_deref())? {
        Some(path) => {
            let doc = json!({"type": "metrize-report", "command": command, "wrote": path, "points": m.n()});
            emit(a.format, &doc, &format!("wrote metric for {} points to {path}", m.n()));
        }
        None => {}
    }
    Ok(0)
}

fn components(a: ComponentsArgs) -> Result<u8> {
    let m = load_space(&a.r#in)?;
    let r = a.scale.resolve(&m)?;
    let parts = r_components(&m, &r, a.variant.step())?;
    let command = format!(
        "scalewalk components --in {} {} --variant {} --format {}",
        a.r#in.display(),
        a.scale.echo(),
        a.variant.name(),
        a.format.name(),
    );
    let doc = json!({
        "type": "components-report",
        "command": command,
        "partition": io::partition_to_json(&m, &parts),
    });
    let blocks: Vec<String> = parts
        .blocks()
        .iter()
        .map(|&b| {
            let labels: Vec<&str> = (0..m.n())
                .filter(|&i| b >> i & 1 == 1)
                .map(|i| m.points()[i].as_str())
                .collect();
            format!("{{{}}}", labels.join(", "))
        })
        .collect();
    emit(
        a.format,
        &doc,
        &format!(
            "{} component(s) under {}: {}",
            parts.n_blocks(),
            r.id(),
            blocks.join(" ")
        ),
    );
    Ok(0)
}

fn walk(a: WalkArgs) -> Result<u8> {
    let m = load_space(&a.r#in)?;
    let r = a.scale.resolve(&m)?;
    let x = m.label_index(&a.from)?;
    let z = m.label_index(&a.to)?;
    let w = find_walk(&m, &r, x, z, a.variant.step())?;
    let command = format!(
        "scalewalk walk --in {} {} --from {} --to {} --variant {} --format {}",
        a.r#in.display(),
        a.scale.echo(),
        a.from,
        a.to,
        a.variant.name(),
        a.format.name(),
    );
    let doc = json!({
        "type": "walk-report",
        "command": command,
        "walk": io::walk_to_json(&m, w.as_ref()),
    });
    match &w {
        Some(w) => {
            emit(a.format, &doc, &format!("walk: {}", w.labels(&m).join(" -> ")));
            Ok(0)
        }
        None => {
            emit(
                a.format,
                &doc,
                &format!("no walk from {} to {} under {}", a.from, a.to, r.id()),
            );
            Ok(1)
        }
    }
}

/// Topological connectedness through the canonical finest scale. A plain
/// metric (no metrization source attached) is judged via its induced
/// topology, re-metrized, which is the notion the canonical scale decides.
fn connected(a: ConnectedArgs) -> Result<u8> {
    let mut m = load_space(&a.r#in)?;
    if m.flagg_source().is_none() {
        m = flagg_metrize(&induced_topology(&m)?)?;
    }
    let r = canonical_finest_scale(&m)?;
    let parts = r_components(&m, &r, a.variant.step())?;
    let ok = parts.n_blocks() <= 1;
    let command = format!(
        "scalewalk connected --in {} --variant {} --format {}",
        a.r#in.display(),
        a.variant.name(),
        a.format.name(),
    );
    verdict_report(a.format, command, "connected", &m, (!ok).then_some(&r), None)
}

fn uniform_connected(a: UniformConnectedArgs) -> Result<u8> {
    let m = load_space(&a.r#in)?;
    let command = format!(
        "scalewalk uniform-connected --in {} --variant {} --budget {} --format {}",
        a.r#in.display(),
        a.variant.name(),
        a.budget,
        a.format.name(),
    );
    sigma_verdict(a.format, command, "uniformly connected", &m, &ScaleSystem::Uniform, a.variant, a.budget)
}

fn sigma_connected(a: SigmaConnectedArgs) -> Result<u8> {
    let m = load_space(&a.r#in)?;
    let sigma = parse_system(&m, &a.system)?;
    let command = format!(
        "scalewalk sigma-connected --in {} --system {} --variant {} --budget {} --format {}",
        a.r#in.display(),
        a.system,
        a.variant.name(),
        a.budget,
        a.format.name(),
    );
    sigma_verdict(a.format, command, "Σ-connected", &m, &sigma, a.variant, a.budget)
}

/// Shared Σ-connectivity verdict. The Σ-partition is the meet of the
/// per-scale partitions, so it is nontrivial exactly when some single
/// enumerated scale's partition is — scanning scale by scale decides the
/// verdict and hands back the separating scale as the witness.
fn sigma_verdict(
    format: Format,
    command: String,
    what: &str,
    m: &VMetricSpace,
    sigma: &ScaleSystem,
    variant: Variant,
    budget: usize,
) -> Result<u8> {
    let e = enumerate_scales(m, sigma, budget)?;
    let mut witness = None;
    for r in &e.scales {
        if r_components(m, r, variant.step())?.n_blocks() > 1 {
            witness = Some(r.clone());
            break;
        }
    }
    let note = (!e.exhaustive)
        .then(|| "sampled scale enumeration: a positive verdict is an upper bound".to_string());
    verdict_report(format, command, what, m, witness.as_ref(), note)
}

fn verdict_report(
    format: Format,
    command: String,
    what: &str,
    m: &VMetricSpace,
    witness: Option<&Scale>,
    note: Option<String>,
) -> Result<u8> {
    let ok = witness.is_none();
    let doc = json!({
        "type": "verdict-report",
        "command": command,
        "property": what,
        "holds": ok,
        "witness": witness.map(|r| io::scale_to_json(m, r)),
        "note": note,
    });
    let mut text = match witness {
        Some(r) => {
            let radii: std::collections::BTreeSet<String> = (0..m.n())
                .map(|x| io::value_string(r.radius(x)))
                .collect();
            format!(
                "{what}: false (witness scale {} with radii {{{}}})",
                r.id(),
                radii.into_iter().collect::<Vec<_>>().join(", ")
            )
        }
        None => format!("{what}: true"),
    };
    if let Some(note) = &note {
        text.push_str(&format!(" [{note}]"));
    }
    emit(format, &doc, &text);
    Ok(u8::from(!ok))
}

fn verify(a: VerifyArgs) -> Result<u8> {
    let corpus = parse_corpus(&a.corpus, a.seed, a.budget)?;
    let report = run_theorem(&a.theorem, &corpus, a.seed, None)?;
    let command = format!(
        "scalewalk verify --theorem {} --corpus {} --seed {} --budget {} --format {}",
        a.theorem,
        a.corpus,
        a.seed,
        a.budget,
        a.format.name(),
    );
    let ok = report.counterexample().is_none();
    let doc = json!({
        "type": "verify-report",
        "command": command,
        "report": report.to_json(),
    });
    emit(a.format, &doc, &format!("command: {command}\n{}", report.render_text()));
    Ok(u8::from(!ok))
}

fn laws(a: LawsArgs) -> Result<u8> {
    let q = parse_quantale(&a.quantale)?;
    let report = check_quantale_laws(&q, a.budget, a.seed)?;
    let command = format!(
        "scalewalk laws --quantale {} --seed {} --budget {} --format {}",
        a.quantale,
        a.seed,
        a.budget,
        a.format.name(),
    );
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "law": c.law,
                "mode": c.mode.to_string(),
                "cases": c.cases,
                "holds": c.holds,
                "witness": c.witness,
            })
        })
        .collect();
    let doc = json!({
        "type": "laws-report",
        "command": command,
        "quantale": report.quantale,
        "seed": report.seed,
        "all_hold": report.all_hold(),
        "checks": checks,
    });
    let mut text = format!("command: {command}\nquantale {}\n", report.quantale);
    for c in &report.checks {
        text.push_str(&format!(
            "  {} [{}]: {}{}\n",
            c.law,
            c.mode,
            if c.holds { "holds" } else { "FAILS" },
            c.witness
                .as_deref()
                .map(|w| format!(" — {w}"))
                .unwrap_or_default(),
        ));
    }
    text.push_str(if report.all_hold() {
        "all laws hold"
    } else {
        "some laws FAIL"
    });
    emit(a.format, &doc, &text);
    Ok(u8::from(!report.all_hold()))
}

fn parse_quantale(raw: &str) -> Result<QuantaleHandle> {
    if raw == "ext_rational" || raw == "ext" {
        return Ok(QuantaleHandle::ext_rational());
    }
    if let Some(n) = raw.strip_prefix("omega:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Invalid(format!("bad ground size in {raw:?}")))?;
        let labels = (0..n).map(|i| format!("s{i}")).collect();
        return QuantaleHandle::omega(labels);
    }
    Err(Error::Invalid(format!(
        "unknown quantale {raw:?} (expected ext_rational or omega:N)"
    )))
}

fn random(a: RandomArgs) -> Result<u8> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(a.seed);
    let artifact = match a.kind {
        RandomKind::Topology => io::topology_to_json(&random_preorder_space(a.points, &mut rng)?),
        RandomKind::Metric => io::metric_to_json(&scalewalk::verify::random_ext_metric(
            a.points, false, &mut rng,
        )?),
    };
    let command = format!(
        "scalewalk random --kind {} --points {} --seed {}{} --format {}",
        a.kind.name(),
        a.points,
        a.seed,
        a.out
            .as_deref()
            .map(|p| format!(" --out {}", p.display()))
            .unwrap_or_default(),
        a.format.name(),
    );
    match write_artifact(&artifact, a.out.as_deref())? {
        Some(path) => {
            let doc = json!({"type": "random-report", "command": command, "wrote": path});
            emit(
                a.format,
                &doc,
                &format!("wrote random {} with {} points to {path}", a.kind.name(), a.points),
            );
        }
        None => {}
    }
    Ok(0)
}
