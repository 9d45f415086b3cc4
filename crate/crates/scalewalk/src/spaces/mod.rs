//! Finite topological spaces and quantale-valued metric spaces.
//!
//! Point sets are capped at 64 labels so subsets live in `u64` masks; opens
//! are stored as masks sorted ascending, which doubles as the canonical
//! serialization order. Constructors validate and reject — a family of opens
//! that is not union/intersection-closed is an input error, never repaired.

mod metrize;

pub use metrize::{
    flagg_metrize, induced_topology, induced_topology_with, mutual_metrize, product_topology,
    product_topology_with_budget,
};

use std::collections::BTreeSet;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::quantale::{ExtRational, QuantaleHandle, QuantaleValue};

/// Hard cap on points per space: subsets must fit a `u64` mask.
pub const MAX_POINTS: usize = 64;

/// Default cap on how many opens a generated topology may have before the
/// construction aborts with a budget error.
pub const DEFAULT_MAX_OPENS: usize = 100_000;

/// Opens families at or below this size get the full pairwise
/// union/intersection validation; larger families are only accepted from
/// constructions that are closed by design.
const FULL_VALIDATION_LIMIT: usize = 512;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteTopSpace {
    points: Vec<String>,
    /// Sorted ascending; each mask's bit `i` marks membership of point `i`.
    opens: Vec<u64>,
}

impl FiniteTopSpace {
    /// Validating constructor: distinct labels, ∅ and the full set present,
    /// no duplicate opens, closed under binary union and intersection.
    pub fn new(points: Vec<String>, opens: Vec<u64>) -> Result<Self> {
        let space = Self::new_preclosed(points, opens)?;
        space.check_closure()?;
        Ok(space)
    }

    /// Constructor for families that are union/intersection-closed by
    /// construction (topology generation fixpoints, product up-sets). Basic
    /// shape is still validated, and small families get the full closure
    /// check anyway — the fast path only kicks in where the quadratic scan
    /// would dominate the actual work.
    pub(crate) fn new_preclosed(points: Vec<String>, mut opens: Vec<u64>) -> Result<Self> {
        if points.len() > MAX_POINTS {
            return Err(Error::Budget(format!(
                "{} points exceed the {MAX_POINTS}-point cap",
                points.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::Invalid(format!("duplicate point label {p:?}")));
            }
        }
        let full = full_mask(points.len());
        opens.sort_unstable();
        let before = opens.len();
        opens.dedup();
        if opens.len() != before {
            return Err(Error::Invalid("duplicate opens".into()));
        }
        if opens.first() != Some(&0) {
            return Err(Error::Invalid("opens must contain the empty set".into()));
        }
        if opens.last() != Some(&full) {
            return Err(Error::Invalid("opens must contain the full point set".into()));
        }
        if let Some(&bad) = opens.iter().find(|&&u| u & !full != 0) {
            return Err(Error::Invalid(format!(
                "open {bad:#x} references points outside the space"
            )));
        }
        let space = FiniteTopSpace { points, opens };
        if space.opens.len() <= FULL_VALIDATION_LIMIT {
            space.check_closure()?;
        }
        Ok(space)
    }

    fn check_closure(&self) -> Result<()> {
        for (i, &a) in self.opens.iter().enumerate() {
            for &b in &self.opens[i + 1..] {
                for derived in [a | b, a & b] {
                    if !self.is_open(derived) {
                        return Err(Error::Invalid(format!(
                            "opens are not closed under union/intersection: {} and {} produce {}",
                            self.render_open(a),
                            self.render_open(b),
                            self.render_open(derived)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn opens(&self) -> &[u64] {
        &self.opens
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.points.len())
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| Error::Invalid(format!("unknown point {label:?}")))
    }

    pub fn is_open(&self, mask: u64) -> bool {
        self.opens.binary_search(&mask).is_ok()
    }

    /// The minimal open neighborhood of point `i` — finite spaces always
    /// have one (intersection of all opens containing the point).
    pub fn minimal_open(&self, i: usize) -> u64 {
        let bit = 1u64 << i;
        self.opens
            .iter()
            .filter(|&&u| u & bit != 0)
            .fold(self.full_mask(), |acc, &u| acc & u)
    }

    /// Specialization preorder: `x ⊑ y` iff `y` belongs to every open
    /// containing `x`, i.e. `x` lies in the closure of `{y}`.
    pub fn specialization_leq(&self, x: usize, y: usize) -> bool {
        self.minimal_open(x) & (1u64 << y) != 0
    }

    /// Topological connectedness, straight from the definition: no clopen
    /// set other than ∅ and the whole space.
    pub fn is_connected(&self) -> bool {
        let full = self.full_mask();
        !self
            .opens
            .iter()
            .any(|&u| u != 0 && u != full && self.is_open(full & !u))
    }

    /// Closure of a point set in this topology: complement of the union of
    /// all opens missing it.
    pub fn topological_closure(&self, mask: u64) -> u64 {
        let full = self.full_mask();
        let mut interior_of_complement = 0u64;
        for &u in &self.opens {
            if u & mask == 0 {
                interior_of_complement |= u;
            }
        }
        full & !interior_of_complement
    }

    /// Render a mask as `{a,b}` using point labels.
    pub fn render_open(&self, mask: u64) -> String {
        let labels: Vec<&str> = (0..self.points.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| self.points[i].as_str())
            .collect();
        format!("{{{}}}", labels.join(","))
    }
}

impl fmt::Debug for FiniteTopSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opens: Vec<String> = self.opens.iter().map(|&u| self.render_open(u)).collect();
        write!(f, "Top({:?}, [{}])", self.points, opens.join(" "))
    }
}

pub fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Close a family of generator sets under binary union and intersection,
/// always adding ∅ and the full set. Used by `induced_topology`, the product
/// construction oracle, and randomized corpus generators.
pub fn generate_topology(
    points: Vec<String>,
    generators: &[u64],
    max_opens: usize,
) -> Result<FiniteTopSpace> {
    let full = full_mask(points.len());
    let mut opens: BTreeSet<u64> = [0, full].into_iter().collect();
    opens.extend(generators.iter().map(|&g| g & full));
    let mut frontier: Vec<u64> = opens.iter().copied().collect();
    while let Some(a) = frontier.pop() {
        let current: Vec<u64> = opens.iter().copied().collect();
        for b in current {
            for derived in [a | b, a & b] {
                if opens.insert(derived) {
                    frontier.push(derived);
                    if opens.len() > max_opens {
                        return Err(Error::Budget(format!(
                            "generated topology exceeds {max_opens} opens"
                        )));
                    }
                }
            }
        }
    }
    FiniteTopSpace::new_preclosed(points, opens.into_iter().collect())
}

#[derive(Clone)]
pub struct VMetricSpace {
    quantale: QuantaleHandle,
    points: Vec<String>,
    d: Vec<Vec<QuantaleValue>>,
    symmetric: bool,
    /// Set when this space came out of a metrization; carries the source
    /// topology so the canonical finest scale can be derived later. Not part
    /// of the serialized document and ignored by equality.
    pub(crate) flagg_source: Option<Box<FiniteTopSpace>>,
}

impl PartialEq for VMetricSpace {
    fn eq(&self, other: &Self) -> bool {
        self.quantale == other.quantale
            && self.points == other.points
            && self.d == other.d
            && self.symmetric == other.symmetric
    }
}

impl VMetricSpace {
    pub fn new(
        quantale: QuantaleHandle,
        points: Vec<String>,
        d: Vec<Vec<QuantaleValue>>,
        symmetric: bool,
    ) -> Result<Self> {
        let n = points.len();
        if n > MAX_POINTS {
            return Err(Error::Budget(format!(
                "{n} points exceed the {MAX_POINTS}-point cap"
            )));
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::Invalid(format!("duplicate point label {p:?}")));
            }
        }
        if d.len() != n || d.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(format!("distance matrix is not {n}×{n}")));
        }
        for row in &d {
            for v in row {
                quantale.validate(v)?;
            }
        }
        let zero = quantale.zero();
        for (i, row) in d.iter().enumerate() {
            if row[i] != zero {
                return Err(Error::Invalid(format!(
                    "d({p}, {p}) must be 0",
                    p = points[i]
                )));
            }
        }
        if symmetric {
            for i in 0..n {
                for j in 0..i {
                    if d[i][j] != d[j][i] {
                        return Err(Error::Invalid(format!(
                            "symmetric flag set but d({}, {}) ≠ d({}, {})",
                            points[i], points[j], points[j], points[i]
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let via = quantale.add(&d[i][j], &d[j][k])?;
                    if !quantale.leq(&d[i][k], &via)? {
                        return Err(Error::Invalid(format!(
                            "triangle inequality fails: d({x}, {z}) ≰ d({x}, {y}) + d({y}, {z})",
                            x = points[i],
                            y = points[j],
                            z = points[k]
                        )));
                    }
                }
            }
        }
        Ok(VMetricSpace {
            quantale,
            points,
            d,
            symmetric,
            flagg_source: None,
        })
    }

    pub fn quantale(&self) -> &QuantaleHandle {
        &self.quantale
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn is_symmetric_flagged(&self) -> bool {
        self.symmetric
    }

    pub fn dist(&self, i: usize, j: usize) -> &QuantaleValue {
        &self.d[i][j]
    }

    pub fn matrix(&self) -> &[Vec<QuantaleValue>] {
        &self.d
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| Error::Invalid(format!("unknown point {label:?}")))
    }

    pub fn flagg_source(&self) -> Option<&FiniteTopSpace> {
        self.flagg_source.as_deref()
    }

    /// Distance from a point to a set: `d(x, S) = ⋀{d(x, s) : s ∈ S}`, with
    /// the empty meet landing on ∞.
    pub fn dist_to_set(&self, x: usize, set: u64) -> Result<QuantaleValue> {
        let vals: Vec<&QuantaleValue> = (0..self.n())
            .filter(|&s| set & (1 << s) != 0)
            .map(|s| &self.d[x][s])
            .collect();
        self.quantale.meet_many(vals)
    }
}

impl fmt::Debug for VMetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "VMetric({}, {} points{})",
            self.quantale.kind(),
            self.points.len(),
            if self.symmetric { ", symmetric" } else { "" }
        )
    }
}

/// A set of point pairs over a metric space's index range — the entourage
/// `E_ε` lives here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(n: usize, pairs: BTreeSet<(usize, usize)>) -> Result<Self> {
        if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x >= n || y >= n) {
            return Err(Error::Invalid(format!(
                "pair ({x}, {y}) out of range for {n} points"
            )));
        }
        Ok(Relation { n, pairs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs.iter().all(|&(x, y)| self.pairs.contains(&(y, x)))
    }

    pub fn contains_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.pairs.contains(&(i, i)))
    }
}

/// `B_ε(x) = {y : d(x, y) ≺ ε}` as a point mask. `ε` must be positive.
pub fn open_ball(m: &VMetricSpace, x: usize, eps: &QuantaleValue) -> Result<u64> {
    m.quantale().validate(eps)?;
    if !m.quantale().is_positive(eps)? {
        return Err(Error::Precondition("open_ball needs a positive radius".into()));
    }
    let mut ball = 0u64;
    for y in 0..m.n() {
        if m.quantale().well_above(eps, m.dist(x, y))? {
            ball |= 1 << y;
        }
    }
    Ok(ball)
}

/// `E_ε = {(x, y) : d(x, y) ≺ ε}`.
pub fn entourage(m: &VMetricSpace, eps: &QuantaleValue) -> Result<Relation> {
    m.quantale().validate(eps)?;
    if !m.quantale().is_positive(eps)? {
        return Err(Error::Precondition("entourage needs a positive radius".into()));
    }
    let mut pairs = BTreeSet::new();
    for x in 0..m.n() {
        for y in 0..m.n() {
            if m.quantale().well_above(eps, m.dist(x, y))? {
                pairs.insert((x, y));
            }
        }
    }
    Relation::new(m.n(), pairs)
}

/// Metric closure: `{x : d(x, S) = 0}`. Agrees with the closure in the
/// induced topology; the empty set closes to itself because the empty meet
/// is ∞.
pub fn closure_of(m: &VMetricSpace, set: u64) -> Result<u64> {
    let zero = m.quantale().zero();
    let mut out = 0u64;
    for x in 0..m.n() {
        if m.dist_to_set(x, set)? == zero {
            out |= 1 << x;
        }
    }
    Ok(out)
}

/// Restriction of the metric to a non-empty point subset.
pub fn subspace(m: &VMetricSpace, set: u64) -> Result<VMetricSpace> {
    let keep: Vec<usize> = (0..m.n()).filter(|&i| set & (1 << i) != 0).collect();
    if keep.is_empty() {
        return Err(Error::Precondition("subspace needs a non-empty point set".into()));
    }
    let points = keep.iter().map(|&i| m.points[i].clone()).collect();
    let d = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| m.d[i][j].clone()).collect())
        .collect();
    // Invariants are inherited from the ambient space, but re-validating is
    // cheap at these sizes and keeps every constructor honest.
    VMetricSpace::new(m.quantale.clone(), points, d, m.symmetric)
}

pub(crate) fn letter_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("p{i}")
    }
}

/// Shortest label for a non-negative rational: integers drop the `/1`.
pub fn rational_label(r: &BigRational) -> String {
    if r.denom() == &BigInt::one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sierpiński space: points `a`, `b`; opens ∅, `{a}`, `{a,b}`.
pub fn sierpinski() -> FiniteTopSpace {
    FiniteTopSpace::new(
        vec!["a".into(), "b".into()],
        vec![0b00, 0b01, 0b11],
    )
    .expect("fixed valid space")
}

/// Discrete topology on `n` points (every subset open), `n ≤ 16`.
pub fn discrete(n: usize) -> Result<FiniteTopSpace> {
    if n == 0 || n > 16 {
        return Err(Error::Invalid(format!(
            "discrete(n) supports 1 ≤ n ≤ 16, got {n}"
        )));
    }
    let points = (0..n).map(letter_label).collect();
    let opens = (0..=full_mask(n)).collect();
    FiniteTopSpace::new_preclosed(points, opens)
}

/// Indiscrete topology on `n` points (only ∅ and everything).
pub fn indiscrete(n: usize) -> Result<FiniteTopSpace> {
    if n == 0 {
        return Err(Error::Invalid("indiscrete(n) needs n ≥ 1".into()));
    }
    let points: Vec<String> = (0..n).map(letter_label).collect();
    let full = full_mask(n);
    FiniteTopSpace::new(points, vec![0, full])
}

/// The two-point space `{•, ∘}` with `d(•, ∘) = d(∘, •) = ∞` over the
/// extended rationals: connected but not uniformly connected.
pub fn two_point_infinity() -> VMetricSpace {
    let zero = QuantaleValue::Rational(ExtRational::zero());
    let inf = QuantaleValue::Rational(ExtRational::infinity());
    VMetricSpace::new(
        QuantaleHandle::ext_rational(),
        vec!["•".into(), "∘".into()],
        vec![vec![zero.clone(), inf.clone()], vec![inf, zero]],
        true,
    )
    .expect("fixed valid space")
}

/// Evenly spaced rational grid `{0, δ, 2δ, …, (n−1)δ}` with
/// absolute-difference distances.
pub fn grid(n: usize, spacing: &ExtRational) -> Result<VMetricSpace> {
    let delta = match spacing {
        ExtRational::Finite(r) if !r.is_zero() => r.clone(),
        _ => {
            return Err(Error::Invalid(
                "grid spacing must be finite and non-zero".into(),
            ))
        }
    };
    if n == 0 {
        return Err(Error::Invalid("grid(n, δ) needs n ≥ 1".into()));
    }
    let coords: Vec<BigRational> = (0..n)
        .map(|k| &delta * BigRational::from_integer(BigInt::from(k)))
        .collect();
    let points = coords.iter().map(rational_label).collect();
    let d = coords
        .iter()
        .map(|a| {
            coords
                .iter()
                .map(|b| {
                    let diff = if a >= b { a - b } else { b - a };
                    QuantaleValue::Rational(ExtRational::Finite(diff))
                })
                .collect()
        })
        .collect();
    VMetricSpace::new(QuantaleHandle::ext_rational(), points, d, true)
}

/// Either output shape of `standard_space`.
#[derive(Clone, Debug, PartialEq)]
pub enum StandardSpace {
    Top(FiniteTopSpace),
    Metric(VMetricSpace),
}

/// Build a named standard instance. Accepted specs: `sierpinski`,
/// `discrete(n)`, `indiscrete(n)`, `two_point_infinity`, `grid(n,δ)` with δ
/// a rational like `1/4`.
pub fn standard_space(spec: &str) -> Result<StandardSpace> {
    let spec = spec.trim();
    let (name, args) = match spec.find('(') {
        Some(open) => {
            let close = spec
                .rfind(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parens in {spec:?}")))?;
            let args: Vec<&str> = spec[open + 1..close]
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            (&spec[..open], args)
        }
        None => (spec, Vec::new()),
    };
    let want = |k: usize| -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "{name} takes {k} parameter(s), got {}",
                args.len()
            )))
        }
    };
    let nat = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::Parse(format!("bad count {s:?}")))
    };
    match name {
        "sierpinski" => {
            want(0)?;
            Ok(StandardSpace::Top(sierpinski()))
        }
        "discrete" => {
            want(1)?;
            Ok(StandardSpace::Top(discrete(nat(args[0])?)?))
        }
        "indiscrete" => {
            want(1)?;
            Ok(StandardSpace::Top(indiscrete(nat(args[0])?)?))
        }
        "two_point_infinity" => {
            want(0)?;
            Ok(StandardSpace::Metric(two_point_infinity()))
        }
        "grid" => {
            want(2)?;
            Ok(StandardSpace::Metric(grid(
                nat(args[0])?,
                &ExtRational::parse(args[1])?,
            )?))
        }
        other => Err(Error::Parse(format!("unknown standard space {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topology_validation_rejects_bad_families() {
        let pts = |n: usize| (0..n).map(letter_label).collect::<Vec<_>>();
        // Missing full set.
        assert!(FiniteTopSpace::new(pts(2), vec![0b00, 0b01]).is_err());
        // Missing empty set.
        assert!(FiniteTopSpace::new(pts(2), vec![0b01, 0b11]).is_err());
        // {a}, {b} present but their union {a,b}... is present; their
        // union with nothing missing — break closure by omitting {a,b}? It
        // is the full set, so omit the union of {a} and {b} in a 3-point
        // space instead.
        assert!(FiniteTopSpace::new(pts(3), vec![0b000, 0b001, 0b010, 0b111]).is_err());
        // Intersection missing: {a,b} ∩ {b,c} = {b}.
        assert!(FiniteTopSpace::new(pts(3), vec![0b000, 0b011, 0b110, 0b111]).is_err());
        // Valid after adding the missing sets.
        assert!(FiniteTopSpace::new(
            pts(3),
            vec![0b000, 0b001, 0b010, 0b011, 0b111]
        )
        .is_ok());
        // Duplicate labels.
        assert!(FiniteTopSpace::new(vec!["a".into(), "a".into()], vec![0, 3]).is_err());
    }

    #[test]
    fn minimal_opens_and_specialization() {
        let s = sierpinski();
        assert_eq!(s.minimal_open(0), 0b01); // U_a = {a}
        assert_eq!(s.minimal_open(1), 0b11); // U_b = {a,b}
        // b ⊑ a: every open containing b contains a (b is in the closure
        // of {a}).
        assert!(s.specialization_leq(1, 0));
        assert!(!s.specialization_leq(0, 1));
        assert_eq!(s.topological_closure(0b01), 0b11); // cl{a} = {a,b}
        assert_eq!(s.topological_closure(0b10), 0b10); // cl{b} = {b}
    }

    #[test]
    fn connectedness_oracle() {
        assert!(sierpinski().is_connected());
        assert!(indiscrete(3).unwrap().is_connected());
        assert!(!discrete(2).unwrap().is_connected());
        assert!(discrete(1).unwrap().is_connected());
    }

    #[test]
    fn generate_topology_closes_generators() {
        let pts: Vec<String> = (0..3).map(letter_label).collect();
        // Generators {a,b} and {b,c} force {b} and {a,b,c} into existence.
        let t = generate_topology(pts, &[0b011, 0b110], 100).unwrap();
        assert_eq!(t.opens(), &[0b000, 0b010, 0b011, 0b110, 0b111]);
        // Budget aborts.
        let pts: Vec<String> = (0..10).map(letter_label).collect();
        let singletons: Vec<u64> = (0..10).map(|i| 1 << i).collect();
        assert!(generate_topology(pts, &singletons, 50).is_err());
    }

    #[test]
    fn metric_validation_rejects_broken_matrices() {
        let q = QuantaleHandle::ext_rational();
        let v = |p, qd| QuantaleValue::rational(p, qd).unwrap();
        // Non-zero diagonal.
        assert!(VMetricSpace::new(
            q.clone(),
            vec!["a".into()],
            vec![vec![v(1, 1)]],
            true
        )
        .is_err());
        // Triangle violation: d(a,c) = 5 > 1 + 1.
        let bad = vec![
            vec![v(0, 1), v(1, 1), v(5, 1)],
            vec![v(1, 1), v(0, 1), v(1, 1)],
            vec![v(5, 1), v(1, 1), v(0, 1)],
        ];
        assert!(VMetricSpace::new(
            q.clone(),
            vec!["a".into(), "b".into(), "c".into()],
            bad,
            true
        )
        .is_err());
        // Symmetric flag on an asymmetric matrix.
        let asym = vec![vec![v(0, 1), v(1, 1)], vec![v(2, 1), v(0, 1)]];
        assert!(VMetricSpace::new(
            q.clone(),
            vec!["a".into(), "b".into()],
            asym.clone(),
            true
        )
        .is_err());
        // Same matrix accepted as a quasi-metric.
        assert!(VMetricSpace::new(q, vec!["a".into(), "b".into()], asym, false).is_ok());
    }

    #[test]
    fn grid_and_balls() {
        let g = grid(3, &ExtRational::ratio(1, 2).unwrap()).unwrap();
        assert_eq!(g.points(), &["0", "1/2", "1"]);
        let eps = QuantaleValue::rational(3, 4).unwrap();
        // B_{3/4}(0) = {0, 1/2}: strictly below 3/4.
        assert_eq!(open_ball(&g, 0, &eps).unwrap(), 0b011);
        // Zero radius is not positive.
        let zero = QuantaleValue::rational(0, 1).unwrap();
        assert!(open_ball(&g, 0, &zero).is_err());
        // ∞ radius sees everything, even at infinite distance.
        let tpi = two_point_infinity();
        let inf = QuantaleValue::Rational(ExtRational::infinity());
        assert_eq!(open_ball(&tpi, 0, &inf).unwrap(), 0b11);
    }

    #[test]
    fn entourage_on_grid() {
        let g = grid(3, &ExtRational::ratio(1, 2).unwrap()).unwrap();
        let eps = QuantaleValue::rational(3, 4).unwrap();
        let e = entourage(&g, &eps).unwrap();
        assert!(e.contains_diagonal());
        assert!(e.is_symmetric());
        // Pairs strictly closer than 3/4, i.e. at distance ≤ 1/2.
        assert!(e.contains(0, 1) && e.contains(1, 2));
        assert!(!e.contains(0, 2));
    }

    #[test]
    fn closure_examples() {
        let g = grid(3, &ExtRational::ratio(1, 2).unwrap()).unwrap();
        // Rational grid: closure does nothing new.
        assert_eq!(closure_of(&g, 0b001).unwrap(), 0b001);
        // Empty set: empty meet is ∞, never 0.
        assert_eq!(closure_of(&g, 0).unwrap(), 0);
        assert_eq!(closure_of(&g, 0b111).unwrap(), 0b111);
    }

    #[test]
    fn subspace_restricts_matrix() {
        let g = grid(5, &ExtRational::ratio(1, 4).unwrap()).unwrap();
        let sub = subspace(&g, 0b10001).unwrap();
        assert_eq!(sub.points(), &["0", "1"]);
        assert_eq!(sub.dist(0, 1), &QuantaleValue::rational(1, 1).unwrap());
        assert!(subspace(&g, 0).is_err());
        let all = subspace(&g, 0b11111).unwrap();
        assert_eq!(all, g);
    }

    #[test]
    fn standard_space_dispatch() {
        assert!(matches!(
            standard_space("sierpinski").unwrap(),
            StandardSpace::Top(_)
        ));
        match standard_space("grid(3, 1/2)").unwrap() {
            StandardSpace::Metric(m) => assert_eq!(m.points(), &["0", "1/2", "1"]),
            other => panic!("expected metric, got {other:?}"),
        }
        match standard_space("discrete(1)").unwrap() {
            StandardSpace::Top(t) => assert_eq!(t.opens(), &[0b0, 0b1]),
            other => panic!("expected topology, got {other:?}"),
        }
        assert!(standard_space("moebius").is_err());
        assert!(standard_space("grid(3)").is_err());
        let tpi = match standard_space("two_point_infinity").unwrap() {
            StandardSpace::Metric(m) => m,
            other => panic!("expected metric, got {other:?}"),
        };
        assert_eq!(tpi.points(), &["•", "∘"]);
        assert_eq!(
            tpi.dist(0, 1),
            &QuantaleValue::Rational(ExtRational::infinity())
        );
    }
}
