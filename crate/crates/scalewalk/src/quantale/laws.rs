//! Machine checks of the value-quantale axioms and their standard
//! consequences, reported law by law with counterexample witnesses.
//!
//! Ω(S) carriers are finite, so most laws are checked exhaustively there
//! (tuple loops are capped and fall back to seeded sampling for the larger
//! grounds). The extended rationals are sampled over a fixed grid plus
//! seeded random values; laws quantifying over arbitrary sets are exercised
//! on finite subsets, with the empty set always included since several laws
//! bite exactly there.
//!
//! Addition is injectable so the checker itself can be tested: handing it a
//! deliberately wrong `+` must produce failing checks with witnesses.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{enumerate_carrier, ExtRational, QuantaleHandle, QuantaleValue};
use crate::error::Result;

/// How a law was exercised.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawMode {
    Exhaustive,
    Sampled(usize),
}

impl std::fmt::Display for LawMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LawMode::Exhaustive => write!(f, "exhaustive"),
            LawMode::Sampled(n) => write!(f, "sampled({n})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LawCheck {
    pub law: String,
    pub mode: LawMode,
    pub cases: usize,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct LawReport {
    pub quantale: String,
    pub seed: u64,
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failing(&self) -> Vec<&LawCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

pub type AddFn<'a> =
    &'a dyn Fn(&QuantaleHandle, &QuantaleValue, &QuantaleValue) -> Result<QuantaleValue>;

/// Check the quantale laws for `handle` with its own addition.
pub fn check_quantale_laws(handle: &QuantaleHandle, budget: usize, seed: u64) -> Result<LawReport> {
    check_quantale_laws_with_add(handle, budget, seed, &|h, a, b| h.add(a, b))
}

/// Same checks with a caller-supplied addition; everything else (order,
/// meet, join, well-above) comes from the handle.
pub fn check_quantale_laws_with_add(
    handle: &QuantaleHandle,
    budget: usize,
    seed: u64,
    add: AddFn<'_>,
) -> Result<LawReport> {
    let mut ctx = Ctx::new(handle, budget, seed, add)?;
    let checks = vec![
        ctx.zero_below_infinity()?,
        ctx.lattice_glb()?,
        ctx.lattice_lub()?,
        ctx.add_commutative()?,
        ctx.add_associative()?,
        ctx.add_identity()?,
        ctx.add_distributes_over_meet()?,
        ctx.well_above_implies_leq()?,
        ctx.well_above_approximation()?,
        ctx.interpolation()?,
        ctx.positive_meet()?,
        ctx.halving()?,
    ];
    Ok(LawReport {
        quantale: describe(handle),
        seed,
        checks,
    })
}

fn describe(handle: &QuantaleHandle) -> String {
    match handle {
        QuantaleHandle::ExtRational => "ext_rational".into(),
        QuantaleHandle::Omega { ground } => format!("omega(ground size {})", ground.len()),
    }
}

const CAP_PAIRS: usize = 60_000;
const CAP_TRIPLES: usize = 600_000;

struct Ctx<'a> {
    handle: &'a QuantaleHandle,
    universe: Vec<QuantaleValue>,
    /// True when `universe` is the entire carrier, so universal statements
    /// checked over it are genuinely exhaustive.
    carrier_complete: bool,
    budget: usize,
    rng: ChaCha8Rng,
    add: AddFn<'a>,
}

impl<'a> Ctx<'a> {
    fn new(handle: &'a QuantaleHandle, budget: usize, seed: u64, add: AddFn<'a>) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (universe, carrier_complete) = match handle {
            QuantaleHandle::Omega { ground } => {
                let carrier = enumerate_carrier(ground.len(), 4)?
                    .into_iter()
                    .map(QuantaleValue::Omega)
                    .collect();
                (carrier, true)
            }
            QuantaleHandle::ExtRational => {
                let mut vals: Vec<ExtRational> = vec![
                    ExtRational::zero(),
                    ExtRational::ratio(1, 3)?,
                    ExtRational::ratio(1, 2)?,
                    ExtRational::ratio(2, 3)?,
                    ExtRational::one(),
                    ExtRational::ratio(3, 2)?,
                    ExtRational::ratio(2, 1)?,
                    ExtRational::ratio(7, 2)?,
                    ExtRational::ratio(100, 1)?,
                    ExtRational::infinity(),
                ];
                for _ in 0..budget.min(40) {
                    vals.push(sample_ext(&mut rng)?);
                }
                vals.sort();
                vals.dedup();
                (vals.into_iter().map(QuantaleValue::Rational).collect(), false)
            }
        };
        Ok(Ctx {
            handle,
            universe,
            carrier_complete,
            budget: budget.max(1),
            rng,
            add,
        })
    }

    fn add(&self, a: &QuantaleValue, b: &QuantaleValue) -> Result<QuantaleValue> {
        (self.add)(self.handle, a, b)
    }

    /// Index tuples of the given arity: every tuple if the universe is the
    /// full carrier and the count fits the cap, otherwise seeded samples.
    fn tuples(&mut self, arity: u32, cap: usize) -> (Vec<Vec<usize>>, LawMode) {
        let n = self.universe.len();
        let total = n.checked_pow(arity).unwrap_or(usize::MAX);
        if self.carrier_complete && total <= cap {
            let mut out = Vec::with_capacity(total);
            let mut idx = vec![0usize; arity as usize];
            loop {
                out.push(idx.clone());
                let mut k = arity as usize;
                loop {
                    if k == 0 {
                        return (out, LawMode::Exhaustive);
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < n {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        }
        let count = self.budget;
        let out = (0..count)
            .map(|_| (0..arity).map(|_| self.rng.gen_range(0..n)).collect())
            .collect();
        (out, LawMode::Sampled(count))
    }

    fn fmt(&self, v: &QuantaleValue) -> String {
        match v {
            QuantaleValue::Rational(r) => r.canonical_string(),
            QuantaleValue::Omega(e) => format!("{e:?}"),
        }
    }

    fn check(
        &self,
        law: &str,
        mode: LawMode,
        cases: usize,
        witness: Option<String>,
    ) -> LawCheck {
        LawCheck {
            law: law.into(),
            mode,
            cases,
            holds: witness.is_none(),
            witness,
        }
    }

    fn zero_below_infinity(&mut self) -> Result<LawCheck> {
        let zero = self.handle.zero();
        let inf = self.handle.infinity();
        let witness = if !self.handle.leq(&zero, &inf)? {
            Some("0 ≤ ∞ fails".into())
        } else if zero == inf {
            Some("0 = ∞: the quantale is degenerate".into())
        } else {
            None
        };
        Ok(self.check("zero-strictly-below-infinity", LawMode::Exhaustive, 1, witness))
    }

    fn lattice_glb(&mut self) -> Result<LawCheck> {
        let (tuples, mode) = self.tuples(3, CAP_TRIPLES);
        let cases = tuples.len();
        let mut witness = None;
        for t in tuples {
            let (a, b, c) = (&self.universe[t[0]], &self.universe[t[1]], &self.universe[t[2]]);
            let m = self.handle.meet(a, b)?;
            if !self.handle.leq(&m, a)? || !self.handle.leq(&m, b)? {
                witness = Some(format!(
                    "meet({}, {}) = {} is not a lower bound",
                    self.fmt(a),
                    self.fmt(b),
                    self.fmt(&m)
                ));
                break;
            }
            if self.handle.leq(c, a)? && self.handle.leq(c, b)? && !self.handle.leq(c, &m)? {
                witness = Some(format!(
                    "{} is a lower bound of {} and {} but not ≤ their meet {}",
                    self.fmt(c),
                    self.fmt(a),
                    self.fmt(b),
                    self.fmt(&m)
                ));
                break;
            }
        }
        Ok(self.check("meet-is-greatest-lower-bound", mode, cases, witness))
    }

    fn lattice_lub(&mut self) -> Result<LawCheck> {
        let (tuples, mode) = self.tuples(3, CAP_TRIPLES);
        let cases = tuples.len();
        let mut witness = None;
        for t in tuples {
            let (a, b, c) = (&self.universe[t[0]], &self.universe[t[1]], &self.universe[t[2]]);
            let j = self.handle.join(a, b)?;
            if !self.handle.leq(a, &j)? || !self.handle.leq(b, &j)? {
                witness = Some(format!(
                    "join({}, {}) = {} is not an upper bound",
                    self.fmt(a),
                    self.fmt(b),
                    self.fmt(&j)
                ));
                break;
            }
            if self.handle.leq(a, c)? && self.handle.leq(b, c)? && !self.handle.leq(&j, c)? {
                witness = Some(format!(
                    "{} is an upper bound of {} and {} but not ≥ their join {}",
                    self.fmt(c),
                    self.fmt(a),
                    self.fmt(b),
                    self.fmt(&j)
                ));
                break;
            }
        }
        Ok(self.check("join-is-least-upper-bound", mode, cases, witness))
    }

    fn add_commutative(&mut self) -> Result<LawCheck> {
        let (tuples, mode) = self.tuples(2, CAP_PAIRS);
        let cases = tuples.len();
        let mut witness = None;
        for t in tuples {
            let (a, b) = (&self.universe[t[0]], &self.universe[t[1]]);
            if self.add(a, b)? != self.add(b, a)? {
                witness = Some(format!("{} + {} ≠ {} + {}", self.fmt(a), self.fmt(b), self.fmt(b), self.fmt(a)));
                break;
            }
        }
        Ok(self.check("add-commutative", mode, cases, witness))
    }

    fn add_associative(&mut self) -> Result<LawCheck> {
        let (tuples, mode) = self.tuples(3, CAP_TRIPLES);
        let cases = tuples.len();
        let mut witness = None;
        for t in tuples {
            let (a, b, c) = (&self.universe[t[0]], &self.universe[t[1]], &self.universe[t[2]]);
            let lhs = self.add(&self.add(a, b)?, c)?;
            let rhs = self.add(a, &self.add(b, c)?)?;
            if lhs != rhs {
                witness = Some(format!(
                    "({} + {}) + {} = {} but {} + ({} + {}) = {}",
                    self.fmt(a),
                    self.fmt(b),
                    self.fmt(c),
                    self.fmt(&lhs),
                    self.fmt(a),
                    self.fmt(b),
                    self.fmt(c),
                    self.fmt(&rhs)
                ));
                break;
            }
        }
        Ok(self.check("add-associative", mode, cases, witness))
    }

    fn add_identity(&mut self) -> Result<LawCheck> {
        let zero = self.handle.zero();
        let mut witness = None;
        for a in &self.universe {
            let s = self.add(a, &zero)?;
            if &s != a {
                witness = Some(format!("{} + 0 = {} ≠ {}", self.fmt(a), self.fmt(&s), self.fmt(a)));
                break;
            }
        }
        let mode = if self.carrier_complete {
            LawMode::Exhaustive
        } else {
            LawMode::Sampled(self.universe.len())
        };
        Ok(self.check("add-identity", mode, self.universe.len(), witness))
    }

    /// `a + ⋀S = ⋀{a + s : s ∈ S}`, over every subset of the carrier when
    /// small enough, otherwise sampled subsets. The empty set is always
    /// included: it specializes to `a + ∞ = ∞`.
    fn add_distributes_over_meet(&mut self) -> Result<LawCheck> {
        let n = self.universe.len();
        let exhaustive = self.carrier_complete && n <= 12;
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mode = if exhaustive {
            for mask in 0u32..(1u32 << n) {
                subsets.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
            }
            LawMode::Exhaustive
        } else {
            subsets.push(Vec::new());
            for _ in 0..self.budget {
                let size = self.rng.gen_range(0..=4);
                subsets.push((0..size).map(|_| self.rng.gen_range(0..n)).collect());
            }
            LawMode::Sampled(subsets.len())
        };
        let mut cases = 0;
        let mut witness = None;
        'outer: for s in &subsets {
            let set: Vec<&QuantaleValue> = s.iter().map(|&i| &self.universe[i]).collect();
            let meet = self.handle.meet_many(set.iter().copied())?;
            let a_indices: Vec<usize> = if exhaustive {
                (0..n).collect()
            } else {
                vec![self.rng.gen_range(0..n)]
            };
            for ai in a_indices {
                let a = &self.universe[ai];
                cases += 1;
                let lhs = self.add(a, &meet)?;
                let mut shifted = Vec::with_capacity(set.len());
                for v in &set {
                    shifted.push(self.add(a, v)?);
                }
                let rhs = self.handle.meet_many(shifted.iter())?;
                if lhs != rhs {
                    let set_str: Vec<String> = set.iter().map(|v| self.fmt(v)).collect();
                    witness = Some(format!(
                        "a = {}, S = {{{}}}: a + ⋀S = {} but ⋀(a + S) = {}",
                        self.fmt(a),
                        set_str.join(", "),
                        self.fmt(&lhs),
                        self.fmt(&rhs)
                    ));
                    break 'outer;
                }
            }
        }
        Ok(self.check("add-distributes-over-meet", mode, cases, witness))
    }

    fn well_above_implies_leq(&mut self) -> Result<LawCheck> {
        let (tuples, mode) = self.tuples(2, CAP_PAIRS);
        let cases = tuples.len();
        let mut witness = None;
        for t in tuples {
            let (b, a) = (&self.universe[t[0]], &self.universe[t[1]]);
            if self.handle.well_above(b, a)? && !self.handle.leq(a, b)? {
                witness = Some(format!("{} ≻ {} but not ≥", self.fmt(b), self.fmt(a)));
                break;
            }
        }
        Ok(self.check("well-above-implies-geq", mode, cases, witness))
    }

    /// `a = ⋀{b : b ≻ a}`. For Ω the right-hand meet is computed over the
    /// whole carrier. For the rationals the meet is an infimum over an
    /// infinite set, so the check is: the set's members all dominate `a`,
    /// and every universe element strictly above `a` fails to be a lower
    /// bound, witnessed constructively.
    fn well_above_approximation(&mut self) -> Result<LawCheck> {
        let mut witness = None;
        let mut cases = 0;
        match self.handle {
            QuantaleHandle::Omega { .. } => {
                'outer: for a in &self.universe {
                    cases += 1;
                    let mut above = Vec::new();
                    for b in &self.universe {
                        if self.handle.well_above(b, a)? {
                            above.push(b);
                        }
                    }
                    let meet = self.handle.meet_many(above.iter().copied())?;
                    if &meet != a {
                        witness = Some(format!(
                            "⋀{{b : b ≻ {}}} = {} ≠ {}",
                            self.fmt(a),
                            self.fmt(&meet),
                            self.fmt(a)
                        ));
                        break 'outer;
                    }
                }
            }
            QuantaleHandle::ExtRational => {
                'outer: for a in self.universe.clone() {
                    let ar = a.as_rational().unwrap().clone();
                    for c in self.universe.clone() {
                        let cr = c.as_rational().unwrap().clone();
                        if cr <= ar {
                            continue;
                        }
                        cases += 1;
                        // Exhibit b with b ≻ a and b < c, so c is not a
                        // lower bound of the well-above set.
                        let b = match (ar.is_infinite(), cr.is_infinite()) {
                            (false, false) => ar.midpoint(&cr).expect("both finite"),
                            (false, true) => ar.plus_one(),
                            _ => unreachable!("c > a rules out a = ∞"),
                        };
                        if !(b.well_above(&ar) && b < cr) {
                            witness = Some(format!(
                                "no witness strictly between {} and {}",
                                ar.canonical_string(),
                                cr.canonical_string()
                            ));
                            break 'outer;
                        }
                    }
                    // The set {b : b ≻ a} must be nonempty even at a = ∞,
                    // otherwise its infimum would be ∞ ≠ a... and at a = ∞
                    // that is exactly what saves the law: ∞ ≻ ∞.
                    cases += 1;
                    if ar.is_infinite() && !ar.well_above(&ar) {
                        witness = Some("{b : b ≻ ∞} is empty, its meet cannot be ∞".into());
                        break 'outer;
                    }
                }
            }
        }
        let mode = if self.carrier_complete {
            LawMode::Exhaustive
        } else {
            LawMode::Sampled(cases)
        };
        Ok(self.check("well-above-approximation", mode, cases, witness))
    }

    /// Interpolation: `b ≻ a` implies some `c` with `b ≻ c ≻ a`. The witness
    /// is constructed (midpoints for the rationals, the principal element on
    /// `⋃antichain(b)` for Ω) and then verified.
    fn interpolation(&mut self) -> Result<LawCheck> {
        let (tuples, mode) = self.tuples(2, CAP_PAIRS);
        let cases = tuples.len();
        let mut witness = None;
        for t in tuples {
            let (b, a) = (&self.universe[t[0]], &self.universe[t[1]]);
            if !self.handle.well_above(b, a)? {
                continue;
            }
            let c = interpolant(self.handle, b, a)?;
            if !(self.handle.well_above(b, &c)? && self.handle.well_above(&c, a)?) {
                witness = Some(format!(
                    "{} ≻ {} but candidate {} does not interpolate",
                    self.fmt(b),
                    self.fmt(a),
                    self.fmt(&c)
                ));
                break;
            }
        }
        Ok(self.check("interpolation", mode, cases, witness))
    }

    fn positive_meet(&mut self) -> Result<LawCheck> {
        let (tuples, mode) = self.tuples(2, CAP_PAIRS);
        let cases = tuples.len();
        let mut witness = None;
        for t in tuples {
            let (a, b) = (&self.universe[t[0]], &self.universe[t[1]]);
            if self.handle.is_positive(a)? && self.handle.is_positive(b)? {
                let m = self.handle.meet(a, b)?;
                if !self.handle.is_positive(&m)? {
                    witness = Some(format!(
                        "{} and {} are positive but their meet {} is not",
                        self.fmt(a),
                        self.fmt(b),
                        self.fmt(&m)
                    ));
                    break;
                }
            }
        }
        Ok(self.check("meet-of-positives-is-positive", mode, cases, witness))
    }

    fn halving(&mut self) -> Result<LawCheck> {
        let mut witness = None;
        let mut cases = 0;
        for eps in self.universe.clone() {
            if !self.handle.is_positive(&eps)? {
                continue;
            }
            cases += 1;
            let d = self.handle.positive_halve(&eps)?;
            let sum = self.add(&d, &d)?;
            if !self.handle.is_positive(&d)? || !self.handle.leq(&sum, &eps)? {
                witness = Some(format!(
                    "halve({}) = {} but {} + {} = {} exceeds it",
                    self.fmt(&eps),
                    self.fmt(&d),
                    self.fmt(&d),
                    self.fmt(&d),
                    self.fmt(&sum)
                ));
                break;
            }
        }
        let mode = if self.carrier_complete {
            LawMode::Exhaustive
        } else {
            LawMode::Sampled(cases)
        };
        Ok(self.check("positive-halving", mode, cases, witness))
    }
}

/// A `c` strictly between `a ≺ b`, assuming `b ≻ a` holds.
fn interpolant(
    handle: &QuantaleHandle,
    b: &QuantaleValue,
    a: &QuantaleValue,
) -> Result<QuantaleValue> {
    handle.validate(a)?;
    handle.validate(b)?;
    Ok(match (b, a) {
        (QuantaleValue::Rational(b), QuantaleValue::Rational(a)) => {
            QuantaleValue::Rational(if !b.is_infinite() {
                // b ≻ a with b finite forces a finite as well.
                a.midpoint(b).expect("both finite")
            } else if !a.is_infinite() {
                a.plus_one()
            } else {
                ExtRational::infinity()
            })
        }
        (QuantaleValue::Omega(b), QuantaleValue::Omega(_)) => {
            QuantaleValue::Omega(super::OmegaElement::principal(b.member_union()))
        }
        _ => unreachable!("validated above"),
    })
}

fn sample_ext(rng: &mut ChaCha8Rng) -> Result<ExtRational> {
    if rng.gen_bool(0.1) {
        return Ok(ExtRational::infinity());
    }
    if rng.gen_bool(0.1) {
        return Ok(ExtRational::zero());
    }
    ExtRational::ratio(rng.gen_range(0..=60), rng.gen_range(1..=12))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_rational_laws_hold() {
        let report = check_quantale_laws(&QuantaleHandle::ext_rational(), 200, 1).unwrap();
        assert!(report.all_hold(), "failures: {:?}", report.failing());
    }

    #[test]
    fn omega_laws_hold_small_grounds() {
        for g in 0..=3 {
            let ground = (0..g).map(|i| format!("g{i}")).collect();
            let handle = QuantaleHandle::omega(ground).unwrap();
            let report = check_quantale_laws(&handle, 150, 7).unwrap();
            assert!(
                report.all_hold(),
                "ground {g} failures: {:?}",
                report.failing()
            );
            // Small grounds never need to fall back to sampling.
            if g <= 2 {
                assert!(report.checks.iter().all(|c| c.mode == LawMode::Exhaustive));
            }
        }
    }

    #[test]
    fn omega_laws_hold_ground_four_sampled() {
        let ground = (0..4).map(|i| format!("g{i}")).collect();
        let handle = QuantaleHandle::omega(ground).unwrap();
        let report = check_quantale_laws(&handle, 250, 11).unwrap();
        assert!(report.all_hold(), "failures: {:?}", report.failing());
        // 168³ index triples exceed the exhaustive cap, so associativity is
        // sampled while pair laws stay exhaustive.
        let assoc = report.checks.iter().find(|c| c.law == "add-associative").unwrap();
        assert!(matches!(assoc.mode, LawMode::Sampled(_)));
        let comm = report.checks.iter().find(|c| c.law == "add-commutative").unwrap();
        assert_eq!(comm.mode, LawMode::Exhaustive);
    }

    /// A deliberately wrong addition (meet, i.e. family union, instead of
    /// family intersection) must be flagged, not waved through.
    #[test]
    fn corrupted_addition_is_caught_with_witnesses() {
        let handle = QuantaleHandle::omega(vec!["u".into(), "v".into()]).unwrap();
        let report =
            check_quantale_laws_with_add(&handle, 150, 3, &|h, a, b| h.meet(a, b)).unwrap();
        assert!(!report.all_hold());
        for law in ["add-identity", "add-distributes-over-meet"] {
            let check = report.checks.iter().find(|c| c.law == law).unwrap();
            assert!(!check.holds, "{law} should fail under corrupted +");
            assert!(check.witness.is_some(), "{law} should carry a witness");
        }
    }

    #[test]
    fn reports_name_their_quantale() {
        let r = check_quantale_laws(&QuantaleHandle::ext_rational(), 10, 0).unwrap();
        assert_eq!(r.quantale, "ext_rational");
        assert_eq!(r.seed, 0);
    }
}
