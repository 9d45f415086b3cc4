//! Scales, steps, walks and R-components.
//!
//! A scale assigns every point a positive radius; two points are a step
//! apart when either one sees the other within its radius. Walking along
//! steps gives the connectedness notion everything downstream builds on.
//! The strict variant (`d ≺ R`) is the default throughout; the weak variant
//! (`d ≤ R`) exists for the alternative-step comparison and is opt-in.

mod enumerate;
mod systems;

pub use enumerate::{
    enumerate_scales, uniform_radius_pool, EnumMode, ScaleEnumeration, DEFAULT_SCALE_BUDGET,
};
pub use systems::{
    is_member_scale, sigma0_rule, AlphaSelection, EpsSelection, OmegaEpsRule, ScaleSystem,
};

mod sigma;
pub use sigma::{
    is_sigma_continuous, sigma_clopen_sets, sigma_components, ContinuityReport, PointMap,
    SigmaComponents,
};

use crate::error::{Error, Result};
use crate::quantale::{BitSet, OmegaElement, QuantaleValue};
use crate::spaces::{FiniteTopSpace, VMetricSpace};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StepVariant {
    #[default]
    Strict,
    Weak,
}

/// A radius assignment `R: X → V` with `R(x) ≻ 0` everywhere. Scales carry
/// an id string so component partitions can say where they came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Scale {
    radii: Vec<QuantaleValue>,
    id: String,
}

impl Scale {
    pub fn new(m: &VMetricSpace, radii: Vec<QuantaleValue>, id: impl Into<String>) -> Result<Self> {
        if radii.len() != m.n() {
            return Err(Error::Invalid(format!(
                "scale has {} radii for {} points",
                radii.len(),
                m.n()
            )));
        }
        for (i, r) in radii.iter().enumerate() {
            m.quantale().validate(r)?;
            if !m.quantale().is_positive(r)? {
                return Err(Error::Invalid(format!(
                    "radius at {} is not positive",
                    m.points()[i]
                )));
            }
        }
        Ok(Scale {
            radii,
            id: id.into(),
        })
    }

    /// The constant scale `R_ε`.
    pub fn uniform(m: &VMetricSpace, eps: QuantaleValue) -> Result<Self> {
        let id = format!("uniform({})", crate::io::value_string(&eps));
        Scale::new(m, vec![eps; m.n()], id)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn radius(&self, i: usize) -> &QuantaleValue {
        &self.radii[i]
    }

    pub fn radii(&self) -> &[QuantaleValue] {
        &self.radii
    }

    pub fn is_constant(&self) -> bool {
        self.radii.windows(2).all(|w| w[0] == w[1])
    }
}

/// Step relation: strict needs `d(x,y) ≺ R(x)` or `d(y,x) ≺ R(y)`; weak
/// replaces ≺ by ≤. Symmetric in (x, y) by construction.
pub fn is_step(
    m: &VMetricSpace,
    r: &Scale,
    x: usize,
    y: usize,
    variant: StepVariant,
) -> Result<bool> {
    let q = m.quantale();
    Ok(match variant {
        StepVariant::Strict => {
            q.well_above(r.radius(x), m.dist(x, y))? || q.well_above(r.radius(y), m.dist(y, x))?
        }
        StepVariant::Weak => {
            q.leq(m.dist(x, y), r.radius(x))? || q.leq(m.dist(y, x), r.radius(y))?
        }
    })
}

/// An R-walk: a point sequence whose consecutive pairs are steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    indices: Vec<usize>,
}

impl Walk {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn step_count(&self) -> usize {
        self.indices.len().saturating_sub(1)
    }

    pub fn labels(&self, m: &VMetricSpace) -> Vec<String> {
        self.indices.iter().map(|&i| m.points()[i].clone()).collect()
    }
}

/// Blocks of the step-equivalence, each a point mask, ordered by least
/// member. `scale_id` records the scale (or scale system) that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    blocks: Vec<u64>,
    scale_id: String,
}

impl ComponentPartition {
    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn scale_id(&self) -> &str {
        &self.scale_id
    }

    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|&b| b & (1 << i) != 0)
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of(x).is_some() && self.block_of(x) == self.block_of(y)
    }

    /// Common refinement of two partitions: points share a block iff they
    /// share one in both. This is how `C^Σ = ⋂ C^R` is accumulated.
    pub fn meet(&self, other: &ComponentPartition, id: impl Into<String>) -> ComponentPartition {
        let mut blocks = Vec::new();
        for &a in &self.blocks {
            for &b in &other.blocks {
                let both = a & b;
                if both != 0 {
                    blocks.push(both);
                }
            }
        }
        blocks.sort_by_key(|b| b.trailing_zeros());
        ComponentPartition {
            blocks,
            scale_id: id.into(),
        }
    }

    pub fn is_refinement_of(&self, coarser: &ComponentPartition) -> bool {
        self.blocks
            .iter()
            .all(|&b| coarser.blocks.iter().any(|&c| b & !c == 0))
    }

    /// The single-block partition, the finest-possible starting point for
    /// meets.
    pub fn trivial(n: usize, id: impl Into<String>) -> ComponentPartition {
        ComponentPartition {
            blocks: vec![crate::spaces::full_mask(n)],
            scale_id: id.into(),
        }
    }
}

fn step_matrix(m: &VMetricSpace, r: &Scale, variant: StepVariant) -> Result<Vec<u64>> {
    let n = m.n();
    let mut rows = vec![0u64; n];
    for x in 0..n {
        rows[x] |= 1 << x;
        for y in x + 1..n {
            if is_step(m, r, x, y, variant)? {
                rows[x] |= 1 << y;
                rows[y] |= 1 << x;
            }
        }
    }
    Ok(rows)
}

/// Connected components of the step graph, via union-find (union by size,
/// path compression).
pub fn r_components(m: &VMetricSpace, r: &Scale, variant: StepVariant) -> Result<ComponentPartition> {
    let n = m.n();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut size = vec![1usize; n];
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for x in 0..n {
        for y in x + 1..n {
            if is_step(m, r, x, y, variant)? {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    let (big, small) = if size[a] >= size[b] { (a, b) } else { (b, a) };
                    parent[small] = big;
                    size[big] += size[small];
                }
            }
        }
    }
    let mut blocks_by_root = std::collections::BTreeMap::<usize, u64>::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        *blocks_by_root.entry(root).or_default() |= 1 << i;
    }
    let mut blocks: Vec<u64> = blocks_by_root.into_values().collect();
    blocks.sort_by_key(|b| b.trailing_zeros());
    Ok(ComponentPartition {
        blocks,
        scale_id: r.id().to_string(),
    })
}

/// Shortest walk from `x` to `z`, lexicographically least among the
/// shortest (by point index). BFS from the target gives distances; walking
/// greedily toward the smallest eligible neighbour realizes the lex-least
/// choice at every position.
pub fn find_walk(
    m: &VMetricSpace,
    r: &Scale,
    x: usize,
    z: usize,
    variant: StepVariant,
) -> Result<Option<Walk>> {
    let n = m.n();
    if x >= n || z >= n {
        return Err(Error::Invalid("walk endpoints out of range".into()));
    }
    if x == z {
        return Ok(Some(Walk { indices: vec![x] }));
    }
    let adj = step_matrix(m, r, variant)?;
    let mut dist = vec![usize::MAX; n];
    dist[z] = 0;
    let mut queue = std::collections::VecDeque::from([z]);
    while let Some(cur) = queue.pop_front() {
        for nb in 0..n {
            if adj[cur] & (1 << nb) != 0 && dist[nb] == usize::MAX {
                dist[nb] = dist[cur] + 1;
                queue.push_back(nb);
            }
        }
    }
    if dist[x] == usize::MAX {
        return Ok(None);
    }
    let mut indices = vec![x];
    let mut cur = x;
    while cur != z {
        let next = (0..n)
            .find(|&nb| adj[cur] & (1 << nb) != 0 && dist[nb] + 1 == dist[cur])
            .expect("BFS distance decreases along some neighbour");
        indices.push(next);
        cur = next;
    }
    Ok(Some(Walk { indices }))
}

/// `B_R(S) = {y : ∃s ∈ S, d(s, y) ≺ R(s)}` — always the strict form, per
/// the ball definition.
pub fn ball_of_set(m: &VMetricSpace, r: &Scale, set: u64) -> Result<u64> {
    let mut out = 0u64;
    for s in 0..m.n() {
        if set & (1 << s) == 0 {
            continue;
        }
        for y in 0..m.n() {
            if m.quantale().well_above(r.radius(s), m.dist(s, y))? {
                out |= 1 << y;
            }
        }
    }
    Ok(out)
}

/// The canonical finest scale of a metrization output: `R*(x) = ↓{τ_x}`
/// with `τ_x` the ground opens containing `x`. Its ball at `x` is exactly
/// the minimal open neighborhood, and every scale's ball contains that
/// (`d(x, y) = 0` for `y ∈ U_x`, and `0 ≺ ε` for any positive `ε`).
pub fn canonical_finest_scale(m: &VMetricSpace) -> Result<Scale> {
    let source: &FiniteTopSpace = m.flagg_source().ok_or_else(|| {
        Error::Precondition(
            "canonical_finest_scale needs a metrization output with its topology attached".into(),
        )
    })?;
    let ground = m
        .quantale()
        .ground()
        .ok_or_else(|| Error::Precondition("canonical scale lives in an omega quantale".into()))?;
    let g = ground.len();
    let mut radii = Vec::with_capacity(m.n());
    for x in 0..m.n() {
        // Opens of the source containing x, matched into the (possibly
        // shared) ground by their rendered labels.
        let own: std::collections::BTreeSet<String> = source
            .opens()
            .iter()
            .filter(|&&u| u & (1 << x) != 0)
            .map(|&u| source.render_open(u))
            .collect();
        let indices: Vec<usize> = (0..g).filter(|&i| own.contains(&ground[i])).collect();
        if indices.len() != own.len() {
            return Err(Error::Invalid(
                "metrization ground does not cover the source topology".into(),
            ));
        }
        radii.push(QuantaleValue::Omega(OmegaElement::principal(
            BitSet::from_indices(g, &indices),
        )));
    }
    Scale::new(m, radii, "canonical")
}
