//! The free value quantale Ω(S) over a finite ground set S.
//!
//! Elements are down-closed families of subsets of S, ordered by *reverse*
//! inclusion: smaller family = larger element. We store an element as the
//! antichain of its maximal members, canonically sorted. Under that encoding:
//!
//! * `0` is the family of all subsets, antichain `{S}`;
//! * `∞` is the empty family, the empty antichain;
//! * `a ≤ b` iff every member of `b`'s antichain sits inside some member of
//!   `a`'s antichain;
//! * meet is union of families (antichain union, re-maximalized);
//! * join — which doubles as `+` — is intersection of families (pairwise
//!   member intersections, re-maximalized).
//!
//! The well-above relation has a closed form: `b ≻ a` iff some member `F` of
//! `a`'s antichain contains every member of `b`'s antichain. The brute-force
//! definitional check (`well_above_bruteforce` in the parent module) is kept
//! around as an oracle and the two are required to agree on small grounds.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Carrier sizes of Ω(S) for |S| = 0..=4: the number of down-closed families
/// of subsets of S (antichain counts of the Boolean lattice).
pub const CARRIER_SIZES: [usize; 5] = [2, 3, 6, 20, 168];

/// A subset of the ground set, as a fixed-width bit set. Ground sets can get
/// large (every open of a topology becomes a ground point under metrization),
/// so this is backed by `u64` blocks rather than a single word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    bits: usize,
    blocks: Vec<u64>,
}

impl BitSet {
    pub fn empty(bits: usize) -> Self {
        BitSet {
            bits,
            blocks: vec![0; bits.div_ceil(64)],
        }
    }

    pub fn full(bits: usize) -> Self {
        let mut s = Self::empty(bits);
        for i in 0..bits {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(bits: usize, indices: &[usize]) -> Self {
        let mut s = Self::empty(bits);
        for &i in indices {
            s.insert(i);
        }
        s
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.bits);
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.bits && self.blocks[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet {
            bits: self.bits,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        BitSet {
            bits: self.bits,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.bits).filter(|&i| self.contains(i)).collect()
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BitSet {
    /// Lexicographic on the sorted index sequence, so `{0,2} < {1}`. This is
    /// the canonical member order inside antichains.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = (0..self.bits).filter(|&i| self.contains(i));
        let mut b = (0..other.bits).filter(|&i| other.contains(i));
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

/// An element of Ω(S), stored as the canonical antichain of maximal members.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OmegaElement {
    ground_size: usize,
    antichain: Vec<BitSet>,
}

impl OmegaElement {
    /// Canonicalize an arbitrary list of members: drop duplicates and members
    /// contained in another member, then sort.
    pub fn from_members(ground_size: usize, members: Vec<BitSet>) -> Self {
        let mut keep: Vec<BitSet> = Vec::with_capacity(members.len());
        for m in members {
            debug_assert_eq!(m.bits(), ground_size);
            if keep.iter().any(|k| m.is_subset_of(k)) {
                continue;
            }
            keep.retain(|k| !k.is_subset_of(&m));
            keep.push(m);
        }
        keep.sort();
        OmegaElement {
            ground_size,
            antichain: keep,
        }
    }

    /// The principal element `↓{T}`: all subsets of `T`.
    pub fn principal(t: BitSet) -> Self {
        let g = t.bits();
        OmegaElement {
            ground_size: g,
            antichain: vec![t],
        }
    }

    /// The element whose antichain is the singletons of `w` — the largest
    /// element whose antichain members union to `w`. For empty `w` this is ∞.
    pub fn atoms(w: &BitSet) -> Self {
        let g = w.bits();
        let members = w
            .indices()
            .into_iter()
            .map(|i| BitSet::from_indices(g, &[i]))
            .collect();
        OmegaElement {
            ground_size: g,
            antichain: members,
        }
    }

    pub fn zero(ground_size: usize) -> Self {
        OmegaElement::principal(BitSet::full(ground_size))
    }

    pub fn infinity(ground_size: usize) -> Self {
        OmegaElement {
            ground_size,
            antichain: Vec::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn antichain(&self) -> &[BitSet] {
        &self.antichain
    }

    pub fn is_zero(&self) -> bool {
        self.antichain.len() == 1 && self.antichain[0].len() == self.ground_size
    }

    pub fn is_infinity(&self) -> bool {
        self.antichain.is_empty()
    }

    /// Family membership: is `set` in the down-closed family this element
    /// denotes?
    pub fn family_contains(&self, set: &BitSet) -> bool {
        self.antichain.iter().any(|m| set.is_subset_of(m))
    }

    /// Union of the antichain members. Steps `v ≺ r` depend on `r` only
    /// through this set, which is what makes radius enumeration finite.
    pub fn member_union(&self) -> BitSet {
        let mut u = BitSet::empty(self.ground_size);
        for m in &self.antichain {
            u = u.union(m);
        }
        u
    }

    /// `a ≤ b` in Ω(S): the family of `a` contains the family of `b`.
    pub fn leq(&self, other: &OmegaElement) -> bool {
        other.antichain.iter().all(|m| self.family_contains(m))
    }

    /// Meet = union of families.
    pub fn meet(&self, other: &OmegaElement) -> OmegaElement {
        let mut members = self.antichain.clone();
        members.extend(other.antichain.iter().cloned());
        OmegaElement::from_members(self.ground_size, members)
    }

    /// Join = intersection of families = quantale addition.
    pub fn join(&self, other: &OmegaElement) -> OmegaElement {
        let mut members = Vec::with_capacity(self.antichain.len() * other.antichain.len());
        for a in &self.antichain {
            for b in &other.antichain {
                members.push(a.intersect(b));
            }
        }
        OmegaElement::from_members(self.ground_size, members)
    }

    pub fn add(&self, other: &OmegaElement) -> OmegaElement {
        self.join(other)
    }

    /// `b.well_above(a)` decides `b ≻ a` via the antichain rule: some member
    /// of `a`'s antichain must contain every member of `b`'s antichain.
    /// Equivalently: `member_union(b)` lies in `a`'s family.
    pub fn well_above(&self, a: &OmegaElement) -> bool {
        a.family_contains(&self.member_union())
    }

    /// Serialized form: sorted array of arrays of ground indices.
    pub fn to_index_lists(&self) -> Vec<Vec<usize>> {
        self.antichain.iter().map(|m| m.indices()).collect()
    }

    pub fn from_index_lists(ground_size: usize, lists: &[Vec<usize>]) -> Result<Self> {
        let mut members = Vec::with_capacity(lists.len());
        for l in lists {
            for &i in l {
                if i >= ground_size {
                    return Err(Error::Invalid(format!(
                        "ground index {i} out of range (ground size {ground_size})"
                    )));
                }
            }
            members.push(BitSet::from_indices(ground_size, l));
        }
        let el = OmegaElement::from_members(ground_size, members.clone());
        // Reject non-canonical input rather than silently repairing it, so
        // that documents round-trip byte-for-byte.
        if el.antichain.len() != lists.len() || el.to_index_lists() != lists.to_vec() {
            return Err(Error::Invalid(
                "omega value is not a canonical antichain (member dominated, duplicated, or out of order)"
                    .into(),
            ));
        }
        Ok(el)
    }
}

impl PartialOrd for OmegaElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OmegaElement {
    /// An arbitrary but deterministic total order used for sorting pools and
    /// carriers; unrelated to the lattice order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.antichain.cmp(&other.antichain)
    }
}

impl fmt::Debug for OmegaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ω{:?}", self.to_index_lists())
    }
}

/// Enumerate the full carrier of Ω(S) for `ground_size ≤ max_ground`.
///
/// Every subset family of P(S) is scanned for down-closure (feasible since
/// `2^(2^4) = 65536`), then collapsed to its antichain. The result is sorted
/// and its length must match `CARRIER_SIZES`.
pub fn enumerate_carrier(ground_size: usize, max_ground: usize) -> Result<Vec<OmegaElement>> {
    if ground_size > max_ground || ground_size > 4 {
        return Err(Error::Budget(format!(
            "omega carrier enumeration needs ground size ≤ {}, got {ground_size}",
            max_ground.min(4)
        )));
    }
    let subset_count = 1usize << ground_size; // subsets of S, indexed by mask
    let mut out = Vec::new();
    'family: for fam in 0u32..(1u32 << subset_count) {
        // Down-closure: removing any single element from a member must stay
        // in the family.
        for m in 0..subset_count {
            if fam & (1 << m) == 0 {
                continue;
            }
            for b in 0..ground_size {
                if m & (1 << b) != 0 {
                    let sub = m & !(1 << b);
                    if fam & (1 << sub) == 0 {
                        continue 'family;
                    }
                }
            }
        }
        let members: Vec<BitSet> = (0..subset_count)
            .filter(|&m| fam & (1 << m) != 0)
            .map(|m| {
                let idx: Vec<usize> = (0..ground_size).filter(|&b| m & (1 << b) != 0).collect();
                BitSet::from_indices(ground_size, &idx)
            })
            .collect();
        out.push(OmegaElement::from_members(ground_size, members));
    }
    out.sort();
    out.dedup();
    debug_assert_eq!(out.len(), CARRIER_SIZES[ground_size]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: usize, lists: &[&[usize]]) -> OmegaElement {
        OmegaElement::from_members(
            g,
            lists.iter().map(|l| BitSet::from_indices(g, l)).collect(),
        )
    }

    /// Test-only oracle: expand an element to its full family of subsets.
    /// Used to freeze expected values for the lattice operations
    /// independently of the antichain implementations.
    fn expand(e: &OmegaElement) -> Vec<u32> {
        let g = e.ground_size();
        (0..(1u32 << g))
            .filter(|&m| {
                let idx: Vec<usize> = (0..g).filter(|&b| m & (1 << b) != 0).collect();
                e.family_contains(&BitSet::from_indices(g, &idx))
            })
            .collect()
    }

    #[test]
    fn bitset_basics() {
        let a = BitSet::from_indices(5, &[0, 2]);
        let b = BitSet::from_indices(5, &[0, 2, 4]);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert_eq!(a.intersect(&b), a);
        assert_eq!(a.union(&b), b);
        assert_eq!(b.len(), 3);
        // {0,2} < {1} in the canonical member order.
        assert!(a < BitSet::from_indices(5, &[1]));
    }

    #[test]
    fn canonical_form_drops_dominated_members() {
        // {{0},{0,1}} collapses to {{0,1}}.
        let e = el(2, &[&[0], &[0, 1]]);
        assert_eq!(e.to_index_lists(), vec![vec![0, 1]]);
        // Canonicalization is idempotent.
        let again = OmegaElement::from_members(2, e.antichain().to_vec());
        assert_eq!(e, again);
    }

    #[test]
    fn leq_is_family_containment() {
        // On ground {u,v}: ↓{{u}} ≤ ↓{{u,v}}? Family of ↓{{u}} = {∅,{u}}
        // does NOT contain {u,v}, so no; the other way it holds.
        let down_u = el(2, &[&[0]]);
        let down_uv = el(2, &[&[0, 1]]);
        assert!(down_uv.leq(&down_u));
        assert!(!down_u.leq(&down_uv));
        // Expanded families confirm: leq == reverse inclusion of families.
        let fu = expand(&down_u);
        let fuv = expand(&down_uv);
        assert!(fu.iter().all(|m| fuv.contains(m)));
    }

    #[test]
    fn meet_is_family_union_join_is_family_intersection() {
        let a = el(2, &[&[0]]);
        let b = el(2, &[&[1]]);
        let meet = a.meet(&b);
        let join = a.join(&b);
        assert_eq!(meet.to_index_lists(), vec![vec![0], vec![1]]);
        assert_eq!(join.to_index_lists(), vec![Vec::<usize>::new()]);
        // Oracle check through expanded families.
        let fa = expand(&a);
        let fb = expand(&b);
        let fmeet: Vec<u32> = (0..4).filter(|m| fa.contains(m) || fb.contains(m)).collect();
        let fjoin: Vec<u32> = (0..4).filter(|m| fa.contains(m) && fb.contains(m)).collect();
        assert_eq!(expand(&meet), fmeet);
        assert_eq!(expand(&join), fjoin);
    }

    #[test]
    fn zero_and_infinity() {
        let zero = OmegaElement::zero(2);
        let inf = OmegaElement::infinity(2);
        assert!(zero.is_zero());
        assert!(inf.is_infinity());
        assert!(zero.leq(&inf));
        assert!(!inf.leq(&zero));
        // + has 0 as identity and ∞ as absorbing element.
        let a = el(2, &[&[0]]);
        assert_eq!(a.add(&zero), a);
        assert_eq!(a.add(&inf), inf);
    }

    #[test]
    fn well_above_examples() {
        // Everything is well above 0, including ∞ and 0 itself.
        let zero = OmegaElement::zero(2);
        let inf = OmegaElement::infinity(2);
        let a = el(2, &[&[0]]);
        assert!(zero.well_above(&zero));
        assert!(a.well_above(&zero));
        assert!(inf.well_above(&zero));
        // Nothing is well above ∞ (its antichain has no member to pick).
        assert!(!inf.well_above(&inf));
        assert!(!zero.well_above(&inf));
        // ↓{{u,v}} ≻ atoms{{u},{v}}? Members {u},{v} of the atoms element
        // must fit in one member of... wrong direction: b=↓{{u,v}} ≻ a=atoms
        // iff some member of a's antichain contains all of b's members:
        // {u,v} ⊄ {u}, so no.
        let atoms = el(2, &[&[0], &[1]]);
        let principal = el(2, &[&[0, 1]]);
        assert!(!principal.well_above(&atoms));
        // Conversely atoms ≻ principal: {u,v} contains {u} and {v}.
        assert!(atoms.well_above(&principal));
    }

    #[test]
    fn carrier_counts_match_known_values() {
        for (g, expected) in CARRIER_SIZES.iter().enumerate() {
            let carrier = enumerate_carrier(g, 4).unwrap();
            assert_eq!(carrier.len(), *expected, "ground size {g}");
        }
        assert!(enumerate_carrier(5, 4).is_err());
    }

    #[test]
    fn carrier_is_closed_under_ops() {
        let carrier = enumerate_carrier(2, 4).unwrap();
        for a in &carrier {
            for b in &carrier {
                assert!(carrier.contains(&a.meet(b)));
                assert!(carrier.contains(&a.join(b)));
            }
        }
    }

    #[test]
    fn canonical_parse_rejects_noncanonical() {
        assert!(OmegaElement::from_index_lists(2, &[vec![0], vec![0, 1]]).is_err());
        assert!(OmegaElement::from_index_lists(2, &[vec![1], vec![0]]).is_err());
        assert!(OmegaElement::from_index_lists(2, &[vec![2]]).is_err());
        let ok = OmegaElement::from_index_lists(2, &[vec![0], vec![1]]).unwrap();
        assert_eq!(ok.to_index_lists(), vec![vec![0], vec![1]]);
    }
}
