//! The lattice of antichains of subsets of a finite universe.
//!
//! A universe holds at most eight ground elements, so every subset fits in a
//! single byte and the downset of an antichain fits in 256 bits. Antichains
//! are ordered by domination (every set of the smaller is contained in some
//! set of the larger), which makes them a completely distributive lattice
//! with meet, join, bottom `⊥` (no sets) and top `{N}`.

use crate::bitset::Bits256;
use crate::error::{Error, Result};
use std::sync::OnceLock;

/// Ground set `{1, .., n}` with `n <= 8`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Universe {
    n: u8,
}

/// One subset of the universe; bit `i - 1` is set iff element `i` is present.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(u8);

/// A set of pairwise incomparable subsets, stored sorted in strictly
/// decreasing mask order so that equality is plain sequence comparison.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Antichain {
    n: u8,
    sets: Vec<SubsetMask>,
}

/// The downset generated by an antichain, as a `2^n`-bit vector: bit `m` is
/// set iff the antichain dominates mask `m`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct DownsetVector {
    n: u8,
    bits: Bits256,
}

/// Canonical representative of an antichain under relabelings of the
/// universe, together with the size of its orbit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalForm {
    pub representative: Antichain,
    pub orbit_size: u64,
}

pub const MAX_UNIVERSE: u32 = 8;

// ---------------------------------------------------------------------------
// Universe

impl Universe {
    pub fn new(n: u32) -> Result<Universe> {
        if n > MAX_UNIVERSE {
            return Err(Error::UniverseOutOfRange(n));
        }
        Ok(Universe { n: n as u8 })
    }

    pub fn n(&self) -> u32 {
        self.n as u32
    }

    /// The mask of the full ground set `N`.
    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask(((1u16 << self.n) - 1) as u8)
    }

    /// All `2^n` masks in increasing numeric order.
    pub fn masks(&self) -> impl Iterator<Item = SubsetMask> {
        (0..(1u16 << self.n)).map(|m| SubsetMask(m as u8))
    }

    pub fn check_mask(&self, mask: SubsetMask) -> Result<()> {
        if u16::from(mask.0) >= 1u16 << self.n {
            return Err(Error::MaskOutOfRange { mask, n: self.n() });
        }
        Ok(())
    }

    pub fn factorial(&self) -> u64 {
        (1..=self.n as u64).product()
    }

    /// Mask relabeling tables, one per permutation of the ground elements.
    /// Available for `n <= 7`; the identity permutation comes first.
    pub fn permutation_tables(&self) -> Result<&'static [[u8; 256]]> {
        if self.n > 7 {
            return Err(Error::UnsupportedSize(format!(
                "permutation tables for n = {} (max 7)",
                self.n
            )));
        }
        static CACHE: [OnceLock<Vec<[u8; 256]>>; 8] = [const { OnceLock::new() }; 8];
        Ok(CACHE[self.n as usize].get_or_init(|| build_perm_tables(self.n as usize)))
    }
}

fn build_perm_tables(n: usize) -> Vec<[u8; 256]> {
    let mut perms: Vec<Vec<u8>> = Vec::new();
    let mut current: Vec<u8> = (0..n as u8).collect();
    permute_rec(&mut current, 0, &mut perms);
    // Put the identity first; the rest keep generation order.
    perms.sort_by_key(|p| p != &(0..n as u8).collect::<Vec<_>>());
    perms
        .into_iter()
        .map(|perm| {
            let mut table = [0u8; 256];
            for (m, slot) in table.iter_mut().enumerate().take(1usize << n) {
                let mut out = 0u8;
                for (i, &img) in perm.iter().enumerate() {
                    if m >> i & 1 != 0 {
                        out |= 1 << img;
                    }
                }
                *slot = out;
            }
            table
        })
        .collect()
}

fn permute_rec(current: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
    if k == current.len() {
        out.push(current.clone());
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        permute_rec(current, k + 1, out);
        current.swap(k, i);
    }
}

// ---------------------------------------------------------------------------
// SubsetMask

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_bits(bits: u8) -> SubsetMask {
        SubsetMask(bits)
    }

    /// Build a mask from 1-based element labels.
    pub fn from_elements(elems: impl IntoIterator<Item = u32>) -> SubsetMask {
        let mut bits = 0u8;
        for e in elems {
            debug_assert!((1..=8).contains(&e));
            bits |= 1 << (e - 1);
        }
        SubsetMask(bits)
    }

    pub fn bits(&self) -> u8 {
        self.0
    }

    pub fn len(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, element: u32) -> bool {
        (1..=8).contains(&element) && self.0 >> (element - 1) & 1 != 0
    }

    /// 1-based element labels in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        let bits = self.0;
        (1..=8u32).filter(move |e| bits >> (e - 1) & 1 != 0)
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: &SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(&self, other: &SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(&self, other: &SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    /// The immediate subsets `X \ {x}` for each `x` in `X`.
    pub fn immediate_subsets(&self) -> impl Iterator<Item = SubsetMask> {
        let bits = self.0;
        (0..8u8)
            .filter(move |i| bits >> i & 1 != 0)
            .map(move |i| SubsetMask(bits & !(1 << i)))
    }
}

impl std::fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

/// 256-bit table: entry `m` has one bit per submask of `m`.
fn submask_bits(m: u8) -> &'static Bits256 {
    static TABLE: OnceLock<Vec<Bits256>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        (0u16..256)
            .map(|m| {
                let mut b = Bits256::EMPTY;
                // Enumerate submasks with the standard decreasing-submask walk.
                let m = m as u8;
                let mut s = m;
                loop {
                    b.insert(s);
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & m;
                }
                b
            })
            .collect()
    });
    &table[m as usize]
}

// ---------------------------------------------------------------------------
// Antichain construction

impl Antichain {
    /// The empty antichain `⊥`.
    pub fn bottom(u: Universe) -> Antichain {
        Antichain { n: u.n, sets: Vec::new() }
    }

    /// The antichain `{∅}`, distinct from `⊥`.
    pub fn empty_set(u: Universe) -> Antichain {
        Antichain { n: u.n, sets: vec![SubsetMask::EMPTY] }
    }

    /// The largest antichain `{N}`.
    pub fn top(u: Universe) -> Antichain {
        Antichain { n: u.n, sets: vec![u.full_mask()] }
    }

    pub fn singleton(u: Universe, mask: SubsetMask) -> Result<Antichain> {
        u.check_mask(mask)?;
        Ok(Antichain { n: u.n, sets: vec![mask] })
    }

    /// The max-operator: keep only inclusion-maximal sets, sorted, deduplicated.
    pub fn normalize(u: Universe, masks: impl IntoIterator<Item = SubsetMask>) -> Result<Antichain> {
        let mut sets: Vec<SubsetMask> = Vec::new();
        for m in masks {
            u.check_mask(m)?;
            sets.push(m);
        }
        sets.sort_unstable_by(|a, b| b.cmp(a));
        sets.dedup();
        let mut maximal: Vec<SubsetMask> = Vec::with_capacity(sets.len());
        for m in sets {
            if !maximal.iter().any(|kept| m.is_subset_of(kept)) {
                maximal.push(m);
            }
        }
        Ok(Antichain { n: u.n, sets: maximal })
    }

    /// Build from sets already known to be pairwise incomparable; rejects
    /// input that is not an antichain.
    pub fn from_sets(u: Universe, masks: impl IntoIterator<Item = SubsetMask>) -> Result<Antichain> {
        let mut sets: Vec<SubsetMask> = Vec::new();
        for m in masks {
            u.check_mask(m)?;
            sets.push(m);
        }
        sets.sort_unstable_by(|a, b| b.cmp(a));
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[j].is_subset_of(&sets[i]) {
                    return Err(Error::NotAnAntichain(sets[j], sets[i]));
                }
            }
        }
        Ok(Antichain { n: u.n, sets })
    }

    pub fn universe(&self) -> Universe {
        Universe { n: self.n }
    }

    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    pub fn is_bottom(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.sets.len() == 1 && self.sets[0] == self.universe().full_mask()
    }

    fn same_universe(&self, other: &Antichain) -> Result<Universe> {
        if self.n != other.n {
            return Err(Error::UniverseMismatch(self.n as u32, other.n as u32));
        }
        Ok(self.universe())
    }
}

// ---------------------------------------------------------------------------
// Order and lattice operators

impl Antichain {
    /// Does this antichain dominate the single set `mask`, i.e. `{mask} <= self`?
    pub fn dominates(&self, mask: SubsetMask) -> bool {
        self.sets.iter().any(|s| mask.is_subset_of(s))
    }

    /// Domination order: every set of `self` is contained in some set of `other`.
    pub fn leq(&self, other: &Antichain) -> Result<bool> {
        self.same_universe(other)?;
        Ok(self.sets.iter().all(|a| other.dominates(*a)))
    }

    pub fn join(&self, other: &Antichain) -> Result<Antichain> {
        let u = self.same_universe(other)?;
        Antichain::normalize(u, self.sets.iter().chain(other.sets.iter()).copied())
    }

    pub fn meet(&self, other: &Antichain) -> Result<Antichain> {
        let u = self.same_universe(other)?;
        let pairs = self
            .sets
            .iter()
            .flat_map(|a| other.sets.iter().map(move |b| a.intersection(b)));
        Antichain::normalize(u, pairs)
    }

    /// Union of all member sets; `span(⊥) = ∅`.
    pub fn span(&self) -> SubsetMask {
        self.sets
            .iter()
            .fold(SubsetMask::EMPTY, |acc, s| acc.union(s))
    }

    /// `α ⊗ β = {A ∪ B | A ∈ α, B ∈ β}`, defined for disjoint spans.
    pub fn direct_product(&self, other: &Antichain) -> Result<Antichain> {
        let u = self.same_universe(other)?;
        if !self.span().intersection(&other.span()).is_empty() {
            return Err(Error::Precondition("direct product requires disjoint spans"));
        }
        let unions = self
            .sets
            .iter()
            .flat_map(|a| other.sets.iter().map(move |b| a.union(b)));
        Antichain::normalize(u, unions)
    }

    /// `X⁻` as an antichain: all immediate subsets of `X`; `∅⁻ = ⊥`.
    pub fn immediate_subsets(u: Universe, mask: SubsetMask) -> Result<Antichain> {
        u.check_mask(mask)?;
        Antichain::normalize(u, mask.immediate_subsets())
    }

    /// `α⁻ = ⋁_{X ∈ α} X⁻`; note `{∅}⁻ = ⊥`.
    pub fn lower(&self) -> Antichain {
        let u = self.universe();
        Antichain::normalize(u, self.sets.iter().flat_map(|s| s.immediate_subsets()))
            .expect("members are in range")
    }

    /// `α⁺`: join of all `{X}` with `X⁻ <= α`; `⊥⁺ = {∅}`.
    pub fn upper(&self) -> Antichain {
        let u = self.universe();
        let down = self.to_downset();
        let qualifying = u
            .masks()
            .filter(|x| x.immediate_subsets().all(|y| down.contains(y)));
        Antichain::normalize(u, qualifying).expect("members are in range")
    }

    /// The largest antichain that dominates no set of `self`; `check(⊥) = ⊤`.
    ///
    /// Computed by `check({A}) = {N \ {a} | a ∈ A}` and
    /// `check(α ∨ β) = check(α) ∧ check(β)`.
    pub fn check_nondominating(&self) -> Antichain {
        let u = self.universe();
        let full = u.full_mask();
        let mut result = Antichain::top(u);
        for member in &self.sets {
            let single = Antichain::normalize(
                u,
                member
                    .elements()
                    .map(|a| full.difference(&SubsetMask::from_elements([a]))),
            )
            .expect("members are in range");
            result = result.meet(&single).expect("same universe");
        }
        result
    }

    /// The lattice homomorphism `χ -> α ∨ (χ ∧ β)` onto `[α, β]`.
    pub fn interval_hom(alpha: &Antichain, beta: &Antichain, chi: &Antichain) -> Result<Antichain> {
        if !alpha.leq(beta)? {
            return Err(Error::BottomNotBelowTop);
        }
        alpha.join(&chi.meet(beta)?)
    }

    /// The order-reversing involution: `downset(dual α) = {X | N \ X ∉ downset(α)}`.
    pub fn dual(&self) -> Antichain {
        let u = self.universe();
        let full = u.full_mask().bits();
        let down = self.to_downset();
        let mut bits = Bits256::EMPTY;
        for m in u.masks() {
            if !down.contains(SubsetMask(full ^ m.bits())) {
                bits.insert(m.bits());
            }
        }
        let d = DownsetVector { n: self.n, bits };
        Antichain::from_downset(&d)
    }
}

// ---------------------------------------------------------------------------
// Downset vectors

impl Antichain {
    pub fn to_downset(&self) -> DownsetVector {
        let mut bits = Bits256::EMPTY;
        for s in &self.sets {
            bits = bits.union(submask_bits(s.bits()));
        }
        DownsetVector { n: self.n, bits }
    }

    /// The maximal elements of a downset.
    pub fn from_downset(d: &DownsetVector) -> Antichain {
        let u = Universe { n: d.n };
        let mut sets: Vec<SubsetMask> = Vec::new();
        for m in d.bits.iter() {
            let mask = SubsetMask(m);
            let maximal = (0..u.n())
                .all(|i| mask.bits() >> i & 1 != 0 || !d.bits.contains(mask.bits() | 1 << i));
            if maximal {
                sets.push(mask);
            }
        }
        sets.sort_unstable_by(|a, b| b.cmp(a));
        Antichain { n: d.n, sets }
    }
}

impl DownsetVector {
    /// Validates downward closure.
    pub fn from_bits(u: Universe, bits: Bits256) -> Result<DownsetVector> {
        for m in bits.iter() {
            if u16::from(m) >= 1u16 << u.n {
                return Err(Error::MaskOutOfRange { mask: SubsetMask(m), n: u.n() });
            }
            for sub in SubsetMask(m).immediate_subsets() {
                if !bits.contains(sub.bits()) {
                    return Err(Error::NotDownwardClosed(SubsetMask(m)));
                }
            }
        }
        Ok(DownsetVector { n: u.n, bits })
    }

    pub fn universe(&self) -> Universe {
        Universe { n: self.n }
    }

    pub fn contains(&self, mask: SubsetMask) -> bool {
        self.bits.contains(mask.bits())
    }

    pub fn bits(&self) -> &Bits256 {
        &self.bits
    }

    pub fn count(&self) -> u32 {
        self.bits.len()
    }

    pub fn is_subset_of(&self, other: &DownsetVector) -> bool {
        self.bits.is_subset_of(&other.bits)
    }

    /// Numeric order of the `2^n`-bit word, used for canonical forms.
    pub fn word_cmp(&self, other: &DownsetVector) -> std::cmp::Ordering {
        let a = self.bits.words();
        let b = other.bits.words();
        a.iter().rev().cmp(b.iter().rev())
    }
}

// ---------------------------------------------------------------------------
// Canonical forms under universe relabeling

impl Antichain {
    /// Relabel every member through a permutation table.
    pub fn permute(&self, table: &[u8; 256]) -> Antichain {
        let mut sets: Vec<SubsetMask> = self
            .sets
            .iter()
            .map(|s| SubsetMask(table[s.bits() as usize]))
            .collect();
        sets.sort_unstable_by(|a, b| b.cmp(a));
        Antichain { n: self.n, sets }
    }

    /// The relabeling with numerically smallest downset word, plus orbit size.
    pub fn canonicalize(&self) -> Result<CanonicalForm> {
        let u = self.universe();
        let tables = u.permutation_tables()?;
        let mut best = self.clone();
        let mut best_down = self.to_downset();
        let mut stabilizer = 0u64;
        for table in tables {
            let image = self.permute(table);
            if image == *self {
                stabilizer += 1;
            }
            let down = image.to_downset();
            if down.word_cmp(&best_down) == std::cmp::Ordering::Less {
                best_down = down;
                best = image;
            }
        }
        Ok(CanonicalForm {
            representative: best,
            orbit_size: u.factorial().max(1) / stabilizer,
        })
    }
}
