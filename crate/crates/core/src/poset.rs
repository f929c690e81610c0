//! Intervals `[α, β]`, their underlying posets of ground sets, the reduction
//! lemmas, and the interval graph decomposition.

use crate::bitset::Bits256;
use crate::error::{Error, Result};
use crate::lattice::{Antichain, SubsetMask, Universe};

/// An ordered pair of antichains with `bottom <= top`. The one exception is
/// [`Interval::empty`], a marker value used by partition bookkeeping.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    bottom: Antichain,
    top: Antichain,
}

/// The ground sets `X` with `{X} <= top` and `{X} ≰ bottom`, ordered by
/// inclusion. Every element of the interval is the join of `bottom` with an
/// antichain of poset members.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntervalPoset {
    n: u8,
    members: Bits256,
}

/// Graph on the member sets of `top`: `A` and `B` are adjacent iff
/// `{A ∩ B} ≰ bottom`.
#[derive(Clone, Debug)]
pub struct IntervalGraph {
    vertices: Vec<SubsetMask>,
    edges: Vec<(usize, usize)>,
}

impl Interval {
    pub fn new(bottom: Antichain, top: Antichain) -> Result<Interval> {
        if !bottom.leq(&top)? {
            return Err(Error::BottomNotBelowTop);
        }
        Ok(Interval { bottom, top })
    }

    /// The canonical empty interval (`bottom ≰ top`); it contains no antichain.
    pub fn empty(u: Universe) -> Interval {
        Interval { bottom: Antichain::top(u), top: Antichain::bottom(u) }
    }

    /// `[⊥, ⊤]`, the whole lattice.
    pub fn full(u: Universe) -> Interval {
        Interval { bottom: Antichain::bottom(u), top: Antichain::top(u) }
    }

    /// The one-element interval `[α, α]`.
    pub fn point(a: Antichain) -> Interval {
        Interval { bottom: a.clone(), top: a }
    }

    pub fn bottom(&self) -> &Antichain {
        &self.bottom
    }

    pub fn top(&self) -> &Antichain {
        &self.top
    }

    pub fn universe(&self) -> Universe {
        self.bottom.universe()
    }

    pub fn is_empty(&self) -> bool {
        !self.bottom.leq(&self.top).unwrap_or(false)
    }

    pub fn is_point(&self) -> bool {
        self.bottom == self.top
    }

    pub fn contains(&self, chi: &Antichain) -> Result<bool> {
        Ok(self.bottom.leq(chi)? && chi.leq(&self.top)?)
    }

    /// Boundary redundancy: drop members shared by bottom and top (set
    /// difference of member lists, not a lattice operation) where doing so
    /// keeps the underlying poset unchanged. A shared member `A` is safe to
    /// drop when `{A ∩ B}` stays dominated by the reduced bottom for every
    /// remaining top member `B`; otherwise subsets of `A` would leak into
    /// the poset, so `A` is kept.
    pub fn strip_common(&self) -> Interval {
        let u = self.universe();
        let mut stripped: Vec<SubsetMask> = self
            .bottom
            .sets()
            .iter()
            .filter(|s| self.top.sets().contains(s))
            .copied()
            .collect();
        loop {
            let bottom_rest = Antichain::from_sets(
                u,
                self.bottom.sets().iter().filter(|s| !stripped.contains(s)).copied(),
            )
            .expect("subset of an antichain");
            let top_rest: Vec<SubsetMask> = self
                .top
                .sets()
                .iter()
                .filter(|s| !stripped.contains(s))
                .copied()
                .collect();
            let before = stripped.len();
            stripped.retain(|a| {
                top_rest
                    .iter()
                    .all(|b| bottom_rest.dominates(a.intersection(b)))
            });
            if stripped.len() == before {
                break;
            }
        }
        if stripped.is_empty() {
            return self.clone();
        }
        let keep = |a: &Antichain| {
            Antichain::from_sets(
                u,
                a.sets().iter().filter(|s| !stripped.contains(s)).copied(),
            )
            .expect("subset of an antichain")
        };
        Interval { bottom: keep(&self.bottom), top: keep(&self.top) }
    }

    pub fn poset(&self) -> IntervalPoset {
        let top_down = self.top.to_downset();
        let bottom_down = self.bottom.to_downset();
        IntervalPoset {
            n: self.universe().n() as u8,
            members: top_down.bits().difference(bottom_down.bits()),
        }
    }

    pub fn graph(&self) -> IntervalGraph {
        let vertices: Vec<SubsetMask> = self.top.sets().to_vec();
        let bottom_down = self.bottom.to_downset();
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                let meet = vertices[i].intersection(&vertices[j]);
                if !bottom_down.contains(meet) {
                    edges.push((i, j));
                }
            }
        }
        IntervalGraph { vertices, edges }
    }

    /// Decompose into one interval `[bottom ∧ ν, ν]` per connected component
    /// `ν` of the interval graph. The direct join of the parts is `self` and
    /// the product of their sizes is `|self|`. A bottom-only interval (top
    /// `⊥`) yields no parts.
    pub fn graph_decompose(&self) -> Result<Vec<Interval>> {
        let graph = self.graph();
        let mut parts = Vec::new();
        for component in graph.components() {
            let nu = Antichain::from_sets(
                self.universe(),
                component.iter().map(|&i| graph.vertices[i]),
            )
            .expect("subset of an antichain");
            let bottom = self.bottom.meet(&nu)?;
            parts.push(Interval::new(bottom, nu)?);
        }
        Ok(parts)
    }
}

impl IntervalPoset {
    pub fn from_masks(u: Universe, masks: impl IntoIterator<Item = SubsetMask>) -> Result<IntervalPoset> {
        let mut members = Bits256::EMPTY;
        for m in masks {
            u.check_mask(m)?;
            members.insert(m.bits());
        }
        Ok(IntervalPoset { n: u.n() as u8, members })
    }

    pub fn universe(&self) -> Universe {
        Universe::new(self.n as u32).expect("invariant")
    }

    pub fn members(&self) -> &Bits256 {
        &self.members
    }

    pub fn masks(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.members.iter().map(SubsetMask::from_bits)
    }

    pub fn len(&self) -> u32 {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Convexity: `A₁ ⊆ X ⊆ A₂` with the endpoints in the poset forces `X` in.
    pub fn is_interval_poset(&self) -> bool {
        self.convexity_witness().is_none()
    }

    fn convexity_witness(&self) -> Option<SubsetMask> {
        let members: Vec<u8> = self.members.iter().collect();
        for &a1 in &members {
            for &a2 in &members {
                if a1 & !a2 != 0 {
                    continue;
                }
                // Walk the submasks of a2 that contain a1.
                let free = a2 & !a1;
                let mut s = free;
                loop {
                    let x = a1 | s;
                    if !self.members.contains(x) {
                        return Some(SubsetMask::from_bits(x));
                    }
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & free;
                }
            }
        }
        None
    }

    /// The interval spanned by a convex poset: bottom is the join of the
    /// missing immediate subsets, top the join of the members. The empty
    /// poset maps to `[⊥, ⊥]` by convention.
    pub fn interval(&self) -> Result<Interval> {
        if let Some(x) = self.convexity_witness() {
            return Err(Error::NotConvex(x));
        }
        let u = self.universe();
        let mut bottom = Antichain::bottom(u);
        let mut top_sets = Antichain::bottom(u);
        for x in self.masks() {
            let missing = x
                .immediate_subsets()
                .filter(|y| !self.members.contains(y.bits()));
            let below = Antichain::normalize(u, missing)?;
            bottom = bottom.join(&below)?;
            top_sets = top_sets.join(&Antichain::singleton(u, x)?)?;
        }
        Interval::new(bottom, top_sets)
    }

    /// Disjoint union of posets with no comparable cross-pair; the spanned
    /// interval is the direct join of the two spanned intervals.
    pub fn disjoint_union(&self, other: &IntervalPoset) -> Result<IntervalPoset> {
        if self.n != other.n {
            return Err(Error::UniverseMismatch(self.n as u32, other.n as u32));
        }
        for x1 in self.masks() {
            for x2 in other.masks() {
                if x1.is_subset_of(&x2) || x2.is_subset_of(&x1) {
                    return Err(Error::Precondition(
                        "disjoint union requires incomparable cross-pairs",
                    ));
                }
            }
        }
        Ok(IntervalPoset { n: self.n, members: self.members.union(&other.members) })
    }

    /// Strip a common subset `A` from every member; isomorphic poset.
    pub fn reduce_common_subset(&self, a: SubsetMask) -> Result<IntervalPoset> {
        self.universe().check_mask(a)?;
        if !self.masks().all(|x| a.is_subset_of(&x)) {
            return Err(Error::Precondition("every member must contain the stripped set"));
        }
        let members = self.masks().map(|x| x.difference(&a).bits()).collect();
        Ok(IntervalPoset { n: self.n, members })
    }

    /// Collapse a block `A` that members contain either fully or not at all
    /// onto its single element `a`; isomorphic poset.
    pub fn merge_block(&self, a_block: SubsetMask, a: u32) -> Result<IntervalPoset> {
        self.universe().check_mask(a_block)?;
        if !a_block.contains(a) {
            return Err(Error::Precondition("the kept element must lie in the block"));
        }
        for x in self.masks() {
            let overlap = x.intersection(&a_block);
            if !overlap.is_empty() && overlap != a_block {
                return Err(Error::Precondition(
                    "a member meets the block without containing it",
                ));
            }
        }
        let kept = SubsetMask::from_elements([a]);
        let members = self
            .masks()
            .map(|x| {
                if a_block.is_subset_of(&x) {
                    x.difference(&a_block).union(&kept).bits()
                } else {
                    x.bits()
                }
            })
            .collect();
        Ok(IntervalPoset { n: self.n, members })
    }

    /// Lexicographically least relabeling of the member set; memo key for
    /// interval sizes.
    pub fn canonical_key(&self) -> Result<[u64; 4]> {
        let tables = self.universe().permutation_tables()?;
        let mut best: Option<[u64; 4]> = None;
        for table in tables {
            let image: Bits256 = self.members.iter().map(|m| table[m as usize]).collect();
            let mut words = image.words();
            words.reverse(); // compare most significant word first
            best = Some(match best {
                Some(b) if b <= words => b,
                _ => words,
            });
        }
        let mut key = best.expect("at least the identity permutation");
        key.reverse();
        Ok(key)
    }
}

/// Product-structure reduction: for `A` disjoint from the spans of
/// `χ' <= χ`, the interval `[{A}⊗χ' ∨ A⁻⊗χ, {A}⊗χ]` is isomorphic to
/// `[χ', χ]`. Returns both intervals.
pub fn reduce_product_interval(
    a: SubsetMask,
    chi_prime: &Antichain,
    chi: &Antichain,
) -> Result<(Interval, Interval)> {
    let u = chi.universe();
    u.check_mask(a)?;
    if a.is_empty() {
        return Err(Error::Precondition("the reduced block must be nonempty"));
    }
    if !chi_prime.leq(chi)? {
        return Err(Error::Precondition("requires χ' <= χ"));
    }
    if !a.intersection(&chi.span()).is_empty() || !a.intersection(&chi_prime.span()).is_empty() {
        return Err(Error::Precondition("the block must avoid the spans of χ', χ"));
    }
    let a_single = Antichain::singleton(u, a)?;
    let a_minus = Antichain::immediate_subsets(u, a)?;
    let beta = a_single.direct_product(chi)?;
    let alpha = a_single
        .direct_product(chi_prime)?
        .join(&a_minus.direct_product(chi)?)?;
    Ok((Interval::new(alpha, beta)?, Interval::new(chi_prime.clone(), chi.clone())?))
}

impl IntervalGraph {
    pub fn vertices(&self) -> &[SubsetMask] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        self.edges.contains(&(i, j))
    }

    /// Connected components as vertex index lists, ordered by the smallest
    /// mask they contain so decomposition output is reproducible.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut dsu = Dsu::new(self.vertices.len());
        for &(i, j) in &self.edges {
            dsu.union(i, j);
        }
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..self.vertices.len() {
            by_root.entry(dsu.find(i)).or_default().push(i);
        }
        let mut components: Vec<Vec<usize>> = by_root.into_values().collect();
        components.sort_by_key(|c| c.iter().map(|&i| self.vertices[i]).min());
        components
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(len: usize) -> Dsu {
        Dsu { parent: (0..len).collect() }
    }

    pub fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    pub fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.parent[ri] = rj;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u32) -> Universe {
        Universe::new(n).unwrap()
    }

    fn ac(n: u32, sets: &[&[u32]]) -> Antichain {
        Antichain::from_sets(
            u(n),
            sets.iter().map(|s| SubsetMask::from_elements(s.iter().copied())),
        )
        .unwrap()
    }

    fn poset(n: u32, sets: &[&[u32]]) -> IntervalPoset {
        IntervalPoset::from_masks(
            u(n),
            sets.iter().map(|s| SubsetMask::from_elements(s.iter().copied())),
        )
        .unwrap()
    }

    #[test]
    fn interval_constructor_enforces_order() {
        assert!(Interval::new(ac(2, &[&[1]]), Antichain::empty_set(u(2))).is_err());
        let iv = Interval::new(Antichain::bottom(u(2)), ac(2, &[&[1]])).unwrap();
        assert!(!iv.is_empty());
        assert!(Interval::empty(u(2)).is_empty());
        assert!(Interval::empty(u(0)).is_empty());
    }

    #[test]
    fn poset_of_interval_examples() {
        for n in 0..=4 {
            assert_eq!(Interval::full(u(n)).poset().len(), 1 << n);
        }
        let point = Interval::point(ac(2, &[&[1]]));
        assert!(point.poset().is_empty());
        let iv = Interval::new(ac(2, &[&[2]]), ac(2, &[&[1, 2]])).unwrap();
        assert_eq!(iv.poset(), poset(2, &[&[1], &[1, 2]]));
    }

    #[test]
    fn convexity_examples() {
        assert!(poset(2, &[&[1], &[1, 2]]).is_interval_poset());
        assert!(!poset(3, &[&[1], &[1, 2, 3]]).is_interval_poset());
        assert!(poset(3, &[]).is_interval_poset());
    }

    #[test]
    fn interval_of_poset_examples() {
        let all = IntervalPoset::from_masks(u(2), u(2).masks()).unwrap();
        assert_eq!(all.interval().unwrap(), Interval::full(u(2)));

        let s = poset(2, &[&[1], &[1, 2]]);
        assert_eq!(
            s.interval().unwrap(),
            Interval::new(ac(2, &[&[2]]), ac(2, &[&[1, 2]])).unwrap()
        );

        let empty = poset(2, &[]);
        assert_eq!(
            empty.interval().unwrap(),
            Interval::point(Antichain::bottom(u(2)))
        );

        assert!(matches!(
            poset(3, &[&[1], &[1, 2, 3]]).interval(),
            Err(Error::NotConvex(_))
        ));
    }

    #[test]
    fn poset_interval_roundtrip_small() {
        // poset(interval(S)) = S for every convex S drawn from intervals.
        for n in 0..=3 {
            let un = u(n);
            let all = crate::size::enumerate_interval(&Interval::full(un)).unwrap();
            for bottom in &all {
                for top in &all {
                    if !bottom.leq(top).unwrap() {
                        continue;
                    }
                    let iv = Interval::new(bottom.clone(), top.clone()).unwrap();
                    let p = iv.poset();
                    assert!(p.is_interval_poset());
                    assert_eq!(p.interval().unwrap().poset(), p);
                }
            }
        }
    }

    #[test]
    fn disjoint_union_examples() {
        let s1 = poset(2, &[&[1]]);
        let s2 = poset(2, &[&[2]]);
        let both = s1.disjoint_union(&s2).unwrap();
        assert_eq!(both, poset(2, &[&[1], &[2]]));
        // ∅ is not a member, so the spanned bottom is {∅}, not ⊥.
        assert_eq!(
            both.interval().unwrap(),
            Interval::new(Antichain::empty_set(u(2)), ac(2, &[&[1], &[2]])).unwrap()
        );
        assert_eq!(s1.disjoint_union(&poset(2, &[])).unwrap(), s1);
        assert!(s1.disjoint_union(&poset(2, &[&[1, 2]])).is_err());
    }

    #[test]
    fn reduce_common_subset_examples() {
        let s = poset(3, &[&[1, 2], &[1, 2, 3]]);
        assert_eq!(
            s.reduce_common_subset(SubsetMask::from_elements([1, 2])).unwrap(),
            poset(3, &[&[], &[3]])
        );
        assert_eq!(s.reduce_common_subset(SubsetMask::EMPTY).unwrap(), s);
        assert!(poset(3, &[&[1], &[2]])
            .reduce_common_subset(SubsetMask::from_elements([1]))
            .is_err());
    }

    #[test]
    fn merge_block_examples() {
        let s = poset(3, &[&[1, 2], &[1, 2, 3]]);
        assert_eq!(
            s.merge_block(SubsetMask::from_elements([1, 2]), 1).unwrap(),
            poset(3, &[&[1], &[1, 3]])
        );
        assert_eq!(s.merge_block(SubsetMask::from_elements([3]), 3).unwrap(), s);
        assert!(poset(3, &[&[1], &[1, 2]])
            .merge_block(SubsetMask::from_elements([1, 2]), 1)
            .is_err());
    }

    #[test]
    fn strip_common_examples() {
        let point = Interval::point(ac(2, &[&[1], &[2]]));
        let stripped = point.strip_common();
        assert!(stripped.poset().is_empty());
        assert_eq!(stripped.bottom(), &Antichain::bottom(u(2)));

        let iv = Interval::new(ac(2, &[&[1], &[2]]), ac(2, &[&[1, 2]])).unwrap();
        assert_eq!(iv.strip_common(), iv);

        // Unsafe shared member: dropping {1} would admit ∅ into the poset.
        let iv = Interval::new(ac(2, &[&[1]]), ac(2, &[&[1], &[2]])).unwrap();
        assert_eq!(iv.strip_common(), iv);

        // Safe shared member: {1} ∩ {2,3} = ∅ stays dominated by {{2}}.
        let iv = Interval::new(ac(3, &[&[1], &[2]]), ac(3, &[&[1], &[2, 3]])).unwrap();
        let stripped = iv.strip_common();
        assert_eq!(
            stripped,
            Interval::new(ac(3, &[&[2]]), ac(3, &[&[2, 3]])).unwrap()
        );
        assert_eq!(stripped.poset(), iv.poset());
    }

    #[test]
    fn strip_common_preserves_poset_exhaustively() {
        for n in 0..=3 {
            let all = crate::size::enumerate_interval(&Interval::full(u(n))).unwrap();
            for bottom in &all {
                for top in &all {
                    if !bottom.leq(top).unwrap() {
                        continue;
                    }
                    let iv = Interval::new(bottom.clone(), top.clone()).unwrap();
                    assert_eq!(
                        iv.strip_common().poset(),
                        iv.poset(),
                        "[{bottom}, {top}]"
                    );
                }
            }
        }
    }

    #[test]
    fn interval_graph_examples() {
        let iv = Interval::new(Antichain::empty_set(u(2)), ac(2, &[&[1], &[2]])).unwrap();
        assert!(iv.graph().edges().is_empty());

        let iv = Interval::new(Antichain::bottom(u(2)), ac(2, &[&[1], &[2]])).unwrap();
        assert_eq!(iv.graph().edges().len(), 1);

        let iv = Interval::new(ac(3, &[&[2]]), ac(3, &[&[1, 2], &[2, 3]])).unwrap();
        assert!(iv.graph().edges().is_empty());
    }

    #[test]
    fn graph_decompose_examples() {
        let iv = Interval::new(Antichain::bottom(u(2)), ac(2, &[&[1], &[2]])).unwrap();
        assert_eq!(iv.graph_decompose().unwrap(), vec![iv.clone()]);

        let iv = Interval::new(Antichain::empty_set(u(2)), ac(2, &[&[1], &[2]])).unwrap();
        let parts = iv.graph_decompose().unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(
            parts[0],
            Interval::new(Antichain::empty_set(u(2)), ac(2, &[&[1]])).unwrap()
        );
        assert_eq!(
            parts[1],
            Interval::new(Antichain::empty_set(u(2)), ac(2, &[&[2]])).unwrap()
        );

        let iv = Interval::new(Antichain::empty_set(u(4)), ac(4, &[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!(iv.graph_decompose().unwrap().len(), 2);
    }

    #[test]
    fn reduce_product_interval_examples() {
        // χ' = χ: both intervals are points.
        let chi = ac(3, &[&[2]]);
        let (left, right) =
            reduce_product_interval(SubsetMask::from_elements([1]), &chi, &chi).unwrap();
        assert!(left.is_point());
        assert!(right.is_point());

        assert!(reduce_product_interval(SubsetMask::EMPTY, &chi, &chi).is_err());
        assert!(reduce_product_interval(
            SubsetMask::from_elements([2]),
            &chi,
            &chi
        )
        .is_err());
        assert!(reduce_product_interval(
            SubsetMask::from_elements([1]),
            &ac(3, &[&[2], &[3]]),
            &ac(3, &[&[2]]),
        )
        .is_err());
    }
}
