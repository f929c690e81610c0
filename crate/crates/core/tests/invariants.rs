//! Cross-module invariants: reduction lemmas preserve interval sizes, and
//! randomized structural laws over larger universes than the exhaustive unit
//! tests cover.

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use antichains::pcoeff::{pcoeff_bruteforce, pcoeff_k2};
use antichains::{
    enumerate_interval, interval_size, size_leveled, Antichain, Interval, Parity, SizeMemo,
    SubsetMask, Universe,
};

fn all_antichains(n: u32) -> Vec<Antichain> {
    enumerate_interval(&Interval::full(Universe::new(n).unwrap())).unwrap()
}

fn from_masks(n: u32, masks: &[u8]) -> Antichain {
    let u = Universe::new(n).unwrap();
    let mut a = Antichain::bottom(u);
    for &m in masks {
        let m = SubsetMask::from_bits(m & u.full_mask().bits());
        a = a.join(&Antichain::singleton(u, m).unwrap()).unwrap();
    }
    a
}

/// Stripping shared boundary members, common-subset removal, block merging
/// and the spanned-interval roundtrip all preserve the interval size, on
/// every interval of the dimension-3 lattice.
#[test]
fn reductions_preserve_size_exhaustively() {
    let memo = SizeMemo::new();
    let all = all_antichains(3);
    for bottom in &all {
        for top in &all {
            if !bottom.leq(top).unwrap() {
                continue;
            }
            let iv = Interval::new(bottom.clone(), top.clone()).unwrap();
            let size = interval_size(&iv, &memo);

            let stripped = iv.strip_common();
            assert_eq!(interval_size(&stripped, &memo), size, "strip [{bottom}, {top}]");

            let poset = iv.poset();
            if !poset.is_empty() {
                // The size of a nonempty-poset interval is determined by its
                // poset, so the spanned interval must have the same size.
                let spanned = poset.interval().unwrap();
                assert_eq!(
                    interval_size(&spanned, &memo),
                    size,
                    "span [{bottom}, {top}]"
                );

                // Remove the subset shared by every member, when there is one.
                let common = poset
                    .masks()
                    .fold(Universe::new(3).unwrap().full_mask(), |acc, m| {
                        acc.intersection(&m)
                    });
                if !common.is_empty() {
                    let reduced = poset.reduce_common_subset(common).unwrap();
                    assert_eq!(
                        interval_size(&reduced.interval().unwrap().strip_common(), &memo),
                        size,
                        "common subset [{bottom}, {top}]"
                    );
                }
            }

            let parts = iv.graph_decompose().unwrap();
            let product: BigUint = parts.iter().map(|p| interval_size(p, &memo)).product();
            if !iv.is_empty() && !parts.is_empty() {
                assert_eq!(product, size, "decomposition [{bottom}, {top}]");
            }
        }
    }
}

/// Pair coefficients: closed form vs definitional search on 10^3 seeded
/// random pairs at dimension 4 (the exhaustive check stops at 3).
#[test]
fn random_pcoeff_pairs_dimension_four() {
    let all = all_antichains(4);
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..1_000 {
        let rho1 = &all[rng.random_range(0..all.len())];
        let rho2 = &all[rng.random_range(0..all.len())];
        assert_eq!(
            pcoeff_k2(rho1, rho2).unwrap(),
            pcoeff_bruteforce(rho1, rho2, 2).unwrap(),
            "({rho1}, {rho2})"
        );
    }
}

proptest! {
    /// Lattice laws at dimension 5, far beyond the exhaustive sweeps.
    #[test]
    fn lattice_laws_hold(a in prop::collection::vec(0u8..32, 0..5),
                         b in prop::collection::vec(0u8..32, 0..5),
                         c in prop::collection::vec(0u8..32, 0..5)) {
        let (a, b, c) = (from_masks(5, &a), from_masks(5, &b), from_masks(5, &c));
        prop_assert_eq!(a.meet(&b).unwrap(), b.meet(&a).unwrap());
        prop_assert_eq!(a.join(&a.meet(&b).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(
            a.meet(&b.join(&c).unwrap()).unwrap(),
            a.meet(&b).unwrap().join(&a.meet(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.dual().dual(), a.clone());
        prop_assert_eq!(a.leq(&b).unwrap(), b.dual().leq(&a.dual()).unwrap());
        prop_assert_eq!(
            a.leq(&b).unwrap(),
            a.to_downset().is_subset_of(&b.to_downset())
        );
    }

    /// Canonical forms are invariant under relabeling at dimension 5.
    #[test]
    fn canonical_form_is_relabeling_invariant(
        masks in prop::collection::vec(0u8..32, 0..5),
        perm in 0usize..120,
    ) {
        let a = from_masks(5, &masks);
        let u = Universe::new(5).unwrap();
        let tables = u.permutation_tables().unwrap();
        let image = a.permute(&tables[perm % tables.len()]);
        prop_assert_eq!(
            a.canonicalize().unwrap().representative,
            image.canonicalize().unwrap().representative
        );
    }

    /// Both summation parities agree with the memoized dispatcher on random
    /// dimension-5 intervals.
    #[test]
    fn parities_agree_on_random_intervals(
        lo in prop::collection::vec(0u8..32, 0..4),
        hi in prop::collection::vec(0u8..32, 0..4),
    ) {
        let bottom = from_masks(5, &lo);
        let top = from_masks(5, &hi).join(&bottom).unwrap();
        let iv = Interval::new(bottom, top).unwrap();
        let even = size_leveled(&iv, Parity::Even);
        let odd = size_leveled(&iv, Parity::Odd);
        prop_assert_eq!(&even, &odd);
        let memo = SizeMemo::new();
        prop_assert_eq!(interval_size(&iv, &memo), even);
    }
}
