//! The two interval-partition theorems: the largest-non-dominating partition
//! attached to an antichain (and its interval-relative corollary), the
//! direct-product partition over a split of the universe, and a verifier
//! that a partition is a disjoint cover.

use crate::error::{Error, Result};
use crate::lattice::{Antichain, SubsetMask, Universe};
use crate::poset::Interval;
use crate::size::{enumerate_interval, interval_size, SizeMemo};
use num_bigint::BigUint;
use num_traits::Zero;

/// A list of intervals meant to partition a parent interval.
#[derive(Clone, Debug)]
pub struct IntervalPartition {
    pub parent: Interval,
    pub parts: Vec<Interval>,
    /// Empty parts dropped during construction (corollary form only).
    pub dropped: usize,
}

/// Subsets of an antichain's member list, in fixed subset-mask order.
fn member_subsets(a: &Antichain) -> impl Iterator<Item = (Antichain, Antichain)> + '_ {
    let u = a.universe();
    let k = a.sets().len();
    (0u32..1 << k).map(move |pick| {
        let chosen = a
            .sets()
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> i & 1 != 0)
            .map(|(_, &s)| s);
        let rest = a
            .sets()
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> i & 1 == 0)
            .map(|(_, &s)| s);
        (
            Antichain::from_sets(u, chosen).expect("subset of an antichain"),
            Antichain::from_sets(u, rest).expect("subset of an antichain"),
        )
    })
}

/// Partition of the whole lattice attached to `α`: one interval
/// `[χ, check(α \ χ)]` per subset `χ` of `α`'s member list.
pub fn lnd_partition(alpha: &Antichain) -> IntervalPartition {
    let u = alpha.universe();
    let parts = member_subsets(alpha)
        .map(|(chi, rest)| {
            Interval::new(chi, rest.check_nondominating())
                .expect("members of χ never dominate α \\ χ")
        })
        .collect();
    IntervalPartition { parent: Interval::full(u), parts, dropped: 0 }
}

/// Corollary form: partition of `iv` attached to `α' ∈ iv`, with empty
/// parts dropped (but counted).
pub fn lnd_partition_interval(alpha_prime: &Antichain, iv: &Interval) -> Result<IntervalPartition> {
    if !iv.contains(alpha_prime)? {
        return Err(Error::Precondition("α' must lie in the interval"));
    }
    let mut parts = Vec::new();
    let mut dropped = 0;
    for (chi, rest) in member_subsets(alpha_prime) {
        let bottom = iv.bottom().join(&chi)?;
        let top = iv.top().meet(&rest.check_nondominating())?;
        if bottom.leq(&top)? {
            parts.push(Interval::new(bottom, top)?);
        } else {
            dropped += 1;
        }
    }
    Ok(IntervalPartition { parent: iv.clone(), parts, dropped })
}

/// Direct-product partition of the lattice over a split `N = N₁ ∪ N₂`:
/// `{[⊥,⊥]} ∪ {[α₁ ∨ α₂, α₁ ⊗ α₂]}` over nonbottom antichains of the two
/// halves.
pub fn product_partition(u: Universe, n1: SubsetMask, n2: SubsetMask) -> Result<IntervalPartition> {
    u.check_mask(n1)?;
    u.check_mask(n2)?;
    if n1.is_empty() || n2.is_empty() {
        return Err(Error::Precondition("both split halves must be nonempty"));
    }
    if !n1.intersection(&n2).is_empty() || n1.union(&n2) != u.full_mask() {
        return Err(Error::Precondition("halves must be disjoint and cover the universe"));
    }
    let half = |mask: SubsetMask| -> Result<Vec<Antichain>> {
        let iv = Interval::new(Antichain::bottom(u), Antichain::singleton(u, mask)?)?;
        Ok(enumerate_interval(&iv)?
            .into_iter()
            .filter(|a| !a.is_bottom())
            .collect())
    };
    let lower1 = half(n1)?;
    let lower2 = half(n2)?;
    let mut parts = vec![Interval::point(Antichain::bottom(u))];
    for a1 in &lower1 {
        for a2 in &lower2 {
            parts.push(Interval::new(a1.join(a2)?, a1.direct_product(a2)?)?);
        }
    }
    Ok(IntervalPartition { parent: Interval::full(u), parts, dropped: 0 })
}

/// How to check a partition.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every parent element lies in exactly one part (requires enumeration).
    Elementwise,
    /// Part sizes sum to the parent size.
    SizeSum,
}

/// Verification outcome; `witness` carries a counterexample element when an
/// elementwise check fails.
#[derive(Clone, Debug)]
pub struct PartitionReport {
    pub ok: bool,
    pub witness: Option<Antichain>,
    pub detail: String,
}

pub fn verify_partition(p: &IntervalPartition, mode: VerifyMode) -> Result<PartitionReport> {
    match mode {
        VerifyMode::Elementwise => {
            let mut bad = None;
            for_each_failing(p, &mut bad)?;
            Ok(match bad {
                None => PartitionReport {
                    ok: true,
                    witness: None,
                    detail: format!("{} parts cover the parent exactly once", p.parts.len()),
                },
                Some((element, count)) => PartitionReport {
                    ok: false,
                    detail: format!("element covered {count} times: {element}"),
                    witness: Some(element),
                },
            })
        }
        VerifyMode::SizeSum => {
            let memo = SizeMemo::new();
            let total: BigUint = p
                .parts
                .iter()
                .map(|part| interval_size(part, &memo))
                .fold(BigUint::zero(), |a, b| a + b);
            let expected = interval_size(&p.parent, &memo);
            Ok(PartitionReport {
                ok: total == expected,
                witness: None,
                detail: format!("part sizes sum to {total}, parent size {expected}"),
            })
        }
    }
}

fn for_each_failing(
    p: &IntervalPartition,
    bad: &mut Option<(Antichain, usize)>,
) -> Result<()> {
    let elements = enumerate_interval(&p.parent)?;
    for element in elements {
        let mut count = 0;
        for part in &p.parts {
            if part.contains(&element)? {
                count += 1;
            }
        }
        if count != 1 {
            *bad = Some((element, count));
            return Ok(());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

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

    fn sizes_sum(p: &IntervalPartition) -> BigUint {
        let memo = SizeMemo::new();
        p.parts.iter().map(|iv| interval_size(iv, &memo)).sum()
    }

    #[test]
    fn lnd_partition_examples() {
        let p = lnd_partition(&Antichain::bottom(u(3)));
        assert_eq!(p.parts.len(), 1);
        assert_eq!(p.parts[0], Interval::full(u(3)));

        // n=1, α = ⊤ → [⊥,{∅}] and [⊤,⊤]
        let p = lnd_partition(&Antichain::top(u(1)));
        assert_eq!(p.parts.len(), 2);
        assert_eq!(sizes_sum(&p), BigUint::from(3u32));
        assert!(verify_partition(&p, VerifyMode::Elementwise).unwrap().ok);

        let p = lnd_partition(&ac(3, &[&[1, 2]]));
        assert_eq!(p.parts.len(), 2);
        assert_eq!(sizes_sum(&p), BigUint::from(20u32));
    }

    #[test]
    fn lnd_partition_interval_examples() {
        let full = Interval::full(u(3));
        let p = lnd_partition_interval(&Antichain::bottom(u(3)), &full).unwrap();
        assert_eq!(p.parts.len(), 1);
        assert_eq!(p.parts[0], full);

        let point = Interval::point(ac(3, &[&[1]]));
        let p = lnd_partition_interval(&ac(3, &[&[1]]), &point).unwrap();
        assert_eq!(sizes_sum(&p), BigUint::one());

        // α' outside the interval is rejected.
        assert!(lnd_partition_interval(&ac(3, &[&[1, 2]]), &point).is_err());

        // n=3, iv = [{∅}, N⁻], α' = {{1}}
        let iv = Interval::new(
            Antichain::empty_set(u(3)),
            Antichain::immediate_subsets(u(3), u(3).full_mask()).unwrap(),
        )
        .unwrap();
        let p = lnd_partition_interval(&ac(3, &[&[1]]), &iv).unwrap();
        let memo = SizeMemo::new();
        assert_eq!(sizes_sum(&p), interval_size(&iv, &memo));
        assert!(verify_partition(&p, VerifyMode::Elementwise).unwrap().ok);
    }

    #[test]
    fn product_partition_examples() {
        let p = product_partition(
            u(2),
            SubsetMask::from_elements([1]),
            SubsetMask::from_elements([2]),
        )
        .unwrap();
        assert_eq!(p.parts.len(), 5);
        assert_eq!(sizes_sum(&p), BigUint::from(6u32));
        assert!(verify_partition(&p, VerifyMode::Elementwise).unwrap().ok);

        assert!(product_partition(u(2), SubsetMask::EMPTY, u(2).full_mask()).is_err());
        assert!(product_partition(
            u(2),
            SubsetMask::from_elements([1]),
            SubsetMask::from_elements([1, 2])
        )
        .is_err());
    }

    #[test]
    fn corrupted_partition_fails_with_witness() {
        let mut p = lnd_partition(&ac(2, &[&[1]]));
        p.parts.pop();
        let report = verify_partition(&p, VerifyMode::Elementwise).unwrap();
        assert!(!report.ok);
        assert!(report.witness.is_some());
        let report = verify_partition(&p, VerifyMode::SizeSum).unwrap();
        assert!(!report.ok);
    }
}
