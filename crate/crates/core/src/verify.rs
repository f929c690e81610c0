//! Self-check suites over small universes, runnable from the CLI. Each suite
//! exercises one structural identity exhaustively and reports counterexamples
//! instead of panicking, so a failure names the offending element.

use crate::error::Result;
use crate::lattice::{Antichain, Universe};
use crate::partitions::{lnd_partition, product_partition, verify_partition, VerifyMode};
use crate::pcoeff::{dedekind_pcoeff, dedekind_pcoeff_nosym, pcoeff_bruteforce, pcoeff_k2};
use crate::poset::Interval;
use crate::size::{
    enumerate_interval, interval_size, size_leveled, Parity, SizeMemo,
};
use crate::lattice::SubsetMask;

/// Outcome of one suite run.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> SuiteReport {
        SuiteReport { name, checks: 0, failures: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 10 {
            self.failures.push(detail());
        }
    }
}

pub const SUITE_NAMES: &[&str] =
    &["lattice", "downset", "duality", "canonical", "sizes", "partitions", "pcoeff"];

/// Runs one named suite, with exhaustive loops capped at dimension `max_n`
/// (each suite also has its own built-in ceiling chosen for runtime).
pub fn run_suite(name: &str, max_n: u32) -> Result<SuiteReport> {
    match name {
        "lattice" => lattice_suite(max_n),
        "downset" => downset_suite(max_n),
        "duality" => duality_suite(max_n),
        "canonical" => canonical_suite(max_n),
        "sizes" => sizes_suite(max_n),
        "partitions" => partitions_suite(max_n),
        "pcoeff" => pcoeff_suite(max_n),
        _ => Err(crate::error::Error::Precondition("unknown verification suite")),
    }
}

pub fn run_all(max_n: u32) -> Result<Vec<SuiteReport>> {
    SUITE_NAMES.iter().map(|n| run_suite(n, max_n)).collect()
}

fn all_antichains(n: u32) -> Result<Vec<Antichain>> {
    enumerate_interval(&Interval::full(Universe::new(n)?))
}

/// Lattice laws: commutativity, absorption and idempotence over all pairs in
/// A₄, distributivity and associativity over all triples in A₃.
fn lattice_suite(max_n: u32) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("lattice");
    for n in 0..=max_n.min(4) {
        let all = all_antichains(n)?;
        for a in &all {
            for b in &all {
                r.check(a.meet(b)? == b.meet(a)?, || format!("meet commutativity {a} {b}"));
                r.check(a.join(b)? == b.join(a)?, || format!("join commutativity {a} {b}"));
                r.check(a.join(&a.meet(b)?)? == *a, || format!("absorption {a} {b}"));
                r.check(
                    (a.leq(b)? && b.leq(a)?) == (a == b),
                    || format!("antisymmetry {a} {b}"),
                );
            }
        }
    }
    for n in 0..=max_n.min(3) {
        let all = all_antichains(n)?;
        for a in &all {
            for b in &all {
                for c in &all {
                    r.check(
                        a.meet(&b.join(c)?)? == a.meet(b)?.join(&a.meet(c)?)?,
                        || format!("distributivity {a} {b} {c}"),
                    );
                    r.check(
                        a.meet(b)?.meet(c)? == a.meet(&b.meet(c)?)?,
                        || format!("meet associativity {a} {b} {c}"),
                    );
                }
            }
        }
    }
    Ok(r)
}

/// The downset map is an order isomorphism onto downward-closed bit vectors.
fn downset_suite(max_n: u32) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("downset");
    for n in 0..=max_n.min(4) {
        let all = all_antichains(n)?;
        for a in &all {
            let d = a.to_downset();
            r.check(Antichain::from_downset(&d) == *a, || format!("roundtrip {a}"));
            for b in &all {
                let e = b.to_downset();
                r.check(
                    a.leq(b)? == d.is_subset_of(&e),
                    || format!("order embedding {a} {b}"),
                );
                r.check(
                    a.meet(b)?.to_downset().bits() == &d.bits().intersection(e.bits()),
                    || format!("meet is intersection {a} {b}"),
                );
                r.check(
                    a.join(b)?.to_downset().bits() == &d.bits().union(e.bits()),
                    || format!("join is union {a} {b}"),
                );
            }
        }
    }
    Ok(r)
}

/// The dual is an order-reversing involution and swaps upper and lower
/// interval sizes.
fn duality_suite(max_n: u32) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("duality");
    let memo = SizeMemo::new();
    for n in 0..=max_n.min(4) {
        let u = Universe::new(n)?;
        let all = all_antichains(n)?;
        for a in &all {
            r.check(a.dual().dual() == *a, || format!("involution {a}"));
            let upper = interval_size(&Interval::new(a.clone(), Antichain::top(u))?, &memo);
            let lower =
                interval_size(&Interval::new(Antichain::bottom(u), a.dual())?, &memo);
            r.check(upper == lower, || format!("interval swap {a}"));
            for b in &all {
                r.check(
                    a.leq(b)? == b.dual().leq(&a.dual())?,
                    || format!("order reversal {a} {b}"),
                );
            }
        }
    }
    Ok(r)
}

/// Canonical forms are relabeling invariants and orbit sizes tile the
/// lattice.
fn canonical_suite(max_n: u32) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("canonical");
    for n in 0..=max_n.min(4) {
        let u = Universe::new(n)?;
        let all = all_antichains(n)?;
        let mut orbit_total = 0u64;
        for a in &all {
            let cf = a.canonicalize()?;
            for table in u.permutation_tables()? {
                let image = a.permute(table);
                r.check(
                    image.canonicalize()?.representative == cf.representative,
                    || format!("relabeling invariance {a}"),
                );
            }
            if cf.representative == *a {
                orbit_total += cf.orbit_size;
            }
        }
        r.check(
            orbit_total == all.len() as u64,
            || format!("orbit sizes tile A_{n}: {orbit_total} vs {}", all.len()),
        );
    }
    Ok(r)
}

/// Interval sizes: both summation parities, the memoized dispatcher and a
/// direct enumeration agree on every interval of A₃ and the full lattices up
/// to n = 5.
fn sizes_suite(max_n: u32) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("sizes");
    let memo = SizeMemo::new();
    let all = all_antichains(max_n.min(3))?;
    for bottom in &all {
        for top in &all {
            if !bottom.leq(top)? {
                continue;
            }
            let iv = Interval::new(bottom.clone(), top.clone())?;
            let by_enum = num_bigint::BigUint::from(enumerate_interval(&iv)?.len());
            r.check(
                size_leveled(&iv, Parity::Even) == by_enum,
                || format!("even parity [{bottom}, {top}]"),
            );
            r.check(
                size_leveled(&iv, Parity::Odd) == by_enum,
                || format!("odd parity [{bottom}, {top}]"),
            );
            r.check(
                interval_size(&iv, &memo) == by_enum,
                || format!("dispatcher [{bottom}, {top}]"),
            );
        }
    }
    for (n, expected) in [(0u32, 2u32), (1, 3), (2, 6), (3, 20), (4, 168), (5, 7581)] {
        if n > max_n {
            continue;
        }
        let iv = Interval::full(Universe::new(n)?);
        r.check(
            interval_size(&iv, &memo) == num_bigint::BigUint::from(expected),
            || format!("|A_{n}|"),
        );
    }
    Ok(r)
}

/// Both partition theorems, elementwise where feasible.
fn partitions_suite(max_n: u32) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("partitions");
    for alpha in all_antichains(max_n.min(3))? {
        let report = verify_partition(&lnd_partition(&alpha), VerifyMode::Elementwise)?;
        r.check(report.ok, || format!("non-dominating partition at {alpha}: {}", report.detail));
    }
    for n in 2..=max_n.min(4) {
        let u = Universe::new(n)?;
        for split in 1..n {
            let n1 = SubsetMask::from_elements(1..=split);
            let n2 = u.full_mask().difference(&n1);
            let p = product_partition(u, n1, n2)?;
            let report = verify_partition(&p, VerifyMode::Elementwise)?;
            r.check(
                report.ok,
                || format!("product partition n={n} split={split}: {}", report.detail),
            );
        }
    }
    Ok(r)
}

/// Pair coefficients: closed form vs definition, and both Dedekind
/// recursions.
fn pcoeff_suite(max_n: u32) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("pcoeff");
    for n in 0..=max_n.min(2) {
        let all = all_antichains(n)?;
        for rho1 in &all {
            for rho2 in &all {
                r.check(
                    pcoeff_k2(rho1, rho2)? == pcoeff_bruteforce(rho1, rho2, 2)?,
                    || format!("pair coefficient ({rho1}, {rho2})"),
                );
            }
        }
    }
    for (n, expected) in [(0u32, 6u64), (1, 20), (2, 168), (3, 7581)] {
        if n > max_n {
            continue;
        }
        let expected = num_bigint::BigUint::from(expected);
        r.check(
            dedekind_pcoeff(n, 2, 2)? == expected,
            || format!("folded recursion A_{}", n + 2),
        );
        r.check(
            dedekind_pcoeff_nosym(n, 2)? == expected,
            || format!("plain recursion A_{}", n + 2),
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for report in run_all(5).unwrap() {
            assert!(
                report.ok(),
                "suite {} failed: {:?}",
                report.name,
                report.failures
            );
            assert!(report.checks > 0);
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nonsense", 3).is_err());
    }
}
