//! Derived counting sequences: basic-interval counts `B_n`, distinguishing
//! counts `D_n` (through Stirling numbers of the second kind), connected
//! counts `C_n`, their inter-conversions, and the connected-graphs variant
//! of the recursion. All arithmetic is arbitrary precision from the start;
//! the order-8 values exceed 64 bits.

use crate::error::{Error, Result};
use crate::lattice::{Antichain, SubsetMask, Universe};
use crate::poset::{Dsu, Interval};
use crate::size::for_each_in_interval;
use num_bigint::BigUint;
use num_traits::{One, Zero};

// ---------------------------------------------------------------------------
// Elementary exact combinatorics

pub fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut result = BigUint::one();
    for i in 0..k.min(n - k) {
        result = result * (n - i) / (i + 1);
    }
    result
}

/// Stirling number of the second kind, by the triangular recurrence
/// `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn stirling2(n: u32, k: u32) -> Result<BigUint> {
    if k > n {
        return Err(Error::Precondition("stirling2 requires k <= n"));
    }
    let mut row = vec![BigUint::one()]; // S(0,0)
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m as usize + 1];
        for j in 1..=m as usize {
            let carry = if j < row.len() { &row[j] * j as u32 } else { BigUint::zero() };
            next[j] = carry + &row[j - 1];
        }
        row = next;
    }
    Ok(row[k as usize].clone())
}

/// `n! / (p₁! p₂! ...)` for parts summing to `n`.
pub fn multinomial(n: u32, parts: &[u32]) -> Result<BigUint> {
    if parts.iter().sum::<u32>() != n {
        return Err(Error::Precondition("multinomial parts must sum to n"));
    }
    let mut remaining = n;
    let mut result = BigUint::one();
    for &p in parts {
        result *= binomial(remaining, p);
        remaining -= p;
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// Expansions of n as multisets of positive part sizes

/// One way to write `n = Σ m·k` with distinct part sizes `k`, stored in
/// strictly decreasing `k` order with multiplicities `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetExpansion {
    /// `(part size, multiplicity)` pairs.
    pub terms: Vec<(u32, u32)>,
}

impl MultisetExpansion {
    pub fn total(&self) -> u32 {
        self.terms.iter().map(|&(k, m)| k * m).sum()
    }

    /// The combinatorial weight `(1/Π mᵢ!) · multinomial(n; kᵢ repeated mᵢ)`;
    /// always an exact integer.
    pub fn weight(&self) -> BigUint {
        let n = self.total();
        let parts: Vec<u32> = self
            .terms
            .iter()
            .flat_map(|&(k, m)| std::iter::repeat_n(k, m as usize))
            .collect();
        let numerator = multinomial(n, &parts).expect("parts sum to n");
        let denominator: BigUint = self.terms.iter().map(|&(_, m)| factorial(m)).product();
        numerator / denominator
    }
}

/// All expansions of `n >= 1`, i.e. the integer partitions of `n` grouped by
/// part size.
pub fn expansions(n: u32) -> Vec<MultisetExpansion> {
    let mut out = Vec::new();
    let mut current: Vec<(u32, u32)> = Vec::new();
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<(u32, u32)>, out: &mut Vec<MultisetExpansion>) {
        if remaining == 0 {
            out.push(MultisetExpansion { terms: current.clone() });
            return;
        }
        for k in (1..=max_part.min(remaining)).rev() {
            for m in (1..=remaining / k).rev() {
                current.push((k, m));
                rec(remaining - k * m, k - 1, current, out);
                current.pop();
            }
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

// ---------------------------------------------------------------------------
// The four sequences and their recursions

/// Per-dimension values of the four sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceRow {
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
    pub d: BigUint,
}

/// `(A_n, B_n, C_n, D_n)` for `n = 0..=max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    pub rows: Vec<SequenceRow>,
}

/// Derive B, C and D from the given Dedekind numbers.
pub fn table_from_a(a: Vec<BigUint>) -> SequenceTable {
    let b = b_from_a(&a);
    let c = c_from_b(&b);
    let d = d_from_b(&b);
    SequenceTable {
        rows: a
            .into_iter()
            .zip(b)
            .zip(c)
            .zip(d)
            .map(|(((a, b), c), d)| SequenceRow { a, b, c, d })
            .collect(),
    }
}

/// `B_n = A_n - Σ_{k<n} C(n,k) B_k`.
pub fn b_from_a(a: &[BigUint]) -> Vec<BigUint> {
    let mut b: Vec<BigUint> = Vec::with_capacity(a.len());
    for (n, an) in a.iter().enumerate() {
        let sum: BigUint = (0..n)
            .map(|k| binomial(n as u32, k as u32) * &b[k])
            .sum();
        b.push(an - sum);
    }
    b
}

/// `A_n = Σ_{k<=n} C(n,k) B_k`; inverse of [`b_from_a`].
pub fn a_from_b(b: &[BigUint]) -> Vec<BigUint> {
    (0..b.len())
        .map(|n| (0..=n).map(|k| binomial(n as u32, k as u32) * &b[k]).sum())
        .collect()
}

/// `D_n = B_n - Σ_{0<k<n} {n k} D_k`, with `D_0 = 2` and no `k = 0`
/// contribution for `n > 0`.
pub fn d_from_b(b: &[BigUint]) -> Vec<BigUint> {
    let mut d: Vec<BigUint> = Vec::with_capacity(b.len());
    for (n, bn) in b.iter().enumerate() {
        if n == 0 {
            d.push(BigUint::from(2u32));
            continue;
        }
        let sum: BigUint = (1..n)
            .map(|k| stirling2(n as u32, k as u32).expect("k <= n") * &d[k])
            .sum();
        d.push(bn - sum);
    }
    d
}

/// `A_n = Σ_k {n+1 k+1} D_k`.
pub fn a_from_d(d: &[BigUint]) -> Vec<BigUint> {
    (0..d.len())
        .map(|n| {
            (0..=n)
                .map(|k| stirling2(n as u32 + 1, k as u32 + 1).expect("k+1 <= n+1") * &d[k])
                .sum()
        })
        .collect()
}

/// Solve the connectedness recursion for `C_n`: subtract every
/// multi-component expansion from `B_n`. `C_0 = 2` is fixed.
pub fn c_from_b(b: &[BigUint]) -> Vec<BigUint> {
    let mut c: Vec<BigUint> = Vec::with_capacity(b.len());
    for (n, bn) in b.iter().enumerate() {
        if n == 0 {
            c.push(BigUint::from(2u32));
            continue;
        }
        let sum = expansion_sum(n as u32, &c, |k| k < n as u32, 1);
        c.push(bn - sum);
    }
    c
}

/// Re-evaluate the forward expansion `B_n = Σ over expansions`; inverse of
/// [`c_from_b`].
pub fn b_via_connected(c: &[BigUint]) -> Vec<BigUint> {
    (0..c.len())
        .map(|n| {
            if n == 0 {
                c[0].clone()
            } else {
                expansion_sum(n as u32, c, |_| true, 1)
            }
        })
        .collect()
}

/// `Σ weight · Π counts[kᵢ]^{mᵢ}` over expansions of `n` whose part sizes
/// satisfy `admit` and are at least `min_part`.
fn expansion_sum(n: u32, counts: &[BigUint], admit: impl Fn(u32) -> bool, min_part: u32) -> BigUint {
    expansions(n)
        .into_iter()
        .filter(|e| e.terms.iter().all(|&(k, _)| admit(k) && k >= min_part))
        .map(|e| {
            let product: BigUint = e
                .terms
                .iter()
                .map(|&(k, m)| counts[k as usize].pow(m))
                .product();
            e.weight() * product
        })
        .sum()
}

/// Connected labeled graph counts via the same recursion with `B_n` replaced
/// by the number of graphs covering an `n`-set (no isolated vertices), by
/// inclusion-exclusion. Components of size 1 cannot occur in a covering, so
/// the recursion runs over parts of size at least 2.
pub fn connected_graph_counts(max_n: u32) -> Vec<BigUint> {
    let covering = |n: u32| -> BigUint {
        // Σ_j (-1)^j C(n,j) 2^C(n-j,2), accumulated as signed difference.
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for j in 0..=n {
            let term = binomial(n, j) << (binomial(n - j, 2).try_into().unwrap_or(0u64) as usize);
            if j % 2 == 0 {
                plus += term;
            } else {
                minus += term;
            }
        }
        plus - minus
    };
    let mut conn: Vec<BigUint> = Vec::with_capacity(max_n as usize + 1);
    for n in 0..=max_n {
        if n <= 1 {
            conn.push(BigUint::one());
            continue;
        }
        let sum = expansion_sum(n, &conn, |k| k < n, 2);
        conn.push(covering(n) - sum);
    }
    conn
}

// ---------------------------------------------------------------------------
// Direct enumeration oracles

/// The basic interval `[{{1},...,{n}}, ⊤]`; its size is `B_n`.
pub fn basic_interval(n: u32) -> Result<Interval> {
    let u = Universe::new(n)?;
    let singletons =
        Antichain::normalize(u, (1..=n).map(|e| SubsetMask::from_elements([e])))?;
    Interval::new(singletons, Antichain::top(u))
}

/// Count the antichains of the full lattice one by one; feasible up to n = 5.
pub fn dedekind_enumeration(n: u32) -> Result<BigUint> {
    if n > 5 {
        return Err(Error::UnsupportedSize(format!(
            "direct enumeration of A_{n} (max n = 5)"
        )));
    }
    let mut count = 0u64;
    for_each_in_interval(&Interval::full(Universe::new(n)?), |_| count += 1)?;
    Ok(BigUint::from(count))
}

/// Per-element membership signatures inside one antichain; two elements are
/// never separated iff their signatures agree.
fn signatures(n: u32, alpha: &Antichain) -> Vec<u32> {
    (1..=n)
        .map(|e| {
            alpha
                .sets()
                .iter()
                .enumerate()
                .filter(|(_, s)| s.contains(e))
                .fold(0u32, |acc, (i, _)| acc | 1 << i)
        })
        .collect()
}

/// `D_n` by definition: antichains in the basic interval whose finest
/// never-separated partition has `n` blocks. Oracle for [`d_from_b`].
pub fn distinguishing_count_direct(n: u32) -> Result<BigUint> {
    if n > 5 {
        return Err(Error::UnsupportedSize(format!(
            "direct distinguishing count for n = {n} (max 5)"
        )));
    }
    if n == 0 {
        return Ok(BigUint::from(2u32)); // {⊥, {∅}}
    }
    let mut count = 0u64;
    for_each_in_interval(&basic_interval(n)?, |alpha| {
        let mut sigs = signatures(n, alpha);
        sigs.sort_unstable();
        sigs.dedup();
        if sigs.len() == n as usize {
            count += 1;
        }
    })?;
    Ok(BigUint::from(count))
}

/// `C_n` by definition: antichains in the basic interval whose element
/// overlap graph is connected. Oracle for [`c_from_b`].
pub fn connected_count_direct(n: u32) -> Result<BigUint> {
    if n > 5 {
        return Err(Error::UnsupportedSize(format!(
            "direct connectedness count for n = {n} (max 5)"
        )));
    }
    if n == 0 {
        return Ok(BigUint::from(2u32));
    }
    let mut count = 0u64;
    for_each_in_interval(&basic_interval(n)?, |alpha| {
        let mut dsu = Dsu::new(n as usize);
        for s in alpha.sets() {
            let mut elems = s.elements();
            if let Some(first) = elems.next() {
                for e in elems {
                    dsu.union(first as usize - 1, e as usize - 1);
                }
            }
        }
        let root = dsu.find(0);
        if (1..n as usize).all(|i| dsu.find(i) == root) {
            count += 1;
        }
    })?;
    Ok(BigUint::from(count))
}

/// Brute-force connected-graph counts over all `2^C(n,2)` labeled graphs;
/// oracle for [`connected_graph_counts`].
pub fn connected_graph_counts_bruteforce(max_n: u32) -> Vec<BigUint> {
    (0..=max_n)
        .map(|n| {
            if n <= 1 {
                return BigUint::one();
            }
            let pairs: Vec<(usize, usize)> = (0..n as usize)
                .flat_map(|i| (i + 1..n as usize).map(move |j| (i, j)))
                .collect();
            let mut count = 0u64;
            for g in 0u64..1 << pairs.len() {
                let mut dsu = Dsu::new(n as usize);
                for (b, &(i, j)) in pairs.iter().enumerate() {
                    if g >> b & 1 != 0 {
                        dsu.union(i, j);
                    }
                }
                let root = dsu.find(0);
                if (1..n as usize).all(|i| dsu.find(i) == root) {
                    count += 1;
                }
            }
            BigUint::from(count)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn stirling_and_multinomial() {
        assert_eq!(stirling2(4, 2).unwrap(), big(7));
        for n in 0..8 {
            assert_eq!(stirling2(n, n).unwrap(), big(1));
        }
        assert_eq!(multinomial(5, &[2, 2, 1]).unwrap(), big(30));
        assert!(stirling2(2, 3).is_err());
        assert!(multinomial(5, &[2, 2]).is_err());
    }

    #[test]
    fn expansions_examples() {
        let e3 = expansions(3);
        assert_eq!(e3.len(), 3);
        assert!(e3.contains(&MultisetExpansion { terms: vec![(3, 1)] }));
        assert!(e3.contains(&MultisetExpansion { terms: vec![(2, 1), (1, 1)] }));
        assert!(e3.contains(&MultisetExpansion { terms: vec![(1, 3)] }));

        assert_eq!(expansions(1), vec![MultisetExpansion { terms: vec![(1, 1)] }]);
        assert_eq!(expansions(8).len(), 22);
    }

    fn table1_a() -> Vec<BigUint> {
        [2u64, 3, 6, 20, 168, 7581, 7828354, 2414682040998]
            .iter()
            .map(|&v| big(v))
            .collect()
    }

    #[test]
    fn b_from_a_matches_table() {
        let b = b_from_a(&table1_a());
        assert_eq!(
            b,
            [2u64, 1, 2, 9, 114, 6894, 7785062, 2414627396434]
                .iter()
                .map(|&v| big(v))
                .collect::<Vec<_>>()
        );
        assert_eq!(a_from_b(&b), table1_a());
    }

    #[test]
    fn d_pipeline_matches_table() {
        let b = b_from_a(&table1_a());
        let d = d_from_b(&b);
        assert_eq!(
            d,
            [2u64, 1, 1, 5, 76, 5993, 7689745, 2414465044600]
                .iter()
                .map(|&v| big(v))
                .collect::<Vec<_>>()
        );
        assert_eq!(a_from_d(&d), table1_a());
    }

    #[test]
    fn c_pipeline_matches_table() {
        let b = b_from_a(&table1_a());
        let c = c_from_b(&b);
        assert_eq!(
            c,
            [2u64, 1, 1, 5, 84, 6348, 7743728, 2414572893530]
                .iter()
                .map(|&v| big(v))
                .collect::<Vec<_>>()
        );
        assert_eq!(b_via_connected(&c), b);
    }

    #[test]
    fn connected_graphs_match_bruteforce() {
        let fast = connected_graph_counts(5);
        assert_eq!(fast, connected_graph_counts_bruteforce(5));
        assert_eq!(fast[1], big(1));
        assert_eq!(fast[3], big(4));
        assert_eq!(fast[4], big(38));
    }

    #[test]
    fn direct_oracles_match_recursions() {
        let a: Vec<BigUint> = (0..=5).map(|n| dedekind_enumeration(n).unwrap()).collect();
        assert_eq!(a, table1_a()[..6].to_vec());
        let b = b_from_a(&a);
        let d = d_from_b(&b);
        let c = c_from_b(&b);
        for n in 0..=5u32 {
            assert_eq!(
                distinguishing_count_direct(n).unwrap(),
                d[n as usize],
                "D_{n}"
            );
            assert_eq!(connected_count_direct(n).unwrap(), c[n as usize], "C_{n}");
        }
    }

    #[test]
    fn basic_interval_sizes_match_b() {
        let memo = crate::size::SizeMemo::new();
        let b = b_from_a(&table1_a());
        for n in 0..=6u32 {
            let iv = basic_interval(n).unwrap();
            assert_eq!(
                crate::size::interval_size(&iv, &memo),
                b[n as usize],
                "B_{n}"
            );
        }
    }

    #[test]
    fn distinguishing_partition_identity() {
        // B_n = Σ_k {n k} D_k classified directly for n <= 4: count antichains
        // whose never-separated partition has exactly k blocks.
        let b = b_from_a(&table1_a());
        let d = d_from_b(&b);
        for n in 1..=4u32 {
            let mut by_blocks = vec![0u64; n as usize + 1];
            for_each_in_interval(&basic_interval(n).unwrap(), |alpha| {
                let mut sigs = signatures(n, alpha);
                sigs.sort_unstable();
                sigs.dedup();
                by_blocks[sigs.len()] += 1;
            })
            .unwrap();
            for k in 1..=n {
                assert_eq!(
                    big(by_blocks[k as usize]),
                    stirling2(n, k).unwrap() * &d[k as usize],
                    "|D_{{{n},{k}}}|"
                );
            }
        }
    }
}
