//! Pair-counting coefficients: for `ρ₁ <= ρ₂`, the number of ordered pairs
//! `(χ₁, χ₂)` in `[ρ₁, ρ₂]²` with `χ₁ ∧ χ₂ = ρ₁` and `χ₁ ∨ χ₂ = ρ₂`. The
//! coefficient has the closed form `2^c` with `c` counting interval-graph
//! components that hold at least one vertex not dominated by `ρ₁`, and it
//! yields a two-step Dedekind recursion
//! `A_{n+2} = Σ_{ρ₁<=ρ₂} |[⊥,ρ₁]| · 2^c · |[ρ₂,⊤]|`
//! that powers the larger table entries.

use crate::error::{Error, Result};
use crate::lattice::{Antichain, DownsetVector, SubsetMask, Universe};
use crate::poset::Interval;
use crate::size::{enumerate_interval, interval_size, SizeMemo};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

// ---------------------------------------------------------------------------
// Coordinate decomposition

/// Unique decomposition of an antichain over `N` along a block of
/// coordinates `N₁`: one antichain over `N ∖ N₁` per subset `P ⊆ N₁`,
/// order-reversing in `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateDecomposition {
    pub n1: SubsetMask,
    /// `(P, χ_P)` in increasing mask order of `P`.
    pub coords: Vec<(SubsetMask, Antichain)>,
}

/// `χ_P = max{X ∖ N₁ | X ∈ χ, P ⊆ X}` for every `P ⊆ N₁`.
pub fn decompose(chi: &Antichain, n1: SubsetMask) -> Result<CoordinateDecomposition> {
    let u = chi.universe();
    u.check_mask(n1)?;
    if n1 == u.full_mask() {
        return Err(Error::Precondition("the block must be a proper subset of the universe"));
    }
    let mut coords = Vec::new();
    for p in u.masks().filter(|p| p.is_subset_of(&n1)) {
        let projected = chi
            .sets()
            .iter()
            .filter(|x| p.is_subset_of(x))
            .map(|x| x.difference(&n1));
        coords.push((p, Antichain::normalize(u, projected)?));
    }
    Ok(CoordinateDecomposition { n1, coords })
}

/// Inverse of [`decompose`]: `χ = ⋁_P {P} ⊗ χ_P`.
pub fn recompose(d: &CoordinateDecomposition) -> Result<Antichain> {
    let (_, first) = d.coords.first().ok_or(Error::Precondition("empty decomposition"))?;
    let u = first.universe();
    let mut result = Antichain::bottom(u);
    for (p, chi_p) in &d.coords {
        let block = Antichain::singleton(u, *p)?;
        result = result.join(&block.direct_product(chi_p)?)?;
    }
    Ok(result)
}

/// The pair coefficient by its closed form. Returns 0 when `ρ₁ ≰ ρ₂`.
pub fn pcoeff_k2(rho1: &Antichain, rho2: &Antichain) -> Result<BigUint> {
    if !rho1.leq(rho2)? {
        return Ok(BigUint::zero());
    }
    let iv = Interval::new(rho1.clone(), rho2.clone())?;
    let graph = iv.graph();
    // Dominated vertices are always isolated; only components with a
    // non-dominated vertex contribute a free binary choice.
    let c = graph
        .components()
        .iter()
        .filter(|comp| comp.iter().any(|&i| !rho1.dominates(graph.vertices()[i])))
        .count();
    Ok(BigUint::one() << c)
}

/// The coefficient by definition, for any `k >= 1`: count assignments of a
/// `[ρ₁, ρ₂]` element to every proper nonempty `P` of an abstract `k`-set
/// `K` that are order-reversing in `P` (with `χ_∅ = ρ₂` and `χ_K = ρ₁`),
/// whose co-singleton coordinates meet to `ρ₁` and whose singleton
/// coordinates join to `ρ₂`.
pub fn pcoeff_bruteforce(rho1: &Antichain, rho2: &Antichain, k: u32) -> Result<BigUint> {
    if !(1..=4).contains(&k) {
        return Err(Error::Precondition("brute-force coefficient requires 1 <= k <= 4"));
    }
    if !rho1.leq(rho2)? {
        return Ok(BigUint::zero());
    }
    let elements = enumerate_interval(&Interval::new(rho1.clone(), rho2.clone())?)?;
    let full: u32 = (1 << k) - 1;
    let middles: Vec<u32> = (1..full).collect();
    if (elements.len() as f64).powi(middles.len() as i32) > 1e8 {
        return Err(Error::UnsupportedSize(format!(
            "brute-force coefficient over {} interval elements and {} coordinates",
            elements.len(),
            middles.len()
        )));
    }

    struct Search<'a> {
        rho1: &'a Antichain,
        rho2: &'a Antichain,
        elements: &'a [Antichain],
        middles: &'a [u32],
        full: u32,
        assigned: Vec<usize>,
        count: u64,
    }
    impl Search<'_> {
        fn coord(&self, p: u32) -> &Antichain {
            if p == 0 {
                self.rho2
            } else if p == self.full {
                self.rho1
            } else {
                let i = self.middles.iter().position(|&q| q == p).expect("middle");
                &self.elements[self.assigned[i]]
            }
        }

        fn rec(&mut self, depth: usize) -> Result<()> {
            if depth == self.middles.len() {
                let mut meet = self.rho2.clone();
                let mut join = self.rho1.clone();
                for bit in 0..self.full.count_ones() {
                    meet = meet.meet(self.coord(self.full & !(1 << bit)))?;
                    join = join.join(self.coord(1 << bit))?;
                }
                if meet == *self.rho1 && join == *self.rho2 {
                    self.count += 1;
                }
                return Ok(());
            }
            let p = self.middles[depth];
            for e in 0..self.elements.len() {
                self.assigned[depth] = e;
                // Order reversal against every coordinate already fixed.
                let chi_p = &self.elements[e];
                let mut ok = true;
                for &q in &self.middles[..depth] {
                    let chi_q = self.coord(q);
                    if q & !p == 0 && !chi_p.leq(chi_q)? {
                        ok = false;
                    }
                    if p & !q == 0 && !chi_q.leq(chi_p)? {
                        ok = false;
                    }
                    if !ok {
                        break;
                    }
                }
                if ok {
                    self.rec(depth + 1)?;
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        rho1,
        rho2,
        elements: &elements,
        middles: &middles,
        full,
        assigned: vec![0; middles.len()],
        count: 0,
    };
    search.rec(0)?;
    Ok(BigUint::from(search.count))
}

// ---------------------------------------------------------------------------
// Downset words
//
// For n <= 6 a downset fits one u64 (bit m set iff mask m is dominated);
// domination is bit subsetting, meet is AND, join is OR. The two-step
// recursion works in this representation throughout.

fn full_down_word(n: u32) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

fn permute_word(word: u64, table: &[u8; 256]) -> u64 {
    let mut out = 0u64;
    let mut rest = word;
    while rest != 0 {
        let m = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1 << table[m];
    }
    out
}

fn canonical_word(word: u64, tables: &[[u8; 256]]) -> u64 {
    tables
        .iter()
        .map(|t| permute_word(word, t))
        .min()
        .expect("at least the identity")
}

fn antichain_from_word(u: Universe, word: u64) -> Antichain {
    let bits = crate::bitset::Bits256::from_words([word, 0, 0, 0]);
    let d = DownsetVector::from_bits(u, bits).expect("canonical words are downsets");
    Antichain::from_downset(&d)
}

/// Level-indexed DFS state over the downset word of an upper bound `β`.
struct WordDfs {
    /// Members of each popcount level, as raw masks.
    levels: Vec<Vec<u8>>,
    /// `dn[i][j]`: index bitmask over level `i-1` of the immediate subsets
    /// of member `j` of level `i` (all present, the word is a downset).
    dn: Vec<Vec<u64>>,
}

impl WordDfs {
    fn build(word: u64) -> WordDfs {
        let mut levels: Vec<Vec<u8>> = Vec::new();
        let mut rest = word;
        while rest != 0 {
            let m = rest.trailing_zeros() as u8;
            rest &= rest - 1;
            let l = m.count_ones() as usize;
            while levels.len() <= l {
                levels.push(Vec::new());
            }
            levels[l].push(m);
        }
        let dn = levels
            .iter()
            .enumerate()
            .map(|(i, level)| {
                assert!(level.len() <= 64, "level too wide for a word walk");
                let below: &[u8] = if i == 0 { &[] } else { &levels[i - 1] };
                level
                    .iter()
                    .map(|&x| {
                        let mut bits = 0u64;
                        for (k, &y) in below.iter().enumerate() {
                            if y & !x == 0 {
                                bits |= 1 << k;
                            }
                        }
                        bits
                    })
                    .collect()
            })
            .collect();
        WordDfs { levels, dn }
    }

    fn up(&self, i: usize, s: u64) -> u64 {
        if i + 1 >= self.levels.len() {
            return 0;
        }
        let mut out = 0u64;
        for (j, &shadow) in self.dn[i + 1].iter().enumerate() {
            if shadow & !s == 0 {
                out |= 1 << j;
            }
        }
        out
    }

    fn word_of(&self, i: usize, s: u64) -> u64 {
        let mut acc = 0u64;
        let mut rest = s;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc |= 1 << self.levels[i][j];
        }
        acc
    }

    fn rec(&self, i: usize, allowed: u64, acc: u64, f: &mut impl FnMut(u64)) {
        if i == self.levels.len() {
            f(acc);
            return;
        }
        let mut s = allowed;
        loop {
            self.rec(i + 1, self.up(i, s), acc | self.word_of(i, s), f);
            if s == 0 {
                break;
            }
            s = (s - 1) & allowed;
        }
    }
}

/// Visit the downset word of every element of `[⊥, β]`, where `word` is the
/// downset word of `β` (n <= 6).
pub fn for_each_subdownset(word: u64, mut f: impl FnMut(u64)) {
    let dfs = WordDfs::build(word);
    let allowed = if dfs.levels.is_empty() { 0 } else { (1u64 << dfs.levels[0].len()) - 1 };
    dfs.rec(0, allowed, 0, &mut f);
}

// ---------------------------------------------------------------------------
// Dedekind numbers through the pair recursion

struct Job {
    word: u64,
    /// Orbit size of the canonical `ρ₂` under relabeling.
    weight: u64,
    /// `|[ρ₂, ⊤]|`, via the dual.
    upper_size: u64,
    vertices: Vec<u8>,
    /// `(i, j, i ∩ j)` for each vertex pair.
    pair_meets: Vec<(u8, u8, u8)>,
}

/// `2^c` exponent for `ρ₁` given by its downset word, against one job's
/// vertex data. Dominated vertices are isolated components and are excluded.
fn component_exponent(job: &Job, word: u64, parent: &mut [u8; 32]) -> u32 {
    let len = job.vertices.len();
    for (i, p) in parent.iter_mut().take(len).enumerate() {
        *p = i as u8;
    }
    fn find(parent: &mut [u8; 32], mut i: u8) -> u8 {
        while parent[i as usize] != i {
            parent[i as usize] = parent[parent[i as usize] as usize];
            i = parent[i as usize];
        }
        i
    }
    for &(i, j, meet) in &job.pair_meets {
        if word >> meet & 1 == 0 {
            let (ri, rj) = (find(parent, i), find(parent, j));
            if ri != rj {
                parent[ri as usize] = rj;
            }
        }
    }
    let mut components = 0u32;
    let mut dominated = 0u32;
    for (i, &v) in job.vertices.iter().enumerate() {
        if find(parent, i as u8) == i as u8 {
            components += 1;
        }
        if word >> v & 1 != 0 {
            dominated += 1;
        }
    }
    components - dominated
}

fn canonical_words(words: &[u64], tables: &[[u8; 256]], threads: usize) -> Vec<u64> {
    let mut out = vec![0u64; words.len()];
    let chunk = words.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        for (ws, os) in words.chunks(chunk).zip(out.chunks_mut(chunk)) {
            s.spawn(move || {
                for (w, o) in ws.iter().zip(os.iter_mut()) {
                    *o = canonical_word(*w, tables);
                }
            });
        }
    });
    out
}

/// `A_{n+k}` by the coefficient recursion over `A_n` (k = 2 only), with the
/// outer sum folded by relabeling symmetry and split over a work queue. All
/// partial sums are exact integers, so the result does not depend on the
/// thread count.
pub fn dedekind_pcoeff(n: u32, k: u32, threads: usize) -> Result<BigUint> {
    dedekind_pcoeff_with_progress(n, k, threads, &|_, _| {})
}

/// [`dedekind_pcoeff`] with a progress callback `(units done, units total)`
/// invoked from worker threads after each finished work unit.
pub fn dedekind_pcoeff_with_progress(
    n: u32,
    k: u32,
    threads: usize,
    progress: &(dyn Fn(usize, usize) + Sync),
) -> Result<BigUint> {
    if k != 2 {
        return Err(Error::UnsupportedSize(format!(
            "fast coefficient recursion implemented for k = 2 only, got k = {k}"
        )));
    }
    if n > 6 {
        return Err(Error::UnsupportedSize(format!(
            "coefficient recursion requires n <= 6 (A_8), got n = {n}"
        )));
    }
    let threads = threads.max(1);
    let u = Universe::new(n)?;
    let tables = u.permutation_tables()?;

    let mut words = Vec::new();
    for_each_subdownset(full_down_word(n), |w| words.push(w));

    let canon = canonical_words(&words, tables, threads);
    let mut orbit: HashMap<u64, u64> = HashMap::new();
    for &c in &canon {
        *orbit.entry(c).or_insert(0) += 1;
    }
    let mut reps: Vec<u64> = orbit.keys().copied().collect();
    reps.sort_unstable();

    let memo = SizeMemo::new();
    let canon_size: HashMap<u64, u64> = reps
        .iter()
        .map(|&w| {
            let a = antichain_from_word(u, w);
            let size = interval_size(
                &Interval::new(Antichain::bottom(u), a).expect("⊥ is below everything"),
                &memo,
            );
            (w, size.to_u64().expect("lower-interval sizes fit u64 for n <= 6"))
        })
        .collect();

    let size_of: HashMap<u64, u64> = words
        .iter()
        .zip(&canon)
        .map(|(&w, c)| (w, canon_size[c]))
        .collect();

    let jobs: Vec<Job> = reps
        .iter()
        .map(|&w| {
            let a = antichain_from_word(u, w);
            let dual_word = a.dual().to_downset().bits().words()[0];
            let vertices: Vec<u8> = a.sets().iter().map(|s| s.bits()).collect();
            let mut pair_meets = Vec::new();
            for i in 0..vertices.len() {
                for j in i + 1..vertices.len() {
                    pair_meets.push((i as u8, j as u8, vertices[i] & vertices[j]));
                }
            }
            Job {
                word: w,
                weight: orbit[&w],
                upper_size: canon_size[&canonical_word(dual_word, tables)],
                vertices,
                pair_meets,
            }
        })
        .collect();

    let next = AtomicUsize::new(0);
    let done = AtomicUsize::new(0);
    let total = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                s.spawn(|| {
                    let mut partial = BigUint::zero();
                    let mut parent = [0u8; 32];
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(job) = jobs.get(i) else { break };
                        let mut inner: u128 = 0;
                        for_each_subdownset(job.word, |v| {
                            let c = component_exponent(job, v, &mut parent);
                            inner += (size_of[&v] as u128) << c;
                        });
                        partial +=
                            BigUint::from(job.weight) * job.upper_size * BigUint::from(inner);
                        progress(done.fetch_add(1, Ordering::Relaxed) + 1, jobs.len());
                    }
                    partial
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .sum()
    });
    Ok(total)
}

/// The same recursion without the symmetry fold, summed pair by pair over
/// the whole lattice; cross-check for small n.
pub fn dedekind_pcoeff_nosym(n: u32, k: u32) -> Result<BigUint> {
    if k != 2 {
        return Err(Error::UnsupportedSize(format!(
            "unfolded recursion implemented for k = 2 only, got k = {k}"
        )));
    }
    if n > 3 {
        return Err(Error::UnsupportedSize(format!(
            "unfolded recursion limited to n <= 3, got n = {n}"
        )));
    }
    let u = Universe::new(n)?;
    let all = enumerate_interval(&Interval::full(u))?;
    let memo = SizeMemo::new();
    let lower: Vec<BigUint> = all
        .iter()
        .map(|a| {
            interval_size(
                &Interval::new(Antichain::bottom(u), a.clone()).expect("⊥ is below everything"),
                &memo,
            )
        })
        .collect();
    let mut total = BigUint::zero();
    for rho2 in &all {
        let upper = interval_size(
            &Interval::new(rho2.clone(), Antichain::top(u)).expect("⊤ is above everything"),
            &memo,
        );
        for (rho1, low) in all.iter().zip(&lower) {
            if rho1.leq(rho2)? {
                total += low * pcoeff_k2(rho1, rho2)? * &upper;
            }
        }
    }
    Ok(total)
}
