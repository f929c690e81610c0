//! Exact interval cardinalities: the level decomposition of an interval
//! poset, the powers-of-two summation formulas (in both parities), a
//! depth-first enumeration of interval elements, and a memoized dispatcher
//! that applies graph decomposition and duality before falling back to the
//! leveled sum.

use crate::error::{Error, Result};
use crate::lattice::{Antichain, SubsetMask};
use crate::poset::{Interval, IntervalPoset};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

/// The poset members of an interval partitioned by cardinality. Levels run
/// from the smallest member size `l0` upward; empty levels inside the range
/// are kept so indices stay aligned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelStructure {
    pub l0: u32,
    pub levels: Vec<Vec<SubsetMask>>,
}

/// Which of the two equivalent summation formulas to evaluate.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    /// Pick the parity whose branching levels hold fewer masks.
    Auto,
}

/// Partition the interval poset by set size. Errors on an empty poset
/// (`bottom = top`); the dispatcher handles that case.
pub fn level_sets(iv: &Interval) -> Result<LevelStructure> {
    if !iv.bottom().leq(iv.top())? {
        return Err(Error::BottomNotBelowTop);
    }
    let poset = iv.poset();
    levels_of_poset(&poset).ok_or(Error::EmptyPoset)
}

fn levels_of_poset(poset: &IntervalPoset) -> Option<LevelStructure> {
    let sizes: Vec<u32> = poset.masks().map(|m| m.len()).collect();
    let l0 = *sizes.iter().min()?;
    let lmax = *sizes.iter().max().expect("nonempty");
    let mut levels = vec![Vec::new(); (lmax - l0 + 1) as usize];
    for m in poset.masks() {
        levels[(m.len() - l0) as usize].push(m);
    }
    Some(LevelStructure { l0, levels })
}

impl LevelStructure {
    fn level(&self, i: usize) -> &[SubsetMask] {
        self.levels.get(i).map_or(&[], Vec::as_slice)
    }
}

/// `χ⁺` with respect to the interval: the masks one level up all of whose
/// immediate subsets inside the poset lie in `χ`.
pub fn level_up(chi: &[SubsetMask], level: usize, ls: &LevelStructure) -> Result<Vec<SubsetMask>> {
    check_in_level(chi, level, ls)?;
    let chi_set: Vec<SubsetMask> = chi.to_vec();
    Ok(ls
        .level(level + 1)
        .iter()
        .filter(|x| {
            x.immediate_subsets()
                .filter(|y| ls.level(level).contains(y))
                .all(|y| chi_set.contains(&y))
        })
        .copied()
        .collect())
}

/// `χ⁻`: the union over `X ∈ χ` of `X⁻` intersected with the level below.
pub fn level_down(chi: &[SubsetMask], level: usize, ls: &LevelStructure) -> Result<Vec<SubsetMask>> {
    check_in_level(chi, level, ls)?;
    if level == 0 {
        return Ok(Vec::new());
    }
    let mut out: Vec<SubsetMask> = chi
        .iter()
        .flat_map(|x| x.immediate_subsets())
        .filter(|y| ls.level(level - 1).contains(y))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn check_in_level(chi: &[SubsetMask], level: usize, ls: &LevelStructure) -> Result<()> {
    if chi.iter().all(|x| ls.level(level).contains(x)) {
        Ok(())
    } else {
        Err(Error::Precondition("masks outside the requested level"))
    }
}

// ---------------------------------------------------------------------------
// Leveled summation

/// Per-level adjacency in index-bitmask form; levels are narrow enough for
/// `u128` words (the widest possible level has 70 masks).
struct LevelCtx {
    widths: Vec<u32>,
    /// `dn[i][j]`: bitmask over level `i - 1` of the immediate subsets (in
    /// the poset) of member `j` of level `i`.
    dn: Vec<Vec<u128>>,
}

impl LevelCtx {
    fn build(ls: &LevelStructure) -> LevelCtx {
        let widths = ls.levels.iter().map(|l| l.len() as u32).collect();
        let mut dn = Vec::with_capacity(ls.levels.len());
        for (i, level) in ls.levels.iter().enumerate() {
            assert!(level.len() <= 128, "level too wide for subset iteration");
            let below: &[SubsetMask] = if i == 0 { &[] } else { &ls.levels[i - 1] };
            dn.push(
                level
                    .iter()
                    .map(|x| {
                        let mut bits = 0u128;
                        for (k, y) in below.iter().enumerate() {
                            if y.is_subset_of(x) && y.len() + 1 == x.len() {
                                bits |= 1 << k;
                            }
                        }
                        bits
                    })
                    .collect(),
            );
        }
        LevelCtx { widths, dn }
    }

    fn len(&self) -> usize {
        self.widths.len()
    }

    /// Index bitmask of `χ⁺` at level `i + 1` given `χ` at level `i`.
    fn up(&self, i: usize, chi: u128) -> u128 {
        if i + 1 >= self.len() {
            return 0;
        }
        let mut out = 0u128;
        for (j, &shadow) in self.dn[i + 1].iter().enumerate() {
            if shadow & !chi == 0 {
                out |= 1 << j;
            }
        }
        out
    }

    /// `|χ⁻|` for `χ` at level `i`.
    fn down_count(&self, i: usize, chi: u128) -> u32 {
        let mut shadow = 0u128;
        let mut rest = chi;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            shadow |= self.dn[i][j];
        }
        shadow.count_ones()
    }
}

/// Alternating-level recursion shared by both parities: `chi` sits at level
/// `i`, and the sum branches over admissible choices two levels up.
fn leveled_sum(
    ctx: &LevelCtx,
    i: usize,
    chi: u128,
    memo: &mut HashMap<(usize, u128), BigUint>,
) -> BigUint {
    if i + 1 >= ctx.len() {
        return BigUint::one();
    }
    if let Some(v) = memo.get(&(i, chi)) {
        return v.clone();
    }
    let up1 = ctx.up(i, chi);
    let free = up1.count_ones();
    let result = if i + 2 >= ctx.len() {
        BigUint::one() << free
    } else {
        let up2 = ctx.up(i + 1, up1);
        let mut sum = BigUint::zero();
        let mut s = up2;
        loop {
            let forced = ctx.down_count(i + 2, s);
            sum += leveled_sum(ctx, i + 2, s, memo) << (free - forced);
            if s == 0 {
                break;
            }
            s = (s - 1) & up2;
        }
        sum
    };
    memo.insert((i, chi), result.clone());
    result
}

fn size_of_levels(ls: &LevelStructure, parity: Parity) -> BigUint {
    let ctx = LevelCtx::build(ls);
    let parity = match parity {
        Parity::Auto => {
            let even: u32 = ctx.widths.iter().step_by(2).sum();
            let odd: u32 = ctx.widths.iter().skip(1).step_by(2).sum();
            if odd < even {
                Parity::Odd
            } else {
                Parity::Even
            }
        }
        p => p,
    };
    let mut memo = HashMap::new();
    match parity {
        Parity::Even => {
            let lambda0 = (1u128 << ctx.widths[0]) - 1;
            let mut sum = BigUint::zero();
            let mut s = lambda0;
            loop {
                sum += leveled_sum(&ctx, 0, s, &mut memo);
                if s == 0 {
                    break;
                }
                s = (s - 1) & lambda0;
            }
            sum
        }
        Parity::Odd => {
            let w0 = ctx.widths[0];
            if ctx.len() == 1 {
                return BigUint::one() << w0;
            }
            let lambda1 = (1u128 << ctx.widths[1]) - 1;
            let mut sum = BigUint::zero();
            let mut s = lambda1;
            loop {
                let forced = ctx.down_count(1, s);
                sum += leveled_sum(&ctx, 1, s, &mut memo) << (w0 - forced);
                if s == 0 {
                    break;
                }
                s = (s - 1) & lambda1;
            }
            sum
        }
        Parity::Auto => unreachable!(),
    }
}

/// Evaluate the leveled summation formula for `|[bottom, top]|`. Both
/// parities produce the same value; `bottom ≰ top` gives 0 and a point
/// interval gives 1.
pub fn size_leveled(iv: &Interval, parity: Parity) -> BigUint {
    if iv.is_empty() {
        return BigUint::zero();
    }
    match levels_of_poset(&iv.poset()) {
        None => BigUint::one(),
        Some(ls) => size_of_levels(&ls, parity),
    }
}

// ---------------------------------------------------------------------------
// Enumeration

/// Visit every element of `[bottom, top]` exactly once, by depth-first
/// choice of one level set per level.
pub fn for_each_in_interval(iv: &Interval, mut f: impl FnMut(&Antichain)) -> Result<()> {
    if iv.is_empty() {
        return Ok(());
    }
    let u = iv.universe();
    let bottom_sets: Vec<SubsetMask> = iv.bottom().sets().to_vec();
    let ls = match levels_of_poset(&iv.poset()) {
        None => {
            f(iv.bottom());
            return Ok(());
        }
        Some(ls) => ls,
    };
    let ctx = LevelCtx::build(&ls);

    #[allow(clippy::too_many_arguments)]
    fn rec(
        u: crate::lattice::Universe,
        ls: &LevelStructure,
        ctx: &LevelCtx,
        i: usize,
        allowed: u128,
        chosen: &mut Vec<SubsetMask>,
        bottom_sets: &[SubsetMask],
        f: &mut impl FnMut(&Antichain),
    ) {
        if i == ctx.len() {
            let element =
                Antichain::normalize(u, bottom_sets.iter().chain(chosen.iter()).copied())
                    .expect("masks are in range");
            f(&element);
            return;
        }
        let mut s = allowed;
        loop {
            let keep = chosen.len();
            let mut rest = s;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                chosen.push(ls.levels[i][j]);
            }
            rec(u, ls, ctx, i + 1, ctx.up(i, s), chosen, bottom_sets, f);
            chosen.truncate(keep);
            if s == 0 {
                break;
            }
            s = (s - 1) & allowed;
        }
    }

    let lambda0 = (1u128 << ctx.widths[0]) - 1;
    let mut chosen = Vec::new();
    rec(u, &ls, &ctx, 0, lambda0, &mut chosen, &bottom_sets, &mut f);
    Ok(())
}

/// Collect the elements of an interval; intended for sizes up to ~10^7.
pub fn enumerate_interval(iv: &Interval) -> Result<Vec<Antichain>> {
    let mut out = Vec::new();
    for_each_in_interval(iv, |a| out.push(a.clone()))?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Memoized dispatcher

/// Shared interval-size memo, keyed by the canonical form of the reduced
/// interval poset. Concurrent reads, exclusive inserts; values are unique
/// per key so thread interleaving cannot change results.
#[derive(Default)]
pub struct SizeMemo {
    map: RwLock<HashMap<(u8, [u64; 4]), BigUint>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

/// Posets smaller than this bypass the memo; canonicalization would cost
/// more than the direct sum.
const MEMO_MIN_POSET: u32 = 6;

impl SizeMemo {
    pub fn new() -> SizeMemo {
        SizeMemo::default()
    }

    pub fn stats(&self) -> MemoStats {
        MemoStats {
            entries: self.map.read().unwrap().len(),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct MemoStats {
    pub entries: usize,
    pub hits: u64,
    pub misses: u64,
}

/// `|[bottom, top]|`, exact. Applies, in order: graph decomposition, the
/// duality `|[β,⊤]| = |[⊥, dual β]|`, the canonical-form memo, and finally
/// the leveled sum. The size of an interval depends only on its underlying
/// poset, which is what the memo is keyed on.
pub fn interval_size(iv: &Interval, memo: &SizeMemo) -> BigUint {
    if iv.is_empty() {
        return BigUint::zero();
    }
    if iv.is_point() {
        return BigUint::one();
    }
    let poset = iv.poset();
    if poset.is_empty() {
        return BigUint::one();
    }

    let parts = iv.graph_decompose().expect("valid interval");
    if parts.len() > 1 {
        return parts.iter().map(|p| interval_size(p, memo)).product();
    }

    // An upper interval is cheaper through its dual lower interval: the
    // branching happens near the small end of the poset.
    let u = iv.universe();
    if iv.top().is_top() && !iv.bottom().is_bottom() && u.n() > 0 {
        let dual_iv = Interval::new(Antichain::bottom(u), iv.bottom().dual())
            .expect("⊥ is below everything");
        return interval_size(&dual_iv, memo);
    }

    let key = if poset.len() >= MEMO_MIN_POSET && u.n() <= 7 {
        let key = (u.n() as u8, poset.canonical_key().expect("n <= 7"));
        if let Some(v) = memo.map.read().unwrap().get(&key) {
            memo.hits.fetch_add(1, Ordering::Relaxed);
            return v.clone();
        }
        memo.misses.fetch_add(1, Ordering::Relaxed);
        Some(key)
    } else {
        None
    };

    let ls = levels_of_poset(&poset).expect("nonempty poset");
    let result = size_of_levels(&ls, Parity::Auto);
    if let Some(key) = key {
        memo.map.write().unwrap().insert(key, result.clone());
    }
    result
}

/// Convenience wrapper for a (bottom, top) pair that may be out of order.
pub fn interval_size_pair(bottom: &Antichain, top: &Antichain, memo: &SizeMemo) -> Result<BigUint> {
    if !bottom.leq(top)? {
        return Ok(BigUint::zero());
    }
    Ok(interval_size(
        &Interval::new(bottom.clone(), top.clone())?,
        memo,
    ))
}
