//! Exact counts for the `2 x n` rectangle.
//!
//! A multiset `M` of `1 x k` blocks tiles `2 x n` exactly when either some
//! sub-multiset of `M` sums to `n` (two rows), or `M` holds a 2 and `M` minus
//! that 2 has a sub-multiset summing to `n - 1` (one vertical domino, the rows
//! meeting on either side of it). Two vertical dominoes can always be turned
//! into two horizontal ones, so one domino is the most that is ever needed.
//!
//! Counting enumerates the multisets of parts `>= 3` with their subset-sum
//! bit vector. The parts 1 and 2 are then settled without enumeration: the
//! subsums of `c2` twos and `c1` ones are every integer in `0..=2*c2+c1` when
//! `c1 >= 1`, and the even ones otherwise.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bits::{self, BitVec};
use crate::partcore::{
    convolve, nuclear_q_table, partitions_iter, two_colored_q2_table, Natural, Partition, PartitionTable,
};

/// Which `1 x k` block lengths may be used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartSet {
    All,
    /// Lengths `1..=k`.
    UpTo(u32),
    /// An explicit set of lengths.
    Only(Vec<u32>),
}

impl PartSet {
    fn allows(&self, part: u32) -> bool {
        match self {
            PartSet::All => part >= 1,
            PartSet::UpTo(k) => (1..=*k).contains(&part),
            PartSet::Only(v) => v.contains(&part),
        }
    }
}

/// Configuration of a one-row-block count on a `2 x n` strip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile2Config {
    pub n: u32,
    pub allowed_parts: Option<Vec<u32>>,
}

impl Tile2Config {
    pub fn new(n: u32) -> Self {
        Tile2Config { n, allowed_parts: None }
    }

    pub fn with_parts(n: u32, parts: Vec<u32>) -> crate::Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(crate::error::invalid("allowed parts must be nonempty and positive"));
        }
        Ok(Tile2Config { n, allowed_parts: Some(parts) })
    }

    pub fn count(&self) -> Natural {
        let set = match &self.allowed_parts {
            None => PartSet::All,
            Some(v) => PartSet::Only(v.clone()),
        };
        Natural::from(TileCounter::new(self.n, set).count())
    }
}

/// A top-level slice of the enumeration, for splitting work across threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// The multiset with no part `>= 3`.
    NoBigPart,
    /// Multisets whose largest part `>= 3` is `big_parts()[index]`.
    Largest(usize),
}

/// Counts multisets of allowed `1 x k` blocks that tile `2 x n`.
#[derive(Debug, Clone)]
pub struct TileCounter {
    n: usize,
    big: Vec<usize>,
    has1: bool,
    has2: bool,
    words: usize,
}

impl TileCounter {
    pub fn new(n: u32, parts: PartSet) -> Self {
        let n = n as usize;
        // a 1 x k block with k > n never fits
        let big: Vec<usize> = (3..=n).rev().filter(|&k| parts.allows(k as u32)).collect();
        TileCounter {
            n,
            big,
            has1: parts.allows(1),
            has2: parts.allows(2),
            words: bits::words_for(n + 1),
        }
    }

    pub fn big_parts(&self) -> &[usize] {
        &self.big
    }

    pub fn branches(&self) -> Vec<Branch> {
        let mut out = vec![Branch::NoBigPart];
        out.extend((0..self.big.len()).map(Branch::Largest));
        out
    }

    pub fn count(&self) -> u128 {
        self.branches().into_iter().map(|b| self.count_branch(b)).sum()
    }

    pub fn count_branch(&self, branch: Branch) -> u128 {
        let w = self.words;
        let mut root = vec![0u64; w];
        root[0] = 1;
        match branch {
            Branch::NoBigPart => self.weight(&root, 0),
            Branch::Largest(i) => {
                let part = self.big[i];
                if part > 2 * self.n {
                    return 0;
                }
                let mut stack = vec![0u64; w * (2 * self.n / 3 + 2)];
                stack[..w].copy_from_slice(&root);
                bits::shl_or(&mut stack[..w], part, self.n + 1);
                self.descend(&mut stack, 0, part, i)
            }
        }
    }

    // Node at `depth` holds a multiset with sum `sum` whose smallest big part
    // is big[min_index]; its own weight plus all extensions by parts <= that.
    fn descend(&self, stack: &mut [u64], depth: usize, sum: usize, min_index: usize) -> u128 {
        let w = self.words;
        let mut total = self.weight(&stack[depth * w..(depth + 1) * w], sum);
        for i in min_index..self.big.len() {
            let part = self.big[i];
            if sum + part > 2 * self.n {
                continue;
            }
            let (head, tail) = stack.split_at_mut((depth + 1) * w);
            let child = &mut tail[..w];
            child.copy_from_slice(&head[depth * w..]);
            bits::shl_or(child, part, self.n + 1);
            total += self.descend(stack, depth + 1, sum + part, i);
        }
        total
    }

    // Number of ways to complete the big-part multiset with 1s and 2s into a
    // tileable multiset of total 2n.
    fn weight(&self, sums: &[u64], big_sum: usize) -> u128 {
        let n = self.n;
        let r = 2 * n - big_sum;
        let hit = bits::any_in(sums, n.saturating_sub(r), n);
        match (self.has1, self.has2) {
            (true, true) => {
                if hit {
                    (r / 2 + 1) as u128
                } else {
                    0
                }
            }
            (true, false) => hit as u128,
            (false, true) => (r.is_multiple_of(2) && hit) as u128,
            (false, false) => (r == 0 && hit) as u128,
        }
    }
}

/// Subset-sum profile of a single partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsumProfile {
    partition: Partition,
    achievable: BitVec,
}

impl SubsumProfile {
    pub fn new(partition: Partition) -> Self {
        let total = partition.total() as usize;
        let mut achievable = BitVec::unit(total + 1);
        for &p in partition.parts() {
            achievable.add_part(p as usize);
        }
        SubsumProfile { partition, achievable }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn achievable(&self) -> &BitVec {
        &self.achievable
    }

    pub fn has_subsum(&self, s: u64) -> bool {
        s <= self.partition.total() && self.achievable.get(s as usize)
    }

    pub fn is_symmetric(&self) -> bool {
        let t = self.partition.total() as usize;
        (0..=t).all(|s| self.achievable.get(s) == self.achievable.get(t - s))
    }
}

/// Whether a multiset of `1 x k` blocks (a partition of `2n`) tiles `2 x n`.
pub fn tileable(partition: &Partition, n: u64) -> bool {
    if partition.total() != 2 * n {
        return false;
    }
    if SubsumProfile::new(partition.clone()).has_subsum(n) {
        return true;
    }
    if n == 0 {
        return false;
    }
    let mut parts = partition.parts().to_vec();
    match parts.iter().position(|&p| p == 2) {
        Some(i) => {
            parts.remove(i);
            SubsumProfile::new(Partition::new(parts)).has_subsum(n - 1)
        }
        None => false,
    }
}

/// `p~(2,n)`: multisets of `1 x k` blocks that tile `2 x n`.
pub fn p_tilde(n: u32) -> Natural {
    Natural::from(TileCounter::new(n, PartSet::All).count())
}

pub fn p_tilde_table(max: u32) -> Vec<Natural> {
    (0..=max).map(p_tilde).collect()
}

/// `p~(2,n)` by deduplicating unions of two row partitions of `n`, and of two
/// row partitions of `n - 1` plus a vertical domino.
pub fn p_tilde_pairs(n: u32) -> Natural {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut add_pairs = |len: u32, extra: Option<u32>| {
        let rows: Vec<Partition> = partitions_iter(len, len.max(1)).collect();
        for (i, a) in rows.iter().enumerate() {
            for b in &rows[i..] {
                let mut m: Vec<u32> = a.parts().iter().chain(b.parts()).copied().chain(extra).collect();
                m.sort_unstable();
                seen.insert(m);
            }
        }
    };
    add_pairs(n, None);
    if n >= 1 {
        add_pairs(n - 1, Some(2));
    }
    Natural::from(seen.len())
}

/// `R(N, a)`: partitions of `N` with no sub-multiset summing to `a`.
///
/// Every partition is visited once: the DFS walks the parts `>= 2` and the
/// remainder is filled with ones, which adds every shift in `0..=rest`.
pub fn r_no_subsum(total: u32, target: u32) -> Natural {
    Natural::from(NoSubsumCounter::new(total, target).count())
}

/// Streaming counter behind [`r_no_subsum`], split by largest part.
#[derive(Debug, Clone)]
pub struct NoSubsumCounter {
    total: usize,
    target: usize,
    words: usize,
}

impl NoSubsumCounter {
    pub fn new(total: u32, target: u32) -> Self {
        assert!(target <= total, "target must not exceed the total");
        NoSubsumCounter {
            total: total as usize,
            target: target as usize,
            words: bits::words_for(target as usize + 1),
        }
    }

    /// Largest-part values `>= 2`, plus 1 for the all-ones partition.
    pub fn branches(&self) -> Vec<usize> {
        (1..=self.total.max(1)).rev().collect()
    }

    pub fn count(&self) -> u128 {
        self.branches().into_iter().map(|b| self.count_branch(b)).sum()
    }

    pub fn count_branch(&self, largest: usize) -> u128 {
        let w = self.words;
        let mut stack = vec![0u64; w * (self.total / 2 + 2)];
        stack[0] = 1;
        if largest <= 1 {
            return self.leaf(&stack[..w], 0);
        }
        if largest > self.total {
            return 0;
        }
        bits::shl_or(&mut stack[..w], largest, self.target + 1);
        self.descend(&mut stack, 0, largest, largest)
    }

    fn descend(&self, stack: &mut [u64], depth: usize, sum: usize, max_part: usize) -> u128 {
        let w = self.words;
        let mut count = self.leaf(&stack[depth * w..(depth + 1) * w], sum);
        for part in (2..=max_part.min(self.total - sum)).rev() {
            let (head, tail) = stack.split_at_mut((depth + 1) * w);
            let child = &mut tail[..w];
            child.copy_from_slice(&head[depth * w..]);
            bits::shl_or(child, part, self.target + 1);
            count += self.descend(stack, depth + 1, sum + part, part);
        }
        count
    }

    fn leaf(&self, sums: &[u64], sum: usize) -> u128 {
        let ones = self.total - sum;
        (!bits::any_in(sums, self.target.saturating_sub(ones), self.target)) as u128
    }
}

/// `p(2,n) = sum_i q(i) p~(2, n-i)`.
pub fn p2_table(max: u32) -> Vec<Natural> {
    p2_from_tilde(&p_tilde_table(max))
}

/// Combines a `p~(2, 0..)` table with the nuclear counts.
pub fn p2_from_tilde(tilde: &[Natural]) -> Vec<Natural> {
    if tilde.is_empty() {
        return Vec::new();
    }
    let q = nuclear_q_table(tilde.len() - 1);
    convolve(&q, tilde)
}

pub fn p2(n: u32) -> Natural {
    p2_table(n).pop().expect("table is nonempty")
}

fn signed(v: &Natural) -> BigInt {
    BigInt::from_biguint(Sign::Plus, v.clone())
}

fn unsigned(v: BigInt) -> Natural {
    assert!(!v.is_negative(), "count went negative");
    v.to_biguint().expect("non-negative")
}

fn q2_shift(q2: &[Natural], n: usize, shift: usize) -> BigInt {
    n.checked_sub(shift).map(|i| signed(&q2[i])).unwrap_or_default()
}

/// `S(0..=max)`: coefficients of `P(x)^2 (1-x)(1-x^2)`.
pub fn s_table(max: usize) -> Vec<Natural> {
    let q2 = two_colored_q2_table(max);
    (0..=max)
        .map(|n| unsigned(q2_shift(&q2, n, 0) - q2_shift(&q2, n, 1) - q2_shift(&q2, n, 2) + q2_shift(&q2, n, 3)))
        .collect()
}

pub fn s_count(n: usize) -> Natural {
    s_table(n).pop().expect("table is nonempty")
}

/// `T(0..=max)`: coefficients of `P(x)^2 (1-x^2)`.
pub fn t_table(max: usize) -> Vec<Natural> {
    let q2 = two_colored_q2_table(max);
    (0..=max).map(|n| unsigned(q2_shift(&q2, n, 0) - q2_shift(&q2, n, 2))).collect()
}

pub fn t_count(n: usize) -> Natural {
    t_table(n).pop().expect("table is nonempty")
}

/// `T(n)` from a partition table in `O(n)` multiplications.
pub fn t_count_at(n: usize, p: &PartitionTable) -> Natural {
    let q2 = |m: usize| crate::partcore::convolve_at(p.values(), p.values(), m);
    if n < 2 {
        q2(n)
    } else {
        q2(n) - q2(n - 2)
    }
}

/// Running sums `S(0) + ... + S(n)`, which must reproduce `T(n)`.
pub fn s_partial_sums(max: usize) -> Vec<Natural> {
    let mut acc = Natural::zero();
    s_table(max)
        .into_iter()
        .map(|s| {
            acc += s;
            acc.clone()
        })
        .collect()
}

/// Outcome of running the weighted `S(n)` recurrence against the series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SRecurrenceCheck {
    pub values: Vec<BigInt>,
    pub first_mismatch: Option<usize>,
}

/// Runs `n S(n) = -sum_{k=1}^{n} S(n-k) - sum_{k=1}^{n/2} 2 S(n-2k) +
/// 2 sum_{v=1}^{n} sum_{k=1}^{n/v} v S(n-kv)` from `S(0..=3)` and compares
/// with [`s_table`]. A step whose right side is not divisible by `n` is a
/// mismatch.
pub fn s_recurrence_check(max: usize) -> SRecurrenceCheck {
    let series = s_table(max);
    let mut values: Vec<BigInt> = series.iter().take(4).map(signed).collect();
    let mut first_mismatch = None;
    for n in values.len()..=max {
        let mut rhs = BigInt::zero();
        for k in 1..=n {
            rhs -= &values[n - k];
        }
        for k in 1..=n / 2 {
            rhs -= &values[n - 2 * k] * 2u32;
        }
        for v in 1..=n {
            for k in 1..=n / v {
                rhs += &values[n - k * v] * (2 * v as u64);
            }
        }
        let (quot, rem) = rhs.div_rem(&BigInt::from(n));
        if !rem.is_zero() || quot != signed(&series[n]) {
            first_mismatch.get_or_insert(n);
        }
        values.push(quot);
    }
    SRecurrenceCheck { values, first_mismatch }
}

/// One inequality from the elementary bounds on `p(2,n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    /// Smaller side of the inequality as stated.
    pub lhs: Natural,
    pub rhs: Natural,
    pub holds: bool,
    /// `rhs - lhs`.
    pub slack: BigInt,
}

impl BoundCheck {
    fn new(name: &'static str, lhs: Natural, rhs: Natural) -> Self {
        let slack = signed(&rhs) - signed(&lhs);
        BoundCheck { name, holds: !slack.is_negative(), lhs, rhs, slack }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Evaluates the four elementary inequalities at `n >= 1`; `p2` must reach `n`.
pub fn verify_bounds(n: usize, p2: &[Natural], p: &PartitionTable) -> BoundReport {
    assert!(n >= 1 && n < p2.len() && n <= p.max());
    let pv = |i: usize| p.get(i).clone();

    let lower = (1..=n).fold(pv(n), |acc, i| acc + pv(i));
    let upper = (0..=n).fold(Natural::zero(), |acc, i| {
        let a = pv(n - i);
        // C(a+1, 2)
        let choose = (&a * (&a + Natural::one())) >> 1u32;
        acc + choose * pv(i)
    });
    let cor_rhs = signed(&p2[n - 1]) + signed(&pv(n)) * 2 - signed(&pv(n - 1));
    let prop_upper = (1..=n).fold(pv(n) * pv(n), |acc, i| {
        let r = pv(n - i);
        acc + (pv(i) + pv(i - 1)) * &r * &r
    });

    BoundReport {
        n,
        checks: vec![
            BoundCheck::new("lower: p(n) + sum p(i) <= p(2,n)", lower, p2[n].clone()),
            BoundCheck::new("upper: p(2,n) <= sum C(p(n-i)+1,2) p(i)", p2[n].clone(), upper),
            BoundCheck::new("step: p(2,n-1) + 2p(n) - p(n-1) <= p(2,n)", unsigned(cor_rhs), p2[n].clone()),
            BoundCheck::new("upper: p(2,n) <= p(n)^2 + sum (p(i)+p(i-1)) p(n-i)^2", p2[n].clone(), prop_upper),
        ],
    }
}
