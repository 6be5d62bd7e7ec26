//! Classical partition counts over arbitrary-precision integers.
//!
//! Every table here is built once by a single owner and is read-only
//! afterwards, so shared references can be handed to worker threads.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Arbitrary-precision non-negative integer used for every exact count.
pub type Natural = BigUint;

/// A partition: parts sorted weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    total: u64,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let total = parts.iter().map(|&p| p as u64).sum();
        Partition { parts, total }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new(), total: 0 }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }
}

/// A named, contiguous table of exact values indexed from `n = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqTable {
    name: String,
    args: BTreeMap<String, String>,
    values: Vec<Natural>,
}

impl SeqTable {
    pub fn new(name: impl Into<String>, args: BTreeMap<String, String>, values: Vec<Natural>) -> Self {
        SeqTable { name: name.into(), args, values }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn args(&self) -> &BTreeMap<String, String> {
        &self.args
    }

    pub fn values(&self) -> &[Natural] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&Natural> {
        self.values.get(n)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest index present, if any.
    pub fn max_n(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    /// Cache identity: two tables with equal keys hold the same sequence.
    pub fn key(&self) -> (String, BTreeMap<String, String>) {
        (self.name.clone(), self.args.clone())
    }

    pub fn into_values(self) -> Vec<Natural> {
        self.values
    }
}

/// Memoized `p(0..=max)`, built with the pentagonal-number recurrence.
#[derive(Debug, Clone)]
pub struct PartitionTable {
    values: Vec<Natural>,
}

impl PartitionTable {
    pub fn new(max: usize) -> Self {
        PartitionTable { values: euler_p_table(max) }
    }

    pub fn max(&self) -> usize {
        self.values.len() - 1
    }

    /// `p(n)`; panics if `n` is beyond the table.
    pub fn get(&self, n: usize) -> &Natural {
        &self.values[n]
    }

    /// `p(n)` with `p(n) = 0` for negative `n`.
    pub fn get_signed(&self, n: i64) -> Natural {
        if n < 0 {
            Natural::zero()
        } else {
            self.values[n as usize].clone()
        }
    }

    /// `q(n) = p(n) - p(n-1)`, the number of partitions of `n` without a part 1.
    pub fn nuclear(&self, n: usize) -> Natural {
        if n == 0 {
            Natural::one()
        } else {
            &self.values[n] - &self.values[n - 1]
        }
    }

    pub fn values(&self) -> &[Natural] {
        &self.values
    }
}

/// `p(0..=max)` via the pentagonal-number recurrence.
pub fn euler_p_table(max: usize) -> Vec<Natural> {
    let mut p: Vec<Natural> = Vec::with_capacity(max + 1);
    p.push(Natural::one());
    for n in 1..=max {
        // alternating signs: accumulate both halves and subtract once
        let mut plus = Natural::zero();
        let mut minus = Natural::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
            *acc += &p[n - g1];
            if g2 <= n {
                *acc += &p[n - g2];
            }
            k += 1;
        }
        p.push(plus - minus);
    }
    p
}

/// Number of partitions of `n`.
pub fn euler_p(n: usize) -> Natural {
    euler_p_table(n).pop().expect("table is nonempty")
}

/// `q(0..=max)` with `q(n) = p(n) - p(n-1)` and `p(-1) = 0`.
pub fn nuclear_q_table(max: usize) -> Vec<Natural> {
    let p = euler_p_table(max);
    let mut q = Vec::with_capacity(max + 1);
    q.push(p[0].clone());
    for n in 1..=max {
        q.push(&p[n] - &p[n - 1]);
    }
    q
}

pub fn nuclear_q(n: usize) -> Natural {
    nuclear_q_table(n).pop().expect("table is nonempty")
}

/// Partitions of `0..=max` into parts drawn from `generators`, where each
/// entry is its own generator (equal values count as distinct colours).
pub fn p_multiset_table(max: usize, generators: &[u32]) -> Vec<Natural> {
    let mut t = vec![Natural::zero(); max + 1];
    t[0] = Natural::one();
    for &a in generators {
        let a = a as usize;
        assert!(a > 0, "multiset elements must be positive");
        for x in a..=max {
            let prev = t[x - a].clone();
            t[x] += prev;
        }
    }
    t
}

/// A-partition count `p_A(n)`.
pub fn p_multiset(n: usize, generators: &[u32]) -> Natural {
    p_multiset_table(n, generators).pop().expect("table is nonempty")
}

/// `p_l(0..=max)`: partitions with every part at most `l`.
pub fn p_max_part_table(max: usize, l: u32) -> Vec<Natural> {
    let generators: Vec<u32> = (1..=l.min(max.max(1) as u32)).collect();
    p_multiset_table(max, &generators)
}

pub fn p_max_part(n: usize, l: u32) -> Natural {
    p_max_part_table(n, l).pop().expect("table is nonempty")
}

/// Truncated Cauchy product; the result has the length of the shorter input.
pub fn convolve(a: &[Natural], b: &[Natural]) -> Vec<Natural> {
    let len = a.len().min(b.len());
    (0..len).map(|n| convolve_at(a, b, n)).collect()
}

/// `sum_{k=0..n} a[k] b[n-k]`; both slices must reach index `n`.
pub fn convolve_at(a: &[Natural], b: &[Natural], n: usize) -> Natural {
    let mut acc = Natural::zero();
    for k in 0..=n {
        acc += &a[k] * &b[n - k];
    }
    acc
}

/// `q_2(0..=max)`, the 2-coloured partition numbers, as `p * p`.
pub fn two_colored_q2_table(max: usize) -> Vec<Natural> {
    let p = euler_p_table(max);
    convolve(&p, &p)
}

/// `q_2(0..=max)` from the product `prod_k (1 - x^k)^-2` directly.
pub fn two_colored_q2_product_table(max: usize) -> Vec<Natural> {
    let mut generators = Vec::with_capacity(2 * max);
    for k in 1..=max as u32 {
        generators.push(k);
        generators.push(k);
    }
    p_multiset_table(max, &generators)
}

pub fn two_colored_q2(n: usize) -> Natural {
    let p = euler_p_table(n);
    convolve_at(&p, &p, n)
}

/// Iterator over partitions of `total` with parts at most `max_part`, in
/// reverse-lexicographic order (largest first part first).
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Vec<u32>,
    done: bool,
}

pub fn partitions_iter(total: u32, max_part: u32) -> Partitions {
    assert!(max_part >= 1, "max_part must be positive");
    let mut current = Vec::new();
    let mut rest = total;
    while rest > 0 {
        let part = rest.min(max_part);
        current.push(part);
        rest -= part;
    }
    Partitions { current, done: false }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let out = Partition {
            total: self.current.iter().map(|&p| p as u64).sum(),
            parts: self.current.clone(),
        };
        // rightmost part greater than one
        match self.current.iter().rposition(|&p| p > 1) {
            None => self.done = true,
            Some(i) => {
                let ones = (self.current.len() - i - 1) as u32;
                let v = self.current[i] - 1;
                self.current.truncate(i);
                self.current.push(v);
                let mut rest = ones + 1;
                while rest > 0 {
                    let part = rest.min(v);
                    self.current.push(part);
                    rest -= part;
                }
            }
        }
        Some(out)
    }
}
