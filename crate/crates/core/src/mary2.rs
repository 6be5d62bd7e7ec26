//! m-ary partitions and their `2 x n` analogue `b_{i,j}(2,n)`: blocks
//! `1 x m^t` for `t <= i` and `2 x m^t` for `1 <= t <= j`.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::invalid;
use crate::partcore::{convolve, p_multiset_table, Natural};
use crate::tile2::{PartSet, TileCounter};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MarySpec {
    pub m: u32,
    pub i: u32,
    pub j: u32,
}

impl MarySpec {
    pub fn new(m: u32, i: u32, j: u32) -> Result<Self> {
        if m < 2 {
            return Err(invalid("m must be at least 2"));
        }
        Ok(MarySpec { m, i, j })
    }

    pub fn table(&self, max: usize) -> Vec<Natural> {
        b_ij_table(self.m, self.i, self.j, max)
    }
}

/// Base-`m` digits, least significant first; empty for 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseMDigits {
    pub m: u32,
    pub digits: Vec<u32>,
}

impl BaseMDigits {
    /// Digit `c_l`, zero past the representation.
    pub fn digit(&self, l: usize) -> u32 {
        self.digits.get(l).copied().unwrap_or(0)
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.m as u64 + d as u64)
    }
}

pub fn digits_base(n: u64, m: u32) -> BaseMDigits {
    assert!(m >= 2, "base must be at least 2");
    let mut digits = Vec::new();
    let mut rest = n;
    while rest > 0 {
        digits.push((rest % m as u64) as u32);
        rest /= m as u64;
    }
    BaseMDigits { m, digits }
}

/// `b_m(0..=max)` from `b(n) = b(n-1)` if `m` does not divide `n`, else
/// `b(n) = b(n-m) + b(n/m)`.
pub fn b_m_table(m: u32, max: usize) -> Vec<Natural> {
    assert!(m >= 2, "base must be at least 2");
    let m = m as usize;
    let mut b: Vec<Natural> = Vec::with_capacity(max + 1);
    b.push(Natural::from(1u32));
    for n in 1..=max {
        let v = if n % m != 0 { b[n - 1].clone() } else { &b[n - m] + &b[n / m] };
        b.push(v);
    }
    b
}

pub fn b_m(m: u32, n: usize) -> Natural {
    b_m_table(m, n).pop().expect("nonempty")
}

// m^t as usize, or None once it exceeds `cap`.
fn power_upto(m: u32, t: u32, cap: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..t {
        acc = acc.checked_mul(m as usize).filter(|&v| v <= cap)?;
    }
    Some(acc)
}

/// `b_{i,0}(2, 0..=max)` by the recurrence
/// `b_i(n) = b_{i-1}(n) + sum_{u<i} b_u(n-m^i) b_m(m^{i-u}-m) + b_i(n-m^i)`.
pub fn b_i0_table(m: u32, i: u32, max: usize) -> Vec<Natural> {
    assert!(m >= 2, "base must be at least 2");
    let mut levels: Vec<Vec<Natural>> = vec![vec![Natural::from(1u32); max + 1]];
    if i == 0 {
        return levels.pop().expect("level 0");
    }
    levels.push(
        (0..=max)
            .map(|n| Natural::from(if m == 2 { n + 1 } else { 2 * (n / m as usize) + 1 }))
            .collect(),
    );
    let bm = b_m_table(m, max);
    for level in 2..=i {
        let Some(step) = power_upto(m, level, max) else {
            // 1 x m^level no longer fits
            break;
        };
        let prev = &levels[level as usize - 1];
        let mut t: Vec<Natural> = prev.clone();
        for n in step..=max {
            let mut v = t[n - step].clone();
            for u in 0..level {
                let width = step / power_upto(m, u, step).expect("m^u <= m^level") - m as usize;
                v += &levels[u as usize][n - step] * &bm[width];
            }
            t[n] += v;
        }
        levels.push(t);
    }
    levels.pop().expect("at least one level")
}

pub fn b_i0(m: u32, i: u32, n: usize) -> Natural {
    b_i0_table(m, i, n).pop().expect("nonempty")
}

/// `b_{i,0}(2,n)` by the subsum enumerator with parts `{1, m, ..., m^i}`.
pub fn b_i0_enumerated(m: u32, i: u32, n: u32) -> Natural {
    let parts: Vec<u32> = (0..=i).map_while(|t| power_upto(m, t, (2 * n).max(1) as usize).map(|p| p as u32)).collect();
    Natural::from(TileCounter::new(n, PartSet::Only(parts)).count())
}

/// `b_{i,j}(2, 0..=max)` by `b_{i,j}(n) = b_{i,j}(n-m^j) + b_{i,j-1}(n)`.
pub fn b_ij_table(m: u32, i: u32, j: u32, max: usize) -> Vec<Natural> {
    let mut t = b_i0_table(m, i, max);
    for level in 1..=j {
        let Some(step) = power_upto(m, level, max) else { break };
        for n in step..=max {
            let add = t[n - step].clone();
            t[n] += add;
        }
    }
    t
}

pub fn b_ij(m: u32, i: u32, j: u32, n: usize) -> Natural {
    b_ij_table(m, i, j, n).pop().expect("nonempty")
}

/// `b_{i,j}(2,n) = sum_u p_{m,...,m^j}(u) b_{i,0}(2,n-u)`.
pub fn b_ij_convolution_table(m: u32, i: u32, j: u32, max: usize) -> Vec<Natural> {
    let widths: Vec<u32> = (1..=j).map_while(|t| power_upto(m, t, max.max(1)).map(|p| p as u32)).collect();
    convolve(&p_multiset_table(max, &widths), &b_i0_table(m, i, max))
}

/// Largest `e` with `m^e <= max(n, 1)`.
pub fn saturation_exponent(m: u32, n: usize) -> u32 {
    let mut e = 0;
    while power_upto(m, e + 1, n.max(1)).is_some() {
        e += 1;
    }
    e
}

/// `b(2,n)`: every power of `m` allowed in both block families.
pub fn b_full(m: u32, n: usize) -> Natural {
    let e = saturation_exponent(m, n);
    b_ij(m, e, e, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CongruenceKind {
    /// `b_m(n) = prod_{l>=1} (c_l + 1) mod m`.
    Alkauskas,
    BI0,
    BIJ,
}

/// Residue predicted by the digit product.
pub fn congruence_predict(kind: CongruenceKind, m: u32, i: u32, j: u32, n: u64) -> Result<u32> {
    if m < 2 {
        return Err(invalid("m must be at least 2"));
    }
    let d = digits_base(n, m);
    let prod = |range: core::ops::RangeInclusive<usize>, f: &dyn Fn(u32) -> u64| {
        range.fold(1u64, |acc, l| acc * (f(d.digit(l)) % m as u64) % m as u64)
    };
    let residue = match kind {
        CongruenceKind::Alkauskas => prod(1..=d.digits.len().max(1), &|c| c as u64 + 1),
        CongruenceKind::BI0 | CongruenceKind::BIJ => {
            let j = if kind == CongruenceKind::BI0 { 0 } else { j };
            if m == 2 {
                if i == 0 {
                    return Err(invalid("for m = 2 the rectangular congruences need i >= 1"));
                }
                prod(0..=j as usize, &|c| c as u64 + 1)
            } else {
                prod(1..=i as usize, &|c| 2 * c as u64 + 1) * prod(1..=j as usize, &|c| c as u64 + 1) % m as u64
            }
        }
    };
    Ok(residue as u32)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub n: u64,
    pub digits: BaseMDigits,
    pub value: Natural,
    pub computed: u32,
    pub predicted: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub kind: CongruenceKind,
    pub m: u32,
    pub i: u32,
    pub j: u32,
    pub n_max: usize,
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CongruenceReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Sweeps `0..=n_max` and records every `n` where the residue disagrees.
pub fn verify_congruences(kind: CongruenceKind, m: u32, i: u32, j: u32, n_max: usize) -> Result<CongruenceReport> {
    congruence_predict(kind, m, i, j, 0)?;
    let values = match kind {
        CongruenceKind::Alkauskas => b_m_table(m, n_max),
        CongruenceKind::BI0 => b_i0_table(m, i, n_max),
        CongruenceKind::BIJ => b_ij_table(m, i, j, n_max),
    };
    let mut counterexamples = Vec::new();
    for (n, value) in values.into_iter().enumerate() {
        let predicted = congruence_predict(kind, m, i, j, n as u64)?;
        let computed = value.mod_floor(&Natural::from(m)).to_u32().expect("residue below m");
        if computed != predicted {
            counterexamples.push(Counterexample { n: n as u64, digits: digits_base(n as u64, m), value, computed, predicted });
        }
    }
    Ok(CongruenceReport { kind, m, i, j, n_max, checked: n_max + 1, counterexamples })
}
