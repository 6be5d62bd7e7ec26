//! Restricted counts `p_{k,l}(2,n)`: blocks `1 x i` with `i <= k` and
//! `2 x j` with `2 <= j <= l`. `l = 1` means no two-row blocks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Error};
use crate::partcore::{convolve, p_multiset_table, Natural};
use crate::tile2::{PartSet, TileCounter};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RestrictSpec {
    pub k: u32,
    pub l: u32,
    pub n: u32,
}

impl RestrictSpec {
    pub fn new(k: u32, l: u32, n: u32) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(invalid("k and l must be at least 1"));
        }
        Ok(RestrictSpec { k, l, n })
    }

    pub fn count(&self) -> Natural {
        p_kl(self.k, self.l, self.n)
    }
}

/// `p_{k,1}(2,n)`: multisets of `1 x i` blocks, `i <= k`, that tile `2 x n`.
pub fn p_k1(k: u32, n: u32) -> Natural {
    assert!(k >= 1, "k must be at least 1");
    Natural::from(TileCounter::new(n, PartSet::UpTo(k)).count())
}

pub fn p_k1_table(k: u32, max: u32) -> Vec<Natural> {
    (0..=max).map(|n| p_k1(k, n)).collect()
}

/// Memo of `p_{k,l}(2, 0..=max)` tables keyed by `(k, l)`.
#[derive(Debug, Clone, Default)]
pub struct RestrictTables {
    tables: BTreeMap<(u32, u32), Vec<Natural>>,
}

impl RestrictTables {
    pub fn new() -> Self {
        Self::default()
    }

    /// `p_{k,l}(2, 0..=max)` by `t_l(n) = t_l(n-l) + t_{l-1}(n)` from `t_1 = p_{k,1}`.
    pub fn table(&mut self, k: u32, l: u32, max: u32) -> &[Natural] {
        assert!(k >= 1 && l >= 1, "k and l must be at least 1");
        let len = max as usize + 1;
        let fresh = self.tables.get(&(k, l)).is_none_or(|t| t.len() < len);
        if fresh {
            let t = if l == 1 {
                p_k1_table(k, max)
            } else {
                let prev = self.table(k, l - 1, max)[..len].to_vec();
                let step = l as usize;
                let mut t = prev;
                for n in step..len {
                    let add = t[n - step].clone();
                    t[n] += add;
                }
                t
            };
            self.tables.insert((k, l), t);
        }
        &self.tables[&(k, l)][..len]
    }

    pub fn get(&mut self, k: u32, l: u32, n: u32) -> Natural {
        self.table(k, l, n)[n as usize].clone()
    }
}

pub fn p_kl(k: u32, l: u32, n: u32) -> Natural {
    RestrictTables::new().get(k, l, n)
}

pub fn p_kl_table(k: u32, l: u32, max: u32) -> Vec<Natural> {
    RestrictTables::new().table(k, l, max).to_vec()
}

/// `p_{k,l}(2,n)` as the convolution of two-row-only partitions (widths
/// `2..=l`) with `p_{k,1}`.
pub fn p_kl_convolution(k: u32, l: u32, n: u32) -> Result<Natural> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    if l < 2 {
        return Err(invalid("the convolution form needs l >= 2"));
    }
    let widths: Vec<u32> = (2..=l).collect();
    let two_row = p_multiset_table(n as usize, &widths);
    let base = p_k1_table(k, n);
    Ok(convolve(&two_row, &base).pop().expect("nonempty"))
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

// Periodic part as printed, with `n` available for the affine k = l = 3 case.
fn case_fn(k: u32, l: u32, n: &BigRational, r: u32) -> BigRational {
    match (k, l) {
        (1, 1) | (2, 1) => BigRational::zero(),
        (1, 2) => [q(1, 1), q(1, 2)][(r % 2) as usize].clone(),
        (1, 3) => [q(1, 1), q(5, 12), q(2, 3), q(3, 4), q(2, 3), q(5, 12)][r as usize].clone(),
        (2, 2) => [q(1, 1), q(3, 4)][(r % 2) as usize].clone(),
        (2, 3) => [q(1, 1), q(55, 72), q(7, 9), q(7, 8), q(8, 9), q(47, 72)][r as usize].clone(),
        (3, 1) => [q(1, 1), q(2, 3), q(-1, 3)][(r % 3) as usize].clone(),
        (3, 2) => [q(1, 1), q(25, 36), q(2, 9), q(5, 4), q(4, 9), q(17, 36)][r as usize].clone(),
        (3, 3) => {
            let (slope, icpt) = [
                (q(1, 1), q(1, 1)),
                (q(22, 27), q(155, 216)),
                (q(20, 27), q(8, 27)),
                (q(1, 1), q(9, 8)),
                (q(22, 27), q(16, 27)),
                (q(20, 27), q(91, 216)),
            ][r as usize]
                .clone();
            slope * n + icpt
        }
        _ => unreachable!(),
    }
}

/// Closed forms for `1 <= k, l <= 3`, evaluated in exact rationals.
pub fn closed_form_table1(k: u32, l: u32, n: u32) -> Result<Natural> {
    if !(1..=3).contains(&k) || !(1..=3).contains(&l) {
        return Err(invalid(format!("closed forms cover 1 <= k, l <= 3, got ({k}, {l})")));
    }
    let x = BigRational::from_integer(BigInt::from(n));
    let pw = |e: u32| -> BigRational {
        let mut acc = BigRational::one();
        for _ in 0..e {
            acc *= &x;
        }
        acc
    };
    // (coefficient, power) pairs of the polynomial part
    let poly: &[(i64, i64, u32)] = match (k, l) {
        (1, 1) => &[(1, 1, 0)],
        (1, 2) => &[(1, 2, 1)],
        (1, 3) => &[(1, 12, 2), (1, 2, 1)],
        (2, 1) => &[(1, 1, 1), (1, 1, 0)],
        (2, 2) => &[(1, 4, 2), (1, 1, 1)],
        (2, 3) => &[(1, 36, 3), (7, 24, 2), (11, 12, 1)],
        (3, 1) => &[(1, 3, 2), (1, 1, 1)],
        (3, 2) => &[(1, 18, 3), (5, 12, 2), (5, 6, 1)],
        _ => &[(1, 216, 4), (2, 27, 3), (7, 18, 2)],
    };
    let mut value = case_fn(k, l, &x, n % 6);
    for &(num, den, e) in poly {
        value += q(num, den) * pw(e);
    }
    if !value.is_integer() {
        return Err(Error::NonIntegral(format!("{value} at (k, l, n) = ({k}, {l}, {n})")));
    }
    value.to_integer().to_biguint().ok_or_else(|| Error::NonIntegral(format!("negative value {value}")))
}

/// Blocks `1 x 1` and `1 x m` only: `2 floor(n/m) + 1`.
pub fn p_two_parts(m: u32, n: u32) -> Result<Natural> {
    if m < 3 {
        return Err(invalid("m must be at least 3"));
    }
    Ok(Natural::from(2 * (n / m) as u64 + 1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub k: u32,
    pub l: u32,
    /// `(n, r(n))` for `n = 1..=n_max`.
    pub ratios: Vec<(u32, f64)>,
    pub converging: bool,
    pub in_range: bool,
}

impl GrowthReport {
    pub fn ratio_at(&self, n: u32) -> Option<f64> {
        self.ratios.iter().find(|(m, _)| *m == n).map(|&(_, r)| r)
    }

    pub fn passes(&self) -> bool {
        self.converging && self.in_range
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Ratio of `p_{k,l}(2,n)` to the leading term `2^{k-1} n^{k+l-2} / (l! k! (k+l-2)!)`.
pub fn growth_diagnostic(k: u32, l: u32, n_max: u32) -> Result<GrowthReport> {
    if k == 0 || l == 0 {
        return Err(invalid("k and l must be at least 1"));
    }
    if n_max < 10 {
        return Err(invalid("n_max must be at least 10"));
    }
    let d = k + l - 2;
    let scale = factorial(l) * factorial(k) * factorial(d) / libm::pow(2.0, f64::from(k - 1));
    let table = p_kl_table(k, l, n_max);
    let ratios: Vec<(u32, f64)> = (1..=n_max)
        .map(|n| {
            let v = table[n as usize].to_f64().unwrap_or(f64::INFINITY);
            (n, v * scale / libm::pow(f64::from(n), f64::from(d)))
        })
        .collect();
    let at = |n: u32| ratios[(n - 1) as usize].1;
    let last = at(n_max);
    Ok(GrowthReport {
        k,
        l,
        converging: libm::fabs(last - 1.0) < libm::fabs(at(n_max / 2) - 1.0),
        in_range: (0.5..=2.0).contains(&last),
        ratios,
    })
}
