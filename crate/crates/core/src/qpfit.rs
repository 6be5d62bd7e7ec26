//! Quasi-polynomial discovery over exact rationals.
//!
//! The ansatz `sum_{j=1}^{k} sum_{i=0}^{k-1} [r_{i,j,0}, ..., r_{i,j,j-1}]_j n^i`
//! is fitted to a window of sequence values by Gaussian elimination. The
//! ansatz is linearly dependent, so free variables are pinned to zero and
//! results are compared only in canonical form: one polynomial per residue
//! class modulo the minimal period.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{invalid, Error};
use crate::partcore::Natural;
use crate::Result;

pub type Rational = BigRational;

/// One unknown `r_{i,j,r}`: contributes `n^i` when `n = r (mod j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnsatzTerm {
    pub power: u32,
    pub modulus: u32,
    pub residue: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzBasis {
    pub k: u32,
    pub terms: Vec<AnsatzTerm>,
}

impl AnsatzBasis {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `lcm(1..=k)`.
    pub fn period(&self) -> u64 {
        lcm_upto(self.k)
    }

    /// Equations in a fitting window: unknowns plus `2 lcm(1..=k)`.
    pub fn window_len(&self) -> usize {
        self.len() + 2 * self.period() as usize
    }
}

/// Values needed to fit order `k` with a start up to `2 lcm(1..=k)`.
pub fn recommended_terms(k: u32) -> Result<usize> {
    let basis = build_ansatz(k)?;
    Ok(basis.window_len() + 2 * basis.period() as usize)
}

pub fn lcm_upto(k: u32) -> u64 {
    (1..=k as u64).fold(1, |acc, j| acc.lcm(&j))
}

pub fn build_ansatz(k: u32) -> Result<AnsatzBasis> {
    if k == 0 {
        return Err(invalid("order must be at least 1"));
    }
    let mut terms = Vec::new();
    for modulus in 1..=k {
        for power in 0..k {
            for residue in 0..modulus {
                terms.push(AnsatzTerm { power, modulus, residue });
            }
        }
    }
    Ok(AnsatzBasis { k, terms })
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn pow_n(n: u64, e: u32) -> Rational {
    Rational::from_integer(BigInt::from(n).pow(e))
}

/// Polynomials dispatched on `n mod period`; `polys[r][i]` is the coefficient
/// of `n^i` on the class `r`. Trailing zero coefficients are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuasiPolynomial {
    pub period: u64,
    pub polys: Vec<Vec<Rational>>,
    pub valid_from: u64,
}

fn trim(mut poly: Vec<Rational>) -> Vec<Rational> {
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    poly
}

impl QuasiPolynomial {
    /// Builds from per-residue polynomials and folds to the minimal period.
    pub fn new(polys: Vec<Vec<Rational>>, valid_from: u64) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::EmptyInput);
        }
        let period = polys.len() as u64;
        let polys: Vec<Vec<Rational>> = polys.into_iter().map(trim).collect();
        let minimal = (1..=period)
            .filter(|d| period.is_multiple_of(*d))
            .find(|&d| (0..period).all(|r| polys[r as usize] == polys[(r % d) as usize]))
            .expect("the full period always qualifies");
        Ok(QuasiPolynomial { period: minimal, polys: polys[..minimal as usize].to_vec(), valid_from })
    }

    pub fn evaluate(&self, n: u64) -> Rational {
        let poly = &self.polys[(n % self.period) as usize];
        // Horner
        let x = Rational::from_integer(BigInt::from(n));
        poly.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.polys.iter().filter(|p| !p.is_empty()).map(|p| p.len() - 1).max()
    }

    /// Coefficient of `n^power` as a function of the residue class.
    fn periodic_coefficient(&self, power: usize) -> Vec<Rational> {
        self.polys.iter().map(|p| p.get(power).cloned().unwrap_or_default()).collect()
    }

    /// `n mod s = r: poly` lines.
    pub fn residue_form(&self) -> String {
        let mut out = String::new();
        for (r, poly) in self.polys.iter().enumerate() {
            let _ = writeln!(out, "n = {r} (mod {}): {}", self.period, poly_string(poly));
        }
        out
    }

    /// Bracket notation `[r_0, ..., r_{d-1}]_d n^i`, with every periodic
    /// coefficient split into components of exact period `d`.
    pub fn bracket_form(&self) -> String {
        let mut pieces: Vec<String> = Vec::new();
        let degree = match self.degree() {
            Some(d) => d,
            None => return String::from("0"),
        };
        for power in (0..=degree).rev() {
            let f = self.periodic_coefficient(power);
            for (d, comp) in exact_period_components(&f) {
                let coef = if d == 1 {
                    if comp[0].is_zero() {
                        continue;
                    }
                    rational_string(&comp[0])
                } else {
                    let items: Vec<String> = comp.iter().map(rational_string).collect();
                    format!("[{}]_{d}", items.join(", "))
                };
                pieces.push(term(coef, power));
            }
        }
        join_terms(pieces)
    }
}

fn rational_string(q: &Rational) -> String {
    if q.is_integer() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn poly_string(poly: &[Rational]) -> String {
    let terms: Vec<String> = poly
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| term(rational_string(c), i))
        .collect();
    join_terms(terms)
}

fn term(coef: String, power: usize) -> String {
    let coef = match (coef.as_str(), power) {
        (_, 0) => return coef,
        ("1", _) => String::new(),
        ("-1", _) => String::from("-"),
        _ => coef + " ",
    };
    match power {
        1 => format!("{coef}n"),
        _ => format!("{coef}n^{power}"),
    }
}

fn join_terms(terms: Vec<String>) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        match (i, t.strip_prefix('-')) {
            (0, _) => out.push_str(t),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            (_, None) => {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

// Splits a periodic sequence into nonzero parts of exact period d, for each
// divisor d of its length: g_d = sum_{e | d} mu(d/e) avg_e(f).
fn exact_period_components(f: &[Rational]) -> Vec<(u64, Vec<Rational>)> {
    let len = f.len() as u64;
    let avg = |e: u64, r: u64| -> Rational {
        let count = len / e;
        let sum = (0..count).fold(Rational::zero(), |acc, t| acc + &f[(r + t * e) as usize]);
        sum / int(count as i64)
    };
    let mut out = Vec::new();
    for d in (1..=len).filter(|d| len.is_multiple_of(*d)) {
        let comp: Vec<Rational> = (0..d)
            .map(|r| {
                (1..=d).filter(|e| d % e == 0).fold(Rational::zero(), |acc, e| acc + int(mobius(d / e)) * avg(e, r % e))
            })
            .collect();
        if d == 1 || comp.iter().any(|c| !c.is_zero()) {
            out.push((d, comp));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitResult {
    pub coefficients: BTreeMap<AnsatzTerm, Rational>,
    pub start: u64,
    pub end: u64,
    pub canonical: QuasiPolynomial,
}

impl FitResult {
    /// Evaluates the raw ansatz with the fitted coefficients.
    pub fn evaluate_raw(&self, n: u64) -> Rational {
        self.coefficients
            .iter()
            .filter(|(t, _)| n % t.modulus as u64 == t.residue as u64)
            .fold(Rational::zero(), |acc, (t, c)| acc + c * pow_n(n, t.power))
    }
}

/// Incremental reduced row echelon form over the rationals.
struct Echelon {
    cols: usize,
    // (pivot column, row with a 1 at the pivot and rhs last)
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new() }
    }

    /// Adds an equation; returns false when it contradicts the earlier ones.
    fn push(&mut self, mut row: Vec<Rational>) -> bool {
        for (pivot, basis) in &self.rows {
            if !row[*pivot].is_zero() {
                let f = row[*pivot].clone();
                for (x, b) in row.iter_mut().zip(basis) {
                    if !b.is_zero() {
                        *x -= &f * b;
                    }
                }
            }
        }
        let Some(pivot) = (0..self.cols).find(|&c| !row[c].is_zero()) else {
            return row[self.cols].is_zero();
        };
        let inv = row[pivot].recip();
        for x in row.iter_mut() {
            *x *= &inv;
        }
        for (_, basis) in self.rows.iter_mut() {
            if !basis[pivot].is_zero() {
                let f = basis[pivot].clone();
                for (x, r) in basis.iter_mut().zip(&row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        self.rows.push((pivot, row));
        true
    }

    // Free variables pinned to zero.
    fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.cols];
        for (pivot, row) in &self.rows {
            x[*pivot] = row[self.cols].clone();
        }
        x
    }
}

fn canonical_from(basis: &AnsatzBasis, coefficients: &BTreeMap<AnsatzTerm, Rational>, valid_from: u64) -> QuasiPolynomial {
    let period = basis.period();
    let polys: Vec<Vec<Rational>> = (0..period)
        .map(|r| {
            let mut poly = vec![Rational::zero(); basis.k as usize];
            for (t, c) in coefficients {
                if r % t.modulus as u64 == t.residue as u64 {
                    poly[t.power as usize] += c;
                }
            }
            poly
        })
        .collect();
    QuasiPolynomial::new(polys, valid_from).expect("period is positive")
}

/// Fits the ansatz to `values[start..=end]`. `Ok(None)` means the system is
/// inconsistent.
pub fn fit_window(values: &[Natural], basis: &AnsatzBasis, start: u64, end: u64) -> Result<Option<FitResult>> {
    let needed = basis.window_len();
    let equations = (end + 1).saturating_sub(start) as usize;
    if end < start || equations < needed {
        return Err(Error::WindowTooSmall { start: start as usize, end: end as usize, equations, needed });
    }
    if end as usize >= values.len() {
        return Err(Error::InsufficientData(format!("window ends at {end}, table ends at {}", values.len() as i64 - 1)));
    }
    let cols = basis.len();
    let mut ech = Echelon::new(cols);
    for n in start..=end {
        let mut row: Vec<Rational> = basis
            .terms
            .iter()
            .map(|t| if n % t.modulus as u64 == t.residue as u64 { pow_n(n, t.power) } else { Rational::zero() })
            .collect();
        row.push(Rational::from_integer(BigInt::from(values[n as usize].clone())));
        if !ech.push(row) {
            return Ok(None);
        }
    }
    let coefficients: BTreeMap<AnsatzTerm, Rational> =
        basis.terms.iter().copied().zip(ech.solution()).filter(|(_, c)| !c.is_zero()).collect();
    let canonical = canonical_from(basis, &coefficients, start);
    Ok(Some(FitResult { coefficients, start, end, canonical }))
}

/// Smallest start `A` whose window fit is feasible and reproduces every
/// available value from `A` on.
pub fn fit_min_start(values: &[Natural], k: u32) -> Result<(FitResult, u64)> {
    let basis = build_ansatz(k)?;
    let w = basis.window_len() as u64;
    if (values.len() as u64) < w {
        return Err(Error::InsufficientData(format!("need at least {w} values, have {}", values.len())));
    }
    let last = values.len() as u64 - 1;
    let mut start = 0;
    while start + w - 1 <= last {
        if let Some(fit) = fit_window(values, &basis, start, start + w - 1)? {
            if holdout_matches(&fit.canonical, values, start) {
                return Ok((fit, start));
            }
        }
        start += 1;
    }
    Err(Error::NoFeasibleStart(start.saturating_sub(1) as usize))
}

/// Whether `qp` reproduces `values[from..]` exactly.
pub fn holdout_matches(qp: &QuasiPolynomial, values: &[Natural], from: u64) -> bool {
    (from..values.len() as u64).all(|n| qp.evaluate(n) == Rational::from_integer(BigInt::from(values[n as usize].clone())))
}

pub fn evaluate_qp(qp: &QuasiPolynomial, n: u64) -> Rational {
    qp.evaluate(n)
}

/// The conjectured closed form for `p_{k,1}(2,n)`, `4 <= k <= 8`, with its
/// stated start index.
pub fn reference_row(k: u32) -> Option<QuasiPolynomial> {
    // (power, modulus, residues); modulus 1 for plain coefficients
    let terms: Vec<(u32, u32, Vec<Rational>)> = match k {
        4 => vec![
            (3, 1, vec![rat(1, 18)]),
            (2, 1, vec![rat(5, 12)]),
            (1, 1, vec![int(1)]),
            (0, 3, vec![rat(-5, 4), rat(-53, 36), rat(-121, 36)]),
            (0, 4, vec![rat(9, 4), int(1), rat(1, 4), int(0)]),
        ],
        5 => vec![
            (4, 1, vec![rat(1, 180)]),
            (3, 1, vec![rat(1, 12)]),
            (2, 1, vec![rat(31, 72)]),
            (1, 1, vec![rat(11, 12)]),
            (0, 1, vec![rat(-3037, 360)]),
            (0, 3, vec![rat(19, 9), int(1), int(0)]),
            (0, 4, vec![rat(33, 8), int(3), rat(9, 8), int(0)]),
            (0, 5, vec![rat(16, 5), int(1), int(-1), int(0), int(0)]),
        ],
        6 => vec![
            (5, 1, vec![rat(1, 2700)]),
            (4, 1, vec![rat(7, 720)]),
            (3, 1, vec![rat(77, 810)]),
            (2, 1, vec![rat(31, 72)]),
            (1, 1, vec![rat(31, 540)]),
            (1, 2, vec![rat(1, 6), int(0)]),
            (1, 3, vec![rat(19, 27), rat(1, 3), int(0)]),
            (0, 1, vec![rat(-430513, 32400)]),
            (0, 4, vec![rat(4169, 1296), int(3), rat(281, 1296), int(0)]),
            (0, 5, vec![rat(178, 25), rat(126, 25), rat(24, 25), rat(27, 25), int(0)]),
            (0, 6, vec![rat(320, 81), rat(107, 81), rat(1, 81), rat(-194, 81), int(0), int(0)]),
        ],
        7 => vec![
            (6, 1, vec![rat(1, 56700)]),
            (5, 1, vec![rat(1, 1350)]),
            (4, 1, vec![rat(79, 6480)]),
            (3, 1, vec![rat(161, 1620)]),
            (2, 1, vec![rat(251, 600)]),
            (1, 1, vec![rat(-497, 1620)]),
            (1, 2, vec![rat(1, 6), int(0)]),
            (1, 3, vec![rat(82, 81), rat(53, 81), int(0)]),
            (0, 1, vec![rat(-2542973, 75600)]),
            (0, 4, vec![rat(3337, 1296), int(1), rat(-3143, 1296), int(0)]),
            (0, 5, vec![rat(252, 25), rat(152, 25), int(4), rat(51, 25), int(0)]),
            (0, 6, vec![rat(797, 81), rat(541, 81), rat(377, 81), rat(-58, 27), int(0), int(0)]),
            (0, 7, vec![rat(85, 7), int(3), int(-3), int(0), int(0), int(0), int(0)]),
        ],
        8 => vec![
            (7, 1, vec![rat(1, 1587600)]),
            (6, 1, vec![rat(1, 25200)]),
            (5, 1, vec![rat(307, 302400)]),
            (4, 1, vec![rat(13, 960)]),
            (3, 1, vec![rat(45641, 453600)]),
            (2, 1, vec![rat(313, 800)]),
            (2, 2, vec![rat(1, 48), int(0)]),
            (1, 1, vec![rat(-46519, 36288)]),
            (1, 3, vec![rat(82, 81), rat(1, 3), int(0)]),
            (1, 4, vec![rat(73, 64), rat(1, 4), rat(-7, 64), int(0)]),
            (0, 1, vec![rat(-397440641, 6350400)]),
            (0, 5, vec![rat(326, 25), int(7), rat(49, 25), int(5), int(0)]),
            (0, 6, vec![rat(76817, 5184), rat(949, 81), rat(1859, 192), rat(65, 81), rat(17617, 5184), int(0)]),
            (0, 7, vec![rat(1230, 49), rat(787, 49), rat(197, 49), rat(195, 49), rat(102, 49), rat(51, 49), int(0)]),
            (0, 8, vec![rat(85, 8), int(5), int(-3), int(0), rat(-83, 8), int(-1), int(0), int(0)]),
        ],
        _ => return None,
    };
    let valid_from = [6, 12, 20, 30, 42][(k - 4) as usize];
    let period = lcm_upto(k);
    let polys = (0..period)
        .map(|r| {
            let mut poly = vec![Rational::zero(); k as usize];
            for (power, modulus, residues) in &terms {
                poly[*power as usize] += &residues[(r % *modulus as u64) as usize];
            }
            poly
        })
        .collect();
    Some(QuasiPolynomial::new(polys, valid_from).expect("nonempty"))
}

/// Coefficients of `(sum values(n) x^n) * Q(x)` and where they stop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfReport {
    pub denominator_degree: usize,
    pub coefficients: Vec<BigInt>,
    /// Degree of the numerator when the product vanishes on at least
    /// [`GF_MARGIN`] trailing coefficients, else `None`.
    pub numerator_degree: Option<usize>,
}

pub const GF_MARGIN: usize = 40;

/// Multiplies by `prod (1 - x^f)` over `factors`.
pub fn gf_check_with(values: &[Natural], factors: &[u32]) -> Result<GfReport> {
    if factors.contains(&0) {
        return Err(invalid("factor exponents must be positive"));
    }
    let degree: usize = factors.iter().map(|&f| f as usize).sum();
    if values.len() < degree + GF_MARGIN {
        return Err(Error::InsufficientData(format!(
            "need at least {} values, have {}",
            degree + GF_MARGIN,
            values.len()
        )));
    }
    let mut c: Vec<BigInt> = values.iter().map(|v| BigInt::from(v.clone())).collect();
    for &f in factors {
        let f = f as usize;
        for i in (f..c.len()).rev() {
            let sub = c[i - f].clone();
            c[i] -= sub;
        }
    }
    // coefficients below deg Q are exact; beyond that the truncation is exact too
    let last_nonzero = c.iter().rposition(|v| !v.is_zero());
    let tail_start = last_nonzero.map_or(0, |i| i + 1);
    let numerator_degree =
        if c.len() - tail_start >= GF_MARGIN { Some(last_nonzero.unwrap_or(0)) } else { None };
    Ok(GfReport { denominator_degree: degree, coefficients: c, numerator_degree })
}

/// Denominator `prod_{i=1}^{k} (1-x^i) prod_{i=2}^{l} (1-x^i)`.
pub fn rational_gf_check(values: &[Natural], k: u32, l: u32) -> Result<GfReport> {
    let factors: Vec<u32> = (1..=k).chain(2..=l).collect();
    gf_check_with(values, &factors)
}

/// Whether every value of `qp` on `from..=to` is an integer.
pub fn integral_on(qp: &QuasiPolynomial, from: u64, to: u64) -> bool {
    (from..=to).all(|n| qp.evaluate(n).is_integer())
}

impl Default for QuasiPolynomial {
    fn default() -> Self {
        QuasiPolynomial { period: 1, polys: vec![Vec::new()], valid_from: 0 }
    }
}

impl QuasiPolynomial {
    pub fn constant(c: Rational) -> Self {
        QuasiPolynomial::new(vec![vec![c]], 0).expect("nonempty")
    }

    pub fn is_zero(&self) -> bool {
        self.polys.iter().all(|p| p.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partcore::euler_p_table;
    use crate::restrict2::{p_k1_table, p_kl_table};
    use num_traits::One;

    fn nats(v: impl IntoIterator<Item = u64>) -> Vec<Natural> {
        v.into_iter().map(Natural::from).collect()
    }

    #[test]
    fn ansatz_sizes() {
        let b1 = build_ansatz(1).unwrap();
        assert_eq!(b1.terms, vec![AnsatzTerm { power: 0, modulus: 1, residue: 0 }]);
        assert_eq!(build_ansatz(2).unwrap().len(), 6);
        assert_eq!(build_ansatz(4).unwrap().len(), 40);
        for k in 1..=8 {
            assert_eq!(build_ansatz(k).unwrap().len() as u32, k * k * (k + 1) / 2);
        }
        assert!(build_ansatz(0).is_err());
    }

    #[test]
    fn linear_sequence() {
        let values = nats(1..=21);
        let basis = build_ansatz(2).unwrap();
        let fit = fit_window(&values, &basis, 0, 20).unwrap().unwrap();
        assert_eq!(fit.canonical.period, 1);
        assert_eq!(fit.canonical.polys[0], vec![int(1), int(1)]);
        assert_eq!(evaluate_qp(&fit.canonical, 7), int(8));
        for n in 0..=30 {
            assert_eq!(fit.evaluate_raw(n), fit.canonical.evaluate(n));
        }
        assert!(matches!(fit_window(&values, &basis, 0, 5), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn partition_numbers_are_not_quasi_polynomial() {
        let values = euler_p_table(60);
        let basis = build_ansatz(3).unwrap();
        assert_eq!(fit_window(&values, &basis, 1, 60).unwrap(), None);
    }

    #[test]
    fn k4_matches_table_row() {
        let values = p_k1_table(4, 200);
        let (fit, start) = fit_min_start(&values, 4).unwrap();
        assert_eq!(start, 6);
        let row = reference_row(4).unwrap();
        assert_eq!(fit.canonical.polys, row.polys);
        assert_eq!(fit.canonical.period, 12);
        assert_eq!(row.evaluate(6), int(32));
        assert_eq!(values[6], Natural::from(32u32));
        assert!(holdout_matches(&row, &values, 6));
        assert!(!holdout_matches(&row, &values, 5));
        let basis = build_ansatz(4).unwrap();
        assert!(fit_window(&values, &basis, 6, 80).unwrap().is_some());
        for n in fit.start..=fit.start + 2 * basis.period() {
            assert_eq!(fit.evaluate_raw(n), fit.canonical.evaluate(n));
        }
        assert!(integral_on(&fit.canonical, 6, 300));
    }

    #[test]
    fn k5_matches_table_row() {
        assert_eq!(recommended_terms(5).unwrap(), 75 + 240);
        let values = p_k1_table(5, 260);
        let (fit, start) = fit_min_start(&values, 5).unwrap();
        assert_eq!(start, 12);
        assert_eq!(fit.canonical.polys, reference_row(5).unwrap().polys);
    }

    #[test]
    fn table1_rows_recovered() {
        for k in 1..=3 {
            for l in 1..=3 {
                // degree k + l - 2; periods 2, 3 or 6 need order 2 or 3
                let order = (k + l - 1).max(if k == 3 || l == 3 { 3 } else if l == 2 { 2 } else { 1 });
                let values = p_kl_table(k, l, 260);
                let (fit, start) = fit_min_start(&values, order).unwrap();
                assert!(start <= 1, "({k},{l}) start {start}");
                for n in 1..=60 {
                    let exact = crate::restrict2::closed_form_table1(k, l, n as u32).unwrap();
                    assert_eq!(fit.canonical.evaluate(n), Rational::from_integer(BigInt::from(exact)));
                }
            }
        }
    }

    #[test]
    fn brackets() {
        let row = reference_row(4).unwrap();
        let text = row.bracket_form();
        assert!(text.starts_with("1/18 n^3 + 5/12 n^2 + n - 83/72 + "), "{text}");
        assert!(text.contains("]_3") && text.contains("]_4"), "{text}");
        assert!(row.residue_form().lines().count() == 12);
        let lin = QuasiPolynomial::new(vec![vec![int(1), int(1)]], 0).unwrap();
        assert_eq!(lin.bracket_form(), "n + 1");
        let neg = QuasiPolynomial::new(vec![vec![int(-2), int(-1)], vec![int(0), int(-1)]], 0).unwrap();
        assert_eq!(neg.bracket_form(), "-n - 1 + [-1, 1]_2");
        assert_eq!(QuasiPolynomial::default().bracket_form(), "0");
    }

    #[test]
    fn components_reassemble() {
        let row = reference_row(5).unwrap();
        for power in 0..5 {
            let f = row.periodic_coefficient(power);
            let parts = exact_period_components(&f);
            for (r, expected) in f.iter().enumerate() {
                let total = parts.iter().fold(Rational::zero(), |acc, (d, comp)| acc + &comp[r % *d as usize]);
                assert_eq!(&total, expected);
            }
        }
    }

    #[test]
    fn period_folding() {
        let qp = QuasiPolynomial::new(vec![vec![int(1)], vec![int(2)], vec![int(1)], vec![int(2)]], 0).unwrap();
        assert_eq!(qp.period, 2);
        assert_eq!(qp.evaluate(5), int(2));
    }

    #[test]
    fn generating_functions() {
        let lin = nats(1..=60);
        let r = gf_check_with(&lin, &[1, 1]).unwrap();
        assert_eq!(r.numerator_degree, Some(0));
        assert_eq!(r.coefficients[0], BigInt::one());
        let r4 = rational_gf_check(&p_k1_table(4, 120), 4, 1).unwrap();
        assert!(r4.numerator_degree.is_some());
        for l in 2..=4 {
            let r = rational_gf_check(&p_kl_table(1, l, 80), 1, l).unwrap();
            assert_eq!(r.numerator_degree, Some(0));
        }
        assert!(rational_gf_check(&euler_p_table(80), 3, 1).unwrap().numerator_degree.is_none());
        assert!(rational_gf_check(&lin[..20], 4, 1).is_err());
    }
}
