//! Floating-point asymptotic evaluators, composition of asymptotics under
//! convolution, Almkvist leading terms and Benford diagnostics.
//!
//! Exponentials are kept in log space; compare with exact counts through
//! [`ln_natural`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use core::f64::consts::{LN_2, PI};

use libm::{exp, fabs, log, pow, sqrt};
use num_traits::{ToPrimitive, Zero};

use crate::error::{invalid, Error};
use crate::partcore::{Natural, PartitionTable};
use crate::tile2::{t_count_at, t_table};
use crate::Result;

/// `c * n^delta * exp(lambda * sqrt(n))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymSpec {
    pub c: f64,
    pub delta: f64,
    pub lambda: f64,
}

impl AsymSpec {
    pub fn new(c: f64, delta: f64, lambda: f64) -> Result<Self> {
        if !(c.is_finite() && delta.is_finite() && lambda.is_finite()) || c <= 0.0 || lambda < 0.0 {
            return Err(invalid("need finite c > 0 and lambda >= 0"));
        }
        Ok(AsymSpec { c, delta, lambda })
    }

    pub fn ln_eval(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::Domain(String::from("n = 0")));
        }
        let x = n as f64;
        Ok(log(self.c) + self.delta * log(x) + self.lambda * sqrt(x))
    }

    /// May overflow to infinity for large `n`; prefer [`AsymSpec::ln_eval`].
    pub fn eval(&self, n: u64) -> Result<f64> {
        self.ln_eval(n).map(exp)
    }

    /// `exp(ln_eval(n) - ln(exact))`.
    pub fn ratio_to(&self, n: u64, exact: &Natural) -> Result<f64> {
        Ok(exp(self.ln_eval(n)? - ln_natural(exact)))
    }
}

/// Named asymptotic formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `p(n)`, Hardy-Ramanujan.
    HrP,
    /// `p(n) - p(n-1)`.
    Nuclear,
    /// `p~(2,n) ~ p(2n)`.
    PTilde,
    P2,
    Q2,
    T,
}

impl Preset {
    pub const ALL: [Preset; 6] = [Preset::HrP, Preset::Nuclear, Preset::PTilde, Preset::P2, Preset::Q2, Preset::T];

    pub fn spec(self) -> AsymSpec {
        let (c, delta, lambda) = match self {
            Preset::HrP => (1.0 / (4.0 * sqrt(3.0)), -1.0, PI * sqrt(2.0 / 3.0)),
            Preset::Nuclear => (PI / (12.0 * sqrt(2.0)), -1.5, PI * sqrt(2.0 / 3.0)),
            Preset::PTilde => (1.0 / (8.0 * sqrt(3.0)), -1.0, 2.0 * PI / sqrt(3.0)),
            Preset::P2 => (PI * pow(2.0, 0.25) / 32.0, -1.75, PI * sqrt(2.0)),
            Preset::Q2 => (pow(3.0, 0.25) / 12.0, -1.25, 2.0 * PI / sqrt(3.0)),
            Preset::T => (PI / (6.0 * pow(3.0, 0.25)), -1.75, 2.0 * PI / sqrt(3.0)),
        };
        AsymSpec { c, delta, lambda }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::HrP => "p",
            Preset::Nuclear => "nuclear",
            Preset::PTilde => "p_tilde",
            Preset::P2 => "p2",
            Preset::Q2 => "q2",
            Preset::T => "t",
        }
    }

    pub fn from_name(name: &str) -> Option<Preset> {
        Preset::ALL.into_iter().find(|p| p.name() == name)
    }
}

/// Asymptotic of the convolution `sum f(i) g(n-i)` by the saddle point:
/// `c_f c_g 2 sqrt(2 pi) A^{2a+1} B^{2b+1} / (A^2+B^2)^{a+b+5/4}
/// n^{a+b+3/4} exp(sqrt((A^2+B^2) n))`.
pub fn murty_convolve(f: &AsymSpec, g: &AsymSpec) -> Result<AsymSpec> {
    if f.lambda <= 0.0 || g.lambda <= 0.0 {
        return Err(invalid("both exponential coefficients must be positive"));
    }
    let (a, b) = (f.lambda, g.lambda);
    let s = a * a + b * b;
    let c = f.c * g.c * 2.0 * sqrt(2.0 * PI) * pow(a, 2.0 * f.delta + 1.0) * pow(b, 2.0 * g.delta + 1.0)
        / pow(s, f.delta + g.delta + 1.25);
    AsymSpec::new(c, f.delta + g.delta + 0.75, sqrt(s))
}

/// Natural logarithm of a positive big integer from its bit length and top
/// 64 bits. Zero maps to `-inf`.
pub fn ln_natural(v: &Natural) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = v.bits();
    if bits <= 64 {
        return log(v.to_u64().expect("fits in 64 bits") as f64);
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().expect("64 bits");
    log(top as f64) + shift as f64 * LN_2
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Truncated Almkvist expansion of `p_A(n)` for the multiset `A`, using the
/// symmetric terms up to `sigma_order`.
pub fn almkvist_asym(parts: &[u32], n: f64, order: u32) -> Result<f64> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(invalid("A must be a nonempty multiset of positive parts"));
    }
    if order % 2 == 1 || order > 6 {
        return Err(invalid("order must be 0, 2, 4 or 6"));
    }
    let power_sum = |e: i32| parts.iter().map(|&a| libm::pow(f64::from(a), f64::from(e))).sum::<f64>();
    let (s1, s2, s4, s6) = (power_sum(1), power_sum(2), power_sum(4), power_sum(6));
    let sigma = [
        1.0,
        -s2 / 24.0,
        (5.0 * s2 * s2 + 2.0 * s4) / 5760.0,
        -(35.0 * s2 * s2 * s2 + 42.0 * s2 * s4 + 16.0 * s6) / 2_903_040.0,
    ];
    let k = parts.len() as i64;
    let shifted = n + s1 / 2.0;
    let mut total = 0.0;
    for i in (0..=order as i64).step_by(2) {
        let e = k - 1 - i;
        if e < 0 {
            break;
        }
        total += sigma[(i / 2) as usize] * pow(shifted, e as f64) / factorial(e as u32);
    }
    let product: f64 = parts.iter().map(|&a| f64::from(a)).product();
    Ok(total / product)
}

/// `(1-x)^2 / pi * exp(pi^2 / (3(1-x)))`.
pub fn gt_singular(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("x = {x}")));
    }
    let y = 1.0 - x;
    Ok(y * y / PI * exp(PI * PI / (3.0 * y)))
}

/// `sum_{n <= terms} T(n) x^n` in floating point.
pub fn gt_series(x: f64, terms: usize) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("x = {x}")));
    }
    let lx = log(x);
    Ok(t_table(terms).iter().enumerate().map(|(n, t)| exp(ln_natural(t) + n as f64 * lx)).sum())
}

/// `(1 - x^2) P(x)^2` from the Euler product, for `x` too close to 1 for the
/// truncated series.
pub fn gt_product(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("x = {x}")));
    }
    let mut ln_p = 0.0;
    let mut xk = x;
    while xk > 1e-18 {
        ln_p -= libm::log1p(-xk);
        xk *= x;
    }
    Ok((1.0 - x * x) * exp(2.0 * ln_p))
}

/// Series value divided by [`gt_singular`].
pub fn gt_ratio(x: f64, terms: usize) -> Result<f64> {
    Ok(gt_series(x, terms)? / gt_singular(x)?)
}

/// `ln T(n) / ln p(n)` from exact values.
pub fn log_ratio_diag(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("n = {n}")));
    }
    let p = PartitionTable::new(n);
    Ok(ln_natural(&t_count_at(n, &p)) / ln_natural(p.get(n)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenfordReport {
    pub base: u32,
    pub prefix: String,
    pub observed_frequency: f64,
    pub expected: f64,
    pub sample_size: usize,
    pub matches: usize,
}

impl BenfordReport {
    pub fn deviation(&self) -> f64 {
        fabs(self.observed_frequency - self.expected)
    }
}

fn parse_prefix(base: u32, prefix: &str) -> Result<u64> {
    if !(2..=36).contains(&base) {
        return Err(invalid("base must be in 2..=36"));
    }
    let value = u64::from_str_radix(prefix, base).map_err(|_| invalid(format!("bad base-{base} prefix {prefix:?}")))?;
    if prefix.is_empty() || prefix.starts_with('0') || prefix.starts_with('+') {
        return Err(invalid("prefix must start with a nonzero digit"));
    }
    Ok(value)
}

/// `log_b(f+1) - log_b(f)` where `f` is the prefix read in base `b`.
pub fn benford_expected(base: u32, prefix: &str) -> Result<f64> {
    let f = parse_prefix(base, prefix)? as f64;
    Ok((log(f + 1.0) - log(f)) / log(f64::from(base)))
}

/// Fraction of `values` whose base-`b` representation starts with `prefix`.
pub fn benford_report(values: &[Natural], base: u32, prefix: &str) -> Result<BenfordReport> {
    let expected = benford_expected(base, prefix)?;
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let prefix = prefix.to_ascii_lowercase();
    let mut matches = 0;
    for v in values {
        if v.is_zero() {
            return Err(Error::Domain(String::from("zero value")));
        }
        if v.to_str_radix(base).starts_with(&prefix) {
            matches += 1;
        }
    }
    Ok(BenfordReport {
        base,
        prefix,
        observed_frequency: matches as f64 / values.len() as f64,
        expected,
        sample_size: values.len(),
        matches,
    })
}

/// Numerical trends for a sequence `b(n) exp(c(n))` with `c(n) = lambda sqrt(n)`
/// and `b(n) = c n^delta`, first derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct GoodSequenceReport {
    pub grid: Vec<f64>,
    pub c_prime: Vec<f64>,
    pub n_c_prime: Vec<f64>,
    pub log_b_ratio: Vec<f64>,
    /// `c'(n)` positive, strictly decreasing and shrinking.
    pub c_prime_to_zero: bool,
    /// `n c'(n)` strictly increasing and growing.
    pub n_c_prime_unbounded: bool,
    /// `|(log b)'(n) / c'(n)|` strictly decreasing and shrinking.
    pub log_b_ratio_to_zero: bool,
}

impl GoodSequenceReport {
    pub fn passes(&self) -> bool {
        self.c_prime_to_zero && self.n_c_prime_unbounded && self.log_b_ratio_to_zero
    }
}

fn central_diff(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = x * 1e-5;
    (f(x + h) - f(x - h)) / (2.0 * h)
}

fn strictly(values: &[f64], decreasing: bool) -> bool {
    values.iter().all(|v| v.is_finite())
        && values.windows(2).all(|w| if decreasing { w[1] < w[0] } else { w[1] > w[0] })
}

pub fn benford_good_check(spec: &AsymSpec, h: u32, n_max: u64) -> Result<GoodSequenceReport> {
    if h != 1 {
        return Err(invalid("only first derivatives are supported"));
    }
    if n_max < 100 {
        return Err(invalid("n_max must be at least 100"));
    }
    // geometric grid from 10 to n_max
    let steps = 40;
    let ratio = pow(n_max as f64 / 10.0, 1.0 / steps as f64);
    let grid: Vec<f64> = (0..=steps).map(|s| 10.0 * pow(ratio, s as f64)).collect();
    let c = |x: f64| spec.lambda * sqrt(x);
    let log_b = |x: f64| log(spec.c) + spec.delta * log(x);
    let c_prime: Vec<f64> = grid.iter().map(|&x| central_diff(c, x)).collect();
    let n_c_prime: Vec<f64> = grid.iter().zip(&c_prime).map(|(&x, &d)| x * d).collect();
    let log_b_ratio: Vec<f64> = grid.iter().zip(&c_prime).map(|(&x, &d)| fabs(central_diff(log_b, x) / d)).collect();
    let shrinks = |v: &[f64]| v[v.len() - 1] < 0.5 * v[0];
    let c_prime_to_zero = c_prime[0] > 0.0 && strictly(&c_prime, true) && shrinks(&c_prime);
    let n_c_prime_unbounded =
        strictly(&n_c_prime, false) && n_c_prime[n_c_prime.len() - 1] > 2.0 * n_c_prime[0];
    // a polynomial prefactor with delta = 0 has zero ratio everywhere
    let log_b_ratio_to_zero = log_b_ratio.iter().all(|v| v.is_finite())
        && (log_b_ratio.iter().all(|&v| v == 0.0) || (strictly(&log_b_ratio, true) && shrinks(&log_b_ratio)));
    Ok(GoodSequenceReport { grid, c_prime, n_c_prime, log_b_ratio, c_prime_to_zero, n_c_prime_unbounded, log_b_ratio_to_zero })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partcore::{euler_p_table, nuclear_q, p_multiset};
    use crate::tile2::{p2_table, t_count};

    fn close(a: f64, b: f64, rel: f64) -> bool {
        fabs(a - b) <= rel * fabs(b)
    }

    #[test]
    fn presets_and_eval() {
        assert!(Preset::P2.spec().eval(0).is_err());
        let v = Preset::P2.spec().eval(3).unwrap();
        assert!(v > 1.0 && v < 100.0, "{v}");
        for n in [10u64, 100, 1000] {
            let r = Preset::T.spec().eval(n).unwrap() / Preset::Q2.spec().eval(n).unwrap();
            assert!(close(r, 2.0 * PI / sqrt(3.0 * n as f64), 1e-12));
        }
        let r = Preset::Nuclear.spec().ratio_to(100, &nuclear_q(100)).unwrap();
        assert!((0.8..=1.25).contains(&r), "{r}");
        for p in Preset::ALL {
            assert_eq!(Preset::from_name(p.name()), Some(p));
        }
    }

    #[test]
    fn murty_reproduces_p2() {
        let composed = murty_convolve(&Preset::Nuclear.spec(), &Preset::PTilde.spec()).unwrap();
        let target = Preset::P2.spec();
        assert!(close(composed.c, target.c, 1e-12));
        assert!(close(composed.delta, target.delta, 1e-12));
        assert!(close(composed.lambda, target.lambda, 1e-12));
        let swapped = murty_convolve(&Preset::PTilde.spec(), &Preset::Nuclear.spec()).unwrap();
        assert!(close(swapped.c, composed.c, 1e-14));
        let flat = AsymSpec::new(1.0, 0.0, 0.0).unwrap();
        assert!(murty_convolve(&flat, &target).is_err());
    }

    #[test]
    fn p2_ratio_trend() {
        let p2 = p2_table(40);
        let spec = Preset::P2.spec();
        let r10 = spec.ratio_to(10, &p2[10]).unwrap();
        let r40 = spec.ratio_to(40, &p2[40]).unwrap();
        assert!((0.5..=2.0).contains(&r40));
        assert!(fabs(r40 - 1.0) < fabs(r10 - 1.0));
    }

    #[test]
    fn t_ratio_trend() {
        let spec = Preset::T.spec();
        let p = PartitionTable::new(10_000);
        let dev: Vec<f64> = [100usize, 1000, 10_000]
            .iter()
            .map(|&n| fabs(spec.ratio_to(n as u64, &t_count_at(n, &p)).unwrap() - 1.0))
            .collect();
        assert!(dev[2] < 0.1);
        assert!(dev[0] > dev[1] && dev[1] > dev[2]);
    }

    #[test]
    fn ln_of_big_values() {
        let p = euler_p_table(2000);
        for n in [0usize, 5, 64, 300, 2000] {
            let s = p[n].to_str_radix(10);
            // ln from the leading 17 decimal digits
            let lead: f64 = s[..s.len().min(17)].parse().unwrap();
            let expected = log(lead) + (s.len() - s.len().min(17)) as f64 * core::f64::consts::LN_10;
            assert!(fabs(ln_natural(&p[n]) - expected) <= 1e-14 * expected.max(1.0));
        }
        assert_eq!(ln_natural(&Natural::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn almkvist() {
        assert_eq!(almkvist_asym(&[1], 17.0, 0).unwrap(), 1.0);
        let exact = p_multiset(100, &[1, 2]).to_f64().unwrap();
        assert_eq!(exact, 51.0);
        assert!(close(almkvist_asym(&[1, 2], 100.0, 2).unwrap(), exact, 0.02));
        let exact = p_multiset(40, &[1, 1, 2]).to_f64().unwrap();
        assert!(close(almkvist_asym(&[1, 1, 2], 40.0, 2).unwrap(), exact, 0.05));
        // with two parts the order-2 term has a negative factorial index and drops out
        assert_eq!(almkvist_asym(&[1, 2], 100.0, 2).unwrap(), almkvist_asym(&[1, 2], 100.0, 0).unwrap());
        let exact = p_multiset(100, &[1, 2, 3]).to_f64().unwrap();
        let e0 = fabs(almkvist_asym(&[1, 2, 3], 100.0, 0).unwrap() - exact);
        let e2 = fabs(almkvist_asym(&[1, 2, 3], 100.0, 2).unwrap() - exact);
        assert!(e2 < e0);
        assert!(almkvist_asym(&[1, 2], 10.0, 3).is_err());
        assert!(almkvist_asym(&[], 10.0, 0).is_err());
    }

    #[test]
    fn gt_formula() {
        let v = gt_singular(0.5).unwrap();
        assert!(close(v, 0.25 / PI * exp(2.0 * PI * PI / 3.0), 1e-14));
        assert!(close(gt_singular(1e-12).unwrap(), exp(PI * PI / 3.0) / PI, 1e-9));
        assert!(gt_singular(1.0).is_err());
        assert!(gt_singular(0.0).is_err());
        // the displayed form lacks a constant factor exp(-pi^2/6)
        let target = exp(-PI * PI / 6.0);
        let r8 = gt_ratio(0.8, 4000).unwrap();
        let r9 = gt_ratio(0.9, 4000).unwrap();
        assert!(close(r9, gt_product(0.9).unwrap() / gt_singular(0.9).unwrap(), 1e-9));
        assert!(fabs(r9 - target) < fabs(r8 - target));
        assert!(close(r9, target, 0.05), "{r9}");
        let r99 = gt_product(0.99).unwrap() / gt_singular(0.99).unwrap();
        assert!(close(r99, target, 0.01), "{r99}");
    }

    #[test]
    fn log_ratio() {
        let at_large = log_ratio_diag(10_000).unwrap();
        assert!(close(at_large, sqrt(2.0), 0.02), "{at_large}");
        assert!(log_ratio_diag(100).unwrap().is_finite());
        assert!(log_ratio_diag(2).unwrap().is_finite());
        assert!(log_ratio_diag(1).is_err());
    }

    #[test]
    fn benford_basics() {
        assert!(close(benford_expected(10, "1").unwrap(), core::f64::consts::LOG10_2, 1e-14));
        let total: f64 = (1..=9).map(|d| benford_expected(10, &alloc::format!("{d}")).unwrap()).sum();
        assert!(fabs(total - 1.0) < 1e-12);
        let digits: Vec<Natural> = (1u32..=9).map(Natural::from).collect();
        let r = benford_report(&digits, 10, "1").unwrap();
        assert!(close(r.observed_frequency, 1.0 / 9.0, 1e-15));
        assert_eq!(benford_report(&[], 10, "1"), Err(Error::EmptyInput));
        assert!(benford_report(&[Natural::zero()], 10, "1").is_err());
        assert!(benford_expected(10, "0").is_err());
        assert!(benford_expected(10, "1a").is_err());
        assert!(close(benford_expected(16, "a").unwrap(), log(11.0 / 10.0) / log(16.0), 1e-14));
    }

    #[test]
    fn good_sequence_checks() {
        assert!(benford_good_check(&Preset::P2.spec(), 1, 1_000_000).unwrap().passes());
        assert!(benford_good_check(&Preset::HrP.spec(), 1, 1_000_000).unwrap().passes());
        let flat = AsymSpec::new(1.0, 2.0, 0.0).unwrap();
        assert!(!benford_good_check(&flat, 1, 1_000_000).unwrap().n_c_prime_unbounded);
        assert!(benford_good_check(&flat, 2, 1000).is_err());
    }

    #[test]
    fn t_exact_smoke() {
        assert!(Preset::T.spec().ratio_to(1000, &t_count(1000)).unwrap() > 1.0);
    }
}
