//! Invariant sweeps behind the `verify` subcommand.

use rectcount_core::asympt::{benford_expected, benford_good_check, log_ratio_diag, murty_convolve, Preset};
use rectcount_core::mary2::{b_i0_enumerated, b_i0_table, b_ij_convolution_table, b_ij_table, verify_congruences, CongruenceKind};
use rectcount_core::oracle::{all_blocks, count_multisets, count_symmetric_multisets, restricted_blocks};
use rectcount_core::partcore::PartitionTable;
use rectcount_core::qpfit::{fit_min_start, holdout_matches, recommended_terms, reference_row};
use rectcount_core::restrict2::{closed_form_table1, p_k1_table, p_kl_table};
use rectcount_core::tile2::{p_tilde_pairs, p_tilde_table, s_recurrence_check, s_table, t_table, verify_bounds};

use crate::parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Identities, oracle agreement, closed forms, recurrences, holding congruences.
    Core,
    /// Upper and lower bounds on p(2,n) for n = 1..=40.
    Bounds,
    /// Full congruence sweep over m in {2,3,5}.
    Congruence,
    /// Asymptotic constants and trends.
    Asym,
    /// Quasi-polynomial fits for k = 4, 5.
    Fit,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub violations: usize,
    pub detail: String,
}

impl Check {
    fn new(name: &str, violations: usize, detail: impl Into<String>) -> Self {
        Check { name: name.to_owned(), violations, detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

pub fn run_suite(suite: Suite, pool: &rayon::ThreadPool) -> Vec<Check> {
    match suite {
        Suite::Core => core_checks(pool),
        Suite::Bounds => vec![bounds()],
        Suite::Congruence => congruence_sweep(),
        Suite::Asym => asym_checks(),
        Suite::Fit => fit_checks(),
        Suite::All => {
            let mut all = core_checks(pool);
            all.push(bounds());
            all.extend(congruence_sweep());
            all.extend(asym_checks());
            all.extend(fit_checks());
            all
        }
    }
}

fn core_checks(pool: &rayon::ThreadPool) -> Vec<Check> {
    let mut out = Vec::new();

    let tilde = p_tilde_table(40);
    let bad = (0..=14).filter(|&n| p_tilde_pairs(n) != tilde[n as usize]).count();
    out.push(Check::new("p_tilde grouped vs row pairs", bad, "n <= 14"));

    let p2 = parallel::p2_table(40, pool);
    let bad = (0..=6).filter(|&n| count_multisets(2, n, all_blocks).expect("small grid") != p2[n as usize]).count();
    out.push(Check::new("p2 vs oracle", bad, "n <= 6"));

    let mut bad = 0;
    for k in 1..=3 {
        for l in 1..=3 {
            let t = p_kl_table(k, l, 6);
            bad += (0..=6).filter(|&n| count_multisets(2, n, restricted_blocks(k, l)).expect("small grid") != t[n as usize]).count();
        }
    }
    out.push(Check::new("p_kl vs filtered oracle", bad, "k, l <= 3, n <= 6"));

    let (s, t) = (s_table(6), t_table(6));
    let bad = (0..=6u32)
        .filter(|&n| {
            count_symmetric_multisets(n, false).expect("small grid") != s[n as usize]
                || count_symmetric_multisets(n, true).expect("small grid") != t[n as usize]
        })
        .count();
    out.push(Check::new("S and T vs symmetric oracle", bad, "n <= 6"));

    let check = s_recurrence_check(300);
    out.push(Check::new(
        "S recurrence",
        check.first_mismatch.is_some() as usize,
        format!("n <= 300, first mismatch {:?}", check.first_mismatch),
    ));

    let mut bad = 0;
    for k in 1..=3 {
        for l in 1..=3 {
            let t = p_kl_table(k, l, 60);
            bad += (1..=60).filter(|&n| closed_form_table1(k, l, n).ok().as_ref() != Some(&t[n as usize])).count();
        }
    }
    out.push(Check::new("closed forms", bad, "k, l <= 3, 1 <= n <= 60"));

    let mut bad = 0;
    for m in [2, 3] {
        for i in 0..=3 {
            let t = b_i0_table(m, i, 60);
            bad += (0..=60u32).filter(|&n| b_i0_enumerated(m, i, n) != t[n as usize]).count();
        }
    }
    out.push(Check::new("b_i0 recurrence vs enumeration", bad, "m in {2,3}, i <= 3, n <= 60"));

    let mut bad = 0;
    for m in [2, 3] {
        for i in 0..=2 {
            for j in 0..=2 {
                let (a, b) = (b_ij_table(m, i, j, 60), b_ij_convolution_table(m, i, j, 60));
                bad += a.iter().zip(&b).filter(|(x, y)| x != y).count();
            }
        }
    }
    out.push(Check::new("b_ij recurrence vs convolution", bad, "m in {2,3}, i, j <= 2, n <= 60"));

    // the sweeps known to hold; the full sweep is its own suite
    let mut bad = 0;
    for m in [2, 3, 5] {
        bad += count(CongruenceKind::Alkauskas, m, 0, 0, 2000);
    }
    for i in 1..=3 {
        bad += count(CongruenceKind::BI0, 2, i, 0, 500);
        for j in 0..=3 {
            bad += count(CongruenceKind::BIJ, 2, i, j, 500);
        }
    }
    out.push(Check::new("congruences (m = 2, classical m in {3,5})", bad, "n <= 500, classical n <= 2000"));
    out
}

fn count(kind: CongruenceKind, m: u32, i: u32, j: u32, n_max: usize) -> usize {
    verify_congruences(kind, m, i, j, n_max).map(|r| r.counterexamples.len()).unwrap_or(1)
}

fn bounds() -> Check {
    let p = PartitionTable::new(80);
    let p2 = p_tilde_table(40);
    let p2 = rectcount_core::tile2::p2_from_tilde(&p2);
    let mut bad = 0;
    let mut failing = Vec::new();
    for n in 1..=40 {
        let report = verify_bounds(n, &p2, &p);
        for c in report.checks.iter().filter(|c| !c.holds) {
            bad += 1;
            failing.push(format!("{}@{}", c.name, n));
        }
    }
    Check::new("p2 bounds", bad, format!("1 <= n <= 40, violations [{}]", failing.join(", ")))
}

fn congruence_sweep() -> Vec<Check> {
    let mut out = Vec::new();
    for m in [2u32, 3, 5] {
        out.push(Check::new(&format!("classical congruence m = {m}"), count(CongruenceKind::Alkauskas, m, 0, 0, 2000), "n <= 2000"));
        let lo = if m == 2 { 1 } else { 0 };
        let mut bad = 0;
        let mut first = None;
        for i in lo..=3 {
            for j in 0..=3 {
                let kind = if j == 0 { CongruenceKind::BI0 } else { CongruenceKind::BIJ };
                if let Ok(r) = verify_congruences(kind, m, i, j, 500) {
                    if first.is_none() {
                        first = r.counterexamples.first().map(|c| (i, j, c.n, c.computed, c.predicted));
                    }
                    bad += r.counterexamples.len();
                }
            }
        }
        let detail = match first {
            Some((i, j, n, c, p)) => format!("n <= 500, first (i,j,n) = ({i},{j},{n}): residue {c}, predicted {p}"),
            None => "n <= 500".to_owned(),
        };
        out.push(Check::new(&format!("rectangular congruences m = {m}"), bad, detail));
    }
    out
}

fn asym_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let composed = murty_convolve(&Preset::Nuclear.spec(), &Preset::PTilde.spec()).expect("positive lambdas");
    let target = Preset::P2.spec();
    let rel = |a: f64, b: f64| ((a - b) / b).abs();
    let worst = rel(composed.c, target.c).max(rel(composed.delta, target.delta)).max(rel(composed.lambda, target.lambda));
    out.push(Check::new("Murty composition", (worst > 1e-12) as usize, format!("max relative error {worst:.3e}")));

    let ratio = log_ratio_diag(10_000).unwrap_or(f64::NAN);
    let off = rel(ratio, 2f64.sqrt());
    out.push(Check::new("ln T / ln p near sqrt 2", (off > 0.02 || off.is_nan()) as usize, format!("{ratio:.6} at n = 10^4")));

    let total: f64 = (1..=9).map(|d| benford_expected(10, &d.to_string()).unwrap_or(f64::NAN)).sum();
    out.push(Check::new("Benford expectation sums to 1", ((total - 1.0).abs() > 1e-12) as usize, format!("{total:.15}")));

    let good = benford_good_check(&target, 1, 100_000).map(|r| r.passes()).unwrap_or(false);
    out.push(Check::new("good-sequence trend", (!good) as usize, "p2 parameters, n <= 10^5"));
    out
}

fn fit_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for (k, expected) in [(4u32, 6u64), (5, 12)] {
        let terms = recommended_terms(k).expect("k >= 1").max(201);
        let values = p_k1_table(k, terms as u32 - 1);
        let detail;
        let bad = match fit_min_start(&values, k) {
            Ok((fit, n)) => {
                let row = reference_row(k);
                let same = row.as_ref() == Some(&fit.canonical);
                let hold = holdout_matches(&fit.canonical, &values, n);
                detail = format!("N = {n}, table row {}, holdout {}", if same { "equal" } else { "differs" }, hold);
                (n != expected) as usize + (!same) as usize + (!hold) as usize
            }
            Err(e) => {
                detail = e.to_string();
                1
            }
        };
        out.push(Check::new(&format!("fit k = {k}"), bad, detail));
    }
    out
}
