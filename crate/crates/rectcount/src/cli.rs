//! Argument parsing and subcommand dispatch.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use rectcount_core::asympt::{benford_expected, benford_report, ln_natural, Preset};
use rectcount_core::mary2::{b_i0_table, b_ij_table, b_m_table, congruence_predict, CongruenceKind};
use rectcount_core::oracle::{self, Grid, Tiler};
use rectcount_core::partcore::{euler_p_table, nuclear_q_table, two_colored_q2_table};
use rectcount_core::qpfit::{fit_min_start, holdout_matches, recommended_terms, reference_row};
use rectcount_core::restrict2::{closed_form_table1, p_kl_table};
use rectcount_core::tile2::{p2_from_tilde, s_table, t_table, PartSet};
use rectcount_core::{Error, Natural};

use crate::cache::{resolve_dir, Cache};
use crate::format::{Format, FormatError, OutputRecord, Report, Row};
use crate::parallel;
use crate::verify::{run_suite, Suite};

/// Largest `p(2,n)` argument computed without `--long-running`.
pub const P2_LIMIT: u32 = 39;
/// Largest square side enumerated without `--long-running`.
pub const SQUARE_LIMIT: u32 = 4;
/// Largest `k` fitted without `--long-running`.
pub const FIT_LIMIT: u32 = 6;
/// Largest oracle grid area without `--long-running`.
pub const ORACLE_AREA_LIMIT: u32 = 24;

#[derive(Debug, Parser)]
#[command(name = "rectcount", version, about = "Exact counts of rectangle partitions of 2 x n and m x n grids")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Worker threads for enumeration-heavy subcommands.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Unlock p(2,n) for n >= 40, the 5 x 5 square and fits with k >= 7.
    #[arg(long, global = true)]
    pub long_running: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum P2Kind {
    P2,
    PTilde,
    Nuclear,
    Q2,
    S,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenfordSeq {
    P,
    P2,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Symmetry {
    S,
    T,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// p(2,n) and its companion sequences for n = 0..=max-n.
    P2 {
        #[arg(long, default_value_t = 9)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t = P2Kind::P2)]
        kind: P2Kind,
    },
    /// p(n,n) by enumeration, n = 1..=max-n.
    Square {
        #[arg(long, default_value_t = 4)]
        max_n: u32,
    },
    /// p_{k,l}(2,n), checked against the closed forms when k, l <= 3.
    Restricted {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long, default_value_t = 20)]
        max_n: u32,
    },
    /// m-ary counts: b_m without --i, b_{i,0} with --i, b_{i,j} with both.
    Mary {
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long, requires = "i")]
        j: Option<u32>,
        #[arg(long, default_value_t = 30)]
        max_n: u32,
    },
    /// Quasi-polynomial fit of p_{k,1}(2,n) over n = 0..terms.
    Fit {
        #[arg(long)]
        k: u32,
        /// Defaults to enough values for the fitting window plus holdout.
        #[arg(long)]
        terms: Option<u32>,
    },
    /// Leading-digit frequencies over growing windows.
    Benford {
        #[arg(long, default_value_t = 10)]
        base: u32,
        #[arg(long, default_value = "1")]
        prefix: String,
        #[arg(long, default_value_t = 1000)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t = BenfordSeq::P)]
        sequence: BenfordSeq,
    },
    /// Asymptotic formula against exact values.
    Asym {
        #[arg(long, default_value = "p2")]
        preset: String,
        #[arg(long, default_value_t = 40)]
        max_n: u32,
    },
    /// Brute-force multiset counts of m x n tilings, n = 0..=max-n.
    Oracle {
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        #[arg(long, requires = "l")]
        k: Option<u32>,
        #[arg(long, requires = "k")]
        l: Option<u32>,
        /// Count multisets with a row-swap symmetric tiling (2 rows only).
        #[arg(long, value_enum, conflicts_with = "k")]
        symmetric: Option<Symmetry>,
        /// Write every tiling of m x max-n, one per line.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Invariant sweeps; exit 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Core)]
        suite: Suite,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(Error::InvalidParameter(_) | Error::SizeGuard { .. } | Error::Domain(_)) => 2,
            _ => 1,
        }
    }
}

fn gate(ctx: &Ctx, ok: bool, what: &str) -> Result<(), CliError> {
    if ok || ctx.long_running {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{what} requires --long-running")))
    }
}

struct Ctx {
    long_running: bool,
    pool: rayon::ThreadPool,
    cache: Cache,
}

fn args<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_owned(), v)).collect()
}

/// Runs with process stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let ctx = Ctx {
        long_running: cli.long_running,
        pool: parallel::pool(cli.jobs),
        cache: Cache::new(resolve_dir(cli.cache_dir.as_deref())),
    };
    let result = execute(&cli.command, &ctx).and_then(|report| {
        let text = report.render(cli.format)?;
        out.write_all(text.as_bytes())?;
        Ok(report.record.all_pass())
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: &Command, ctx: &Ctx) -> Result<Report, CliError> {
    match command {
        Command::P2 { max_n, kind } => cmd_p2(ctx, *max_n, *kind),
        Command::Square { max_n } => cmd_square(ctx, *max_n),
        Command::Restricted { k, l, max_n } => cmd_restricted(ctx, *k, *l, *max_n),
        Command::Mary { m, i, j, max_n } => cmd_mary(ctx, *m, *i, *j, *max_n),
        Command::Fit { k, terms } => cmd_fit(ctx, *k, *terms),
        Command::Benford { base, prefix, max_n, sequence } => cmd_benford(ctx, *base, prefix, *max_n, *sequence),
        Command::Asym { preset, max_n } => cmd_asym(ctx, preset, *max_n),
        Command::Oracle { m, max_n, k, l, symmetric, dump } => {
            cmd_oracle(ctx, *m, *max_n, k.zip(*l), *symmetric, dump.as_ref())
        }
        Command::Verify { suite } => cmd_verify(ctx, *suite),
    }
}

fn kind_name(kind: P2Kind) -> &'static str {
    match kind {
        P2Kind::P2 => "p2",
        P2Kind::PTilde => "p_tilde",
        P2Kind::Nuclear => "nuclear",
        P2Kind::Q2 => "q2",
        P2Kind::S => "s",
        P2Kind::T => "t",
    }
}

fn sequence_values(ctx: &Ctx, kind: P2Kind, max_n: u32) -> Vec<Natural> {
    let max = max_n as usize;
    let tilde = |ctx: &Ctx| {
        ctx.cache.get_or_compute("p_tilde", &BTreeMap::new(), "tile2-grouped-1", max, || {
            parallel::tile_table(max_n, &PartSet::All, &ctx.pool)
        })
    };
    match kind {
        P2Kind::P2 => ctx.cache.get_or_compute("p2", &BTreeMap::new(), "tile2-grouped-1", max, || p2_from_tilde(&tilde(ctx))),
        P2Kind::PTilde => tilde(ctx),
        P2Kind::Nuclear => nuclear_q_table(max),
        P2Kind::Q2 => two_colored_q2_table(max),
        P2Kind::S => s_table(max),
        P2Kind::T => t_table(max),
    }
}

fn cmd_p2(ctx: &Ctx, max_n: u32, kind: P2Kind) -> Result<Report, CliError> {
    if matches!(kind, P2Kind::P2 | P2Kind::PTilde) {
        gate(ctx, max_n <= P2_LIMIT, &format!("max-n above {P2_LIMIT}"))?;
    }
    let values = sequence_values(ctx, kind, max_n);
    let mut rec = OutputRecord::new(kind_name(kind), BTreeMap::new());
    rec.rows = values.iter().enumerate().map(|(n, v)| Row::new(n as u64, v)).collect();
    Ok(Report::new(rec))
}

fn cmd_square(ctx: &Ctx, max_n: u32) -> Result<Report, CliError> {
    gate(ctx, max_n <= SQUARE_LIMIT, &format!("square side above {SQUARE_LIMIT}"))?;
    let mut rec = OutputRecord::new("square", BTreeMap::new());
    let values = ctx.cache.try_get_or_compute("square", &BTreeMap::new(), "oracle-keys-1", max_n as usize, || {
        (0..=max_n)
            .map(|n| Ok(parallel::count_multisets(&Tiler::new(n, n, oracle::all_blocks, ctx.long_running)?, &ctx.pool)))
            .collect::<Result<Vec<_>, Error>>()
    })?;
    rec.rows = values.iter().enumerate().skip(1).map(|(n, v)| Row::new(n as u64, v)).collect();
    Ok(Report::new(rec))
}

fn cmd_restricted(ctx: &Ctx, k: u32, l: u32, max_n: u32) -> Result<Report, CliError> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidParameter("k and l must be at least 1".into()).into());
    }
    let a = args([("k", k.to_string()), ("l", l.to_string())]);
    let values = ctx.cache.get_or_compute("restricted", &a, "restrict2-1", max_n as usize, || p_kl_table(k, l, max_n));
    let mut rec = OutputRecord::new("restricted", a);
    let closed = k <= 3 && l <= 3;
    for (n, v) in values.iter().enumerate() {
        let mut row = Row::new(n as u64, v);
        if closed && n >= 1 {
            let c = closed_form_table1(k, l, n as u32)?;
            row = row.pass(&c == v).predicted(c);
        }
        rec.rows.push(row);
    }
    Ok(Report::new(rec))
}

fn cmd_mary(ctx: &Ctx, m: u32, i: Option<u32>, j: Option<u32>, max_n: u32) -> Result<Report, CliError> {
    if m < 2 {
        return Err(Error::InvalidParameter("m must be at least 2".into()).into());
    }
    let max = max_n as usize;
    let (name, kind, a) = match (i, j) {
        (None, _) => ("b_m", CongruenceKind::Alkauskas, args([("m", m.to_string())])),
        (Some(i), None) => ("b_i0", CongruenceKind::BI0, args([("m", m.to_string()), ("i", i.to_string())])),
        (Some(i), Some(j)) => ("b_ij", CongruenceKind::BIJ, args([("m", m.to_string()), ("i", i.to_string()), ("j", j.to_string())])),
    };
    let (i, j) = (i.unwrap_or(0), j.unwrap_or(0));
    let values = ctx.cache.get_or_compute(name, &a, "mary2-1", max, || match kind {
        CongruenceKind::Alkauskas => b_m_table(m, max),
        CongruenceKind::BI0 => b_i0_table(m, i, max),
        CongruenceKind::BIJ => b_ij_table(m, i, j, max),
    });
    let predictable = congruence_predict(kind, m, i, j, 0).is_ok();
    let mut rec = OutputRecord::new(name, a);
    let modulus = BigUint::from(m);
    for (n, v) in values.iter().enumerate() {
        let mut row = Row::new(n as u64, v);
        if predictable {
            let predicted = congruence_predict(kind, m, i, j, n as u64)?;
            let residue = v % &modulus;
            row = row.pass(residue == BigUint::from(predicted)).predicted(predicted).residue(residue);
        }
        rec.rows.push(row);
    }
    Ok(Report::new(rec))
}

fn cmd_fit(ctx: &Ctx, k: u32, terms: Option<u32>) -> Result<Report, CliError> {
    gate(ctx, k <= FIT_LIMIT, &format!("fits with k above {FIT_LIMIT}"))?;
    let terms = match terms {
        Some(t) => t,
        None => recommended_terms(k)?.max(201) as u32,
    };
    if terms == 0 {
        return Err(CliError::Usage("terms must be positive".into()));
    }
    let a = args([("k", k.to_string()), ("l", "1".to_owned())]);
    let max = terms as usize - 1;
    let values = ctx.cache.get_or_compute("restricted", &a, "restrict2-1", max, || p_kl_table(k, 1, max as u32));
    let (fit, start) = fit_min_start(&values, k)?;
    let qp = &fit.canonical;
    let mut rep = Report::new(OutputRecord::new("fit", args([("k", k.to_string()), ("terms", terms.to_string())])));
    rep.note(format!("N = {start}, period {}, fit window [{}, {}]", qp.period, fit.start, fit.end));
    rep.note(format!("p_{{{k},1}}(2,n) = {}  (n >= {start})", qp.bracket_form()));
    for line in qp.residue_form().lines() {
        rep.note(line.to_owned());
    }
    if let Some(row) = reference_row(k) {
        let same = row == *qp;
        rep.note(format!("reference row: {}", if same { "identical" } else { "differs" }));
    }
    rep.note(format!("holdout n = {start}..{max}: {}", holdout_matches(qp, &values, start)));
    for (n, v) in values.iter().enumerate() {
        let predicted = qp.evaluate(n as u64);
        let mut row = Row::new(n as u64, v).predicted(&predicted).residue(n as u64 % qp.period);
        if n as u64 >= start {
            row = row.pass(predicted.is_integer() && predicted.to_integer() == BigInt::from(v.clone()));
        }
        rep.record.rows.push(row);
    }
    Ok(rep)
}

fn window_ends(max_n: u32) -> Vec<u32> {
    let mut ends: Vec<u32> = std::iter::successors(Some(10u32), |e| e.checked_mul(10)).take_while(|&e| e < max_n).collect();
    ends.push(max_n);
    ends
}

fn cmd_benford(ctx: &Ctx, base: u32, prefix: &str, max_n: u32, seq: BenfordSeq) -> Result<Report, CliError> {
    if max_n == 0 {
        return Err(CliError::Usage("max-n must be positive".into()));
    }
    let expected = benford_expected(base, prefix)?;
    let (name, values) = match seq {
        BenfordSeq::P => ("p", euler_p_table(max_n as usize)),
        BenfordSeq::P2 => {
            gate(ctx, max_n <= P2_LIMIT, &format!("max-n above {P2_LIMIT}"))?;
            ("p2", sequence_values(ctx, P2Kind::P2, max_n))
        }
        BenfordSeq::T => ("t", t_table(max_n as usize)),
    };
    let a = args([("base", base.to_string()), ("prefix", prefix.to_owned()), ("sequence", name.to_owned())]);
    let mut rep = Report::new(OutputRecord::new("benford", a));
    rep.note(format!("expected frequency {expected:.12}"));
    for end in window_ends(max_n) {
        let r = benford_report(&values[1..=end as usize], base, prefix)?;
        rep.note(format!("n <= {end}: observed {:.6}, deviation {:.6}", r.observed_frequency, r.deviation()));
        rep.record.rows.push(Row::new(u64::from(end), r.matches).predicted(format!("{:.3}", expected * r.sample_size as f64)));
    }
    Ok(rep)
}

fn cmd_asym(ctx: &Ctx, preset: &str, max_n: u32) -> Result<Report, CliError> {
    let p = Preset::from_name(preset).ok_or_else(|| {
        let names: Vec<&str> = Preset::ALL.iter().map(|p| p.name()).collect();
        CliError::Usage(format!("unknown preset {preset:?}, expected one of {}", names.join(", ")))
    })?;
    if max_n == 0 {
        return Err(CliError::Usage("max-n must be positive".into()));
    }
    let max = max_n as usize;
    let values = match p {
        Preset::HrP => euler_p_table(max),
        Preset::Nuclear => nuclear_q_table(max),
        Preset::Q2 => two_colored_q2_table(max),
        Preset::T => t_table(max),
        Preset::P2 | Preset::PTilde => {
            gate(ctx, max_n <= P2_LIMIT, &format!("max-n above {P2_LIMIT}"))?;
            sequence_values(ctx, if p == Preset::P2 { P2Kind::P2 } else { P2Kind::PTilde }, max_n)
        }
    };
    let spec = p.spec();
    let mut rep = Report::new(OutputRecord::new("asym", args([("preset", p.name().to_owned())])));
    rep.note(format!("c = {:.15}, delta = {}, lambda = {:.15}", spec.c, spec.delta, spec.lambda));
    let mut points: Vec<u32> = [10, 20, 40, 100, 1000, 10_000, 100_000].into_iter().filter(|&n| n < max_n).collect();
    points.push(max_n);
    for n in points {
        let exact = &values[n as usize];
        let ln_approx = spec.ln_eval(u64::from(n))?;
        let ratio = (ln_approx - ln_natural(exact)).exp();
        rep.note(format!("n = {n}: asymptotic/exact = {ratio:.6}"));
        rep.record.rows.push(Row::new(u64::from(n), exact).predicted(format_ln(ln_approx)));
    }
    Ok(rep)
}

/// Scientific notation from a natural logarithm, for values past f64 range.
fn format_ln(ln: f64) -> String {
    let log10 = ln / std::f64::consts::LN_10;
    let exp = log10.floor();
    format!("{:.6}e{}", 10f64.powf(log10 - exp), exp as i64)
}

fn cmd_oracle(
    ctx: &Ctx,
    m: u32,
    max_n: u32,
    kl: Option<(u32, u32)>,
    symmetric: Option<Symmetry>,
    dump: Option<&PathBuf>,
) -> Result<Report, CliError> {
    gate(ctx, m * max_n <= ORACLE_AREA_LIMIT, &format!("grids above {ORACLE_AREA_LIMIT} cells"))?;
    if symmetric.is_some() && m != 2 {
        return Err(CliError::Usage("--symmetric needs --m 2".into()));
    }
    let allow = |a: u32, b: u32| kl.is_none_or(|(k, l)| oracle::restricted_blocks(k, l)(a, b));
    let mut a = args([("m", m.to_string())]);
    if let Some((k, l)) = kl {
        a.insert("k".into(), k.to_string());
        a.insert("l".into(), l.to_string());
    }
    let predicted: Option<Vec<Natural>> = match (m, kl, symmetric) {
        (2, _, Some(Symmetry::S)) => Some(s_table(max_n as usize)),
        (2, _, Some(Symmetry::T)) => Some(t_table(max_n as usize)),
        (2, Some((k, l)), None) => Some(p_kl_table(k, l, max_n)),
        (2, None, None) => Some(sequence_values(ctx, P2Kind::P2, max_n)),
        (1, None, None) => Some(euler_p_table(max_n as usize)),
        _ => None,
    };
    let name = match symmetric {
        Some(Symmetry::S) => "oracle_s",
        Some(Symmetry::T) => "oracle_t",
        None => "oracle",
    };
    let values = ctx.cache.try_get_or_compute(name, &a, "oracle-keys-1", max_n as usize, || {
        (0..=max_n)
            .map(|n| match symmetric {
                Some(s) => oracle::count_symmetric_multisets(n, s == Symmetry::T),
                None => Ok(parallel::count_multisets(&Tiler::new(m, n, allow, ctx.long_running)?, &ctx.pool)),
            })
            .collect::<Result<Vec<_>, Error>>()
    })?;
    if let Some(path) = dump {
        let tiler = Tiler::new(m, max_n, allow, ctx.long_running)?;
        let mut w = BufWriter::new(File::create(path)?);
        let mut result = Ok(());
        tiler.visit(|blocks| {
            if result.is_ok() {
                result = writeln!(w, "{}", Grid::from_placements(m, max_n, blocks).dump());
            }
        });
        result?;
        w.flush()?;
    }
    let mut rec = OutputRecord::new(name, a);
    for (n, v) in values.iter().enumerate() {
        let mut row = Row::new(n as u64, v);
        if let Some(p) = &predicted {
            row = row.pass(&p[n] == v).predicted(&p[n]);
        }
        rec.rows.push(row);
    }
    Ok(Report::new(rec))
}

fn cmd_verify(ctx: &Ctx, suite: Suite) -> Result<Report, CliError> {
    let name = suite.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
    let checks = run_suite(suite, &ctx.pool);
    let mut rep = Report::new(OutputRecord::new("verify", args([("suite", name)])));
    for (idx, c) in checks.iter().enumerate() {
        rep.note(format!("{idx}: {} [{}] {}", c.name, if c.passed() { "ok" } else { "FAIL" }, c.detail));
        rep.record.rows.push(Row::new(idx as u64, c.violations).pass(c.passed()));
    }
    Ok(rep)
}
