//! Command dispatch and exit codes.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;

use alderlab_core::injection::{
    verify_injection, AlphaShiftMap, BetaMap, InjectionError, InjectionSpec, ShiftTarget, ShiftTwoMap,
};
use alderlab_core::part_sets::{
    build_s_shift2, build_s_shift_alpha, build_t_r, dominates_everywhere, t_r_exclusion_menu, EventuallyPeriodicSet,
    SetError,
};
use alderlab_core::partition::{set_counts, CongruenceSpec, GapSpec, PartitionError, Variant};
use alderlab_core::series::{g_series, l_series, q_series, QForm, SeriesError};
use alderlab_core::verifier::{
    check_chain, check_exceptions_level_a, check_lemma_shift, check_pointwise, check_series_bound, check_shift,
    check_small_n_regime, reproduce_table, scan_conjectures, ChainReport, Conjecture, CountProvider, DirectCounts,
    InequalityReport, NmaxRule, SeriesBound, TableCheck, TableId, TableParams, Verdict, VerifyError,
};
use alderlab_core::{log2_floor_succ, InjectionCertificate};
use clap::Parser;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::args::{
    Cli, Command, ConjectureArg, CountArgs, CountFn, FormArg, InjectionKindArg, NArgs, NmaxArg, ResidueArg, ScanArgs,
    SeriesArgs, SeriesFn, Span, TargetArg, VerifyCommand,
};
use crate::cache::{self, CacheError, CachedCounts, CountCache};
use crate::output::{join_set, yes_no, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CACHE_AUDIT: i32 = 3;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Cache(#[from] CacheError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Cache(CacheError::AuditFailed { .. } | CacheError::AuditUnavailable { .. }) => EXIT_CACHE_AUDIT,
            _ => EXIT_USAGE,
        }
    }
}

macro_rules! invalid_from {
    ($($t:ty),*) => {$(
        impl From<$t> for RunError {
            fn from(e: $t) -> Self {
                RunError::Invalid(e.to_string())
            }
        }
    )*};
}

invalid_from!(VerifyError, InjectionError, PartitionError, SeriesError, SetError);

fn invalid<T>(msg: impl Into<String>) -> Result<T, RunError> {
    Err(RunError::Invalid(msg.into()))
}

fn need_span(n: &NArgs) -> Result<Span, RunError> {
    n.span().ok_or_else(|| RunError::Invalid("give --n or --n-range".into()))
}

fn resolve_nmax(nmax: NmaxArg, auto: u64) -> u64 {
    match nmax {
        NmaxArg::Auto => auto,
        NmaxArg::Fixed(n) => n,
    }
}

fn regime_nmax(a: u64, d: u64) -> u64 {
    NmaxRule::Auto.resolve(a, d)
}

fn residue_set(r: &ResidueArg) -> Result<EventuallyPeriodicSet, RunError> {
    Ok(EventuallyPeriodicSet::residue_classes(r.modulus, r.residues.iter().copied())?)
}

fn shift_target(t: Option<TargetArg>, d: u64) -> ShiftTarget {
    match t {
        Some(TargetArg::G) => ShiftTarget::G,
        Some(TargetArg::L) => ShiftTarget::L,
        None => ShiftTarget::natural(d),
    }
}

#[derive(Serialize)]
struct CountValue {
    n: u64,
    value: String,
}

#[derive(Serialize)]
struct CountOutput {
    function: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    parts: Option<String>,
    values: Vec<CountValue>,
}

fn cmd_count(p: &dyn CountProvider, args: &CountArgs) -> Result<Report, RunError> {
    let span = need_span(&args.n)?;
    let need_d = || args.d.ok_or_else(|| RunError::Invalid(format!("--fn {} needs --d", args.function.name())));
    let (table, a, d, parts) = match args.function {
        CountFn::Gap => {
            let d = need_d()?;
            (p.gap_counts(&GapSpec::new(args.a, d)?, span.hi)?, Some(args.a), Some(d), None)
        }
        CountFn::Congruence | CountFn::CongruenceExcluded => {
            let d = need_d()?;
            let variant = if args.function == CountFn::Congruence {
                Variant::Full
            } else {
                Variant::ExcludeCoResidue
            };
            let spec = CongruenceSpec::new(args.a, d, variant)?;
            (p.congruence_counts(&spec, span.hi)?, Some(args.a), Some(d), None)
        }
        CountFn::Rho => {
            let r = args
                .residues
                .as_ref()
                .ok_or_else(|| RunError::Invalid("--fn rho needs --residues M:r1,r2,...".into()))?;
            let set = residue_set(r)?;
            let label = format!("{}:{}", r.modulus, join_set(&r.residues).replace(' ', ","));
            (set_counts(&set, span.hi), None, None, Some(label))
        }
    };
    let out = CountOutput {
        function: args.function.name(),
        a,
        d,
        parts,
        values: span
            .values()
            .map(|n| CountValue {
                n,
                value: table[n as usize].to_string(),
            })
            .collect(),
    };
    let mut report = Report::new(format!("{} values", args.function.name()), &out, &["n", "value"]);
    for v in &out.values {
        report.row(vec![v.n.to_string(), v.value.clone()]);
    }
    Ok(report)
}

#[derive(Serialize)]
struct SeriesOutput {
    function: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<u64>,
    d: u64,
    nmax: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    form: Option<&'static str>,
    coefficients: Vec<String>,
}

fn cmd_series(args: &SeriesArgs) -> Result<Report, RunError> {
    let n = args.nmax as usize;
    let (series, name, a, form) = match args.function {
        SeriesFn::Q => {
            let (form, label) = match args.form {
                FormArg::Product => (QForm::Product, "product"),
                FormArg::Rewritten => (QForm::Rewritten, "rewritten"),
            };
            (q_series(args.a, args.d, n, form)?, "Q", Some(args.a), Some(label))
        }
        SeriesFn::G => (g_series(args.d, n)?, "g", None, None),
        SeriesFn::L => (l_series(args.d, n)?, "L", None, None),
    };
    let out = SeriesOutput {
        function: name,
        a,
        d: args.d,
        nmax: args.nmax,
        form,
        coefficients: series.coeffs().iter().map(|c| c.to_string()).collect(),
    };
    let mut report = Report::new(format!("{name} coefficients, d = {}", args.d), &out, &["n", "coefficient"]);
    for (i, c) in out.coefficients.iter().enumerate() {
        report.row(vec![i.to_string(), c.clone()]);
    }
    Ok(report)
}

fn inequality_report(r: &InequalityReport) -> Report {
    let title = format!(
        "{} >= {} for n in [{}, {}]: {} ({:?}{})",
        r.lhs,
        r.rhs,
        r.n_range.0,
        r.n_range.1,
        serde_json::to_value(r.verdict).unwrap().as_str().unwrap_or_default(),
        r.regime,
        if r.fatal { ", FATAL" } else { "" }
    );
    let mut report = Report::new(title, r, &["n", "lhs", "rhs", "expected"]);
    for v in &r.violations {
        report.row(vec![
            v.n.to_string(),
            v.lhs.to_string(),
            v.rhs.to_string(),
            yes_no(r.expected_exceptions.contains(&v.n)),
        ]);
    }
    report.findings = r.verdict == Verdict::Fail;
    report
}

fn table_report(t: &TableCheck) -> Report {
    let title = format!("{} ({}): {}", t.caption, t.table_id, if t.all_match { "all rows match" } else { "MISMATCH" });
    let mut report = Report::new(
        title,
        t,
        &["row", "column", "formula", "expectation", "n", "expected", "computed", "matches"],
    );
    for row in &t.rows {
        let expectation = serde_json::to_value(row.expectation).unwrap().as_str().unwrap_or_default().to_string();
        for v in &row.values {
            report.row(vec![
                row.label.clone(),
                row.column.clone(),
                row.formula.clone(),
                expectation.clone(),
                v.n.to_string(),
                v.expected.to_string(),
                v.computed.to_string(),
                yes_no(v.matches),
            ]);
        }
    }
    report.findings = !t.all_match;
    report
}

fn chain_report(reports: &[ChainReport], single: bool) -> Report {
    let holds = reports.iter().all(|r| r.holds);
    let title = format!("reduction chain: {}", if holds { "every link holds" } else { "BROKEN LINK" });
    let mut report = if single {
        Report::new(title, &reports[0], &[])
    } else {
        Report::new(title, &reports, &[])
    };
    report.header = ["n", "link", "lhs", "lhs_value", "relation", "rhs", "rhs_value", "holds"]
        .map(String::from)
        .to_vec();
    for r in reports {
        for l in &r.links {
            let rel = serde_json::to_value(l.relation).unwrap().as_str().unwrap_or_default().to_string();
            report.row(vec![
                r.n.to_string(),
                l.name.clone(),
                l.lhs_label.clone(),
                l.lhs.to_string(),
                rel,
                l.rhs_label.clone(),
                l.rhs.to_string(),
                yes_no(l.holds),
            ]);
        }
    }
    report.findings = !holds;
    report
}

fn certificate_report(certs: &[InjectionCertificate], single: bool) -> Report {
    let ok = |c: &InjectionCertificate| c.passes() && c.count_bound_holds() != Some(false);
    let all = certs.iter().all(ok);
    let title = format!(
        "{} certificates: {}",
        certs.first().map(|c| c.kind.to_string()).unwrap_or_default(),
        if all { "pass" } else { "FAIL" }
    );
    let header = [
        "n",
        "image_weight",
        "domain_size",
        "images_distinct",
        "weight_ok",
        "image_valid",
        "target_count",
        "passes",
    ];
    let mut report = if single {
        Report::new(title, &certs[0], &header)
    } else {
        Report::new(title, &certs, &header)
    };
    for c in certs {
        report.row(vec![
            c.n.to_string(),
            c.image_weight.to_string(),
            c.domain_size.to_string(),
            yes_no(c.images_distinct),
            yes_no(c.weight_ok),
            yes_no(c.image_valid),
            c.target_count.as_ref().map(|t| t.to_string()).unwrap_or_default(),
            yes_no(ok(c)),
        ]);
    }
    report.findings = !all;
    report
}

#[derive(Serialize)]
struct DominationOutput {
    d: u64,
    r: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<u64>,
    source_prefix: Vec<u64>,
    target_prefix: Vec<u64>,
    domination: alderlab_core::part_sets::Domination,
}

fn cmd_domination(d: u64, alpha: Option<u64>, r: Option<u32>) -> Result<Report, RunError> {
    let r = r.unwrap_or_else(|| log2_floor_succ(d));
    let (s, t) = match alpha {
        None => (build_s_shift2(d)?, build_t_r(d, r, &[d + 4, d + 8])?),
        Some(alpha) => (build_s_shift_alpha(d, alpha)?, build_t_r(d, r, &t_r_exclusion_menu(d))?),
    };
    let out = DominationOutput {
        d,
        r,
        alpha,
        source_prefix: s.first(16),
        target_prefix: t.first(16),
        domination: dominates_everywhere(&s, &t),
    };
    let title = format!(
        "source over T_{r}, d = {d}: {}",
        if out.domination.holds { "dominates" } else { "FAILS" }
    );
    let mut report = Report::new(title, &out, &["i", "source", "target"]);
    for (i, (x, y)) in out.source_prefix.iter().zip(&out.target_prefix).enumerate() {
        report.row(vec![(i + 1).to_string(), x.to_string(), y.to_string()]);
    }
    report.findings = !out.domination.holds;
    Ok(report)
}

fn cmd_injection(cap: usize, cmd: &VerifyCommand) -> Result<Report, RunError> {
    let VerifyCommand::Injection {
        kind,
        d,
        alpha,
        target,
        source_set,
        target_set,
        m,
        n,
    } = cmd
    else {
        unreachable!("called with an injection command")
    };
    let span = need_span(n)?;
    let need_d = || d.ok_or_else(|| RunError::Invalid("this map needs --d".into()));
    let spec = match kind {
        InjectionKindArg::Phi => {
            let (Some(s), Some(t)) = (source_set, target_set) else {
                return invalid("phi needs --source-set and --target-set");
            };
            InjectionSpec::Phi {
                source: residue_set(s)?,
                target: residue_set(t)?,
                m: *m,
            }
        }
        InjectionKindArg::PsiShift2 => {
            let d = need_d()?;
            InjectionSpec::PsiShift2(ShiftTwoMap::new(d, shift_target(*target, d))?)
        }
        InjectionKindArg::PsiShiftAlpha => {
            let d = need_d()?;
            let alpha = alpha.ok_or_else(|| RunError::Invalid("psi-shift-alpha needs --alpha".into()))?;
            InjectionSpec::PsiShiftAlpha(AlphaShiftMap::new(d, alpha, shift_target(*target, d))?)
        }
        InjectionKindArg::Beta => InjectionSpec::Beta(BetaMap::new(need_d()?)?),
    };
    let ns: Vec<u64> = span.values().collect();
    let certs: Vec<InjectionCertificate> = ns
        .par_iter()
        .map(|&n| verify_injection(&spec, n, cap))
        .collect::<Result<_, _>>()?;
    Ok(certificate_report(&certs, ns.len() == 1))
}

fn cmd_verify(p: &dyn CountProvider, cap: usize, cmd: &VerifyCommand) -> Result<Report, RunError> {
    match cmd {
        VerifyCommand::Theorem1 { d, nmax } => {
            let hi = resolve_nmax(*nmax, regime_nmax(2, *d));
            Ok(inequality_report(&check_pointwise(p, 2, *d, 1, hi, Variant::Full)?))
        }
        VerifyCommand::Theorem2 { a, d, nmax } => {
            let hi = resolve_nmax(*nmax, d + 4 * a + 60);
            Ok(inequality_report(&check_exceptions_level_a(p, *a, *d, hi)?))
        }
        VerifyCommand::LemmaShift { a, d, n_range } => {
            let span = n_range.unwrap_or(Span {
                lo: d + 2 * a,
                hi: regime_nmax(*a, *d),
            });
            Ok(inequality_report(&check_lemma_shift(p, *a, *d, span.lo, span.hi)?))
        }
        VerifyCommand::Shift { d, alpha, nmax } => {
            let hi = resolve_nmax(*nmax, regime_nmax(1, *d));
            Ok(inequality_report(&check_shift(p, *d, *alpha, 1, hi)?))
        }
        VerifyCommand::SeriesBound { bound, d, n_range } => {
            let bound = match bound {
                TargetArg::G => SeriesBound::G,
                TargetArg::L => SeriesBound::L,
            };
            Ok(inequality_report(&check_series_bound(p, bound, *d, n_range.lo, n_range.hi)?))
        }
        VerifyCommand::Chain { a, d, n } => {
            let span = need_span(n)?;
            let ns: Vec<u64> = span.values().collect();
            let reports: Vec<ChainReport> = ns
                .par_iter()
                .map(|&n| check_chain(p, *a, *d, n))
                .collect::<Result<_, _>>()?;
            Ok(chain_report(&reports, ns.len() == 1))
        }
        VerifyCommand::Table { id, d, a, alpha } => {
            let id: TableId = id.parse()?;
            let t = reproduce_table(p, id, TableParams { a: *a, d: *d, alpha: *alpha })?;
            Ok(table_report(&t))
        }
        VerifyCommand::Injection { .. } => cmd_injection(cap, cmd),
        VerifyCommand::SmallN { a, d } => {
            let t = check_small_n_regime(p, *a, *d)?;
            let mut report = table_report(&t);
            if let Some(ineq) = &t.inequality {
                report.title.push_str(&format!(
                    "; inequality on [1, {}]: violations {{{}}}",
                    ineq.n_range.1,
                    join_set(&ineq.violation_set())
                ));
            }
            Ok(report)
        }
        VerifyCommand::Domination { d, alpha, r } => cmd_domination(*d, *alpha, *r),
    }
}

fn cmd_scan(p: &dyn CountProvider, args: &ScanArgs) -> Result<Report, RunError> {
    let conjecture = match args.conjecture {
        ConjectureArg::A => Conjecture::A,
        ConjectureArg::B => Conjecture::B,
        ConjectureArg::C => Conjecture::C,
    };
    let a = args.a.unwrap_or_else(|| conjecture.default_level());
    let ds: Vec<u64> = match (args.d, args.d_even, args.d_odd) {
        (Some(s), _, _) => s.values().collect(),
        (_, Some(s), _) => s.values().filter(|d| d % 2 == 0).collect(),
        (_, _, Some(s)) => s.values().filter(|d| d % 2 == 1).collect(),
        _ => return invalid("give --d, --d-even or --d-odd"),
    };
    if ds.is_empty() {
        return invalid("the d range is empty");
    }
    let nmax = match args.nmax {
        NmaxArg::Auto => NmaxRule::Auto,
        NmaxArg::Fixed(n) => NmaxRule::Fixed(n),
    };
    let scan = scan_conjectures(p, conjecture, a, &ds, nmax)?;
    let s = &scan.summary;
    let title = format!(
        "conjecture {conjecture}, a = {a}: {} d checked, {} pass, {} pass with expected exceptions, {} fail{}; {}",
        s.total,
        s.pass,
        s.pass_with_expected,
        s.fail,
        if s.failing_d.is_empty() {
            String::new()
        } else {
            format!(" (d = {})", join_set(&s.failing_d))
        },
        if s.consistent_with_conjecture {
            "consistent with the conjecture"
        } else {
            "CONTRADICTS the conjecture"
        }
    );
    let mut report = Report::new(title, &scan, &["d", "nmax", "verdict", "regime", "claimed", "violations", "expected"]);
    for (d, r) in &scan.reports {
        let verdict = serde_json::to_value(r.verdict).unwrap().as_str().unwrap_or_default().to_string();
        let violations: BTreeSet<u64> = r.violation_set();
        report.row(vec![
            d.to_string(),
            r.n_range.1.to_string(),
            verdict,
            format!("{:?}", r.regime),
            yes_no(conjecture.claims(a, *d)),
            join_set(&violations),
            join_set(&r.expected_exceptions),
        ]);
    }
    report.findings = s.fail > 0;
    Ok(report)
}

/// Runs one parsed command against `provider`.
pub fn execute(cli: &Cli, provider: &dyn CountProvider) -> Result<Report, RunError> {
    let cap = usize::try_from(cli.global.cap).unwrap_or(usize::MAX);
    match &cli.command {
        Command::Count(args) => cmd_count(provider, args),
        Command::Series(args) => cmd_series(args),
        Command::Verify(cmd) => cmd_verify(provider, cap, cmd),
        Command::Scan(args) => cmd_scan(provider, args),
    }
}

fn run_with_cache(cli: &Cli, stderr: &mut dyn Write) -> Result<Report, RunError> {
    let path = match (&cli.global.cache, cli.global.no_cache) {
        (_, true) => None,
        (Some(p), false) => Some(p.clone()),
        (None, false) => cache::default_path(),
    };
    let Some(path) = path else {
        return execute(cli, &DirectCounts);
    };
    let (loaded, warnings) = CountCache::load(&path)?;
    for w in warnings {
        let _ = writeln!(stderr, "warning: {}: {w}", path.display());
    }
    let provider = CachedCounts::new(loaded);
    let report = execute(cli, &provider)?;
    if provider.is_dirty() {
        if let Err(e) = provider.into_cache().save(&path) {
            let _ = writeln!(stderr, "warning: cache not saved: {e}");
        }
    }
    Ok(report)
}

/// Parses `args`, runs the command, prints the report and returns the exit
/// code: 0 pass, 1 findings, 2 usage or parameter error, 3 cache audit failure.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    if let Some(jobs) = cli.global.jobs {
        // Only the first pool configuration in a process takes effect.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global();
    }
    match run_with_cache(&cli, stderr) {
        Ok(report) => {
            let _ = write!(stdout, "{}", report.render(cli.global.format));
            if report.findings {
                EXIT_FINDINGS
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
