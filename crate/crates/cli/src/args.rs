//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "alderlab", version, about = "Exact counts, series, injections and table checks for Alder-type partition inequalities")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Count cache file (default: $ALDERLAB_CACHE, else the user cache directory).
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Compute every table from scratch and leave the cache untouched.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads (default: available cores).
    #[arg(long, global = true, value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Enumeration cap for injection certificates.
    #[arg(long, global = true, value_name = "M", default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact values of q, Q, Q- or rho over an n range.
    Count(CountArgs),
    /// Coefficients of a generating function.
    Series(SeriesArgs),
    /// Check an inequality, chain, table or injection.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Scan a conjectured inequality over a range of d.
    Scan(ScanArgs),
}

/// `q`: gap partitions; `Q`: congruence partitions; `Q-`: congruence
/// partitions without the part d+3-a; `rho`: parts from residue classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountFn {
    Gap,
    Congruence,
    CongruenceExcluded,
    Rho,
}

impl CountFn {
    pub fn name(&self) -> &'static str {
        match self {
            CountFn::Gap => "q",
            CountFn::Congruence => "Q",
            CountFn::CongruenceExcluded => "Q-",
            CountFn::Rho => "rho",
        }
    }
}

fn parse_count_fn(s: &str) -> Result<CountFn, String> {
    match s {
        "q" => Ok(CountFn::Gap),
        "Q" => Ok(CountFn::Congruence),
        "Q-" => Ok(CountFn::CongruenceExcluded),
        "rho" => Ok(CountFn::Rho),
        _ => Err(format!("unknown function {s:?}; expected q, Q, Q- or rho")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesFn {
    Q,
    G,
    L,
}

fn parse_series_fn(s: &str) -> Result<SeriesFn, String> {
    match s {
        "Q" => Ok(SeriesFn::Q),
        "g" => Ok(SeriesFn::G),
        "L" => Ok(SeriesFn::L),
        _ => Err(format!("unknown series {s:?}; expected Q, g or L")),
    }
}

/// Inclusive range written `LO..HI` (or `LO..=HI`), or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub fn values(&self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

pub fn parse_span(s: &str) -> Result<Span, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    let span = match s.split_once("..") {
        Some((lo, hi)) => Span {
            lo: num(lo)?,
            hi: num(hi.strip_prefix('=').unwrap_or(hi))?,
        },
        None => {
            let v = num(s)?;
            Span { lo: v, hi: v }
        }
    };
    if span.lo > span.hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(span)
}

/// `auto` or a fixed bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NmaxArg {
    Auto,
    Fixed(u64),
}

fn parse_nmax(s: &str) -> Result<NmaxArg, String> {
    if s == "auto" {
        return Ok(NmaxArg::Auto);
    }
    s.parse().map(NmaxArg::Fixed).map_err(|e| format!("{s:?}: {e}"))
}

/// Residue classes written `M:r1,r2,...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueArg {
    pub modulus: u64,
    pub residues: Vec<u64>,
}

fn parse_residues(s: &str) -> Result<ResidueArg, String> {
    let (m, rs) = s.split_once(':').ok_or_else(|| format!("{s:?}: expected M:r1,r2,..."))?;
    let modulus = m.trim().parse().map_err(|e| format!("{m:?}: {e}"))?;
    let residues = rs
        .split(',')
        .map(|r| r.trim().parse().map_err(|e| format!("{r:?}: {e}")))
        .collect::<Result<_, _>>()?;
    Ok(ResidueArg { modulus, residues })
}

#[derive(Debug, Args)]
pub struct NArgs {
    /// A single n.
    #[arg(long, conflicts_with = "n_range")]
    pub n: Option<u64>,
    /// Inclusive range LO..HI.
    #[arg(long, value_parser = parse_span, value_name = "LO..HI")]
    pub n_range: Option<Span>,
}

impl NArgs {
    pub fn span(&self) -> Option<Span> {
        self.n.map(|v| Span { lo: v, hi: v }).or(self.n_range)
    }
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long = "fn", value_parser = parse_count_fn, value_name = "q|Q|Q-|rho")]
    pub function: CountFn,
    #[arg(long, default_value_t = 1)]
    pub a: u64,
    #[arg(long)]
    pub d: Option<u64>,
    /// Part set for `rho`, as M:r1,r2,...
    #[arg(long, value_parser = parse_residues, value_name = "M:r1,r2")]
    pub residues: Option<ResidueArg>,
    #[command(flatten)]
    pub n: NArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Product,
    Rewritten,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long = "fn", value_parser = parse_series_fn, value_name = "Q|g|L")]
    pub function: SeriesFn,
    #[arg(long, default_value_t = 1)]
    pub a: u64,
    #[arg(long)]
    pub d: u64,
    /// Truncation: coefficients 0..=NMAX.
    #[arg(long)]
    pub nmax: u64,
    /// Product form used for Q.
    #[arg(long, value_enum, default_value_t = FormArg::Product)]
    pub form: FormArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    G,
    L,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InjectionKindArg {
    Phi,
    PsiShift2,
    PsiShiftAlpha,
    Beta,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Level two: q_d^(2)(n) >= Q_d^(2)(n) up to the odd-d exceptions.
    Theorem1 {
        #[arg(long)]
        d: u64,
        #[arg(long, value_parser = parse_nmax, default_value = "auto")]
        nmax: NmaxArg,
    },
    /// Level a >= 3: q_d^(a)(n) >= Q_d^(a)(n) up to the stated exceptions.
    Theorem2 {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        d: u64,
        /// Default d+4a+60.
        #[arg(long, value_parser = parse_nmax, default_value = "auto")]
        nmax: NmaxArg,
    },
    /// q_d^(a)(n) >= q_{ceil(d/a)}^(1)(ceil(n/a)).
    LemmaShift {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        d: u64,
        /// Default d+2a..4d+2^r+300.
        #[arg(long, value_parser = parse_span, value_name = "LO..HI")]
        n_range: Option<Span>,
    },
    /// Level one: q_d^(1)(n) >= Q_{d-alpha}^(1)(n).
    Shift {
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 2)]
        alpha: u64,
        #[arg(long, value_parser = parse_nmax, default_value = "auto")]
        nmax: NmaxArg,
    },
    /// q_d^(1)(n) >= g_d(n) or L_d(n).
    SeriesBound {
        #[arg(long, value_enum)]
        bound: TargetArg,
        #[arg(long)]
        d: u64,
        #[arg(long, value_parser = parse_span, value_name = "LO..HI")]
        n_range: Span,
    },
    /// Every link of the level-a reduction chain.
    Chain {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        n: NArgs,
    },
    /// Reproduce a value table.
    Table {
        /// qd1, Qdm2, qd2, Qd2-even, Qd2-odd, Qdma, lv3 or lva.
        #[arg(long)]
        id: String,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Exhaustive injectivity certificate.
    Injection {
        #[arg(long, value_enum)]
        kind: InjectionKindArg,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        alpha: Option<u64>,
        /// Shift-map target (default: L for d = 2^r - 1, else g).
        #[arg(long, value_enum)]
        target: Option<TargetArg>,
        /// Source set for phi, as M:r1,r2,...
        #[arg(long, value_parser = parse_residues, value_name = "M:r1,r2")]
        source_set: Option<ResidueArg>,
        /// Target set for phi, as M:r1,r2,...
        #[arg(long, value_parser = parse_residues, value_name = "M:r1,r2")]
        target_set: Option<ResidueArg>,
        /// Divisor for phi.
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[command(flatten)]
        n: NArgs,
    },
    /// Value tables and the inequality for 1 <= n <= d+4a.
    SmallN {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        d: u64,
    },
    /// Elementwise domination of the shifted source set over T_r.
    Domination {
        #[arg(long)]
        d: u64,
        /// Shift alpha >= 3 (default: the shift-by-two sets).
        #[arg(long)]
        alpha: Option<u64>,
        /// Default floor(log2(d+1)).
        #[arg(long)]
        r: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConjectureArg {
    A,
    B,
    C,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub conjecture: ConjectureArg,
    /// Level (default 2, 3, 4 for conjectures a, b, c).
    #[arg(long)]
    pub a: Option<u64>,
    /// Every d in LO..HI.
    #[arg(long, value_parser = parse_span, value_name = "LO..HI", group = "ds")]
    pub d: Option<Span>,
    /// Even d in LO..HI.
    #[arg(long, value_parser = parse_span, value_name = "LO..HI", group = "ds")]
    pub d_even: Option<Span>,
    /// Odd d in LO..HI.
    #[arg(long, value_parser = parse_span, value_name = "LO..HI", group = "ds")]
    pub d_odd: Option<Span>,
    #[arg(long, value_parser = parse_nmax, default_value = "auto")]
    pub nmax: NmaxArg,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn grammar_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn spans() {
        assert_eq!(parse_span("2..40"), Ok(Span { lo: 2, hi: 40 }));
        assert_eq!(parse_span("2..=40"), Ok(Span { lo: 2, hi: 40 }));
        assert_eq!(parse_span("7"), Ok(Span { lo: 7, hi: 7 }));
        assert!(parse_span("9..3").is_err());
        assert!(parse_span("x").is_err());
    }

    #[test]
    fn residues() {
        let r = parse_residues("13:2,11").unwrap();
        assert_eq!((r.modulus, r.residues), (13, vec![2, 11]));
        assert!(parse_residues("13").is_err());
    }
}
