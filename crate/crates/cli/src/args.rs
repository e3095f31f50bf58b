use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qmwall",
    version,
    about = "Exact genus-1 quasimap and Vafa-Witten invariants of Higgs SL_r moduli"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Also print decimal approximations (marked with `~`).
    #[arg(long, global = true)]
    pub decimal: bool,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one invariant.
    Invariant(InvariantArgs),
    /// Check a generating-series identity coefficient by coefficient.
    Series(SeriesArgs),
    /// Compare the closed form with the wall-crossing oracle over a grid.
    Sweep(SweepArgs),
    /// Run the built-in property suites.
    Selfcheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Closed,
    Oracle,
    Both,
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    /// Quasisection invariant on the elliptic curve.
    E,
    /// Quasimap invariant on C (= Vafa-Witten invariant of C x E).
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityArg {
    A,
    B,
}

#[derive(Debug, Clone, Args)]
pub struct ModeArgs {
    /// Reject Quot components outside the analysed classes (default).
    #[arg(long, conflicts_with = "permissive")]
    pub strict: bool,

    /// Evaluate unanalysed Quot components with the conjectural 1/dim rule.
    #[arg(long)]
    pub permissive: bool,
}

#[derive(Debug, Clone, Args)]
pub struct QueryArgs {
    /// Rank r.
    #[arg(short = 'r', long = "rank")]
    pub rank: u32,

    /// Degree d on C.
    #[arg(short = 'd', long = "deg-d", allow_hyphen_values = true)]
    pub deg_d: i64,

    /// Degree a on E, in [0, r).
    #[arg(short = 'a', long = "deg-a")]
    pub deg_a: u32,

    /// Normalisation class u as `u1,u2`; defaults to (1,0) when a = 1.
    #[arg(long = "u", value_parser = parse_class, allow_hyphen_values = true)]
    pub u: Option<(i64, i64)>,
}

#[derive(Debug, Clone, Args)]
pub struct InvariantArgs {
    #[command(flatten)]
    pub query: QueryArgs,

    /// Quasimap degree w.
    #[arg(short = 'w', long = "degree-w")]
    pub degree_w: u64,

    /// Genus g of C.
    #[arg(short = 'g', long = "genus")]
    pub genus: u32,

    #[arg(long, value_enum, default_value_t = RouteArg::Oracle)]
    pub route: RouteArg,

    #[arg(long, value_enum, ignore_case = true, default_value_t = Side::E)]
    pub side: Side,

    /// Also print the unreduced (t-linear) invariant.
    #[arg(long)]
    pub raw: bool,

    #[command(flatten)]
    pub mode: ModeArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub identity: IdentityArg,

    #[arg(short = 'g', long)]
    pub genus: u32,

    /// Truncation order N (coefficients q^0 .. q^N).
    #[arg(short = 'n', long, env = "QM_TRUNCATION_DEFAULT", default_value_t = 10)]
    pub order: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub query: QueryArgs,

    /// Sweep w over 1..=W_MAX.
    #[arg(long, conflicts_with = "w_list")]
    pub w_max: Option<u64>,

    /// Sweep w over an explicit comma-separated list.
    #[arg(long, value_delimiter = ',')]
    pub w_list: Option<Vec<u64>>,

    /// Genera: `2..5` (inclusive), a single value, or a comma list.
    #[arg(short = 'g', long = "g", value_parser = parse_genus_range, default_value = "2")]
    pub genera: GenusRange,

    #[command(flatten)]
    pub mode: ModeArgs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusRange(pub Vec<u32>);

pub fn parse_genus_range(s: &str) -> Result<GenusRange, String> {
    let s = s.trim();
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: u32 = lo
            .trim()
            .parse()
            .map_err(|e| format!("bad lower bound: {e}"))?;
        let hi: u32 = hi
            .trim()
            .parse()
            .map_err(|e| format!("bad upper bound: {e}"))?;
        return Ok(GenusRange((lo..=hi).collect()));
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad genus `{p}`: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(GenusRange)
}

pub fn parse_class(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| "expected `u1,u2`".to_string())?;
    let a = a.trim().parse().map_err(|e| format!("bad u1: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("bad u2: {e}"))?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_ranges() {
        assert_eq!(
            parse_genus_range("2..5").unwrap(),
            GenusRange(vec![2, 3, 4, 5])
        );
        assert_eq!(parse_genus_range("2..=3").unwrap(), GenusRange(vec![2, 3]));
        assert_eq!(parse_genus_range("4").unwrap(), GenusRange(vec![4]));
        assert_eq!(parse_genus_range("2,7").unwrap(), GenusRange(vec![2, 7]));
        assert_eq!(parse_genus_range("5..2").unwrap(), GenusRange(vec![]));
        assert!(parse_genus_range("x").is_err());
    }

    #[test]
    fn classes() {
        assert_eq!(parse_class("3,-1").unwrap(), (3, -1));
        assert!(parse_class("3").is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
