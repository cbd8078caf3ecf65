use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nfact_core::density::DEFAULT_EPS0;
use nfact_core::factor::{DEFAULT_EFFORT, DEFAULT_N_MAX};
use nfact_core::wilson::OrdMode;
use nfact_core::Poly;

#[derive(Debug, Parser)]
#[command(
    name = "nfact",
    version,
    about = "Prime divisors of n! + f(n): sieve, factor, verify"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find all n < p with p | n! + f(n) for primes in a range; writes a hits CSV.
    Sieve(SieveArgs),
    /// Factor n! + f(n) for small n; writes a factors CSV.
    Exact(ExactArgs),
    /// Density of n with L(n) > lambda n, from a hits CSV.
    Density(DensityArgs),
    /// Run the exact checkers over instances drawn from a hits CSV.
    Verify(VerifyArgs),
    /// Sums of squared prime gaps.
    Gaps(GapsArgs),
    /// The closed-form constants and the lambda for a given eps0.
    Constants(ConstantsArgs),
}

fn parse_poly(s: &str) -> Result<Poly, String> {
    s.parse::<Poly>().map_err(|e| e.to_string())
}

/// "lo:hi" with lo <= hi.
pub fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: u64 = lo.trim().parse().map_err(|_| format!("bad lower end in {s:?}"))?;
    let hi: u64 = hi.trim().parse().map_err(|_| format!("bad upper end in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

fn parse_eps0(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v > 0.0 && v < 0.01 {
        Ok(v)
    } else {
        Err(format!("eps0 must lie in (0, 0.01), got {v}"))
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrdArg {
    On,
    Off,
    Auto,
}

impl From<OrdArg> for OrdMode {
    fn from(o: OrdArg) -> Self {
        match o {
            OrdArg::On => OrdMode::On,
            OrdArg::Off => OrdMode::Off,
            OrdArg::Auto => OrdMode::Auto,
        }
    }
}

#[derive(Debug, Args)]
pub struct SieveArgs {
    /// Polynomial coefficients, constant term first, e.g. "1" or "1,0,1".
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    pub f: Poly,
    /// Label written to the f_id column.
    #[arg(long, default_value = "f0")]
    pub f_id: String,
    /// Smallest prime to scan.
    #[arg(long, default_value_t = 2)]
    pub pmin: u64,
    /// Largest prime to scan.
    #[arg(long)]
    pub pmax: u64,
    /// Only report n in the half-open window [lo, hi).
    #[arg(long, value_parser = parse_range)]
    pub window: Option<(u64, u64)>,
    /// Exact p-adic orders: on, off (record ">=1"), or auto (on for p <= 10^6).
    #[arg(long, value_enum, default_value = "auto")]
    pub ord: OrdArg,
    /// Worker threads. Output does not depend on this.
    #[arg(long, env = "NFACT_THREADS")]
    pub threads: Option<usize>,
    /// Orders at or above this are recorded as ">=cap".
    #[arg(long, default_value_t = 64)]
    pub lift_cap: u32,
    /// Hits CSV path.
    #[arg(long, default_value = "hits.csv")]
    pub out: PathBuf,
    /// Also report #N_p(J) / |J|^(2/3) for the half-open J = [lo, hi).
    #[arg(long, value_parser = parse_range)]
    pub ratio_window: Option<(u64, u64)>,
    /// Where to write the ratio report (JSON); stdout if omitted.
    #[arg(long, requires = "ratio_window")]
    pub ratio_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    /// Polynomial coefficients, constant term first.
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    pub f: Poly,
    /// Factor n! + f(n) for 1 <= n <= nmax.
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub nmax: u64,
    /// Rho iteration budget per value.
    #[arg(long, default_value_t = DEFAULT_EFFORT)]
    pub effort: u64,
    /// Factors CSV path.
    #[arg(long, default_value = "factors.csv")]
    pub out: PathBuf,
    /// Cross-check the sieve lower bounds from this hits CSV (same f).
    #[arg(long)]
    pub hits: Option<PathBuf>,
    /// Where to write the cross-check report (JSON); stdout if omitted.
    #[arg(long, requires = "hits")]
    pub check_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// Hits CSV from `sieve`.
    #[arg(long)]
    pub hits: PathBuf,
    /// Closed range lo:hi of n.
    #[arg(long, value_parser = parse_range)]
    pub range: (u64, u64),
    /// Threshold; defaults to 1 + 9 log 2 - 100 eps0.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, value_parser = parse_eps0, default_value_t = DEFAULT_EPS0)]
    pub eps0: f64,
    /// Also run the leading-coefficient audit at these x (comma-separated).
    #[arg(long, value_delimiter = ',')]
    pub audit_x: Vec<u64>,
    /// Report path (JSON); stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum VerifyMode {
    Lemma4,
    Cor6,
    Lemma7,
    Symmetry,
}

impl VerifyMode {
    pub fn name(self) -> &'static str {
        match self {
            VerifyMode::Lemma4 => "lemma4",
            VerifyMode::Cor6 => "cor6",
            VerifyMode::Lemma7 => "lemma7",
            VerifyMode::Symmetry => "symmetry",
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// lemma4: divisibility and size checks on four-hit configurations.
    /// cor6: good-interval counts per prime. lemma7: ordered-hit traces.
    /// symmetry: companion hits for f = 1 or f = -1.
    #[arg(long, value_enum)]
    pub mode: VerifyMode,
    /// Hits CSV from `sieve`.
    #[arg(long)]
    pub hits: PathBuf,
    /// The polynomial the hits were sieved with.
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true, default_value = "1")]
    pub f: Poly,
    /// Seed for instance selection.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Check at most this many instances, chosen by the seed; all if omitted.
    #[arg(long)]
    pub count: Option<usize>,
    /// Smallest n used; defaults to the known threshold for f = 1 and f = -1.
    #[arg(long)]
    pub n0: Option<u64>,
    /// lemma4: longest interval used.
    #[arg(long, default_value_t = 2000)]
    pub max_len: u64,
    /// lemma7: J starts at ceil(eps0 p).
    #[arg(long, value_parser = parse_eps0, default_value_t = DEFAULT_EPS0)]
    pub eps0: f64,
    /// lemma7: fewest hits per instance.
    #[arg(long, default_value_t = nfact_core::intervals::DEFAULT_T_MIN)]
    pub t_min: u64,
    /// cor6: t must not exceed this coefficient times x^(2/3).
    #[arg(long, default_value_t = 1.0)]
    pub range_coeff: f64,
    /// Verdicts path (JSON); stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GapsArgs {
    /// Bounds y (comma-separated).
    #[arg(long, value_delimiter = ',', default_values_t = [1000u64, 10_000, 100_000, 1_000_000])]
    pub y: Vec<u64>,
    /// CSV path; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long, value_parser = parse_eps0, default_value_t = DEFAULT_EPS0)]
    pub eps0: f64,
    /// JSON path; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3:10"), Ok((3, 10)));
        assert!(parse_range("10:3").is_err());
        assert!(parse_range("10").is_err());
    }

    #[test]
    fn negative_constant_polynomial() {
        let cli = Cli::try_parse_from(["nfact", "sieve", "--f", "-1", "--pmax", "13"]).unwrap();
        let Command::Sieve(a) = cli.command else { panic!() };
        assert_eq!(a.f.as_constant(), Some(-1));
    }

    #[test]
    fn eps0_range_enforced() {
        assert!(Cli::try_parse_from(["nfact", "constants", "--eps0", "0.02"]).is_err());
    }
}
