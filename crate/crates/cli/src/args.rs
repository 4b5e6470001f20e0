//! Command-line grammar. Everything that can be checked before any work
//! starts is checked here, so a bad invocation never reaches a solver.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gonchar_core::RatQ;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "gonchar",
    version,
    about = "Gonchar polynomials: critical distances, zeros, factor probes and signed equilibria"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Coefficients of G(d,q;z), ascending, cleared of denominators
    Poly {
        /// Sphere dimension
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        /// Charge, a positive rational such as 3 or 1/2
        #[arg(long, default_value = "1", value_parser = parse_q)]
        q: RatQ,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Critical distance R_q and rho = R_q - 1
    Rho {
        /// Sphere dimension
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        /// Charge, a positive rational such as 3 or 1/2
        #[arg(long, default_value = "1", value_parser = parse_q)]
        q: RatQ,
        #[command(flatten)]
        num: NumericArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Certified zeros of G(d;z) with their regions
    Zeros {
        #[command(flatten)]
        range: DRange,
        #[command(flatten)]
        num: NumericArgs,
        /// SVG scatter plot of the zeros
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Zero counts per region for a range of d
    Census {
        #[command(flatten)]
        range: DRange,
        #[command(flatten)]
        num: NumericArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Irreducibility verdict for G(d;z)/l(d;z)
    Factors {
        /// Sphere dimension
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        /// Number of usable primes to try
        #[arg(long, default_value_t = gonchar_core::factor::DEFAULT_PRIME_BUDGET, value_parser = parse_budget)]
        primes: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Signed-equilibrium density of a point charge q at distance R
    Density {
        /// Sphere dimension
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        /// Distance of the charge from the centre, > 1
        #[arg(long = "R", value_parser = parse_r)]
        r: f64,
        /// Charge, a positive rational such as 3 or 1/2
        #[arg(long, default_value = "1", value_parser = parse_q)]
        q: RatQ,
        /// Polar-angle samples in the profile
        #[arg(long, default_value_t = 181, value_parser = clap::value_parser!(u32).range(2..=100_000))]
        samples: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run an invariant suite; exit 1 when any property fails
    Verify {
        /// Which invariants to check
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = true)]
pub struct DRange {
    /// One sphere dimension
    #[arg(long, conflicts_with_all = ["d_min", "d_max"], value_parser = clap::value_parser!(u32).range(1..))]
    pub d: Option<u32>,
    /// First d of an inclusive range
    #[arg(long = "d-min", requires = "d_max", value_parser = clap::value_parser!(u32).range(1..))]
    pub d_min: Option<u32>,
    /// Last d of the range
    #[arg(long = "d-max", requires = "d_min", value_parser = clap::value_parser!(u32).range(1..))]
    pub d_max: Option<u32>,
}

impl DRange {
    /// Inclusive list of degrees; `None` when the range is reversed.
    pub fn degrees(&self) -> Option<Vec<u32>> {
        match (self.d, self.d_min, self.d_max) {
            (Some(d), _, _) => Some(vec![d]),
            (None, Some(a), Some(b)) if a <= b => Some((a..=b).collect()),
            _ => None,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct NumericArgs {
    /// Starting working precision in bits
    #[arg(long, value_parser = clap::value_parser!(u32).range(64..=16384))]
    pub prec: Option<u32>,
    /// Target radius of the certified enclosures, e.g. 1e-30
    #[arg(long, value_parser = parse_tol)]
    pub tol: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the table (CSV) or, for commands without one, the JSON envelope
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Poly,
    Roots,
    Factors,
    Geometry,
    Equilibrium,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Poly => "poly",
            Suite::Roots => "roots",
            Suite::Factors => "factors",
            Suite::Geometry => "geometry",
            Suite::Equilibrium => "equilibrium",
        }
    }
}

fn parse_q(s: &str) -> Result<RatQ, String> {
    let q: RatQ = s
        .parse()
        .map_err(|e: gonchar_core::GoncharError| e.to_string())?;
    if q.signum() != std::cmp::Ordering::Greater {
        return Err(format!("q must be positive, got {s}"));
    }
    Ok(q)
}

fn parse_r(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(r) if r.is_finite() && r > 1.0 => Ok(r),
        _ => Err(format!("R must be a number greater than 1, got {s}")),
    }
}

fn parse_tol(s: &str) -> Result<String, String> {
    match rug::Float::parse(s) {
        Ok(v) => {
            let v = rug::Float::with_val(64, v);
            if v.is_finite() && v > 0 && v < 1 {
                Ok(s.to_string())
            } else {
                Err(format!("tolerance must lie in (0, 1), got {s}"))
            }
        }
        Err(e) => Err(format!("bad tolerance {s:?}: {e}")),
    }
}

fn parse_budget(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(k) if (1..=1000).contains(&k) => Ok(k),
        _ => Err(format!(
            "prime budget must be an integer in 1..=1000, got {s}"
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_parsers() {
        assert_eq!(parse_q("3/6").unwrap(), RatQ::new(1, 2).unwrap());
        assert!(parse_q("0").is_err());
        assert!(parse_q("-1/2").is_err());
        assert!(parse_q("x").is_err());
        assert_eq!(parse_r("1.5").unwrap(), 1.5);
        for bad in ["1", "0.9", "inf", "NaN", "two"] {
            assert!(parse_r(bad).is_err(), "{bad}");
        }
        assert_eq!(parse_tol("1e-30").unwrap(), "1e-30");
        for bad in ["0", "1", "2", "-1e-5", "abc"] {
            assert!(parse_tol(bad).is_err(), "{bad}");
        }
        assert!(parse_budget("0").is_err());
        assert_eq!(parse_budget("25").unwrap(), 25);
    }

    #[test]
    fn degree_ranges() {
        let r = |d, a, b| DRange {
            d,
            d_min: a,
            d_max: b,
        };
        assert_eq!(r(Some(4), None, None).degrees(), Some(vec![4]));
        assert_eq!(r(None, Some(2), Some(4)).degrees(), Some(vec![2, 3, 4]));
        assert_eq!(r(None, Some(5), Some(2)).degrees(), None);
    }

    #[test]
    fn grammar() {
        let cli =
            Cli::try_parse_from(["gonchar", "density", "--d", "3", "--R", "2.5", "--q", "1/2"])
                .unwrap();
        match cli.command {
            Command::Density { d, r, samples, .. } => assert_eq!((d, r, samples), (3, 2.5, 181)),
            other => panic!("parsed as {other:?}"),
        }
        assert!(Cli::try_parse_from(["gonchar", "zeros", "--d-min", "3"]).is_err());
        assert!(Cli::try_parse_from(["gonchar", "rho", "--d", "2", "--prec", "32"]).is_err());
    }
}
