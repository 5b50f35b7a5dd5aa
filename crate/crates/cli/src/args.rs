//! Command-line arguments.

use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypermoment_core::arith::{parse_rational, parse_rational_list};
use hypermoment_core::families::{Family, FamilyParams};
use hypermoment_core::{Error, Rational, Result, WeightSpec};

#[derive(Debug, Parser)]
#[command(name = "hypermoment", version, about = "Moments, generating functions and orthogonal polynomials of hypergeometric-type weights")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moments through every applicable route, with agreement deltas.
    Moments(Common),
    /// Entries of the vector polynomials P_n(c).
    Poly(Common),
    /// Regime, sigma coefficients, companion matrix and Pearson pair.
    Sigma(Common),
    /// Stieltjes transform: hypergeometric closed form against the direct sum.
    Stieltjes(Common),
    /// Exponential generating function slices.
    Egf(Common),
    /// Hankel determinants and monic orthogonal polynomials.
    Ortho(Common),
    /// Runs the identity suite for one weight.
    Verify(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Named family; without it, --alpha/--beta/--c describe the weight directly.
    #[arg(long)]
    pub family: Option<String>,
    /// Top parameters, comma separated rationals.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub alpha: String,
    /// Bottom parameters, comma separated rationals.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub beta: String,
    /// The point c (the success probability for krawtchouk).
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Support length parameter N of the terminating families.
    #[arg(long = "N")]
    pub big_n: Option<u64>,
    /// Index or inclusive range `a..b`.
    #[arg(long)]
    pub n: Option<String>,
    /// Evaluation point of the Stieltjes transform.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Working precision in bits.
    #[arg(long, env = "HYPERMOMENT_PRECISION", default_value_t = 256,
          value_parser = clap::value_parser!(u32).range(64..))]
    pub precision: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Truncation order of generating-function slices.
    #[arg(long, default_value_t = 8)]
    pub order: usize,
}

/// A weight as requested on the command line.
#[derive(Debug, Clone)]
pub struct Target {
    pub family: Option<Family>,
    pub params: FamilyParams,
    pub spec: WeightSpec,
    /// `rho_family = prefactor * rho(spec)`.
    pub prefactor: Rational,
    /// No `--c` was given; only `c`-independent output is meaningful.
    pub symbolic_c: bool,
}

impl Common {
    /// Like [`Common::target`], but a missing `--c` is allowed and stands for
    /// the polynomial variable; a placeholder inside the family's domain is used.
    pub fn symbolic_target(&self) -> Result<Target> {
        if self.c.is_some() {
            return self.target();
        }
        let mut with_c = self.clone();
        let placeholder = match &self.family {
            Some(name) => name.parse::<Family>()?.sample_params().c.map(|c| c.to_string()),
            None => Some("0".to_string()),
        };
        with_c.c = placeholder;
        let mut t = with_c.target()?;
        t.symbolic_c = true;
        t.params.c = None;
        Ok(t)
    }

    pub fn target(&self) -> Result<Target> {
        let params = FamilyParams {
            alpha: parse_rational_list(&self.alpha)?,
            beta: parse_rational_list(&self.beta)?,
            c: self.c.as_deref().map(parse_rational).transpose()?,
            n: self.big_n,
        };
        match &self.family {
            Some(name) => {
                let family: Family = name.parse()?;
                let inst = family.build(&params)?;
                Ok(Target {
                    family: Some(family),
                    params,
                    spec: inst.spec,
                    prefactor: inst.prefactor,
                    symbolic_c: false,
                })
            }
            None => {
                if params.n.is_some() {
                    return Err(Error::InvalidParameter("--N requires --family".into()));
                }
                let c = params
                    .c
                    .clone()
                    .ok_or_else(|| Error::InvalidParameter("--c is required without --family".into()))?;
                Ok(Target {
                    family: None,
                    spec: WeightSpec::new(params.alpha.clone(), params.beta.clone(), c),
                    params,
                    prefactor: Rational::from_integer(1.into()),
                    symbolic_c: false,
                })
            }
        }
    }

    pub fn range(&self, default: RangeInclusive<usize>) -> Result<RangeInclusive<usize>> {
        match &self.n {
            None => Ok(default),
            Some(s) => parse_range(s),
        }
    }

    pub fn z(&self) -> Result<Rational> {
        let z = self
            .z
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("--z is required".into()))?;
        parse_rational(z)
    }
}

/// `7` or `2..5` (inclusive).
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let err = || Error::Parse {
        what: "index range",
        input: s.to_string(),
    };
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| err());
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(err());
            }
            Ok(a..=b)
        }
        None => {
            let n = num(s)?;
            Ok(n..=n)
        }
    }
}
