//! Command-line front end: flag parsing, configuration and JSON reports.

pub mod document;
pub mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use splitfield::dedekind::{dedekind_index_test, eisenstein_cubic, index_scan, is_eisenstein};
use splitfield::grunwald::{construct_cyclic, CyclicFieldRequest};
use splitfield::poly::discriminant;
use splitfield::realizations::{bounded_realization, lambda_primes, unbounded_realization};
use splitfield::{AbelianField, Error, IntPolynomial, Limits};

pub use document::FieldDocument;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(s) => write!(f, "{s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    /// 2 validation, 3 search exhausted, 4 cap exceeded, 1 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(e) => match e {
                Error::SearchExhausted { .. } => 3,
                Error::CapExceeded { .. } | Error::PrecisionInsufficient { .. } => 4,
                Error::Assertion(_) | Error::PeriodNotPrimitive(..) => 1,
                _ => 2,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Args)]
pub struct Config {
    #[arg(long, global = true, env = "MODULUS_CAP", default_value_t = 10_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub modulus_cap: u64,
    #[arg(long, global = true, env = "SUBGROUP_ENUMERATION_CAP", default_value_t = 1_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub subgroup_enumeration_cap: u64,
    #[arg(long, global = true, env = "PRIME_SEARCH_BOUND", default_value_t = 1_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub prime_search_bound: u64,
    #[arg(long, global = true, env = "PERIOD_DEGREE_CAP", default_value_t = 24,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub period_degree_cap: u64,
    /// Seed for the randomized polynomial factorization.
    #[arg(long, global = true, env = "SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, env = "OUTPUT_FORMAT", value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

impl Config {
    pub fn limits(&self) -> Limits {
        Limits {
            modulus_cap: self.modulus_cap,
            subgroup_enumeration_cap: self.subgroup_enumeration_cap,
            prime_search_bound: self.prime_search_bound,
            period_degree_cap: self.period_degree_cap,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "splitfield", version, about = "Abelian number fields, prime splitting and Dedekind's criterion")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Bounded,
    Unbounded,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The first primes q with q - 1 squarefree.
    Lambda {
        #[arg(long)]
        count: usize,
    },
    /// Splitting of a prime in the fixed field of a subgroup of (Z/m)*.
    LocalDegree {
        #[arg(long)]
        conductor: u128,
        /// Generators of the fixing subgroup; empty for the full cyclotomic field.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        subgroup: Vec<u128>,
        #[arg(long)]
        prime: u64,
    },
    /// A cyclic field of prime degree q in which the given primes split completely.
    ConstructCyclic {
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        split: Vec<u64>,
        /// Field document (inline JSON or a path) the result must be disjoint from.
        #[arg(long)]
        avoid: Option<String>,
    },
    /// A finite truncation of one of the two realizations.
    Realize {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        depth: usize,
        /// Target primes p_1, ..., p_k of the bounded realization.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        primes: Vec<u64>,
        /// Extra primes at which to report local degrees.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        probe: Vec<u64>,
    },
    /// Dedekind's index criterion for one polynomial or a family.
    Dedekind {
        /// Ascending coefficients, e.g. "1,0,1" for x^2 + 1.
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        prime: u64,
        /// JSON list of {"label", "polynomial"} entries to scan.
        #[arg(long)]
        family: Option<String>,
        /// Local-degree bound B for the family scan.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
    },
    /// Discriminant of x^3 - 2 p x + p.
    EisensteinDisc {
        #[arg(long)]
        p: u64,
    },
    /// Parse a field document and emit its canonical form.
    Field {
        /// Inline JSON or a path.
        #[arg(long)]
        doc: String,
        /// Primes for the splitting table.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        split_at: Vec<u64>,
    },
}

#[derive(Debug, Deserialize)]
struct FamilyEntry {
    label: String,
    polynomial: IntPolynomial,
}

pub fn parse_polynomial(text: &str) -> Result<IntPolynomial, CliError> {
    let coeffs = text
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Input(format!("bad coefficient {c:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPolynomial::new(coeffs))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports always serialize")
}

/// Runs one command and returns its JSON report.
pub fn run(cli: &Cli) -> Result<Value, CliError> {
    let limits = cli.config.limits();
    let seed = cli.config.seed;
    match &cli.command {
        Command::Lambda { count } => Ok(to_value(&lambda_primes(*count))),
        Command::LocalDegree {
            conductor,
            subgroup,
            prime,
        } => {
            let field = AbelianField::from_generators(*conductor, subgroup, limits)?;
            Ok(to_value(&field.splitting_data(*prime)?))
        }
        Command::ConstructCyclic { q, split, avoid } => {
            let avoid = match avoid {
                Some(arg) => FieldDocument::load(arg)?.to_field(limits)?,
                None => AbelianField::rationals(limits),
            };
            let req = CyclicFieldRequest {
                q: *q,
                split_primes: split.clone(),
                avoid,
                search_bound: limits.prime_search_bound,
            };
            let (field, trace) = construct_cyclic(&req)?;
            let mut doc = FieldDocument::from_field(&field).with_splitting(&field, &trace.split_primes)?;
            doc.trace = Some(to_value(&trace));
            Ok(to_value(&doc))
        }
        Command::Realize {
            kind,
            depth,
            primes,
            probe,
        } => {
            let report = match kind {
                Kind::Bounded => bounded_realization(*depth, primes, probe, limits)?,
                Kind::Unbounded => {
                    if !primes.is_empty() {
                        return Err(CliError::Input("--primes applies to the bounded kind only".into()));
                    }
                    unbounded_realization(*depth, probe, limits)?
                }
            };
            Ok(to_value(&report))
        }
        Command::Dedekind {
            poly,
            prime,
            family,
            bound,
        } => match (poly, family) {
            (Some(text), None) => Ok(to_value(&dedekind_index_test(&parse_polynomial(text)?, *prime, seed)?)),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
                let entries: Vec<FamilyEntry> =
                    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("family file: {e}")))?;
                let family: Vec<(String, IntPolynomial)> =
                    entries.into_iter().map(|e| (e.label, e.polynomial)).collect();
                Ok(to_value(&index_scan(&family, *prime, *bound, seed)?))
            }
            _ => Err(CliError::Input("give exactly one of --poly and --family".into())),
        },
        Command::EisensteinDisc { p } => {
            if !splitfield::arith::is_prime(*p) {
                return Err(Error::NotPrime(*p).into());
            }
            let f = eisenstein_cubic(*p);
            let disc = discriminant(&f);
            let pb = BigInt::from(*p);
            let formula = &pb * &pb * (BigInt::from(32) * &pb - 27);
            Ok(json!({
                "poly": f.to_string(),
                "coefficients": to_value(&f),
                "eisenstein": is_eisenstein(&f, *p),
                "discriminant": disc.to_string(),
                "factorization": format!("{p}^2 * {}", BigInt::from(32) * &pb - 27),
                "matches_formula": disc == formula,
            }))
        }
        Command::Field { doc, split_at } => {
            let field = FieldDocument::load(doc)?.to_field(limits)?;
            Ok(to_value(&FieldDocument::from_field(&field).with_splitting(&field, split_at)?))
        }
    }
}

/// Renders a report in the configured format.
pub fn render(value: &Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => render::json(value),
        OutputFormat::Table => render::table(value),
    }
}
