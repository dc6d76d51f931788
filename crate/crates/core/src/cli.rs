//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coefficients::{prime_power, FieldCtx};
use crate::error::{Error, Result};
use crate::subrings::{
    census, counterexample_family, lift_isomorphic, restricted_extension, CensusRow, Method,
    Subring,
};
use crate::truncated_rings::RingCtx;
use crate::verify::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "minext",
    version,
    about = "Subring censuses of truncated polynomial rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Census of all subalgebras of F_q[x]/x^n, grouped by exponent set.
    Census {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        /// Defining polynomial of F_q over F_p, e.g. "1+x+x^2".
        #[arg(long)]
        modulus: Option<String>,
        #[command(flatten)]
        output: CensusOutput,
    },
    /// Census of all subrings of Z[x]/(p^N, p^k x^{n-1}, x^n).
    #[command(name = "census-z")]
    CensusZ {
        #[arg(long)]
        p: u32,
        #[arg(long = "N", id = "big_n")]
        big_n: u32,
        #[arg(long)]
        n: usize,
        /// Defaults to N.
        #[arg(long)]
        k: Option<u32>,
        #[command(flatten)]
        output: CensusOutput,
    },
    /// Subrings one step up the quotient chain mapping isomorphically onto B.
    Lifts {
        #[command(flatten)]
        ring: RingArgs,
        /// Generators of B in the target ring, separated by ';'.
        #[arg(long)]
        subring: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exponent set, its minimal generators and cotangent dimensions.
    Shape {
        #[command(flatten)]
        ring: RingArgs,
        /// Generators of R, separated by ';'.
        #[arg(long)]
        subring: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The family generated by x^a + x^{a+3}, x^{a+1}, x^{a+2} in F_q[x]/x^{2a+6}.
    Counterexample {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs invariant suites; exits 1 and prints witnesses on any violation.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct CensusOutput {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Include the canonical basis of every subring.
    #[arg(long)]
    emit_bases: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "minimal-ext")]
    method: Method,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Either `--q` (with optional `--modulus`) or `--p --N [--k]`, plus `--n`.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("coeff").required(true).args(["q", "p"])))]
struct RingArgs {
    #[arg(long, conflicts_with_all = ["p", "big_n", "k"])]
    q: Option<u32>,
    #[arg(long, requires = "q")]
    modulus: Option<String>,
    #[arg(long, requires = "big_n")]
    p: Option<u32>,
    #[arg(long = "N", id = "big_n", requires = "p")]
    big_n: Option<u32>,
    #[arg(long)]
    n: usize,
    #[arg(long, requires = "p")]
    k: Option<u32>,
}

impl RingArgs {
    fn build(&self) -> Result<Arc<RingCtx>> {
        let ctx = match (self.q, self.p, self.big_n) {
            (Some(q), _, _) => {
                RingCtx::poly_over_field(field(q, self.modulus.as_deref())?, self.n)?
            }
            (None, Some(p), Some(big_n)) => {
                RingCtx::zpn(p, big_n, self.n, self.k.unwrap_or(big_n))?
            }
            _ => unreachable!("clap enforces the coefficient group"),
        };
        Ok(Arc::new(ctx))
    }
}

fn field(q: u32, modulus: Option<&str>) -> Result<FieldCtx> {
    let (p, e) =
        prime_power(q).ok_or_else(|| Error::InvalidContext(format!("{q} is not a prime power")))?;
    let modulus = match modulus {
        None => None,
        Some(s) => {
            let poly_ring = RingCtx::fq(p, e as usize + 1)?;
            Some(poly_ring.parse(s)?.into_coeffs())
        }
    };
    FieldCtx::new(p, e, modulus)
}

fn parse_gens(ctx: &RingCtx, list: &str) -> Result<Vec<crate::truncated_rings::RingElem>> {
    list.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| ctx.parse(s))
        .collect()
}

fn emit(out: Option<&PathBuf>, body: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn census_body(ctx: &Arc<RingCtx>, output: &CensusOutput) -> Result<String> {
    let mut rows: Vec<CensusRow> = census(ctx, output.method)?;
    if output.emit_bases {
        rows.iter_mut().for_each(CensusRow::emit_bases);
    }
    Ok(match output.format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header = [
                "shape",
                "count",
                "bound_exp",
                "bound",
                "equality",
                "d_shape",
            ];
            let write_err = |e: csv::Error| Error::InvalidContext(e.to_string());
            w.write_record(header).map_err(write_err)?;
            for r in &rows {
                w.write_record([
                    r.shape.to_string(),
                    r.count.to_string(),
                    r.bound_exp.to_string(),
                    r.bound.to_string(),
                    r.equality.to_string(),
                    r.d_shape.to_string(),
                ])
                .map_err(write_err)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::InvalidContext(e.to_string()))?;
            String::from_utf8(bytes).expect("csv output is utf-8")
        }
    })
}

#[derive(Serialize)]
struct ShapeReport {
    ring: String,
    basis: Vec<String>,
    exponent_set: crate::partial_monoids::Shape,
    minimal_generators: serde_json::Value,
    d_shape: u32,
    d_ring: u32,
    length: u32,
}

/// Outcome of a subcommand: text to emit and the exit code.
struct Outcome {
    body: String,
    out: Option<PathBuf>,
    code: i32,
}

fn execute(cmd: Command) -> Result<Outcome> {
    let ok = |body: String, out: Option<PathBuf>| Outcome {
        body,
        out,
        code: EXIT_OK,
    };
    match cmd {
        Command::Census {
            q,
            n,
            modulus,
            output,
        } => {
            let ctx = Arc::new(RingCtx::poly_over_field(field(q, modulus.as_deref())?, n)?);
            Ok(ok(census_body(&ctx, &output)?, output.out))
        }
        Command::CensusZ {
            p,
            big_n,
            n,
            k,
            output,
        } => {
            let ctx = Arc::new(RingCtx::zpn(p, big_n, n, k.unwrap_or(big_n))?);
            Ok(ok(census_body(&ctx, &output)?, output.out))
        }
        Command::Lifts { ring, subring, out } => {
            let ctx = ring.build()?;
            let b = Subring::closure(ctx.clone(), &parse_gens(&ctx, &subring)?);
            let family = lift_isomorphic(&restricted_extension(&b))?;
            Ok(ok(to_json(&family.report()), out))
        }
        Command::Shape { ring, subring, out } => {
            let ctx = ring.build()?;
            let r = Subring::closure(ctx.clone(), &parse_gens(&ctx, &subring)?);
            let shape = r.exponent_set();
            let gens = shape.minimal_generators();
            let report = ShapeReport {
                ring: ctx.describe(),
                basis: r.describe(),
                minimal_generators: if ctx.is_field_kind() {
                    serde_json::json!(gens.iter().map(|v| v.deg).collect::<Vec<_>>())
                } else {
                    serde_json::json!(gens)
                },
                d_shape: shape.d(),
                exponent_set: shape,
                d_ring: r.cotangent_dim(),
                length: r.length(),
            };
            Ok(ok(to_json(&report), out))
        }
        Command::Counterexample { a, q, modulus, out } => {
            let report = counterexample_family(a, field(q, modulus.as_deref())?)?;
            Ok(ok(to_json(&report), out))
        }
        Command::Verify { suite, ring, out } => {
            let ctx = ring.build()?;
            let report = run_suite(&ctx, suite)?;
            let code = if report.is_ok() {
                EXIT_OK
            } else {
                for v in &report.violations {
                    eprintln!("violation [{}]: {}", v.law, v.witness);
                }
                EXIT_VIOLATION
            };
            Ok(Outcome {
                body: to_json(&report),
                out,
                code,
            })
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => match emit(outcome.out.as_ref(), &outcome.body) {
            Ok(()) => outcome.code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
