//! Batch command-line harness for the interval library.
//!
//! Exit codes: 0 success, 2 usage/parse/evaluation error, 3 resource
//! limit exhausted.

mod commands;
mod expr;
mod registry;

use clap::{Args, Parser, Subcommand};
use commands::SolveOutcome;
use ivl::newton::DEFAULT_MAX_BOXES;
use ivl::textio::{Format, Notation};
use ivl::{ElemFn, Precision};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ivl", version, about = "Validated interval arithmetic harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Display digits: significant in auto notation, after the point in
    /// fixed/scientific.
    #[arg(long, default_value_t = 6, global = true)]
    precision: usize,

    /// Output notation.
    #[arg(long, default_value = "auto", value_parser = parse_notation, global = true)]
    notation: Notation,

    /// Keep trailing fractional zeros.
    #[arg(long, global = true)]
    pad: bool,

    /// Spaces inside the brackets.
    #[arg(long, default_value_t = 0, global = true)]
    border_slack: usize,

    /// Spaces after the comma.
    #[arg(long, default_value_t = 0, global = true)]
    center_slack: usize,

    /// Endpoint family: binary64, binary32, or bigfloat[:bits].
    #[arg(long, default_value = "binary64", value_parser = parse_endpoint, global = true)]
    endpoint: Precision,

    /// Seed for the deterministic pseudo-random paths.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Emit machine-readable JSON where supported.
    #[arg(long, global = true)]
    json: bool,
}

fn parse_notation(s: &str) -> Result<Notation, String> {
    match s {
        "fixed" => Ok(Notation::Fixed),
        "sci" | "scientific" => Ok(Notation::Scientific),
        "hex" => Ok(Notation::Hex),
        "auto" => Ok(Notation::Auto),
        _ => Err(format!("unknown notation {s:?} (fixed|sci|hex|auto)")),
    }
}

fn parse_endpoint(s: &str) -> Result<Precision, String> {
    ivl::parse_precision(s).ok_or_else(|| {
        let names: Vec<_> = ivl::families().iter().map(|f| f.name()).collect();
        format!("unknown endpoint {s:?} (families: {})", names.join(", "))
    })
}

fn parse_functions(s: &str) -> Result<ElemFn, String> {
    let f = ElemFn::from_name(s).ok_or_else(|| format!("unknown function {s:?}"))?;
    if commands::BENCH_FUNCTIONS.contains(&f) {
        Ok(f)
    } else {
        Err(format!("{s:?} is not a timed function"))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an interval expression and print the result.
    Eval {
        /// Expression, e.g. "(sin(x) - (y/x + 5.0) * y) * 0.05".
        expression: String,

        /// Variable bindings, name=LITERAL (repeatable).
        #[arg(short, long = "bind")]
        bind: Vec<String>,

        #[command(flatten)]
        common: CommonOpts,
    },

    /// Repeatedly assign an expression's value to a variable, printing
    /// one line per step.
    Iterate {
        expression: String,

        #[arg(short, long = "bind")]
        bind: Vec<String>,

        /// The variable receiving each new value.
        #[arg(long)]
        var: String,

        #[arg(long, default_value_t = 10)]
        iterations: u64,

        #[command(flatten)]
        common: CommonOpts,
    },

    /// Time the barycentric conditioning ratio over random points.
    BenchLebesgue {
        #[arg(long, default_value_t = 257)]
        nodes: usize,

        #[arg(long, default_value_t = 1_000_000)]
        points: u64,

        #[command(flatten)]
        common: CommonOpts,
    },

    /// Time elementary functions over random intervals.
    BenchElem {
        /// Comma-separated subset of sin,cos,tan,asin,acos,atan,exp,log.
        #[arg(long, value_delimiter = ',', value_parser = parse_functions)]
        functions: Vec<ElemFn>,

        #[arg(long, default_value_t = 1_000_000)]
        evals: u64,

        #[command(flatten)]
        common: CommonOpts,
    },

    /// Validated polynomial root finding over a domain.
    Solve {
        /// Coefficients, constant term first, space or comma separated.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,

        /// File with coefficients in the same form.
        #[arg(long)]
        coeffs_file: Option<String>,

        /// Generate a random polynomial of this degree instead
        /// (coefficients uniform in [-1,1], driven by --seed).
        #[arg(long)]
        random_degree: Option<usize>,

        /// Domain interval literal, e.g. "[0,2]".
        #[arg(long)]
        domain: String,

        /// Emit enclosures once their width drops below this.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,

        #[arg(long, default_value_t = DEFAULT_MAX_BOXES)]
        max_boxes: usize,

        #[command(flatten)]
        common: CommonOpts,
    },

    /// Reformat a file of intervals ('-' reads stdin / writes stdout).
    Fmt {
        input: String,
        output: String,

        #[command(flatten)]
        common: CommonOpts,
    },
}

fn format_of(c: &CommonOpts) -> Format {
    Format {
        precision: c.precision.max(1),
        notation: c.notation,
        pad: c.pad,
        border_slack: c.border_slack,
        center_slack: c.center_slack,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> anyhow::Result<ExitCode> {
        match &cli.command {
            Command::Eval {
                expression,
                bind,
                common,
            } => {
                commands::cmd_eval(expression, bind, common.endpoint, &format_of(common))?;
                Ok(ExitCode::SUCCESS)
            }
            Command::Iterate {
                expression,
                bind,
                var,
                iterations,
                common,
            } => {
                commands::cmd_iterate(
                    expression,
                    bind,
                    var,
                    *iterations,
                    common.endpoint,
                    &format_of(common),
                )?;
                Ok(ExitCode::SUCCESS)
            }
            Command::BenchLebesgue {
                nodes,
                points,
                common,
            } => {
                commands::cmd_bench_lebesgue(
                    *nodes,
                    *points,
                    common.seed,
                    common.endpoint,
                    common.json,
                    &format_of(common),
                )?;
                Ok(ExitCode::SUCCESS)
            }
            Command::BenchElem {
                functions,
                evals,
                common,
            } => {
                let funcs: Vec<ElemFn> = if functions.is_empty() {
                    commands::BENCH_FUNCTIONS.to_vec()
                } else {
                    functions.clone()
                };
                commands::cmd_bench_elem(
                    &funcs,
                    *evals,
                    common.seed,
                    common.endpoint,
                    common.json,
                    &format_of(common),
                )?;
                Ok(ExitCode::SUCCESS)
            }
            Command::Solve {
                coeffs,
                coeffs_file,
                random_degree,
                domain,
                tol,
                max_boxes,
                common,
            } => {
                let outcome = commands::cmd_solve(
                    coeffs.as_deref(),
                    coeffs_file.as_deref(),
                    *random_degree,
                    domain,
                    *tol,
                    *max_boxes,
                    common.seed,
                    common.endpoint,
                    &format_of(common),
                )?;
                Ok(match outcome {
                    SolveOutcome::Done => ExitCode::SUCCESS,
                    SolveOutcome::Budget => ExitCode::from(3),
                })
            }
            Command::Fmt {
                input,
                output,
                common,
            } => {
                commands::cmd_fmt(input, output, common.endpoint, &format_of(common))?;
                Ok(ExitCode::SUCCESS)
            }
        }
    };
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
