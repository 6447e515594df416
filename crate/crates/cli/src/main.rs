use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use qbl_cli::report::{qbracket, rational_string, FitKind, SCHEMA_VERSION};
use qbl_cli::suites::{run_suite, Bounds, CheckReport, SUITES};
use qbl_cli::{eval, parse, Ctx};
use qbl_core::partitions::{partitions_of, partitions_up_to};
use qbl_core::symgroup::{character, moller};
use qbl_core::Partition;
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "qbl", version, about = "Exact q-brackets of functions on partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand the q-bracket of an expression and optionally recognise it.
    Qbracket {
        expr: String,
        #[arg(long, env = "QBL_ORDER", default_value_t = qbl_core::DEFAULT_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value = "qm")]
        fit: FitKind,
        /// Allow odd-weight generators.
        #[arg(long)]
        extended: bool,
        /// Size bound for moller(...) inside the expression.
        #[arg(long, default_value_t = qbl_core::DEFAULT_PSIZE)]
        psize: usize,
    },
    /// Run a verification suite: appendix, products, sl2, characters,
    /// structure or all.
    Verify {
        suite: String,
        /// Partition size bound for every check (default: each check's own).
        #[arg(long)]
        psize: Option<usize>,
        /// Series order for every check (default: each check's own).
        #[arg(long, env = "QBL_ORDER")]
        order: Option<usize>,
    },
    /// Symmetric group characters.
    Char {
        #[arg(long)]
        lambda: String,
        /// A class; all classes of the right size when omitted.
        #[arg(long)]
        rho: Option<String>,
    },
    /// Values of the Möller transform of an expression.
    Moller {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = qbl_core::DEFAULT_PSIZE)]
        psize: usize,
    },
}

fn print_json(v: &impl Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn partition(s: &str) -> Result<Partition> {
    let s = s.trim();
    if s.is_empty() || s == "[]" {
        return Ok(Partition::empty());
    }
    s.parse().with_context(|| format!("bad partition '{s}'"))
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    schema_version: u32,
    suite: &'a str,
    order: Option<usize>,
    psize: Option<usize>,
    passed: bool,
    checks: &'a [CheckReport],
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Qbracket { expr, order, fit, extended, psize } => {
            let report = qbracket(&expr, order, fit, &Ctx { psize, extended })?;
            print_json(&report)?;
            Ok(true)
        }
        Command::Verify { suite, psize, order } => {
            let bounds = Bounds { order, psize };
            let Some(checks) = run_suite(&suite, &bounds) else {
                bail!("unknown suite '{suite}' (expected one of {}, all)", SUITES.join(", "));
            };
            let passed = checks.iter().all(|c| c.passed);
            print_json(&VerifyReport { schema_version: SCHEMA_VERSION, suite: &suite, order, psize, passed, checks: &checks })?;
            if let Some(bad) = checks.iter().find(|c| !c.passed) {
                eprintln!(
                    "{}/{} failed: {}",
                    bad.suite,
                    bad.name,
                    bad.counterexample.as_deref().unwrap_or("no cases ran")
                );
            }
            Ok(passed)
        }
        Command::Char { lambda, rho } => {
            let lam = partition(&lambda)?;
            let classes = match rho {
                Some(r) => vec![partition(&r)?],
                None => partitions_of(lam.size()),
            };
            let values = classes
                .iter()
                .map(|r| Ok(json!({ "rho": r.parts(), "character": character(&lam, r)? })))
                .collect::<Result<Vec<_>>>()?;
            print_json(&json!({ "schema_version": SCHEMA_VERSION, "lambda": lam.parts(), "values": values }))?;
            Ok(true)
        }
        Command::Moller { expr, psize } => {
            let e = parse(&expr)?;
            let f = eval(&e, &Ctx { psize, extended: true })?.to_pfun();
            let m = moller(&f, psize);
            let values = partitions_up_to(psize)
                .iter()
                .map(|l| Ok(json!({ "lambda": l.parts(), "value": rational_string(&m.eval(l)?) })))
                .collect::<Result<Vec<_>>>()?;
            print_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "expr": e.to_string(),
                "psize": psize,
                "values": values,
            }))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
