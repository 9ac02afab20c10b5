//! The `meadow` command line.
//!
//! Exit codes: 0 for success, a true answer or an all-pass report; 1 for a
//! false answer or a report with failures; 2 for usage and parse errors.

use std::io::Write;

use clap::{Parser, Subcommand};
use meadow_core::axioms::{
    check_propagation, run_suite, CheckError, CheckParams, Mode, Model, PropagationKind,
};
use meadow_core::finite::{scan_lagrange, verify_f3_argument};
use meadow_core::kernel::Session;
use meadow_core::simplify::{decide_closed_eq, rewrite_simplify, sign_of_closed, SimplifyError};
use meadow_core::term::{eval_exact, gen_random_term, parse, Signature, Term, Valuation};
use meadow_core::SCHEMA_VERSION;
use serde::Serialize;
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "meadow", version, about = "Exact signed square-root meadow workbench")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of randomized trials.
    #[arg(long, global = true, default_value_t = 1000)]
    trials: u64,
    /// Decimal digits in approximations.
    #[arg(long, global = true, default_value_t = 10)]
    digits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a closed term to canonical form and a decimal.
    Eval { term: String },
    /// Rewrite a term with the sound rule list.
    Simplify {
        term: String,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
    },
    /// Decide equality of two closed terms.
    Equal { left: String, right: String },
    /// Sign of a closed term.
    Sign { term: String },
    /// Check an axiom set (`A+B` joins sets).
    Check {
        suite: String,
        /// exact, complex or fp:<prime>
        #[arg(long, default_value = "exact")]
        model: String,
    },
    /// Randomized check of the pseudo-unit or pseudo-zero propagation property.
    Propagation {
        #[arg(long, default_value = "unit")]
        kind: String,
        /// Maximum node count of the random terms.
        #[arg(long, default_value_t = 8)]
        size: usize,
    },
    /// Primes up to a limit at which the Lagrange equation of arity n holds.
    ScanLagrange {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        limit: u64,
    },
    /// (F_3)_0 satisfies Md and L1 but is no image of the rationals.
    F3Demo,
    /// A random term over the full signature.
    Gen {
        #[arg(long, default_value_t = 10)]
        size: usize,
        /// Comma-separated variable pool; empty for closed terms.
        #[arg(long, default_value = "x,y")]
        vars: String,
    },
}

/// A request the command line cannot serve; reported with exit code 2.
struct Usage(String);

/// Every check error stems from the request: an unknown name, a model that
/// lacks a symbol, or parameters out of range.
impl From<CheckError> for Usage {
    fn from(e: CheckError) -> Self {
        Usage(e.to_string())
    }
}

impl From<SimplifyError> for Usage {
    fn from(e: SimplifyError) -> Self {
        Usage(e.to_string())
    }
}

fn parse_term(src: &str) -> Result<Term, Usage> {
    parse(src).map_err(|e| {
        let caret = " ".repeat(e.position());
        Usage(format!("parse error: {e}\n  {src}\n  {caret}^"))
    })
}

struct Output<'a> {
    out: &'a mut dyn Write,
    json: bool,
}

impl Output<'_> {
    fn emit(&mut self, text: &str, value: &impl Serialize) {
        let res = if self.json {
            let s = serde_json::to_string_pretty(value).expect("serializable report");
            writeln!(self.out, "{s}")
        } else {
            writeln!(self.out, "{text}")
        };
        res.expect("write to output");
    }
}

fn execute(cli: Cli, o: &mut Output) -> Result<i32, Usage> {
    match cli.command {
        Command::Eval { term } => {
            let t = parse_term(&term)?;
            if !t.is_closed() {
                return Err(SimplifyError::OpenTerm(t.free_vars().into_iter().collect()).into());
            }
            let s = Session::new();
            let v = eval_exact(&t, &Valuation::new(), &s).map_err(|e| Usage(e.to_string()))?;
            let canonical = v.to_string();
            let decimal = v.approx_decimal(cli.digits.max(1));
            o.emit(
                &format!("{canonical}\n{decimal}"),
                &json!({
                    "schema_version": SCHEMA_VERSION,
                    "term": term,
                    "canonical": canonical,
                    "decimal": decimal,
                    "sign": v.sign().to_i8(),
                }),
            );
            Ok(0)
        }
        Command::Simplify { term, steps } => {
            let t = parse_term(&term)?;
            let r = rewrite_simplify(&t, steps);
            let trace: Vec<_> = r
                .trace
                .iter()
                .map(|s| json!({"rule": s.rule, "term": s.term.to_string()}))
                .collect();
            o.emit(
                &r.term.to_string(),
                &json!({
                    "schema_version": SCHEMA_VERSION,
                    "term": term,
                    "result": r.term.to_string(),
                    "steps": r.steps,
                    "truncated": r.truncated,
                    "trace": trace,
                }),
            );
            Ok(0)
        }
        Command::Equal { left, right } => {
            let (t, u) = (parse_term(&left)?, parse_term(&right)?);
            let equal = decide_closed_eq(&t, &u)?;
            o.emit(
                &equal.to_string(),
                &json!({"schema_version": SCHEMA_VERSION, "left": left, "right": right, "equal": equal}),
            );
            Ok(if equal { 0 } else { 1 })
        }
        Command::Sign { term } => {
            let t = parse_term(&term)?;
            let sign = sign_of_closed(&t)?;
            o.emit(
                &sign.to_string(),
                &json!({"schema_version": SCHEMA_VERSION, "term": term, "sign": sign.to_i8()}),
            );
            Ok(0)
        }
        Command::Check { suite, model } => {
            let model: Model = model.parse()?;
            let mode = match model {
                Model::Finite(_) => Mode::Exhaustive,
                _ => Mode::Randomized {
                    trials: cli.trials,
                    seed: cli.seed,
                },
            };
            let report = run_suite(&suite, model, &CheckParams::new(mode))?;
            o.emit(&report.to_string(), &report);
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Propagation { kind, size } => {
            let kind: PropagationKind = kind.parse()?;
            let report = check_propagation(kind, cli.trials, cli.seed, size)?;
            o.emit(&report.to_string(), &report);
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::ScanLagrange { n, limit } => {
            let report = scan_lagrange(n, limit).map_err(|e| Usage(e.to_string()))?;
            let witnesses: Vec<String> = report
                .counterexample_sample
                .iter()
                .map(|(p, w)| format!("  p = {p}: {w:?}"))
                .collect();
            let text = format!(
                "L_{n} holds for {} primes up to {limit}: {:?}\nwitnesses where it fails:\n{}",
                report.holds.len(),
                report.holds,
                witnesses.join("\n")
            );
            o.emit(&text, &report);
            Ok(0)
        }
        Command::F3Demo => {
            let r = verify_f3_argument();
            let text = format!(
                "squares mod 3: {:?}\nL1 holds in F_3: {}\nMd and L1 hold exhaustively: {}\n\
                 (1+1+1)/(1+1+1) in F_3: {}\n(1+1+1)/(1+1+1) exactly: {}\n\
                 homomorphism from the rationals blocked: {}",
                r.squares, r.l1.holds, r.md_and_l1_hold, r.finite_value, r.exact_value, r.homomorphism_blocked
            );
            o.emit(&text, &r);
            Ok(if r.homomorphism_blocked && r.md_and_l1_hold { 0 } else { 1 })
        }
        Command::Gen { size, vars } => {
            let pool: Vec<String> = vars
                .split(',')
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .map(String::from)
                .collect();
            let t = gen_random_term(cli.seed, size, &Signature::roots(), &pool)
                .map_err(|e| Usage(e.to_string()))?;
            o.emit(
                &t.to_string(),
                &json!({"schema_version": SCHEMA_VERSION, "seed": cli.seed, "size": size, "term": t.to_string()}),
            );
            Ok(0)
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let json = cli.json;
    let mut o = Output { out, json };
    match execute(cli, &mut o) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
