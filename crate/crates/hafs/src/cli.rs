//! The `hafs` command line.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use hafs_core::bridge::{verify, TheoremId, VerifyError, VerifyOptions};
use hafs_core::equations::{EquationSystem, SolveError, SolveOptions, DEFAULT_TERNARY_BOUND};
use hafs_core::extension::{enumerate_extensions, DEFAULT_EXTENSION_BOUND};
use hafs_core::framework::{generate_random, RandomSpec};
use hafs_core::labelling::{enumerate_adjacent_complete, select_labellings, DEFAULT_LABELLING_BOUND};
use hafs_core::logic::{encode_normal, Logic, NormalEncoding};
use hafs_core::{Degree, Hafs, Semantics};
use serde_json::{json, Value};

use crate::assignment::{parse_assignment, Values};
use crate::input::{bound, load_framework, MAX_U_VAR};
use crate::output;

/// Exit status for a failed check or an unsatisfiable domain request.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for malformed input or usage.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "hafs",
    version,
    about = "Solver for higher-order argumentation frameworks with supports"
)]
#[command(
    after_help = "FRAMEWORK is a file path, `-` for stdin, or inline text such as \"arg(a). supp(t1,a,a).\"\n\
    HAFS_MAX_U overrides the enumeration bounds (defaults: labellings 16, extensions 20, ternary solutions 12, verify 8)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a framework and print its canonical form
    Check { framework: String },
    /// Adjacent complete labellings and their refinements
    Labellings {
        framework: String,
        #[arg(long, default_value = "complete")]
        semantics: Semantics,
    },
    /// Extensions under a defeat-based semantics
    Extensions {
        framework: String,
        #[arg(long, default_value = "complete")]
        semantics: Semantics,
    },
    /// Print the normal encoding
    Encode {
        framework: String,
        #[arg(long, default_value = "l3")]
        logic: Logic,
        #[arg(long, value_enum, default_value_t = FormulaFormat::Text)]
        format: FormulaFormat,
    },
    /// Evaluate the normal encoding under an assignment
    Eval {
        framework: String,
        /// JSON object, inline or as a file path
        #[arg(long)]
        assignment: String,
        #[arg(long, default_value = "l3")]
        logic: Logic,
    },
    /// Solve the equation system of the normal encoding
    Solve {
        framework: String,
        #[arg(long, default_value = "godel")]
        logic: Logic,
        #[arg(long, default_value_t = 0.5)]
        damping: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// List the exact solutions with values in {0, 1/2, 1} instead
        #[arg(long)]
        exact: bool,
    },
    /// Check correspondences between the semantics on one framework
    Verify {
        framework: String,
        /// T1, T2, T_PL3, EQ_G, EQ_P, EQ_L, T16, IDEM, CORR_G, a comma-separated list, or `all`
        #[arg(long, default_value = "all")]
        theorem: String,
        /// Logic for T16 and IDEM
        #[arg(long, default_value = "godel")]
        logic: Logic,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random float assignments per equation check
        #[arg(long, default_value_t = 10_000)]
        float_samples: usize,
        /// Largest exhaustively checked grid for equation checks
        #[arg(long, default_value_t = 100_000)]
        grid_cap: usize,
    },
    /// Generate a random framework
    Random {
        #[arg(long)]
        args: usize,
        #[arg(long, default_value_t = 0)]
        atts: usize,
        #[arg(long, default_value_t = 0)]
        supps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Never close a cycle of supports
        #[arg(long)]
        acyclic_supports: bool,
        /// Chance that a relation endpoint is an earlier relation
        #[arg(long, default_value_t = 0.0)]
        higher_order: f64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormulaFormat {
    Text,
    Json,
}

/// An error with its exit status.
struct Failure {
    code: i32,
    message: String,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_FAILURE,
        message: e.to_string(),
    }
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let max_u = std::env::var(MAX_U_VAR).ok();
    match execute(cli.command, max_u.as_deref(), stdin, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "hafs: {}", f.message);
            f.code
        }
    }
}

fn emit(stdout: &mut dyn Write, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(domain)?;
    writeln!(stdout, "{text}").map_err(domain)
}

fn execute(
    command: Command,
    max_u: Option<&str>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let limit = |default: usize| bound(default, max_u).map_err(usage);
    let mut load = |source: &str| load_framework(source, stdin).map_err(usage);
    match command {
        Command::Check { framework } => {
            let h = load(&framework)?;
            write!(stdout, "{h}").map_err(domain)?;
        }
        Command::Labellings { framework, semantics } => {
            let h = load(&framework)?;
            let all = enumerate_adjacent_complete(&h, limit(DEFAULT_LABELLING_BOUND)?).map_err(domain)?;
            let chosen = select_labellings(&h, &all, semantics);
            emit(
                stdout,
                &output::labellings(&h, semantics, &chosen.items, chosen.diagnostic),
            )?;
        }
        Command::Extensions { framework, semantics } => {
            let h = load(&framework)?;
            let chosen =
                enumerate_extensions(&h, semantics, limit(DEFAULT_EXTENSION_BOUND)?).map_err(domain)?;
            emit(
                stdout,
                &output::extensions(&h, semantics, &chosen.items, chosen.diagnostic),
            )?;
        }
        Command::Encode {
            framework,
            logic,
            format,
        } => {
            let h = load(&framework)?;
            let f = encode_normal(&h);
            // the encoding is the same formula in every logic
            let _ = logic;
            match format {
                FormulaFormat::Text => writeln!(stdout, "{f}").map_err(domain)?,
                FormulaFormat::Json => emit(stdout, &output::formula(&f))?,
            }
        }
        Command::Eval {
            framework,
            assignment,
            logic,
        } => {
            let h = load(&framework)?;
            let text = if assignment.trim_start().starts_with('{') {
                assignment
            } else {
                std::fs::read_to_string(&assignment)
                    .map_err(|e| usage(format!("cannot read {assignment}: {e}")))?
            };
            let report = match parse_assignment(&h, &text).map_err(usage)? {
                Values::Exact(v) => {
                    let value = evaluate_value(&h, v.values(), logic)?;
                    json!({
                        "logic": logic.key(),
                        "mode": "exact",
                        "value": value.to_string(),
                        "model": value.is_one(),
                    })
                }
                Values::Float(v) => {
                    let value = evaluate_value(&h, v.values(), logic)?;
                    json!({
                        "logic": logic.key(),
                        "mode": "float",
                        "value": output::float(value),
                        "model": value.is_one(),
                    })
                }
            };
            emit(stdout, &report)?;
        }
        Command::Solve {
            framework,
            logic,
            damping,
            tol,
            max_iter,
            restarts,
            seed,
            exact,
        } => {
            let h = load(&framework)?;
            let sys = EquationSystem::new(&h, logic);
            let report = if exact {
                let solutions = sys
                    .enumerate_ternary_solutions(limit(DEFAULT_TERNARY_BOUND)?)
                    .map_err(domain)?;
                json!({
                    "logic": logic.key(),
                    "mode": "exact",
                    "solutions": solutions.iter().map(|l| output::labelling(&h, l)).collect::<Vec<_>>(),
                })
            } else {
                let opts = SolveOptions {
                    damping,
                    tolerance: tol,
                    max_iter,
                    restarts,
                    seed,
                };
                let reports = sys.solve_fixed_point(&opts).map_err(|e| match e {
                    SolveError::NotContinuous(_) => domain(e),
                    _ => usage(e),
                })?;
                json!({
                    "logic": logic.key(),
                    "mode": "float",
                    "reports": reports.iter().map(|r| output::solve_report(&h, r)).collect::<Vec<_>>(),
                })
            };
            emit(stdout, &report)?;
        }
        Command::Verify {
            framework,
            theorem,
            logic,
            seed,
            float_samples,
            grid_cap,
        } => {
            let h = load(&framework)?;
            let (theorems, explicit) = parse_theorems(&theorem)?;
            let opts = VerifyOptions {
                bound: limit(VerifyOptions::default().bound)?,
                logic,
                seed,
                float_samples,
                grid_cap,
                ..VerifyOptions::default()
            };
            return run_verify(&h, &theorems, explicit, &opts, stdout);
        }
        Command::Random {
            args,
            atts,
            supps,
            seed,
            acyclic_supports,
            higher_order,
        } => {
            let spec = RandomSpec {
                arguments: args,
                attacks: atts,
                supports: supps,
                seed,
                support_acyclic: acyclic_supports,
                higher_order_prob: higher_order,
            };
            let h = generate_random(&spec).map_err(usage)?;
            write!(stdout, "{h}").map_err(domain)?;
        }
    }
    Ok(0)
}

fn evaluate_value<D: Degree>(h: &Hafs, values: &[D], logic: Logic) -> Result<D, Failure> {
    NormalEncoding::new(h).evaluate(values, &logic).map_err(domain)
}

fn parse_theorems(spec: &str) -> Result<(Vec<TheoremId>, bool), Failure> {
    if spec.eq_ignore_ascii_case("all") {
        return Ok((TheoremId::ALL.to_vec(), false));
    }
    let ids = spec
        .split(',')
        .map(|s| s.trim().parse::<TheoremId>().map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((ids, true))
}

/// Runs each check. Under `all`, checks whose preconditions fail are
/// reported as skipped; named explicitly, they are errors.
fn run_verify(
    h: &Hafs,
    theorems: &[TheoremId],
    explicit: bool,
    opts: &VerifyOptions,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut reports = Vec::new();
    let mut all_passed = true;
    for &theorem in theorems {
        match verify(h, theorem, opts) {
            Ok(report) => {
                all_passed &= report.passed;
                reports.push(output::verification(&report));
            }
            Err(e @ (VerifyError::SupportCyclic(_) | VerifyError::LogicPrecondition { .. })) if !explicit => {
                reports.push(json!({
                    "theorem": theorem.as_str(),
                    "framework_digest": h.digest(),
                    "skipped": e.to_string(),
                }));
            }
            Err(e) => return Err(domain(e)),
        }
    }
    emit(stdout, &Value::Array(reports))?;
    Ok(if all_passed { 0 } else { EXIT_FAILURE })
}
