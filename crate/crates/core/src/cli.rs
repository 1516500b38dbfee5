//! Command-line front end. [`run`] is the whole program minus process exit.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::doc::{implied_spec, solution_from_json, solution_to_json, spec_from_json};
use crate::equation::{build_rhs, classify, root_report, verify, EquationSpec, Solution};
use crate::error::{Error, Result};
use crate::oracle::{brute_force_solve_with_budget, wicks_is_commutator, witness_pair, DEFAULT_BUDGET};
use crate::solvers::{
    express_commutator_power, solve_asymmetric, solve_power_lift, solve_torus_min_index,
    solve_torus_primitive, BaseSolution,
};
use crate::word::Word;

pub const BUDGET_VAR: &str = "QUADWORD_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "quadword", version, about = "Solve, verify and classify quadratic equations in free groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SolveFamily {
    PowerLift,
    TorusMin,
    TorusPrimitive,
    Asymmetric,
    CommutatorPower,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a solution and print it as JSON
    Solve {
        #[arg(long, value_enum)]
        family: SolveFamily,
        #[arg(long, default_value_t = 1)]
        g: u32,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        c: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// Solution file for the c = 1 equation (power-lift)
        #[arg(long)]
        base: Option<String>,
        /// Comma-separated conjugators w_i matching --base
        #[arg(long)]
        w: Option<String>,
    },
    /// Check a solution; prints OK or FAIL
    Verify {
        #[arg(long)]
        solution: String,
        /// Defaults to the equation implied by the solution's family and params
        #[arg(long)]
        spec: Option<String>,
    },
    /// Index of the abelianized image
    Classify {
        #[arg(long)]
        solution: String,
    },
    /// Root counts for the map given by a solution
    Report {
        #[arg(long)]
        solution: String,
        #[arg(long)]
        spec: Option<String>,
    },
    /// Print the right-hand side word of a spec
    Rhs {
        #[arg(long)]
        spec: String,
    },
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Single-commutator test by Wicks form
    Wicks {
        #[arg(long)]
        word: String,
        /// Rank; defaults to the largest subscript in the word
        #[arg(long)]
        g: Option<u32>,
    },
    /// Bounded exhaustive search
    Search {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        h: usize,
        #[arg(long = "max-len")]
        max_len: usize,
    },
}

enum Outcome {
    Ok(String),
    Fail(String),
}

/// Runs one invocation. Exit code 0 on success, 1 on FAIL or "none",
/// 2 on usage or input errors.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut input = Input { stdin, used: false };
    match execute(cli.command, &mut input) {
        Ok(Outcome::Ok(s)) => {
            let _ = writeln!(out, "{s}");
            0
        }
        Ok(Outcome::Fail(s)) => {
            let _ = writeln!(out, "{s}");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Unverified(_) => 1,
                _ => 2,
            }
        }
    }
}

struct Input<'a> {
    stdin: &'a mut dyn Read,
    used: bool,
}

impl Input<'_> {
    /// File contents, or standard input for "-" (at most once).
    fn read(&mut self, path: &str) -> Result<String> {
        if path == "-" {
            if self.used {
                return Err(Error::Document("standard input can be read only once".into()));
            }
            self.used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Document(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| Error::Document(format!("{path}: {e}")))
        }
    }

    fn solution(&mut self, path: &str) -> Result<Solution> {
        solution_from_json(&self.read(path)?)
    }

    fn spec(&mut self, path: &str) -> Result<EquationSpec> {
        spec_from_json(&self.read(path)?)
    }

    fn spec_or_implied(&mut self, path: Option<&str>, sol: &Solution) -> Result<EquationSpec> {
        match path {
            Some(p) => self.spec(p),
            None => implied_spec(sol),
        }
    }
}

fn need(v: Option<u32>, flag: &str) -> Result<u32> {
    v.ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required for this family")))
}

fn budget() -> Result<u128> {
    match std::env::var(BUDGET_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{BUDGET_VAR} must be a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn execute(cmd: Command, input: &mut Input<'_>) -> Result<Outcome> {
    Ok(match cmd {
        Command::Solve {
            family,
            g,
            l,
            c,
            k,
            n,
            base,
            w,
        } => {
            let sol = match family {
                SolveFamily::PowerLift => {
                    let base = match (base, w) {
                        (Some(path), Some(list)) => {
                            let sol = input.solution(&path)?;
                            let conj = list
                                .split(',')
                                .map(|s| Word::parse(s.trim(), sol.g))
                                .collect::<Result<Vec<_>>>()?;
                            BaseSolution::new(sol, conj)?
                        }
                        (None, None) => BaseSolution::torus(g, need(l, "l")?)?,
                        _ => {
                            return Err(Error::InvalidParameter(
                                "--base and --w must be given together".into(),
                            ))
                        }
                    };
                    solve_power_lift(&base, need(c, "c")?)?
                }
                SolveFamily::TorusMin => solve_torus_min_index(need(l, "l")?, need(c, "c")?)?,
                SolveFamily::TorusPrimitive => solve_torus_primitive(need(l, "l")?, need(c, "c")?)?,
                SolveFamily::Asymmetric => solve_asymmetric(need(k, "k")?, need(l, "l")?)?,
                SolveFamily::CommutatorPower => express_commutator_power(need(n, "n")?)?,
            };
            Outcome::Ok(solution_to_json(&sol))
        }
        Command::Verify { solution, spec } => {
            let sol = input.solution(&solution)?;
            let spec = input.spec_or_implied(spec.as_deref(), &sol)?;
            if verify(&sol, &spec)? {
                Outcome::Ok("OK".into())
            } else {
                Outcome::Fail("FAIL".into())
            }
        }
        Command::Classify { solution } => {
            let sol = input.solution(&solution)?;
            let index = classify(&sol);
            Outcome::Ok(json!({"index": index, "primitive": index.is_one()}).to_string())
        }
        Command::Report { solution, spec } => {
            let sol = input.solution(&solution)?;
            let spec = input.spec_or_implied(spec.as_deref(), &sol)?;
            let report = root_report(&sol, &spec)?;
            Outcome::Ok(serde_json::to_string(&report).expect("plain data"))
        }
        Command::Rhs { spec } => Outcome::Ok(build_rhs(&input.spec(&spec)?).to_string()),
        Command::Oracle(OracleCommand::Wicks { word, g }) => {
            let w = match g {
                Some(g) => Word::parse(&word, g)?,
                None => Word::parse_auto(&word)?,
            };
            match wicks_is_commutator(&w) {
                Some(wit) => {
                    let (u, v) = witness_pair(&w, &wit);
                    let mut doc = serde_json::to_value(&wit).expect("plain data");
                    doc["u"] = u.to_string().into();
                    doc["v"] = v.to_string().into();
                    Outcome::Ok(doc.to_string())
                }
                None => Outcome::Fail("none".into()),
            }
        }
        Command::Oracle(OracleCommand::Search { spec, h, max_len }) => {
            let spec = input.spec(&spec)?;
            let res = brute_force_solve_with_budget(&spec, h, max_len, budget()?)?;
            match res.found {
                Some(sol) => Outcome::Ok(solution_to_json(&sol)),
                None => Outcome::Fail("none".into()),
            }
        }
    })
}
