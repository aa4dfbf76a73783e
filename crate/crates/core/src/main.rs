use std::path::PathBuf;
use std::process::ExitCode;

use branchloc::cli::{
    parse_scenario, render_corpus, render_scenario, run_corpus, run_file, run_properties, BudgetSpec,
};
use branchloc::groebner::Budget;
use branchloc::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "branchloc", version, about = "Branch and critical loci of morphisms of affine schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Args)]
struct Common {
    /// Degree cap for Gröbner basis computations.
    #[arg(long)]
    budget_degree: Option<u32>,
    /// Wall-clock limit per task.
    #[arg(long)]
    budget_seconds: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl Common {
    fn budget(&self) -> BudgetSpec {
        BudgetSpec { degree: self.budget_degree, seconds: self.budget_seconds }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of one scenario file.
    Run {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run every .plc file of a directory.
    Corpus {
        dir: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print the reduced Gröbner basis of a ring or ideal declared in a scenario.
    Gb {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized invariant checks.
    Props {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(1)
}

fn gb(file: &PathBuf, name: &str, common: &Common) -> Result<String, Error> {
    let src = std::fs::read_to_string(file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
    let s = parse_scenario(&src)?;
    let budget = s.budget.overridden(&common.budget()).budget();
    let ctx = s.context(&budget)?;
    let ideal = match (ctx.ideals.get(name), ctx.rings.get(name)) {
        (Some((_, i)), _) => i.clone(),
        (None, Some(r)) => r.ideal.clone(),
        _ => return Err(Error::Io(format!("no ring or ideal named `{name}`"))),
    };
    let basis = ideal.gb(&budget)?.canonical_strings();
    Ok(match common.format {
        Format::Text => basis.join("\n") + "\n",
        Format::Structured => json(&serde_json::json!({ "ideal": name, "basis": basis })) + "\n",
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run { file, common } => match run_file(&file, &common.budget()) {
            Ok(r) => {
                match common.format {
                    Format::Text => print!("{}", render_scenario(&r)),
                    Format::Structured => println!("{}", json(&r)),
                }
                ExitCode::from(r.exit_code() as u8)
            }
            Err(e) => fail(e),
        },
        Command::Corpus { dir, common } => match run_corpus(&dir, &common.budget()) {
            Ok(s) => {
                match common.format {
                    Format::Text => print!("{}", render_corpus(&s)),
                    Format::Structured => println!("{}", json(&s)),
                }
                ExitCode::from(s.exit_code() as u8)
            }
            Err(e) => fail(e),
        },
        Command::Gb { file, ideal, common } => match gb(&file, &ideal, &common) {
            Ok(out) => {
                print!("{out}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::Props { seed, cases, common } => {
            let spec = common.budget();
            let budget = Budget::new(spec.degree.unwrap_or(Budget::default().degree_cap), spec.seconds);
            let outcomes = run_properties(seed, cases, &budget);
            match common.format {
                Format::Text => {
                    for o in &outcomes {
                        let status = if o.passed() { "PASS" } else { "FAIL" };
                        println!("{status} {} ({} cases, {} failures)", o.name, o.cases, o.failures);
                        if let Some(f) = &o.first_failure {
                            println!("  first failure: {f}");
                        }
                    }
                }
                Format::Structured => println!("{}", json(&outcomes)),
            }
            if outcomes.iter().all(|o| o.passed()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
    }
}
