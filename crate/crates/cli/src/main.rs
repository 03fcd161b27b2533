use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ltlnorm_core::{
    check_otimes_equivalence, check_partition, classify, eval_at, load_norm_document,
    parse_formula, parse_trace, reproduce_paradox, ComplianceClass, LassoTrace, NormDocument,
    OTimesCheck, ParseError,
};

/// Exit status contract shared by all subcommands.
mod status {
    pub const OK: u8 = 0;
    /// formula false, or run classified as violating
    pub const FALSE: u8 = 1;
    /// usage, file or parse error
    pub const INPUT: u8 = 2;
    /// partition anomaly, ⊗ mismatch, or paradox not reproduced
    pub const CHECK: u8 = 3;
}

#[derive(Parser)]
#[command(
    name = "ltlnorm",
    version,
    about = "Evaluate LTL with ⊗ on lasso runs and classify norm compliance"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula on a lasso trace
    Eval {
        #[arg(short = 'f', long)]
        formula: String,
        #[command(flatten)]
        trace: TraceArg,
        #[arg(long, default_value_t = 0)]
        pos: usize,
    },
    /// Classify a trace as fully compliant, weakly compliant or violating
    Classify {
        #[arg(long)]
        norms: PathBuf,
        #[command(flatten)]
        trace: TraceArg,
    },
    /// Print the classifier formulas compiled from a norm file
    Compile {
        #[arg(long)]
        norms: PathBuf,
    },
    /// Check that the classifiers partition every bounded lasso
    VerifyPartition {
        #[arg(long)]
        norms: PathBuf,
        /// Comma-separated atom list, e.g. A,B,C,D
        #[arg(long, value_delimiter = ',', required = true)]
        atoms: Vec<String>,
        #[arg(long)]
        max_prefix: usize,
        #[arg(long)]
        max_loop: usize,
    },
    /// Reproduce the N1–N4 counterexample run
    Paradox,
    /// Compare definitional ⊗ with its G/F expansion on random cases
    CheckOtimes {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        cases: usize,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
        #[arg(long, value_delimiter = ',', default_value = "p,q,r")]
        atoms: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_prefix: usize,
        #[arg(long, default_value_t = 3)]
        max_loop: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TraceArg {
    /// Inline trace, e.g. "{A,D} ; {B} | {}"
    #[arg(short = 't', long)]
    trace: Option<String>,
    /// Read the trace from a file
    #[arg(long)]
    trace_file: Option<PathBuf>,
}

/// An error already reported to stderr, carrying the exit status.
struct Failed(u8);

type Outcome = Result<u8, Failed>;

fn input_error(msg: impl std::fmt::Display) -> Failed {
    eprintln!("error: {msg}");
    Failed(status::INPUT)
}

fn parse_error(what: &str, input: &str, err: &ParseError) -> Failed {
    eprintln!("invalid {what}:");
    eprintln!("{}", err.render(input));
    Failed(status::INPUT)
}

fn read_file(path: &Path) -> Result<String, Failed> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_trace(arg: &TraceArg) -> Result<LassoTrace, Failed> {
    let text = match (&arg.trace, &arg.trace_file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => read_file(path)?,
        (None, None) => unreachable!("clap enforces one trace source"),
    };
    let text = text.trim();
    parse_trace(text).map_err(|e| parse_error("trace", text, &e))
}

fn load_norms(path: &Path) -> Result<NormDocument, Failed> {
    let text = read_file(path)?;
    load_norm_document(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Eval {
            formula,
            trace,
            pos,
        } => {
            let f = parse_formula(&formula).map_err(|e| parse_error("formula", &formula, &e))?;
            let t = load_trace(&trace)?;
            let present = t.atoms();
            for atom in f.atoms().difference(&present) {
                eprintln!("warning: atom {atom} never occurs in the trace and is false everywhere");
            }
            let verdict = eval_at(&f, &t, pos);
            println!("{verdict}");
            Ok(if verdict { status::OK } else { status::FALSE })
        }
        Command::Classify { norms, trace } => {
            let cf = load_norms(&norms)?.classifiers();
            let t = load_trace(&trace)?;
            match classify(&cf, &t) {
                Ok(class) => {
                    println!("{class}");
                    Ok(match class {
                        ComplianceClass::Violating => status::FALSE,
                        _ => status::OK,
                    })
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Err(Failed(status::CHECK))
                }
            }
        }
        Command::Compile { norms } => {
            print!("{}", load_norms(&norms)?.classifiers());
            Ok(status::OK)
        }
        Command::VerifyPartition {
            norms,
            atoms,
            max_prefix,
            max_loop,
        } => {
            let cf = load_norms(&norms)?.classifiers();
            let atoms: Vec<String> = atoms.iter().map(|a| a.trim().to_string()).collect();
            let report = check_partition(&cf, &atoms, max_prefix, max_loop).map_err(input_error)?;
            print!("{report}");
            Ok(if report.partition_holds() && report.deterministic {
                status::OK
            } else {
                status::CHECK
            })
        }
        Command::Paradox => {
            let report = reproduce_paradox();
            print!("{report}");
            Ok(if report.reproduced() {
                status::OK
            } else {
                status::CHECK
            })
        }
        Command::CheckOtimes {
            seed,
            cases,
            max_depth,
            atoms,
            max_prefix,
            max_loop,
        } => {
            if cases == 0 || max_loop == 0 {
                return Err(input_error("--cases and --max-loop must be at least 1"));
            }
            let cfg = OTimesCheck {
                seed,
                cases,
                max_depth,
                atoms,
                max_prefix,
                max_loop,
            };
            if let Some(bad) = cfg
                .atoms
                .iter()
                .find(|a| !ltlnorm_core::formula::is_atom_name(a))
            {
                return Err(input_error(format!("illegal atom name {bad:?}")));
            }
            let mismatches = check_otimes_equivalence(&cfg);
            println!("seed: {seed}");
            println!("cases: {cases}");
            println!("mismatches: {}", mismatches.len());
            for m in &mismatches {
                println!(
                    "  phi={} psi={} trace={} definitional={}",
                    m.phi, m.psi, m.trace, m.definitional
                );
            }
            Ok(if mismatches.is_empty() {
                status::OK
            } else {
                status::CHECK
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) | Err(Failed(code)) => ExitCode::from(code),
    }
}
