//! `pathsum`: normalize circuits, check equivalence, dump oracle matrices
//! and run the acceptance suite.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pathsum::pathsum::{build_circuit, parse_circuit};
use pathsum::selftest;
use pathsum::theories::normal_form;
use pathsum::{dense_matrix, equivalent, Config, Context, PathSum, RingSpec, Strategy, Theory, Verdict};
use serde_json::json;

const ORACLE_CAP: usize = 22;

#[derive(Parser)]
#[command(name = "pathsum", version, about = "Sum-over-paths normalizer and equivalence checker")]
struct Cli {
    /// Coefficient ring: int, rational, dyadic-cyc8, cyc8-field or fp:<p>
    #[arg(long, global = true, default_value = "dyadic-cyc8")]
    ring: RingSpec,
    /// Normalization theory; `field` needs a field of odd characteristic
    #[arg(long, global = true, value_enum, default_value_t = TheoryArg::Ring)]
    theory: TheoryArg,
    /// Rewrite-first pass before normalization: none, cliff or cliff+th
    #[arg(long, global = true, default_value = "cliff")]
    strategy: Strategy,
    /// Largest table the normalizer may build, in variables
    #[arg(long, global = true, env = "PATHSUM_MAX_BITS", default_value_t = 20)]
    max_bits: usize,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Ring,
    Field,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of a circuit's state
    Normalize { file: PathBuf },
    /// Decide whether two circuits are equal; exits 0 if equal, 1 if not
    Verify { left: PathBuf, right: PathBuf },
    /// Print the brute-force matrix of a circuit
    Matrix { file: PathBuf },
    /// Run the acceptance suite; exits 1 if any criterion fails
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Run only this criterion
        #[arg(long)]
        only: Option<u8>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn config(cli: &Cli) -> Config {
    let theory = match cli.theory {
        TheoryArg::Ring => Theory::Ring,
        TheoryArg::Field => Theory::Field,
    };
    Config { theory, strategy: cli.strategy, max_table_bits: cli.max_bits }
}

fn load(path: &Path, ring: RingSpec, ctx: &mut Context) -> Result<PathSum, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let circuit = parse_circuit(&text, ring).map_err(|e| format!("{}: {e}", path.display()))?;
    build_circuit(ctx, &circuit).map_err(|e| format!("{}: {e}", path.display()))
}

fn print_json(v: &serde_json::Value) -> Result<(), String> {
    println!("{}", serde_json::to_string_pretty(v).map_err(|e| e.to_string())?);
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, String> {
    let cfg = config(cli);
    let mut ctx = Context::new(cli.ring);
    match &cli.command {
        Command::Normalize { file } => {
            let ps = load(file, cli.ring, &mut ctx)?;
            let mut trace = Vec::new();
            let nf = normal_form(&ps, &cfg, &mut trace).map_err(|e| e.to_string())?;
            if cli.json {
                print_json(&json!({ "normal_form": nf, "trace": trace }))?;
            } else {
                println!("# ring {}, {} bits, {} rewrite steps", nf.ring, nf.bits, trace.len());
                if nf.entries.iter().all(|e| e.is_zero()) {
                    println!("0");
                } else {
                    print!("{nf}");
                }
            }
            Ok(0)
        }
        Command::Verify { left, right } => {
            let a = load(left, cli.ring, &mut ctx)?;
            let b = load(right, cli.ring, &mut ctx)?;
            let eq = equivalent(&a, &b, &cfg).map_err(|e| e.to_string())?;
            if cli.json {
                print_json(&serde_json::to_value(&eq).map_err(|e| e.to_string())?)?;
            } else {
                match &eq.verdict {
                    Verdict::Equal => println!("equal"),
                    Verdict::NotEqual { index, left, right } => {
                        println!("not equal at |{}⟩ (index {index}): {left} vs {right}", eq.left.label(*index))
                    }
                }
            }
            Ok(if eq.is_equal() { 0 } else { 1 })
        }
        Command::Matrix { file } => {
            let ps = load(file, cli.ring, &mut ctx)?;
            let m = dense_matrix(&ps, ORACLE_CAP).map_err(|e| e.to_string())?;
            if cli.json {
                print_json(&m.to_json())?;
            } else {
                for r in 0..m.rows() {
                    let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
                    println!("{}", row.join("\t"));
                }
            }
            Ok(0)
        }
        Command::Selftest { seed, only } => {
            let reports = match only {
                Some(id) => vec![selftest::run_criterion(*id, *seed).ok_or(format!("no criterion {id}"))?],
                None => selftest::run_all(*seed),
            };
            if cli.json {
                print_json(&serde_json::to_value(&reports).map_err(|e| e.to_string())?)?;
            } else {
                for r in &reports {
                    println!("{r}");
                }
            }
            Ok(if reports.iter().all(|r| r.passed) { 0 } else { 1 })
        }
    }
}
