use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chenbar::bar::FiltrationLabel;
use chenbar::connection::Connection;
use chenbar::path::PathWord;
use chenbar::report;
use chenbar::sampler::SamplerConfig;

#[derive(Parser)]
#[command(
    name = "chenbar",
    version,
    about = "Exact Chen iterated integrals, bar-complex Hodge filtrations, and \
             unipotent flat/Higgs classification on square complex tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the basis of invariant iterated-integral classes at (g, s)
    Invariants {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        s: usize,
    },
    /// Print echelon bases of the ideals I and Ibar in CPi1/J^{s+1}
    Ideals {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        s: usize,
    },
    /// Print one filtration step on H^0(B_s) and its dual on CPi1/J^{s+1}
    Filtration {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        s: usize,
        /// F, Fbar, or W
        #[arg(long)]
        label: String,
        #[arg(long, allow_hyphen_values = true)]
        level: i64,
    },
    /// Monodromy matrix of a connection file along a path word
    Monodromy {
        #[arg(long)]
        file: PathBuf,
        /// Path word, e.g. "a1 b1 a1^-1 b1^-1"
        #[arg(long)]
        path: String,
    },
    /// Flatness check and Simpson-side classification of a connection file
    Classify {
        #[arg(long)]
        file: PathBuf,
    },
    /// Check both theorem equivalences on a file or on random flat connections
    Verify {
        #[arg(long, conflicts_with_all = ["random", "seed"])]
        file: Option<PathBuf>,
        /// Number of random trials
        #[arg(long)]
        random: Option<usize>,
        /// RNG seed; falls back to the CHENBAR_SEED environment variable
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 2)]
        g_max: usize,
        #[arg(long, default_value_t = 3)]
        s_max: usize,
        #[arg(long, default_value_t = 6)]
        r_max: usize,
    },
}

enum Failure {
    /// Bad input: parse errors, missing files, invalid parameters. Exit 2.
    Usage(String),
    /// A precondition violation or a verification counterexample. Exit 1.
    Computation(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Invariants { g, s } => {
            check_g(g)?;
            print!("{}", report::invariants_report(g, s));
            Ok(true)
        }
        Command::Ideals { g, s } => {
            check_g(g)?;
            print!("{}", report::ideals_report(g, s));
            Ok(true)
        }
        Command::Filtration { g, s, label, level } => {
            check_g(g)?;
            let label = match label.as_str() {
                "F" => FiltrationLabel::Hodge,
                "Fbar" => FiltrationLabel::ConjugateHodge,
                "W" => FiltrationLabel::Weight,
                other => {
                    return Err(Failure::Usage(format!(
                        "unknown filtration label `{other}` (expected F, Fbar, or W)"
                    )))
                }
            };
            print!("{}", report::filtration_report(g, s, label, level));
            Ok(true)
        }
        Command::Monodromy { file, path } => {
            let connection = load_connection(&file)?;
            let path = PathWord::parse(connection.g(), &path)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let text = report::monodromy_report(&connection, &path)
                .map_err(|e| Failure::Computation(e.to_string()))?;
            print!("{text}");
            Ok(true)
        }
        Command::Classify { file } => {
            let connection = load_connection(&file)?;
            let (text, flat) = report::classify_report(&connection);
            print!("{text}");
            Ok(flat)
        }
        Command::Verify {
            file,
            random,
            seed,
            g_max,
            s_max,
            r_max,
        } => match (file, random) {
            (Some(file), None) => {
                let connection = load_connection(&file)?;
                let (text, ok) = report::verify_file_report(&connection)
                    .map_err(|e| Failure::Computation(e.to_string()))?;
                print!("{text}");
                Ok(ok)
            }
            (None, Some(trials)) => {
                let seed = resolve_seed(seed)?;
                if g_max < 1 || s_max < 1 {
                    return Err(Failure::Usage("g-max and s-max must be at least 1".into()));
                }
                if r_max < s_max + 1 {
                    return Err(Failure::Usage(format!(
                        "r-max {r_max} leaves no room for s-max + 1 = {} blocks",
                        s_max + 1
                    )));
                }
                let config = SamplerConfig::new(g_max, s_max, r_max);
                let (text, ok) = report::verify_random_report(trials, seed, &config)
                    .map_err(|e| Failure::Computation(e.to_string()))?;
                print!("{text}");
                Ok(ok)
            }
            _ => Err(Failure::Usage(
                "verify needs exactly one of --file or --random".into(),
            )),
        },
    }
}

fn check_g(g: usize) -> Result<(), Failure> {
    if g == 0 {
        return Err(Failure::Usage("g must be at least 1".into()));
    }
    Ok(())
}

fn load_connection(file: &PathBuf) -> Result<Connection, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    Connection::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))
}

/// Random mode needs a seed for reproducibility: --seed wins, the
/// CHENBAR_SEED environment variable is the fallback.
fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("CHENBAR_SEED") {
        Ok(text) => text.trim().parse().map_err(|_| {
            Failure::Usage(format!("CHENBAR_SEED=`{text}` is not a valid seed"))
        }),
        Err(_) => Err(Failure::Usage(
            "random mode needs --seed or CHENBAR_SEED".into(),
        )),
    }
}
