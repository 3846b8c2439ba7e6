use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use pbbs::crystal::evolve_naive;
use pbbs::elimination::t_infinity_arcs;
use pbbs::{direct_scattering, eliminate_all, fast_forward, Capacity, Path};

mod bench;
mod verify;

#[derive(Parser)]
#[command(name = "pbbs", version, about = "Periodic box-ball system toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterated 10-elimination: levels, e-vector and soliton spectrum
    Eliminate {
        #[command(flatten)]
        input: PathInput,
        #[arg(long)]
        json: bool,
    },
    /// Cut distance, rigged configuration and vacancy numbers
    Rc {
        #[command(flatten)]
        input: PathInput,
        #[arg(long)]
        json: bool,
    },
    /// Apply T_l a number of times
    Evolve {
        #[command(flatten)]
        input: PathInput,
        #[command(flatten)]
        step: StepArgs,
        #[arg(long, value_enum, default_value_t = Method::Scattering)]
        method: Method,
    },
    /// One T_inf step computed by flipping arcs
    Tinf {
        #[command(flatten)]
        input: PathInput,
    },
    /// Solve the initial value problem in angle coordinates
    Ivp {
        #[command(flatten)]
        input: PathInput,
        #[command(flatten)]
        step: StepArgs,
    },
    /// Cross-check both constructions on one path
    Verify {
        #[command(flatten)]
        input: PathInput,
    },
    /// Reproducible random path with the given number of balls
    Random {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        balls: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Median wall time of naive and scattering evolution, as CSV
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct PathInput {
    /// Binary word such as 0011010
    path: Option<String>,
    /// Read the path from a file instead
    #[arg(long, conflicts_with = "path")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct StepArgs {
    /// Carrier capacity, a positive integer or "inf"
    #[arg(long = "l", default_value = "inf", value_parser = parse_capacity)]
    capacity: Capacity,
    #[arg(long)]
    steps: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Naive,
    Scattering,
}

fn parse_capacity(s: &str) -> Result<Capacity, String> {
    s.parse().map_err(|e: pbbs::crystal::EvolutionError| e.to_string())
}

pub enum CliError {
    /// malformed or inadmissible input, exit 2
    Input(String),
    /// a cross-check disagreed, exit 1
    Failed(String),
}

impl CliError {
    fn input(e: impl Display) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

impl PathInput {
    fn read(&self) -> Result<Path, CliError> {
        let text = match (&self.path, &self.file) {
            (Some(s), _) => s.clone(),
            (None, Some(file)) => std::fs::read_to_string(file)
                .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?,
            (None, None) => return Err(CliError::Input("no path given".into())),
        };
        let text = text.trim();
        if text.is_empty() {
            return Err(CliError::Input("empty path".into()));
        }
        let p: Path = text.parse().map_err(CliError::input)?;
        p.require_positive_weight().map_err(CliError::input)?;
        Ok(p)
    }
}

fn join<T: Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn eliminate(p: &Path, as_json: bool) -> CliResult {
    let trace = eliminate_all(p).map_err(CliError::input)?;
    let spectrum = trace.soliton_spectrum();
    let levels = trace.level_strings();
    if as_json {
        let out = json!({
            "schema": 1,
            "e": trace.e_vector,
            "spectrum": spectrum.entries,
            "arcs": trace.arcs,
            "levels": levels,
        });
        println!("{out}");
        return Ok(());
    }
    for (k, level) in levels.iter().enumerate() {
        println!("E{k}: {level}");
    }
    println!("e: {}", join(&trace.e_vector));
    for entry in &spectrum.entries {
        println!("length {} x{}: {}", entry.length, entry.multiplicity, join(&entry.positions));
    }
    Ok(())
}

fn rc(p: &Path, as_json: bool) -> CliResult {
    let sd = direct_scattering(p).map_err(CliError::input)?;
    let rc = sd.angle.to_rc();
    let vacancies = rc.vacancies();
    if as_json {
        let out = json!({
            "schema": 1,
            "L": rc.len,
            "d": sd.d,
            "nu": rc.nu(),
            "riggings": rc.riggings(),
            "vacancies": vacancies,
        });
        println!("{out}");
        return Ok(());
    }
    println!("d: {}", sd.d);
    println!("nu: {}", join(&rc.nu()));
    println!("riggings: {}", join(&rc.riggings()));
    let vac: Vec<String> = vacancies.iter().rev().map(|(i, v)| format!("P{i}={v}")).collect();
    println!("vacancies: {}", vac.join(" "));
    Ok(())
}

fn run_evolve(p: &Path, step: &StepArgs, method: Method) -> CliResult {
    let out = match method {
        Method::Naive => evolve_naive(step.capacity, p, step.steps).map_err(CliError::input)?,
        Method::Scattering => fast_forward(p, step.capacity, step.steps).map_err(CliError::input)?,
    };
    println!("{out}");
    Ok(())
}

fn random(length: usize, balls: usize, seed: u64) -> CliResult {
    if 2 * balls > length {
        return Err(CliError::Input(format!(
            "{balls} balls in {length} boxes is not a positive weight"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    println!("{}", bench::random_path(&mut rng, length, balls));
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Eliminate { input, json } => eliminate(&input.read()?, json),
        Command::Rc { input, json } => rc(&input.read()?, json),
        Command::Evolve { input, step, method } => run_evolve(&input.read()?, &step, method),
        Command::Ivp { input, step } => run_evolve(&input.read()?, &step, Method::Scattering),
        Command::Tinf { input } => {
            let out = t_infinity_arcs(&input.read()?).map_err(CliError::input)?;
            println!("{out}");
            Ok(())
        }
        Command::Verify { input } => verify::run(&input.read()?),
        Command::Random { length, balls, seed } => random(length, balls, seed),
        Command::Bench(args) => bench::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
