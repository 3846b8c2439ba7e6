use std::time::Instant;

use clap::Args;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pbbs::crystal::time_evolution;
use pbbs::{fast_forward, Capacity, Path};

use crate::{CliError, CliResult};

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long)]
    length: usize,
    #[arg(long)]
    balls: usize,
    #[arg(long)]
    steps: u64,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Time at most this many naive steps and scale linearly to --steps
    #[arg(long)]
    naive_steps: Option<u64>,
}

pub fn random_path(rng: &mut ChaCha8Rng, length: usize, balls: usize) -> Path {
    let mut letters = vec![0u8; length];
    for i in sample(rng, length, balls) {
        letters[i] = 1;
    }
    Path::new(letters).expect("binary letters")
}

fn median(mut samples: Vec<u128>) -> u128 {
    samples.sort_unstable();
    let m = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[m]
    } else {
        (samples[m - 1] + samples[m]) / 2
    }
}

pub fn run(args: &BenchArgs) -> CliResult {
    if 2 * args.balls > args.length {
        return Err(CliError::Input(format!(
            "{} balls in {} boxes is not a positive weight",
            args.balls, args.length
        )));
    }
    if args.trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let p = random_path(&mut rng, args.length, args.balls);
    let cap = Capacity::Infinite.resolve(&p);
    let naive_steps = args.naive_steps.map_or(args.steps, |n| n.min(args.steps));

    let mut naive = Vec::with_capacity(args.trials);
    let mut scattering = Vec::with_capacity(args.trials);
    for _ in 0..args.trials {
        let start = Instant::now();
        let mut q = p.clone();
        for _ in 0..naive_steps {
            q = time_evolution(cap, &q).map_err(CliError::input)?;
        }
        let elapsed = start.elapsed().as_nanos();
        naive.push(if naive_steps == 0 {
            elapsed
        } else {
            elapsed * args.steps as u128 / naive_steps as u128
        });

        let start = Instant::now();
        let fast = fast_forward(&p, Capacity::Infinite, args.steps).map_err(CliError::input)?;
        scattering.push(start.elapsed().as_nanos());
        if naive_steps == args.steps && fast != q {
            return Err(CliError::Failed(format!("naive {q} and scattering {fast} differ")));
        }
    }
    if naive_steps < args.steps {
        eprintln!("naive time extrapolated from {naive_steps} of {} steps", args.steps);
    }

    println!("L,balls,steps,method,median_ns");
    for (method, samples) in [("naive", naive), ("scattering", scattering)] {
        println!("{},{},{},{method},{}", args.length, args.balls, args.steps, median(samples));
    }
    Ok(())
}
