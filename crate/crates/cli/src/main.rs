use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rholab_cli::commands::{self, Failure, EXIT_INPUT, EXIT_NUMERICAL, EXIT_OK};
use rholab_cli::demo;

#[derive(Parser)]
#[command(name = "rholab", version, about = "Density-operator worked examples, Lindblad scenarios and Bell sampling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a worked example: nonunique, chsh, ghz, filter, singlet, spin1, nocloning or nosignal
    Demo { name: String },
    /// Integrate a Lindblad scenario file and write the trajectory table
    Evolve {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Accepted for uniformity; the integration itself is deterministic
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Sample singlet measurement outcomes for one detector pair
    Sample {
        #[arg(long, value_parser = commands::parse_vector, allow_hyphen_values = true)]
        a: [f64; 3],
        #[arg(long, value_parser = commands::parse_vector, allow_hyphen_values = true)]
        b: [f64; 3],
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn report(result: Result<String, Failure>) -> u8 {
    match result {
        Ok(line) => {
            println!("{line}");
            EXIT_OK
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Demo { name } => match demo::run(&name) {
            Some(r) => {
                let (text, ok) = r.finish();
                print!("{text}");
                if ok {
                    EXIT_OK
                } else {
                    EXIT_NUMERICAL
                }
            }
            None => {
                eprintln!("error: unknown demo {name:?}");
                eprintln!("usage: rholab demo <{}>", demo::NAMES.join("|"));
                EXIT_INPUT
            }
        },
        Command::Evolve { scenario, out, seed } => {
            println!("seed {seed}");
            report(commands::evolve(&scenario, &out))
        }
        Command::Sample { a, b, n, seed, out } => {
            println!("seed {seed}");
            report(commands::sample(a, b, n, seed, &out))
        }
    };
    ExitCode::from(code)
}
