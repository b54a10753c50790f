//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check or conformance failure, 2 bad input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use frer::configurator::{self, Preference};
use frer::delay_bounds::Topology;
use frer::domain::{compound_envelope, DelayEnvelope, RecoveryConfig, TrafficSpec};
use frer::files::{read_json, read_trace, replay};
use frer::sim::{self, Scenario};
use frer::sweep::{self, SweepSpec};
use frer::Error;

#[derive(Parser)]
#[command(name = "frer", version, about = "Sequence recovery parameters and simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Prefer {
    Mra,
    Vra,
}

#[derive(Subcommand)]
enum Command {
    /// Derive a recovery configuration for a stream over a topology.
    Advise {
        #[arg(long)]
        topology: PathBuf,
        #[arg(long)]
        stream: PathBuf,
        #[arg(long, value_enum, default_value = "mra")]
        prefer: Prefer,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an existing configuration against every bound.
    Check {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        topology: PathBuf,
        #[arg(long)]
        stream: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one scenario file.
    Simulate {
        scenario: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the full result as JSON.
        #[arg(long, alias = "json-out")]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run a parameter grid and emit CSV.
    Sweep {
        spec: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Feed an arrival trace through a recovery configuration.
    Replay {
        #[arg(long)]
        config: PathBuf,
        trace: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_stream(topology: &Path, stream: &Path) -> Result<(TrafficSpec, DelayEnvelope), Error> {
    let topology: Topology = read_json(topology)?;
    let traffic: TrafficSpec = read_json(stream)?;
    let env = compound_envelope(&topology.resolve()?)?;
    Ok((traffic, env))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn execute(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Advise {
            topology,
            stream,
            prefer,
            json,
            out,
        } => {
            let (traffic, env) = load_stream(&topology, &stream)?;
            let prefer = match prefer {
                Prefer::Mra => Preference::PreferMra,
                Prefer::Vra => Preference::ForceVra,
            };
            let advice = configurator::advise(&traffic, &env, prefer);
            if let Some(path) = &out {
                write_json(path, &advice)?;
            }
            if json {
                print_json(&advice);
            } else {
                let c = &advice.config;
                println!("delta_d: {}", env.delta_d());
                println!(
                    "algorithm: {} (MRA allowed: {})",
                    c.algorithm(),
                    if advice.mra_allowed { "yes" } else { "no" }
                );
                println!(
                    "history_length: {} (minimum for VRA: {})",
                    c.history_length(),
                    advice.min_history_length
                );
                println!("reset_timeout: {}", c.reset_timeout());
                println!("burst_bound: {}", advice.burst_bound);
                for r in &advice.rationale {
                    let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    print!(
                        "  {} = {}  [{}; {}]",
                        r.parameter,
                        r.result,
                        r.formula,
                        inputs.join(" ")
                    );
                    match &r.note {
                        Some(note) => println!(" ({note})"),
                        None => println!(),
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            config,
            topology,
            stream,
            json,
            out,
        } => {
            let cfg: RecoveryConfig = read_json(&config)?;
            let (traffic, env) = load_stream(&topology, &stream)?;
            let report = configurator::check(&cfg, &traffic, &env);
            if let Some(path) = &out {
                write_json(path, &report)?;
            }
            if json {
                print_json(&report);
            } else {
                for c in &report.checks {
                    let mark = if c.passed { "PASS" } else { "FAIL" };
                    println!("{mark} {}: required {}, actual {}", c.name, c.required, c.actual);
                }
                println!("burst_bound: {}", report.burst_bound);
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Simulate {
            scenario,
            seed,
            out,
            json,
        } => {
            let mut s: Scenario = read_json(&scenario)?;
            if let Some(seed) = seed {
                s.seed = seed;
            }
            let result = sim::run(&s)?;
            if let Some(path) = &out {
                write_json(path, &result)?;
            }
            if json {
                print_json(&result);
            } else {
                println!("{}", result.summary());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { spec, seed, out } => {
            let mut spec: SweepSpec = read_json(&spec)?;
            if let Some(seed) = seed {
                spec.base.seed = seed;
            }
            let rows = spec.run()?;
            match out.or_else(|| spec.output.clone()) {
                Some(path) => {
                    let file = fs::File::create(&path).map_err(|source| Error::Io {
                        path: path.clone(),
                        source,
                    })?;
                    sweep::write_csv(&spec, &rows, file)?;
                }
                None => {
                    let stdout = io::stdout();
                    let mut lock = stdout.lock();
                    sweep::write_csv(&spec, &rows, &mut lock)?;
                    let _ = lock.flush();
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Replay {
            config,
            trace,
            json,
            out,
        } => {
            let cfg: RecoveryConfig = read_json(&config)?;
            let records = read_trace(&trace)?;
            let report = replay(&cfg, &records);
            if let Some(path) = &out {
                write_json(path, &report)?;
            }
            if json {
                print_json(&report);
            } else {
                println!("{}", report.result.summary());
                for m in &report.mismatches {
                    println!(
                        "MISMATCH row {} seq {}: expected {:?}, got {:?}",
                        m.row, m.seq, m.expected, m.actual
                    );
                }
            }
            Ok(if report.mismatches.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
