use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Result;
use clap::{Parser, Subcommand};
use meetpoint_cli::bench::{self, BenchConfig};
use meetpoint_cli::{cmd_render, cmd_simulate, cmd_solve, RunConfig};

#[derive(Parser)]
#[command(
    name = "meetpoint",
    version,
    about = "Pick and walk to a common meeting point on a graph"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Choose the meeting vertex for the users of a map or graph file.
    Solve {
        #[command(flatten)]
        config: RunConfig,
        /// Write the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Re-plan every tick while users walk until they meet.
    Simulate {
        #[command(flatten)]
        config: RunConfig,
    },
    /// Time the planner against Floyd-Warshall and print CSV.
    Bench {
        /// Maps to time (repeatable); defaults to the three built-in maps.
        #[arg(long)]
        map: Vec<String>,
        /// User counts, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6,7")]
        users: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// Seconds before a Floyd cell is censored.
        #[arg(long, default_value_t = 300.0)]
        floyd_timeout: f64,
        #[arg(long)]
        no_floyd: bool,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the frames of a stored trace.
    Render {
        #[arg(long)]
        trace: PathBuf,
        #[command(flatten)]
        config: RunConfig,
    },
}

fn colorize(frame: &str) -> String {
    if std::env::var_os("MEETPOINT_NO_COLOR").is_some() || !std::io::stdout().is_terminal() {
        return frame.to_string();
    }
    let mut out = String::with_capacity(frame.len() * 2);
    for ch in frame.chars() {
        match ch {
            'U' => out.push_str("\x1b[31mU\x1b[0m"),
            'D' => out.push_str("\x1b[1;32mD\x1b[0m"),
            'I' => out.push_str("\x1b[1;34mI\x1b[0m"),
            '.' => out.push_str("\x1b[2m.\x1b[0m"),
            '#' => out.push_str("\x1b[7m \x1b[0m"),
            c => out.push(c),
        }
    }
    out
}

fn execute(cli: Cli) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Solve { config, json } => {
            let report = cmd_solve(&config, json)?;
            if json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                write!(stdout, "{}", report.to_text())?;
            }
        }
        Command::Simulate { config } => {
            let report = cmd_simulate(&config)?;
            let t = &report.trace;
            writeln!(
                stdout,
                "met at {} after {} ticks; initial destination {}{}",
                t.final_destination,
                t.ticks(),
                t.initial_destination,
                if t.destination_drifted() {
                    " (destination moved)"
                } else {
                    ""
                }
            )?;
            let steps: Vec<String> = t.steps.iter().map(usize::to_string).collect();
            writeln!(stdout, "steps {}", steps.join(","))?;
            write!(stdout, "{}", colorize(&report.final_frame))?;
        }
        Command::Bench {
            map,
            users,
            reps,
            floyd_timeout,
            no_floyd,
            parallelism,
            seed,
            out,
        } => {
            let mut cfg = BenchConfig {
                users,
                reps,
                floyd: !no_floyd,
                floyd_timeout: Duration::from_secs_f64(floyd_timeout),
                parallelism,
                seed,
                ..Default::default()
            };
            if !map.is_empty() {
                cfg.maps = map;
            }
            let rows = bench::run_bench(&cfg, |r| {
                eprintln!(
                    "{} users={} md={:.6}s floyd={}",
                    r.map, r.users, r.md_seconds, r.floyd
                );
            })?;
            let csv = bench::to_csv(&rows)?;
            match out {
                Some(path) => std::fs::write(path, csv)?,
                None => write!(stdout, "{csv}")?,
            }
        }
        Command::Render { trace, config } => {
            let frames = cmd_render(&trace, &config)?;
            let last = frames.len() - 1;
            for (i, f) in frames.iter().enumerate() {
                if i == last {
                    writeln!(stdout, "-- final --")?;
                } else {
                    writeln!(stdout, "-- tick {i} --")?;
                }
                write!(stdout, "{}", colorize(f))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e)
            if e.downcast_ref::<std::io::Error>()
                .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
