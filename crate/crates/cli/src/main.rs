mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use chromatic_bracket::penrose::Contraction;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use commands::{CountOptions, Format, Method};
use input::{Input, Kind};

/// Count proper 3-edge-colorings of cubic graphs and cross-check the methods.
#[derive(Parser)]
#[command(name = "chromatic-bracket", version)]
struct Cli {
    /// Print only the JSON on stdout, no summary on stderr.
    #[arg(long, global = true)]
    json_only: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Graph or diagram JSON file, or `-` for stdin.
    file: PathBuf,
    /// Override the graph/diagram detection.
    #[arg(long = "as", value_enum)]
    kind: Option<Kind>,
}

#[derive(Subcommand)]
enum Command {
    /// Count colorings with one method.
    Count {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "brute")]
        method: Method,
        /// Penrose: ignore circled crossings.
        #[arg(long, conflicts_with_all = ["extended", "skein"])]
        plain: bool,
        /// Penrose: weigh circled crossings (the default).
        #[arg(long, conflicts_with = "skein")]
        extended: bool,
        /// Penrose: evaluate by edge expansion.
        #[arg(long)]
        skein: bool,
        /// Penrose: list every coloring with its weight.
        #[arg(long)]
        per_coloring: bool,
        /// States: list every switch vector with its loops and count.
        #[arg(long)]
        per_state: bool,
        /// Immerse a bare graph by chords when a diagram is needed.
        #[arg(long)]
        auto_immerse: bool,
        /// States: which perfect matching to expand over.
        #[arg(long, default_value_t = 0)]
        matching_index: usize,
        #[arg(long)]
        timings: bool,
    },
    /// Run every method and fail unless they agree.
    Crosscheck {
        /// Graph or diagram JSON file; omit when using --gen.
        file: Option<PathBuf>,
        #[arg(long = "as", value_enum)]
        kind: Option<Kind>,
        /// Generator name instead of a file.
        #[arg(long = "gen", conflicts_with = "file")]
        generator: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        timings: bool,
    },
    /// List perfect matchings with their complement cycles.
    Matchings {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        even_only: bool,
    },
    /// Show the formation of one coloring.
    Formation {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0)]
        coloring_index: usize,
    },
    /// Print a generated graph or diagram.
    Gen {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "graph")]
        format: Format,
    },
    /// Check that a file parses and describe it.
    Validate {
        #[command(flatten)]
        input: InputArgs,
    },
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn print_out(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn emit(value: &impl Serialize) -> Result<()> {
    print_out(&serde_json::to_string_pretty(value)?)
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("CHROMATIC_BRACKET_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| {
            anyhow::anyhow!("CHROMATIC_BRACKET_THREADS must be a positive integer, got `{v}`")
        })?;
        if n == 0 {
            bail!("CHROMATIC_BRACKET_THREADS must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    configure_threads()?;
    let say = |s: String| {
        if !cli.json_only {
            eprintln!("{s}");
        }
    };
    match cli.command {
        Command::Count {
            input,
            method,
            plain,
            extended,
            skein,
            per_coloring,
            per_state,
            auto_immerse,
            matching_index,
            timings,
        } => {
            let data = input::load(&input.file, input.kind)?;
            let contraction = if plain {
                Some(Contraction::Plain)
            } else if extended {
                Some(Contraction::Extended)
            } else {
                None
            };
            let opts = CountOptions {
                method,
                contraction,
                skein,
                per_coloring,
                per_state,
                auto_immerse,
                matching_index,
                timings,
            };
            let report = commands::count(&data, &input.file.display().to_string(), &opts)?;
            emit(&report)?;
            say(report.summary());
            Ok(true)
        }
        Command::Crosscheck {
            file,
            kind,
            generator,
            n,
            seed,
            timings,
        } => {
            let (g, d, label, k) = match (file, generator) {
                (Some(path), None) => {
                    let data = input::load(&path, kind)?;
                    let d = data.diagram(true)?;
                    (data.graph()?, d, path.display().to_string(), data.kind())
                }
                (None, Some(name)) => {
                    let (g, d, label) = commands::generate(&name, n, seed)?;
                    (g, d, label, "generated")
                }
                _ => bail!("crosscheck needs a file or --gen NAME"),
            };
            let report = commands::crosscheck(&g, &d, &label, k, timings)?;
            emit(&report)?;
            say(report.summary());
            Ok(report.agree)
        }
        Command::Matchings { input, even_only } => {
            let g = input::load(&input.file, input.kind)?.graph()?;
            let out = commands::matchings(&g, even_only)?;
            emit(&out)?;
            say(format!(
                "{} perfect matchings, {} even",
                out["count"], out["even"]
            ));
            Ok(true)
        }
        Command::Formation {
            input,
            coloring_index,
        } => {
            let data = input::load(&input.file, input.kind)?;
            let out = commands::formation(&data, coloring_index)?;
            emit(&out)?;
            say(format!(
                "coloring {coloring_index}: {} red, {} blue curves, {} shared segments",
                out["red"].as_array().map_or(0, Vec::len),
                out["blue"].as_array().map_or(0, Vec::len),
                out["shared"].as_array().map_or(0, Vec::len),
            ));
            Ok(true)
        }
        Command::Gen {
            name,
            n,
            seed,
            format,
        } => {
            let (g, d, _) = commands::generate(&name, n, seed)?;
            let text = match format {
                Format::Graph => g.to_json(),
                Format::Diagram => d.to_json(),
            };
            print_out(&text)?;
            Ok(true)
        }
        Command::Validate { input } => {
            let data: Input = input::load(&input.file, input.kind)?;
            let out = commands::validate(&data)?;
            emit(&out)?;
            say(format!("{}: valid {}", input.file.display(), data.kind()));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
