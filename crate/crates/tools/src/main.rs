use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geodesic_tools::commands::{self, AutomatonArgs, Caps, PolytopeArgs};
use geodesic_tools::error::{ToolError, EXIT_CONFIG};
use geodesic_tools::report::Report;

/// Geodesic automata, fellow travelling and growth for virtually abelian
/// and small matrix groups.
#[derive(Debug, Parser)]
#[command(name = "geodesic", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Global {
    /// Output format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Largest ball the oracle may build.
    #[arg(long, global = true, default_value_t = Caps::default().ball)]
    ball_cap: usize,
    /// Largest automaton that may be built.
    #[arg(long, global = true, default_value_t = Caps::default().states)]
    state_cap: usize,
    /// Largest number of (profile, element) pairs a sweep may hold.
    #[arg(long, global = true, default_value_t = Caps::default().pairs)]
    pair_cap: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sphere sizes of the ball of a given radius.
    Ball {
        #[arg(long)]
        group: String,
        #[arg(long)]
        radius: u32,
    },
    /// Check the falsification by fellow traveller property.
    Fft {
        #[arg(long)]
        group: String,
        #[arg(long, conflicts_with = "scan_delta")]
        delta: Option<u32>,
        /// Range `lo..hi` (inclusive) of constants to try in order.
        #[arg(long, value_parser = parse_range)]
        scan_delta: Option<(u32, u32)>,
        #[arg(long)]
        radius: u32,
    },
    /// Build, minimize and optionally validate the geodesic automaton.
    Automaton {
        #[arg(long)]
        group: String,
        #[arg(long)]
        delta: Option<u32>,
        /// Compare with the oracle on all words up to this length.
        #[arg(long)]
        validate: Option<u32>,
        /// Write the minimized automaton as Graphviz text.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the minimized automaton as JSON.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Growth series and rational growth function.
    Growth {
        #[arg(long)]
        group: String,
        #[arg(long)]
        delta: Option<u32>,
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// Translation polytope, good generating sets and cone languages.
    Polytope {
        #[arg(long)]
        group: String,
        /// Enlarge the letters to a good set for the hull of these rays.
        #[arg(long)]
        goodify: Option<String>,
        /// Build the cone language of this triangulation.
        #[arg(long)]
        cone: Option<String>,
        #[arg(long, default_value_t = 1)]
        scale: u64,
        #[arg(long, default_value_t = 10)]
        check_radius: u32,
        #[arg(long, default_value_t = 8)]
        fft_radius: u32,
        #[arg(long, default_value_t = 6)]
        fft_delta_max: u32,
        /// Write the enlarged group file here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Myhill-Nerode witnesses for the cannon group.
    CannonDemo {
        #[arg(long, default_value_t = 5)]
        n_max: u32,
    },
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let lo = a.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi = b.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    Ok((lo, hi))
}

fn run(cli: &Cli) -> Result<Report, ToolError> {
    let g = &cli.global;
    let caps = Caps { ball: g.ball_cap, states: g.state_cap, pairs: g.pair_cap };
    match &cli.command {
        Command::Ball { group, radius } => commands::cmd_ball(group, *radius, &caps),
        Command::Fft { group, delta, scan_delta, radius } => {
            commands::cmd_fft(group, *delta, *scan_delta, *radius, &caps)
        }
        Command::Automaton { group, delta, validate, dot, save } => commands::cmd_automaton(
            &AutomatonArgs { group, delta: *delta, validate: *validate, dot: dot.clone(), save: save.clone() },
            &caps,
        ),
        Command::Growth { group, delta, terms } => commands::cmd_growth(group, *delta, *terms, &caps),
        Command::Polytope { group, goodify, cone, scale, check_radius, fft_radius, fft_delta_max, emit } => {
            commands::cmd_polytope(
                &PolytopeArgs {
                    group,
                    goodify: goodify.as_deref(),
                    cone: cone.as_deref(),
                    scale: *scale,
                    check_radius: *check_radius,
                    fft_radius: *fft_radius,
                    fft_delta_max: *fft_delta_max,
                    emit: emit.clone(),
                },
                &caps,
            )
        }
        Command::CannonDemo { n_max } => commands::cmd_cannon_demo(*n_max, &caps),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(report) => {
            match cli.global.format {
                Format::Text => print!("{}", commands::render_text(&report)),
                Format::Json => print!("{}", report.to_json()),
            }
            if let Some(path) = &cli.global.report {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_CONFIG as u8);
                }
            }
            ExitCode::from(commands::exit_status(&report) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
