use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use curvekit_cli::table::{config_error_json, error_json};
use curvekit_cli::{cmd_check, cmd_invariants, cmd_reparam, parse, ConfigError, Format, EXIT_CONFIG};

#[derive(Parser)]
#[command(name = "curvekit", version, about = "Frenet and equi-affine invariants of curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct Common {
    /// JSON job configuration.
    #[arg(long)]
    config: String,
    /// Output file (default: the config's `output.path`, else stdout).
    #[arg(long)]
    out: Option<String>,
    /// Output format (default: the config's `output.format`).
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample invariants on the configured grid.
    Invariants(Common),
    /// Run the property suite and report the worst residual of each property.
    Check(Common),
    /// Arc-length (or pseudo-arc-length) parameter map and residuals.
    Reparam(Common),
}

fn emit(text: &str, out: Option<&str>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Whether a config that failed validation still asks for JSON output.
fn declares_json(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text)
        .map(|v| v["output"]["format"] == "json")
        .unwrap_or(false)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, run): (&Common, fn(&curvekit_cli::Job) -> curvekit_cli::Outcome) = match &cli.command {
        Command::Invariants(c) => (c, cmd_invariants),
        Command::Check(c) => (c, cmd_check),
        Command::Reparam(c) => (c, cmd_reparam),
    };
    let flag_format = common.format.map(|f| match f {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    });

    let text = std::fs::read_to_string(&common.config);
    let parsed = match &text {
        Ok(t) => parse(t),
        Err(e) => Err(ConfigError::Io(format!("{}: {e}", common.config))),
    };
    let job = match parsed {
        Ok(job) => job,
        Err(e) => {
            let wants_json = flag_format
                .map(|f| f == Format::Json)
                .unwrap_or_else(|| text.as_deref().map(declares_json).unwrap_or(false));
            if wants_json {
                let _ = emit(&config_error_json(&e), common.out.as_deref());
            }
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    let format = flag_format.unwrap_or(job.config.output.format);
    let out = common.out.clone().or_else(|| job.config.output.path.clone());

    for note in &job.notes {
        eprintln!("note: {note}");
    }
    let outcome = run(&job);
    if let Err(e) = emit(&outcome.table.render(format), out.as_deref()) {
        eprintln!("error: cannot write output: {e}");
        if format == Format::Json && out.is_some() {
            let _ = emit(&error_json("OutputIo", &e.to_string(), &[]), None);
        }
        return ExitCode::from(EXIT_CONFIG as u8);
    }
    ExitCode::from(outcome.exit_code as u8)
}
