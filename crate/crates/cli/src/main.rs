use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use wqed_eit_cli::{
    parse_config, presets, run, write_atomic, CliError, Format, Grid, Mode, RunConfig,
};

/// Spectra, collective modes, resonance poles and driven steady states of
/// atom arrays in a waveguide.
#[derive(Parser, Debug)]
#[command(name = "wqed-eit", version)]
struct Args {
    /// spectrum, modes, poles, lindblad or darkstate
    mode: String,
    /// TOML run configuration
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in figure preset (fig2a … fig5c) instead of --config
    #[arg(long)]
    preset: Option<String>,
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// Probe grid as min:max:points
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Incident photon flux |α|² in units of Γ
    #[arg(long)]
    alpha2: Option<f64>,
}

fn load(args: &Args) -> Result<RunConfig, CliError> {
    let text = match (&args.config, &args.preset) {
        (Some(path), _) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?,
        (None, Some(name)) => presets::source(name)
            .ok_or_else(|| {
                let known: Vec<_> = presets::names().collect();
                CliError::Config(format!("unknown preset {name:?}; known: {}", known.join(", ")))
            })?
            .to_string(),
        (None, None) => return Err(CliError::Config("one of --config or --preset is required".into())),
    };
    let mut rc = parse_config(&text)?.config;
    rc.mode = Mode::parse(&args.mode)
        .ok_or_else(|| CliError::Config(format!("unknown mode {:?}", args.mode)))?;
    if let Some(f) = &args.format {
        rc.output.format =
            Format::parse(f).ok_or_else(|| CliError::Config(format!("unknown format {f:?}")))?;
    }
    if let Some(g) = &args.grid {
        rc.grid = Grid::parse(g)?;
    }
    if let Some(a) = args.alpha2 {
        rc.drive.alpha2 = a;
    }
    if let Some(out) = &args.out {
        rc.output.path = Some(out.display().to_string());
    }
    Ok(rc)
}

fn execute(args: &Args) -> Result<(), CliError> {
    // Re-validate after the command-line overrides.
    let parsed = load(args)?.resolve()?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    let rc = parsed.config;
    let text = run(&rc)?.render(rc.output.format);
    match &rc.output.path {
        Some(path) => write_atomic(path.as_ref(), &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wqed-eit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
