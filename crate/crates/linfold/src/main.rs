use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use linfold::cli::{self, SweepEventReport};
use linfold::error::{Error, Result};

#[derive(Parser)]
#[command(name = "linfold", version, about = "Normal forms, sign invariants and unfoldings for structured linear maps")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// JSON problem file with "matrix" and "structures".
    #[arg(long)]
    input: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Override the tolerance in the problem file.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Verify that the map lies in the requested eigenspace.
    Check(CommonArgs),
    /// Compute the normal form, block labels and sign invariants.
    Classify(CommonArgs),
    /// Compute a miniversal unfolding and its codimension.
    Unfold(CommonArgs),
    /// Track eigenvalue classes along a parameter path, flagging
    /// passing and splitting events.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// JSON file with the parameter path: an array of nu vectors.
        #[arg(long)]
        path: PathBuf,
    },
    /// Bring the structure maps alone to their standard forms.
    Standardize(CommonArgs),
}

fn read_file(p: &PathBuf) -> Result<String> {
    fs::read_to_string(p)
        .map_err(|e| Error::MalformedInput(format!("{}: {e}", p.display())))
}

fn load(common: &CommonArgs) -> Result<(linfold::Mat, linfold::structure::EigenspaceSpec)> {
    let mut pf = cli::parse_problem(&read_file(&common.input)?)?;
    if let Some(t) = common.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::MalformedInput("--tol must be positive and finite".into()));
        }
        pf.tolerance = t;
    }
    cli::problem_to_spec(&pf)
}

fn emit(common: &CommonArgs, body: String) -> Result<()> {
    match &common.output {
        Some(p) => fs::write(p, body)
            .map_err(|e| Error::MalformedInput(format!("{}: {e}", p.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn json_body<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InternalInvariant(format!("serialization: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn run(args: &Args) -> Result<()> {
    match &args.command {
        Command::Check(common) => {
            let (l, spec) = load(common)?;
            let rep = cli::run_check(&l, &spec)?;
            let body = match common.format {
                Format::Json => json_body(&rep)?,
                Format::Text => cli::render_text_check(&rep),
            };
            emit(common, body)
        }
        Command::Classify(common) => {
            let (l, spec) = load(common)?;
            let rep = cli::run_classify(&l, &spec)?;
            let body = match common.format {
                Format::Json => json_body(&rep)?,
                Format::Text => cli::render_text_classify(&rep),
            };
            emit(common, body)
        }
        Command::Unfold(common) => {
            let (l, spec) = load(common)?;
            let rep = cli::run_unfold(&l, &spec)?;
            let body = match common.format {
                Format::Json => json_body(&rep)?,
                Format::Text => cli::render_text_unfold(&rep),
            };
            emit(common, body)
        }
        Command::Sweep { common, path } => {
            let (l, spec) = load(common)?;
            let path_pts: Vec<Vec<f64>> = serde_json::from_str(&read_file(path)?)
                .map_err(|e| Error::MalformedInput(format!("path file: {e}")))?;
            let (csv, events) = cli::run_sweep(&l, &spec, &path_pts)?;
            // The trajectory CSV goes to --output (or stdout); the event
            // list goes to a sibling .events.json file when --output is set.
            emit(common, csv)?;
            let events_body = json_body::<Vec<SweepEventReport>>(&events)?;
            match &common.output {
                Some(p) => {
                    let ev_path = p.with_extension("events.json");
                    fs::write(&ev_path, events_body)
                        .map_err(|e| Error::MalformedInput(format!("{}: {e}", ev_path.display())))
                }
                None => {
                    print!("{events_body}");
                    Ok(())
                }
            }
        }
        Command::Standardize(common) => {
            let (_, spec) = load(common)?;
            let rep = cli::run_standardize(&spec)?;
            emit(common, json_body(&rep)?)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code_for(&e) as u8)
        }
    }
}
