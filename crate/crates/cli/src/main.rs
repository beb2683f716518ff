use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use stdlab_cli::ast::FieldSpec;
use stdlab_cli::parser::{parse_field_literal, parse_session};
use stdlab_cli::printer::format_source;
use stdlab_cli::render::{report_schema, to_json, to_text};
use stdlab_cli::runner::{run_session, RunOptions};

#[derive(Parser)]
#[command(
    name = "stdlab",
    version,
    about = "Check standardness properties of filtrations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a session script and print the report.
    Run {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coefficient field for rings declared without one (`F<p>` or `QQ`).
        #[arg(long, default_value = "F32003", value_parser = parse_field)]
        field: FieldSpec,
        /// Truncation degree for tangent cones and filtration-graded rings.
        #[arg(long, default_value_t = 8)]
        degree_bound: u32,
        /// Largest power searched when verifying a reduction.
        #[arg(long, default_value_t = 12)]
        reduction_bound: usize,
        /// Stop at the first failed or erroring statement.
        #[arg(long)]
        fail_fast: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Include wall-clock timings (makes reports non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Print a script in canonical form.
    Fmt { file: PathBuf },
    /// Print the JSON Schema of run reports.
    Schema,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    parse_field_literal(s).ok_or_else(|| format!("`{s}` is not `F<p>` or `QQ`"))
}

fn read(file: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(file).map_err(|e| {
        eprintln!("stdlab: cannot read {}: {e}", file.display());
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Schema => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report_schema()).expect("static schema")
            );
            ExitCode::SUCCESS
        }
        Command::Fmt { file } => {
            let src = match read(&file) {
                Ok(s) => s,
                Err(code) => return code,
            };
            match format_source(&src) {
                Ok(out) => {
                    print!("{out}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{}:{e}", file.display());
                    ExitCode::from(2)
                }
            }
        }
        Command::Run {
            file,
            seed,
            field,
            degree_bound,
            reduction_bound,
            fail_fast,
            format,
            timing,
        } => {
            let src = match read(&file) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let script = match parse_session(&src) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{}:{e}", file.display());
                    return ExitCode::from(2);
                }
            };
            let opts = RunOptions {
                seed,
                field,
                degree_bound,
                reduction_bound,
                fail_fast,
                timing,
            };
            let report = run_session(&script, &opts);
            match format {
                Format::Json => print!("{}", to_json(&report)),
                Format::Text => print!("{}", to_text(&report)),
            }
            ExitCode::from(report.exit_code as u8)
        }
    }
}
