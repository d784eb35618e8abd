use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use bialgd_core::algebra::{DEFAULT_ORDER_CAP, DEFAULT_SCAN_CAP};
use bialgd_core::depth_two::Side;
use bialgd_core::input::{parse_input, InputDocument};
use bialgd_core::report::{analyze, quasibase_document, render_json, render_quasibase_text, render_text, Checks};
use bialgd_core::scan::{render_scan_text, subgroup_scan};

const ORDER_CAP_VAR: &str = "BIALGD_ORDER_CAP";
const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(name = "bialgd", version, about = "Depth-two extensions, their bialgebroids and the Galois criterion, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an input file and check the algebra and subalgebra axioms
    Validate { file: PathBuf },
    /// Run the analysis pipeline and print a report
    Analyze {
        file: PathBuf,
        /// comma-separated subset of d2, frobenius, balanced, galois, axioms, all
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// seed for the randomized Frobenius search
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide depth two for every subgroup of a permutation group
    SubgroupScan {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a left or right quasibase
    Quasibase {
        file: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Bad input of any kind; exits with 2.
struct Invalid(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Invalid {
    fn from(e: E) -> Invalid {
        Invalid(e.into())
    }
}

fn order_cap(default: usize) -> Result<usize> {
    match std::env::var(ORDER_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| anyhow!("{ORDER_CAP_VAR} must be a positive integer, got `{v}`")),
        Err(std::env::VarError::NotPresent) => Ok(default),
        Err(e) => Err(anyhow!("{ORDER_CAP_VAR}: {e}")),
    }
}

fn load(path: &Path) -> Result<InputDocument, Invalid> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = parse_input(&text, order_cap(DEFAULT_ORDER_CAP)?).with_context(|| format!("invalid input {}", path.display()))?;
    Ok(doc)
}

fn extension(doc: &InputDocument) -> Result<bialgd_core::algebra::RingExtension, Invalid> {
    doc.extension()?
        .ok_or_else(|| Invalid(anyhow!("group input needs \"subgroup_generators\" to define an extension")))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Invalid> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, Invalid> {
    match cli.command {
        Command::Validate { file } => {
            let doc = load(&file)?;
            match &doc {
                InputDocument::Algebra { extension } => {
                    println!("valid: algebra of dimension {} over {}, subalgebra of dimension {}", extension.n(), extension.field(), extension.b_basis().len());
                }
                InputDocument::Group { group, .. } => {
                    let ext = doc.extension()?;
                    let sub = ext.map_or_else(|| "no subgroup".to_string(), |e| format!("subgroup of order {}", e.b_basis().len()));
                    println!("valid: group of order {} on {} points, {sub}", group.group.order(), group.group.degree());
                }
            }
            Ok(0)
        }
        Command::Analyze { file, checks, format, seed, out } => {
            let checks = Checks::parse(&checks).map_err(|e| Invalid(anyhow!(e)))?;
            let ext = extension(&load(&file)?)?;
            let report = analyze(&ext, checks, seed);
            let text = match format {
                Format::Text => render_text(&report),
                Format::Json => render_json(&report),
            };
            emit(&text, out.as_deref())?;
            Ok(report.exit_code())
        }
        Command::SubgroupScan { file, format } => {
            let doc = load(&file)?;
            let InputDocument::Group { field, group } = &doc else {
                return Err(Invalid(anyhow!("subgroup-scan needs a group input")));
            };
            let scan = subgroup_scan(&group.group, *field, order_cap(DEFAULT_SCAN_CAP)?)?;
            let text = match format {
                Format::Text => render_scan_text(&scan),
                Format::Json => render_json(&scan),
            };
            emit(&text, None)?;
            Ok(scan.exit_code())
        }
        Command::Quasibase { file, side, format } => {
            let ext = extension(&load(&file)?)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let doc = quasibase_document(&ext, side);
            let text = match format {
                Format::Text => render_quasibase_text(&doc),
                Format::Json => render_json(&doc),
            };
            emit(&text, None)?;
            Ok(doc.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
