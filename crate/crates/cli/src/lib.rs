//! Library behind the `ballq` binary: argument parsing, input loading,
//! the verbs and the bundled examples.

pub mod commands;
pub mod examples;
pub mod load;
pub mod report;

use clap::{Parser, Subcommand};
use report::{parse_expectation, Report};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "ballq", version, about = "Exact checks for ball quotient compactifications")]
pub struct Cli {
    /// Print `key=value` lines only.
    #[arg(long, global = true)]
    pub porcelain: bool,

    /// Assertions on printed facts, as `key=value`.
    #[arg(long, global = true, num_args = 1.., value_parser = parse_expectation)]
    pub expect: Vec<(String, String)>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiple points of an arrangement, or the meeting points of two curves.
    ArrIntersect { file: String, curves: Vec<String> },
    /// Image curves and special points of a quotient (.pipeline or .arr).
    ArrQuotient { file: String },
    /// Blow up the special points of a quotient and report proper transforms.
    ArrBlowup {
        file: String,
        /// Save the resulting ledger.
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Logarithmic Chern numbers of a .pipeline or .ledger file.
    ArrChern { file: String },
    /// Index of a subgroup by coset enumeration.
    GrpIndex {
        file: String,
        /// Comma-separated subgroup generators, replacing the file's `sub`.
        #[arg(long)]
        sub: Option<String>,
    },
    /// Abelian invariants of a presentation.
    GrpAbel { file: String },
    /// Abelian invariants of the kernel of a map onto a permutation group.
    GrpKernelAbel {
        file: String,
        /// Generator images (.fix).
        images: Option<String>,
        /// Search for surjections onto this finite group instead.
        #[arg(long)]
        onto: Option<String>,
        /// Save the images of the verified (or first found) map.
        #[arg(long)]
        write_images: Option<PathBuf>,
    },
    /// Index of the image of the `sub` subgroup under a map to a finite group.
    GrpCusps {
        file: String,
        images: String,
        /// Orbifold Euler characteristic of the source, to report the cover's.
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<String>,
    },
    /// Check relators (.aff) or a substitution (.sub) as affine identities.
    RepVerify { file: String },
    /// Bielliptic type of the group generated by the maps of an .aff file.
    RepClassify { file: String },
    /// Run a bundled construction.
    Example {
        name: String,
        /// Directory searched for external fixtures.
        #[arg(long, default_value = ".")]
        fixture_dir: PathBuf,
    },
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Report {
    use commands::*;
    let outcome = match &cli.command {
        Command::ArrIntersect { file, curves } => arr_intersect(file, curves),
        Command::ArrQuotient { file } => arr_quotient(file),
        Command::ArrBlowup { file, write } => arr_blowup(file, write.as_deref()),
        Command::ArrChern { file } => arr_chern(file),
        Command::GrpIndex { file, sub } => grp_index(file, sub.as_deref()),
        Command::GrpAbel { file } => grp_abel(file),
        Command::GrpKernelAbel {
            file,
            images,
            onto,
            write_images,
        } => grp_kernel_abel(
            file,
            KernelArgs {
                images: images.as_deref(),
                onto: onto.as_deref(),
                write_images: write_images.as_deref(),
            },
        ),
        Command::GrpCusps { file, images, chi } => grp_cusps(file, images, chi.as_deref()),
        Command::RepVerify { file } => rep_verify(file),
        Command::RepClassify { file } => rep_classify(file),
        Command::Example { name, fixture_dir } => examples::run_example(name, fixture_dir),
    };
    let mut report = outcome.unwrap_or_else(Report::error);
    report.expect(&cli.expect);
    report
}

/// Parses `args` (without the program name) and runs them. Returns the
/// report, or clap's usage error text.
pub fn run_args<I, S>(args: I) -> Result<Report, String>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once("ballq".into()).chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
    Ok(run(&cli))
}
