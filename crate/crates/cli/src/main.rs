mod commands;
mod input;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::input::Source;

#[derive(Debug, Parser)]
#[command(name = "bfinv", version, about = "Lattice, index and Bauer-Furuta vanishing computations for involutions on 4-manifolds")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Built-in data set: E8, H, A, B, K3, K3K3.
    #[arg(long, global = true, conflicts_with = "input")]
    pub preset: Option<String>,
    /// JSON document with optional gram, involution, profile, link and invariant_disks fields.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Emit a canonical JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, value_enum)]
    pub route: Option<RouteArg>,
    /// Keep only sums whose indices are both even.
    #[arg(long, global = true)]
    pub require_even_k: bool,
    /// Assert that the Bauer-Furuta invariant of the underlying manifold is nonzero.
    #[arg(long, global = true)]
    pub bf_nonvanishing: bool,
    /// Built-in framed link (A or B) overriding any link from the input.
    #[arg(long, global = true)]
    pub matrix: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    EvenK,
    Gauge,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Intersection form invariants.
    #[command(subcommand)]
    Form(FormCmd),
    /// Eigenlattices, Tate cohomology and module decomposition of the involution.
    #[command(subcommand)]
    Involution(InvolutionCmd),
    /// Conditions for a locally linear realization with isolated fixed points.
    #[command(subcommand)]
    Ee(EeCmd),
    /// Fixed point count and admissible sign sums.
    Index,
    #[command(subcommand)]
    Bredon(BredonCmd),
    #[command(subcommand)]
    Vanishing(VanishingCmd),
    /// Full nonsmoothability audit.
    Verdict,
}

#[derive(Debug, Subcommand)]
pub enum FormCmd {
    Check,
    Classify,
}

#[derive(Debug, Subcommand)]
pub enum InvolutionCmd {
    Analyze,
}

#[derive(Debug, Subcommand)]
pub enum EeCmd {
    Check,
}

#[derive(Debug, Args)]
pub struct RepArgs {
    #[arg(long = "aplus", default_value_t = 0, allow_negative_numbers = true)]
    pub a_plus: i64,
    #[arg(long = "aminus", default_value_t = 0, allow_negative_numbers = true)]
    pub a_minus: i64,
    #[arg(long = "bplus", default_value_t = 0)]
    pub b_plus: u64,
    #[arg(long = "bminus", default_value_t = 0)]
    pub b_minus: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoeffArg {
    #[value(name = "Z", alias = "z")]
    Z,
    #[value(name = "Z2", alias = "z2", alias = "Z/2")]
    Z2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ActionArg {
    Trivial,
    Sign,
}

#[derive(Debug, Subcommand)]
pub enum BredonCmd {
    /// Cellular model of the top degrees for a representation V.
    Top(RepArgs),
    /// Bredon cohomology of the top model, or of a complex read from JSON.
    Cohomology {
        #[command(flatten)]
        rep: RepArgs,
        /// Chain complex JSON used in place of the top model.
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Defaults to one below the top degree.
        #[arg(long, allow_negative_numbers = true)]
        degree: Option<i64>,
        #[arg(long, value_enum, default_value = "Z2")]
        coeff: CoeffArg,
        #[arg(long, value_enum, default_value = "trivial")]
        action: ActionArg,
        /// Also report the image of the forgetful map to ordinary cohomology.
        #[arg(long)]
        forgetful: bool,
    },
    /// Least V' with V' + V0 and V' + W0 in the stable range; --aplus/--aminus
    /// give k+/k-, --bplus/--bminus give W0.
    Suspension(RepArgs),
}

#[derive(Debug, Subcommand)]
pub enum VanishingCmd {
    /// Apply the vanishing criterion to given indices or to the indices of a sign sum.
    Check {
        #[arg(long = "kplus", allow_negative_numbers = true, requires = "k_minus", conflicts_with = "eps_sum")]
        k_plus: Option<i64>,
        #[arg(long = "kminus", allow_negative_numbers = true, requires = "k_plus")]
        k_minus: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        eps_sum: Option<i64>,
        /// Treat the indices as odd type.
        #[arg(long)]
        odd: bool,
    },
}

impl Global {
    pub fn source(&self) -> Result<Source, String> {
        let mut source = match (&self.preset, &self.input) {
            (Some(name), None) => Source::preset(name)?,
            (None, Some(path)) => Source::file(path)?,
            (None, None) => return Err("this command needs --preset or --input".into()),
            (Some(_), Some(_)) => return Err("--preset and --input are mutually exclusive".into()),
        };
        if let Some(name) = &self.matrix {
            source.link = Some(
                bfinv_core::realization::FramedLinkMatrix::preset(name)
                    .ok_or_else(|| format!("unknown matrix {name:?} (known: A, B)"))?,
            );
        }
        Ok(source)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = if cli.global.json {
                writeln!(stdout, "{}", out.json())
            } else {
                stdout.write_all(out.text.as_bytes())
            };
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
