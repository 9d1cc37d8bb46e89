use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(name = "gnorm", version, about = "G-normality of curves under infinitesimal group scheme actions")]
pub struct Cli {
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pub text: bool,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Blowup,
    Integral,
    Both,
}

impl MethodArg {
    pub fn name(&self) -> &'static str {
        match self {
            MethodArg::Blowup => "blowup",
            MethodArg::Integral => "integral",
            MethodArg::Both => "both",
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Cmd {
    /// Singular points, fixed locus, non-free locus, stabilizers, inseparability exponent.
    Analyze { file: PathBuf },
    /// Whether every orbit ideal through a singular point is invertible.
    CheckGnormal { file: PathBuf },
    /// Compute the G-normalization chart by chart.
    Gnormalize {
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[arg(long, default_value_t = 16)]
        max_steps: usize,
        file: PathBuf,
    },
    /// Invariant ring and quotient map.
    Quotient { file: PathBuf },
    /// Orbit ideal of a point, e.g. `--point "x=0,y=0"`.
    Orbit {
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        chart: Option<String>,
        file: PathBuf,
    },
    /// Run gallery entries and compare against their stored results.
    Examples {
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        list: bool,
        /// Gallery directory; defaults to the one shipped with the source tree.
        #[arg(long)]
        gallery: Option<PathBuf>,
        /// Overwrite the stored results with the computed ones.
        #[arg(long, hide = true)]
        bless: bool,
    },
}

impl Cmd {
    pub fn name(&self) -> &'static str {
        match self {
            Cmd::Analyze { .. } => "analyze",
            Cmd::CheckGnormal { .. } => "check-gnormal",
            Cmd::Gnormalize { .. } => "gnormalize",
            Cmd::Quotient { .. } => "quotient",
            Cmd::Orbit { .. } => "orbit",
            Cmd::Examples { .. } => "examples",
        }
    }

    pub fn file(&self) -> Option<&Path> {
        match self {
            Cmd::Analyze { file }
            | Cmd::CheckGnormal { file }
            | Cmd::Gnormalize { file, .. }
            | Cmd::Quotient { file }
            | Cmd::Orbit { file, .. } => Some(file),
            Cmd::Examples { .. } => None,
        }
    }
}
