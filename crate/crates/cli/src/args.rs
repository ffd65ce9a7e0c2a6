use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "flaghecke", version, about = "Cellular bases of flag Hecke algebras over F_p and Z/p^2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Prime residue field size.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub parallelism: usize,
    /// Lift the desk-scale caps on n.
    #[arg(long, global = true)]
    pub unsafe_no_cap: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `|M_λμ| = Σ_ν K_νλ K_νμ` for every pair.
    KostkaSquare,
    /// Kostka numbers `K_νμ`.
    Kostka,
    /// Contingency-matrix counts `|M_λμ|`.
    Contingency,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// RSK of one matrix and the inverse round trip.
    Rsk {
        /// Rows separated by ';', entries by ','.
        #[arg(long)]
        matrix: String,
    },
    /// Kostka and contingency tables for all partitions of n.
    Counts {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Identity::KostkaSquare)]
        identity: Identity,
    },
    /// Orbits on pairs of flags, or on pairs of module pairs with --module.
    Orbits {
        #[arg(long)]
        n: Option<usize>,
        /// Composition of the row flags.
        #[arg(long)]
        lambda: Option<String>,
        /// Composition of the column flags (defaults to lambda).
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        module: bool,
        /// Module pair classes as a,b,k (x₂ of type 2^a 1^b, dim x₁ = k);
        /// give one or two.
        #[arg(long)]
        xi: Vec<String>,
    },
    /// Decomposition of the permutation module on λ-flags.
    Decompose {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        lambda: String,
    },
    /// Cellular basis of Hom(Q[X_μ], Q[X_λ]) and its cellularity checks.
    CellularCheck {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Geometric cellular basis against the Murphy basis.
    MdjCompare {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Decomposition of F_ι(λ) for submodules of (Z/p^2)^n.
    ModuleDecompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
    },
    /// Orbit counting identity for module pairs; all classes unless --xi.
    ModuleRskCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        xi: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Rsk { .. } => "rsk",
            Command::Counts { .. } => "counts",
            Command::Orbits { .. } => "orbits",
            Command::Decompose { .. } => "decompose",
            Command::CellularCheck { .. } => "cellular-check",
            Command::MdjCompare { .. } => "mdj-compare",
            Command::ModuleDecompose { .. } => "module-decompose",
            Command::ModuleRskCheck { .. } => "module-rsk-check",
        }
    }
}
