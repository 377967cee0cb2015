//! `fermilie` command-line front end.

mod commands;
mod io;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "fermilie", version, about = "Lie closures and controllability of fermionic and spin systems")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Coefficient field for closures.
    #[arg(long, value_enum, default_value_t = Field::Exact, global = true)]
    pub field: Field,
    /// Dimension cap for Lie closures.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Seed for randomized steps.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Recompute with dense Fock-space matrices when the size allows.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Compare against the embedded expected results; mismatches exit with 1.
    #[arg(long, global = true)]
    pub diff: bool,
    /// Timing and progress on stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Exact,
    Float,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lie closure and structure of a generator set.
    Closure {
        /// Operator JSON: one operator, an array, or {"generators": [...]}.
        input: Option<PathBuf>,
        /// Named generator family instead of a file (see `presets`).
        #[arg(long, conflicts_with = "input")]
        preset: Option<String>,
        /// Number of modes (or sites) for a preset.
        #[arg(short, long, requires = "preset")]
        d: Option<usize>,
        /// Expected closure dimension; a mismatch exits with 1.
        #[arg(long)]
        expect_dim: Option<usize>,
    },
    /// List the preset names accepted by `closure --preset`.
    Presets,
    /// Structure tables of translation-invariant algebras.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        /// Sizes: `2..5`, `2..=5`, `4` or `2,3,5`.
        #[arg(long, default_value = "2..5")]
        range: String,
        /// Fermionic tables: every M in 2..=d instead of M = 2 and M = d.
        #[arg(long)]
        all_ranges: bool,
    },
    /// Trace witness separating nearest-neighbour from longer-range terms.
    Witness {
        #[arg(short, long)]
        d: usize,
    },
    /// Spectral gap of random translation-invariant range-M Hamiltonians against the bound.
    GapScan {
        #[arg(short = 'M', long = "m", default_value_t = 3)]
        m: usize,
        /// Comma-separated mode counts.
        #[arg(short, long, value_delimiter = ',', default_values_t = [50usize, 100, 200])]
        d: Vec<usize>,
        /// Number of seeds, starting at --seed.
        #[arg(long, default_value_t = 100)]
        count: u64,
    },
    /// Quasifree (Gaussian) state tools.
    Quasifree {
        #[command(subcommand)]
        cmd: QuasifreeCmd,
    },
    /// Translation-invariant quasifree tools.
    Ti {
        #[command(subcommand)]
        cmd: TiCmd,
    },
    /// Number-conserving quadratic systems.
    ParticleNumber {
        #[command(subcommand)]
        cmd: NcCmd,
    },
    /// Sparse result against dense Fock-space recomputation.
    Crosscheck {
        /// `closure:<family>`, `profile` or `witness`.
        what: String,
        #[arg(short, long)]
        d: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    SpinTi,
    FermiTi,
    TiQuadratic,
}

#[derive(Subcommand, Debug)]
pub enum QuasifreeCmd {
    /// Whether two covariance matrices lie on the same orbit.
    Orbit { g1: PathBuf, g2: PathBuf },
    /// Singular values, purity and Pfaffian sign of a covariance matrix.
    Canonical { g: PathBuf },
    /// Random pure covariance matrix.
    Random {
        #[arg(short, long)]
        d: usize,
    },
    /// Evolve a covariance matrix under a generator matrix T for time t.
    Evolve {
        g: PathBuf,
        /// Generator: real antisymmetric 2d x 2d matrix, or an operator JSON.
        t_matrix: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        time: f64,
    },
    /// Controllability of a quadratic generator set on pure states and by the tensor-square test.
    Controllable {
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        preset: Option<String>,
        #[arg(short, long, requires = "preset")]
        d: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TiCmd {
    /// Orbit invariants and Fourier blocks of a translation-invariant covariance matrix.
    Invariants { g: PathBuf },
    /// Same translation-invariant orbit, with the connecting block rotation.
    Orbit { g1: PathBuf, g2: PathBuf },
    /// Algebra generated by all (or range-M) translation-invariant quadratics.
    Structure {
        #[arg(short, long)]
        d: usize,
        /// Reflection-symmetric subalgebra.
        #[arg(long)]
        rsym: bool,
        #[arg(short = 'M', long = "m")]
        m: Option<usize>,
    },
    /// Random translation-invariant pure covariance matrix.
    Random {
        #[arg(short, long)]
        d: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum NcCmd {
    /// Predicted (and for small d computed) algebra of all number-conserving operators.
    Structure {
        #[arg(short, long)]
        d: usize,
    },
    /// Transitivity on n-particle pure states.
    Controllable {
        /// `u` (all one-body Hamiltonians) or `sp` (the symplectic subalgebra).
        #[arg(long, default_value = "u")]
        family: String,
        #[arg(short, long)]
        d: usize,
        #[arg(short, long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    let result = commands::run(&cli);
    if cli.config.verbose > 0 {
        eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(out) => {
            let code = if out.ok { 0 } else { 1 };
            match io::emit(&out, cli.config.format) {
                Ok(()) => ExitCode::from(code),
                Err(e) => {
                    eprintln!("error: {}", e.message);
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
