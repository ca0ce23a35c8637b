use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use subfields::config::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Full subfield lattice.
    Subfields,
    /// Only the Galois-generating subfields.
    GeneratingOnly,
    /// Galois starting group from subfields and discriminants.
    StartingGroup,
    /// Run the search on a permutation group with a group oracle.
    Simulate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Subfields, Galois-generating subfields and starting groups of number fields.
#[derive(Clone, Debug, Parser)]
#[command(name = "subfields", version)]
pub struct Args {
    /// Polynomial as an expression in x or a coefficient list `[c0, c1, ...]`.
    #[arg(long, conflicts_with_all = ["poly_file", "verify"])]
    pub poly: Option<String>,
    /// File holding the polynomial.
    #[arg(long, conflicts_with = "verify")]
    pub poly_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "subfields")]
    pub mode: Mode,
    /// Group for `--mode simulate`, e.g. `c2^3-regular`, `c7:c3`, `s2wrs3`.
    #[arg(long)]
    pub group_spec: Option<String>,
    /// Largest prime sampled.
    #[arg(long)]
    pub max_prime: Option<u64>,
    /// Ceiling on p-adic precision exponents.
    #[arg(long)]
    pub precision_cap: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Leave wall-clock timings out of the output.
    #[arg(long)]
    pub no_timings: bool,
    /// Re-read a JSON report and check every subfield record against its polynomial.
    #[arg(long)]
    pub verify: Option<PathBuf>,
    #[arg(short, long)]
    pub verbose: bool,
}

impl Args {
    pub fn config(&self) -> Config {
        let mut c = Config { seed: self.seed, ..Config::default() };
        if let Some(p) = self.max_prime {
            c.max_prime = p;
        }
        if let Some(a) = self.precision_cap {
            c.precision_cap = a;
        }
        c
    }
}
