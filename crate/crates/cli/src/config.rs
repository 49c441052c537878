//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "diffposet", version, about = "Differential posets and Smith forms of DU_n + xI")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Poset spec: young, yf, z(k), joined with '*', with optional '^k'.
    #[arg(long, global = true, default_value = "young")]
    pub spec: String,
    /// Largest rank to process.
    #[arg(long = "max-n", global = true, default_value_t = 6)]
    pub max_n: usize,
    /// Ranks `0..=l` are found by direct search. Default: 2 when r = 1, else 1.
    #[arg(long, global = true)]
    pub l: Option<usize>,
    /// Seed for the randomized base-case search.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long = "cache-dir", global = true, default_value = ".diffposet-cache")]
    pub cache_dir: PathBuf,
    #[arg(long = "no-cache", global = true)]
    pub no_cache: bool,
}

impl RunConfig {
    /// Effective `l` for a poset of differential degree `r`.
    pub fn l_for(&self, r: u32) -> usize {
        self.l.unwrap_or(if r == 1 { 2 } else { 1 })
    }

    /// Flags that parse back to this configuration.
    #[cfg(test)]
    pub fn to_args(&self) -> Vec<String> {
        let mut out = vec![
            "--spec".to_owned(),
            self.spec.clone(),
            "--max-n".to_owned(),
            self.max_n.to_string(),
            "--seed".to_owned(),
            self.seed.to_string(),
            "--format".to_owned(),
            self.format.to_possible_value().expect("no skipped variants").get_name().to_owned(),
            "--cache-dir".to_owned(),
            self.cache_dir.display().to_string(),
        ];
        if let Some(l) = self.l {
            out.extend(["--l".to_owned(), l.to_string()]);
        }
        if self.no_cache {
            out.push("--no-cache".to_owned());
        }
        out
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "UPPER")]
pub enum Which {
    U,
    D,
    #[value(name = "DU")]
    Du,
    #[value(name = "UD")]
    Ud,
}

impl Which {
    pub fn name(self) -> &'static str {
        match self {
            Which::U => "U",
            Which::D => "D",
            Which::Du => "DU",
            Which::Ud => "UD",
        }
    }
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Rank sizes p_n and differences for n <= max-n.
    Ranks,
    /// One operator matrix in the standard basis.
    Matrix {
        #[arg(long, value_enum, ignore_case = true)]
        which: Which,
        #[arg(long)]
        n: usize,
    },
    /// Check DU_n - UD_n = rI for n <= max-n.
    Axioms,
    /// Down-map surjectivity, the rank inequality, base cases and rank-size identities.
    Hypotheses,
    /// Predicted spectra and invariant factors, checked against the matrices.
    Predict,
    /// Full pipeline with replayed Smith form certificates.
    Verify {
        /// Record per-rank wall-clock time (bypasses the cache).
        #[arg(long)]
        timing: bool,
        /// Leave decompositions and certificates out of the report.
        #[arg(long = "no-certificates")]
        no_certificates: bool,
    },
    /// Rational canonical form over Z of DU_n.
    Rcf {
        #[arg(long)]
        n: usize,
    },
}
