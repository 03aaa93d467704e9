//! Command-line flags, the optional JSON config file, and their merge.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use torus_shadow::{Weight, Q};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "tshadow", version, about = "Shadow invariants and torus-gauge kernels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Default, Args)]
pub struct Common {
    /// JSON file whose keys replace flags that are not given.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Include per-coloring terms and progress notes.
    #[arg(long, global = true)]
    pub diagnostics: bool,
}

#[derive(Debug, Default, Args)]
pub struct GroupArgs {
    /// Root system label such as A1, B2 or G2.
    #[arg(long)]
    pub group: Option<String>,

    #[arg(long)]
    pub k: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the shadow invariant of a link file.
    Shadow {
        input: Option<PathBuf>,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Build the fusion table and check it against the Verlinde formula.
    Fusion {
        #[command(flatten)]
        group: GroupArgs,
        /// Include every coefficient.
        #[arg(long)]
        dump: bool,
        /// Print the table as plain text lines instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Quantum dimensions of the level alphabet or of one weight.
    Qdim {
        #[command(flatten)]
        group: GroupArgs,
        /// Dynkin labels, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// Sine-product determinants at a constant torus element.
    Det {
        #[arg(long)]
        group: Option<String>,
        /// Values of the simple roots on b, comma separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        alpha_b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<i64>,
        /// Also evaluate the quadrature form on an N x 2N grid of the round sphere.
        #[arg(long)]
        quadrature: Option<usize>,
    },
    /// The n-th regularized indicator and determinant of a constant field.
    Regularize {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha_b: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Wilson loop of a vertical ribbon: closed form against the holonomy product.
    Holonomy {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha_b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// List every schema, level and nesting violation in a link file.
    Validate { input: Option<PathBuf> },
}

/// Keys accepted in a config file; the same names as the flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigFile {
    pub input: Option<PathBuf>,
    pub group: Option<String>,
    pub k: Option<i64>,
    pub output: Option<PathBuf>,
    pub workers: Option<usize>,
    pub diagnostics: Option<bool>,
    pub dump: Option<bool>,
    pub text: Option<bool>,
    pub weight: Option<String>,
    #[serde(alias = "alpha_b")]
    pub alpha_b: Option<String>,
    pub chi: Option<i64>,
    pub quadrature: Option<usize>,
    pub n: Option<usize>,
}

/// A fully merged job: flags first, then the config file.
#[derive(Debug, Default)]
pub struct JobConfig {
    pub input: Option<PathBuf>,
    pub group: Option<String>,
    pub k: Option<i64>,
    pub output: Option<PathBuf>,
    pub workers: usize,
    pub diagnostics: bool,
    pub dump: bool,
    pub text: bool,
    pub weight: Option<String>,
    pub alpha_b: Option<String>,
    pub chi: Option<i64>,
    pub quadrature: Option<usize>,
    pub n: Option<usize>,
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

/// Parses JSON text, separating syntax errors from schema errors.
pub fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    serde_json::from_value(value)
        .map_err(|e| torus_shadow::Error::Schema(format!("{}: {e}", path.display())).into())
}

impl JobConfig {
    pub fn resolve(cli: &Cli) -> Result<Self, CliError> {
        let file: ConfigFile = match &cli.common.config {
            Some(p) => parse_json(p, &read_file(p)?)?,
            None => ConfigFile::default(),
        };
        let mut job = JobConfig {
            input: file.input,
            group: file.group,
            k: file.k,
            output: cli.common.output.clone().or(file.output),
            workers: cli.common.workers.or(file.workers).unwrap_or(1),
            diagnostics: cli.common.diagnostics || file.diagnostics.unwrap_or(false),
            dump: file.dump.unwrap_or(false),
            text: file.text.unwrap_or(false),
            weight: file.weight,
            alpha_b: file.alpha_b,
            chi: file.chi,
            quadrature: file.quadrature,
            n: file.n,
        };
        if job.workers == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        fn set<T: Clone>(slot: &mut Option<T>, flag: &Option<T>) {
            if flag.is_some() {
                slot.clone_from(flag);
            }
        }
        match &cli.command {
            Command::Shadow { input, group } => {
                set(&mut job.input, input);
                set(&mut job.group, &group.group);
                set(&mut job.k, &group.k);
            }
            Command::Fusion { group, dump, text } => {
                set(&mut job.group, &group.group);
                set(&mut job.k, &group.k);
                job.dump |= dump;
                job.text |= text;
            }
            Command::Qdim { group, weight } => {
                set(&mut job.group, &group.group);
                set(&mut job.k, &group.k);
                set(&mut job.weight, weight);
            }
            Command::Det { group, alpha_b, chi, quadrature } => {
                set(&mut job.group, group);
                set(&mut job.alpha_b, alpha_b);
                set(&mut job.chi, chi);
                set(&mut job.quadrature, quadrature);
            }
            Command::Regularize { group, alpha_b, n } => {
                set(&mut job.group, group);
                set(&mut job.alpha_b, alpha_b);
                set(&mut job.n, n);
            }
            Command::Holonomy { group, alpha_b, weight, n } => {
                set(&mut job.group, group);
                set(&mut job.alpha_b, alpha_b);
                set(&mut job.weight, weight);
                set(&mut job.n, n);
            }
            Command::Validate { input } => set(&mut job.input, input),
        }
        Ok(job)
    }

    pub fn group(&self) -> Result<&str, CliError> {
        self.group.as_deref().ok_or_else(|| missing("group"))
    }

    pub fn k(&self) -> Result<i64, CliError> {
        self.k.ok_or_else(|| missing("k"))
    }

    pub fn input(&self) -> Result<&Path, CliError> {
        self.input.as_deref().ok_or_else(|| missing("input"))
    }

    pub fn alpha_b(&self) -> Result<Vec<Q>, CliError> {
        let text = self.alpha_b.as_deref().ok_or_else(|| missing("alpha-b"))?;
        split(text)
            .map(|s| {
                s.parse::<Q>()
                    .map_err(|_| CliError::Usage(format!("--alpha-b: {s:?} is not a rational such as 1/2")))
            })
            .collect()
    }

    pub fn weight(&self) -> Result<Option<Weight>, CliError> {
        self.weight.as_deref().map(parse_weight).transpose()
    }
}

fn missing(key: &str) -> CliError {
    CliError::Usage(format!("missing --{key} (or \"{key}\" in the config file)"))
}

fn split(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

pub fn parse_weight(text: &str) -> Result<Weight, CliError> {
    let labels = split(text.trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']'))
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| CliError::Usage(format!("--weight: {s:?} is not an integer label")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Weight(labels))
}
