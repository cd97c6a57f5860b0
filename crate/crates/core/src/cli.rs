//! The `septree` command-line front-end. [`run`] takes the argument list and
//! returns the exit code with the text for stdout and stderr, so the binary
//! stays a thin wrapper.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::automorphism::automorphisms;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::parse::{parse_graph, GraphFormat};
use crate::profile::{enumerate_k_profiles, k_blocks, Profile, ProfileKind};
use crate::separation::{Separation, SeparationSet};
use crate::strategy::{run_k_strategy, KStrategy, StrategyOptions};
use crate::treedec::{build_from_nested, induced_tree_map, labels, to_dot, verify, DecompositionJson, Label};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "septree",
    version,
    about = "Canonical tree-decompositions distinguishing k-profiles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Refuse graphs with more vertices than this
    #[arg(long, global = true, default_value_t = 40)]
    pub max_vertices: usize,

    /// Refuse profile searches over more separation pairs than this
    #[arg(long, global = true, default_value_t = 200_000)]
    pub max_pairs: usize,

    /// Wall-clock budget in seconds
    #[arg(long, global = true)]
    pub time_budget: Option<f64>,

    /// Solve independent subtasks in parallel
    #[arg(long, global = true)]
    pub parallel: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the k-blocks
    Blocks {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        graph: PathBuf,
    },
    /// List the k-profiles with their classification
    Profiles {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        graph: PathBuf,
    },
    /// Build the tree-decomposition of a k-strategy
    Decompose {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "|ext_r")]
        strategy: String,
        #[arg(long, value_enum, default_value_t = ProfileFilter::All)]
        profiles: ProfileFilter,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        graph: PathBuf,
    },
    /// Check a decomposition file against the tree-decomposition axioms
    Verify {
        #[arg(long)]
        decomposition: PathBuf,
        graph: PathBuf,
    },
    /// Check that every automorphism fixes the computed nested system
    CanonCheck {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "|ext_r")]
        strategy: String,
        #[arg(long, value_enum, default_value_t = ProfileFilter::All)]
        profiles: ProfileFilter,
        graph: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProfileFilter {
    All,
    Blocks,
    Tangles,
}

impl ProfileFilter {
    pub fn keeps(self, p: &Profile) -> bool {
        match self {
            ProfileFilter::All => true,
            ProfileFilter::Blocks => matches!(p.kind(), ProfileKind::Block(_)),
            ProfileFilter::Tangles => p.tangle() == Some(true),
        }
    }
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut limits = Limits::default();
    limits.max_vertices = cli.max_vertices;
    limits.max_pairs = cli.max_pairs;
    match cli.time_budget {
        Some(secs) => limits.with_time_budget(Duration::from_secs_f64(secs.max(0.0))),
        None => limits,
    }
}

pub fn read_graph(path: &Path, limits: &Limits) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    let g = parse_graph(&text, GraphFormat::detect(&text))?;
    limits.check_vertices(g.n())?;
    Ok(g)
}

#[derive(Serialize)]
struct LabeledSeparation {
    #[serde(rename = "A")]
    a: Vec<Label>,
    #[serde(rename = "B")]
    b: Vec<Label>,
}

impl LabeledSeparation {
    fn new(g: &Graph, s: &Separation) -> Self {
        LabeledSeparation {
            a: labels(g, s.a()),
            b: labels(g, s.b()),
        }
    }
}

#[derive(Serialize)]
struct ProfileJson {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    block: Option<Vec<Label>>,
    tangle: bool,
    size: usize,
    /// Improper members are left out: they are exactly the `(A, V)` with `|A| < k`.
    proper: Vec<LabeledSeparation>,
}

impl ProfileJson {
    fn new(g: &Graph, p: &Profile) -> Self {
        let (kind, block) = match p.kind() {
            ProfileKind::Block(b) => ("block", Some(labels(g, b))),
            ProfileKind::Tangle => ("tangle", None),
            ProfileKind::Other => ("other", None),
            ProfileKind::Unclassified => ("unclassified", None),
        };
        ProfileJson {
            kind,
            block,
            tangle: p.tangle().unwrap_or(false),
            size: p.len(),
            proper: p
                .separations()
                .iter()
                .filter(|s| s.is_proper())
                .map(|s| LabeledSeparation::new(g, s))
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct CanonReport {
    automorphisms: usize,
    separations: usize,
    nodes: usize,
    invariant: bool,
}

fn json_only(format: Format, what: &str) -> Result<()> {
    match format {
        Format::Json => Ok(()),
        Format::Dot => Err(Error::Invalid(format!(
            "DOT output is only available for decompositions, not {what}"
        ))),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(value)? + "\n")
}

/// `N_Σ` and its decomposition for the profiles selected by `filter`.
pub fn decompose(
    g: &Graph,
    k: usize,
    strategy: &str,
    filter: ProfileFilter,
    opts: &StrategyOptions,
    limits: &Limits,
) -> Result<(SeparationSet, crate::treedec::TreeDecomposition)> {
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let sigma = KStrategy::parse_for(strategy, k)?;
    let profiles: Vec<Profile> = enumerate_k_profiles(g, k, limits)?
        .into_iter()
        .filter(|p| filter.keeps(p))
        .collect();
    let n = run_k_strategy(&sigma, g, &profiles, opts, limits)?.separations;
    let td = build_from_nested(&n, g)?;
    Ok((n, td))
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let limits = limits(cli);
    let opts = StrategyOptions {
        parallel: cli.parallel,
        ..StrategyOptions::default()
    };
    match &cli.command {
        Command::Blocks { k, format, graph } => {
            json_only(*format, "blocks")?;
            let g = read_graph(graph, &limits)?;
            let blocks: Vec<Vec<Label>> = k_blocks(&g, *k).into_iter().map(|b| labels(&g, b)).collect();
            Ok(Outcome::ok(to_json(&blocks)?))
        }
        Command::Profiles { k, format, graph } => {
            json_only(*format, "profiles")?;
            let g = read_graph(graph, &limits)?;
            let profiles = enumerate_k_profiles(&g, *k, &limits)?;
            let out: Vec<ProfileJson> = profiles.iter().map(|p| ProfileJson::new(&g, p)).collect();
            Ok(Outcome::ok(to_json(&out)?))
        }
        Command::Decompose {
            k,
            strategy,
            profiles,
            format,
            graph,
        } => {
            let g = read_graph(graph, &limits)?;
            let (_, td) = decompose(&g, *k, strategy, *profiles, &opts, &limits)?;
            let text = match format {
                Format::Json => to_json(&DecompositionJson::new(&td, &g))?,
                Format::Dot => to_dot(&td, &g),
            };
            Ok(Outcome::ok(text))
        }
        Command::Verify { decomposition, graph } => {
            let g = read_graph(graph, &limits)?;
            let doc: DecompositionJson = serde_json::from_str(&fs::read_to_string(decomposition)?)?;
            let td = doc.to_decomposition(&g)?;
            let report = verify(&td, &g, None);
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY };
            Ok(Outcome {
                code,
                stdout: to_json(&report)?,
                stderr: String::new(),
            })
        }
        Command::CanonCheck {
            k,
            strategy,
            profiles,
            graph,
        } => {
            let g = read_graph(graph, &limits)?;
            let (n, td) = decompose(&g, *k, strategy, *profiles, &opts, &limits)?;
            let group = automorphisms(&g, &limits)?;
            let invariant = group
                .iter()
                .all(|perm| n.map(perm) == n && induced_tree_map(&td, perm).is_some());
            let report = CanonReport {
                automorphisms: group.len(),
                separations: n.len(),
                nodes: td.node_count(),
                invariant,
            };
            Ok(Outcome {
                code: if invariant { EXIT_OK } else { EXIT_VERIFY },
                stdout: to_json(&report)?,
                stderr: String::new(),
            })
        }
    }
}
