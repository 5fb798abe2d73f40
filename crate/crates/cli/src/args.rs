use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lpspec::engine::{Budget, EngineSemantics};

#[derive(Debug, Parser)]
#[command(
    name = "lpspec",
    version,
    about = "Check normal logic programs against approximate specifications"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check correctness (ks, wfs) or the stable-model proposition.
    Check(CheckArgs),
    /// Print a reference model of the depth-bounded grounding.
    Oracle(OracleArgs),
    /// Build the main SLDNF- or SLS-tree of a query.
    Run(RunArgs),
    /// Run every entry of a corpus manifest against its expectations.
    Corpus(CorpusArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    Ks,
    Wfs,
    Stable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Lm,
    Fitting,
    Wfs,
    Stable,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Sldnf,
    Sls,
}

impl From<SemanticsArg> for EngineSemantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Sldnf => EngineSemantics::Sldnf,
            SemanticsArg::Sls => EngineSemantics::Sls,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct BudgetArgs {
    /// Maximum depth of a single tree.
    #[arg(long, default_value_t = Budget::default().depth)]
    pub budget_depth: usize,
    /// Maximum number of nodes of a single tree.
    #[arg(long, default_value_t = Budget::default().nodes)]
    pub budget_nodes: usize,
    /// Maximum nesting of subsidiary trees.
    #[arg(long, default_value_t = Budget::default().rank)]
    pub budget_rank: usize,
}

impl BudgetArgs {
    pub fn budget(&self) -> anyhow::Result<Budget> {
        Ok(Budget::new(
            self.budget_depth,
            self.budget_nodes,
            self.budget_rank,
        )?)
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub mode: CheckMode,
    pub program: PathBuf,
    pub spec: PathBuf,
    /// Term depth bound d; defaults to a depth declared in SPEC, then 3.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Re-run at depth d+1 and report verdicts that change.
    #[arg(long)]
    pub stability_check: bool,
    /// Maximum number of witnesses per condition.
    #[arg(long, default_value_t = 5)]
    pub witness_cap: usize,
    /// Maximum number of well-founded-undefined atoms for stable model search.
    #[arg(long, default_value_t = lpspec::oracles::DEFAULT_STABLE_CAP)]
    pub stable_cap: usize,
    /// Also build main trees for every atom of HB(d) and test semi-completeness.
    #[arg(long)]
    pub empirical: bool,
    /// Engine for --empirical; sldnf for ks and sls for wfs by default.
    #[arg(long, value_enum)]
    pub semantics: Option<SemanticsArg>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Skip atoms of Snf outside St instead of refusing a non-proper specification.
    #[arg(long)]
    pub allow_nonproper: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(value_enum)]
    pub kind: OracleKind,
    pub program: PathBuf,
    /// Take the universe (symbols, sorts, domains, depth) from a specification.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, default_value_t = lpspec::oracles::DEFAULT_STABLE_CAP)]
    pub stable_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    pub program: PathBuf,
    pub query: String,
    #[arg(long, value_enum, default_value_t = SemanticsArg::Sldnf)]
    pub semantics: SemanticsArg,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Depth of the grounding consulted by sls.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Take the universe for sls from a specification.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    pub manifest: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}
