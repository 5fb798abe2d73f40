use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::oracles::Truth3;
use crate::syntax::Query;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineSemantics {
    Sldnf,
    Sls,
}

impl fmt::Display for EngineSemantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineSemantics::Sldnf => "sldnf",
            EngineSemantics::Sls => "sls",
        })
    }
}

impl FromStr for EngineSemantics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sldnf" => Ok(EngineSemantics::Sldnf),
            "sls" => Ok(EngineSemantics::Sls),
            other => Err(format!(
                "unknown semantics `{other}` (expected sldnf or sls)"
            )),
        }
    }
}

/// Limits standing in for "the tree is finite": depth of a single tree,
/// nodes of a single tree, and nesting of subsidiary trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Budget {
    pub depth: usize,
    pub nodes: usize,
    pub rank: usize,
}

impl Budget {
    pub fn new(depth: usize, nodes: usize, rank: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::ZeroBudget("depth"));
        }
        if nodes == 0 {
            return Err(Error::ZeroBudget("nodes"));
        }
        if rank == 0 {
            return Err(Error::ZeroBudget("rank"));
        }
        Ok(Budget { depth, nodes, rank })
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            depth: 64,
            nodes: 100_000,
            rank: 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeStatus {
    Internal,
    Success,
    Failed,
    Floundered,
    BudgetExhausted,
}

impl fmt::Display for NodeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeStatus::Internal => "internal",
            NodeStatus::Success => "success",
            NodeStatus::Failed => "failed",
            NodeStatus::Floundered => "floundered",
            NodeStatus::BudgetExhausted => "budget-exhausted",
        })
    }
}

/// Overall classification of a tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Success,
    Failed,
    Floundered,
    BudgetExhausted,
}

impl Outcome {
    /// Neither floundered nor cut off by the budget.
    pub fn is_decided(self) -> bool {
        matches!(self, Outcome::Success | Outcome::Failed)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Success => "success",
            Outcome::Failed => "failed",
            Outcome::Floundered => "floundered",
            Outcome::BudgetExhausted => "budget-exhausted",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Edge {
    /// Resolution with clause `clause` (0-based) and the given mgu.
    Clause { clause: usize, mgu: String },
    /// Removal of a negative literal whose atom failed.
    Negation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Tree,
    /// Decided by the well-founded model of the depth-bounded grounding.
    Oracle,
    /// No subsidiary tree was built: the rank budget was used up.
    Rank,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Tree => "tree",
            Decision::Oracle => "oracle",
            Decision::Rank => "rank",
        })
    }
}

/// Summary of the subsidiary tree built for a selected ground negative
/// literal `¬atom`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subsidiary {
    pub atom: String,
    pub outcome: Outcome,
    pub decided_by: Decision,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Truth3>,
    pub nodes: usize,
}

fn as_string<T: fmt::Display, S: Serializer>(t: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(t)
}

fn as_opt_string<T: fmt::Display, S: Serializer>(
    t: &Option<T>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match t {
        Some(t) => s.collect_str(t),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub id: usize,
    pub parent: Option<usize>,
    pub depth: usize,
    #[serde(serialize_with = "as_string")]
    pub goal: Query,
    /// Index of the selected literal; always the leftmost for internal nodes.
    pub selected: Option<usize>,
    pub edge: Option<Edge>,
    pub status: NodeStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subsidiary: Option<Subsidiary>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "as_opt_string"
    )]
    pub answer: Option<Query>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTree {
    pub semantics: EngineSemantics,
    #[serde(serialize_with = "as_string")]
    pub root: Query,
    pub budget: Budget,
    pub outcome: Outcome,
    pub has_success: bool,
    pub floundered: bool,
    pub exhausted: bool,
    /// Well-founded value of a ground root atom, when it decided the outcome.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_oracle: Option<Truth3>,
    pub nodes: Vec<Node>,
}

impl MainTree {
    /// Computed answers in left-to-right order, duplicates preserved.
    pub fn answers(&self) -> Vec<Query> {
        answers(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} tree for {}: {} ({} nodes)",
            self.semantics,
            self.root,
            self.outcome,
            self.nodes.len()
        );
        for n in &self.nodes {
            let _ = write!(out, "{}[{}] {}", "  ".repeat(n.depth), n.id, n.goal);
            match &n.edge {
                Some(Edge::Clause { clause, mgu }) => {
                    let _ = write!(out, "   <- C{} {mgu}", clause + 1);
                }
                Some(Edge::Negation) => {
                    let _ = write!(out, "   <- ε");
                }
                None => {}
            }
            if n.status != NodeStatus::Internal {
                let _ = write!(out, "   {}", n.status);
            }
            if let Some(s) = &n.subsidiary {
                let _ = write!(out, "   {{{}: {} by {}", s.atom, s.outcome, s.decided_by);
                if let Some(v) = s.oracle {
                    let _ = write!(out, ", wf={v}");
                }
                let _ = write!(out, "}}");
            }
            if let Some(a) = &n.answer {
                let _ = write!(out, "   answer {a}");
            }
            out.push('\n');
        }
        if let Some(v) = self.root_oracle {
            let _ = writeln!(out, "root decided by well-founded value {v}");
        }
        out
    }
}

/// The root query instantiated along each success branch.
pub fn answers(t: &MainTree) -> Vec<Query> {
    t.nodes.iter().filter_map(|n| n.answer.clone()).collect()
}
