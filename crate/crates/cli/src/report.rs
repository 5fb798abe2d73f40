use std::collections::BTreeSet;
use std::fmt::Write as _;

use lpspec::checker::{CorrectnessReport, StableReport, Status, Verdict};
use lpspec::engine::{Budget, MainTree, SemiCompletenessReport};
use lpspec::syntax::Term;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = "lpspec";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Sorted atom list with a SHA-256 digest of its newline-joined text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomSet {
    pub count: usize,
    pub sha256: String,
    pub atoms: Vec<String>,
}

impl AtomSet {
    pub fn new<'a>(atoms: impl IntoIterator<Item = &'a Term>) -> Self {
        let sorted: BTreeSet<&Term> = atoms.into_iter().collect();
        let atoms: Vec<String> = sorted.iter().map(|t| t.to_string()).collect();
        AtomSet {
            count: atoms.len(),
            sha256: digest(&atoms),
            atoms,
        }
    }
}

pub fn digest(lines: &[String]) -> String {
    let mut h = Sha256::new();
    for l in lines {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    h.finalize()
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Config {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub program: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub query: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semantics: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<Budget>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability_check: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allow_nonproper: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProperReport {
    pub proper: bool,
    pub violations: usize,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionStatus {
    pub condition: String,
    pub status: Status,
}

/// Statuses of the same checks one level deeper.
#[derive(Clone, Debug, Serialize)]
pub struct Stability {
    pub depth: usize,
    pub statuses: Vec<ConditionStatus>,
    pub flips: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub kind: String,
    pub depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ground_atoms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<AtomSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub true_atoms: Option<AtomSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub undefined_atoms: Option<AtomSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub false_atoms: Option<AtomSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub models: Option<Vec<AtomSet>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub outcome: String,
    pub answers: Vec<String>,
    pub tree: MainTree,
}

/// Result of one expectation in a corpus entry.
#[derive(Clone, Debug, Serialize)]
pub struct ItemResult {
    pub item: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub items: Vec<ItemResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub entries: usize,
    pub items: usize,
    pub mismatches: usize,
    pub results: Vec<EntryResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Config,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consequence: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properness: Option<ProperReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable: Option<StableReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability: Option<Stability>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semi_completeness: Option<SemiCompletenessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub run: Option<RunReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corpus: Option<CorpusReport>,
}

impl Report {
    pub fn new(command: &str, config: Config) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: TOOL,
            version: VERSION,
            command: command.to_string(),
            config,
            status: Status::Pass,
            exit_code: 0,
            warnings: Vec::new(),
            checks: Vec::new(),
            consequence: None,
            properness: None,
            stable: None,
            stability: None,
            semi_completeness: None,
            oracle: None,
            run: None,
            corpus: None,
        }
    }

    pub fn add_correctness(&mut self, r: CorrectnessReport) {
        self.checks.push(r.condition1);
        self.checks.push(r.condition2);
        self.consequence = r.consequence;
    }

    pub fn set_status(&mut self, status: Status) {
        self.status = status;
        self.exit_code = status.exit_code();
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.run {
            Some(r) => {
                let _ = writeln!(out, "{} {}: {}", TOOL, self.command, r.outcome);
            }
            None => {
                let _ = writeln!(out, "{} {}: {}", TOOL, self.command, self.status);
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "  warning: {w}");
        }
        for v in &self.checks {
            let _ = writeln!(
                out,
                "  {:<22} {:<12} depth {}  checked {}  violations {}",
                v.condition, v.status, v.depth, v.checked, v.violations
            );
            for w in &v.witnesses {
                let _ = write!(out, "    {:?}: {}", w.kind, w.text);
                if let Some(n) = &w.note {
                    let _ = write!(out, "  [{n}]");
                }
                out.push('\n');
            }
            for n in &v.notes {
                let _ = writeln!(out, "    note: {n}");
            }
        }
        if let Some(c) = &self.consequence {
            let _ = writeln!(out, "  {c}");
        }
        if let Some(p) = &self.properness {
            if p.proper {
                let _ = writeln!(out, "  specification is proper (Snf ⊆ St)");
            } else {
                let _ = writeln!(
                    out,
                    "  specification is not proper: {} atoms of Snf outside St, e.g. {}",
                    p.violations,
                    p.witnesses.join(", ")
                );
            }
        }
        if let Some(s) = &self.stable {
            for m in &s.models {
                let _ = writeln!(
                    out,
                    "  stable model {{{}}}: contains Snf {}, within St {}",
                    m.model.join(", "),
                    m.contains_snf,
                    m.within_st
                );
            }
        }
        if let Some(s) = &self.stability {
            if s.flips.is_empty() {
                let _ = writeln!(out, "  stable at depth {}: no verdict changes", s.depth);
            }
            for f in &s.flips {
                let _ = writeln!(out, "  verdict flip at depth {}: {f}", s.depth);
            }
        }
        if let Some(r) = &self.semi_completeness {
            let _ = writeln!(
                out,
                "  {} semi-completeness: {}  checked {}  decided {}  unconstrained {}  skipped {}  violations {}",
                r.semantics,
                r.status,
                r.checked,
                r.decided,
                r.unconstrained,
                r.skipped.len(),
                r.violations.len()
            );
            for a in &r.violations {
                let _ = writeln!(
                    out,
                    "    violation: {} must {:?} but {}",
                    a.atom, a.requirement, a.outcome
                );
            }
            for a in &r.skipped {
                let _ = writeln!(out, "    skipped: {} ({})", a.atom, a.outcome);
            }
            for n in &r.notes {
                let _ = writeln!(out, "    note: {n}");
            }
        }
        if let Some(o) = &self.oracle {
            oracle_text(o, &mut out);
        }
        if let Some(r) = &self.run {
            out.push_str(&r.tree.to_text());
            for a in &r.answers {
                let _ = writeln!(out, "answer: {a}");
            }
        }
        if let Some(c) = &self.corpus {
            for e in &c.results {
                let _ = writeln!(out, "  {} {}", if e.ok { "ok  " } else { "FAIL" }, e.name);
                if let Some(err) = &e.error {
                    let _ = writeln!(out, "      error: {err}");
                }
                for i in e.items.iter().filter(|i| !i.ok) {
                    let _ = writeln!(
                        out,
                        "      {}: expected {}, got {}",
                        i.item, i.expected, i.actual
                    );
                    for d in &i.details {
                        let _ = writeln!(out, "        {d}");
                    }
                }
            }
            let _ = writeln!(
                out,
                "  {} entries, {} expectations, {} mismatches",
                c.entries, c.items, c.mismatches
            );
        }
        out
    }
}

fn oracle_text(o: &OracleReport, out: &mut String) {
    let _ = write!(out, "  {} at depth {}", o.kind, o.depth);
    if let Some(n) = o.ground_atoms {
        let _ = write!(out, " over {n} ground atoms");
    }
    out.push('\n');
    if let Some(m) = &o.model {
        if m.atoms.is_empty() {
            let _ = writeln!(out, "empty model");
        }
        for a in &m.atoms {
            let _ = writeln!(out, "{a}");
        }
    }
    let parts = [
        ("t", &o.true_atoms),
        ("u", &o.undefined_atoms),
        ("f", &o.false_atoms),
    ];
    let mut lines: Vec<(&String, &str)> = parts
        .iter()
        .filter_map(|(v, s)| s.as_ref().map(|s| (v, s)))
        .flat_map(|(v, s)| s.atoms.iter().map(move |a| (a, *v)))
        .collect();
    lines.sort();
    for (a, v) in lines {
        let _ = writeln!(out, "{a}={v}");
    }
    if let Some(ms) = &o.models {
        if ms.is_empty() {
            let _ = writeln!(out, "no stable models");
        }
        for m in ms {
            let _ = writeln!(out, "{{{}}}", m.atoms.join(", "));
        }
    }
}
