//! Declarative corpus manifests: one entry per worked example, each listing
//! the verdicts, models, trees and semi-completeness results it must produce.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use lpspec::checker::{covered, CheckOptions, Status};
use lpspec::engine::{
    check_semi_completeness_empirical, Budget, Engine, EngineSemantics, SemiOptions, WfOracle,
};
use lpspec::oracles::DEFAULT_STABLE_CAP;
use lpspec::spec::check_proper;
use lpspec::syntax::{parse_ground_atom, parse_query, Pred, Term};
use rayon::prelude::*;
use serde::Deserialize;

use crate::args::{CheckMode, OracleKind};
use crate::commands::{self, CheckConfig};
use crate::load::Loaded;
use crate::report::{Config, CorpusReport, EntryResult, ItemResult, OracleReport, Report};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub schema_version: Option<u32>,
    #[serde(default, rename = "entry")]
    pub entries: Vec<Entry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub name: String,
    pub program: PathBuf,
    #[serde(default)]
    pub spec: Option<PathBuf>,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default, rename = "check")]
    pub checks: Vec<CheckItem>,
    #[serde(default, rename = "oracle")]
    pub oracles: Vec<OracleItem>,
    #[serde(default, rename = "query")]
    pub queries: Vec<QueryItem>,
    #[serde(default, rename = "semi")]
    pub semi: Vec<SemiItem>,
    #[serde(default, rename = "cover")]
    pub covers: Vec<CoverItem>,
}

/// The first instance of clause number `clause` (1-based) covering `atom`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverItem {
    pub atom: String,
    pub clause: usize,
    /// The covering instance, or `none`.
    pub witness: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckItem {
    /// `ks`, `wfs`, `stable` or `proper`.
    pub kind: String,
    pub expect: String,
    /// Expected status per condition id.
    #[serde(default)]
    pub conditions: BTreeMap<String, String>,
    /// Texts that must appear among the witnesses.
    #[serde(default)]
    pub witnesses: Vec<String>,
    #[serde(default)]
    pub witness_cap: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleItem {
    /// `lm`, `fitting`, `wfs` or `stable`.
    pub kind: String,
    #[serde(default, rename = "true")]
    pub true_atoms: Vec<String>,
    #[serde(default, rename = "false")]
    pub false_atoms: Vec<String>,
    #[serde(default)]
    pub undefined: Vec<String>,
    /// Exact list of stable models.
    #[serde(default)]
    pub models: Option<Vec<Vec<String>>>,
    /// Exact model for `lm`.
    #[serde(default)]
    pub model: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryItem {
    pub query: String,
    #[serde(default = "default_semantics")]
    pub semantics: String,
    pub expect: String,
    /// Exact answers in tree order.
    #[serde(default)]
    pub answers: Option<Vec<String>>,
    #[serde(default)]
    pub budget_depth: Option<usize>,
    #[serde(default)]
    pub budget_nodes: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiItem {
    #[serde(default = "default_semantics")]
    pub semantics: String,
    pub expect: String,
    /// Exact set of skipped atoms.
    #[serde(default)]
    pub skipped: Option<Vec<String>>,
    /// Exact set of atoms of `Snf ∖ St` left out.
    #[serde(default)]
    pub nonproper_skipped: Option<Vec<String>>,
    #[serde(default)]
    pub allow_nonproper: bool,
    /// Restrict the atoms examined to these predicates (`name/arity`).
    #[serde(default)]
    pub predicates: Vec<String>,
    #[serde(default)]
    pub budget_depth: Option<usize>,
    #[serde(default)]
    pub budget_nodes: Option<usize>,
}

fn default_semantics() -> String {
    "sldnf".into()
}

pub fn read_manifest(path: &Path) -> Result<Manifest> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let m: Manifest =
        toml::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))?;
    if let Some(v) = m.schema_version {
        if v != 1 {
            bail!("manifest schema_version {v} is not supported");
        }
    }
    let mut names = BTreeSet::new();
    for e in &m.entries {
        if !names.insert(&e.name) {
            bail!("duplicate corpus entry `{}`", e.name);
        }
    }
    Ok(m)
}

fn budget(depth: Option<usize>, nodes: Option<usize>) -> Result<Budget> {
    let d = Budget::default();
    Ok(Budget::new(
        depth.unwrap_or(d.depth),
        nodes.unwrap_or(d.nodes),
        d.rank,
    )?)
}

fn item(
    name: String,
    expected: impl Into<String>,
    actual: impl Into<String>,
    details: Vec<String>,
) -> ItemResult {
    let (expected, actual) = (expected.into(), actual.into());
    ItemResult {
        ok: expected == actual && details.is_empty(),
        item: name,
        expected,
        actual,
        details,
    }
}

fn canonical(atoms: &[String]) -> Result<Vec<String>> {
    let set: BTreeSet<Term> = atoms
        .iter()
        .map(|a| parse_ground_atom(a))
        .collect::<lpspec::error::Result<_>>()?;
    Ok(set.iter().map(|t| t.to_string()).collect())
}

fn join(xs: &[String]) -> String {
    format!("{{{}}}", xs.join(", "))
}

struct Ctx<'a> {
    base: &'a Path,
    entry: &'a Entry,
}

impl Ctx<'_> {
    fn path(&self, p: &Path) -> PathBuf {
        self.base.join(p)
    }

    fn spec_path(&self) -> Result<PathBuf> {
        match &self.entry.spec {
            Some(s) => Ok(self.path(s)),
            None => bail!("entry `{}` has no spec", self.entry.name),
        }
    }

    fn loaded(&self) -> Result<Loaded> {
        let spec = self.entry.spec.as_ref().map(|s| self.path(s));
        Loaded::new(
            &self.path(&self.entry.program),
            spec.as_deref(),
            self.entry.depth,
        )
    }

    fn check(&self, c: &CheckItem) -> Result<ItemResult> {
        let label = format!("check {}", c.kind);
        if c.kind == "proper" {
            let l = self.loaded()?;
            let p = check_proper(&l.evaluate()?, c.witness_cap.unwrap_or(5));
            let actual = if p.proper { Status::Pass } else { Status::Fail };
            let texts: Vec<String> = p.witnesses.iter().map(|t| t.to_string()).collect();
            let details = missing(&c.witnesses, &texts);
            return Ok(item(label, &c.expect, actual.to_string(), details));
        }
        let mode = match c.kind.as_str() {
            "ks" => CheckMode::Ks,
            "wfs" => CheckMode::Wfs,
            "stable" => CheckMode::Stable,
            other => bail!("unknown check kind `{other}`"),
        };
        let mut cfg = CheckConfig::new(mode);
        cfg.depth = self.entry.depth;
        cfg.opts = CheckOptions {
            witness_cap: c.witness_cap.unwrap_or(5),
            stable_cap: DEFAULT_STABLE_CAP,
        };
        let r = commands::check(&self.path(&self.entry.program), &self.spec_path()?, &cfg)?;
        let texts: Vec<String> = r
            .checks
            .iter()
            .flat_map(|v| v.witnesses.iter().map(|w| w.text.clone()))
            .collect();
        let mut details = missing(&c.witnesses, &texts);
        for (cond, want) in &c.conditions {
            match r.checks.iter().find(|v| &v.condition == cond) {
                Some(v) if v.status.to_string() == *want => {}
                Some(v) => details.push(format!("{cond}: expected {want}, got {}", v.status)),
                None => details.push(format!("{cond}: not reported")),
            }
        }
        Ok(item(label, &c.expect, r.status.to_string(), details))
    }

    fn oracle(&self, o: &OracleItem) -> Result<ItemResult> {
        let kind = match o.kind.as_str() {
            "lm" => OracleKind::Lm,
            "fitting" => OracleKind::Fitting,
            "wfs" => OracleKind::Wfs,
            "stable" => OracleKind::Stable,
            other => bail!("unknown oracle kind `{other}`"),
        };
        let spec = self.entry.spec.as_ref().map(|s| self.path(s));
        let r = commands::oracle(
            kind,
            &self.path(&self.entry.program),
            spec.as_deref(),
            self.entry.depth,
            DEFAULT_STABLE_CAP,
        )?;
        let out: &OracleReport = r.oracle.as_ref().context("oracle report missing")?;
        let mut details = Vec::new();
        let value_of = |a: &str| -> &str {
            let has = |s: &Option<crate::report::AtomSet>| {
                s.as_ref().is_some_and(|s| s.atoms.iter().any(|x| x == a))
            };
            if has(&out.true_atoms)
                || out
                    .model
                    .as_ref()
                    .is_some_and(|m| m.atoms.iter().any(|x| x == a))
            {
                "t"
            } else if has(&out.undefined_atoms) {
                "u"
            } else {
                "f"
            }
        };
        for (want, atoms) in [
            ("t", &o.true_atoms),
            ("f", &o.false_atoms),
            ("u", &o.undefined),
        ] {
            for a in canonical(atoms)? {
                let got = value_of(&a);
                if got != want {
                    details.push(format!("{a}: expected {want}, got {got}"));
                }
            }
        }
        if let (Some(want), Some(got)) = (&o.model, &out.model) {
            let want = canonical(want)?;
            if want != got.atoms {
                details.push(format!(
                    "model: expected {}, got {}",
                    join(&want),
                    join(&got.atoms)
                ));
            }
        }
        if let Some(want) = &o.models {
            let want: BTreeSet<Vec<String>> =
                want.iter().map(|m| canonical(m)).collect::<Result<_>>()?;
            let got: BTreeSet<Vec<String>> = out
                .models
                .iter()
                .flatten()
                .map(|m| m.atoms.clone())
                .collect();
            if want != got {
                let show = |s: &BTreeSet<Vec<String>>| {
                    s.iter().map(|m| join(m)).collect::<Vec<_>>().join(" ")
                };
                details.push(format!(
                    "stable models: expected [{}], got [{}]",
                    show(&want),
                    show(&got)
                ));
            }
        }
        let n = details.len();
        Ok(item(
            format!("oracle {}", o.kind),
            "as listed",
            if n == 0 {
                "as listed".to_string()
            } else {
                format!("{n} differences")
            },
            details,
        ))
    }

    fn query(&self, q: &QueryItem, loaded: &Loaded) -> Result<ItemResult> {
        let semantics: EngineSemantics = q.semantics.parse().map_err(anyhow::Error::msg)?;
        let b = budget(q.budget_depth, q.budget_nodes)?;
        let oracle = match semantics {
            EngineSemantics::Sls => Some(WfOracle::new(&loaded.program, &loaded.universe)?),
            EngineSemantics::Sldnf => None,
        };
        let mut engine = Engine::new(&loaded.program, semantics, b);
        if let Some(o) = &oracle {
            engine = engine.with_oracle(o);
        }
        let tree = engine.main_tree(&parse_query(&q.query)?)?;
        let mut details = Vec::new();
        if let Some(want) = &q.answers {
            let got: Vec<String> = tree.answers().iter().map(|a| a.to_string()).collect();
            let want: Vec<String> = want
                .iter()
                .map(|a| parse_query(a).map(|x| x.to_string()))
                .collect::<lpspec::error::Result<_>>()?;
            if got != want {
                details.push(format!(
                    "answers: expected [{}], got [{}]",
                    want.join("; "),
                    got.join("; ")
                ));
            }
        }
        Ok(item(
            format!("run {} {} (budget depth {})", semantics, q.query, b.depth),
            &q.expect,
            tree.outcome.to_string(),
            details,
        ))
    }

    fn semi(&self, s: &SemiItem, loaded: &Loaded) -> Result<ItemResult> {
        let semantics: EngineSemantics = s.semantics.parse().map_err(anyhow::Error::msg)?;
        let spec = loaded.evaluate()?;
        let atoms = if s.predicates.is_empty() {
            None
        } else {
            let mut out = Vec::new();
            for p in &s.predicates {
                let (name, arity) = p
                    .split_once('/')
                    .context("predicates are written name/arity")?;
                out.extend(loaded.universe.hb_pred(&Pred::new(name, arity.parse()?))?);
            }
            Some(out)
        };
        let opts = SemiOptions {
            allow_nonproper: s.allow_nonproper,
            atoms,
        };
        let r = check_semi_completeness_empirical(
            &spec,
            &loaded.program,
            &loaded.universe,
            budget(s.budget_depth, s.budget_nodes)?,
            semantics,
            &opts,
        )?;
        let mut details: Vec<String> = r
            .violations
            .iter()
            .map(|v| {
                format!(
                    "violation: {} must {:?} but {}",
                    v.atom, v.requirement, v.outcome
                )
            })
            .collect();
        if let Some(want) = &s.skipped {
            let want = canonical(want)?;
            let got: Vec<String> = r.skipped.iter().map(|a| a.atom.clone()).collect();
            let got = canonical(&got)?;
            if want != got {
                details.push(format!(
                    "skipped: expected {}, got {}",
                    join(&want),
                    join(&got)
                ));
            }
        }
        if let Some(want) = &s.nonproper_skipped {
            let want = canonical(want)?;
            let got = canonical(&r.nonproper_skipped)?;
            if want != got {
                details.push(format!(
                    "non-proper skips: expected {}, got {}",
                    join(&want),
                    join(&got)
                ));
            }
        }
        let expect_violations = s.expect == Status::Fail.to_string();
        if expect_violations {
            details.retain(|d| !d.starts_with("violation"));
        }
        Ok(item(
            format!("semi-completeness {semantics}"),
            &s.expect,
            r.status.to_string(),
            details,
        ))
    }

    fn cover(&self, c: &CoverItem, loaded: &Loaded) -> Result<ItemResult> {
        let spec = loaded.evaluate()?;
        let Some(clause) = c
            .clause
            .checked_sub(1)
            .and_then(|i| loaded.program.clauses.get(i))
        else {
            bail!("program has no clause {}", c.clause);
        };
        let w = covered(
            &parse_ground_atom(&c.atom)?,
            clause,
            &spec,
            &loaded.universe,
        )?;
        Ok(item(
            format!("covered {} by C{}", c.atom, c.clause),
            &c.witness,
            w.map_or_else(|| "none".to_string(), |w| w.to_string()),
            Vec::new(),
        ))
    }

    fn run(&self) -> Result<Vec<ItemResult>> {
        let mut out = Vec::new();
        for c in &self.entry.checks {
            out.push(self.check(c)?);
        }
        for o in &self.entry.oracles {
            out.push(self.oracle(o)?);
        }
        if !self.entry.queries.is_empty()
            || !self.entry.semi.is_empty()
            || !self.entry.covers.is_empty()
        {
            let loaded = self.loaded()?;
            for c in &self.entry.covers {
                out.push(self.cover(c, &loaded)?);
            }
            for q in &self.entry.queries {
                out.push(self.query(q, &loaded)?);
            }
            for s in &self.entry.semi {
                out.push(self.semi(s, &loaded)?);
            }
        }
        Ok(out)
    }
}

fn missing(want: &[String], have: &[String]) -> Vec<String> {
    want.iter()
        .filter(|w| !have.contains(w))
        .map(|w| format!("witness `{w}` not reported"))
        .collect()
}

pub fn run_entry(base: &Path, entry: &Entry) -> EntryResult {
    match (Ctx { base, entry }).run() {
        Ok(items) => EntryResult {
            name: entry.name.clone(),
            ok: items.iter().all(|i| i.ok),
            error: None,
            items,
        },
        Err(e) => EntryResult {
            name: entry.name.clone(),
            ok: false,
            error: Some(format!("{e:#}")),
            items: Vec::new(),
        },
    }
}

/// Runs all entries in parallel; results keep manifest order.
pub fn run_manifest(path: &Path, manifest: &Manifest) -> Report {
    let base = path.parent().unwrap_or(Path::new("."));
    let results: Vec<EntryResult> = manifest
        .entries
        .par_iter()
        .map(|e| run_entry(base, e))
        .collect();
    let items = results.iter().map(|r| r.items.len()).sum();
    let mismatches = results
        .iter()
        .map(|r| r.items.iter().filter(|i| !i.ok).count() + usize::from(r.error.is_some()))
        .sum();
    let config = Config {
        manifest: Some(path.display().to_string()),
        ..Config::default()
    };
    let mut report = Report::new("corpus", config);
    report.set_status(if mismatches == 0 {
        Status::Pass
    } else {
        Status::Fail
    });
    report.corpus = Some(CorpusReport {
        entries: results.len(),
        items,
        mismatches,
        results,
    });
    report
}

pub fn corpus(path: &Path) -> Result<Report> {
    let m = read_manifest(path)?;
    Ok(run_manifest(path, &m))
}
