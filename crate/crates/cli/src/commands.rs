use std::path::Path;

use anyhow::Result;
use lpspec::checker::{
    check_correctness_ks, check_correctness_wfs, check_stable_proposition, require_level,
    CheckOptions, Status,
};
use lpspec::engine::{
    check_semi_completeness_empirical, Budget, Engine, EngineSemantics, SemiOptions, WfOracle,
};
use lpspec::oracles::{
    fitting_fixpoint, least_model_bottom_up, stable_models, well_founded_model, GroundProgram,
};
use lpspec::spec::{check_proper, EvaluatedSpec};
use lpspec::syntax::{ground_program, parse_query};

use crate::args::{CheckMode, OracleKind};
use crate::load::Loaded;
use crate::report::{
    AtomSet, ConditionStatus, Config, OracleReport, ProperReport, Report, RunReport, Stability,
};

/// Everything `check` needs besides the files.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub mode: CheckMode,
    pub depth: Option<usize>,
    pub opts: CheckOptions,
    pub stability_check: bool,
    pub empirical: bool,
    pub semantics: Option<EngineSemantics>,
    pub budget: Budget,
    pub allow_nonproper: bool,
}

impl CheckConfig {
    pub fn new(mode: CheckMode) -> Self {
        CheckConfig {
            mode,
            depth: None,
            opts: CheckOptions::default(),
            stability_check: false,
            empirical: false,
            semantics: None,
            budget: Budget::default(),
            allow_nonproper: false,
        }
    }

    fn engine_semantics(&self) -> EngineSemantics {
        self.semantics.unwrap_or(match self.mode {
            CheckMode::Ks => EngineSemantics::Sldnf,
            CheckMode::Wfs | CheckMode::Stable => EngineSemantics::Sls,
        })
    }
}

pub fn mode_name(m: CheckMode) -> &'static str {
    match m {
        CheckMode::Ks => "ks",
        CheckMode::Wfs => "wfs",
        CheckMode::Stable => "stable",
    }
}

pub fn oracle_name(k: OracleKind) -> &'static str {
    match k {
        OracleKind::Lm => "lm",
        OracleKind::Fitting => "fitting",
        OracleKind::Wfs => "wfs",
        OracleKind::Stable => "stable",
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

/// Runs the checks of `mode` into `report` and returns their combined status.
fn run_checks(
    l: &Loaded,
    spec: &EvaluatedSpec,
    cfg: &CheckConfig,
    report: &mut Report,
) -> Result<Status> {
    let (p, u) = (&l.program, &l.universe);
    let status = match cfg.mode {
        CheckMode::Ks => {
            let r = check_correctness_ks(spec, p, u, &cfg.opts)?;
            let s = r.overall;
            report.add_correctness(r);
            s
        }
        CheckMode::Wfs => {
            let level = require_level(l.spec()?.level.as_ref())?;
            let r = check_correctness_wfs(spec, p, u, level, &cfg.opts)?;
            let s = r.overall;
            report.add_correctness(r);
            s
        }
        CheckMode::Stable => {
            let r = check_stable_proposition(spec, p, u, &cfg.opts)?;
            let s = r.verdict.status;
            report.checks.push(r.hypothesis.clone());
            report.checks.push(r.verdict.clone());
            report.stable = Some(r);
            s
        }
    };
    Ok(status)
}

pub fn check(program: &Path, spec: &Path, cfg: &CheckConfig) -> Result<Report> {
    let l = Loaded::new(program, Some(spec), cfg.depth)?;
    let config = Config {
        mode: Some(mode_name(cfg.mode).into()),
        program: Some(display(program)),
        spec: Some(display(spec)),
        depth: Some(l.depth()),
        witness_cap: Some(cfg.opts.witness_cap),
        stable_cap: Some(cfg.opts.stable_cap),
        stability_check: Some(cfg.stability_check),
        empirical: Some(cfg.empirical),
        semantics: cfg.empirical.then(|| cfg.engine_semantics().to_string()),
        budget: cfg.empirical.then_some(cfg.budget),
        allow_nonproper: Some(cfg.allow_nonproper),
        ..Config::default()
    };
    let mut report = Report::new("check", config);
    let evaluated = l.evaluate()?;
    report.warnings = evaluated
        .dropped
        .iter()
        .map(|a| format!("{a} lies outside HB({}) and was dropped", l.depth()))
        .collect();
    let mut statuses = vec![run_checks(&l, &evaluated, cfg, &mut report)?];

    let proper = check_proper(&evaluated, cfg.opts.witness_cap);
    report.properness = Some(ProperReport {
        proper: proper.proper,
        violations: proper.violations,
        witnesses: proper.witnesses.iter().map(|t| t.to_string()).collect(),
    });

    if cfg.stability_check {
        let deeper = l.deeper()?;
        let mut shadow = Report::new("check", Config::default());
        run_checks(&deeper, &deeper.evaluate()?, cfg, &mut shadow)?;
        let mut stability = Stability {
            depth: deeper.depth(),
            statuses: Vec::new(),
            flips: Vec::new(),
        };
        for (now, next) in report.checks.iter().zip(&shadow.checks) {
            stability.statuses.push(ConditionStatus {
                condition: next.condition.clone(),
                status: next.status,
            });
            if now.status != next.status {
                stability.flips.push(format!(
                    "{}: {} at depth {}, {} at depth {}",
                    now.condition, now.status, now.depth, next.status, next.depth
                ));
            }
        }
        if !stability.flips.is_empty() {
            statuses.push(Status::Inconclusive);
        }
        report.stability = Some(stability);
    }

    if cfg.empirical {
        let opts = SemiOptions {
            allow_nonproper: cfg.allow_nonproper,
            atoms: None,
        };
        let r = check_semi_completeness_empirical(
            &evaluated,
            &l.program,
            &l.universe,
            cfg.budget,
            cfg.engine_semantics(),
            &opts,
        )?;
        statuses.push(r.status);
        report.semi_completeness = Some(r);
    }

    report.set_status(Status::all(statuses));
    Ok(report)
}

pub fn oracle(
    kind: OracleKind,
    program: &Path,
    spec: Option<&Path>,
    depth: Option<usize>,
    stable_cap: usize,
) -> Result<Report> {
    let l = Loaded::new(program, spec, depth)?;
    let config = Config {
        mode: Some(oracle_name(kind).into()),
        program: Some(display(program)),
        spec: spec.map(display),
        depth: Some(l.depth()),
        stable_cap: (kind == OracleKind::Stable).then_some(stable_cap),
        ..Config::default()
    };
    let mut report = Report::new("oracle", config);
    let mut out = OracleReport {
        kind: oracle_name(kind).into(),
        depth: l.depth(),
        ground_atoms: None,
        model: None,
        true_atoms: None,
        undefined_atoms: None,
        false_atoms: None,
        models: None,
        iterations: None,
    };
    if kind == OracleKind::Lm {
        let m = least_model_bottom_up(&l.program, &l.universe)?;
        out.model = Some(AtomSet::new(&m));
        report.oracle = Some(out);
        return Ok(report);
    }
    let gp = GroundProgram::new(
        &ground_program(&l.program, &l.universe)?,
        std::iter::empty(),
    );
    out.ground_atoms = Some(gp.len());
    let three = match kind {
        OracleKind::Fitting => {
            let r = fitting_fixpoint(&gp, gp.len() + 1)?;
            out.iterations = Some(r.iterations);
            Some(r.interp)
        }
        OracleKind::Wfs => Some(well_founded_model(&gp)),
        _ => None,
    };
    if let Some(i) = three {
        let undefined: Vec<_> = gp
            .atoms()
            .filter(|a| !i.true_set.contains(*a) && !i.false_set.contains(*a))
            .collect();
        out.true_atoms = Some(AtomSet::new(&i.true_set));
        out.undefined_atoms = Some(AtomSet::new(undefined));
        out.false_atoms = Some(AtomSet::new(&i.false_set));
    } else {
        let models = stable_models(&gp, stable_cap)?;
        out.models = Some(models.iter().map(AtomSet::new).collect());
    }
    report.oracle = Some(out);
    Ok(report)
}

pub fn run(
    program: &Path,
    query: &str,
    semantics: EngineSemantics,
    budget: Budget,
    depth: Option<usize>,
    spec: Option<&Path>,
) -> Result<Report> {
    let l = Loaded::new(program, spec, depth)?;
    let q = parse_query(query)?;
    let config = Config {
        program: Some(display(program)),
        spec: spec.map(display),
        query: Some(query.to_string()),
        depth: (semantics == EngineSemantics::Sls).then(|| l.depth()),
        semantics: Some(semantics.to_string()),
        budget: Some(budget),
        ..Config::default()
    };
    let oracle = match semantics {
        EngineSemantics::Sls => Some(WfOracle::new(&l.program, &l.universe)?),
        EngineSemantics::Sldnf => None,
    };
    let mut engine = Engine::new(&l.program, semantics, budget);
    if let Some(o) = &oracle {
        engine = engine.with_oracle(o);
    }
    let tree = engine.main_tree(&q)?;
    let mut report = Report::new("run", config);
    report.run = Some(RunReport {
        outcome: tree.outcome.to_string(),
        answers: tree.answers().iter().map(|a| a.to_string()).collect(),
        tree,
    });
    Ok(report)
}
