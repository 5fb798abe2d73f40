//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p lpspec-cli --test acceptance`.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{bail, ensure, Result};
use lpspec::checker::{
    check_correctness_ks, check_correctness_wfs, check_stable_proposition, covered, CheckOptions,
    Status,
};
use lpspec::engine::{
    check_semi_completeness_empirical, Budget, Engine, EngineSemantics, Outcome, SemiOptions,
    WfOracle,
};
use lpspec::oracles::semantics::fitting_step;
use lpspec::oracles::{
    fitting_fixpoint, fitting_stages, least_model, stable_models, well_founded_model,
    GroundProgram, ThreeValuedInterp, Truth3, DEFAULT_STABLE_CAP,
};
use lpspec::spec::{check_proper, EvaluatedSpec};
use lpspec::syntax::{
    ground_program, parse_ground_atom, parse_program, GroundUniverse, Pred, Program, Query, Sym,
    Term,
};
use lpspec_cli::load::Loaded;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMIT: Duration = Duration::from_secs(10);
const CASES: usize = 200;

fn corpus(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(file)
}

fn load(program: &str, spec: &str, depth: Option<usize>) -> Result<Loaded> {
    Loaded::new(&corpus(program), Some(&corpus(spec)), depth)
}

fn atom(s: &str) -> Term {
    parse_ground_atom(s).expect("well-formed atom")
}

fn opts() -> CheckOptions {
    CheckOptions::default()
}

fn ground(p: &Program, u: &GroundUniverse) -> Result<GroundProgram> {
    Ok(GroundProgram::new(&ground_program(p, u)?, u.hb()?))
}

fn fitting(gp: &GroundProgram) -> Result<ThreeValuedInterp> {
    Ok(fitting_fixpoint(gp, gp.len() + 1)?.interp)
}

fn outcome(
    p: &Program,
    a: &Term,
    sem: EngineSemantics,
    budget: Budget,
    oracle: Option<&WfOracle>,
) -> Result<Outcome> {
    let mut e = Engine::new(p, sem, budget);
    if let Some(o) = oracle {
        e = e.with_oracle(o);
    }
    Ok(e.main_tree(&Query::atom(a.clone()))?.outcome)
}

fn strings<'a>(xs: impl IntoIterator<Item = &'a Term>) -> BTreeSet<String> {
    xs.into_iter().map(|t| t.to_string()).collect()
}

fn facts(p: &Program, name: &str) -> Vec<(String, String)> {
    p.clauses
        .iter()
        .filter(|c| c.body.is_empty() && c.pred() == Pred::new(name, 2))
        .map(|c| (c.head.args()[0].to_string(), c.head.args()[1].to_string()))
        .collect()
}

fn numeral(i: usize) -> String {
    format!("{}0{}", "s(".repeat(i), ")".repeat(i))
}

fn odd() -> Result<()> {
    let l = load("odd.pl", "odd.spec", Some(6))?;
    let spec = l.evaluate()?;
    let r = check_correctness_ks(&spec, &l.program, &l.universe, &opts())?;
    ensure!(
        r.condition1.status == Status::Pass,
        "condition 1: {:?}",
        r.condition1
    );
    ensure!(
        r.condition2.status == Status::Pass,
        "condition 2: {:?}",
        r.condition2
    );

    let semi = check_semi_completeness_empirical(
        &spec,
        &l.program,
        &l.universe,
        Budget::default(),
        EngineSemantics::Sldnf,
        &SemiOptions::default(),
    )?;
    ensure!(semi.status == Status::Pass && semi.skipped.is_empty() && semi.violations.is_empty());
    for a in l.universe.hb_pred(&Pred::new("o", 1))? {
        let o = outcome(
            &l.program,
            &a,
            EngineSemantics::Sldnf,
            Budget::default(),
            None,
        )?;
        ensure!(o.is_decided(), "{a}: {o}");
    }

    let f = fitting(&ground(&l.program, &l.universe)?)?;
    for i in 0..l.depth() {
        let a = atom(&format!("o({})", numeral(i)));
        let want = if i % 2 == 1 { Truth3::T } else { Truth3::F };
        ensure!(f.value(&a) == want, "{a} = {:?}", f.value(&a));
    }
    Ok(())
}

fn member() -> Result<()> {
    let l = load("member.pl", "member.spec", None)?;
    ensure!(l.depth() == 3);
    let r = check_correctness_ks(&l.evaluate()?, &l.program, &l.universe, &opts())?;
    ensure!(r.condition1.status == Status::Pass && r.condition2.status == Status::Pass);

    let g = load("member_guard.pl", "member.spec", None)?;
    let w = covered(
        &atom("m(a,[c,a])"),
        &g.program.clauses[1],
        &g.evaluate()?,
        &g.universe,
    )?;
    let w = w.map(|c| c.to_string());
    ensure!(
        w.as_deref() == Some("m(a,[c,a]) :- m(a,[a]), not m(a,[b])."),
        "witness {w:?}"
    );

    let bad = load("member_bad_fact.pl", "member.spec", None)?;
    let r = check_correctness_ks(&bad.evaluate()?, &bad.program, &bad.universe, &opts())?;
    ensure!(
        r.condition1.status == Status::Fail,
        "bad fact: {:?}",
        r.condition1.status
    );

    let lp = load("member_loop.pl", "member.spec", None)?;
    for depth in [8, 16, 32] {
        let budget = Budget {
            depth,
            ..Budget::default()
        };
        for q in ["m(a,[a])", "m(a,[b,a])"] {
            let o = outcome(&lp.program, &atom(q), EngineSemantics::Sldnf, budget, None)?;
            ensure!(o == Outcome::BudgetExhausted, "{q} at depth {depth}: {o}");
        }
    }
    Ok(())
}

fn cycles() -> Result<()> {
    let l = load("cycles.pl", "cycles.spec", Some(1))?;
    let f = fitting(&ground(&l.program, &l.universe)?)?;
    for (a, v) in [
        ("p(a,b)", Truth3::T),
        ("p(c,a)", Truth3::F),
        ("p(a,c)", Truth3::U),
    ] {
        ensure!(f.value(&atom(a)) == v, "{a} = {:?}", f.value(&atom(a)));
    }

    let sldnf =
        |a: &str, budget| outcome(&l.program, &atom(a), EngineSemantics::Sldnf, budget, None);
    ensure!(sldnf("p(c,a)", Budget::default())? == Outcome::Failed);
    for depth in [8, 16, 32] {
        let o = sldnf(
            "p(a,c)",
            Budget {
                depth,
                ..Budget::default()
            },
        )?;
        ensure!(
            o == Outcome::BudgetExhausted,
            "p(a,c) at depth {depth}: {o}"
        );
    }

    let semi = check_semi_completeness_empirical(
        &l.evaluate()?,
        &l.program,
        &l.universe,
        Budget::default(),
        EngineSemantics::Sldnf,
        &SemiOptions::default(),
    )?;
    ensure!(
        semi.violations.is_empty(),
        "violations {:?}",
        semi.violations
    );
    let skipped: BTreeSet<&str> = semi.skipped.iter().map(|r| r.atom.as_str()).collect();
    let want: BTreeSet<&str> = ["p(a,a)", "p(a,b)", "p(a,c)", "p(b,a)", "p(b,b)", "p(b,c)"].into();
    ensure!(skipped == want, "skipped {skipped:?}");
    Ok(())
}

fn simple_paths(edges: &[(String, String)], from: &str, to: &str) -> BTreeSet<Vec<String>> {
    fn go(
        edges: &[(String, String)],
        path: &mut Vec<String>,
        to: &str,
        out: &mut BTreeSet<Vec<String>>,
    ) {
        let last = path.last().unwrap().clone();
        if last == to {
            out.insert(path.clone());
        }
        for (x, y) in edges {
            if *x == last && !path.contains(y) {
                path.push(y.clone());
                go(edges, path, to, out);
                path.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(edges, &mut vec![from.to_string()], to, &mut out);
    out
}

fn path() -> Result<()> {
    let l = load("path.pl", "path.spec", None)?;
    let r = check_correctness_ks(&l.evaluate()?, &l.program, &l.universe, &opts())?;
    ensure!(
        r.overall == Status::Pass,
        "{:?} / {:?}",
        r.condition1,
        r.condition2
    );

    let edges = facts(&l.program, "e");
    let nodes = ["a", "b", "c", "d"];
    let engine = Engine::new(&l.program, EngineSemantics::Sldnf, Budget::default());
    for x in nodes {
        for y in nodes {
            let q = lpspec::syntax::parse_query(&format!("p({x},{y},S,[])"))?;
            let tree = engine.main_tree(&q)?;
            ensure!(
                tree.outcome.is_decided(),
                "p({x},{y},S,[]): {}",
                tree.outcome
            );
            let got: BTreeSet<String> = tree.answers().iter().map(|a| a.to_string()).collect();
            let want: BTreeSet<String> = simple_paths(&edges, x, y)
                .into_iter()
                .map(|p| format!("p({x},{y},[{}],[])", p.join(",")))
                .collect();
            ensure!(got == want, "p({x},{y},S,[]): {got:?} != {want:?}");
        }
    }

    let c20 = load("path_c20.pl", "path.spec", None)?;
    let r = check_correctness_ks(&c20.evaluate()?, &c20.program, &c20.universe, &opts())?;
    ensure!(
        r.condition1.status == Status::Fail,
        "C20 condition 1: {:?}",
        r.condition1.status
    );
    Ok(())
}

fn reachable(edges: &[(String, String)], from: &str) -> BTreeSet<String> {
    let mut seen = BTreeSet::from([from.to_string()]);
    let mut todo = vec![from.to_string()];
    while let Some(x) = todo.pop() {
        for (a, b) in edges {
            if *a == x && seen.insert(b.clone()) {
                todo.push(b.clone());
            }
        }
    }
    seen
}

fn path2() -> Result<()> {
    let l = load("path2.pl", "path2.spec", None)?;
    let spec = l.evaluate()?;
    let level = l.spec()?.level.as_ref().expect("level table");
    let r = check_correctness_wfs(&spec, &l.program, &l.universe, level, &opts())?;
    ensure!(
        r.overall == Status::Pass,
        "{:?} / {:?}",
        r.condition1,
        r.condition2
    );

    let semi = check_semi_completeness_empirical(
        &spec,
        &l.program,
        &l.universe,
        Budget::default(),
        EngineSemantics::Sls,
        &SemiOptions::default(),
    )?;
    ensure!(semi.status == Status::Pass && semi.skipped.is_empty() && semi.violations.is_empty());

    let oracle = WfOracle::new(&l.program, &l.universe)?;
    let edges = facts(&l.program, "e");
    for a in l.universe.hb_pred(&Pred::new("p", 2))? {
        let (x, y) = (a.args()[0].to_string(), a.args()[1].to_string());
        let want = if reachable(&edges, &x).contains(&y) {
            Outcome::Success
        } else {
            Outcome::Failed
        };
        let o = outcome(
            &l.program,
            &a,
            EngineSemantics::Sls,
            Budget::default(),
            Some(&oracle),
        )?;
        ensure!(o == want, "{a}: {o}, expected {want}");
    }
    Ok(())
}

/// Retrograde analysis: won positions have a move to a lost one, lost
/// positions have only moves to won ones.
fn solve_game(
    nodes: &[String],
    moves: &[(String, String)],
) -> (BTreeSet<String>, BTreeSet<String>) {
    let mut won = BTreeSet::new();
    let mut lost = BTreeSet::new();
    loop {
        let mut changed = false;
        for n in nodes {
            if won.contains(n) || lost.contains(n) {
                continue;
            }
            let mut succ = moves.iter().filter(|(x, _)| x == n).map(|(_, y)| y);
            if succ.clone().any(|y| lost.contains(y)) {
                won.insert(n.clone());
                changed = true;
            } else if succ.all(|y| won.contains(y)) {
                lost.insert(n.clone());
                changed = true;
            }
        }
        if !changed {
            return (won, lost);
        }
    }
}

fn win() -> Result<()> {
    let l = load("win.pl", "win.spec", None)?;
    let spec = l.evaluate()?;
    let level = l.spec()?.level.as_ref().expect("level table");
    let r = check_correctness_wfs(&spec, &l.program, &l.universe, level, &opts())?;
    ensure!(
        r.overall == Status::Pass,
        "{:?} / {:?}",
        r.condition1,
        r.condition2
    );

    let nodes: Vec<String> = l.universe.hu(1)?.iter().map(|t| t.to_string()).collect();
    let (won, lost) = solve_game(&nodes, &facts(&l.program, "mov"));
    let oracle = WfOracle::new(&l.program, &l.universe)?;
    let mut drawn = BTreeSet::new();
    for n in &nodes {
        let a = atom(&format!("w({n})"));
        let o = outcome(
            &l.program,
            &a,
            EngineSemantics::Sls,
            Budget::default(),
            Some(&oracle),
        )?;
        if won.contains(n) {
            ensure!(o == Outcome::Success, "{a}: {o}");
        } else if lost.contains(n) {
            ensure!(o == Outcome::Failed, "{a}: {o}");
        } else {
            ensure!(!o.is_decided(), "{a} is drawn but {o}");
            ensure!(oracle.value(&a) == Some(Truth3::U), "{a} not undefined");
            drawn.insert(a.to_string());
        }
    }
    ensure!(!drawn.is_empty(), "game graph has no draw");

    let proper = check_proper(&spec, usize::MAX);
    ensure!(
        !proper.proper && strings(&proper.witnesses) == drawn,
        "properness {proper:?}"
    );

    let run = |allow_nonproper| {
        let o = SemiOptions {
            allow_nonproper,
            atoms: None,
        };
        check_semi_completeness_empirical(
            &spec,
            &l.program,
            &l.universe,
            Budget::default(),
            EngineSemantics::Sls,
            &o,
        )
    };
    ensure!(run(false)?.status == Status::Inconclusive);
    let semi = run(true)?;
    ensure!(semi.status == Status::Pass && semi.violations.is_empty() && semi.skipped.is_empty());
    let skipped: BTreeSet<String> = semi.nonproper_skipped.iter().cloned().collect();
    ensure!(skipped == drawn, "nonproper skips {skipped:?}");
    Ok(())
}

fn models(file: &str) -> Result<BTreeSet<BTreeSet<String>>> {
    let l = Loaded::new(&corpus(file), None, None)?;
    let gp = ground(&l.program, &l.universe)?;
    Ok(stable_models(&gp, DEFAULT_STABLE_CAP)?
        .iter()
        .map(strings)
        .collect())
}

fn stable() -> Result<()> {
    let two = models("stable2.pl")?;
    let want: BTreeSet<BTreeSet<String>> =
        [["a".to_string()].into(), ["b".to_string()].into()].into();
    ensure!(two == want, "stable2: {two:?}");
    let three = models("cycle3.pl")?;
    ensure!(three.is_empty(), "cycle3: {three:?}");

    for (p, s) in [
        ("stable2.pl", "stable2.spec"),
        ("cycle3.pl", "cycle3.spec"),
        ("cycle3.pl", "cycle3_b.spec"),
    ] {
        let l = load(p, s, None)?;
        let r = check_stable_proposition(&l.evaluate()?, &l.program, &l.universe, &opts())?;
        ensure!(
            r.hypothesis.status == Status::Pass,
            "{s}: hypothesis {:?}",
            r.hypothesis
        );
        ensure!(r.verdict.status == Status::Pass, "{s}: {:?}", r.verdict);
    }
    Ok(())
}

/// Random programs over constants `a`, `b`, unary `p`, `q`, `r` and nullary
/// `s`, `t`.
struct Gen {
    rng: ChaCha8Rng,
    universe: GroundUniverse,
}

const PREDS: [(&str, usize); 5] = [("p", 1), ("q", 1), ("r", 1), ("s", 0), ("t", 0)];
const ARGS: [&str; 4] = ["X", "Y", "a", "b"];

impl Gen {
    fn new(seed: u64) -> Self {
        let funcs: BTreeMap<Sym, usize> = [(Sym::new("a"), 0), (Sym::new("b"), 0)].into();
        let preds: BTreeMap<Sym, usize> = PREDS.iter().map(|(n, k)| (Sym::new(n), *k)).collect();
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            universe: GroundUniverse::new(funcs, preds, 1),
        }
    }

    fn atom(&mut self) -> String {
        let (name, arity) = PREDS[self.rng.gen_range(0..PREDS.len())];
        if arity == 0 {
            name.to_string()
        } else {
            format!("{name}({})", ARGS[self.rng.gen_range(0..ARGS.len())])
        }
    }

    fn program(&mut self, negation: bool) -> Program {
        let n = self.rng.gen_range(1..=6);
        let mut text = String::new();
        for _ in 0..n {
            text.push_str(&self.atom());
            let body: Vec<String> = (0..self.rng.gen_range(0..=3))
                .map(|_| {
                    let a = self.atom();
                    if negation && self.rng.gen_bool(0.35) {
                        format!("not {a}")
                    } else {
                        a
                    }
                })
                .collect();
            if !body.is_empty() {
                text.push_str(" :- ");
                text.push_str(&body.join(", "));
            }
            text.push_str(".\n");
        }
        parse_program(&text).expect("generated program parses")
    }

    /// A specification near the Fitting model of `gp`, each atom flipped
    /// with small probability.
    fn spec_near(&mut self, f: &ThreeValuedInterp, hb: &[Term]) -> EvaluatedSpec {
        let mut snf = BTreeSet::new();
        let mut st = BTreeSet::new();
        for a in hb {
            if f.true_set.contains(a) != self.rng.gen_bool(0.15) {
                snf.insert(a.clone());
            }
            if !f.false_set.contains(a) != self.rng.gen_bool(0.15) {
                st.insert(a.clone());
            }
        }
        EvaluatedSpec::from_sets(snf, st, 1)
    }

    fn ground(&self, p: &Program) -> Result<GroundProgram> {
        ground(p, &self.universe)
    }
}

fn values(gp: &GroundProgram, i: &ThreeValuedInterp) -> Vec<Truth3> {
    (0..gp.len()).map(|a| i.value(gp.atom(a as u32))).collect()
}

fn phi_monotone(g: &mut Gen) -> Result<()> {
    let p = g.program(true);
    let gp = g.ground(&p)?;
    let stages = fitting_stages(&gp, gp.len() + 1)?;
    for w in stages.windows(2) {
        ensure!(
            w[0].info_leq(&w[1]),
            "stages not increasing: {:?} then {:?}",
            w[0],
            w[1]
        );
    }
    let fix = values(&gp, stages.last().unwrap());
    ensure!(fitting_step(&gp, &fix) == fix, "fixpoint not idempotent");

    let upper: Vec<Truth3> = (0..gp.len())
        .map(|_| [Truth3::T, Truth3::F, Truth3::U][g.rng.gen_range(0..3)])
        .collect();
    let lower: Vec<Truth3> = upper
        .iter()
        .map(|&v| if g.rng.gen_bool(0.5) { Truth3::U } else { v })
        .collect();
    let (pl, pu) = (fitting_step(&gp, &lower), fitting_step(&gp, &upper));
    for (a, b) in pl.iter().zip(&pu) {
        ensure!(
            *a == Truth3::U || a == b,
            "operator not monotone: {pl:?} vs {pu:?}"
        );
    }
    Ok(())
}

fn wf_extends_fitting(g: &mut Gen) -> Result<()> {
    let p = g.program(true);
    let gp = g.ground(&p)?;
    let (f, w) = (fitting(&gp)?, well_founded_model(&gp));
    ensure!(
        w.is_consistent() && f.info_leq(&w),
        "fitting {f:?} not below wf {w:?}"
    );
    Ok(())
}

fn stable_sandwiched(g: &mut Gen) -> Result<()> {
    let p = g.program(true);
    let gp = g.ground(&p)?;
    let w = well_founded_model(&gp);
    for m in stable_models(&gp, DEFAULT_STABLE_CAP)? {
        ensure!(
            w.true_set.is_subset(&m) && w.false_set.is_disjoint(&m),
            "stable {m:?} outside wf {w:?}"
        );
    }
    Ok(())
}

fn definite_collapse(g: &mut Gen) -> Result<()> {
    let p = g.program(false);
    let gp = g.ground(&p)?;
    let lm = least_model(&gp)?;
    let rest: BTreeSet<Term> = gp.atoms().filter(|a| !lm.contains(*a)).cloned().collect();
    let f = fitting(&gp)?;
    ensure!(
        f.true_set == lm && f.false_set.is_subset(&rest),
        "fitting {f:?} vs lm {lm:?}"
    );
    let w = well_founded_model(&gp);
    ensure!(
        w.true_set == lm && w.false_set == rest,
        "wf {w:?} vs lm {lm:?}"
    );
    let sm = stable_models(&gp, DEFAULT_STABLE_CAP)?;
    ensure!(sm == vec![lm.clone()], "stable {sm:?} vs lm {lm:?}");
    Ok(())
}

/// Runs `f` on random program/spec pairs that pass the KS checker, returning
/// how many pairs were drawn to get `CASES` passing ones.
fn for_correct_pairs(
    g: &mut Gen,
    mut f: impl FnMut(&Program, &EvaluatedSpec, &ThreeValuedInterp) -> Result<()>,
) -> Result<usize> {
    let hb = g.universe.hb()?;
    let (mut passed, mut drawn) = (0, 0);
    while passed < CASES {
        drawn += 1;
        ensure!(
            drawn <= 50 * CASES,
            "only {passed} passing pairs in {drawn} draws"
        );
        let p = g.program(true);
        let fit = fitting(&g.ground(&p)?)?;
        let spec = g.spec_near(&fit, &hb);
        if check_correctness_ks(&spec, &p, &g.universe, &opts())?.overall == Status::Pass {
            passed += 1;
            f(&p, &spec, &fit).map_err(|e| anyhow::anyhow!("{e}\nprogram:\n{}", render(&p)))?;
        }
    }
    Ok(drawn)
}

fn render(p: &Program) -> String {
    p.clauses.iter().map(|c| format!("{c}\n")).collect()
}

fn oracle_sound(g: &mut Gen) -> Result<usize> {
    for_correct_pairs(g, |_, spec, fit| {
        ensure!(fit.true_set.is_subset(&spec.st), "true atom outside St");
        ensure!(fit.false_set.is_disjoint(&spec.snf), "false atom in Snf");
        Ok(())
    })
}

fn engine_semi_complete(g: &mut Gen) -> Result<usize> {
    let u = g.universe.clone();
    let budget = Budget {
        depth: 32,
        nodes: 5_000,
        rank: 16,
    };
    let o = SemiOptions {
        allow_nonproper: true,
        atoms: None,
    };
    for_correct_pairs(g, |p, spec, _| {
        let r = check_semi_completeness_empirical(spec, p, &u, budget, EngineSemantics::Sldnf, &o)?;
        ensure!(r.violations.is_empty(), "violations {:?}", r.violations);
        Ok(())
    })
}

fn properties() -> Result<()> {
    let suites: [(&str, fn(&mut Gen) -> Result<()>); 4] = [
        (
            "fitting iteration monotone, fixpoint idempotent",
            phi_monotone,
        ),
        ("wf extends fitting", wf_extends_fitting),
        ("stable models between wf bounds", stable_sandwiched),
        ("definite programs collapse", definite_collapse),
    ];
    for (seed, (name, f)) in suites.iter().enumerate() {
        let mut g = Gen::new(seed as u64);
        for case in 0..CASES {
            f(&mut g).map_err(|e| anyhow::anyhow!("{name}, case {case}: {e}"))?;
        }
        println!("  {name}: {CASES} cases");
    }
    let drawn = oracle_sound(&mut Gen::new(10))?;
    println!("  checker pass implies oracle inclusions: {CASES} passing pairs of {drawn}");
    let drawn = engine_semi_complete(&mut Gen::new(11))?;
    println!("  checker pass implies engine semi-completeness: {CASES} passing pairs of {drawn}");
    Ok(())
}

fn determinism() -> Result<()> {
    let manifest = corpus("manifest.toml");
    let first = lpspec_cli::corpus::corpus(&manifest)?.to_json();
    let second = lpspec_cli::corpus::corpus(&manifest)?.to_json();
    if first != second {
        let line = first.lines().zip(second.lines()).position(|(a, b)| a != b);
        bail!("reports differ (first differing line {line:?})");
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Result<()>); 9] = [
        ("ODD under KS", odd),
        ("member and its wrong choices", member),
        ("cycles: semi-complete, not complete", cycles),
        ("PATH simple paths", path),
        ("PATH2 under WFS", path2),
        ("WIN game", win),
        ("stable models", stable),
        ("property suites", properties),
        ("deterministic corpus reports", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(anyhow::anyhow!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure!(
                elapsed < LIMIT,
                "took {:.2}s, limit {}s",
                elapsed.as_secs_f64(),
                LIMIT.as_secs()
            );
            Ok(())
        });
        match result {
            Ok(()) => println!(
                "PASS criterion {}: {name} ({:.2}s)",
                i + 1,
                elapsed.as_secs_f64()
            ),
            Err(e) => {
                failed += 1;
                println!(
                    "FAIL criterion {}: {name} ({:.2}s): {e:#}",
                    i + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
