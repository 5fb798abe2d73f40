use std::collections::{BTreeMap, BTreeSet};

use lpspec::checker::{check_correctness_ks, CheckOptions, Status};
use lpspec::engine::{check_semi_completeness_empirical, Budget, EngineSemantics, SemiOptions};
use lpspec::oracles::semantics::fitting_step;
use lpspec::oracles::{
    fitting_fixpoint, fitting_stages, least_model, least_model_bottom_up, stable_models,
    well_founded_model, GroundProgram, ThreeValuedInterp, Truth3, DEFAULT_STABLE_CAP,
};
use lpspec::spec::EvaluatedSpec;
use lpspec::syntax::{ground_program, parse_program, GroundUniverse, Program, Sym, Term};
use proptest::prelude::*;

const PREDS: [(&str, usize); 5] = [("p", 1), ("q", 1), ("r", 1), ("s", 0), ("t", 0)];
const ARGS: [&str; 4] = ["X", "Y", "a", "b"];

fn universe() -> GroundUniverse {
    let funcs: BTreeMap<Sym, usize> = [(Sym::new("a"), 0), (Sym::new("b"), 0)].into();
    let preds: BTreeMap<Sym, usize> = PREDS.iter().map(|(n, k)| (Sym::new(n), *k)).collect();
    GroundUniverse::new(funcs, preds, 1)
}

fn atom() -> impl Strategy<Value = String> {
    (0..PREDS.len(), 0..ARGS.len()).prop_map(|(p, a)| match PREDS[p] {
        (name, 0) => name.to_string(),
        (name, _) => format!("{name}({})", ARGS[a]),
    })
}

fn literal(negation: bool) -> impl Strategy<Value = String> {
    let neg = if negation { 0.35 } else { 0.0 };
    (atom(), proptest::bool::weighted(neg))
        .prop_map(|(a, n)| if n { format!("not {a}") } else { a })
}

fn program(negation: bool) -> impl Strategy<Value = Program> {
    let clause = (atom(), prop::collection::vec(literal(negation), 0..=3)).prop_map(|(h, body)| {
        if body.is_empty() {
            format!("{h}.")
        } else {
            format!("{h} :- {}.", body.join(", "))
        }
    });
    prop::collection::vec(clause, 1..=6).prop_map(|cs| parse_program(&cs.join("\n")).unwrap())
}

fn ground(p: &Program, u: &GroundUniverse) -> GroundProgram {
    GroundProgram::new(&ground_program(p, u).unwrap(), u.hb().unwrap())
}

fn fitting(gp: &GroundProgram) -> ThreeValuedInterp {
    fitting_fixpoint(gp, gp.len() + 1).unwrap().interp
}

fn values(gp: &GroundProgram, i: &ThreeValuedInterp) -> Vec<Truth3> {
    (0..gp.len()).map(|a| i.value(gp.atom(a as u32))).collect()
}

fn truth() -> impl Strategy<Value = Truth3> {
    prop_oneof![Just(Truth3::T), Just(Truth3::F), Just(Truth3::U)]
}

/// A specification obtained from the Fitting model by flipping the atoms
/// selected in `snf_flips` and `st_flips`.
fn near_fitting(
    f: &ThreeValuedInterp,
    hb: &[Term],
    snf_flips: &[bool],
    st_flips: &[bool],
) -> EvaluatedSpec {
    let mut snf = BTreeSet::new();
    let mut st = BTreeSet::new();
    for (i, a) in hb.iter().enumerate() {
        if f.true_set.contains(a) != snf_flips[i % snf_flips.len()] {
            snf.insert(a.clone());
        }
        if !f.false_set.contains(a) != st_flips[i % st_flips.len()] {
            st.insert(a.clone());
        }
    }
    EvaluatedSpec::from_sets(snf, st, 1)
}

fn flips() -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(proptest::bool::weighted(0.15), 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fitting_stages_increase_and_fixpoint_is_stable(p in program(true)) {
        let gp = ground(&p, &universe());
        let stages = fitting_stages(&gp, gp.len() + 1).unwrap();
        for w in stages.windows(2) {
            prop_assert!(w[0].info_leq(&w[1]));
        }
        let fix = values(&gp, stages.last().unwrap());
        prop_assert_eq!(fitting_step(&gp, &fix), fix);
    }

    #[test]
    fn fitting_operator_is_monotone(
        p in program(true),
        upper in prop::collection::vec(truth(), 8),
        forget in prop::collection::vec(any::<bool>(), 8),
    ) {
        let gp = ground(&p, &universe());
        let upper: Vec<Truth3> = (0..gp.len()).map(|i| upper[i % 8]).collect();
        let lower: Vec<Truth3> = upper
            .iter()
            .enumerate()
            .map(|(i, &v)| if forget[i % 8] { Truth3::U } else { v })
            .collect();
        let (l, u) = (fitting_step(&gp, &lower), fitting_step(&gp, &upper));
        for (a, b) in l.iter().zip(&u) {
            prop_assert!(*a == Truth3::U || a == b);
        }
    }

    #[test]
    fn well_founded_extends_fitting(p in program(true)) {
        let gp = ground(&p, &universe());
        let w = well_founded_model(&gp);
        prop_assert!(w.is_consistent());
        prop_assert!(fitting(&gp).info_leq(&w));
    }

    #[test]
    fn stable_models_lie_between_wf_bounds(p in program(true)) {
        let gp = ground(&p, &universe());
        let w = well_founded_model(&gp);
        for m in stable_models(&gp, DEFAULT_STABLE_CAP).unwrap() {
            prop_assert!(w.true_set.is_subset(&m));
            prop_assert!(w.false_set.is_disjoint(&m));
        }
    }

    #[test]
    fn definite_programs_collapse(p in program(false)) {
        let u = universe();
        let gp = ground(&p, &u);
        let lm = least_model(&gp).unwrap();
        let rest: BTreeSet<Term> = gp.atoms().filter(|a| !lm.contains(*a)).cloned().collect();
        let f = fitting(&gp);
        prop_assert_eq!(&f.true_set, &lm);
        prop_assert!(f.false_set.is_subset(&rest));
        let w = well_founded_model(&gp);
        prop_assert_eq!(&w.true_set, &lm);
        prop_assert_eq!(&w.false_set, &rest);
        prop_assert_eq!(stable_models(&gp, DEFAULT_STABLE_CAP).unwrap(), vec![lm.clone()]);
        prop_assert_eq!(least_model_bottom_up(&p, &u).unwrap(), lm);
    }

    #[test]
    fn passing_ks_check_bounds_the_fitting_model(p in program(true), a in flips(), b in flips()) {
        let u = universe();
        let hb = u.hb().unwrap();
        let f = fitting(&ground(&p, &u));
        let spec = near_fitting(&f, &hb, &a, &b);
        let r = check_correctness_ks(&spec, &p, &u, &CheckOptions::default()).unwrap();
        if r.overall == Status::Pass {
            prop_assert!(f.true_set.is_subset(&spec.st));
            prop_assert!(f.false_set.is_disjoint(&spec.snf));
        }
    }

    #[test]
    fn passing_ks_check_gives_sldnf_semi_completeness(p in program(true), a in flips(), b in flips()) {
        let u = universe();
        let hb = u.hb().unwrap();
        let f = fitting(&ground(&p, &u));
        let spec = near_fitting(&f, &hb, &a, &b);
        let r = check_correctness_ks(&spec, &p, &u, &CheckOptions::default()).unwrap();
        if r.overall == Status::Pass {
            let budget = Budget { depth: 32, nodes: 5_000, rank: 16 };
            let opts = SemiOptions { allow_nonproper: true, atoms: None };
            let semi = check_semi_completeness_empirical(&spec, &p, &u, budget, EngineSemantics::Sldnf, &opts).unwrap();
            prop_assert!(semi.violations.is_empty(), "{:?}", semi.violations);
        }
    }
}

#[test]
fn fitting_model_itself_passes_the_ks_check() {
    let u = universe();
    let hb = u.hb().unwrap();
    let p = parse_program("p(X) :- not q(X). q(a). r(Y) :- r(Y). s :- not t, p(b).").unwrap();
    let f = fitting(&ground(&p, &u));
    let spec = near_fitting(&f, &hb, &[false], &[false]);
    let r = check_correctness_ks(&spec, &p, &u, &CheckOptions::default()).unwrap();
    assert_eq!(r.overall, Status::Pass);
}
