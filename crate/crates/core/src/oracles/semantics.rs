//! Least model, Fitting fixpoint, well-founded model and stable models of a
//! finite ground program.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::interp::{ThreeValuedInterp, Truth3};
use super::program::{GroundProgram, Rule};
use crate::error::{Error, Result};
use crate::syntax::Term;

pub const DEFAULT_STABLE_CAP: usize = 20;

/// Least Herbrand model of a definite ground program.
pub fn least_model(gp: &GroundProgram) -> Result<BTreeSet<Term>> {
    if let Some(r) = gp.rules.iter().find(|r| !r.neg.is_empty()) {
        return Err(Error::NonDefinite(format!(
            "rule for {} has a negative literal",
            gp.atom(r.head)
        )));
    }
    Ok(gp.to_set(&gp.least_model_where(|_| true)))
}

#[derive(Clone, Debug)]
pub struct FittingResult {
    pub interp: ThreeValuedInterp,
    /// Applications of the operator until the fixpoint was observed.
    pub iterations: usize,
}

fn body_value(r: &Rule, vals: &[Truth3]) -> Truth3 {
    let pos = r.pos.iter().map(|&a| vals[a as usize]);
    let neg = r.neg.iter().map(|&a| vals[a as usize].not());
    pos.chain(neg).min().unwrap_or(Truth3::T)
}

/// One application of the Fitting operator.
pub fn fitting_step(gp: &GroundProgram, vals: &[Truth3]) -> Vec<Truth3> {
    (0..gp.len())
        .map(|a| {
            gp.rules_for(a as u32)
                .iter()
                .map(|&ri| body_value(&gp.rules[ri], vals))
                .max()
                .unwrap_or(Truth3::F)
        })
        .collect()
}

fn to_interp(gp: &GroundProgram, vals: &[Truth3]) -> ThreeValuedInterp {
    let mut out = ThreeValuedInterp::default();
    for (i, v) in vals.iter().enumerate() {
        match v {
            Truth3::T => {
                out.true_set.insert(gp.atom(i as u32).clone());
            }
            Truth3::F => {
                out.false_set.insert(gp.atom(i as u32).clone());
            }
            Truth3::U => {}
        }
    }
    out
}

/// Every stage of the iteration from the all-undefined interpretation, the
/// last one being the fixpoint.
pub fn fitting_stages(gp: &GroundProgram, max_iters: usize) -> Result<Vec<ThreeValuedInterp>> {
    let mut vals = vec![Truth3::U; gp.len()];
    let mut stages = vec![to_interp(gp, &vals)];
    for _ in 0..=max_iters {
        let next = fitting_step(gp, &vals);
        if next == vals {
            return Ok(stages);
        }
        vals = next;
        stages.push(to_interp(gp, &vals));
    }
    Err(Error::IterationLimit(max_iters))
}

pub fn fitting_fixpoint(gp: &GroundProgram, max_iters: usize) -> Result<FittingResult> {
    let mut vals = vec![Truth3::U; gp.len()];
    for i in 0..=max_iters {
        let next = fitting_step(gp, &vals);
        if next == vals {
            return Ok(FittingResult {
                interp: to_interp(gp, &vals),
                iterations: i,
            });
        }
        vals = next;
    }
    Err(Error::IterationLimit(max_iters))
}

/// Well-founded model by the alternating fixpoint: underestimates `T` and
/// overestimates `O` of the true atoms, each the least model of the program
/// reduced against the other.
pub fn well_founded_model(gp: &GroundProgram) -> ThreeValuedInterp {
    let reduct = |reference: &[bool]| {
        gp.least_model_where(|r| r.neg.iter().all(|&b| !reference[b as usize]))
    };
    let mut over = vec![true; gp.len()];
    let mut under = vec![false; gp.len()];
    loop {
        let next_under = reduct(&over);
        let next_over = reduct(&next_under);
        if next_under == under && next_over == over {
            break;
        }
        under = next_under;
        over = next_over;
    }
    let mut out = ThreeValuedInterp::default();
    for i in 0..gp.len() {
        if under[i] {
            out.true_set.insert(gp.atom(i as u32).clone());
        } else if !over[i] {
            out.false_set.insert(gp.atom(i as u32).clone());
        }
    }
    out
}

/// `I = M_{P/I}`: `I` is the least model of its Gelfond-Lifschitz reduct.
pub fn is_stable(gp: &GroundProgram, bits: &[bool]) -> bool {
    gp.least_model_where(|r| r.neg.iter().all(|&b| !bits[b as usize])) == bits
}

/// All stable models, found by enumerating the atoms left undefined by the
/// well-founded model. Models are returned in canonical order.
pub fn stable_models(gp: &GroundProgram, cap: usize) -> Result<Vec<BTreeSet<Term>>> {
    let wf = well_founded_model(gp);
    let undecided: Vec<usize> = (0..gp.len())
        .filter(|&i| {
            let a = gp.atom(i as u32);
            !wf.true_set.contains(a) && !wf.false_set.contains(a)
        })
        .collect();
    if undecided.len() > cap || undecided.len() >= 63 {
        return Err(Error::StableCapExceeded {
            atoms: undecided.len(),
            cap,
        });
    }
    let base = gp.to_bits(&wf.true_set);
    let total: u64 = 1 << undecided.len();
    let mut models: Vec<BTreeSet<Term>> = (0..total)
        .into_par_iter()
        .filter_map(|mask| {
            let mut bits = base.clone();
            for (k, &i) in undecided.iter().enumerate() {
                bits[i] = mask >> k & 1 == 1;
            }
            is_stable(gp, &bits).then(|| gp.to_set(&bits))
        })
        .collect();
    models.sort();
    Ok(models)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_ground_atom, parse_program};

    fn gp(src: &str) -> GroundProgram {
        GroundProgram::new(&parse_program(src).unwrap().clauses, [])
    }

    fn names(s: &BTreeSet<Term>) -> Vec<String> {
        s.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn least_model_of_empty_program_is_empty() {
        assert!(least_model(&gp("")).unwrap().is_empty());
        assert!(least_model(&gp("a :- not b.")).is_err());
    }

    #[test]
    fn atom_without_rules_is_false() {
        let p = GroundProgram::new(&[], [parse_ground_atom("q").unwrap()]);
        let f = fitting_fixpoint(&p, 10).unwrap();
        assert_eq!(names(&f.interp.false_set), vec!["q"]);
    }

    #[test]
    fn self_negation_is_undefined() {
        let p = gp("a :- not a.");
        let wf = well_founded_model(&p);
        assert!(wf.true_set.is_empty() && wf.false_set.is_empty());
        assert!(stable_models(&p, 5).unwrap().is_empty());
    }

    #[test]
    fn win_on_a_single_move() {
        let p = gp("mov(a,b). w(a) :- mov(a,b), not w(b). w(b) :- mov(b,a), not w(a).");
        let wf = well_founded_model(&p);
        let w = |s| parse_ground_atom(s).unwrap();
        assert_eq!(wf.value(&w("w(a)")), Truth3::T);
        assert_eq!(wf.value(&w("w(b)")), Truth3::F);
    }

    #[test]
    fn two_stable_models_and_none() {
        let p = gp("a :- not b. b :- not a.");
        let m: Vec<Vec<String>> = stable_models(&p, 5).unwrap().iter().map(names).collect();
        assert_eq!(m, vec![vec!["a"], vec!["b"]]);
        let cyc = gp("a :- not b. b :- not c. c :- not a.");
        assert!(stable_models(&cyc, 5).unwrap().is_empty());
    }

    #[test]
    fn definite_programs_collapse() {
        let p = gp("p :- q. q. r :- s. s :- r.");
        let lm = least_model(&p).unwrap();
        let f = fitting_fixpoint(&p, 100).unwrap().interp;
        let wf = well_founded_model(&p);
        assert_eq!(f.true_set, lm);
        assert_eq!(wf.true_set, lm);
        assert_eq!(stable_models(&p, 5).unwrap(), vec![lm]);
        assert_eq!(f.value(&parse_ground_atom("r").unwrap()), Truth3::U);
        assert_eq!(wf.value(&parse_ground_atom("r").unwrap()), Truth3::F);
    }

    #[test]
    fn iteration_limit_is_reported() {
        let p = gp("a :- b. b :- c. c.");
        assert_eq!(
            fitting_fixpoint(&p, 1).unwrap_err(),
            Error::IterationLimit(1)
        );
        assert_eq!(fitting_stages(&p, 10).unwrap().len(), 4);
    }
}
