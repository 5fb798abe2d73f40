//! Semi-naive evaluation of definite programs directly over a universe,
//! without materializing `ground(P, d)`.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::syntax::ground::InstanceSearch;
use crate::syntax::{AtomStore, GroundUniverse, Program, Subst, Term};

/// Least model of a definite program restricted to `HB(d)`. Head variables
/// not bound by the body range over their universe candidates.
pub fn least_model_bottom_up(p: &Program, u: &GroundUniverse) -> Result<BTreeSet<Term>> {
    if let Some(c) = p.clauses.iter().find(|c| !c.is_definite()) {
        return Err(Error::NonDefinite(c.to_string()));
    }
    let mut full = AtomStore::default();
    let mut delta = AtomStore::default();

    for c in p.clauses.iter().filter(|c| c.body.is_empty()) {
        let mut found = Vec::new();
        let mut search = InstanceSearch::new(u, c);
        let _ = search.run(Subst::new(), &mut |_, _| true, &mut |s| {
            found.push(c.head.apply(s));
            ControlFlow::Continue(())
        })?;
        for a in found {
            if full.insert(a.clone()) {
                delta.insert(a);
            }
        }
    }

    while !delta.is_empty() {
        let mut fresh = Vec::new();
        for c in p.clauses.iter().filter(|c| !c.body.is_empty()) {
            for j in 0..c.body.len() {
                let mut search = InstanceSearch::new(u, c)
                    .with_positive_source(&full)
                    .with_source(j, &delta);
                let _ = search.run(
                    Subst::new(),
                    &mut |role, a| role != crate::syntax::ground::Role::Head || !full.contains(a),
                    &mut |s| {
                        fresh.push(c.head.apply(s));
                        ControlFlow::Continue(())
                    },
                )?;
            }
        }
        let mut next = AtomStore::default();
        for a in fresh {
            if full.insert(a.clone()) {
                next.insert(a);
            }
        }
        delta = next;
    }
    Ok(full.iter().cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;
    use crate::syntax::term::Sym;

    #[test]
    fn ground_lists_of_bounded_depth() {
        let p = parse_program("list([]). list([_|T]) :- list(T).").unwrap();
        let mut u = GroundUniverse::for_program(&p, 3);
        let mut f = u.functions().clone();
        f.insert(Sym::new("a"), 0);
        u.add_functions(&f);
        let lm = least_model_bottom_up(&p, &u).unwrap();
        assert_eq!(lm.len(), 1 + 6 + 12);
        assert!(lm
            .iter()
            .all(|t| t.args()[0].list_len().is_some() && t.depth() <= 4));
    }

    #[test]
    fn transitive_closure() {
        let p =
            parse_program("e(a,b). e(b,c). t(X,Y) :- e(X,Y). t(X,Z) :- e(X,Y), t(Y,Z).").unwrap();
        let u = GroundUniverse::for_program(&p, 1);
        let lm = least_model_bottom_up(&p, &u).unwrap();
        assert_eq!(lm.len(), 5);
    }
}
