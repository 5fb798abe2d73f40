//! Primed copies of predicates: `F′` primes every negative literal, `F″`
//! every positive one (clause heads count as positive).

use super::ast::{Clause, Formula, Literal, Program, Query};
use super::term::{Sym, Term};
use crate::error::{Error, Result};

pub const PRIME: char = '\'';

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeMode {
    /// `F′`: negative literals use primed predicates.
    Negative,
    /// `F″`: positive literals use primed predicates.
    Positive,
}

pub fn is_primed(name: &Sym) -> bool {
    name.as_str().ends_with(PRIME)
}

pub fn primed(name: &Sym) -> Sym {
    if name.as_str() == "=" {
        return name.clone();
    }
    Sym::new(&format!("{name}{PRIME}"))
}

pub fn unprimed(name: &Sym) -> Sym {
    match name.as_str().strip_suffix(PRIME) {
        Some(base) => Sym::new(base),
        None => name.clone(),
    }
}

pub fn prime_atom(a: &Term) -> Term {
    match a.functor() {
        Some((name, _)) => a.with_functor(primed(name)),
        None => a.clone(),
    }
}

pub fn unprime_atom(a: &Term) -> Term {
    match a.functor() {
        Some((name, _)) => a.with_functor(unprimed(name)),
        None => a.clone(),
    }
}

fn check_atom(a: &Term) -> Result<()> {
    match a.functor() {
        Some((name, _)) if is_primed(name) => Err(Error::AlreadyPrimed(name.to_string())),
        _ => Ok(()),
    }
}

fn literal(l: &Literal, mode: PrimeMode) -> Result<Literal> {
    check_atom(&l.atom)?;
    let hit = match mode {
        PrimeMode::Negative => !l.positive,
        PrimeMode::Positive => l.positive,
    };
    Ok(Literal {
        positive: l.positive,
        atom: if hit {
            prime_atom(&l.atom)
        } else {
            l.atom.clone()
        },
    })
}

pub fn prime_clause(c: &Clause, mode: PrimeMode) -> Result<Clause> {
    check_atom(&c.head)?;
    let head = match mode {
        PrimeMode::Negative => c.head.clone(),
        PrimeMode::Positive => prime_atom(&c.head),
    };
    let body = c
        .body
        .iter()
        .map(|l| literal(l, mode))
        .collect::<Result<_>>()?;
    Ok(Clause { head, body })
}

pub fn prime_query(q: &Query, mode: PrimeMode) -> Result<Query> {
    Ok(Query(
        q.0.iter()
            .map(|l| literal(l, mode))
            .collect::<Result<_>>()?,
    ))
}

/// `¬Q` is treated as a negative literal around `Q`, so the polarity of
/// every literal inside flips.
pub fn prime_formula(f: &Formula, mode: PrimeMode) -> Result<Formula> {
    match f {
        Formula::Query(q) => Ok(Formula::Query(prime_query(q, mode)?)),
        Formula::NotQuery(q) => {
            let flipped = match mode {
                PrimeMode::Negative => PrimeMode::Positive,
                PrimeMode::Positive => PrimeMode::Negative,
            };
            Ok(Formula::NotQuery(prime_query(q, flipped)?))
        }
    }
}

pub fn prime_program(p: &Program, mode: PrimeMode) -> Result<Program> {
    let clauses = p
        .clauses
        .iter()
        .map(|c| prime_clause(c, mode))
        .collect::<Result<Vec<_>>>()?;
    Ok(Program::from_clauses(clauses))
}

pub fn unprime_clause(c: &Clause) -> Clause {
    Clause {
        head: unprime_atom(&c.head),
        body: c
            .body
            .iter()
            .map(|l| Literal {
                positive: l.positive,
                atom: unprime_atom(&l.atom),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parser::parse_program;

    fn clause(s: &str) -> Clause {
        parse_program(s).unwrap().clauses.remove(0)
    }

    #[test]
    fn single_and_double_prime() {
        let c = clause("a :- not b, c.");
        assert_eq!(
            prime_clause(&c, PrimeMode::Negative).unwrap().to_string(),
            "a :- not b', c."
        );
        assert_eq!(
            prime_clause(&c, PrimeMode::Positive).unwrap().to_string(),
            "a' :- not b, c'."
        );
    }

    #[test]
    fn facts_unchanged_by_negative_priming() {
        let c = clause("p(a).");
        assert_eq!(prime_clause(&c, PrimeMode::Negative).unwrap(), c);
    }

    #[test]
    fn priming_twice_is_an_error() {
        let c = clause("a :- not b, c.");
        let once = prime_clause(&c, PrimeMode::Negative).unwrap();
        assert_eq!(
            prime_clause(&once, PrimeMode::Negative),
            Err(Error::AlreadyPrimed("b'".into()))
        );
        assert_eq!(unprime_clause(&once), c);
    }
}
