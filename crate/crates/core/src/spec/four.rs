//! Four-valued interpretations and their two-valued primed encoding.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::syntax::prime::{is_primed, unprime_atom};
use crate::syntax::{Clause, Formula, Query, Term};

/// Belnap truth value stored as a pair of bits: `t` present, `f` present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Truth4 {
    pub t: bool,
    pub f: bool,
}

impl Truth4 {
    pub const T: Truth4 = Truth4 { t: true, f: false };
    pub const F: Truth4 = Truth4 { t: false, f: true };
    pub const U: Truth4 = Truth4 { t: false, f: false };
    pub const TF: Truth4 = Truth4 { t: true, f: true };

    pub fn not(self) -> Truth4 {
        Truth4 {
            t: self.f,
            f: self.t,
        }
    }

    /// Greatest lower bound in the truth order.
    pub fn and(self, other: Truth4) -> Truth4 {
        Truth4 {
            t: self.t && other.t,
            f: self.f || other.f,
        }
    }

    /// `self ≼_t other`.
    pub fn truth_leq(self, other: Truth4) -> bool {
        (!self.t || other.t) && (self.f || !other.f)
    }
}

impl fmt::Display for Truth4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match (self.t, self.f) {
            (true, false) => "t",
            (false, true) => "f",
            (false, false) => "u",
            (true, true) => "tf",
        })
    }
}

/// A subset of `HB ∪ ¬HB`, kept as the atoms with `t` and those with `f`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FourValuedInterp {
    pub true_set: BTreeSet<Term>,
    pub false_set: BTreeSet<Term>,
}

impl FourValuedInterp {
    pub fn is_three_valued(&self) -> bool {
        self.true_set.is_disjoint(&self.false_set)
    }

    pub fn atom_value(&self, a: &Term) -> Truth4 {
        Truth4 {
            t: self.true_set.contains(a),
            f: self.false_set.contains(a),
        }
    }

    pub fn query_value(&self, q: &Query) -> Result<Truth4> {
        let mut v = Truth4::T;
        for l in q.literals() {
            if !l.atom.is_ground() {
                return Err(Error::NonGround(q.to_string()));
            }
            let a = self.atom_value(&l.atom);
            v = v.and(if l.positive { a } else { a.not() });
        }
        Ok(v)
    }

    pub fn truth_value(&self, f: &Formula) -> Result<Truth4> {
        match f {
            Formula::Query(q) => self.query_value(q),
            Formula::NotQuery(q) => Ok(self.query_value(q)?.not()),
        }
    }

    /// `I ⊨₄ F`: the value contains `t`.
    pub fn models4(&self, f: &Formula) -> Result<bool> {
        Ok(self.truth_value(f)?.t)
    }

    /// Atoms valued `tf`.
    pub fn inconsistent_atoms(&self) -> impl Iterator<Item = &Term> {
        self.true_set.intersection(&self.false_set)
    }
}

/// `I⁴(Snf, St) = St ∪ ¬(HB ∖ Snf)`.
pub fn make_i4_corr(snf: &BTreeSet<Term>, st: &BTreeSet<Term>, hb: &[Term]) -> FourValuedInterp {
    FourValuedInterp {
        true_set: st.clone(),
        false_set: hb.iter().filter(|a| !snf.contains(*a)).cloned().collect(),
    }
}

/// `I₄(Snf, St) = Snf ∪ ¬(HB ∖ St)`.
pub fn make_i4_compl(snf: &BTreeSet<Term>, st: &BTreeSet<Term>, hb: &[Term]) -> FourValuedInterp {
    FourValuedInterp {
        true_set: snf.clone(),
        false_set: hb.iter().filter(|a| !st.contains(*a)).cloned().collect(),
    }
}

/// The two-valued interpretation `X ∪ Y′`: unprimed atoms are looked up in
/// `x`, primed ones (with the prime erased) in `y`.
pub struct PrimedPair<'a> {
    pub x: &'a BTreeSet<Term>,
    pub y: &'a BTreeSet<Term>,
}

impl PrimedPair<'_> {
    pub fn atom(&self, a: &Term) -> bool {
        match a.functor() {
            Some((name, _)) if is_primed(name) => self.y.contains(&unprime_atom(a)),
            _ => self.x.contains(a),
        }
    }

    pub fn query(&self, q: &Query) -> bool {
        q.literals()
            .iter()
            .all(|l| self.atom(&l.atom) == l.positive)
    }

    pub fn formula(&self, f: &Formula) -> bool {
        match f {
            Formula::Query(q) => self.query(q),
            Formula::NotQuery(q) => !self.query(q),
        }
    }

    /// A ground clause holds when its body is false or its head true.
    pub fn clause(&self, c: &Clause) -> bool {
        !self.query(&Query(c.body.clone())) || self.atom(&c.head)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::prime::{prime_clause, prime_formula, PrimeMode};
    use crate::syntax::{parse_ground_atom, parse_program, parse_query};

    fn set(xs: &[&str]) -> BTreeSet<Term> {
        xs.iter().map(|s| parse_ground_atom(s).unwrap()).collect()
    }

    #[test]
    fn inconsistent_and_unknown_atoms() {
        let i = FourValuedInterp {
            true_set: set(&["p"]),
            false_set: set(&["p"]),
        };
        assert_eq!(i.atom_value(&parse_ground_atom("p").unwrap()), Truth4::TF);
        assert_eq!(i.atom_value(&parse_ground_atom("q").unwrap()), Truth4::U);
        assert_eq!(
            FourValuedInterp::default().atom_value(&parse_ground_atom("a").unwrap()),
            Truth4::U
        );
    }

    #[test]
    fn glb_table() {
        assert_eq!(Truth4::U.and(Truth4::TF), Truth4::F);
        assert_eq!(Truth4::T.and(Truth4::TF), Truth4::TF);
        assert_eq!(Truth4::TF.not(), Truth4::TF);
        assert!(Truth4::F.truth_leq(Truth4::U) && Truth4::U.truth_leq(Truth4::T));
        assert!(!Truth4::U.truth_leq(Truth4::TF) && !Truth4::TF.truth_leq(Truth4::U));
    }

    #[test]
    fn encoding_of_a_clause() {
        let (i, j) = (set(&["a", "c"]), set(&["c"]));
        let c = parse_program("a :- not b, c.").unwrap().clauses.remove(0);
        let pair = PrimedPair { x: &i, y: &j };
        assert!(pair.clause(&prime_clause(&c, PrimeMode::Negative).unwrap()));
        assert!(!pair.clause(&prime_clause(&c, PrimeMode::Positive).unwrap()));
    }

    #[test]
    fn models4_agrees_with_encoding() {
        let hb: Vec<Term> = ["a", "b", "c"]
            .iter()
            .map(|s| parse_ground_atom(s).unwrap())
            .collect();
        let (snf, st) = (set(&["a"]), set(&["a", "b"]));
        let i4 = make_i4_corr(&snf, &st, &hb);
        let pair = PrimedPair { x: &st, y: &snf };
        for q in ["a", "b", "c", "a, not c", "not b", "b, not a"] {
            let q = parse_query(q).unwrap();
            for f in [Formula::Query(q.clone()), Formula::NotQuery(q)] {
                let enc = prime_formula(&f, PrimeMode::Negative).unwrap();
                assert_eq!(i4.models4(&f).unwrap(), pair.formula(&enc), "{f}");
            }
        }
        assert_eq!(i4.inconsistent_atoms().count(), 1);
    }
}
