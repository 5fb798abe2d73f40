use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::syntax::{Query, Term};

/// Kleene truth values ordered `f < u < t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth3 {
    F,
    U,
    T,
}

impl Truth3 {
    pub fn not(self) -> Truth3 {
        match self {
            Truth3::F => Truth3::T,
            Truth3::U => Truth3::U,
            Truth3::T => Truth3::F,
        }
    }
}

impl fmt::Display for Truth3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth3::F => "f",
            Truth3::U => "u",
            Truth3::T => "t",
        })
    }
}

/// A 3-valued Herbrand interpretation; atoms in neither set are undefined.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThreeValuedInterp {
    pub true_set: BTreeSet<Term>,
    pub false_set: BTreeSet<Term>,
}

impl ThreeValuedInterp {
    pub fn value(&self, a: &Term) -> Truth3 {
        if self.true_set.contains(a) {
            Truth3::T
        } else if self.false_set.contains(a) {
            Truth3::F
        } else {
            Truth3::U
        }
    }

    /// Value of a ground conjunction (minimum of its literals).
    pub fn query_value(&self, q: &Query) -> Truth3 {
        q.literals()
            .iter()
            .map(|l| {
                let v = self.value(&l.atom);
                if l.positive {
                    v
                } else {
                    v.not()
                }
            })
            .min()
            .unwrap_or(Truth3::T)
    }

    /// `I ⊨₃ Q`.
    pub fn models(&self, q: &Query) -> bool {
        self.query_value(q) == Truth3::T
    }

    /// `I ⊨₃ ¬Q`.
    pub fn models_not(&self, q: &Query) -> bool {
        self.query_value(q) == Truth3::F
    }

    /// Information order: every decided atom of `self` is decided the same
    /// way in `other`.
    pub fn info_leq(&self, other: &ThreeValuedInterp) -> bool {
        self.true_set.is_subset(&other.true_set) && self.false_set.is_subset(&other.false_set)
    }

    pub fn is_consistent(&self) -> bool {
        self.true_set.is_disjoint(&self.false_set)
    }
}
