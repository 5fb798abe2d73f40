use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    /// Combines sub-verdicts: any failure fails, otherwise any
    /// inconclusive result is inconclusive.
    pub fn all(xs: impl IntoIterator<Item = Status>) -> Status {
        xs.into_iter().fold(Status::Pass, |acc, s| match (acc, s) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        })
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// A ground clause instance violating the primed-model condition.
    Instance,
    /// An atom of `Snf` no clause covers.
    Uncovered,
    /// An atom of `Snf` covered only by instances without a level decrease.
    LevelViolation,
    /// A stable model contradicting the proposition.
    StableModel,
    /// An atom of `Snf ∖ St`.
    NonProper,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Witness {
    pub fn new(kind: WitnessKind, text: impl Into<String>) -> Self {
        Witness {
            kind,
            text: text.into(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text)?;
        if let Some(n) = &self.note {
            write!(f, "  [{n}]")?;
        }
        Ok(())
    }
}

/// Outcome of one condition at depth `depth`. A failing verdict carries at
/// least one witness and a passing one none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub condition: String,
    pub status: Status,
    pub depth: usize,
    /// Items examined: instances, atoms or models depending on the check.
    pub checked: u64,
    /// Total number of counterexamples found, of which at most the witness
    /// cap are listed.
    pub violations: u64,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(condition: &str, depth: usize) -> Self {
        Verdict {
            condition: condition.to_string(),
            status: Status::Pass,
            depth,
            checked: 0,
            violations: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn inconclusive(condition: &str, depth: usize, why: impl Into<String>) -> Self {
        let mut v = Verdict::new(condition, depth);
        v.status = Status::Inconclusive;
        v.notes.push(why.into());
        v
    }

    /// Sorts witnesses, truncates them to `cap` and sets the status.
    pub fn finish(mut self, mut witnesses: Vec<Witness>, cap: usize) -> Self {
        witnesses.sort();
        witnesses.dedup();
        self.violations = self.violations.max(witnesses.len() as u64);
        witnesses.truncate(cap.max(1));
        if !witnesses.is_empty() {
            self.status = Status::Fail;
        }
        self.witnesses = witnesses;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub witness_cap: usize,
    pub stable_cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            witness_cap: 5,
            stable_cap: crate::oracles::DEFAULT_STABLE_CAP,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_and_exit_codes() {
        assert_eq!(
            Status::all([Status::Pass, Status::Inconclusive]),
            Status::Inconclusive
        );
        assert_eq!(
            Status::all([Status::Inconclusive, Status::Fail]),
            Status::Fail
        );
        assert_eq!(Status::all([]), Status::Pass);
        assert_eq!(Status::Inconclusive.exit_code(), 2);
    }

    #[test]
    fn finish_sets_status_from_witnesses() {
        let v = Verdict::new("c", 3).finish(vec![], 5);
        assert_eq!(v.status, Status::Pass);
        let w = (0..8)
            .map(|i| Witness::new(WitnessKind::Uncovered, format!("p({i})")))
            .collect();
        let v = Verdict::new("c", 3).finish(w, 5);
        assert_eq!(
            (v.status, v.witnesses.len(), v.violations),
            (Status::Fail, 5, 8)
        );
    }
}
