//! Sufficient conditions for correctness, coverage and the stable-model
//! proposition, checked over a depth-bounded universe.

pub mod correctness;
pub mod coverage;
pub mod primed;
pub mod stable;
pub mod verdict;

pub use correctness::{
    check_correctness_ks, check_correctness_wfs, require_level, CorrectnessReport, Semantics,
};
pub use coverage::{check_coverage, covered, covered_by, Cover};
pub use primed::{check_primed_model, primed_violations};
pub use stable::{check_stable_proposition, ModelInstance, StableReport};
pub use verdict::{CheckOptions, Status, Verdict, Witness, WitnessKind};

pub const KS_PRIMED: &str = "ks.primed-model";
pub const KS_COVERAGE: &str = "ks.coverage";
pub const WFS_PRIMED: &str = "wfs.primed-model";
pub const WFS_LEVELS: &str = "wfs.level-coverage";
pub const STABLE: &str = "stable.proposition";
