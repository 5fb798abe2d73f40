//! Main SLDNF- and SLS-trees under the leftmost selection rule, and the
//! empirical semi-completeness check built on them.

pub mod build;
pub mod semi;
pub mod tree;
pub mod unify;

pub use build::{build_main_tree, Engine, WfOracle};
pub use semi::{
    check_semi_completeness_empirical, AtomResult, Requirement, SemiCompletenessReport, SemiOptions,
};
pub use tree::{
    answers, Budget, Decision, Edge, EngineSemantics, MainTree, Node, NodeStatus, Outcome,
    Subsidiary,
};
pub use unify::{is_instance, mgu, unify_in};
