use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("predicate {name} used with arity {found} at {line}:{col}, previously {expected}")]
    ArityConflict {
        name: String,
        expected: usize,
        found: usize,
        line: usize,
        col: usize,
    },

    #[error("query uses {name}/{found} but the program defines {name}/{expected}")]
    QueryArity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("input already contains primed predicate {0}")]
    AlreadyPrimed(String),

    #[error("{what} has {size} elements, above the cap of {cap}")]
    UniverseTooLarge {
        what: String,
        size: u128,
        cap: usize,
    },

    #[error("symbol {0} is not part of the ground universe")]
    UnknownSymbol(String),

    #[error("generator program `{0}` is not definite")]
    NonDefinite(String),

    #[error("query `{0}` is not ground")]
    NonGround(String),

    #[error("no level defined for atom {0}")]
    LevelUndefined(String),

    #[error("level measure {measure}({arg}) not applicable to atom {atom}")]
    LevelMeasure {
        measure: String,
        arg: usize,
        atom: String,
    },

    #[error("level values of width {found} mixed with width {expected}")]
    LevelWidth { expected: usize, found: usize },

    #[error("stable model search over {atoms} undecided atoms exceeds the cap of {cap}")]
    StableCapExceeded { atoms: usize, cap: usize },

    #[error("fixpoint not reached within {0} iterations")]
    IterationLimit(usize),

    #[error("budget field `{0}` must be positive")]
    ZeroBudget(&'static str),

    #[error("specification error: {0}")]
    Spec(String),

    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
