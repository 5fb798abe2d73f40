//! Verification and reference semantics for normal logic programs.

pub mod checker;
pub mod engine;
pub mod error;
pub mod oracles;
pub mod spec;
pub mod syntax;

pub use error::{Error, Result};
