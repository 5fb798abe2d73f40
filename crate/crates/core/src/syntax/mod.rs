//! Abstract syntax, parsing, grounding and primed transforms.

pub mod ast;
pub mod ground;
pub mod lexer;
pub mod parser;
pub mod prime;
pub mod term;
pub mod universe;

pub use ast::{Clause, Formula, Literal, Program, Query};
pub use ground::{ground_program, AtomStore};
pub use parser::{parse_ground_atom, parse_program, parse_query, parse_term};
pub use term::{Pred, Subst, Sym, Term, Var};
pub use universe::{GroundUniverse, SortExpr, UniverseDecl};
