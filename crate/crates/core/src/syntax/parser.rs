//! Recursive-descent parser for clauses, queries and terms.

use std::collections::BTreeMap;

use super::ast::{Clause, Literal, Program, Query};
use super::lexer::{tokenize, Tok, Token};
use super::term::{Sym, Term, Var, ANON};
use crate::error::{Error, Result};

pub const NOT: &str = "not";

pub fn parse_program(text: &str) -> Result<Program> {
    let mut p = Parser::new(text)?;
    let mut clauses = Vec::new();
    while !p.at_eof() {
        clauses.push(p.clause()?);
    }
    Ok(p.finish(clauses))
}

/// Parses a conjunction such as `p(X), not q(X)`; a trailing `.` is optional
/// and the single word `true` denotes the empty query.
pub fn parse_query(text: &str) -> Result<Query> {
    let mut p = Parser::new(text)?;
    p.begin_clause();
    let q = if matches!(p.peek(), Tok::Name(n) if n == "true")
        && matches!(p.peek_at(1), Tok::Eof | Tok::Punct('.'))
    {
        p.bump();
        Query::default()
    } else {
        Query(p.literals()?)
    };
    p.eat_punct('.');
    p.expect_eof()?;
    Ok(q)
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text)?;
    p.begin_clause();
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

/// Parses a single ground atom, with an optional terminating `.`.
pub fn parse_ground_atom(text: &str) -> Result<Term> {
    let mut p = Parser::new(text)?;
    p.begin_clause();
    let (line, col) = p.pos();
    let a = p.atom()?;
    p.eat_punct('.');
    p.expect_eof()?;
    if !a.is_ground() {
        return Err(Error::Syntax {
            line,
            col,
            msg: format!("atom `{a}` is not ground"),
        });
    }
    Ok(a)
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
    anon: u32,
    preds: BTreeMap<Sym, usize>,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            anon: 0,
            preds: BTreeMap::new(),
        })
    }

    pub(crate) fn finish(&mut self, clauses: Vec<Clause>) -> Program {
        Program {
            clauses,
            predicates: std::mem::take(&mut self.preds),
        }
    }

    pub(crate) fn reset_preds(&mut self) {
        self.preds.clear();
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub(crate) fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub(crate) fn pos(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub(crate) fn at_punct(&self, c: char) -> bool {
        matches!(self.peek(), Tok::Punct(p) if *p == c)
    }

    pub(crate) fn eat_punct(&mut self, c: char) -> bool {
        if self.at_punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.pos();
        Err(Error::Syntax {
            line,
            col,
            msg: msg.into(),
        })
    }

    pub(crate) fn expect_punct(&mut self, c: char) -> Result<()> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", describe(self.peek())))
        }
    }

    pub(crate) fn expect_eof(&self) -> Result<()> {
        if self.at_eof() {
            Ok(())
        } else {
            self.error(format!("unexpected {}", describe(self.peek())))
        }
    }

    pub(crate) fn name(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.bump();
                Ok(n)
            }
            other => self.error(format!("expected a name, found {}", describe(&other))),
        }
    }

    pub(crate) fn natural(&mut self) -> Result<u64> {
        match self.peek().clone() {
            Tok::Name(n) if n.chars().all(|c| c.is_ascii_digit()) => match n.parse() {
                Ok(v) => {
                    self.bump();
                    Ok(v)
                }
                Err(_) => self.error(format!("number `{n}` out of range")),
            },
            other => self.error(format!(
                "expected a natural number, found {}",
                describe(&other)
            )),
        }
    }

    pub(crate) fn string(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Str(s) => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected a string, found {}", describe(&other))),
        }
    }

    pub(crate) fn begin_clause(&mut self) {
        self.anon = 0;
    }

    pub(crate) fn clause(&mut self) -> Result<Clause> {
        self.begin_clause();
        let head = self.atom()?;
        let body = if matches!(self.peek(), Tok::Neck) {
            self.bump();
            self.literals()?
        } else {
            Vec::new()
        };
        self.expect_punct('.')?;
        Ok(Clause { head, body })
    }

    pub(crate) fn literals(&mut self) -> Result<Vec<Literal>> {
        let mut out = vec![self.literal()?];
        while self.eat_punct(',') {
            out.push(self.literal()?);
        }
        Ok(out)
    }

    fn literal(&mut self) -> Result<Literal> {
        if matches!(self.peek(), Tok::Name(n) if n == NOT) {
            self.bump();
            if self.eat_punct('(') {
                let a = self.atom()?;
                self.expect_punct(')')?;
                return Ok(Literal::neg(a));
            }
            return Ok(Literal::neg(self.atom()?));
        }
        Ok(Literal::pos(self.atom()?))
    }

    /// An atom in predicate position; records and checks the arity.
    pub(crate) fn atom(&mut self) -> Result<Term> {
        let (line, col) = self.pos();
        let name = match self.peek().clone() {
            Tok::Name(n) if n == NOT => return self.error("`not` is reserved"),
            Tok::Name(n) => n,
            other => return self.error(format!("expected an atom, found {}", describe(&other))),
        };
        let t = self.term()?;
        let arity = t.args().len();
        let sym = Sym::new(&name);
        match self.preds.get(&sym) {
            Some(&expected) if expected != arity => {
                return Err(Error::ArityConflict {
                    name,
                    expected,
                    found: arity,
                    line,
                    col,
                })
            }
            Some(_) => {}
            None => {
                self.preds.insert(sym, arity);
            }
        }
        Ok(t)
    }

    pub(crate) fn term(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Var(v) => {
                self.bump();
                if v == ANON {
                    self.anon += 1;
                    Ok(Term::Var(Var {
                        name: Sym::new(ANON),
                        index: self.anon,
                    }))
                } else {
                    Ok(Term::var(&v))
                }
            }
            Tok::Name(n) => {
                self.bump();
                if self.eat_punct('(') {
                    let args = self.terms()?;
                    self.expect_punct(')')?;
                    Ok(Term::app(&n, args))
                } else {
                    Ok(Term::constant(&n))
                }
            }
            Tok::Punct('[') => {
                self.bump();
                if self.eat_punct(']') {
                    return Ok(Term::nil());
                }
                let items = self.terms()?;
                let tail = if self.eat_punct('|') {
                    self.term()?
                } else {
                    Term::nil()
                };
                self.expect_punct(']')?;
                Ok(Term::list_with_tail(items, tail))
            }
            other => self.error(format!("expected a term, found {}", describe(&other))),
        }
    }

    fn terms(&mut self) -> Result<Vec<Term>> {
        let mut out = vec![self.term()?];
        while self.eat_punct(',') {
            out.push(self.term()?);
        }
        Ok(out)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Name(n) => format!("`{n}`"),
        Tok::Var(v) => format!("variable `{v}`"),
        Tok::Str(s) => format!("string \"{s}\""),
        Tok::Neck => "`:-`".into(),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Eof => "end of input".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_clause() {
        let p = parse_program("o(s(X)) :- not o(X).").unwrap();
        assert_eq!(p.clauses.len(), 1);
        let c = &p.clauses[0];
        assert_eq!(c.pred().to_string(), "o/1");
        assert_eq!(c.body.len(), 1);
        assert!(!c.body[0].positive);
        assert_eq!(c.body[0].atom.to_string(), "o(X)");
    }

    #[test]
    fn empty_input() {
        let p = parse_program("  % nothing here\n").unwrap();
        assert!(p.clauses.is_empty());
        assert!(p.predicates.is_empty());
    }

    #[test]
    fn member_fact_desugars_lists() {
        let p = parse_program("m(E,[E|_]).").unwrap();
        let head = &p.clauses[0].head;
        assert!(head.args()[1].is_cons());
        assert_eq!(p.to_string(), "m(E,[E|_]).\n");
        assert_eq!(parse_program(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn anonymous_variables_are_distinct() {
        let c = &parse_program("p(_, _).").unwrap().clauses[0];
        assert_eq!(c.vars().len(), 2);
    }

    #[test]
    fn not_with_parentheses() {
        let a = parse_program("a :- not(b), c.").unwrap();
        let b = parse_program("a :- not b, c.").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn arity_conflict_reported() {
        match parse_program("p(a).\nq :- p(a, b).") {
            Err(Error::ArityConflict {
                expected,
                found,
                line,
                ..
            }) => assert_eq!((expected, found, line), (1, 2, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_position() {
        match parse_program("p(a) :- q(.") {
            Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 11)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn queries() {
        assert!(parse_query("true").unwrap().is_empty());
        let q = parse_query("p(a,c,S,[]).").unwrap();
        assert_eq!(q.to_string(), "p(a,c,S,[])");
        assert!(parse_ground_atom("p(X)").is_err());
    }
}
