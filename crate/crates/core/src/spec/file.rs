//! Reader for the sectioned specification format (see `docs/FORMATS.md`).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use super::level::{LevelExpr, LevelMap, LevelValue};
use super::sets::SetExpr;
use super::Spec;
use crate::error::{Error, Result};
use crate::syntax::lexer::Tok;
use crate::syntax::parser::Parser;
use crate::syntax::{parse_program, Pred, SortExpr, Sym};

const SECTIONS: [&str; 6] = ["universe", "generators", "sets", "snf", "st", "level"];

/// Parses a specification. File references are resolved against `base`.
pub fn parse_spec(text: &str, base: Option<&Path>) -> Result<Spec> {
    let sections = split_sections(text)?;
    let mut r = Reader {
        base: base.map(Path::to_path_buf),
        spec: Spec::default(),
        sets: BTreeMap::new(),
    };
    for name in SECTIONS {
        for body in sections.get(name).into_iter().flatten() {
            let mut p = Parser::new(body)?;
            match name {
                "universe" => r.universe(&mut p)?,
                "generators" => r.generators(&mut p)?,
                "sets" => r.sets(&mut p)?,
                "snf" => r.spec.snf = r.single_set(&mut p)?,
                "st" => r.spec.st = r.single_set(&mut p)?,
                _ => r.level(&mut p)?,
            }
        }
    }
    Ok(r.spec)
}

pub fn read_spec(path: &Path) -> Result<Spec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_spec(&text, path.parent())
}

/// Splits on `[name]` header lines. Each section body is padded with blank
/// lines so that positions reported by the parser match the whole file.
fn split_sections(text: &str) -> Result<BTreeMap<&'static str, Vec<String>>> {
    let mut out: BTreeMap<&'static str, Vec<String>> = BTreeMap::new();
    let mut current: Option<(&'static str, String)> = None;
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        let header = trimmed
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .filter(|s| !s.is_empty() && s.chars().all(|c| c.is_ascii_lowercase()));
        if let Some(h) = header {
            let Some(&name) = SECTIONS.iter().find(|s| **s == h) else {
                return Err(Error::Syntax {
                    line: i + 1,
                    col: 1,
                    msg: format!("unknown section [{h}]"),
                });
            };
            if let Some((n, body)) = current.take() {
                out.entry(n).or_default().push(body);
            }
            current = Some((name, "\n".repeat(i + 1)));
            continue;
        }
        match &mut current {
            Some((_, body)) => {
                body.push_str(line);
                body.push('\n');
            }
            None => {
                let code = line.split('%').next().unwrap_or("").trim();
                if !code.is_empty() {
                    return Err(Error::Syntax {
                        line: i + 1,
                        col: 1,
                        msg: "content before the first section header".into(),
                    });
                }
            }
        }
    }
    if let Some((n, body)) = current {
        out.entry(n).or_default().push(body);
    }
    Ok(out)
}

struct Reader {
    base: Option<PathBuf>,
    spec: Spec,
    sets: BTreeMap<String, SetExpr>,
}

fn keyword(p: &Parser, w: &str) -> bool {
    matches!(p.peek(), Tok::Name(n) if n == w)
}

impl Reader {
    fn resolve(&self, file: &str) -> PathBuf {
        match &self.base {
            Some(b) => b.join(file),
            None => PathBuf::from(file),
        }
    }

    fn read_file(&self, file: &str) -> Result<String> {
        let path = self.resolve(file);
        std::fs::read_to_string(&path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })
    }

    fn pred(p: &mut Parser) -> Result<Pred> {
        let name = p.name()?;
        p.expect_punct('/')?;
        let arity = p.natural()? as usize;
        Ok(Pred::new(&name, arity))
    }

    fn universe(&mut self, p: &mut Parser) -> Result<()> {
        while !p.at_eof() {
            let word = p.name()?;
            match word.as_str() {
                "depth" => {
                    let d = p.natural()? as usize;
                    if d == 0 {
                        return p.error("depth must be at least 1");
                    }
                    self.spec.depth = Some(d);
                }
                "symbols" => loop {
                    let name = p.name()?;
                    let arity = if p.eat_punct('/') {
                        p.natural()? as usize
                    } else {
                        0
                    };
                    self.spec.universe.symbols.insert(Sym::new(&name), arity);
                    if !p.eat_punct(',') {
                        break;
                    }
                },
                "sort" => {
                    let name = p.name()?;
                    p.expect_punct('=')?;
                    let s = self.sort(p)?;
                    self.spec.universe.sorts.push((name, s));
                }
                "domain" => {
                    let pred = Self::pred(p)?;
                    p.expect_punct('=')?;
                    let mut args = vec![self.sort(p)?];
                    while p.eat_punct(',') {
                        args.push(self.sort(p)?);
                    }
                    if args.len() != pred.arity {
                        return p.error(format!("domain for {pred} needs {} sorts", pred.arity));
                    }
                    self.spec.universe.domains.push((pred, args));
                }
                other => return p.error(format!("unknown universe item `{other}`")),
            }
            p.expect_punct('.')?;
        }
        Ok(())
    }

    fn sort(&self, p: &mut Parser) -> Result<SortExpr> {
        if p.eat_punct('{') {
            p.begin_clause();
            let mut members = Vec::new();
            if !p.at_punct('}') {
                loop {
                    let t = p.term()?;
                    if !t.is_ground() {
                        return p.error("sort members must be ground");
                    }
                    members.push(t);
                    if !p.eat_punct(',') {
                        break;
                    }
                }
            }
            p.expect_punct('}')?;
            return Ok(SortExpr::Enum(members));
        }
        let name = p.name()?;
        match name.as_str() {
            "any" => Ok(SortExpr::Any),
            "lists" => {
                p.expect_punct('(')?;
                let elem = self.sort(p)?;
                p.expect_punct(',')?;
                let k = p.natural()? as usize;
                p.expect_punct(')')?;
                Ok(SortExpr::Lists(Box::new(elem), k))
            }
            _ => {
                if !self.spec.universe.sorts.iter().any(|(n, _)| *n == name) {
                    return p.error(format!("unknown sort `{name}`"));
                }
                Ok(SortExpr::Named(name))
            }
        }
    }

    fn generators(&mut self, p: &mut Parser) -> Result<()> {
        while !p.at_eof() {
            let name = p.name()?;
            let program = if p.eat_punct('=') {
                let file = p.string()?;
                p.expect_punct('.')?;
                parse_program(&self.read_file(&file)?)?
            } else {
                p.expect_punct('{')?;
                p.reset_preds();
                let mut clauses = Vec::new();
                while !p.at_punct('}') {
                    if p.at_eof() {
                        return p.error("unterminated generator block");
                    }
                    clauses.push(p.clause()?);
                }
                p.expect_punct('}')?;
                p.finish(clauses)
            };
            if let Some(c) = program.clauses.iter().find(|c| !c.is_definite()) {
                return Err(Error::NonDefinite(format!("{name}: {c}")));
            }
            self.spec.generators.insert(name, Arc::new(program));
        }
        Ok(())
    }

    fn sets(&mut self, p: &mut Parser) -> Result<()> {
        while !p.at_eof() {
            let name = p.name()?;
            p.expect_punct('=')?;
            let e = self.set_expr(p)?;
            p.expect_punct('.')?;
            self.sets.insert(name, e);
        }
        Ok(())
    }

    fn single_set(&mut self, p: &mut Parser) -> Result<SetExpr> {
        let e = self.set_expr(p)?;
        p.eat_punct('.');
        p.expect_eof()?;
        Ok(e)
    }

    fn set_list(&mut self, p: &mut Parser) -> Result<Vec<SetExpr>> {
        p.expect_punct('(')?;
        let mut xs = vec![self.set_expr(p)?];
        while p.eat_punct(',') {
            xs.push(self.set_expr(p)?);
        }
        p.expect_punct(')')?;
        Ok(xs)
    }

    fn set_expr(&mut self, p: &mut Parser) -> Result<SetExpr> {
        let word = p.name()?;
        match word.as_str() {
            "empty" => Ok(SetExpr::Empty),
            "extensional" => {
                p.expect_punct('{')?;
                let mut atoms = Vec::new();
                while !p.at_punct('}') {
                    p.begin_clause();
                    let a = p.atom()?;
                    if !a.is_ground() {
                        return p.error(format!("extensional atom `{a}` is not ground"));
                    }
                    atoms.push(a);
                    if !p.eat_punct('.') && !p.eat_punct(',') && !p.at_punct('}') {
                        return p.error("expected `.` after an extensional atom");
                    }
                }
                p.expect_punct('}')?;
                p.reset_preds();
                Ok(SetExpr::Extensional(atoms))
            }
            "model" => {
                p.expect_punct('(')?;
                let gen = p.name()?;
                let Some(program) = self.spec.generators.get(&gen).cloned() else {
                    return p.error(format!("unknown generator `{gen}`"));
                };
                let mut filter = Vec::new();
                while p.eat_punct(',') {
                    filter.push(Self::pred(p)?);
                }
                p.expect_punct(')')?;
                Ok(SetExpr::LeastModel {
                    name: gen,
                    program,
                    filter,
                })
            }
            "complement" => {
                p.expect_punct('(')?;
                let pred = Self::pred(p)?;
                p.expect_punct(',')?;
                let inner = self.set_expr(p)?;
                p.expect_punct(')')?;
                Ok(SetExpr::Complement(pred, Box::new(inner)))
            }
            "union" => Ok(SetExpr::Union(self.set_list(p)?)),
            "intersect" => Ok(SetExpr::Intersect(self.set_list(p)?)),
            name => match self.sets.get(name) {
                Some(e) => Ok(e.clone()),
                None => p.error(format!("unknown set `{name}`")),
            },
        }
    }

    fn level(&mut self, p: &mut Parser) -> Result<()> {
        let mut map = self.spec.level.take().unwrap_or_default();
        while !p.at_eof() {
            if keyword(p, "table") {
                p.bump();
                if p.eat_punct('{') {
                    while !p.at_punct('}') {
                        if p.at_eof() {
                            return p.error("unterminated table");
                        }
                        table_entry(p, &mut map)?;
                    }
                    p.expect_punct('}')?;
                } else {
                    let file = p.string()?;
                    let text = self.read_file(&file)?;
                    let mut tp = Parser::new(&text)?;
                    while !tp.at_eof() {
                        table_entry(&mut tp, &mut map)?;
                    }
                }
                p.expect_punct('.')?;
                continue;
            }
            let (line, col) = p.pos();
            let pred = Self::pred(p)?;
            p.expect_punct('=')?;
            let components = level_components(p)?;
            map.set_expr(pred, components).map_err(|e| Error::Syntax {
                line,
                col,
                msg: e.to_string(),
            })?;
            p.expect_punct('.')?;
        }
        self.spec.level = Some(map);
        Ok(())
    }
}

fn table_entry(p: &mut Parser, map: &mut LevelMap) -> Result<()> {
    let (line, col) = p.pos();
    p.begin_clause();
    let atom = p.atom()?;
    if !atom.is_ground() {
        return p.error(format!("table atom `{atom}` is not ground"));
    }
    let value = if p.eat_punct('(') {
        let mut v = vec![p.natural()?];
        while p.eat_punct(',') {
            v.push(p.natural()?);
        }
        p.expect_punct(')')?;
        v
    } else {
        vec![p.natural()?]
    };
    p.eat_punct('.');
    p.reset_preds();
    map.set_atom(atom, LevelValue(value))
        .map_err(|e| Error::Syntax {
            line,
            col,
            msg: e.to_string(),
        })
}

/// A tuple `(e1, ..., en)` or a single expression, which may itself start
/// with a parenthesis as in `(depth(1) + 1) * 2`.
fn level_components(p: &mut Parser) -> Result<Vec<LevelExpr>> {
    if !p.eat_punct('(') {
        return Ok(vec![level_sum(p)?]);
    }
    let first = level_sum(p)?;
    if p.eat_punct(',') {
        let mut xs = vec![first, level_sum(p)?];
        while p.eat_punct(',') {
            xs.push(level_sum(p)?);
        }
        p.expect_punct(')')?;
        return Ok(xs);
    }
    p.expect_punct(')')?;
    let mut e = first;
    while p.eat_punct('*') {
        e = LevelExpr::Mul(Box::new(e), Box::new(level_atom(p)?));
    }
    while p.eat_punct('+') {
        e = LevelExpr::Add(Box::new(e), Box::new(level_product(p)?));
    }
    Ok(vec![e])
}

fn level_sum(p: &mut Parser) -> Result<LevelExpr> {
    let mut e = level_product(p)?;
    while p.eat_punct('+') {
        e = LevelExpr::Add(Box::new(e), Box::new(level_product(p)?));
    }
    Ok(e)
}

fn level_product(p: &mut Parser) -> Result<LevelExpr> {
    let mut e = level_atom(p)?;
    while p.eat_punct('*') {
        e = LevelExpr::Mul(Box::new(e), Box::new(level_atom(p)?));
    }
    Ok(e)
}

fn level_atom(p: &mut Parser) -> Result<LevelExpr> {
    if p.eat_punct('(') {
        let e = level_sum(p)?;
        p.expect_punct(')')?;
        return Ok(e);
    }
    if matches!(p.peek(), Tok::Name(n) if n.chars().all(|c| c.is_ascii_digit())) {
        return Ok(LevelExpr::Const(p.natural()?));
    }
    let f = p.name()?;
    p.expect_punct('(')?;
    let e = match f.as_str() {
        "size" | "depth" | "len" => {
            let i = p.natural()? as usize;
            if i == 0 {
                return p.error("argument positions start at 1");
            }
            match f.as_str() {
                "size" => LevelExpr::Size(i),
                "depth" => LevelExpr::Depth(i),
                _ => LevelExpr::Len(i),
            }
        }
        "max" => {
            let a = level_sum(p)?;
            p.expect_punct(',')?;
            let b = level_sum(p)?;
            LevelExpr::Max(Box::new(a), Box::new(b))
        }
        other => return p.error(format!("unknown level measure `{other}`")),
    };
    p.expect_punct(')')?;
    Ok(e)
}
