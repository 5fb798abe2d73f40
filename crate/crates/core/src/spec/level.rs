//! Level mappings into naturals or lexicographically ordered tuples.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{Pred, Term};

/// A value of a level mapping; tuples compare lexicographically and a
/// natural number is a tuple of width one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelValue(pub Vec<u64>);

impl fmt::Display for LevelValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Arithmetic over argument measures. Argument indexes are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelExpr {
    Const(u64),
    Size(usize),
    Depth(usize),
    Len(usize),
    Add(Box<LevelExpr>, Box<LevelExpr>),
    Mul(Box<LevelExpr>, Box<LevelExpr>),
    Max(Box<LevelExpr>, Box<LevelExpr>),
}

impl fmt::Display for LevelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelExpr::Const(c) => write!(f, "{c}"),
            LevelExpr::Size(i) => write!(f, "size({i})"),
            LevelExpr::Depth(i) => write!(f, "depth({i})"),
            LevelExpr::Len(i) => write!(f, "len({i})"),
            LevelExpr::Add(a, b) => write!(f, "({a} + {b})"),
            LevelExpr::Mul(a, b) => write!(f, "({a} * {b})"),
            LevelExpr::Max(a, b) => write!(f, "max({a}, {b})"),
        }
    }
}

impl LevelExpr {
    pub fn eval(&self, atom: &Term) -> Result<u64> {
        let arg = |i: usize, measure: &str| {
            atom.args()
                .get(i.wrapping_sub(1))
                .ok_or_else(|| Error::LevelMeasure {
                    measure: measure.into(),
                    arg: i,
                    atom: atom.to_string(),
                })
        };
        Ok(match self {
            LevelExpr::Const(c) => *c,
            LevelExpr::Size(i) => arg(*i, "size")?.size() as u64,
            LevelExpr::Depth(i) => arg(*i, "depth")?.depth() as u64,
            LevelExpr::Len(i) => arg(*i, "len")?
                .list_len()
                .ok_or_else(|| Error::LevelMeasure {
                    measure: "len".into(),
                    arg: *i,
                    atom: atom.to_string(),
                })? as u64,
            LevelExpr::Add(a, b) => a.eval(atom)?.saturating_add(b.eval(atom)?),
            LevelExpr::Mul(a, b) => a.eval(atom)?.saturating_mul(b.eval(atom)?),
            LevelExpr::Max(a, b) => a.eval(atom)?.max(b.eval(atom)?),
        })
    }
}

/// Per-predicate expressions plus an explicit atom table; the table takes
/// precedence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelMap {
    exprs: BTreeMap<Pred, Vec<LevelExpr>>,
    table: HashMap<Term, LevelValue>,
    width: Option<usize>,
}

impl LevelMap {
    pub fn new() -> Self {
        LevelMap::default()
    }

    fn check_width(&mut self, w: usize) -> Result<()> {
        match self.width {
            Some(expected) if expected != w => Err(Error::LevelWidth { expected, found: w }),
            _ => {
                self.width = Some(w);
                Ok(())
            }
        }
    }

    pub fn set_expr(&mut self, pred: Pred, components: Vec<LevelExpr>) -> Result<()> {
        self.check_width(components.len())?;
        self.exprs.insert(pred, components);
        Ok(())
    }

    pub fn set_atom(&mut self, atom: Term, value: LevelValue) -> Result<()> {
        self.check_width(value.0.len())?;
        self.table.insert(atom, value);
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width.unwrap_or(1)
    }

    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    pub fn eval_level(&self, a: &Term) -> Result<LevelValue> {
        if let Some(v) = self.table.get(a) {
            return Ok(v.clone());
        }
        let pred = Pred::of(a).ok_or_else(|| Error::LevelUndefined(a.to_string()))?;
        match self.exprs.get(&pred) {
            Some(components) => Ok(LevelValue(
                components
                    .iter()
                    .map(|e| e.eval(a))
                    .collect::<Result<Vec<_>>>()?,
            )),
            None => Err(Error::LevelUndefined(a.to_string())),
        }
    }

    /// `|a| ≺ |b|`.
    pub fn less(&self, a: &Term, b: &Term) -> Result<bool> {
        Ok(self.eval_level(a)? < self.eval_level(b)?)
    }

    /// Atoms of `atoms` on which the mapping is undefined or fails.
    pub fn undefined_on<'a>(
        &self,
        atoms: impl IntoIterator<Item = &'a Term>,
    ) -> Vec<(Term, Error)> {
        atoms
            .into_iter()
            .filter_map(|a| self.eval_level(a).err().map(|e| (a.clone(), e)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_ground_atom;

    fn atom(s: &str) -> Term {
        parse_ground_atom(s).unwrap()
    }

    #[test]
    fn constant_levels() {
        let mut l = LevelMap::new();
        l.set_expr(Pred::new("w", 1), vec![LevelExpr::Const(1)])
            .unwrap();
        l.set_expr(Pred::new("mov", 2), vec![LevelExpr::Const(0)])
            .unwrap();
        assert_eq!(l.eval_level(&atom("w(a)")).unwrap(), LevelValue(vec![1]));
        assert!(l.less(&atom("mov(a,b)"), &atom("w(a)")).unwrap());
    }

    #[test]
    fn depth_is_monotone_on_numerals() {
        let mut l = LevelMap::new();
        l.set_expr(Pred::new("o", 1), vec![LevelExpr::Depth(1)])
            .unwrap();
        let mut t = Term::constant("0");
        let mut prev = 0;
        for i in 0..6 {
            let v = l.eval_level(&Term::app("o", vec![t.clone()])).unwrap().0[0];
            assert_eq!(v, i + 1);
            assert!(v > prev);
            prev = v;
            t = Term::app("s", vec![t]);
        }
    }

    #[test]
    fn table_and_errors() {
        let mut l = LevelMap::new();
        l.set_atom(atom("p(a,b)"), LevelValue(vec![2])).unwrap();
        assert_eq!(l.eval_level(&atom("p(a,b)")).unwrap().0, vec![2]);
        assert!(matches!(
            l.eval_level(&atom("p(b,a)")),
            Err(Error::LevelUndefined(_))
        ));
        l.set_expr(Pred::new("q", 1), vec![LevelExpr::Len(1)])
            .unwrap();
        assert!(matches!(
            l.eval_level(&atom("q(a)")),
            Err(Error::LevelMeasure { .. })
        ));
        assert!(l.set_atom(atom("r"), LevelValue(vec![1, 2])).is_err());
    }

    #[test]
    fn tuples_are_lexicographic() {
        assert!(LevelValue(vec![1, 9]) < LevelValue(vec![2, 0]));
        assert!(LevelValue(vec![2, 0]) < LevelValue(vec![2, 1]));
    }
}
