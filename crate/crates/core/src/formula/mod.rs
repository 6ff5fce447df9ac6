//! Propositional formulae over atoms, `⊥`, `→`, `∧` and `∨`.
//!
//! Negation is not a constructor: `~F` is parsed to `F -> bot` and printed
//! back as `~F`.

mod elim;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

pub use elim::{elim, elim_paths, ElimList, ElimPath, ElimStep, ElimTail};
pub use parse::{parse, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Bottom,
    Implies(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("rank is only defined for implicational formulae, found `{0}`")]
pub struct NotImplicational(pub Formula);

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// `¬a`, i.e. `a → ⊥`.
    pub fn not(a: Formula) -> Formula {
        Formula::implies(a, Formula::Bottom)
    }

    /// `a₁ → a₂ → … → conclusion`.
    pub fn curried<I>(premises: I, conclusion: Formula) -> Formula
    where
        I: IntoIterator<Item = Formula>,
        I::IntoIter: DoubleEndedIterator,
    {
        premises
            .into_iter()
            .rev()
            .fold(conclusion, |acc, p| Formula::implies(p, acc))
    }

    /// Atoms and `⊥`: the formulae with no introduction rule.
    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::Bottom)
    }

    /// `Some(c)` when the formula is `c → ⊥`.
    pub fn negated(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(c, d) if **d == Formula::Bottom => Some(c),
            _ => None,
        }
    }

    pub fn is_implicational(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Implies(a, b) => a.is_implicational() && b.is_implicational(),
            _ => false,
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom => 1,
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    pub fn subformulae(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulae(&mut out);
        out
    }

    fn collect_subformulae(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Atom(_) | Formula::Bottom => {}
            Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_subformulae(out);
                b.collect_subformulae(out);
            }
        }
    }

    /// Rank of an implicational formula: atoms have rank 0 and
    /// `r(A → B) = max(r(A) + 1, r(B))`.
    pub fn rank(&self) -> Result<usize, NotImplicational> {
        match self {
            Formula::Atom(_) => Ok(0),
            Formula::Implies(a, b) => Ok((a.rank()? + 1).max(b.rank()?)),
            other => Err(NotImplicational(other.clone())),
        }
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::Atom(name) => {
                    out.insert(name.as_str());
                }
                Formula::Bottom => {}
                Formula::Implies(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
        out
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    fn precedence(&self) -> Prec {
        match self {
            Formula::Atom(_) | Formula::Bottom => Prec::Atom,
            Formula::Implies(_, b) if **b == Formula::Bottom => Prec::Neg,
            Formula::Implies(..) => Prec::Imp,
            Formula::Or(..) => Prec::Or,
            Formula::And(..) => Prec::And,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: Prec) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, Prec::Imp)?;
            return write!(f, ")");
        }
        match self {
            Formula::Atom(name) => write!(f, "{name}"),
            Formula::Bottom => write!(f, "bot"),
            Formula::Implies(a, b) if **b == Formula::Bottom => {
                write!(f, "~")?;
                a.fmt_at(f, Prec::Neg)
            }
            Formula::Implies(a, b) => {
                a.fmt_at(f, Prec::Or)?;
                write!(f, " -> ")?;
                b.fmt_at(f, Prec::Imp)
            }
            Formula::Or(a, b) => {
                a.fmt_at(f, Prec::Or)?;
                write!(f, " \\/ ")?;
                b.fmt_at(f, Prec::And)
            }
            Formula::And(a, b) => {
                a.fmt_at(f, Prec::And)?;
                write!(f, " /\\ ")?;
                b.fmt_at(f, Prec::Neg)
            }
        }
    }
}

// Binding strength, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Imp,
    Or,
    And,
    Neg,
    Atom,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, Prec::Imp)
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("a")
    }
    fn b() -> Formula {
        Formula::atom("b")
    }
    fn c() -> Formula {
        Formula::atom("c")
    }

    #[test]
    fn render_examples() {
        assert_eq!(
            Formula::implies(a(), Formula::implies(b(), a())).render(),
            "a -> b -> a"
        );
        assert_eq!(Formula::not(a()).render(), "~a");
        assert_eq!(Formula::and(a(), Formula::or(b(), c())).render(), "a /\\ (b \\/ c)");
        assert_eq!(
            Formula::implies(Formula::implies(a(), b()), c()).render(),
            "(a -> b) -> c"
        );
        assert_eq!(Formula::not(Formula::and(a(), b())).render(), "~(a /\\ b)");
        assert_eq!(Formula::implies(Formula::not(a()), b()).render(), "~a -> b");
        assert_eq!(Formula::Bottom.render(), "bot");
        assert_eq!(Formula::or(Formula::or(a(), b()), c()).render(), "a \\/ b \\/ c");
        assert_eq!(Formula::or(a(), Formula::or(b(), c())).render(), "a \\/ (b \\/ c)");
    }

    #[test]
    fn subformulae_examples() {
        assert_eq!(a().subformulae(), BTreeSet::from([a()]));
        let ab = Formula::implies(a(), b());
        assert_eq!(ab.subformulae(), BTreeSet::from([a(), b(), ab.clone()]));
        let aa = Formula::and(a(), a());
        assert_eq!(aa.subformulae(), BTreeSet::from([a(), aa.clone()]));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(a().rank(), Ok(0));
        assert_eq!(Formula::implies(a(), b()).rank(), Ok(1));
        assert_eq!(Formula::implies(Formula::implies(a(), a()), a()).rank(), Ok(2));
        assert!(Formula::and(a(), b()).rank().is_err());
        assert!(Formula::not(a()).rank().is_err());
    }

    #[test]
    fn negation_view() {
        assert_eq!(Formula::not(a()).negated(), Some(&a()));
        assert_eq!(Formula::implies(a(), b()).negated(), None);
        assert!(Formula::Bottom.is_atomic());
    }

    #[test]
    fn curried_builds_right_nested_arrows() {
        assert_eq!(
            Formula::curried([a(), b()], c()),
            Formula::implies(a(), Formula::implies(b(), c()))
        );
        assert_eq!(Formula::curried(Vec::new(), c()), c());
    }
}
