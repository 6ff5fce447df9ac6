//! Concrete syntax for proof terms.
//!
//! ```text
//! term  := "\" ident "." term | "mu" ident "." term
//!        | "w1" term | "w2" term | atom
//! atom  := ident | "<" term "," term ">" | "(" term elim* ")"
//! elim  := atom | "pi1" | "pi2" | "[" ident "." term "," ident "." term "]"
//! ```
//!
//! `(a t)` is a naming when `a` is bound by an enclosing `mu` (or declared
//! as a μ-name in the environment), and an application otherwise. Lambda and
//! `mu` bodies extend as far to the right as possible.

use std::fmt;

use super::{ElimArg, MuName, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("term syntax error at offset {position}: {message}")]
pub struct TermParseError {
    pub position: usize,
    pub message: String,
}

/// Free names a term may refer to.
#[derive(Debug, Clone, Default)]
pub struct TermEnv {
    pub vars: Vec<(String, Var)>,
    pub mus: Vec<(String, MuName)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lambda,
    Dot,
    Comma,
    LParen,
    RParen,
    LAngle,
    RAngle,
    LBracket,
    RBracket,
    Mu,
    Pi(u8),
    Inj(u8),
    Ident(String),
}

const KEYWORDS: [(&str, Tok); 5] = [
    ("mu", Tok::Mu),
    ("pi1", Tok::Pi(1)),
    ("pi2", Tok::Pi(2)),
    ("w1", Tok::Inj(1)),
    ("w2", Tok::Inj(2)),
];

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, TermParseError> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let simple = match c {
            '\\' | 'λ' => Some(Tok::Lambda),
            '.' => Some(Tok::Dot),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '<' => Some(Tok::LAngle),
            '>' => Some(Tok::RAngle),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            _ => None,
        };
        if let Some(tok) = simple {
            chars.next();
            out.push((i, tok));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    word.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            let tok = KEYWORDS
                .iter()
                .find(|(k, _)| *k == word)
                .map_or(Tok::Ident(word), |(_, t)| t.clone());
            out.push((i, tok));
            continue;
        }
        return Err(TermParseError {
            position: i,
            message: format!("unexpected character `{c}`"),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
enum Binding {
    Lam(Var),
    Mu(MuName),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    scope: Vec<(String, Binding)>,
    next: u32,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, TermParseError> {
        Err(TermParseError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), TermParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<String, TermParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected an identifier"),
        }
    }

    fn fresh(&mut self) -> u32 {
        let n = self.next;
        self.next += 1;
        n
    }

    fn lookup(&self, name: &str) -> Option<Binding> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, b)| *b)
    }

    fn term(&mut self) -> Result<Term, TermParseError> {
        match self.peek() {
            Some(Tok::Lambda) => {
                self.pos += 1;
                let name = self.ident()?;
                self.expect(Tok::Dot, "`.` after the bound variable")?;
                let v = Var(self.fresh());
                self.scope.push((name, Binding::Lam(v)));
                let body = self.term();
                self.scope.pop();
                Ok(Term::Lam(v, Box::new(body?)))
            }
            Some(Tok::Mu) => {
                self.pos += 1;
                let name = self.ident()?;
                self.expect(Tok::Dot, "`.` after the μ-name")?;
                let a = MuName(self.fresh());
                self.scope.push((name, Binding::Mu(a)));
                let body = self.term();
                self.scope.pop();
                Ok(Term::Mu(a, Box::new(body?)))
            }
            Some(Tok::Inj(i)) => {
                let i = *i;
                self.pos += 1;
                Ok(Term::Inj(i, Box::new(self.term()?)))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Term, TermParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                let at = self.offset();
                self.pos += 1;
                match self.lookup(&name) {
                    Some(Binding::Lam(v)) => Ok(Term::Var(v)),
                    Some(Binding::Mu(_)) => Err(TermParseError {
                        position: at,
                        message: format!("μ-name `{name}` must be applied, as in `({name} t)`"),
                    }),
                    None => Err(TermParseError {
                        position: at,
                        message: format!("unbound variable `{name}`"),
                    }),
                }
            }
            Some(Tok::LAngle) => {
                self.pos += 1;
                let a = self.term()?;
                self.expect(Tok::Comma, "`,` inside a pair")?;
                let b = self.term()?;
                self.expect(Tok::RAngle, "`>` closing a pair")?;
                Ok(Term::Pair(Box::new(a), Box::new(b)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                // `(a t)` with `a` a μ-name.
                let named = match self.peek() {
                    Some(Tok::Ident(n)) => match self.lookup(n) {
                        Some(Binding::Mu(a)) => Some(a),
                        _ => None,
                    },
                    _ => None,
                };
                if let Some(a) = named {
                    self.pos += 1;
                    let body = self.elim_term()?;
                    self.expect(Tok::RParen, "`)` closing a naming `(a t)`")?;
                    return Ok(Term::Named(a, Box::new(body)));
                }
                let mut head = self.term()?;
                while self.peek() != Some(&Tok::RParen) {
                    if self.peek().is_none() {
                        return self.err("expected `)`");
                    }
                    let e = self.elim()?;
                    head = Term::App(Box::new(head), Box::new(e));
                }
                self.pos += 1;
                Ok(head)
            }
            _ => self.err("expected a term"),
        }
    }

    fn elim_term(&mut self) -> Result<Term, TermParseError> {
        match self.peek() {
            Some(Tok::Pi(_)) | Some(Tok::LBracket) => {
                self.err("a μ-name can only be applied to a term")
            }
            _ => self.atom(),
        }
    }

    fn elim(&mut self) -> Result<ElimArg, TermParseError> {
        match self.peek().cloned() {
            Some(Tok::Pi(i)) => {
                self.pos += 1;
                Ok(ElimArg::Proj(i))
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let (x1, b1) = self.branch()?;
                self.expect(Tok::Comma, "`,` between case branches")?;
                let (x2, b2) = self.branch()?;
                self.expect(Tok::RBracket, "`]` closing a case")?;
                Ok(ElimArg::Case(x1, b1, x2, b2))
            }
            Some(Tok::Lambda) | Some(Tok::Mu) | Some(Tok::Inj(_)) => {
                self.err("arguments that are abstractions or injections need parentheses")
            }
            _ => Ok(ElimArg::Term(self.atom()?)),
        }
    }

    fn branch(&mut self) -> Result<(Var, Term), TermParseError> {
        let name = self.ident()?;
        self.expect(Tok::Dot, "`.` after a case binder")?;
        let v = Var(self.fresh());
        self.scope.push((name, Binding::Lam(v)));
        let body = self.term();
        self.scope.pop();
        Ok((v, body?))
    }
}

/// Parses a term. Bound names get fresh identifiers numbered after every
/// identifier in `env`.
pub fn parse_term(input: &str, env: &TermEnv) -> Result<Term, TermParseError> {
    let toks = tokenize(input)?;
    let next = env
        .vars
        .iter()
        .map(|(_, v)| v.0 + 1)
        .chain(env.mus.iter().map(|(_, a)| a.0 + 1))
        .max()
        .unwrap_or(0);
    let mut scope: Vec<(String, Binding)> = env
        .vars
        .iter()
        .map(|(n, v)| (n.clone(), Binding::Lam(*v)))
        .collect();
    scope.extend(env.mus.iter().map(|(n, a)| (n.clone(), Binding::Mu(*a))));
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
        scope,
        next,
    };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(t)
}

fn needs_parens_as_atom(t: &Term) -> bool {
    matches!(t, Term::Lam(..) | Term::Mu(..) | Term::Inj(..))
}

struct AsAtom<'a>(&'a Term);

impl fmt::Display for AsAtom<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if needs_parens_as_atom(self.0) {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for ElimArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElimArg::Term(t) => write!(f, "{}", AsAtom(t)),
            ElimArg::Proj(i) => write!(f, "pi{i}"),
            ElimArg::Case(x1, b1, x2, b2) => {
                write!(f, "[x{}. {}, x{}. {}]", x1.0, b1, x2.0, b2)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "x{}", v.0),
            Term::Lam(v, b) => write!(f, "\\x{}. {}", v.0, b),
            Term::Mu(a, b) => write!(f, "mu a{}. {}", a.0, b),
            Term::Named(a, b) => write!(f, "(a{} {})", a.0, AsAtom(b)),
            Term::Inj(i, b) => write!(f, "w{i} {b}"),
            Term::Pair(a, b) => write!(f, "<{a}, {b}>"),
            Term::App(..) => {
                let (head, args) = self.spine();
                write!(f, "({}", AsAtom(head))?;
                for e in args {
                    write!(f, " {e}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Term {
        parse_term(s, &TermEnv::default()).unwrap()
    }

    #[test]
    fn parses_identity_and_classical_identity() {
        assert!(p("\\x. x").alpha_eq(&Term::lam(0, Term::var(0))));
        assert!(p("\\x. mu a. (a x)")
            .alpha_eq(&Term::lam(0, Term::mu(1, Term::named(1, Term::var(0))))));
    }

    #[test]
    fn application_spines_and_eliminators() {
        let t = p("\\f. \\x. (f x pi1 [y. y, z. z])");
        let expected = Term::lam(
            0,
            Term::lam(
                1,
                Term::case(Term::proj(Term::app(Term::var(0), Term::var(1)), 1), 2, Term::var(2), 3, Term::var(3)),
            ),
        );
        assert!(t.alpha_eq(&expected), "{t}");
    }

    #[test]
    fn pairs_and_injections() {
        let t = p("\\x. <w1 x, w2 (\\y. y)>");
        let expected = Term::lam(
            0,
            Term::pair(Term::inj(1, Term::var(0)), Term::inj(2, Term::lam(1, Term::var(1)))),
        );
        assert!(t.alpha_eq(&expected));
    }

    #[test]
    fn redex_needs_explicit_parentheses() {
        let beta = p("\\y. ((\\x. x) y)");
        assert!(beta.alpha_eq(&Term::lam(0, Term::app(Term::lam(1, Term::var(1)), Term::var(0)))));
        // Body extends to the right: this is λx.(x y), not a redex.
        let e = parse_term("(\\x. x y)", &TermEnv::default());
        assert!(e.is_err(), "y is unbound");
    }

    #[test]
    fn free_names_come_from_the_environment() {
        let env = TermEnv {
            vars: vec![("x".into(), Var(0))],
            mus: vec![("k".into(), MuName(1))],
        };
        let t = parse_term("(k x)", &env).unwrap();
        assert_eq!(t, Term::named(1, Term::var(0)));
        let lam = parse_term("\\y. y", &env).unwrap();
        assert_eq!(lam, Term::lam(2, Term::var(2)));
    }

    #[test]
    fn errors() {
        assert!(parse_term("\\x x", &TermEnv::default()).is_err());
        assert!(parse_term("y", &TermEnv::default()).is_err());
        assert!(parse_term("mu a. a", &TermEnv::default()).is_err());
        assert!(parse_term("\\x. (x \\y. y)", &TermEnv::default()).is_err());
        assert!(parse_term("\\x. x)", &TermEnv::default()).is_err());
        assert!(parse_term("\\x. #", &TermEnv::default()).is_err());
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            "\\x. x",
            "\\x. mu a. (a x)",
            "\\f. \\x. (f (f x))",
            "\\p. <(p pi2), (p pi1)>",
            "\\d. (d [l. w2 l, r. w1 r])",
            "\\y. ((\\x. x) y)",
            "\\x. (w1 x [u. u, v. v])",
            "mu a. (a (\\x. mu b. (a (\\y. x))))",
        ] {
            let t = p(s);
            let printed = t.to_string();
            let back = p(&printed);
            assert!(back.alpha_eq(&t), "{s} -> {printed}");
        }
    }
}
