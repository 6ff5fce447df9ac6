//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := disj ( "->" formula )?
//! disj    := conj ( "\/" conj )*
//! conj    := neg ( "/\" neg )*
//! neg     := "~" neg | atom | "_|_" | "bot" | "(" formula ")"
//! ```

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at offset {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Arrow,
    Or,
    And,
    Not,
    LParen,
    RParen,
    Bottom,
    Ident(String),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Arrow => "`->`".into(),
            Tok::Or => "`\\/`".into(),
            Tok::And => "`/\\`".into(),
            Tok::Not => "`~`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Bottom => "`bot`".into(),
            Tok::Ident(s) => format!("atom `{s}`"),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let rest = &input[i..];
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let (tok, len) = if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else if rest.starts_with("\\/") {
            (Tok::Or, 2)
        } else if rest.starts_with("/\\") {
            (Tok::And, 2)
        } else if rest.starts_with("_|_") {
            (Tok::Bottom, 3)
        } else if c == b'~' {
            (Tok::Not, 1)
        } else if c == b'(' {
            (Tok::LParen, 1)
        } else if c == b')' {
            (Tok::RParen, 1)
        } else if c.is_ascii_alphabetic() {
            let len = rest
                .bytes()
                .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                .count();
            let word = &rest[..len];
            let tok = if word == "bot" {
                Tok::Bottom
            } else {
                Tok::Ident(word.to_string())
            };
            (tok, len)
        } else {
            let ch = rest.chars().next().unwrap_or('?');
            return Err(ParseError {
                position: i,
                message: format!("unexpected character `{ch}`"),
            });
        };
        out.push((i, tok));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        let found = self
            .peek()
            .map_or_else(|| "end of input".to_string(), Tok::describe);
        ParseError {
            position: self.offset(),
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disj()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conj()?;
        while self.eat(&Tok::Or) {
            let rhs = self.conj()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.neg()?;
        while self.eat(&Tok::And) {
            let rhs = self.neg()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn neg(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.neg()?))
            }
            Some(Tok::Bottom) => {
                self.pos += 1;
                Ok(Formula::Bottom)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::Atom(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error("`)`"));
                }
                Ok(inner)
            }
            _ => Err(self.error("a formula")),
        }
    }
}

/// Parses a formula; `~X` becomes `X -> bot`.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let toks = tokenize(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
    };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return Err(p.error("end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn at(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn arrow_is_right_associative() {
        assert_eq!(
            parse("a -> b -> a").unwrap(),
            Formula::implies(at("a"), Formula::implies(at("b"), at("a")))
        );
    }

    #[test]
    fn negation_expands_to_arrow_bottom() {
        assert_eq!(
            parse("~a \\/ a").unwrap(),
            Formula::or(Formula::implies(at("a"), Formula::Bottom), at("a"))
        );
        assert_eq!(parse("~~a").unwrap(), Formula::not(Formula::not(at("a"))));
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse("a /\\ b \\/ c").unwrap(),
            Formula::or(Formula::and(at("a"), at("b")), at("c"))
        );
        assert_eq!(
            parse("a \\/ b -> c /\\ d").unwrap(),
            Formula::implies(
                Formula::or(at("a"), at("b")),
                Formula::and(at("c"), at("d"))
            )
        );
        assert_eq!(
            parse("a /\\ b /\\ c").unwrap(),
            Formula::and(Formula::and(at("a"), at("b")), at("c"))
        );
    }

    #[test]
    fn bottom_lexemes() {
        assert_eq!(parse("_|_").unwrap(), Formula::Bottom);
        assert_eq!(parse("bot").unwrap(), Formula::Bottom);
        assert_eq!(parse("(bot)").unwrap(), Formula::Bottom);
        assert_eq!(parse("bottom").unwrap(), at("bottom"));
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse("a->b").unwrap(), parse("  a  ->\n b ").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("a -> ").unwrap_err();
        assert_eq!(e.position, 5);
        let e = parse("(a -> b").unwrap_err();
        assert_eq!(e.position, 7);
        let e = parse("a b").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse("a & b").unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse("").is_err());
        assert!(parse("1a").is_err());
    }

    pub(crate) fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            4 => prop::sample::select(vec!["a", "b", "c1", "d_x"]).prop_map(Formula::atom),
            1 => Just(Formula::Bottom),
        ];
        leaf.prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::or(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(f in arb_formula()) {
            let text = f.render();
            prop_assert_eq!(parse(&text).unwrap(), f);
        }
    }
}
