//! Reading and writing polynomial systems.
//!
//! Two syntaxes are accepted. The text form lists equations separated by
//! `;` or newlines:
//!
//! ```text
//! x = x*y + z^2; y = y*z1; z = 2; z1 = omega*y
//! ```
//!
//! The JSON form names the variables in order and gives each equation as a
//! list of monomials:
//!
//! ```json
//! {"variables": ["x", "y"],
//!  "equations": {"x": [{"coefficient": 1, "exponents": {"y": 2}}],
//!                "y": [{"coefficient": "omega", "exponents": {}}]}}
//! ```
//!
//! Coefficients are numbers, decimal strings, or `"omega"`/`"w"`.

use serde_json::{json, Map, Value};

use crate::extnat::ExtNat;
use crate::poly::{Monomial, Polynomial, Pse, PseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PseParseError {
    #[error("at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable `{0}` has no equation")]
    Undefined(String),
    #[error("invalid JSON system: {0}")]
    Json(String),
    #[error(transparent)]
    Invalid(#[from] PseError),
}

fn syntax(position: usize, message: impl Into<String>) -> PseParseError {
    PseParseError::Syntax { position, message: message.into() }
}

#[derive(Debug, Clone, PartialEq)]
enum Factor {
    Coeff(ExtNat),
    Power(String, u32),
}

type RawEquation = (String, Vec<(ExtNat, Vec<(String, u32)>)>);

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c == ' ' || c == '\t' || c == '\r' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if f(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn ident(&mut self) -> Option<&'a str> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                Some(self.take_while(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\''))
            }
            _ => None,
        }
    }

    fn number(&mut self) -> Option<&'a str> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(self.take_while(|c| c.is_ascii_digit())),
            _ => None,
        }
    }

    fn factor(&mut self) -> Result<Factor, PseParseError> {
        self.skip_ws();
        let at = self.pos;
        if let Some(n) = self.number() {
            return Ok(Factor::Coeff(n.parse().expect("digits")));
        }
        if self.eat('ω') {
            return Ok(Factor::Coeff(ExtNat::Omega));
        }
        let Some(name) = self.ident() else {
            return Err(syntax(at, "expected a number, `omega` or a variable"));
        };
        if name == "omega" || name == "w" {
            return Ok(Factor::Coeff(ExtNat::Omega));
        }
        let mut e = 1;
        if self.eat('^') {
            self.skip_ws();
            let p = self.pos;
            e = self
                .number()
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| syntax(p, "expected an exponent"))?;
        }
        Ok(Factor::Power(name.to_string(), e))
    }

    fn equation(&mut self) -> Result<RawEquation, PseParseError> {
        self.skip_ws();
        let at = self.pos;
        let lhs = self.ident().ok_or_else(|| syntax(at, "expected a variable"))?;
        if lhs == "omega" || lhs == "w" {
            return Err(syntax(at, "`omega` cannot be defined"));
        }
        if !self.eat('=') {
            return Err(syntax(self.pos, "expected `=`"));
        }
        let mut terms = Vec::new();
        loop {
            let mut coeff = ExtNat::one();
            let mut powers = Vec::new();
            loop {
                match self.factor()? {
                    Factor::Coeff(c) => coeff *= &c,
                    Factor::Power(x, e) => powers.push((x, e)),
                }
                if !self.eat('*') {
                    break;
                }
            }
            terms.push((coeff, powers));
            if !self.eat('+') {
                break;
            }
        }
        Ok((lhs.to_string(), terms))
    }
}

fn assemble(raw: Vec<RawEquation>) -> Result<Pse, PseParseError> {
    let names: Vec<String> = raw.iter().map(|(n, _)| n.clone()).collect();
    let mut equations = Vec::with_capacity(raw.len());
    for (_, terms) in raw {
        let mut p = Polynomial::zero();
        for (c, powers) in terms {
            let mut ps = Vec::with_capacity(powers.len());
            for (x, e) in powers {
                let id = names
                    .iter()
                    .position(|n| *n == x)
                    .ok_or(PseParseError::Undefined(x))?;
                ps.push((id, e));
            }
            p.add_term(c, Monomial::from_powers(ps));
        }
        equations.push(p);
    }
    Ok(Pse::new(names, equations)?)
}

/// Parses the text form.
pub fn parse_pse(input: &str) -> Result<Pse, PseParseError> {
    let mut lx = Lexer { src: input, pos: 0 };
    let mut raw = Vec::new();
    loop {
        while lx.eat(';') || lx.eat('\n') {}
        if lx.peek().is_none() {
            break;
        }
        raw.push(lx.equation()?);
        match lx.peek() {
            None | Some(';') | Some('\n') => {}
            Some(c) => return Err(syntax(lx.pos, format!("unexpected `{c}`"))),
        }
    }
    assemble(raw)
}

fn coefficient_json(c: &ExtNat) -> Value {
    match c.to_u64() {
        Some(n) => json!(n),
        None => json!(c.to_string()),
    }
}

/// The JSON form of `s`.
pub fn pse_to_json(s: &Pse) -> Value {
    let mut eqs = Map::new();
    for (name, p) in s.names().iter().zip(s.equations()) {
        let monos: Vec<Value> = p
            .terms()
            .map(|(c, m)| {
                let exps: Map<String, Value> = m
                    .powers()
                    .iter()
                    .map(|&(x, e)| (s.name(x).to_string(), json!(e)))
                    .collect();
                json!({"coefficient": coefficient_json(c), "exponents": exps})
            })
            .collect();
        eqs.insert(name.clone(), Value::Array(monos));
    }
    json!({"variables": s.names(), "equations": eqs})
}

fn json_err(msg: impl Into<String>) -> PseParseError {
    PseParseError::Json(msg.into())
}

fn coefficient_from_json(v: &Value) -> Result<ExtNat, PseParseError> {
    match v {
        Value::Number(n) => n
            .as_u64()
            .map(ExtNat::from)
            .ok_or_else(|| json_err(format!("coefficient {n} is not a natural number"))),
        Value::String(s) => s.parse().map_err(|e| json_err(format!("{e}"))),
        other => Err(json_err(format!("bad coefficient {other}"))),
    }
}

/// Reads the JSON form.
pub fn pse_from_json(v: &Value) -> Result<Pse, PseParseError> {
    let vars = v
        .get("variables")
        .and_then(Value::as_array)
        .ok_or_else(|| json_err("missing `variables` array"))?;
    let eqs = v
        .get("equations")
        .and_then(Value::as_object)
        .ok_or_else(|| json_err("missing `equations` object"))?;
    let mut raw = Vec::with_capacity(vars.len());
    for name in vars {
        let name = name.as_str().ok_or_else(|| json_err("variable names must be strings"))?;
        let monos = eqs
            .get(name)
            .ok_or_else(|| PseParseError::Undefined(name.to_string()))?
            .as_array()
            .ok_or_else(|| json_err(format!("equation for `{name}` must be an array")))?;
        let mut terms = Vec::with_capacity(monos.len());
        for m in monos {
            let c = coefficient_from_json(m.get("coefficient").unwrap_or(&json!(1)))?;
            let mut powers = Vec::new();
            if let Some(exps) = m.get("exponents") {
                let exps = exps
                    .as_object()
                    .ok_or_else(|| json_err("`exponents` must be an object"))?;
                for (x, e) in exps {
                    let e = e
                        .as_u64()
                        .and_then(|e| u32::try_from(e).ok())
                        .ok_or_else(|| json_err(format!("bad exponent for `{x}`")))?;
                    powers.push((x.clone(), e));
                }
            }
            terms.push((c, powers));
        }
        raw.push((name.to_string(), terms));
    }
    if let Some(extra) = eqs.keys().find(|k| !vars.iter().any(|v| v == *k)) {
        return Err(json_err(format!("equation for undeclared variable `{extra}`")));
    }
    assemble(raw)
}

/// Reads either form, deciding by the first non-blank character.
pub fn read_pse(input: &str) -> Result<Pse, PseParseError> {
    if input.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(input).map_err(|e| json_err(e.to_string()))?;
        pse_from_json(&v)
    } else {
        parse_pse(input)
    }
}
