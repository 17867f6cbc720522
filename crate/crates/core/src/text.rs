//! Plain-text syntax for counters and expressions over them.
//!
//! ```text
//! extint := INT | "inf" | "-inf"
//! mono   := extint "d" extint
//! poly   := mono ("+" mono)*
//! series := "eps" | "top" | poly | (poly "+")? "(" poly ")" "(" mono ")" "*"
//! expr   := operand (OP operand)*          left-associative
//! operand:= series | "(" expr ")"
//! OP     := "oplus" | "wedge" | "hadamard" | "hres" | "hdres"
//! ```

use std::fmt;

use serde_json::{json, Value};

use crate::error::Error;
use crate::extnum::{ExtInt, Fin, NegInf, PosInf};
use crate::hadamard::{self, OpOutcome};
use crate::series::{self, Monomial, Polynomial, Series};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("{0}")]
    Semantic(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Oplus,
    Wedge,
    Hadamard,
    Hres,
    Hdres,
}

impl Op {
    const ALL: [(Op, &'static str); 5] = [
        (Op::Oplus, "oplus"),
        (Op::Wedge, "wedge"),
        (Op::Hadamard, "hadamard"),
        (Op::Hres, "hres"),
        (Op::Hdres, "hdres"),
    ];

    pub fn keyword(self) -> &'static str {
        Op::ALL.iter().find(|(op, _)| *op == self).unwrap().1
    }

    /// Applies the operation to two values.
    pub fn apply(self, s: &Series, s2: &Series) -> Result<OpOutcome, Error> {
        Ok(match self {
            Op::Oplus => OpOutcome::Ok(series::oplus(s, s2)?),
            Op::Wedge => OpOutcome::Ok(series::wedge(s, s2)?),
            Op::Hadamard => OpOutcome::Ok(hadamard::odot(s, s2)?),
            Op::Hres => OpOutcome::Ok(hadamard::sharp(s, s2)?),
            Op::Hdres => hadamard::flat(s, s2)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Literal(Series),
    Binary(Op, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn evaluate(&self) -> Result<OpOutcome, Error> {
        match self {
            Expr::Literal(s) => Ok(OpOutcome::Ok(s.clone())),
            Expr::Binary(op, l, r) => {
                let l = match l.evaluate()? {
                    OpOutcome::Ok(v) => v,
                    undefined => return Ok(undefined),
                };
                let r = match r.evaluate()? {
                    OpOutcome::Ok(v) => v,
                    undefined => return Ok(undefined),
                };
                op.apply(&l, &r)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Literal(s) if s.is_polynomial() => write!(f, "{s}"),
            Expr::Literal(s) => write!(f, "({s})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.keyword()),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError::Syntax {
            column: self.src[..self.pos].chars().count() + 1,
            message: message.into(),
        })
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    /// A keyword not followed by further word characters.
    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        if let Some(after) = rest.strip_prefix(word) {
            if !after.starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
                self.pos += word.len();
                return true;
            }
        }
        false
    }

    fn extint(&mut self) -> PResult<ExtInt> {
        self.skip_ws();
        let rest = self.rest();
        for (text, value) in [("-inf", NegInf), ("+inf", PosInf), ("inf", PosInf)] {
            if rest.starts_with(text) {
                self.pos += text.len();
                return Ok(value);
            }
        }
        let sign = usize::from(rest.starts_with('-'));
        let digits = rest[sign..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return self.error("expected an integer, 'inf' or '-inf'");
        }
        let text = &rest[..sign + digits];
        match text.parse::<i64>() {
            Ok(v) => {
                self.pos += text.len();
                Ok(Fin(v))
            }
            Err(_) => self.error(format!("integer {text} out of range")),
        }
    }

    fn mono(&mut self) -> PResult<Monomial> {
        let coeff = self.extint()?;
        if !self.rest().starts_with('d') {
            return self.error("expected 'd' after the coefficient");
        }
        self.pos += 1;
        if self.rest().starts_with(char::is_whitespace) {
            return self.error("expected an exponent right after 'd'");
        }
        let exp = self.extint()?;
        Ok(Monomial { coeff, exp })
    }

    fn starts_mono(&mut self) -> bool {
        self.skip_ws();
        let r = self.rest();
        r.starts_with(|c: char| c.is_ascii_digit() || c == '-') || r.starts_with("inf") || r.starts_with("+inf")
    }

    /// `mono ("+" mono)*`, stopping before a `"+" "("`.
    fn poly_terms(&mut self) -> PResult<Vec<Monomial>> {
        let mut terms = vec![self.mono()?];
        loop {
            let save = self.pos;
            if !self.eat('+') {
                break;
            }
            if self.starts_mono() {
                terms.push(self.mono()?);
            } else {
                self.pos = save;
                break;
            }
        }
        Ok(terms)
    }

    /// `"(" poly ")" "(" mono ")" "*"`; `None` (with the position restored)
    /// when the parenthesis does not open a periodic part.
    fn periodic_part(&mut self) -> PResult<Option<(Vec<Monomial>, Monomial)>> {
        let save = self.pos;
        if !self.eat('(') || !self.starts_mono() {
            self.pos = save;
            return Ok(None);
        }
        let pattern = match self.poly_terms() {
            Ok(p) => p,
            Err(_) => {
                self.pos = save;
                return Ok(None);
            }
        };
        if !self.eat(')') || !self.eat('(') {
            self.pos = save;
            return Ok(None);
        }
        let period = self.mono()?;
        self.expect(')')?;
        self.expect('*')?;
        Ok(Some((pattern, period)))
    }

    fn series(&mut self) -> PResult<Series> {
        if self.eat_word("eps") {
            return Ok(Series::epsilon());
        }
        if self.eat_word("top") {
            return Ok(Series::top());
        }
        if let Some((pattern, period)) = self.periodic_part()? {
            return Ok(Series::assemble([], pattern, period.coeff, period.exp)?);
        }
        if !self.starts_mono() {
            return self.error("expected a series");
        }
        let transient = self.poly_terms()?;
        let save = self.pos;
        if self.eat('+') {
            match self.periodic_part()? {
                Some((pattern, period)) => {
                    return Ok(Series::assemble(transient, pattern, period.coeff, period.exp)?)
                }
                None => {
                    self.skip_ws();
                    return self.error("expected a monomial or a periodic part after '+'");
                }
            }
        }
        self.pos = save;
        Ok(Polynomial::from_unsorted_terms(transient).into())
    }

    fn operand(&mut self) -> PResult<Expr> {
        let save = self.pos;
        if self.peek() == Some('(') {
            // "(" opens either a periodic part or a group
            if self.periodic_part()?.is_some() {
                self.pos = save;
                return Ok(Expr::Literal(self.series()?));
            }
            self.expect('(')?;
            let inner = self.expr()?;
            self.expect(')')?;
            return Ok(inner);
        }
        Ok(Expr::Literal(self.series()?))
    }

    fn op(&mut self) -> Option<Op> {
        Op::ALL.iter().find(|(_, kw)| self.eat_word(kw)).map(|(op, _)| *op)
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.operand()?;
        while let Some(op) = self.op() {
            let rhs = self.operand()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn finish(&mut self) -> PResult<()> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return self.error("unexpected input");
        }
        Ok(())
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_series(text: &str) -> Result<Series, ParseError> {
    let mut p = Parser::new(text);
    let s = p.series()?;
    p.finish()?;
    Ok(s)
}

impl std::str::FromStr for Series {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_series(s)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_top() {
            return f.write_str("top");
        }
        match (self.pattern(), self.period_monomial()) {
            (Some(q), Some(r)) => {
                if !self.transient().is_empty() {
                    write!(f, "{} + ", self.transient())?;
                }
                write!(f, "({q})({r})*")
            }
            _ => write!(f, "{}", self.transient()),
        }
    }
}

pub fn format_series(s: &Series) -> String {
    s.to_string()
}

fn json_ext(v: ExtInt) -> Value {
    match v {
        Fin(v) => json!(v),
        PosInf => json!("inf"),
        NegInf => json!("-inf"),
    }
}

fn json_terms(p: &Polynomial) -> Value {
    p.terms()
        .iter()
        .map(|m| json!([json_ext(m.coeff), json_ext(m.exp)]))
        .collect()
}

pub fn to_json(s: &Series) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("transient".into(), json_terms(s.transient()));
    if let (Some(q), Some((nu, tau))) = (s.pattern(), s.period()) {
        obj.insert("pattern".into(), json_terms(q));
        obj.insert("period".into(), json!([nu, tau]));
    }
    Value::Object(obj)
}
