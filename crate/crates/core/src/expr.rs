//! A small expression language for tangles and their closures.
//!
//! ```text
//! closure := "N(" tangle ")" | "D(" tangle ")" | "extsym(" tangle "," tangle ")"
//! tangle  := "T(" int "/" int ")" | "twist(" int ")" | "named(" ident ")"
//!          | "sum(" tangle "," tangle ")" | "rot(" tangle ")" | "reflect(" tangle ")"
//!          | ident
//! ```
//!
//! In `extsym(D, T)` the first argument is the partial-knot tangle `D`.

use std::fmt;

use num_integer::Integer;

use crate::catalog::Catalog;
use crate::construct::{extended_symmetric_union, LabeledDiagram};
use crate::error::{Error, Result};
use crate::tangle::{continued_fraction, ClosedDiagram, Tangle};

/// Largest number of crossings an expression may produce.
pub const MAX_CROSSINGS: u64 = 4000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TangleExpr {
    Rational(i64, i64),
    Twist(i64),
    Named(String),
    Sum(Box<TangleExpr>, Box<TangleExpr>),
    RotatePi(Box<TangleExpr>),
    Reflect(Box<TangleExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClosureExpr {
    Numerator(TangleExpr),
    Denominator(TangleExpr),
    /// `(D, T)`
    ExtSym(TangleExpr, TangleExpr),
}

impl fmt::Display for TangleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleExpr::Rational(p, q) => write!(f, "T({p}/{q})"),
            TangleExpr::Twist(n) => write!(f, "twist({n})"),
            TangleExpr::Named(s) => write!(f, "named({s})"),
            TangleExpr::Sum(a, b) => write!(f, "sum({a}, {b})"),
            TangleExpr::RotatePi(a) => write!(f, "rot({a})"),
            TangleExpr::Reflect(a) => write!(f, "reflect({a})"),
        }
    }
}

impl fmt::Display for ClosureExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureExpr::Numerator(t) => write!(f, "N({t})"),
            ClosureExpr::Denominator(t) => write!(f, "D({t})"),
            ClosureExpr::ExtSym(d, t) => write!(f, "extsym({d}, {t})"),
        }
    }
}

pub fn parse_closure(input: &str) -> Result<ClosureExpr> {
    let mut p = Parser::new(input);
    let e = p.closure()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_tangle(input: &str) -> Result<TangleExpr> {
    let mut p = Parser::new(input);
    let e = p.tangle()?;
    p.finish()?;
    Ok(e)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '#' | '*' | '\'' | '.')
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { chars: src.chars().collect(), pos: 0, src }
    }

    fn location(&self, at: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..at.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error_at(&self, at: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(at);
        Error::Syntax { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error_at(self.pos, format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error_at(self.pos, format!("expected `{want}`, found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| is_ident_char(c)) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.chars.get(self.pos) {
                Some(c) => self.error_at(start, format!("expected a name, found `{c}`")),
                None => self.error_at(start, "expected a name, found end of input"),
            });
        }
        Ok((self.chars[start..self.pos].iter().collect(), start))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-' | '+')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| {
            if text.trim_start_matches(['-', '+']).is_empty() {
                self.error_at(start, "expected an integer")
            } else {
                self.error_at(start, format!("integer `{text}` out of range"))
            }
        })
    }

    fn closure(&mut self) -> Result<ClosureExpr> {
        let (head, at) = self.ident()?;
        self.expect('(')?;
        let e = match head.as_str() {
            "N" => ClosureExpr::Numerator(self.tangle()?),
            "D" => ClosureExpr::Denominator(self.tangle()?),
            "extsym" => {
                let d = self.tangle()?;
                self.expect(',')?;
                ClosureExpr::ExtSym(d, self.tangle()?)
            }
            other => return Err(self.error_at(at, format!("expected N, D or extsym, found `{other}`"))),
        };
        self.expect(')')?;
        Ok(e)
    }

    fn tangle(&mut self) -> Result<TangleExpr> {
        let (head, at) = self.ident()?;
        if self.peek() != Some('(') {
            return Ok(TangleExpr::Named(head));
        }
        self.expect('(')?;
        let e = match head.as_str() {
            "T" => {
                let p = self.int()?;
                self.expect('/')?;
                TangleExpr::Rational(p, self.int()?)
            }
            "twist" => TangleExpr::Twist(self.int()?),
            "named" => TangleExpr::Named(self.ident()?.0),
            "sum" => {
                let a = self.tangle()?;
                self.expect(',')?;
                TangleExpr::Sum(Box::new(a), Box::new(self.tangle()?))
            }
            "rot" => TangleExpr::RotatePi(Box::new(self.tangle()?)),
            "reflect" => TangleExpr::Reflect(Box::new(self.tangle()?)),
            "N" | "D" | "extsym" => {
                return Err(self.error_at(at, format!("closure `{head}` cannot be used as a tangle")));
            }
            other => return Err(self.error_at(at, format!("unknown tangle constructor `{other}`"))),
        };
        self.expect(')')?;
        Ok(e)
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error_at(self.pos, format!("unexpected `{c}` after expression in `{}`", self.src.trim()))),
        }
    }
}

/// Crossing count the expression would produce, saturating.
fn crossing_estimate(e: &TangleExpr, cat: &Catalog) -> u64 {
    match e {
        TangleExpr::Rational(p, q) if *p == i64::MIN || *q == i64::MIN => u64::MAX,
        TangleExpr::Rational(p, q) if *q != 0 => {
            continued_fraction(*p, *q).iter().fold(0u64, |a, c| a.saturating_add(c.unsigned_abs()))
        }
        TangleExpr::Rational(..) => 0,
        TangleExpr::Twist(n) => n.unsigned_abs(),
        TangleExpr::Named(s) => cat.tangle(s).map(|t| crate::tangle::Diagram::crossing_count(&t) as u64).unwrap_or(0),
        TangleExpr::Sum(a, b) => crossing_estimate(a, cat).saturating_add(crossing_estimate(b, cat)),
        TangleExpr::RotatePi(a) | TangleExpr::Reflect(a) => crossing_estimate(a, cat),
    }
}

pub fn eval_tangle(e: &TangleExpr, cat: &Catalog) -> Result<Tangle> {
    let n = crossing_estimate(e, cat);
    if n > MAX_CROSSINGS {
        return Err(Error::Semantic(format!("expression has {n} crossings, the limit is {MAX_CROSSINGS}")));
    }
    eval_unchecked(e, cat)
}

fn eval_unchecked(e: &TangleExpr, cat: &Catalog) -> Result<Tangle> {
    Ok(match e {
        TangleExpr::Rational(_, 0) => return Err(Error::Semantic(format!("{e}: denominator is zero"))),
        TangleExpr::Rational(p, q) => {
            let g = p.gcd(q);
            Tangle::rational(p / g, q / g)?
        }
        TangleExpr::Twist(n) => Tangle::twist(*n),
        TangleExpr::Named(s) => cat.tangle(s)?,
        TangleExpr::Sum(a, b) => eval_unchecked(a, cat)?.sum(&eval_unchecked(b, cat)?),
        TangleExpr::RotatePi(a) => eval_unchecked(a, cat)?.rotate_pi(),
        TangleExpr::Reflect(a) => eval_unchecked(a, cat)?.reflect(),
    })
}

/// Result of evaluating a closure.
#[derive(Clone, Debug)]
pub enum Closed {
    Diagram(ClosedDiagram),
    ExtSym(Box<LabeledDiagram>),
}

impl Closed {
    pub fn diagram(&self) -> &ClosedDiagram {
        match self {
            Closed::Diagram(d) => d,
            Closed::ExtSym(ld) => ld.diagram(),
        }
    }
}

pub fn eval_closure(e: &ClosureExpr, cat: &Catalog) -> Result<Closed> {
    Ok(match e {
        ClosureExpr::Numerator(t) => Closed::Diagram(eval_tangle(t, cat)?.numerator()),
        ClosureExpr::Denominator(t) => Closed::Diagram(eval_tangle(t, cat)?.denominator()),
        ClosureExpr::ExtSym(d, t) => {
            let ld = extended_symmetric_union(&eval_tangle(d, cat)?, &eval_tangle(t, cat)?)?;
            Closed::ExtSym(Box::new(ld.with_name(e.to_string())))
        }
    })
}
