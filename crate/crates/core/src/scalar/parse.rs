//! Recursive-descent parser for the expression grammar used by
//! configuration files and reports:
//!
//! ```text
//! expr     := ("+" | "-")? term (("+" | "-") term)*
//! term     := factor (("*" | "/") factor)*
//! factor   := atom ("^" integer)*
//! atom     := rational | symbol | "(" expr ")"
//! rational := digits ("/" digits)?
//! integer  := "-"? digits
//! ```
//!
//! Whitespace is insignificant. Symbols must be declared in the chart.
//! Printing a parsed expression and re-parsing it is a fixed point.

use std::sync::Arc;

use num::bigint::BigInt;
use num::BigRational;
use thiserror::Error;

use super::chart::Chart;
use super::expr::{ExprError, ScalarExpr};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("undeclared symbol `{name}` at offset {offset}")]
    UndeclaredSymbol { offset: usize, name: String },
    #[error("division by the zero polynomial at offset {offset}")]
    ZeroDenominator { offset: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut lex = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        loop {
            lex.skip_ws();
            let start = lex.pos;
            let tok = lex.next_token()?;
            let end = tok == Tok::End;
            out.push((start, tok));
            if end {
                return Ok(out);
            }
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next_token(&mut self) -> Result<Tok, ParseError> {
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return Ok(t);
        }
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return Ok(Tok::Int(text.parse().unwrap()));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return Ok(Tok::Ident(text.to_string()));
        }
        Err(ParseError::Syntax {
            offset: self.pos,
            message: format!("unexpected character `{}`", c as char),
        })
    }
}

struct Parser<'a> {
    chart: &'a Arc<Chart>,
    tokens: Vec<(usize, Tok)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.offset(),
            message: message.to_string(),
        })
    }

    fn expr(&mut self) -> Result<ScalarExpr, ParseError> {
        let negate = match self.peek() {
            Tok::Plus => {
                self.bump();
                false
            }
            Tok::Minus => {
                self.bump();
                true
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    let offset = self.offset();
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc
                        .div(&rhs)
                        .map_err(|_| ParseError::ZeroDenominator { offset })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut acc = self.atom()?;
        while *self.peek() == Tok::Caret {
            let offset = self.offset();
            self.bump();
            let exponent = self.exponent()?;
            acc = acc
                .pow(exponent)
                .map_err(|_| ParseError::ZeroDenominator { offset })?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Tok::Int(n) => {
                let n: i64 = n.try_into().map_err(|_| ParseError::Syntax {
                    offset: self.offset(),
                    message: "exponent too large".into(),
                })?;
                Ok(if negate { -n } else { n })
            }
            _ => self.syntax("expected integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<ScalarExpr, ParseError> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(ScalarExpr::constant(
                    self.chart,
                    BigRational::from_integer(n),
                ))
            }
            Tok::Ident(name) => {
                self.bump();
                match self.chart.lookup(&name) {
                    Some(sym) => Ok(ScalarExpr::symbol(self.chart, sym)),
                    None => Err(ParseError::UndeclaredSymbol { offset, name }),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.syntax("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            _ => self.syntax("expected a number, symbol or `(`"),
        }
    }
}

/// Parses an expression over the chart's declared symbols.
pub fn parse_expression(chart: &Arc<Chart>, text: &str) -> Result<ScalarExpr, ParseError> {
    let tokens = Lexer::tokens(text)?;
    let mut parser = Parser {
        chart,
        tokens,
        pos: 0,
    };
    let expr = parser.expr()?;
    if *parser.peek() != Tok::End {
        return parser.syntax("unexpected trailing input");
    }
    Ok(expr)
}

/// Parses a rational literal such as `-3/4` or `2`.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let text = text.trim();
    let (negate, rest) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let mut parts = rest.splitn(2, '/');
    let bad = |message: &str| ParseError::Syntax {
        offset: 0,
        message: message.to_string(),
    };
    let numer: BigInt = parts
        .next()
        .filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
        .ok_or_else(|| bad("expected rational literal"))?
        .parse()
        .map_err(|_| bad("expected rational literal"))?;
    let denom: BigInt = match parts.next() {
        Some(d) => {
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| bad("expected integer denominator"))?;
            if d == BigInt::from(0) {
                return Err(ParseError::ZeroDenominator { offset: 0 });
            }
            d
        }
        None => BigInt::from(1),
    };
    let r = BigRational::new(numer, denom);
    Ok(if negate { -r } else { r })
}

// Propagate zero-denominator construction as a parse-level error kind.
impl From<ExprError> for ParseError {
    fn from(_: ExprError) -> Self {
        ParseError::ZeroDenominator { offset: 0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn rat(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn chart() -> Arc<Chart> {
        Arc::new(Chart::new(vec!["x", "y", "z", "t"], vec![("e2z", "z", rat(2))]).unwrap())
    }

    #[test]
    fn parses_polynomials() {
        let c = chart();
        let x = ScalarExpr::symbol(&c, 0);
        let y = ScalarExpr::symbol(&c, 1);
        let z = ScalarExpr::symbol(&c, 2);
        let t = ScalarExpr::symbol(&c, 3);
        assert_eq!(
            parse_expression(&c, "x^2 - y").unwrap(),
            x.mul(&x).sub(&y)
        );
        let half = ScalarExpr::constant(&c, BigRational::new(1.into(), 2.into()));
        assert_eq!(
            parse_expression(&c, "1/2*z*t").unwrap(),
            half.mul(&z).mul(&t)
        );
        assert_eq!(parse_expression(&c, "-y").unwrap(), y.neg());
        assert_eq!(
            parse_expression(&c, "(z^2-1)/4").unwrap(),
            z.mul(&z)
                .sub(&ScalarExpr::one(&c))
                .scale(&BigRational::new(1.into(), 4.into()))
        );
        // power chains are left-associative
        assert_eq!(
            parse_expression(&c, "x^2^3").unwrap(),
            x.pow(6).unwrap()
        );
        // negative exponents build reciprocals
        assert_eq!(
            parse_expression(&c, "x^-1").unwrap(),
            x.recip().unwrap()
        );
    }

    #[test]
    fn error_positions() {
        let c = chart();
        assert_eq!(
            parse_expression(&c, "x+").unwrap_err(),
            ParseError::Syntax {
                offset: 2,
                message: "expected a number, symbol or `(`".into()
            }
        );
        assert_eq!(
            parse_expression(&c, "x + w").unwrap_err(),
            ParseError::UndeclaredSymbol {
                offset: 4,
                name: "w".into()
            }
        );
        assert_eq!(
            parse_expression(&c, "1/(x-x)").unwrap_err(),
            ParseError::ZeroDenominator { offset: 1 }
        );
        assert!(matches!(
            parse_expression(&c, "x y").unwrap_err(),
            ParseError::Syntax { offset: 2, .. }
        ));
    }

    #[test]
    fn print_parse_fixed_point() {
        let c = chart();
        for text in [
            "x^2 - y",
            "-1/2*x + 3*y*z - e2z",
            "(x + y)/(x - y)",
            "(-x^3 + 2/3)/(z^2 + 1)",
            "x*y*z*t*e2z^2",
        ] {
            let e = parse_expression(&c, text).unwrap();
            let printed = e.to_string();
            let reparsed = parse_expression(&c, &printed).unwrap();
            assert_eq!(e, reparsed, "round-trip failed for {text} -> {printed}");
        }
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3/4").unwrap(), BigRational::new(3.into(), 4.into()));
        assert_eq!(parse_rational("-2").unwrap(), rat(-2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
