//! Recursive-descent parser for the field expression grammar.
//!
//! Indeterminates are identifiers; operators `+ - * / ^` with the usual
//! precedence; parentheses; integer literals reduced mod p. Witt vectors
//! are parenthesized comma-separated coordinate lists.

use super::{FieldCtx, FieldElem};
use crate::error::ParseError;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

impl Lexer {
    fn new(text: &str) -> Result<Self, ParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            if c.is_ascii_digit() {
                let mut v: u64 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i] as u64 - '0' as u64))
                        .ok_or_else(|| ParseError::syntax(start, "integer literal too large"))?;
                    i += 1;
                }
                toks.push((Tok::Int(v), start));
            } else if c.is_alphabetic() || c == '_' {
                let mut name = String::new();
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    name.push(chars[i]);
                    i += 1;
                }
                toks.push((Tok::Ident(name), start));
            } else {
                let tok = match c {
                    '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    _ => return Err(ParseError::syntax(start, format!("unexpected character `{}`", c))),
                };
                toks.push((tok, start));
                i += 1;
            }
        }
        toks.push((Tok::End, chars.len()));
        Ok(Lexer { toks, i: 0 })
    }

    fn peek(&self) -> &(Tok, usize) {
        &self.toks[self.i]
    }

    fn next(&mut self) -> (Tok, usize) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }
}

struct Parser<'a> {
    lex: Lexer,
    ctx: &'a Arc<FieldCtx>,
}

impl<'a> Parser<'a> {
    fn expr(&mut self) -> Result<FieldElem, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.lex.peek() {
                (Tok::Op('+'), _) => {
                    self.lex.next();
                    acc = acc.add(&self.term()?);
                }
                (Tok::Op('-'), _) => {
                    self.lex.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElem, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.lex.peek() {
                (Tok::Op('*'), _) => {
                    self.lex.next();
                    acc = acc.mul(&self.factor()?);
                }
                (Tok::Op('/'), pos) => {
                    let pos = *pos;
                    self.lex.next();
                    let rhs = self.factor()?;
                    acc = acc
                        .div(&rhs)
                        .map_err(|_| ParseError::syntax(pos, "division by zero polynomial"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FieldElem, ParseError> {
        if let (Tok::Op('-'), _) = self.lex.peek() {
            self.lex.next();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if let (Tok::Op('^'), pos) = self.lex.peek() {
            let pos = *pos;
            self.lex.next();
            let neg = if let (Tok::Op('-'), _) = self.lex.peek() {
                self.lex.next();
                true
            } else {
                false
            };
            let e = match self.lex.next() {
                (Tok::Int(v), _) => v as i64,
                (_, p) => return Err(ParseError::syntax(p, "expected integer exponent")),
            };
            let e = if neg { -e } else { e };
            return base
                .pow(e)
                .map_err(|_| ParseError::syntax(pos, "negative power of zero"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElem, ParseError> {
        match self.lex.next() {
            (Tok::Int(v), _) => Ok(FieldElem::from_int(self.ctx, (v % self.ctx.p()) as i64)),
            (Tok::Ident(name), pos) => FieldElem::var(self.ctx, &name)
                .ok_or(ParseError::UnknownIndeterminate { name, pos }),
            (Tok::LParen, pos) => {
                let inner = self.expr()?;
                match self.lex.next() {
                    (Tok::RParen, _) => Ok(inner),
                    _ => Err(ParseError::syntax(pos, "unclosed parenthesis")),
                }
            }
            (_, pos) => Err(ParseError::syntax(pos, "expected an atom")),
        }
    }
}

/// Parse a single field expression against a field descriptor.
pub fn parse_elem(text: &str, ctx: &Arc<FieldCtx>) -> Result<FieldElem, ParseError> {
    let lex = Lexer::new(text)?;
    let mut parser = Parser { lex, ctx };
    let e = parser.expr()?;
    match parser.lex.peek() {
        (Tok::End, _) => Ok(e),
        (_, pos) => Err(ParseError::syntax(*pos, "trailing input")),
    }
}

/// Parse a Witt vector in the form `(c1, c2, ..., cm)`.
pub fn parse_coords(text: &str, ctx: &Arc<FieldCtx>) -> Result<Vec<FieldElem>, ParseError> {
    let lex = Lexer::new(text)?;
    let mut parser = Parser { lex, ctx };
    match parser.lex.next() {
        (Tok::LParen, _) => {}
        (_, pos) => return Err(ParseError::syntax(pos, "expected `(`")),
    }
    let mut coords = vec![parser.expr()?];
    loop {
        match parser.lex.next() {
            (Tok::Comma, _) => coords.push(parser.expr()?),
            (Tok::RParen, _) => break,
            (_, pos) => return Err(ParseError::syntax(pos, "expected `,` or `)`")),
        }
    }
    match parser.lex.peek() {
        (Tok::End, _) => Ok(coords),
        (_, pos) => Err(ParseError::syntax(*pos, "trailing input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    #[test]
    fn parses_polynomial_literal() {
        let ctx = FieldCtx::new(2, &["t", "s"]).unwrap();
        let e = parse_elem("t^2+t", &ctx).unwrap();
        assert!(e.den().is_one());
        assert_eq!(e.to_string(), "t^2 + t");
    }

    #[test]
    fn parses_fraction_with_monic_denominator() {
        let ctx = FieldCtx::new(3, &["t", "s"]).unwrap();
        let e = parse_elem("(t+s)/(t*s)", &ctx).unwrap();
        assert_eq!(e.to_string(), "(t + s)/(t*s)");
        // 2*(t+s) / 2*t*s must normalize identically
        let e2 = parse_elem("(2*t+2*s)/(2*t*s)", &ctx).unwrap();
        assert_eq!(e, e2);
    }

    #[test]
    fn gcd_reduction_in_parser() {
        // oracle: multiply back and compare cross products
        let ctx = FieldCtx::new(5, &["t", "s"]).unwrap();
        let e = parse_elem("t/ (t^2)", &ctx).unwrap();
        assert_eq!(e.to_string(), "1/t");
        let lhs = parse_elem("t", &ctx).unwrap();
        let rhs = parse_elem("t^2", &ctx).unwrap();
        assert_eq!(e.mul(&rhs), lhs);
    }

    #[test]
    fn error_positions() {
        let ctx = FieldCtx::new(2, &["t"]).unwrap();
        match parse_elem("t + q", &ctx) {
            Err(ParseError::UnknownIndeterminate { name, pos }) => {
                assert_eq!(name, "q");
                assert_eq!(pos, 4);
            }
            other => panic!("unexpected: {:?}", other),
        }
        assert!(matches!(parse_elem("t +", &ctx), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_elem("1/(t+t)", &ctx), Err(ParseError::Syntax { pos: 1, .. })));
    }

    #[test]
    fn parses_vectors() {
        let ctx = FieldCtx::new(2, &["t", "s"]).unwrap();
        let coords = parse_coords("(t, s + 1, 0)", &ctx).unwrap();
        assert_eq!(coords.len(), 3);
        assert!(coords[2].is_zero());
    }

    #[test]
    fn negative_exponent_inverts() {
        let ctx = FieldCtx::new(3, &["t"]).unwrap();
        let e = parse_elem("t^-2", &ctx).unwrap();
        assert_eq!(e.to_string(), "1/t^2");
    }
}
