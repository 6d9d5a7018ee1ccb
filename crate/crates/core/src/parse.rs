//! Parser for the polynomial input grammar.
//!
//! Grammar: integer literals; identifiers `[A-Za-z][A-Za-z0-9_]*`; operators
//! `+ - * ^` with `^` binding tightest, then `*`, then `+`/`-`; parentheses;
//! unary minus; whitespace insignificant.

use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::scalar::Field;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().unwrap();
                toks.push((start, Tok::Int(n)));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                i += 1;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{}`", other),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    field: &'a Field,
    vars: &'a [String],
    order: &'a MonomialOrder,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t, self.order);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t, self.order);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f, self.order);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let pos = self.here();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError::Syntax {
                        pos,
                        msg: "exponent out of range".into(),
                    })?;
                    return Ok(base.pow(e, self.order));
                }
                _ => {
                    return Err(ParseError::Syntax {
                        pos,
                        msg: "expected integer exponent after `^`".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => {
                Ok(Polynomial::constant(self.field.from_bigint(&n), self.vars.len()))
            }
            Some(Tok::Ident(name)) => {
                match self.vars.iter().position(|v| v == &name) {
                    Some(i) => Ok(Polynomial::var(self.field, i, self.vars.len())),
                    None => Err(ParseError::UnknownVariable { pos, name }),
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let pos = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError::Syntax { pos, msg: "expected `)`".into() }),
                }
            }
            other => Err(ParseError::Syntax {
                pos,
                msg: format!("expected a value, found {:?}", other),
            }),
        }
    }
}

/// Parse `text` to the normal form of the expression over the given variables.
pub fn parse_poly_raw(
    text: &str,
    field: &Field,
    vars: &[String],
    order: &MonomialOrder,
) -> Result<Polynomial, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks: &toks, pos: 0, end: text.len(), field, vars, order };
    let poly = p.expr()?;
    if p.pos != toks.len() {
        return Err(ParseError::Syntax { pos: p.here(), msg: "trailing input".into() });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_term_parse() {
        let v = vars(&["x", "y", "z"]);
        let p = parse_poly_raw("x^2 - y*z", &Field::Q, &v, &MonomialOrder::GrevLex).unwrap();
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn zero_literal() {
        let v = vars(&["x"]);
        let p = parse_poly_raw("0", &Field::Q, &v, &MonomialOrder::GrevLex).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn like_terms_combine() {
        let v = vars(&["x"]);
        let ord = MonomialOrder::GrevLex;
        let p = parse_poly_raw("x + x", &Field::Q, &v, &ord).unwrap();
        // oracle: combining term by term gives a single term 2*x
        let two_x = parse_poly_raw("2*x", &Field::Q, &v, &ord).unwrap();
        assert_eq!(p, two_x);
    }

    #[test]
    fn unknown_variable_reported() {
        let v = vars(&["x"]);
        let e = parse_poly_raw("x + w", &Field::Q, &v, &MonomialOrder::GrevLex).unwrap_err();
        assert_eq!(e, ParseError::UnknownVariable { pos: 4, name: "w".into() });
    }

    #[test]
    fn precedence_caret_star_plus() {
        let v = vars(&["x", "y"]);
        let ord = MonomialOrder::GrevLex;
        let a = parse_poly_raw("x + 2*x^2", &Field::Q, &v, &ord).unwrap();
        let b = parse_poly_raw("x + 2*(x^2)", &Field::Q, &v, &ord).unwrap();
        assert_eq!(a, b);
        let c = parse_poly_raw("-x^2", &Field::Q, &v, &ord).unwrap();
        let d = parse_poly_raw("0 - x^2", &Field::Q, &v, &ord).unwrap();
        assert_eq!(c, d);
    }
}
