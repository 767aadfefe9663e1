//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: integer literals, declared variable names, `+ - * ^`,
//! parentheses, and `/` between two integer literals (so printed
//! rational coefficients round-trip). Implicit multiplication is a
//! syntax error. Positions are 1-based line/column.

use crate::exact::coeff::Coeff;
use crate::exact::poly::{Polynomial, PolyRing};
use num::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("undeclared variable `{name}` at {line}:{col}")]
    UndeclaredVariable { name: String, line: usize, col: usize },
    #[error("negative exponent at {line}:{col}")]
    NegativeExponent { line: usize, col: usize },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SYNTAX_ERROR",
            ParseError::UndeclaredVariable { .. } => "UNDECLARED_VARIABLE",
            ParseError::NegativeExponent { .. } => "NEGATIVE_EXPONENT",
        }
    }

    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. }
            | ParseError::UndeclaredVariable { line, col, .. }
            | ParseError::NegativeExponent { line, col } => (*line, *col),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
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

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let bump = |chars: &mut std::iter::Peekable<std::str::Chars>, line: &mut usize, col: &mut usize| {
            let c = chars.next().unwrap();
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars, &mut line, &mut col);
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(bump(&mut chars, &mut line, &mut col));
                } else {
                    break;
                }
            }
            let n: BigInt = digits.parse().unwrap();
            out.push(Spanned { tok: Tok::Int(n), line: tl, col: tc });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    name.push(bump(&mut chars, &mut line, &mut col));
                } else {
                    break;
                }
            }
            out.push(Spanned { tok: Tok::Ident(name), line: tl, col: tc });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError::Syntax {
                    line: tl,
                    col: tc,
                    message: format!("unexpected character `{}`", other),
                })
            }
        };
        bump(&mut chars, &mut line, &mut col);
        out.push(Spanned { tok, line: tl, col: tc });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser<'r> {
    ring: &'r PolyRing,
    toks: Vec<Spanned>,
    pos: usize,
}

impl<'r> Parser<'r> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn advance(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError::Syntax { line: t.line, col: t.col, message: message.into() }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.advance();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.advance();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.advance();
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.advance();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.advance();
        let spot = self.peek().clone();
        let negative = if spot.tok == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        let e_tok = self.advance();
        let e = match e_tok.tok {
            Tok::Int(n) => n,
            _ => return Err(ParseError::Syntax {
                line: e_tok.line,
                col: e_tok.col,
                message: "exponent must be an integer literal".into(),
            }),
        };
        if negative {
            return Err(ParseError::NegativeExponent { line: spot.line, col: spot.col });
        }
        let e: u32 = e.try_into().map_err(|_| ParseError::Syntax {
            line: e_tok.line,
            col: e_tok.col,
            message: "exponent too large".into(),
        })?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let t = self.advance();
        let value = match t.tok {
            Tok::Int(n) => {
                let num = self.ring.domain().from_bigint(&n);
                // Rational literal: INT / INT.
                if self.peek().tok == Tok::Slash {
                    self.advance();
                    let d_tok = self.advance();
                    let d = match d_tok.tok {
                        Tok::Int(d) => d,
                        _ => {
                            return Err(ParseError::Syntax {
                                line: d_tok.line,
                                col: d_tok.col,
                                message: "`/` expects an integer denominator".into(),
                            })
                        }
                    };
                    let den = self.ring.domain().from_bigint(&d);
                    let c = self.ring.domain().div_exact(&num, &den).ok_or(ParseError::Syntax {
                        line: d_tok.line,
                        col: d_tok.col,
                        message: "denominator is zero or does not divide".into(),
                    })?;
                    self.ring.constant(c)
                } else {
                    self.ring.constant(num)
                }
            }
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => self.ring.var(i),
                None => {
                    return Err(ParseError::UndeclaredVariable { name, line: t.line, col: t.col })
                }
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.advance();
                if close.tok != Tok::RParen {
                    return Err(ParseError::Syntax {
                        line: close.line,
                        col: close.col,
                        message: "expected `)`".into(),
                    });
                }
                inner
            }
            _ => {
                return Err(ParseError::Syntax {
                    line: t.line,
                    col: t.col,
                    message: "expected a literal, variable, or `(`".into(),
                })
            }
        };
        // Implicit multiplication ("2x", "x y", "3(x+y)") is rejected here.
        match self.peek().tok {
            Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                Err(self.err_here("missing operator (implicit multiplication is not allowed)"))
            }
            _ => Ok(value),
        }
    }
}

pub fn parse_poly(ring: &PolyRing, text: &str) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { ring, toks, pos: 0 };
    let value = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.err_here("trailing input"));
    }
    Ok(value)
}

/// Coefficient scalar in the ring's domain, parsed with the same grammar.
pub fn parse_scalar(ring: &PolyRing, text: &str) -> Result<Coeff, ParseError> {
    let p = parse_poly(ring, text)?;
    p.constant_value().ok_or(ParseError::Syntax {
        line: 1,
        col: 1,
        message: "expected a constant".into(),
    })
}
