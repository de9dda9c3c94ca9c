//! Recursive-descent parser for the polynomial grammar.
//!
//! Literals are integers or rationals `p/q`, `i` is the imaginary unit,
//! operators are `+ - * ^` with `^` restricted to non-negative integer
//! literals. Implicit multiplication is rejected.

use super::{Coefficient, Polynomial};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigRational),
    ImagUnit,
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Token)>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            if self.pos >= self.text.len() {
                break;
            }
            let start = self.pos;
            let c = self.text[self.pos];
            let tok = match c {
                b'+' => {
                    self.pos += 1;
                    Token::Plus
                }
                b'-' => {
                    self.pos += 1;
                    Token::Minus
                }
                b'*' => {
                    self.pos += 1;
                    Token::Star
                }
                b'^' => {
                    self.pos += 1;
                    Token::Caret
                }
                b'(' => {
                    self.pos += 1;
                    Token::LParen
                }
                b')' => {
                    self.pos += 1;
                    Token::RParen
                }
                b'0'..=b'9' => {
                    let numer = self.read_integer();
                    self.skip_ws();
                    if self.pos < self.text.len() && self.text[self.pos] == b'/' {
                        self.pos += 1;
                        self.skip_ws();
                        if self.pos >= self.text.len() || !self.text[self.pos].is_ascii_digit() {
                            return Err(Error::Syntax {
                                position: self.pos,
                                message: "expected denominator after '/'".into(),
                            });
                        }
                        let denom = self.read_integer();
                        if denom.is_zero() {
                            return Err(Error::ZeroDenominator { position: start });
                        }
                        Token::Number(BigRational::new(numer, denom))
                    } else {
                        Token::Number(BigRational::from_integer(numer))
                    }
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let mut end = self.pos;
                    while end < self.text.len()
                        && (self.text[end].is_ascii_alphanumeric() || self.text[end] == b'_')
                    {
                        end += 1;
                    }
                    let name = std::str::from_utf8(&self.text[self.pos..end])
                        .expect("ascii slice")
                        .to_string();
                    self.pos = end;
                    if name == "i" {
                        Token::ImagUnit
                    } else {
                        Token::Ident(name)
                    }
                }
                other => {
                    return Err(Error::Syntax {
                        position: start,
                        message: format!("unexpected character '{}'", other as char),
                    })
                }
            };
            out.push((start, tok));
        }
        Ok(out)
    }

    fn read_integer(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii digits")
            .parse()
            .expect("digit run parses as BigInt")
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    variables: &'a [&'a str],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn nvars(&self) -> usize {
        self.variables.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Some(Token::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.bump();
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        loop {
            match self.peek() {
                Some(Token::Minus) => {
                    negate = !negate;
                    self.bump();
                }
                Some(Token::Plus) => {
                    self.bump();
                }
                _ => break,
            }
        }
        let base = self.atom()?;
        let powered = if let Some(Token::Caret) = self.peek() {
            let caret_pos = self.here();
            self.bump();
            match self.bump() {
                Some(Token::Number(r)) if r.is_integer() && !r.numer().sign().eq(&num_bigint::Sign::Minus) => {
                    let e: u32 = r.numer().try_into().map_err(|_| Error::Syntax {
                        position: caret_pos,
                        message: "exponent too large".into(),
                    })?;
                    base.pow(e)
                }
                _ => {
                    return Err(Error::Syntax {
                        position: caret_pos,
                        message: "'^' requires a non-negative integer literal exponent".into(),
                    })
                }
            }
        } else {
            base
        };
        if negate {
            Ok(-&powered)
        } else {
            Ok(powered)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let position = self.here();
        match self.bump() {
            Some(Token::Number(r)) => Ok(Polynomial::constant(
                self.nvars(),
                Coefficient::new(r, BigRational::zero()),
            )),
            Some(Token::ImagUnit) => Ok(Polynomial::constant(self.nvars(), Coefficient::i())),
            Some(Token::Ident(name)) => {
                match self.variables.iter().position(|&v| v == name) {
                    Some(idx) => Polynomial::var(self.nvars(), idx),
                    None => Err(Error::UnknownVariable { name, position }),
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Syntax {
                        position,
                        message: "unclosed parenthesis".into(),
                    }),
                }
            }
            other => Err(Error::Syntax {
                position,
                message: format!("expected a value, found {other:?}"),
            }),
        }
    }
}

/// Parses `text` over the declared variable names.
///
/// The name `i` always denotes the imaginary unit and may not be declared
/// as a variable.
pub fn parse(text: &str, variables: &[&str]) -> Result<Polynomial> {
    if variables.iter().any(|&v| v == "i") {
        return Err(Error::InvalidInput(
            "variable name 'i' collides with the imaginary unit".into(),
        ));
    }
    let tokens = Lexer::new(text).tokens()?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        variables,
        end: text.len(),
    };
    let poly = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(Error::Syntax {
            position: parser.here(),
            message: "trailing input".into(),
        });
    }
    Ok(poly)
}
