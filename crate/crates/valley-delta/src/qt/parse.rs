//! Parser for the canonical plain-text rendering of q,t scalars, accepting
//! the full `+ - * / ^ ( )` expression grammar over integers, `q` and `t`.

use num_bigint::BigInt;

use super::poly::QtPoly;
use super::rational::QtRational;
use super::QtError;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Q,
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>, QtError> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Int(digits.parse().expect("digits")));
            }
            'q' => {
                chars.next();
                out.push(Token::Q);
            }
            't' => {
                chars.next();
                out.push(Token::T);
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            other => return Err(QtError::Parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<QtRational, QtError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QtRational, QtError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    acc = acc.checked_div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QtRational, QtError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<QtRational, QtError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            match self.bump() {
                Some(Token::Int(e)) => {
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| QtError::Parse("exponent out of range".into()))?;
                    Ok(base.pow(e))
                }
                other => Err(QtError::Parse(format!(
                    "expected integer exponent, found {other:?}"
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<QtRational, QtError> {
        match self.bump() {
            Some(Token::Int(n)) => Ok(QtRational::from_int(n)),
            Some(Token::Q) => Ok(QtPoly::q().into()),
            Some(Token::T) => Ok(QtPoly::t().into()),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    other => Err(QtError::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(QtError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<QtRational, QtError> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(QtError::Parse("empty input".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let r = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(QtError::Parse("trailing input".into()));
    }
    Ok(r)
}
