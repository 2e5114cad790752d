//! Tiny expression grammar for symbolic inputs:
//!
//! ```text
//! expr := nabla(expr) | theta(e_k, expr) | delta(h_m, expr)
//!       | deltap(e_j, expr) | hperp(m, expr) | E(n, k) | e(n)
//! ```
//!
//! Operator weights accept both `e_2` and `e(2)` spellings; whitespace is
//! free.

use crate::symfunc::{delta, delta_prime, e_nk, h_perp, nabla, theta, SymF};

use super::CheckError;

pub fn parse_expr(input: &str) -> Result<SymF, CheckError> {
    let mut p = Cursor {
        text: input,
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(bad(format!("trailing input at byte {}", p.pos)));
    }
    Ok(out)
}

fn bad(msg: String) -> CheckError {
    CheckError::BadParams(msg)
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: char) -> Result<(), CheckError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len_utf8();
            Ok(())
        } else {
            Err(bad(format!("expected '{token}' at byte {}", self.pos)))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_alphabetic())
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        self.pos += len;
        rest[..len].to_string()
    }

    fn integer(&mut self) -> Result<i64, CheckError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_digit())
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(bad(format!("expected integer at byte {}", self.pos)));
        }
        self.pos += len;
        rest[..len]
            .parse()
            .map_err(|_| bad("integer out of range".into()))
    }

    /// An operator weight like `e_2`, `e(2)`, `h_1` or `h(1)`.
    fn weight(&mut self, letter: char) -> Result<usize, CheckError> {
        self.skip_ws();
        let name = self.ident();
        if name.len() != 1 || !name.starts_with(letter) {
            return Err(bad(format!("expected '{letter}_<k>' weight, got '{name}'")));
        }
        self.skip_ws();
        if self.text[self.pos..].starts_with('_') {
            self.pos += 1;
            Ok(self.integer()? as usize)
        } else {
            self.eat('(')?;
            let v = self.integer()? as usize;
            self.eat(')')?;
            Ok(v)
        }
    }

    fn expr(&mut self) -> Result<SymF, CheckError> {
        self.skip_ws();
        let head = self.ident();
        match head.as_str() {
            "nabla" => {
                self.eat('(')?;
                let inner = self.expr()?;
                self.eat(')')?;
                Ok(nabla(&inner)?)
            }
            "theta" => {
                self.eat('(')?;
                let k = self.weight('e')?;
                self.eat(',')?;
                let inner = self.expr()?;
                self.eat(')')?;
                Ok(theta(&SymF::e(k), &inner)?)
            }
            "delta" => {
                self.eat('(')?;
                let m = self.weight('h')?;
                self.eat(',')?;
                let inner = self.expr()?;
                self.eat(')')?;
                Ok(delta(&SymF::h(m), &inner)?)
            }
            "deltap" => {
                self.eat('(')?;
                let j = self.weight('e')?;
                self.eat(',')?;
                let inner = self.expr()?;
                self.eat(')')?;
                Ok(delta_prime(&SymF::e(j), &inner)?)
            }
            "hperp" => {
                self.eat('(')?;
                let m = self.integer()? as usize;
                self.eat(',')?;
                let inner = self.expr()?;
                self.eat(')')?;
                Ok(h_perp(m, &inner)?)
            }
            "E" => {
                self.eat('(')?;
                let n = self.integer()?;
                self.eat(',')?;
                let k = self.integer()?;
                self.eat(')')?;
                Ok(e_nk(n, k)?)
            }
            "e" => {
                self.eat('(')?;
                let n = self.integer()? as usize;
                self.eat(')')?;
                if n > crate::symfunc::DEGREE_BOUND {
                    return Err(CheckError::Sym(crate::symfunc::SymError::DegreeBound {
                        degree: n,
                        bound: crate::symfunc::DEGREE_BOUND,
                    }));
                }
                Ok(SymF::e(n))
            }
            other => Err(bad(format!("unknown function '{other}'"))),
        }
    }
}
