//! Text grammar for bracket expressions:
//!
//! ```text
//! sum  := term (('+' | '-') term)*
//! term := ['-'] [integer '*'] atom
//! atom := 'a' | 'b' | '[' sum (',' sum)+ ']' | '(' sum ')'
//! ```
//!
//! `[e1, e2, ..., en]` with more than two entries is left-normed.

use num_bigint::BigInt;
use num_traits::One;

use super::{left_normed, BracketExpr};
use crate::error::{Error, Result};

pub fn parse_expr(src: &str) -> Result<BracketExpr> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", ch as char)))
        }
    }

    fn sum(&mut self) -> Result<BracketExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BracketExpr> {
        let mut coeff = BigInt::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            coeff = -coeff;
        }
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
            let n: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
            coeff *= n;
            self.expect(b'*')?;
            // allow a sign right after the star: 3*-[a,b]
            if self.peek() == Some(b'-') {
                self.pos += 1;
                coeff = -coeff;
            }
        }
        Ok(self.atom()?.scale(&coeff))
    }

    fn atom(&mut self) -> Result<BracketExpr> {
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                Ok(BracketExpr::a())
            }
            Some(b'b') => {
                self.pos += 1;
                Ok(BracketExpr::b())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut items = vec![self.sum()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    items.push(self.sum()?);
                }
                self.expect(b']')?;
                if items.len() < 2 {
                    return Err(self.error("a bracket needs at least two entries"));
                }
                left_normed(&items)
            }
            Some(_) => Err(self.error("expected 'a', 'b', '[' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(parse_expr("a").unwrap().to_string(), "a");
        assert_eq!(parse_expr("[a,b]").unwrap().to_string(), "[a,b]");
        assert_eq!(parse_expr("[a,b,b,a]").unwrap().to_string(), "[[[a,b],b],a]");
        assert_eq!(parse_expr("3*[a,b] + -1*[b,a]").unwrap().to_string(), "3*[a,b] - [b,a]");
        assert_eq!(parse_expr(" - [a, b] ").unwrap().to_string(), "-[a,b]");
        assert_eq!(parse_expr("[a+b,b]").unwrap().to_string(), "[a,b] + [b,b]");
        assert_eq!(parse_expr("2*[a,b] - 2*[a,b]").unwrap().to_string(), "0");
    }

    #[test]
    fn errors_carry_position() {
        assert!(matches!(parse_expr("[a]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("[a,c]"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_expr("a b"), Err(Error::Parse { pos: 2, .. })));
        assert!(parse_expr("").is_err());
        assert!(parse_expr("3[a,b]").is_err());
    }

    #[test]
    fn display_reparses() {
        for s in ["[a,[a,b]] - 5*[[a,b],a]", "-[b,a] + [a,b]", "[a,b,[a,b]]"] {
            let e = parse_expr(s).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        }
    }
}
