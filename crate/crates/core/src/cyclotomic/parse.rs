//! Text syntax for cyclotomic numbers.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'E' '(' integer ')' | '(' expr ')'
//! ```
//! `E(n)` is `exp(2 pi i / n)`. Division by an exact zero is reported as
//! [`Error::DivisionByZero`].

use num_bigint::BigInt;

use super::Cyclotomic;
use crate::error::{Error, Result};

pub fn parse_cyclotomic(input: &str) -> Result<Cyclotomic> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(Error::parse(0, "empty expression"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(Error::parse(p.pos, format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(Error::parse(self.pos, format!("expected `{}`, found `{}`", c as char, x as char))),
            None => Err(Error::parse(self.pos, format!("expected `{}`, found end of input", c as char))),
        }
    }

    fn expr(&mut self) -> Result<Cyclotomic> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Cyclotomic> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' { acc * rhs } else { acc.checked_div(&rhs)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Cyclotomic> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Cyclotomic> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        let digits = self.integer()?;
        let e: i64 = digits
            .try_into()
            .map_err(|_| Error::parse(start, "exponent too large"))?;
        base.pow(if negative { -e } else { e })
    }

    fn atom(&mut self) -> Result<Cyclotomic> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'E') => {
                self.pos += 1;
                self.expect(b'(')?;
                let start = self.pos;
                let n = self.integer()?;
                let n: u32 = n
                    .try_into()
                    .map_err(|_| Error::parse(start, "root order too large"))?;
                if n == 0 {
                    return Err(Error::parse(start, "E(0) is undefined"));
                }
                self.expect(b')')?;
                Ok(Cyclotomic::root_of_unity(n, 1))
            }
            Some(c) if c.is_ascii_digit() => Ok(Cyclotomic::from(self.integer()?)),
            Some(c) => Err(Error::parse(self.pos, format!("unexpected `{}`", c as char))),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Cyclotomic {
        parse_cyclotomic(s).unwrap()
    }

    #[test]
    fn basic_values() {
        assert_eq!(p("E(4)^2"), Cyclotomic::from_integer(-1));
        assert_eq!(p("1/2 + 1/2"), Cyclotomic::from_integer(1));
        assert_eq!(p("-E(3)^-1"), -Cyclotomic::root_of_unity(3, 2));
        assert_eq!(p("(1+2*E(3))^2"), Cyclotomic::from_integer(-3));
        assert_eq!(p("2^10"), Cyclotomic::from_integer(1024));
    }

    #[test]
    fn precedence() {
        assert_eq!(p("1+2*3"), Cyclotomic::from_integer(7));
        assert_eq!(p("-2^2"), Cyclotomic::from_integer(-4));
        assert_eq!(p("8/2/2"), Cyclotomic::from_integer(2));
        assert_eq!(p("2-3-4"), Cyclotomic::from_integer(-5));
    }

    #[test]
    fn display_round_trip() {
        for s in ["-1/2+3*E(8)^3", "E(7)+E(7)^2+E(7)^4", "5/3", "-E(12)^7 + 2"] {
            let v = p(s);
            assert_eq!(p(&v.to_string()), v, "{s}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_cyclotomic(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_cyclotomic("E(0)"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_cyclotomic("1 +"), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_cyclotomic("2 x"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_cyclotomic("(1"), Err(Error::Parse { .. })));
        assert_eq!(parse_cyclotomic("1/(E(4)^2+1)"), Err(Error::DivisionByZero));
        assert_eq!(parse_cyclotomic("0^-1"), Err(Error::DivisionByZero));
    }
}
