//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | VAR | '(' expr ')'
//! VAR    := 'X' INT | 'X' | 'Y'
//! ```
//!
//! `X` and `Y` name the two variables of a bivariate polynomial; `Xi` is the `i`-th variable
//! (1-based) and must not exceed the declared arity. Integer literals map into the prime field.

use super::{MPoly, PolyError};
use crate::gf::FieldCtx;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a FieldCtx,
    nvars: usize,
}

/// Parses `text` as a polynomial in `nvars` variables over `ctx`.
pub fn parse_poly(ctx: &FieldCtx, nvars: usize, text: &str) -> Result<MPoly, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
        nvars,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

impl Parser<'_> {
    fn err(&self, message: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            message: message.to_string(),
        }
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

    fn integer(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| PolyError::Parse {
                pos: start,
                message: "integer literal too large".into(),
            })
    }

    fn expr(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly, PolyError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let c = (n % self.ctx.characteristic() as u64) as u32;
                Ok(MPoly::constant(self.ctx, self.nvars, c))
            }
            Some(b'X') | Some(b'Y') => {
                let letter = self.src[self.pos];
                self.pos += 1;
                let indexed = self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit());
                let idx = if letter == b'X' && indexed {
                    let i = self.integer()? as usize;
                    if i == 0 || i > self.nvars {
                        return Err(PolyError::UnknownVariable(format!("X{i}")));
                    }
                    i - 1
                } else {
                    if self.nvars != 2 {
                        let name = (letter as char).to_string();
                        return Err(PolyError::UnknownVariable(name));
                    }
                    if letter == b'X' {
                        0
                    } else {
                        1
                    }
                };
                Ok(MPoly::var(self.ctx, self.nvars, idx))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_unary_minus() {
        let k = FieldCtx::prime(7).unwrap();
        let a = parse_poly(&k, 2, "-X^2").unwrap();
        assert_eq!(a.coeff(&[2, 0]), 6);
        let b = parse_poly(&k, 2, "2*(X+Y)^2 - 3").unwrap();
        assert_eq!(b.coeff(&[1, 1]), 4);
        assert_eq!(b.constant_term(), 4);
        assert_eq!(
            parse_poly(&k, 2, "X1*X2").unwrap(),
            parse_poly(&k, 2, "X*Y").unwrap()
        );
    }

    #[test]
    fn rejects_bad_input() {
        let k = FieldCtx::prime(3).unwrap();
        assert_eq!(
            parse_poly(&k, 3, "X4 + 1"),
            Err(PolyError::UnknownVariable("X4".into()))
        );
        assert!(matches!(
            parse_poly(&k, 3, "Y"),
            Err(PolyError::UnknownVariable(_))
        ));
        assert!(matches!(
            parse_poly(&k, 2, "X +"),
            Err(PolyError::Parse { .. })
        ));
        assert!(matches!(
            parse_poly(&k, 2, "(X"),
            Err(PolyError::Parse { .. })
        ));
        assert!(matches!(
            parse_poly(&k, 2, "X^-1"),
            Err(PolyError::Parse { .. })
        ));
        assert!(matches!(
            parse_poly(&k, 2, "X Y"),
            Err(PolyError::Parse { .. })
        ));
    }
}
