//! Text form of polynomials.
//!
//! Grammar (whitespace ignored):
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | '+' factor | power
//! power  := atom ('^' uint)?
//! atom   := uint ('/' uint)? | variable | '(' expr ')'
//! ```

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Exp, Monomial, Poly, PolyError, Ring};

pub fn parse_poly(text: &str, ring: &Arc<Ring>) -> Result<Poly, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> PolyError {
        PolyError::Syntax { pos: self.pos, message: message.to_string() }
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

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        // Catch implicit multiplication like "2x1" or "x1 x2" with a precise message.
        if let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'(' {
                return Err(self.err("expected operator (implicit multiplication is not allowed)"));
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            let e: Exp = digits.parse().map_err(|_| PolyError::Syntax {
                pos: start,
                message: "expected a small non-negative exponent".to_string(),
            })?;
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_ascii_digit() {
            let num: BigInt = self.digits().parse().expect("digit run");
            let den = if self.peek() == Some(b'/') {
                self.pos += 1;
                self.skip_ws();
                let d = self.digits();
                if d.is_empty() {
                    return Err(self.err("expected denominator"));
                }
                d.parse().expect("digit run")
            } else {
                BigInt::from(1)
            };
            let start = self.pos;
            let value = self
                .ring
                .field()
                .from_ratio(&num, &den)
                .map_err(|_| PolyError::Syntax { pos: start, message: "zero denominator".into() })?;
            return Ok(Poly::constant(self.ring, value));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
            return match self.ring.vars().index_of(&name) {
                Some(idx) => Ok(Poly::var(self.ring, idx)),
                None => Err(PolyError::UnknownVariable { name, pos: start }),
            };
        }
        Err(self.err(&format!("unexpected character '{}'", c as char)))
    }
}

fn print_monomial(m: &Monomial, ring: &Ring) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.vars().name(i)),
            _ => parts.push(format!("{}^{}", ring.vars().name(i), e)),
        }
    }
    parts.join("*")
}

/// Canonical text, e.g. `x1^2*T1*T2 - x1^2*T3^2`; always re-parses to the same polynomial.
pub fn print_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let c = c.abs();
        let mono = print_monomial(m, p.ring());
        if mono.is_empty() {
            out.push_str(&c.to_string());
        } else if c.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{c}*{mono}"));
        }
    }
    out
}
