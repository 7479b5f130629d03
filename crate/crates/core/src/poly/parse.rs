//! Recursive-descent parser for the polynomial input language:
//!
//! ```text
//! poly   := ws term (ws ('+'|'-') ws term)* ws
//! term   := coeff ('*'? factor)* | factor ('*'? factor)*
//! factor := ident ('^' sint)?
//! coeff  := sint ('/' uint)?
//! sint   := '-'? uint ; uint := [0-9]+ ; ident := [a-zA-Z][a-zA-Z0-9]*
//! ```
//!
//! A leading `-` on a term negates it. Whitespace is also accepted between
//! the tokens of a term.

use alloc::string::{String, ToString};
use alloc::vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExpVec, LaurentPoly};
use crate::rational::Rational;
use crate::{Error, ParseError, Result};

fn is_ident(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric())
}

/// Checks that variable names are valid identifiers and pairwise distinct.
pub fn validate_variables(vars: &[&str]) -> Result<()> {
    for (i, v) in vars.iter().enumerate() {
        if !is_ident(v) {
            return Err(Error::InvalidVariable(v.to_string()));
        }
        if vars[..i].contains(v) {
            return Err(Error::DuplicateVariable(v.to_string()));
        }
    }
    Ok(())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: &str) -> Result<T> {
        Err(ParseError { position: self.pos, message: message.to_string() }.into())
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as an integer"))
    }

    fn sint_exponent(&mut self) -> Result<i64> {
        let negative = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        let magnitude = self.uint()?;
        let value = if negative { -magnitude } else { magnitude };
        i64::try_from(value).map_err(|_| Error::ExponentOverflow { position: start })
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            return None;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        let name = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
        Some((start, name.to_string()))
    }

    /// Parses one `factor` and multiplies it into `exps`; returns false if no factor starts here.
    fn factor(&mut self, exps: &mut [i64]) -> Result<bool> {
        let Some((start, name)) = self.ident() else {
            return Ok(false);
        };
        let idx = self
            .vars
            .iter()
            .position(|v| *v == name)
            .ok_or(Error::UnknownVariable { name, position: start })?;
        let e = if self.eat(b'^') { self.sint_exponent()? } else { 1 };
        exps[idx] = exps[idx].checked_add(e).ok_or(Error::ExponentOverflow { position: start })?;
        Ok(true)
    }

    fn term(&mut self) -> Result<(ExpVec, Rational)> {
        let mut coeff = Rational::one();
        let mut exps = vec![0i64; self.vars.len()];
        self.skip_ws();
        let mut negate = false;
        while self.eat(b'-') {
            negate = !negate;
        }
        self.skip_ws();
        let mut seen_factor;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.uint()?;
            let den = if self.eat(b'/') {
                let at = self.pos;
                let d = self.uint()?;
                if d.is_zero() {
                    self.pos = at;
                    return self.err("zero denominator");
                }
                d
            } else {
                BigInt::one()
            };
            coeff = Rational::new(num, den);
            seen_factor = true;
        } else {
            seen_factor = self.factor(&mut exps)?;
            if !seen_factor {
                return self.err("expected a coefficient or a variable");
            }
        }
        loop {
            let save = self.pos;
            let star = self.eat(b'*');
            if self.factor(&mut exps)? {
                seen_factor = true;
                continue;
            }
            if star {
                return self.err("expected a variable after `*`");
            }
            self.pos = save;
            break;
        }
        debug_assert!(seen_factor);
        if negate {
            coeff = -coeff;
        }
        Ok((ExpVec::new(exps), coeff))
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.vars.len());
        let (n, c) = self.term()?;
        out.add_term(n, c);
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                None => break,
                Some(b'+') => Rational::one(),
                Some(b'-') => -Rational::one(),
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            };
            self.pos += 1;
            let (n, c) = self.term()?;
            out.add_term(n, c * sign);
        }
        Ok(out)
    }
}

/// Parses a Laurent polynomial; exponent coordinate `i` belongs to `vars[i]`.
pub fn parse_laurent(text: &str, vars: &[&str]) -> Result<LaurentPoly> {
    validate_variables(vars)?;
    if vars.is_empty() {
        return Err(Error::InvalidVariable(String::new()));
    }
    Parser { src: text.as_bytes(), pos: 0, vars }.poly()
}
