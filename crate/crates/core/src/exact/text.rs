//! Canonical text syntax for polynomials.
//!
//! Variables are `x1..xn`. Terms print in descending graded-lex order as
//! `c * x1^e1 * x2^e2`, unit coefficients and unit exponents omitted, with
//! `0` for the zero polynomial. Parsing accepts any sum of products of
//! rational literals and variable powers, so `format_poly` output always
//! parses back to the same polynomial.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::scalar::{scalar_to_string, Scalar};
use crate::error::{Error, Result};

pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        let mut factors = Vec::new();
        if !abs.is_one() || m.degree() == 0 {
            factors.push(scalar_to_string(&abs));
        }
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{}", i + 1)),
                _ => factors.push(format!("x{}^{e}", i + 1)),
            }
        }
        out.push_str(&factors.join(" * "));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str, field: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '/' => {
                out.push(Token::Slash);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            'x' => {
                i += 1;
                let d = digits(&mut i);
                let idx: usize = d
                    .parse()
                    .map_err(|_| Error::parse(field, "variable 'x' must be followed by an index"))?;
                if idx == 0 {
                    return Err(Error::parse(field, "variables are numbered from x1"));
                }
                out.push(Token::Var(idx - 1));
            }
            d if d.is_ascii_digit() => {
                let s = digits(&mut i);
                out.push(Token::Num(s.parse().expect("digit run parses")));
            }
            other => {
                return Err(Error::parse(field, format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    nvars: usize,
    field: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.field, msg)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.nvars);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    1
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    -1
                }
                None if !first => return Ok(acc),
                _ if first => 1,
                Some(t) => return Err(self.err(format!("expected '+' or '-', found {t:?}"))),
                None => unreachable!(),
            };
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            first = false;
            if self.peek().is_none() {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.toks.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                let mut value = Scalar::from_integer(n);
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    let Some(Token::Num(d)) = self.toks.get(self.pos).cloned() else {
                        return Err(self.err("expected denominator after '/'"));
                    };
                    self.pos += 1;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    value /= Scalar::from_integer(d);
                }
                Ok(Poly::constant(self.nvars, value))
            }
            Some(Token::Var(i)) => {
                self.pos += 1;
                if i >= self.nvars {
                    return Err(self.err(format!(
                        "variable x{} out of range, only {} variables",
                        i + 1,
                        self.nvars
                    )));
                }
                let mut e = 1u32;
                if self.peek() == Some(&Token::Caret) {
                    self.pos += 1;
                    let Some(Token::Num(n)) = self.toks.get(self.pos).cloned() else {
                        return Err(self.err("expected exponent after '^'"));
                    };
                    self.pos += 1;
                    e = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
                }
                Ok(Poly::var(self.nvars, i).pow(e))
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a polynomial in `nvars` variables; `field` names the input in
/// error messages.
pub fn parse_poly(text: &str, nvars: usize, field: &str) -> Result<Poly> {
    let toks = tokenize(text, field)?;
    if toks.is_empty() {
        return Err(Error::parse(field, "empty polynomial"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        nvars,
        field,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(field, "trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn prints_canonically() {
        let x = Poly::vars(3);
        let p = &(&(&x[0].pow(2) * &x[1]).scale(&rat(3, 2)) - &x[2]) + &Poly::int(3, 5);
        assert_eq!(format_poly(&p), "3/2 * x1^2 * x2 - x3 + 5");
        assert_eq!(format_poly(&-&x[0]), "-x1");
        assert_eq!(format_poly(&Poly::zero(2)), "0");
        assert_eq!(format_poly(&Poly::constant(1, rat(-1, 3))), "-1/3");
    }

    #[test]
    fn parses_loose_input() {
        let p = parse_poly("x2*x1 + 2/4 - x1 * x2 * 3", 2, "f").unwrap();
        assert_eq!(format_poly(&p), "-2 * x1 * x2 + 1/2");
    }

    #[test]
    fn rejects_bad_input_naming_field() {
        let e = parse_poly("x3", 2, "coeffs[0].poly").unwrap_err();
        assert!(e.to_string().contains("coeffs[0].poly"));
        assert!(parse_poly("1 +", 1, "f").is_err());
        assert!(parse_poly("x0", 1, "f").is_err());
        assert!(parse_poly("2/0", 1, "f").is_err());
        assert!(parse_poly("", 1, "f").is_err());
    }
}
