//! Polynomial expression grammar and canonical printing.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' INT)?
//! atom  := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::lexer::{tokenize, Tok, Token};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Poly, Rational, Ring};

/// Parses `text` as a polynomial in `ring`.
pub fn parse_poly(text: &str, ring: &Arc<Ring>) -> Result<Poly> {
    let tokens = tokenize(text)?;
    let mut cursor = Cursor::new(&tokens);
    let p = cursor.expr(ring)?;
    if let Some(t) = cursor.peek() {
        return Err(cursor.error_at(t, format!("unexpected {}", t.describe())));
    }
    Ok(p)
}

pub(crate) struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(tokens: &'a [Token]) -> Self {
        Cursor { tokens, pos: 0 }
    }

    pub fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    pub fn peek_at(&self, ahead: usize) -> Option<&'a Token> {
        self.tokens.get(self.pos + ahead)
    }

    pub fn next(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn peek_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Sym(s), .. }) if *s == c)
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        if self.peek_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn error_at(&self, t: &Token, message: String) -> Error {
        Error::Parse {
            line: t.line,
            col: t.col,
            message,
        }
    }

    /// Error positioned at the current token, or just past the last one.
    pub fn error_here(&self, message: String) -> Error {
        match self.peek().or_else(|| self.tokens.last()) {
            Some(t) => self.error_at(t, message),
            None => Error::Parse {
                line: 1,
                col: 1,
                message,
            },
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<()> {
        match self.next() {
            Some(Token { tok: Tok::Sym(s), .. }) if *s == c => Ok(()),
            Some(t) => Err(self.error_at(t, format!("expected `{c}`, found {}", t.describe()))),
            None => Err(self.error_here(format!("expected `{c}`, found end of input"))),
        }
    }

    pub fn expr(&mut self, ring: &Arc<Ring>) -> Result<Poly> {
        let mut acc = self.term(ring)?;
        loop {
            if self.eat_sym('+') {
                acc = &acc + &self.term(ring)?;
            } else if self.eat_sym('-') {
                acc = &acc - &self.term(ring)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, ring: &Arc<Ring>) -> Result<Poly> {
        let mut acc = self.unary(ring)?;
        while self.eat_sym('*') {
            acc = &acc * &self.unary(ring)?;
        }
        Ok(acc)
    }

    fn unary(&mut self, ring: &Arc<Ring>) -> Result<Poly> {
        if self.eat_sym('-') {
            return Ok(-&self.unary(ring)?);
        }
        if self.eat_sym('+') {
            return self.unary(ring);
        }
        self.power(ring)
    }

    fn power(&mut self, ring: &Arc<Ring>) -> Result<Poly> {
        let base = self.atom(ring)?;
        if self.eat_sym('^') {
            match self.next() {
                Some(t @ Token { tok: Tok::Int(s), .. }) => {
                    let e: u32 = s
                        .parse()
                        .map_err(|_| self.error_at(t, format!("exponent `{s}` is too large")))?;
                    return Ok(base.pow(e));
                }
                Some(t) => {
                    return Err(self.error_at(
                        t,
                        format!("exponent must be a non-negative integer, found {}", t.describe()),
                    ))
                }
                None => return Err(self.error_here("missing exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self, ring: &Arc<Ring>) -> Result<Poly> {
        let Some(t) = self.next() else {
            return Err(self.error_here("unexpected end of expression".into()));
        };
        match &t.tok {
            Tok::Int(s) => {
                let num: BigInt = s.parse().unwrap();
                let mut value = Rational::from_integer(num);
                // `/` forms a rational literal only between two integers
                if self.peek_sym('/') {
                    if let Some(d @ Token { tok: Tok::Int(digits), .. }) = self.peek_at(1) {
                        self.pos += 2;
                        let den: BigInt = digits.parse().unwrap();
                        if den.is_zero() {
                            return Err(self.error_at(d, "zero denominator".into()));
                        }
                        value /= Rational::from_integer(den);
                    }
                }
                Ok(Poly::constant(ring, value))
            }
            Tok::Ident(name) => match ring.index_of(name) {
                Some(i) => Ok(Poly::var(ring, i)),
                None => Err(self.error_at(
                    t,
                    format!(
                        "unknown variable `{name}` (ring is {})",
                        ring.vars().join(", ")
                    ),
                )),
            },
            Tok::Sym('(') => {
                let inner = self.expr(ring)?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Tok::Float(_) => Err(self.error_at(
                t,
                "decimal numbers are not allowed in polynomials; use a/b".into(),
            )),
            Tok::Sym(_) => Err(self.error_at(t, format!("unexpected {}", t.describe()))),
        }
    }
}

/// Canonical text: terms in descending graded reverse lex order, exact
/// rational coefficients, `*` between factors.
pub fn print_canonical(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let vars = p.ring().vars();
    let mut out = String::new();
    for (i, (m, c)) in p.sorted_terms(&MonomialOrder::GRevLex).into_iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        let mono = monomial_text(m, vars);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

fn monomial_text(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_canonical(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::int;

    fn xy() -> Arc<Ring> {
        Ring::new(["x", "y"]).unwrap()
    }

    #[test]
    fn parses_the_cusp() {
        let r = xy();
        let p = parse_poly("y^2 - x^3", &r).unwrap();
        let expected = Poly::from_terms(
            &r,
            [
                (Monomial::from_exponents(&[0, 2]), int(1)),
                (Monomial::from_exponents(&[3, 0]), int(-1)),
            ],
        );
        assert_eq!(p, expected);
        assert_eq!(print_canonical(&p), "-x^3 + y^2");
    }

    #[test]
    fn zero_and_expansion() {
        let r = xy();
        assert!(parse_poly("0", &r).unwrap().is_zero());
        assert_eq!(print_canonical(&Poly::zero(&r)), "0");
        assert_eq!(
            parse_poly("(x+y)^2 - x^2 - 2*x*y", &r).unwrap(),
            parse_poly("y^2", &r).unwrap()
        );
    }

    #[test]
    fn precedence() {
        let r = xy();
        assert_eq!(parse_poly("-x^2", &r).unwrap(), -&parse_poly("x*x", &r).unwrap());
        assert_eq!(parse_poly("2*x^2", &r).unwrap(), parse_poly("x^2+x^2", &r).unwrap());
        assert_eq!(print_canonical(&parse_poly("-3/2*x*y^2 + 1/3", &r).unwrap()), "-3/2*x*y^2 + 1/3");
    }

    #[test]
    fn errors_carry_positions() {
        let r = xy();
        match parse_poly("x +\n  z", &r) {
            Err(Error::Parse { line: 2, col: 3, message }) => assert!(message.contains("unknown variable `z`")),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("x y", &r).is_err());
        assert!(parse_poly("x/2", &r).is_err());
        assert!(parse_poly("1.5*x", &r).is_err());
        assert!(parse_poly("(x+y", &r).is_err());
        assert!(parse_poly("x^y", &r).is_err());
    }
}
