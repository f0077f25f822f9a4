//! Parser for rational expressions such as `(1 - e1*v + q)/(q - 1)^2`.
//!
//! Identifiers: `v`, `q` (= `v^2`), `e1`..`e8`, `z1`..`z7`, and `z` (= `z1`).
//! Operators: `+ - * / ^` with integer (possibly negative) exponents.

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use super::{e_var, gcd, z_var, Monomial, Poly, MAX_E, MAX_Z, V};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {0:?} at offset {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown parameter {0:?}")]
    UnknownParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent out of range")]
    BadExponent,
}

type Frac = (Poly, Poly);

/// Parse into a reduced fraction `(num, den)`: coprime, denominator with positive
/// leading coefficient.
pub fn parse_fraction(s: &str) -> Result<(Poly, Poly), ParseError> {
    let mut p = Parser {
        chars: s.char_indices().collect(),
        pos: 0,
    };
    let f = p.expr()?;
    p.skip_ws();
    if let Some(&(i, c)) = p.chars.get(p.pos) {
        return Err(ParseError::UnexpectedChar(c, i));
    }
    Ok(reduce(f))
}

fn reduce((n, d): Frac) -> Frac {
    if n.is_zero() {
        return (Poly::zero(), Poly::one());
    }
    let g = gcd(&n, &d);
    let (mut n, mut d) = if g.is_one() {
        (n, d)
    } else {
        (
            n.div_exact(&g).expect("gcd divides"),
            d.div_exact(&g).expect("gcd divides"),
        )
    };
    if d.lead_coeff().is_negative() {
        n = -n;
        d = -d;
    }
    (n, d)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expr(&mut self) -> Result<Frac, ParseError> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.bump();
                let (n, d) = self.term()?;
                (-n, d)
            }
            Some('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.bump();
            let (n, d) = self.term()?;
            let n = if c == '-' { -n } else { n };
            acc = if acc.1 == d {
                (&acc.0 + &n, d)
            } else {
                (&(&acc.0 * &d) + &(&n * &acc.1), &acc.1 * &d)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.power()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            self.bump();
            let (n, d) = self.power()?;
            acc = if c == '*' {
                (&acc.0 * &n, &acc.1 * &d)
            } else {
                if n.is_zero() {
                    return Err(ParseError::DivisionByZero);
                }
                (&acc.0 * &d, &acc.1 * &n)
            };
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Frac, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let neg = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('(') => {
                // allow `x^(-2)`
                self.bump();
                let neg = if self.peek() == Some('-') {
                    self.bump();
                    true
                } else {
                    false
                };
                let e = self.integer()?;
                self.expect(')')?;
                return raise(base, e, neg);
            }
            _ => false,
        };
        let e = self.integer()?;
        raise(base, e, neg)
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.bump();
            return Ok(());
        }
        match self.chars.get(self.pos) {
            Some(&(i, c)) => Err(ParseError::UnexpectedChar(c, i)),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.chars.get(self.pos) {
                Some(&(i, c)) => Err(ParseError::UnexpectedChar(c, i)),
                None => Err(ParseError::UnexpectedEnd),
            };
        }
        let s: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Frac, ParseError> {
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd),
            Some('(') => {
                self.bump();
                let f = self.expr()?;
                self.expect(')')?;
                Ok(f)
            }
            Some('-') => {
                // unary minus inside a product, e.g. `2*-v`
                self.bump();
                let (n, d) = self.power()?;
                Ok((-n, d))
            }
            Some(c) if c.is_ascii_digit() => Ok((Poly::constant(self.integer()?), Poly::one())),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|(_, c)| c.is_ascii_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos]
                    .iter()
                    .map(|&(_, c)| c)
                    .collect();
                Ok((ident(&name)?, Poly::one()))
            }
            Some(c) => Err(ParseError::UnexpectedChar(c, self.chars[self.pos].0)),
        }
    }
}

fn ident(name: &str) -> Result<Poly, ParseError> {
    let unknown = || ParseError::UnknownParameter(name.to_string());
    match name {
        "v" => return Ok(Poly::var(V)),
        "q" => return Ok(Poly::monomial(Monomial::var(V, 2), 1)),
        "z" => return Ok(Poly::var(z_var(1))),
        _ => {}
    }
    let (head, idx) = name.split_at(1);
    let k: usize = idx.parse().map_err(|_| unknown())?;
    match head {
        "e" if (1..=MAX_E).contains(&k) => Ok(Poly::var(e_var(k))),
        "z" if (1..=MAX_Z).contains(&k) => Ok(Poly::var(z_var(k))),
        _ => Err(unknown()),
    }
}

fn raise((n, d): Frac, e: BigInt, neg: bool) -> Result<Frac, ParseError> {
    let e: u32 = e.try_into().map_err(|_| ParseError::BadExponent)?;
    if e > 4096 {
        return Err(ParseError::BadExponent);
    }
    if neg {
        if n.is_zero() {
            return Err(ParseError::DivisionByZero);
        }
        Ok((d.pow(e), n.pow(e)))
    } else {
        Ok((n.pow(e), d.pow(e)))
    }
}
