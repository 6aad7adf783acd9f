use num_traits::{One, Signed};

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::rational::{format_rational, parse_rational, Rational};
use super::rx::RationalExpression;
use super::table::VariableTable;
use crate::error::{Error, Result};

fn monomial_text(table: &VariableTable, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(table.name(i).to_string()),
            _ => parts.push(format!("{}^{}", table.name(i), e)),
        }
    }
    parts.join("*")
}

fn term_text(table: &VariableTable, m: &Monomial, c: &Rational) -> String {
    if m.is_one() {
        return format_rational(c);
    }
    let mt = monomial_text(table, m);
    if c.is_one() {
        mt
    } else if (-c).is_one() {
        format!("-{mt}")
    } else {
        format!("{}*{}", format_rational(c), mt)
    }
}

/// Canonical text: terms in canonical order joined by ` + ` / ` - `.
pub(crate) fn poly_to_text(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let table = p.table();
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        if i == 0 {
            out.push_str(&term_text(table, m, c));
        } else if c.is_negative() {
            out.push_str(" - ");
            out.push_str(&term_text(table, m, &-c));
        } else {
            out.push_str(" + ");
            out.push_str(&term_text(table, m, c));
        }
    }
    out
}

pub(crate) fn rx_to_text(a: &RationalExpression) -> String {
    if a.den().is_one() {
        poly_to_text(a.num())
    } else {
        format!("({}) / ({})", poly_to_text(a.num()), poly_to_text(a.den()))
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer { s: s.as_bytes(), pos: 0 }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", b as char)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn integer(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len() && self.s[self.pos] == b'-' {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.err("expected integer"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    /// Unsigned rational literal `a` or `a/b` (no spaces around `/`).
    fn coefficient(&mut self) -> Result<Rational> {
        let n = self.integer()?;
        if self.pos < self.s.len()
            && self.s[self.pos] == b'/'
            && self.s.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
            let d = self.integer()?;
            return parse_rational(&format!("{n}/{d}"));
        }
        parse_rational(&n)
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected variable name"));
        }
        if self.pos < self.s.len() && self.s[self.pos] == b'[' {
            while self.pos < self.s.len() && self.s[self.pos] != b']' {
                self.pos += 1;
            }
            if self.pos == self.s.len() {
                return Err(self.err("unterminated `[`"));
            }
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }
}

fn parse_term(lx: &mut Lexer, table: &VariableTable) -> Result<(Monomial, Rational)> {
    let mut c = Rational::one();
    let mut m = Monomial::one(table.len());
    let mut first = true;
    loop {
        let p = lx.peek().ok_or_else(|| lx.err("unexpected end"))?;
        if p.is_ascii_digit() {
            c *= lx.coefficient()?;
        } else if p.is_ascii_alphabetic() {
            let name = lx.name()?;
            let i = table.require(&name)?;
            let mut e = 1;
            if lx.eat(b'^') {
                e = lx.integer()?.parse::<i32>().map_err(|_| lx.err("bad exponent"))?;
            }
            m.set_exp(i, m.exp(i) + e);
        } else if first && p == b'-' {
            lx.pos += 1;
            c = -c;
            continue;
        } else {
            return Err(lx.err("expected term"));
        }
        first = false;
        if !lx.eat(b'*') {
            break;
        }
    }
    Ok((m, c))
}

fn parse_poly_inner(lx: &mut Lexer, table: &VariableTable) -> Result<Polynomial> {
    let mut terms = Vec::new();
    let mut sign = Rational::one();
    if lx.eat(b'-') {
        sign = -sign;
    }
    loop {
        let (m, c) = parse_term(lx, table)?;
        terms.push((m, c * &sign));
        match lx.peek() {
            Some(b'+') => {
                lx.pos += 1;
                sign = Rational::one();
            }
            Some(b'-') => {
                lx.pos += 1;
                sign = -Rational::one();
            }
            _ => break,
        }
    }
    Ok(Polynomial::from_terms(table, terms))
}

/// Parses the canonical polynomial text form.
pub fn parse_polynomial(s: &str, table: &VariableTable) -> Result<Polynomial> {
    let mut lx = Lexer::new(s);
    let p = parse_poly_inner(&mut lx, table)?;
    if !lx.at_end() {
        return Err(lx.err("trailing input"));
    }
    Ok(p)
}

/// Parses `poly` or `(poly) / (poly)`.
pub fn parse_rx(s: &str, table: &VariableTable) -> Result<RationalExpression> {
    let mut lx = Lexer::new(s);
    let rx = if lx.peek() == Some(b'(') {
        lx.expect(b'(')?;
        let num = parse_poly_inner(&mut lx, table)?;
        lx.expect(b')')?;
        lx.expect(b'/')?;
        lx.expect(b'(')?;
        let den = parse_poly_inner(&mut lx, table)?;
        lx.expect(b')')?;
        RationalExpression::new(num, den)?
    } else {
        RationalExpression::from_poly(parse_poly_inner(&mut lx, table)?)
    };
    if !lx.at_end() {
        return Err(lx.err("trailing input"));
    }
    Ok(rx)
}
