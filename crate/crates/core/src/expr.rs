//! A small language for naming varieties and sheaves.
//!
//! ```text
//! sum     := tensor ('+' tensor)*
//! tensor  := power ('*' power)*
//! power   := ('wedge^k' | 'sym^k') power | postfix
//! postfix := atom ('^*' | '(' int (',' int)* ')')*
//! atom    := 'O' | 'O(' ints ')' | 'T' | 'Omega^p' | 'omega' | '(' sum ')'
//! ```
//!
//! A parenthesized integer list after an expression twists it, so `T(-1)` is
//! `T * O(-1)`. Whitespace is ignored.

use std::fmt;

use crate::cech::{
    canonical, direct_sum, dual, line_bundle, omega, product, projective_space, structure_sheaf,
    sym_power, tangent, tensor, twist, wedge_power, Sheaf, Variety,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SheafExpr {
    /// `O(d)`; an empty list is the structure sheaf.
    Line(Vec<i64>),
    Tangent,
    Omega(usize),
    Canonical,
    Dual(Box<SheafExpr>),
    Wedge(usize, Box<SheafExpr>),
    Sym(usize, Box<SheafExpr>),
    Tensor(Box<SheafExpr>, Box<SheafExpr>),
    Sum(Box<SheafExpr>, Box<SheafExpr>),
    Twist(Box<SheafExpr>, Vec<i64>),
}

impl SheafExpr {
    /// Builds the sheaf on `v`.
    pub fn eval(&self, v: &Variety) -> Result<Sheaf> {
        Ok(match self {
            SheafExpr::Line(d) if d.is_empty() => structure_sheaf(v),
            SheafExpr::Line(d) => line_bundle(v, &degrees(v, d)?)?,
            SheafExpr::Tangent => tangent(v),
            SheafExpr::Omega(p) => omega(v, *p)?,
            SheafExpr::Canonical => canonical(v),
            SheafExpr::Dual(e) => dual(&e.eval(v)?),
            SheafExpr::Wedge(k, e) => wedge_power(&e.eval(v)?, *k)?,
            SheafExpr::Sym(k, e) => sym_power(&e.eval(v)?, *k)?,
            SheafExpr::Tensor(a, b) => tensor(&a.eval(v)?, &b.eval(v)?)?,
            SheafExpr::Sum(a, b) => direct_sum(&a.eval(v)?, &b.eval(v)?)?,
            SheafExpr::Twist(e, d) => twist(&e.eval(v)?, &degrees(v, d)?)?,
        }
        .with_label(self.to_string()))
    }
}

/// Line bundle degrees need one entry per projective factor.
fn degrees(v: &Variety, d: &[i64]) -> Result<Vec<i64>> {
    let k = v.factors().len();
    if d.len() != k {
        return Err(Error::DomainViolation(format!(
            "{v} needs {k} degree(s), got {}",
            d.len()
        )));
    }
    Ok(d.to_vec())
}

fn ints(d: &[i64]) -> String {
    d.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for SheafExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafExpr::Line(d) if d.is_empty() => write!(f, "O"),
            SheafExpr::Line(d) => write!(f, "O({})", ints(d)),
            SheafExpr::Tangent => write!(f, "T"),
            SheafExpr::Omega(p) => write!(f, "Omega^{p}"),
            SheafExpr::Canonical => write!(f, "omega"),
            SheafExpr::Dual(e) => write!(f, "{}^*", Atomic(e)),
            SheafExpr::Wedge(k, e) => write!(f, "wedge^{k} {}", Atomic(e)),
            SheafExpr::Sym(k, e) => write!(f, "sym^{k} {}", Atomic(e)),
            SheafExpr::Tensor(a, b) => write!(f, "{} * {}", Factor(a), Factor(b)),
            SheafExpr::Sum(a, b) => write!(f, "{a} + {b}"),
            SheafExpr::Twist(e, d) => write!(f, "{}({})", Atomic(e), ints(d)),
        }
    }
}

/// Prints with parentheses unless the expression is an atom or postfix form.
struct Atomic<'a>(&'a SheafExpr);

impl fmt::Display for Atomic<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            SheafExpr::Wedge(..)
            | SheafExpr::Sym(..)
            | SheafExpr::Tensor(..)
            | SheafExpr::Sum(..) => {
                write!(f, "({})", self.0)
            }
            e => write!(f, "{e}"),
        }
    }
}

/// Prints with parentheses only around sums.
struct Factor<'a>(&'a SheafExpr);

impl fmt::Display for Factor<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            SheafExpr::Sum(..) => write!(f, "({})", self.0),
            e => write!(f, "{e}"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
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

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer")
            }
        }
    }

    fn natural(&mut self) -> Result<usize> {
        let start = self.pos;
        let n = self.int()?;
        usize::try_from(n).or_else(|_| {
            self.pos = start;
            self.err("expected a nonnegative integer")
        })
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        let mut out = vec![self.int()?];
        while self.eat(",") {
            out.push(self.int()?);
        }
        self.expect(")")?;
        Ok(out)
    }

    fn sum(&mut self) -> Result<SheafExpr> {
        let mut e = self.tensor()?;
        while self.eat("+") {
            e = SheafExpr::Sum(Box::new(e), Box::new(self.tensor()?));
        }
        Ok(e)
    }

    fn tensor(&mut self) -> Result<SheafExpr> {
        let mut e = self.power()?;
        while self.eat("*") {
            e = SheafExpr::Tensor(Box::new(e), Box::new(self.power()?));
        }
        Ok(e)
    }

    fn power(&mut self) -> Result<SheafExpr> {
        if self.eat("wedge^") {
            let k = self.natural()?;
            return Ok(SheafExpr::Wedge(k, Box::new(self.power()?)));
        }
        if self.eat("sym^") {
            let k = self.natural()?;
            return Ok(SheafExpr::Sym(k, Box::new(self.power()?)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<SheafExpr> {
        let mut e = self.atom()?;
        loop {
            if self.eat("^*") {
                e = SheafExpr::Dual(Box::new(e));
            } else if self.eat("(") {
                e = SheafExpr::Twist(Box::new(e), self.int_list()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn atom(&mut self) -> Result<SheafExpr> {
        if self.eat("(") {
            let e = self.sum()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("Omega^") {
            return Ok(SheafExpr::Omega(self.natural()?));
        }
        if self.eat("omega") {
            return Ok(SheafExpr::Canonical);
        }
        if self.eat("O") {
            if self.eat("(") {
                return Ok(SheafExpr::Line(self.int_list()?));
            }
            return Ok(SheafExpr::Line(Vec::new()));
        }
        if self.eat("T") {
            return Ok(SheafExpr::Tangent);
        }
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
        }
    }
}

pub fn parse_sheaf(s: &str) -> Result<SheafExpr> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let e = p.sum()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// `P2`, `P1xP1`, `P1 x P2`, ...
pub fn parse_variety(s: &str) -> Result<Variety> {
    let mut out: Option<Variety> = None;
    let mut pos = 0;
    for part in s.split(['x', 'X']) {
        let t = part.trim();
        let n = t
            .strip_prefix('P')
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse {
                pos,
                msg: format!("expected a factor like P2, got '{t}'"),
            })?;
        let f = projective_space(n)?;
        out = Some(match out {
            None => f,
            Some(v) => product(&v, &f),
        });
        pos += part.len() + 1;
    }
    out.ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "empty variety".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_sheaf("O(1) + wedge^2 T^* * O(-1)").unwrap();
        let expected = SheafExpr::Sum(
            Box::new(SheafExpr::Line(vec![1])),
            Box::new(SheafExpr::Tensor(
                Box::new(SheafExpr::Wedge(
                    2,
                    Box::new(SheafExpr::Dual(Box::new(SheafExpr::Tangent))),
                )),
                Box::new(SheafExpr::Line(vec![-1])),
            )),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn round_trip() {
        for s in [
            "O",
            "O(2,3)",
            "T(-1)",
            "(T + O(1))^*",
            "wedge^2 (T * T)",
            "sym^2 Omega^1 + omega",
            "(O + O) * T",
        ] {
            let e = parse_sheaf(s).unwrap();
            assert_eq!(parse_sheaf(&e.to_string()).unwrap(), e, "{s}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(
            parse_sheaf("O(1) +"),
            Err(Error::Parse { pos: 6, .. })
        ));
        assert!(matches!(parse_sheaf("Q"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(
            parse_sheaf("T)"),
            Err(Error::Parse { pos: 1, .. })
        ));
        assert!(parse_sheaf("wedge^-1 T").is_err());
    }

    #[test]
    fn varieties() {
        assert_eq!(parse_variety("P2").unwrap().to_string(), "P2");
        assert_eq!(parse_variety("P1 x P1").unwrap().to_string(), "P1xP1");
        assert!(parse_variety("Q2").is_err());
        assert!(parse_variety("P1xx").is_err());
    }
}
