//! Predicates on the multiplier `c`, built from a closed set of atoms.
//!
//! Text syntax (used by grid files and the CLI):
//!
//! ```text
//! expr   := term ('|' term)*
//! term   := factor ('&' factor)*
//! factor := '!' factor | '(' expr ')' | atom
//! atom   := ne1 | zero | minus1 | subfield:<m> | chi_ratio
//!         | tr:<t>,<t'> | chi4:<s>,<s'> | four_or_inv
//! ```
//!
//! `chi_ratio` is `chi((1-c)/(1+c)) = 1`, `tr:t,t'` is `Tr(c) = t` and
//! `Tr(1/c) = t'`, `chi4:s,s'` is `chi(c^2 - 4c) = s` and `chi(1 - 4c) = s'`,
//! and `four_or_inv` is `c in {4, 1/4}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Element, Field, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    NotOne,
    Zero,
    MinusOne,
    /// `c` lies in GF(p^m).
    InSubfield(u32),
    /// `chi((1 - c)/(1 + c)) = 1`; false where the ratio is 0 or undefined.
    ChiRatioSquare,
    /// `Tr(c) = t` and `Tr(1/c) = t'`; characteristic 2 only, false at 0.
    Traces(u8, u8),
    /// `chi(c^2 - 4c) = s` and `chi(1 - 4c) = s'`; false where either
    /// argument vanishes.
    Chis(Sign, Sign),
    /// `c = 4` or `c = 1/4`.
    FourOrInverse,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CCondition {
    Atom(Atom),
    All(Vec<CCondition>),
    Any(Vec<CCondition>),
    Not(Box<CCondition>),
}

impl From<Atom> for CCondition {
    fn from(a: Atom) -> Self {
        CCondition::Atom(a)
    }
}

fn mismatch(atom: &Atom, field: &Field) -> Error {
    Error::CharMismatch {
        atom: atom.to_string(),
        p: field.characteristic(),
    }
}

fn chi_is(field: &Field, x: Element, s: Sign) -> bool {
    field.quadratic_character(x).is_ok_and(|v| v == s)
}

impl Atom {
    pub fn eval(&self, field: &Field, c: Element) -> Result<bool> {
        if !field.contains(c) {
            return Err(Error::FieldMismatch);
        }
        let odd = field.characteristic() != 2;
        Ok(match *self {
            Atom::NotOne => c != Element::ONE,
            Atom::Zero => c.is_zero(),
            Atom::MinusOne => c == field.minus_one(),
            Atom::InSubfield(m) => field.in_subfield(c, m),
            Atom::ChiRatioSquare => {
                if !odd {
                    return Err(mismatch(self, field));
                }
                let num = field.sub(Element::ONE, c);
                let den = field.add(Element::ONE, c);
                match field.div(num, den) {
                    Ok(r) => chi_is(field, r, Sign::Plus),
                    Err(_) => false,
                }
            }
            Atom::Traces(t, t_inv) => {
                if odd {
                    return Err(mismatch(self, field));
                }
                match field.inv(c) {
                    Ok(ci) => {
                        field.trace(c).index() == t as u32 && field.trace(ci).index() == t_inv as u32
                    }
                    Err(_) => false,
                }
            }
            Atom::Chis(s, s2) => {
                if !odd {
                    return Err(mismatch(self, field));
                }
                let four = field.from_int(4);
                let a = field.sub(field.mul(c, c), field.mul(four, c));
                let b = field.sub(Element::ONE, field.mul(four, c));
                chi_is(field, a, s) && chi_is(field, b, s2)
            }
            Atom::FourOrInverse => {
                if !odd {
                    return Err(mismatch(self, field));
                }
                let four = field.from_int(4);
                c == four || field.inv(four).is_ok_and(|fi| c == fi)
            }
        })
    }
}

impl CCondition {
    pub fn eval(&self, field: &Field, c: Element) -> Result<bool> {
        match self {
            CCondition::Atom(a) => a.eval(field, c),
            CCondition::All(items) => {
                for i in items {
                    if !i.eval(field, c)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            CCondition::Any(items) => {
                for i in items {
                    if i.eval(field, c)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            CCondition::Not(inner) => Ok(!inner.eval(field, c)?),
        }
    }
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "1",
        Sign::Minus => "-1",
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::NotOne => write!(f, "ne1"),
            Atom::Zero => write!(f, "zero"),
            Atom::MinusOne => write!(f, "minus1"),
            Atom::InSubfield(m) => write!(f, "subfield:{m}"),
            Atom::ChiRatioSquare => write!(f, "chi_ratio"),
            Atom::Traces(t, u) => write!(f, "tr:{t},{u}"),
            Atom::Chis(s, u) => write!(f, "chi4:{},{}", sign_str(*s), sign_str(*u)),
            Atom::FourOrInverse => write!(f, "four_or_inv"),
        }
    }
}

impl fmt::Display for CCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, items: &[CCondition], sep: &str| {
            write!(f, "(")?;
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                write!(f, "{item}")?;
            }
            write!(f, ")")
        };
        match self {
            CCondition::Atom(a) => write!(f, "{a}"),
            CCondition::All(items) => join(f, items, "&"),
            CCondition::Any(items) => join(f, items, "|"),
            CCondition::Not(inner) => write!(f, "!{inner}"),
        }
    }
}

fn parse_sign(s: &str) -> Option<Sign> {
    match s.trim() {
        "1" | "+1" => Some(Sign::Plus),
        "-1" => Some(Sign::Minus),
        _ => None,
    }
}

impl FromStr for Atom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown condition atom `{s}`"));
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let pair = |a: Option<&str>| -> Result<(String, String)> {
            let (x, y) = a.and_then(|a| a.split_once(',')).ok_or_else(bad)?;
            Ok((x.trim().to_string(), y.trim().to_string()))
        };
        Ok(match name {
            "ne1" => Atom::NotOne,
            "zero" => Atom::Zero,
            "minus1" => Atom::MinusOne,
            "chi_ratio" => Atom::ChiRatioSquare,
            "four_or_inv" => Atom::FourOrInverse,
            "subfield" => Atom::InSubfield(arg.ok_or_else(bad)?.trim().parse().map_err(|_| bad())?),
            "tr" => {
                let (t, u) = pair(arg)?;
                let t: u8 = t.parse().map_err(|_| bad())?;
                let u: u8 = u.parse().map_err(|_| bad())?;
                if t > 1 || u > 1 {
                    return Err(bad());
                }
                Atom::Traces(t, u)
            }
            "chi4" => {
                let (t, u) = pair(arg)?;
                Atom::Chis(parse_sign(&t).ok_or_else(bad)?, parse_sign(&u).ok_or_else(bad)?)
            }
            _ => return Err(bad()),
        })
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<char> {
        self.src[self.pos..].chars().find(|c| !c.is_whitespace())
    }

    fn bump(&mut self, expected: char) -> bool {
        let rest = &self.src[self.pos..];
        let skipped = rest.len() - rest.trim_start().len();
        if rest.trim_start().starts_with(expected) {
            self.pos += skipped + expected.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CCondition> {
        let mut items = vec![self.term()?];
        while self.bump('|') {
            items.push(self.term()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { CCondition::Any(items) })
    }

    fn term(&mut self) -> Result<CCondition> {
        let mut items = vec![self.factor()?];
        while self.bump('&') {
            items.push(self.factor()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { CCondition::All(items) })
    }

    fn factor(&mut self) -> Result<CCondition> {
        if self.bump('!') {
            return Ok(CCondition::Not(Box::new(self.factor()?)));
        }
        if self.bump('(') {
            let inner = self.expr()?;
            if !self.bump(')') {
                return Err(Error::Parse(format!("missing `)` in `{}`", self.src)));
            }
            return Ok(inner);
        }
        let rest = &self.src[self.pos..];
        let end = rest.find(['&', '|', ')', '(', '!']).unwrap_or(rest.len());
        let token = &rest[..end];
        if token.trim().is_empty() {
            return Err(Error::Parse(format!("empty condition in `{}`", self.src)));
        }
        self.pos += end;
        Ok(CCondition::Atom(token.parse()?))
    }
}

impl FromStr for CCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let c = p.expr()?;
        if p.peek().is_some() {
            return Err(Error::Parse(format!("trailing input in condition `{s}`")));
        }
        Ok(c)
    }
}
