//! Explicit construction of GF(p^n) and element-level arithmetic.
//!
//! Elements are identified by their canonical index: the residue
//! `c0 + c1 t + ... + c(n-1) t^(n-1)` modulo the defining polynomial maps
//! to `c0 + c1 p + ... + c(n-1) p^(n-1)`. Index 0 is zero, index 1 is one,
//! and indices below `p` form the prime subfield. All exported tables use
//! this ordering.
//!
//! Fields with `q <= 2^20` carry exponent/logarithm tables relative to the
//! smallest primitive element, giving O(1) multiplication, inversion and
//! (via Zech-style lookups) addition. Larger fields fall back to
//! polynomial arithmetic on digit vectors.

mod element;
pub mod poly;

use std::fmt;
use std::str::FromStr;

use crate::arith::{is_prime, prime_factors};
use crate::error::{Error, Result};

pub use element::FieldElement;

/// Largest order for which exp/log tables are built.
pub const TABLE_LIMIT: u64 = 1 << 20;
/// Largest supported order.
pub const MAX_ORDER: u64 = 1 << 24;

const MAX_DIGITS: usize = 24;

/// Canonical index of a field element. Only meaningful together with the
/// [`Field`] it was produced by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Element(u32);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    pub const fn from_index_unchecked(index: u32) -> Self {
        Element(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Value of the quadratic character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// `(chi(x + 1), chi(x))` for `x` outside `{0, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quadrant {
    pub chi_x_plus_1: Sign,
    pub chi_x: Sign,
}

/// Textual description of a field: `p^n` with an optional modulus,
/// e.g. `3^2/1,0,1` (coefficients constant term first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u64,
    pub n: u32,
    pub modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn new(p: u64, n: u32) -> Self {
        FieldSpec { p, n, modulus: None }
    }

    pub fn build(&self) -> Result<Field> {
        Field::new(self.p, self.n, self.modulus.as_deref())
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid field spec `{s}` (expected p^n or p^n/c0,...,cn)"));
        let s = s.trim();
        let (order, modulus) = match s.split_once('/') {
            Some((o, m)) => (o, Some(m)),
            None => (s, None),
        };
        let (p, n) = match order.split_once('^') {
            Some((p, n)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                n.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (order.trim().parse::<u64>().map_err(|_| bad())?, 1),
        };
        let modulus = modulus
            .map(|m| {
                m.split(',')
                    .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok(FieldSpec { p, n, modulus })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.n)?;
        if let Some(m) = &self.modulus {
            let coeffs: Vec<String> = m.iter().map(u64::to_string).collect();
            write!(f, "/{}", coeffs.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Tables {
    /// `exp[i] = g^i`, stored for `0 <= i < 2(q-1)` so sums of two logs
    /// need no reduction.
    exp: Vec<u32>,
    /// `log[x]` for `x != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

/// A constructed finite field GF(p^n). Immutable after construction and
/// shareable across threads.
#[derive(Debug, Clone)]
pub struct Field {
    p: u64,
    n: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: Element,
    tables: Option<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(p^n). Without a modulus, the lexicographically smallest
    /// monic irreducible polynomial (constant term compared first) is used.
    pub fn new(p: u64, n: u32, modulus: Option<&[u64]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge { p, n })?;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != n as usize + 1 {
                    return Err(Error::DegreeMismatch {
                        expected: n,
                        found: m.len().saturating_sub(1),
                    });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::InvalidModulus(format!(
                        "coefficient {c} is not reduced mod {p}"
                    )));
                }
                if m[n as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus is not monic".into()));
                }
                if !poly::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                m.to_vec()
            }
            None => poly::irreducibles(p, n)
                .next()
                .expect("an irreducible polynomial exists in every degree"),
        };

        let mut field = Field {
            p,
            n,
            q,
            modulus,
            generator: Element::ONE,
            tables: None,
        };
        field.generator = field.find_generator();
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    /// Parses and builds a field from its textual description.
    pub fn parse(spec: &str) -> Result<Field> {
        spec.parse::<FieldSpec>()?.build()
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The fully qualified spec string, including the modulus.
    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            n: self.n,
            modulus: Some(self.modulus.clone()),
        }
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn zero(&self) -> Element {
        Element::ZERO
    }

    pub fn one(&self) -> Element {
        Element::ONE
    }

    pub fn minus_one(&self) -> Element {
        Element((self.p - 1) as u32)
    }

    /// The embedding of the integer `v` into the prime subfield.
    pub fn from_int(&self, v: i64) -> Element {
        Element(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn element(&self, index: u64) -> Result<Element> {
        if index < self.q {
            Ok(Element(index as u32))
        } else {
            Err(Error::IndexOutOfRange { index, q: self.q })
        }
    }

    pub fn contains(&self, x: Element) -> bool {
        (x.0 as u64) < self.q
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        (0..self.q as u32).map(Element)
    }

    /// Wraps an element together with this field for checked arithmetic.
    pub fn bind(&self, x: Element) -> FieldElement<'_> {
        FieldElement::new(self, x)
    }

    /// Length-n coefficient vector, constant term first.
    pub fn coeffs(&self, x: Element) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut v = x.0 as u64;
        for _ in 0..self.n {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// Inverse of [`Field::coeffs`]; coefficients are reduced mod p and
    /// missing high coefficients are zero.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Element> {
        if coeffs.len() > self.n as usize {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: coeffs.len(),
            });
        }
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            v = v * self.p + c % self.p;
        }
        Ok(Element(v as u32))
    }

    /// The multiplicative generator with the smallest canonical index.
    pub fn multiplicative_generator(&self) -> Element {
        self.generator
    }

    // ---- arithmetic -------------------------------------------------------

    #[inline]
    pub fn add(&self, x: Element, y: Element) -> Element {
        if self.p == 2 {
            return Element(x.0 ^ y.0);
        }
        if self.n == 1 {
            let s = x.0 as u64 + y.0 as u64;
            return Element((if s >= self.p { s - self.p } else { s }) as u32);
        }
        match &self.tables {
            Some(t) => {
                if x.0 == 0 {
                    return y;
                }
                if y.0 == 0 {
                    return x;
                }
                // x + y = x (1 + y/x)
                let m = (self.q - 1) as u32;
                let lx = t.log[x.0 as usize];
                let ly = t.log[y.0 as usize];
                let ratio = t.exp[(ly + m - lx) as usize];
                let s = self.plus_one(ratio);
                if s == 0 {
                    Element::ZERO
                } else {
                    Element(t.exp[(lx + t.log[s as usize]) as usize])
                }
            }
            None => self.digit_add(x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: Element) -> Element {
        if self.p == 2 || x.0 == 0 {
            return x;
        }
        if self.n == 1 {
            return Element((self.p - x.0 as u64) as u32);
        }
        match &self.tables {
            Some(t) => {
                let half = ((self.q - 1) / 2) as u32;
                Element(t.exp[(t.log[x.0 as usize] + half) as usize])
            }
            None => {
                let c: Vec<u64> = self
                    .coeffs(x)
                    .into_iter()
                    .map(|d| (self.p - d) % self.p)
                    .collect();
                self.from_coeffs(&c).expect("length n")
            }
        }
    }

    #[inline]
    pub fn sub(&self, x: Element, y: Element) -> Element {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        if x.0 == 0 || y.0 == 0 {
            return Element::ZERO;
        }
        match &self.tables {
            Some(t) => Element(t.exp[(t.log[x.0 as usize] + t.log[y.0 as usize]) as usize]),
            None => self.poly_mul(x, y),
        }
    }

    pub fn inv(&self, x: Element) -> Result<Element> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let m = (self.q - 1) as u32;
                Element(t.exp[((m - t.log[x.0 as usize]) % m) as usize])
            }
            None => self.pow(x, self.q - 2),
        })
    }

    pub fn div(&self, x: Element, y: Element) -> Result<Element> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^d` with `0^0 = 1` and `0^d = 0` for `d >= 1`. For nonzero `x`
    /// the exponent is reduced modulo `q - 1`.
    pub fn pow(&self, x: Element, d: u64) -> Element {
        if d == 0 {
            return Element::ONE;
        }
        if x.0 == 0 {
            return Element::ZERO;
        }
        let m = self.q - 1;
        let e = d % m;
        match &self.tables {
            Some(t) => {
                let l = t.log[x.0 as usize] as u64;
                Element(t.exp[(l * e % m) as usize])
            }
            None => {
                let mut acc = Element::ONE;
                let mut b = x;
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.poly_mul(acc, b);
                    }
                    b = self.poly_mul(b, b);
                    e >>= 1;
                }
                acc
            }
        }
    }

    /// Discrete logarithm to the base [`Field::multiplicative_generator`].
    pub fn log(&self, x: Element) -> Result<u64> {
        if x.0 == 0 {
            return Err(Error::ZeroArgument);
        }
        match &self.tables {
            Some(t) => Ok(t.log[x.0 as usize] as u64),
            None => {
                let mut acc = Element::ONE;
                for i in 0..self.q - 1 {
                    if acc == x {
                        return Ok(i);
                    }
                    acc = self.poly_mul(acc, self.generator);
                }
                unreachable!("generator spans the multiplicative group")
            }
        }
    }

    /// `+1` iff `x` is a nonzero square.
    pub fn quadratic_character(&self, x: Element) -> Result<Sign> {
        if self.p == 2 {
            return Err(Error::CharTwo);
        }
        if x.0 == 0 {
            return Err(Error::ZeroArgument);
        }
        let square = match &self.tables {
            Some(t) => t.log[x.0 as usize] % 2 == 0,
            None => self.pow(x, (self.q - 1) / 2) == Element::ONE,
        };
        Ok(if square { Sign::Plus } else { Sign::Minus })
    }

    /// Absolute trace `x + x^p + ... + x^(p^(n-1))`, an element of the prime
    /// subfield (index below `p`).
    pub fn trace(&self, x: Element) -> Element {
        let mut acc = Element::ZERO;
        let mut y = x;
        for _ in 0..self.n {
            acc = self.add(acc, y);
            y = self.pow(y, self.p);
        }
        debug_assert!((acc.0 as u64) < self.p);
        acc
    }

    pub fn quadrant(&self, x: Element) -> Result<Quadrant> {
        if self.p == 2 {
            return Err(Error::CharTwo);
        }
        if x.0 == 0 || x == self.minus_one() {
            return Err(Error::ExcludedPoint);
        }
        Ok(Quadrant {
            chi_x_plus_1: self.quadratic_character(self.add(x, Element::ONE))?,
            chi_x: self.quadratic_character(x)?,
        })
    }

    /// Whether the nonzero `x` is a `d`-th power.
    pub fn is_dth_power(&self, x: Element, d: u64) -> Result<bool> {
        if x.0 == 0 {
            return Err(Error::ZeroArgument);
        }
        let m = self.q - 1;
        let g = crate::arith::gcd(d, m);
        Ok(self.pow(x, m / g) == Element::ONE)
    }

    /// Whether `x^(p^m) = x`, i.e. `x` lies in GF(p^gcd(m, n)).
    pub fn in_subfield(&self, x: Element, m: u32) -> bool {
        let mut y = x;
        for _ in 0..m {
            y = self.pow(y, self.p);
        }
        y == x
    }

    /// `x^p`.
    pub fn frobenius(&self, x: Element) -> Element {
        self.pow(x, self.p)
    }

    /// The unique `y` with `y^p = x`, namely `x^(p^(n-1))`.
    pub fn frobenius_root(&self, x: Element) -> Element {
        let mut y = x;
        for _ in 1..self.n {
            y = self.pow(y, self.p);
        }
        y
    }

    pub fn multiplicative_order(&self, x: Element) -> Result<u64> {
        if x.0 == 0 {
            return Err(Error::ZeroArgument);
        }
        let mut order = self.q - 1;
        for r in prime_factors(self.q - 1) {
            while order % r == 0 && self.pow(x, order / r) == Element::ONE {
                order /= r;
            }
        }
        Ok(order)
    }

    // ---- internals ---------------------------------------------------------

    #[inline]
    fn plus_one(&self, i: u32) -> u32 {
        let p = self.p as u32;
        let d0 = i % p;
        i - d0 + if d0 + 1 == p { 0 } else { d0 + 1 }
    }

    fn digits(&self, x: Element, out: &mut [u64; MAX_DIGITS]) {
        let mut v = x.0 as u64;
        for slot in out.iter_mut().take(self.n as usize) {
            *slot = v % self.p;
            v /= self.p;
        }
    }

    fn undigits(&self, d: &[u64]) -> Element {
        let mut v = 0u64;
        for &c in d[..self.n as usize].iter().rev() {
            v = v * self.p + c;
        }
        Element(v as u32)
    }

    fn digit_add(&self, x: Element, y: Element) -> Element {
        let mut a = [0u64; MAX_DIGITS];
        let mut b = [0u64; MAX_DIGITS];
        self.digits(x, &mut a);
        self.digits(y, &mut b);
        for i in 0..self.n as usize {
            a[i] = (a[i] + b[i]) % self.p;
        }
        self.undigits(&a)
    }

    /// Schoolbook product followed by reduction by the monic modulus.
    fn poly_mul(&self, x: Element, y: Element) -> Element {
        let n = self.n as usize;
        let p = self.p;
        let mut a = [0u64; MAX_DIGITS];
        let mut b = [0u64; MAX_DIGITS];
        self.digits(x, &mut a);
        self.digits(y, &mut b);
        let mut prod = [0u64; 2 * MAX_DIGITS];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
            }
        }
        for top in (n..2 * n - 1).rev() {
            let f = prod[top];
            if f == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..n {
                prod[top - n + i] = (prod[top - n + i] + (p - f) * self.modulus[i]) % p;
            }
        }
        self.undigits(&prod)
    }

    fn find_generator(&self) -> Element {
        let m = self.q - 1;
        let factors = prime_factors(m);
        let pow = |x: Element, e: u64| {
            let mut acc = Element::ONE;
            let mut b = x;
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.poly_mul(acc, b);
                }
                b = self.poly_mul(b, b);
                e >>= 1;
            }
            acc
        };
        (1..self.q as u32)
            .map(Element)
            .find(|&g| factors.iter().all(|&r| pow(g, m / r) != Element::ONE))
            .expect("the multiplicative group is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let m = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * m];
        let mut log = vec![0u32; self.q as usize];
        let mut acc = Element::ONE;
        for i in 0..m {
            exp[i] = acc.0;
            log[acc.0 as usize] = i as u32;
            acc = self.poly_mul(acc, self.generator);
        }
        debug_assert_eq!(acc, Element::ONE);
        for i in m..2 * m {
            exp[i] = exp[i - m];
        }
        Tables { exp, log }
    }
}
