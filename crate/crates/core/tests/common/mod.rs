//! A deliberately naive GF(p^n) used as a test oracle: elements are
//! coefficient vectors, multiplication is schoolbook with reduction by the
//! modulus, and every count is a double loop. It shares only the canonical
//! index encoding and the modulus with the library.

#![allow(dead_code)]

use cdiff::Field;

pub struct Naive {
    pub p: u64,
    pub n: usize,
    pub q: u64,
    modulus: Vec<u64>,
}

impl Naive {
    pub fn new(field: &Field) -> Self {
        Self::with_modulus(field.characteristic(), field.modulus())
    }

    pub fn with_modulus(p: u64, modulus: &[u64]) -> Self {
        let n = modulus.len() - 1;
        assert_eq!(modulus[n], 1, "monic modulus");
        Naive { p, n, q: p.pow(n as u32), modulus: modulus.to_vec() }
    }

    pub fn poly(&self, mut i: u64) -> Vec<u64> {
        let mut v = vec![0; self.n];
        for slot in v.iter_mut() {
            *slot = i % self.p;
            i /= self.p;
        }
        v
    }

    pub fn index(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let (a, b) = (self.poly(x), self.poly(y));
        let s: Vec<u64> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        self.index(&s)
    }

    pub fn neg(&self, x: u64) -> u64 {
        let s: Vec<u64> = self.poly(x).iter().map(|u| (self.p - u) % self.p).collect();
        self.index(&s)
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        let (a, b) = (self.poly(x), self.poly(y));
        let mut prod = vec![0u64; 2 * self.n];
        for (i, u) in a.iter().enumerate() {
            for (j, v) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        // x^n = -(m_0 + ... + m_{n-1} x^{n-1})
        for top in (self.n..2 * self.n).rev() {
            let f = prod[top];
            if f == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..self.n {
                let sub = f * self.modulus[i] % self.p;
                let slot = &mut prod[top - self.n + i];
                *slot = (*slot + self.p - sub) % self.p;
            }
        }
        self.index(&prod[..self.n])
    }

    /// `x^d` with the exponent taken literally; `x^0 = 1`.
    pub fn pow(&self, x: u64, mut d: u64) -> u64 {
        let mut acc = 1;
        let mut b = x;
        while d > 0 {
            if d & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            d >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: u64) -> u64 {
        assert_ne!(x, 0);
        self.pow(x, self.q - 2)
    }

    pub fn minus_one(&self) -> u64 {
        self.p - 1
    }

    pub fn from_int(&self, v: u64) -> u64 {
        v % self.p
    }

    /// Absolute trace, returned as an integer in `[0, p)`.
    pub fn trace(&self, x: u64) -> u64 {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.n {
            acc = self.add(acc, y);
            y = self.pow(y, self.p);
        }
        assert!(acc < self.p);
        acc
    }

    /// Euler's criterion; `None` at zero.
    pub fn chi(&self, x: u64) -> Option<i8> {
        if x == 0 {
            return None;
        }
        Some(if self.pow(x, (self.q - 1) / 2) == 1 { 1 } else { -1 })
    }

    pub fn power_table(&self, d: u64) -> Vec<u64> {
        (0..self.q).map(|x| self.pow(x, d)).collect()
    }

    /// The full c-DDT of a table, `rows[a][b]`.
    pub fn cddt(&self, table: &[u64], c: u64) -> Vec<Vec<u32>> {
        let q = self.q as usize;
        let ctab: Vec<u64> = table.iter().map(|&y| self.mul(c, y)).collect();
        (0..self.q)
            .map(|a| {
                let mut row = vec![0u32; q];
                for x in 0..self.q {
                    let xa = self.add(x, a);
                    row[self.sub(table[xa as usize], ctab[x as usize]) as usize] += 1;
                }
                row
            })
            .collect()
    }

    /// Maximum over the c-DDT, skipping row 0 exactly when `c = 1`.
    pub fn uniformity_of(&self, table: &[u64], c: u64) -> u32 {
        self.cddt(table, c)
            .iter()
            .enumerate()
            .filter(|&(a, _)| !(c == 1 && a == 0))
            .map(|(_, row)| *row.iter().max().unwrap())
            .max()
            .unwrap()
    }

    pub fn uniformity(&self, d: u64, c: u64) -> u32 {
        self.uniformity_of(&self.power_table(d), c)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every (p, n) with p^n <= limit, p prime.
pub fn small_fields(limit: u64) -> Vec<(u64, u32)> {
    let primes = (2..=limit).filter(|&p| (2..p).all(|f| p % f != 0));
    let mut out = Vec::new();
    for p in primes {
        let mut n = 1;
        while p.pow(n) <= limit {
            out.push((p, n));
            n += 1;
        }
    }
    out
}

/// The field isomorphism `f1 -> f2` sending `t` to the smallest root of
/// `f1`'s modulus in `f2`, as a lookup table on canonical indices.
pub fn isomorphism(f1: &Field, f2: &Field) -> Vec<cdiff::Element> {
    let m1 = f1.modulus();
    let root = f2
        .elements()
        .find(|&r| {
            let mut acc = f2.zero();
            for (i, &c) in m1.iter().enumerate() {
                acc = f2.add(acc, f2.mul(f2.from_int(c as i64), f2.pow(r, i as u64)));
            }
            acc.is_zero()
        })
        .expect("an irreducible polynomial splits in any field of its degree");
    f1.elements()
        .map(|x| {
            let mut acc = f2.zero();
            for (i, &c) in f1.coeffs(x).iter().enumerate() {
                acc = f2.add(acc, f2.mul(f2.from_int(c as i64), f2.pow(root, i as u64)));
            }
            acc
        })
        .collect()
}
