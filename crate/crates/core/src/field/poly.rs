//! Dense polynomials over GF(p), coefficient vectors with the constant term
//! first. Only what field construction needs: reduction, modular
//! exponentiation, gcd and an irreducibility test.

use crate::arith::mod_pow;

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod_p(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let f = r[top] * lead_inv % p;
        if f != 0 {
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - f) * mi % p) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, m, p)
}

pub(crate) fn pow_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or: a monic `m` of degree n is irreducible iff
/// gcd(x^(p^i) - x mod m, m) = 1 for every 1 <= i <= n/2.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if m[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut h = rem(&x, m, p);
    for _ in 1..=n / 2 {
        h = pow_mod(&h, p, m, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = gcd(&diff, m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// All monic irreducible polynomials of degree `n` over GF(p), ordered
/// lexicographically with the constant term compared first.
pub fn irreducibles(p: u64, n: u32) -> impl Iterator<Item = Vec<u64>> {
    let count = p.checked_pow(n).unwrap_or(u64::MAX);
    // a zero constant term means x divides m
    let start = if n > 1 { count / p } else { 0 };
    (start..count).filter_map(move |v| {
        let mut m = vec![0u64; n as usize + 1];
        let mut rest = v;
        for i in (0..n as usize).rev() {
            m[i] = rest % p;
            rest /= p;
        }
        m[n as usize] = 1;
        is_irreducible(&m, p).then_some(m)
    })
}
