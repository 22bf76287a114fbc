//! Number-theoretic identities for power exponents and the prediction
//! rules for known low c-uniformity families.

mod condition;
mod rules;

pub use condition::{Atom, CCondition};
pub use rules::{
    catalogue, theorem_predict, Params, Prediction, PredictionKind, Provenance, RuleId, RuleInfo,
};

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, gcd_u128, is_prime};
use crate::error::{Error, Result};

/// `gcd(p^k + 1, p^n - 1)` in closed form:
/// for `p = 2`, `(2^gcd(2k,n) - 1) / (2^gcd(k,n) - 1)`; for odd `p`, `2` when
/// `n / gcd(n,k)` is odd and `p^gcd(k,n) + 1` otherwise.
///
/// `p^max(k, n)` must fit in 128 bits.
pub fn gcd_pk1(p: u64, k: u32, n: u32) -> u128 {
    let g = gcd(k as u64, n as u64) as u32;
    let p = p as u128;
    if p == 2 {
        let g2 = gcd(2 * k as u64, n as u64) as u32;
        ((1u128 << g2) - 1) / ((1u128 << g) - 1)
    } else if (n / g) % 2 == 1 {
        2
    } else {
        p.pow(g) + 1
    }
}

/// `gcd(p^k + 1, p^n - 1)` computed directly.
pub fn gcd_pk1_direct(p: u64, k: u32, n: u32) -> u128 {
    let p = p as u128;
    gcd_u128(p.pow(k) + 1, p.pow(n) - 1)
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        Err(Error::CharTwo)
    } else if !is_prime(p) {
        Err(Error::NonPrimeP(p))
    } else {
        Ok(())
    }
}

/// `(p^n + 1) / (p + 1)` for odd prime `p` and odd `n`.
pub fn conjecture_exponent(p: u64, n: u32) -> Result<u64> {
    require_odd_prime(p)?;
    if n % 2 == 0 {
        return Err(Error::EvenN(n));
    }
    let q = p.checked_pow(n).ok_or(Error::FieldTooLarge { p, n })?;
    Ok((q + 1) / (p + 1))
}

/// `d = (p^n + 1)/(p + 1)` together with `p (p^(n-1) + 1) / 2` and whether
/// the two are inverse modulo `p^n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseIdentity {
    pub d: u64,
    pub d_inv: u64,
    pub check: bool,
}

pub fn inverse_exponent_identity(p: u64, n: u32) -> Result<InverseIdentity> {
    let d = conjecture_exponent(p, n)?;
    let q = p.pow(n);
    let d_inv = p * (p.pow(n - 1) + 1) / 2;
    let check = (d as u128 * d_inv as u128) % (q as u128 - 1) == 1;
    Ok(InverseIdentity { d, d_inv, check })
}

/// `{d p^i mod (p^n - 1) : 0 <= i < n}` with representatives in
/// `[1, p^n - 1]`, ascending.
pub fn cyclotomic_class(d: u64, p: u64, n: u32) -> Vec<u64> {
    let m = p.pow(n) - 1;
    if m == 0 {
        return vec![1];
    }
    let mut out = Vec::with_capacity(n as usize);
    let mut cur = d % m;
    for _ in 0..n {
        out.push(if cur == 0 { m } else { cur });
        cur = (cur as u128 * p as u128 % m as u128) as u64;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Smallest member of the cyclotomic class of `d`.
pub fn cyclotomic_leader(d: u64, p: u64, n: u32) -> u64 {
    cyclotomic_class(d, p, n)[0]
}
