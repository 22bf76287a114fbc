//! The twelve acceptance checks, one PASS/FAIL line each. Every computed
//! uniformity below is taken from the library and from the naive oracle in
//! `common`, and the two must agree before the expected value is compared.

mod common;

use std::panic::{self, AssertUnwindSafe};

use cdiff::field::poly::irreducibles;
use cdiff::harness::{run_case, CSelector, TheoremCase, Verdict};
use cdiff::spectrum::{delta_at, full_cddt, uniformity, uniformity_with, PowerMap};
use cdiff::theory::{gcd_pk1, gcd_pk1_direct, inverse_exponent_identity, RuleId};
use cdiff::{Element, Field};
use common::{gcd, isomorphism, small_fields, Naive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Uniformity of `x^d` at `c` (canonical index), from the library and the
/// oracle; an error if they disagree.
fn both(f: &Field, o: &Naive, d: u64, c: u64) -> Result<u32, String> {
    let lib = uniformity(f, &PowerMap::new(d).unwrap(), f.element(c).unwrap())
        .map_err(|e| e.to_string())?
        .uniformity;
    let naive = o.uniformity(d, c);
    ensure!(lib == naive, "GF({}) d={d} c={c}: library {lib}, oracle {naive}", o.q);
    Ok(lib)
}

fn gf(spec: &str) -> (Field, Naive) {
    let f = Field::parse(spec).unwrap();
    let o = Naive::new(&f);
    (f, o)
}

fn exact_at_minus_one(spec: &str, d: u64, want: u32) -> Result<(), String> {
    let (f, o) = gf(spec);
    let u = both(&f, &o, d, o.minus_one())?;
    ensure!(u == want, "GF({spec}) d={d} c=-1: uniformity {u}, expected {want}");
    Ok(())
}

fn bound_at_minus_one(spec: &str, d: u64, bound: u32) -> Result<(), String> {
    let (f, o) = gf(spec);
    let u = both(&f, &o, d, o.minus_one())?;
    ensure!(u <= bound, "GF({spec}) d={d} c=-1: uniformity {u}, expected <= {bound}");
    Ok(())
}

fn gold() -> Check {
    for (spec, d, k) in [("2^5", 3, 1), ("2^7", 3, 1), ("2^7", 5, 2), ("2^7", 9, 3)] {
        let (f, o) = gf(spec);
        let q = o.q;
        let us: Vec<u32> = (2..q).into_par_iter().map(|c| both(&f, &o, d, c)).collect::<Result<_, _>>()?;
        ensure!(us.len() as u64 == q - 2, "GF({spec}): {} values of c", us.len());
        if let Some((i, u)) = us.iter().enumerate().find(|(_, &u)| u != 3) {
            return Err(format!("GF({spec}) d={d} c={}: uniformity {u}, expected 3", i + 2));
        }
        let u0 = both(&f, &o, d, 0)?;
        ensure!(u0 as u64 == gcd(d, q - 1), "GF({spec}) d={d} c=0: {u0} != gcd");

        // the harness agrees: every c outside {0, 1} confirmed, c = 0 observed
        let (p, n) = (f.characteristic(), f.degree());
        let r = run_case(&TheoremCase::new(RuleId::Gold, p, n, Some(k), CSelector::All)).map_err(|e| e.to_string())?;
        ensure!(r.d == Some(d), "GF({spec}) k={k}: harness exponent {:?}", r.d);
        for out in &r.outcomes {
            let want = match out.c {
                0 => Verdict::Observation,
                1 => Verdict::NotApplicable,
                _ => Verdict::Confirmed,
            };
            ensure!(out.verdict == want, "GF({spec}) c={}: harness verdict {:?}", out.c, out.verdict);
        }
        ensure!(r.outcomes[0].computed == Some(u0), "GF({spec}) c=0 observation {:?}", r.outcomes[0].computed);
    }
    Ok("GF(2^5) x^3 and GF(2^7) x^3, x^5, x^9 are 3-uniform at all 30 / 126 c outside {0,1}; c=0 gives gcd(d,q-1)=1".into())
}

fn pk1() -> Check {
    let (f, o) = gf("3^4");
    let sub: Vec<u64> = (0..o.q).filter(|&c| c != 1 && o.pow(c, 9) == c).collect();
    ensure!(sub.len() == 8, "GF(9) inside GF(81) has {} elements besides 1", sub.len());
    let want = gcd(10, 80) as u32;
    for &c in &sub {
        let u = both(&f, &o, 10, c)?;
        ensure!(u == want, "GF(3^4) d=10 c={c}: uniformity {u}, expected {want}");
    }
    let (f9, o9) = gf("3^2");
    let u = both(&f9, &o9, 4, 2)?;
    ensure!(u == 4, "GF(3^2) d=4 c=2: uniformity {u}, expected 4");
    Ok(format!("GF(3^4) x^10 has uniformity 10 at all 8 c in GF(9)\\{{1}}: {sub:?}; GF(3^2) x^4 at c=2 has 4"))
}

fn half_pcn() -> Check {
    exact_at_minus_one("5", 13, 1)?;
    exact_at_minus_one("3^3", 5, 1)?;
    let (f, o) = gf("3^3");
    let u = both(&f, &o, 2, o.minus_one())?;
    ensure!(u != 1 && u == 2, "GF(3^3) d=2 c=-1: uniformity {u}, expected 2");
    Ok("GF(5) x^13 and GF(3^3) x^5 are PcN at c=-1; GF(3^3) x^2 is not (uniformity 2)".into())
}

fn half_apcn() -> Check {
    exact_at_minus_one("3^2", 2, 2)?;
    exact_at_minus_one("3^4", 14, 2)?;
    Ok("GF(3^2) x^2 and GF(3^4) x^14 have uniformity exactly 2 at c=-1".into())
}

fn two_pn_third() -> Check {
    for (spec, d) in [("5", 3), ("2^5", 21), ("11", 7)] {
        let (f, o) = gf(spec);
        for c in (0..o.q).filter(|&c| c != 1) {
            let u = both(&f, &o, d, c)?;
            ensure!(u <= 3, "GF({spec}) d={d} c={c}: uniformity {u}, expected <= 3");
        }
    }
    Ok("GF(5) x^3, GF(2^5) x^21, GF(11) x^7 are at most 3-uniform for every c != 1".into())
}

fn pn1_half() -> Check {
    let mut square_ratio = Vec::new();
    for (spec, d) in [("13", 7), ("5^2", 13)] {
        let (f, o) = gf(spec);
        ensure!(o.q % 4 == 1, "GF({spec}) is not 1 mod 4");
        for c in (0..o.q).filter(|&c| c != 1 && c != o.minus_one()) {
            let u = both(&f, &o, d, c)?;
            ensure!(u <= 4, "GF({spec}) d={d} c={c}: uniformity {u}, expected <= 4");
            let ratio = o.mul(o.sub(1, c), o.inv(o.add(1, c)));
            if o.chi(ratio) == Some(1) {
                ensure!(u <= 2, "GF({spec}) d={d} c={c} (square ratio): uniformity {u}, expected <= 2");
                square_ratio.push((spec, c));
            }
        }
    }
    ensure!(square_ratio.contains(&("13", 2)), "c=2 in GF(13) should have a square ratio");
    Ok(format!(
        "GF(13) x^7 and GF(5^2) x^13 are at most 4-uniform off c=+-1, and at most 2-uniform at the {} c with a square ratio",
        square_ratio.len()
    ))
}

fn pn3_half() -> Check {
    bound_at_minus_one("7", 5, 3)?;
    bound_at_minus_one("7^2", 26, 4)?;
    Ok("GF(7) x^5 at c=-1 is at most 3-uniform; GF(7^2) x^26 at most 4-uniform".into())
}

fn pn_minus3_half() -> Check {
    for (spec, d) in [("7", 2), ("11", 4), ("3^4", 39)] {
        bound_at_minus_one(spec, d, 4)?;
    }
    Ok("GF(7) x^2, GF(11) x^4, GF(3^4) x^39 are at most 4-uniform at c=-1".into())
}

fn conjecture() -> Check {
    for (spec, p, n, d) in [("3^3", 3, 3, 7), ("5^3", 5, 3, 21), ("3^5", 3, 5, 61), ("7^3", 7, 3, 43)] {
        exact_at_minus_one(spec, d, 1)?;
        let id = inverse_exponent_identity(p, n).map_err(|e| e.to_string())?;
        ensure!(id.d == d, "({p},{n}): exponent {}, expected {d}", id.d);
        ensure!(id.check, "({p},{n}): {} * {} is not 1 mod q-1", id.d, id.d_inv);
    }
    Ok("x^7, x^21, x^61, x^43 over GF(3^3), GF(5^3), GF(3^5), GF(7^3) are PcN at c=-1; the inverse identity holds".into())
}

fn inverse_rows() -> Check {
    let mut mismatches = Vec::new();
    let mut mismatched_c = Vec::new();
    let mut checked = 0;
    for spec in ["2^4", "2^5"] {
        let (f, o) = gf(spec);
        let d = o.q - 2;
        for c in 1..o.q {
            let both_one = o.trace(c) == 1 && o.trace(o.inv(c)) == 1;
            let want = if both_one { 2 } else { 3 };
            let u = both(&f, &o, d, c)?;
            checked += 1;
            if u != want {
                mismatches.push(format!("GF({spec}) c={c}: uniformity {u}, table {want}"));
                mismatched_c.push(c);
            }
        }
    }
    let (f, o) = gf("7");
    let four = o.from_int(4);
    for c in 1..o.q {
        let u_arg = o.sub(o.mul(c, c), o.mul(four, c));
        let v_arg = o.sub(1, o.mul(four, c));
        let two = c == four || c == o.inv(four) || (o.chi(u_arg) == Some(-1) && o.chi(v_arg) == Some(-1));
        let want = if two { 2 } else { 3 };
        let u = both(&f, &o, 5, c)?;
        checked += 1;
        if u != want {
            mismatches.push(format!("GF(7) c={c}: uniformity {u}, table {want}"));
            mismatched_c.push(c);
        }
    }
    for spec in ["2^4", "2^5", "7", "3^3", "5^2"] {
        let (f, o) = gf(spec);
        let u = both(&f, &o, o.q - 2, 0)?;
        ensure!(u == 1, "GF({spec}) inverse at c=0: uniformity {u}, expected 1");
    }
    if mismatches.is_empty() {
        Ok(format!("all {checked} nonzero c follow the tabulated 2/3 split; c=0 is PcN"))
    } else {
        let note = if mismatched_c.iter().all(|&c| c == 1) {
            ". Each is c=1, where the entry is the classical differential uniformity; every c outside {0,1} matches"
        } else {
            ""
        };
        Err(format!(
            "{} of {checked} nonzero c disagree with the tabulated split: {}{note}",
            mismatches.len(),
            mismatches.join("; ")
        ))
    }
}

fn properties() -> Check {
    // fast path against the full table, and row sums
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let fields: Vec<(u64, u32)> = small_fields(128);
    for i in 0..200 {
        let (p, n) = fields[rng.random_range(0..fields.len())];
        let f = Field::new(p, n, None).unwrap();
        let q = f.order();
        let d = rng.random_range(1..4 * q);
        let c = loop {
            let c = rng.random_range(0..q);
            if c != 1 {
                break f.element(c).unwrap();
            }
        };
        let map = PowerMap::new(d).unwrap();
        let fast = uniformity(&f, &map, c).map_err(|e| e.to_string())?.uniformity;
        let table = full_cddt(&f, &map, c, u64::MAX).map_err(|e| e.to_string())?;
        ensure!(fast == table.max(), "triple {i}: GF({p}^{n}) d={d} c={c}: fast {fast}, table {}", table.max());
        if q <= 32 {
            let o = Naive::new(&f);
            ensure!(fast == o.uniformity(d, c.index() as u64), "triple {i}: oracle disagrees");
        }
        for a in f.elements() {
            let s: u64 = table.row(a).iter().map(|&v| v as u64).sum();
            ensure!(s == q, "GF({p}^{n}) d={d} c={c} row {a} sums to {s}");
        }
    }

    let small = small_fields(81);
    // delta endpoints
    for &(p, n) in &small {
        let f = Field::new(p, n, None).unwrap();
        let q = f.order();
        let m1 = f.minus_one();
        for d in 1..=q {
            let map = PowerMap::new(d).unwrap();
            let sign = if d % 2 == 1 { Element::ONE } else { m1 };
            for c in f.elements() {
                ensure!(delta_at(&f, &map, c, f.zero()) == Element::ONE, "GF({p}^{n}) d={d} c={c}: delta(0)");
                ensure!(delta_at(&f, &map, c, m1) == f.mul(sign, c), "GF({p}^{n}) d={d} c={c}: delta(-1)");
            }
        }
    }

    // cyclotomic transport
    small.par_iter().try_for_each(|&(p, n)| -> Result<(), String> {
        let f = Field::new(p, n, None).unwrap();
        let q = f.order();
        for d in 1..q {
            let map = PowerMap::new(d).unwrap();
            let shifted = PowerMap::new(p * d).unwrap();
            for c in f.elements() {
                let lhs = uniformity_with(&f, &shifted, c, 0).unwrap().uniformity;
                let c2 = f.pow(c, p.pow(n - 1));
                let rhs = uniformity_with(&f, &map, c2, 0).unwrap().uniformity;
                ensure!(lhs == rhs, "GF({p}^{n}) d={d} c={c}: {lhs} vs {rhs}");
            }
        }
        Ok(())
    })?;

    // modulus independence at GF(3^4)
    let moduli: Vec<Vec<u64>> = irreducibles(3, 4).take(2).collect();
    let f1 = Field::new(3, 4, Some(&moduli[0])).unwrap();
    let f2 = Field::new(3, 4, Some(&moduli[1])).unwrap();
    ensure!(f1.modulus() != f2.modulus(), "moduli coincide");
    let phi = isomorphism(&f1, &f2);
    (1..80u64).into_par_iter().try_for_each(|d| -> Result<(), String> {
        let map = PowerMap::new(d).unwrap();
        for c in f1.elements() {
            let u1 = uniformity_with(&f1, &map, c, 0).unwrap().uniformity;
            let u2 = uniformity_with(&f2, &map, phi[c.index() as usize], 0).unwrap().uniformity;
            ensure!(u1 == u2, "GF(3^4) d={d} c={c}: {u1} under {:?}, {u2} under {:?}", moduli[0], moduli[1]);
        }
        Ok(())
    })?;

    Ok(format!(
        "200 fast-path triples match full tables with row sums q; delta endpoints and Frobenius transport hold on {} fields up to 81; GF(3^4) agrees under {:?} and {:?}",
        small.len(),
        moduli[0],
        moduli[1]
    ))
}

fn gcd_closed_form() -> Check {
    let mut n_checked = 0;
    for p in [2u64, 3, 5, 7] {
        for k in 1..=12 {
            for n in 1..=12 {
                let (a, b) = (gcd_pk1(p, k, n), gcd_pk1_direct(p, k, n));
                ensure!(a == b, "p={p} k={k} n={n}: closed form {a}, direct {b}");
                n_checked += 1;
            }
        }
    }
    Ok(format!("closed form equals the direct gcd on all {n_checked} (p, k, n)"))
}

fn main() {
    let checks: [(&str, fn() -> Check); 12] = [
        ("gold exponents", gold),
        ("p^k+1 over subfield multipliers", pk1),
        ("(p^k+1)/2 PcN biconditional", half_pcn),
        ("(p^k+1)/2 APcN", half_apcn),
        ("(2p^n-1)/3", two_pn_third),
        ("(p^n+1)/2", pn1_half),
        ("(p^n+3)/2", pn3_half),
        ("(p^n-3)/2", pn_minus3_half),
        ("(p^n+1)/(p+1) PcN", conjecture),
        ("inverse map rows", inverse_rows),
        ("property suite", properties),
        ("gcd(p^k+1, p^n-1) closed form", gcd_closed_form),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("criterion {:2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", checks.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
