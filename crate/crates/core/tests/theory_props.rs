mod common;

use cdiff::theory::{
    conjecture_exponent, cyclotomic_class, cyclotomic_leader, gcd_pk1, gcd_pk1_direct,
    inverse_exponent_identity, Atom, CCondition,
};
use cdiff::{Error, Field, Sign};
use common::{gcd, Naive};
use proptest::prelude::*;

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u128(b, a % b)
    }
}

#[test]
fn gcd_pk1_closed_form_exhaustive() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        for k in 1..=16u32 {
            for n in 1..=16u32 {
                let pp = p as u128;
                let direct = gcd_u128(pp.pow(k) + 1, pp.pow(n) - 1);
                assert_eq!(gcd_pk1(p, k, n), direct, "p={p} k={k} n={n}");
                assert_eq!(gcd_pk1_direct(p, k, n), direct);
            }
        }
    }
}

#[test]
fn inverse_identity_holds_for_odd_p_and_n() {
    for p in [3u64, 5, 7, 11, 13] {
        for n in [1u32, 3, 5, 7] {
            let id = inverse_exponent_identity(p, n).unwrap();
            let q = p.pow(n) as u128;
            assert_eq!(id.d as u128 * (p as u128 + 1), q + 1);
            assert_eq!(id.d_inv as u128 * 2, p as u128 * (p.pow(n - 1) as u128 + 1));
            assert_eq!(id.d as u128 * id.d_inv as u128 % (q - 1), 1 % (q - 1));
            assert!(id.check, "p={p} n={n}");
        }
    }
}

#[test]
fn conjecture_exponent_rejects_bad_parameters() {
    assert_eq!(conjecture_exponent(2, 3), Err(Error::CharTwo));
    assert_eq!(conjecture_exponent(9, 3), Err(Error::NonPrimeP(9)));
    assert_eq!(conjecture_exponent(3, 4), Err(Error::EvenN(4)));
    assert_eq!(conjecture_exponent(5, 3), Ok(21));
}

proptest! {
    #[test]
    fn cyclotomic_classes_are_frobenius_orbits((pi, n, d) in (0..4usize, 1u32..8, 1u64..1 << 20)) {
        let p = [2u64, 3, 5, 7][pi];
        let m = p.pow(n) - 1;
        prop_assume!(m > 1);
        let d = d % m + 1;
        let class = cyclotomic_class(d, p, n);
        prop_assert!(class.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(class.iter().all(|&e| (1..=m).contains(&e)));
        let rep = |e: u64| if e % m == 0 { m } else { e % m };
        prop_assert!(class.contains(&rep(d)));
        prop_assert_eq!(n as usize % class.len(), 0);
        for &e in &class {
            prop_assert!(class.contains(&rep(e * p)));
            prop_assert_eq!(gcd(e, m), gcd(d, m));
            prop_assert_eq!(cyclotomic_class(e, p, n), class.clone());
        }
        prop_assert_eq!(cyclotomic_leader(d, p, n), class[0]);
    }
}

fn atom_strategy() -> impl Strategy<Value = Atom> {
    let sign = prop_oneof![Just(Sign::Plus), Just(Sign::Minus)];
    prop_oneof![
        Just(Atom::NotOne),
        Just(Atom::Zero),
        Just(Atom::MinusOne),
        (1u32..3).prop_map(Atom::InSubfield),
        Just(Atom::ChiRatioSquare),
        (sign.clone(), sign).prop_map(|(s, t)| Atom::Chis(s, t)),
        Just(Atom::FourOrInverse),
    ]
}

fn condition_strategy() -> impl Strategy<Value = CCondition> {
    atom_strategy().prop_map(CCondition::Atom).prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 1..4).prop_map(CCondition::All),
            proptest::collection::vec(inner.clone(), 1..4).prop_map(CCondition::Any),
            inner.prop_map(|c| CCondition::Not(Box::new(c))),
        ]
    })
}

/// Reference evaluation of an odd-characteristic condition on the naive field.
fn naive_eval(o: &Naive, cond: &CCondition, c: u64) -> bool {
    let chi_is = |x: u64, s: Sign| o.chi(x) == Some(s.value());
    match cond {
        CCondition::All(v) => v.iter().all(|x| naive_eval(o, x, c)),
        CCondition::Any(v) => v.iter().any(|x| naive_eval(o, x, c)),
        CCondition::Not(x) => !naive_eval(o, x, c),
        CCondition::Atom(a) => match a {
            Atom::NotOne => c != 1,
            Atom::Zero => c == 0,
            Atom::MinusOne => c == o.minus_one(),
            Atom::InSubfield(m) => o.pow(c, o.p.pow(*m)) == c,
            Atom::ChiRatioSquare => {
                let den = o.add(1, c);
                den != 0 && chi_is(o.mul(o.sub(1, c), o.inv(den)), Sign::Plus)
            }
            Atom::Chis(s, t) => {
                let four = o.from_int(4);
                let u = o.sub(o.mul(c, c), o.mul(four, c));
                let v = o.sub(1, o.mul(four, c));
                chi_is(u, *s) && chi_is(v, *t)
            }
            Atom::FourOrInverse => {
                let four = o.from_int(4);
                c == four || (four != 0 && c == o.inv(four))
            }
            Atom::Traces(..) => unreachable!("odd characteristic only"),
        },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn condition_text_round_trips(cond in condition_strategy()) {
        // singleton groups print with parentheses and parse back as their
        // member, so compare from the first normal form on
        let text = cond.to_string();
        let parsed: CCondition = text.parse().unwrap();
        let normal = parsed.to_string();
        prop_assert_eq!(&normal.parse::<CCondition>().unwrap(), &parsed);
        for spec in ["7", "13", "3^2", "5^2"] {
            let f = Field::parse(spec).unwrap();
            for c in f.elements() {
                prop_assert_eq!(parsed.eval(&f, c).unwrap(), cond.eval(&f, c).unwrap(), "{} at {}", normal, c);
            }
        }
    }

    #[test]
    fn condition_eval_matches_naive(cond in condition_strategy(), fi in 0..5usize) {
        let f = Field::parse(["5", "7", "13", "3^2", "3^3"][fi]).unwrap();
        let o = Naive::new(&f);
        for c in f.elements() {
            prop_assert_eq!(cond.eval(&f, c).unwrap(), naive_eval(&o, &cond, c.index() as u64), "{} at {}", cond, c);
        }
    }
}

#[test]
fn trace_atoms_match_naive_in_characteristic_two() {
    for spec in ["2^3", "2^4", "2^5"] {
        let f = Field::parse(spec).unwrap();
        let o = Naive::new(&f);
        for t in 0..2u8 {
            for t2 in 0..2u8 {
                let cond = CCondition::Atom(Atom::Traces(t, t2));
                for c in f.elements() {
                    let i = c.index() as u64;
                    let want = i != 0 && o.trace(i) == t as u64 && o.trace(o.inv(i)) == t2 as u64;
                    assert_eq!(cond.eval(&f, c).unwrap(), want, "{spec} {cond} at {c}");
                }
            }
        }
    }
}
