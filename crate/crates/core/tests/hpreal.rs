use classinv_core::hpreal::{self, agreement_digits, BigReal, PrecisionContext};
use classinv_core::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

/// Brent–Salamin iteration, independent of the arctangent series used by the library.
fn pi_agm(c: &PrecisionContext) -> BigReal {
    let w = c.working_bits() + 32;
    let one = BigReal::one(w);
    let mut a = one.clone();
    let mut b = BigReal::from_i64(2, w).sqrt().unwrap().recip().unwrap();
    let mut t = BigReal::from_i64(1, w).mul_pow2(-2);
    let mut p = one.clone();
    for _ in 0..40 {
        let an = (&a + &b).mul_pow2(-1);
        let bn = (&a * &b).sqrt().unwrap();
        let d = &a - &an;
        t = &t - &(&p * &(&d * &d));
        p = p.mul_pow2(1);
        a = an;
        b = bn;
        if (&a - &b).is_zero() || (&a - &b).top_bit() < -(w as i64) {
            break;
        }
    }
    let s = &a + &b;
    (&(&s * &s) / &t.mul_pow2(2)).with_prec(c.working_bits())
}

#[test]
fn pi_matches_agm_oracle() {
    for (d, expect) in [(6, "3.14159"), (16, "3.141592653589793")] {
        let c = ctx(d);
        let pi = hpreal::const_pi(&c);
        assert_eq!(hpreal::to_decimal(&pi, d, &c).unwrap(), expect);
        assert_eq!(hpreal::to_decimal(&pi_agm(&c), d, &c).unwrap(), expect);
    }
    for d in [30, 120, 400] {
        let c = ctx(d);
        assert!(agreement_digits(&hpreal::const_pi(&c), &pi_agm(&c)) >= d as f64 + 5.0);
    }
    let c30 = ctx(30);
    let s = hpreal::to_decimal(&hpreal::const_pi(&c30), 16, &c30).unwrap();
    assert_eq!(s, "3.141592653589793");
    let c40 = ctx(40);
    assert_eq!(
        hpreal::to_decimal(&hpreal::const_pi(&c40), 10, &c40).unwrap(),
        "3.141592654"
    );
}

/// Σ_{k≤N} x^k/k! in exact rationals with the tail bounded by twice the next term.
fn exp_taylor(x: &BigRational, d: u32) -> (BigRational, BigRational) {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(d + 10));
    let mut k = 0u32;
    loop {
        sum += &term;
        k += 1;
        term = term * x / BigInt::from(k);
        let bound = &term * BigInt::from(2);
        let mag = if bound < BigRational::zero() {
            -bound.clone()
        } else {
            bound.clone()
        };
        if mag < tol {
            return (sum, mag);
        }
    }
}

fn rational_to_real(r: &BigRational, c: &PrecisionContext) -> BigReal {
    BigReal::from_ratio(r.numer(), r.denom(), c.working_bits()).unwrap()
}

#[test]
fn exp_matches_taylor_oracle() {
    let c = ctx(60);
    assert_eq!(hpreal::exp_of(&c.int(0), &c).unwrap(), c.int(1));
    for (n, d) in [(1, 1), (-3, 7), (5, 2), (-1, 1000)] {
        let x = BigRational::new(BigInt::from(n), BigInt::from(d));
        let (oracle, _) = exp_taylor(&x, 60);
        let got = hpreal::exp_of(&c.ratio(n, d), &c).unwrap();
        assert!(
            agreement_digits(&got, &rational_to_real(&oracle, &c)) > 62.0,
            "exp({n}/{d})"
        );
    }
    let e = hpreal::exp_of(&c.int(1), &c).unwrap();
    assert!(hpreal::to_decimal(&e, 16, &c)
        .unwrap()
        .starts_with("2.718281828459045"));
}

#[test]
fn exp_of_minus_pi() {
    let c = ctx(12);
    let v = hpreal::exp_of(&-hpreal::const_pi(&c), &c).unwrap();
    assert_eq!(hpreal::to_decimal(&v, 12, &c).unwrap(), "0.0432139182638");
}

#[test]
fn exp_overflow_is_a_configuration_error() {
    let c = ctx(20);
    let big = c.int(1).mul_pow2(41);
    assert!(matches!(hpreal::exp_of(&big, &c), Err(Error::Overflow(_))));
}

#[test]
fn rational_powers() {
    let c = ctx(40);
    assert_eq!(hpreal::pow_rational(&c.int(4), 1, 2, &c).unwrap(), c.int(2));
    assert_eq!(
        hpreal::pow_rational(&c.ratio(7, 3), 0, 1, &c).unwrap(),
        c.int(1)
    );
    assert!(hpreal::pow_rational(&c.int(0), 1, 2, &c).is_err());
    assert!(hpreal::pow_rational(&c.int(-2), 1, 3, &c).is_err());

    // Newton oracle for y = 2^(-7/8): solve y^8 = 1/128.
    let w = c.working_bits() + 16;
    let target = BigReal::from_i64(1, w).mul_pow2(-7);
    let mut y = BigReal::from_i64(1, w).mul_pow2(-1);
    for _ in 0..20 {
        let y7 = y.powi(7);
        let f = &(&y7 * &y) - &target;
        y = &y - &(&f / &(&y7 * 8));
    }
    let got = hpreal::pow_rational(&c.int(2), -7, 8, &c).unwrap();
    assert!(agreement_digits(&got, &y) > 41.0);
    assert!(hpreal::to_decimal(&got, 9, &c)
        .unwrap()
        .starts_with("0.545253866"));
}

#[test]
fn to_decimal_respects_contract() {
    let c = ctx(10);
    assert_eq!(hpreal::to_decimal(&c.int(1), 3, &c).unwrap(), "1.00");
    assert_eq!(hpreal::to_decimal(&c.ratio(1, 8), 2, &c).unwrap(), "0.12");
    assert!(matches!(
        hpreal::to_decimal(&c.int(1), 11, &c),
        Err(Error::PrecisionExceeded {
            requested: 11,
            available: 10
        })
    ));
}

#[test]
fn context_validation() {
    assert!(PrecisionContext::new(4).is_err());
    let c = ctx(60);
    assert_eq!(c.working_bits(), 200 + 64);
    assert_eq!(c.with_guard_bits(0).working_bits(), 200);
}

#[test]
fn recomputation_detects_precision_loss() {
    let c = ctx(30);
    // Honest computation passes.
    let v = hpreal::validated(&c, |c| hpreal::exp_of(&c.ratio(1, 3), c)).unwrap();
    assert!(agreement_digits(&v, &hpreal::exp_of(&c.ratio(1, 3), &c.widened(30)).unwrap()) > 31.0);
    // A computation stuck at fixed low precision disagrees with itself across widths.
    let faulty =
        hpreal::validated(&c, |c| {
            let x = BigReal::from_i64(1, 40);
            let third = x.div_round(&BigReal::from_i64(3, 40), 40);
            Ok(third.with_prec(c.working_bits())
                + c.ratio(1, 10i64.pow(12)) * c.int(c.digits() as i64))
        });
    assert!(matches!(faulty, Err(Error::PrecisionFault(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn root_then_power_round_trips(num in 1i64..10_000_000, den in 1i64..10_000, k in prop::sample::select(vec![2u32, 3, 4, 8, 24])) {
        let c = ctx(50);
        let x = c.ratio(num, den);
        let r = hpreal::pow_rational(&x, 1, k, &c).unwrap();
        let back = hpreal::pow_rational(&r, k as i64, 1, &c).unwrap();
        let tol = (c.working_bits() as f64 - 8.0) * std::f64::consts::LOG10_2;
        prop_assert!(agreement_digits(&back, &x) >= tol);
    }

    #[test]
    fn exp_is_multiplicative_inverse(num in -200_000i64..200_000, den in 1i64..1000) {
        let c = ctx(50);
        let a = c.ratio(num, den);
        let p = hpreal::exp_of(&a, &c).unwrap() * hpreal::exp_of(&-a.clone(), &c).unwrap();
        prop_assert!(agreement_digits(&p, &c.int(1)) >= 52.0);
    }

    #[test]
    fn precision_is_idempotent(num in 1i64..100_000, den in 1i64..100_000) {
        let c = ctx(40);
        let f = |c: &PrecisionContext| hpreal::pow_rational(&hpreal::exp_of(&c.ratio(num, den), c)?, 5, 3, c);
        let lo = f(&c).unwrap();
        let hi = f(&c.widened(20)).unwrap();
        prop_assert!(agreement_digits(&lo, &hi) >= 38.0);
    }
}
