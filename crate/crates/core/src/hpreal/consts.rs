use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::real::BigReal;

const GUARD: u32 = 24;

/// `atan(1/x) * 2^scale` in fixed point, truncating each term.
fn atan_recip_fixed(x: u32, scale: u32) -> BigUint {
    let one = BigUint::one() << scale;
    let x2 = BigUint::from(x) * BigUint::from(x);
    let mut power = one / BigUint::from(x);
    let mut sum = BigUint::zero();
    let mut neg_sum = BigUint::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigUint::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            neg_sum += term;
        }
        power /= &x2;
        k += 1;
    }
    sum - neg_sum
}

/// π to `prec` bits via Machin's formula `π = 16 atan(1/5) − 4 atan(1/239)`.
pub fn pi(prec: u32) -> BigReal {
    let scale = prec + GUARD;
    let a = atan_recip_fixed(5, scale) * BigUint::from(16u32);
    let b = atan_recip_fixed(239, scale) * BigUint::from(4u32);
    BigReal::from_parts(false, a - b, -(scale as i64), prec)
}

/// ln 2 to `prec` bits via `ln 2 = 2 atanh(1/3)`.
pub fn ln2(prec: u32) -> BigReal {
    let scale = prec + GUARD;
    let mut power = (BigUint::one() << scale) / BigUint::from(3u32);
    let mut sum = BigUint::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        sum += &power / BigUint::from(2 * k + 1);
        power /= BigUint::from(9u32);
        k += 1;
    }
    BigReal::from_parts(false, sum << 1u32, -(scale as i64), prec)
}
