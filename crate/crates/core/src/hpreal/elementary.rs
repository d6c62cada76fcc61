use alloc::format;

use num_traits::ToPrimitive;

use super::consts;
use super::real::BigReal;
use crate::error::{Error, Result};

/// Largest |x| accepted by [`exp`].
const EXP_ARG_LIMIT_LOG2: i64 = 40;

/// `e^x` rounded to `prec` bits (relative error a few ulps).
pub fn exp(x: &BigReal, prec: u32) -> Result<BigReal> {
    if x.is_zero() {
        return Ok(BigReal::one(prec));
    }
    if x.top_bit() > EXP_ARG_LIMIT_LOG2 {
        return Err(Error::Overflow(format!(
            "exp argument too large (|x| >= 2^{EXP_ARG_LIMIT_LOG2})"
        )));
    }
    let int_bits = x.top_bit().max(0) as u32;
    let reduce = libm::sqrt(prec as f64) as u32 / 2 + 2;
    let wp = prec + int_bits + reduce + 24;
    let ln2 = consts::ln2(wp + int_bits + 8);
    let k = x.div_round(&ln2, wp).round_to_bigint();
    let k_i64 = k
        .to_i64()
        .ok_or_else(|| Error::Overflow("exp exponent".into()))?;
    let kr = BigReal::from_bigint(&k, wp + int_bits + 8);
    let r = x.sub_round(&kr.mul_round(&ln2, wp + int_bits + 8), wp);
    // |r| <= ln2/2, then scaled down by 2^reduce
    let t = r.mul_pow2(-(reduce as i64));
    let mut sum = BigReal::one(wp);
    let mut term = BigReal::one(wp);
    let mut n: i64 = 1;
    let floor = -(wp as i64) - 4;
    loop {
        term = term
            .mul_round(&t, wp)
            .div_round(&BigReal::from_i64(n, 64), wp);
        if term.is_zero() || term.top_bit() < floor {
            break;
        }
        sum = sum.add_round(&term, wp);
        n += 1;
    }
    for _ in 0..reduce {
        sum = sum.mul_round(&sum, wp);
    }
    Ok(sum.mul_pow2(k_i64).with_prec(prec))
}

/// `x^(p/r)` for `x > 0`, rounded to `prec` bits.
pub fn pow_rational(x: &BigReal, p: i64, r: u32, prec: u32) -> Result<BigReal> {
    if r == 0 {
        return Err(Error::Domain("zero root index".into()));
    }
    if !x.is_positive() {
        return Err(Error::Domain("pow_rational needs a positive base".into()));
    }
    if p == 0 {
        return Ok(BigReal::one(prec));
    }
    let extra = 64 - p.unsigned_abs().leading_zeros() + 8;
    let wp = prec + extra;
    let powered = x.with_prec(wp).powi(p.unsigned_abs());
    let root = powered.nth_root(r)?;
    let v = if p < 0 { root.recip()? } else { root };
    Ok(v.with_prec(prec))
}
