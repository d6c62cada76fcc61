//! Arbitrary-precision real arithmetic.
//!
//! [`BigReal`] is a binary float with a per-value mantissa width. Add, sub,
//! mul, div, sqrt and integer roots are correctly rounded (half-to-even);
//! `exp` and rational powers are accurate to a few ulps, well inside the
//! `2^(-W+4)` relative error budget. [`PrecisionContext`] maps a requested
//! number of decimal digits onto the working width `W`.

mod consts;
mod context;
mod decimal;
mod elementary;
mod real;

pub use context::PrecisionContext;
pub use decimal::{
    agreement_digits, format_scientific, format_significant, max_digits, parse_decimal,
};
pub use real::{BigReal, Closeness};

use crate::error::{Error, Result};

/// π at the working precision of `ctx`.
pub fn const_pi(ctx: &PrecisionContext) -> BigReal {
    ctx.pi()
}

/// `e^x` at the working precision of `ctx`. Fails with `Overflow` for `|x| >= 2^40`.
pub fn exp_of(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    ctx.exp(x)
}

/// `x^(p/r)`; `x` must be positive.
pub fn pow_rational(x: &BigReal, p: i64, r: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    ctx.pow(x, p, r)
}

/// `digits` significant decimal digits, rounded half-to-even. Fails when
/// more digits are requested than the context guarantees.
pub fn to_decimal(
    x: &BigReal,
    digits: u32,
    ctx: &PrecisionContext,
) -> Result<alloc::string::String> {
    if digits > ctx.digits() {
        return Err(Error::PrecisionExceeded {
            requested: digits,
            available: ctx.digits(),
        });
    }
    Ok(format_significant(x, digits))
}

/// Agreement (in digits) demanded between the runs at D and D+20 digits.
pub const RECOMPUTE_EXTRA_DIGITS: u32 = 20;

/// Evaluate `f` at `ctx` and at `ctx` widened by twenty digits; the two must
/// agree to `D - 2` digits or the result is a precision fault. Returns the
/// wider evaluation rounded to the working width of `ctx`.
pub fn validated<F>(ctx: &PrecisionContext, f: F) -> Result<BigReal>
where
    F: Fn(&PrecisionContext) -> Result<BigReal>,
{
    let lo = f(ctx)?;
    let hi = f(&ctx.widened(RECOMPUTE_EXTRA_DIGITS))?;
    let agree = agreement_digits(&lo, &hi);
    let need = ctx.digits().saturating_sub(2) as f64;
    if agree < need {
        return Err(Error::PrecisionFault(alloc::format!(
            "recomputation agrees to {agree:.1} digits, {need} required"
        )));
    }
    Ok(hi.with_prec(ctx.working_bits()))
}
