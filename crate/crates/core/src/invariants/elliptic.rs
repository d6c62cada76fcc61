use crate::error::{Error, Result};
use crate::hpreal::{BigReal, PrecisionContext};

/// Above this modulus `K` switches from the hypergeometric series to the
/// arithmetic-geometric mean.
pub const SERIES_LIMIT: f64 = 0.9;

/// Complete elliptic integral of the first kind.
pub fn elliptic_k(k: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if k.is_negative() || k >= &ctx.int(1) {
        return Err(Error::Domain("elliptic K needs 0 <= k < 1".into()));
    }
    if k.to_f64() <= SERIES_LIMIT {
        k_series(k, ctx)
    } else {
        k_agm(k, ctx)
    }
}

/// `π/2 Σ ((1/2)_n / n!)² k^{2n}`; consecutive terms shrink by at least
/// `k²`, so the tail after term `N` is below `k^{2N}/(1-k²)`.
pub fn k_series(k: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let w = ctx.working_bits();
    let wp = w + 24;
    let pi = ctx.widened(8).pi();
    if k.is_zero() {
        return Ok(pi.mul_pow2(-1).with_prec(w));
    }
    let kf = k.to_f64();
    if kf >= 0.99 {
        return Err(Error::Domain("series route needs k < 0.99".into()));
    }
    let lk2 = 2.0 * libm::log10(kf);
    let target = -(ctx.digits() as f64) - 10.0 + libm::log10(1.0 - kf * kf);
    let n = (libm::ceil(target / lk2) as u64).max(1);
    let k2 = k.mul_round(k, wp);
    let mut term = BigReal::one(wp);
    let mut sum = BigReal::one(wp);
    for i in 0..n as i64 {
        let num = (2 * i + 1) * (2 * i + 1);
        let den = (2 * i + 2) * (2 * i + 2);
        term = term
            .mul_round(&k2, wp)
            .mul_round(&BigReal::from_i64(num, 64), wp)
            .div_round(&BigReal::from_i64(den, 64), wp);
        sum = sum.add_round(&term, wp);
    }
    Ok(sum.mul_round(&pi, wp).mul_pow2(-1).with_prec(w))
}

/// `π / (2 AGM(1, k'))` with `k' = sqrt((1-k)(1+k))`.
pub fn k_agm(k: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let w = ctx.working_bits();
    let wp = w + 24;
    let one = BigReal::one(wp);
    let kp = one
        .sub_round(k, wp)
        .mul_round(&one.add_round(k, wp), wp)
        .sqrt()?;
    let mut a = one;
    let mut b = kp;
    let stop = -(wp as i64) + 4;
    for _ in 0..200 {
        let d = a.sub_round(&b, wp);
        if d.is_zero() || d.top_bit() - a.top_bit() < stop {
            break;
        }
        let an = a.add_round(&b, wp).mul_pow2(-1);
        b = a.mul_round(&b, wp).sqrt()?;
        a = an;
    }
    let pi = ctx.widened(8).pi();
    Ok(pi.div_round(&a.mul_pow2(1), wp).with_prec(w))
}
