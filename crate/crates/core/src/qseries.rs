//! Theta functions and the infinite q-Pochhammer symbol.
//!
//! Every truncation index is fixed in advance from a geometric tail bound so
//! that the neglected part is below `10^(-D-10)` (relative to the size of
//! the leading terms).

use alloc::format;

use crate::error::{Error, Result};
use crate::hpreal::{BigReal, PrecisionContext};

/// Arguments with `|q|` above this are refused.
pub const MAX_ABS_Q: f64 = 0.999;

/// A validated nome or signed test argument with `|q| <= 0.999`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QArgument(BigReal);

impl QArgument {
    pub fn new(q: BigReal) -> Result<Self> {
        check_q(&q)?;
        Ok(QArgument(q))
    }

    pub fn value(&self) -> &BigReal {
        &self.0
    }
}

fn check_q(q: &BigReal) -> Result<()> {
    if q.is_zero() {
        return Ok(());
    }
    let a = q.abs().to_f64();
    if a < 1.0 {
        if a <= MAX_ABS_Q {
            return Ok(());
        }
        return Err(Error::Divergence(format!(
            "|q| = {a} is too close to 1 (limit {MAX_ABS_Q})"
        )));
    }
    Err(Error::Divergence(format!("|q| = {a} is not below 1")))
}

fn tail_log10(ctx: &PrecisionContext) -> f64 {
    -(ctx.digits() as f64) - 10.0
}

fn guard_for(terms: u64) -> u32 {
    64 - terms.max(1).leading_zeros() + 8
}

/// Number of factors of `(a; q)_∞` needed: least `N` with
/// `|a| |q|^N / (1 - |q|) < 10^(-D-10)`.
fn pochhammer_terms(log_a: f64, q_abs: f64, ctx: &PrecisionContext) -> u64 {
    let lq = libm::log10(q_abs);
    let rhs = tail_log10(ctx) + libm::log10(1.0 - q_abs) - log_a;
    if rhs >= 0.0 {
        return 1;
    }
    (libm::floor(rhs / lq) as u64) + 1
}

/// `(a; q)_∞ = ∏_{n≥0} (1 - a q^n)`.
pub fn qpochhammer_inf(a: &BigReal, q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_q(q)?;
    let w = ctx.working_bits();
    if a.is_zero() {
        return Ok(BigReal::one(w));
    }
    let one = BigReal::one(w);
    if q.is_zero() {
        return Ok(one.sub_round(a, w));
    }
    let log_a = a.log10_abs_approx();
    let q_abs = q.abs().to_f64();
    if log_a + libm::log10(q_abs) >= 0.0 {
        return Err(Error::Divergence("(a;q)_inf needs |a| < 1/|q|".into()));
    }
    let n = pochhammer_terms(log_a, q_abs, ctx);
    let wp = w + guard_for(n);
    let one = BigReal::one(wp);
    let mut term = a.with_prec(wp);
    let mut prod = one.clone();
    for _ in 0..n {
        prod = prod.mul_round(&one.sub_round(&term, wp), wp);
        term = term.mul_round(q, wp);
    }
    Ok(prod.with_prec(w))
}

/// `f(a, b) = Σ_{n∈ℤ} a^{n(n+1)/2} b^{n(n-1)/2}` for `|ab| < 1`.
pub fn theta_general(a: &BigReal, b: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let w = ctx.working_bits();
    if a.is_zero() || b.is_zero() {
        return Ok(BigReal::one(w).add_round(a, w).add_round(b, w));
    }
    let la = a.log10_abs_approx();
    let lb = b.log10_abs_approx();
    let lab = la + lb;
    if lab >= 0.0 {
        return Err(Error::Divergence("f(a,b) needs |ab| < 1".into()));
    }
    let na = bilateral_terms(la, lab, ctx);
    let nb = bilateral_terms(lb, lab, ctx);
    let wp = w + guard_for(na + nb) + headroom_bits(la, lab).max(headroom_bits(lb, lab));
    let ab = a.mul_round(b, wp);
    let one = BigReal::one(wp);
    let mut sum = one.clone();
    for (x, count) in [(a, na), (b, nb)] {
        // t_{n+1} = t_n · x · (ab)^n
        let mut t = one.clone();
        let mut step = x.with_prec(wp);
        for _ in 0..count {
            t = t.mul_round(&step, wp);
            sum = sum.add_round(&t, wp);
            step = step.mul_round(&ab, wp);
        }
    }
    Ok(sum.with_prec(w))
}

/// Terms on one side of the bilateral sum. The term ratio is
/// `|x| |ab|^n`; once that is at most 1/2 the tail is below twice the next
/// term.
fn bilateral_terms(lx: f64, lab: f64, ctx: &PrecisionContext) -> u64 {
    let peak = peak_log10(lx, lab);
    let target = tail_log10(ctx) + peak.max(0.0) - libm::log10(2.0);
    let half = -libm::log10(2.0);
    let mut n: u64 = 0;
    let mut l = 0.0; // log10 |t_n|
    loop {
        let ratio = lx + n as f64 * lab;
        if ratio <= half && l + ratio < target {
            return n;
        }
        l += ratio;
        n += 1;
    }
}

fn peak_log10(lx: f64, lab: f64) -> f64 {
    let mut l: f64 = 0.0;
    let mut best: f64 = 0.0;
    let mut n = 0.0;
    while lx + n * lab > 0.0 {
        l += lx + n * lab;
        best = best.max(l);
        n += 1.0;
    }
    best
}

fn headroom_bits(lx: f64, lab: f64) -> u32 {
    (peak_log10(lx, lab) * 3.33) as u32
}

/// Number of `n ≥ 1` needed in `Σ q^{n²}` (or in `Σ q^{n(n+1)/2}` when
/// `triangular`) so that the tail, bounded by `|q|^{e(N+1)}/(1-|q|)`,
/// is below `10^(-D-10)`.
fn theta_terms(q_abs: f64, triangular: bool, ctx: &PrecisionContext) -> u64 {
    let lq = libm::log10(q_abs);
    let rhs = tail_log10(ctx) + libm::log10(1.0 - q_abs);
    let mut n: u64 = 0;
    loop {
        let m = n + 1;
        let e = if triangular { m * (m + 1) / 2 } else { m * m };
        if e as f64 * lq < rhs {
            return n;
        }
        n += 1;
    }
}

/// `φ(q) = Σ_{n∈ℤ} q^{n²}`.
pub fn theta_phi(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_q(q)?;
    let w = ctx.working_bits();
    if q.is_zero() {
        return Ok(BigReal::one(w));
    }
    let n = theta_terms(q.abs().to_f64(), false, ctx);
    let wp = w + guard_for(2 * n);
    // q^{(n+1)²} = q^{n²} · q^{2n+1}
    let q2 = q.mul_round(q, wp);
    let mut odd = q.with_prec(wp);
    let mut t = BigReal::one(wp);
    let mut sum = BigReal::zero(wp);
    for _ in 0..n {
        t = t.mul_round(&odd, wp);
        sum = sum.add_round(&t, wp);
        odd = odd.mul_round(&q2, wp);
    }
    Ok(sum
        .mul_pow2(1)
        .add_round(&BigReal::one(wp), wp)
        .with_prec(w))
}

/// `ψ(q) = Σ_{n≥0} q^{n(n+1)/2}`.
pub fn theta_psi(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_q(q)?;
    let w = ctx.working_bits();
    if q.is_zero() {
        return Ok(BigReal::one(w));
    }
    let n = theta_terms(q.abs().to_f64(), true, ctx);
    let wp = w + guard_for(2 * n);
    let qq = q.with_prec(wp);
    let mut step = qq.clone();
    let mut t = BigReal::one(wp);
    let mut sum = BigReal::one(wp);
    for _ in 0..n {
        t = t.mul_round(&step, wp);
        sum = sum.add_round(&t, wp);
        step = step.mul_round(&qq, wp);
    }
    Ok(sum.with_prec(w))
}

/// `f(t) = ∏_{n≥1} (1 - (-t)^n)`, so `f(-q) = (q; q)_∞`.
pub fn euler_f(t: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let s = -t;
    qpochhammer_inf(&s, &s, ctx)
}

/// `Σ_{n∈ℤ} (-1)^n q^{n(3n-1)/2}`, the series side of `(q; q)_∞`.
pub fn pentagonal_series(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    check_q(q)?;
    let w = ctx.working_bits();
    let q2 = q.mul_round(q, w + 8);
    theta_general(&-q, &-q2, ctx)
}

/// `χ(q) = (-q; q²)_∞`.
pub fn chi_of(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let wp = ctx.working_bits() + 8;
    qpochhammer_inf(&-q, &q.mul_round(q, wp), ctx)
}

/// `φ(q) = (-q; q²)²_∞ (q²; q²)_∞`.
pub fn phi_product(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let wp = ctx.working_bits() + 8;
    let q2 = q.mul_round(q, wp);
    let c = qpochhammer_inf(&-q, &q2, ctx)?;
    let e = qpochhammer_inf(&q2, &q2, ctx)?;
    Ok(&(&c * &c) * &e)
}

/// `ψ(q) = (q²; q²)_∞ / (q; q²)_∞`.
pub fn psi_product(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let wp = ctx.working_bits() + 8;
    let q2 = q.mul_round(q, wp);
    let num = qpochhammer_inf(&q2, &q2, ctx)?;
    let den = qpochhammer_inf(q, &q2, ctx)?;
    num.checked_div(&den)
}

/// `(q²; q²)_∞ / (q; q²)²_∞`, the variant with a squared denominator. It does
/// not equal `ψ(q)`; kept so reports can show the discrepancy.
pub fn psi_product_squared_denominator(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let wp = ctx.working_bits() + 8;
    let q2 = q.mul_round(q, wp);
    let num = qpochhammer_inf(&q2, &q2, ctx)?;
    let den = qpochhammer_inf(q, &q2, ctx)?;
    num.checked_div(&(&den * &den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpreal::agreement_digits;

    fn c() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    #[test]
    fn refuses_arguments_near_one() {
        let c = c();
        assert!(theta_phi(&c.ratio(9995, 10000), &c).is_err());
        assert!(chi_of(&c.int(1), &c).is_err());
        assert!(theta_phi(&c.ratio(999, 1000), &c).is_ok());
        assert!(qpochhammer_inf(&c.int(20), &c.ratio(1, 10), &c).is_err());
    }

    #[test]
    fn degenerate_arguments() {
        let c = c();
        let one = c.int(1);
        assert_eq!(qpochhammer_inf(&c.int(0), &c.ratio(1, 2), &c).unwrap(), one);
        assert_eq!(theta_general(&c.int(0), &c.int(0), &c).unwrap(), one);
        assert_eq!(
            theta_general(&c.int(0), &c.ratio(1, 4), &c).unwrap(),
            c.ratio(5, 4)
        );
        for f in [theta_phi, theta_psi, euler_f, chi_of] {
            assert_eq!(f(&c.int(0), &c).unwrap(), one);
        }
    }

    #[test]
    fn large_a_in_bilateral_sum() {
        // with |a| > 1 the terms grow before they decay; f is symmetric in a, b
        let c = c();
        let q = c.ratio(1, 50);
        let a = c.int(3);
        let b = q.mul_round(&q, c.working_bits()) / &a;
        let direct = theta_general(&a, &b, &c).unwrap();
        let swapped = theta_general(&b, &a, &c).unwrap();
        assert!(agreement_digits(&direct, &swapped) > 40.0);
    }
}
