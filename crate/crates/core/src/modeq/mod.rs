//! Degree-2 P–Q modular equations and the formula engines built on them:
//! `G_{2n}/G_{n/2}` from `g_{2n}`, the quartic for `h = √2 G_{2n} G_{n/2}`,
//! and `a_{m,2}` from `g_{2m}`.

mod roots;

pub use roots::{eval_poly, positive_real_roots};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hpreal::{agreement_digits, BigReal, PrecisionContext};
use crate::invariants::{class_G, class_g, InvariantIndex, Nome};
use crate::qseries::euler_f;

/// Which pair of eta quotients `(P, Q)` to form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PqVariant {
    /// `P = f(-q)/(q^{1/8} f(-q⁴))`, `Q = f(-q²)/(q^{1/4} f(-q⁸))`.
    Classical,
    /// `P = f(q)/(q^{1/24} f(q²))`, `Q = f(-q²)/(q^{1/12} f(-q⁴))`.
    Weber,
}

#[derive(Clone, Debug)]
pub struct PqPair {
    pub p: BigReal,
    pub q_value: BigReal,
    pub variant: PqVariant,
    pub q: BigReal,
}

fn check_q(q: &BigReal, ctx: &PrecisionContext) -> Result<()> {
    if q.is_positive() && q < &ctx.int(1) {
        Ok(())
    } else {
        Err(Error::Domain("P-Q pairs need 0 < q < 1".into()))
    }
}

/// `q^(a/b)` for a bare positive `q`.
fn q_pow(q: &BigReal, a: i64, b: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    ctx.pow(q, a, b)
}

pub fn pq_of(q: &BigReal, variant: PqVariant, ctx: &PrecisionContext) -> Result<PqPair> {
    check_q(q, ctx)?;
    let q2 = q * q;
    let q4 = &q2 * &q2;
    let (p, qv) = match variant {
        PqVariant::Classical => {
            let q8 = &q4 * &q4;
            let f4 = euler_f(&-q4.clone(), ctx)?;
            let p = euler_f(&-q.clone(), ctx)? / (&q_pow(q, 1, 8, ctx)? * &f4);
            let qv = euler_f(&-q2.clone(), ctx)? / (&q_pow(q, 1, 4, ctx)? * &euler_f(&-q8, ctx)?);
            (p, qv)
        }
        PqVariant::Weber => {
            let p = euler_f(q, ctx)? / (&q_pow(q, 1, 24, ctx)? * &euler_f(&q2, ctx)?);
            let qv = euler_f(&-q2.clone(), ctx)? / (&q_pow(q, 1, 12, ctx)? * &euler_f(&-q4, ctx)?);
            (p, qv)
        }
    };
    Ok(PqPair {
        p,
        q_value: qv,
        variant,
        q: q.clone(),
    })
}

/// `|Σ terms| / max |term|`.
fn relative_residual(terms: &[BigReal], ctx: &PrecisionContext) -> BigReal {
    let mut sum = BigReal::zero(ctx.working_bits());
    let mut scale = BigReal::zero(ctx.working_bits());
    for t in terms {
        sum = &sum + t;
        if t.abs() > scale {
            scale = t.abs();
        }
    }
    if scale.is_zero() {
        return scale;
    }
    sum.abs() / scale
}

/// Relative residual of `Q¹⁶ - P⁴Q¹⁴ + 8P⁴Q² - 4P⁸ = 0` for the Weber pair.
pub fn residual_weber(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let pq = pq_of(q, PqVariant::Weber, ctx)?;
    Ok(weber_residual_of(&pq.p, &pq.q_value, ctx))
}

pub fn weber_residual_of(p: &BigReal, qv: &BigReal, ctx: &PrecisionContext) -> BigReal {
    let p4 = p.powi(4);
    let q2 = qv.powi(2);
    let q14 = q2.powi(7);
    let terms = [
        &q14 * &q2,
        -(&p4 * &q14),
        &(&p4 * &q2) * 8,
        -(&p4 * &p4) * 4,
    ];
    relative_residual(&terms, ctx)
}

/// Relative residual of
/// `(PQ)⁴ + (4/(PQ))⁴ = (Q/P)¹² - 16(P/Q)⁴ - 16(Q/P)⁴` for the classical pair.
pub fn residual_classical(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let pq = pq_of(q, PqVariant::Classical, ctx)?;
    let prod = &pq.p * &pq.q_value;
    let ratio = &pq.q_value / &pq.p;
    let r4 = ratio.powi(4);
    let terms = [
        prod.powi(4),
        (&ctx.int(4) / &prod).powi(4),
        -r4.powi(3),
        r4.recip()? * 16,
        &r4 * 16,
    ];
    Ok(relative_residual(&terms, ctx))
}

/// `Q¹²` and the branch `√s - √(s-16)`, `s = Q¹² + 64/Q¹²`.
///
/// Since `s - 16 = (Q⁶ - 8/Q⁶)²`, the inner root is taken as the signed
/// `Q⁶ - 8/Q⁶`. With the nonnegative root the closed forms would only hold
/// while `Q¹² ≥ 8` (small q); the signed root keeps them valid on all of
/// `0 < q < 1`.
fn closed_form_core(qv: &BigReal, ctx: &PrecisionContext) -> Result<(BigReal, BigReal)> {
    if !qv.is_positive() {
        return Err(Error::BranchDomain("Q must be positive".into()));
    }
    let q6 = qv.powi(6);
    let q12 = &q6 * &q6;
    let s = &q12 + &(&ctx.int(64) / &q12);
    let d = &q6 - &(&ctx.int(8) / &q6);
    let root_s = ctx.sqrt(&s)?;
    let branch = if d.is_positive() {
        // √s - d = 16/(√s + d), without cancellation
        &ctx.int(16) / &(&root_s + &d)
    } else {
        &root_s - &d
    };
    Ok((q12, branch))
}

/// Whether `Q` lies where the nonnegative inner root `√(s-16)` and the
/// signed one coincide (`Q¹² ≥ 8`).
pub fn principal_branch_applies(qv: &BigReal, ctx: &PrecisionContext) -> bool {
    qv.powi(12) >= ctx.int(8)
}

/// `P/Q = Q 2^{-3/4} (√s - √(s-16))^{1/4}`, `s = Q¹² + 64/Q¹²`.
pub fn ratio_closed_form(qv: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let (_, branch) = closed_form_core(qv, ctx)?;
    let c = ctx.pow(&ctx.int(2), -3, 4)?;
    Ok(&(qv * &c) * &ctx.pow(&branch, 1, 4)?)
}

/// `P⁴Q⁴ = Q¹²/8 (√s - √(s-16))`.
pub fn p4q4_closed_form(qv: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let (q12, branch) = closed_form_core(qv, ctx)?;
    Ok((&q12 * &branch).mul_pow2(-3))
}

/// `Λ = (g¹² + g⁻¹²)/2` with the pieces needed downstream.
#[derive(Clone, Debug)]
pub struct LambdaValue {
    pub lambda: BigReal,
    pub g_source: BigReal,
    sqrt_lambda_minus_one: BigReal,
}

impl LambdaValue {
    pub fn sqrt_lambda(&self) -> Result<BigReal> {
        self.lambda.sqrt()
    }

    /// `√(Λ-1) = |g⁶ - g⁻⁶|/√2`, free of the cancellation in `Λ - 1`.
    pub fn sqrt_lambda_minus_one(&self) -> &BigReal {
        &self.sqrt_lambda_minus_one
    }

    /// `√Λ + √(Λ-1)`.
    pub fn upper(&self) -> Result<BigReal> {
        Ok(&self.sqrt_lambda()? + &self.sqrt_lambda_minus_one)
    }

    /// `√Λ - √(Λ-1)`, computed as `1/(√Λ + √(Λ-1))`.
    pub fn lower(&self) -> Result<BigReal> {
        self.upper()?.recip()
    }
}

pub fn lambda_of_g(g: &BigReal, ctx: &PrecisionContext) -> Result<LambdaValue> {
    if !g.is_positive() {
        return Err(Error::Domain("Lambda needs g > 0".into()));
    }
    let g6 = g.powi(6);
    let g6i = g6.recip()?;
    let lambda = (&(&g6 * &g6) + &(&g6i * &g6i)).mul_pow2(-1);
    let sqrt_lambda_minus_one = &(&g6 - &g6i).abs() / &ctx.sqrt(&ctx.int(2))?;
    Ok(LambdaValue {
        lambda,
        g_source: g.clone(),
        sqrt_lambda_minus_one,
    })
}

/// `G_{2n}/G_{n/2} = g_{2n}⁻¹ (√Λ + √(Λ-1))^{1/4}`.
pub fn g_ratio_from_g(g2n: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let lv = lambda_of_g(g2n, ctx)?;
    Ok(ctx.pow(&lv.upper()?, 1, 4)? / g2n)
}

/// `16 g¹² (√Λ + √(Λ-1)) + 16 g⁻¹² (√Λ - √(Λ-1))`.
pub fn quartic_rhs(g2n: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let lv = lambda_of_g(g2n, ctx)?;
    let g12 = g2n.powi(12);
    Ok((&(&g12 * &lv.upper()?) + &(&lv.lower()? / &g12)) * 16)
}

/// Relative residual of `h¹² - 16(h⁴ + h⁻⁴) = R`.
pub fn quartic_residual(h: &BigReal, rhs: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let h4 = h.powi(4);
    let terms = [h4.powi(3), -(&h4 * 16), -(h4.recip()? * 16), -rhs.clone()];
    Ok(relative_residual(&terms, ctx))
}

/// `G_{2n}`, `G_{n/2}` and `h = √2 G_{2n} G_{n/2}` recovered from `g_{2n}`.
#[derive(Clone, Debug)]
pub struct GPairResult {
    /// `G_{2n}`
    pub upper_2n: BigReal,
    /// `G_{n/2}`
    pub upper_half_n: BigReal,
    pub h: BigReal,
    /// Every positive root `x = h⁴` of the quartic, selected or not.
    pub roots_considered: Vec<BigReal>,
}

/// Solve `x⁴ - 16x² - Rx - 16 = 0` for `x = h⁴`, keep the root whose implied
/// `G_{2n}` agrees with the q-series value to `D/2` digits.
pub fn solve_g_pair(n: InvariantIndex, ctx: &PrecisionContext) -> Result<GPairResult> {
    let two_n = n.scale(2)?;
    let g2n = class_g(two_n, ctx)?;
    let ratio = g_ratio_from_g(&g2n, ctx)?;
    let r = quartic_rhs(&g2n, ctx)?;
    let w = ctx.working_bits();
    let coeffs = vec![ctx.int(-16), -r, ctx.int(-16), ctx.int(0), ctx.int(1)];
    let roots = positive_real_roots(&coeffs, w);
    if roots.is_empty() {
        return Err(Error::FormulaInconsistency(format!(
            "quartic for n = {n} has no positive real root"
        )));
    }
    let direct = class_G(two_n, ctx)?;
    let sqrt2 = ctx.sqrt(&ctx.int(2))?;
    let need = ctx.digits() as f64 / 2.0;
    for x in &roots {
        let h = ctx.pow(x, 1, 4)?;
        let upper = ctx.sqrt(&(&(&ratio * &h) / &sqrt2))?;
        if agreement_digits(&upper, &direct) >= need {
            let half = ctx.sqrt(&(&h / &(&sqrt2 * &ratio)))?;
            return Ok(GPairResult {
                upper_2n: upper,
                upper_half_n: half,
                h,
                roots_considered: roots,
            });
        }
    }
    Err(Error::RootSelection(format!(
        "none of the {} positive roots for n = {n} reproduces G_{two_n}",
        roots.len()
    )))
}

/// `a_{m,2} = g_{2m}⁻⁶ (√Λ + √(Λ-1))^{1/2}` with `Λ` built from `g_{2m}`.
pub fn a_m2_from_g(m: InvariantIndex, ctx: &PrecisionContext) -> Result<BigReal> {
    let g = class_g(m.scale(2)?, ctx)?;
    let lv = lambda_of_g(&g, ctx)?;
    Ok(ctx.sqrt(&lv.upper()?)? / g.powi(6))
}

/// `a_{m,2} = 2 q^{1/4} f²(q²) f²(-q⁴) / (f²(q) f²(-q²))` at `q = e^{-π√(m/2)}`.
pub fn a_m2_eta_form(m: InvariantIndex, ctx: &PrecisionContext) -> Result<BigReal> {
    let nm = Nome::new(m.div(&InvariantIndex::integer(2)?)?, ctx)?;
    let q = nm.q();
    let q2 = q * q;
    let q4 = &q2 * &q2;
    let num = (&euler_f(&q2, ctx)? * &euler_f(&-q4, ctx)?).powi(2);
    let den = (&euler_f(q, ctx)? * &euler_f(&-q2, ctx)?).powi(2);
    Ok(&(&nm.pow(1, 4, ctx)? * &(&num / &den)) * 2)
}
