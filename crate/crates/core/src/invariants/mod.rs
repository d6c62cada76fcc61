//! Class invariants, singular moduli, the degree-2 multiplier, `K(k)` and
//! the theta quotient `a_{m,n}`, all evaluated from their q-series.

mod elliptic;
mod index;

pub use elliptic::{elliptic_k, k_agm, k_series, SERIES_LIMIT};
pub use index::InvariantIndex;

use alloc::format;

use crate::error::{Error, Result};
use crate::hpreal::{agreement_digits, BigReal, PrecisionContext};
use crate::qseries::{chi_of, euler_f, theta_phi, theta_psi};

/// The nome `q = e^{-π√r}` together with `π√r`, so rational powers
/// `q^c = e^{-cπ√r}` stay exact in `c`.
#[derive(Clone, Debug)]
pub struct Nome {
    pub index: InvariantIndex,
    pi_sqrt_r: BigReal,
    q: BigReal,
}

impl Nome {
    pub fn new(index: InvariantIndex, ctx: &PrecisionContext) -> Result<Self> {
        let wide = ctx.widened(3);
        let r = index.to_real(&wide);
        let pi_sqrt_r = &wide.pi() * &wide.sqrt(&r)?;
        let q = wide.exp(&-pi_sqrt_r.clone())?.with_prec(ctx.working_bits());
        Ok(Nome {
            index,
            pi_sqrt_r,
            q,
        })
    }

    pub fn q(&self) -> &BigReal {
        &self.q
    }

    /// `q^(p/s)` for any rational exponent, negative included.
    pub fn pow(&self, p: i64, s: i64, ctx: &PrecisionContext) -> Result<BigReal> {
        let c = ctx.widened(3).ratio(-p, s);
        ctx.exp(&(&self.pi_sqrt_r * &c))
    }
}

/// `q = e^{-π√r}`.
pub fn nome(r: InvariantIndex, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(Nome::new(r, ctx)?.q)
}

fn two_pow(p: i64, r: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    ctx.pow(&ctx.int(2), p, r)
}

/// `G_n = 2^{-1/4} q^{-1/24} χ(q)`.
pub fn class_g_upper(n: InvariantIndex, ctx: &PrecisionContext) -> Result<BigReal> {
    let nm = Nome::new(n, ctx)?;
    let chi = chi_of(nm.q(), ctx)?;
    Ok(&(&two_pow(-1, 4, ctx)? * &nm.pow(-1, 24, ctx)?) * &chi)
}

/// `g_n = 2^{-1/4} q^{-1/24} χ(-q)`.
pub fn class_g_lower(n: InvariantIndex, ctx: &PrecisionContext) -> Result<BigReal> {
    let nm = Nome::new(n, ctx)?;
    let chi = chi_of(&-nm.q().clone(), ctx)?;
    Ok(&(&two_pow(-1, 4, ctx)? * &nm.pow(-1, 24, ctx)?) * &chi)
}

pub use class_g_lower as class_g;
pub use class_g_upper as class_G;

/// Digits of agreement demanded between `2^{1/4} g_n G_n` and `g_{4n}`.
fn consistency_digits(ctx: &PrecisionContext) -> f64 {
    ctx.digits() as f64 - 10.0
}

/// `g_{4n} = 2^{1/4} g_n G_n`, checked against direct evaluation of `g_{4n}`.
pub fn g_of_4n(n: InvariantIndex, ctx: &PrecisionContext) -> Result<BigReal> {
    let via = &(&two_pow(1, 4, ctx)? * &class_g_lower(n, ctx)?) * &class_g_upper(n, ctx)?;
    let direct = class_g_lower(n.scale(4)?, ctx)?;
    let agree = agreement_digits(&via, &direct);
    if agree < consistency_digits(ctx) {
        return Err(Error::Consistency(format!(
            "2^(1/4) g_{n} G_{n} and g_{} agree to only {agree:.1} digits",
            n.scale(4)?
        )));
    }
    Ok(via)
}

fn check_unit_interval(x: BigReal, what: &str, ctx: &PrecisionContext) -> Result<BigReal> {
    if x.is_positive() && x < ctx.int(1) {
        Ok(x)
    } else {
        Err(Error::PrecisionFault(format!(
            "{what} = {x} lies outside (0, 1)"
        )))
    }
}

/// `α_n = 16 q (f(-q⁴)/f(q))⁸` at `q = e^{-π√n}`.
pub fn alpha_singular(n: InvariantIndex, ctx: &PrecisionContext) -> Result<BigReal> {
    let nm = Nome::new(n, ctx)?;
    let q = nm.q();
    let q4 = q.powi(4);
    let ratio = euler_f(&-q4, ctx)? / euler_f(q, ctx)?;
    let a = (&ratio.powi(8) * q).mul_pow2(4);
    check_unit_interval(a, &format!("alpha_{n}"), ctx)
}

/// `α(q) = 16 q ψ⁴(q²) / φ⁴(q)`, equal to `1 - φ⁴(-q)/φ⁴(q)` without the
/// cancellation at small `q`.
pub fn alpha_of_q(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if !q.is_positive() || q >= &ctx.int(1) {
        return Err(Error::Domain("alpha(q) needs 0 < q < 1".into()));
    }
    let psi = theta_psi(&(q * q), ctx)?;
    let phi = theta_phi(q, ctx)?;
    let a = (&(&psi / &phi).powi(4) * q).mul_pow2(4);
    check_unit_interval(a, "alpha(q)", ctx)
}

/// Moduli of degrees 1 and 2 and the multiplier connecting them.
#[derive(Clone, Debug)]
pub struct ModuliPair {
    pub alpha: BigReal,
    pub beta: BigReal,
    pub multiplier_m: BigReal,
}

/// `α = α(q)`, `β = α(q²)`, `m = φ²(q)/φ²(q²)`.
pub fn multiplier_deg2(q: &BigReal, ctx: &PrecisionContext) -> Result<ModuliPair> {
    let q2 = q * q;
    let alpha = alpha_of_q(q, ctx)?;
    let beta = alpha_of_q(&q2, ctx)?;
    let m = (theta_phi(q, ctx)? / theta_phi(&q2, ctx)?).powi(2);
    Ok(ModuliPair {
        alpha,
        beta,
        multiplier_m: m,
    })
}

/// Theta quotient `a_{m,n}` at `q = e^{-π√(m/n)}`:
/// `n q^{(n-1)/4} ψ²(qⁿ) φ²(-q^{2n}) / (ψ²(q) φ²(-q²))`.
pub fn a_product(m: InvariantIndex, n: InvariantIndex, ctx: &PrecisionContext) -> Result<BigReal> {
    let nm = Nome::new(m.div(&n)?, ctx)?;
    let (qn, prefactor) = a_common(&nm, n, ctx)?;
    let q = nm.q();
    let num = (&theta_psi(&qn, ctx)? * &theta_phi(&-(&qn * &qn), ctx)?).powi(2);
    let den = (&theta_psi(q, ctx)? * &theta_phi(&-(q * q), ctx)?).powi(2);
    Ok(&prefactor * &(&num / &den))
}

/// The same quotient written as
/// `n q^{(n-1)/4} ψ²(-qⁿ) φ²(qⁿ) / (ψ²(-q) φ²(q))`.
pub fn a_product_alt(
    m: InvariantIndex,
    n: InvariantIndex,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    let nm = Nome::new(m.div(&n)?, ctx)?;
    let (qn, prefactor) = a_common(&nm, n, ctx)?;
    let q = nm.q();
    let num = (&theta_psi(&-qn.clone(), ctx)? * &theta_phi(&qn, ctx)?).powi(2);
    let den = (&theta_psi(&-q.clone(), ctx)? * &theta_phi(q, ctx)?).powi(2);
    Ok(&prefactor * &(&num / &den))
}

/// `qⁿ` and `n q^{(n-1)/4}`.
fn a_common(nm: &Nome, n: InvariantIndex, ctx: &PrecisionContext) -> Result<(BigReal, BigReal)> {
    let (p, s) = (n.num() as i64, n.den() as i64);
    let qn = nm.pow(p, s, ctx)?;
    let shift = nm.pow(p - s, 4 * s, ctx)?;
    Ok((qn, &n.to_real(ctx) * &shift))
}
