//! Integer relations among high-precision reals, found by lattice reduction.

mod lll;

pub use lll::{lll_reduce, CancelToken};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hpreal::{BigReal, PrecisionContext};
use crate::modeq::{pq_of, PqVariant};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerRelation {
    pub coefficients: Vec<BigInt>,
    /// Largest `|Σ cᵢxᵢ| / max |xᵢ|` over the evaluation points.
    pub residual: BigReal,
    pub norm_bound_used: BigInt,
}

impl IntegerRelation {
    pub fn coefficients_i64(&self) -> Option<Vec<i64>> {
        self.coefficients
            .iter()
            .map(|c| i64::try_from(c).ok())
            .collect()
    }
}

/// Result of a search: a relation, or the proof-of-absence bound.
#[derive(Clone, Debug)]
pub enum RelationSearch {
    Found(IntegerRelation),
    /// No relation with Euclidean norm below `exclusion_bound` exists.
    None {
        exclusion_bound: f64,
    },
}

impl RelationSearch {
    pub fn found(self) -> Option<IntegerRelation> {
        match self {
            RelationSearch::Found(r) => Some(r),
            RelationSearch::None { .. } => None,
        }
    }
}

/// Content 1, first nonzero coefficient positive.
pub fn normalize(c: &mut [BigInt]) {
    let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let flip = c
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    for x in c.iter_mut() {
        *x = &*x / &g;
        if flip {
            *x = -&*x;
        }
    }
}

/// Decimal digits the scaled lattice rows carry.
fn scale_digits(ctx: &PrecisionContext) -> u32 {
    ctx.digits().saturating_sub(10)
}

/// `|Σ cᵢxᵢ| / max |xᵢ|`.
fn relative_sum(c: &[BigInt], x: &[BigReal], prec: u32) -> BigReal {
    let mut s = BigReal::zero(prec);
    let mut m = BigReal::zero(prec);
    for (ci, xi) in c.iter().zip(x) {
        s = s.add_round(&BigReal::from_bigint(ci, prec).mul_round(xi, prec), prec);
        if xi.abs() > m {
            m = xi.abs();
        }
    }
    if m.is_zero() {
        s.abs()
    } else {
        s.abs().div_round(&m, prec)
    }
}

struct Reduced {
    rows: Vec<Vec<BigInt>>,
    min_gso: f64,
}

fn reduce(
    points: &[Vec<BigReal>],
    ctx: &PrecisionContext,
    cancel: Option<&CancelToken>,
) -> Result<Reduced> {
    let k = points[0].len();
    let w = ctx.working_bits();
    let scale = ctx.ten_pow(scale_digits(ctx) as i64);
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = vec![BigInt::zero(); k + points.len()];
        row[i] = BigInt::one();
        rows.push(row);
    }
    for (p, xs) in points.iter().enumerate() {
        let m = xs
            .iter()
            .map(BigReal::abs)
            .max()
            .unwrap_or_else(|| BigReal::zero(w));
        if m.is_zero() {
            return Err(Error::Domain(
                "all values at an evaluation point are zero".into(),
            ));
        }
        for (i, x) in xs.iter().enumerate() {
            rows[i][k + p] = (&(&scale * x) / &m).round_to_bigint();
        }
    }
    let bits = rows.iter().flatten().map(|x| x.bits()).max().unwrap_or(1) as u32;
    let prec = 2 * bits + 8 * k as u32 + 64;
    let bstar = lll_reduce(&mut rows, prec, cancel)?;
    let min_gso = bstar
        .iter()
        .map(|b| {
            if b.is_zero() {
                0.0
            } else {
                libm::exp(0.5 * b.ln_abs_approx())
            }
        })
        .fold(f64::INFINITY, f64::min);
    Ok(Reduced { rows, min_gso })
}

fn check_precision(
    k: usize,
    npoints: usize,
    max_norm: &BigInt,
    ctx: &PrecisionContext,
) -> Result<()> {
    let norm_digits = if max_norm.is_zero() {
        0.0
    } else {
        BigReal::from_bigint(max_norm, 64).log10_abs_approx()
    };
    let required = libm::ceil(k as f64 * (norm_digits + 1.0)) as u32;
    let available = npoints as u32 * scale_digits(ctx);
    if available < required {
        return Err(Error::InsufficientPrecision {
            digits: ctx.digits(),
            required: required / npoints as u32 + 10,
        });
    }
    Ok(())
}

/// Accepted when `|Σ cᵢxᵢ| < 10^{-D+2k} max |xᵢ|` at every point.
fn accepts(
    c: &[BigInt],
    points: &[Vec<BigReal>],
    max_norm: &BigInt,
    ctx: &PrecisionContext,
) -> Option<BigReal> {
    if c.iter().all(Zero::is_zero) || c.iter().any(|x| x.abs() > *max_norm) {
        return None;
    }
    let k = c.len() as i64;
    let tol = ctx.ten_pow(-(ctx.digits() as i64) + 2 * k);
    let mut worst = BigReal::zero(ctx.working_bits());
    for xs in points {
        let r = relative_sum(c, xs, ctx.working_bits());
        if r >= tol {
            return None;
        }
        if r > worst {
            worst = r;
        }
    }
    Some(worst)
}

/// Every reduced basis vector that is a relation, normalized.
pub fn find_relations_all(
    points: &[Vec<BigReal>],
    ctx: &PrecisionContext,
    max_norm: &BigInt,
    cancel: Option<&CancelToken>,
) -> Result<(Vec<IntegerRelation>, f64)> {
    let k = validate_points(points)?;
    check_precision(k, points.len(), max_norm, ctx)?;
    let red = reduce(points, ctx, cancel)?;
    let mut out = Vec::new();
    for row in &red.rows {
        let mut c = row[..k].to_vec();
        normalize(&mut c);
        if let Some(residual) = accepts(&c, points, max_norm, ctx) {
            out.push(IntegerRelation {
                coefficients: c,
                residual,
                norm_bound_used: max_norm.clone(),
            });
        }
    }
    let bound = red.min_gso / libm::sqrt(1.0 + points.len() as f64 * k as f64 / 4.0);
    Ok((out, bound))
}

fn validate_points(points: &[Vec<BigReal>]) -> Result<usize> {
    let k = points.first().map(Vec::len).unwrap_or(0);
    if k < 2 {
        return Err(Error::Domain("need at least two values".into()));
    }
    if points.iter().any(|p| p.len() != k) {
        return Err(Error::Domain("evaluation points differ in length".into()));
    }
    Ok(k)
}

/// One integer vector annihilating the values at every point (stacked
/// search); the shortest accepted reduced vector is returned.
pub fn find_relation_multi(
    points: &[Vec<BigReal>],
    ctx: &PrecisionContext,
    max_norm: &BigInt,
    cancel: Option<&CancelToken>,
) -> Result<RelationSearch> {
    let (mut all, bound) = find_relations_all(points, ctx, max_norm, cancel)?;
    if all.is_empty() {
        return Ok(RelationSearch::None {
            exclusion_bound: bound,
        });
    }
    Ok(RelationSearch::Found(all.swap_remove(0)))
}

/// Integer relation among `values` with max coefficient at most `max_norm`.
pub fn find_relation(
    values: &[BigReal],
    ctx: &PrecisionContext,
    max_norm: &BigInt,
) -> Result<RelationSearch> {
    find_relation_multi(&[values.to_vec()], ctx, max_norm, None)
}

/// `Q¹⁶, P⁴Q¹⁴, P⁴Q², P⁸` of the Weber pair at `q`.
pub fn weber_monomials(q: &BigReal, ctx: &PrecisionContext) -> Result<Vec<BigReal>> {
    let pq = pq_of(q, PqVariant::Weber, ctx)?;
    let p4 = pq.p.powi(4);
    let q2 = pq.q_value.powi(2);
    let q14 = q2.powi(7);
    Ok(vec![&q14 * &q2, &p4 * &q14, &p4 * &q2, &p4 * &p4])
}

/// Coefficient bound used when rediscovering the Weber-pair equation.
pub const PQ_MAX_NORM: i64 = 1000;

/// Stacked relation search over the four Weber-pair monomials at each `q`.
/// Failing to find one is an error: the relation is supposed to hold.
pub fn rediscover_pq_relation(
    qs: &[BigReal],
    ctx: &PrecisionContext,
    cancel: Option<&CancelToken>,
) -> Result<IntegerRelation> {
    let points = qs
        .iter()
        .map(|q| weber_monomials(q, ctx))
        .collect::<Result<Vec<_>>>()?;
    match find_relation_multi(&points, ctx, &BigInt::from(PQ_MAX_NORM), cancel)? {
        RelationSearch::Found(r) => Ok(r),
        RelationSearch::None { exclusion_bound } => Err(Error::NoRelation(format!(
            "no relation among the P-Q monomials (norm below {exclusion_bound:.3e} excluded)"
        ))),
    }
}

/// Exponent pairs `(4i, 2j)` of `P^{4i} Q^{2j}`, `i ≤ 4`, `j ≤ 8`.
pub fn extended_exponents() -> Vec<(u32, u32)> {
    (0..=4)
        .flat_map(|i| (0..=8).map(move |j| (4 * i, 2 * j)))
        .collect()
}

/// All relations found among `P^{4i}Q^{2j}` (`i ≤ 4`, `j ≤ 8`) over the
/// given points.
pub fn extended_pq_relations(
    qs: &[BigReal],
    ctx: &PrecisionContext,
    cancel: Option<&CancelToken>,
) -> Result<Vec<IntegerRelation>> {
    let exps = extended_exponents();
    let mut points = Vec::new();
    for q in qs {
        let pq = pq_of(q, PqVariant::Weber, ctx)?;
        let p4 = pq.p.powi(4);
        let q2 = pq.q_value.powi(2);
        points.push(
            exps.iter()
                .map(|&(a, b)| &p4.powi(a as u64 / 4) * &q2.powi(b as u64 / 2))
                .collect(),
        );
    }
    Ok(find_relations_all(&points, ctx, &BigInt::from(PQ_MAX_NORM), cancel)?.0)
}

/// Default coefficient bound for a degree-`d` minimal polynomial at `D` digits.
fn min_poly_norm(d: usize, ctx: &PrecisionContext) -> BigInt {
    let e = (scale_digits(ctx) as usize / (d + 1)).saturating_sub(1);
    BigInt::from(10).pow(e as u32)
}

/// Lowest-degree integer polynomial (ascending coefficients, content 1,
/// leading coefficient positive) vanishing at `x`, degree at most `max_degree`.
pub fn min_poly(
    x: &BigReal,
    max_degree: usize,
    ctx: &PrecisionContext,
) -> Result<Option<Vec<BigInt>>> {
    for d in 1..=max_degree {
        let mut powers = vec![BigReal::one(ctx.working_bits())];
        for i in 1..=d {
            let next = &powers[i - 1] * x;
            powers.push(next);
        }
        let norm = min_poly_norm(d, ctx);
        if let RelationSearch::Found(r) = find_relation(&powers, ctx, &norm)? {
            let mut c = r.coefficients;
            if c.last().is_some_and(Zero::is_zero) {
                continue;
            }
            if c.last().is_some_and(|l| l.sign() == Sign::Minus) {
                c.iter_mut().for_each(|v| *v = -&*v);
            }
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// `x^4 - 208*x^3 + 456*x^2 - 832*x + 16` style rendering of ascending coefficients.
pub fn format_poly(c: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (i, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        if out.is_empty() {
            if a.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if a.is_negative() { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => String::from(var),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&format!("{mag}"));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
