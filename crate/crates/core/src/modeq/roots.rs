use alloc::vec::Vec;

use crate::hpreal::BigReal;

/// Horner evaluation; `coeffs[i]` multiplies `x^i`.
pub fn eval_poly(coeffs: &[BigReal], x: &BigReal, prec: u32) -> BigReal {
    let mut acc = BigReal::zero(prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul_round(x, prec).add_round(c, prec);
    }
    acc
}

pub fn derivative(coeffs: &[BigReal], prec: u32) -> Vec<BigReal> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul_round(&BigReal::from_i64(i as i64, 64), prec))
        .collect()
}

fn trim(coeffs: &[BigReal]) -> &[BigReal] {
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1].is_zero() {
        n -= 1;
    }
    &coeffs[..n]
}

/// Cauchy bound `1 + max |a_i / a_n|` on the absolute value of every root.
fn root_bound(coeffs: &[BigReal], prec: u32) -> BigReal {
    let lead = coeffs.last().expect("nonempty").abs();
    let mut m = BigReal::zero(prec);
    for c in &coeffs[..coeffs.len() - 1] {
        let r = c.abs().div_round(&lead, prec);
        if r > m {
            m = r;
        }
    }
    m.add_round(&BigReal::one(prec), prec)
}

/// All distinct real roots in `(0, ∞)`, ascending. Critical points come from
/// the derivative recursively, so each monotone piece holds at most one root,
/// which is then refined by Newton steps kept inside a shrinking bracket.
pub fn positive_real_roots(coeffs: &[BigReal], prec: u32) -> Vec<BigReal> {
    let c = trim(coeffs);
    if c.len() < 2 {
        return Vec::new();
    }
    let zero = BigReal::zero(prec);
    let bound = root_bound(c, prec);
    roots_in(c, &zero, &bound, prec)
        .into_iter()
        .filter(|r| r.is_positive())
        .collect()
}

fn roots_in(c: &[BigReal], lo: &BigReal, hi: &BigReal, prec: u32) -> Vec<BigReal> {
    let mut cuts = Vec::new();
    cuts.push(lo.clone());
    if c.len() > 2 {
        let d = derivative(c, prec);
        for r in roots_in(trim(&d), lo, hi, prec) {
            if &r > lo && &r < hi {
                cuts.push(r);
            }
        }
    }
    cuts.push(hi.clone());
    let mut out: Vec<BigReal> = Vec::new();
    for w in cuts.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let fa = eval_poly(c, a, prec);
        let fb = eval_poly(c, b, prec);
        let root = if fa.is_zero() {
            Some(a.clone())
        } else if fb.is_zero() {
            Some(b.clone())
        } else if fa.is_negative() != fb.is_negative() {
            Some(refine(c, a, b, fa.is_negative(), prec))
        } else {
            None
        };
        if let Some(r) = root {
            if out.last() != Some(&r) {
                out.push(r);
            }
        }
    }
    out
}

fn refine(c: &[BigReal], lo: &BigReal, hi: &BigReal, lo_negative: bool, prec: u32) -> BigReal {
    let wp = prec + 16;
    let d = derivative(c, wp);
    let mut a = lo.with_prec(wp);
    let mut b = hi.with_prec(wp);
    let mut x = a.add_round(&b, wp).mul_pow2(-1);
    for _ in 0..(4 * wp) {
        let fx = eval_poly(c, &x, wp);
        if fx.is_zero() {
            break;
        }
        if fx.is_negative() == lo_negative {
            a = x.clone();
        } else {
            b = x.clone();
        }
        let width = b.sub_round(&a, wp);
        if width.is_zero() || width.top_bit() < x.top_bit().max(0) - prec as i64 - 8 {
            break;
        }
        let dx = eval_poly(&d, &x, wp);
        let newton = if dx.is_zero() {
            None
        } else {
            Some(x.sub_round(&fx.div_round(&dx, wp), wp))
        };
        x = match newton {
            Some(n) if n > a && n < b => n,
            _ => a.add_round(&b, wp).mul_pow2(-1),
        };
    }
    x.with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Vec<BigReal> {
        v.iter().map(|&x| BigReal::from_i64(x, 200)).collect()
    }

    #[test]
    fn finds_all_positive_roots() {
        // (x-1)(x-2)(x-3)(x+4) = x^4 - 2x^3 - 13x^2 + 38x - 24
        let roots = positive_real_roots(&p(&[-24, 38, -13, -2, 1]), 200);
        assert_eq!(roots, p(&[1, 2, 3]));
    }

    #[test]
    fn irrational_and_absent_roots() {
        let roots = positive_real_roots(&p(&[-2, 0, 1]), 200);
        assert_eq!(roots.len(), 1);
        let two = BigReal::from_i64(2, 200).sqrt().unwrap();
        let err = (&roots[0] - &two).abs();
        assert!(err.is_zero() || err.top_bit() < -190);
        assert!(positive_real_roots(&p(&[1, 0, 1]), 200).is_empty());
        assert!(positive_real_roots(&p(&[3, 1]), 200).is_empty());
    }

    #[test]
    fn close_roots_are_separated() {
        // (x - 1)(x - 1.001) * 10^6 = 10^6 x^2 - 2001000 x + 1001000
        let roots = positive_real_roots(&p(&[1_001_000, -2_001_000, 1_000_000]), 200);
        assert_eq!(roots.len(), 2);
    }
}
