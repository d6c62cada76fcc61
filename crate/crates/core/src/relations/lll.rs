use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hpreal::BigReal;

/// Cooperative cancellation for long reductions.
#[derive(Debug, Default)]
pub struct CancelToken(AtomicBool);

impl CancelToken {
    pub fn new() -> Self {
        CancelToken(AtomicBool::new(false))
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gram–Schmidt coefficients of row `k` against rows `0..k`; returns `‖b_k*‖²`.
fn gso_row(
    basis: &[Vec<BigInt>],
    k: usize,
    mu: &mut [Vec<BigReal>],
    r: &mut [Vec<BigReal>],
    bstar: &[BigReal],
    prec: u32,
) -> BigReal {
    let real = |v: &BigInt| BigReal::from_bigint(v, prec);
    let mut bk = real(&dot(&basis[k], &basis[k]));
    for j in 0..k {
        let mut rkj = real(&dot(&basis[k], &basis[j]));
        for i in 0..j {
            rkj = rkj.sub_round(&mu[j][i].mul_round(&r[k][i], prec), prec);
        }
        mu[k][j] = if bstar[j].is_zero() {
            BigReal::zero(prec)
        } else {
            rkj.div_round(&bstar[j], prec)
        };
        bk = bk.sub_round(&mu[k][j].mul_round(&rkj, prec), prec);
        r[k][j] = rkj;
    }
    bk
}

/// LLL-reduce the rows of `basis` in place (Lovász constant 0.99), with
/// exact integer rows and Gram–Schmidt data carried at `prec` bits.
/// Returns the squared Gram–Schmidt norms of the reduced basis.
pub fn lll_reduce(
    basis: &mut [Vec<BigInt>],
    prec: u32,
    cancel: Option<&CancelToken>,
) -> Result<Vec<BigReal>> {
    let n = basis.len();
    let zero = BigReal::zero(prec);
    let delta = BigReal::from_i64(99, prec).div_round(&BigReal::from_i64(100, prec), prec);
    let mut mu = vec![vec![zero.clone(); n]; n];
    let mut r = vec![vec![zero.clone(); n]; n];
    let mut bstar = vec![zero.clone(); n];
    let mut k = 0usize;
    while k < n {
        if cancel.is_some_and(CancelToken::is_cancelled) {
            return Err(Error::Cancelled);
        }
        // size-reduce row k until it no longer changes
        let bk = loop {
            let bk = gso_row(basis, k, &mut mu, &mut r, &bstar, prec);
            let mut changed = false;
            for j in (0..k).rev() {
                let c = mu[k][j].round_to_bigint();
                if c.is_zero() {
                    continue;
                }
                changed = true;
                let (head, tail) = basis.split_at_mut(k);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= &c * y;
                }
                let cr = BigReal::from_bigint(&c, prec);
                let (lo, hi) = mu.split_at_mut(k);
                for (m, mj) in hi[0][..j].iter_mut().zip(&lo[j][..j]) {
                    *m = m.sub_round(&cr.mul_round(mj, prec), prec);
                }
                mu[k][j] = mu[k][j].sub_round(&cr, prec);
            }
            if !changed {
                break bk;
            }
        };
        bstar[k] = bk;
        if k > 0 {
            let m = &mu[k][k - 1];
            let rhs = delta
                .sub_round(&m.mul_round(m, prec), prec)
                .mul_round(&bstar[k - 1], prec);
            if bstar[k] < rhs {
                basis.swap(k, k - 1);
                k -= 1;
                continue;
            }
        }
        k += 1;
    }
    Ok(bstar)
}
