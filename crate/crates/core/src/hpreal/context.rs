use alloc::format;

use num_bigint::{BigInt, BigUint};
use num_traits::Pow;

use super::real::BigReal;
use super::{consts, decimal, elementary};
use crate::error::{Error, Result};

/// Requested decimal digits plus guard bits; fixes the working binary
/// precision of every evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    decimal_digits: u32,
    guard_bits: u32,
}

impl PrecisionContext {
    pub const DEFAULT_GUARD_BITS: u32 = 64;
    pub const MIN_DIGITS: u32 = 5;

    pub fn new(decimal_digits: u32) -> Result<Self> {
        if decimal_digits < Self::MIN_DIGITS {
            return Err(Error::Config(format!(
                "at least {} decimal digits required, got {decimal_digits}",
                Self::MIN_DIGITS
            )));
        }
        Ok(PrecisionContext {
            decimal_digits,
            guard_bits: Self::DEFAULT_GUARD_BITS,
        })
    }

    pub fn with_guard_bits(mut self, guard_bits: u32) -> Self {
        self.guard_bits = guard_bits;
        self
    }

    pub fn digits(&self) -> u32 {
        self.decimal_digits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// `ceil(D * log2(10)) + guard_bits`.
    pub fn working_bits(&self) -> u32 {
        let d = self.decimal_digits as u64;
        let bits = (d * 3_321_928_095).div_ceil(1_000_000_000);
        bits as u32 + self.guard_bits
    }

    /// The same context with `extra` more decimal digits.
    pub fn widened(&self, extra: u32) -> Self {
        PrecisionContext {
            decimal_digits: self.decimal_digits + extra,
            guard_bits: self.guard_bits,
        }
    }

    pub fn int(&self, v: i64) -> BigReal {
        BigReal::from_i64(v, self.working_bits())
    }

    pub fn big_int(&self, v: &BigInt) -> BigReal {
        BigReal::from_bigint(v, self.working_bits())
    }

    pub fn ratio(&self, num: i64, den: i64) -> BigReal {
        BigReal::from_ratio(&BigInt::from(num), &BigInt::from(den), self.working_bits())
            .expect("nonzero denominator")
    }

    pub fn parse(&self, text: &str) -> Result<BigReal> {
        decimal::parse_decimal(text, self.working_bits())
    }

    pub fn pi(&self) -> BigReal {
        consts::pi(self.working_bits())
    }

    /// `10^k`, exact for `k >= 0`.
    pub fn ten_pow(&self, k: i64) -> BigReal {
        let p = BigInt::from(BigUint::from(10u32).pow(k.unsigned_abs()));
        if k >= 0 {
            BigReal::from_bigint(&p, self.working_bits().max(p.bits() as u32 + 1))
        } else {
            BigReal::from_ratio(&BigInt::from(1), &p, self.working_bits()).expect("nonzero")
        }
    }

    /// `2^-W`.
    pub fn epsilon(&self) -> BigReal {
        BigReal::one(self.working_bits()).mul_pow2(-(self.working_bits() as i64))
    }

    pub fn exp(&self, x: &BigReal) -> Result<BigReal> {
        elementary::exp(x, self.working_bits())
    }

    pub fn sqrt(&self, x: &BigReal) -> Result<BigReal> {
        x.with_prec(self.working_bits().max(x.prec()))
            .sqrt()
            .map(|v| v.with_prec(self.working_bits()))
    }

    pub fn pow(&self, x: &BigReal, p: i64, r: u32) -> Result<BigReal> {
        elementary::pow_rational(x, p, r, self.working_bits())
    }
}
