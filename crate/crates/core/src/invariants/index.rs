use alloc::format;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::hpreal::{BigReal, PrecisionContext};

/// A positive rational index `num/den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantIndex {
    num: u64,
    den: u64,
}

impl InvariantIndex {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::Domain(format!("index {num}/{den} must be positive")));
        }
        let g = num.gcd(&den);
        Ok(InvariantIndex {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(n: u64) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let num = self.num.checked_mul(other.num);
        let den = self.den.checked_mul(other.den);
        match (num, den) {
            (Some(n), Some(d)) => Self::new(n, d),
            _ => Err(Error::Domain("index overflow".into())),
        }
    }

    pub fn scale(&self, k: u64) -> Result<Self> {
        self.mul(&Self::integer(k)?)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&Self::new(other.den, other.num)?)
    }

    pub fn to_real(&self, ctx: &PrecisionContext) -> BigReal {
        ctx.ratio(self.num as i64, self.den as i64)
    }
}

impl fmt::Display for InvariantIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for InvariantIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("invalid index {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => Self::new(
                n.trim().parse().map_err(|_| bad())?,
                d.trim().parse().map_err(|_| bad())?,
            ),
            None => Self::integer(s.parse().map_err(|_| bad())?),
        }
    }
}
