use alloc::format;

use core::cmp::Ordering;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Minimum mantissa width accepted for any value.
pub const MIN_PREC: u32 = 16;

/// A binary floating-point number `(-1)^neg * mag * 2^exp`.
///
/// Every value carries its own precision `prec` (mantissa bits). Binary
/// operations round half-to-even to the larger of the two operand precisions,
/// so each basic operation is correctly rounded. The representation is
/// canonical: the mantissa is odd (or zero, in which case `exp == 0` and
/// `neg == false`), so structural equality is value equality.
#[derive(Clone, Debug)]
pub struct BigReal {
    neg: bool,
    mag: BigUint,
    exp: i64,
    prec: u32,
}

/// Result of a comparison at a relative tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closeness {
    Less,
    Greater,
    Indistinguishable,
}

fn bits(m: &BigUint) -> i64 {
    m.bits() as i64
}

impl BigReal {
    pub fn zero(prec: u32) -> Self {
        BigReal {
            neg: false,
            mag: BigUint::zero(),
            exp: 0,
            prec: prec.max(MIN_PREC),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(v), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        let neg = v.sign() == Sign::Minus;
        Self::round_from(neg, v.magnitude().clone(), 0, prec, false)
    }

    /// The correctly rounded quotient `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let n = Self::from_bigint(num, prec.max(bit_len(num)));
        let d = Self::from_bigint(den, prec.max(bit_len(den)));
        Ok(n.div_round(&d, prec))
    }

    /// `m * 2^e`, rounded to `prec` bits.
    pub fn from_parts(neg: bool, mag: BigUint, exp: i64, prec: u32) -> Self {
        Self::round_from(neg, mag, exp, prec, false)
    }

    /// Round `(-1)^neg * mag * 2^exp` to `prec` bits. `sticky` means the
    /// true value lies strictly above `mag` in magnitude, by less than one
    /// unit in the last place of `mag`.
    pub(crate) fn round_from(
        neg: bool,
        mut mag: BigUint,
        mut exp: i64,
        prec: u32,
        sticky: bool,
    ) -> Self {
        let prec = prec.max(MIN_PREC);
        if mag.is_zero() {
            return Self::zero(prec);
        }
        if sticky {
            mag = (mag << 1u32) | BigUint::one();
            exp -= 1;
        }
        let nbits = mag.bits();
        if nbits > prec as u64 {
            let shift = nbits - prec as u64;
            let half = mag.bit(shift - 1);
            let below = mag.trailing_zeros().is_some_and(|tz| tz < shift - 1);
            mag >>= shift;
            exp += shift as i64;
            if half && (below || mag.bit(0)) {
                mag += 1u32;
                if mag.bits() > prec as u64 {
                    mag >>= 1u32;
                    exp += 1;
                }
            }
        }
        if let Some(tz) = mag.trailing_zeros() {
            if tz > 0 {
                mag >>= tz;
                exp += tz as i64;
            }
        }
        BigReal {
            neg,
            mag,
            exp,
            prec,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// The same value re-rounded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::round_from(self.neg, self.mag.clone(), self.exp, prec, false)
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    pub fn is_positive(&self) -> bool {
        !self.neg && !self.mag.is_zero()
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        r.neg = false;
        r
    }

    /// Mantissa, exponent and sign: the value is `(-1)^neg * mag * 2^exp`.
    pub fn parts(&self) -> (bool, &BigUint, i64) {
        (self.neg, &self.mag, self.exp)
    }

    /// Position of the leading bit: `2^(top-1) <= |x| < 2^top`.
    /// Zero has no top bit and reports `i64::MIN`.
    pub fn top_bit(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + bits(&self.mag)
        }
    }

    /// Multiply by `2^k` (exact).
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut r = self.clone();
        r.exp += k;
        r
    }

    fn add_impl(&self, other: &Self, negate_other: bool, prec: u32) -> Self {
        let bneg = other.neg ^ negate_other;
        if other.is_zero() {
            return self.with_prec(prec);
        }
        if self.is_zero() {
            return Self::round_from(bneg, other.mag.clone(), other.exp, prec, false);
        }
        let pcut = prec.max(self.prec).max(other.prec) as i64;
        let cutoff = self.top_bit().max(other.top_bit()) - pcut - 3;
        let (mut am, mut ae) = (self.mag.clone(), self.exp);
        let (mut bm, mut be) = (other.mag.clone(), other.exp);
        // Only the operand of smaller magnitude can reach below the cutoff; its
        // discarded bits collapse into a single sticky bit one place lower.
        for (m, e) in [(&mut am, &mut ae), (&mut bm, &mut be)] {
            if *e < cutoff {
                let shift = (cutoff - *e) as u64;
                let lost = m.trailing_zeros().is_some_and(|tz| tz < shift);
                *m >>= shift;
                *m <<= 1u32;
                if lost {
                    *m |= BigUint::one();
                }
                *e = cutoff - 1;
            }
        }
        let lowest = ae.min(be);
        let a_al = am << ((ae - lowest) as u64);
        let b_al = bm << ((be - lowest) as u64);
        let (neg, mag) = if self.neg == bneg {
            (self.neg, a_al + b_al)
        } else {
            match a_al.cmp(&b_al) {
                Ordering::Greater => (self.neg, a_al - b_al),
                Ordering::Less => (bneg, b_al - a_al),
                Ordering::Equal => return Self::zero(prec),
            }
        };
        Self::round_from(neg, mag, lowest, prec, false)
    }

    pub fn add_round(&self, other: &Self, prec: u32) -> Self {
        self.add_impl(other, false, prec)
    }

    pub fn sub_round(&self, other: &Self, prec: u32) -> Self {
        self.add_impl(other, true, prec)
    }

    pub fn mul_round(&self, other: &Self, prec: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(prec);
        }
        Self::round_from(
            self.neg ^ other.neg,
            &self.mag * &other.mag,
            self.exp + other.exp,
            prec,
            false,
        )
    }

    /// Correctly rounded quotient. Panics on division by zero, like integer division.
    pub fn div_round(&self, other: &Self, prec: u32) -> Self {
        assert!(!other.is_zero(), "BigReal division by zero");
        if self.is_zero() {
            return Self::zero(prec);
        }
        let shift = (prec as i64 + 3 + bits(&other.mag) - bits(&self.mag)).max(0);
        let num = &self.mag << (shift as u64);
        let (q, r) = num.div_rem(&other.mag);
        Self::round_from(
            self.neg ^ other.neg,
            q,
            self.exp - other.exp - shift,
            prec,
            !r.is_zero(),
        )
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(self.div_round(other, self.prec.max(other.prec)))
    }

    pub fn recip(&self) -> Result<Self> {
        BigReal::one(self.prec).checked_div(self)
    }

    /// Correctly rounded square root.
    pub fn sqrt(&self) -> Result<Self> {
        self.nth_root(2)
    }

    /// Correctly rounded real `k`-th root. Negative arguments are accepted
    /// for odd `k` only.
    pub fn nth_root(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("zeroth root".into()));
        }
        if self.is_zero() || k == 1 {
            return Ok(self.clone());
        }
        if self.neg && k.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "even root ({k}) of a negative number"
            )));
        }
        let prec = self.prec;
        let k64 = k as i64;
        let target = k64 * (prec as i64 + 3);
        let mut shift = (target - bits(&self.mag)).max(0);
        shift += (self.exp - shift).rem_euclid(k64);
        let n = &self.mag << (shift as u64);
        let r = n.nth_root(k);
        let exact = r.pow(k) == n;
        Ok(Self::round_from(
            self.neg,
            r,
            (self.exp - shift) / k64,
            prec,
            !exact,
        ))
    }

    /// `self^n` for a non-negative integer exponent, accurate to a few ulps.
    pub fn powi(&self, n: u64) -> Self {
        let prec = self.prec;
        if n == 0 {
            return Self::one(prec);
        }
        let wp = prec + 2 * (64 - n.leading_zeros()) + 8;
        let mut base = self.with_prec(wp);
        let mut acc = Self::one(wp);
        let mut e = n;
        loop {
            if e & 1 == 1 {
                acc = acc.mul_round(&base, wp);
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul_round(&base, wp);
        }
        acc.with_prec(prec)
    }

    /// `self^n` for any integer exponent.
    pub fn powi_signed(&self, n: i64) -> Result<Self> {
        let p = self.powi(n.unsigned_abs());
        if n < 0 {
            p.recip()
        } else {
            Ok(p)
        }
    }

    /// Nearest integer, ties to even.
    pub fn round_to_bigint(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let mag = if self.exp >= 0 {
            &self.mag << (self.exp as u64)
        } else {
            let shift = (-self.exp) as u64;
            let half = self.mag.bit(shift - 1);
            let below = self.mag.trailing_zeros().is_some_and(|tz| tz < shift - 1);
            let mut q = &self.mag >> shift;
            if half && (below || q.bit(0)) {
                q += 1u32;
            }
            q
        };
        let sign = if self.neg { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(sign, mag)
    }

    /// Largest integer not above the value.
    pub fn floor_to_bigint(&self) -> BigInt {
        if self.exp >= 0 || self.is_zero() {
            return self.round_to_bigint();
        }
        let shift = (-self.exp) as u64;
        let q = BigInt::from(&self.mag >> shift);
        if self.neg {
            -q - 1
        } else {
            q
        }
    }

    /// Nearest `f64`; underflows to zero below the subnormal range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let nb = bits(&self.mag);
        let drop = (nb - 64).max(0);
        let top = (&self.mag >> (drop as u64)).to_u64().unwrap_or(u64::MAX);
        let e = self.exp + drop;
        let v = if e > 1100 {
            f64::INFINITY
        } else if e < -1200 {
            0.0
        } else {
            (top as f64) * libm::exp2(e as f64)
        };
        // exp2 of very negative exponents can underflow while the product
        // would not; split the scaling in that range.
        let v = if v == 0.0 && e > -1200 && e < -1000 {
            (top as f64) * libm::exp2((e + 200) as f64) * libm::exp2(-200.0)
        } else {
            v
        };
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// Approximate `ln |x|` as an `f64`, valid over the full exponent range.
    pub fn ln_abs_approx(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let nb = bits(&self.mag);
        let drop = (nb - 60).max(0);
        let top = (&self.mag >> (drop as u64)).to_u64().unwrap_or(u64::MAX) as f64;
        libm::log(top) + ((self.exp + drop) as f64) * core::f64::consts::LN_2
    }

    /// Approximate `log10 |x|`.
    pub fn log10_abs_approx(&self) -> f64 {
        self.ln_abs_approx() / core::f64::consts::LN_10
    }

    /// Relative comparison: values within `tol * max(|a|, |b|)` are
    /// indistinguishable.
    pub fn compare_within(&self, other: &Self, tol: &Self) -> Closeness {
        let diff = self - other;
        let scale = if self.abs() > other.abs() {
            self.abs()
        } else {
            other.abs()
        };
        if diff.abs() <= tol.abs().mul_round(&scale, scale.prec.max(tol.prec)) {
            Closeness::Indistinguishable
        } else if diff.is_negative() {
            Closeness::Less
        } else {
            Closeness::Greater
        }
    }

    /// Largest of two values (by value; precision of the chosen one).
    pub fn max_of(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

fn bit_len(v: &BigInt) -> u32 {
    v.magnitude().bits() as u32 + 1
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.neg == other.neg && self.exp == other.exp && self.mag == other.mag
    }
}

impl Eq for BigReal {}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn cmp_mag(a: &BigReal, b: &BigReal) -> Ordering {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Ordering::Equal,
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    match a.top_bit().cmp(&b.top_bit()) {
        Ordering::Equal => {
            let low = a.exp.min(b.exp);
            let am = &a.mag << ((a.exp - low) as u64);
            let bm = &b.mag << ((b.exp - low) as u64);
            am.cmp(&bm)
        }
        o => o,
    }
}

impl Ord for BigReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = if self.is_zero() {
            0
        } else if self.neg {
            -1
        } else {
            1
        };
        let sb = if other.is_zero() {
            0
        } else if other.neg {
            -1
        } else {
            1
        };
        match sa.cmp(&sb) {
            Ordering::Equal if sa >= 0 => cmp_mag(self, other),
            Ordering::Equal => cmp_mag(other, self),
            o => o,
        }
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(mut self) -> BigReal {
        if !self.is_zero() {
            self.neg = !self.neg;
        }
        self
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -self.clone()
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                self.$imp(rhs, self.prec.max(rhs.prec))
            }
        }
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$imp(&rhs, self.prec.max(rhs.prec))
            }
        }
        impl $tr<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$imp(rhs, self.prec.max(rhs.prec))
            }
        }
        impl $tr<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$imp(&rhs, self.prec.max(rhs.prec))
            }
        }
        impl $tr<i64> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: i64) -> BigReal {
                self.$imp(&BigReal::from_i64(rhs, 64), self.prec)
            }
        }
        impl $tr<i64> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: i64) -> BigReal {
                (&self).$imp(&BigReal::from_i64(rhs, 64), self.prec)
            }
        }
    };
}

binop!(Add, add, add_round);
binop!(Sub, sub, sub_round);
binop!(Mul, mul, mul_round);
binop!(Div, div, div_round);

impl core::fmt::Display for BigReal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let digits = super::decimal::max_digits(self.prec)
            .min(f.precision().unwrap_or(30) as u32)
            .max(1);
        f.write_str(&super::decimal::format_significant(self, digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> BigReal {
        BigReal::from_i64(v, 128)
    }

    #[test]
    fn canonical_form_makes_equality_structural() {
        assert_eq!(r(4), BigReal::from_i64(4, 300));
        assert_eq!(&r(3) - &r(3), BigReal::zero(128));
        assert_eq!((&r(6) / &r(3)), r(2));
    }

    #[test]
    fn half_even_rounding_at_low_precision() {
        // 2^16 + 1 needs 17 bits; at 16 bits it is a tie and rounds to even.
        let x = BigReal::from_i64((1 << 16) + 1, 16);
        assert_eq!(x, BigReal::from_i64(1 << 16, 64));
        let y = BigReal::from_i64((1 << 16) + 3, 16);
        assert_eq!(y, BigReal::from_i64((1 << 16) + 4, 64));
    }

    #[test]
    fn far_apart_addition_keeps_sticky_information() {
        let big = BigReal::one(64);
        let tiny = BigReal::one(64).mul_pow2(-500);
        let s = &big + &tiny;
        assert_eq!(s, big);
        let d = &big - &tiny;
        // 1 - 2^-500 rounds back to 1 at 64 bits.
        assert_eq!(d, big);
        let cancel = &(&big + &BigReal::one(64).mul_pow2(-63)) - &big;
        assert_eq!(cancel, BigReal::one(64).mul_pow2(-63));
    }

    #[test]
    fn division_and_roots_are_correctly_rounded() {
        let third = &r(1) / &r(3);
        let back = &third * &r(3);
        assert!((&back - &r(1)).abs() <= BigReal::one(128).mul_pow2(-127));
        assert_eq!(r(4).sqrt().unwrap(), r(2));
        assert_eq!(r(-27).nth_root(3).unwrap(), r(-3));
        assert!(r(-4).sqrt().is_err());
        let two = r(2).sqrt().unwrap();
        let sq = &two * &two;
        assert!((&sq - &r(2)).abs() <= BigReal::one(128).mul_pow2(-125));
    }

    #[test]
    fn ordering_handles_signs_and_zero() {
        assert!(r(-3) < r(-2));
        assert!(r(-1) < BigReal::zero(64));
        assert!(BigReal::zero(64) < r(1));
        assert!(r(1).mul_pow2(-100) > BigReal::zero(64));
    }

    #[test]
    fn rounding_to_integers() {
        let x = &r(5) / &r(2);
        assert_eq!(x.round_to_bigint(), BigInt::from(2));
        assert_eq!((&r(7) / &r(2)).round_to_bigint(), BigInt::from(4));
        assert_eq!((-(&r(7) / &r(2))).floor_to_bigint(), BigInt::from(-4));
    }

    #[test]
    fn f64_views() {
        assert_eq!(r(3).to_f64(), 3.0);
        assert!((r(10).ln_abs_approx() - libm::log(10.0)).abs() < 1e-12);
        let tiny = r(1).mul_pow2(-3000);
        assert_eq!(tiny.to_f64(), 0.0);
        assert!((tiny.ln_abs_approx() + 3000.0 * core::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn three_valued_comparison() {
        let a = r(1);
        let b = &r(1) + &BigReal::one(128).mul_pow2(-100);
        let tol = BigReal::one(64).mul_pow2(-90);
        assert_eq!(a.compare_within(&b, &tol), Closeness::Indistinguishable);
        let tight = BigReal::one(64).mul_pow2(-110);
        assert_eq!(a.compare_within(&b, &tight), Closeness::Less);
        assert_eq!(b.compare_within(&a, &tight), Closeness::Greater);
    }
}
