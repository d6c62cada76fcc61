use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow};

use super::real::BigReal;
use crate::error::{Error, Result};

const LOG10_2: f64 = core::f64::consts::LOG10_2;

/// Decimal digits a `prec`-bit mantissa can hold.
pub fn max_digits(prec: u32) -> u32 {
    (prec as f64 * LOG10_2) as u32
}

/// Decimal exponent range printed in positional notation.
const FIXED_MIN_EXP: i64 = -30;

fn pow10(k: u64) -> BigUint {
    BigUint::from(10u32).pow(k)
}

/// `round_half_even(|x| * 10^t)` computed exactly.
fn scaled_round(mag: &BigUint, exp: i64, t: i64) -> BigUint {
    let mut num = mag.clone();
    let mut den = BigUint::one();
    if exp >= 0 {
        num <<= exp as u64;
    } else {
        den <<= (-exp) as u64;
    }
    if t >= 0 {
        num *= pow10(t as u64);
    } else {
        den *= pow10((-t) as u64);
    }
    let (q, r) = num.div_rem(&den);
    let twice = r << 1u32;
    match twice.cmp(&den) {
        Ordering::Greater => q + 1u32,
        Ordering::Equal if q.bit(0) => q + 1u32,
        _ => q,
    }
}

/// Rounded decimal digits of `|x|` (exactly `digits` of them) and the
/// decimal exponent of the leading one.
fn decimal_digits(x: &BigReal, digits: u32) -> (String, i64) {
    let (_, mag, exp) = x.parts();
    let mut e10 = libm::floor(x.log10_abs_approx()) as i64;
    let lower = pow10(digits as u64 - 1);
    let upper = pow10(digits as u64);
    let n = loop {
        let n = scaled_round(mag, exp, digits as i64 - 1 - e10);
        if n >= upper {
            e10 += 1;
        } else if n < lower {
            e10 -= 1;
        } else {
            break n;
        }
    };
    (n.to_str_radix(10), e10)
}

/// Always `d.ddde±N`; zero prints as `0`.
pub fn format_scientific(x: &BigReal, digits: u32) -> String {
    if x.is_zero() {
        return String::from("0");
    }
    let (ds, e10) = decimal_digits(x, digits.max(1));
    let mut out = String::new();
    if x.is_negative() {
        out.push('-');
    }
    push_mantissa(&mut out, &ds);
    out.push('e');
    out.push_str(&e10.to_string());
    out
}

fn push_mantissa(out: &mut String, ds: &str) {
    out.push_str(&ds[..1]);
    if ds.len() > 1 {
        out.push('.');
        out.push_str(&ds[1..]);
    }
}

/// `digits` significant decimal digits of `x`, rounded half-to-even from the
/// exact binary value. Positional notation for moderate exponents, otherwise
/// `d.ddde±N`.
pub fn format_significant(x: &BigReal, digits: u32) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        let mut s = String::from("0");
        if digits > 1 {
            s.push('.');
            for _ in 1..digits {
                s.push('0');
            }
        }
        return s;
    }
    let (ds, e10) = decimal_digits(x, digits);
    let mut out = String::new();
    if x.is_negative() {
        out.push('-');
    }
    let d = digits as i64;
    if e10 >= 0 && e10 < d {
        let int_len = (e10 + 1) as usize;
        out.push_str(&ds[..int_len]);
        if int_len < ds.len() {
            out.push('.');
            out.push_str(&ds[int_len..]);
        }
    } else if (FIXED_MIN_EXP..0).contains(&e10) {
        out.push_str("0.");
        for _ in 0..(-e10 - 1) {
            out.push('0');
        }
        out.push_str(&ds);
    } else {
        push_mantissa(&mut out, &ds);
        out.push('e');
        out.push_str(&e10.to_string());
    }
    out
}

/// Parse a decimal literal (`-12.5e-3` style) into the correctly rounded
/// binary value at `prec` bits.
pub fn parse_decimal(text: &str, prec: u32) -> Result<BigReal> {
    let err = |pos: usize, msg: &str| Error::Syntax {
        position: pos,
        message: msg.into(),
    };
    let t = text.trim();
    let bytes = t.as_bytes();
    let mut i = 0;
    let mut neg = false;
    if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
        neg = bytes[i] == b'-';
        i += 1;
    }
    let mut digits: Vec<u8> = Vec::new();
    let mut frac_len: i64 = 0;
    let mut seen_point = false;
    while i < bytes.len() {
        match bytes[i] {
            b'0'..=b'9' => {
                digits.push(bytes[i]);
                if seen_point {
                    frac_len += 1;
                }
            }
            b'.' if !seen_point => seen_point = true,
            b'e' | b'E' => break,
            _ => return Err(err(i, "unexpected character in number")),
        }
        i += 1;
    }
    if digits.is_empty() {
        return Err(err(i, "expected digits"));
    }
    let mut exp10: i64 = 0;
    if i < bytes.len() {
        let rest = &t[i + 1..];
        exp10 = rest
            .parse::<i64>()
            .map_err(|_| err(i + 1, "bad exponent"))?;
    }
    let mantissa = BigInt::parse_bytes(&digits, 10).ok_or_else(|| err(0, "bad digits"))?;
    let mantissa = if neg { -mantissa } else { mantissa };
    let scale = exp10 - frac_len;
    if scale >= 0 {
        let v = mantissa * BigInt::from(pow10(scale as u64));
        Ok(BigReal::from_bigint(&v, prec))
    } else {
        let den = BigInt::from(pow10((-scale) as u64));
        BigReal::from_ratio(&mantissa, &den, prec)
    }
}

/// Relative agreement `-log10(|x - y| / max(|x|, |y|))`; infinite when equal.
pub fn agreement_digits(x: &BigReal, y: &BigReal) -> f64 {
    let diff = x - y;
    if diff.is_zero() {
        return f64::INFINITY;
    }
    let scale = if x.abs() > y.abs() { x.abs() } else { y.abs() };
    let scale_log = if scale.is_zero() {
        -300.0
    } else {
        scale.log10_abs_approx().max(-300.0)
    };
    scale_log - diff.log10_abs_approx()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(s: &str) -> BigReal {
        parse_decimal(s, 200).unwrap()
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(&dec("1.0"), 3), "1.00");
        assert_eq!(format_significant(&dec("0.125"), 2), "0.12");
        assert_eq!(format_significant(&dec("0.375"), 2), "0.38");
        assert_eq!(format_significant(&dec("9.9996"), 4), "10.00");
        assert_eq!(format_significant(&dec("-2.5"), 1), "-2");
        assert_eq!(format_significant(&dec("123456"), 3), "1.23e5");
        assert_eq!(format_significant(&dec("0.00042"), 2), "0.00042");
        assert_eq!(format_significant(&dec("4.2e-40"), 2), "4.2e-40");
        assert_eq!(format_significant(&BigReal::zero(64), 3), "0.00");
        assert_eq!(format_scientific(&dec("0.000123456"), 3), "1.23e-4");
        assert_eq!(format_scientific(&dec("-5"), 1), "-5e0");
    }

    #[test]
    fn parsing_rejects_garbage() {
        assert!(parse_decimal("1.2.3", 64).is_err());
        assert!(parse_decimal("", 64).is_err());
        assert!(parse_decimal("abc", 64).is_err());
        assert_eq!(
            parse_decimal("25e-1", 64).unwrap(),
            parse_decimal("2.5", 64).unwrap()
        );
    }

    #[test]
    fn agreement_is_relative() {
        let a = dec("1000");
        let b = dec("1000.001");
        let d = agreement_digits(&a, &b);
        assert!((d - 6.0).abs() < 1e-3, "{d}");
        assert!(agreement_digits(&a, &a).is_infinite());
    }
}
