use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::hpreal::{BigReal, PrecisionContext};

/// Expression tree over exact integers with rational exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalExpr {
    Int(BigUint),
    /// `num/den`, `den > 0`; only built programmatically, prints as a quotient.
    Rational(BigInt, BigUint),
    Add(Box<RadicalExpr>, Box<RadicalExpr>),
    Sub(Box<RadicalExpr>, Box<RadicalExpr>),
    Mul(Box<RadicalExpr>, Box<RadicalExpr>),
    Div(Box<RadicalExpr>, Box<RadicalExpr>),
    /// `base^(p/r)` with `r > 0`, exponent kept exactly as written.
    Pow(Box<RadicalExpr>, i64, u64),
}

impl RadicalExpr {
    pub fn int(v: u64) -> Self {
        RadicalExpr::Int(BigUint::from(v))
    }

    pub fn sqrt(x: RadicalExpr) -> Self {
        RadicalExpr::Pow(Box::new(x), 1, 2)
    }

    pub fn root(x: RadicalExpr, k: u64) -> Self {
        RadicalExpr::Pow(Box::new(x), 1, k)
    }

    pub fn pow(x: RadicalExpr, p: i64, r: u64) -> Self {
        RadicalExpr::Pow(Box::new(x), p, r)
    }

    fn precedence(&self) -> u8 {
        match self {
            RadicalExpr::Add(..) | RadicalExpr::Sub(..) => 1,
            RadicalExpr::Mul(..) | RadicalExpr::Div(..) | RadicalExpr::Rational(..) => 2,
            RadicalExpr::Pow(_, 1, 2) => 4,
            RadicalExpr::Pow(..) => 3,
            RadicalExpr::Int(_) => 4,
        }
    }

    /// Canonical text; parses back to the same tree.
    pub fn unparse(&self) -> String {
        self.to_string()
    }

    pub fn eval(&self, ctx: &PrecisionContext) -> Result<BigReal> {
        let w = ctx.working_bits();
        Ok(match self {
            RadicalExpr::Int(v) => BigReal::from_bigint(&BigInt::from(v.clone()), w),
            RadicalExpr::Rational(n, d) => BigReal::from_ratio(n, &BigInt::from(d.clone()), w)?,
            RadicalExpr::Add(a, b) => &a.eval(ctx)? + &b.eval(ctx)?,
            RadicalExpr::Sub(a, b) => &a.eval(ctx)? - &b.eval(ctx)?,
            RadicalExpr::Mul(a, b) => &a.eval(ctx)? * &b.eval(ctx)?,
            RadicalExpr::Div(a, b) => {
                let den = b.eval(ctx)?;
                if den.is_zero() {
                    return Err(Error::Domain(format!("division by zero in {self}")));
                }
                &a.eval(ctx)? / &den
            }
            RadicalExpr::Pow(base, p, r) => {
                let v = base.eval(ctx)?;
                eval_pow(&v, *p, *r, self, ctx)?
            }
        })
    }
}

fn eval_pow(
    v: &BigReal,
    p: i64,
    r: u64,
    whole: &RadicalExpr,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    let r32 =
        u32::try_from(r).map_err(|_| Error::Domain(format!("root index too large in {whole}")))?;
    if v.is_zero() {
        return if p > 0 {
            Ok(BigReal::zero(ctx.working_bits()))
        } else {
            Err(Error::Domain(format!(
                "nonpositive power of zero in {whole}"
            )))
        };
    }
    if v.is_negative() {
        if r.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "even root of negative value {v} in {whole}"
            )));
        }
        let m = ctx.pow(&v.abs(), p, r32)?;
        return Ok(if p % 2 == 0 { m } else { -m });
    }
    // ctx.pow carries the result at the working width of ctx
    ctx.pow(v, p, r32)
}

impl fmt::Display for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &RadicalExpr, min: u8) -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            RadicalExpr::Int(v) => write!(f, "{v}"),
            RadicalExpr::Rational(n, d) => {
                if n.is_negative() {
                    write!(f, "(0-{})/{d}", n.abs())
                } else {
                    write!(f, "{n}/{d}")
                }
            }
            RadicalExpr::Add(a, b) => {
                child(f, a, 1)?;
                f.write_str("+")?;
                child(f, b, 2)
            }
            RadicalExpr::Sub(a, b) => {
                child(f, a, 1)?;
                f.write_str("-")?;
                child(f, b, 2)
            }
            RadicalExpr::Mul(a, b) => {
                child(f, a, 2)?;
                f.write_str("*")?;
                child(f, b, 3)
            }
            RadicalExpr::Div(a, b) => {
                child(f, a, 2)?;
                f.write_str("/")?;
                child(f, b, 3)
            }
            RadicalExpr::Pow(b, 1, 2) => write!(f, "sqrt({b})"),
            RadicalExpr::Pow(b, p, r) => {
                child(f, b, 4)?;
                write!(f, "^({p}/{r})")
            }
        }
    }
}

/// Parse the textual grammar
/// `expr := term (('+'|'-') term)*`, `term := factor (('*'|'/') factor)*`,
/// `factor := base ('^' '(' int '/' int ')')?`,
/// `base := integer | '(' expr ')' | 'sqrt' '(' expr ')' | 'root' '(' expr ',' integer ')'`.
/// Whitespace is ignored between tokens.
pub fn parse_radical(text: &str) -> Result<RadicalExpr> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<RadicalExpr> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == b'+' {
                RadicalExpr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                RadicalExpr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<RadicalExpr> {
        let mut lhs = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = if c == b'*' {
                RadicalExpr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                RadicalExpr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<RadicalExpr> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.expect(b'(')?;
        let p = self.signed_int()?;
        self.expect(b'/')?;
        let at = self.pos;
        let r = self.unsigned_int()?;
        if r == 0 {
            self.pos = at;
            return Err(self.error("zero denominator in exponent"));
        }
        self.expect(b')')?;
        Ok(RadicalExpr::Pow(Box::new(base), p, r))
    }

    fn base(&mut self) -> Result<RadicalExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'0'..=b'9') => Ok(RadicalExpr::Int(self.digits()?)),
            Some(b'a'..=b'z') => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_lowercase() {
                    self.pos += 1;
                }
                match &self.s[start..self.pos] {
                    b"sqrt" => {
                        self.expect(b'(')?;
                        let e = self.expr()?;
                        self.expect(b')')?;
                        Ok(RadicalExpr::sqrt(e))
                    }
                    b"root" => {
                        self.expect(b'(')?;
                        let e = self.expr()?;
                        self.expect(b',')?;
                        let at = self.pos;
                        let k = self.unsigned_int()?;
                        if k == 0 {
                            self.pos = at;
                            return Err(self.error("root index must be positive"));
                        }
                        self.expect(b')')?;
                        Ok(RadicalExpr::root(e, k))
                    }
                    _ => {
                        self.pos = start;
                        Err(self.error("unknown function (expected sqrt or root)"))
                    }
                }
            }
            Some(_) => Err(self.error("expected a number, '(' , sqrt or root")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(BigUint::parse_bytes(&self.s[start..self.pos], 10).expect("ascii digits"))
    }

    fn unsigned_int(&mut self) -> Result<u64> {
        let at = self.pos;
        let v = self.digits()?;
        u64::try_from(v).map_err(|_| {
            self.pos = at;
            self.error("integer too large")
        })
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let at = self.pos;
        let v = self.unsigned_int()?;
        let v = i64::try_from(v).map_err(|_| {
            self.pos = at;
            self.error("exponent too large")
        })?;
        Ok(if neg { -v } else { v })
    }
}
