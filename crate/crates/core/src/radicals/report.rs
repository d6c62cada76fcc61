use alloc::string::String;

use crate::hpreal::{agreement_digits, format_scientific, max_digits, BigReal};

/// Outcome of one comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub id: String,
    pub anchor: String,
    /// Agreement (decimal digits) the check demands.
    pub digits_requested: u32,
    /// Measured agreement, floored and capped at the carried precision.
    pub digits_agreed: u32,
    /// Relative difference `|x-y| / max(|x|, |y|)`, four significant digits.
    pub residual: String,
    pub pass: bool,
    pub notes: String,
}

impl VerificationReport {
    pub fn named(mut self, id: &str, anchor: &str) -> Self {
        self.id = id.into();
        self.anchor = anchor.into();
        self
    }

    pub fn with_note(mut self, note: &str) -> Self {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(note);
        self
    }

    /// A check that could not be carried out.
    pub fn failed(id: &str, anchor: &str, digits: u32, why: &str) -> Self {
        VerificationReport {
            id: id.into(),
            anchor: anchor.into(),
            digits_requested: digits,
            digits_agreed: 0,
            residual: String::from("nan"),
            pass: false,
            notes: why.into(),
        }
    }

    /// A residual check: passes when `residual < 10^-digits`.
    pub fn residual_check(
        id: &str,
        anchor: &str,
        residual: &BigReal,
        digits: u32,
        carried: u32,
    ) -> Self {
        let agreed = if residual.is_zero() {
            carried
        } else {
            floor_digits(-residual.log10_abs_approx(), carried)
        };
        let pass = residual.is_zero() || -residual.log10_abs_approx() > digits as f64;
        VerificationReport {
            id: id.into(),
            anchor: anchor.into(),
            digits_requested: digits,
            digits_agreed: agreed,
            residual: format_scientific(&residual.abs(), 4),
            pass,
            notes: String::new(),
        }
    }
}

fn floor_digits(d: f64, cap: u32) -> u32 {
    if d.is_nan() || d <= 0.0 {
        0
    } else if d >= cap as f64 {
        cap
    } else {
        libm::floor(d) as u32
    }
}

/// Compare `x` and `y`: agreement `-log10(|x-y| / max(|x|, |y|, 1e-300))`,
/// pass iff at least `digits`.
pub fn assert_equal(x: &BigReal, y: &BigReal, digits: u32) -> VerificationReport {
    let carried = max_digits(x.prec().min(y.prec()));
    let agree = agreement_digits(x, y);
    let diff = x - y;
    let residual = if diff.is_zero() {
        String::from("0")
    } else {
        let scale = if x.abs() > y.abs() { x.abs() } else { y.abs() };
        if scale.is_zero() {
            format_scientific(&diff.abs(), 4)
        } else {
            format_scientific(&(&diff.abs() / &scale), 4)
        }
    };
    VerificationReport {
        id: String::new(),
        anchor: String::new(),
        digits_requested: digits,
        digits_agreed: floor_digits(agree, carried),
        residual,
        pass: agree >= digits as f64,
        notes: String::new(),
    }
}
