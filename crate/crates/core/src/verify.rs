//! Verification suites: every numerical check the artifact reports on,
//! as independent checks that can run in any order.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::hpreal::{pow_rational, BigReal, PrecisionContext};
use crate::invariants::{
    a_product, a_product_alt, alpha_of_q, alpha_singular, class_G, class_g, elliptic_k,
    multiplier_deg2, InvariantIndex,
};
use crate::modeq::{a_m2_from_g, residual_classical, residual_weber, solve_g_pair};
use crate::qseries::{euler_f, psi_product, psi_product_squared_denominator, theta_phi, theta_psi};
use crate::radicals::{
    assert_equal, natural_cmp, verify_entry, CorpusEntry, EntryFlag, VerificationReport,
};

/// Extra decimal digits carried beyond the requested report precision.
pub const WORKING_EXTRA_DIGITS: u32 = 20;
/// Smallest accepted report precision.
pub const MIN_REPORT_DIGITS: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Lemmas,
    Thm31,
    Thm32,
    Thm33,
    Thm41,
    Thm42,
    Thm43,
    Thm44,
    Thm45,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Lemmas,
        Suite::Thm31,
        Suite::Thm32,
        Suite::Thm33,
        Suite::Thm41,
        Suite::Thm42,
        Suite::Thm43,
        Suite::Thm44,
        Suite::Thm45,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Thm31 => "thm31",
            Suite::Thm32 => "thm32",
            Suite::Thm33 => "thm33",
            Suite::Thm41 => "thm41",
            Suite::Thm42 => "thm42",
            Suite::Thm43 => "thm43",
            Suite::Thm44 => "thm44",
            Suite::Thm45 => "thm45",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

/// Indices of the degree-2 engine checks.
pub const G_PAIR_INDICES: [u64; 5] = [7, 11, 17, 23, 29];
/// The `m` of every tabulated `a_{m,2}`.
pub const A_M2_INDICES: [u64; 15] = [2, 7, 11, 15, 17, 21, 23, 29, 35, 39, 41, 51, 65, 71, 95];
/// The `n` of every tabulated singular modulus.
pub const ALPHA_INDICES: [u64; 10] = [14, 22, 34, 46, 58, 70, 82, 130, 142, 190];
pub const PERIOD_RATIO_INDICES: [u64; 5] = [1, 14, 22, 34, 46];
pub const DUPLICATION_INDICES: [u64; 5] = [1, 7, 14, 23, 46];

const IDENTITY_GRID: (f64, f64, usize) = (0.02, 0.5, 10);
const WEBER_GRID: (f64, f64, usize) = (0.01, 0.6, 20);

#[derive(Clone, Debug)]
enum Task {
    ProductIdentity(usize),
    EulerInZ(usize),
    EulerSquareInZ(usize),
    MultiplierSqrt(usize),
    MultiplierSquare(usize),
    ClassicalPq(usize),
    PsiProduct,
    WeberPq(usize),
    GPairUpper(u64),
    GPairLower(u64),
    H4Sum(u64),
    AFromG(u64),
    AAlt(u64),
    Corpus(Box<CorpusEntry>),
    G46Product,
    HDegree32,
    HDegree16,
    HCofactor48,
    Duplication(u64),
    AlphaFromG(u64),
    PeriodRatio(u64),
}

/// One self-contained check; `run` it at a report precision.
#[derive(Clone, Debug)]
pub struct Check {
    pub id: String,
    pub anchor: &'static str,
    task: Task,
}

impl Check {
    fn new(id: String, suite: Suite, task: Task) -> Self {
        Check {
            id,
            anchor: suite.name(),
            task,
        }
    }

    /// Run at report precision `digits`; arithmetic is carried at
    /// `digits + WORKING_EXTRA_DIGITS`. Never fails: errors land in the report.
    pub fn run(&self, digits: u32) -> VerificationReport {
        let ctx = match PrecisionContext::new(digits + WORKING_EXTRA_DIGITS) {
            Ok(c) => c,
            Err(e) => {
                return VerificationReport::failed(&self.id, self.anchor, digits, &e.to_string())
            }
        };
        if let Task::Corpus(entry) = &self.task {
            let mut r = verify_entry(entry, digits.saturating_sub(WORKING_EXTRA_DIGITS), &ctx);
            r.anchor = self.anchor.into();
            return r;
        }
        match self.evaluate(digits, &ctx) {
            Ok(mut r) => {
                r.digits_agreed = r.digits_agreed.min(ctx.digits());
                r.named(&self.id, self.anchor)
            }
            Err(e) => VerificationReport::failed(&self.id, self.anchor, digits, &e.to_string()),
        }
    }

    fn evaluate(&self, digits: u32, ctx: &PrecisionContext) -> Result<VerificationReport> {
        let carried = ctx.digits();
        let residual_digits = digits.saturating_sub(15);
        let one = ctx.int(1);
        let idx = InvariantIndex::integer;
        let equal = |x: &BigReal, y: &BigReal| assert_equal(x, y, residual_digits);
        Ok(match &self.task {
            Task::ProductIdentity(i) => {
                let q = grid_point(IDENTITY_GRID, *i, ctx)?;
                let lhs = &euler_f(&q, ctx)? * &euler_f(&-(&q * &q), ctx)?;
                let rhs = &theta_psi(&-&q, ctx)? * &theta_phi(&q, ctx)?;
                equal(&lhs, &rhs)
            }
            Task::EulerInZ(i) | Task::EulerSquareInZ(i) => {
                let q = grid_point(IDENTITY_GRID, *i, ctx)?;
                let sz = theta_phi(&q, ctx)?;
                let a = alpha_of_q(&q, ctx)?;
                let base = &(&a * &(&one - &a)) / &q;
                let (lhs, p2, pb) = match self.task {
                    Task::EulerInZ(_) => (euler_f(&q, ctx)?, 6, 24),
                    _ => (euler_f(&-(&q * &q), ctx)?, 3, 12),
                };
                let rhs = &(&sz * &pow_rational(&ctx.int(2), -1, p2, ctx)?)
                    * &pow_rational(&base, 1, pb, ctx)?;
                equal(&lhs, &rhs)
            }
            Task::MultiplierSqrt(i) | Task::MultiplierSquare(i) => {
                let q = grid_point(IDENTITY_GRID, *i, ctx)?;
                let pair = multiplier_deg2(&q, ctx)?;
                let s = ctx.sqrt(&(&one - &pair.alpha))?;
                let m = &pair.multiplier_m;
                let lhs = match self.task {
                    Task::MultiplierSqrt(_) => &(m * &s) + &ctx.sqrt(&pair.beta)?,
                    _ => &(&(m * m) * &s) + &pair.beta,
                };
                equal(&lhs, &one)
            }
            Task::ClassicalPq(i) => {
                let q = grid_point(IDENTITY_GRID, *i, ctx)?;
                VerificationReport::residual_check(
                    "",
                    "",
                    &residual_classical(&q, ctx)?,
                    residual_digits,
                    carried,
                )
            }
            Task::PsiProduct => {
                let q = ctx.ratio(3, 10);
                let series = theta_psi(&q, ctx)?;
                let squared = psi_product_squared_denominator(&q, ctx)?;
                let off = assert_equal(&series, &squared, 1);
                let note = format!(
                    "printed product with squared denominator agrees with the series to {} digits",
                    off.digits_agreed
                );
                equal(&psi_product(&q, ctx)?, &series).with_note(&note)
            }
            Task::WeberPq(i) => {
                let q = grid_point(WEBER_GRID, *i, ctx)?;
                VerificationReport::residual_check(
                    "",
                    "",
                    &residual_weber(&q, ctx)?,
                    residual_digits,
                    carried,
                )
            }
            Task::GPairUpper(n) | Task::GPairLower(n) => {
                let pair = solve_g_pair(idx(*n)?, ctx)?;
                let need = digits.saturating_sub(30);
                match self.task {
                    Task::GPairUpper(_) => {
                        assert_equal(&pair.upper_2n, &class_G(idx(2 * n)?, ctx)?, need)
                    }
                    _ => assert_equal(
                        &pair.upper_half_n,
                        &class_G(InvariantIndex::new(*n, 2)?, ctx)?,
                        need,
                    ),
                }
            }
            Task::H4Sum(n) => {
                let h4 = solve_g_pair(idx(*n)?, ctx)?.h.powi(4);
                let lhs = &h4 + &(&ctx.int(4) / &h4);
                let rhs = &ctx.int(104) + &(&ctx.sqrt(&ctx.int(2))? * 72);
                assert_equal(&lhs, &rhs, digits.saturating_sub(20))
            }
            Task::AFromG(m) | Task::AAlt(m) => {
                let direct = a_product(idx(*m)?, idx(2)?, ctx)?;
                let other = match self.task {
                    Task::AFromG(_) => a_m2_from_g(idx(*m)?, ctx)?,
                    _ => a_product_alt(idx(*m)?, idx(2)?, ctx)?,
                };
                assert_equal(&other, &direct, digits.saturating_sub(25))
            }
            Task::Corpus(_) => unreachable!("handled in run"),
            Task::G46Product => {
                let prod = &class_G(idx(46)?, ctx)? * &class_G(InvariantIndex::new(23, 2)?, ctx)?;
                let r2 = ctx.sqrt(&ctx.int(2))?;
                let inner =
                    &(&ctx.int(26) + &(&r2 * 18)) + &ctx.sqrt(&(&ctx.int(1323) + &(&r2 * 936)))?;
                let closed =
                    &pow_rational(&ctx.int(2), -1, 4, ctx)? * &pow_rational(&inner, 1, 4, ctx)?;
                assert_equal(&prod, &closed, digits.saturating_sub(20))
            }
            Task::HDegree32 | Task::HDegree16 | Task::HCofactor48 => {
                let h = &(&ctx.sqrt(&ctx.int(2))? * &class_G(idx(46)?, ctx)?)
                    * &class_G(InvariantIndex::new(23, 2)?, ctx)?;
                let h4 = h.powi(4);
                let (coeffs, label) = match self.task {
                    Task::HDegree32 => (degree32_coefficients(ctx)?, ""),
                    Task::HDegree16 => (int_coefficients(&[16, -832, 456, -208, 1], ctx), ""),
                    _ => (cofactor48_coefficients(ctx), "cofactor"),
                };
                let rel = relative_poly_value(&coeffs, &h4);
                if label.is_empty() {
                    VerificationReport::residual_check("", "", &rel, residual_digits, carried)
                } else {
                    // the other factor must not vanish at h
                    let value = crate::hpreal::format_scientific(&rel, 4);
                    let mut r = VerificationReport::residual_check("", "", &rel, 0, carried);
                    r.pass = rel.log10_abs_approx() > -5.0;
                    r.digits_requested = 0;
                    r.with_note(&format!(
                        "relative value of the degree-48 factor at h is {value}"
                    ))
                }
            }
            Task::Duplication(n) => {
                let lhs = class_g(idx(4 * n)?, ctx)?;
                let rhs = &(&pow_rational(&ctx.int(2), 1, 4, ctx)? * &class_g(idx(*n)?, ctx)?)
                    * &class_G(idx(*n)?, ctx)?;
                assert_equal(&lhs, &rhs, digits.saturating_sub(20))
            }
            Task::AlphaFromG(n) => {
                let a = alpha_singular(idx(*n)?, ctx)?;
                let via = (&class_G(idx(*n)?, ctx)? * &class_g(idx(4 * n)?, ctx)?)
                    .powi(8)
                    .recip()?;
                assert_equal(&a, &via, digits.saturating_sub(20))
            }
            Task::PeriodRatio(n) => {
                let a = alpha_singular(idx(*n)?, ctx)?;
                let kp = elliptic_k(&ctx.sqrt(&(&one - &a))?, ctx)?;
                let k = elliptic_k(&ctx.sqrt(&a)?, ctx)?;
                assert_equal(
                    &(&kp / &k),
                    &ctx.sqrt(&ctx.int(*n as i64))?,
                    digits.saturating_sub(30),
                )
            }
        })
    }
}

/// Point `i` of a log-spaced grid of `n` values in `[lo, hi]`.
fn grid_point((lo, hi, n): (f64, f64, usize), i: usize, ctx: &PrecisionContext) -> Result<BigReal> {
    let base = ctx.parse(&format!("{lo}"))?;
    let ratio = &ctx.parse(&format!("{hi}"))? / &base;
    Ok(&base * &pow_rational(&ratio, i as i64, (n - 1) as u32, ctx)?)
}

fn int_coefficients(c: &[i64], ctx: &PrecisionContext) -> Vec<BigReal> {
    c.iter().map(|&v| ctx.int(v)).collect()
}

/// Degree-32 polynomial in `h` as a polynomial in `h⁴`, ascending.
fn degree32_coefficients(ctx: &PrecisionContext) -> Result<Vec<BigReal>> {
    let r2 = ctx.sqrt(&ctx.int(2))?;
    let mix = |a: i64, b: i64| &ctx.int(a) + &(&r2 * b);
    Ok(alloc::vec![
        ctx.int(256),
        mix(69701632, 49287168),
        -mix(3587934720, 2537054208),
        mix(69701632, 49287168),
        ctx.int(224),
        -mix(4356352, 3080448),
        ctx.int(-32),
        ctx.int(0),
        ctx.int(1),
    ])
}

/// The degree-48 cofactor in `h` as a polynomial in `h⁴`, ascending.
fn cofactor48_coefficients(ctx: &PrecisionContext) -> Vec<BigReal> {
    int_coefficients(
        &[
            4096,
            2230665216,
            -7091652608,
            10947629056,
            -761938176,
            -1089853440,
            104902912,
            33126912,
            -1838096,
            84032,
            42744,
            208,
            1,
        ],
        ctx,
    )
}

/// `|Σ cᵢyⁱ| / maxᵢ |cᵢyⁱ|`.
fn relative_poly_value(c: &[BigReal], y: &BigReal) -> BigReal {
    let mut sum = BigReal::zero(y.prec());
    let mut big = BigReal::zero(y.prec());
    let mut p = BigReal::one(y.prec());
    for ci in c {
        let t = ci * &p;
        if t.abs() > big {
            big = t.abs();
        }
        sum = &sum + &t;
        p = &p * y;
    }
    if big.is_zero() {
        sum
    } else {
        &sum.abs() / &big
    }
}

fn corpus_checks(suite: Suite, corpus: &[CorpusEntry], with_corrected: bool) -> Vec<Check> {
    let mut entries: Vec<&CorpusEntry> = corpus
        .iter()
        .filter(|e| e.anchor == suite.name() && (with_corrected || e.flag != EntryFlag::Corrected))
        .collect();
    entries.sort_by(|a, b| natural_cmp(&a.id, &b.id));
    entries
        .into_iter()
        .map(|e| Check::new(e.id.clone(), suite, Task::Corpus(Box::new(e.clone()))))
        .collect()
}

fn grid_checks(
    suite: Suite,
    n: usize,
    id: &str,
    task: fn(usize) -> Task,
) -> impl Iterator<Item = Check> + '_ {
    (0..n).map(move |i| Check::new(format!("{id}_{:02}", i + 1), suite, task(i)))
}

/// Every check of `suite`, in report order. `all` is the concatenation of
/// the individual suites and additionally includes corrected corpus forms.
pub fn suite_checks(suite: Suite, corpus: &[CorpusEntry]) -> Vec<Check> {
    if suite == Suite::All {
        return Suite::EACH
            .into_iter()
            .flat_map(|s| checks_of(s, corpus, true))
            .collect();
    }
    checks_of(suite, corpus, false)
}

fn checks_of(suite: Suite, corpus: &[CorpusEntry], with_corrected: bool) -> Vec<Check> {
    let mut out = Vec::new();
    let n = IDENTITY_GRID.2;
    match suite {
        Suite::Lemmas => {
            out.extend(grid_checks(
                suite,
                n,
                "f_product_identity",
                Task::ProductIdentity,
            ));
            out.extend(grid_checks(suite, n, "f_in_z_alpha", Task::EulerInZ));
            out.extend(grid_checks(
                suite,
                n,
                "f_square_in_z_alpha",
                Task::EulerSquareInZ,
            ));
            out.extend(grid_checks(
                suite,
                n,
                "multiplier_sqrt_beta",
                Task::MultiplierSqrt,
            ));
            out.extend(grid_checks(
                suite,
                n,
                "multiplier_square",
                Task::MultiplierSquare,
            ));
            out.extend(grid_checks(suite, n, "classical_pq", Task::ClassicalPq));
            out.push(Check::new("psi_product".into(), suite, Task::PsiProduct));
        }
        Suite::Thm31 => out.extend(grid_checks(suite, WEBER_GRID.2, "weber_pq", Task::WeberPq)),
        Suite::Thm32 => {
            for n in G_PAIR_INDICES {
                out.push(Check::new(
                    format!("G_{}_engine", 2 * n),
                    suite,
                    Task::GPairUpper(n),
                ));
                out.push(Check::new(
                    format!("G_{n}/2_engine"),
                    suite,
                    Task::GPairLower(n),
                ));
            }
            out.push(Check::new("h4_sum_23".into(), suite, Task::H4Sum(23)));
        }
        Suite::Thm33 => {
            for m in A_M2_INDICES {
                out.push(Check::new(
                    format!("a_{m}_2_from_g"),
                    suite,
                    Task::AFromG(m),
                ));
                out.push(Check::new(
                    format!("a_{m}_2_alt_form"),
                    suite,
                    Task::AAlt(m),
                ));
            }
        }
        Suite::Thm41 => {
            out.extend(corpus_checks(suite, corpus, with_corrected));
            out.push(Check::new(
                "G_46_G_23/2_product".into(),
                suite,
                Task::G46Product,
            ));
            out.push(Check::new("h_degree32".into(), suite, Task::HDegree32));
            out.push(Check::new("h_degree16".into(), suite, Task::HDegree16));
            out.push(Check::new("h_cofactor48".into(), suite, Task::HCofactor48));
        }
        Suite::Thm43 => {
            out.extend(corpus_checks(suite, corpus, with_corrected));
            for n in DUPLICATION_INDICES {
                out.push(Check::new(
                    format!("g_{}_duplication", 4 * n),
                    suite,
                    Task::Duplication(n),
                ));
            }
        }
        Suite::Thm44 => {
            out.extend(corpus_checks(suite, corpus, with_corrected));
            for n in ALPHA_INDICES {
                out.push(Check::new(
                    format!("alpha_{n}_from_G_g"),
                    suite,
                    Task::AlphaFromG(n),
                ));
            }
            for n in PERIOD_RATIO_INDICES {
                out.push(Check::new(
                    format!("alpha_{n}_period_ratio"),
                    suite,
                    Task::PeriodRatio(n),
                ));
            }
        }
        Suite::Thm42 | Suite::Thm45 => out.extend(corpus_checks(suite, corpus, with_corrected)),
        Suite::All => unreachable!(),
    }
    out
}

/// Run `suite` sequentially.
pub fn run_suite(
    suite: Suite,
    digits: u32,
    corpus: &[CorpusEntry],
) -> Result<Vec<VerificationReport>> {
    check_digits(digits)?;
    Ok(suite_checks(suite, corpus)
        .iter()
        .map(|c| c.run(digits))
        .collect())
}

pub fn check_digits(digits: u32) -> Result<()> {
    if digits < MIN_REPORT_DIGITS {
        return Err(Error::Config(format!(
            "verification needs at least {MIN_REPORT_DIGITS} digits, got {digits}"
        )));
    }
    Ok(())
}

/// True for failures on entries flagged as suspected misprints, which are
/// expected and reported with their measured agreement.
pub fn is_flagged_failure(r: &VerificationReport, corpus: &[CorpusEntry]) -> bool {
    !r.pass
        && corpus
            .iter()
            .any(|e| e.id == r.id && e.flag == EntryFlag::Erratum)
}
