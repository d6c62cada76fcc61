use std::path::{Path, PathBuf};

use classinv_core::hpreal::{to_decimal, validated, BigReal, PrecisionContext};
use classinv_core::invariants::{
    a_product, alpha_singular, class_G, class_g, elliptic_k, nome, InvariantIndex,
};
use classinv_core::modeq::solve_g_pair;
use classinv_core::qseries::{chi_of, euler_f, theta_phi, theta_psi};
use classinv_core::radicals::{
    builtin_corpus, natural_cmp, parse_corpus, parse_radical, verify_entry, CorpusEntry,
    EntryExpression, EntryFlag, EntryKind,
};
use classinv_core::relations::{
    extended_exponents, extended_pq_relations, find_relation, format_poly, min_poly,
    rediscover_pq_relation, RelationSearch,
};
use classinv_core::verify::{
    check_digits, is_flagged_failure, suite_checks, Suite, WORKING_EXTRA_DIGITS,
};
use classinv_core::Error;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::failure::{exit, Failure};
use crate::output::{self, Format, TableRow};

pub const DIGITS_ENV: &str = "CLASSINV_DIGITS";
pub const DEFAULT_DIGITS: u32 = 60;

/// Text to emit and the exit status to finish with.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            status: exit::OK,
        }
    }
}

/// Flag, then environment, then default.
pub fn resolve_digits(flag: Option<u32>) -> Result<u32, Failure> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var(DIGITS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{DIGITS_ENV}={v:?} is not a digit count"))),
        Err(_) => Ok(DEFAULT_DIGITS),
    }
}

pub fn load_corpus(path: Option<&Path>) -> Result<Vec<CorpusEntry>, Failure> {
    match path {
        None => Ok(builtin_corpus()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::io(p, e))?;
            Ok(parse_corpus(&text)?)
        }
    }
}

pub fn write_output(text: &str, out: Option<&PathBuf>) -> Result<Option<String>, Failure> {
    match out {
        None => Ok(Some(text.to_string())),
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::io(p, e))?;
            Ok(None)
        }
    }
}

fn context(digits: u32) -> Result<PrecisionContext, Failure> {
    Ok(PrecisionContext::new(digits + WORKING_EXTRA_DIGITS)?)
}

fn index(text: Option<&str>, name: &str) -> Result<InvariantIndex, Failure> {
    let t = text.ok_or_else(|| Failure::Usage(format!("--{name} is required")))?;
    Ok(t.parse()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum EvalKind {
    #[value(name = "G")]
    UpperG,
    #[value(name = "g")]
    LowerG,
    Alpha,
    A,
    Phi,
    Psi,
    F,
    Chi,
    #[value(name = "K")]
    K,
}

pub struct EvalArgs<'a> {
    pub kind: EvalKind,
    pub n: Option<&'a str>,
    pub m: Option<&'a str>,
    pub q: Option<&'a str>,
    pub k: Option<&'a str>,
}

pub fn eval(args: &EvalArgs, digits: u32) -> Result<Outcome, Failure> {
    let ctx = context(digits)?;
    let value = validated(&ctx, |c| eval_at(args, c).map_err(into_core))?;
    Ok(Outcome::ok(format!(
        "{}\n",
        to_decimal(&value, digits, &ctx)?
    )))
}

fn into_core(f: Failure) -> Error {
    match f {
        Failure::Core(e) => e,
        other => Error::Config(other.to_string()),
    }
}

fn eval_at(args: &EvalArgs, c: &PrecisionContext) -> Result<BigReal, Failure> {
    let q_arg = || -> Result<BigReal, Failure> {
        match (args.q, args.n) {
            (Some(q), _) => Ok(c.parse(q)?),
            (None, Some(n)) => Ok(nome(n.parse()?, c)?),
            (None, None) => Err(Failure::Usage("--q or --n is required".into())),
        }
    };
    Ok(match args.kind {
        EvalKind::UpperG => class_G(index(args.n, "n")?, c)?,
        EvalKind::LowerG => class_g(index(args.n, "n")?, c)?,
        EvalKind::Alpha => alpha_singular(index(args.n, "n")?, c)?,
        EvalKind::A => a_product(index(args.m, "m")?, index(args.n, "n")?, c)?,
        EvalKind::Phi => theta_phi(&q_arg()?, c)?,
        EvalKind::Psi => theta_psi(&q_arg()?, c)?,
        EvalKind::F => euler_f(&q_arg()?, c)?,
        EvalKind::Chi => chi_of(&q_arg()?, c)?,
        EvalKind::K => {
            let k = args
                .k
                .ok_or_else(|| Failure::Usage("--k is required".into()))?;
            elliptic_k(&c.parse(k)?, c)?
        }
    })
}

pub fn verify(
    suite: Suite,
    digits: u32,
    corpus: &[CorpusEntry],
    format: Format,
) -> Result<Outcome, Failure> {
    check_digits(digits)?;
    let checks = suite_checks(suite, corpus);
    let reports: Vec<_> = checks.par_iter().map(|c| c.run(digits)).collect();
    let flagged = reports
        .iter()
        .filter(|r| is_flagged_failure(r, corpus))
        .count();
    let failed = reports.iter().filter(|r| !r.pass).count() - flagged;
    let mut text = output::reports(&reports, format)?;
    if format == Format::Text {
        text.push_str(&format!(
            "{} checks, {} passed, {failed} failed, {flagged} flagged\n",
            reports.len(),
            reports.len() - failed - flagged
        ));
    }
    let status = if failed > 0 {
        exit::VERIFICATION
    } else {
        exit::OK
    };
    Ok(Outcome {
        output: text,
        status,
    })
}

pub enum DiscoverTarget<'a> {
    PqRelation {
        qs: &'a [String],
    },
    ExtendedPq {
        qs: &'a [String],
    },
    MinPoly {
        value: &'a str,
        n: Option<&'a str>,
        max_degree: usize,
    },
    Values {
        values: &'a [String],
        max_norm: Option<&'a str>,
    },
}

const DEFAULT_QS: [&str; 2] = ["0.1", "0.3"];

fn q_points(qs: &[String], ctx: &PrecisionContext) -> Result<Vec<BigReal>, Failure> {
    let texts: Vec<&str> = if qs.is_empty() {
        DEFAULT_QS.to_vec()
    } else {
        qs.iter().map(String::as_str).collect()
    };
    texts.iter().map(|t| Ok(ctx.parse(t)?)).collect()
}

fn vector(c: &[BigInt]) -> String {
    let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn pq_polynomial(c: &[BigInt]) -> String {
    let mut out = String::new();
    for (&(a, b), v) in extended_exponents().iter().zip(c).rev() {
        if v == &BigInt::from(0) {
            continue;
        }
        let neg = v < &BigInt::from(0);
        let mag = if neg { -v } else { v.clone() };
        out.push_str(match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        let mut mono = Vec::new();
        if a > 0 {
            mono.push(format!("P^{a}"));
        }
        if b > 0 {
            mono.push(format!("Q^{b}"));
        }
        if mag != BigInt::from(1) || mono.is_empty() {
            mono.insert(0, mag.to_string());
        }
        out.push_str(&mono.join("*"));
    }
    out
}

/// A value named on the command line: `h4` (with `--n`), `G<n>`, `g<n>`,
/// `alpha<n>`, `sqrt<k>`, `pi`, or any radical expression.
fn named_value(text: &str, n: Option<&str>, ctx: &PrecisionContext) -> Result<BigReal, Failure> {
    if text == "pi" {
        return Ok(ctx.pi());
    }
    if text == "h4" {
        return Ok(solve_g_pair(index(n, "n")?, ctx)?.h.powi(4));
    }
    for (prefix, f) in [
        (
            "alpha",
            alpha_singular as fn(InvariantIndex, &PrecisionContext) -> _,
        ),
        ("G", class_G),
        ("g", class_g),
    ] {
        if let Some(rest) = text.strip_prefix(prefix) {
            if let Ok(i) = rest.parse::<InvariantIndex>() {
                return Ok(f(i, ctx)?);
            }
        }
    }
    if let Some(k) = text
        .strip_prefix("sqrt")
        .and_then(|r| r.parse::<u64>().ok())
    {
        return Ok(ctx.sqrt(&ctx.int(k as i64))?);
    }
    Ok(parse_radical(text)?.eval(ctx)?)
}

pub fn discover(target: &DiscoverTarget, digits: u32) -> Result<Outcome, Failure> {
    let ctx = context(digits)?;
    let text = match target {
        DiscoverTarget::PqRelation { qs } => {
            let points = q_points(qs, &ctx)?;
            vector(&rediscover_pq_relation(&points, &ctx, None)?.coefficients)
        }
        DiscoverTarget::ExtendedPq { qs } => {
            let points = q_points(qs, &ctx)?;
            let rels = extended_pq_relations(&points, &ctx, None)?;
            if rels.is_empty() {
                return Err(Error::NoRelation("extended P-Q basis".into()).into());
            }
            rels.iter()
                .map(|r| pq_polynomial(&r.coefficients))
                .collect::<Vec<_>>()
                .join("\n")
        }
        DiscoverTarget::MinPoly {
            value,
            n,
            max_degree,
        } => {
            let x = named_value(value, *n, &ctx)?;
            match min_poly(&x, *max_degree, &ctx)? {
                Some(p) => format_poly(&p, "x"),
                None => format!("none (no polynomial of degree at most {max_degree})"),
            }
        }
        DiscoverTarget::Values { values, max_norm } => {
            let xs = values
                .iter()
                .map(|v| named_value(v, None, &ctx))
                .collect::<Result<Vec<_>, _>>()?;
            let bound: BigInt = match max_norm {
                Some(t) => t
                    .parse()
                    .map_err(|_| Failure::Usage(format!("bad --max-norm {t:?}")))?,
                None => BigInt::from(1_000_000),
            };
            match find_relation(&xs, &ctx, &bound)? {
                RelationSearch::Found(r) => vector(&r.coefficients),
                RelationSearch::None { exclusion_bound } => {
                    format!("none (no relation of norm below {exclusion_bound:.3e})")
                }
            }
        }
    };
    Ok(Outcome::ok(format!("{text}\n")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableKind {
    #[value(name = "G")]
    UpperG,
    #[value(name = "g")]
    LowerG,
    Alpha,
    A,
    All,
}

impl TableKind {
    fn admits(self, k: EntryKind) -> bool {
        match self {
            TableKind::UpperG => k == EntryKind::UpperG,
            TableKind::LowerG => k == EntryKind::LowerG,
            TableKind::Alpha => k == EntryKind::Alpha,
            TableKind::A => k == EntryKind::AM2,
            TableKind::All => k != EntryKind::Identity,
        }
    }
}

pub fn table(
    kind: TableKind,
    digits: u32,
    corpus: &[CorpusEntry],
    format: Format,
) -> Result<Outcome, Failure> {
    check_digits(digits)?;
    let ctx = context(digits)?;
    let mut entries: Vec<&CorpusEntry> = corpus
        .iter()
        .filter(|e| kind.admits(e.kind) && e.flag != EntryFlag::Corrected)
        .collect();
    entries.sort_by(|a, b| natural_cmp(&a.id, &b.id));
    let rows: Vec<TableRow> = entries
        .par_iter()
        .map(|e| table_row(e, digits, &ctx))
        .collect();
    Ok(Outcome::ok(output::table(&rows, format)?))
}

fn table_row(e: &CorpusEntry, digits: u32, ctx: &PrecisionContext) -> TableRow {
    let EntryExpression::Value(expr) = &e.expression else {
        unreachable!("identities are filtered out")
    };
    let value = validated(ctx, |c| expr.eval(c))
        .and_then(|v| to_decimal(&v, digits, ctx))
        .unwrap_or_else(|err| format!("error: {err}"));
    let report = verify_entry(e, digits, ctx);
    TableRow {
        id: e.id.clone(),
        kind: e.kind.as_str().into(),
        index: e.index.map(|i| i.to_string()).unwrap_or_default(),
        closed_form: expr.to_string(),
        value,
        digits_agreed: report.digits_agreed,
        notes: report.notes,
    }
}
