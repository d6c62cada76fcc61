//! Closed forms as nested-radical expressions, the corpus of explicit
//! values, and comparison against direct q-series evaluation.

mod corpus;
mod expr;
mod report;

pub use corpus::{
    builtin_corpus, natural_cmp, parse_corpus, CorpusEntry, EntryExpression, EntryFlag, EntryKind,
    BUILTIN_CORPUS,
};
pub use expr::{parse_radical, RadicalExpr};
pub use report::{assert_equal, VerificationReport};

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::Result;
use crate::hpreal::{validated, BigReal, PrecisionContext};
use crate::invariants::{a_product, alpha_singular, class_G, class_g, InvariantIndex};

/// Evaluate a closed form at `ctx`.
pub fn eval_radical(e: &RadicalExpr, ctx: &PrecisionContext) -> Result<BigReal> {
    e.eval(ctx)
}

/// Entries belonging to `suite`: those anchored there, except corrected
/// companions, which only appear in `all`.
pub fn select_suite<'a>(entries: &'a [CorpusEntry], suite: &str) -> Vec<&'a CorpusEntry> {
    let mut out: Vec<&CorpusEntry> = entries
        .iter()
        .filter(|e| suite == "all" || (e.anchor == suite && e.flag != EntryFlag::Corrected))
        .collect();
    out.sort_by(|a, b| natural_cmp(&a.id, &b.id));
    out
}

/// Direct q-series value that an entry's closed form should reproduce.
pub fn direct_value(
    kind: EntryKind,
    index: InvariantIndex,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    match kind {
        EntryKind::UpperG => class_G(index, ctx),
        EntryKind::LowerG => class_g(index, ctx),
        EntryKind::Alpha => alpha_singular(index, ctx),
        EntryKind::AM2 => a_product(index, InvariantIndex::integer(2)?, ctx),
        EntryKind::Identity => unreachable!("identities have no direct value"),
    }
}

/// Both sides of an entry, each validated by recomputation at D and D+20.
pub fn entry_sides(entry: &CorpusEntry, ctx: &PrecisionContext) -> Result<(BigReal, BigReal)> {
    match &entry.expression {
        EntryExpression::Identity(l, r) => Ok((
            validated(ctx, |c| l.eval(c))?,
            validated(ctx, |c| r.eval(c))?,
        )),
        EntryExpression::Value(e) => {
            let closed = validated(ctx, |c| e.eval(c))?;
            let index = entry.index.expect("value entries carry an index");
            let direct = validated(ctx, |c| direct_value(entry.kind, index, c))?;
            Ok((closed, direct))
        }
    }
}

/// Range facts every closed form of a kind must satisfy; `None` if fine.
fn range_violation(
    entry: &CorpusEntry,
    closed: &BigReal,
    ctx: &PrecisionContext,
) -> Option<&'static str> {
    let one = ctx.int(1);
    match entry.kind {
        _ if !closed.is_positive() && entry.kind != EntryKind::Identity => {
            Some("closed form is not positive")
        }
        EntryKind::Alpha if closed >= &one => Some("closed form is not below 1"),
        EntryKind::UpperG | EntryKind::LowerG if closed <= &one => {
            Some("closed form does not exceed 1")
        }
        _ => None,
    }
}

/// Verify one entry, demanding `digits` of agreement. Never fails: problems
/// end up in the report.
pub fn verify_entry(
    entry: &CorpusEntry,
    digits: u32,
    ctx: &PrecisionContext,
) -> VerificationReport {
    let (closed, other) = match entry_sides(entry, ctx) {
        Ok(v) => v,
        Err(e) => {
            let r = VerificationReport::failed(&entry.id, &entry.anchor, digits, &e.to_string());
            return annotate(r, entry);
        }
    };
    let mut r = assert_equal(&closed, &other, digits).named(&entry.id, &entry.anchor);
    r.digits_agreed = r.digits_agreed.min(ctx.digits());
    if let Some(why) = range_violation(entry, &closed, ctx) {
        r.pass = false;
        r = r.with_note(why);
    }
    annotate(r, entry)
}

fn annotate(r: VerificationReport, entry: &CorpusEntry) -> VerificationReport {
    match entry.flag {
        EntryFlag::Printed => r,
        EntryFlag::Erratum => r.with_note("flagged: printed form suspected misprint"),
        EntryFlag::Corrected => {
            let base = entry.id.strip_suffix("_corrected").unwrap_or(&entry.id);
            r.with_note(&format!("corrected form of {base}"))
        }
    }
}

/// Verify every entry of `suite`, in natural id order.
pub fn run_corpus(
    entries: &[CorpusEntry],
    suite: &str,
    digits: u32,
    ctx: &PrecisionContext,
) -> Vec<VerificationReport> {
    select_suite(entries, suite)
        .into_iter()
        .map(|e| verify_entry(e, digits, ctx))
        .collect()
}
