use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::expr::{parse_radical, RadicalExpr};
use crate::error::{Error, Result};
use crate::invariants::InvariantIndex;

/// What a corpus closed form is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntryKind {
    /// `G_n`
    UpperG,
    /// `g_n`
    LowerG,
    Alpha,
    /// `a_{m,2}`
    AM2,
    /// `lhs = rhs` between two closed forms
    Identity,
}

impl EntryKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EntryKind::UpperG => "G",
            EntryKind::LowerG => "g",
            EntryKind::Alpha => "alpha",
            EntryKind::AM2 => "a_m2",
            EntryKind::Identity => "identity",
        }
    }
}

impl FromStr for EntryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "G" => EntryKind::UpperG,
            "g" => EntryKind::LowerG,
            "alpha" => EntryKind::Alpha,
            "a_m2" | "a" => EntryKind::AM2,
            "identity" => EntryKind::Identity,
            _ => return Err(Error::Config(format!("unknown entry kind {s:?}"))),
        })
    }
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Editorial status of an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntryFlag {
    /// As printed in the source, no doubts recorded.
    Printed,
    /// As printed, but suspected misprint; its failure is a recorded finding.
    Erratum,
    /// Our corrected version of an `Erratum` entry.
    Corrected,
}

impl EntryFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            EntryFlag::Printed => "",
            EntryFlag::Erratum => "erratum",
            EntryFlag::Corrected => "corrected",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryExpression {
    Value(RadicalExpr),
    Identity(RadicalExpr, RadicalExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub kind: EntryKind,
    pub index: Option<InvariantIndex>,
    /// Source text of the closed form, as stored.
    pub source: String,
    pub expression: EntryExpression,
    pub anchor: String,
    pub flag: EntryFlag,
}

/// Parse corpus text: one `id | kind | index | expression | anchor [| flag]`
/// record per line, `#` starts a comment, blank lines are skipped. Identity
/// records use `-` as index and `lhs = rhs` as expression.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Corpus {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        if fields.len() != 5 && fields.len() != 6 {
            return Err(err(format!(
                "expected 5 or 6 fields, found {}",
                fields.len()
            )));
        }
        let id = fields[0];
        if id.is_empty() || id.contains(char::is_whitespace) {
            return Err(err(format!("bad id {id:?}")));
        }
        if !seen.insert(id.to_string()) {
            return Err(err(format!("duplicate id {id}")));
        }
        let kind: EntryKind = fields[1].parse().map_err(|e: Error| err(e.to_string()))?;
        let index = match (kind, fields[2]) {
            (EntryKind::Identity, "-" | "") => None,
            (EntryKind::Identity, _) => {
                return Err(err("identity entries take '-' as index".into()))
            }
            (_, s) => Some(
                s.parse::<InvariantIndex>()
                    .map_err(|e| err(e.to_string()))?,
            ),
        };
        let parse = |t: &str| parse_radical(t).map_err(|e| err(format!("{e}")));
        let expression = if kind == EntryKind::Identity {
            let (l, r) = fields[3]
                .split_once('=')
                .ok_or_else(|| err("identity needs 'lhs = rhs'".into()))?;
            EntryExpression::Identity(parse(l)?, parse(r)?)
        } else {
            EntryExpression::Value(parse(fields[3])?)
        };
        let flag = match fields.get(5).copied() {
            None | Some("") => EntryFlag::Printed,
            Some("erratum") => EntryFlag::Erratum,
            Some("corrected") => EntryFlag::Corrected,
            Some(f) => return Err(err(format!("unknown flag {f:?}"))),
        };
        out.push(CorpusEntry {
            id: id.to_string(),
            kind,
            index,
            source: fields[3].to_string(),
            expression,
            anchor: fields[4].to_string(),
            flag,
        });
    }
    Ok(out)
}

/// The built-in corpus of explicit values.
pub const BUILTIN_CORPUS: &str = include_str!("../../data/corpus.txt");

pub fn builtin_corpus() -> Vec<CorpusEntry> {
    parse_corpus(BUILTIN_CORPUS).expect("built-in corpus parses")
}

/// Orders ids by text, comparing embedded digit runs numerically, so that
/// `a_2_2 < a_10_2`.
pub fn natural_cmp(a: &str, b: &str) -> core::cmp::Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return core::cmp::Ordering::Equal,
            (None, _) => return core::cmp::Ordering::Less,
            (_, None) => return core::cmp::Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let nx = x.iter().take_while(|c| c.is_ascii_digit()).count();
                let ny = y.iter().take_while(|c| c.is_ascii_digit()).count();
                let (dx, dy) = (trim_zeros(&x[..nx]), trim_zeros(&y[..ny]));
                let ord = dx.len().cmp(&dy.len()).then_with(|| dx.cmp(dy));
                if ord != core::cmp::Ordering::Equal {
                    return ord;
                }
                x = &x[nx..];
                y = &y[ny..];
            }
            (Some(c), Some(d)) => {
                if c != d {
                    return c.cmp(d);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn trim_zeros(d: &[u8]) -> &[u8] {
    let k = d.iter().take_while(|&&c| c == b'0').count();
    &d[k.min(d.len().saturating_sub(1))..]
}
