//! Acceptance gate: one PASS/FAIL line per criterion, all tolerances fixed here.

use std::process::Command;
use std::time::{Duration, Instant};

use classinv_core::hpreal::PrecisionContext;
use classinv_core::radicals::{
    builtin_corpus, verify_entry, CorpusEntry, EntryFlag, EntryKind, VerificationReport,
};
use classinv_core::relations::{find_relation, rediscover_pq_relation};
use classinv_core::verify::{run_suite, suite_checks, Suite};
use num_bigint::BigInt;

const DIGITS: u32 = 60;

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn min_agreed(rs: &[&VerificationReport]) -> u32 {
    rs.iter().map(|r| r.digits_agreed).min().unwrap_or(0)
}

/// All of `rs` pass, each demanding exactly `want` digits, and there are `count` of them.
fn all_pass(rs: &[&VerificationReport], want: u32, count: usize) -> Outcome {
    let bad: Vec<&str> = rs
        .iter()
        .filter(|r| !r.pass || r.digits_requested != want)
        .map(|r| r.id.as_str())
        .collect();
    outcome(
        bad.is_empty() && rs.len() == count,
        format!(
            "{} checks at >= {want} digits, min agreement {}, failing {:?}",
            rs.len(),
            min_agreed(rs),
            bad
        ),
    )
}

fn suite(s: Suite) -> Vec<VerificationReport> {
    run_suite(s, DIGITS, &builtin_corpus()).unwrap()
}

fn with_prefix<'a>(rs: &'a [VerificationReport], prefix: &str) -> Vec<&'a VerificationReport> {
    rs.iter().filter(|r| r.id.starts_with(prefix)).collect()
}

fn weber_residuals() -> Outcome {
    let rs = suite(Suite::Thm31);
    all_pass(&rs.iter().collect::<Vec<_>>(), 45, 20)
}

fn lemma_suite() -> Outcome {
    let rs = suite(Suite::Lemmas);
    let groups = [
        "f_product_identity",
        "f_in_z_alpha",
        "f_square_in_z_alpha",
        "multiplier_sqrt_beta",
        "multiplier_square",
        "classical_pq",
    ];
    let mut details = Vec::new();
    let mut pass = true;
    for g in groups {
        let part = with_prefix(&rs, &format!("{g}_"));
        let o = all_pass(&part, 45, 10);
        pass &= o.pass;
        details.push(format!("{g}: {}", min_agreed(&part)));
    }
    outcome(
        pass,
        format!(
            "10-point grid, residual < 1e-45; min digits {}",
            details.join(", ")
        ),
    )
}

fn corpus_entries(corpus: &[CorpusEntry]) -> Vec<&CorpusEntry> {
    corpus
        .iter()
        .filter(|e| e.kind != EntryKind::Identity && e.flag != EntryFlag::Corrected)
        .collect()
}

fn corpus_reproduction() -> Outcome {
    let corpus = builtin_corpus();
    let ctx = PrecisionContext::new(80).unwrap();
    let entries = corpus_entries(&corpus);
    let mut counts = [0usize; 4];
    let mut pass = true;
    let mut flagged = Vec::new();
    for e in &entries {
        counts[match e.kind {
            EntryKind::UpperG => 0,
            EntryKind::LowerG => 1,
            EntryKind::Alpha => 2,
            _ => 3,
        }] += 1;
        let r = verify_entry(e, 40, &ctx);
        if e.flag == EntryFlag::Erratum {
            pass &= r.notes.contains("flagged");
            flagged.push(format!("{} measured {} digits", e.id, r.digits_agreed));
        } else {
            pass &= r.pass && r.digits_agreed >= 40;
        }
    }
    pass &= counts == [10, 11, 10, 15];
    outcome(
        pass,
        format!(
            "G/g/alpha/a counts {counts:?} at 80-digit working precision, >= 40 digits; {}",
            flagged.join(", ")
        ),
    )
}

fn g_pair_engine() -> Outcome {
    let rs = suite(Suite::Thm32);
    let pairs = with_prefix(&rs, "G_");
    let a = all_pass(&pairs, 30, 10);
    let h = with_prefix(&rs, "h4_sum_23");
    let b = all_pass(&h, 40, 1);
    outcome(
        a.pass && b.pass,
        format!(
            "G_2n and G_n/2 for n = 7, 11, 17, 23, 29: {}; h^4 + 4/h^4: {}",
            a.detail, b.detail
        ),
    )
}

fn a_m2_engine() -> Outcome {
    let rs = suite(Suite::Thm33);
    all_pass(&rs.iter().collect::<Vec<_>>(), 35, 30)
}

fn duplication() -> Outcome {
    let rs = suite(Suite::Thm43);
    all_pass(
        &with_prefix(&rs, "g_")
            .into_iter()
            .filter(|r| r.id.ends_with("_duplication"))
            .collect::<Vec<_>>(),
        40,
        5,
    )
}

fn singular_moduli() -> Outcome {
    let rs = suite(Suite::Thm44);
    let periods: Vec<_> = rs
        .iter()
        .filter(|r| r.id.ends_with("_period_ratio"))
        .collect();
    let via_g: Vec<_> = rs.iter().filter(|r| r.id.ends_with("_from_G_g")).collect();
    let a = all_pass(&periods, 30, 5);
    let b = all_pass(&via_g, 40, 10);
    outcome(
        a.pass && b.pass,
        format!(
            "K'/K = sqrt(n): {}; alpha = (G g)^-8: {}",
            a.detail, b.detail
        ),
    )
}

fn rediscovery() -> Outcome {
    let ctx = PrecisionContext::new(120).unwrap();
    let qs = [ctx.ratio(1, 10), ctx.ratio(3, 10)];
    let rel = rediscover_pq_relation(&qs, &ctx, None)
        .unwrap()
        .coefficients_i64();
    let exact = rel == Some(vec![1, -1, 8, -4]);
    // digits of sqrt(2), sqrt(3), sqrt(5) past the 60th place: independent pseudo-random values
    let random: Vec<_> = [2, 3, 5]
        .iter()
        .map(|&k| {
            let r = ctx.sqrt(&ctx.int(k)).unwrap();
            let shifted = &r * &ctx.ten_pow(60);
            &shifted - &ctx.big_int(&shifted.floor_to_bigint())
        })
        .collect();
    let control = find_relation(&random, &ctx, &BigInt::from(1_000_000))
        .unwrap()
        .found()
        .is_none();
    outcome(
        exact && control,
        format!("recovered {rel:?}; random control finds none: {control}"),
    )
}

fn denesting() -> Outcome {
    let corpus = builtin_corpus();
    let ctx = PrecisionContext::new(40).unwrap();
    let ids = ["id_denest_46", "id_fourth_power_46"];
    let rs: Vec<_> = ids
        .iter()
        .map(|id| verify_entry(corpus.iter().find(|e| e.id == *id).unwrap(), 40, &ctx))
        .collect();
    all_pass(&rs.iter().collect::<Vec<_>>(), 40, 2)
}

fn determinism() -> Outcome {
    let run = |format: &str| {
        Command::new(env!("CARGO_BIN_EXE_classinv"))
            .args(["verify", "--suite", "all", "--format", format])
            .env_remove("CLASSINV_DIGITS")
            .output()
            .unwrap()
    };
    let mut same = true;
    let mut sizes = Vec::new();
    for f in ["json", "csv", "text"] {
        let (a, b) = (run(f), run(f));
        same &= a.stdout == b.stdout && a.status.code() == Some(0) && b.status.code() == Some(0);
        sizes.push(format!("{f} {} bytes", a.stdout.len()));
    }
    let all = suite_checks(Suite::All, &builtin_corpus()).len();
    outcome(
        same,
        format!(
            "{all} reports, two runs byte-identical ({})",
            sizes.join(", ")
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            1,
            "P-Q residual suite",
            Duration::from_secs(5),
            weber_residuals,
        ),
        (2, "lemma suite", Duration::from_secs(5), lemma_suite),
        (
            3,
            "corpus reproduction",
            Duration::from_secs(60),
            corpus_reproduction,
        ),
        (4, "G pair engine", Duration::from_secs(10), g_pair_engine),
        (5, "a_m2 engine", Duration::from_secs(20), a_m2_engine),
        (6, "g_4n duplication", Duration::from_secs(5), duplication),
        (
            7,
            "singular moduli cross-check",
            Duration::from_secs(10),
            singular_moduli,
        ),
        (
            8,
            "relation rediscovery",
            Duration::from_secs(30),
            rediscovery,
        ),
        (9, "denesting identities", Duration::from_secs(1), denesting),
        (10, "determinism", Duration::from_secs(120), determinism),
    ];
    let mut failed = Vec::new();
    for (n, name, limit, check) in criteria {
        let t = Instant::now();
        let o = check();
        let took = t.elapsed();
        let pass = o.pass && took <= limit;
        println!(
            "criterion {n:>2} {}: {name}: {} [{:.2}s, limit {}s]",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
        if !pass {
            failed.push(n);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
