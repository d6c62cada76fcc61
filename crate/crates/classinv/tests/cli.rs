use std::fs;

use assert_cmd::Command;
use classinv_core::hpreal::{format_significant, PrecisionContext};
use classinv_core::radicals::parse_radical;

fn classinv() -> Command {
    let mut c = Command::cargo_bin("classinv").unwrap();
    c.env_remove("CLASSINV_DIGITS");
    c
}

fn stdout(c: &mut Command) -> String {
    let out = c.output().unwrap();
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn eval_matches_closed_form() {
    let g46 = "1/2^(1/8)*(78*sqrt(2)+23*sqrt(23))^(1/16)*((5+sqrt(23))/sqrt(2))^(1/8)\
               *(sqrt((3*sqrt(2)+8)/4)+sqrt((3*sqrt(2)+4)/4))^(1/2)*(sqrt((6*sqrt(2)+11)/4)-sqrt((6*sqrt(2)+7)/4))^(1/4)";
    let ctx = PrecisionContext::new(80).unwrap();
    let want = format_significant(&parse_radical(g46).unwrap().eval(&ctx).unwrap(), 50);
    let got = stdout(classinv().args(["eval", "--kind", "G", "--n", "46", "--digits", "50"]));
    assert_eq!(got.trim(), want);
}

#[test]
fn eval_trivial_values() {
    classinv()
        .args([
            "eval", "--kind", "a", "--m", "1", "--n", "1", "--digits", "20",
        ])
        .assert()
        .success()
        .stdout("1.0000000000000000000\n");
    let half = format!("0.5{}\n", "0".repeat(29));
    classinv()
        .args(["eval", "--kind", "alpha", "--n", "1", "--digits", "30"])
        .assert()
        .success()
        .stdout(half);
    classinv()
        .args(["eval", "--kind", "K", "--k", "0", "--digits", "12"])
        .assert()
        .stdout("1.57079632679\n");
}

#[test]
fn digits_come_from_flag_then_environment() {
    let digits = |s: &str| s.trim().trim_start_matches("0.").len();
    let from_env = stdout(
        classinv()
            .env("CLASSINV_DIGITS", "25")
            .args(["eval", "--kind", "alpha", "--n", "1"]),
    );
    assert_eq!(digits(&from_env), 25);
    let flag = stdout(
        classinv()
            .env("CLASSINV_DIGITS", "25")
            .args(["eval", "--kind", "alpha", "--n", "1", "--digits", "15"]),
    );
    assert_eq!(digits(&flag), 15);
    let default = stdout(classinv().args(["eval", "--kind", "alpha", "--n", "1"]));
    assert_eq!(digits(&default), 60);
    classinv()
        .env("CLASSINV_DIGITS", "many")
        .args(["eval", "--kind", "G", "--n", "1"])
        .assert()
        .code(2);
}

#[test]
fn exit_codes() {
    classinv()
        .args(["eval", "--kind", "phi", "--q", "0.9995"])
        .assert()
        .code(2);
    classinv()
        .args(["eval", "--kind", "G", "--n", "-3"])
        .assert()
        .code(2);
    classinv()
        .args(["verify", "--suite", "thm46"])
        .assert()
        .code(2);
    classinv()
        .args(["verify", "--suite", "thm31", "--digits", "9"])
        .assert()
        .code(2);
    classinv()
        .args([
            "discover",
            "--values",
            "1,pi,sqrt3",
            "--max-norm",
            "1000000",
            "--digits",
            "10",
        ])
        .assert()
        .code(3);
    classinv()
        .args([
            "verify",
            "--suite",
            "thm31",
            "--corpus",
            "/nonexistent/corpus.txt",
        ])
        .assert()
        .code(4);
    classinv()
        .args(["table", "--kind", "G", "--out", "/nonexistent/dir/t.csv"])
        .assert()
        .code(4);
}

#[test]
fn corpus_override() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    fs::write(&good, "G_9 | G | 9 | ((1+sqrt(3))/sqrt(2))^(1/3) | thm42\nG_25 | G | 25 | (1+sqrt(5))/2 | thm42\n").unwrap();
    classinv()
        .args(["verify", "--suite", "thm42", "--corpus"])
        .arg(&good)
        .assert()
        .success();

    let wrong = dir.path().join("wrong.txt");
    fs::write(
        &wrong,
        "G_25 | G | 25 | (1+sqrt(5))/2 | thm42\nG_9 | G | 9 | 2 | thm42\n",
    )
    .unwrap();
    let out = classinv()
        .args(["verify", "--suite", "thm42", "--corpus"])
        .arg(&wrong)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("PASS thm42   G_25") && text.contains("FAIL thm42   G_9"),
        "{text}"
    );

    let broken = dir.path().join("broken.txt");
    fs::write(&broken, "G_1 | G | 1 | sqrt(2 | thm42\n").unwrap();
    classinv()
        .args(["table", "--corpus"])
        .arg(&broken)
        .assert()
        .code(2);
}

#[test]
fn flagged_entries_do_not_fail_the_run() {
    let text = stdout(classinv().args(["verify", "--suite", "thm44"]));
    assert!(text.contains("FAIL thm44   alpha_142"));
    assert!(text.ends_with("0 failed, 1 flagged\n"), "{text}");
    classinv()
        .args(["verify", "--suite", "thm44"])
        .assert()
        .success();
}

#[test]
fn json_reports_have_fixed_fields() {
    let text = stdout(classinv().args(["verify", "--suite", "thm31", "--format", "json"]));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 20);
    let fields = [
        "\"id\"",
        "\"anchor\"",
        "\"digits_requested\"",
        "\"digits_agreed\"",
        "\"residual\"",
        "\"pass\"",
        "\"notes\"",
    ];
    let first = &text[..text.find('}').unwrap()];
    let pos: Vec<usize> = fields.iter().map(|f| first.find(f).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    assert!(rows
        .iter()
        .all(|r| r["pass"] == true && r["anchor"] == "thm31"));
}

#[test]
fn csv_reports_and_tables() {
    let text = stdout(classinv().args(["verify", "--suite", "thm32", "--format", "csv"]));
    assert!(text.starts_with("id,anchor,digits_requested,digits_agreed,residual,pass,notes\n"));
    assert_eq!(text.lines().count(), 12);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    classinv()
        .args(["table", "--kind", "g", "--format", "csv", "--out"])
        .arg(&path)
        .assert()
        .success()
        .stdout("");
    let mut r = csv::Reader::from_path(&path).unwrap();
    let ids: Vec<String> = r.records().map(|x| x.unwrap()[0].to_string()).collect();
    assert_eq!(ids.len(), 11);
    assert_eq!(ids[0], "g_46");
    assert_eq!(ids.last().unwrap(), "g_760");

    let count = |kind: &str| {
        let t = stdout(classinv().args(["table", "--kind", kind, "--format", "json"]));
        serde_json::from_str::<Vec<serde_json::Value>>(&t)
            .unwrap()
            .len()
    };
    assert_eq!(count("alpha"), 10);
    assert_eq!(count("a"), 15);
    assert_eq!(count("G"), 10);
}

#[test]
fn discover_commands() {
    classinv()
        .args(["discover", "--pq", "--digits", "100"])
        .assert()
        .success()
        .stdout("(1, -1, 8, -4)\n");
    classinv()
        .args(["discover", "--minpoly", "sqrt2", "--max-degree", "2"])
        .assert()
        .stdout("x^2 - 2\n");
    classinv()
        .args([
            "discover",
            "--minpoly",
            "h4",
            "--n",
            "23",
            "--max-degree",
            "4",
        ])
        .assert()
        .stdout("x^4 - 208*x^3 + 456*x^2 - 832*x + 16\n");
    let none = stdout(classinv().args(["discover", "--values", "1,pi"]));
    assert!(
        none.starts_with("none (no relation of norm below "),
        "{none}"
    );
    classinv()
        .args(["discover", "--values", "1,2", "--max-norm", "4"])
        .assert()
        .stdout("(2, -1)\n");
}
