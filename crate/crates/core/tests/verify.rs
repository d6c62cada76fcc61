use classinv_core::radicals::builtin_corpus;
use classinv_core::verify::*;

#[test]
fn every_suite_passes_at_60_digits() {
    let corpus = builtin_corpus();
    for suite in Suite::EACH {
        let t = std::time::Instant::now();
        let reports = run_suite(suite, 60, &corpus).unwrap();
        for r in &reports {
            if !r.pass {
                println!("{suite}: {r:?}");
            }
            assert!(r.pass || is_flagged_failure(r, &corpus), "{r:?}");
        }
        println!("{suite}: {} reports in {:.1?}", reports.len(), t.elapsed());
    }
}

#[test]
fn suite_sizes_and_order() {
    let corpus = builtin_corpus();
    let count = |s: Suite| suite_checks(s, &corpus).len();
    assert_eq!(count(Suite::Thm31), 20);
    assert_eq!(count(Suite::Thm45), 15);
    assert_eq!(count(Suite::Thm42), 9);
    let all = suite_checks(Suite::All, &corpus);
    let each: usize = Suite::EACH.into_iter().map(count).sum();
    // corrected companions only appear in the full run
    assert_eq!(all.len(), each + 2);
    let mut ids: Vec<_> = all.iter().map(|c| c.id.as_str()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), all.len());
}

#[test]
fn corrected_forms_pass() {
    let corpus = builtin_corpus();
    let all = suite_checks(Suite::All, &corpus);
    for id in ["alpha_142_corrected", "a_71_2_corrected"] {
        let r = all.iter().find(|c| c.id == id).unwrap().run(60);
        assert!(r.pass, "{r:?}");
        assert!(r.notes.starts_with("corrected form of"));
    }
}

#[test]
fn low_digits_are_a_configuration_error() {
    assert!(run_suite(Suite::Thm31, 9, &builtin_corpus()).is_err());
    assert!("thm46".parse::<Suite>().is_err());
    assert_eq!("thm44".parse::<Suite>().unwrap(), Suite::Thm44);
}
