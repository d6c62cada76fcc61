use classinv_core::hpreal::{agreement_digits, PrecisionContext};
use classinv_core::invariants::{a_product, class_g, InvariantIndex};
use classinv_core::radicals::*;
use classinv_core::Error;
use proptest::prelude::*;

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

fn idx(n: u64) -> InvariantIndex {
    InvariantIndex::integer(n).unwrap()
}

#[test]
fn parse_shapes() {
    assert_eq!(
        parse_radical("sqrt(2)").unwrap(),
        RadicalExpr::sqrt(RadicalExpr::int(2))
    );
    assert_eq!(
        parse_radical("root(2, 3)").unwrap(),
        RadicalExpr::root(RadicalExpr::int(2), 3)
    );
    let a22 = parse_radical("2^(-7/8)*(sqrt(2)+1)^(1/2)").unwrap();
    match &a22 {
        RadicalExpr::Mul(l, r) => {
            assert_eq!(**l, RadicalExpr::pow(RadicalExpr::int(2), -7, 8));
            assert!(matches!(**r, RadicalExpr::Pow(_, 1, 2)));
        }
        other => panic!("{other:?}"),
    }
    let g14 = parse_radical("(3+sqrt(7))/sqrt(2)").unwrap();
    assert!(matches!(g14, RadicalExpr::Div(..)));
    assert_eq!(g14.unparse(), "(3+sqrt(7))/sqrt(2)");
}

#[test]
fn syntax_errors_carry_positions() {
    for (text, pos) in [
        ("2+", 2),
        ("sqrt 2", 5),
        ("2^(1/0)", 5),
        ("(1+2", 4),
        ("cbrt(8)", 0),
        ("2 3", 2),
        ("2^(1/2", 6),
    ] {
        match parse_radical(text) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, pos, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn evaluation_examples() {
    let c = ctx(60);
    assert_eq!(
        parse_radical("sqrt(4)").unwrap().eval(&c).unwrap(),
        c.int(2)
    );
    assert_eq!(
        parse_radical("root(0-8,3)").unwrap().eval(&c).unwrap(),
        c.int(-2)
    );
    assert_eq!(
        parse_radical("(0-2)^(2/1)").unwrap().eval(&c).unwrap(),
        c.int(4)
    );
    let a22 = parse_radical("1/2^(7/8)*(sqrt(2)+1)^(1/2)")
        .unwrap()
        .eval(&c)
        .unwrap();
    assert!(format!("{a22:.20}").starts_with("0.84720126674689146"));
    assert!(agreement_digits(&a22, &a_product(idx(2), idx(2), &c).unwrap()) > 55.0);
    let g46 = parse_radical("sqrt((3+sqrt(2)+sqrt(7+6*sqrt(2)))/2)")
        .unwrap()
        .eval(&c)
        .unwrap();
    assert!(agreement_digits(&g46, &class_g(idx(46), &c).unwrap()) > 55.0);
}

#[test]
fn even_root_of_negative_names_the_subexpression() {
    let c = ctx(20);
    let e = parse_radical("1+sqrt(2-3)*5").unwrap();
    match e.eval(&c) {
        Err(Error::Domain(msg)) => assert!(msg.contains("sqrt(2-3)"), "{msg}"),
        other => panic!("{other:?}"),
    }
    assert!(parse_radical("(2-3)^(1/4)").unwrap().eval(&c).is_err());
    assert!(parse_radical("1/(2-2)").unwrap().eval(&c).is_err());
}

#[test]
fn denesting_identities_at_40_digits() {
    let c = ctx(60);
    let pairs = [
        (
            "sqrt(14004792+9902880*sqrt(2))",
            "552*sqrt(23)+390*sqrt(46)",
        ),
        (
            "26+18*sqrt(2)+sqrt(1323+936*sqrt(2))",
            "(sqrt((3*sqrt(2)+8)/4)+sqrt((3*sqrt(2)+4)/4))^(4/1)",
        ),
    ];
    for (l, r) in pairs {
        let x = parse_radical(l).unwrap().eval(&c).unwrap();
        let y = parse_radical(r).unwrap().eval(&c).unwrap();
        let rep = assert_equal(&x, &y, 40);
        assert!(rep.pass && rep.digits_agreed >= 40, "{rep:?}");
    }
    let one = c.int(1);
    let rep = assert_equal(&one, &one, 40);
    assert!(rep.pass);
    assert_eq!(rep.residual, "0");
    let rep = assert_equal(&one, &c.ratio(1001, 1000), 40);
    assert!(!rep.pass);
    assert_eq!(rep.digits_agreed, 3);
}

#[test]
fn builtin_corpus_shape() {
    let corpus = builtin_corpus();
    let count = |k: EntryKind| {
        corpus
            .iter()
            .filter(|e| e.kind == k && e.flag != EntryFlag::Corrected)
            .count()
    };
    assert_eq!(count(EntryKind::UpperG), 10);
    assert_eq!(count(EntryKind::LowerG), 11);
    assert_eq!(count(EntryKind::Alpha), 10);
    assert_eq!(count(EntryKind::AM2), 15);
    let flagged: Vec<_> = corpus
        .iter()
        .filter(|e| e.flag == EntryFlag::Erratum)
        .map(|e| e.id.as_str())
        .collect();
    assert_eq!(flagged, ["alpha_142", "a_71_2"]);
    assert_eq!(select_suite(&corpus, "thm42").len(), 9);
    assert_eq!(select_suite(&corpus, "thm44").len(), 10);
    assert_eq!(select_suite(&corpus, "thm45").len(), 15);
    for e in &corpus {
        if let EntryExpression::Value(x) = &e.expression {
            let back = parse_radical(&x.unparse()).unwrap();
            assert_eq!(&back, x, "{}", e.id);
        }
    }
}

#[test]
fn corpus_reproduces_direct_evaluation() {
    let c = ctx(80);
    let corpus = builtin_corpus();
    let reports = run_corpus(&corpus, "all", 40, &c);
    assert_eq!(reports.len(), corpus.len());
    for (r, e) in reports
        .iter()
        .map(|r| (r, corpus.iter().find(|e| e.id == r.id).unwrap()))
    {
        match e.flag {
            EntryFlag::Erratum => {
                assert!(!r.pass, "{} unexpectedly passes", r.id);
                assert!(r.notes.contains("flagged"));
            }
            _ => assert!(r.pass && r.digits_agreed >= 40, "{r:?}"),
        }
    }
    let a71 = reports.iter().find(|r| r.id == "a_71_2").unwrap();
    assert!(a71.digits_agreed < 2);
    let alpha142 = reports.iter().find(|r| r.id == "alpha_142").unwrap();
    assert!(alpha142.notes.contains("not positive"));
}

#[test]
fn corpus_values_are_stable_under_widening() {
    let c = ctx(40);
    for e in builtin_corpus()
        .iter()
        .filter(|e| e.flag != EntryFlag::Erratum)
    {
        if let EntryExpression::Value(x) = &e.expression {
            let lo = x.eval(&c).unwrap();
            let hi = x.eval(&c.widened(20)).unwrap();
            assert!(agreement_digits(&lo, &hi) >= 38.0, "{}", e.id);
        }
    }
}

fn arb_expr() -> impl Strategy<Value = RadicalExpr> {
    let leaf = (1u64..1000).prop_map(RadicalExpr::int);
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| RadicalExpr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| RadicalExpr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| RadicalExpr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| RadicalExpr::Div(Box::new(a), Box::new(b))),
            (inner, -9i64..10, 1u64..9).prop_map(|(a, p, r)| RadicalExpr::pow(a, p, r)),
        ]
    })
}

proptest! {
    #[test]
    fn unparse_parse_is_a_fixed_point(e in arb_expr()) {
        let text = e.unparse();
        let back = parse_radical(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.unparse(), text);
    }
}
