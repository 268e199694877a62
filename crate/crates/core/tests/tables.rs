use sdf_core::analysis::{analyze, AnalyzeRequest};
use sdf_core::harness::{embedded_library, reproduce_table, table_rows, ReproduceOptions, RowStatus};
use sdf_core::spec::build_from_text;

/// (table, pass, flagged) for every table that runs without `--deep`.
const EXPECTED: [(u8, usize, usize); 10] = [
    (1, 5, 0),
    (2, 18, 1),
    (3, 16, 0),
    (4, 30, 0),
    (5, 42, 1),
    (6, 54, 1),
    (7, 22, 0),
    (8, 13, 0),
    (10, 7, 0),
    (11, 9, 1),
];

#[test]
fn census_tables_reproduce() {
    let lib = embedded_library();
    for (id, pass, flagged) in EXPECTED {
        let report = reproduce_table(id, &lib, &ReproduceOptions::default(), &mut |_| {}).unwrap();
        let failing: Vec<_> = report
            .rows
            .iter()
            .filter(|r| matches!(r.status, RowStatus::Fail | RowStatus::Error))
            .collect();
        assert!(failing.is_empty(), "table {id}: {failing:#?}");
        assert_eq!(
            (report.summary.pass, report.summary.flagged),
            (pass, flagged),
            "table {id}"
        );
        assert_eq!(report.rows.len(), table_rows(id).unwrap().len());
    }
}

#[test]
fn deep_table_is_refused_without_deep() {
    let lib = embedded_library();
    let err = reproduce_table(9, &lib, &ReproduceOptions::default(), &mut |_| {}).unwrap_err();
    assert!(err.to_string().contains("deep"), "{err}");
}

#[test]
fn flagged_rows_carry_their_reason() {
    let flag = |id: u8, label: &str| {
        table_rows(id)
            .unwrap()
            .into_iter()
            .find(|r| r.label == label)
            .unwrap()
            .flag
            .unwrap()
    };
    assert!(flag(2, "M3").starts_with("duplicate:M1"));
    assert!(flag(6, "T6.18").starts_with("base-duplicate:M3"));
    assert!(flag(11, "L96_2").starts_with("seed-typo"));
}

#[test]
fn m3_is_printed_with_the_seeds_of_m1() {
    let lib = embedded_library();
    let m1 = lib.build("M1").unwrap();
    let m3 = lib.build("M3").unwrap();
    assert_eq!(m1.generator(), m3.generator());
}

const L96_2: &str = "[code L96_2]
construction = lift
base = C96
rA = (b1,{},z1,c1,b1,b1)
rB = (z2,c4,a1,z2,c3,z3)
";

#[test]
fn l96_2_printed_seed_is_not_self_dual_and_a3_fixes_it() {
    let lib = embedded_library();
    let build = |sym: &str| build_from_text(&L96_2.replace("{}", sym), Some("L96_2"), Some(&lib)).unwrap();
    let printed = build("a4");
    assert_eq!(printed.generator(), lib.build("L96_2").unwrap().generator());
    assert!(!printed.is_self_dual());

    let fixed = build("a3");
    assert!(fixed.is_self_dual());
    let image = fixed.binary_image().unwrap();
    let req = AnalyzeRequest {
        self_dual: true,
        params: true,
        expect_d: Some(16),
        expect_alpha: Some(36876),
        ..Default::default()
    };
    let a = analyze(&image, Some(true), &req).unwrap();
    assert!(a.ok(), "{:#?}", a.checks);
    assert_eq!(a.n, 96);
}
