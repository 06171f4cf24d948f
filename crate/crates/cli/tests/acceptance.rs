//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Everything here is exact arithmetic; "tolerance" is equality. The corpus
//! and its oracle-produced fixtures live in `corpus/` at the workspace root.

use bicomplex::cohomology::suites::{geometric_suite, GateError};
use bicomplex::cohomology::{Engine, InvariantTable};
use bicomplex::lemma::degrees::degree_conditions;
use bicomplex::lemma::named::{balanced_example, sgg, surface_criterion};
use bicomplex::lemma::{classify_bidegree, regularity};
use bicomplex::lie::{parse, LieModel, ParamAssignment};
use bicomplex::report::{analyze_file, CORPUS_ENTRIES};
use bicomplex::verify::{
    check_base_change_invariance, check_direct_sum_additivity, run_fuzz, theorem_battery,
};
use bicomplex::{oracle, random};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load_model(name: &str) -> LieModel {
    let text = std::fs::read_to_string(corpus_dir().join(name)).unwrap();
    let se = parse(&text).unwrap();
    LieModel::build(&se, &ParamAssignment::new()).unwrap()
}

fn binomial(n: i64, k: i64) -> usize {
    if k < 0 || k > n {
        return 0;
    }
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc as usize
}

#[test]
fn criterion_1_torus_suite() {
    let start = Instant::now();
    for (name, n) in [("torus1.se", 1i64), ("torus2.se", 2), ("torus3.se", 3)] {
        let model = load_model(name);
        let engine = Engine::new(&model.complex).unwrap();
        for p in 0..=n as i32 {
            for q in 0..=n as i32 {
                let g = engine.groups(p, q);
                let expected = binomial(n, p as i64) * binomial(n, q as i64);
                assert_eq!(g.h_dbar.dim(), expected, "{name} h_dbar at ({p},{q})");
                assert_eq!(g.h_del.dim(), expected, "{name} h_del at ({p},{q})");
                assert_eq!(g.h_bc.dim(), expected, "{name} h_bc at ({p},{q})");
                assert_eq!(g.h_a.dim(), expected, "{name} h_a at ({p},{q})");
                for (label, sq) in [
                    ("a", &g.a),
                    ("b", &g.b),
                    ("c", &g.c),
                    ("d", &g.d),
                    ("e", &g.e),
                    ("f", &g.f),
                ] {
                    assert_eq!(sq.dim(), 0, "{name} {label} at ({p},{q})");
                }
            }
        }
        assert!(regularity(&engine).regular, "{name} must be regular");
        let (k_min, k_max) = engine.total.k_range();
        for k in k_min..=k_max {
            let (flags, findings) = degree_conditions(&engine, k);
            assert!(findings.is_empty() && flags.holds(), "{name} degree {k}");
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "torus suite took {elapsed:?} (limit 1 s)"
    );
    println!("[PASS] criterion 1: torus suite, binomial tables, regular, all degree conditions ({elapsed:?})");
}

#[test]
fn criterion_2_iwasawa_fixture_suite() {
    let start = Instant::now();
    let model = load_model("iwasawa.se");
    let engine = Engine::new(&model.complex).unwrap();

    let fixture: InvariantTable = serde_json::from_str(
        &std::fs::read_to_string(corpus_dir().join("fixtures/iwasawa.se.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(
        engine.table(),
        fixture,
        "engine table must match the committed fixture"
    );
    assert_eq!(
        oracle::table(&model.complex),
        fixture,
        "oracle must reproduce its own fixture"
    );

    let g = engine.groups(2, 3);
    assert_eq!(g.a.dim(), 0, "weak at (2,3)");
    assert_eq!(g.d.dim(), 0, "dual-mild at (2,3)");
    assert!(g.b.dim() >= 1, "not mild at (2,3)");
    let (flags, findings) = classify_bidegree(&engine, 2, 3);
    assert!(findings.is_empty());
    assert!(flags.weak && flags.dual_mild && !flags.mild);

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "iwasawa suite took {elapsed:?} (limit 10 s)"
    );
    println!("[PASS] criterion 2: iwasawa fixtures match, (2,3) is weak+dual-mild, not mild ({elapsed:?})");
}

#[test]
fn criterion_3_balanced_example() {
    let start = Instant::now();
    let model = load_model("sl2c.se");
    let report = balanced_example(&model).unwrap();
    assert!(report.d_omega_sq_zero, "d(omega^2) must vanish");
    assert!(
        report.primitive_matches,
        "omega^2 must equal d of the displayed primitive exactly"
    );
    assert!(report.degrees_ok, "primitive is a 3-form, omega^2 a 4-form");
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "balanced example took {elapsed:?} (limit 5 s)"
    );
    println!("[PASS] criterion 3: sl2c balanced identities hold exactly ({elapsed:?})");
}

#[test]
fn criterion_4_theorem_suites() {
    let start = Instant::now();

    // Corpus entries first.
    for name in CORPUS_ENTRIES {
        let path = corpus_dir().join(name);
        let findings = if name.ends_with(".se") {
            let model = {
                let text = std::fs::read_to_string(&path).unwrap();
                LieModel::build(&parse(&text).unwrap(), &ParamAssignment::new()).unwrap()
            };
            theorem_battery(&model.complex, Some(&model.real))
        } else {
            let dc = bicomplex::dcx::parse_dcx(&std::fs::read_to_string(&path).unwrap()).unwrap();
            theorem_battery(&dc, None)
        };
        assert!(findings.is_empty(), "{name}: {findings:#?}");
    }

    // 200 fuzz instances at budget 40.
    let summary = run_fuzz(4242, 200, 40);
    assert_eq!(summary.count, 200);
    assert!(
        summary.failures.is_empty(),
        "fuzz failures: {:#?}",
        summary.failures.first().map(|f| &f.findings)
    );

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "theorem suites took {elapsed:?} (limit 120 s)"
    );
    println!("[PASS] criterion 4: sequences, shift isos, identities, degree agreement, cone equivalences on corpus + 200 fuzz instances ({elapsed:?})");
}

#[test]
fn criterion_5_invariance_and_additivity() {
    let start = Instant::now();
    let mut prev = random::random_complex(999, 16);
    for i in 0..50u64 {
        let dc = random::random_complex(7000 + i, 16);
        let findings = check_base_change_invariance(&dc, 0xbee5 + i);
        assert!(findings.is_empty(), "base change {i}: {findings:#?}");
        let findings = check_direct_sum_additivity(&dc, &prev);
        assert!(findings.is_empty(), "direct sum {i}: {findings:#?}");
        prev = dc;
    }
    let elapsed = start.elapsed();
    println!("[PASS] criterion 5: 50 base changes leave the table invariant, 50 direct sums add it ({elapsed:?})");
}

#[test]
fn criterion_6_geometric_suite_and_gates() {
    let start = Instant::now();
    for name in [
        "torus1.se",
        "torus2.se",
        "torus3.se",
        "iwasawa.se",
        "iwasawa_family.se",
        "kodaira_thurston.se",
        "sl2c.se",
    ] {
        let model = load_model(name);
        assert!(model.unimodular, "{name} should be unimodular");
        let engine = Engine::new(&model.complex).unwrap();
        let findings = geometric_suite(&model, &engine).unwrap();
        assert!(findings.is_empty(), "{name}: {findings:#?}");
    }

    // Refusal on the non-unimodular fixture.
    let aff = load_model("nonunimodular.se");
    let engine = Engine::new(&aff.complex).unwrap();
    assert_eq!(
        geometric_suite(&aff, &engine).unwrap_err(),
        GateError::NotUnimodular
    );

    // Abstract inputs cannot even reach the suite; the pipeline records the
    // refusal.
    let analysis = analyze_file(
        &corpus_dir().join("square.dcx"),
        &ParamAssignment::new(),
        None,
    )
    .unwrap();
    assert_eq!(
        analysis.report.geometric_suite.as_deref(),
        Some("skipped: abstract input")
    );

    let elapsed = start.elapsed();
    println!("[PASS] criterion 6: geometric suite clean on unimodular entries, refuses non-unimodular and abstract inputs ({elapsed:?})");
}

#[test]
fn criterion_7_sgg_and_surface_consistency() {
    let start = Instant::now();
    for name in CORPUS_ENTRIES {
        let path = corpus_dir().join(name);
        if name.ends_with(".se") {
            let model = load_model(name);
            let engine = Engine::new(&model.complex).unwrap();
            let (r, findings) = sgg(&engine);
            assert!(findings.is_empty(), "{name}: {findings:#?}");
            assert!(
                r.by_tilde_b == r.by_h01 && r.by_h01 == r.by_rank_t,
                "{name}: sGG characterizations disagree: {r:?}"
            );
        } else {
            let dc = bicomplex::dcx::parse_dcx(&std::fs::read_to_string(&path).unwrap()).unwrap();
            let engine = Engine::new(&dc).unwrap();
            if bicomplex::lemma::named::square_range_n(&engine).is_some() {
                let (r, findings) = sgg(&engine);
                assert!(findings.is_empty(), "{name}: {findings:#?}");
                assert!(
                    r.by_tilde_b == r.by_h01 && r.by_h01 == r.by_rank_t,
                    "{name}: sGG characterizations disagree: {r:?}"
                );
            }
        }
    }

    for name in ["torus2.se", "kodaira_thurston.se"] {
        let model = load_model(name);
        let engine = Engine::new(&model.complex).unwrap();
        let s = surface_criterion(&engine).unwrap();
        assert!(
            s.agree,
            "{name}: surface conditions must agree mutually: {s:?}"
        );
    }

    let elapsed = start.elapsed();
    println!("[PASS] criterion 7: sGG three ways consistent on the corpus; surface conditions agree for n = 2 ({elapsed:?})");
}

#[test]
fn criterion_8_determinism() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_bicomplex");
    let dir = corpus_dir();
    let run = || {
        let out = Command::new(bin)
            .args(["corpus", "run", "--json", "--dir"])
            .arg(&dir)
            .output()
            .expect("corpus run");
        assert!(
            out.status.success(),
            "corpus run failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "two corpus runs must be byte-identical");

    let analyze = || {
        let out = Command::new(bin)
            .args(["analyze"])
            .arg(dir.join("iwasawa_family.se"))
            .args(["--param", "t=1/2", "--json"])
            .output()
            .expect("analyze");
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(
        analyze(),
        analyze(),
        "two analyze runs must be byte-identical"
    );

    let elapsed = start.elapsed();
    println!("[PASS] criterion 8: corpus run --json and analyze --json are byte-deterministic ({elapsed:?})");
}
