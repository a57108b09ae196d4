//! End-to-end runs of the compiled binary: exit-code protocol, JSON
//! shapes, determinism of the emitted bytes, and the --out/--expect
//! plumbing.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use liederiv::algebra::builders::pointwise;
use liederiv::corpus::{block5_instance, corrupted_instance, m2_instance, nil4_instance};
use liederiv::json::{AbBimoduleFile, AlgebraFile, BimoduleFile, TriangularFile};
use liederiv::{Matrix, Scalar};
use serde_json::{json, Value};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_liederiv")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is JSON: {e}\n{}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write_json(dir: &Path, name: &str, value: &impl serde::Serialize) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

/// Fixture paths for the five-dimensional block example.
struct Block5Files {
    algebra: PathBuf,
    module: PathBuf,
    p: PathBuf,
}

fn block5_files(dir: &Path) -> Block5Files {
    let inst = block5_instance();
    Block5Files {
        algebra: write_json(dir, "block5.json", &AlgebraFile::from_algebra(&inst.algebra)),
        module: write_json(
            dir,
            "block5_module.json",
            &BimoduleFile::from_bimodule(inst.module.as_ref().unwrap()),
        ),
        p: write_json(
            dir,
            "block5_p.json",
            &json!({ "vector": inst.idempotent.as_ref().unwrap().vector() }),
        ),
    }
}

fn m2_file(dir: &Path) -> PathBuf {
    write_json(
        dir,
        "m2.json",
        &AlgebraFile::from_algebra(&m2_instance().algebra),
    )
}

#[test]
fn corpus_dump_is_deterministic_and_complete() {
    let one = run(&["corpus"]);
    let two = run(&["corpus"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, two.stdout, "byte-identical across reruns");
    let doc = stdout_json(&one);
    assert_eq!(doc["format"], "liederiv/1");
    let names: Vec<&str> = doc["instances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["name"].as_str().unwrap())
        .collect();
    assert_eq!(names.len(), 9);
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted);
}

#[test]
fn validate_reports_violations_and_sets_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let good = m2_file(dir.path());
    let out = run(&["validate", "--algebra", good.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["algebra"]["valid"], true);

    let bad = write_json(
        dir.path(),
        "bad.json",
        &AlgebraFile::from_algebra(&corrupted_instance().algebra),
    );
    let out = run(&["validate", "--algebra", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let doc = stdout_json(&out);
    assert_eq!(doc["algebra"]["valid"], false);
    assert!(doc["algebra"]["violations"].as_u64().unwrap() > 0);

    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{ not json").unwrap();
    let out = run(&["validate", "--algebra", garbled.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout_json(&out)["error"]["code"], "bad-input");
}

#[test]
fn space_dimensions_come_out_exact() {
    let dir = tempfile::tempdir().unwrap();
    let m2 = m2_file(dir.path());
    let m2 = m2.to_str().unwrap();
    for (verb, dim) in [("center", 1), ("derivations", 3), ("lie-derivations", 4)] {
        let out = run(&[verb, "--algebra", m2]);
        assert_eq!(code(&out), 0, "{verb}");
        assert_eq!(stdout_json(&out)["dim"], dim, "{verb}");
    }
}

#[test]
fn proper_verb_distinguishes_the_three_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let a = m2_instance().algebra;
    let m2 = m2_file(dir.path());

    // Bracketing against e12 is an inner derivation, hence proper.
    let e12 = a.basis_vector(1);
    let ad = Matrix::from_fn(4, 4, |r, c| {
        let ej = a.basis_vector(c);
        let lhs = a.multiply(&e12, &ej);
        let rhs = a.multiply(&ej, &e12);
        &lhs[r] - &rhs[r]
    });
    let ad_file = write_json(dir.path(), "ad.json", &json!({ "matrix": ad }));
    let out = run(&[
        "proper",
        "--algebra",
        m2.to_str().unwrap(),
        "--map",
        ad_file.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["verdict"], "proper");
    assert!(doc["witness_D"].is_array());
    assert!(doc["witness_ell"].is_array());

    // The nilpotent shift is a Lie derivation with no decomposition.
    let nil4 = write_json(
        dir.path(),
        "nil4.json",
        &AlgebraFile::from_algebra(&nil4_instance().algebra),
    );
    let shift = Matrix::from_fn(4, 4, |r, c| {
        if (r, c) == (2, 1) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let shift_file = write_json(dir.path(), "shift.json", &json!({ "matrix": shift }));
    let out = run(&[
        "proper",
        "--algebra",
        nil4.to_str().unwrap(),
        "--map",
        shift_file.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["verdict"], "not-proper");

    // Maps that are not Lie derivations are input errors, not verdicts.
    let not_lie = Matrix::from_fn(4, 4, |r, c| {
        if (r, c) == (1, 0) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let not_lie_file = write_json(dir.path(), "notlie.json", &json!({ "matrix": not_lie }));
    let out = run(&[
        "proper",
        "--algebra",
        m2.to_str().unwrap(),
        "--map",
        not_lie_file.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert_eq!(
        stdout_json(&out)["error"]["code"],
        "input-not-lie-derivation"
    );
}

#[test]
fn ldp_exit_code_tracks_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let m2 = m2_file(dir.path());
    let out = run(&["ldp", "--algebra", m2.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["verdict"], true);

    let nil4 = write_json(
        dir.path(),
        "nil4.json",
        &AlgebraFile::from_algebra(&nil4_instance().algebra),
    );
    let out = run(&["ldp", "--algebra", nil4.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let doc = stdout_json(&out);
    assert_eq!(doc["verdict"], false);
    assert_eq!(doc["dims"]["lie_der"], 10);
    assert_eq!(doc["dims"]["sum"], 8);
}

#[test]
fn star_check_reports_holds_violated_and_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let files = block5_files(dir.path());
    let (a, m, p) = (
        files.algebra.to_str().unwrap(),
        files.module.to_str().unwrap(),
        files.p.to_str().unwrap(),
    );
    let out = run(&["star", "--algebra", a, "--module", m, "--p", p]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["holds"], true);

    let wrong = write_json(
        dir.path(),
        "wrong_p.json",
        &json!({ "vector": ["0", "1", "0", "0", "0"] }),
    );
    let out = run(&[
        "star",
        "--algebra",
        a,
        "--module",
        m,
        "--p",
        wrong.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let doc = stdout_json(&out);
    assert_eq!(doc["holds"], false);
    assert_eq!(doc["module_index"], 0);

    let trivial = write_json(
        dir.path(),
        "unit_p.json",
        &json!({ "vector": ["1", "1", "0", "1", "1"] }),
    );
    let out = run(&[
        "star",
        "--algebra",
        a,
        "--module",
        m,
        "--p",
        trivial.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout_json(&out)["error"]["code"], "trivial-idempotent");
}

#[test]
fn characterization_verb_emits_the_labeled_conditions() {
    let dir = tempfile::tempdir().unwrap();
    let files = block5_files(dir.path());
    // Identity on the module block, zero elsewhere: a derivation of the
    // total algebra, so the witness search must succeed.
    let delta = Matrix::from_fn(6, 6, |r, c| {
        if (r, c) == (5, 5) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let map = write_json(dir.path(), "delta.json", &json!({ "matrix": delta }));
    let out = run(&[
        "thm22",
        "--algebra",
        files.algebra.to_str().unwrap(),
        "--module",
        files.module.to_str().unwrap(),
        "--p",
        files.p.to_str().unwrap(),
        "--map",
        map.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["verdict"], "proper");
    let labels: Vec<&str> = doc["conditions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["2.2(i)", "2.2(ii)"]);
    for c in doc["conditions"].as_array().unwrap() {
        assert_eq!(c["status"], "holds");
    }
    assert!(doc["witness"]["ell"].is_array());
}

#[test]
fn sufficiency_verbs_conclude_guaranteed_on_the_flagship_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let files = block5_files(dir.path());
    let out = run(&[
        "thm24",
        "--algebra",
        files.algebra.to_str().unwrap(),
        "--module",
        files.module.to_str().unwrap(),
        "--p",
        files.p.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["conclusion"], "guaranteed");
    assert_eq!(doc["condition_I"]["label"], "2.4(I)");
    assert_eq!(doc["condition_II_i"]["label"], "2.4(II)(i)");
    assert_eq!(doc["condition_II_ii"]["label"], "2.4(II)(ii)");

    let q1 = pointwise(1);
    let tri = TriangularFile {
        format: None,
        a: AlgebraFile::from_algebra(&q1),
        x: AbBimoduleFile {
            dim: 1,
            left: vec![vec![vec![Scalar::one()]]],
            right: vec![vec![vec![Scalar::one()]]],
        },
        b: AlgebraFile::from_algebra(&q1),
    };
    let tri_file = write_json(dir.path(), "t2.json", &tri);
    let out = run(&[
        "corollary31",
        "--triangular",
        tri_file.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["conclusion"], "guaranteed");
    assert_eq!(doc["condition_I"]["label"], "3.1(I)");

    let out = run(&["triangular", "--triangular", tri_file.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["corner_dims"], json!([1, 1]));
    assert_eq!(doc["total"]["unit"].as_array().unwrap().len(), 3);
}

#[test]
fn extend_reports_the_assembled_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let files = block5_files(dir.path());
    let out = run(&[
        "extend",
        "--algebra",
        files.algebra.to_str().unwrap(),
        "--module",
        files.module.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["dims"]["base"], 5);
    assert_eq!(doc["dims"]["module"], 1);
    assert_eq!(doc["dims"]["total"], 6);
}

#[test]
fn out_file_receives_exactly_the_stdout_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let m2 = m2_file(dir.path());
    let direct = run(&["center", "--algebra", m2.to_str().unwrap()]);
    let out_path = dir.path().join("result.json");
    let filed = run(&[
        "center",
        "--algebra",
        m2.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&filed), 0);
    assert!(filed.stdout.is_empty());
    assert_eq!(std::fs::read(&out_path).unwrap(), direct.stdout);
}

#[test]
fn expect_comparison_gates_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let m2 = m2_file(dir.path());
    let good = write_json(dir.path(), "expect_good.json", &json!({ "verdict": true }));
    let out = run(&[
        "ldp",
        "--algebra",
        m2.to_str().unwrap(),
        "--expect",
        good.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);

    let bad = write_json(
        dir.path(),
        "expect_bad.json",
        &json!({ "dims": { "der": 99 } }),
    );
    let out = run(&[
        "ldp",
        "--algebra",
        m2.to_str().unwrap(),
        "--expect",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn version_tagged_inputs_from_the_future_are_refused() {
    let dir = tempfile::tempdir().unwrap();
    let mut value = serde_json::to_value(AlgebraFile::from_algebra(&m2_instance().algebra)).unwrap();
    value["format"] = json!("liederiv/999");
    let path = write_json(dir.path(), "future.json", &value);
    let out = run(&["center", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout_json(&out)["error"]["code"], "bad-input");
}

#[test]
fn unknown_families_fail_with_a_typed_error() {
    let out = run(&["corpus", "--family", "heisenberg(3)"]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout_json(&out)["error"]["code"], "unknown-family");
}

#[test]
fn campaign_over_a_generated_family_passes_cleanly() {
    let out = run(&[
        "campaign",
        "--family",
        "triangular(1,1,1)",
        "--seed",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["failed"], 0);
    assert!(doc["passed"].as_u64().unwrap() > 0);
    for entry in doc["entries"].as_array().unwrap() {
        assert_ne!(entry["status"], "fail");
    }
}

#[test]
fn campaign_suite_selection_restricts_the_rows() {
    let out = run(&["campaign", "--suite", "validate", "--seed", "0"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    for entry in doc["entries"].as_array().unwrap() {
        assert_eq!(entry["suite"], "validate");
    }

    let out = run(&["campaign", "--suite", "no-such-suite"]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout_json(&out)["error"]["code"], "bad-input");
}
