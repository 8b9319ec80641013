use std::path::Path;
use std::process::{Command, Output};

fn ballq(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ballq"))
        .args(args)
        .current_dir(dir)
        .env_remove("BALLQ_MAX_COSETS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn status_line(o: &Output) -> String {
    stdout(o).lines().find(|l| l.starts_with("status")).unwrap_or_default().to_string()
}

fn scratch() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

#[test]
fn chern_numbers_with_expectations() {
    let d = scratch();
    let o = ballq(
        d.path(),
        &["arr-chern", "examples/z2_bielliptic.pipeline", "--expect", "c1sq=9", "c2=3", "cusps=4"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("c1sq = 9\n"));
    assert_eq!(status_line(&o), "status = pass");
}

#[test]
fn porcelain_output() {
    let d = scratch();
    let o = ballq(d.path(), &["grp-abel", "examples/cusp_b_kernel.grp", "--porcelain"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "rank=2"), "{out}");
    assert!(out.lines().any(|l| l == "torsion=4"), "{out}");
    assert!(out.lines().all(|l| !l.contains(" = ")));
}

#[test]
fn failed_expectation_exits_one() {
    let d = scratch();
    let o = ballq(d.path(), &["arr-chern", "z2_abelian.pipeline", "--expect", "c1sq=17"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(status_line(&o), "status = fail");
    assert!(stderr(&o).contains("c1sq"));
}

#[test]
fn missing_input_exits_two() {
    let d = scratch();
    let o = ballq(d.path(), &["arr-chern", "missing.file"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "status = error\n");
    assert!(stderr(&o).starts_with("error: "));
}

#[test]
fn parse_errors_carry_location() {
    let d = scratch();
    std::fs::write(d.path().join("bad.grp"), "gens a ; rels a^2, b\n").unwrap();
    let o = ballq(d.path(), &["grp-abel", "bad.grp"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("bad.grp: line 1, column 20: unknown generator b"), "{err}");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let d = scratch();
    for args in [
        &["example", "z4-abelian"][..],
        &["arr-intersect", "z4_abelian.arr"],
        &["grp-index", "g_z4.grp"],
        &["rep-classify", "hprime.aff", "--porcelain"],
    ] {
        let a = ballq(d.path(), args);
        let b = ballq(d.path(), args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stderr, b.stderr, "{args:?}");
    }
}

#[test]
fn exit_status_agrees_with_report() {
    let d = scratch();
    std::fs::write(d.path().join("bad.grp"), "gens a ; rels a^\n").unwrap();
    for args in [
        &["example", "z2-abelian"][..],
        &["example", "no-such-example"],
        &["grp-abel", "bad.grp"],
        &["grp-index", "g_z4.grp", "--expect", "index=3"],
        &["rep-verify", "hprime.sub"],
    ] {
        let o = ballq(d.path(), args);
        let want = match status_line(&o).as_str() {
            "status = pass" => 0,
            "status = fail" => 1,
            "status = error" => 2,
            other => panic!("{args:?}: unexpected status line {other:?}"),
        };
        assert_eq!(o.status.code(), Some(want), "{args:?}");
    }
}

#[test]
fn coset_bound_is_an_input_error() {
    let d = scratch();
    let o = Command::new(env!("CARGO_BIN_EXE_ballq"))
        .args(["grp-index", "f1536.grp"])
        .current_dir(d.path())
        .env("BALLQ_MAX_COSETS", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("BALLQ_MAX_COSETS"));
}

#[test]
fn blowup_ledger_feeds_chern() {
    let d = scratch();
    let o = ballq(d.path(), &["arr-blowup", "z4_bielliptic.pipeline", "--write", "z4.ledger"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = ballq(d.path(), &["arr-chern", "z4.ledger", "--porcelain"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    for want in ["c1sq=18", "c2=6", "cusps=4", "bmy=equal"] {
        assert!(out.lines().any(|l| l == want), "{want} missing from\n{out}");
    }
}

#[test]
fn perturbed_action_fails_verification() {
    let d = scratch();
    let text = ballq_core::fixtures::get("hprime.aff").unwrap();
    let perturbed = text.replacen("1/2", "1/3", 1);
    assert_ne!(perturbed, text);
    std::fs::write(d.path().join("hprime.aff"), perturbed).unwrap();
    let o = ballq(d.path(), &["rep-verify", "hprime.aff"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("check.relators_hold = failed"));
}

#[test]
fn appendix_reports_missing_fixtures() {
    let d = scratch();
    let o = ballq(d.path(), &["example", "appendix"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing fixture rho_images.fix"));
}

#[test]
fn appendix_runs_on_supplied_fixtures() {
    let d = scratch();
    let o = ballq(
        d.path(),
        &["grp-kernel-abel", "gamma_picard.grp", "--onto", "f1536.grp", "--write-images", "rho_images.fix"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = ballq(d.path(), &["example", "appendix", "--fixture-dir", "."]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing fixture cusp_b.grp"));

    // a stand-in cusp subgroup: the pipeline runs to the end, and the cusp
    // count it finds is not the expected one
    let gamma = ballq_core::fixtures::get("gamma_picard.grp").unwrap();
    std::fs::write(d.path().join("cusp_b.grp"), format!("{} ;\nsub i\n", gamma.trim_end())).unwrap();
    let o = ballq(d.path(), &["example", "appendix", "--fixture-dir", ".", "--porcelain"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}");
    assert!(out.lines().any(|l| l == "check.kernel.invariants=ok"), "{out}");
    assert!(out.lines().any(|l| l == "cusps=768"), "{out}");
    assert!(out.lines().any(|l| l == "check.k2=failed"), "{out}");
}
