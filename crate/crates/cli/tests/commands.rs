use std::path::PathBuf;
use std::process::Command;

use mf_core::{MFMorphism, MatrixFactorization};
use mfcat::corpus::elliptic_3x3;
use mfcat::json::{mf_to_json, morphism_to_json, to_canonical_string};
use ring_core::{parse_series, RingCtx};
use serde_json::Value;
use stabilize::stabilize_residue_field;

fn mfcat(args: &[&str], env: &[(&str, &str)]) -> (String, String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mfcat"));
    cmd.args(args).env_remove("MFCAT_NMAX");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn write(name: &str, contents: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn hh_of_x3() {
    let (out, _, code) = mfcat(&["hh", "--inline", "x^3"], &[]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v, json(r#"{"hh_even":2,"hh_odd":0,"milnor":2,"tyurina":2,"hh_homology_parity":1,"hp":2}"#));
    let (table, _, _) = mfcat(&["hh", "--inline", "x^2*y + y^3", "--table"], &[]);
    assert!(table.contains("milnor 4"), "{table}");
}

#[test]
fn stabilize_x2_is_rank_one() {
    let (out, _, code) = mfcat(&["stabilize", "--inline", "x^2"], &[]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["rank"], 1);
    assert_eq!(v["phi"], json(r#"[[[[[1],"1"]]]]"#));
    assert_eq!(v["psi"], json(r#"[[[[[1],"1"]]]]"#));
    let (out, _, _) = mfcat(&["stabilize", "--inline", "x^2*y + y^3", "--koszul"], &[]);
    assert_eq!(json(&out)["witnesses"], json(r#"[[[[1,1],"1"]],[[[0,2],"1"]]]"#));
}

#[test]
fn minimal_model_recovers_the_cubic_coefficient() {
    let (out, _, code) = mfcat(&["minimal-model", "--inline", "x^2 + x^3", "--max-arity", "3"], &[]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["basis"], json(r#"["1","dbar1"]"#));
    let m3 = v["products"].as_array().unwrap().iter().find(|p| p["arity"] == 3 && p["args"] == json("[1,1,1]")).unwrap();
    let c = m3["value"][0].as_str().unwrap();
    assert!(c == "1" || c == "-1", "{c}");
    let (table, _, _) = mfcat(&["minimal-model", "--inline", "x^2", "--max-arity", "2", "--table"], &[]);
    assert!(table.contains("m_2(dbar1, dbar1) = -1*1"), "{table}");
}

#[test]
fn verify_reports_and_exit_codes() {
    let good = write("elliptic.json", &to_canonical_string(&mf_to_json(&elliptic_3x3().unwrap())));
    let (out, _, code) = mfcat(&["verify", &good], &[]);
    assert_eq!(code, 0);
    assert!(out.contains("rank = 3") && out.ends_with("OK\n"), "{out}");

    let mut v = mf_to_json(&elliptic_3x3().unwrap());
    v["psi"][1][2] = json(r#"[[[1,0,0],"7"]]"#);
    let bad = write("elliptic-bad.json", &v.to_string());
    let (out, _, code) = mfcat(&["verify", &bad], &[]);
    assert_eq!(code, 4);
    assert!(out.contains("FAIL") && out.contains("at ("), "{out}");
    let (out, _, _) = mfcat(&["verify", &bad, "--json"], &[]);
    assert_eq!(json(&out)["ok"], false);

    let c = RingCtx::rational(&["x"]);
    let trivial = MatrixFactorization::trivial(&parse_series(&c, "x^3").unwrap());
    let triv = write("trivial.json", &mf_to_json(&trivial).to_string());
    assert_eq!(mfcat(&["verify", &triv], &[]).2, 0);
}

#[test]
fn error_exit_codes() {
    assert_eq!(mfcat(&["hh", "--inline", "x^^2"], &[]).2, 2);
    assert_eq!(mfcat(&["verify", "/nonexistent.json"], &[]).2, 2);
    assert_eq!(mfcat(&["hh"], &[]).2, 2);
    assert_eq!(mfcat(&["hh", "--inline", "x + x^2"], &[]).2, 3);
    assert_eq!(mfcat(&["minimal-model", "--inline", "x^2", "--max-arity", "1"], &[]).2, 3);
    let (_, err, code) = mfcat(&["hh", "--inline", "x^2*y"], &[("MFCAT_NMAX", "8")]);
    assert_eq!(code, 5, "{err}");
    assert_eq!(mfcat(&["hh", "--inline", "x^3"], &[("MFCAT_NMAX", "lots")]).2, 2);
}

#[test]
fn morphism_commands() {
    let c = RingCtx::rational(&["x"]);
    let k = stabilize_residue_field(&parse_series(&c, "x^3").unwrap()).unwrap();
    let id = write("id.json", &morphism_to_json(&MFMorphism::identity(&k)).to_string());
    assert_eq!(json(&mfcat(&["quasi-iso", &id], &[]).0)["quasi_iso"], true);
    let zero = write("zero.json", &morphism_to_json(&MFMorphism::zero(&k, &k).unwrap()).to_string());
    assert_eq!(json(&mfcat(&["quasi-iso", &zero], &[]).0)["quasi_iso"], false);
    let open = MFMorphism::odd(&k, &k, k.phi(), k.phi()).unwrap();
    assert!(!open.is_closed());
    let open = write("open.json", &morphism_to_json(&open).to_string());
    assert_eq!(mfcat(&["quasi-iso", &open], &[]).2, 3);
}

#[test]
fn cohomology_and_transform() {
    let c = RingCtx::rational(&["x"]);
    let k = stabilize_residue_field(&parse_series(&c, "x^3").unwrap()).unwrap();
    let f = write("kstab-x3.json", &mf_to_json(&k).to_string());
    assert_eq!(json(&mfcat(&["cohomology", &f], &[]).0), json(r#"{"even":1,"odd":1}"#));
    let v = json(&mfcat(&["cohomology", &f, "--hom", &f, "--over-r"], &[]).0);
    assert_eq!((v["even"].as_u64(), v["odd"].as_u64()), (Some(1), Some(1)));
    let v = json(&mfcat(&["transform", &f], &[]).0);
    assert_eq!(v["k_cohomology"], json(r#"{"even":1,"odd":1}"#));
    assert_eq!(v["internal_variables"], json(r#"["x"]"#));
}

#[test]
fn corpus_run_filters() {
    let (out, _, code) = mfcat(&["corpus-run", "--filter", "A_1"], &[]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
    let (out, _, _) = mfcat(&["corpus-run", "--filter", "D_4-fermat", "--json"], &[]);
    let v = json(&out);
    assert_eq!(v["entries"], json(r#"["D_4-fermat"]"#));
    assert_eq!(v["passed"], true);
    assert_eq!(mfcat(&["corpus-run", "--filter", "E_8"], &[]).2, 3);
}

#[test]
fn outputs_are_byte_deterministic() {
    let p = write("d4.txt", "x^2*y + y^3\n");
    for args in [
        vec!["diagonal", "--potential", &p],
        vec!["minimal-model", "--potential", &p, "--max-arity", "4"],
        vec!["hh", "--potential", &p],
    ] {
        let a = mfcat(&args, &[]);
        assert_eq!(a.2, 0, "{args:?}: {}", a.1);
        assert_eq!(a, mfcat(&args, &[]), "{args:?}");
    }
    // JSON potentials and expressions give the same bytes
    let j = write("d4.json", &mfcat(&["stabilize", "--inline", "x^2*y + y^3", "--koszul"], &[]).0);
    assert_eq!(mfcat(&["hh", "--potential", &j], &[]).0, mfcat(&["hh", "--potential", &p], &[]).0);
}

#[test]
fn explicit_ring_and_prime_field() {
    let (out, _, code) = mfcat(&["hh", "--inline", "x^3", "--ring", "x;prime=101"], &[]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["milnor"], 2);
    let (out, _, _) = mfcat(&["stabilize", "--inline", "y^2 + x^3", "--ring", "x,y;rational;trunc=8"], &[]);
    assert_eq!(json(&out)["ring"]["variables"], json(r#"["x","y"]"#));
    assert_eq!(mfcat(&["hh", "--inline", "x^3", "--ring", "x;prime=100"], &[]).2, 2);
}
