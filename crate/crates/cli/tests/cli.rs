use std::collections::BTreeMap;
use std::fs;
use std::process::Command;

use proptest::prelude::*;
use serde_json::{json, Value};

use superspace_cli::run;
use superspace_cli::spec::{parse_spec, AlgebraBody, AlgebraSpec};
use superspace_core::exact::Rational;

fn sup(args: &[&str]) -> superspace_cli::Invocation {
    run(std::iter::once("superspace").chain(args.iter().copied()))
}

fn json_of(args: &[&str]) -> Value {
    let out = sup(args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn hdim_prints_a_bare_integer() {
    let out = sup(&["hdim", "3dN1"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "1\n"));
    let v = json_of(&["hdim", "4dN1", "--cross-check", "--json"]);
    assert_eq!(v["hdim"], json!(2));
    assert_eq!(v["schema"], json!(1));
}

#[test]
fn conf_betti_and_table_in_json() {
    let v = json_of(&["multiplet", "conf", "3dN1", "--json"]);
    assert_eq!(v["betti"], json!([[0, 0, 3], [1, 1, 2], [1, 2, 5], [2, 3, 4]]));
    assert_eq!(v["table"], json!([[0, 0, 3], [0, 1, 2], [1, 0, 5], [1, 1, 4]]));
    assert_eq!(v["complete"], json!(true));
}

#[test]
fn canonical_betti_text() {
    let out = sup(&["multiplet", "canonical", "3dN1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("total"), "{}", out.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(sup(&["--help"]).code, 0);
    assert_eq!(sup(&["frobnicate"]).code, 2);
    assert_eq!(sup(&["hdim", "7dN9"]).code, 2);
    assert_eq!(sup(&["multiplet", "sheaf", "3dN1"]).code, 2);
    assert_eq!(sup(&["twist", "4dN1", "--q", "1,0"]).code, 2, "wrong length q");
    assert_eq!(sup(&["verify", "--case", "no/such/case"]).code, 2);
    let budget = sup(&["--budget", "1", "variety", "4dN1"]);
    assert_eq!(budget.code, 3, "{}", budget.stderr);
    assert!(budget.stderr.contains("budget"));
}

#[test]
fn binary_reports_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_superspace");
    let ok = Command::new(exe).args(["hdim", "3dN1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "1\n");
    let bad = Command::new(exe).args(["hdim", "nowhere"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
}

#[test]
fn spec_files_and_their_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("n1.alg");
    fs::write(&good, "# 3d N=1 by hand\nalgebra \"hand\" {\n  odd_dim = 2;\n  even_dim = 3;\n  gamma {\n    (1,1) -> [1,0,0];\n    (1,2) -> [0,1,0];\n    (2,2) -> [0,0,1];\n  }\n}\n").unwrap();
    let path = good.to_str().unwrap();
    assert_eq!(sup(&["hdim", path]).stdout, "1\n");
    let v = json_of(&["multiplet", "conf", path, "--json"]);
    assert_eq!(v["betti"], json!([[0, 0, 3], [1, 1, 2], [1, 2, 5], [2, 3, 4]]));

    let bad = dir.path().join("bad.alg");
    fs::write(&bad, "algebra \"x\" {\n  odd_dim = 2;\n  even_dim = 1;\n  gamma { (1,2) -> [1]; (2,1) -> [2]; }\n}\n").unwrap();
    let out = sup(&["info", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("bad.alg:4:") && out.stderr.contains("symmetry violation"), "{}", out.stderr);
}

#[test]
fn cache_round_trip_and_repair() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--cache-dir", d, "multiplet", "conf", "4dN1", "--json"];
    let cold = sup(&args);
    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!entries.is_empty());
    let before: BTreeMap<_, _> = entries.iter().map(|p| (p.clone(), fs::read(p).unwrap())).collect();
    let warm = sup(&args);
    assert_eq!(cold, warm);

    // flip a payload byte so the checksum no longer matches
    for p in &entries {
        let mut bytes = fs::read(p).unwrap();
        let last = bytes.len() - 2;
        bytes[last] ^= 1;
        fs::write(p, bytes).unwrap();
    }
    assert_eq!(sup(&args), cold);
    for (p, b) in &before {
        assert_eq!(&fs::read(p).unwrap(), b, "{} was not rewritten", p.display());
    }

    let mut verify = vec!["--verify-cache"];
    verify.extend_from_slice(&args);
    assert_eq!(sup(&verify), cold);
}

#[test]
fn cache_keys_depend_on_the_analysis() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    sup(&["--cache-dir", d, "multiplet", "conf", "3dN1"]);
    let n1 = fs::read_dir(dir.path()).unwrap().count();
    sup(&["--cache-dir", d, "multiplet", "canonical", "3dN1"]);
    let n2 = fs::read_dir(dir.path()).unwrap().count();
    assert!(n2 > n1);
    let v = json_of(&["--cache-dir", d, "multiplet", "canonical", "3dN1", "--json"]);
    assert_eq!(v["betti"], json!([[0, 0, 1], [1, 2, 3], [2, 3, 2]]));
}

#[test]
fn twist_and_prolong_reports() {
    let v = json_of(&["twist", "6d(2,0)", "--q", "holomorphic", "--analyses", "determinantal", "--json"]);
    assert_eq!(v["twisted"]["odd_dim"], json!(6));
    assert_eq!(v["twisted"]["even_dim"], json!(3));
    let v = json_of(&["prolong", "3dN1", "--json"]);
    assert_eq!(v["status"], json!("terminated"));
}

#[test]
fn verify_is_deterministic_and_reports_failures() {
    let a = sup(&["verify", "--case", "twist", "--json"]);
    let b = sup(&["verify", "--case", "twist", "--json"]);
    assert_eq!(a, b);
    let fail = sup(&["verify", "--case", "table/conf/10d-10"]);
    assert_eq!(fail.code, 1);
    assert!(fail.stdout.contains("FAIL table/conf/10d-10"));
}

fn explicit_spec() -> impl Strategy<Value = AlgebraSpec> {
    (1usize..=4, 1usize..=3, "[a-z \"\\\\]{0,8}").prop_flat_map(|(k, d, name)| {
        let row = prop::collection::vec((-9i64..=9, 1i64..=4), d);
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect();
        prop::collection::vec(prop::option::of(row), pairs.len()).prop_map(move |rows| {
            let mut gamma = BTreeMap::new();
            for (p, r) in pairs.iter().zip(rows) {
                if let Some(r) = r {
                    let v: Vec<Rational> = r.into_iter().map(|(n, q)| Rational::new(n, q)).collect();
                    if v.iter().any(|x| !x.is_zero()) {
                        gamma.insert(*p, v);
                    }
                }
            }
            AlgebraSpec { name: name.clone(), body: AlgebraBody::Explicit { odd_dim: k, even_dim: d, gamma } }
        })
    })
}

proptest! {
    #[test]
    fn spec_render_parse_round_trip(spec in explicit_spec()) {
        let text = spec.render();
        let back = parse_spec(&text).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(back.render(), text);
        let alg = spec.build().unwrap();
        prop_assert_eq!(AlgebraSpec::explicit(&alg), spec);
    }
}
