use std::process::Command;

use decotree::dsl::parse;
use decotree::presets;
use decotree::replication::replicate_identities;
use decotree::Mode;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_decotree")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = run(&full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("bad json ({e}): {out} {err}"));
    (code, v)
}

#[test]
fn comtrias_model_checks() {
    assert_eq!(run(&["check", "C2", "comtrias-axioms"]).0, 0);
    assert_eq!(run(&["check", "C2", "vdash_perm"]).0, 0);
    assert_eq!(run(&["check", "C2", "perm_comm"]).0, 2);
    // C2 is not commutative for vdash
    let src = "identity vc over ct : vdash(x1,x2) - vdash(x2,x1) = 0;\n";
    let dir = std::env::temp_dir().join(format!("decotree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("vc.dt");
    std::fs::write(&file, src).unwrap();
    let (code, out, _) = run(&["-f", file.to_str().unwrap(), "check", "C2", "vc"]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn extra_identity_membership_fails_with_functional() {
    let (code, v) = json(&["consequence", "preN3", "--degree", "3", "--target", "extra"]);
    assert_eq!(code, 1);
    assert_eq!(v["command"], "consequence");
    let certs = v["certificates"].as_array().unwrap();
    assert_eq!(certs[0]["kind"], "functional");
    let (code, _) = json(&["consequence", "pren3", "--degree", "3", "--target", "pn3"]);
    assert_eq!(code, 0);
}

#[test]
fn tri_lie_equivalences() {
    assert_eq!(run(&["equiv", "tri(lie)", "trilie-homogeneous", "--max-degree", "3"]).0, 0);
    assert_eq!(run(&["equiv", "tri(lie)", "trilie", "--max-degree", "3"]).0, 1);
    assert_eq!(run(&["equiv", "pre(lie)", "left-symmetric", "--max-degree", "3"]).0, 0);
    assert_eq!(run(&["equiv", "pre(as)", "dendriform", "--max-degree", "3"]).0, 0);
}

#[test]
fn replicate_output_parses_back() {
    let (code, out, _) = run(&["replicate", "--mode", "tri", "lie"]);
    assert_eq!(code, 0);
    let ws = parse(&out).unwrap();
    let printed = &ws.systems[0];
    let lib = replicate_identities(presets::workspace().unwrap().system("lie").unwrap(), Mode::Tri).unwrap();
    let mut a: Vec<_> = printed.identities.iter().map(|i| i.lhs.clone()).collect();
    let mut b: Vec<_> = lib.identities.iter().map(|i| i.lhs.clone()).collect();
    a.sort_by_key(|l| format!("{l:?}"));
    b.sort_by_key(|l| format!("{l:?}"));
    assert_eq!(a, b);
}

#[test]
fn codimension_values() {
    for (sys, n, want) in [("as", "3", 6), ("di(as)", "3", 18), ("tri(as)", "3", 42), ("di(lie)", "3", 6)] {
        let (code, v) = json(&["codim", sys, "--degree", n]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["codimension"], want, "{sys}");
    }
}

#[test]
fn operator_commands() {
    assert_eq!(run(&["check-operator", "A2", "bar", "--kind", "hom-averaging"]).0, 0);
    assert_eq!(run(&["check-operator", "A2", "bar", "--kind", "rb", "--weight", "1"]).0, 1);
    assert_eq!(run(&["derive", "A2", "bar", "--mode", "tri"]).0, 0);
    assert_eq!(run(&["derive", "A2", "bar", "--mode", "post"]).0, 1);
}

fn temp_file(name: &str, src: &str) -> String {
    let dir = std::env::temp_dir().join(format!("decotree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join(name);
    std::fs::write(&file, src).unwrap();
    file.to_str().unwrap().to_string()
}

#[test]
fn constructions() {
    // C2 tensored with the line u·u = u, written out by hand: a = e1⊗u, b = e2⊗u
    let src = "algebra T over tri_bin dim 2 {\n  basis a, b;\n  m^{1}(a,a) = a;\n  m^{1}(b,a) = b;\n  m^{2}(a,a) = a;\n  m^{2}(a,b) = b;\n  m^{1,2}(a,a) = a;\n  m^{1,2}(b,b) = b;\n}\n";
    let f = temp_file("t.dt", src);
    for what in ["tilde", "hat", "embed"] {
        let (c, out, err) = run(&["-f", &f, "construct", what, "T"]);
        assert_eq!(c, 0, "{what}: {out} {err}");
    }
    // an arbitrary tri-decorated table is not a tri-algebra and does not embed
    let bad = "algebra U over tri_bin dim 2 {\n  basis a, b;\n  m^{1}(a,a) = a;\n  m^{2}(a,b) = b;\n  m^{1,2}(b,b) = b;\n}\n";
    let g = temp_file("u.dt", bad);
    assert_eq!(run(&["-f", &g, "construct", "embed", "U"]).0, 1);
    let (c, out, _) = run(&["-f", &f, "construct", "box", "C2", "T"]);
    assert_eq!(c, 0);
    assert!(out.contains("algebra "));
    let (code, out, _) = run(&["construct", "tensor", "C2", "C2", "--mode", "tri"]);
    assert_eq!(code, 0);
    assert!(out.contains("algebra "));
    // box needs a decorated second factor
    assert_eq!(run(&["construct", "box", "C2", "C2"]).0, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["check", "C2", "no_such_system"]).0, 2);
    assert_eq!(run(&["codim", "as", "--degree", "9"]).0, 2);
    assert_eq!(run(&["-f", "/nonexistent/file.dt", "list"]).0, 2);
    let dir = std::env::temp_dir().join(format!("decotree-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("bad.dt");
    std::fs::write(&file, "signature s { op f 2; }").unwrap();
    let (code, _, err) = run(&["-f", file.to_str().unwrap(), "list"]);
    assert_eq!(code, 2);
    assert!(err.contains("1:"), "{err}");
}

#[test]
fn json_is_deterministic() {
    for args in [
        vec!["--seed", "7", "suite", "--count", "8"],
        vec!["split", "--mode", "post", "as"],
        vec!["consequence", "as", "--degree", "4"],
    ] {
        let a = run(&[&["--json"][..], &args[..]].concat());
        let b = run(&[&["--json"][..], &args[..]].concat());
        assert_eq!(a, b, "{args:?}");
        let v: Value = serde_json::from_str(&a.1).unwrap();
        for key in ["command", "inputs", "result", "certificates", "version"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
    }
}

#[test]
fn preset_corpus_exit_codes() {
    for (alg, sys) in [("C2", "comtrias_axioms"), ("N3D", "comd_axioms")] {
        assert_eq!(run(&["check", alg, sys]).0, 0, "{alg} {sys}");
    }
    assert_eq!(run(&["check", "A2", "as"]).0, 0);
    assert_eq!(run(&["list"]).0, 0);
}

#[test]
fn library_entry_point_matches_binary() {
    let out = decotree_cli::run(["decotree", "--json", "codim", "lie", "--degree", "3"]);
    let (code, stdout, _) = run(&["--json", "codim", "lie", "--degree", "3"]);
    assert_eq!(out.code, code);
    assert_eq!(out.stdout, stdout);
}
