use std::process::{Command, Output};

fn hyperdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperdyn"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn check_prints_a_report() {
    let out = hyperdyn(&[
        "--system",
        "builtin:cyclic_rotation(3)",
        "--check",
        "transitive",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["tool"], "hyperdyn");
    assert_eq!(r["system"]["points"], 3);
    assert_eq!(r["results"]["check"][0]["verdict"], "holds");
}

#[test]
fn verify_lists_witnesses() {
    let out = hyperdyn(&["--system", "builtin:klein_on_4", "--verify", "T39"]);
    let r = json(&out);
    let case = &r["results"]["verify"][0];
    assert_eq!(case["verdict"], "confirmed");
    assert!(!case["witnesses"]["periodic"].as_array().unwrap().is_empty());
}

#[test]
fn bounds_reach_shift_checks() {
    let out = hyperdyn(&[
        "--system",
        "builtin:golden_mean",
        "--check",
        "mixing",
        "--radius",
        "6",
        "--cyl-len",
        "2",
    ]);
    let r = json(&out);
    assert_eq!(r["bounds"]["radius"], 6);
    assert_eq!(r["results"]["check"][0]["bounds"]["cyl_len"], 2);
    assert_eq!(r["results"]["check"][0]["verdict"], "holds-up-to-bounds");
}

#[test]
fn exit_codes() {
    assert_eq!(
        hyperdyn(&[
            "--system",
            "builtin:identity(2)",
            "--check",
            "weakly-mixing",
            "--assert"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        hyperdyn(&[
            "--system",
            "builtin:identity(2)",
            "--check",
            "weakly-mixing"
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        hyperdyn(&["--system", "missing.toml", "--check", "all"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hyperdyn(&["--check", "all", "--verify", "T34"])
            .status
            .code(),
        Some(2)
    );
    let io = hyperdyn(&[
        "--system",
        "builtin:identity(1)",
        "--check",
        "all",
        "--out",
        "/nonexistent/dir/r.json",
    ]);
    assert_eq!(io.status.code(), Some(3));
}

#[test]
fn printed_config_loads_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sys.toml");
    let p = path.to_str().unwrap();
    let out = hyperdyn(&[
        "--system",
        "builtin:commuting_pair(4)",
        "--print-config",
        "--out",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let a = hyperdyn(&["--system", "builtin:commuting_pair(4)", "--check", "all"]);
    let b = hyperdyn(&["--system", p, "--check", "all"]);
    assert_eq!(json(&a)["results"], json(&b)["results"]);
}

#[test]
fn hyperspace_check() {
    let out = hyperdyn(&[
        "--system",
        "builtin:cyclic_rotation(3)",
        "--check",
        "transitive",
        "--hyperspace",
    ]);
    assert_eq!(json(&out)["results"]["check"][0]["verdict"], "fails");
    let out = hyperdyn(&[
        "--system",
        "builtin:golden_mean",
        "--check",
        "transitive",
        "--hyperspace",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
