use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_operad-forge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn schroeder_table() {
    let text = stdout(&["schroeder"]);
    assert_eq!(text.lines().last(), Some("10,103049"));
    assert_eq!(text.lines().count(), 11);
    assert_eq!(stdout(&["schroeder", "--max-n", "1"]), "n,s\n1,1\n");
    let json: Value = serde_json::from_str(&stdout(&["schroeder", "--format", "json"])).unwrap();
    assert_eq!(json["schema"], "operad-forge/1");
    for row in json["rows"].as_array().unwrap() {
        assert_eq!(row["schroeder"], row["cross_check"]);
    }
    assert_eq!(json["rows"][6]["schroeder"], 903);
}

#[test]
fn dimension_tables() {
    let d = stdout(&["dims", "D", "--max-n", "4"]);
    let n4: Vec<&str> = d.lines().filter(|l| l.starts_with("4,")).collect();
    assert_eq!(n4, ["4,1,4,4", "4,2,20,20", "4,3,20,20"]);
    assert_eq!(
        stdout(&["dims", "Lie", "--max-n", "6"]).lines().last(),
        Some("6,0,120,120")
    );
    assert_eq!(
        stdout(&["dims", "sPerm", "--max-n", "7"]).lines().last(),
        Some("7,6,7,7")
    );
    assert_eq!(
        stdout(&["dims", "D", "--max-n", "4", "--degree", "2"]),
        "n,degree,dim,formula\n3,2,6,6\n4,2,20,20\n"
    );
    // the graded dimensions of both sides of the isomorphism agree
    assert_eq!(
        stdout(&["dims", "sLeib", "--max-n", "5", "--format", "csv"]),
        stdout(&["dims", "Lie⊗D", "--max-n", "5", "--format", "csv"])
    );
    assert_eq!(run(&["dims", "Ass"]).status.code(), Some(2));
}

#[test]
fn differentials() {
    assert_eq!(stdout(&["diff", "d2|1|1"]), "-1 · d1.d1|1|1\n");
    assert_eq!(stdout(&["diff", "T2(1,2)"]), "0\n");
    assert_eq!(stdout(&["diff", "d1|1"]), "0\n");
    assert_eq!(
        stdout(&["diff", "--in", "tree", "T3(1,2,3)"]),
        "-1 · T2(1,T2(2,3)) - 1 · T2(2,T2(1,3)) - 1 · T2(T2(1,2),3)\n"
    );
    assert_eq!(
        stdout(&["diff", "d3|1|1|1"]),
        stdout(&["diff", "--in", "D", "d3|1|1|1"])
    );
    let json: Value = serde_json::from_str(&stdout(&["diff", "d2|1|1", "--format", "json"])).unwrap();
    assert_eq!(json["element"]["terms"][0]["coeff"], "-1");
}

#[test]
fn parse_errors_are_usage_errors() {
    let out = run(&["diff", "d2|1|"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("character 6"));
    assert_eq!(run(&["diff", "--in", "tree", "T2(1,"]).status.code(), Some(2));
    assert_eq!(run(&["count-trees", "c1:2"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["schroeder", "--max-n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "everything"]).status.code(), Some(2));
}

#[test]
fn tree_counts() {
    assert_eq!(stdout(&["count-trees", "c2:1,c3:1"]), "5\n");
    assert_eq!(stdout(&["count-trees", "c2:1"]), "1\n");
    assert_eq!(stdout(&["count-trees", "c3:2"]), "3\n");
    assert_eq!(stdout(&["count-trees", "c2:3"]), "5\n");
}

fn report(args: &[&str]) -> (Option<i32>, Value) {
    let out = run(args);
    (
        out.status.code(),
        serde_json::from_slice(&out.stdout).expect("json report"),
    )
}

fn find<'a>(r: &'a Value, check: &str, arity: u64) -> &'a Value {
    r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"] == check && c["arity"] == arity)
        .unwrap_or_else(|| panic!("no {check} at {arity}"))
}

#[test]
fn verify_suites() {
    let (code, r) = report(&["verify", "theorem", "--max-n", "4", "--format", "json"]);
    assert_eq!(code, Some(0));
    assert_eq!(r["schema"], "operad-forge/1");
    assert_eq!(find(&r, "iso", 4)["actual"]["rank"], 264);
    assert_eq!(find(&r, "chain_map", 4)["pass"], true);

    let (code, r) = report(&["verify", "homology", "--max-n", "4", "--format", "json"]);
    assert_eq!(code, Some(0));
    assert_eq!(find(&r, "homology_D", 4)["actual"], serde_json::json!([0, 0, 4]));

    let (code, r) = report(&["verify", "counting", "--max-n", "8", "--format", "json"]);
    assert_eq!(code, Some(0));
    assert_eq!(find(&r, "count_trees", 8)["pass"], true);

    let (code, r) = report(&["verify", "axioms", "--max-n", "3", "--format", "json", "--seed", "7"]);
    assert_eq!(code, Some(0));
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn resource_bounds() {
    let cap = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_operad-forge"))
            .args(args)
            .env("OPERAD_FORGE_MAX_CELLS", "10")
            .output()
            .unwrap()
    };
    let out = cap(&["verify", "theorem", "--max-n", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(find(&r, "iso", 3)["skipped"], true);
    assert_eq!(
        cap(&["verify", "theorem", "--max-n", "3", "--long-run"]).status.code(),
        Some(3)
    );
    let bad = Command::new(env!("CARGO_BIN_EXE_operad-forge"))
        .args(["verify", "homology"])
        .env("OPERAD_FORGE_MAX_CELLS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn output_files_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let p = path.to_str().unwrap();
        let out = run(&[
            "verify", "axioms", "--max-n", "3", "--seed", "11", "--format", "json", "--out", p,
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
