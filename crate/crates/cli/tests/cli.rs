use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotslice")).args(args).output().expect("binary runs")
}

fn text(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_proof_exit_codes() {
    assert_eq!(run(&["verify-proof"]).status.code(), Some(0));
    assert_eq!(run(&["verify-proof", "--arf-a", "0", "--arf-b", "0"]).status.code(), Some(3));
    let odd = run(&["verify-proof", "--lk", "5", "--format", "text"]);
    assert!(matches!(odd.status.code(), Some(0) | Some(3)));
    assert!(text(&odd).starts_with("verdict: "));
    assert_eq!(run(&["verify-proof", "--arf", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify-proof", "--sigma-a", "2:1:0"]).status.code(), Some(2));
    assert_eq!(run(&["verify-proof", "--bogus"]).status.code(), Some(2));
}

#[test]
fn certificate_file_and_checker() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let p = path.to_str().unwrap();
    let o = run(&["verify-proof", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(text(&o), "verdict: proven (6 cases, all eliminated)\n");
    assert!(std::fs::read_to_string(&path).unwrap().ends_with("}\n"));
    assert_eq!(run(&["check-certificate", p]).status.code(), Some(0));

    let raw = std::fs::read_to_string(&path).unwrap();
    let mut cert: knotslice::solver::ProofCertificate = serde_json::from_str(&raw).unwrap();
    cert.assumptions.lk = -6;
    std::fs::write(&path, cert.to_json()).unwrap();
    let o = run(&["check-certificate", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(text(&o).contains("certificate: invalid"));
    assert_eq!(run(&["check-certificate", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn gap_certificate_checks_as_gap() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gap.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["verify-proof", "--lk=-2", "--out", p]).status.code(), Some(3));
    let o = run(&["check-certificate", p]);
    assert_eq!(o.status.code(), Some(3));
    assert!(text(&o).ends_with("certificate: valid (gap)\n"));
}

#[test]
fn signature_samples() {
    let o = run(&["signature", "torus(2,3)", "--m", "8"]);
    let rows: Vec<String> = text(&o).lines().skip(1).map(|l| l.split(',').nth(2).unwrap().to_string()).collect();
    assert_eq!(rows, ["0", "-2", "-2", "-2", "-2", "-2", "0"]);
    let o = run(&["signature", "mirror(atom(7_2))", "--root", "2:1,4:1,8:1"]);
    assert_eq!(text(&o), "m,r,sigma,note\n2,1,2,\n4,1,2,\n8,1,2,\n");
    let o = run(&["signature", "unknot", "--m", "5"]);
    assert!(text(&o).lines().skip(1).all(|l| l.split(',').nth(2) == Some("0")));
    let o = run(&["signature", "torus(2,3)", "--root", "6:1"]);
    assert_eq!(text(&o), "m,r,sigma,note\n6,1,,alexander-root\n");
    assert_eq!(run(&["signature", "atom(9_42)"]).status.code(), Some(2));
    assert_eq!(run(&["signature", "sum(unknot"]).status.code(), Some(2));
}

#[test]
fn search_knots() {
    assert_eq!(text(&run(&["search-knots"])), "m(7_2)\n");
    assert_eq!(text(&run(&["search-knots", "--allow-mirror=false"])), "");
    assert_eq!(text(&run(&["search-knots", "--g4", "0", "--arf", "0", "--sigma", "2:1:2"])), "");
    let o = run(&["search-knots", "--g4", "1", "--arf", "1", "--sigma=2:1:-2", "--allow-mirror=false"]);
    assert!(text(&o).lines().any(|l| l == "7_2"));
}

#[test]
fn table_output() {
    let o = run(&["table"]);
    assert_eq!(o.status.code(), Some(0));
    let t = text(&o);
    assert!(t.contains("(2,4) (1,x) . (y,±1) = xy±1\n"));
    assert!(t.contains("(1,4) ~ (2,2) via s3*s1 (with s2)\n"));
    let json = run(&["table", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text(&json)).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 15);
    assert_eq!(text(&json), text(&run(&["table", "--format", "json"])));
    assert!(text(&run(&["table", "--format", "csv"])).starts_with("row,col,alpha,beta,value,highlighted\n"));
    assert_eq!(run(&["table", "--g4", "2"]).status.code(), Some(2));
}

#[test]
fn obstruct_single_cases() {
    let o = run(&["obstruct", "--alpha=2,-2", "--beta", "1,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(text(&o).contains("ClassicalSignature on A in (2,-2): Eliminated"));
    assert!(text(&o).contains("|2 - (-8)/2| = 6 > 2"));
    let o = run(&["obstruct", "--alpha", "2,2", "--beta=-1,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(text(&o).lines().rev().nth(1).unwrap().starts_with("CableSignature"));
    let o = run(&[
        "obstruct", "--alpha", "0,0", "--beta", "0,0", "--lk", "0", "--g4", "0", "--arf", "0", "--sigma", "2:1:0,4:1:0,8:1:0",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(text(&o).ends_with("survives\n"));
    assert_eq!(run(&["obstruct", "--alpha", "1,1", "--beta", "1,1"]).status.code(), Some(2));
}

#[test]
fn outputs_end_with_newline() {
    for args in [
        vec!["verify-proof"],
        vec!["verify-proof", "--format", "text"],
        vec!["table", "--format", "json"],
        vec!["search-knots", "--format", "json"],
        vec!["signature", "torus(2,5)", "--format", "json"],
        vec!["exotic-check", "--f-a", "0", "--f-b", "0", "--lk=-4"],
        vec!["obstruct", "--alpha", "2,2", "--beta", "1,1", "--format", "json"],
    ] {
        let t = text(&run(&args));
        assert!(t.ends_with('\n'), "{args:?}");
    }
}
