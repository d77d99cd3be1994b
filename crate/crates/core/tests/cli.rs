use std::path::Path;
use std::process::{Command, Output};

use hbasis::format::BasisDocument;

fn hbasis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbasis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_set(dir: &Path) -> String {
    let path = dir.join("set.toml");
    std::fs::write(&path, "h = 2\nn = 8\nelements = [0, 1, 3, 4]\n").unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn verify_accepts_a_basis() {
    let dir = tempfile::tempdir().unwrap();
    let set = write_set(dir.path());
    let out = hbasis(&["verify", "--h", "2", "--n", "8", "--set", &set]);
    assert_eq!(out.status.code(), Some(0));
    let doc = BasisDocument::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let v = doc.verification.unwrap();
    assert!(v.ok);
    assert_eq!(doc.manifest.unwrap().outcome, 0);
}

#[test]
fn verify_reports_first_gap() {
    let dir = tempfile::tempdir().unwrap();
    let set = write_set(dir.path());
    let out = hbasis(&["verify", "--h", "2", "--n", "9", "--set", &set]);
    assert_eq!(out.status.code(), Some(1));
    let doc = BasisDocument::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(doc.verification.unwrap().first_gap, Some(9));
}

#[test]
fn verify_reads_h_and_n_from_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let set = write_set(dir.path());
    assert_eq!(hbasis(&["verify", "--set", &set]).status.code(), Some(0));
}

#[test]
fn malformed_basis_file_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "h = 2\nn = 8\nelements = [3, 1]\n").unwrap();
    let out = hbasis(&["verify", "--set", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ascending"));
}

#[test]
fn construct_emits_a_verified_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.toml");
    let out = hbasis(&[
        "construct",
        "--n",
        "10000",
        "--h",
        "3",
        "--k",
        "1",
        "--a",
        "2",
        "--emit",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("wall time"));
    let doc = BasisDocument::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(doc.verification.as_ref().unwrap().ok);
    let provenance = doc.provenance.unwrap();
    assert_eq!(provenance["q"].as_integer(), Some(484));
    assert_eq!(provenance["p"].as_integer(), Some(22));

    // the emitted file verifies independently
    let again = hbasis(&["verify", "--set", path.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
}

#[test]
fn construct_rejects_infeasible_parameters() {
    assert_eq!(
        hbasis(&[
            "construct",
            "--n",
            "1000",
            "--h",
            "4",
            "--k",
            "3",
            "--a",
            "2"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        hbasis(&["construct", "--n", "1000", "--h", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn complement_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let set = write_set(dir.path());
    let out = hbasis(&["complement", "--q", "16", "--k", "2", "--set", &set]);
    assert_eq!(out.status.code(), Some(0));
    let doc = BasisDocument::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let ledger = doc.ledger.unwrap();
    assert_eq!(ledger["complete"].as_bool(), Some(true));
    assert_eq!(ledger["families"].as_array().unwrap().len(), 2);

    let out = hbasis(&["complement", "--q", "3", "--k", "1", "--set", &set]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_and_table() {
    let out = hbasis(&["search", "--h", "2", "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = BasisDocument::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(doc.n, Some(8));
    assert_eq!(doc.elements, vec![0, 1, 3, 4]);

    let out = hbasis(&["table", "--h-max", "2", "--k-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 1 + 6);
    assert!(data.contains(&"2,3,4,9/4,10,18/7,true,4,0 1 2"), "{text}");
}

#[test]
fn guard_trips_exit_three() {
    let out = hbasis(&["search", "--h", "6", "--k", "400"]);
    assert_eq!(out.status.code(), Some(3));
}
