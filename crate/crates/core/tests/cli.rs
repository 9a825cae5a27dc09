use std::fs;
use std::path::PathBuf;

use qschubert::cli::run;

/// `(golden file, arguments, exit code)`; set `QS_UPDATE_GOLDEN=1` to rewrite the files.
const CASES: &[(&str, &[&str], i32)] = &[
    ("catalog_two_lines.json", &["catalog", "two_lines", "--json"], 0),
    ("cells_two_lines.json", &["cells", "--catalog", "two_lines", "--dim-vector", "1,1", "--json"], 0),
    ("count_two_lines.json", &["count", "--catalog", "two_lines", "--dim-vector", "1,1", "--json"], 0),
    ("poly_two_lines.txt", &["poly", "--catalog", "two_lines", "--dim-vector", "1,1", "--text"], 0),
    ("euler_two_lines.txt", &["euler", "--catalog", "two_lines", "--dim-vector", "1,1", "--text"], 0),
    (
        "poincare_two_lines.json",
        &["poincare", "--catalog", "two_lines", "--dim-vector", "1,1", "--assert-smooth", "--json"],
        0,
    ),
    ("equations_ex_4_5_1.json", &["equations", "--catalog", "ex_4_5_1", "--beta", "{3,4}", "--json"], 0),
    ("equations_ex_4_5_1.txt", &["equations", "--catalog", "ex_4_5_1", "--beta", "{3,4}", "--text"], 0),
    ("hypothesis_ex_4_5_1.json", &["hypothesis-h", "--catalog", "ex_4_5_1", "--json"], 1),
    ("hypothesis_preprojective_2.json", &["hypothesis-h", "--catalog", "kronecker_preprojective(2)", "--json"], 0),
    ("verify_ex_4_5_2.json", &["verify-affine", "--catalog", "ex_4_5_2", "--json"], 1),
    ("winding_ex_4_5_1.txt", &["winding", "--catalog", "ex_4_5_1", "--text"], 0),
    ("pushforward_ex_4_5_1.json", &["pushforward", "--catalog", "ex_4_5_1", "--json"], 0),
    ("tree_ext_flag.txt", &["tree-ext", "--catalog", "flag(3;1,2)", "--beta", "{b2,b4,b5}", "--text"], 0),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn qs(args: &[&str]) -> qschubert::cli::Outcome {
    run(std::iter::once("qs").chain(args.iter().copied()))
}

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("QS_UPDATE_GOLDEN").is_some();
    for (file, args, code) in CASES {
        let out = qs(args);
        assert_eq!(out.code, *code, "qs {}: {}", args.join(" "), out.stderr);
        let path = golden_dir().join(file);
        if update {
            fs::create_dir_all(golden_dir()).unwrap();
            fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {file}"));
        assert_eq!(out.stdout, expected, "qs {}", args.join(" "));
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for (_, args, _) in CASES {
        let (a, b) = (qs(args), qs(args));
        assert_eq!((a.code, &a.stdout, &a.stderr), (b.code, &b.stdout, &b.stderr), "qs {}", args.join(" "));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(qs(&["catalog", "no_such_entry"]).code, 2);
    assert_eq!(qs(&["count", "--catalog", "two_lines", "--dim-vector", "1,1,1"]).code, 2);
    assert_eq!(qs(&["count", "--catalog", "two_lines", "--dim-vector", "1,1", "--primes", "4"]).code, 2);
    assert_eq!(qs(&["count", "--catalog", "flag(4)", "--primes", "31", "--budget", "1000"]).code, 3);
    assert_eq!(qs(&["winding", "--catalog", "ex_4_5_1", "--order", "1,4,3,2"]).code, 1);
    assert_eq!(qs(&["hypothesis-h", "--catalog", "ex_4_5_5"]).code, 1);
    assert_eq!(qs(&["nonsense"]).code, 2);
}

#[test]
fn input_files_are_read() {
    let dir = std::env::temp_dir().join(format!("qs-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let bundle = qs(&["catalog", "ex_4_5_1", "--json"]);
    let path = dir.join("bundle.json");
    fs::write(&path, &bundle.stdout).unwrap();
    let from_file = qs(&["hypothesis-h", "--input", path.to_str().unwrap(), "--json"]);
    let from_catalog = qs(&["hypothesis-h", "--catalog", "ex_4_5_1", "--json"]);
    assert_eq!(from_file.stdout, from_catalog.stdout);
    assert_eq!(from_file.code, 1);

    fs::write(&path, r#"{"quiver":{"vertices":["1"],"arrows":[{"id":"a","src":"1","tgt":"9"}]}}"#).unwrap();
    let bad = qs(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(bad.code, 2, "{}", bad.stdout);
    fs::remove_dir_all(&dir).ok();
}
