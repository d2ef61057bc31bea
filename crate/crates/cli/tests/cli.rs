use lchkit_cli::run;
use lchkit_core::LaurentPoly;
use serde_json::Value;

fn lchkit(args: &[&str]) -> (i32, String, String) {
    lchkit_with_stdin(args, "")
}

fn lchkit_with_stdin(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lchkit").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = lchkit(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    out
}

#[test]
fn trefoil_off_diagonal_pair() {
    assert_eq!(
        ok(&["blch", "family", "trefoil", "--e1", "0", "--e2", "1"]),
        "1\n"
    );
}

#[test]
fn trefoil_diagonal_and_linearized() {
    assert_eq!(
        ok(&["blch", "family", "trefoil", "--e1", "3", "--e2", "3"]),
        "2 + t\n"
    );
    assert_eq!(
        ok(&["lin", "family", "trefoil", "--e1", "b1=1,b2=1,b3=1"]),
        "2 + t\n"
    );
}

#[test]
fn trefoil_classes() {
    let out = ok(&["classes", "family", "trefoil"]);
    assert!(out.starts_with("5 classes (cross)\n"), "{out}");
    for method in ["witness", "dimension", "cross"] {
        let v: Value = serde_json::from_str(&ok(&[
            "classes", "family", "trefoil", "--method", method, "--json",
        ]))
        .unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["classes"].as_array().unwrap().len(), 5);
    }
}

#[test]
fn trefoil_augmentations_listing() {
    let out = ok(&["augs", "family", "trefoil"]);
    let expected = "0 b1=0,b2=0,b3=1\n1 b1=0,b2=1,b3=1\n2 b1=1,b2=0,b3=0\n3 b1=1,b2=1,b3=0\n4 b1=1,b2=1,b3=1\n";
    assert_eq!(out, expected);
    let v: Value = serde_json::from_str(&ok(&["augs", "family", "trefoil", "--json"])).unwrap();
    assert_eq!(v["augmentations"][0]["b3"], 1);
}

#[test]
fn realize_json_plan() {
    let out = ok(&["realize", "--poly", "1 + t^-1 + t^2", "--n", "2", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["n"], 2);
    assert_eq!(v["N"], 2);
    assert_eq!(v["q"], "1");
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 1);
    let p = &pairs[0];
    assert_eq!(
        (&p["u"], &p["v"], &p["m"], &p["k"], &p["a"]),
        (&(-1).into(), &2.into(), &1.into(), &4.into(), &2.into())
    );
    let predicted: LaurentPoly = v["predicted"].as_str().unwrap().parse().unwrap();
    assert_eq!(predicted, "1 + t^-1 + t^2".parse().unwrap());
}

#[test]
fn outputs_are_deterministic() {
    let runs: [&[&str]; 4] = [
        &["table", "family", "trefoil", "--json"],
        &[
            "classes",
            "family",
            "trefoil-link",
            "k=2",
            "--method",
            "witness",
            "--json",
        ],
        &[
            "realize",
            "--poly",
            "2 + t^-2 + 2*t^2",
            "--n",
            "3",
            "--json",
        ],
        &["family", "multicopy", "N=2", "n=2"],
    ];
    for args in runs {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
}

#[test]
fn table_round_trips_through_polynomial_parser() {
    let out = ok(&["table", "family", "trefoil"]);
    let mut cells = 0;
    for line in out.lines().filter(|l| l.starts_with("P ")) {
        let text = line.splitn(4, ' ').nth(3).unwrap();
        let p: LaurentPoly = text.parse().unwrap();
        assert_eq!(p.to_string(), text);
        cells += 1;
    }
    assert_eq!(cells, 25);

    let v: Value = serde_json::from_str(&ok(&["table", "family", "trefoil", "--json"])).unwrap();
    for row in v["table"].as_array().unwrap() {
        for cell in row.as_array().unwrap() {
            let text = cell.as_str().unwrap();
            assert_eq!(text.parse::<LaurentPoly>().unwrap().to_string(), text);
        }
    }
}

#[test]
fn dga_from_stdin_and_family_text_round_trip() {
    let text = ok(&["family", "hopf", "n=2", "k=1"]);
    let (code, out, _) = lchkit_with_stdin(&["validate", "--file", "-"], &text);
    assert_eq!((code, out.as_str()), (0, "ok\n"));
    let (code, out, _) = lchkit_with_stdin(&["augs", "--file", "-"], &text);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn complexes_report_their_homology() {
    assert_eq!(
        ok(&["blch", "family", "multicopy", "N=2", "n=3"]),
        "2 + 2*t^3\n"
    );
    assert_eq!(
        ok(&["blch", "family", "note", "k=2", "m=0", "n=3"]),
        "1 + t + t^3\n"
    );
    assert_eq!(
        ok(&["validate", "family", "multicopy", "N=3", "n=1"]),
        "ok\n"
    );
}

#[test]
fn admissible_modes() {
    assert_eq!(
        ok(&["admissible", "--poly", "1 + 2*t", "--n", "2"]),
        "q = 1 + 2*t\np = 0\n"
    );
    assert_eq!(
        ok(&["admissible", "--poly", "t + 2", "--n", "1", "--mode", "lch"]),
        "q = t\np = 1\n"
    );
    assert_eq!(
        ok(&["admissible", "--poly", "t", "--n", "2"]),
        "not admissible\n"
    );
    let v: Value =
        serde_json::from_str(&ok(&["admissible", "--poly", "t", "--n", "2", "--json"])).unwrap();
    assert_eq!(v["admissible"], false);
}

#[test]
fn connected_sum_both_levels() {
    assert_eq!(
        ok(&[
            "connsum",
            "--poly",
            "1 + t + t^2",
            "--n",
            "1",
            "--rho",
            "zero"
        ]),
        "2 + t + t^2\n"
    );
    assert_eq!(
        ok(&[
            "connsum",
            "--poly",
            "1 + t + t^2",
            "--n",
            "1",
            "--rho",
            "nonzero"
        ]),
        "1 + t^2\n"
    );
    let args = [
        "connsum",
        "family",
        "trefoil-link",
        "k=3",
        "--e1",
        "b1=1,b2=1,b3=1",
        "--e2",
        "b1=1",
        "--rho",
        "a3",
    ];
    assert_eq!(ok(&args), "1 + t^2 + t^3\n");
}

#[test]
fn invalid_dga_is_a_domain_error() {
    let bad = "dim 1\ngen a 1\ngen b 0\nd a = b*b*b + 1 + b\nd b = a\n";
    let (code, _, err) = lchkit_with_stdin(&["validate", "--file", "-"], bad);
    assert_eq!(code, 1);
    assert!(err.starts_with("lchkit: dga error:"), "{err}");
}

#[test]
fn exit_codes() {
    let (code, _, err) = lchkit(&["blch"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = lchkit(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, err) = lchkit(&["augs", "family", "trefoil", "--cap", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("augment error"), "{err}");
    let (code, _, err) = lchkit(&["blch", "family", "hopf", "n=0", "k=1"]);
    assert_eq!(code, 1);
    assert!(err.contains("families error"), "{err}");
    let (code, _, _) = lchkit(&["blch", "family", "trefoil", "--e1", "9", "--e2", "0"]);
    assert_eq!(code, 1);
    let (code, _, _) = lchkit(&["blch", "family", "trefoil", "--e1", "b2=1", "--e2", "0"]);
    assert_eq!(code, 1);
    let (code, _, _) = lchkit(&[
        "blch",
        "--file",
        "/nonexistent/dga.txt",
        "--e1",
        "0",
        "--e2",
        "0",
    ]);
    assert_eq!(code, 1);
    // the dimension criterion only applies to knots
    let (code, _, err) = lchkit(&["classes", "family", "trefoil-link", "k=2"]);
    assert_eq!(code, 1);
    assert!(err.contains("homotopy error"), "{err}");
    let (code, out, _) = lchkit(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("realize"));
}
