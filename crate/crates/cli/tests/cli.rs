mod common;

use common::*;
use tempfile::tempdir;

const EXAMPLES: &[&str] = &[
    "terminal",
    "discrete2",
    "arrow",
    "walking-iso",
    "bz2",
    "bz3",
    "chain1",
    "chain2",
    "chain3",
    "span",
    "cospan",
    "swap-action",
    "trivial-action",
    "product-fibration",
    "nonlocal",
    "non-inverting",
    "random",
];

fn dims(report: &serde_json::Value) -> Vec<u64> {
    report["results"].as_array().unwrap().iter().map(|r| r["rank"].as_u64().unwrap()).collect()
}

#[test]
fn validate_terminal_category() {
    let dir = tempdir().unwrap();
    let ex = example(dir.path(), "terminal");
    let run = catcohom(&["validate", path(&ex.join("terminal.json"))]);
    assert_eq!(run.code, 0);
    let j = run.json();
    assert_eq!(j["kind"], "category");
    assert_eq!(j["roundtrip"], true);
}

#[test]
fn every_bundled_file_validates() {
    let dir = tempdir().unwrap();
    for name in EXAMPLES {
        let ex = example(dir.path(), name);
        for entry in std::fs::read_dir(&ex).unwrap() {
            let file = entry.unwrap().path();
            let run = catcohom(&["validate", path(&file)]);
            assert_eq!(run.code, 0, "{name}/{}: {}", file.display(), run.stdout);
            assert_eq!(run.json()["roundtrip"], true);
        }
    }
}

#[test]
fn bz2_cohomology_over_f2() {
    let dir = tempdir().unwrap();
    let ex = example(dir.path(), "bz2");
    let run = catcohom(&[
        "cohomology",
        "--cat",
        path(&ex.join("bz2.json")),
        "--natsys",
        path(&ex.join("trivial_f2.json")),
        "--max-degree",
        "4",
    ]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert_eq!(dims(&run.json()), vec![1, 1, 1, 1, 1]);
}

#[test]
fn bz3_integer_cohomology_and_homology() {
    let dir = tempdir().unwrap();
    let ex = example(dir.path(), "bz3");
    let nat = path(&ex.join("trivial_z.json")).to_string();
    let j = catcohom(&["cohomology", "--natsys", &nat, "--max-degree", "4"]).json();
    let torsion: Vec<String> = j["results"].as_array().unwrap().iter().map(|r| r["torsion"].to_string()).collect();
    assert_eq!(dims(&j), vec![1, 0, 0, 0, 0]);
    assert_eq!(torsion, vec!["[]", "[]", "[3]", "[]", "[3]"]);
    let j = catcohom(&["homology", "--natsys", &nat, "--max-degree", "3"]).json();
    let torsion: Vec<String> = j["results"].as_array().unwrap().iter().map(|r| r["torsion"].to_string()).collect();
    assert_eq!(torsion, vec!["[]", "[3]", "[]", "[3]"]);
}

#[test]
fn limits_and_hochschild_default_to_trivial_data() {
    let dir = tempdir().unwrap();
    let ex = example(dir.path(), "span");
    let cat = path(&ex.join("span.json")).to_string();
    let lim = catcohom(&["limit", "--cat", &cat, "--max-degree", "1"]).json();
    assert_eq!(lim["theory"], "lim");
    assert_eq!(dims(&lim), vec![1, 0]);
    let colim = catcohom(&["colimit", "--cat", &cat, "--max-degree", "1"]).json();
    assert_eq!(colim["theory"], "colim");
    assert_eq!(dims(&colim), vec![1, 0]);
    let hm = catcohom(&["hochschild", "--cat", &cat, "--max-degree", "1"]).json();
    assert_eq!(hm["theory"], "HM");
    assert_eq!(dims(&hm), vec![1, 0]);
}

#[test]
fn swap_e2_page_passes() {
    let dir = tempdir().unwrap();
    let ex = example(dir.path(), "swap-action");
    let run = catcohom(&[
        "e2",
        "--functor",
        path(&ex.join("swap_u.json")),
        "--natsys",
        path(&ex.join("trivial_f2.json")),
        "--max-total",
        "3",
        "--ring",
        "F2",
    ]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let j = run.json();
    assert_eq!(j["verdict"]["inequalities"], "PASS");
    for e in j["grid"].as_array().unwrap() {
        let origin = e["p"] == 0 && e["q"] == 0;
        assert_eq!(e["dim"], u64::from(origin), "{e}");
    }
}

#[test]
fn e2_homology_mode_and_ring_mismatch() {
    let dir = tempdir().unwrap();
    let ex = example(dir.path(), "chain2");
    let u = path(&ex.join("collapse_u.json")).to_string();
    let run = catcohom(&["e2", "--functor", &u, "--mode", "homology"]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert_eq!(run.json()["verdict"]["euler"], "PASS");
    let nat = path(&ex.join("trivial_f2.json")).to_string();
    let run = catcohom(&["e2", "--functor", &u, "--natsys", &nat, "--ring", "F3"]);
    assert_eq!(run.code, 2);
    assert_eq!(run.json()["error"], "RingMismatch");
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempdir().unwrap();
    let ex = example(dir.path(), "bz3");
    let u = path(&ex.join("identity_u.json")).to_string();
    assert_eq!(catcohom(&["e2", "--functor", &u, "--ring", "F3", "--max-total", "2"]).code, 0);
    // A truncated abutment overshoots in the top degree and the verdict fails.
    let run = catcohom(&["e2", "--functor", &u, "--ring", "F3", "--max-total", "2", "--truncated"]);
    assert_eq!(run.code, 1, "{}", run.stdout);
    assert_eq!(run.json()["verdict"]["inequalities"], "FAIL");
    let run = catcohom(&["e2", "--functor", path(&dir.path().join("missing.json"))]);
    assert_eq!(run.code, 2);
    assert_eq!(run.json()["error"], "IoError");
}

#[test]
fn usage_errors_are_machine_readable() {
    for args in [&["frobnicate"][..], &["cohomology", "--max-degree", "x"][..], &[][..]] {
        let run = catcohom(args);
        assert_eq!(run.code, 2);
        assert_eq!(run.json()["error"], "Usage");
    }
    let run = catcohom(&["example", "nope"]);
    assert_eq!(run.code, 2);
    assert_eq!(run.json()["error"], "UnknownFixture");
}

#[test]
fn rejection_suite() {
    let dir = tempdir().unwrap();
    let cat = write(dir.path(), "broken.json", BROKEN_ASSOCIATIVITY);
    let run = catcohom(&["validate", path(&cat)]);
    assert_eq!((run.code, run.json()["error"].as_str().unwrap()), (2, "BrokenAssociativity"));
    let nat = write(dir.path(), "bad.json", NON_FUNCTORIAL);
    let run = catcohom(&["cohomology", "--natsys", path(&nat)]);
    assert_eq!((run.code, run.json()["error"].as_str().unwrap()), (2, "FunctorialityViolation"));
    let action = write(dir.path(), "action.json", NON_STRICT);
    let run = catcohom(&["grothendieck", "--action", path(&action)]);
    assert_eq!((run.code, run.json()["error"].as_str().unwrap()), (2, "NotStrict"));
    let ex = example(dir.path(), "non-inverting");
    let run = catcohom(&[
        "cartan-leray",
        "--action",
        path(&ex.join("action.json")),
        "--natsys",
        path(&ex.join("natsys.json")),
    ]);
    assert_eq!((run.code, run.json()["error"].as_str().unwrap()), (2, "NotCartesianInverting"));
}

#[test]
fn parse_errors_carry_position_and_field() {
    let dir = tempdir().unwrap();
    let ex = example(dir.path(), "arrow");
    let text = std::fs::read_to_string(ex.join("arrow.json")).unwrap();
    let cut = write(dir.path(), "cut.json", &text[..text.len() / 2]);
    let run = catcohom(&["validate", path(&cut)]);
    assert_eq!(run.code, 2);
    assert_eq!(run.json()["error"], "ParseError");
    assert!(run.json()["message"].as_str().unwrap().contains("line 1"));
    let extra = write(dir.path(), "extra.json", &text.replacen('{', "{\"colour\": 1, ", 1));
    let run = catcohom(&["validate", path(&extra)]);
    assert_eq!(run.json()["error"], "ParseError");
    assert!(run.json()["message"].as_str().unwrap().contains("colour"));
}

#[test]
fn reports_are_deterministic_and_pretty_keeps_the_payload() {
    let dir = tempdir().unwrap();
    let ex = example(dir.path(), "product-fibration");
    let u = ex.join("product_u.json");
    let args = ["e2", "--functor", path(&u), "--max-total", "2"];
    let a = catcohom(&args);
    let b = catcohom(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut pretty = args.to_vec();
    pretty.push("--pretty");
    let p = catcohom(&pretty);
    assert_ne!(p.stdout, a.stdout);
    assert_eq!(p.json(), a.json());
    let mut seq = args.to_vec();
    seq.extend(["--jobs", "1"]);
    assert_eq!(catcohom(&seq).stdout, a.stdout);
    assert_eq!(catcohom(&["example", "random", "--seed", "7"]).stdout, catcohom(&["example", "random", "--seed", "7"]).stdout);
}

#[test]
fn out_writes_the_report() {
    let dir = tempdir().unwrap();
    let ex = example(dir.path(), "bz2");
    let out = dir.path().join("report.json");
    let run = catcohom(&["cohomology", "--natsys", path(&ex.join("trivial_f2.json")), "--out", path(&out)]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.is_empty());
    let j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(dims(&j), vec![1, 1, 1, 1]);
}

#[test]
fn size_guard_from_flag_and_environment() {
    let dir = tempdir().unwrap();
    let ex = example(dir.path(), "chain3");
    let cat = path(&ex.join("chain3.json")).to_string();
    let run = catcohom(&["validate", &cat, "--size-guard", "5"]);
    assert_eq!(run.json()["error"], "SizeGuard");
    let run = catcohom_env(&["validate", &cat], &[("CATCOHOM_SIZE_GUARD", "5")]);
    assert_eq!(run.json()["error"], "SizeGuard");
    assert_eq!(catcohom(&["validate", &cat]).code, 0);
}

#[test]
fn fibration_commands() {
    let dir = tempdir().unwrap();
    let ex = example(dir.path(), "trivial-action");
    let action = path(&ex.join("action.json")).to_string();
    let cl = catcohom(&["cartan-leray", "--action", &action, "--max-total", "3"]);
    assert_eq!(cl.code, 0, "{}", cl.stdout);
    let j = cl.json();
    assert_eq!(j["abutment"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(j["coefficient_modules"][0]["dim"], 1);
    let loc = catcohom(&["locality", "--action", &action]).json();
    assert_eq!(loc["local"], true);
    let g = catcohom(&["grothendieck", "--action", &action]);
    assert_eq!(g.code, 0);
    let f = write(dir.path(), "u.json", &g.stdout);
    assert_eq!(catcohom(&["validate", path(&f)]).json()["kind"], "functor");
}
