use std::path::PathBuf;

use serde_json::Value;

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(rel)
        .display()
        .to_string()
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("docs/schemas")
        .join(format!("{name}.v1.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("revguard").chain(args.iter().copied());
    let code = revguard::cli::run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let r = run(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.err);
    r.out
}

fn assert_valid(schema_name: &str, json: &str) -> Value {
    let instance: Value = serde_json::from_str(json).unwrap();
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(&instance)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}\n{json}");
    instance
}

#[test]
fn sim_matches_embedded_half_adder() {
    let c = data("circuits/half_adder.real");
    assert_eq!(ok(&["sim", &c, "110"]), "101\n");
    assert_eq!(ok(&["sim", &c, "101", "--inverse"]), "110\n");
    assert_eq!(ok(&["sim", &c, "110", "--from", "0", "--to", "0"]), "110\n");
}

#[test]
fn table_lists_every_row() {
    let out = ok(&["table", &data("circuits/half_adder.real")]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[3], "011 -> 100");
    assert_eq!(lines[6], "110 -> 101");
}

#[test]
fn embed_json_validates() {
    let out = ok(&["embed", &data("tables/decod24.tt")]);
    let v = assert_valid("embedding", &out);
    assert_eq!(v["ancillary"], 2);
    assert_eq!(v["lines"], 4);
    let c = revguard::parse_real(v["real"].as_str().unwrap()).unwrap();
    assert_eq!(c.lines(), 4);
    let real = ok(&["embed", &data("tables/decod24.tt"), "--format", "real"]);
    assert_eq!(real, v["real"].as_str().unwrap());
}

#[test]
fn synth_reversible_table_directly() {
    let real = ok(&["synth", &data("tables/half_adder_embedded.tt")]);
    let c = revguard::parse_real(&real).unwrap();
    let p = revguard::permutation(&c).unwrap();
    assert_eq!(p.map(), &[0, 1, 2, 4, 3, 6, 5, 7]);
}

#[test]
fn inject_places_payload_at_slot() {
    let host = data("circuits/half_adder.real");
    let infected = ok(&["inject", &host, &data("trojans/cnot_slot1.json")]);
    let c = revguard::parse_real(&infected).unwrap();
    let h = revguard::parse_real(&std::fs::read_to_string(&host).unwrap()).unwrap();
    assert_eq!(c.gate_count(), h.gate_count() + 1);
    assert_eq!(c.gates()[1], revguard::ToffoliGate::cnot(0, 2).unwrap());
}

#[test]
fn suite_sizes_respect_bounds() {
    let host = data("circuits/full_adder.real");
    let m = revguard::parse_real(&std::fs::read_to_string(&host).unwrap())
        .unwrap()
        .gate_count();
    let all1 = ok(&["suite", &host, "--kind", "all1"]);
    assert!(all1.lines().count() <= m + 1);
    let onecold = ok(&["suite", &host, "--kind", "onecold"]);
    assert!(onecold.lines().count() <= 4 * (m + 1));
    assert!(onecold.lines().all(|l| l.len() == 4));
}

#[test]
fn detect_reports_validate() {
    let host = data("circuits/half_adder.real");
    let out = ok(&[
        "detect",
        &host,
        &data("trojans/cnot_slot1.json"),
        "--kind",
        "all1",
    ]);
    let v = assert_valid("detection", &out);
    assert_eq!(v["detected"], true);

    let out = ok(&[
        "detect",
        &host,
        &data("trojans/dummy_pair.json"),
        "--kind",
        "onecold",
    ]);
    let v = assert_valid("detection", &out);
    assert_eq!(v["detected"], false);
    assert!(v["witness"].is_null());

    let out = ok(&[
        "detect",
        &host,
        &data("trojans/cnot_slot1.json"),
        "--random",
        "16",
        "--seed",
        "3",
    ]);
    assert_valid("detection", &out);
}

#[test]
fn detect_with_pattern_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("patterns.txt");
    std::fs::write(&file, "# pulled back by hand\n000\n111\n").unwrap();
    let out = ok(&[
        "detect",
        &data("circuits/half_adder.real"),
        &data("trojans/cnot_slot1.json"),
        "--patterns",
        file.to_str().unwrap(),
    ]);
    let v = assert_valid("detection", &out);
    assert_eq!(v["suite"], "custom");
}

#[test]
fn symmetric_trojan_file_evades_both_suites() {
    let host = data("circuits/quiet5.real");
    let t = data("trojans/symmetric5.json");
    for kind in ["all1", "onecold"] {
        let v: Value = serde_json::from_str(&ok(&["detect", &host, &t, "--kind", kind])).unwrap();
        assert_eq!(v["detected"], false, "{kind}");
    }
}

#[test]
fn trojan_descriptors_validate() {
    for name in ["cnot_slot1", "dummy_pair", "symmetric5"] {
        let text = std::fs::read_to_string(data(&format!("trojans/{name}.json"))).unwrap();
        assert_valid("trojan", &text);
    }
}

#[test]
fn scramble_is_deterministic_and_validates() {
    let tt = data("tables/decod24.tt");
    for level in ["baseline", "lv1", "lv2", "lv3"] {
        let a = ok(&["scramble", &tt, "--level", level, "--seed", "11"]);
        let b = ok(&["scramble", &tt, "--level", level, "--seed", "11"]);
        assert_eq!(a, b);
        assert_valid("scramble", &a);
    }
    let v: Value = serde_json::from_str(&ok(&["scramble", &tt, "--level", "lv1"])).unwrap();
    assert_eq!(v["ancilla_values"][0], "10");
    assert_eq!(v["guess_space"], "4");
    let v: Value =
        serde_json::from_str(&ok(&["scramble", &tt, "--level", "lv3", "--seed", "1"])).unwrap();
    assert_eq!(v["lines"], 5);
    assert_eq!(v["guess_space"], "32");
}

#[test]
fn cost_formats() {
    let c = data("circuits/toffoli3.real");
    let v = assert_valid("cost", &ok(&["cost", &c]));
    assert_eq!(v["quantum_cost"], 5);
    assert_eq!(
        ok(&["cost", &c, "--format", "csv"]),
        "line_cost,gate_cost,quantum_cost\n3,1,5\n"
    );
}

#[test]
fn overhead_rows_follow_table_layout() {
    let out = ok(&[
        "overhead",
        &data("tables/decod24.tt"),
        &data("tables/4gt12.tt"),
        "--seed",
        "5",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("benchmark,line_lv1,line_lv2,line_lv3,gate_lv1"));
    let decod: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(decod[0], "decod24");
    assert_eq!(&decod[1..4], &["0.0", "0.0", "25.0"]);
    let gt: Vec<&str> = lines[2].split(',').collect();
    assert_eq!((gt[1], gt[4], gt[7]), ("N/A", "N/A", "N/A"));
    assert_eq!(gt[3], "20.0");
}

#[test]
fn prob_distribution_csv() {
    let out = ok(&["prob", "--p", "2", "--c", "1", "--t", "2"]);
    assert_eq!(
        out,
        "visited,exact,prob,percent\n0,3/14,0.21428571428571427,21.4\n1,4/7,0.5714285714285714,57.1\n2,3/14,0.21428571428571427,21.4\n"
    );
}

#[test]
fn surface_grid_shape() {
    let out = ok(&["surface", "--t", "8", "--p", "3..20", "--c", "1..20"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "p,c,t,prob");
    assert_eq!(lines.len(), 1 + 18 * 20);
    assert!(lines[1].starts_with("3,1,8,"));
    assert!(lines[360].starts_with("20,20,8,"));
}

#[test]
fn table2_formats() {
    let csv = ok(&["table2"]);
    assert!(csv.contains("\ndecod24_10,4,2,75.0,87.5\n"));
    assert!(csv.ends_with("average,,,85.8,92.9\n"));
    assert_valid("table2", &ok(&["table2", "--format", "json"]));
    assert!(ok(&["table2", "--format", "text"]).contains("Average"));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bench.csv");
    std::fs::write(&file, "name,total_inputs,constants\nx,5,1\n").unwrap();
    assert_eq!(
        ok(&["table2", "--bench", file.to_str().unwrap()]),
        "benchmark,total_inputs,constants,baseline_lv2,lv3\nx,5,1,50.0,75.0\naverage,,,50.0,75.0\n"
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["sim"]).code, 2);
    let tt = data("tables/decod24.tt");
    let r = run(&["scramble", &tt, "--level", "lv2"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("--seed"));
    let host = data("circuits/half_adder.real");
    let t = data("trojans/cnot_slot1.json");
    assert_eq!(run(&["detect", &host, &t]).code, 2);
    assert_eq!(
        run(&["detect", &host, &t, "--kind", "all1", "--random", "3"]).code,
        2
    );
    assert_eq!(run(&["detect", &host, &t, "--random", "3"]).code, 2);
    assert_eq!(
        run(&["surface", "--t", "8", "--p", "5..3", "--c", "1..2"]).code,
        2
    );
}

#[test]
fn help_goes_to_stdout() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("table2"));
}

#[test]
fn domain_errors_exit_1_with_one_line() {
    let check = |args: &[&str]| {
        let r = run(args);
        assert_eq!(r.code, 1, "{args:?}");
        assert_eq!(r.err.lines().count(), 1, "{:?}", r.err);
        assert!(r.err.starts_with("error: "));
        assert!(r.out.is_empty());
    };
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.real");
    std::fs::write(&bad, ".numvars 2\n.variables a b\n.begin\nt2 a\n.end\n").unwrap();
    check(&["sim", "/nonexistent/file.real", "01"]);
    check(&["sim", bad.to_str().unwrap(), "01"]);
    check(&["sim", &data("circuits/half_adder.real"), "01"]);
    check(&["sim", &data("circuits/half_adder.real"), "0x1"]);
    check(&["scramble", &data("tables/4gt12.tt"), "--level", "lv1"]);
    check(&["prob", "--p", "2", "--c", "1", "--t", "9"]);
    let host = data("circuits/half_adder.real");
    check(&["inject", &host, &data("trojans/symmetric5.json")]);
    let garbled = dir.path().join("t.json");
    std::fs::write(
        &garbled,
        "{\"position\": 0, \"gates\": [{\"controls\": [1], \"target\": 1}]}",
    )
    .unwrap();
    check(&["detect", &host, garbled.to_str().unwrap(), "--kind", "all1"]);
}
