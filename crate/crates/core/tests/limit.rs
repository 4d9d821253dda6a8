// Lives in its own test binary because the limit is process-wide.

#[test]
fn exhaustive_limit_flag_caps_sweeps() {
    let host = concat!(env!("CARGO_MANIFEST_DIR"), "/data/circuits/full_adder.real");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = revguard::cli::run(
        ["revguard", "--exhaustive-limit", "3", "table", host],
        &mut out,
        &mut err,
    );
    assert_eq!(code, 1);
    assert!(String::from_utf8(err)
        .unwrap()
        .contains("exhaustive limit of 3"));
    assert_eq!(revguard::circuit::exhaustive_limit(), 3);
}
