// Insert a Trojan into a host and run the All-1, One-Cold and random suites.

use revguard::patterns::{all1_suite, detect, onecold_suite, random_detect};
use revguard::trojan::{difficulty, triggering_patterns};
use revguard::{parse_real, ToffoliGate, TrojanSpec};

const HOST: &str = include_str!(concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/data/circuits/full_adder.real"
));

pub fn run_example() -> revguard::Result<()> {
    let host = parse_real(HOST)?;
    let n = host.lines();
    let t = TrojanSpec::new(n, vec![ToffoliGate::new([0, 1, 2], 3)?], 5)?;
    println!(
        "{} triggering patterns, D = {}",
        triggering_patterns(&t)?.len(),
        difficulty(&t)?
    );

    let all1 = all1_suite(&host);
    let report = detect(&host, &t, &all1)?;
    println!(
        "all1: {} patterns, detected = {}",
        all1.len(),
        report.detected
    );
    assert!(report.detected);

    let onecold = onecold_suite(&host);
    println!("onecold: {} patterns", onecold.len());
    println!(
        "{}",
        serde_json::to_string_pretty(&detect(&host, &t, &onecold)?).unwrap()
    );

    let r = random_detect(&host, &t, 4, 1)?;
    println!("4 random patterns: detected = {}", r.detected);
    Ok(())
}

fn main() -> revguard::Result<()> {
    run_example()
}
