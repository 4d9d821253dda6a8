// A `t T t^-1` Trojan that neither canonical suite triggers.

use revguard::patterns::{all1_suite, detect, onecold_suite, TestSuite};
use revguard::trojan::{classify, five_line_symmetric, triggering_patterns};
use revguard::{parse_real, BitPattern};

const HOST: &str = include_str!(concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/data/circuits/quiet5.real"
));

pub fn run_example() -> revguard::Result<()> {
    let host = parse_real(HOST)?;
    let t = five_line_symmetric(1);
    println!("{:?}", classify(&t));
    let trig: Vec<String> = triggering_patterns(&t)?
        .iter()
        .map(|p| p.to_string())
        .collect();
    println!("triggered by {trig:?}");

    let a = detect(&host, &t, &all1_suite(&host))?;
    let o = detect(&host, &t, &onecold_suite(&host))?;
    println!(
        "all1 detected = {}, onecold detected = {}",
        a.detected, o.detected
    );
    assert!(!a.detected && !o.detected);

    let every: Vec<BitPattern> = (0..32)
        .map(|v| BitPattern::new(5, v))
        .collect::<Result<_, _>>()?;
    let sweep = detect(&host, &t, &TestSuite::custom(every))?;
    println!("exhaustive sweep witness: {:?}", sweep.witness);
    assert!(sweep.detected);
    Ok(())
}

fn main() -> revguard::Result<()> {
    run_example()
}
