// Simulate the embedded half adder forwards and backwards and dump its
// permutation.

use revguard::{parse_real, permutation, simulate, simulate_inverse, BitPattern};

const HALF_ADDER: &str = include_str!(concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/data/circuits/half_adder.real"
));

pub fn run_example() -> revguard::Result<()> {
    let c = parse_real(HALF_ADDER)?;
    let input: BitPattern = "110".parse()?;
    let out = simulate(&c, input, 0, c.gate_count())?;
    println!("{input} -> {out}");
    assert_eq!(out.to_string(), "101");

    let back = simulate_inverse(&c, out, 0, c.gate_count())?;
    assert_eq!(back, input);

    // state after the first two gates only
    let partial = simulate(&c, input, 0, 2)?;
    println!("after 2 gates: {partial}");

    let perm = permutation(&c)?;
    for (x, y) in perm.map().iter().enumerate() {
        println!(
            "{} -> {}",
            BitPattern::new(3, x as u64)?,
            BitPattern::new(3, *y)?
        );
    }
    Ok(())
}

fn main() -> revguard::Result<()> {
    run_example()
}
