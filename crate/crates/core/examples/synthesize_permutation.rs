// Synthesize random reversible functions and check the cascades.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use revguard::metrics::cost;
use revguard::random::random_permutation;
use revguard::{permutation, synthesize};

pub fn run_example() -> revguard::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for width in 2..=6 {
        let spec = random_permutation(&mut rng, width);
        let c = synthesize(&spec)?;
        assert_eq!(permutation(&c)?, spec);
        let r = cost(&c);
        println!(
            "n={width}: {} gates, quantum cost {}",
            r.gate_cost, r.quantum_cost
        );
    }
    Ok(())
}

fn main() -> revguard::Result<()> {
    run_example()
}
