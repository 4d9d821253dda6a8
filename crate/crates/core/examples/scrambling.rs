// Ancillary scrambling levels on the 2-to-4 decoder.

use revguard::benchmarks::decod24;
use revguard::embedding::{functional_reachable, Completion};
use revguard::synthesis::build_level;
use revguard::{embed, permutation, BitPattern, Level};

pub fn run_example() -> revguard::Result<()> {
    let e = embed(&decod24(), Completion::LexSmallest)?;
    for level in Level::ALL {
        let b = build_level(&e, level, 42)?;
        let rows = functional_reachable(&b.embedding, &b.assignment)?;
        let rows: Vec<String> = rows
            .iter()
            .map(|&r| BitPattern::new(b.embedding.width(), r).map(|p| p.to_string()))
            .collect::<Result<_, _>>()?;
        println!(
            "{level}: {} lines, {} gates, guess space {}, functional rows {rows:?}",
            b.circuit.lines(),
            b.circuit.gate_count(),
            b.assignment.guess_space()
        );
        let perm = permutation(&b.circuit)?;
        for x in 0..4u64 {
            let row = b.embedding.row_index(x, b.assignment.value_for(x));
            assert_eq!(b.embedding.project(perm.apply(row)), 1 << x);
        }
    }
    Ok(())
}

fn main() -> revguard::Result<()> {
    run_example()
}
