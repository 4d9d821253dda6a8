// Never-triggered probability for 8 triggering patterns over a grid of
// primary and ancillary input counts, plus one full distribution.

use revguard::defense::{never_triggered_surface, surface_csv, trigger_count_distribution};

pub fn run_example() -> revguard::Result<()> {
    let cells = never_triggered_surface(8, 3..=20, 1..=20)?;
    let csv = surface_csv(&cells);
    println!("{} grid cells", cells.len());
    for line in csv.lines().take(4) {
        println!("{line}");
    }

    let d = trigger_count_distribution(3, 2, 4)?;
    for (i, p) in d.probs.iter().enumerate() {
        println!("P({i} of 4 triggering rows visited) = {p}");
    }
    assert_eq!(d.total(), num_rational::BigRational::from_integer(1.into()));
    Ok(())
}

fn main() -> revguard::Result<()> {
    run_example()
}
