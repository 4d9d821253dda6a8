// Disable probabilities for Trojans with one triggering pattern across the
// bundled benchmark list.

use revguard::benchmarks::table2_shapes;
use revguard::defense::table2_report;

pub fn run_example() -> revguard::Result<()> {
    let report = table2_report(&table2_shapes())?;
    print!("{}", report.to_text());
    assert_eq!(report.average_baseline_lv2, "85.8");
    assert_eq!(report.average_lv3, "92.9");
    Ok(())
}

fn main() -> revguard::Result<()> {
    run_example()
}
