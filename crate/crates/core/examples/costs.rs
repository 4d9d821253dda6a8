// Cost of each scrambling level and the overhead table.

use revguard::benchmarks::generated;
use revguard::embedding::Completion;
use revguard::metrics::{cost, overhead, overhead_csv, OverheadRow};
use revguard::synthesis::{build_level, synthesize_embedding};
use revguard::{embed, Error, Level};

pub fn run_example() -> revguard::Result<()> {
    let mut rows = Vec::new();
    for (name, tt) in generated().into_iter().take(3) {
        let e = embed(&tt, Completion::LexSmallest)?;
        let base = cost(&synthesize_embedding(&e)?);
        println!("{name}: {base:?}");
        let level = |l: Level| match build_level(&e, l, 1) {
            Ok(b) => overhead(&base, &cost(&b.circuit)).map(Some),
            Err(Error::UnsupportedLevel(_)) => Ok(None),
            Err(other) => Err(other),
        };
        rows.push(OverheadRow {
            benchmark: name.to_string(),
            lv1: level(Level::Lv1)?,
            lv2: level(Level::Lv2)?,
            lv3: level(Level::Lv3)?,
        });
    }
    print!("{}", overhead_csv(&rows));
    Ok(())
}

fn main() -> revguard::Result<()> {
    run_example()
}
