// Embed the half adder, synthesize it and print the `.real` netlist.

use revguard::embedding::Completion;
use revguard::synthesis::synthesize_embedding;
use revguard::{embed, permutation, write_real, TruthTable};

pub fn run_example() -> revguard::Result<()> {
    let tt: TruthTable = "00 -> 00\n01 -> 01\n10 -> 01\n11 -> 10\n".parse()?;
    let e = embed(&tt, Completion::LexSmallest)?;
    println!(
        "{} primary inputs, {} ancillae, {} garbage outputs, {} lines",
        e.primary_inputs(),
        e.ancillary(),
        e.garbage(),
        e.width()
    );

    let c = synthesize_embedding(&e)?;
    let perm = permutation(&c)?;
    for x in 0..1u64 << tt.inputs() {
        let row = e.row_index(x, 0);
        assert_eq!(e.project(perm.apply(row)), tt.row(x));
    }
    print!("{}", write_real(&c));
    Ok(())
}

fn main() -> revguard::Result<()> {
    run_example()
}
