//! Base-5 addressing of physical qubits under N levels of concatenation.

use pentagon_loss::code::layout;

fn main() -> pentagon_loss::Result<()> {
    let l = layout(3)?;
    println!("{} levels -> {} physical qubits", l.levels(), l.physical_count());
    for leaf in [0, 1, 5, 124] {
        let path = l.path(leaf)?;
        println!("leaf {leaf:>3} -> ring positions {path:?} -> leaf {}", l.leaf(&path)?);
    }
    Ok(())
}
