//! Logical CZ between two encoded qubits, the controlled-X correlation set and the
//! Hadamard step of a two-qubit chain.

use pentagon_loss::code::build_pentagon_code;
use pentagon_loss::gates::{cx_candidate, search_cx_adjacency};
use pentagon_loss::report::GateVerdicts;

fn main() -> pentagon_loss::Result<()> {
    let verdicts = GateVerdicts::run(&build_pentagon_code()?, &cx_candidate()?)?;
    print!("{}", verdicts.to_text());

    let search = search_cx_adjacency()?;
    for edges in &search.candidates {
        println!("minimal adjacency: {edges:?}");
    }
    Ok(())
}
