//! Membership tests in stabilizer groups and coset enumeration.

use pentagon_loss::graph::{graph_stabilizers, ring_graph};
use pentagon_loss::pauli::{coset_elements, in_span, PauliOperator, StabilizerGroup};

fn main() -> pentagon_loss::Result<()> {
    let ring = StabilizerGroup::new(5, graph_stabilizers(&ring_graph(5)?))?;
    println!("ring group order {}", ring.order());

    let target: PauliOperator = "ZYYZI".parse()?;
    match in_span(&ring, &[], &target)? {
        Some(cert) => println!(
            "{target} = product of generators {:?} (phase exact: {})",
            cert.generators.iter().map(|g| g + 1).collect::<Vec<_>>(),
            cert.is_exact()
        ),
        None => println!("{target} is not in the group"),
    }

    // Allowing measured single-qubit operators as extra factors.
    let code = StabilizerGroup::new(5, ["YYZIZ", "ZYYZI", "IZYYZ", "ZIZYY"].iter().map(|s| s.parse().unwrap()).collect())?;
    let clicked: Vec<PauliOperator> = ["XIIII", "IZIII", "IIIIZ"].iter().map(|s| s.parse().unwrap()).collect();
    let logical_x: PauliOperator = "XXXXX".parse()?;
    let cert = in_span(&code, &clicked, &logical_x)?;
    println!("X-bar from clicks X1 Z2 Z5: {}", cert.is_some());

    let coset = coset_elements(&code, &logical_x)?;
    println!("X-bar coset has {} elements; lightest {}", coset.len(), coset[0]);
    Ok(())
}
