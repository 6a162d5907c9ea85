//! Graph-state preparation, X measurement and qubit removal on a stabilizer tableau:
//! teleporting a centre qubit into the ring.

use pentagon_loss::code::{build_pentagon_code, teleport_into_ring};
use pentagon_loss::pauli::Basis;
use pentagon_loss::tableau::pauli_frame;

fn main() -> pentagon_loss::Result<()> {
    let code = build_pentagon_code()?;
    for outcome in [false, true] {
        let state = teleport_into_ring(Basis::X, false, outcome)?;
        println!(
            "centre |+>, outcome {}: generators {:?}, Z-bar sign {:?}",
            u8::from(outcome),
            state.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            state.sign_of(code.logical(Basis::Z))?
        );
    }
    let a = teleport_into_ring(Basis::X, false, false)?;
    let b = teleport_into_ring(Basis::X, false, true)?;
    if let Some(frame) = pauli_frame(&a, &b)? {
        println!("byproduct between the two outcomes: {frame}");
    }
    Ok(())
}
