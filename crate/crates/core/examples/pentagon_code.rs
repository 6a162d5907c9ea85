//! The five-qubit ring graph code: stabilizers, logical operators, weight-3
//! representatives and the encoding identities.

use pentagon_loss::code::{build_pentagon_code, verify_encoding_identities};
use pentagon_loss::pauli::Basis;
use pentagon_loss::report::code_text;

fn main() -> pentagon_loss::Result<()> {
    let code = build_pentagon_code()?;
    print!("{}", code_text(&code.describe()?));

    for b in Basis::ALL {
        let k5 = &code.ring_stabilizers()[4];
        if code.logical_coset(k5)? == Some(b) {
            println!("ring stabilizer {k5} lies in the {b}-bar coset");
        }
    }
    // any two losses are survivable, three are not
    let pairs = (0u32..32).filter(|m| m.count_ones() == 2).all(|m| code.recoverable(Basis::Z, m).unwrap());
    let triples = (0u32..32).filter(|m| m.count_ones() == 3).any(|m| code.recoverable(Basis::Z, m).unwrap());
    println!("all pairs recoverable: {pairs}; some triple recoverable: {triples}");

    let report = verify_encoding_identities(&code)?;
    println!("encoding identities: {}/{} pass", report.checks.iter().filter(|c| c.passed).count(), report.checks.len());
    Ok(())
}
