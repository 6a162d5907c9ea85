//! Pauli strings in binary symplectic form.
//!
//! ```bash
//! cargo run --example pauli_algebra
//! ```

use pentagon_loss::pauli::PauliOperator;

fn main() -> pentagon_loss::Result<()> {
    let x: PauliOperator = "X".parse()?;
    let z: PauliOperator = "Z".parse()?;
    println!("X * Z = {}", x.multiply(&z)?);
    println!("Z * X = {}", z.multiply(&x)?);
    println!("X and Z commute: {}", x.commutes(&z)?);

    // neighbouring ring stabilizers multiply into a code stabilizer
    let k1: PauliOperator = "XZIIZ".parse()?;
    let k2: PauliOperator = "ZXZII".parse()?;
    println!("K1 * K2 = {}", k1.multiply(&k2)?);

    let xx: PauliOperator = "XX".parse()?;
    println!("CZ (XX) CZ = {}", xx.conjugate_by_cz(0, 1)?);
    println!("H Y H = {}", "Y".parse::<PauliOperator>()?.conjugate_by_h(0)?);

    let op: PauliOperator = "-iXYZI".parse()?;
    println!(
        "{op}: weight {}, support {:?}, hermitian {}",
        op.weight(),
        op.support(),
        op.is_hermitian()
    );
    Ok(())
}
