//! Audits the published decision tree for a Z-bar measurement: which logical each
//! SUCCESS leaf actually certifies, and which branches can never be taken.

use pentagon_loss::analytics::find_threshold;
use pentagon_loss::code::build_pentagon_code;
use pentagon_loss::pauli::Basis;
use pentagon_loss::report::policy_text;
use pentagon_loss::strategy::{published_tree, validate_policy};

fn main() -> pentagon_loss::Result<()> {
    let code = build_pentagon_code()?;
    let tree = published_tree();
    let report = validate_policy(&tree, &code, &[Basis::Z])?;
    print!("{}", policy_text(&report, &tree.failure_polynomial()));

    let failure = tree.failure_polynomial();
    println!("fixed point of the literal tree: {:?}", find_threshold(&failure));
    Ok(())
}
