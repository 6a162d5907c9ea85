//! Exact expectimax over probe histories for non-preannounced loss.
//!
//! Prints the failure polynomial of the best adaptive policy for each logical basis,
//! the resulting threshold, and the Z-bar policy as JSON.

use pentagon_loss::analytics::find_threshold;
use pentagon_loss::code::build_pentagon_code;
use pentagon_loss::pauli::Basis;
use pentagon_loss::strategy::{located_failure, published_tree, NonpreRecurrence};

fn main() -> pentagon_loss::Result<()> {
    let code = build_pentagon_code()?;
    let rec = NonpreRecurrence::build(&code)?;
    for b in Basis::ALL {
        let opt = rec.policy(b);
        println!(
            "{b}-bar: F = {}  ({} nodes, {} states, uniformly optimal: {})",
            opt.failure,
            opt.policy.node_count(),
            opt.states_explored,
            opt.uniform
        );
    }
    println!("located-loss variant: {}", located_failure(&code, Basis::Z)?);
    println!("threshold {:.6}", find_threshold(&rec).unwrap_or(f64::NAN));

    let literal = published_tree().failure_polynomial();
    for p in [0.05, 0.1, 0.15] {
        println!(
            "p = {p}: optimal {:.5}, literal tree {:.5}, per-basis after 3 levels {:?}",
            rec.policy(Basis::Z).failure.eval(p),
            literal.eval(p),
            rec.iterate_vector(p, 3)?
        );
    }
    println!("{}", serde_json::to_string_pretty(&rec.policy(Basis::Z).policy)?);
    Ok(())
}
