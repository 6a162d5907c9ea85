//! Plot-ready CSV of effective against physical loss for both loss models.
//!
//! ```bash
//! cargo run --example loss_curves > curves.csv
//! ```

use pentagon_loss::analytics::{preannounced, LossMode, RecurrenceCurve};
use pentagon_loss::code::build_pentagon_code;
use pentagon_loss::report::parse_grid;
use pentagon_loss::strategy::NonpreRecurrence;

fn main() -> pentagon_loss::Result<()> {
    let grid = parse_grid("0:0.5:0.01")?;
    let pre = RecurrenceCurve::sample(LossMode::Preannounced, &preannounced, 5, &grid)?;
    let nonpre = NonpreRecurrence::build(&build_pentagon_code()?)?;
    let non = RecurrenceCurve::sample(LossMode::Nonpreannounced, &nonpre, 5, &grid)?;
    print!("{}", pre.to_csv());
    // skip the second header
    for line in non.to_csv().lines().skip(1) {
        println!("{line}");
    }
    Ok(())
}
