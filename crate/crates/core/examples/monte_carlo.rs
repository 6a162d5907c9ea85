//! Seeded Monte Carlo against the analytic recurrences.
//!
//! ```bash
//! cargo run --release --example monte_carlo
//! ```

use pentagon_loss::analytics::LossMode;
use pentagon_loss::montecarlo::{to_csv, SimConfig, Simulator};

fn main() -> pentagon_loss::Result<()> {
    let sim = Simulator::new()?;
    let mut configs = Vec::new();
    for (mode, p) in [(LossMode::Preannounced, 0.3), (LossMode::Nonpreannounced, 0.15)] {
        for levels in 1..=3 {
            configs.push(SimConfig::new(mode, p, levels, 200_000, 2024));
        }
    }
    let mut revealed = SimConfig::new(LossMode::Nonpreannounced, 0.3, 2, 200_000, 2024);
    revealed.revealed_loss = true;
    configs.push(revealed);

    let reports = sim.sweep(&configs)?.into_iter().collect::<Result<Vec<_>, _>>()?;
    print!("{}", to_csv(&reports));
    Ok(())
}
