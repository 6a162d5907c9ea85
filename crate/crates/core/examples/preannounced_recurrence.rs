//! Located loss: the level map, its threshold, overheads and small-p behaviour.

use num_rational::BigRational;
use pentagon_loss::analytics::{
    asymptotic_coefficient, find_threshold, gamma_effective, iterate_levels, iterate_pre_exact, overhead_for_target,
    pre_failure_polynomial, preannounced,
};

fn main() -> pentagon_loss::Result<()> {
    println!("F(P) = {}", pre_failure_polynomial());
    println!("threshold {:.9}", find_threshold(&preannounced).unwrap_or(f64::NAN));

    for p in [0.2, 0.3, 0.4] {
        let levels: Vec<String> = (1..=5).map(|n| format!("{:.3e}", iterate_levels(&preannounced, p, n))).collect();
        println!("p = {p}: {}", levels.join("  "));
        println!("  overhead for 1e-7: {:?}", overhead_for_target(&preannounced, p, 1e-7)?);
    }
    let exact = iterate_pre_exact(&BigRational::new(2.into(), 5.into()), 5)?;
    println!("exact P_eff(0.4, N=5) has a {}-digit denominator", exact.denom().to_string().len());

    let fit = asymptotic_coefficient(&preannounced);
    println!("small P: F ~ {:.4} P^{:?}", fit.coefficient, fit.exponent);
    println!("generic code with gamma = 10: {:.3e}", gamma_effective(10.0, 0.05, 3)?);
    Ok(())
}
