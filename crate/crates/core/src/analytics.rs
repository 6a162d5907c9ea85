//! Level recurrences for the effective loss probability under concatenation.
//!
//! With located (preannounced) loss a pentagon fails exactly when three or more of its
//! five children are lost, so one level maps `P ↦ P⁵ + 5P⁴(1-P) + 10P³(1-P)²`. The
//! physical loss probability enters at the top level and the map is applied once per
//! level down to the logical qubit.

use crate::error::{Error, Result};
use crate::poly::LossPolynomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// One level of the concatenation recurrence: the probability that a logical
/// measurement fails given the failure probability of each child.
pub trait FailureFunction: Sync {
    fn failure(&self, p: f64) -> f64;
}

impl<F: Fn(f64) -> f64 + Sync> FailureFunction for F {
    fn failure(&self, p: f64) -> f64 {
        self(p)
    }
}

impl FailureFunction for LossPolynomial {
    fn failure(&self, p: f64) -> f64 {
        self.eval(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LossMode {
    #[serde(rename = "pre")]
    Preannounced,
    #[serde(rename = "nonpre")]
    Nonpreannounced,
}

impl fmt::Display for LossMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LossMode::Preannounced => "pre",
            LossMode::Nonpreannounced => "nonpre",
        })
    }
}

impl FromStr for LossMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pre" | "preannounced" => Ok(LossMode::Preannounced),
            "nonpre" | "nonpreannounced" => Ok(LossMode::Nonpreannounced),
            other => Err(Error::out_of_range("mode", other, "pre or nonpre")),
        }
    }
}

pub(crate) fn check_probability(what: &'static str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::out_of_range(what, p, "[0, 1]"));
    }
    Ok(())
}

/// Preannounced one-level map, unchecked.
pub fn preannounced(p: f64) -> f64 {
    // P³(10 - 15P + 6P²) is the expanded sum of the three failing terms.
    p * p * p * (10.0 - 15.0 * p + 6.0 * p * p)
}

pub fn pre_failure(p: f64) -> Result<f64> {
    check_probability("P", p)?;
    Ok(preannounced(p))
}

pub fn pre_failure_exact(p: &BigRational) -> Result<BigRational> {
    if *p < BigRational::zero() || *p > BigRational::one() {
        return Err(Error::out_of_range("P", p, "[0, 1]"));
    }
    Ok(pre_failure_polynomial().eval_exact(p))
}

/// `p⁵ + 5p⁴(1-p) + 10p³(1-p)²` as an exact polynomial.
pub fn pre_failure_polynomial() -> LossPolynomial {
    let p = LossPolynomial::p();
    let q = LossPolynomial::one_minus_p();
    let scale = |k: i64, poly: LossPolynomial| &LossPolynomial::from_integers(&[k]) * &poly;
    let t5 = p.pow(5);
    let t4 = scale(5, &p.pow(4) * &q);
    let t3 = scale(10, &p.pow(3) * &q.pow(2));
    &(&t5 + &t4) + &t3
}

/// Applies `base` `levels` times starting from the physical loss probability.
pub fn iterate_levels(base: &dyn FailureFunction, p: f64, levels: u32) -> f64 {
    (0..levels).fold(p, |acc, _| base.failure(acc))
}

/// Exact preannounced effective loss after `levels` levels.
pub fn iterate_pre_exact(p: &BigRational, levels: u32) -> Result<BigRational> {
    let poly = pre_failure_polynomial();
    pre_failure_exact(p)?;
    Ok((0..levels).fold(p.clone(), |acc, _| poly.eval_exact(&acc)))
}

/// Bracket margin: 0 and 1 are always trivial fixed points.
pub const THRESHOLD_MARGIN: f64 = 1e-6;
pub const THRESHOLD_TOLERANCE: f64 = 1e-9;

/// Nontrivial fixed point of `base` where iteration turns from contracting
/// (`base(p) < p`) to expanding (`base(p) > p`). `None` if there is no such crossing.
pub fn find_threshold(base: &dyn FailureFunction) -> Option<f64> {
    let g = |p: f64| base.failure(p) - p;
    const SCAN: usize = 4096;
    let lo0 = THRESHOLD_MARGIN;
    let hi0 = 1.0 - THRESHOLD_MARGIN;
    let step = (hi0 - lo0) / SCAN as f64;
    let mut prev_p = lo0;
    let mut prev_g = g(lo0);
    for i in 1..=SCAN {
        let p = if i == SCAN { hi0 } else { lo0 + step * i as f64 };
        let gp = g(p);
        if prev_g < 0.0 && gp >= 0.0 {
            let (mut lo, mut hi) = (prev_p, p);
            if gp == 0.0 {
                return Some(p);
            }
            while hi - lo > THRESHOLD_TOLERANCE / 4.0 {
                let mid = 0.5 * (lo + hi);
                if g(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev_p = p;
        prev_g = gp;
    }
    None
}

pub const MAX_OVERHEAD_LEVELS: u32 = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Overhead {
    Reached { levels: u32, qubits: u64, effective: f64 },
    Unreachable { reason: String },
}

impl Overhead {
    pub fn qubits(&self) -> Option<u64> {
        match self {
            Overhead::Reached { qubits, .. } => Some(*qubits),
            Overhead::Unreachable { .. } => None,
        }
    }
}

/// Smallest number of levels whose effective loss is at most `epsilon`.
pub fn overhead_for_target(base: &dyn FailureFunction, p: f64, epsilon: f64) -> Result<Overhead> {
    check_probability("p", p)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::out_of_range("epsilon", epsilon, "(0, 1)"));
    }
    if let Some(t) = find_threshold(base) {
        if p >= t {
            return Ok(Overhead::Unreachable {
                reason: format!("p = {p} is at or above the threshold {t:.9}"),
            });
        }
    }
    let mut value = p;
    for levels in 1..=MAX_OVERHEAD_LEVELS {
        value = base.failure(value);
        if value <= epsilon {
            return Ok(Overhead::Reached {
                levels,
                qubits: 5u64.pow(levels),
                effective: value,
            });
        }
    }
    Ok(Overhead::Unreachable {
        reason: format!("effective loss {value:e} still above {epsilon:e} after {MAX_OVERHEAD_LEVELS} levels"),
    })
}

/// Exact-arithmetic variant for the preannounced map.
pub fn overhead_pre_exact(p: &BigRational, epsilon: &BigRational) -> Result<Option<u32>> {
    let poly = pre_failure_polynomial();
    let half = BigRational::new(1.into(), 2.into());
    pre_failure_exact(p)?;
    if *p >= half {
        return Ok(None);
    }
    let mut value = p.clone();
    for levels in 1..=MAX_OVERHEAD_LEVELS {
        value = poly.eval_exact(&value);
        if value <= *epsilon {
            return Ok(Some(levels));
        }
    }
    Ok(None)
}

/// `(γp)^(2^N) / γ`, the effective error after `N` levels of a code whose one-level
/// map is `P ↦ γP²`. Evaluated in the log domain.
pub fn gamma_effective(gamma: f64, p: f64, levels: u32) -> Result<f64> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::out_of_range("gamma", gamma, "positive and finite"));
    }
    check_probability("p", p)?;
    if p == 0.0 {
        return Ok(0.0);
    }
    let log = 2f64.powi(levels as i32) * (gamma * p).ln() - gamma.ln();
    Ok(log.exp())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticFit {
    /// Least-squares slope of `log base(P)` against `log P`.
    pub raw_slope: f64,
    /// Slope snapped to the nearest integer when within 0.05 of it.
    pub exponent: Option<u32>,
    /// `c` in `base(P) ≈ c·P^k`, refitted with the snapped exponent when available.
    pub coefficient: f64,
    pub degenerate: bool,
}

/// Fits `base(P) ≈ c·P^k` on 41 log-spaced points in `[1e-4, 1e-2]`.
pub fn asymptotic_coefficient(base: &dyn FailureFunction) -> AsymptoticFit {
    const POINTS: usize = 41;
    let samples: Vec<(f64, f64)> = (0..POINTS)
        .map(|i| {
            let lp = -4.0 + 2.0 * i as f64 / (POINTS - 1) as f64;
            let p = 10f64.powf(lp);
            (p.ln(), base.failure(p))
        })
        .collect();
    if samples.iter().any(|&(_, v)| !(v > 0.0 && v.is_finite())) {
        return AsymptoticFit {
            raw_slope: f64::NAN,
            exponent: None,
            coefficient: f64::NAN,
            degenerate: true,
        };
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(x, v)| (x, v.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let rounded = slope.round();
    if (slope - rounded).abs() <= 0.05 && rounded >= 1.0 {
        let k = rounded;
        let log_c = pts.iter().map(|&(x, y)| y - k * x).sum::<f64>() / n;
        AsymptoticFit {
            raw_slope: slope,
            exponent: Some(k as u32),
            coefficient: log_c.exp(),
            degenerate: false,
        }
    } else {
        AsymptoticFit {
            raw_slope: slope,
            exponent: None,
            coefficient: (my - slope * mx).exp(),
            degenerate: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub mode: LossMode,
    pub level: u32,
    pub p: f64,
    #[serde(rename = "P_eff")]
    pub p_eff: f64,
}

/// Effective loss against physical loss for levels `1..=max_level`.
#[derive(Clone, Debug, Serialize)]
pub struct RecurrenceCurve {
    pub mode: LossMode,
    pub max_level: u32,
    pub points: Vec<CurvePoint>,
}

impl RecurrenceCurve {
    /// Samples every level on `grid`; rows are ordered by level, then by grid position.
    pub fn sample(mode: LossMode, base: &dyn FailureFunction, max_level: u32, grid: &[f64]) -> Result<Self> {
        for &p in grid {
            check_probability("p", p)?;
        }
        let points = (1..=max_level)
            .flat_map(|level| grid.iter().map(move |&p| (level, p)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(level, p)| CurvePoint {
                mode,
                level,
                p,
                p_eff: iterate_levels(base, p, level),
            })
            .collect();
        Ok(RecurrenceCurve {
            mode,
            max_level,
            points,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("mode,level,p,P_eff\n");
        for pt in &self.points {
            out.push_str(&format!("{},{},{},{:e}\n", pt.mode, pt.level, pt.p, pt.p_eff));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn pre_failure_values() {
        assert_eq!(pre_failure(0.5).unwrap(), 0.5);
        assert!((pre_failure(0.2).unwrap() - 0.05792).abs() < 1e-15);
        assert!((pre_failure(0.3).unwrap() - 0.16308).abs() < 1e-15);
        assert!(pre_failure(-0.1).is_err());
        assert!(pre_failure(1.5).is_err());
        assert_eq!(pre_failure_exact(&rational(1, 2)).unwrap(), rational(1, 2));
        assert_eq!(pre_failure_exact(&rational(1, 5)).unwrap(), rational(5792, 100000));
    }

    #[test]
    fn polynomial_matches_closed_form() {
        assert_eq!(pre_failure_polynomial(), LossPolynomial::from_integers(&[0, 0, 0, 10, -15, 6]));
    }

    #[test]
    fn iterated_levels() {
        let v = iterate_levels(&preannounced, 0.2, 2);
        assert!((v - 1.7781557e-3).abs() < 1e-9);
        let v = iterate_levels(&preannounced, 0.3, 4);
        assert!((v / 4.5043121e-10 - 1.0).abs() < 1e-6);
        assert_eq!(iterate_levels(&preannounced, 0.0, 7), 0.0);
    }

    #[test]
    fn thresholds() {
        let t = find_threshold(&preannounced).unwrap();
        assert!((t - 0.5).abs() < 1e-9);
        assert_eq!(find_threshold(&|p: f64| p), None);
        assert_eq!(find_threshold(&|p: f64| p * p), None);
    }

    #[test]
    fn overheads() {
        let q = |p| overhead_for_target(&preannounced, p, 1e-7).unwrap().qubits();
        assert_eq!(q(0.2), Some(125));
        assert_eq!(q(0.3), Some(625));
        assert_eq!(q(0.4), Some(3125));
        assert_eq!(q(0.5), None);
        assert!(overhead_for_target(&preannounced, 0.2, 0.0).is_err());
        assert_eq!(overhead_pre_exact(&rational(2, 10), &rational(1, 100_000_000)).unwrap(), Some(4));
    }

    #[test]
    fn gamma_model() {
        assert!((gamma_effective(10.0, 0.1, 7).unwrap() - 0.1).abs() < 1e-12);
        assert!((gamma_effective(10.0, 0.01, 1).unwrap() - 1e-3).abs() < 1e-15);
        assert!((gamma_effective(10.0, 0.01, 2).unwrap() - 1e-5).abs() < 1e-17);
        assert_eq!(gamma_effective(10.0, 0.01, 200).unwrap(), 0.0);
        assert!(gamma_effective(0.0, 0.1, 1).is_err());
    }

    #[test]
    fn asymptotics() {
        let fit = asymptotic_coefficient(&preannounced);
        assert_eq!(fit.exponent, Some(3));
        assert!((fit.coefficient / 10.0 - 1.0).abs() < 0.01, "{fit:?}");
        let fit = asymptotic_coefficient(&|p: f64| p * p);
        assert_eq!(fit.exponent, Some(2));
        assert!((fit.coefficient - 1.0).abs() < 1e-9);
        assert!(asymptotic_coefficient(&|_p: f64| 0.0).degenerate);
    }

    #[test]
    fn curve_csv_layout() {
        let c = RecurrenceCurve::sample(LossMode::Preannounced, &preannounced, 2, &[0.0, 0.5]).unwrap();
        let csv = c.to_csv();
        assert!(csv.starts_with("mode,level,p,P_eff\npre,1,0,0e0\npre,1,0.5,5e-1\n"));
        assert_eq!(c.points.len(), 4);
    }
}
