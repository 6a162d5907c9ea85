//! Exact polynomials in the loss probability `p` with rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// `Σ c_k p^k`, coefficients in ascending order with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LossPolynomial {
    coefficients: Vec<BigRational>,
}

impl LossPolynomial {
    pub fn new(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        LossPolynomial { coefficients }
    }

    pub fn from_integers(coefficients: &[i64]) -> Self {
        LossPolynomial::new(
            coefficients
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        LossPolynomial::new(Vec::new())
    }

    pub fn one() -> Self {
        LossPolynomial::from_integers(&[1])
    }

    /// The polynomial `p`.
    pub fn p() -> Self {
        LossPolynomial::from_integers(&[0, 1])
    }

    /// The polynomial `1 - p`.
    pub fn one_minus_p() -> Self {
        LossPolynomial::from_integers(&[1, -1])
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn lowest_term(&self) -> Option<(usize, BigRational)> {
        self.coefficients
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(LossPolynomial::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, p: f64) -> f64 {
        let coeffs: Vec<f64> = self
            .coefficients
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect();
        coeffs.iter().rev().fold(0.0, |acc, &c| acc * p + c)
    }

    /// `eval` at every point, converting the coefficients once.
    pub fn eval_many(&self, ps: &[f64]) -> Vec<f64> {
        let coeffs: Vec<f64> = self
            .coefficients
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect();
        ps.iter()
            .map(|&p| coeffs.iter().rev().fold(0.0, |acc, &c| acc * p + c))
            .collect()
    }

    pub fn eval_exact(&self, p: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * p + c)
    }

    /// `1 - self`.
    pub fn complement(&self) -> Self {
        &LossPolynomial::one() - self
    }

    /// `self(inner(p))`.
    pub fn compose(&self, inner: &LossPolynomial) -> Self {
        self.coefficients
            .iter()
            .rev()
            .fold(LossPolynomial::zero(), |acc, c| {
                &(&acc * inner) + &LossPolynomial::new(vec![c.clone()])
            })
    }

    /// Nondecreasing on `[0, 1]`, checked on a grid of the given step.
    pub fn is_monotone_on_grid(&self, step: f64) -> bool {
        let n = (1.0 / step).round() as usize;
        let values: Vec<f64> = (0..=n).map(|i| self.eval(i as f64 / n as f64)).collect();
        values.windows(2).all(|w| w[1] >= w[0] - 1e-12)
    }

    /// `self ≥ other` on every interior grid point, within `tol`.
    pub fn dominates_on_grid(&self, other: &LossPolynomial, points: usize, tol: f64) -> bool {
        let grid = interior_grid(points);
        let a = self.eval_many(&grid);
        let b = other.eval_many(&grid);
        a.iter().zip(&b).all(|(x, y)| x >= &(y - tol))
    }
}

/// `i / points` for `i` in `1..points`.
pub fn interior_grid(points: usize) -> Vec<f64> {
    (1..points).map(|i| i as f64 / points as f64).collect()
}

impl Add for &LossPolynomial {
    type Output = LossPolynomial;

    fn add(self, rhs: &LossPolynomial) -> LossPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        let zero = BigRational::zero();
        LossPolynomial::new(
            (0..n)
                .map(|k| {
                    self.coefficients.get(k).unwrap_or(&zero) + rhs.coefficients.get(k).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl Sub for &LossPolynomial {
    type Output = LossPolynomial;

    fn sub(self, rhs: &LossPolynomial) -> LossPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        let zero = BigRational::zero();
        LossPolynomial::new(
            (0..n)
                .map(|k| {
                    self.coefficients.get(k).unwrap_or(&zero) - rhs.coefficients.get(k).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl Mul for &LossPolynomial {
    type Output = LossPolynomial;

    fn mul(self, rhs: &LossPolynomial) -> LossPolynomial {
        if self.coefficients.is_empty() || rhs.coefficients.is_empty() {
            return LossPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LossPolynomial::new(out)
    }
}

impl fmt::Display for LossPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let coeff = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("({}/{})", mag.numer(), mag.denom())
            };
            match k {
                0 => f.write_str(&coeff)?,
                _ => {
                    if !mag.is_one() {
                        f.write_str(&coeff)?;
                    }
                    f.write_str("p")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LossPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LossPolynomial({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    coefficients: Vec<RationalRepr>,
}

impl Serialize for LossPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolynomialRepr {
            coefficients: self
                .coefficients
                .iter()
                .map(|c| RationalRepr {
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LossPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = PolynomialRepr::deserialize(deserializer)?;
        let coefficients = repr
            .coefficients
            .into_iter()
            .map(|r| {
                let num: BigInt = r.num.parse().map_err(D::Error::custom)?;
                let den: BigInt = r.den.parse().map_err(D::Error::custom)?;
                if den.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(BigRational::new(num, den))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LossPolynomial::new(coefficients))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let q = LossPolynomial::one_minus_p();
        let sq = &q * &q;
        assert_eq!(sq, LossPolynomial::from_integers(&[1, -2, 1]));
        assert_eq!(&sq - &sq, LossPolynomial::zero());
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(LossPolynomial::p().pow(3).lowest_term().unwrap().0, 3);
        assert_eq!(sq.to_string(), "1 - 2p + p^2");
    }

    #[test]
    fn composition() {
        let sq = LossPolynomial::p().pow(2);
        let inner = LossPolynomial::from_integers(&[1, 1]);
        assert_eq!(sq.compose(&inner), LossPolynomial::from_integers(&[1, 2, 1]));
    }

    #[test]
    fn json_uses_string_rationals() {
        let p = LossPolynomial::new(vec![
            BigRational::new(1.into(), 3.into()),
            BigRational::from_integer((-2).into()),
        ]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"coefficients":[{"num":"1","den":"3"},{"num":"-2","den":"1"}]}"#
        );
        let back: LossPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
