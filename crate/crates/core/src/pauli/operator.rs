use super::bits::Bits;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Single-qubit Pauli.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Measurement basis, also used to name the three logical operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    X,
    Y,
    Z,
}

impl Basis {
    pub const ALL: [Basis; 3] = [Basis::X, Basis::Y, Basis::Z];

    pub fn pauli(self) -> Pauli {
        match self {
            Basis::X => Pauli::X,
            Basis::Y => Pauli::Y,
            Basis::Z => Pauli::Z,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pauli().symbol())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "X" | "x" => Ok(Basis::X),
            "Y" | "y" => Ok(Basis::Y),
            "Z" | "z" => Ok(Basis::Z),
            other => Err(Error::ParsePauli {
                input: other.to_string(),
                reason: "expected a basis X, Y or Z".into(),
            }),
        }
    }
}

/// An n-qubit Pauli operator `i^phase · σ_1 ⊗ … ⊗ σ_n`, with each `σ_q ∈ {I, X, Y, Z}`
/// encoded by the bit pair `(x_q, z_q)` and `(1, 1)` meaning `Y` itself.
///
/// Qubits are 0-based in the API. The text form lists qubit 0 leftmost, so
/// `"ZYYZI"` has `Z` on qubit 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n_qubits: usize,
    x: Bits,
    z: Bits,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n_qubits: usize) -> Self {
        PauliOperator {
            n_qubits,
            x: Bits::zeros(n_qubits),
            z: Bits::zeros(n_qubits),
            phase: 0,
        }
    }

    pub fn from_bits(x: Bits, z: Bits, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(PauliOperator {
            n_qubits: x.len(),
            x,
            z,
            phase: phase % 4,
        })
    }

    /// `pauli` on `qubit`, identity elsewhere.
    pub fn single(n_qubits: usize, qubit: usize, pauli: Pauli) -> Result<Self> {
        check_index(qubit, n_qubits)?;
        let mut op = PauliOperator::identity(n_qubits);
        op.set(qubit, pauli);
        Ok(op)
    }

    /// Builds an operator from `(qubit, pauli)` pairs with phase `+1`.
    pub fn from_sparse(n_qubits: usize, terms: &[(usize, Pauli)]) -> Result<Self> {
        let mut op = PauliOperator::identity(n_qubits);
        for &(q, p) in terms {
            check_index(q, n_qubits)?;
            op.set(q, p);
        }
        Ok(op)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_bits(&self) -> &Bits {
        &self.x
    }

    pub fn z_bits(&self) -> &Bits {
        &self.z
    }

    /// Exponent `k` of the global factor `i^k`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.x.get(qubit), self.z.get(qubit))
    }

    pub(crate) fn set(&mut self, qubit: usize, pauli: Pauli) {
        let (x, z) = pauli.bits();
        self.x.set(qubit, x);
        self.z.set(qubit, z);
    }

    pub fn weight(&self) -> usize {
        self.x.or_count(&self.z) as usize
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits)
            .filter(|&q| self.x.get(q) || self.z.get(q))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    fn y_count(&self) -> u32 {
        self.x.and_count(&self.z)
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    /// Multiplies the global factor by `i^k`.
    pub fn times_i(mut self, k: u8) -> Self {
        self.phase = (self.phase + k) % 4;
        self
    }

    pub fn negated(self) -> Self {
        self.times_i(2)
    }

    /// Hermitian operators carry a real sign.
    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// The Hermitian representative: an odd phase `i^k` is reduced to `i^(k-1)`.
    pub fn canonical(&self) -> Self {
        let mut out = self.clone();
        out.phase &= 2;
        out
    }

    /// Same Pauli letters, ignoring the global phase.
    pub fn eq_up_to_phase(&self, other: &PauliOperator) -> bool {
        self.n_qubits == other.n_qubits && self.x == other.x && self.z == other.z
    }

    /// Group product `self · other` with exact phase.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.check_same(other)?;
        // In the ordered form i^e X^x Z^z (with Y = i X Z) the exponent is e = k + #Y,
        // and reordering Z^z1 X^x2 costs (-1)^{|z1 & x2|}.
        let e1 = self.phase as u32 + self.y_count();
        let e2 = other.phase as u32 + other.y_count();
        let swap = 2 * self.z.and_count(&other.x);
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        let y = x.and_count(&z);
        let phase = ((e1 + e2 + swap + 4 * 64 - y % 4) % 4) as u8;
        Ok(PauliOperator {
            n_qubits: self.n_qubits,
            x,
            z,
            phase,
        })
    }

    /// Symplectic form `x_p·z_q + z_p·x_q` mod 2; `false` when the operators commute.
    pub fn symplectic_product(&self, other: &PauliOperator) -> Result<bool> {
        self.check_same(other)?;
        Ok((self.x.and_count(&other.z) + self.z.and_count(&other.x)) % 2 == 1)
    }

    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        Ok(!self.symplectic_product(other)?)
    }

    /// Conjugation by the controlled-Z on qubits `i`, `j`:
    /// `X_i ↦ X_i Z_j`, `X_j ↦ Z_i X_j`, `Z` unchanged.
    pub fn conjugate_by_cz(&self, i: usize, j: usize) -> Result<PauliOperator> {
        check_index(i, self.n_qubits)?;
        check_index(j, self.n_qubits)?;
        if i == j {
            return Err(Error::SameQubit(i));
        }
        let (xi, xj) = (self.x.get(i), self.x.get(j));
        let e = self.phase as u32 + self.y_count() + if xi && xj { 2 } else { 0 };
        let mut out = self.clone();
        if xi {
            out.z.flip(j);
        }
        if xj {
            out.z.flip(i);
        }
        out.phase = ((e + 4 * 64 - out.y_count()) % 4) as u8;
        Ok(out)
    }

    /// Conjugation by a Hadamard on `qubit`: `X ↔ Z`, `Y ↦ -Y`.
    pub fn conjugate_by_h(&self, qubit: usize) -> Result<PauliOperator> {
        check_index(qubit, self.n_qubits)?;
        let mut out = self.clone();
        let (x, z) = (self.x.get(qubit), self.z.get(qubit));
        out.x.set(qubit, z);
        out.z.set(qubit, x);
        if x && z {
            out.phase = (out.phase + 2) % 4;
        }
        Ok(out)
    }

    /// Removes `qubit`, which must carry the identity.
    pub(crate) fn drop_qubit(&self, qubit: usize) -> PauliOperator {
        debug_assert_eq!(self.get(qubit), Pauli::I);
        PauliOperator {
            n_qubits: self.n_qubits - 1,
            x: self.x.without(qubit),
            z: self.z.without(qubit),
            phase: self.phase,
        }
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &PauliOperator) -> PauliOperator {
        PauliOperator {
            n_qubits: self.n_qubits + other.n_qubits,
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
            phase: (self.phase + other.phase) % 4,
        }
    }

    /// Symplectic vector `(x | z)` of length `2n`.
    pub(crate) fn symplectic_vector(&self) -> Bits {
        self.x.concat(&self.z)
    }

    /// The Pauli letters without any sign.
    pub fn letters(&self) -> String {
        (0..self.n_qubits).map(|q| self.get(q).symbol()).collect()
    }

    /// Ordering used for listings: weight, then X bits, then Z bits, then phase.
    pub fn listing_cmp(&self, other: &PauliOperator) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.x.cmp_lex(&other.x))
            .then_with(|| self.z.cmp_lex(&other.z))
            .then_with(|| self.phase.cmp(&other.phase))
    }

    fn check_same(&self, other: &PauliOperator) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(())
    }
}

pub(crate) fn check_index(index: usize, n_qubits: usize) -> Result<()> {
    if index >= n_qubits {
        return Err(Error::QubitOutOfRange { index, n_qubits });
    }
    Ok(())
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.letters())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (phase, body) = if let Some(rest) = t.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = t.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = t.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = t.strip_prefix('-') {
            (2, rest)
        } else {
            (0, t)
        };
        if body.is_empty() {
            return Err(Error::ParsePauli {
                input: s.to_string(),
                reason: "no qubits".into(),
            });
        }
        let mut op = PauliOperator::identity(body.chars().count());
        for (q, c) in body.chars().enumerate() {
            let p = match c {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => {
                    return Err(Error::ParsePauli {
                        input: s.to_string(),
                        reason: format!("unexpected character {other:?}"),
                    })
                }
            };
            op.set(q, p);
        }
        op.phase = phase;
        Ok(op)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
