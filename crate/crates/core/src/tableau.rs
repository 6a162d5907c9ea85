//! Stabilizer-state simulation on a generator list, enough for graph-state
//! preparation, Pauli measurements and removal of measured qubits.

use crate::error::{Error, Result};
use crate::graph::{graph_stabilizers, GraphSpec};
use crate::pauli::gf2::solve_system;
use crate::pauli::{check_index, in_span, Basis, Pauli, PauliOperator, StabilizerGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub qubit: usize,
    pub basis: Basis,
    /// `false` for eigenvalue `+1`.
    pub outcome: bool,
    /// Whether the outcome was random (and therefore chosen by the caller).
    pub random: bool,
}

/// A pure stabilizer state: `n_qubits` independent commuting generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    n_qubits: usize,
    generators: Vec<PauliOperator>,
    records: Vec<MeasurementRecord>,
}

impl StabilizerTableau {
    pub fn new(generators: Vec<PauliOperator>) -> Result<Self> {
        let n = generators.first().map(|g| g.n_qubits()).unwrap_or(0);
        if generators.len() != n {
            return Err(Error::InvalidGroup(format!(
                "a pure state on {n} qubits needs {n} generators, got {}",
                generators.len()
            )));
        }
        // validates commutation and independence
        StabilizerGroup::new(n, generators.clone())?;
        Ok(StabilizerTableau {
            n_qubits: n,
            generators,
            records: Vec::new(),
        })
    }

    /// `|+⟩^{⊗n}` followed by a controlled-Z on every edge.
    pub fn from_graph(g: &GraphSpec) -> Self {
        StabilizerTableau {
            n_qubits: g.n_vertices(),
            generators: graph_stabilizers(g),
            records: Vec::new(),
        }
    }

    /// Product state with qubit `q` stabilized by `±basis` as listed.
    pub fn product_state(states: &[(Basis, bool)]) -> Self {
        let n = states.len();
        let generators = states
            .iter()
            .enumerate()
            .map(|(q, &(b, minus))| {
                let op = PauliOperator::single(n, q, b.pauli()).expect("in range");
                if minus {
                    op.negated()
                } else {
                    op
                }
            })
            .collect();
        StabilizerTableau {
            n_qubits: n,
            generators,
            records: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn records(&self) -> &[MeasurementRecord] {
        &self.records
    }

    pub fn group(&self) -> StabilizerGroup {
        StabilizerGroup::new(self.n_qubits, self.generators.clone())
            .expect("tableau generators stay independent and commuting")
    }

    pub fn apply_cz(&mut self, i: usize, j: usize) -> Result<()> {
        for g in &mut self.generators {
            *g = g.conjugate_by_cz(i, j)?;
        }
        Ok(())
    }

    pub fn apply_h(&mut self, q: usize) -> Result<()> {
        for g in &mut self.generators {
            *g = g.conjugate_by_h(q)?;
        }
        Ok(())
    }

    /// Measures `basis` on `qubit`. A random outcome is set to `forced`; a deterministic
    /// one is reported as found.
    pub fn measure(&mut self, qubit: usize, basis: Basis, forced: bool) -> Result<MeasurementRecord> {
        check_index(qubit, self.n_qubits)?;
        let m = PauliOperator::single(self.n_qubits, qubit, basis.pauli())?;
        let anti: Vec<usize> = (0..self.generators.len())
            .filter(|&i| !self.generators[i].commutes(&m).expect("same size"))
            .collect();
        let record = if let Some((&first, rest)) = anti.split_first() {
            let pivot = self.generators[first].clone();
            for &i in rest {
                self.generators[i] = self.generators[i].multiply(&pivot)?;
            }
            self.generators[first] = if forced { m.negated() } else { m };
            MeasurementRecord {
                qubit,
                basis,
                outcome: forced,
                random: true,
            }
        } else {
            let cert = in_span(&self.group(), &[], &m)?
                .ok_or_else(|| Error::Consistency("commuting Pauli outside a full-rank group".into()))?;
            MeasurementRecord {
                qubit,
                basis,
                outcome: cert.relative_phase == 2,
                random: false,
            }
        };
        self.records.push(record);
        Ok(record)
    }

    /// Removes a qubit that is in a single-qubit stabilizer eigenstate, e.g. right after
    /// it was measured. Later qubit indices shift down by one.
    pub fn discard(&mut self, qubit: usize) -> Result<()> {
        check_index(qubit, self.n_qubits)?;
        let local = self
            .generators
            .iter()
            .position(|g| g.support() == [qubit])
            .ok_or_else(|| Error::Consistency(format!("qubit {qubit} is entangled")))?;
        let local_op = self.generators.remove(local);
        let letter = local_op.get(qubit);
        for g in &mut self.generators {
            match g.get(qubit) {
                Pauli::I => {}
                p if p == letter => *g = g.multiply(&local_op)?,
                _ => return Err(Error::Consistency(format!("qubit {qubit} is entangled"))),
            }
        }
        self.generators = self.generators.iter().map(|g| g.drop_qubit(qubit)).collect();
        self.n_qubits -= 1;
        Ok(())
    }

    /// Measures and removes several qubits, highest index first so the remaining indices
    /// stay stable. `outcomes[k]` is used for `qubits[k]` when random.
    pub fn measure_out(&mut self, qubits: &[usize], basis: Basis, outcomes: &[bool]) -> Result<Vec<MeasurementRecord>> {
        let mut order: Vec<usize> = (0..qubits.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(qubits[k]));
        let mut records = vec![None; qubits.len()];
        for k in order {
            let r = self.measure(qubits[k], basis, outcomes.get(k).copied().unwrap_or(false))?;
            self.discard(qubits[k])?;
            records[k] = Some(r);
        }
        Ok(records.into_iter().map(|r| r.expect("all measured")).collect())
    }

    /// Whether `op` is a stabilizer of the state up to sign; `Some(true)` means `-op`.
    pub fn sign_of(&self, op: &PauliOperator) -> Result<Option<bool>> {
        Ok(in_span(&self.group(), &[], op)?.map(|c| c.relative_phase == 2))
    }
}

/// Finds a Pauli byproduct `F` with `F · reference · F† = other`, i.e. the two states
/// have the same stabilizers up to signs and `F` anticommutes exactly with the
/// generators whose sign differs.
pub fn pauli_frame(reference: &StabilizerTableau, other: &StabilizerTableau) -> Result<Option<PauliOperator>> {
    let n = reference.n_qubits();
    if other.n_qubits() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: other.n_qubits(),
        });
    }
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for g in reference.generators() {
        let Some(flipped) = other.sign_of(g)? else {
            return Ok(None);
        };
        // ⟨F, g⟩ = F_x·g_z + F_z·g_x, so the row is g with its halves swapped.
        rows.push(g.z_bits().concat(g.x_bits()));
        rhs.push(flipped);
    }
    Ok(solve_system(&rows, &rhs, 2 * n).map(|sol| {
        PauliOperator::from_bits(sol.slice(0, n), sol.slice(n, n), 0).expect("matching halves")
    }))
}

/// Signs of `ops` on the state: `Some(false)` for `+op`, `Some(true)` for `-op`, `None`
/// when `op` is not a stabilizer.
pub fn signs(state: &StabilizerTableau, ops: &[PauliOperator]) -> Result<Vec<Option<bool>>> {
    ops.iter().map(|o| state.sign_of(o)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path_graph, ring_graph};

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn graph_preparation_by_gates_matches_graph_stabilizers() {
        let g = ring_graph(5).unwrap();
        let mut t = StabilizerTableau::product_state(&[(Basis::X, false); 5]);
        for (a, b) in g.edges() {
            t.apply_cz(a, b).unwrap();
        }
        let expected = StabilizerTableau::from_graph(&g);
        for k in expected.generators() {
            assert_eq!(t.sign_of(k).unwrap(), Some(false));
        }
    }

    #[test]
    fn deterministic_and_random_measurements() {
        let mut t = StabilizerTableau::product_state(&[(Basis::Z, true)]);
        let r = t.measure(0, Basis::Z, false).unwrap();
        assert!(!r.random);
        assert!(r.outcome);
        let r = t.measure(0, Basis::X, true).unwrap();
        assert!(r.random);
        assert_eq!(t.generators(), &[p("-X")]);
    }

    #[test]
    fn discard_after_measurement() {
        let mut t = StabilizerTableau::from_graph(&path_graph(2).unwrap());
        t.measure(0, Basis::X, false).unwrap();
        t.discard(0).unwrap();
        assert_eq!(t.n_qubits(), 1);
        assert_eq!(t.sign_of(&p("Z")).unwrap(), Some(false));
        let mut entangled = StabilizerTableau::from_graph(&path_graph(2).unwrap());
        assert!(entangled.discard(0).is_err());
    }

    #[test]
    fn frame_between_outcomes() {
        let a = StabilizerTableau::product_state(&[(Basis::Z, false), (Basis::X, false)]);
        let b = StabilizerTableau::product_state(&[(Basis::Z, true), (Basis::X, false)]);
        let f = pauli_frame(&a, &b).unwrap().unwrap();
        assert!(!f.commutes(&p("ZI")).unwrap());
        assert!(f.commutes(&p("IX")).unwrap());
        let c = StabilizerTableau::product_state(&[(Basis::X, false), (Basis::X, false)]);
        assert_eq!(pauli_frame(&a, &c).unwrap(), None);
    }
}
