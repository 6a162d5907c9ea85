//! The five-qubit ring graph code and its concatenation layout.
//!
//! Qubit `q` (0-based) is vertex `q+1` of the pentagon, counted clockwise from the top.
//! The code stabilizers are the products of adjacent ring stabilizers
//! `K_1K_2, K_2K_3, K_3K_4, K_4K_5`; the ring graph state itself is the logical `|+⟩`
//! with `X̄ ≡ K_5`.

use crate::error::{Error, Result};
use crate::graph::{graph_stabilizers, ring_graph, GraphSpec};
use crate::pauli::{coset_elements, in_span, Basis, PauliOperator, StabilizerGroup};
use crate::tableau::StabilizerTableau;
use serde::Serialize;

pub const RING_SIZE: usize = 5;

#[derive(Clone, Debug)]
pub struct PentagonCode {
    ring: GraphSpec,
    ring_stabilizers: Vec<PauliOperator>,
    code_stabilizers: StabilizerGroup,
    logical_x: PauliOperator,
    logical_y: PauliOperator,
    logical_z: PauliOperator,
}

impl PentagonCode {
    pub fn build() -> Result<Self> {
        let ring = ring_graph(RING_SIZE)?;
        let ks = graph_stabilizers(&ring);
        let generators = (0..RING_SIZE - 1)
            .map(|i| ks[i].multiply(&ks[i + 1]))
            .collect::<Result<Vec<_>>>()?;
        let code_stabilizers = StabilizerGroup::new(RING_SIZE, generators)?;
        let logical_x: PauliOperator = "XXXXX".parse()?;
        let logical_z: PauliOperator = "ZZZZZ".parse()?;
        let logical_y = logical_x.multiply(&logical_z)?.times_i(1).canonical();
        let code = PentagonCode {
            ring,
            ring_stabilizers: ks,
            code_stabilizers,
            logical_x,
            logical_y,
            logical_z,
        };
        code.check_consistency()?;
        Ok(code)
    }

    fn check_consistency(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Consistency(msg));
        for b in Basis::ALL {
            if !self.code_stabilizers.commutes_with(self.logical(b))? {
                return fail(format!("logical {b} leaves the normalizer"));
            }
            if self.code_stabilizers.contains_up_to_sign(self.logical(b))? {
                return fail(format!("logical {b} is a stabilizer"));
            }
        }
        if self.logical_x.commutes(&self.logical_z)? {
            return fail("logical X and Z commute".into());
        }
        if self.logical_coset(&self.ring_stabilizers[RING_SIZE - 1])? != Some(Basis::X) {
            return fail("K_5 is not a logical X representative".into());
        }
        let d = self.distance()?;
        if d != 3 {
            return fail(format!("distance {d}, expected 3"));
        }
        Ok(())
    }

    pub fn ring(&self) -> &GraphSpec {
        &self.ring
    }

    /// `K_1 … K_5` of the ring graph state.
    pub fn ring_stabilizers(&self) -> &[PauliOperator] {
        &self.ring_stabilizers
    }

    pub fn code_stabilizers(&self) -> &StabilizerGroup {
        &self.code_stabilizers
    }

    /// Canonical representative: `XXXXX`, `YYYYY` or `ZZZZZ`.
    pub fn logical(&self, basis: Basis) -> &PauliOperator {
        match basis {
            Basis::X => &self.logical_x,
            Basis::Y => &self.logical_y,
            Basis::Z => &self.logical_z,
        }
    }

    pub fn coset(&self, basis: Basis) -> Result<Vec<PauliOperator>> {
        coset_elements(&self.code_stabilizers, self.logical(basis))
    }

    /// Which logical coset `op` lies in (up to sign), `None` for stabilizers and
    /// operators outside the normalizer.
    pub fn logical_coset(&self, op: &PauliOperator) -> Result<Option<Basis>> {
        if !self.code_stabilizers.commutes_with(op)? {
            return Ok(None);
        }
        for b in Basis::ALL {
            if in_span(&self.code_stabilizers, &[self.logical(b).clone()], op)?
                .is_some_and(|c| c.extras == [0])
            {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }

    /// Minimum weight over the three nontrivial logical cosets.
    pub fn distance(&self) -> Result<usize> {
        let mut best = usize::MAX;
        for b in Basis::ALL {
            best = best.min(self.coset(b)?[0].weight());
        }
        Ok(best)
    }

    /// All minimum-weight elements of the logical coset of `basis`, in listing order.
    pub fn minimal_representatives(&self, basis: Basis) -> Result<Vec<PauliOperator>> {
        let coset = self.coset(basis)?;
        let w = coset[0].weight();
        Ok(coset.into_iter().take_while(|o| o.weight() == w).collect())
    }

    /// Whether some representative of `basis` avoids every qubit in `lost` (a bitmask).
    pub fn recoverable(&self, basis: Basis, lost: u32) -> Result<bool> {
        Ok(self.coset(basis)?.iter().any(|o| {
            o.support().iter().all(|&q| lost >> q & 1 == 0)
        }))
    }
}

/// Shifts every qubit label `q ↦ q + shift mod n`.
pub fn rotate(op: &PauliOperator, shift: usize) -> PauliOperator {
    let n = op.n_qubits();
    let mut out = PauliOperator::identity(n).with_phase(op.phase());
    for q in 0..n {
        out.set((q + shift) % n, op.get(q));
    }
    out
}

pub fn build_pentagon_code() -> Result<PentagonCode> {
    PentagonCode::build()
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeDescription {
    pub ring_stabilizers: Vec<PauliOperator>,
    pub code_stabilizers: Vec<PauliOperator>,
    pub logical_x: PauliOperator,
    pub logical_y: PauliOperator,
    pub logical_z: PauliOperator,
    pub distance: usize,
    pub minimal_x: Vec<PauliOperator>,
    pub minimal_y: Vec<PauliOperator>,
    pub minimal_z: Vec<PauliOperator>,
}

impl PentagonCode {
    pub fn describe(&self) -> Result<CodeDescription> {
        Ok(CodeDescription {
            ring_stabilizers: self.ring_stabilizers.clone(),
            code_stabilizers: self.code_stabilizers.generators().to_vec(),
            logical_x: self.logical_x.clone(),
            logical_y: self.logical_y.clone(),
            logical_z: self.logical_z.clone(),
            distance: self.distance()?,
            minimal_x: self.minimal_representatives(Basis::X)?,
            minimal_y: self.minimal_representatives(Basis::Y)?,
            minimal_z: self.minimal_representatives(Basis::Z)?,
        })
    }
}

/// One checked identity of the encoding circuit.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub expected: String,
    pub found: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EncodingReport {
    pub checks: Vec<IdentityCheck>,
}

impl EncodingReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Conjugation by the controlled-Z from the centre (qubit 5 of a 6-qubit register) to
/// each ring qubit.
fn encode_conjugate(op: &PauliOperator) -> Result<PauliOperator> {
    let mut out = op.clone();
    for q in 0..RING_SIZE {
        out = out.conjugate_by_cz(RING_SIZE, q)?;
    }
    Ok(out)
}

/// Teleports a centre-qubit state into the ring: ring graph state, centre prepared in
/// `±basis`, five controlled-Z gates, centre measured in X with outcome `outcome`.
/// Returns the 5-qubit post-measurement state.
pub fn teleport_into_ring(centre: Basis, minus: bool, outcome: bool) -> Result<StabilizerTableau> {
    let ring = StabilizerTableau::from_graph(&ring_graph(RING_SIZE)?);
    let mut gens: Vec<PauliOperator> = ring
        .generators()
        .iter()
        .map(|g| g.tensor(&PauliOperator::identity(1)))
        .collect();
    let c = PauliOperator::identity(RING_SIZE).tensor(&PauliOperator::single(1, 0, centre.pauli())?);
    gens.push(if minus { c.negated() } else { c });
    let mut state = StabilizerTableau::new(gens)?;
    for q in 0..RING_SIZE {
        state.apply_cz(RING_SIZE, q)?;
    }
    state.measure(RING_SIZE, Basis::X, outcome)?;
    state.discard(RING_SIZE)?;
    Ok(state)
}

/// Checks the operator identities of the encoding circuit and simulates it on six
/// qubits.
pub fn verify_encoding_identities(code: &PentagonCode) -> Result<EncodingReport> {
    let mut checks = Vec::new();
    let mut check = |name: &str, expected: String, found: String| {
        let passed = expected == found;
        checks.push(IdentityCheck {
            name: name.to_string(),
            expected,
            found,
            passed,
        });
    };

    // Register order: ring qubits 1..5, then the centre.
    let x_centre: PauliOperator = "IIIIIX".parse()?;
    check(
        "centre X acquires Z on all five ring qubits",
        "ZZZZZX".into(),
        encode_conjugate(&x_centre)?.to_string(),
    );
    let z_centre: PauliOperator = "IIIIIZ".parse()?;
    check(
        "centre Z is unchanged",
        "IIIIIZ".into(),
        encode_conjugate(&z_centre)?.to_string(),
    );
    let ring_x5: PauliOperator = "ZIIZXI".parse()?;
    check(
        "ring stabilizer K_5 acquires Z on the centre",
        "ZIIZXZ".into(),
        encode_conjugate(&ring_x5)?.to_string(),
    );

    for outcome in [false, true] {
        let m = u8::from(outcome);
        // |0⟩ on the centre ends as the X̄ eigenstate of the ring.
        let state = teleport_into_ring(Basis::Z, false, outcome)?;
        let stabs_ok = code
            .code_stabilizers()
            .generators()
            .iter()
            .all(|g| state.sign_of(g).ok().flatten().is_some());
        check(
            &format!("centre |0>, outcome {m}: code stabilizers preserved"),
            "true".into(),
            stabs_ok.to_string(),
        );
        let x_sign = state.sign_of(code.logical(Basis::X))?;
        let z_sign = state.sign_of(code.logical(Basis::Z))?;
        check(
            &format!("centre |0>, outcome {m}: logical X is a stabilizer"),
            "true".into(),
            x_sign.is_some().to_string(),
        );
        check(
            &format!("centre |0>, outcome {m}: ring graph state K_5 = +1"),
            "Some(false)".into(),
            format!("{:?}", state.sign_of(&code.ring_stabilizers()[RING_SIZE - 1])?),
        );
        check(
            &format!("centre |0>, outcome {m}: logical Z undetermined"),
            "None".into(),
            format!("{z_sign:?}"),
        );

        // |+⟩ on the centre ends as a Z̄ eigenstate whose sign is the X^m frame.
        let state = teleport_into_ring(Basis::X, false, outcome)?;
        check(
            &format!("centre |+>, outcome {m}: logical Z sign"),
            format!("{:?}", Some(outcome)),
            format!("{:?}", state.sign_of(code.logical(Basis::Z))?),
        );
    }
    Ok(EncodingReport { checks })
}

/// Base-5 addressing of the `5^N` physical leaves below one logical qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConcatenationLayout {
    levels: u32,
}

impl ConcatenationLayout {
    pub const MAX_LEVELS: u32 = 12;

    pub fn new(levels: u32) -> Result<Self> {
        if levels == 0 || levels > Self::MAX_LEVELS {
            return Err(Error::out_of_range("levels", levels, "1..=12"));
        }
        Ok(ConcatenationLayout { levels })
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn physical_count(&self) -> u64 {
        5u64.pow(self.levels)
    }

    /// Digits `1..=5` from the top pentagon down to the leaf.
    pub fn path(&self, leaf: u64) -> Result<Vec<u8>> {
        if leaf >= self.physical_count() {
            return Err(Error::out_of_range("leaf", leaf, "below 5^levels"));
        }
        let mut digits = vec![0u8; self.levels as usize];
        let mut rest = leaf;
        for d in digits.iter_mut().rev() {
            *d = (rest % 5) as u8 + 1;
            rest /= 5;
        }
        Ok(digits)
    }

    pub fn leaf(&self, path: &[u8]) -> Result<u64> {
        if path.len() != self.levels as usize || path.iter().any(|&d| !(1..=5).contains(&d)) {
            return Err(Error::out_of_range(
                "path",
                format!("{path:?}"),
                "one digit 1..=5 per level",
            ));
        }
        Ok(path.iter().fold(0, |acc, &d| acc * 5 + u64::from(d - 1)))
    }
}

pub fn layout(levels: u32) -> Result<ConcatenationLayout> {
    ConcatenationLayout::new(levels)
}

pub(crate) fn single(q: usize, b: Basis) -> PauliOperator {
    PauliOperator::single(RING_SIZE, q, b.pauli()).expect("ring qubit")
}
