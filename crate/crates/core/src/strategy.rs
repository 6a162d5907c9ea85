//! Adaptive single-qubit measurement strategies for non-preannounced loss.
//!
//! A policy probes one qubit at a time in a chosen basis. The probe either clicks (the
//! outcome is recorded) or reveals that the qubit was lost, after which the basis choice
//! is spent. A logical measurement succeeds once the target logical operator is a
//! product of code stabilizers and clicked single-qubit Paulis.

use crate::analytics::{check_probability, FailureFunction};
use crate::code::{single, PentagonCode, RING_SIZE};
use crate::error::{Error, Result};
use crate::pauli::{in_span, Basis, PauliOperator, StabilizerGroup};
use crate::poly::{interior_grid, LossPolynomial};
use serde::{Deserialize, Serialize};

/// Reference loss probability used to break ties when no probe is best for every `p`.
pub const REFERENCE_P: f64 = 0.15;
const DOMINANCE_POINTS: usize = 1000;
const DOMINANCE_TOL: f64 = 1e-12;
const STATE_COUNT: usize = 5usize.pow(RING_SIZE as u32);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PolicyNode {
    Success,
    Failure,
    Probe(Box<Probe>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Probe {
    /// 0-based ring position.
    pub qubit: usize,
    pub basis: Basis,
    pub on_click: PolicyNode,
    pub on_lost: PolicyNode,
}

impl PolicyNode {
    pub fn probe(qubit: usize, basis: Basis, on_click: PolicyNode, on_lost: PolicyNode) -> Self {
        PolicyNode::Probe(Box::new(Probe {
            qubit,
            basis,
            on_click,
            on_lost,
        }))
    }

    fn size(&self) -> usize {
        match self {
            PolicyNode::Probe(p) => 1 + p.on_click.size() + p.on_lost.size(),
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementPolicy {
    pub n_qubits: usize,
    /// The logical operator the policy is meant to measure.
    pub target: Basis,
    pub root: PolicyNode,
}

/// One step on a root-to-leaf path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub qubit: usize,
    pub basis: Basis,
    pub clicked: bool,
}

impl std::fmt::Display for Step {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = if self.clicked { "" } else { " lost" };
        write!(f, "{}{}{}", self.qubit + 1, self.basis, mark)
    }
}

pub fn format_path(path: &[Step]) -> String {
    let steps: Vec<String> = path.iter().map(|s| s.to_string()).collect();
    format!("[{}]", steps.join(", "))
}

impl MeasurementPolicy {
    pub fn new(n_qubits: usize, target: Basis, root: PolicyNode) -> Result<Self> {
        fn check(node: &PolicyNode, n: usize) -> Result<()> {
            if let PolicyNode::Probe(p) = node {
                if p.qubit >= n {
                    return Err(Error::MalformedPolicy(format!(
                        "probe of qubit {} in a {n}-qubit policy",
                        p.qubit + 1
                    )));
                }
                check(&p.on_click, n)?;
                check(&p.on_lost, n)?;
            }
            Ok(())
        }
        check(&root, n_qubits)?;
        Ok(MeasurementPolicy {
            n_qubits,
            target,
            root,
        })
    }

    pub fn node_count(&self) -> usize {
        self.root.size()
    }

    /// Visits every leaf with its path. A probe of a qubit already measured on the path
    /// can only come back lost, so its click branch is skipped; `visit_dead` sees those
    /// skipped subtrees with the path that reaches them.
    fn walk<'a>(
        &'a self,
        on_leaf: &mut dyn FnMut(&[Step], bool),
        on_dead: &mut dyn FnMut(&[Step], &'a Probe),
    ) {
        fn go<'a>(
            node: &'a PolicyNode,
            path: &mut Vec<Step>,
            on_leaf: &mut dyn FnMut(&[Step], bool),
            on_dead: &mut dyn FnMut(&[Step], &'a Probe),
        ) {
            match node {
                PolicyNode::Success => on_leaf(path, true),
                PolicyNode::Failure => on_leaf(path, false),
                PolicyNode::Probe(p) => {
                    let used = path.iter().any(|s| s.qubit == p.qubit);
                    if used {
                        on_dead(path, p);
                    } else {
                        path.push(Step {
                            qubit: p.qubit,
                            basis: p.basis,
                            clicked: true,
                        });
                        go(&p.on_click, path, on_leaf, on_dead);
                        path.pop();
                    }
                    path.push(Step {
                        qubit: p.qubit,
                        basis: p.basis,
                        clicked: false,
                    });
                    go(&p.on_lost, path, on_leaf, on_dead);
                    path.pop();
                }
            }
        }
        go(&self.root, &mut Vec::new(), on_leaf, on_dead);
    }

    /// Exact failure probability with every probe lost independently with probability
    /// `p`. A repeated probe of a measured qubit always follows its lost branch.
    pub fn failure_polynomial(&self) -> LossPolynomial {
        let mut total = LossPolynomial::zero();
        self.walk(
            &mut |path, success| {
                if !success {
                    let (mut lost, mut clicked) = (0u32, 0u32);
                    for (i, s) in path.iter().enumerate() {
                        let repeat = path[..i].iter().any(|t| t.qubit == s.qubit);
                        match (s.clicked, repeat) {
                            (true, _) => clicked += 1,
                            (false, false) => lost += 1,
                            (false, true) => {}
                        }
                    }
                    let term = &LossPolynomial::p().pow(lost) * &LossPolynomial::one_minus_p().pow(clicked);
                    total = &total + &term;
                }
            },
            &mut |_, _| {},
        );
        total
    }

    /// Failure probability when a probe in basis `b` is lost with probability
    /// `loss[b.index()]`.
    pub fn failure_with(&self, loss: [f64; 3]) -> f64 {
        fn go(node: &PolicyNode, used: u32, loss: &[f64; 3]) -> f64 {
            match node {
                PolicyNode::Success => 0.0,
                PolicyNode::Failure => 1.0,
                PolicyNode::Probe(p) => {
                    if used >> p.qubit & 1 == 1 {
                        return go(&p.on_lost, used, loss);
                    }
                    let l = loss[p.basis.index()];
                    let next = used | 1 << p.qubit;
                    (1.0 - l) * go(&p.on_click, next, loss) + l * go(&p.on_lost, next, loss)
                }
            }
        }
        go(&self.root, 0, &loss)
    }
}

pub fn policy_failure(policy: &MeasurementPolicy) -> LossPolynomial {
    policy.failure_polynomial()
}

/// The decision tree for a `Z̄` measurement as published, including its repeated probe
/// of qubit 5.
pub fn published_tree() -> MeasurementPolicy {
    use Basis::{X, Y, Z};
    use PolicyNode::{Failure as F, Success as S};
    let p = PolicyNode::probe;
    // qubits are 0-based here: "1X" is p(0, X, ..)
    let after_1x = p(
        1,
        Z,
        p(4, Z, S, p(2, Y, p(4, Y, S, F), F)),
        p(2, Y, p(4, Y, S, F), F),
    );
    let after_1_lost = p(
        1,
        X,
        p(3, Y, p(4, Y, S, F), F),
        p(3, X, p(2, Z, p(4, Z, S, F), F), F),
    );
    MeasurementPolicy {
        n_qubits: RING_SIZE,
        target: Z,
        root: p(0, X, after_1x, after_1_lost),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Anomaly {
    /// A SUCCESS leaf whose clicked probes certify none of the target logicals.
    SuccessWithoutTarget { path: Vec<Step>, certifies: Vec<Basis> },
    /// A probe of a qubit that was already measured on the same path; its click branch
    /// can never be taken.
    UnreachableBranch { path: Vec<Step>, qubit: usize, basis: Basis },
    /// A FAILURE leaf from which a target logical could still have been measured.
    PrematureFailure { path: Vec<Step>, reachable: Vec<Basis> },
}

impl std::fmt::Display for Anomaly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let bases = |bs: &[Basis]| {
            if bs.is_empty() {
                "nothing".to_string()
            } else {
                bs.iter().map(|b| format!("{b}-bar")).collect::<Vec<_>>().join(", ")
            }
        };
        match self {
            Anomaly::SuccessWithoutTarget { path, certifies } => write!(
                f,
                "SUCCESS leaf {} certifies {} rather than the target",
                format_path(path),
                bases(certifies)
            ),
            Anomaly::UnreachableBranch { path, qubit, basis } => write!(
                f,
                "unreachable branch: probe {}{} after {} measured qubit {} already",
                qubit + 1,
                basis,
                format_path(path),
                qubit + 1
            ),
            Anomaly::PrematureFailure { path, reachable } => write!(
                f,
                "FAILURE leaf {} could still measure {}",
                format_path(path),
                bases(reachable)
            ),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LeafReport {
    pub path: Vec<Step>,
    pub success: bool,
    /// Logical cosets certified by the clicked probes (SUCCESS leaves only).
    pub certifies: Vec<Basis>,
    /// The clicked operator product for the first certified logical.
    pub certificate: Option<PauliOperator>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolicyReport {
    pub target: Vec<Basis>,
    pub leaves: Vec<LeafReport>,
    pub anomalies: Vec<Anomaly>,
}

impl PolicyReport {
    pub fn is_clean(&self) -> bool {
        self.anomalies.is_empty()
    }
}

fn clicked_ops(path: &[Step], n: usize) -> Vec<PauliOperator> {
    path.iter()
        .filter(|s| s.clicked)
        .map(|s| PauliOperator::single(n, s.qubit, s.basis.pauli()).expect("validated policy"))
        .collect()
}

/// Checks every leaf of `policy` against the code: which logicals each SUCCESS leaf can
/// certify, which probes repeat a measured qubit, and which FAILURE leaves gave up early.
pub fn validate_policy(policy: &MeasurementPolicy, code: &PentagonCode, targets: &[Basis]) -> Result<PolicyReport> {
    if policy.n_qubits != RING_SIZE {
        return Err(Error::MalformedPolicy(format!(
            "policy has {} qubits, the code has {RING_SIZE}",
            policy.n_qubits
        )));
    }
    let stabs = code.code_stabilizers();
    let mut paths: Vec<(Vec<Step>, bool)> = Vec::new();
    let mut dead: Vec<(Vec<Step>, usize, Basis)> = Vec::new();
    policy.walk(
        &mut |path, success| paths.push((path.to_vec(), success)),
        &mut |path, probe| dead.push((path.to_vec(), probe.qubit, probe.basis)),
    );

    let mut leaves = Vec::new();
    let mut anomalies = Vec::new();
    for (path, qubit, basis) in dead {
        anomalies.push(Anomaly::UnreachableBranch { path, qubit, basis });
    }
    for (path, success) in paths {
        let clicked = clicked_ops(&path, RING_SIZE);
        if success {
            let mut certifies = Vec::new();
            let mut certificate = None;
            for b in Basis::ALL {
                if let Some(cert) = in_span(stabs, &clicked, code.logical(b))? {
                    if certificate.is_none() {
                        let mut prod = PauliOperator::identity(RING_SIZE);
                        for &i in &cert.extras {
                            prod = prod.multiply(&clicked[i])?;
                        }
                        certificate = Some(prod);
                    }
                    certifies.push(b);
                }
            }
            if !certifies.iter().any(|b| targets.contains(b)) {
                anomalies.push(Anomaly::SuccessWithoutTarget {
                    path: path.clone(),
                    certifies: certifies.clone(),
                });
            }
            leaves.push(LeafReport {
                path,
                success,
                certifies,
                certificate,
            });
        } else {
            let state = PolicyState::from_path(&path);
            let mut reachable = Vec::new();
            for &b in targets {
                if state.reachable(stabs, code.logical(b))? {
                    reachable.push(b);
                }
            }
            if !reachable.is_empty() {
                anomalies.push(Anomaly::PrematureFailure {
                    path: path.clone(),
                    reachable,
                });
            }
            leaves.push(LeafReport {
                path,
                success,
                certifies: Vec::new(),
                certificate: None,
            });
        }
    }
    Ok(PolicyReport {
        target: targets.to_vec(),
        leaves,
        anomalies,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QubitStatus {
    Untouched,
    Clicked(Basis),
    Lost,
}

impl QubitStatus {
    fn code(self) -> u16 {
        match self {
            QubitStatus::Untouched => 0,
            QubitStatus::Clicked(b) => 1 + b.index() as u16,
            QubitStatus::Lost => 4,
        }
    }
}

/// Per-qubit knowledge during an adaptive measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolicyState([QubitStatus; RING_SIZE]);

impl PolicyState {
    pub fn initial() -> Self {
        PolicyState([QubitStatus::Untouched; RING_SIZE])
    }

    /// Knowledge after a path. A repeated probe adds nothing.
    pub fn from_path(path: &[Step]) -> Self {
        let mut s = PolicyState::initial();
        for step in path {
            if s.0[step.qubit] == QubitStatus::Untouched {
                s.0[step.qubit] = if step.clicked {
                    QubitStatus::Clicked(step.basis)
                } else {
                    QubitStatus::Lost
                };
            }
        }
        s
    }

    pub fn status(&self, q: usize) -> QubitStatus {
        self.0[q]
    }

    pub fn with(&self, q: usize, status: QubitStatus) -> Self {
        let mut s = *self;
        s.0[q] = status;
        s
    }

    /// Base-5 index, below `5^5`.
    pub fn index(&self) -> u16 {
        self.0.iter().rev().fold(0, |acc, s| acc * 5 + s.code())
    }

    fn clicked(&self) -> Vec<PauliOperator> {
        (0..RING_SIZE)
            .filter_map(|q| match self.0[q] {
                QubitStatus::Clicked(b) => Some(single(q, b)),
                _ => None,
            })
            .collect()
    }

    /// The target is already a product of stabilizers and clicked probes.
    pub fn certified(&self, stabs: &StabilizerGroup, target: &PauliOperator) -> Result<bool> {
        Ok(in_span(stabs, &self.clicked(), target)?.is_some())
    }

    /// Some assignment of bases to the untouched qubits could still certify the target.
    pub fn reachable(&self, stabs: &StabilizerGroup, target: &PauliOperator) -> Result<bool> {
        let mut ops = self.clicked();
        for q in 0..RING_SIZE {
            if self.0[q] == QubitStatus::Untouched {
                ops.push(single(q, Basis::X));
                ops.push(single(q, Basis::Z));
            }
        }
        Ok(in_span(stabs, &ops, target)?.is_some())
    }
}

#[derive(Clone, Debug)]
struct DpEntry {
    success: LossPolynomial,
    choice: Option<(usize, Basis)>,
}

/// A policy derived by exact expectimax together with its failure polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct OptimalPolicy {
    pub policy: MeasurementPolicy,
    pub failure: LossPolynomial,
    /// Every decision was optimal for all `p` in `(0, 1)` simultaneously.
    pub uniform: bool,
    /// Decisions that fell back to the reference loss probability.
    pub notes: Vec<String>,
    pub states_explored: usize,
}

struct Expectimax<'a> {
    stabs: &'a StabilizerGroup,
    target: &'a PauliOperator,
    grid: Vec<f64>,
    memo: Vec<Option<DpEntry>>,
    notes: Vec<String>,
}

impl Expectimax<'_> {
    fn value(&mut self, state: PolicyState) -> Result<LossPolynomial> {
        if let Some(e) = &self.memo[state.index() as usize] {
            return Ok(e.success.clone());
        }
        let entry = if state.certified(self.stabs, self.target)? {
            DpEntry {
                success: LossPolynomial::one(),
                choice: None,
            }
        } else if !state.reachable(self.stabs, self.target)? {
            DpEntry {
                success: LossPolynomial::zero(),
                choice: None,
            }
        } else {
            let click = LossPolynomial::one_minus_p();
            let lost = LossPolynomial::p();
            let mut candidates = Vec::new();
            for q in 0..RING_SIZE {
                if state.status(q) != QubitStatus::Untouched {
                    continue;
                }
                let on_lost = self.value(state.with(q, QubitStatus::Lost))?;
                for b in Basis::ALL {
                    let on_click = self.value(state.with(q, QubitStatus::Clicked(b)))?;
                    let v = &(&click * &on_click) + &(&lost * &on_lost);
                    candidates.push(((q, b), v));
                }
            }
            let samples: Vec<Vec<f64>> = candidates.iter().map(|(_, v)| v.eval_many(&self.grid)).collect();
            let dominant = samples.iter().position(|a| {
                samples
                    .iter()
                    .all(|b| a.iter().zip(b).all(|(x, y)| *x >= y - DOMINANCE_TOL))
            });
            let best = match dominant {
                Some(i) => i,
                None => {
                    let mut i_best = 0;
                    for (i, (_, v)) in candidates.iter().enumerate() {
                        if v.eval(REFERENCE_P) > candidates[i_best].1.eval(REFERENCE_P) + DOMINANCE_TOL {
                            i_best = i;
                        }
                    }
                    let ((q, b), _) = candidates[i_best];
                    self.notes.push(format!(
                        "state {:?}: no uniformly best probe, chose {}{} at p = {REFERENCE_P}",
                        state.0,
                        q + 1,
                        b
                    ));
                    i_best
                }
            };
            let (choice, success) = candidates.swap_remove(best);
            DpEntry {
                success,
                choice: Some(choice),
            }
        };
        let success = entry.success.clone();
        self.memo[state.index() as usize] = Some(entry);
        Ok(success)
    }

    fn tree(&self, state: PolicyState) -> PolicyNode {
        let entry = self.memo[state.index() as usize].as_ref().expect("explored state");
        match entry.choice {
            Some((q, b)) => PolicyNode::probe(
                q,
                b,
                self.tree(state.with(q, QubitStatus::Clicked(b))),
                self.tree(state.with(q, QubitStatus::Lost)),
            ),
            None if entry.success == LossPolynomial::one() => PolicyNode::Success,
            None => PolicyNode::Failure,
        }
    }
}

/// Optimal adaptive policy measuring `target` on the 5-qubit code defined by `stabs`.
pub fn optimal_policy_for(stabs: &StabilizerGroup, target: &PauliOperator, basis: Basis) -> Result<OptimalPolicy> {
    if stabs.n_qubits() != RING_SIZE || target.n_qubits() != RING_SIZE {
        return Err(Error::DimensionMismatch {
            left: RING_SIZE,
            right: target.n_qubits(),
        });
    }
    let mut dp = Expectimax {
        stabs,
        target,
        grid: interior_grid(DOMINANCE_POINTS),
        memo: vec![None; STATE_COUNT],
        notes: Vec::new(),
    };
    let success = dp.value(PolicyState::initial())?;
    let root = dp.tree(PolicyState::initial());
    Ok(OptimalPolicy {
        policy: MeasurementPolicy {
            n_qubits: RING_SIZE,
            target: basis,
            root,
        },
        failure: success.complement(),
        uniform: dp.notes.is_empty(),
        notes: dp.notes,
        states_explored: dp.memo.iter().filter(|e| e.is_some()).count(),
    })
}

pub fn optimal_policy(code: &PentagonCode, basis: Basis) -> Result<OptimalPolicy> {
    optimal_policy_for(code.code_stabilizers(), code.logical(basis), basis)
}

/// Failure polynomial when losses are revealed before any basis is chosen: the
/// measurement fails exactly for loss patterns that leave no representative intact.
pub fn located_failure(code: &PentagonCode, basis: Basis) -> Result<LossPolynomial> {
    let mut total = LossPolynomial::zero();
    for mask in 0u32..1 << RING_SIZE {
        let mut state = PolicyState::initial();
        for q in 0..RING_SIZE {
            if mask >> q & 1 == 1 {
                state = state.with(q, QubitStatus::Lost);
            }
        }
        if !state.reachable(code.code_stabilizers(), code.logical(basis))? {
            let lost = mask.count_ones();
            let term = &LossPolynomial::p().pow(lost) * &LossPolynomial::one_minus_p().pow(RING_SIZE as u32 - lost);
            total = &total + &term;
        }
    }
    Ok(total)
}

/// Level recursion for non-preannounced loss built from the three optimal policies.
/// A probe of a virtual qubit in basis `B` is a logical `B` measurement one level down
/// and fails with that level's `B` failure probability.
#[derive(Clone, Debug, Serialize)]
pub struct NonpreRecurrence {
    pub policies: [OptimalPolicy; 3],
    /// Logical basis measured at the top of the hierarchy.
    pub top: Basis,
}

impl NonpreRecurrence {
    pub fn build(code: &PentagonCode) -> Result<Self> {
        Ok(NonpreRecurrence {
            policies: [
                optimal_policy(code, Basis::X)?,
                optimal_policy(code, Basis::Y)?,
                optimal_policy(code, Basis::Z)?,
            ],
            top: Basis::Z,
        })
    }

    pub fn with_top(mut self, top: Basis) -> Self {
        self.top = top;
        self
    }

    pub fn policy(&self, basis: Basis) -> &OptimalPolicy {
        &self.policies[basis.index()]
    }

    /// The common failure polynomial when all three bases agree.
    pub fn scalar(&self) -> Option<&LossPolynomial> {
        let f = &self.policies[0].failure;
        self.policies.iter().all(|p| p.failure == *f).then_some(f)
    }

    /// One level: per-basis failure probabilities below to per-basis failure above.
    pub fn step(&self, below: [f64; 3]) -> [f64; 3] {
        [0, 1, 2].map(|b| self.policies[b].policy.failure_with(below))
    }

    /// Per-basis failure after `levels` levels with physical loss `p`.
    pub fn iterate_vector(&self, p: f64, levels: u32) -> Result<[f64; 3]> {
        check_probability("p", p)?;
        Ok((0..levels).fold([p; 3], |acc, _| self.step(acc)))
    }
}

impl FailureFunction for NonpreRecurrence {
    fn failure(&self, p: f64) -> f64 {
        self.step([p; 3])[self.top.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::pre_failure_polynomial;
    use crate::code::{build_pentagon_code, rotate};

    fn code() -> PentagonCode {
        build_pentagon_code().unwrap()
    }

    #[test]
    fn published_tree_paths() {
        let tree = published_tree();
        let success = tree.failure_polynomial().complement();
        // (1-p)^3 (1+p)^2
        let expected = &LossPolynomial::one_minus_p().pow(3) * &LossPolynomial::from_integers(&[1, 1]).pow(2);
        assert_eq!(success, expected);
        assert_eq!(tree.failure_with([0.0; 3]), 0.0);
        assert_eq!(tree.failure_with([1.0; 3]), 1.0);
    }

    #[test]
    fn always_fail_policy() {
        let p = MeasurementPolicy::new(5, Basis::Z, PolicyNode::Failure).unwrap();
        assert_eq!(p.failure_polynomial(), LossPolynomial::one());
        assert!(MeasurementPolicy::new(5, Basis::Z, PolicyNode::probe(7, Basis::X, PolicyNode::Success, PolicyNode::Failure)).is_err());
    }

    #[test]
    fn probe_all_five_matches_enumeration() {
        // Probe every qubit in Z; succeed iff qubits 1, 2 and 3 all click.
        fn build(q: usize, clicks: u32) -> PolicyNode {
            if q == 5 {
                return if clicks & 0b111 == 0b111 {
                    PolicyNode::Success
                } else {
                    PolicyNode::Failure
                };
            }
            PolicyNode::probe(q, Basis::Z, build(q + 1, clicks | 1 << q), build(q + 1, clicks))
        }
        let policy = MeasurementPolicy::new(5, Basis::Z, build(0, 0)).unwrap();
        let poly = policy.failure_polynomial();
        for &p in &[0.1, 0.37, 0.8] {
            let mut fail = 0.0;
            for mask in 0u32..32 {
                let prob: f64 = (0..5).map(|q| if mask >> q & 1 == 1 { p } else { 1.0 - p }).product();
                if mask & 0b111 != 0 {
                    fail += prob;
                }
            }
            assert!((poly.eval(p) - fail).abs() < 1e-12);
        }
    }

    #[test]
    fn validation_flags_published_tree() {
        let c = code();
        let report = validate_policy(&published_tree(), &c, &[Basis::Z]).unwrap();
        assert!(report.anomalies.iter().any(|a| matches!(
            a,
            Anomaly::UnreachableBranch { qubit: 4, basis: Basis::Y, .. }
        )));
        let first = &report.leaves[0];
        assert!(first.success);
        assert_eq!(format_path(&first.path), "[1X, 2Z, 5Z]");
        assert_eq!(first.certifies, vec![Basis::X]);
        let via_2x = report
            .leaves
            .iter()
            .find(|l| l.success && format_path(&l.path) == "[1X lost, 2X, 4Y, 5Y]")
            .unwrap();
        assert_eq!(via_2x.certifies, vec![Basis::X]);
    }

    #[test]
    fn single_probe_success_certifies_nothing() {
        let policy = MeasurementPolicy::new(
            5,
            Basis::Z,
            PolicyNode::probe(0, Basis::X, PolicyNode::Success, PolicyNode::Failure),
        )
        .unwrap();
        let report = validate_policy(&policy, &code(), &[Basis::Z]).unwrap();
        assert!(matches!(
            &report.anomalies[..],
            [Anomaly::SuccessWithoutTarget { certifies, .. }, Anomaly::PrematureFailure { .. }] if certifies.is_empty()
        ));
    }

    #[test]
    fn optimal_policy_values() {
        let c = code();
        let opt = optimal_policy(&c, Basis::Z).unwrap();
        assert_eq!(opt.failure.eval(0.0), 0.0);
        assert_eq!(opt.failure.eval(1.0), 1.0);
        assert_eq!(opt.policy.failure_polynomial(), opt.failure);
        let literal = published_tree().failure_polynomial();
        assert!(literal.dominates_on_grid(&opt.failure, 1000, 1e-12));
        assert!(opt.failure.is_monotone_on_grid(1e-3));
        let report = validate_policy(&opt.policy, &c, &[Basis::Z]).unwrap();
        assert!(report.is_clean(), "{:?}", report.anomalies);
    }

    #[test]
    fn located_variant_is_the_preannounced_map() {
        let c = code();
        for b in Basis::ALL {
            assert_eq!(located_failure(&c, b).unwrap(), pre_failure_polynomial());
        }
    }

    #[test]
    fn rotation_invariance() {
        let c = code();
        let base = optimal_policy(&c, Basis::Z).unwrap().failure;
        for shift in 1..5 {
            let gens = c.code_stabilizers().generators().iter().map(|g| rotate(g, shift)).collect();
            let stabs = StabilizerGroup::new(5, gens).unwrap();
            let target = rotate(c.logical(Basis::Z), shift);
            let rotated = optimal_policy_for(&stabs, &target, Basis::Z).unwrap();
            assert_eq!(rotated.failure, base);
        }
    }

    #[test]
    fn json_round_trip() {
        let tree = published_tree();
        let json = serde_json::to_string(&tree).unwrap();
        assert!(json.starts_with(r#"{"n_qubits":5,"target":"Z","root":{"PROBE":{"qubit":0,"basis":"X""#));
        let back: MeasurementPolicy = serde_json::from_str(&json).unwrap();
        assert_eq!(back, tree);
    }
}
