//! Stabilizer-level checks of measurement-based gates on encoded qubits.

use crate::code::{PentagonCode, RING_SIZE};
use crate::error::{Error, Result};
use crate::graph::{graph_stabilizers, path_graph, GraphSpec};
use crate::pauli::gf2::{null_space, solve_system};
use crate::pauli::{in_span, Basis, Bits, PauliOperator, StabilizerGroup};
use crate::tableau::{pauli_frame, StabilizerTableau};
use serde::Serialize;

/// The four correlations of the 8-qubit controlled-X pattern, qubit 1 leftmost.
pub const CX_CORRELATIONS: [&str; 4] = ["XIXIXIIX", "ZXIXZIII", "IIIXZZXZ", "IIIIIXIX"];
pub const CX_QUBITS: usize = 8;

/// Edge list of the adjacency found by [`search_cx_adjacency`].
pub const CX_CANDIDATE: &str = include_str!("../data/cx_candidate.edges");

pub fn cx_candidate() -> Result<GraphSpec> {
    GraphSpec::from_edge_list(CX_QUBITS, CX_CANDIDATE)
}

/// A correlation looked up in a stabilizer group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Correlation {
    pub name: String,
    pub operator: PauliOperator,
    pub present: bool,
    /// `Some(true)` when the group holds `-operator`.
    pub minus: Option<bool>,
    /// 1-based generator indices whose product gives the operator.
    pub certificate: Option<Vec<usize>>,
}

fn correlation(name: &str, group: &StabilizerGroup, op: &PauliOperator) -> Result<Correlation> {
    let cert = in_span(group, &[], op)?;
    Ok(Correlation {
        name: name.to_string(),
        operator: op.clone(),
        present: cert.is_some(),
        minus: cert.as_ref().map(|c| c.relative_phase == 2),
        certificate: cert.map(|c| c.generators.iter().map(|g| g + 1).collect()),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CzRun {
    /// Outcomes of the X measurements on centres A and B.
    pub outcomes: [bool; 2],
    pub b_first: bool,
    pub code_stabilizers: bool,
    pub correlations: Vec<Correlation>,
    /// Byproduct relating this run to the all-zero-outcome run, on the 10 ring qubits.
    pub frame: Option<PauliOperator>,
    #[serde(skip)]
    state: StabilizerTableau,
}

#[derive(Clone, Debug, Serialize)]
pub struct CzFlowReport {
    pub centres_joined: bool,
    pub runs: Vec<CzRun>,
    /// Measuring B first yields the same state as measuring A first.
    pub order_invariant: bool,
    pub missing: Vec<String>,
    pub passed: bool,
}

/// Two centres, each joined to every qubit of its own 5-ring, optionally joined to each
/// other. Qubits: centre A, centre B, ring A, ring B.
pub fn cz_flow_graph(join_centres: bool) -> Result<GraphSpec> {
    let mut edges = Vec::new();
    if join_centres {
        edges.push((0, 1));
    }
    for (centre, base) in [(0, 2), (1, 2 + RING_SIZE)] {
        for q in 0..RING_SIZE {
            edges.push((centre, base + q));
            edges.push((base + q, base + (q + 1) % RING_SIZE));
        }
    }
    GraphSpec::new(2 + 2 * RING_SIZE, edges)
}

fn on_block(op: &PauliOperator, block: usize) -> Result<PauliOperator> {
    let id = PauliOperator::identity(RING_SIZE);
    Ok(if block == 0 { op.tensor(&id) } else { id.tensor(op) })
}

fn cz_run(code: &PentagonCode, join: bool, outcomes: [bool; 2], b_first: bool) -> Result<CzRun> {
    let mut state = StabilizerTableau::from_graph(&cz_flow_graph(join)?);
    if b_first {
        state.measure(1, Basis::X, outcomes[1])?;
        state.measure(0, Basis::X, outcomes[0])?;
    } else {
        state.measure(0, Basis::X, outcomes[0])?;
        state.measure(1, Basis::X, outcomes[1])?;
    }
    state.discard(1)?;
    state.discard(0)?;
    let group = state.group();

    let (xa, za) = (on_block(code.logical(Basis::X), 0)?, on_block(code.logical(Basis::Z), 0)?);
    let (xb, zb) = (on_block(code.logical(Basis::X), 1)?, on_block(code.logical(Basis::Z), 1)?);
    let mut code_stabilizers = true;
    for block in 0..2 {
        for g in code.code_stabilizers().generators() {
            code_stabilizers &= group.contains_up_to_sign(&on_block(g, block)?)?;
        }
    }
    let correlations = vec![
        correlation("XA ZB", &group, &xa.multiply(&zb)?)?,
        correlation("ZA XB", &group, &za.multiply(&xb)?)?,
        correlation("ZA", &group, &za)?,
        correlation("ZB", &group, &zb)?,
    ];
    Ok(CzRun {
        outcomes,
        b_first,
        code_stabilizers,
        correlations,
        frame: None,
        state,
    })
}

/// Builds the 12-qubit two-centre graph state, measures both centres in X for every
/// outcome pair and both orders, and looks for `X̄_A Z̄_B` and `Z̄_A X̄_B` among the
/// stabilizers of the 10 remaining qubits.
pub fn simulate_cz_flow(code: &PentagonCode, join_centres: bool) -> Result<CzFlowReport> {
    let mut runs = Vec::new();
    for b_first in [false, true] {
        for outcomes in [[false, false], [true, false], [false, true], [true, true]] {
            runs.push(cz_run(code, join_centres, outcomes, b_first)?);
        }
    }
    let reference = runs[0].state.clone();
    for run in &mut runs {
        run.frame = pauli_frame(&reference, &run.state)?;
    }
    let order_invariant = (0..4).all(|i| {
        let (a, b) = (&runs[i].state, &runs[i + 4].state);
        a.generators().iter().all(|g| b.sign_of(g).ok().flatten() == Some(false))
    });

    let expected: &[&str] = if join_centres { &["XA ZB", "ZA XB"] } else { &["ZA", "ZB"] };
    let mut missing = Vec::new();
    for run in &runs {
        for c in &run.correlations {
            if expected.contains(&c.name.as_str()) && !c.present {
                missing.push(format!("{} (outcomes {:?})", c.name, run.outcomes));
            }
        }
        if !run.code_stabilizers {
            missing.push(format!("code stabilizers (outcomes {:?})", run.outcomes));
        }
        if run.frame.is_none() {
            missing.push(format!("Pauli frame (outcomes {:?})", run.outcomes));
        }
    }
    let passed = missing.is_empty() && order_invariant;
    Ok(CzFlowReport {
        centres_joined: join_centres,
        runs,
        order_invariant,
        missing,
        passed,
    })
}

pub fn cx_operators() -> Vec<PauliOperator> {
    CX_CORRELATIONS
        .iter()
        .map(|s| s.parse().expect("valid operator literal"))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CxReport {
    pub edges: Vec<(usize, usize)>,
    /// 1-based pairs of correlations that anticommute.
    pub anticommuting_pairs: Vec<(usize, usize)>,
    pub memberships: Vec<Correlation>,
    pub all_members: bool,
}

impl CxReport {
    pub fn commute(&self) -> bool {
        self.anticommuting_pairs.is_empty()
    }
}

/// Checks that the four correlations commute and whether each one is a stabilizer
/// (up to sign) of the graph state on `graph`.
pub fn check_cx_correlations(graph: &GraphSpec) -> Result<CxReport> {
    if graph.n_vertices() != CX_QUBITS {
        return Err(Error::InvalidGraph(format!(
            "the pattern has {CX_QUBITS} qubits, the graph has {}",
            graph.n_vertices()
        )));
    }
    let ops = cx_operators();
    let mut anticommuting_pairs = Vec::new();
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if !ops[i].commutes(&ops[j])? {
                anticommuting_pairs.push((i + 1, j + 1));
            }
        }
    }
    let group = StabilizerGroup::new(CX_QUBITS, graph_stabilizers(graph))?;
    let memberships = ops
        .iter()
        .enumerate()
        .map(|(i, op)| correlation(&format!("C{}", i + 1), &group, op))
        .collect::<Result<Vec<_>>>()?;
    let all_members = memberships.iter().all(|m| m.present);
    Ok(CxReport {
        edges: graph.edges().map(|(a, b)| (a + 1, b + 1)).collect(),
        anticommuting_pairs,
        memberships,
        all_members,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CxSearch {
    /// Correlations required of every graph counted below (1-based).
    pub satisfied: Vec<usize>,
    /// Number of 8-vertex graphs holding all of them.
    pub solutions: u64,
    pub connected_solutions: u64,
    pub min_edges: Option<usize>,
    /// Connected solutions with the fewest edges, in lexicographic edge order.
    pub candidates: Vec<Vec<(usize, usize)>>,
}

const MAX_ENUMERATION_DIM: usize = 24;

fn edge_variables(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// For a graph state, `Π_{i∈S} K_i` has X exactly on `S` and Z at `v` iff `v` has an odd
/// number of neighbours in `S`. Each correlation thus fixes, for every vertex, the
/// parity of its edges into the correlation's X support: linear equations in the edge
/// indicators.
fn membership_equations(ops: &[&PauliOperator], n: usize) -> (Vec<Bits>, Vec<bool>) {
    let vars = edge_variables(n);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for op in ops {
        let support = op.x_bits();
        for v in 0..n {
            let mut row = Bits::zeros(vars.len());
            for (k, &(a, b)) in vars.iter().enumerate() {
                if (a == v && support.get(b)) || (b == v && support.get(a)) {
                    row.set(k, true);
                }
            }
            rows.push(row);
            rhs.push(op.z_bits().get(v));
        }
    }
    (rows, rhs)
}

/// Solves for every 8-vertex graph whose stabilizer group holds the correlations, and
/// keeps the connected ones with fewest edges. If no graph holds all four, the largest
/// satisfiable subsets are used instead (first such subset in index order).
pub fn search_cx_adjacency() -> Result<CxSearch> {
    let ops = cx_operators();
    let n = CX_QUBITS;
    let vars = edge_variables(n);
    for size in (1..=ops.len()).rev() {
        for subset in 0u32..1 << ops.len() {
            if subset.count_ones() as usize != size {
                continue;
            }
            let chosen: Vec<&PauliOperator> = (0..ops.len()).filter(|i| subset >> i & 1 == 1).map(|i| &ops[i]).collect();
            let (rows, rhs) = membership_equations(&chosen, n);
            let Some(particular) = solve_system(&rows, &rhs, vars.len()) else {
                continue;
            };
            let basis = null_space(&rows, vars.len());
            if basis.len() > MAX_ENUMERATION_DIM {
                return Err(Error::Consistency(format!(
                    "{} free edge parameters, too many to enumerate",
                    basis.len()
                )));
            }
            let mut solutions = 0u64;
            let mut connected = 0u64;
            let mut best: Vec<Vec<(usize, usize)>> = Vec::new();
            let mut min_edges = usize::MAX;
            for mask in 0u64..1 << basis.len() {
                let mut x = particular.clone();
                for (k, b) in basis.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        x.xor_assign(b);
                    }
                }
                solutions += 1;
                let edges: Vec<(usize, usize)> = x.ones().map(|k| vars[k]).collect();
                let g = GraphSpec::new(n, edges.iter().copied())?;
                if !g.is_connected() {
                    continue;
                }
                connected += 1;
                let one_based: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
                match edges.len().cmp(&min_edges) {
                    std::cmp::Ordering::Less => {
                        min_edges = edges.len();
                        best = vec![one_based];
                    }
                    std::cmp::Ordering::Equal => best.push(one_based),
                    std::cmp::Ordering::Greater => {}
                }
            }
            best.sort();
            return Ok(CxSearch {
                satisfied: (0..ops.len()).filter(|i| subset >> i & 1 == 1).map(|i| i + 1).collect(),
                solutions,
                connected_solutions: connected,
                min_edges: (min_edges != usize::MAX).then_some(min_edges),
                candidates: best,
            });
        }
    }
    Ok(CxSearch {
        satisfied: Vec::new(),
        solutions: 0,
        connected_solutions: 0,
        min_edges: None,
        candidates: Vec::new(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HadamardCase {
    /// Stabilizer of the input qubit.
    pub input: PauliOperator,
    pub outcome: bool,
    pub expected: PauliOperator,
    pub found: PauliOperator,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HadamardReport {
    pub cases: Vec<HadamardCase>,
    /// Applying X to the outcome-0 output gives the outcome-1 output for every input.
    pub frame_is_x: bool,
    pub passed: bool,
}

/// Two-qubit chain: input on qubit 1, qubit 2 in `|+⟩`, one controlled-Z, qubit 1
/// measured in X with outcome `m`. The output carries `X^m H` applied to the input.
pub fn check_hadamard_chain() -> Result<HadamardReport> {
    let chain = path_graph(2)?;
    let mut cases = Vec::new();
    let mut frame_is_x = true;
    let x: PauliOperator = "X".parse()?;
    for basis in Basis::ALL {
        for minus in [false, true] {
            let mut outputs = Vec::new();
            for outcome in [false, true] {
                let mut state = StabilizerTableau::product_state(&[(basis, minus), (Basis::X, false)]);
                for (a, b) in chain.edges() {
                    state.apply_cz(a, b)?;
                }
                state.measure(0, Basis::X, outcome)?;
                state.discard(0)?;
                let input = PauliOperator::single(1, 0, basis.pauli())?;
                let input = if minus { input.negated() } else { input };
                let mut expected = input.conjugate_by_h(0)?;
                if outcome {
                    expected = x.multiply(&expected)?.multiply(&x)?;
                }
                let found = state.generators()[0].clone();
                cases.push(HadamardCase {
                    passed: found == expected,
                    input,
                    outcome,
                    expected,
                    found,
                });
                outputs.push(state);
            }
            let framed = {
                let g = &outputs[0].generators()[0];
                x.multiply(g)?.multiply(&x)?
            };
            frame_is_x &= outputs[1].sign_of(&framed)? == Some(false);
        }
    }
    let passed = frame_is_x && cases.iter().all(|c| c.passed);
    Ok(HadamardReport {
        cases,
        frame_is_x,
        passed,
    })
}
