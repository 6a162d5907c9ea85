use pentagon_loss::analytics::{iterate_levels, preannounced};
use pentagon_loss::code::{build_pentagon_code, layout, rotate};
use pentagon_loss::graph::{graph_stabilizers, GraphSpec};
use pentagon_loss::montecarlo::{with_jobs, SimConfig, Simulator};
use pentagon_loss::analytics::LossMode;
use pentagon_loss::pauli::{coset_elements, in_span, Basis, Pauli, PauliOperator, StabilizerGroup};
use pentagon_loss::poly::LossPolynomial;
use pentagon_loss::strategy::{MeasurementPolicy, PolicyNode, NonpreRecurrence};
use pentagon_loss::tableau::StabilizerTableau;
use proptest::prelude::*;
use std::sync::OnceLock;

fn pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    (prop::collection::vec(0u8..4, n), 0u8..4).prop_map(move |(letters, phase)| {
        let terms: Vec<(usize, Pauli)> = letters
            .iter()
            .enumerate()
            .filter(|(_, &l)| l != 0)
            .map(|(q, &l)| (q, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][l as usize]))
            .collect();
        PauliOperator::from_sparse(n, &terms).unwrap().times_i(phase)
    })
}

fn graph(max: usize) -> impl Strategy<Value = GraphSpec> {
    (2..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |flags| {
            let mut edges = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if flags[k] {
                        edges.push((a, b));
                    }
                    k += 1;
                }
            }
            GraphSpec::new(n, edges).unwrap()
        })
    })
}

fn recurrence() -> &'static NonpreRecurrence {
    static REC: OnceLock<NonpreRecurrence> = OnceLock::new();
    REC.get_or_init(|| NonpreRecurrence::build(&build_pentagon_code().unwrap()).unwrap())
}

// X2 X3 Z5, all three must click
fn fixed_z_policy() -> MeasurementPolicy {
    let leaf = PolicyNode::probe(4, Basis::Z, PolicyNode::Success, PolicyNode::Failure);
    let mid = PolicyNode::probe(2, Basis::X, leaf, PolicyNode::Failure);
    MeasurementPolicy::new(5, Basis::Z, PolicyNode::probe(1, Basis::X, mid, PolicyNode::Failure)).unwrap()
}

proptest! {
    #[test]
    fn commutation_is_symmetric(a in pauli(6), b in pauli(6)) {
        prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
    }

    #[test]
    fn product_is_associative(a in pauli(5), b in pauli(5), c in pauli(5)) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn swapping_factors_tracks_commutation(a in pauli(5), b in pauli(5)) {
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        if a.commutes(&b).unwrap() {
            prop_assert_eq!(ab, ba);
        } else {
            prop_assert_eq!(ab, ba.negated());
        }
    }

    #[test]
    fn cz_is_an_involution(a in pauli(5), b in pauli(5), i in 0usize..5, j in 0usize..5) {
        prop_assume!(i != j);
        let a1 = a.conjugate_by_cz(i, j).unwrap();
        prop_assert_eq!(a1.conjugate_by_cz(i, j).unwrap(), a.clone());
        let b1 = b.conjugate_by_cz(i, j).unwrap();
        prop_assert_eq!(a1.commutes(&b1).unwrap(), a.commutes(&b).unwrap());
    }

    #[test]
    fn hadamard_is_an_involution(a in pauli(4), q in 0usize..4) {
        prop_assert_eq!(a.conjugate_by_h(q).unwrap().conjugate_by_h(q).unwrap(), a);
    }

    #[test]
    fn pauli_text_round_trip(a in pauli(7)) {
        prop_assume!(a.is_hermitian());
        let parsed: PauliOperator = a.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &a);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<PauliOperator>(&json).unwrap(), a);
    }

    #[test]
    fn graph_stabilizers_match_cz_circuit(g in graph(6)) {
        let n = g.n_vertices();
        let plus: Vec<(Basis, bool)> = vec![(Basis::X, false); n];
        let mut state = StabilizerTableau::product_state(&plus);
        for (a, b) in g.edges() {
            state.apply_cz(a, b).unwrap();
        }
        for k in graph_stabilizers(&g) {
            prop_assert_eq!(state.sign_of(&k).unwrap(), Some(false), "{} not stabilizing", k);
        }
    }

    #[test]
    fn span_agrees_with_enumeration(g in graph(4), target in pauli(4)) {
        prop_assume!(g.n_vertices() == 4);
        let group = StabilizerGroup::new(4, graph_stabilizers(&g)).unwrap();
        let brute = group.elements().iter().any(|e| e.eq_up_to_phase(&target));
        prop_assert_eq!(in_span(&group, &[], &target).unwrap().is_some(), brute);
    }

    #[test]
    fn logical_cosets_commute_with_stabilizers(b in prop::sample::select(Basis::ALL.to_vec()), shift in 0usize..5) {
        let code = build_pentagon_code().unwrap();
        let group = code.code_stabilizers();
        for op in coset_elements(group, code.logical(b)).unwrap() {
            prop_assert!(group.commutes_with(&op).unwrap());
            prop_assert_eq!(code.logical_coset(&rotate(&op, shift)).unwrap(), Some(b));
        }
    }

    #[test]
    fn layout_round_trip(levels in 1u32..6, seed in any::<u64>()) {
        let l = layout(levels).unwrap();
        let leaf = seed % l.physical_count();
        let path = l.path(leaf).unwrap();
        prop_assert_eq!(path.len(), levels as usize);
        prop_assert_eq!(l.leaf(&path).unwrap(), leaf);
    }

    #[test]
    fn polynomial_json_round_trip(coeffs in prop::collection::vec(-50i64..50, 0..7)) {
        let poly = LossPolynomial::from_integers(&coeffs);
        let json = serde_json::to_string(&poly).unwrap();
        prop_assert_eq!(serde_json::from_str::<LossPolynomial>(&json).unwrap(), poly);
    }

    #[test]
    fn preannounced_map_is_monotone(a in 0.0f64..1.0, b in 0.0f64..1.0, levels in 1u32..6) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(iterate_levels(&preannounced, lo, levels) <= iterate_levels(&preannounced, hi, levels) + 1e-15);
    }

    #[test]
    fn optimal_policy_beats_a_fixed_one(p in 0.0f64..1.0) {
        let fixed = 1.0 - (1.0 - p).powi(3);
        prop_assert!((fixed_z_policy().failure_polynomial().eval(p) - fixed).abs() < 1e-12);
        let opt = recurrence().policy(Basis::Z).failure.eval(p);
        prop_assert!(opt <= fixed + 1e-12);
    }

    #[test]
    fn optimal_failure_is_monotone(a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        for basis in Basis::ALL {
            let f = &recurrence().policy(basis).failure;
            prop_assert!(f.eval(lo) <= f.eval(hi) + 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn simulation_ignores_worker_count(seed in any::<u64>(), p in 0.05f64..0.4, jobs in 2usize..5) {
        static SIM: OnceLock<Simulator> = OnceLock::new();
        let sim = SIM.get_or_init(|| Simulator::new().unwrap());
        let cfg = SimConfig::new(LossMode::Nonpreannounced, p, 2, 20_000, seed);
        let one = with_jobs(1, || sim.run(&cfg)).unwrap().unwrap();
        let many = with_jobs(jobs, || sim.run(&cfg)).unwrap().unwrap();
        prop_assert_eq!(one, many);
    }
}
