use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use proptest::prelude::*;

use trailcount::fock::{Fock, MatrixKind, StateVector};
use trailcount::nilpotent::{formal_walk_polynomial, Symbolic, VertexVariant};
use trailcount::{walk_count, Graph, Oracle, WalkClass};

fn graph() -> impl Strategy<Value = Graph> {
    (2usize..=6).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for a in 1..=n {
                for b in a + 1..=n {
                    if bits[k] {
                        edges.push((a, b));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn query() -> impl Strategy<Value = (Graph, usize, usize, usize)> {
    graph().prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 0usize..=5, 1..=n, 1..=n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trail_engines_agree((g, l, u, v) in query()) {
        let oracle = Oracle::new(&g).count(l, u, v, WalkClass::Trail).unwrap();
        let symbolic = Symbolic::default().trail_count(&g, l, u, v).unwrap();
        let fock = Fock::default().normal_ordered_expectation(&g, l, u, v, MatrixKind::NEdge).unwrap();
        prop_assert_eq!(&oracle, &symbolic);
        prop_assert_eq!(&oracle, &fock);
    }

    #[test]
    fn class_counts_are_nested((g, l, u, v) in query()) {
        let o = Oracle::new(&g);
        let w = o.count(l, u, v, WalkClass::Walk).unwrap();
        let t = o.count(l, u, v, WalkClass::Trail).unwrap();
        let p = o.count(l, u, v, WalkClass::Path).unwrap();
        prop_assert!(p <= t && t <= w);
        prop_assert_eq!(&w, &walk_count(&g, l, u, v).unwrap());
        prop_assert_eq!(walk_count(&g, l, u, v).unwrap(), walk_count(&g, l, v, u).unwrap());
        prop_assert_eq!(&t, &o.count(l, v, u, WalkClass::Trail).unwrap());
    }

    #[test]
    fn reducing_the_formal_expansion_matches_the_ring((g, l, u, v) in query()) {
        let formal = formal_walk_polynomial(&g, l, u, v).unwrap();
        prop_assert_eq!(formal.coefficient_sum(), walk_count(&g, l, u, v).unwrap());
        let reduced = formal.reduce();
        let direct = Symbolic::default().trail_polynomial(&g, l, u, v).unwrap();
        prop_assert_eq!(reduced, direct);
    }

    #[test]
    fn pruned_walker_matches_term_by_term_expansion((g, l, u, v) in query()) {
        let fock = Fock::default();
        for kind in [MatrixKind::NEdge, MatrixKind::MVertex] {
            let psi = match kind {
                MatrixKind::NEdge => fock.graph_state(&g).unwrap(),
                _ => fock.all_ones(&g).unwrap(),
            };
            let mut naive = BigInt::zero();
            for (_, term) in fock.expand_walk_terms(&g, l, u, v, kind).unwrap() {
                let image: StateVector = term.normal_ordered().unwrap().apply(&psi).unwrap();
                naive += psi.inner(&image);
            }
            let pruned = fock.normal_ordered_expectation(&g, l, u, v, kind).unwrap();
            prop_assert_eq!(BigInt::from(pruned), naive);
        }
    }

    #[test]
    fn vertex_variants_match_their_classes((g, l, u, v) in query()) {
        let o = Oracle::new(&g);
        let s = Symbolic::default();
        prop_assert_eq!(
            s.path_count(&g, l, u, v, VertexVariant::Literal).unwrap(),
            o.count(l, u, v, WalkClass::DistinctNonInitial).unwrap()
        );
        if u != v {
            prop_assert_eq!(
                s.path_count(&g, l, u, v, VertexVariant::StartGuarded).unwrap(),
                o.count(l, u, v, WalkClass::Path).unwrap()
            );
        }
    }

    #[test]
    fn annihilator_support_is_the_set_of_trail_edge_sets((g, l, u, v) in query()) {
        let o = Oracle::new(&g);
        let hist = o.trail_edge_set_histogram(l, u, v).unwrap();
        let state = Fock::default().d_matrix_state(&g, l, u, v).unwrap();
        prop_assert_eq!(BigUint::from(state.nonzero().count()), o.count(l, u, v, WalkClass::StartOnceTrailEdgeSet).unwrap());
        prop_assert_eq!(hist.len(), state.nonzero().count());
        let squares: BigUint = hist.values().map(|c| c * c).sum();
        prop_assert_eq!(Fock::default().d_matrix_quadratic_form(&g, l, u, v).unwrap(), squares);
        prop_assert!(state.nonzero().all(|(_, a)| a > &BigInt::zero()));
    }
}
