mod common;

use common::*;
use proptest::prelude::*;
use transport_entropy::measures::{entropy, joint_entropy, ratio};
use transport_entropy::minentropy::*;
use transport_entropy::polytope::TransportationPolytope;
use transport_entropy::{Coupling, Error, Precision};

fn poly(p: &[u64], q: &[u64]) -> TransportationPolytope {
    TransportationPolytope::new(dist(p), dist(q))
}

#[test]
fn exact_minimum_examples() {
    let opts = SolverOptions::default();
    let r = min_joint_entropy_exact(&poly(&[1, 1], &[1, 1]), opts);
    assert_eq!(r.best, Coupling::diagonal(&dist(&[1, 1])));
    assert!(r.value.contains(&ratio(1, 1)) && r.optimal);

    let r = min_joint_entropy_exact(&poly(&[1], &[1, 2]), opts);
    assert!(agrees(&r.value, &entropy_ref(dist(&[1, 2]).probs())));
    assert_eq!(r.vertices_visited, 1);

    let p = poly(&[1, 3, 5], &[2, 4, 3]);
    let r = min_joint_entropy_exact(&p, opts);
    let (h, canonical, count) = min_entropy_ref(p.row_marginal(), p.col_marginal());
    assert!(agrees(&r.value, &h));
    assert_eq!(r.best, canonical);
    assert_eq!(r.vertices_visited, count);
    // Frozen with 40-digit arithmetic over all vertices.
    assert!((r.value.value() - 1.752_715_278_979_704_7).abs() < TOL);
}

#[test]
fn limit_returns_best_so_far() {
    let p = poly(&[1, 1, 1, 1], &[1, 1, 1, 1]);
    let r = min_joint_entropy_exact(
        &p,
        SolverOptions {
            limit: 3,
            ..Default::default()
        },
    );
    assert!(r.limit_exceeded && !r.optimal);
    assert!(p.is_member(&r.best));
    assert!(r.vertices_visited <= 3);
}

#[test]
fn maximum_is_product() {
    let p = poly(&[1, 1], &[1, 1]);
    assert!(joint_entropy(&max_joint_entropy(&p)).contains(&ratio(2, 1)));
    let p = poly(&[1, 3, 5], &[2, 4, 3]);
    let s = max_joint_entropy(&p);
    let sum = entropy_ref(p.row_marginal().probs()) + entropy_ref(p.col_marginal().probs());
    assert!(agrees(&joint_entropy(&s), &sum));
}

#[test]
fn decision_examples() {
    let w = decide_entropy_min(&poly(&[2, 1, 1], &[1, 1])).into_witness().unwrap();
    assert_eq!(w.assignment(), &[Some(0), Some(1), Some(1)]);
    assert_eq!(
        decide_entropy_min(&poly(&[1, 1, 1], &[1, 1])),
        Decision::NoWitness { exhausted: true }
    );
    let p = dist(&[1, 4, 2, 2]);
    let w = decide_entropy_min(&TransportationPolytope::new(p.clone(), p.clone()))
        .into_witness()
        .unwrap();
    assert_eq!(w.assignment(), &[Some(0), Some(1), Some(2), Some(3)]);
}

#[test]
fn two_column_examples() {
    let p = dist(&[3, 1, 2]);
    let w = decide_entropy_min_two_cols(&p, &ratio(1, 2), DEFAULT_DP_BUDGET)
        .unwrap()
        .into_witness()
        .unwrap();
    assert_eq!(w.assignment(), &[Some(0), Some(1), Some(1)]);
    assert!(
        !decide_entropy_min_two_cols(&dist(&[1, 1]), &ratio(1, 4), DEFAULT_DP_BUDGET)
            .unwrap()
            .is_witness()
    );
    let w = decide_entropy_min_two_cols(&p, &ratio(0, 1), DEFAULT_DP_BUDGET)
        .unwrap()
        .into_witness()
        .unwrap();
    assert_eq!(w.assignment(), &[Some(1), Some(1), Some(1)]);
    assert!(matches!(
        decide_entropy_min_two_cols(&dist(&[1, 999_999_999]), &ratio(1, 2), 1000),
        Err(Error::DenominatorOverflow { .. })
    ));
    assert!(decide_entropy_min_two_cols(&p, &ratio(3, 2), DEFAULT_DP_BUDGET).is_err());
}

#[test]
fn local_search_examples() {
    let p = poly(&[1, 1], &[1, 1]);
    let start = p.northwest_corner();
    let r = local_search_min_entropy(&p, &start, 10, Precision::DEFAULT);
    assert!(r.value.contains(&ratio(1, 1)) && r.optimal);

    let p = poly(&[1], &[1, 2]);
    let start = p.northwest_corner();
    let r = local_search_min_entropy(&p, &start, 10, Precision::DEFAULT);
    assert_eq!(&r.best, start.coupling());

    let p = poly(&[1, 3, 5], &[2, 4, 3]);
    let r = local_search_min_entropy(&p, &p.northwest_corner(), 100, Precision::DEFAULT);
    let exact = min_joint_entropy_exact(&p, SolverOptions::default());
    assert!(!r.value.definitely_lt(&exact.value));
    assert!(p.is_member(&r.best));
}

fn arb_pair() -> impl Strategy<Value = (Vec<u64>, Vec<u64>)> {
    let side = |len| prop::collection::vec(0u64..=9, len).prop_filter("positive total", |v| v.iter().any(|&x| x > 0));
    (1usize..=4, 1usize..=4).prop_flat_map(move |(n, m)| (side(n), side(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_solver_matches_oracle((a, b) in arb_pair()) {
        let p = poly(&a, &b);
        let r = min_joint_entropy_exact(&p, SolverOptions::default());
        let (h, canonical, count) = min_entropy_ref(p.row_marginal(), p.col_marginal());
        prop_assert!(agrees(&r.value, &h));
        prop_assert_eq!(&r.best, &canonical);
        prop_assert_eq!(r.vertices_visited, count);
        prop_assert!(r.optimal);
        // Lower bound max{H(P), H(Q)}.
        let lb = entropy_lower_bound(&p, Precision::DEFAULT);
        prop_assert!(!r.value.definitely_lt(&lb));
        prop_assert!(agrees(&r.value, &joint_entropy_ref(&r.best)));
    }

    #[test]
    fn decision_matches_brute_force((a, b) in arb_pair()) {
        let p = poly(&a, &b);
        let got = decide_entropy_min(&p);
        let reference = deterministic_ref(p.row_marginal(), p.col_marginal());
        prop_assert_eq!(got.witness().map(|w| w.assignment().to_vec()), reference);
        if let Some(w) = got.witness() {
            let s = w.to_coupling(p.row_marginal());
            prop_assert!(p.is_member(&s));
            prop_assert!(joint_entropy(&s).overlaps(&entropy(p.row_marginal())));
        }
    }

    #[test]
    fn two_columns_agree_with_general_decider(a in prop::collection::vec(0u64..=20, 1..=8), s in 0u64..=60) {
        prop_assume!(a.iter().any(|&x| x > 0));
        let total: u64 = a.iter().sum();
        prop_assume!(s <= total);
        let p = dist(&a);
        let q = ratio(s as i64, total as i64);
        let dp = decide_entropy_min_two_cols(&p, &q, DEFAULT_DP_BUDGET).unwrap();
        let general = decide_entropy_min(&TransportationPolytope::new(p.clone(), dist(&[s, total - s])));
        prop_assert_eq!(dp.is_witness(), general.is_witness());
        if let Some(w) = dp.witness() {
            let sum: u64 = (0..a.len()).filter(|&i| w.column_of(i) == Some(0)).map(|i| a[i]).sum();
            prop_assert_eq!(sum, s);
            prop_assert_eq!(w.assignment(), general.witness().unwrap().assignment());
        }
    }

    #[test]
    fn local_search_never_beats_exact((a, b) in arb_pair()) {
        let p = poly(&a, &b);
        let exact = min_joint_entropy_exact(&p, SolverOptions::default());
        let r = local_search_min_entropy(&p, &p.northwest_corner(), 50, Precision::DEFAULT);
        prop_assert!(p.is_member(&r.best));
        prop_assert!(!r.value.definitely_lt(&exact.value));
        if r.optimal {
            prop_assert!(r.value.overlaps(&exact.value));
        }
    }
}

#[test]
fn canonical_tie_break_on_symmetric_polytope() {
    // Six permutation matrices all reach log2 3; the identity comes first.
    let p = poly(&[1, 1, 1], &[1, 1, 1]);
    let r = min_joint_entropy_exact(&p, SolverOptions::default());
    assert_eq!(r.best, Coupling::diagonal(&dist(&[1, 1, 1])));
    assert!(r.co_minimal.is_empty(), "exactly equal values are merged, not reported");
}
