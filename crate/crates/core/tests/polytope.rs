mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::*;
use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;
use transport_entropy::polytope::*;
use transport_entropy::{Coupling, Error};

fn poly(p: &[u64], q: &[u64]) -> TransportationPolytope {
    TransportationPolytope::new(dist(p), dist(q))
}

fn counts_of(c: &Coupling, d: &BigUint) -> Vec<BigUint> {
    c.cells()
        .iter()
        .map(|x| {
            let k = x * transport_entropy::Rational::from_integer(d.clone().into());
            assert!(k.is_integer(), "cell {x} is not a multiple of 1/{d}");
            k.to_integer().to_biguint().unwrap()
        })
        .collect()
}

#[test]
fn northwest_corner_reproduces_worked_example() {
    let p = poly(&[1, 3, 5], &[2, 4, 3]);
    let start = Instant::now();
    let v = p.northwest_corner();
    let elapsed = start.elapsed();
    let expect = Coupling::from_integer_rows(&[vec![1, 0, 0], vec![1, 2, 0], vec![0, 2, 3]]).unwrap();
    assert_eq!(v.coupling(), &expect);
    assert_eq!(v.basis().len(), 5);
    assert!(elapsed.as_millis() < 50);
}

#[test]
fn northwest_corner_edge_cases() {
    let v = poly(&[1], &[1, 2]).northwest_corner();
    assert_eq!(v.coupling(), &Coupling::from_integer_rows(&[vec![1, 2]]).unwrap());
    let v = poly(&[1, 1], &[1, 1]).northwest_corner();
    assert_eq!(
        v.coupling(),
        &Coupling::from_integer_rows(&[vec![1, 0], vec![0, 1]]).unwrap()
    );
    assert_eq!(v.basis().len(), 3);
}

#[test]
fn enumeration_examples() {
    assert_eq!(
        poly(&[1, 1], &[1, 1])
            .enumerate_vertices(DEFAULT_VERTEX_LIMIT)
            .unwrap()
            .len(),
        2
    );
    assert_eq!(
        poly(&[1], &[1, 2, 3])
            .enumerate_vertices(DEFAULT_VERTEX_LIMIT)
            .unwrap()
            .len(),
        1
    );
    let p = poly(&[1, 3, 5], &[2, 4, 3]);
    let (verts, _) = vertices_ref(p.row_marginal().probs(), p.col_marginal().probs());
    assert_eq!(p.enumerate_vertices(DEFAULT_VERTEX_LIMIT).unwrap().len(), verts.len());
}

#[test]
fn limit_is_enforced() {
    let p = poly(&[1, 1, 1], &[1, 1, 1]);
    assert_eq!(p.enumerate_vertices(6).unwrap().len(), 6);
    assert_eq!(p.enumerate_vertices(5).unwrap_err(), Error::LimitExceeded { limit: 5 });
}

#[test]
fn basis_solving() {
    let p = poly(&[1, 3, 5], &[2, 4, 3]);
    let nw = p.northwest_corner();
    let again = p.solve_basis(nw.basis()).unwrap();
    assert_eq!(again.coupling(), nw.coupling());
    // A cycle is not a tree.
    let cyc = BasisTree::new(vec![(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)]);
    assert!(matches!(p.solve_basis(&cyc), Err(Error::InvalidBasis(_))));
    // Infeasible tree: forcing all of column 0 onto row 0 overdraws row 0.
    let bad = BasisTree::new(vec![(0, 0), (1, 1), (1, 2), (2, 1), (2, 2)]);
    assert!(p.solve_basis(&bad).is_err());
}

#[test]
fn membership_is_exact() {
    let p = poly(&[1, 1], &[1, 1]);
    assert!(p.is_member(&p.product_coupling()));
    let off = Coupling::from_integer_rows(&[vec![2, 1], vec![0, 1]]).unwrap();
    assert!(!p.is_member(&off));
    let wrong_shape = Coupling::from_integer_rows(&[vec![1, 1]]).unwrap();
    assert!(!p.is_member(&wrong_shape));
}

fn arb_marginals() -> impl Strategy<Value = (Vec<u64>, Vec<u64>)> {
    let side = |len| prop::collection::vec(0u64..=9, len).prop_filter("positive total", |v| v.iter().any(|&x| x > 0));
    (1usize..=4, 1usize..=4).prop_flat_map(move |(n, m)| (side(n), side(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enumeration_matches_brute_force((a, b) in arb_marginals()) {
        let p = poly(&a, &b);
        let (reference, d) = vertices_ref(p.row_marginal().probs(), p.col_marginal().probs());
        let got = p.enumerate_vertices(DEFAULT_VERTEX_LIMIT).unwrap();
        let got: BTreeSet<Vec<BigUint>> = got.iter().map(|v| counts_of(v.coupling(), &d)).collect();
        let reference: BTreeSet<Vec<BigUint>> = reference.into_iter().collect();
        prop_assert_eq!(got, reference);
    }

    #[test]
    fn vertices_are_integral_members((a, b) in arb_marginals()) {
        let p = poly(&a, &b);
        let d = p.denominator().clone();
        for v in p.enumerate_vertices(DEFAULT_VERTEX_LIMIT).unwrap() {
            prop_assert!(p.is_member(v.coupling()));
            counts_of(v.coupling(), &d);
            // The support of a vertex fits in its basis.
            for (idx, x) in v.coupling().cells().iter().enumerate() {
                let m = p.shape().1;
                if !x.is_zero() {
                    prop_assert!(v.basis().contains((idx / m, idx % m)));
                }
            }
        }
    }

    #[test]
    fn northwest_corner_is_a_vertex((a, b) in arb_marginals()) {
        let p = poly(&a, &b);
        let (reference, d) = vertices_ref(p.row_marginal().probs(), p.col_marginal().probs());
        let nw = counts_of(p.northwest_corner().coupling(), &d);
        prop_assert!(reference.contains(&nw));
    }

    #[test]
    fn pivot_neighbors_are_adjacent_vertices((a, b) in arb_marginals()) {
        let p = poly(&a, &b);
        let (reference, d) = vertices_ref(p.row_marginal().probs(), p.col_marginal().probs());
        let nw = p.northwest_corner();
        let here = counts_of(nw.coupling(), &d);
        for w in p.pivot_neighbors(&nw) {
            let c = counts_of(w.coupling(), &d);
            prop_assert!(reference.contains(&c));
            prop_assert_ne!(&c, &here);
            // Adjacent vertices: the union of supports carries one cycle at most.
            let (n, m) = p.shape();
            let mut edges = Vec::new();
            for idx in 0..n * m {
                if !c[idx].is_zero() || !here[idx].is_zero() {
                    edges.push((idx / m, n + idx % m));
                }
            }
            prop_assert!(cyclomatic(n + m, &edges) <= 1);
        }
    }

    #[test]
    fn transpose_preserves_vertex_count((a, b) in arb_marginals()) {
        let p = poly(&a, &b);
        let x = p.enumerate_vertices(DEFAULT_VERTEX_LIMIT).unwrap().len();
        let y = p.transpose().enumerate_vertices(DEFAULT_VERTEX_LIMIT).unwrap().len();
        prop_assert_eq!(x, y);
    }
}

/// Edges minus nodes plus connected components.
fn cyclomatic(nodes: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut cycles = 0;
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            cycles += 1;
        } else {
            parent[ru] = rv;
        }
    }
    cycles
}
