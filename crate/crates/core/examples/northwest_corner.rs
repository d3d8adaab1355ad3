//! The north-west corner rule builds a vertex of `C(P, Q)` in `O(n + m)`.
//!
//! ```text
//! cargo run --example northwest_corner
//! ```

use transport_entropy::measures::joint_entropy;
use transport_entropy::polytope::TransportationPolytope;
use transport_entropy::Distribution;

fn main() -> transport_entropy::Result<()> {
    let p = Distribution::from_weights([1u64, 3, 5])?;
    let q = Distribution::from_weights([2u64, 4, 3])?;
    let poly = TransportationPolytope::new(p, q);

    let v = poly.northwest_corner();
    println!("P = {}", poly.row_marginal());
    println!("Q = {}", poly.col_marginal());
    println!("north-west corner vertex:\n{}", v.coupling());
    println!("basis cells: {:?}", v.basis().cells());
    println!("H(X,Y) = {}", joint_entropy(v.coupling()));

    // Any spanning tree of the bipartite graph that yields nonnegative
    // flows is a vertex too.
    let again = poly.solve_basis(v.basis())?;
    assert_eq!(again.coupling(), v.coupling());
    Ok(())
}
