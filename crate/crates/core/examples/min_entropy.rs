//! Exact minimum joint entropy over `C(P, Q)`, with the bounds that bracket
//! it and the decision whether the lower bound `H(P)` is reached.
//!
//! ```text
//! cargo run --example min_entropy
//! ```

use transport_entropy::measures::{entropy, joint_entropy};
use transport_entropy::minentropy::{
    decide_entropy_min, entropy_lower_bound, max_joint_entropy, min_joint_entropy_exact, SolverOptions,
};
use transport_entropy::polytope::TransportationPolytope;
use transport_entropy::{Distribution, Precision};

fn main() -> transport_entropy::Result<()> {
    let poly = TransportationPolytope::new(
        Distribution::from_weights([1u64, 3, 5])?,
        Distribution::from_weights([2u64, 4, 3])?,
    );

    let r = min_joint_entropy_exact(&poly, SolverOptions::default());
    println!("minimum H(X,Y) in {}", r.value);
    println!("attained by\n{}", r.best);
    println!("{} vertices visited, optimal = {}", r.vertices_visited, r.optimal);

    let lb = entropy_lower_bound(&poly, Precision::DEFAULT);
    let ub = joint_entropy(&max_joint_entropy(&poly));
    println!(
        "max(H(P), H(Q)) = {:.9} <= {:.9} <= {:.9} = H(P) + H(Q)",
        lb.value(),
        r.value.value(),
        ub.value()
    );

    // Tighter intervals on request.
    let fine = min_joint_entropy_exact(
        &poly,
        SolverOptions {
            precision: Precision::bits(120),
            ..Default::default()
        },
    );
    println!("120-bit enclosure width {:.3e}", fine.value.width());

    // H(X,Y) = H(P) exactly when every row can go to a single column.
    let p = Distribution::from_weights([2u64, 1, 1])?;
    let q = Distribution::from_weights([1u64, 1])?;
    let poly = TransportationPolytope::new(p.clone(), q);
    match decide_entropy_min(&poly).into_witness() {
        Some(w) => println!(
            "H(P) = {} is attained; rows go to columns {:?}",
            entropy(&p),
            w.assignment()
        ),
        None => println!("H(P) is not attained"),
    }
    Ok(())
}
