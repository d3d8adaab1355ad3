//! Enumerates every vertex of a transportation polytope and walks pivot
//! edges from the north-west corner.
//!
//! ```text
//! cargo run --example vertex_enumeration
//! ```

use transport_entropy::measures::joint_entropy;
use transport_entropy::polytope::{TransportationPolytope, DEFAULT_VERTEX_LIMIT};
use transport_entropy::Distribution;

fn main() -> transport_entropy::Result<()> {
    let poly = TransportationPolytope::new(
        Distribution::from_weights([1u64, 3, 5])?,
        Distribution::from_weights([2u64, 4, 3])?,
    );
    println!(
        "dimension {} with common denominator {}",
        poly.dimension(),
        poly.denominator()
    );

    let vertices = poly.enumerate_vertices(DEFAULT_VERTEX_LIMIT)?;
    println!("{} vertices", vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        println!(
            "#{i}: H = {:.6}  support = {}",
            joint_entropy(v.coupling()).value(),
            v.coupling().support_size()
        );
    }

    let nw = poly.northwest_corner();
    println!("pivot neighbors of the north-west corner:");
    for w in poly.pivot_neighbors(&nw) {
        println!("{}\n", w.coupling());
    }

    // A budget turns runaway enumeration into an error.
    let square = TransportationPolytope::new(Distribution::uniform(5)?, Distribution::uniform(5)?);
    match square.enumerate_vertices(10) {
        Ok(v) => println!("unexpected: {} vertices", v.len()),
        Err(e) => println!("5x5 uniform with budget 10: {e}"),
    }
    Ok(())
}
