//! Steepest descent along pivot edges, compared with the exact minimum.
//!
//! ```text
//! cargo run --example local_search
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use transport_entropy::minentropy::{local_search_min_entropy, min_joint_entropy_exact, SolverOptions};
use transport_entropy::polytope::TransportationPolytope;
use transport_entropy::{Distribution, Precision};

fn main() -> transport_entropy::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut hits = 0;
    let trials = 20;
    for _ in 0..trials {
        let mut draw = |n| Distribution::from_weights((0..n).map(|_| rng.gen_range(1u64..=9)).collect::<Vec<_>>());
        let poly = TransportationPolytope::new(draw(4)?, draw(4)?);
        let local = local_search_min_entropy(&poly, &poly.northwest_corner(), 100, Precision::DEFAULT);
        let exact = min_joint_entropy_exact(&poly, SolverOptions::default());
        let gap = local.value.value() - exact.value.value();
        if gap < 1e-12 {
            hits += 1;
        }
        println!(
            "local {:.6}  exact {:.6}  gap {:.2e}  certified optimal: {}",
            local.value.value(),
            exact.value.value(),
            gap,
            local.optimal
        );
    }
    println!("local search reached the minimum on {hits}/{trials} polytopes");
    Ok(())
}
