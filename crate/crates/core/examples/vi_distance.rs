//! Variation of information between distributions, minimized over
//! couplings, next to total variation.
//!
//! ```text
//! cargo run --example vi_distance
//! ```

use transport_entropy::metrics::{
    decide_vi_equals_entropy_gap, total_variation, vi, vi_distance, vi_distance_normalized, vi_normalized,
};
use transport_entropy::minentropy::SolverOptions;
use transport_entropy::{Coupling, Distribution};

fn main() -> transport_entropy::Result<()> {
    let s = Coupling::from_integer_rows(&[vec![1, 1], vec![1, 1]])?;
    println!(
        "independent fair coins: VI = {:.6} bits, normalized {:.6}",
        vi(&s).value(),
        vi_normalized(&s).value()
    );

    let pairs = [
        (vec![1u64, 3, 5], vec![2u64, 4, 3]),
        (vec![2, 1, 1], vec![1, 1]),
        (vec![1, 1], vec![1, 1, 1, 1]),
        (vec![5, 1], vec![1, 5]),
    ];
    let opts = SolverOptions::default();
    for (a, b) in pairs {
        let p = Distribution::from_weights(a)?;
        let q = Distribution::from_weights(b)?;
        let d = vi_distance(&p, &q, opts);
        let dn = vi_distance_normalized(&p, &q, opts);
        println!(
            "P = {p}  Q = {q}\n  VI {:.6}  normalized {:.6}  TV {}  VI = H(P) - H(Q): {}",
            d.value.value(),
            dn.value.value(),
            total_variation(&p, &q),
            decide_vi_equals_entropy_gap(&p, &q)
        );
    }
    Ok(())
}
