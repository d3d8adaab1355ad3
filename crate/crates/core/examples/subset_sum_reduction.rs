//! Subset Sum solved through entropy minimization, end to end.
//!
//! ```text
//! cargo run --example subset_sum_reduction
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use transport_entropy::measures::{entropy, joint_entropy};
use transport_entropy::minentropy::decide_entropy_min;
use transport_entropy::reductions::{reduce_subset_sum, solve_subset_sum_via_entropy, SubsetSumInstance};

fn main() -> transport_entropy::Result<()> {
    let inst = SubsetSumInstance::new(vec![3, 1, 2], 3)?;
    let poly = reduce_subset_sum(&inst)?;
    println!("weights {:?}, target {}", inst.weights(), inst.target());
    println!("P = {}  Q = {}", poly.row_marginal(), poly.col_marginal());

    if let Some(w) = decide_entropy_min(&poly).into_witness() {
        let s = w.to_coupling(poly.row_marginal());
        println!("coupling with H(X,Y) = H(P):\n{s}");
        println!(
            "H(X,Y) = {}  H(P) = {}",
            joint_entropy(&s),
            entropy(poly.row_marginal())
        );
    }
    println!("subset: {:?}", solve_subset_sum_via_entropy(&inst));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let inst = SubsetSumInstance::random(&mut rng, 10, 40)?;
        match solve_subset_sum_via_entropy(&inst) {
            Some(j) => {
                let picked: Vec<u64> = j.iter().map(|&i| inst.weights()[i]).collect();
                println!("target {:>3}: {picked:?}", inst.target());
            }
            None => println!("target {:>3}: no subset of {:?}", inst.target(), inst.weights()),
        }
    }
    Ok(())
}
