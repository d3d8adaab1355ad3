//! Maximum mutual information over channels with `m` outputs, and
//! 3-Partition solved as the question whether `log2 m` is reached.
//!
//! ```text
//! cargo run --example optimal_channel
//! ```

use transport_entropy::channel::{
    capacity_upper_bound, decide_optimal_channel, max_mutual_information, min_joint_entropy_over_family, ChannelFamily,
};
use transport_entropy::measures::joint_entropy;
use transport_entropy::minentropy::SolverOptions;
use transport_entropy::reductions::{solve_three_partition_via_channel, ThreePartitionInstance};
use transport_entropy::{Distribution, Precision};

fn main() -> transport_entropy::Result<()> {
    let f = ChannelFamily::new(Distribution::from_weights([4u64, 2, 1, 1])?, 2)?;
    let r = max_mutual_information(&f, SolverOptions::default());
    println!("P = {}, m = 2", f.input_marginal());
    println!(
        "max I(X;Y) in {} (bound {})",
        r.value,
        capacity_upper_bound(&f, Precision::DEFAULT)
    );
    println!("best channel:\n{}", r.best);
    let trivial = min_joint_entropy_over_family(&f);
    println!("min H(X,Y) over the family is H(P) = {}", joint_entropy(&trivial));

    let f = ChannelFamily::new(Distribution::from_weights([2u64, 1])?, 2)?;
    println!(
        "P = {}: balanced channel exists: {}",
        f.input_marginal(),
        decide_optimal_channel(&f).is_witness()
    );

    let inst = ThreePartitionInstance::new(vec![7, 8, 9, 9, 7, 8, 8, 8, 8], 24)?;
    match solve_three_partition_via_channel(&inst) {
        Some(groups) => {
            for g in groups {
                let w: Vec<u64> = g.iter().map(|&i| inst.weights()[i]).collect();
                println!("triple {g:?} -> {w:?}");
            }
        }
        None => println!("no 3-partition"),
    }
    let no = ThreePartitionInstance::new(vec![7, 7, 7, 9, 9, 9], 24)?;
    println!(
        "{:?} with k = 24: {:?}",
        no.weights(),
        solve_three_partition_via_channel(&no)
    );
    Ok(())
}
