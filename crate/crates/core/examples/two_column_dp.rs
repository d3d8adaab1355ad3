//! With two columns the decision is Subset Sum, solved by a bitset dynamic
//! program in time proportional to `n` times the common denominator.
//!
//! ```text
//! cargo run --release --example two_column_dp
//! ```

use std::time::Instant;

use transport_entropy::measures::ratio;
use transport_entropy::minentropy::{decide_entropy_min_two_cols, DEFAULT_DP_BUDGET};
use transport_entropy::{Distribution, Error, Rational};

fn main() -> transport_entropy::Result<()> {
    let p = Distribution::from_weights([3u64, 1, 2])?;
    let w = decide_entropy_min_two_cols(&p, &ratio(1, 2), DEFAULT_DP_BUDGET)?;
    println!(
        "P = {p}, q = 1/2: assignment {:?}",
        w.witness().map(|w| w.assignment().to_vec())
    );

    for n in [250u64, 500, 1000, 2000] {
        let weights: Vec<u64> = (0..n).map(|i| 1 + (i * 37) % 97).collect();
        let total: u64 = weights.iter().sum();
        let p = Distribution::from_weights(weights)?;
        let q = Rational::new((total / 2 + 1).into(), total.into());
        let start = Instant::now();
        let d = decide_entropy_min_two_cols(&p, &q, DEFAULT_DP_BUDGET)?;
        println!(
            "n = {n:>4}  D = {total:>6}  n*D = {:>9}  witness = {:<5}  {:?}",
            n * total,
            d.is_witness(),
            start.elapsed()
        );
    }

    // Denominators beyond the budget are refused rather than attempted.
    let huge = Distribution::from_weights([1u64, 999_999_999])?;
    match decide_entropy_min_two_cols(&huge, &ratio(1, 2), 1 << 20) {
        Err(e @ Error::DenominatorOverflow { .. }) => println!("{e}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
