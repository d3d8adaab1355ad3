//! Witnesses are checked with exact arithmetic; any tampering is caught.
//!
//! ```text
//! cargo run --example certificates
//! ```

use transport_entropy::channel::decide_optimal_channel;
use transport_entropy::measures::ratio;
use transport_entropy::reductions::{
    reduce_three_partition, verify_certificate, Certificate, CertificateTarget, Claim, ThreePartitionInstance,
};

fn main() -> transport_entropy::Result<()> {
    let inst = ThreePartitionInstance::new(vec![7, 8, 9, 9, 7, 8, 8, 8, 8], 24)?;
    let family = reduce_three_partition(&inst);
    let w = decide_optimal_channel(&family).into_witness().expect("yes-instance");
    let cert = Certificate::new(
        &w.to_coupling(family.input_marginal()),
        Claim::RowDeterministicUniformCols,
    );
    let target = CertificateTarget::Family(&family);
    println!("witness accepted: {}", verify_certificate(&cert, target));

    let mut nudged = cert.clone();
    nudged.matrix[0][0] += ratio(1, 1_000_000);
    println!(
        "one cell nudged by 1e-6: accepted = {}",
        verify_certificate(&nudged, target)
    );

    let mut moved = cert.clone();
    let row = &mut moved.matrix[0];
    row.rotate_right(1);
    println!(
        "one row sent to another output: accepted = {}",
        verify_certificate(&moved, target)
    );

    let mut split = cert;
    let j = split.matrix[1].iter().position(|x| *x != ratio(0, 1)).unwrap();
    let half = &split.matrix[1][j] / ratio(2, 1);
    split.matrix[1][j] = half.clone();
    split.matrix[1][(j + 1) % 3] += half;
    println!(
        "one row split across outputs: accepted = {}",
        verify_certificate(&split, target)
    );
    Ok(())
}
