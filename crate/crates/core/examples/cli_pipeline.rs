//! The JSON layer used by the `transport-entropy` binary, driven from code:
//! generate an instance, solve it, and verify the emitted witness.
//!
//! ```text
//! cargo run --example cli_pipeline
//! cargo run --bin transport-entropy -- generate subset-sum --size 8 --seed 3 | \
//!     cargo run --bin transport-entropy -- decide-min
//! ```

use transport_entropy::cli::{generate, parse_instance, run, Command, GenerateKind, RunOptions};

fn main() -> Result<(), transport_entropy::cli::CliError> {
    let file = generate(GenerateKind::ThreePartition, 3, 40, 5)?;
    let text = serde_json::to_string_pretty(&file.to_json()).unwrap();
    println!("instance:\n{text}");

    let parsed = parse_instance(text.as_bytes())?;
    let result = run(Command::DecideChannel, &parsed, RunOptions::default())?;
    println!(
        "decide-channel -> exit {}:\n{}",
        result.exit_code(),
        serde_json::to_string_pretty(&result.to_json()).unwrap()
    );

    let mut with_witness = parsed.to_json();
    with_witness["witness"] = serde_json::json!(result.witness);
    let reloaded = parse_instance(with_witness.to_string().as_bytes())?;
    let check = run(Command::Verify, &reloaded, RunOptions::default())?;
    println!("verify -> {:?}", check.status);

    let pair = parse_instance(br#"{"kind":"metric_pair","p":["1/9","3/9","5/9"],"q":["2/9","4/9","3/9"]}"#)?;
    for cmd in [
        Command::ViDistance,
        Command::ViDistanceNormalized,
        Command::TotalVariation,
    ] {
        let r = run(cmd, &pair, RunOptions::default())?;
        println!("{:<24} {:?}", cmd.name(), r.value_interval.unwrap());
    }
    Ok(())
}
