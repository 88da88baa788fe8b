//! Write a catalog fan and its anticanonical divisor as JSON.
//!
//! `cargo run --example fan_io -- F3` prints the fan on the first line and
//! the divisor on the second.

use torifan::constructions::catalog;
use torifan::divisor::InvariantDivisor;
use torifan::io::{divisor_to_json, fan_from_json, fan_to_json};

fn main() -> torifan::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "P2".into());
    let Some((_, fan)) = catalog().into_iter().find(|(n, _)| *n == name) else {
        let names: Vec<String> = catalog().into_iter().map(|(n, _)| n).collect();
        return Err(torifan::Error::Usage(format!("unknown fan {name}; known: {}", names.join(", "))));
    };
    let text = fan_to_json(&fan);
    assert_eq!(fan_from_json(&text)?, fan);
    println!("{text}");
    println!("{}", divisor_to_json(&InvariantDivisor::anticanonical(&fan)));
    Ok(())
}
