//! Blow up a section of P(O + O(1)^(r+1)) over P^s and compare -K up and down.

use torifan::report::cmd_example_bundle;

fn main() -> torifan::Result<()> {
    for (r, s) in [(1, 1), (2, 1), (1, 2)] {
        let rep = cmd_example_bundle(r, s)?;
        print!("{}", rep.to_table());
        println!();
    }
    match cmd_example_bundle(3, 1) {
        Err(e) => println!("(3, 1): {e}"),
        Ok(_) => println!("(3, 1): unexpectedly accepted"),
    }
    Ok(())
}
