//! Runs the verification suites from code rather than through the binary.
//!
//! ```text
//! cargo run --example verify_suites
//! ```

use cyclic_quiver::verify::{run, Suite};
use cyclic_quiver::{Guard, Params};

fn main() -> cyclic_quiver::Result<()> {
    let report = run(Suite::All, &Params::new(1, 2, 2)?, 7, &Guard::default())?;
    println!("{report}");

    for p in Params::all_up_to(5) {
        let r = run(Suite::All, &p, 0, &Guard::default())?;
        println!("X{p}: {}", if r.passed() { "ok" } else { "FAILED" });
    }
    Ok(())
}
