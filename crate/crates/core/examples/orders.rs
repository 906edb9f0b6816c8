//! Compares the pattern order, moment-graph reachability and Bruhat order.
//!
//! ```text
//! cargo run --example orders
//! ```

use std::time::Instant;

use cyclic_quiver::order::{bruhat_lower_interval, verify_order_equivalence};
use cyclic_quiver::{AffinePermutation, Guard, Params};

fn main() -> cyclic_quiver::Result<()> {
    let top = AffinePermutation::parse("[-1,4]")?;
    let below: Vec<String> = bruhat_lower_interval(&top).iter().map(ToString::to_string).collect();
    println!("below {top}: {}", below.join(" "));
    println!();

    for p in Params::all_up_to(7) {
        let start = Instant::now();
        let r = verify_order_equivalence(&p, &Guard::default())?;
        println!(
            "X{:<9} {:>5} points {:>6} edges {:>6} covers {:>8} pairs  {}  {:.2?}",
            p.to_string(),
            r.vertices,
            r.graph_edges,
            r.bruhat_covers,
            r.relation_size,
            if r.passed() { "agree" } else { "DIFFER" },
            start.elapsed()
        );
    }
    Ok(())
}
