//! Torus fixed points of X(1,2,2) in their three guises.
//!
//! ```text
//! cargo run --example fixed_points
//! ```

use cyclic_quiver::juggling::{enumerate_length_tuples, jug_to_lengths, lengths_to_jug};
use cyclic_quiver::perm::{lengths_to_perm, perm_length, perm_to_lengths};
use cyclic_quiver::Params;

fn main() -> cyclic_quiver::Result<()> {
    let p = Params::new(1, 2, 2)?;
    println!("X{p}: dimension {}, {} fixed points", p.dimension(), enumerate_length_tuples(&p).len());
    println!("{:<8} {:<14} {:<8} length", "tuple", "pattern", "window");
    for t in enumerate_length_tuples(&p) {
        let jug = lengths_to_jug(&t, &p);
        let f = lengths_to_perm(&t, &p);
        assert_eq!(jug_to_lengths(&jug, &p)?, t);
        assert_eq!(perm_to_lengths(&f), t);
        println!("{:<8} {:<14} {:<8} {}", t.to_string(), jug.to_string(), f.to_string(), perm_length(f.perm()));
    }

    println!();
    for p in Params::all_up_to(6) {
        println!("X{p}: {} fixed points", enumerate_length_tuples(&p).len());
    }
    Ok(())
}
