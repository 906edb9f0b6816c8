//! Random automorphisms of the ambient representation act on coordinate
//! points without leaving their attracting cells.
//!
//! ```text
//! cargo run --example aut_orbits -- 42
//! ```

use cyclic_quiver::geometry::{aut_act, aut_matrix, bb_limit, orbit_fixes, AutElement, RepPoint};
use cyclic_quiver::juggling::{enumerate_length_tuples, lengths_to_jug};
use cyclic_quiver::Params;

fn main() -> cyclic_quiver::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let p = Params::new(1, 2, 2)?;
    let sample = AutElement::seeded(&p, seed, 50);

    let a = &sample[0];
    println!("E_1 of the first sample element ({} parameters):", a.parameter_count());
    for row in aut_matrix(a, 1).to_strings() {
        println!("  [{}]", row.join(", "));
    }

    for t in enumerate_length_tuples(&p) {
        let jug = lengths_to_jug(&t, &p);
        let x = RepPoint::coordinate(&jug, &p);
        let stays = sample.iter().all(|a| aut_act(a, &x).and_then(|y| bb_limit(&y)).as_ref() == Ok(&jug));
        println!("{t}: orbit stays in cell {stays}, fixed by the sample {}", orbit_fixes(&jug, &p, &sample)?);
    }
    Ok(())
}
