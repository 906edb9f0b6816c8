//! Fixed points as lattice flags, their Weyl group elements, and the union of
//! Schubert varieties they fill.
//!
//! ```text
//! cargo run --example affine_flag
//! ```

use cyclic_quiver::affine_flag::{
    aut_to_iwahori, component_weyl, correspondence_table, embed_fixed_point, schubert_union_check, w_of_subset,
};
use cyclic_quiver::geometry::AutElement;
use cyclic_quiver::juggling::lengths_to_jug;
use cyclic_quiver::{Guard, KSubset, Params};

fn main() -> cyclic_quiver::Result<()> {
    let p = Params::new(1, 2, 2)?;
    let guard = Guard::default();

    println!("{:<7} {:<8} {:<8} length", "tuple", "f", "w");
    for (t, f, w, l) in correspondence_table(&p, &guard)? {
        println!("{:<7} {:<8} {:<8} {l}", t.to_string(), f.to_string(), w.to_string());
    }

    let t = cyclic_quiver::LengthTuple::parse("(4,0)", &p)?;
    let fp = embed_fixed_point(&lengths_to_jug(&t, &p), &p)?;
    println!("\nflag of {t}:");
    for (i, s) in fp.points.iter().enumerate() {
        println!("  S_{i} = {s}");
    }

    println!();
    for i in KSubset::all(&p) {
        println!("I = {:?}: w(I) = {}, embedded {}", i.elements(), w_of_subset(&i, &p), component_weyl(&i, &p)?);
    }

    for p in [Params::new(1, 2, 2)?, Params::new(2, 4, 1)?, Params::new(1, 3, 2)?] {
        let r = schubert_union_check(&p, &guard)?;
        println!("X{p}: {} fixed points, union of {} elements, match {}", r.fixed_points, r.union_size, r.passed());
    }

    let a = &AutElement::seeded(&p, 3, 1)[0];
    let m = aut_to_iwahori(a);
    println!("\nIwahori image at z = 0 is lower triangular with units: {}", m.is_iwahori());
    Ok(())
}
