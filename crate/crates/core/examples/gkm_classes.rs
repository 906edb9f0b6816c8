//! Equivariant classes on the moment graph of X(1,2,2).
//!
//! ```text
//! cargo run --example gkm_classes
//! ```

use cyclic_quiver::gkm::{check_gkm_class, five_point_kt_classes, kt_shape_check, tautological_class, zn_act_class};
use cyclic_quiver::moment_graph::build_graph;
use cyclic_quiver::{Guard, Params};

fn main() -> cyclic_quiver::Result<()> {
    let p = Params::new(1, 2, 2)?;
    let g = build_graph(&p, &Guard::default())?;
    let classes = five_point_kt_classes();

    for (v, c) in &classes {
        let gkm = check_gkm_class(c, &g)?;
        let shape = kt_shape_check(c, v, &g)?;
        println!("xi{v}: {} edge congruences, GKM {}, shape {}", gkm.checked, gkm.passed(), shape.passed());
        for w in &g.vertices {
            println!("    at {w}: {}", c.entries[w]);
        }
    }

    println!();
    for (v, c) in &classes {
        let image = zn_act_class(1, c);
        let target = classes.iter().find(|(_, d)| *d == image).map(|(w, _)| w.to_string());
        println!("sigma . xi{v} = xi{}", target.as_deref().unwrap_or("?"));
    }

    println!();
    for i in 1..=2 {
        let c = tautological_class(i, &g);
        println!("tautological class at vertex {i}: GKM {}", check_gkm_class(&c, &g)?.passed());
    }
    Ok(())
}
