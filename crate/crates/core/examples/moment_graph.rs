//! The moment graph of X(1,2,2), as a table and as DOT.
//!
//! ```text
//! cargo run --example moment_graph
//! cargo run --example moment_graph -- 1 3 2 > graph.dot
//! ```

use cyclic_quiver::moment_graph::{build_graph, check_rotation_equivariance};
use cyclic_quiver::{Guard, Params};

fn main() -> cyclic_quiver::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let p = match args[..] {
        [k, n, omega] => Params::new(k, n, omega)?,
        _ => Params::new(1, 2, 2)?,
    };
    let g = build_graph(&p, &Guard::default())?;
    eprintln!("{} vertices, {} edges", g.vertices.len(), g.edges.len());
    for e in &g.edges {
        let (i, j, r) = e.mv;
        eprintln!("  {} -> {}  f_{{{i},{j},{r}}}  {}", g.vertices[e.source], g.vertices[e.target], e.label);
    }
    let rot = check_rotation_equivariance(&g);
    eprintln!("rotation: {} edges checked, {} violations", rot.edges_checked, rot.violations.len());
    print!("{}", g.to_dot());
    Ok(())
}
