//! Poincare polynomials from lengths of bounded affine permutations.
//!
//! ```text
//! cargo run --example poincare
//! ```

use cyclic_quiver::order::{format_polynomial, poincare_polynomial};
use cyclic_quiver::{Guard, Params};

fn main() -> cyclic_quiver::Result<()> {
    for p in Params::all_up_to(8) {
        let coeffs = poincare_polynomial(&p, &Guard::default())?;
        let euler: u64 = coeffs.iter().sum();
        println!("X{p:<9} chi = {euler:<5} {}", format_polynomial(&coeffs));
    }
    Ok(())
}
