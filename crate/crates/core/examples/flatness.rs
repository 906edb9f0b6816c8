//! The degree (1,1,1) piece of the coordinate ring of X(1,3).
//!
//! ```text
//! cargo run --example flatness
//! ```

use cyclic_quiver::flatness::{basis_monomials, degree111_rank, eval_monomial, format_triple, TriDegMonomial};

fn main() {
    println!("rank = {}", degree111_rank());
    for m in basis_monomials() {
        println!("  {m} = ({})", format_triple(&eval_monomial(&m)).join(", "));
    }
    let zero = TriDegMonomial::all().iter().filter(|m| eval_monomial(m).iter().all(|p| p.is_zero())).count();
    println!("{zero} of 27 monomials vanish on X(1,3)");
}
