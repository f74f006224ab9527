//! Prints M(2g), the exponents r(g, p) and |GL_2g(Z/12Z)| for g = 1..8,
//! then the ratio (M(n)/n!)^(1/n) for a few even n.
//!
//!     cargo run --example minkowski_table

use semistab::arith::sci_two_digits;
use semistab::minkowski::{asymptotic_ratio_diagnostic, MinkowskiReport};

fn main() -> semistab::Result<()> {
    println!("{:>2}  {:>24}  {:>8}  exponents", "g", "M(2g)", "GL(Z/12)");
    for g in 1..=8 {
        let r = MinkowskiReport::new(g)?;
        let exps: Vec<String> = r.exponents.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        println!("{:>2}  {:>24}  {:>8}  {}", g, r.bound, sci_two_digits(&r.gl_card), exps.join(" "));
    }
    println!();
    for n in [2, 4, 10, 100, 1_000, 100_000] {
        println!("n = {n:>6}: (M(n)/n!)^(1/n) = {:.6}", asymptotic_ratio_diagnostic(n)?);
    }
    Ok(())
}
