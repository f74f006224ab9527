//! The balls of constant monodromy at p = 2 and p = 3, with an exhaustive
//! residue check that they partition each valuation stratum, and the ball
//! containing a few sample parameters.
//!
//!     cargo run --example padic_cover

use semistab::arith::parse_rational;
use semistab::padic_cover::{check_partition, enumerate_cover, locate, ValuationRange};

fn main() -> semistab::Result<()> {
    for (p, max) in [(2, 2), (3, 4)] {
        let report = enumerate_cover(p, ValuationRange::new(0, max)?)?;
        print!("{}", report.to_tsv());
        check_partition(&report, 7)?;
        println!("# partition of residues mod {p}^7 verified");
        for s in ["1", "10", "4", "-20", "27/7", "216"] {
            match locate(&parse_rational(s)?, &report) {
                Ok(ball) => println!("#   s = {s:<5} lies in {} ({})", ball.label(), ball.group),
                Err(e) => println!("#   s = {s:<5} {e}"),
            }
        }
        println!();
    }
    Ok(())
}
