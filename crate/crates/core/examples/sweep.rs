//! Sweeps s = 1..=500 in parallel and tallies the degrees found.
//!
//!     cargo run --release --example sweep

use semistab::sweep::{summarize, sweep_range, DegreeField};

fn main() -> semistab::Result<()> {
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let records = sweep_range(1, 500, 1, threads)?;
    println!("{}", summarize(&records));
    let maximal: Vec<String> =
        records.iter().filter(|r| r.degree == DegreeField::Value(24)).take(12).map(|r| r.s.to_string()).collect();
    println!("first parameters with d(E) = 24: {}", maximal.join(", "));
    Ok(())
}
