//! Local monodromy and the semi-stability degree of y^2 = x^3 + s for a
//! handful of parameters, including ones outside the tables at 2 and 3.
//!
//!     cargo run --example family_degree -- 4 -7/3 250 8

use semistab::arith::{format_rational, parse_rational};
use semistab::monodromy::semistability_degree;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let params =
        if args.is_empty() { ["1", "4", "2", "10", "216", "-7/125", "8"].map(String::from).to_vec() } else { args };
    for text in params {
        let s = match parse_rational(&text) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{text}: {e}");
                continue;
            }
        };
        match semistability_degree(&s) {
            Ok(report) => {
                let locals: Vec<String> = report.locals.iter().map(|l| format!("{}:{}", l.p, l.group)).collect();
                println!(
                    "s = {:<8} disc = {:<12} d(E) = {:<3} [{}]",
                    format_rational(&s),
                    format_rational(&report.delta),
                    report.degree,
                    locals.join(", ")
                );
            }
            Err(e) => println!("s = {:<8} {e}", format_rational(&s)),
        }
    }
}
