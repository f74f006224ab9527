//! Exact computations around semi-stable reduction of elliptic curves over
//! `Q`: finite monodromy groups and the semi-stability degree for the
//! family `y^2 = x^3 + s`, the Minkowski bound `M(2g)`, p-adic balls of
//! constant monodromy, and a permutation-group model of Galois closures of
//! finite covers.
//!
//! ```
//! use semistab::{arith::parse_rational, monodromy::semistability_degree};
//!
//! let report = semistability_degree(&parse_rational("4").unwrap()).unwrap();
//! assert_eq!(report.degree, 24);
//! ```

pub mod arith;
pub mod cli;
pub mod curves;
pub mod error;
pub mod galois;
pub mod minkowski;
pub mod monodromy;
pub mod padic_cover;
pub mod regression;
pub mod sweep;

pub use error::{Error, Result};
