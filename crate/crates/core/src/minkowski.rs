//! The Minkowski bound `M(n)` on orders of finite subgroups of `GL_n(Q)`,
//! its prime exponents, and cardinalities of `GL_n(Z/mZ)`.
//!
//! For `n = 2g` the exponent of a prime `p` in `M(2g)` is
//!
//! ```text
//! r(g, p) = sum_{i >= 0} floor(2g / (p^i (p - 1)))
//! ```
//!
//! which vanishes as soon as `p - 1 > 2g`, so only primes `p <= 2g + 1`
//! contribute.
//!
//! ## `|GL_n(Z/mZ)|`
//!
//! By the Chinese remainder theorem `GL_n(Z/mZ)` splits as the product of
//! `GL_n(Z/p^k Z)` over the prime powers exactly dividing `m`. Reduction mod
//! `p` is surjective `GL_n(Z/p^k) -> GL_n(F_p)` (a matrix is invertible iff
//! its determinant is a unit iff it is a unit mod `p`), and its kernel is
//! `1 + p M_n(Z/p^k)`, of size `p^{(k-1) n^2}`. Counting ordered bases of
//! `F_p^n` gives `|GL_n(F_p)| = prod_{i<n} (p^n - p^i)`, hence
//!
//! ```text
//! |GL_n(Z/p^k)| = p^{(k-1) n^2} * prod_{i=0}^{n-1} (p^n - p^i).
//! ```

use std::collections::BTreeMap;

use num::bigint::{BigInt, BigUint};
use num::traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{self, bigint_string};
use crate::error::{Error, Result};

/// `r(g, p)`, the exponent of `p` in `M(2g)`.
pub fn minkowski_exponent(g: u64, p: u64) -> Result<u64> {
    if g == 0 {
        return Err(Error::invalid("g must be at least 1"));
    }
    arith::require_prime(p)?;
    Ok(exponent_unchecked(2 * g, p))
}

fn exponent_unchecked(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut denom = p - 1;
    while denom <= n {
        total += n / denom;
        denom = match denom.checked_mul(p) {
            Some(d) => d,
            None => break,
        };
    }
    total
}

/// `M(2g)` as an exact integer.
pub fn minkowski_bound(g: u64) -> Result<BigInt> {
    if g == 0 {
        return Err(Error::invalid("g must be at least 1"));
    }
    Ok(exponents_for(g).into_iter().map(|(p, e)| arith::big_pow(p, e as u32)).product())
}

/// Nonzero exponents `r(g, p)` keyed by prime.
pub fn exponents_for(g: u64) -> BTreeMap<u64, u64> {
    arith::primes_up_to(2 * g + 1)
        .into_iter()
        .map(|p| (p, exponent_unchecked(2 * g, p)))
        .filter(|&(_, e)| e > 0)
        .collect()
}

/// `|GL_n(Z/mZ)|`. The trivial ring `m = 1` gives 1.
pub fn gl_cardinality(n: u32, m: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::invalid("matrix size n must be at least 1"));
    }
    if m == 0 {
        return Err(Error::invalid("modulus m must be at least 1"));
    }
    let mut total = BigInt::one();
    for (p, k) in arith::factor(&BigUint::from(m))? {
        total *= gl_prime_power(n, p, k);
    }
    Ok(total)
}

fn gl_prime_power(n: u32, p: u64, k: u32) -> BigInt {
    let pn = arith::big_pow(p, n);
    let mut card = arith::big_pow(p, (k - 1) * n * n);
    for i in 0..n {
        card *= &pn - arith::big_pow(p, i);
    }
    card
}

/// Approximates `(M(n) / n!)^{1/n}` for even `n`.
///
/// Both logarithms are accumulated as sums (`log M(n) = sum r(n/2, p) log p`
/// and `log n! = sum log k`) so no large integer is ever formed. The limit is
/// approached slowly; treat the value as a diagnostic, not an exact result.
pub fn asymptotic_ratio_diagnostic(n: u64) -> Result<f64> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!("n must be even and >= 2, got {n}")));
    }
    let log_bound =
        neumaier_sum(arith::primes_up_to(n + 1).into_iter().map(|p| exponent_unchecked(n, p) as f64 * (p as f64).ln()));
    let log_factorial = neumaier_sum((2..=n).map(|k| (k as f64).ln()));
    Ok(((log_bound - log_factorial) / n as f64).exp())
}

// compensated summation; keeps the long log sums at ~1 ulp error
fn neumaier_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// One row of the Minkowski comparison table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinkowskiReport {
    pub g: u64,
    pub exponents: BTreeMap<u64, u64>,
    #[serde(with = "bigint_string")]
    pub bound: BigInt,
    /// `|GL_{2g}(Z/mZ)|` for the report's modulus (12 by default).
    pub gl_modulus: u64,
    #[serde(with = "bigint_string")]
    pub gl_card: BigInt,
}

impl MinkowskiReport {
    pub fn new(g: u64) -> Result<Self> {
        Self::with_gl_modulus(g, 12)
    }

    pub fn with_gl_modulus(g: u64, m: u64) -> Result<Self> {
        let bound = minkowski_bound(g)?;
        let n = u32::try_from(2 * g).map_err(|_| Error::invalid("g too large"))?;
        Ok(MinkowskiReport { g, exponents: exponents_for(g), bound, gl_modulus: m, gl_card: gl_cardinality(n, m)? })
    }

    /// The bound rebuilt from its exponent map.
    pub fn bound_from_exponents(&self) -> BigInt {
        self.exponents.iter().map(|(&p, &e)| arith::big_pow(p, e as u32)).product()
    }
}
