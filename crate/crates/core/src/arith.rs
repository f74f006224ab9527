//! Exact arithmetic helpers: p-adic valuations of rationals, residues of
//! p-adic units, small prime sieves and desk-scale factorization.

use std::fmt;

use num::bigint::{BigInt, BigUint, Sign};
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A p-adic valuation, where the valuation of zero is `+infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Largest `k` with `p^k | n`, or `None` for `n = 0`.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut k = 0;
    let mut cur = n.clone();
    loop {
        let (q, r) = cur.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        cur = q;
        k += 1;
    }
}

pub fn valuation(x: &BigRational, p: u64) -> Valuation {
    match int_valuation(x.numer(), p) {
        None => Valuation::Infinite,
        Some(vn) => {
            // BigRational is kept in lowest terms, so at most one side is divisible by p.
            let vd = int_valuation(x.denom(), p).unwrap_or(0);
            Valuation::Finite(i64::from(vn) - i64::from(vd))
        }
    }
}

/// Finite valuation of a nonzero rational; panics on zero.
pub fn valuation_nonzero(x: &BigRational, p: u64) -> i64 {
    valuation(x, p).finite().expect("valuation of zero requested where a nonzero value was required")
}

/// Residue in `[0, modulus)` of a rational whose denominator is invertible
/// modulo `modulus`.
pub fn residue_mod(x: &BigRational, modulus: &BigInt) -> Result<BigInt> {
    let den = x.denom().mod_floor(modulus);
    let inv = mod_inverse(&den, modulus)
        .ok_or_else(|| Error::invalid(format!("denominator of {x} not invertible mod {modulus}")))?;
    Ok((x.numer().mod_floor(modulus) * inv).mod_floor(modulus))
}

/// Residue of a rational with `v_p(x) = 0` modulo `m`; small-modulus convenience
/// wrapper over [`residue_mod`].
pub fn unit_residue(x: &BigRational, modulus: u64) -> Result<u64> {
    let r = residue_mod(x, &BigInt::from(modulus))?;
    Ok(r.to_u64().expect("residue below a u64 modulus"))
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let ext = a.extended_gcd(m);
    if !ext.gcd.is_one() {
        return None;
    }
    Some(ext.x.mod_floor(m))
}

/// `x / p^v_p(x)` for nonzero `x`.
pub fn unit_part(x: &BigRational, p: u64) -> BigRational {
    let v = valuation_nonzero(x, p);
    x / pow_rational(p, v)
}

pub fn pow_rational(p: u64, e: i64) -> BigRational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

pub fn big_pow(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{p} is not prime")))
    }
}

const TRIAL_DIVISION_LIMIT: u64 = 10_000_000;

/// Prime factorization of a positive integer by trial division up to
/// `10^7`. A cofactor with no factor below that limit is accepted as prime
/// only when it is smaller than the limit squared; otherwise a size-limit
/// error is returned.
pub fn factor(n: &BigUint) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::invalid("cannot factor zero"));
    }
    let mut out = Vec::new();
    let mut m = n.clone();
    let mut d = 2u64;
    loop {
        if let Some(small) = m.to_u64() {
            factor_u64_from(small, d, &mut out)?;
            return Ok(out);
        }
        if d > TRIAL_DIVISION_LIMIT {
            return Err(Error::SizeLimit(format!("cofactor {m} has no factor below {TRIAL_DIVISION_LIMIT}")));
        }
        let big_d = BigUint::from(d);
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&big_d);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
}

fn factor_u64_from(mut m: u64, mut d: u64, out: &mut Vec<(u64, u32)>) -> Result<()> {
    while d.saturating_mul(d) <= m {
        if d > TRIAL_DIVISION_LIMIT {
            return Err(Error::SizeLimit(format!("cofactor {m} has no factor below {TRIAL_DIVISION_LIMIT}")));
        }
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(())
}

/// Primes dividing the numerator or denominator of a nonzero rational.
pub fn support(x: &BigRational) -> Result<Vec<u64>> {
    let mut primes: Vec<u64> =
        factor(x.numer().magnitude())?.into_iter().chain(factor(x.denom().magnitude())?).map(|(p, _)| p).collect();
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// Parses `"n"` or `"n/d"` into an exact rational. Decimal points and
/// exponents are rejected.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::invalid(format!("cannot parse {text:?} as a rational (expected n or n/d)"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::invalid(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Rounds a nonzero integer to two significant digits, e.g. `3.2e16`.
pub fn sci_two_digits(n: &BigInt) -> String {
    let sign = if n.sign() == Sign::Minus { "-" } else { "" };
    let digits = n.magnitude().to_string();
    if digits.len() <= 2 {
        return format!("{sign}{digits}");
    }
    let exp = digits.len() - 1;
    let head: u32 = digits[..3].parse().expect("decimal digits");
    // round half up on the third digit
    let mut lead = (head + 5) / 10;
    let mut exp = exp;
    if lead >= 100 {
        lead /= 10;
        exp += 1;
    }
    format!("{sign}{}.{}e{exp}", lead / 10, lead % 10)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// `serde` adapter storing a `BigRational` as its `"n/d"` string.
pub mod rational_string {
    use num::rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// `serde` adapter storing a `BigInt` as a decimal string.
pub mod bigint_string {
    use num::bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
