//! Weierstrass equations over `Q`, their classical invariants, the family
//! `y^2 = x^3 + s`, and local minimalization at primes `p >= 5`.
//!
//! Invariants follow the usual conventions:
//!
//! ```text
//! b2 = a1^2 + 4 a2            b4 = 2 a4 + a1 a3         b6 = a3^2 + 4 a6
//! b8 = a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2
//! c4 = b2^2 - 24 b4           c6 = -b2^3 + 36 b2 b4 - 216 b6
//! Delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6,   j = c4^3 / Delta
//! ```
//!
//! With this sign convention the family member `y^2 = x^3 + s` has
//! `c6 = -864 s`. Nothing downstream depends on the sign of `c6`: every
//! congruence condition used for the family is phrased on `s` itself.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{self, Valuation};
use crate::error::{Error, Result};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` with nonzero discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve {
    a: [BigRational; 5],
}

impl WeierstrassCurve {
    pub fn new(a1: BigRational, a2: BigRational, a3: BigRational, a4: BigRational, a6: BigRational) -> Result<Self> {
        let curve = WeierstrassCurve { a: [a1, a2, a3, a4, a6] };
        if curve.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    pub fn from_integers(coeffs: [i64; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = coeffs.map(q);
        Self::new(a1, a2, a3, a4, a6)
    }

    /// Short form `y^2 = x^3 + a4 x + a6`.
    pub fn short(a4: BigRational, a6: BigRational) -> Result<Self> {
        Self::new(q(0), q(0), q(0), a4, a6)
    }

    pub fn a1(&self) -> &BigRational {
        &self.a[0]
    }
    pub fn a2(&self) -> &BigRational {
        &self.a[1]
    }
    pub fn a3(&self) -> &BigRational {
        &self.a[2]
    }
    pub fn a4(&self) -> &BigRational {
        &self.a[3]
    }
    pub fn a6(&self) -> &BigRational {
        &self.a[4]
    }

    pub fn coefficients(&self) -> &[BigRational; 5] {
        &self.a
    }

    pub fn is_short(&self) -> bool {
        self.a1().is_zero() && self.a2().is_zero() && self.a3().is_zero()
    }

    /// The `s` with `self = y^2 = x^3 + s`, if the curve has that shape.
    pub fn family_parameter(&self) -> Option<&BigRational> {
        (self.is_short() && self.a4().is_zero()).then(|| self.a6())
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().all(|c| c.is_integer())
    }

    fn b_invariants(&self) -> [BigRational; 4] {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1 * a1 + q(4) * a2;
        let b4 = q(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + q(4) * a6;
        let b8 = a1 * a1 * a6 + q(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        [b2, b4, b6, b8]
    }

    fn discriminant(&self) -> BigRational {
        let [b2, b4, b6, b8] = self.b_invariants();
        -(&b2 * &b2 * &b8) - q(8) * &b4 * &b4 * &b4 - q(27) * &b6 * &b6 + q(9) * &b2 * &b4 * &b6
    }

    /// All derived invariants. The two classical identities are checked on
    /// every call.
    pub fn invariants(&self) -> CurveInvariants {
        let [b2, b4, b6, b8] = self.b_invariants();
        let c4 = &b2 * &b2 - q(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + q(36) * &b2 * &b4 - q(216) * &b6;
        let delta = self.discriminant();
        assert_eq!(q(1728) * &delta, &c4 * &c4 * &c4 - &c6 * &c6, "1728 Delta = c4^3 - c6^2");
        assert_eq!(q(4) * &b8, &b2 * &b6 - &b4 * &b4, "4 b8 = b2 b6 - b4^2");
        let j = &c4 * &c4 * &c4 / &delta;
        CurveInvariants { b2, b4, b6, b8, c4, c6, delta, j }
    }

    /// Change of variables `(x, y) = (u^2 x', u^3 y')`, i.e. `a_i -> a_i / u^i`.
    pub fn rescale(&self, u: &BigRational) -> WeierstrassCurve {
        let weights = [1u32, 2, 3, 4, 6];
        let mut a = self.a.clone();
        for (c, w) in a.iter_mut().zip(weights) {
            *c = &*c / num::pow(u.clone(), w as usize);
        }
        WeierstrassCurve { a }
    }

    /// The isomorphic short model `y^2 = x^3 - 27 c4 x - 54 c6`, which is
    /// integral whenever `self` is and differs from it by `u = 1/6`.
    pub fn short_model(&self) -> WeierstrassCurve {
        let inv = self.invariants();
        WeierstrassCurve { a: [q(0), q(0), q(0), -(q(27) * inv.c4), -(q(54) * inv.c6)] }
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(arith::format_rational).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `y^2 = x^3 + s`.
pub fn family_curve(s: &BigRational) -> Result<WeierstrassCurve> {
    if s.is_zero() {
        return Err(Error::SingularCurve);
    }
    WeierstrassCurve::short(q(0), s.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveInvariants {
    pub b2: BigRational,
    pub b4: BigRational,
    pub b6: BigRational,
    pub b8: BigRational,
    pub c4: BigRational,
    pub c6: BigRational,
    pub delta: BigRational,
    pub j: BigRational,
}

impl CurveInvariants {
    pub fn valuations(&self, p: u64) -> ValuationProfile {
        ValuationProfile {
            p,
            v_delta: arith::valuation(&self.delta, p),
            v_c4: arith::valuation(&self.c4, p),
            v_c6: arith::valuation(&self.c6, p),
            v_j: arith::valuation(&self.j, p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuationProfile {
    pub p: u64,
    pub v_delta: Valuation,
    pub v_c4: Valuation,
    pub v_c6: Valuation,
    pub v_j: Valuation,
}

fn require_tame_prime(p: u64) -> Result<()> {
    arith::require_prime(p)?;
    if p < 5 {
        return Err(Error::UnsupportedPrime(p));
    }
    Ok(())
}

fn v_at_least(x: &BigRational, p: u64, bound: i64) -> bool {
    arith::valuation(x, p) >= Valuation::Finite(bound)
}

/// Rescales a short Weierstrass equation integral at `p >= 5` until its
/// discriminant valuation is minimal. Returns the minimal model and the
/// number of `u = p` steps taken; each step lowers `v_p(Delta)` by 12.
pub fn minimalize_at_p(curve: &WeierstrassCurve, p: u64) -> Result<(WeierstrassCurve, u32)> {
    require_tame_prime(p)?;
    if !curve.is_short() {
        return Err(Error::invalid("minimalization expects a1 = a2 = a3 = 0 (use short_model)"));
    }
    if !v_at_least(curve.a4(), p, 0) || !v_at_least(curve.a6(), p, 0) {
        return Err(Error::invalid(format!("curve {curve} is not integral at {p}")));
    }
    let u = BigRational::from_integer(BigInt::from(p));
    let mut current = curve.clone();
    let mut steps = 0;
    loop {
        let prof = current.invariants().valuations(p);
        let reducible = prof.v_c4 >= Valuation::Finite(4)
            && prof.v_c6 >= Valuation::Finite(6)
            && prof.v_delta >= Valuation::Finite(12);
        // for p >= 5 this is equivalent to v(a4) >= 4 and v(a6) >= 6
        if !reducible {
            return Ok((current, steps));
        }
        current = current.rescale(&u);
        steps += 1;
    }
}

/// Reduction type of a curve at a prime `p >= 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionClass {
    Good,
    Multiplicative,
    AdditivePotentiallyGood,
    AdditivePotentiallyMultiplicative,
}

impl ReductionClass {
    pub fn is_semistable(self) -> bool {
        matches!(self, ReductionClass::Good | ReductionClass::Multiplicative)
    }
}

impl fmt::Display for ReductionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionClass::Good => "good",
            ReductionClass::Multiplicative => "multiplicative",
            ReductionClass::AdditivePotentiallyGood => "additive-potentially-good",
            ReductionClass::AdditivePotentiallyMultiplicative => "additive-potentially-multiplicative",
        })
    }
}

/// A short model of `curve` with `a4`, `a6` integral at `p`, reached by
/// rescaling with `u = 1/p`.
pub fn integral_short_model(curve: &WeierstrassCurve, p: u64) -> WeierstrassCurve {
    let mut short = if curve.is_short() { curve.clone() } else { curve.short_model() };
    let u = arith::pow_rational(p, -1);
    while !(v_at_least(short.a4(), p, 0) && v_at_least(short.a6(), p, 0)) {
        short = short.rescale(&u);
    }
    short
}

/// Classifies the reduction at `p >= 5`. Any model is accepted: it is made
/// short, integral and minimal at `p` first.
pub fn reduction_class_at_p(curve: &WeierstrassCurve, p: u64) -> Result<ReductionClass> {
    require_tame_prime(p)?;
    let (minimal, _) = minimalize_at_p(&integral_short_model(curve, p), p)?;
    Ok(classify_minimal(&minimal.invariants().valuations(p)))
}

pub(crate) fn classify_minimal(prof: &ValuationProfile) -> ReductionClass {
    if prof.v_delta == Valuation::Finite(0) {
        ReductionClass::Good
    } else if prof.v_c4 == Valuation::Finite(0) {
        ReductionClass::Multiplicative
    } else if prof.v_j < Valuation::Finite(0) {
        ReductionClass::AdditivePotentiallyMultiplicative
    } else {
        ReductionClass::AdditivePotentiallyGood
    }
}

/// Family model at `p` with `0 <= v_p(s) < 6`, obtained by rescaling `s` by
/// a power of `p^6`. This is the minimal model of `y^2 = x^3 + s` at `p >= 5`.
pub(crate) fn family_local_parameter(s: &BigRational, p: u64) -> BigRational {
    let v = arith::valuation_nonzero(s, p);
    s * arith::pow_rational(p, -6 * v.div_euclid(6))
}
