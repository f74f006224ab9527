//! Finite monodromy groups of elliptic curves over `Q` and the semi-stability
//! degree `d(E) = lcm_p |Phi_{E,p}|`.
//!
//! At 2 and 3 only the family `y^2 = x^3 + s` is handled, from the reduction
//! tables for the valuation ranges listed on [`phi_family_at_2`] and
//! [`phi_family_at_3`]. Valuations outside those ranges are reported as
//! [`Error::NotTabulated`] and never guessed. At `p >= 5` the defect is tame
//! and read off the minimal discriminant.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{self, rational_string, Valuation};
use crate::curves::{self, ReductionClass, WeierstrassCurve};
use crate::error::{Error, Result};

/// `M(2)`: every finite monodromy group of an elliptic curve has order dividing it.
pub const GENUS_ONE_BOUND: u64 = 24;

/// The finite groups occurring as monodromy of elliptic curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonodromyGroup {
    C1,
    C2,
    C3,
    C4,
    C6,
    /// `Z/3 ⋊ Z/4`, order 12.
    Dic3,
    /// `SL_2(F_3)`, order 24.
    SL2F3,
}

impl MonodromyGroup {
    pub const ALL: [MonodromyGroup; 7] = [
        MonodromyGroup::C1,
        MonodromyGroup::C2,
        MonodromyGroup::C3,
        MonodromyGroup::C4,
        MonodromyGroup::C6,
        MonodromyGroup::Dic3,
        MonodromyGroup::SL2F3,
    ];

    pub fn order(self) -> u64 {
        match self {
            MonodromyGroup::C1 => 1,
            MonodromyGroup::C2 => 2,
            MonodromyGroup::C3 => 3,
            MonodromyGroup::C4 => 4,
            MonodromyGroup::C6 => 6,
            MonodromyGroup::Dic3 => 12,
            MonodromyGroup::SL2F3 => 24,
        }
    }

    pub fn cyclic(n: u64) -> Option<MonodromyGroup> {
        Some(match n {
            1 => MonodromyGroup::C1,
            2 => MonodromyGroup::C2,
            3 => MonodromyGroup::C3,
            4 => MonodromyGroup::C4,
            6 => MonodromyGroup::C6,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            MonodromyGroup::C1 => "C1",
            MonodromyGroup::C2 => "C2",
            MonodromyGroup::C3 => "C3",
            MonodromyGroup::C4 => "C4",
            MonodromyGroup::C6 => "C6",
            MonodromyGroup::Dic3 => "Dic3",
            MonodromyGroup::SL2F3 => "SL2(F3)",
        }
    }
}

impl fmt::Display for MonodromyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonodromyGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let g = match s {
            "C1" => MonodromyGroup::C1,
            "C2" => MonodromyGroup::C2,
            "C3" => MonodromyGroup::C3,
            "C4" => MonodromyGroup::C4,
            "C6" => MonodromyGroup::C6,
            "Dic3" => MonodromyGroup::Dic3,
            "SL2(F3)" | "SL2F3" => MonodromyGroup::SL2F3,
            _ => return Err(Error::invalid(format!("unknown monodromy group {s:?}"))),
        };
        Ok(g)
    }
}

impl Serialize for MonodromyGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for MonodromyGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Where a local result came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    #[serde(rename = "family-table-2")]
    FamilyTable2,
    #[serde(rename = "family-table-3")]
    FamilyTable3,
    TameRule,
    GoodReduction,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::FamilyTable2 => "family-table-2",
            Provenance::FamilyTable3 => "family-table-3",
            Provenance::TameRule => "tame-rule",
            Provenance::GoodReduction => "good-reduction",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalMonodromyResult {
    pub p: u64,
    pub group: MonodromyGroup,
    pub provenance: Provenance,
}

impl LocalMonodromyResult {
    fn new(p: u64, group: MonodromyGroup, provenance: Provenance) -> Self {
        debug_assert!(match provenance {
            Provenance::FamilyTable2 => p == 2,
            Provenance::FamilyTable3 => p == 3,
            Provenance::TameRule => p >= 5,
            Provenance::GoodReduction => true,
        });
        LocalMonodromyResult { p, group, provenance }
    }
}

#[derive(Serialize, Deserialize)]
struct LocalJson {
    p: u64,
    group: MonodromyGroup,
    order: u64,
    provenance: Provenance,
}

impl Serialize for LocalMonodromyResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LocalJson { p: self.p, group: self.group, order: self.group.order(), provenance: self.provenance }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LocalMonodromyResult {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LocalJson::deserialize(d)?;
        if j.order != j.group.order() {
            return Err(serde::de::Error::custom(format!("order {} does not match group {}", j.order, j.group)));
        }
        Ok(LocalMonodromyResult { p: j.p, group: j.group, provenance: j.provenance })
    }
}

fn not_tabulated(p: u64, v: i64, range: &str) -> Error {
    Error::NotTabulated { p, reason: format!("v_{p}(s) = {v} outside the tabulated range {range}") }
}

fn family_valuation(s: &BigRational, p: u64) -> Result<i64> {
    arith::valuation(s, p).finite().ok_or(Error::SingularCurve)
}

/// `Phi_{E_s,3}` for `v_3(s)` in `0..=4`:
///
/// * `v_3(s) = 0`: `C4` if `s ≡ ±1 (mod 9)`, otherwise `Dic3`;
/// * `v_3(s) ∈ {1, 2, 4}`: `Dic3`;
/// * `v_3(s) = 3`, `s = 27u`: `C4` if `u ≡ ±1 (mod 9)`, otherwise `Dic3`.
pub fn phi_family_at_3(s: &BigRational) -> Result<MonodromyGroup> {
    let v = family_valuation(s, 3)?;
    let unit_class = |x: &BigRational| -> Result<MonodromyGroup> {
        let r = arith::unit_residue(x, 9)?;
        Ok(if r == 1 || r == 8 { MonodromyGroup::C4 } else { MonodromyGroup::Dic3 })
    };
    match v {
        0 => unit_class(s),
        1 | 2 | 4 => Ok(MonodromyGroup::Dic3),
        3 => unit_class(&(s / BigRational::from_integer(BigInt::from(27)))),
        _ => Err(not_tabulated(3, v, "0..=4")),
    }
}

/// `Phi_{E_s,2}` for `v_2(s)` in `0..=2`:
///
/// * `v_2(s) = 0`: `C3` if `s ≡ 1 (mod 4)`, otherwise `C6`;
/// * `v_2(s) = 1`: `C2`;
/// * `v_2(s) = 2`: `C3` if `s/4 ≡ -1 (mod 4)`, otherwise `SL2(F3)`.
///
/// The equation stays minimal at 2 for `-2 <= v_2(s) <= 4`, but the
/// remaining valuations in that window are not tabulated here.
pub fn phi_family_at_2(s: &BigRational) -> Result<MonodromyGroup> {
    let v = family_valuation(s, 2)?;
    match v {
        0 => Ok(if arith::unit_residue(s, 4)? == 1 { MonodromyGroup::C3 } else { MonodromyGroup::C6 }),
        1 => Ok(MonodromyGroup::C2),
        2 => {
            let u = s / BigRational::from_integer(BigInt::from(4));
            Ok(if arith::unit_residue(&u, 4)? == 3 { MonodromyGroup::C3 } else { MonodromyGroup::SL2F3 })
        }
        _ => Err(not_tabulated(2, v, "0..=2")),
    }
}

/// Family lookup at 2 or 3.
pub fn phi_family_at(s: &BigRational, p: u64) -> Result<MonodromyGroup> {
    match p {
        2 => phi_family_at_2(s),
        3 => phi_family_at_3(s),
        _ => Err(Error::invalid(format!("family tables exist only for p = 2, 3 (got {p})"))),
    }
}

/// Tame monodromy at `p >= 5`: trivial for semi-stable reduction, `C2` for
/// potentially multiplicative reduction, and cyclic of order
/// `12 / gcd(v_p(Delta_min), 12)` for potentially good reduction.
pub fn phi_tame(curve: &WeierstrassCurve, p: u64) -> Result<MonodromyGroup> {
    arith::require_prime(p)?;
    if p < 5 {
        return Err(Error::UnsupportedPrime(p));
    }
    let (minimal, _) = curves::minimalize_at_p(&curves::integral_short_model(curve, p), p)?;
    let prof = minimal.invariants().valuations(p);
    let group = match curves::classify_minimal(&prof) {
        ReductionClass::Good | ReductionClass::Multiplicative => MonodromyGroup::C1,
        ReductionClass::AdditivePotentiallyMultiplicative => MonodromyGroup::C2,
        ReductionClass::AdditivePotentiallyGood => {
            let vd = prof.v_delta.finite().expect("nonsingular curve");
            let e = 12 / (vd as u64).gcd(&12);
            MonodromyGroup::cyclic(e).ok_or_else(|| Error::Internal(format!("tame defect {e} not in {{2,3,4,6}}")))?
        }
    };
    Ok(group)
}

/// `Phi` for an arbitrary curve. At `p >= 5` this is the tame rule on the
/// minimal model. At 2 and 3 only good reduction of the given model and the
/// family `y^2 = x^3 + s` are handled; anything else is not tabulated.
pub fn phi_general_curve(curve: &WeierstrassCurve, p: u64) -> Result<LocalMonodromyResult> {
    arith::require_prime(p)?;
    if p >= 5 {
        let short = curves::integral_short_model(curve, p);
        let (minimal, _) = curves::minimalize_at_p(&short, p)?;
        if minimal.invariants().valuations(p).v_delta == Valuation::Finite(0) {
            return Ok(LocalMonodromyResult::new(p, MonodromyGroup::C1, Provenance::GoodReduction));
        }
        return Ok(LocalMonodromyResult::new(p, phi_tame(&minimal, p)?, Provenance::TameRule));
    }
    if let Some(s) = curve.family_parameter() {
        let provenance = if p == 2 { Provenance::FamilyTable2 } else { Provenance::FamilyTable3 };
        return Ok(LocalMonodromyResult::new(p, phi_family_at(s, p)?, provenance));
    }
    let integral_here = curve.coefficients().iter().all(|c| arith::valuation(c, p) >= Valuation::Finite(0));
    if integral_here && curve.invariants().valuations(p).v_delta == Valuation::Finite(0) {
        return Ok(LocalMonodromyResult::new(p, MonodromyGroup::C1, Provenance::GoodReduction));
    }
    Err(Error::NotTabulated { p, reason: format!("no reduction table for {curve} at {p}") })
}

/// Local results for the family member at every prime where its minimal
/// model has bad reduction, each computed independently so that a failure
/// at one prime does not hide the others.
pub fn family_local_results(s: &BigRational) -> Result<Vec<(u64, Result<LocalMonodromyResult>)>> {
    if s.is_zero() {
        return Err(Error::SingularCurve);
    }
    // 2 and 3 divide 432 and so the discriminant of every minimal model
    let mut out = vec![
        (2, phi_family_at_2(s).map(|g| LocalMonodromyResult::new(2, g, Provenance::FamilyTable2))),
        (3, phi_family_at_3(s).map(|g| LocalMonodromyResult::new(3, g, Provenance::FamilyTable3))),
    ];
    for p in arith::support(s)?.into_iter().filter(|&p| p >= 5) {
        let local = curves::family_local_parameter(s, p);
        // v_p(s) divisible by 6: the local model has good reduction at p
        if arith::valuation(&local, p) == Valuation::Finite(0) {
            continue;
        }
        let curve = curves::family_curve(&local)?;
        out.push((p, phi_tame(&curve, p).map(|g| LocalMonodromyResult::new(p, g, Provenance::TameRule))));
    }
    Ok(out)
}

/// `d(E_s)` together with the local data it was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    #[serde(with = "rational_string")]
    pub s: BigRational,
    #[serde(with = "rational_string")]
    pub delta: BigRational,
    pub bad_primes: Vec<u64>,
    #[serde(rename = "monodromy")]
    pub locals: Vec<LocalMonodromyResult>,
    pub degree: u64,
    #[serde(rename = "divides_minkowski")]
    pub divides_bound: bool,
}

impl DegreeReport {
    /// Everything except the parameter and discriminant, for comparing twists.
    pub fn local_signature(&self) -> (&[u64], &[LocalMonodromyResult], u64) {
        (&self.bad_primes, &self.locals, self.degree)
    }
}

/// `d(E_s) = lcm_p |Phi_{E_s,p}|` over the bad primes of the minimal model.
pub fn semistability_degree(s: &BigRational) -> Result<DegreeReport> {
    let curve = curves::family_curve(s)?;
    let mut locals = Vec::new();
    for (_, r) in family_local_results(s)? {
        locals.push(r?);
    }
    let degree = lcm_of_orders(&locals);
    let divides_bound = GENUS_ONE_BOUND.is_multiple_of(degree);
    if !divides_bound {
        return Err(Error::TheoremViolation(format!(
            "d(E) = {degree} does not divide {GENUS_ONE_BOUND} for s = {}",
            arith::format_rational(s)
        )));
    }
    Ok(DegreeReport {
        s: s.clone(),
        delta: curve.invariants().delta,
        bad_primes: locals.iter().map(|l| l.p).collect(),
        locals,
        degree,
        divides_bound,
    })
}

/// lcm of the group orders; 1 for an empty list.
pub fn lcm_of_orders(locals: &[LocalMonodromyResult]) -> u64 {
    locals.iter().fold(1, |acc, l| arith::lcm_u64(acc, l.group.order()))
}

/// Primes dividing the numerator of `|Delta|` times the denominators of the
/// coefficients, for an arbitrary curve.
pub fn discriminant_primes(curve: &WeierstrassCurve) -> Result<Vec<u64>> {
    let delta = curve.invariants().delta;
    let mut primes = arith::support(&delta)?;
    for c in curve.coefficients() {
        if !c.is_zero() {
            for (p, _) in arith::factor(c.denom().magnitude())? {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}
