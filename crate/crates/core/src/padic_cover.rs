//! Disjoint p-adic balls of constant finite monodromy for the family
//! `y^2 = x^3 + s`, at `p = 2` and `p = 3`.
//!
//! Each valuation stratum `{s : v_p(s) = v}` is cut into the congruence
//! classes the reduction tables need to see: the residue of the unit part of
//! `s` modulo `p^depth`. A class becomes a ball `center + p^k Z_p` with
//! `k = v + depth` and `v_p(center) = v < k`, so ball membership already pins
//! down the stratum.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, bigint_string, Valuation};
use crate::error::{Error, Result};
use crate::monodromy::{self, MonodromyGroup};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicBall {
    pub p: u64,
    /// The stratum `v_p(s) = valuation` this ball lies in.
    pub valuation: i64,
    /// Representative in `[0, p^k)`.
    #[serde(with = "bigint_string")]
    pub center: BigInt,
    pub modulus_exponent: u32,
    pub group: MonodromyGroup,
}

impl PadicBall {
    pub fn modulus(&self) -> BigInt {
        arith::big_pow(self.p, self.modulus_exponent)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        if x.is_zero() || arith::valuation(x, self.p) < Valuation::Finite(0) {
            return false;
        }
        match arith::residue_mod(x, &self.modulus()) {
            Ok(r) => r == self.center,
            Err(_) => false,
        }
    }

    pub fn contains_residue(&self, r: &BigInt) -> bool {
        r.mod_floor(&self.modulus()) == self.center
    }

    /// `center+p^k` written out, e.g. `27+243Z_3`.
    pub fn label(&self) -> String {
        format!("{}+{}Z_{}", self.center, self.modulus(), self.p)
    }
}

impl fmt::Display for PadicBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.label(), self.group)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValuationRange {
    pub min: i64,
    pub max: i64,
}

impl ValuationRange {
    pub fn new(min: i64, max: i64) -> Result<Self> {
        if min > max {
            return Err(Error::invalid(format!("empty valuation range {min}..={max}")));
        }
        Ok(ValuationRange { min, max })
    }

    pub fn contains(&self, v: i64) -> bool {
        self.min <= v && v <= self.max
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.min..=self.max
    }
}

impl fmt::Display for ValuationRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={}", self.min, self.max)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub p: u64,
    pub valuation_range: ValuationRange,
    pub balls: Vec<PadicBall>,
    pub classes: Vec<(MonodromyGroup, usize)>,
}

/// Tabulated strata at 2 and 3, and how many `p`-adic digits of the unit
/// part the table reads in each.
fn table_depth(p: u64, v: i64) -> Option<u32> {
    match (p, v) {
        (3, 0) | (3, 3) => Some(2),
        (3, 1) | (3, 2) | (3, 4) => Some(1),
        (2, 0) => Some(2),
        (2, 1) => Some(1),
        (2, 2) => Some(2),
        _ => None,
    }
}

fn tabulated_range(p: u64) -> Option<ValuationRange> {
    match p {
        2 => Some(ValuationRange { min: 0, max: 2 }),
        3 => Some(ValuationRange { min: 0, max: 4 }),
        _ => None,
    }
}

/// Every ball of constant monodromy in the strata `v_p(s) ∈ range`, ordered
/// by stratum and then by center. Disjointness and exact cover of each
/// stratum are checked before returning.
pub fn enumerate_cover(p: u64, range: ValuationRange) -> Result<CoverReport> {
    let full = tabulated_range(p).ok_or_else(|| {
        if arith::is_prime(p) {
            Error::NotTabulated { p, reason: "p-adic covers are tabulated only for p = 2 and p = 3".into() }
        } else {
            Error::invalid(format!("{p} is not prime"))
        }
    })?;
    if !full.contains(range.min) || !full.contains(range.max) {
        return Err(Error::NotTabulated { p, reason: format!("valuations {range} outside tabulated {full}") });
    }

    let mut balls = Vec::new();
    for v in range.iter() {
        let depth = table_depth(p, v).expect("within tabulated range");
        let unit_modulus = p.pow(depth);
        let scale = arith::big_pow(p, v as u32);
        for u in (1..unit_modulus).filter(|u| u % p != 0) {
            let center = &scale * BigInt::from(u);
            let group = monodromy::phi_family_at(&BigRational::from_integer(center.clone()), p)?;
            balls.push(PadicBall { p, valuation: v, center, modulus_exponent: v as u32 + depth, group });
        }
    }

    let report = CoverReport { p, valuation_range: range, classes: class_counts(&balls), balls };
    let finest = report.balls.iter().map(|b| b.modulus_exponent).max().unwrap_or(1);
    check_partition(&report, finest)?;
    Ok(report)
}

fn class_counts(balls: &[PadicBall]) -> Vec<(MonodromyGroup, usize)> {
    let mut counts: BTreeMap<MonodromyGroup, usize> = BTreeMap::new();
    for b in balls {
        *counts.entry(b.group).or_default() += 1;
    }
    counts.into_iter().collect()
}

/// Checks that every residue `r mod p^e` with `v_p(r)` in the report's range
/// lies in exactly one ball, and that no other residue lies in any ball.
/// Requires `e` at least the largest ball exponent.
pub fn check_partition(report: &CoverReport, e: u32) -> Result<()> {
    let p = report.p;
    let modulus =
        p.checked_pow(e).filter(|&m| m <= 50_000_000).ok_or_else(|| Error::SizeLimit(format!("{p}^{e} residues")))?;
    if report.balls.iter().any(|b| b.modulus_exponent > e) {
        return Err(Error::invalid(format!("modulus {p}^{e} is coarser than some ball")));
    }
    // centers as u64 for the residue sweep
    let centers: Vec<(u64, u64)> =
        report.balls.iter().map(|b| (b.center.to_u64().expect("small center"), p.pow(b.modulus_exponent))).collect();
    for r in 1..modulus {
        let v = {
            let mut v = 0;
            let mut x = r;
            while x % p == 0 {
                x /= p;
                v += 1;
            }
            v
        };
        let hits = centers.iter().filter(|&&(c, m)| r % m == c).count();
        // residues with v >= e cannot be classified at this modulus
        let expected = usize::from(report.valuation_range.contains(v) && (v as u32) < e);
        if hits != expected {
            return Err(Error::Internal(format!(
                "residue {r} mod {p}^{e} (v = {v}) lies in {hits} balls, expected {expected}"
            )));
        }
    }
    Ok(())
}

/// The unique ball of `report` containing `s`.
pub fn locate<'a>(s: &BigRational, report: &'a CoverReport) -> Result<&'a PadicBall> {
    let v = arith::valuation(s, report.p).finite().ok_or(Error::SingularCurve)?;
    if !report.valuation_range.contains(v) {
        return Err(Error::NotTabulated {
            p: report.p,
            reason: format!("v_{}(s) = {v} outside report range {}", report.p, report.valuation_range),
        });
    }
    let mut hits = report.balls.iter().filter(|b| b.contains(s));
    match (hits.next(), hits.next()) {
        (Some(b), None) => Ok(b),
        (None, _) => Err(Error::Internal(format!("{} lies in no ball", arith::format_rational(s)))),
        (Some(_), Some(_)) => Err(Error::Internal(format!("{} lies in several balls", arith::format_rational(s)))),
    }
}

impl CoverReport {
    /// Tab-separated rows `p, valuation, center, modulus, group, order`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("p\tvaluation\tcenter\tmodulus\tgroup\torder\n");
        for b in &self.balls {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}^{}\t{}\t{}\n",
                b.p,
                b.valuation,
                b.center,
                b.p,
                b.modulus_exponent,
                b.group,
                b.group.order()
            ));
        }
        out
    }

    pub fn find(&self, center: u64, modulus_exponent: u32) -> Option<&PadicBall> {
        self.balls.iter().find(|b| b.center == BigInt::from(center) && b.modulus_exponent == modulus_exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;

    fn rat(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn listed_three_adic_balls() {
        let r = enumerate_cover(3, ValuationRange::new(0, 3).unwrap()).unwrap();
        for (c, k) in [(1, 2), (8, 2), (27, 5), (216, 5)] {
            let b = r.find(c, k).unwrap_or_else(|| panic!("ball {c}+3^{k}"));
            assert_eq!(b.group, MonodromyGroup::C4);
        }
    }

    #[test]
    fn two_adic_strata() {
        let r = enumerate_cover(2, ValuationRange::new(0, 0).unwrap()).unwrap();
        let got: Vec<_> = r.balls.iter().map(|b| (b.label(), b.group)).collect();
        assert_eq!(got, vec![("1+4Z_2".to_string(), MonodromyGroup::C3), ("3+4Z_2".to_string(), MonodromyGroup::C6)]);

        let r = enumerate_cover(2, ValuationRange::new(1, 1).unwrap()).unwrap();
        assert_eq!(r.balls.len(), 1);
        assert_eq!((r.balls[0].label(), r.balls[0].group), ("2+4Z_2".to_string(), MonodromyGroup::C2));

        let r = enumerate_cover(2, ValuationRange::new(0, 2).unwrap()).unwrap();
        assert_eq!(r.balls.len(), 5);
    }

    #[test]
    fn out_of_range() {
        assert!(enumerate_cover(5, ValuationRange::new(0, 1).unwrap()).unwrap_err().is_not_tabulated());
        assert!(enumerate_cover(3, ValuationRange::new(0, 5).unwrap()).unwrap_err().is_not_tabulated());
        assert!(enumerate_cover(2, ValuationRange::new(-1, 0).unwrap()).unwrap_err().is_not_tabulated());
        assert!(matches!(enumerate_cover(4, ValuationRange::new(0, 0).unwrap()), Err(Error::InvalidInput(_))));
        assert!(ValuationRange::new(2, 1).is_err());
    }

    #[test]
    fn locate_examples() {
        let r3 = enumerate_cover(3, ValuationRange::new(0, 4).unwrap()).unwrap();
        let b = locate(&rat("10"), &r3).unwrap();
        assert_eq!((b.label(), b.group), ("1+9Z_3".to_string(), MonodromyGroup::C4));
        assert_eq!(locate(&rat("1"), &r3).unwrap().label(), "1+9Z_3");
        assert_eq!(locate(&rat("1/2"), &r3).unwrap().label(), "5+9Z_3");
        assert!(locate(&rat("1/3"), &r3).unwrap_err().is_not_tabulated());

        let r2 = enumerate_cover(2, ValuationRange::new(0, 2).unwrap()).unwrap();
        let b = locate(&rat("4"), &r2).unwrap();
        assert_eq!((b.label(), b.group), ("4+16Z_2".to_string(), MonodromyGroup::SL2F3));
    }

    #[test]
    fn tsv_rows() {
        let r = enumerate_cover(2, ValuationRange::new(2, 2).unwrap()).unwrap();
        assert_eq!(
            r.to_tsv(),
            "p\tvaluation\tcenter\tmodulus\tgroup\torder\n2\t2\t4\t2^4\tSL2(F3)\t24\n2\t2\t12\t2^4\tC3\t3\n"
        );
    }
}
