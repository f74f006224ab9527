//! Batch evaluation of the family over a range of integer parameters.

use std::collections::BTreeMap;
use std::io::Write;

use num::bigint::BigInt;
use num::rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::rational_string;
use crate::error::{Error, Result};
use crate::monodromy::{self, LocalMonodromyResult, GENUS_ONE_BOUND};
use crate::padic_cover::{self, CoverReport, ValuationRange};

/// Either a determined degree or the reason it is not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DegreeField {
    Value(u64),
    Marker(String),
}

pub const NOT_TABULATED: &str = "not-tabulated";

/// A local result, or the not-tabulated marker at that prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LocalEntry {
    Known(LocalMonodromyResult),
    NotTabulated { p: u64, status: String, reason: String },
}

impl LocalEntry {
    pub fn from_result(p: u64, r: Result<LocalMonodromyResult>) -> Result<LocalEntry> {
        match r {
            Ok(l) => Ok(LocalEntry::Known(l)),
            Err(Error::NotTabulated { reason, .. }) => {
                Ok(LocalEntry::NotTabulated { p, status: NOT_TABULATED.into(), reason })
            }
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    #[serde(with = "rational_string")]
    pub s: BigRational,
    pub degree: DegreeField,
    pub locals: Vec<LocalEntry>,
    /// Label of the ball containing `s` in the cover at 2 and at 3; `None`
    /// outside the tabulated strata.
    pub ball_ids: BTreeMap<u64, Option<String>>,
}

struct Covers {
    at2: CoverReport,
    at3: CoverReport,
}

impl Covers {
    fn new() -> Result<Self> {
        Ok(Covers {
            at2: padic_cover::enumerate_cover(2, ValuationRange { min: 0, max: 2 })?,
            at3: padic_cover::enumerate_cover(3, ValuationRange { min: 0, max: 4 })?,
        })
    }
}

fn record_for(s: &BigRational, covers: &Covers) -> Result<SweepRecord> {
    let locals = monodromy::family_local_results(s)?
        .into_iter()
        .map(|(p, r)| LocalEntry::from_result(p, r))
        .collect::<Result<Vec<_>>>()?;
    let known: Vec<LocalMonodromyResult> = locals
        .iter()
        .filter_map(|l| match l {
            LocalEntry::Known(r) => Some(*r),
            LocalEntry::NotTabulated { .. } => None,
        })
        .collect();
    let degree = if known.len() == locals.len() {
        DegreeField::Value(monodromy::lcm_of_orders(&known))
    } else {
        DegreeField::Marker(NOT_TABULATED.into())
    };
    let mut ball_ids = BTreeMap::new();
    for report in [&covers.at2, &covers.at3] {
        let id = match padic_cover::locate(s, report) {
            Ok(b) => Some(b.label()),
            Err(e) if e.is_not_tabulated() => None,
            Err(e) => return Err(e),
        };
        ball_ids.insert(report.p, id);
    }
    Ok(SweepRecord { s: s.clone(), degree, locals, ball_ids })
}

/// Records for `s = from, from + step, .., <= to`, skipping `s = 0`.
/// Output order is by `s` regardless of `threads`.
pub fn sweep_range(from: i64, to: i64, step: i64, threads: usize) -> Result<Vec<SweepRecord>> {
    if step <= 0 {
        return Err(Error::invalid("step must be positive"));
    }
    let values: Vec<i64> = if from > to {
        Vec::new()
    } else {
        (0..=((to - from) / step)).map(|k| from + k * step).filter(|&s| s != 0).collect()
    };
    let covers = Covers::new()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(|| {
        values.par_iter().map(|&s| record_for(&BigRational::from_integer(BigInt::from(s)), &covers)).collect()
    })
}

pub fn write_jsonl<W: Write + ?Sized>(records: &[SweepRecord], out: &mut W) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SweepSummary {
    pub records: usize,
    pub not_tabulated: usize,
    pub degree_counts: BTreeMap<u64, usize>,
    pub all_divide_bound: bool,
}

pub fn summarize(records: &[SweepRecord]) -> SweepSummary {
    let mut summary = SweepSummary { records: records.len(), all_divide_bound: true, ..Default::default() };
    for r in records {
        match r.degree {
            DegreeField::Value(d) => {
                *summary.degree_counts.entry(d).or_default() += 1;
                summary.all_divide_bound &= GENUS_ONE_BOUND.is_multiple_of(d);
            }
            DegreeField::Marker(_) => summary.not_tabulated += 1,
        }
    }
    summary
}

impl std::fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let counts: Vec<String> = self.degree_counts.iter().map(|(d, n)| format!("{d}:{n}")).collect();
        write!(
            f,
            "records={} not_tabulated={} degrees={{{}}} all_divide_{}={}",
            self.records,
            self.not_tabulated,
            counts.join(","),
            GENUS_ONE_BOUND,
            self.all_divide_bound
        )
    }
}
