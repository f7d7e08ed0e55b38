//! Divisor bookkeeping for the log resolution of `(A^{ab}, M_k)` obtained by
//! blowing up the strict transforms of `M_a, M_{a-1}, ..., M_k` in order.
//!
//! Only the numbers are modelled: for the divisor `E_i` over `M_{a-i}` the
//! pulled-back ideal of `M_k` has multiplicity `N_i = a - k + 1 - i`, and the
//! log discrepancy is taken to be `A_i = (a-i)(b-i)`, the codimension of the
//! center. `A_i` is a reconstruction, flagged as such in every record.

use alloc::vec::Vec;

use num_rational::Rational64;

use crate::determinantal::GenericShape;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisorRecord {
    pub i: usize,
    /// Stratum blown up: `M_{a-i}`.
    pub center_index: usize,
    pub center_codim: usize,
    /// `N_i`.
    pub multiplicity: usize,
    /// `A_i`.
    pub log_discrepancy: usize,
    /// Always true: `A_i` is derived from consistency, not read off a source.
    pub log_discrepancy_derived: bool,
}

impl DivisorRecord {
    pub fn ratio(&self) -> Rational64 {
        Rational64::new(self.log_discrepancy as i64, self.multiplicity as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerReport {
    pub shape: GenericShape,
    pub k: usize,
    /// In blowup order, `i = 0..=a-k`.
    pub records: Vec<DivisorRecord>,
}

pub fn resolve_tower(shape: GenericShape, k: usize) -> Result<TowerReport> {
    shape.check_k(k)?;
    let (a, b) = (shape.a(), shape.b());
    let records = (0..=a - k)
        .map(|i| {
            let codim = (a - i) * (b - i);
            DivisorRecord {
                i,
                center_index: a - i,
                center_codim: codim,
                multiplicity: a - k + 1 - i,
                log_discrepancy: codim,
                log_discrepancy_derived: true,
            }
        })
        .collect();
    Ok(TowerReport { shape, k, records })
}

/// `min_i A_i / N_i`.
pub fn lct_from_tower(report: &TowerReport) -> Rational64 {
    report
        .records
        .iter()
        .map(DivisorRecord::ratio)
        .min()
        .expect("a tower has at least one divisor")
}

/// Candidate poles `-A_i / N_i`, increasing and without repeats.
pub fn zeta_poles_from_tower(report: &TowerReport) -> Result<Vec<Rational64>> {
    if report.shape.a() != report.shape.b() {
        return Err(Error::input("zeta formula requires a=b"));
    }
    let mut poles: Vec<Rational64> = report.records.iter().map(|r| -r.ratio()).collect();
    poles.sort();
    poles.dedup();
    Ok(poles)
}
