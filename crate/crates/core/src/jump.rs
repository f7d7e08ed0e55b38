//! Cohomology jump ideals of bounded complexes of free modules.
//!
//! For a complex `... -> F^{i-1} -> F^i -> F^{i+1} -> ...` given by polynomial
//! matrices, `J^i_k` is generated by the minors of size `rank F^i - k + 1` of
//! the block-diagonal matrix `diag(d^{i-1}, d^i)`. Its zero set is exactly the
//! set of points where the specialized complex has `dim H^i >= k`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{same_ring, Polynomial, Ring};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Arc<Ring>,
    min_degree: i64,
    ranks: Vec<usize>,
    /// `differentials[j]` is `d^{min_degree + j}`, of shape `ranks[j+1] x ranks[j]`.
    differentials: Vec<PolyMatrix>,
}

impl FreeComplex {
    pub fn new(
        ring: &Arc<Ring>,
        min_degree: i64,
        ranks: Vec<usize>,
        differentials: Vec<PolyMatrix>,
    ) -> Result<Self> {
        let expected = ranks.len().saturating_sub(1);
        if differentials.len() != expected {
            return Err(Error::input(alloc::format!(
                "{} ranks need {expected} differentials, got {}",
                ranks.len(),
                differentials.len()
            )));
        }
        for (j, d) in differentials.iter().enumerate() {
            if d.rows() != ranks[j + 1] || d.cols() != ranks[j] {
                return Err(Error::input(alloc::format!(
                    "d^{} has shape {}x{}, expected {}x{}",
                    min_degree + j as i64,
                    d.rows(),
                    d.cols(),
                    ranks[j + 1],
                    ranks[j]
                )));
            }
            if !same_ring(d.ring(), ring) {
                return Err(Error::input("differentials over different rings"));
            }
        }
        Ok(FreeComplex { ring: ring.clone(), min_degree, ranks, differentials })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.differentials
    }

    /// Degrees carrying a (possibly zero-rank) module.
    pub fn degrees(&self) -> core::ops::Range<i64> {
        self.min_degree..self.min_degree + self.ranks.len() as i64
    }

    pub fn rank(&self, i: i64) -> usize {
        self.index(i).map_or(0, |j| self.ranks[j])
    }

    fn index(&self, i: i64) -> Option<usize> {
        let j = i.checked_sub(self.min_degree)?;
        (0..self.ranks.len() as i64).contains(&j).then_some(j as usize)
    }

    /// `d^i : F^i -> F^{i+1}`; the zero map outside the stored range.
    pub fn differential(&self, i: i64) -> PolyMatrix {
        match self.index(i) {
            Some(j) if j < self.differentials.len() => self.differentials[j].clone(),
            _ => PolyMatrix::zeros(&self.ring, self.rank(i + 1), self.rank(i)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexValidation {
    pub valid: bool,
    /// First failing composition entry, e.g. `d^1*d^0 [0,0] = x*y`.
    pub diagnostic: Option<String>,
}

/// Checks `d^{i+1} d^i = 0` exactly for every consecutive pair.
pub fn validate_complex(c: &FreeComplex) -> Result<ComplexValidation> {
    for w in 0..c.differentials.len().saturating_sub(1) {
        let i = c.min_degree + w as i64;
        let prod = c.differentials[w + 1].mul(&c.differentials[w])?;
        for r in 0..prod.rows() {
            for col in 0..prod.cols() {
                let e = prod.get(r, col);
                if !e.is_zero() {
                    return Ok(ComplexValidation {
                        valid: false,
                        diagnostic: Some(alloc::format!("d^{}*d^{i} [{r},{col}] = {e}", i + 1)),
                    });
                }
            }
        }
    }
    Ok(ComplexValidation { valid: true, diagnostic: None })
}

fn require_valid(c: &FreeComplex) -> Result<()> {
    let v = validate_complex(c)?;
    if v.valid {
        Ok(())
    } else {
        Err(Error::InvalidComplex(v.diagnostic.unwrap_or_default()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpIdeal {
    pub degree: i64,
    pub k: i64,
    /// `rank F^i - k + 1`.
    pub minor_size: i64,
    /// Nonzero minors in enumeration order; `[]` is the zero ideal.
    pub generators: Vec<Polynomial>,
}

impl JumpIdeal {
    /// Monic, sorted, deduplicated generators; invariant under row and
    /// column permutations of the underlying matrix.
    pub fn canonical_generators(&self) -> Vec<Polynomial> {
        canonical_set(&self.generators)
    }

    pub fn vanishes_at(&self, point: &[Scalar]) -> Result<bool> {
        for g in &self.generators {
            if !g.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Sort key of a monic generator: its terms as (exponents, coefficient text).
type TermKey = Vec<(Vec<u32>, String)>;

pub(crate) fn canonical_set(gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut keyed: Vec<(TermKey, Polynomial)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let m = g.monic();
            let key = m
                .terms()
                .map(|(mono, c)| (mono.exps().to_vec(), c.to_coeff_string()))
                .collect();
            (key, m)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, p)| p).collect()
}

/// `diag(d^{i-1}, d^i)`, the matrix of `F^{i-1} ⊕ F^i -> F^i ⊕ F^{i+1}`.
pub fn jump_matrix(c: &FreeComplex, i: i64) -> PolyMatrix {
    c.differential(i - 1).block_diag(&c.differential(i))
}

pub fn jump_ideal(c: &FreeComplex, i: i64, k: i64) -> Result<JumpIdeal> {
    require_valid(c)?;
    Ok(jump_ideal_of_matrix(&jump_matrix(c, i), c.rank(i), i, k))
}

pub(crate) fn jump_ideal_of_matrix(m: &PolyMatrix, rank_i: usize, i: i64, k: i64) -> JumpIdeal {
    let minor_size = rank_i as i64 - k + 1;
    let generators = m
        .minors_of_size(minor_size)
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect();
    JumpIdeal { degree: i, k, minor_size, generators }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCheck {
    pub point: Vec<Scalar>,
    /// `dim H^i` of the complex specialized at the point.
    pub cohomology_dim: usize,
    pub in_zero_set: bool,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationReport {
    pub degree: i64,
    pub k: i64,
    pub checks: Vec<PointCheck>,
}

impl SpecializationReport {
    pub fn violations(&self) -> impl Iterator<Item = &PointCheck> {
        self.checks.iter().filter(|c| !c.consistent)
    }

    pub fn is_consistent(&self) -> bool {
        self.violations().next().is_none()
    }
}

/// `dim H^i` at a point, by exact rank computation over the residue field.
pub fn cohomology_dim_at(c: &FreeComplex, i: i64, point: &[Scalar]) -> Result<usize> {
    let out = c.differential(i).evaluate(point)?.rank();
    let inc = c.differential(i - 1).evaluate(point)?.rank();
    Ok(c.rank(i) - out - inc)
}

/// Compares membership of each point in `V(J^i_k)` with `dim H^i(p) >= k`.
pub fn specialization_check(
    c: &FreeComplex,
    i: i64,
    k: i64,
    points: &[Vec<Scalar>],
) -> Result<SpecializationReport> {
    let ideal = jump_ideal(c, i, k)?;
    let checks = points
        .iter()
        .map(|p| {
            let h = cohomology_dim_at(c, i, p)?;
            let member = ideal.vanishes_at(p)?;
            Ok(PointCheck {
                point: p.clone(),
                cohomology_dim: h,
                in_zero_set: member,
                consistent: member == (h as i64 >= k),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpecializationReport { degree: i, k, checks })
}
