//! Matrices of polynomials and their minors.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::formal::TruncationOrder;
use crate::linalg::DenseMatrix;
use crate::poly::{same_ring, Polynomial, Ring};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(ring: &Arc<Ring>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    /// Row-major entries; all must share `ring`.
    pub fn new(ring: &Arc<Ring>, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::input(alloc::format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|p| !same_ring(p.ring(), ring)) {
            return Err(Error::input("matrix entries from different rings"));
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert!(same_ring(p.ring(), &self.ring), "entry from a different ring");
        self.entries[i * self.cols + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::input(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// `diag(self, other)`: `self` in the top-left block, `other` bottom-right.
    pub fn block_diag(&self, other: &PolyMatrix) -> PolyMatrix {
        assert!(same_ring(&self.ring, &other.ring), "block_diag across rings");
        let mut out = Self::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn map_entries<F>(&self, f: F) -> Result<PolyMatrix>
    where
        F: FnMut(&Polynomial) -> Result<Polynomial>,
    {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        let ring = entries.first().map_or(self.ring.clone(), |p| p.ring().clone());
        PolyMatrix::new(&ring, self.rows, self.cols, entries)
    }

    pub fn truncate(&self, n: TruncationOrder) -> PolyMatrix {
        self.map_entries(|p| Ok(p.truncate(n))).expect("same shape")
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<DenseMatrix> {
        let mut out = DenseMatrix::zeros(self.ring.domain(), self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).evaluate(point)?);
            }
        }
        Ok(out)
    }

    /// All `r x r` minors, ordered lexicographically by (row set, column set).
    ///
    /// `r <= 0` gives `[1]` (unit ideal) and `r > min(rows, cols)` gives `[]`
    /// (zero ideal).
    pub fn minors_of_size(&self, r: i64) -> Vec<Polynomial> {
        if r <= 0 {
            return vec![Polynomial::one(&self.ring)];
        }
        let r = r as usize;
        if r > self.rows.min(self.cols) {
            return Vec::new();
        }
        let mut memo = MinorCache::default();
        let row_sets = combinations(self.rows, r);
        let col_sets = combinations(self.cols, r);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rows in &row_sets {
            let rmask = mask(rows);
            for cols in &col_sets {
                out.push(self.minor_memo(rmask, mask(cols), &mut memo));
            }
        }
        out
    }

    /// Determinant of the submatrix on the given row and column index sets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        assert_eq!(rows.len(), cols.len(), "minor must be square");
        self.minor_memo(mask(rows), mask(cols), &mut MinorCache::default())
    }

    /// Laplace expansion along the first row of the set; sub-minors are
    /// memoized on (remaining rows, remaining columns).
    fn minor_memo(&self, rmask: u64, cmask: u64, memo: &mut MinorCache) -> Polynomial {
        if rmask == 0 {
            return Polynomial::one(&self.ring);
        }
        if let Some(p) = memo.get(&(rmask, cmask)) {
            return p.clone();
        }
        let first = rmask.trailing_zeros() as usize;
        let rest = rmask & (rmask - 1);
        let mut acc = Polynomial::zero(&self.ring);
        let mut negative = false;
        let mut cm = cmask;
        while cm != 0 {
            let j = cm.trailing_zeros() as usize;
            cm &= cm - 1;
            let entry = self.get(first, j);
            if !entry.is_zero() {
                let sub = self.minor_memo(rest, cmask & !(1u64 << j), memo);
                if !sub.is_zero() {
                    let term = entry * &sub;
                    acc = if negative { &acc - &term } else { &acc + &term };
                }
            }
            negative = !negative;
        }
        memo.insert((rmask, cmask), acc.clone());
        acc
    }
}

type MinorCache = BTreeMap<(u64, u64), Polynomial>;

fn mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0u64, |m, &i| {
        assert!(i < 64, "matrix dimension too large for minor enumeration");
        m | (1u64 << i)
    })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
