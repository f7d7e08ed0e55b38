//! Generic determinantal varieties `M_k(a, b)`: the `b x a` matrices of rank
//! at most `a - k`, their ideals, dimensions, and point counts over `F_q`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{binomial, PolyMatrix};
use crate::poly::{Polynomial, Ring};
use crate::scalar::{is_prime, Domain};

/// Shape of a generic `b x a` matrix, always stored with `1 <= a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenericShape {
    a: usize,
    b: usize,
}

impl GenericShape {
    /// Builds the shape, transposing when `a > b`.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::input("matrix dimensions must be at least 1"));
        }
        Ok(if a <= b { GenericShape { a, b } } else { GenericShape { a: b, b: a } })
    }

    /// Number of columns (the smaller dimension).
    pub fn a(&self) -> usize {
        self.a
    }

    /// Number of rows.
    pub fn b(&self) -> usize {
        self.b
    }

    pub fn ambient_dim(&self) -> usize {
        self.a * self.b
    }

    pub(crate) fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.a {
            return Err(Error::input(alloc::format!(
                "k = {k} outside 1..={} for shape ({}, {})",
                self.a,
                self.a,
                self.b
            )));
        }
        Ok(())
    }
}

fn var_name(i: usize, j: usize) -> alloc::string::String {
    if i < 10 && j < 10 {
        alloc::format!("x{i}{j}")
    } else {
        alloc::format!("x{i}_{j}")
    }
}

/// Ring with variables `x_ij`, `1 <= i <= b`, `1 <= j <= a`, row-major.
pub fn generic_ring(shape: GenericShape, domain: Domain) -> Arc<Ring> {
    let mut vars = Vec::with_capacity(shape.ambient_dim());
    for i in 1..=shape.b {
        for j in 1..=shape.a {
            vars.push(var_name(i, j));
        }
    }
    Ring::new(domain, vars)
}

/// The `b x a` matrix `(x_ij)`.
pub fn generic_matrix(shape: GenericShape, domain: Domain) -> PolyMatrix {
    let ring = generic_ring(shape, domain);
    let entries = (0..shape.ambient_dim()).map(|i| Polynomial::var(&ring, i)).collect();
    PolyMatrix::new(&ring, shape.b, shape.a, entries).expect("consistent shape")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminantalIdeal {
    pub shape: GenericShape,
    pub k: i64,
    pub generators: Vec<Polynomial>,
}

impl DeterminantalIdeal {
    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1
            && self.generators[0].degree() == Some(0)
            && self.generators[0].constant_term().is_one()
    }
}

/// `J_k`: the ideal of `(a - k + 1)`-minors of the generic matrix.
pub fn determinantal_ideal(shape: GenericShape, k: i64, domain: Domain) -> DeterminantalIdeal {
    let m = generic_matrix(shape, domain);
    let size = shape.a as i64 - k + 1;
    DeterminantalIdeal { shape, k, generators: m.minors_of_size(size) }
}

/// Closed count of generators of `J_k`, following the minor conventions.
pub fn expected_generator_count(shape: GenericShape, k: i64) -> u64 {
    let size = shape.a as i64 - k + 1;
    if size <= 0 {
        1
    } else if size as usize > shape.a {
        0
    } else {
        binomial(shape.b as u64, size as u64) * binomial(shape.a as u64, size as u64)
    }
}

/// `dim M_k = (a - k)(b + k)`.
pub fn dimension(shape: GenericShape, k: usize) -> Result<usize> {
    shape.check_k(k)?;
    Ok((shape.a - k) * (shape.b + k))
}

pub fn codimension(shape: GenericShape, k: usize) -> Result<usize> {
    Ok(shape.ambient_dim() - dimension(shape, k)?)
}

/// The singular locus of `M_k` is `M_{k+1}`, which is empty when `k = a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularLocus {
    pub index: usize,
    pub empty: bool,
}

pub fn singular_locus_index(shape: GenericShape, k: usize) -> Result<SingularLocus> {
    shape.check_k(k)?;
    Ok(SingularLocus { index: k + 1, empty: k + 1 > shape.a })
}

fn check_q(q: u64) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::input(alloc::format!("q = {q} is not prime")));
    }
    Ok(())
}

/// Number of `b x a` matrices over `F_q` of rank exactly `j`.
pub fn count_rank_exactly(shape: GenericShape, j: usize, q: u64) -> BigUint {
    if j > shape.a {
        return BigUint::zero();
    }
    let qb = BigUint::from(q);
    let pow = |e: usize| qb.pow(e as u32);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..j {
        num *= (pow(shape.a) - pow(i)) * (pow(shape.b) - pow(i));
        den *= pow(j) - pow(i);
    }
    num / den
}

/// Number of `b x a` matrices over `F_q` of rank `<= r`, summed from the
/// rank-stratum product formula.
pub fn count_points_rank_le(shape: GenericShape, r: usize, q: u64) -> Result<BigUint> {
    if r > shape.a {
        return Err(Error::input(alloc::format!("rank bound {r} exceeds a = {}", shape.a)));
    }
    check_q(q)?;
    Ok((0..=r).map(|j| count_rank_exactly(shape, j, q)).sum())
}

/// Largest search space accepted by [`count_points_brute_force`].
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 20;

/// Exhaustive count of rank `<= r` matrices over `F_q`.
pub fn count_points_brute_force(shape: GenericShape, r: usize, q: u64) -> Result<u64> {
    if r > shape.a {
        return Err(Error::input(alloc::format!("rank bound {r} exceeds a = {}", shape.a)));
    }
    check_q(q)?;
    let n = shape.ambient_dim();
    let total = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|&t| t <= BRUTE_FORCE_LIMIT));
    let Some(total) = total else {
        return Err(Error::input(alloc::format!(
            "q^(ab) = {q}^{n} exceeds the brute-force limit 2^20"
        )));
    };
    let mut digits = vec![0u64; n];
    let mut count = 0u64;
    for _ in 0..total {
        if rank_mod_q(&digits, shape.b, shape.a, q) <= r {
            count += 1;
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    Ok(count)
}

/// Rank of a row-major `rows x cols` matrix with entries in `[0, q)`.
fn rank_mod_q(entries: &[u64], rows: usize, cols: usize, q: u64) -> usize {
    let mut m = entries.to_vec();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            m.swap(p * cols + j, rank * cols + j);
        }
        let inv = inv_mod(m[rank * cols + c], q);
        for i in rank + 1..rows {
            let f = m[i * cols + c] * inv % q;
            if f == 0 {
                continue;
            }
            for j in c..cols {
                m[i * cols + j] = (m[i * cols + j] + q * q - f * m[rank * cols + j]) % q;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn inv_mod(a: u64, q: u64) -> u64 {
    let (mut b, mut e, mut acc) = (a % q, q - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

/// First `n` primes.
pub fn first_primes(n: usize) -> Vec<u64> {
    (2u64..).filter(|&p| is_prime(p)).take(n).collect()
}

/// Degree of the polynomial in `q` interpolating `q -> #{rank <= r}` through
/// the first `ab + 1` primes (Newton divided differences over `Q`).
pub fn interpolated_count_degree(shape: GenericShape, r: usize) -> Result<usize> {
    let nodes = first_primes(shape.ambient_dim() + 1);
    let values = nodes
        .iter()
        .map(|&q| count_points_rank_le(shape, r, q).map(|c| BigRational::from_integer(BigInt::from(c))))
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<BigRational> = nodes.iter().map(|&q| BigRational::from_integer(BigInt::from(q))).collect();
    let coeffs = newton_coefficients(&xs, values);
    Ok(coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0))
}

/// Divided-difference coefficients `f[x0], f[x0,x1], ...`. The index of the
/// last nonzero one is the degree of the interpolating polynomial.
fn newton_coefficients(xs: &[BigRational], mut table: Vec<BigRational>) -> Vec<BigRational> {
    let n = xs.len();
    for level in 1..n {
        for i in (level..n).rev() {
            table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(a: usize, b: usize) -> GenericShape {
        GenericShape::new(a, b).unwrap()
    }

    #[test]
    fn ideal_examples() {
        let j = determinantal_ideal(shape(2, 2), 1, Domain::Rational);
        assert_eq!(j.generators.len(), 1);
        assert_eq!(alloc::format!("{}", j.generators[0]), "x11*x22 - x12*x21");

        let j = determinantal_ideal(shape(1, 3), 1, Domain::Rational);
        let names: Vec<_> = j.generators.iter().map(|g| alloc::format!("{g}")).collect();
        assert_eq!(names, ["x11", "x21", "x31"]);

        assert!(determinantal_ideal(shape(2, 3), 3, Domain::Rational).is_unit_ideal());
        assert!(determinantal_ideal(shape(2, 3), 0, Domain::Rational).is_zero_ideal());
    }

    #[test]
    fn shape_is_normalized() {
        let s = shape(5, 3);
        assert_eq!((s.a(), s.b()), (3, 5));
        assert!(GenericShape::new(0, 2).is_err());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(shape(2, 2), 2).unwrap(), 0);
        assert_eq!(dimension(shape(2, 3), 1).unwrap(), 4);
        assert_eq!(dimension(shape(3, 3), 1).unwrap(), 8);
        assert!(dimension(shape(2, 3), 3).is_err());
        assert!(dimension(shape(2, 3), 0).is_err());
    }

    #[test]
    fn singular_locus_examples() {
        assert_eq!(singular_locus_index(shape(2, 2), 1).unwrap(), SingularLocus { index: 2, empty: false });
        assert_eq!(singular_locus_index(shape(3, 5), 3).unwrap(), SingularLocus { index: 4, empty: true });
        assert_eq!(singular_locus_index(shape(4, 4), 2).unwrap().index, 3);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_points_rank_le(shape(2, 2), 1, 2).unwrap(), BigUint::from(10u32));
        assert_eq!(count_points_rank_le(shape(2, 3), 2, 2).unwrap(), BigUint::from(64u32));
        assert_eq!(count_points_rank_le(shape(1, 2), 0, 3).unwrap(), BigUint::one());
        assert_eq!(count_points_brute_force(shape(2, 2), 1, 2).unwrap(), 10);
        assert_eq!(count_points_brute_force(shape(2, 2), 2, 2).unwrap(), 16);
        assert_eq!(count_points_brute_force(shape(2, 3), 1, 2).unwrap(), 22);
        assert!(count_points_rank_le(shape(2, 2), 3, 2).is_err());
        assert!(count_points_rank_le(shape(2, 2), 1, 4).is_err());
    }

    #[test]
    fn brute_force_guard() {
        assert!(count_points_brute_force(shape(3, 3), 1, 5).is_err());
        assert!(count_points_brute_force(shape(4, 5), 1, 2).is_ok());
        assert!(count_points_brute_force(shape(5, 5), 1, 2).is_err());
    }

    #[test]
    fn count_degree_small() {
        assert_eq!(interpolated_count_degree(shape(2, 3), 1).unwrap(), 4);
        assert_eq!(interpolated_count_degree(shape(2, 2), 0).unwrap(), 0);
    }
}
