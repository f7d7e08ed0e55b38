//! Seeded generators for the randomized oracle suites.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::jump::FreeComplex;
use crate::linalg::DenseMatrix;
use crate::petri::{tuples, LInfPairData};
use crate::matrix::PolyMatrix;
use crate::poly::{monomials_below, Polynomial, Ring};
use crate::scalar::{Domain, Scalar};

/// Small integer in `[-bound, bound]`, mapped into the domain.
pub fn small_scalar<R: Rng + ?Sized>(rng: &mut R, domain: Domain, bound: i64) -> Scalar {
    Scalar::from_i64(domain, rng.gen_range(-bound..=bound))
}

/// Polynomial of degree `<= max_degree` with each monomial present with
/// probability `density` and small integer coefficients.
pub fn random_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    ring: &Arc<Ring>,
    min_degree: u32,
    max_degree: u32,
    density: f64,
) -> Polynomial {
    let mut p = Polynomial::zero(ring);
    for m in monomials_below(ring.nvars(), max_degree + 1) {
        if m.degree() < min_degree || !rng.gen_bool(density) {
            continue;
        }
        let c = small_scalar(rng, ring.domain(), 3);
        p = &p + &Polynomial::monomial(ring, m, c);
    }
    p
}

pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, domain: Domain, n: usize) -> DenseMatrix {
    loop {
        let mut m = DenseMatrix::zeros(domain, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, small_scalar(rng, domain, 2));
            }
        }
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

pub fn constant_matrix(ring: &Arc<Ring>, m: &DenseMatrix) -> PolyMatrix {
    let entries = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .map(|(i, j)| Polynomial::constant(ring, m.get(i, j).clone()))
        .collect();
    PolyMatrix::new(ring, m.rows(), m.cols(), entries).expect("consistent shape")
}

/// A building block of a random complex: maps between consecutive slots
/// `start, start+1, ...` whose consecutive composites vanish.
struct Piece {
    start: usize,
    ranks: Vec<usize>,
    maps: Vec<PolyMatrix>,
}

/// Random valid complex with at most `max_len` nonzero degrees and ranks at
/// most `max_rank`. Built as a direct sum of two-term pieces, Koszul pieces
/// and free summands (so `d∘d = 0` by construction), then twisted by random
/// constant changes of basis in every degree.
pub fn random_complex<R: Rng + ?Sized>(
    rng: &mut R,
    ring: &Arc<Ring>,
    max_len: usize,
    max_rank: usize,
    max_entry_degree: u32,
) -> FreeComplex {
    let len = rng.gen_range(2..=max_len.max(2));
    let mut ranks = vec![0usize; len];
    let mut pieces: Vec<Piece> = Vec::new();
    for _ in 0..2 * len {
        let kind = rng.gen_range(0..4);
        if kind == 0 && len >= 3 {
            let start = rng.gen_range(0..len - 2);
            if ranks[start] + 1 > max_rank || ranks[start + 1] + 2 > max_rank || ranks[start + 2] + 1 > max_rank {
                continue;
            }
            let f = random_polynomial(rng, ring, 0, max_entry_degree.div_ceil(2).max(1), 0.5);
            let g = random_polynomial(rng, ring, 0, max_entry_degree.div_ceil(2).max(1), 0.5);
            let d0 = PolyMatrix::new(ring, 2, 1, vec![f.clone(), g.clone()]).unwrap();
            let d1 = PolyMatrix::new(ring, 1, 2, vec![-&g, f]).unwrap();
            pieces.push(Piece { start, ranks: vec![1, 2, 1], maps: vec![d0, d1] });
            ranks[start] += 1;
            ranks[start + 1] += 2;
            ranks[start + 2] += 1;
        } else if kind == 1 {
            let start = rng.gen_range(0..len);
            if ranks[start] + 1 > max_rank {
                continue;
            }
            pieces.push(Piece { start, ranks: vec![1], maps: Vec::new() });
            ranks[start] += 1;
        } else {
            let start = rng.gen_range(0..len - 1);
            let p = rng.gen_range(1..=2);
            let q = rng.gen_range(1..=2);
            if ranks[start] + p > max_rank || ranks[start + 1] + q > max_rank {
                continue;
            }
            let entries = (0..p * q)
                .map(|_| random_polynomial(rng, ring, 0, max_entry_degree, 0.4))
                .collect();
            let d = PolyMatrix::new(ring, q, p, entries).unwrap();
            pieces.push(Piece { start, ranks: vec![p, q], maps: vec![d] });
            ranks[start] += p;
            ranks[start + 1] += q;
        }
    }
    if ranks.iter().all(|&r| r == 0) {
        ranks[0] = 1;
        pieces.push(Piece { start: 0, ranks: vec![1], maps: Vec::new() });
    }

    // Assemble the block differentials.
    let mut offsets = vec![0usize; len];
    let mut diffs: Vec<PolyMatrix> = (0..len - 1)
        .map(|j| PolyMatrix::zeros(ring, ranks[j + 1], ranks[j]))
        .collect();
    for piece in &pieces {
        let base: Vec<usize> = (0..piece.ranks.len()).map(|t| offsets[piece.start + t]).collect();
        for (t, m) in piece.maps.iter().enumerate() {
            let j = piece.start + t;
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    diffs[j].set(base[t + 1] + r, base[t] + c, m.get(r, c).clone());
                }
            }
        }
        for (t, r) in piece.ranks.iter().enumerate() {
            offsets[piece.start + t] += r;
        }
    }

    let domain = ring.domain();
    let basis: Vec<DenseMatrix> = ranks.iter().map(|&r| random_invertible(rng, domain, r)).collect();
    let twisted = diffs
        .iter()
        .enumerate()
        .map(|(j, d)| {
            let left = constant_matrix(ring, &basis[j + 1]);
            let right = constant_matrix(ring, &basis[j].inverse().expect("invertible"));
            left.mul(d).and_then(|m| m.mul(&right)).expect("shapes agree")
        })
        .collect();
    let min_degree = rng.gen_range(-1..=1);
    FreeComplex::new(ring, min_degree, ranks, twisted).expect("consistent complex")
}

/// Point whose coordinates are zero about half the time, so that special
/// loci are actually hit.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, domain: Domain, nvars: usize) -> Vec<Scalar> {
    (0..nvars)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Scalar::zero(domain)
            } else {
                small_scalar(rng, domain, 2)
            }
        })
        .collect()
}

/// Random truncated L∞ pair with injective Petri tensor (requires
/// `s >= l * lp`) and random symmetric higher maps `m_3 .. m_{nmax+1}`.
pub fn random_pair_data<R: Rng + ?Sized>(
    rng: &mut R,
    domain: Domain,
    s: usize,
    l: usize,
    lp: usize,
    nmax: usize,
) -> LInfPairData {
    assert!(s >= l * lp, "an injective Petri map needs s >= l * lp");
    let petri = loop {
        let c: Vec<Scalar> = (0..s * l * lp).map(|_| small_scalar(rng, domain, 2)).collect();
        let data = LInfPairData::new(domain, s, l, lp, vec![c.clone()]).expect("sizes agree");
        if crate::petri::petri_injective(&data.petri()) {
            break c;
        }
    };
    let mut maps = vec![petri];
    for n in 2..=nmax {
        let mut m = vec![Scalar::zero(domain); s.pow(n as u32) * l * lp];
        let mut drawn: alloc::collections::BTreeMap<Vec<usize>, Vec<Scalar>> = Default::default();
        for (ti, tuple) in tuples(s, n).into_iter().enumerate() {
            let mut key = tuple.clone();
            key.sort_unstable();
            let vals = drawn
                .entry(key)
                .or_insert_with(|| {
                    (0..l * lp)
                        .map(|_| if rng.gen_bool(0.3) { small_scalar(rng, domain, 3) } else { Scalar::zero(domain) })
                        .collect()
                })
                .clone();
            for (slot, v) in vals.into_iter().enumerate() {
                m[ti * l * lp + slot] = v;
            }
        }
        maps.push(m);
    }
    LInfPairData::new(domain, s, l, lp, maps).expect("symmetric by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jump::validate_complex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_complexes_are_complexes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for domain in [Domain::Rational, Domain::default_prime()] {
            for _ in 0..30 {
                let ring = Ring::numbered(domain, "x", rng.gen_range(1..=3));
                let c = random_complex(&mut rng, &ring, 4, 3, 2);
                assert!(c.ranks().iter().all(|&r| r <= 3));
                assert!(validate_complex(&c).unwrap().valid);
            }
        }
    }

    #[test]
    fn random_pair_data_is_injective() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = random_pair_data(&mut rng, Domain::Rational, 5, 2, 2, 3);
        assert_eq!(d.nmax(), 3);
        assert!(crate::petri::petri_injective(&d.petri()));
    }
}
