use std::sync::Arc;

use detloci_core::matrix::PolyMatrix;
use detloci_core::random::{constant_matrix, random_invertible, random_point, random_polynomial};
use detloci_core::{invert_formal, Domain, FormalMap, Polynomial, Ring, TruncationOrder};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn domain(prime: bool) -> Domain {
    if prime {
        Domain::default_prime()
    } else {
        Domain::Rational
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, rows: usize, cols: usize) -> PolyMatrix {
    let entries = (0..rows * cols).map(|_| random_polynomial(rng, ring, 0, 2, 0.4)).collect();
    PolyMatrix::new(ring, rows, cols, entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), prime in any::<bool>(), nvars in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = Ring::numbered(domain(prime), "x", nvars);
        let [p, q, r] = [0; 3].map(|_| random_polynomial(&mut rng, &ring, 0, 3, 0.5));
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Polynomial::one(&ring), p.clone());
        prop_assert!((&p * &Polynomial::zero(&ring)).is_zero());
    }

    #[test]
    fn evaluation_commutes_with_minors(seed in any::<u64>(), prime in any::<bool>(), rows in 1usize..=3, cols in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dom = domain(prime);
        let ring = Ring::numbered(dom, "x", 2);
        let m = random_matrix(&mut rng, &ring, rows, cols);
        for _ in 0..50 {
            let p = random_point(&mut rng, dom, 2);
            let at_p = constant_matrix(&ring, &m.evaluate(&p).unwrap());
            for r in 1..=rows.min(cols) as i64 {
                let evaluated: Vec<_> = m.minors_of_size(r).iter().map(|g| g.evaluate(&p).unwrap()).collect();
                let direct: Vec<_> = at_p.minors_of_size(r).iter().map(|g| g.constant_term()).collect();
                prop_assert_eq!(evaluated, direct);
            }
        }
    }

    #[test]
    fn invert_formal_round_trip(seed in any::<u64>(), prime in any::<bool>(), s in 1usize..=4, n in 1u32..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dom = domain(prime);
        let ring = Ring::numbered(dom, "x", s);
        let order = TruncationOrder::new(n).unwrap();
        let lin = random_invertible(&mut rng, dom, s);
        let comps = FormalMap::linear(&ring, &lin).unwrap().components().iter()
            .map(|c| c + &random_polynomial(&mut rng, &ring, 2, n.max(2), 0.3))
            .collect();
        let f = FormalMap::new(&ring, comps).unwrap();
        let g = invert_formal(&f, order).unwrap();
        let id = FormalMap::identity(&ring).truncate(order);
        prop_assert_eq!(f.compose(&g, order).unwrap(), id.clone());
        prop_assert_eq!(g.compose(&f, order).unwrap(), id);
    }
}

#[test]
fn minors_conventions_grid() {
    let ring = Ring::numbered(Domain::Rational, "x", 2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for rows in 0..=4 {
        for cols in 0..=4 {
            let m = random_matrix(&mut rng, &ring, rows, cols);
            for r in -2..=0 {
                assert_eq!(m.minors_of_size(r), vec![Polynomial::one(&ring)]);
            }
            for r in rows.min(cols) as i64 + 1..=5 {
                assert!(m.minors_of_size(r).is_empty());
            }
            if rows.min(cols) >= 1 {
                assert_eq!(m.minors_of_size(1), m.entries().to_vec());
            }
        }
    }
}

#[test]
fn singular_linear_part_is_rejected() {
    let ring = Ring::numbered(Domain::Rational, "x", 2);
    let x = Polynomial::var(&ring, 0);
    let f = FormalMap::new(&ring, vec![x.clone(), &x * &x]).unwrap();
    let err = invert_formal(&f, TruncationOrder::new(3).unwrap()).unwrap_err();
    assert_eq!(err.to_string(), "not a formal isomorphism");
}
