use detloci_core::jump::{jump_ideal, specialization_check, validate_complex, FreeComplex};
use detloci_core::random::{random_complex, random_point};
use detloci_core::{Domain, Ring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sample(seed: u64) -> (FreeComplex, Vec<Vec<detloci_core::Scalar>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let domain = if seed.is_multiple_of(2) { Domain::default_prime() } else { Domain::Rational };
    let ring = Ring::numbered(domain, "x", rng.gen_range(1..=3));
    let c = random_complex(&mut rng, &ring, 4, 3, 2);
    let pts = (0..20).map(|_| random_point(&mut rng, domain, ring.nvars())).collect();
    (c, pts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_complexes_specialize_correctly(seed in any::<u64>()) {
        let (c, pts) = sample(seed);
        prop_assert!(validate_complex(&c).unwrap().valid);
        for i in c.degrees() {
            for k in 1..=c.rank(i) as i64 + 1 {
                let rep = specialization_check(&c, i, k, &pts).unwrap();
                prop_assert!(rep.is_consistent(), "i={} k={} violations {:?}", i, k, rep.violations().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn zero_sets_are_nested(seed in any::<u64>()) {
        let (c, pts) = sample(seed);
        for i in c.degrees() {
            for k in 1..=c.rank(i) as i64 {
                let lower = jump_ideal(&c, i, k).unwrap();
                let upper = jump_ideal(&c, i, k + 1).unwrap();
                for p in &pts {
                    prop_assert!(!upper.vanishes_at(p).unwrap() || lower.vanishes_at(p).unwrap());
                }
            }
        }
    }

    #[test]
    fn block_order_does_not_matter(seed in any::<u64>()) {
        let (c, _) = sample(seed);
        for i in c.degrees() {
            let swapped = c.differential(i).block_diag(&c.differential(i - 1));
            for k in 0..=c.rank(i) as i64 + 1 {
                let ideal = jump_ideal(&c, i, k).unwrap();
                let size = c.rank(i) as i64 - k + 1;
                let mut other: Vec<_> = swapped.minors_of_size(size).into_iter()
                    .filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
                other.sort_by_key(|p| p.to_string());
                other.dedup();
                let mut ours = ideal.canonical_generators();
                ours.sort_by_key(|p| p.to_string());
                prop_assert_eq!(ours, other);
            }
        }
    }
}
