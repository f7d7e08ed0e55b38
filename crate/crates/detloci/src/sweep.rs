//! Cross-module consistency sweep: closed formulas against the blowup tower,
//! point counts against brute force, jump ideals against pointwise ranks and
//! the universal matrix against its straightening certificate.

use detloci_core::determinantal::{
    count_points_brute_force, count_points_rank_le, interpolated_count_degree, GenericShape,
};
use detloci_core::invariants::{b_function_det, lct, monodromy_certificate, top_zeta_det, BFunction, ZetaFunction};
use detloci_core::jump::{jump_ideal, specialization_check};
use detloci_core::petri::{universal_matrix, verify_tangent_cone_equiv, LInfPairData};
use detloci_core::random::{random_complex, random_pair_data, random_point};
use detloci_core::tower::{lct_from_tower, resolve_tower, zeta_poles_from_tower};
use detloci_core::{Domain, Error, Result, Ring, TruncationOrder};
use num_bigint::BigUint;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const MAX_SIZE: usize = 8;

/// The closed formulas under test. Swapping one out lets a test confirm
/// that the sweep notices a wrong formula.
#[derive(Clone, Copy)]
pub struct Formulas {
    pub lct: fn(GenericShape, usize) -> Result<Rational64>,
    pub zeta: fn(GenericShape, usize) -> Result<ZetaFunction>,
    pub b_function: fn(GenericShape) -> BFunction,
    pub count: fn(GenericShape, usize, u64) -> Result<BigUint>,
}

impl Default for Formulas {
    fn default() -> Self {
        Formulas { lct, zeta: top_zeta_det, b_function: b_function_det, count: count_points_rank_le }
    }
}

/// Sizes of the randomized suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RandomBudget {
    pub complexes: usize,
    pub points_per_complex: usize,
    pub pair_instances: usize,
    pub jet_order: u32,
}

impl RandomBudget {
    pub fn for_size(max_size: usize) -> Self {
        RandomBudget {
            complexes: 10 * max_size,
            points_per_complex: 20,
            pair_instances: 5 * max_size,
            jet_order: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteSummary {
    pub name: &'static str,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl SuiteSummary {
    fn new(name: &'static str) -> Self {
        SuiteSummary { name, cases: 0, passed: 0, failed: 0, first_failure: None }
    }

    fn record(&mut self, outcome: std::result::Result<(), String>) {
        self.cases += 1;
        match outcome {
            Ok(()) => self.passed += 1,
            Err(msg) => {
                self.failed += 1;
                self.first_failure.get_or_insert(msg);
            }
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepSummary {
    pub max_size: usize,
    pub seed: u64,
    pub budget: RandomBudget,
    pub suites: Vec<SuiteSummary>,
    pub all_passed: bool,
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shapes(max: usize) -> impl Iterator<Item = GenericShape> {
    (1..=max).flat_map(move |a| (a..=max).map(move |b| GenericShape::new(a, b).expect("positive")))
}

fn suite_rng(seed: u64, suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ suite.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn lct_vs_tower(max: usize, f: &Formulas) -> SuiteSummary {
    let mut s = SuiteSummary::new("lct-vs-tower");
    for shape in shapes(max) {
        for k in 1..=shape.a() {
            s.record((|| {
                let tower = resolve_tower(shape, k).map_err(|e| e.to_string())?;
                let from_tower = lct_from_tower(&tower);
                let closed = (f.lct)(shape, k).map_err(|e| e.to_string())?;
                check(from_tower == closed, || {
                    format!("({}, {}, {k}): tower {from_tower} vs formula {closed}", shape.a(), shape.b())
                })
            })());
        }
    }
    s
}

pub fn zeta_vs_tower(max: usize, f: &Formulas) -> SuiteSummary {
    let mut s = SuiteSummary::new("zeta-vs-tower");
    for a in 1..=max {
        let shape = GenericShape::new(a, a).expect("positive");
        for k in 1..=a {
            s.record((|| {
                let tower = resolve_tower(shape, k).map_err(|e| e.to_string())?;
                let from_tower = zeta_poles_from_tower(&tower).map_err(|e| e.to_string())?;
                let closed = (f.zeta)(shape, k).map_err(|e| e.to_string())?;
                check(from_tower == closed.poles, || {
                    format!("({a}, {a}, {k}): tower {from_tower:?} vs formula {:?}", closed.poles)
                })
            })());
        }
    }
    s
}

pub fn b_function_vs_lct(max: usize, f: &Formulas) -> SuiteSummary {
    let mut s = SuiteSummary::new("b-function-vs-lct");
    for shape in shapes(max) {
        s.record((|| {
            let root = (f.b_function)(shape).smallest_magnitude_root().ok_or("no roots")?;
            let threshold = (f.lct)(shape, 1).map_err(|e| e.to_string())?;
            let expected = Rational64::from_integer((shape.b() - shape.a() + 1) as i64);
            check(-root == threshold && threshold == expected, || {
                format!("({}, {}): root {root}, lct {threshold}, expected {expected}", shape.a(), shape.b())
            })
        })());
    }
    s
}

pub fn monodromy(max: usize, f: &Formulas) -> SuiteSummary {
    let mut s = SuiteSummary::new("monodromy");
    for a in 1..=max {
        let shape = GenericShape::new(a, a).expect("positive");
        s.record((|| {
            let zeta = (f.zeta)(shape, 1).map_err(|e| e.to_string())?;
            let cert = monodromy_certificate(a, &(f.b_function)(shape), &zeta);
            check(cert.passed() && cert.matches.len() == a, || {
                format!("a = {a}: unmatched poles {:?}", cert.unmatched_poles)
            })
        })());
    }
    s
}

/// Formula against exhaustive enumeration for `ab <= 9`, `q` in {2, 3}, and
/// the degree of the count polynomial for shapes up to 4.
pub fn point_count(max: usize, f: &Formulas) -> SuiteSummary {
    let mut s = SuiteSummary::new("point-count");
    for shape in shapes(9).filter(|sh| sh.ambient_dim() <= 9 && sh.a() <= max) {
        for q in [2, 3] {
            for r in 0..=shape.a() {
                s.record((|| {
                    let formula = (f.count)(shape, r, q).map_err(|e| e.to_string())?;
                    let brute = count_points_brute_force(shape, r, q).map_err(|e| e.to_string())?;
                    check(formula == BigUint::from(brute), || {
                        format!("({}, {}) r={r} q={q}: formula {formula} vs brute force {brute}", shape.a(), shape.b())
                    })
                })());
            }
        }
    }
    for shape in shapes(max.min(4)) {
        for k in 1..=shape.a() {
            s.record((|| {
                let (a, b) = (shape.a(), shape.b());
                let deg = interpolated_count_degree(shape, a - k).map_err(|e| e.to_string())?;
                check(deg == (a - k) * (b + k), || format!("({a}, {b}, {k}): degree {deg}"))
            })());
        }
    }
    s
}

pub fn jump_specialization(seed: u64, budget: &RandomBudget) -> SuiteSummary {
    let mut s = SuiteSummary::new("jump-specialization");
    let mut rng = suite_rng(seed, 6);
    for n in 0..budget.complexes {
        let domain = if n % 2 == 0 { Domain::default_prime() } else { Domain::Rational };
        let ring = Ring::numbered(domain, "x", rng.gen_range(1..=3));
        let complex = random_complex(&mut rng, &ring, 4, 3, 2);
        let points: Vec<_> = (0..budget.points_per_complex)
            .map(|_| random_point(&mut rng, domain, ring.nvars()))
            .collect();
        s.record((|| {
            for i in complex.degrees() {
                for k in 1..=complex.rank(i) as i64 + 1 {
                    let rep = specialization_check(&complex, i, k, &points).map_err(|e| e.to_string())?;
                    if let Some(v) = rep.violations().next() {
                        return Err(format!(
                            "complex #{n}, i={i}, k={k}: h = {} but zero-set membership {}",
                            v.cohomology_dim, v.in_zero_set
                        ));
                    }
                    // Nesting of zero sets in k.
                    let next = jump_ideal(&complex, i, k + 1).map_err(|e| e.to_string())?;
                    for (p, c) in points.iter().zip(&rep.checks) {
                        if next.vanishes_at(p).map_err(|e| e.to_string())? && !c.in_zero_set {
                            return Err(format!("complex #{n}, i={i}: V(J_{}) not inside V(J_{k})", k + 1));
                        }
                    }
                }
            }
            Ok(())
        })());
    }
    s
}

fn random_shape<R: Rng>(rng: &mut R) -> (usize, usize, usize) {
    const SHAPES: [(usize, usize); 5] = [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2)];
    let (l, lp) = SHAPES[rng.gen_range(0..SHAPES.len())];
    let s = rng.gen_range(l * lp..=5);
    (s, l, lp)
}

pub fn universal_matrix_suite(seed: u64, budget: &RandomBudget) -> SuiteSummary {
    let mut s = SuiteSummary::new("universal-matrix");
    let mut rng = suite_rng(seed, 7);
    let order = TruncationOrder::new(budget.jet_order).expect("positive order");
    for n in 0..budget.pair_instances {
        let domain = if n % 2 == 0 { Domain::Rational } else { Domain::default_prime() };
        let (sdim, l, lp) = random_shape(&mut rng);
        let data = random_pair_data(&mut rng, domain, sdim, l, lp, 3);
        let k = rng.gen_range(1..=l);
        s.record((|| {
            let cert = verify_tangent_cone_equiv(&data, k, order).map_err(|e| e.to_string())?;
            check(cert.verify(), || format!("instance #{n}: witnesses do not re-verify"))?;
            let bare = LInfPairData::from_petri(&data.petri());
            let u = universal_matrix(&bare, order).map_err(|e| e.to_string())?;
            check(u.matrix == data.petri().matrix(), || format!("instance #{n}: d_univ differs from B"))?;
            let cert = verify_tangent_cone_equiv(&bare, k, order).map_err(|e| e.to_string())?;
            check(cert.is_identity(), || format!("instance #{n}: straightening of B is not the identity"))
        })());
    }
    s
}

pub fn run_sweep(max_size: usize, seed: u64, f: &Formulas) -> Result<SweepSummary> {
    if max_size == 0 || max_size > MAX_SIZE {
        return Err(Error::input(format!("max size must be in 1..={MAX_SIZE}, got {max_size}")));
    }
    let budget = RandomBudget::for_size(max_size);
    let suites = vec![
        lct_vs_tower(max_size, f),
        zeta_vs_tower(max_size, f),
        b_function_vs_lct(max_size, f),
        monodromy(max_size, f),
        point_count(max_size, f),
        jump_specialization(seed, &budget),
        universal_matrix_suite(seed, &budget),
    ];
    let all_passed = suites.iter().all(SuiteSummary::all_passed);
    Ok(SweepSummary { max_size, seed, budget, suites, all_passed })
}
