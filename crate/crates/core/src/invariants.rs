//! Closed-form singularity invariants of `M_k(a, b)`.

use alloc::vec::Vec;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::determinantal::{dimension, singular_locus_index, GenericShape, SingularLocus};
use crate::error::{Error, Result};
use crate::matrix::binomial;
use crate::tower::{lct_from_tower, resolve_tower, zeta_poles_from_tower, TowerReport};

fn ratio(n: usize, d: usize) -> Rational64 {
    Rational64::new(n as i64, d as i64)
}

/// `min { (a-i)(b-i) / (a-k+1-i) : i = 0..=a-k }`.
pub fn lct(shape: GenericShape, k: usize) -> Result<Rational64> {
    shape.check_k(k)?;
    let (a, b) = (shape.a(), shape.b());
    Ok((0..=a - k)
        .map(|i| ratio((a - i) * (b - i), a - k + 1 - i))
        .min()
        .expect("nonempty range"))
}

/// Roots of a Bernstein–Sato polynomial, listed from smallest magnitude.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFunction {
    pub roots: Vec<Rational64>,
}

impl BFunction {
    pub fn smallest_magnitude_root(&self) -> Option<Rational64> {
        self.roots.iter().copied().min_by_key(|r| r.abs())
    }

    pub fn has_root(&self, r: Rational64) -> bool {
        self.roots.contains(&r)
    }

    pub fn evaluate(&self, s: Rational64) -> Rational64 {
        self.roots.iter().fold(Rational64::one(), |acc, r| acc * (s - r))
    }
}

/// `b(s) = ∏_{i=b-a+1}^{b} (s + i)` for the maximal minors `J_1`.
pub fn b_function_det(shape: GenericShape) -> BFunction {
    let (a, b) = (shape.a(), shape.b());
    BFunction { roots: (b - a + 1..=b).map(|i| -Rational64::from_integer(i as i64)).collect() }
}

/// Topological zeta function with simple poles, `Z(s) = ∏ 1/(1 - s/α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaFunction {
    /// Distinct poles in increasing order.
    pub poles: Vec<Rational64>,
}

impl ZetaFunction {
    pub fn from_poles(mut poles: Vec<Rational64>) -> Self {
        poles.sort();
        poles.dedup();
        ZetaFunction { poles }
    }

    /// `None` at a pole.
    pub fn evaluate(&self, s: Rational64) -> Option<Rational64> {
        self.poles.iter().try_fold(Rational64::one(), |acc, &alpha| {
            let f = Rational64::one() - s / alpha;
            (!f.is_zero()).then(|| acc / f)
        })
    }
}

fn require_square(shape: GenericShape, what: &str) -> Result<()> {
    if shape.a() != shape.b() {
        return Err(Error::input(alloc::format!("{what} formula requires a=b")));
    }
    Ok(())
}

/// Poles `-(a-i)^2 / (a-k+1-i)`, `i = 0..=a-k`, of the square case.
pub fn top_zeta_det(shape: GenericShape, k: usize) -> Result<ZetaFunction> {
    require_square(shape, "zeta")?;
    shape.check_k(k)?;
    let a = shape.a();
    Ok(ZetaFunction::from_poles(
        (0..=a - k).map(|i| -ratio((a - i) * (a - i), a - k + 1 - i)).collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stratum {
    /// The stratum is `M_t \ M_{t+1}`.
    pub t: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerObstruction {
    pub value: u64,
    pub strata: Vec<Stratum>,
}

/// Local Euler obstruction `C(a, a-k)` at the origin, plus the Whitney strata.
pub fn euler_obstruction(shape: GenericShape, k: usize) -> Result<EulerObstruction> {
    shape.check_k(k)?;
    let a = shape.a();
    let strata = (k..=a)
        .map(|t| Ok(Stratum { t, dim: dimension(shape, t)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(EulerObstruction { value: binomial(a as u64, (a - k) as u64), strata })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MldTarget {
    /// Along the next stratum `M_{k+1}`.
    NextStratum,
    /// At a point of `M_{k'} \ M_{k'+1}`.
    Point { k_prime: usize },
}

/// Minimal log discrepancies of `M_k`, square case only.
pub fn mld(shape: GenericShape, k: usize, target: MldTarget) -> Result<usize> {
    require_square(shape, "mld")?;
    shape.check_k(k)?;
    let a = shape.a();
    match target {
        // For k = a the formula value is still returned; callers see the
        // emptiness of M_{a+1} through `MldData::next_stratum_empty`.
        MldTarget::NextStratum => Ok(k + 1),
        MldTarget::Point { k_prime } if (k..=a).contains(&k_prime) => Ok(a * a - k * k_prime),
        MldTarget::Point { k_prime } => Err(Error::input(alloc::format!(
            "k' = {k_prime} outside {k}..={a}"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MldData {
    pub along_next: usize,
    pub next_stratum_empty: bool,
    /// `(k', mld at a point of M_{k'} \ M_{k'+1})` for `k <= k' <= a`.
    pub at_points: Vec<(usize, usize)>,
}

/// `b(s) Z(s)` written as `constant * ∏ (s - r)` over the roots left after
/// cancelling poles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredProduct {
    pub constant: Rational64,
    pub roots: Vec<Rational64>,
}

impl FactoredProduct {
    pub fn evaluate(&self, s: Rational64) -> Rational64 {
        self.roots.iter().fold(self.constant, |acc, r| acc * (s - r))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyCertificate {
    pub a: usize,
    /// `(pole, root)` pairs.
    pub matches: Vec<(Rational64, Rational64)>,
    pub unmatched_poles: Vec<Rational64>,
    /// Present only when every pole is matched.
    pub product: Option<FactoredProduct>,
}

impl MonodromyCertificate {
    pub fn passed(&self) -> bool {
        self.unmatched_poles.is_empty()
    }
}

/// Matches zeta poles to b-function roots.
pub fn monodromy_certificate(a: usize, b: &BFunction, z: &ZetaFunction) -> MonodromyCertificate {
    let mut matches = Vec::new();
    let mut unmatched_poles = Vec::new();
    let mut remaining = b.roots.clone();
    for &p in &z.poles {
        if let Some(pos) = remaining.iter().position(|&r| r == p) {
            matches.push((p, remaining.remove(pos)));
        } else {
            unmatched_poles.push(p);
        }
    }
    let product = unmatched_poles.is_empty().then(|| FactoredProduct {
        constant: z.poles.iter().fold(Rational64::one(), |acc, &p| acc * -p),
        roots: remaining,
    });
    MonodromyCertificate { a, matches, unmatched_poles, product }
}

/// Monodromy check for the square maximal-minor case `M_1(a, a)`.
pub fn monodromy_check(a: usize) -> Result<MonodromyCertificate> {
    let shape = GenericShape::new(a, a)?;
    Ok(monodromy_certificate(a, &b_function_det(shape), &top_zeta_det(shape, 1)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub shape: GenericShape,
    pub k: usize,
    pub dimension: usize,
    pub codimension: usize,
    pub singular_locus: SingularLocus,
    pub lct: Rational64,
    /// Only for `k = 1`.
    pub b_function: Option<BFunction>,
    /// Only for `a = b`.
    pub zeta: Option<ZetaFunction>,
    pub euler_obstruction: EulerObstruction,
    /// Only for `a = b`.
    pub mld: Option<MldData>,
    /// Only for `a = b`, `k = 1`.
    pub monodromy: Option<MonodromyCertificate>,
    pub tower: TowerReport,
}

/// Assembles all invariants and refuses to emit a report whose internal
/// cross-checks disagree.
pub fn invariant_report(shape: GenericShape, k: usize) -> Result<InvariantReport> {
    let dim = dimension(shape, k)?;
    let square = shape.a() == shape.b();
    let lct_value = lct(shape, k)?;
    let b_function = (k == 1).then(|| b_function_det(shape));
    let zeta = if square { Some(top_zeta_det(shape, k)?) } else { None };
    let mld_data = if square {
        Some(MldData {
            along_next: mld(shape, k, MldTarget::NextStratum)?,
            next_stratum_empty: k == shape.a(),
            at_points: (k..=shape.a())
                .map(|kp| Ok((kp, mld(shape, k, MldTarget::Point { k_prime: kp })?)))
                .collect::<Result<Vec<_>>>()?,
        })
    } else {
        None
    };
    let monodromy = if square && k == 1 { Some(monodromy_check(shape.a())?) } else { None };
    let tower = resolve_tower(shape, k)?;

    let fail = |m: &str| Err(Error::Certificate(alloc::format!("({}, {}, {k}): {m}", shape.a(), shape.b())));
    if lct_from_tower(&tower) != lct_value {
        return fail("lct differs from the resolution tower");
    }
    if let Some(bf) = &b_function {
        if bf.smallest_magnitude_root().map(|r| -r) != Some(lct_value) {
            return fail("lct differs from the smallest b-function root");
        }
    }
    if let Some(z) = &zeta {
        if zeta_poles_from_tower(&tower)? != z.poles {
            return fail("zeta poles differ from the resolution tower");
        }
    }
    if let Some(m) = &mld_data {
        if m.at_points.first() != Some(&(k, dim)) {
            return fail("mld at a smooth point differs from the dimension");
        }
    }
    if monodromy.as_ref().is_some_and(|c| !c.passed()) {
        return fail("monodromy certificate failed");
    }

    Ok(InvariantReport {
        shape,
        k,
        dimension: dim,
        codimension: shape.ambient_dim() - dim,
        singular_locus: singular_locus_index(shape, k)?,
        lct: lct_value,
        b_function,
        zeta,
        euler_obstruction: euler_obstruction(shape, k)?,
        mld: mld_data,
        monodromy,
        tower,
    })
}
