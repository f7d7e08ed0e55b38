//! Petri tensors, the universal matrix of a truncated L∞ pair, and the jet-level
//! straightening of the universal matrix onto its linear part.
//!
//! Conventions: `H¹` has dimension `s` with dual coordinates `x1..xs`, `V⁰` has
//! dimension `l`, `V¹` has dimension `lp`. Matrices are `lp x l` (rows index
//! `V¹`, columns index `V⁰`).

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::formal::{invert_formal, FormalMap, TruncationOrder};
use crate::linalg::DenseMatrix;
use crate::matrix::PolyMatrix;
use crate::poly::{monomials_below, Monomial, Polynomial, Ring};
use crate::scalar::{Domain, Scalar};

/// Bilinear map `H¹ ⊗ V⁰ -> V¹`, stored densely at index `(t * l + σ) * lp + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriTensor {
    domain: Domain,
    s: usize,
    l: usize,
    lp: usize,
    coeffs: Vec<Scalar>,
}

impl PetriTensor {
    pub fn new(domain: Domain, s: usize, l: usize, lp: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != s * l * lp {
            return Err(Error::input(alloc::format!(
                "Petri tensor needs s*l*lp = {} coefficients, got {}",
                s * l * lp,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| c.domain() != domain) {
            return Err(Error::input("Petri tensor coefficient in the wrong domain"));
        }
        Ok(PetriTensor { domain, s, l, lp, coeffs })
    }

    /// Reads the tensor off an `lp x l` matrix of linear forms.
    pub fn from_matrix(b: &PolyMatrix) -> Result<Self> {
        let ring = b.ring();
        let (s, l, lp) = (ring.nvars(), b.cols(), b.rows());
        let mut coeffs = vec![Scalar::zero(ring.domain()); s * l * lp];
        for j in 0..lp {
            for sigma in 0..l {
                let e = b.get(j, sigma);
                if e != &e.homogeneous_part(1) {
                    return Err(Error::input("Petri matrix entries must be linear forms"));
                }
                for t in 0..s {
                    coeffs[(t * l + sigma) * lp + j] = e.coeff(&unit_monomial(s, t));
                }
            }
        }
        Self::new(ring.domain(), s, l, lp, coeffs)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn lp(&self) -> usize {
        self.lp
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `e_t ⊗ σ` on the `j`-th basis vector of `V¹`.
    pub fn coefficient(&self, t: usize, sigma: usize, j: usize) -> &Scalar {
        &self.coeffs[(t * self.l + sigma) * self.lp + j]
    }

    pub fn ring(&self) -> Arc<Ring> {
        Ring::numbered(self.domain, "x", self.s)
    }

    /// The `lp x l` matrix `B` of linear forms.
    pub fn matrix(&self) -> PolyMatrix {
        self.matrix_in(&self.ring())
    }

    pub(crate) fn matrix_in(&self, ring: &Arc<Ring>) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(ring, self.lp, self.l);
        for j in 0..self.lp {
            for sigma in 0..self.l {
                let e = (0..self.s).fold(Polynomial::zero(ring), |acc, t| {
                    &acc + &Polynomial::var(ring, t).scale(self.coefficient(t, sigma, j))
                });
                m.set(j, sigma, e);
            }
        }
        m
    }

    /// The `(l*lp) x s` matrix of `H¹ -> Hom(V⁰, V¹)`; row `j * l + σ`.
    pub fn map_matrix(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.domain, self.l * self.lp, self.s);
        for j in 0..self.lp {
            for sigma in 0..self.l {
                for t in 0..self.s {
                    m.set(j * self.l + sigma, t, self.coefficient(t, sigma, j).clone());
                }
            }
        }
        m
    }
}

fn unit_monomial(s: usize, t: usize) -> Monomial {
    let mut e = vec![0; s];
    e[t] = 1;
    Monomial::new(e)
}

/// Whether the `l * lp` entries of `B` are linearly independent linear forms.
pub fn petri_injective(t: &PetriTensor) -> bool {
    t.map_matrix().rank() == t.l * t.lp
}

/// Minors of size `l - k + 1` of `B`, for `1 <= k <= l`.
pub fn tangent_cone_ideal(t: &PetriTensor, k: usize) -> Result<Vec<Polynomial>> {
    if k == 0 || k > t.l {
        return Err(Error::input(alloc::format!("k = {k} outside 1..={}", t.l)));
    }
    Ok(t.matrix().minors_of_size((t.l - k + 1) as i64))
}

/// Basis of the kernel of `ω -> B(ω)`, the tangent space of the jump locus
/// at `k = l`.
pub fn tangent_space_jump_locus(t: &PetriTensor) -> Vec<Vec<Scalar>> {
    if t.l * t.lp == 0 {
        return (0..t.s)
            .map(|i| (0..t.s).map(|j| Scalar::from_i64(t.domain, i64::from(i == j))).collect())
            .collect();
    }
    t.map_matrix().kernel()
}

/// Truncated L∞ pair concentrated in degrees 0 and 1 with zero differentials:
/// for `n = 1..=nmax`, a symmetric tensor `m_{n+1} : Sym^n(H¹) ⊗ V⁰ -> V¹`.
///
/// `maps[n-1]` holds `m_{n+1}` densely at index
/// `((t_1 * s + t_2) * s + ... + t_n) * l + σ) * lp + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LInfPairData {
    domain: Domain,
    s: usize,
    l: usize,
    lp: usize,
    maps: Vec<Vec<Scalar>>,
}

impl LInfPairData {
    pub fn new(domain: Domain, s: usize, l: usize, lp: usize, maps: Vec<Vec<Scalar>>) -> Result<Self> {
        for (idx, m) in maps.iter().enumerate() {
            let n = idx + 1;
            let want = s.pow(n as u32) * l * lp;
            if m.len() != want {
                return Err(Error::input(alloc::format!(
                    "m_{} needs {want} coefficients, got {}",
                    n + 1,
                    m.len()
                )));
            }
            if m.iter().any(|c| c.domain() != domain) {
                return Err(Error::input("L-infinity coefficient in the wrong domain"));
            }
        }
        let data = LInfPairData { domain, s, l, lp, maps };
        for n in 2..=data.nmax() {
            if let Some(bad) = data.asymmetry(n) {
                return Err(Error::input(alloc::format!(
                    "m_{} is not symmetric in its H^1 slots at tuple {bad:?}",
                    n + 1
                )));
            }
        }
        Ok(data)
    }

    /// Data whose only structure map is the Petri tensor.
    pub fn from_petri(t: &PetriTensor) -> Self {
        LInfPairData {
            domain: t.domain,
            s: t.s,
            l: t.l,
            lp: t.lp,
            maps: vec![t.coeffs.clone()],
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn lp(&self) -> usize {
        self.lp
    }

    /// Largest `n` with `m_{n+1}` given; higher maps are zero.
    pub fn nmax(&self) -> usize {
        self.maps.len()
    }

    /// Raw coefficient array of `m_{n+1}`.
    pub fn map(&self, n: usize) -> Option<&[Scalar]> {
        self.maps.get(n.checked_sub(1)?).map(Vec::as_slice)
    }

    pub fn value(&self, tuple: &[usize], sigma: usize, j: usize) -> Scalar {
        match self.map(tuple.len()) {
            Some(m) => m[self.index(tuple, sigma, j)].clone(),
            None => Scalar::zero(self.domain),
        }
    }

    fn index(&self, tuple: &[usize], sigma: usize, j: usize) -> usize {
        let t = tuple.iter().fold(0, |acc, &ti| acc * self.s + ti);
        (t * self.l + sigma) * self.lp + j
    }

    fn asymmetry(&self, n: usize) -> Option<Vec<usize>> {
        for tuple in tuples(self.s, n) {
            let mut sorted = tuple.clone();
            sorted.sort_unstable();
            for sigma in 0..self.l {
                for j in 0..self.lp {
                    if self.value(&tuple, sigma, j) != self.value(&sorted, sigma, j) {
                        return Some(tuple);
                    }
                }
            }
        }
        None
    }

    /// The Petri tensor `m_2` (zero when no map is given).
    pub fn petri(&self) -> PetriTensor {
        let coeffs = self
            .maps
            .first()
            .cloned()
            .unwrap_or_else(|| vec![Scalar::zero(self.domain); self.s * self.l * self.lp]);
        PetriTensor { domain: self.domain, s: self.s, l: self.l, lp: self.lp, coeffs }
    }
}

/// All ordered `n`-tuples over `0..s`, lexicographically.
pub(crate) fn tuples(s: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..s).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// `d_univ` modulo degree `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalMatrix {
    pub matrix: PolyMatrix,
    pub order: TruncationOrder,
}

impl UniversalMatrix {
    /// Matrix of degree-one parts of the entries.
    pub fn linear_part(&self) -> PolyMatrix {
        self.matrix.map_entries(|p| Ok(p.homogeneous_part(1))).expect("same shape")
    }
}

fn factorial(domain: Domain, n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(domain), |acc, i| &acc * &Scalar::from_i64(domain, i))
}

/// Entry `(j, σ)` is `Σ_n (1/n!) m_{n+1}(ω^n, σ)_j` with `ω = Σ e_t x_t`,
/// summed over `n < order` (and `n <= nmax`).
pub fn universal_matrix(d: &LInfPairData, order: TruncationOrder) -> Result<UniversalMatrix> {
    let ring = Ring::numbered(d.domain, "x", d.s);
    let mut entries: Vec<BTreeMap<Vec<u32>, Scalar>> = vec![BTreeMap::new(); d.l * d.lp];
    let top = d.nmax().min(order.get().saturating_sub(1) as usize);
    for n in 1..=top {
        let inv_fact = factorial(d.domain, n).inverse().ok_or_else(|| {
            Error::input(alloc::format!("{n}! vanishes in characteristic {}", d.domain.characteristic()))
        })?;
        for tuple in tuples(d.s, n) {
            let mut exps = vec![0u32; d.s];
            for &t in &tuple {
                exps[t] += 1;
            }
            for j in 0..d.lp {
                for sigma in 0..d.l {
                    let v = d.value(&tuple, sigma, j);
                    if v.is_zero() {
                        continue;
                    }
                    let slot = entries[j * d.l + sigma]
                        .entry(exps.clone())
                        .or_insert_with(|| Scalar::zero(d.domain));
                    *slot = &*slot + &(&v * &inv_fact);
                }
            }
        }
    }
    let polys = entries
        .into_iter()
        .map(|terms| Polynomial::from_terms(&ring, terms))
        .collect::<Result<Vec<_>>>()?;
    Ok(UniversalMatrix { matrix: PolyMatrix::new(&ring, d.lp, d.l, polys)?, order })
}

/// Formal coordinate change `φ` with `B(φ(x)) ≡ u(x)` modulo degree `order`.
///
/// The entry forms of `B` are completed by standard coordinates to a basis
/// `Λ`; the map sending those coordinates to the entries of `u` (identity on
/// the completion) is then transported back through `Λ^{-1}`.
pub fn straighten_coordinates(
    u: &UniversalMatrix,
    t: &PetriTensor,
    order: TruncationOrder,
) -> Result<FormalMap> {
    if !petri_injective(t) {
        return Err(Error::PetriNotInjective);
    }
    let ring = u.matrix.ring().clone();
    if u.matrix.rows() != t.lp || u.matrix.cols() != t.l || ring.nvars() != t.s {
        return Err(Error::LinearPartMismatch);
    }
    let b = t.matrix_in(&ring);
    if u.linear_part() != b || u.matrix.entries().iter().any(|p| !p.constant_term().is_zero()) {
        return Err(Error::LinearPartMismatch);
    }

    let s = t.s;
    let entry_rows = t.map_matrix();
    let mut lambda_rows: Vec<Vec<Scalar>> = (0..entry_rows.rows()).map(|r| entry_rows.row(r).to_vec()).collect();
    let mut new_coords: Vec<Polynomial> = u.matrix.entries().iter().map(|p| p.truncate(order)).collect();
    for c in 0..s {
        if lambda_rows.len() == s {
            break;
        }
        let mut candidate = lambda_rows.clone();
        candidate.push((0..s).map(|i| Scalar::from_i64(t.domain, i64::from(i == c))).collect());
        if DenseMatrix::from_rows(t.domain, candidate.clone()).rank() == candidate.len() {
            lambda_rows = candidate;
            new_coords.push(Polynomial::var(&ring, c));
        }
    }
    let lambda = DenseMatrix::from_rows(t.domain, lambda_rows);
    let lambda_inv = lambda.inverse().ok_or(Error::PetriNotInjective)?;
    let comps = (0..s)
        .map(|i| {
            (0..s).fold(Polynomial::zero(&ring), |acc, r| &acc + &new_coords[r].scale(lambda_inv.get(i, r)))
        })
        .collect();
    FormalMap::new(&ring, comps)
}

/// Coefficients `c_m` with `target ≡ Σ c_m gens[m]` modulo degree `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipWitness {
    pub target: usize,
    pub coefficients: Vec<Polynomial>,
}

impl MembershipWitness {
    pub fn verify(&self, target: &Polynomial, gens: &[Polynomial], order: TruncationOrder) -> bool {
        if self.coefficients.len() != gens.len() {
            return false;
        }
        let combo = self
            .coefficients
            .iter()
            .zip(gens)
            .fold(Polynomial::zero(target.ring()), |acc, (c, g)| &acc + &c.mul_truncated(g, Some(order)));
        combo.truncate(order) == target.truncate(order)
    }
}

/// Solves for a membership witness by linear algebra on the coefficient space
/// of `K[x]/m^order`.
pub fn ideal_membership(
    target: &Polynomial,
    gens: &[Polynomial],
    order: TruncationOrder,
) -> Option<Vec<Polynomial>> {
    let ring = target.ring().clone();
    let domain = ring.domain();
    let monos = monomials_below(ring.nvars(), order.get());
    let index: BTreeMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut columns: Vec<(usize, &Monomial)> = Vec::new();
    let mut data: Vec<Vec<Scalar>> = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        let Some(ord) = g.order() else { continue };
        for mono in &monos {
            if mono.degree() + ord >= order.get() {
                continue;
            }
            let shifted = Polynomial::monomial(&ring, mono.clone(), Scalar::one(domain)).mul_truncated(g, Some(order));
            let mut col = vec![Scalar::zero(domain); monos.len()];
            for (m, c) in shifted.terms() {
                col[index[m]] = c.clone();
            }
            columns.push((gi, mono));
            data.push(col);
        }
    }
    let rhs: Vec<Scalar> = monos.iter().map(|m| target.coeff(m)).collect();
    let mut coefficients = vec![Polynomial::zero(&ring); gens.len()];
    if columns.is_empty() {
        return rhs.iter().all(Scalar::is_zero).then_some(coefficients);
    }
    let mut a = DenseMatrix::zeros(domain, monos.len(), columns.len());
    for (c, col) in data.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            a.set(r, c, v.clone());
        }
    }
    let x = a.solve(&rhs)?;
    for ((gi, mono), v) in columns.iter().zip(x) {
        coefficients[*gi] = &coefficients[*gi] + &Polynomial::monomial(&ring, (*mono).clone(), v);
    }
    Some(coefficients)
}

fn containment(
    targets: &[Polynomial],
    gens: &[Polynomial],
    order: TruncationOrder,
    label: &str,
) -> Result<Vec<MembershipWitness>> {
    targets
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let coefficients = ideal_membership(g, gens, order).ok_or_else(|| {
                Error::Certificate(alloc::format!("{label}: generator {i} ({g}) not in the ideal"))
            })?;
            let w = MembershipWitness { target: i, coefficients };
            if !w.verify(g, gens, order) {
                return Err(Error::Certificate(alloc::format!("{label}: witness {i} does not verify")));
            }
            Ok(w)
        })
        .collect()
}

/// Two-sided ideal containment between `J_k(d_univ)` and the transported
/// `J_k(B)`, modulo degree `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentConeCertificate {
    pub k: usize,
    pub order: TruncationOrder,
    pub universal: UniversalMatrix,
    /// `φ` with `B ∘ φ ≡ d_univ`.
    pub straightening: FormalMap,
    /// `ψ = φ^{-1}`, so `d_univ ∘ ψ ≡ B`.
    pub inverse: FormalMap,
    /// Minors of `d_univ`.
    pub universal_generators: Vec<Polynomial>,
    /// Minors of `B`, pulled back along `φ`.
    pub transported_generators: Vec<Polynomial>,
    /// Minors of `d_univ ∘ ψ`.
    pub straightened_generators: Vec<Polynomial>,
    /// Minors of `B`.
    pub cone_generators: Vec<Polynomial>,
    /// universal ⊆ (transported) and back.
    pub forward: Vec<MembershipWitness>,
    pub backward: Vec<MembershipWitness>,
    /// straightened ⊆ (cone) and back.
    pub cone_forward: Vec<MembershipWitness>,
    pub cone_backward: Vec<MembershipWitness>,
}

impl TangentConeCertificate {
    pub fn is_identity(&self) -> bool {
        self.straightening.is_identity()
    }

    /// Re-checks every witness from scratch.
    pub fn verify(&self) -> bool {
        let check = |ws: &[MembershipWitness], targets: &[Polynomial], gens: &[Polynomial]| {
            ws.len() == targets.len()
                && ws.iter().all(|w| w.verify(&targets[w.target], gens, self.order))
        };
        check(&self.forward, &self.universal_generators, &self.transported_generators)
            && check(&self.backward, &self.transported_generators, &self.universal_generators)
            && check(&self.cone_forward, &self.straightened_generators, &self.cone_generators)
            && check(&self.cone_backward, &self.cone_generators, &self.straightened_generators)
    }
}

pub fn verify_tangent_cone_equiv(
    d: &LInfPairData,
    k: usize,
    order: TruncationOrder,
) -> Result<TangentConeCertificate> {
    let t = d.petri();
    if !petri_injective(&t) {
        return Err(Error::PetriNotInjective);
    }
    if k == 0 || k > t.l {
        return Err(Error::input(alloc::format!("k = {k} outside 1..={}", t.l)));
    }
    let u = universal_matrix(d, order)?;
    let ring = u.matrix.ring().clone();
    let phi = straighten_coordinates(&u, &t, order)?;
    let psi = invert_formal(&phi, order)?;
    let b = t.matrix_in(&ring);

    let b_phi = b.map_entries(|e| phi.pull_back(e, order))?;
    if b_phi != u.matrix.truncate(order) {
        return Err(Error::Certificate("B ∘ φ differs from d_univ".into()));
    }

    let size = (t.l - k + 1) as i64;
    let trunc = |v: Vec<Polynomial>| -> Vec<Polynomial> { v.into_iter().map(|p| p.truncate(order)).collect() };
    let universal_generators = trunc(u.matrix.minors_of_size(size));
    let cone_generators = b.minors_of_size(size);
    let transported_generators = cone_generators
        .iter()
        .map(|g| phi.pull_back(g, order))
        .collect::<Result<Vec<_>>>()?;
    let u_psi = u.matrix.map_entries(|e| psi.pull_back(e, order))?;
    let straightened_generators = trunc(u_psi.minors_of_size(size));

    let forward = containment(&universal_generators, &transported_generators, order, "J(d_univ) ⊆ φ*J(B)")?;
    let backward = containment(&transported_generators, &universal_generators, order, "φ*J(B) ⊆ J(d_univ)")?;
    let cone_forward = containment(&straightened_generators, &cone_generators, order, "ψ*J(d_univ) ⊆ J(B)")?;
    let cone_backward = containment(&cone_generators, &straightened_generators, order, "J(B) ⊆ ψ*J(d_univ)")?;

    Ok(TangentConeCertificate {
        k,
        order,
        universal: u,
        straightening: phi,
        inverse: psi,
        universal_generators,
        transported_generators,
        straightened_generators,
        cone_generators,
        forward,
        backward,
        cone_forward,
        cone_backward,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_i64(Domain::Rational, n)
    }

    fn order(n: u32) -> TruncationOrder {
        TruncationOrder::new(n).unwrap()
    }

    /// `B_{jσ} = x_{jσ}` on `s = l * lp` (+ `extra`) variables.
    fn generic(l: usize, lp: usize, extra: usize) -> PetriTensor {
        let s = l * lp + extra;
        let mut c = vec![q(0); s * l * lp];
        for j in 0..lp {
            for sigma in 0..l {
                let t = j * l + sigma;
                c[(t * l + sigma) * lp + j] = q(1);
            }
        }
        PetriTensor::new(Domain::Rational, s, l, lp, c).unwrap()
    }

    #[test]
    fn injectivity_examples() {
        let g = generic(2, 2, 0);
        assert_eq!(alloc::format!("{}", g.matrix().get(0, 1)), "x2");
        assert!(petri_injective(&g));
        // x1 in two positions, s = 3
        let mut c = vec![q(0); 3 * 2 * 2];
        let at = |t: usize, sigma: usize, j: usize| (t * 2 + sigma) * 2 + j;
        c[at(0, 0, 0)] = q(1);
        c[at(0, 1, 1)] = q(1);
        c[at(1, 1, 0)] = q(1);
        c[at(2, 0, 1)] = q(1);
        let rep = PetriTensor::new(Domain::Rational, 3, 2, 2, c).unwrap();
        assert!(!petri_injective(&rep));
        assert!(petri_injective(&generic(1, 1, 0)));
    }

    #[test]
    fn tangent_cone_examples() {
        let g = generic(1, 1, 0);
        assert_eq!(tangent_cone_ideal(&g, 1).unwrap(), vec![Polynomial::var(&g.ring(), 0)]);
        let g = generic(2, 2, 0);
        let gens = tangent_cone_ideal(&g, 1).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(alloc::format!("{}", gens[0]), "x1*x4 - x2*x3");
        let g = generic(2, 3, 0);
        let gens = tangent_cone_ideal(&g, 2).unwrap();
        assert_eq!(gens.len(), 6);
        assert!(gens.iter().all(|p| p.degree() == Some(1)));
        assert!(tangent_cone_ideal(&g, 3).is_err());
    }

    #[test]
    fn tangent_space_examples() {
        assert!(tangent_space_jump_locus(&generic(2, 2, 0)).is_empty());
        let k = tangent_space_jump_locus(&generic(2, 2, 1));
        assert_eq!(k, vec![vec![q(0), q(0), q(0), q(0), q(1)]]);
        let zero = PetriTensor::new(Domain::Rational, 1, 1, 1, vec![q(0)]).unwrap();
        assert_eq!(tangent_space_jump_locus(&zero), vec![vec![q(1)]]);
    }

    /// s = 2, l = lp = 1, m_2 = x1, m_3(e1, e2) = m_3(e2, e1) = 1.
    fn one_by_one() -> LInfPairData {
        LInfPairData::new(
            Domain::Rational,
            2,
            1,
            1,
            vec![vec![q(1), q(0)], vec![q(0), q(1), q(1), q(0)]],
        )
        .unwrap()
    }

    #[test]
    fn universal_matrix_examples() {
        let g = generic(2, 2, 0);
        let u = universal_matrix(&LInfPairData::from_petri(&g), order(4)).unwrap();
        assert_eq!(u.matrix, g.matrix());

        let u = universal_matrix(&one_by_one(), order(4)).unwrap();
        assert_eq!(alloc::format!("{}", u.matrix.get(0, 0)), "x1*x2 + x1");

        let deg = LInfPairData::new(Domain::Rational, 1, 1, 1, vec![vec![q(0)], vec![q(2)]]).unwrap();
        let u = universal_matrix(&deg, order(4)).unwrap();
        assert_eq!(alloc::format!("{}", u.matrix.get(0, 0)), "x1^2");
        assert!(!petri_injective(&deg.petri()));
        assert_eq!(
            straighten_coordinates(&u, &deg.petri(), order(4)),
            Err(Error::PetriNotInjective)
        );
        assert_eq!(verify_tangent_cone_equiv(&deg, 1, order(4)).unwrap_err(), Error::PetriNotInjective);
    }

    #[test]
    fn rejects_asymmetric_maps() {
        let bad = LInfPairData::new(Domain::Rational, 2, 1, 1, vec![vec![q(1), q(0)], vec![q(0), q(1), q(2), q(0)]]);
        assert!(bad.is_err());
    }

    #[test]
    fn straightening_examples() {
        let g = generic(2, 2, 0);
        let u = universal_matrix(&LInfPairData::from_petri(&g), order(4)).unwrap();
        assert!(straighten_coordinates(&u, &g, order(4)).unwrap().is_identity());

        let d = one_by_one();
        let u = universal_matrix(&d, order(4)).unwrap();
        let phi = straighten_coordinates(&u, &d.petri(), order(4)).unwrap();
        let r = u.matrix.ring();
        let (x1, x2) = (Polynomial::var(r, 0), Polynomial::var(r, 1));
        assert_eq!(phi.components(), &[&x1 + &(&x1 * &x2), x2]);
    }

    #[test]
    fn certificate_examples() {
        let g = generic(2, 2, 0);
        let cert = verify_tangent_cone_equiv(&LInfPairData::from_petri(&g), 1, order(4)).unwrap();
        assert!(cert.is_identity());
        assert!(cert.verify());

        let cert = verify_tangent_cone_equiv(&one_by_one(), 1, order(4)).unwrap();
        assert!(cert.verify());
        // x1 + x1*x2 = (1 + x2) * x1: the backward witness is the inverse unit.
        let r = cert.universal.matrix.ring();
        let x1 = Polynomial::var(r, 0);
        assert_eq!(cert.transported_generators[0], &x1 + &(&x1 * &Polynomial::var(r, 1)));
    }

    #[test]
    fn membership_solver() {
        let r = Ring::numbered(Domain::Rational, "x", 2);
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let unit = &Polynomial::one(&r) + &y;
        let target = &x * &unit;
        let w = ideal_membership(&x, core::slice::from_ref(&target), order(4)).unwrap();
        assert!(MembershipWitness { target: 0, coefficients: w }.verify(&x, &[target], order(4)));
        assert!(ideal_membership(&y, core::slice::from_ref(&x), order(4)).is_none());
        // y^4 vanishes modulo degree 4
        assert!(ideal_membership(&y.pow(4), &[x], order(4)).is_some());
    }
}
