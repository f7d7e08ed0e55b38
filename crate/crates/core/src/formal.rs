//! Truncated formal power series maps: endomorphisms `x_i -> F_i(x)` of
//! `K[[x_1..x_s]]` computed modulo the `N`-th power of the maximal ideal.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::poly::{same_ring, Monomial, Polynomial, Ring};
use crate::scalar::Scalar;

/// Work modulo terms of total degree `>= N`; `N >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncationOrder(u32);

impl TruncationOrder {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("truncation order must be at least 1"));
        }
        Ok(TruncationOrder(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// A map `x_i -> F_i` with `F_i(0) = 0`, together with its linear part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalMap {
    ring: Arc<Ring>,
    components: Vec<Polynomial>,
    linear: DenseMatrix,
    linear_det: Scalar,
}

impl FormalMap {
    pub fn new(ring: &Arc<Ring>, components: Vec<Polynomial>) -> Result<Self> {
        if components.len() != ring.nvars() {
            return Err(Error::input(alloc::format!(
                "{} components for {} variables",
                components.len(),
                ring.nvars()
            )));
        }
        if components.iter().any(|c| !same_ring(c.ring(), ring)) {
            return Err(Error::input("formal map components from different rings"));
        }
        if components.iter().any(|c| !c.constant_term().is_zero()) {
            return Err(Error::input("formal map component with nonzero constant term"));
        }
        let s = ring.nvars();
        let mut linear = DenseMatrix::zeros(ring.domain(), s, s);
        for (i, c) in components.iter().enumerate() {
            for j in 0..s {
                let mut e = alloc::vec![0; s];
                e[j] = 1;
                linear.set(i, j, c.coeff(&Monomial::new(e)));
            }
        }
        let linear_det = linear.determinant();
        Ok(FormalMap { ring: ring.clone(), components, linear, linear_det })
    }

    pub fn identity(ring: &Arc<Ring>) -> Self {
        Self::new(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect())
            .expect("identity is well formed")
    }

    /// The linear map `x -> A x`.
    pub fn linear(ring: &Arc<Ring>, a: &DenseMatrix) -> Result<Self> {
        let s = ring.nvars();
        if a.rows() != s || a.cols() != s {
            return Err(Error::input("linear map has the wrong size"));
        }
        let comps = (0..s)
            .map(|i| {
                (0..s).fold(Polynomial::zero(ring), |acc, j| {
                    &acc + &Polynomial::var(ring, j).scale(a.get(i, j))
                })
            })
            .collect();
        Self::new(ring, comps)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn linear_part(&self) -> &DenseMatrix {
        &self.linear
    }

    pub fn linear_determinant(&self) -> &Scalar {
        &self.linear_det
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ring)
    }

    /// `(self ∘ inner)_i = F_i(inner(x))`, truncated at `n`.
    pub fn compose(&self, inner: &FormalMap, n: TruncationOrder) -> Result<FormalMap> {
        let comps = self
            .components
            .iter()
            .map(|c| c.compose(&inner.components, Some(n)))
            .collect::<Result<Vec<_>>>()?;
        FormalMap::new(&inner.ring, comps)
    }

    /// Applies the map to a polynomial: `p -> p(F(x))` modulo degree `n`.
    pub fn pull_back(&self, p: &Polynomial, n: TruncationOrder) -> Result<Polynomial> {
        p.compose(&self.components, Some(n))
    }

    pub fn truncate(&self, n: TruncationOrder) -> FormalMap {
        FormalMap::new(&self.ring, self.components.iter().map(|c| c.truncate(n)).collect())
            .expect("truncation keeps constant terms zero")
    }
}

/// Two-sided inverse of `f` modulo degree `n`, built one degree at a time
/// from the fixed point `G = L^{-1}(x - H(G))`, where `L` is the linear part
/// and `H` the nonlinear remainder of `f`.
pub fn invert_formal(f: &FormalMap, n: TruncationOrder) -> Result<FormalMap> {
    let ring = f.ring.clone();
    let linv = f.linear.inverse().ok_or(Error::NotFormalIsomorphism)?;
    let s = ring.nvars();
    let nonlinear: Vec<Polynomial> = f
        .components
        .iter()
        .map(|c| c - &c.homogeneous_part(1))
        .collect();
    let mut g = FormalMap::linear(&ring, &linv)?.truncate(n);
    for _ in 1..n.get() {
        let h_of_g: Vec<Polynomial> = nonlinear
            .iter()
            .map(|h| h.compose(&g.components, Some(n)))
            .collect::<Result<_>>()?;
        let rhs: Vec<Polynomial> = (0..s)
            .map(|i| &Polynomial::var(&ring, i) - &h_of_g[i])
            .collect();
        let comps = (0..s)
            .map(|i| {
                (0..s).fold(Polynomial::zero(&ring), |acc, j| &acc + &rhs[j].scale(linv.get(i, j)))
            })
            .collect();
        g = FormalMap::new(&ring, comps)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Domain;

    fn one_var() -> (Arc<Ring>, Polynomial) {
        let r = Ring::numbered(Domain::Rational, "x", 1);
        let x = Polynomial::var(&r, 0);
        (r, x)
    }

    #[test]
    fn inverts_x_plus_x_squared() {
        let (r, x) = one_var();
        let n = TruncationOrder::new(3).unwrap();
        let f = FormalMap::new(&r, alloc::vec![&x + &x.pow(2)]).unwrap();
        let g = invert_formal(&f, n).unwrap();
        assert_eq!(g.components()[0], &x - &x.pow(2));
        assert!(g.compose(&f, n).unwrap().is_identity());
        assert!(f.compose(&g, n).unwrap().is_identity());
    }

    #[test]
    fn identity_and_linear_inverse() {
        let (r, x) = one_var();
        let n = TruncationOrder::new(5).unwrap();
        let id = FormalMap::identity(&r);
        assert!(invert_formal(&id, n).unwrap().is_identity());
        let f = FormalMap::new(&r, alloc::vec![x.scale(&Scalar::from_i64(Domain::Rational, 2))]).unwrap();
        let g = invert_formal(&f, n).unwrap();
        let half = Scalar::from_ratio(Domain::Rational, 1, 2).unwrap();
        assert_eq!(g.components()[0], x.scale(&half));
    }

    #[test]
    fn singular_linear_part_rejected() {
        let (r, x) = one_var();
        let f = FormalMap::new(&r, alloc::vec![x.pow(2)]).unwrap();
        assert_eq!(
            invert_formal(&f, TruncationOrder::new(3).unwrap()),
            Err(Error::NotFormalIsomorphism)
        );
        assert!(FormalMap::new(&r, alloc::vec![&x + &Polynomial::one(&r)]).is_err());
        assert!(TruncationOrder::new(0).is_err());
    }
}
