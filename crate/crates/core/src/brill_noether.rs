//! Brill–Noether loci `V_k(F)` at a stable bundle `E` with injective Petri
//! map: numeric reduction to the generic determinantal model of size
//! `l' x l`, where `l = h^0(E ⊗ F)` and `l - l' = χ(E ⊗ F)`.

use alloc::string::String;

use crate::determinantal::GenericShape;
use crate::error::{Error, Result};
use crate::invariants::{invariant_report, InvariantReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BNContext {
    pub genus: i64,
    /// Rank `n` of `E`.
    pub rank: i64,
    /// Degree `d` of `E`.
    pub degree: i64,
    pub aux_degree: i64,
    pub aux_rank: i64,
    pub k: i64,
    /// `l = h^0(E ⊗ F)`; depends on `E` itself, so it is an input.
    pub h0: i64,
}

impl BNContext {
    pub fn new(genus: i64, rank: i64, degree: i64, aux_degree: i64, aux_rank: i64, k: i64, h0: i64) -> Result<Self> {
        let bad = |m: &str| Err(Error::input(m));
        if genus < 2 {
            return bad("genus must be at least 2");
        }
        if rank < 1 || aux_rank < 1 {
            return bad("ranks must be at least 1");
        }
        if degree < 0 {
            return bad("degree must be nonnegative");
        }
        if k < 1 || h0 < 1 {
            return bad("k and h0 must be at least 1");
        }
        Ok(BNContext { genus, rank, degree, aux_degree, aux_rank, k, h0 })
    }

    /// `χ(E ⊗ F) = n deg F - rank F (n(g-1) - d)`.
    pub fn chi(&self) -> i64 {
        self.rank * self.aux_degree - self.aux_rank * (self.rank * (self.genus - 1) - self.degree)
    }

    /// `l' = h^1(E ⊗ F) = l - χ`.
    pub fn h1(&self) -> i64 {
        self.h0 - self.chi()
    }

    /// Dimension of the moduli space of stable bundles, `n^2 (g-1) + 1`.
    pub fn ambient_dim(&self) -> i64 {
        self.rank * self.rank * (self.genus - 1) + 1
    }

    /// `ρ = n^2(g-1) + 1 - k(k - χ)`.
    pub fn rho(&self) -> i64 {
        self.ambient_dim() - self.k * (self.k - self.chi())
    }

    /// Codimension `k(k - χ)` of the locus.
    pub fn codimension(&self) -> i64 {
        self.k * (self.k - self.chi())
    }
}

/// `g - (r+1)(g - d + r)`.
pub fn classical_brill_noether(genus: i64, degree: i64, r: i64) -> i64 {
    genus - (r + 1) * (genus - degree + r)
}

/// `(a, b) = (l, l')`, keeping `k`.
pub fn to_determinantal(ctx: &BNContext) -> Result<(GenericShape, usize)> {
    let (l, lp) = (ctx.h0, ctx.h1());
    if l > lp {
        return Err(Error::input(alloc::format!(
            "h0 = {l} exceeds h1 = {lp}; the reduction assumes l <= l' (swap the roles of the two cohomology groups explicitly)"
        )));
    }
    if ctx.k > l {
        return Err(Error::input(alloc::format!("k = {} exceeds h0 = {l}", ctx.k)));
    }
    let shape = GenericShape::new(l as usize, lp as usize)?;
    let k = ctx.k as usize;
    let model_codim = (l * lp) as usize - crate::determinantal::dimension(shape, k)?;
    if model_codim as i64 != ctx.codimension() {
        return Err(Error::Certificate(alloc::format!(
            "codimension {} of the model differs from k(k - chi) = {}",
            model_codim,
            ctx.codimension()
        )));
    }
    Ok((shape, k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BNReport {
    pub context: BNContext,
    pub chi: i64,
    pub h1: i64,
    pub rho: i64,
    pub ambient_dim: i64,
    pub model: InvariantReport,
    /// Only a containment of pole sets is known for these loci.
    pub zeta_qualifier: &'static str,
    pub singular_locus: String,
    /// Standing hypothesis, echoed rather than verified.
    pub petri_injective_assumed: bool,
}

pub fn bn_report(ctx: &BNContext) -> Result<BNReport> {
    let (shape, k) = to_determinantal(ctx)?;
    let model = invariant_report(shape, k)?;
    if ctx.ambient_dim() - model.codimension as i64 != ctx.rho() {
        return Err(Error::Certificate("rho differs from ambient dimension minus model codimension".into()));
    }
    Ok(BNReport {
        context: *ctx,
        chi: ctx.chi(),
        h1: ctx.h1(),
        rho: ctx.rho(),
        ambient_dim: ctx.ambient_dim(),
        model,
        zeta_qualifier: "⊆",
        singular_locus: alloc::format!("the singular locus of V_{k}(F) is V_{}(F)", k + 1),
        petri_injective_assumed: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn line_bundle(g: i64, d: i64, k: i64, l: i64) -> BNContext {
        BNContext::new(g, 1, d, 0, 1, k, l).unwrap()
    }

    #[test]
    fn chi_examples() {
        assert_eq!(line_bundle(4, 2, 1, 1).chi(), -1);
        for g in 2..6 {
            assert_eq!(line_bundle(g, g - 1, 1, 1).chi(), 0);
        }
        assert_eq!(BNContext::new(2, 2, 2, 0, 1, 1, 1).unwrap().chi(), 0);
    }

    #[test]
    fn rho_examples() {
        assert_eq!(line_bundle(4, 2, 1, 1).rho(), 2);
        assert_eq!(classical_brill_noether(4, 2, 0), 2);
        assert_eq!(line_bundle(3, 2, 2, 2).rho(), -1);
        assert_eq!(classical_brill_noether(3, 2, 1), -1);
        let c = BNContext::new(3, 2, 4, 0, 1, 2, 2).unwrap();
        assert_eq!(c.chi(), 0);
        assert_eq!(c.rho(), c.ambient_dim() - 4);
    }

    #[test]
    fn reduction_examples() {
        // l = 2, chi = -1 so l' = 3
        let c = line_bundle(4, 2, 1, 2);
        let (s, k) = to_determinantal(&c).unwrap();
        assert_eq!((s.a(), s.b(), k), (2, 3, 1));
        let c = line_bundle(5, 4, 2, 2);
        let (s, _) = to_determinantal(&c).unwrap();
        assert_eq!((s.a(), s.b()), (2, 2));
        assert_eq!(c.codimension(), 4);
        // chi = +1: l = 3, l' = 2
        let c = BNContext::new(2, 1, 2, 0, 1, 1, 3).unwrap();
        assert_eq!(c.h1(), 2);
        assert!(matches!(to_determinantal(&c), Err(Error::Input(_))));
    }

    #[test]
    fn report_examples() {
        let rep = bn_report(&line_bundle(2, 1, 1, 1)).unwrap();
        assert_eq!(rep.rho, 1);
        assert_eq!(rep.model.lct, Rational64::from_integer(1));
        assert_eq!(rep.model.b_function.as_ref().unwrap().roots, [Rational64::from_integer(-1)]);
        assert_eq!(rep.model.zeta.as_ref().unwrap().poles, [Rational64::from_integer(-1)]);
        assert!(rep.model.monodromy.as_ref().unwrap().passed());

        let rep = bn_report(&line_bundle(4, 3, 1, 1)).unwrap();
        assert_eq!(rep.model.lct, Rational64::from_integer(1));

        let rep = bn_report(&line_bundle(5, 4, 2, 2)).unwrap();
        assert_eq!(rep.model.euler_obstruction.value, 1);
        assert_eq!(rep.model.mld.as_ref().unwrap().along_next, 3);
        assert!(rep.model.mld.as_ref().unwrap().next_stratum_empty);
        assert_eq!(rep.model.mld.as_ref().unwrap().at_points, [(2, 0)]);
    }

    #[test]
    fn rejects_bad_context() {
        assert!(BNContext::new(1, 1, 0, 0, 1, 1, 1).is_err());
        assert!(BNContext::new(2, 0, 0, 0, 1, 1, 1).is_err());
        assert!(BNContext::new(2, 1, -1, 0, 1, 1, 1).is_err());
    }
}
