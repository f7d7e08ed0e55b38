//! JSON wire formats for polynomials, polynomial matrices, free complexes and
//! truncated L∞ pair data.
//!
//! Rational coefficients travel as `"num/den"` strings (or plain integers);
//! prime-field coefficients as decimal residues with a top-level `"prime"`.

use std::sync::Arc;

use detloci_core::jump::FreeComplex;
use detloci_core::petri::LInfPairData;
use detloci_core::{Domain, Error, PolyMatrix, Polynomial, Result, Ring, Scalar};
use serde::{Deserialize, Serialize};

/// A coefficient as written by a user: `"3/2"`, `"-4"` or a bare integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Text(String),
    Int(i64),
}

impl CoeffJson {
    fn parse(&self, domain: Domain) -> Result<Scalar> {
        match self {
            CoeffJson::Text(s) => Scalar::parse_coeff(domain, s),
            CoeffJson::Int(n) => Ok(Scalar::from_i64(domain, *n)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: CoeffJson,
    pub exps: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrixJson {
    pub vars: Vec<String>,
    pub rows: usize,
    pub cols: usize,
    /// Row-major; each entry is the term list of one polynomial.
    pub entries: Vec<Vec<Vec<TermJson>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComplexJson {
    pub min_degree: i64,
    pub ranks: Vec<usize>,
    pub differentials: Vec<PolyMatrixJson>,
    /// Needed only when there are no differentials to carry the variables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
}

/// `maps[n-1]` is the dense coefficient array of `m_{n+1}`, indexed by
/// `((t_1 s + ... + t_n) l + σ) lp + j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub s: usize,
    pub l: usize,
    pub lp: usize,
    pub maps: Vec<Vec<CoeffJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
}

pub fn domain_from(prime: Option<u32>) -> Result<Domain> {
    prime.map_or(Ok(Domain::Rational), Domain::prime)
}

fn prime_of(domain: Domain) -> Option<u32> {
    match domain {
        Domain::Rational => None,
        Domain::Prime(p) => Some(p),
    }
}

fn terms_to_json(p: &Polynomial) -> Vec<TermJson> {
    p.terms()
        .map(|(m, c)| TermJson { coeff: CoeffJson::Text(c.to_coeff_string()), exps: m.exps().to_vec() })
        .collect()
}

fn terms_from_json(ring: &Arc<Ring>, terms: &[TermJson]) -> Result<Polynomial> {
    let mut out = std::collections::BTreeMap::new();
    for t in terms {
        if t.exps.len() != ring.nvars() {
            return Err(Error::input(format!(
                "term has {} exponents but the ring has {} variables",
                t.exps.len(),
                ring.nvars()
            )));
        }
        let m = t.exps.clone();
        if out.insert(m, t.coeff.parse(ring.domain())?).is_some() {
            return Err(Error::input(format!("repeated monomial {:?}", t.exps)));
        }
    }
    Polynomial::from_terms(ring, out)
}

pub fn polynomial_to_json(p: &Polynomial) -> PolynomialJson {
    PolynomialJson { vars: p.ring().vars().to_vec(), terms: terms_to_json(p), prime: prime_of(p.domain()) }
}

pub fn polynomial_from_json(j: &PolynomialJson) -> Result<Polynomial> {
    let ring = Ring::new(domain_from(j.prime)?, j.vars.clone());
    terms_from_json(&ring, &j.terms)
}

pub fn matrix_to_json(m: &PolyMatrix) -> PolyMatrixJson {
    PolyMatrixJson {
        vars: m.ring().vars().to_vec(),
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| terms_to_json(m.get(i, j))).collect())
            .collect(),
        prime: prime_of(m.ring().domain()),
    }
}

fn matrix_in_ring(ring: &Arc<Ring>, j: &PolyMatrixJson) -> Result<PolyMatrix> {
    if j.vars != ring.vars() {
        return Err(Error::input("matrix variables differ from the ambient ring"));
    }
    if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
        return Err(Error::input(format!("entries do not form a {}x{} array", j.rows, j.cols)));
    }
    let entries = j
        .entries
        .iter()
        .flatten()
        .map(|t| terms_from_json(ring, t))
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::new(ring, j.rows, j.cols, entries)
}

pub fn matrix_from_json(j: &PolyMatrixJson) -> Result<PolyMatrix> {
    let ring = Ring::new(domain_from(j.prime)?, j.vars.clone());
    matrix_in_ring(&ring, j)
}

pub fn complex_to_json(c: &FreeComplex) -> ComplexJson {
    let ring = c.ring();
    ComplexJson {
        min_degree: c.min_degree(),
        ranks: c.ranks().to_vec(),
        differentials: c.differentials().iter().map(matrix_to_json).collect(),
        vars: Some(ring.vars().to_vec()),
        prime: prime_of(ring.domain()),
    }
}

pub fn complex_from_json(j: &ComplexJson) -> Result<FreeComplex> {
    let domain = domain_from(j.prime)?;
    let vars = match (&j.vars, j.differentials.first()) {
        (Some(v), _) => v.clone(),
        (None, Some(d)) => d.vars.clone(),
        (None, None) => Vec::new(),
    };
    if j.differentials.iter().any(|d| d.prime.is_some() && d.prime != j.prime) {
        return Err(Error::input("differential prime differs from the complex prime"));
    }
    let ring = Ring::new(domain, vars);
    let diffs = j
        .differentials
        .iter()
        .map(|d| matrix_in_ring(&ring, d))
        .collect::<Result<Vec<_>>>()?;
    FreeComplex::new(&ring, j.min_degree, j.ranks.clone(), diffs)
}

pub fn pair_to_json(d: &LInfPairData) -> PairJson {
    PairJson {
        s: d.s(),
        l: d.l(),
        lp: d.lp(),
        maps: (1..=d.nmax())
            .map(|n| {
                d.map(n)
                    .expect("n <= nmax")
                    .iter()
                    .map(|c| CoeffJson::Text(c.to_coeff_string()))
                    .collect()
            })
            .collect(),
        prime: prime_of(d.domain()),
    }
}

pub fn pair_from_json(j: &PairJson) -> Result<LInfPairData> {
    let domain = domain_from(j.prime)?;
    if j.maps.is_empty() {
        return Err(Error::input("pair data needs at least the bilinear map m_2"));
    }
    let maps = j
        .maps
        .iter()
        .map(|m| m.iter().map(|c| c.parse(domain)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    LInfPairData::new(domain, j.s, j.l, j.lp, maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_wire_format() {
        let text = r#"{"vars":["x","y"],"terms":[{"coeff":"-1","exps":[0,1]},{"coeff":"3/2","exps":[1,1]},{"coeff":1,"exps":[2,0]}]}"#;
        let p = polynomial_from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(p.to_string(), "x^2 + 3/2*x*y - y");
        let back = serde_json::to_string(&polynomial_to_json(&p)).unwrap();
        assert_eq!(
            back,
            r#"{"vars":["x","y"],"terms":[{"coeff":"1","exps":[2,0]},{"coeff":"3/2","exps":[1,1]},{"coeff":"-1","exps":[0,1]}]}"#
        );
    }

    #[test]
    fn prime_field_wire_format() {
        let text = r#"{"vars":["x"],"terms":[{"coeff":"-1","exps":[1]}],"prime":7}"#;
        let p = polynomial_from_json(&serde_json::from_str(text).unwrap()).unwrap();
        let j = polynomial_to_json(&p);
        assert_eq!(j.prime, Some(7));
        assert_eq!(j.terms[0].coeff, CoeffJson::Text("6".into()));
    }

    #[test]
    fn rejects_malformed_polynomials() {
        for text in [
            r#"{"vars":["x"],"terms":[{"coeff":"1","exps":[1,0]}]}"#,
            r#"{"vars":["x"],"terms":[{"coeff":"1/0","exps":[1]}]}"#,
            r#"{"vars":["x"],"terms":[{"coeff":"1","exps":[1]},{"coeff":"2","exps":[1]}]}"#,
            r#"{"vars":["x"],"terms":[],"prime":100}"#,
        ] {
            let j: PolynomialJson = serde_json::from_str(text).unwrap();
            assert!(polynomial_from_json(&j).is_err(), "{text}");
        }
    }

    #[test]
    fn complex_round_trip() {
        let text = r#"{"minDegree":0,"ranks":[1,1],"differentials":[
            {"vars":["x"],"rows":1,"cols":1,"entries":[[[{"coeff":"1","exps":[1]}]]]}]}"#;
        let c = complex_from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(c.ranks(), [1, 1]);
        let again = complex_from_json(&complex_to_json(&c)).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn complex_shape_mismatch_is_input_error() {
        let text = r#"{"minDegree":0,"ranks":[1,2],"differentials":[
            {"vars":["x"],"rows":1,"cols":1,"entries":[[[{"coeff":"1","exps":[1]}]]]}]}"#;
        let err = complex_from_json(&serde_json::from_str(text).unwrap()).unwrap_err();
        assert!(err.is_input());
    }

    #[test]
    fn pair_round_trip() {
        // s = 2, l = lp = 1: m_2 gives x1, m_3 symmetric with value 1 at (1,2) and (2,1)
        let text = r#"{"s":2,"l":1,"lp":1,"maps":[[1,0],[0,1,1,0]]}"#;
        let d = pair_from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(d.nmax(), 2);
        assert_eq!(pair_from_json(&pair_to_json(&d)).unwrap(), d);
        let asym = r#"{"s":2,"l":1,"lp":1,"maps":[[1,0],[0,1,0,0]]}"#;
        assert!(pair_from_json(&serde_json::from_str(asym).unwrap()).is_err());
    }
}
