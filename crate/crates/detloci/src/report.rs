//! Report envelopes and JSON views of core results.
//!
//! Every report is `{"manifest": .., "status": .., "result": ..}`. Objects are
//! `serde_json::Map`s, which keep keys sorted, so the bytes depend only on
//! the manifest and the result.

use std::collections::BTreeMap;
use std::fmt::Display;

use detloci_core::brill_noether::BNReport;
use detloci_core::determinantal::{DeterminantalIdeal, GenericShape};
use detloci_core::invariants::{InvariantReport, MonodromyCertificate};
use detloci_core::jump::{JumpIdeal, SpecializationReport};
use detloci_core::petri::{MembershipWitness, TangentConeCertificate, UniversalMatrix};
use detloci_core::tower::TowerReport;
use detloci_core::{FormalMap, Polynomial, Scalar};
use serde::Serialize;
use serde_json::{json, Value};

use crate::format::{matrix_to_json, polynomial_to_json};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: String,
    /// Seconds since the Unix epoch; only present when explicitly requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl RunManifest {
    pub fn new(subcommand: &str) -> Self {
        RunManifest {
            subcommand: subcommand.to_owned(),
            parameters: BTreeMap::new(),
            seed: None,
            version: VERSION.to_owned(),
            timestamp: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters
            .insert(key.to_owned(), serde_json::to_value(value).expect("plain data serializes"));
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub manifest: RunManifest,
    pub status: Status,
    pub result: Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn text(v: impl Display) -> Value {
    Value::String(v.to_string())
}

fn texts<T: Display>(vs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(vs.into_iter().map(text).collect())
}

fn shape_json(shape: GenericShape) -> Value {
    json!({ "a": shape.a(), "b": shape.b() })
}

pub fn polys_json(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(text).collect())
}

fn polys_wire(ps: &[Polynomial]) -> Value {
    serde_json::to_value(ps.iter().map(polynomial_to_json).collect::<Vec<_>>()).expect("serializes")
}

pub fn det_ideal_json(ideal: &DeterminantalIdeal, expected_count: u64) -> Value {
    let minor_size = ideal.shape.a() as i64 - ideal.k + 1;
    json!({
        "shape": shape_json(ideal.shape),
        "k": ideal.k,
        "minorSize": minor_size,
        "generatorCount": ideal.generators.len(),
        "expectedGeneratorCount": expected_count,
        "zeroIdeal": ideal.is_zero_ideal(),
        "unitIdeal": ideal.is_unit_ideal(),
        "generators": polys_json(&ideal.generators),
        "wire": polys_wire(&ideal.generators),
    })
}

pub fn tower_json(t: &TowerReport) -> Value {
    let records: Vec<Value> = t
        .records
        .iter()
        .map(|r| {
            json!({
                "i": r.i,
                "center": format!("M_{}", r.center_index),
                "centerCodim": r.center_codim,
                "multiplicity": r.multiplicity,
                "logDiscrepancy": r.log_discrepancy,
                "logDiscrepancyDerived": r.log_discrepancy_derived,
                "ratio": text(r.ratio()),
            })
        })
        .collect();
    json!({ "shape": shape_json(t.shape), "k": t.k, "records": records })
}

pub fn monodromy_json(c: &MonodromyCertificate) -> Value {
    json!({
        "a": c.a,
        "passed": c.passed(),
        "matches": c.matches.iter().map(|(p, r)| json!({"pole": text(p), "root": text(r)})).collect::<Vec<_>>(),
        "unmatchedPoles": texts(&c.unmatched_poles),
        "product": c.product.as_ref().map(|p| json!({
            "constant": text(p.constant),
            "remainingRoots": texts(&p.roots),
        })),
    })
}

pub fn invariants_json(r: &InvariantReport) -> Value {
    json!({
        "shape": shape_json(r.shape),
        "k": r.k,
        "dimension": r.dimension,
        "codimension": r.codimension,
        "singularLocus": {
            "stratum": format!("M_{}", r.singular_locus.index),
            "empty": r.singular_locus.empty,
        },
        "lct": text(r.lct),
        "bFunctionRoots": r.b_function.as_ref().map(|b| texts(&b.roots)),
        "zetaPoles": r.zeta.as_ref().map(|z| texts(&z.poles)),
        "eulerObstruction": {
            "value": r.euler_obstruction.value,
            "strata": r.euler_obstruction.strata.iter().map(|s| json!({"t": s.t, "dim": s.dim})).collect::<Vec<_>>(),
        },
        "mld": r.mld.as_ref().map(|m| json!({
            "alongNextStratum": m.along_next,
            "nextStratumEmpty": m.next_stratum_empty,
            "atPoints": m.at_points.iter().map(|(kp, v)| json!({"kPrime": kp, "mld": v})).collect::<Vec<_>>(),
        })),
        "monodromy": r.monodromy.as_ref().map(monodromy_json),
        "tower": tower_json(&r.tower),
    })
}

pub fn bn_json(r: &BNReport) -> Value {
    let c = &r.context;
    json!({
        "context": {
            "genus": c.genus, "rank": c.rank, "degree": c.degree,
            "auxDegree": c.aux_degree, "auxRank": c.aux_rank, "k": c.k, "h0": c.h0,
        },
        "chi": r.chi,
        "h1": r.h1,
        "rho": r.rho,
        "ambientDim": r.ambient_dim,
        "model": invariants_json(&r.model),
        "zetaPoleRelation": format!("poles(V_k(F)) {} poles(model)", r.zeta_qualifier),
        "singularLocus": r.singular_locus,
        "petriInjectiveAssumed": r.petri_injective_assumed,
    })
}

fn point_json(p: &[Scalar]) -> Value {
    texts(p.iter().map(Scalar::to_coeff_string))
}

pub fn jump_json(ideal: &JumpIdeal, check: Option<&SpecializationReport>) -> Value {
    json!({
        "degree": ideal.degree,
        "k": ideal.k,
        "minorSize": ideal.minor_size,
        "generatorCount": ideal.generators.len(),
        "unitIdeal": ideal.minor_size <= 0,
        "generators": polys_json(&ideal.generators),
        "wire": polys_wire(&ideal.generators),
        "specialization": check.map(|rep| json!({
            "points": rep.checks.len(),
            "violations": rep.violations().map(|v| json!({
                "point": point_json(&v.point),
                "cohomologyDim": v.cohomology_dim,
                "inZeroSet": v.in_zero_set,
            })).collect::<Vec<_>>(),
            "consistent": rep.is_consistent(),
        })),
    })
}

fn formal_json(f: &FormalMap) -> Value {
    let vars = f.ring().vars();
    Value::Array(
        f.components()
            .iter()
            .zip(vars)
            .map(|(c, v)| text(format!("{v} -> {c}")))
            .collect(),
    )
}

fn witnesses_json(ws: &[MembershipWitness]) -> Value {
    Value::Array(
        ws.iter()
            .map(|w| json!({ "target": w.target, "coefficients": polys_json(&w.coefficients) }))
            .collect(),
    )
}

pub fn universal_json(u: &UniversalMatrix, injective: bool) -> Value {
    json!({
        "order": u.order.get(),
        "rows": u.matrix.rows(),
        "cols": u.matrix.cols(),
        "entries": (0..u.matrix.rows())
            .map(|i| texts((0..u.matrix.cols()).map(|j| u.matrix.get(i, j))))
            .collect::<Vec<_>>(),
        "linearPart": (0..u.matrix.rows())
            .map(|i| { let b = u.linear_part(); texts((0..b.cols()).map(|j| b.get(i, j).clone())) })
            .collect::<Vec<_>>(),
        "petriInjective": injective,
        "wire": matrix_to_json(&u.matrix),
    })
}

pub fn certificate_json(c: &TangentConeCertificate) -> Value {
    json!({
        "k": c.k,
        "order": c.order.get(),
        "verified": c.verify(),
        "identity": c.is_identity(),
        "straightening": formal_json(&c.straightening),
        "inverse": formal_json(&c.inverse),
        "universalGenerators": polys_json(&c.universal_generators),
        "transportedGenerators": polys_json(&c.transported_generators),
        "coneGenerators": polys_json(&c.cone_generators),
        "straightenedGenerators": polys_json(&c.straightened_generators),
        "witnesses": {
            "universalInTransported": witnesses_json(&c.forward),
            "transportedInUniversal": witnesses_json(&c.backward),
            "straightenedInCone": witnesses_json(&c.cone_forward),
            "coneInStraightened": witnesses_json(&c.cone_backward),
        },
    })
}

/// Flattened `path: value` listing, the human-readable view of a report.
pub fn render_table(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    if k == "wire" {
                        continue;
                    }
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = xs.iter().map(scalar_text).collect();
                out.push((prefix.to_owned(), format!("[{}]", items.join(", "))));
            }
            Value::Array(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            other => out.push((prefix.to_owned(), scalar_text(other))),
        }
    }
    fn scalar_text(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}
