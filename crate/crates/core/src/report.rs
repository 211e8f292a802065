//! Pair specification documents and JSON reports. Reports are built as
//! `serde_json::Value` (sorted keys) with rationals as strings, so equal
//! inputs give byte-identical output.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::criteria::{audit_pair, audit_representatives, partitions, OrbitAuditRecord, Partition};
use crate::error::{Error, Result};
use crate::inference::{close, descendant_audits_to_facts, Closure, FactBase, Source};
use crate::lie::{BilinearForm, LieAlgebra};
use crate::linalg::{Matrix, Vector};
use crate::pair::{make_diagonal_pair, make_quadratic_ext_pair, Descendant, Family, SymmetricPair};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::sl2::SL2Triple;

pub const SCHEMA: &str = "1";
pub const DEFAULT_MAX_ORBIT_N: usize = 6;

/// A rational given as a JSON string (`"3/4"`) or integer.
#[derive(Clone, Debug, PartialEq)]
pub struct Rat(pub Rational);

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match Value::deserialize(d)? {
            Value::String(s) => parse_rational(&s)
                .map(Rat)
                .ok_or_else(|| D::Error::custom(format!("bad rational '{s}'"))),
            Value::Number(n) => n
                .as_i64()
                .map(|i| Rat(crate::scalar::rat(i)))
                .ok_or_else(|| D::Error::custom(format!("non-integer number {n}; write rationals as strings"))),
            other => Err(D::Error::custom(format!("expected a rational, got {other}"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomPairSpec {
    pub dim: usize,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    /// `structure_constants[i][j][k]` is the coefficient of `e_k` in `[e_i, e_j]`.
    pub structure_constants: Vec<Vec<Vec<Rat>>>,
    pub theta_matrix: Vec<Vec<Rat>>,
    #[serde(default)]
    pub realization: Option<Vec<Vec<Vec<Rat>>>>,
    /// Gram matrix of the invariant form; defaults to the trace form of the
    /// realization, or the Killing form without one.
    #[serde(default)]
    pub form: Option<Vec<Vec<Rat>>>,
    /// Nilpotent representatives in `g^σ` to audit.
    #[serde(default)]
    pub representatives: Vec<Vec<Rat>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpecDocument {
    pub family: String,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default, rename = "D")]
    pub d: Option<i64>,
    #[serde(default)]
    pub custom: Option<CustomPairSpec>,
    #[serde(default)]
    pub max_orbit_n: Option<usize>,
}

fn matrix_of(rows: &[Vec<Rat>], what: &str) -> Result<Matrix> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect())
        .map_err(|e| Error::input(format!("{what}: {e}")))
}

fn vector_of(v: &[Rat]) -> Vector {
    v.iter().map(|x| x.0.clone()).collect()
}

impl CustomPairSpec {
    pub fn build(&self) -> Result<SymmetricPair> {
        let n = self.dim;
        let labels = self
            .labels
            .clone()
            .unwrap_or_else(|| (1..=n).map(|i| format!("e{i}")).collect());
        let constants: Vec<Vec<Vec<Rational>>> = self
            .structure_constants
            .iter()
            .map(|row| row.iter().map(|c| vector_of(c)).collect())
            .collect();
        if constants.len() != n {
            return Err(Error::input(format!(
                "custom.structure_constants: expected {n} rows, got {}",
                constants.len()
            )));
        }
        let realization = match &self.realization {
            Some(ms) => Some(
                ms.iter()
                    .enumerate()
                    .map(|(i, m)| matrix_of(m, &format!("custom.realization[{i}]")))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        let g = LieAlgebra::from_structure_constants(labels, &constants, realization)
            .map_err(|e| Error::input(format!("custom.structure_constants: {e}")))?;
        let theta = matrix_of(&self.theta_matrix, "custom.theta_matrix")?;
        let form = match &self.form {
            Some(rows) => BilinearForm::new(matrix_of(rows, "custom.form")?)?,
            None if g.has_realization() => g.trace_form()?,
            None => g.killing_form(),
        };
        SymmetricPair::new(g, theta, form, Family::Custom)
    }

    pub fn representative_vectors(&self) -> Vec<Vector> {
        self.representatives.iter().map(|v| vector_of(v)).collect()
    }
}

impl PairSpecDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("pair spec: {e}")))
    }

    pub fn family(&self) -> Result<Family> {
        let need_n = || self.n.ok_or_else(|| Error::input("pair spec: field 'n' is required"));
        match self.family.as_str() {
            "diagonal" => Ok(Family::Diagonal { n: need_n()? }),
            "quadratic_ext" => Ok(Family::QuadraticExt {
                n: need_n()?,
                d: self
                    .d
                    .ok_or_else(|| Error::input("pair spec: field 'D' is required for quadratic_ext"))?,
            }),
            "custom" => Ok(Family::Custom),
            other => Err(Error::input(format!("pair spec: unknown family '{other}'"))),
        }
    }
}

pub fn build_pair(family: Family) -> Result<SymmetricPair> {
    match family {
        Family::Diagonal { n } => make_diagonal_pair(check_n(n)?),
        Family::QuadraticExt { n, d } => make_quadratic_ext_pair(check_n(n)?, d),
        Family::Custom => Err(Error::input("custom pairs need a spec document")),
    }
}

fn check_n(n: usize) -> Result<usize> {
    if n == 0 {
        Err(Error::input("n must be at least 1"))
    } else {
        Ok(n)
    }
}

pub fn with_family_size(family: Family, n: usize) -> Family {
    match family {
        Family::Diagonal { .. } => Family::Diagonal { n },
        Family::QuadraticExt { d, .. } => Family::QuadraticExt { n, d },
        Family::Custom => Family::Custom,
    }
}

pub fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

/// Nonzero coordinates keyed by basis label.
pub fn sparse_vector_json(labels: &[String], v: &[Rational]) -> Value {
    let mut m = Map::new();
    for (l, x) in labels.iter().zip(v) {
        if !num_traits::Zero::is_zero(x) {
            m.insert(l.clone(), rational_json(x));
        }
    }
    Value::Object(m)
}

pub fn pair_summary_json(pair: &SymmetricPair) -> Value {
    let (n, d) = match pair.family() {
        Family::Diagonal { n } => (json!(n), Value::Null),
        Family::QuadraticExt { n, d } => (json!(n), json!(d)),
        Family::Custom => (Value::Null, Value::Null),
    };
    json!({
        "family": pair.family().tag(),
        "n": n,
        "D": d,
        "dim_g": pair.dim(),
        "dim_h": pair.h().dim(),
        "dim_gsigma": pair.gsigma().dim(),
    })
}

pub fn record_json(labels: &[String], r: &OrbitAuditRecord) -> Value {
    json!({
        "partition": r.partition,
        "representative": sparse_vector_json(labels, &r.representative),
        "neutral": sparse_vector_json(labels, &r.neutral),
        "trace_on_hx": rational_json(&r.trace_on_hx),
        "dim_gsigma": r.dim_gsigma,
        "dim_hx": r.dim_hx,
        "archimedean_pass": r.archimedean_pass,
        "nonarch_pass": r.nonarch_pass,
        "eigen_lemma_pass": r.eigen_lemma_pass,
        "quotient_eigenvalues": r.quotient_eigenvalues,
        "weights_from_spectrum": r.weights_from_spectrum,
        "weights_from_partition": r.weights_from_partition,
        "weights_agree": r.weights_agree(),
    })
}

/// Reasons a record fails the audit (empty when it passes).
pub fn record_failures(r: &OrbitAuditRecord) -> Vec<&'static str> {
    let mut out = Vec::new();
    if !r.archimedean_pass {
        out.push("archimedean_pass");
    }
    if !r.nonarch_pass {
        out.push("nonarch_pass");
    }
    if !r.eigen_lemma_pass {
        out.push("eigen_lemma_pass");
    }
    if r.weights_agree() == Some(false) {
        out.push("weights_agree");
    }
    out
}

pub fn closure_json(c: &Closure) -> Value {
    let asserted: BTreeMap<String, Value> = c
        .facts
        .asserted()
        .iter()
        .map(|(a, s)| {
            let s = match s {
                Source::Computed(d) => json!({"kind": "computed", "detail": d}),
                Source::UserAsserted => json!({"kind": "user_asserted"}),
            };
            (a.name().to_string(), s)
        })
        .collect();
    let derived: BTreeMap<String, Value> = c
        .derived
        .iter()
        .map(|(a, d)| {
            (
                a.name().to_string(),
                json!({"rule": d.rule, "chain": d.chain, "round": d.round}),
            )
        })
        .collect();
    json!({"asserted": asserted, "derived": derived})
}

pub struct AuditOutcome {
    pub report: Value,
    pub all_pass: bool,
}

/// Audits a built-in family at size `n` and at every smaller size (the
/// sizes its descendants are built from), derives facts and closes them.
pub fn audit_family(family: Family, max_orbit_n: usize, assumed: &FactBase) -> Result<AuditOutcome> {
    let n = family
        .inner_n()
        .ok_or_else(|| Error::input("audit of a custom pair needs a spec document"))?;
    if n > max_orbit_n {
        return Err(Error::input(format!(
            "n = {n} exceeds the orbit enumeration cap {max_orbit_n} (raise --max-orbit-n)"
        )));
    }
    let mut audits: Vec<(usize, Vec<OrbitAuditRecord>)> = Vec::new();
    let mut expected: Vec<(usize, Vec<Partition>)> = Vec::new();
    let mut top_pair = None;
    for size in 1..=n {
        let pair = build_pair(with_family_size(family, size))?;
        audits.push((size, audit_pair(&pair)?));
        expected.push((size, partitions(size)));
        if size == n {
            top_pair = Some(pair);
        }
    }
    let pair = top_pair.unwrap();
    let labels = pair.algebra().labels().to_vec();
    let mut facts = descendant_audits_to_facts(&audits, &expected, family.tag())?;
    facts.merge(assumed);
    let closure = close(&facts);
    let top = &audits.last().unwrap().1;
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    for (size, recs) in &audits {
        let mut size_pass = true;
        for r in recs {
            let f = record_failures(r);
            if !f.is_empty() {
                size_pass = false;
                failures.push(json!({"n": size, "partition": r.partition, "failed": f}));
            }
        }
        sizes.push(json!({
            "n": size,
            "orbits": recs.len(),
            "all_pass": size_pass,
            "traces": recs.iter().map(|r| rational_json(&r.trace_on_hx)).collect::<Vec<_>>(),
        }));
    }
    let all_pass = failures.is_empty();
    let report = json!({
        "schema": SCHEMA,
        "tool": {"name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION")},
        "command": "audit",
        "pair": pair_summary_json(&pair),
        "orbit_scope": "partition representatives",
        "orbits": top.iter().map(|r| record_json(&labels, r)).collect::<Vec<_>>(),
        "descendant_sizes": sizes,
        "facts": closure_json(&closure),
        "status": {"all_pass": all_pass, "failures": failures},
    });
    Ok(AuditOutcome { report, all_pass })
}

/// Audits the supplied representatives of a custom pair. No facts are
/// derived since the representatives are not known to exhaust the orbits.
pub fn audit_custom(pair: &SymmetricPair, reps: &[Vector], assumed: &FactBase) -> Result<AuditOutcome> {
    if reps.is_empty() {
        return Err(Error::input("custom audit needs 'representatives' in the spec"));
    }
    let recs = audit_representatives(pair, reps)?;
    let labels = pair.algebra().labels().to_vec();
    let failures: Vec<Value> = recs
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            let f = record_failures(r);
            (!f.is_empty()).then(|| json!({"index": i, "failed": f}))
        })
        .collect();
    let all_pass = failures.is_empty();
    let closure = close(assumed);
    let report = json!({
        "schema": SCHEMA,
        "tool": {"name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION")},
        "command": "audit",
        "pair": pair_summary_json(pair),
        "orbit_scope": "representatives as supplied",
        "orbits": recs.iter().map(|r| record_json(&labels, r)).collect::<Vec<_>>(),
        "descendant_sizes": [],
        "facts": closure_json(&closure),
        "status": {"all_pass": all_pass, "failures": failures},
    });
    Ok(AuditOutcome { report, all_pass })
}

pub fn triple_json(pair: &SymmetricPair, t: &SL2Triple) -> Result<Value> {
    let labels = pair.algebra().labels();
    Ok(json!({
        "schema": SCHEMA,
        "command": "triple",
        "pair": pair_summary_json(pair),
        "e": sparse_vector_json(labels, &t.e),
        "h": sparse_vector_json(labels, &t.h),
        "f": sparse_vector_json(labels, &t.f),
        "theta_adapted": t.theta_adapted,
        "degenerate": t.degenerate,
        "relations_hold": t.check_relations(pair.algebra())?,
        "h_in_h": pair.h().contains(&t.h),
        "f_in_gsigma": pair.gsigma().contains(&t.f),
    }))
}

pub fn descendant_json(pair: &SymmetricPair, x: &[Rational], d: &Descendant) -> Value {
    let labels = pair.algebra().labels();
    json!({
        "schema": SCHEMA,
        "command": "descend",
        "pair": pair_summary_json(pair),
        "x": sparse_vector_json(labels, x),
        "descendant": {
            "dim_g": d.pair.dim(),
            "dim_h": d.dim_hx,
            "dim_gsigma": d.dim_gsigma_x,
            "basis": d.embedding.iter().map(|v| sparse_vector_json(labels, v)).collect::<Vec<_>>(),
        },
        "dimension_identity": {
            "dim_gsigma_x": d.dim_gsigma_x,
            "dim_g_minus_2dim_h_plus_dim_hx": d.predicted_dim_gsigma_x,
            "holds": d.dimension_identity_holds(),
        },
        "family_shape": pair.descendant_has_family_shape(d),
    })
}

pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
