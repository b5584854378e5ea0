//! Non-discreteness certificates for `(m, m, ∞)` triangle groups.

use serde::Serialize;
use serde_json::{json, Value};

use super::candidate::{circle_residual_exact, TraceCandidate};
use super::lemmas::{analyse_phi_triples, check_lemma1, PHI_TRIPLE_LIMIT};
use super::search::{run_search, SearchOptions, SearchReport};
use crate::classify::{classify_trace, goldman_discriminant, IsometryClass, BOUNDARY_TOL};
use crate::error::{Error, Result};
use crate::exactnum::{Decision, RootCache};
use crate::triangle::{
    build_gram, circle_residual_numeric, product_trace, su21_lift_exponent, trace_formula,
    ComplexJson, TriangleParams,
};

/// Agreement required between the matrix trace and the closed formula.
pub const TRACE_TOL: f64 = 1e-9;
pub const CIRCLE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NonDiscreteOrNonFaithful,
    NotApplicable,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::NonDiscreteOrNonFaithful => "NonDiscreteOrNonFaithful",
            Verdict::NotApplicable => "NotApplicable",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: Value,
    pub outcome: Value,
    pub precision_bits: Option<u32>,
}

impl CheckRecord {
    fn new(name: &str, inputs: Value, outcome: Value, precision_bits: Option<u32>) -> Self {
        CheckRecord {
            name: name.to_string(),
            inputs,
            outcome,
            precision_bits,
        }
    }

    /// The `pass` flag of the outcome, if it has one.
    pub fn passed(&self) -> Option<bool> {
        self.outcome.get("pass").and_then(Value::as_bool)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub params: TriangleParams,
    pub tau: ComplexJson,
    pub class: IsometryClass,
    pub verdict: Verdict,
    pub n_max: u64,
    pub checks: Vec<CheckRecord>,
    pub search: Option<SearchReport>,
    pub statement: String,
}

impl Certificate {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }
}

pub fn certify_non_discrete(params: &TriangleParams, n_max: u64) -> Result<Certificate> {
    certify_with(params, n_max, &SearchOptions::default())
}

pub fn certify_with(params: &TriangleParams, n_max: u64, opts: &SearchOptions) -> Result<Certificate> {
    let m = params
        .mm_inf_order()
        .ok_or_else(|| Error::InvalidParameter("certification needs type (m, m, ∞)".into()))?;
    if m < 2 {
        return Err(Error::InvalidParameter(format!("vertex order {m} < 2")));
    }
    if n_max < 1 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let tau = trace_formula(params);
    let mut checks = vec![CheckRecord::new(
        "triangle_type",
        json!({ "p": params.p }),
        json!({ "pass": true, "m": m }),
        None,
    )];

    let gram = build_gram(params);
    match &gram {
        Ok(g) => {
            let t = product_trace(g);
            let err = (t - tau).norm();
            checks.push(CheckRecord::new(
                "gram_signature",
                json!({ "alpha": params.alpha }),
                json!({ "pass": true, "signature": g.signature }),
                None,
            ));
            checks.push(CheckRecord::new(
                "trace_cross_validation",
                json!({ "tolerance": TRACE_TOL }),
                json!({
                    "pass": err < TRACE_TOL,
                    "matrix_trace": ComplexJson::from(t),
                    "abs_error": err,
                    "su21_lift_exponent": su21_lift_exponent(g),
                }),
                None,
            ));
        }
        Err(e) => checks.push(CheckRecord::new(
            "gram_signature",
            json!({ "alpha": params.alpha }),
            json!({ "pass": false, "error": e.to_string() }),
            None,
        )),
    }
    let circle_residual = circle_residual_numeric(params)?;
    checks.push(CheckRecord::new(
        "circle_identity_numeric",
        json!({ "m": m, "tolerance": CIRCLE_TOL }),
        json!({ "pass": circle_residual < CIRCLE_TOL, "residual": circle_residual }),
        None,
    ));

    let class = classify_trace(tau, BOUNDARY_TOL);
    checks.push(CheckRecord::new(
        "classification",
        json!({ "tau": ComplexJson::from(tau), "tolerance": BOUNDARY_TOL }),
        json!({ "f": goldman_discriminant(tau), "class": class }),
        None,
    ));

    let finish = |checks, verdict, search, statement: String| Certificate {
        params: *params,
        tau: tau.into(),
        class,
        verdict,
        n_max,
        checks,
        search,
        statement,
    };

    if gram.is_err() || class != IsometryClass::RegularElliptic {
        let statement = format!(
            "I1I2I3 is {class}, not regular elliptic; the certificate does not apply"
        );
        return Ok(finish(checks, Verdict::NotApplicable, None, statement));
    }

    let phi = analyse_phi_triples(PHI_TRIPLE_LIMIT);
    checks.push(CheckRecord::new(
        "phi_triple_families",
        json!({ "limit": phi.limit }),
        json!({
            "pass": phi.unexplained.is_empty(),
            "families": phi.families,
            "excluded": phi.excluded.iter()
                .map(|(t, v)| json!({ "triple": t, "not_a_totient_value": v }))
                .collect::<Vec<_>>(),
        }),
        None,
    ));

    checks.push(three_omega3_check(m, opts)?);

    let report = run_search(m, n_max, opts)?;
    checks.push(CheckRecord::new(
        "lemma2_strict_audit",
        json!({ "filter": "S > 1", "audited": "S >= 1" }),
        json!({
            "pass": true,
            "ties_dropped_by_strict_form": report.lemma2_ties,
        }),
        None,
    ));
    checks.push(CheckRecord::new(
        "exhaustive_search",
        json!({ "m": m, "n_max": n_max, "symmetry": opts.symmetry }),
        json!({
            "pass": report.survivors.is_empty() && report.is_consistent(),
            "candidates_examined": report.candidates_examined,
            "rejections": report.rejections,
            "survivors": report.survivors.len(),
            "inconclusive": report.inconclusive,
        }),
        Some(report.max_precision_bits),
    ));

    let (verdict, statement) = if report.inconclusive > 0 {
        (
            Verdict::Inconclusive,
            format!(
                "{} real-part comparisons were undecided at {} bits",
                report.inconclusive, opts.policy.cap_bits
            ),
        )
    } else if !report.survivors.is_empty() {
        (
            Verdict::Inconclusive,
            format!(
                "{} circle-consistent finite-order traces with n <= {n_max} remain",
                report.survivors.len()
            ),
        )
    } else {
        (
            Verdict::NonDiscreteOrNonFaithful,
            format!(
                "I1I2I3 is regular elliptic and no sum of three n-th roots of unity with \
                 n <= {n_max} satisfies the circle equation for m = {m}, so I1I2I3 has no \
                 finite order whose eigenvalues are n-th roots of unity for such n. An element \
                 of infinite order in a compact stabiliser makes the group non-discrete; a \
                 finite order beyond the bound would make the representation non-faithful. \
                 Every (m,m,inf) triangle group with regular elliptic I1I2I3 is non-discrete; \
                 this transcript verifies that statement for orders up to {n_max}."
            ),
        )
    };
    Ok(finish(checks, verdict, Some(report), statement))
}

/// `τ = 3ω₃`: both conjugates have real part −3/2, so no `σ_k` gives
/// `Re σ_k(τ) > −1`. The family is excluded by the exact circle equation.
fn three_omega3_check(m: u32, opts: &SearchOptions) -> Result<CheckRecord> {
    let c = TraceCandidate::new(3, [1, 1, 1])?;
    let residual = circle_residual_exact(&c, m);
    let mut cache = RootCache::new();
    let mut re = Vec::new();
    let mut bits = 0;
    let mut some_above = false;
    for k in [1, 2] {
        let l1 = check_lemma1(&c, m, k, opts.policy, &mut cache)?;
        bits = bits.max(l1.re_le_minus_one.precision_bits);
        some_above |= l1.re_le_minus_one.decision == Decision::False;
        re.push(json!({ "k": k, "re": l1.sigma_tau_re, "le_minus_one": l1.re_le_minus_one.decision }));
    }
    Ok(CheckRecord::new(
        "three_omega3_family",
        json!({ "n": 3, "k": c.k, "m": m }),
        json!({
            "pass": !residual.is_zero(),
            "circle_residual": residual,
            "galois_real_parts": re,
            "some_conjugate_above_minus_one": some_above,
            "excluded_by": "exact circle equation",
        }),
        Some(bits),
    ))
}
