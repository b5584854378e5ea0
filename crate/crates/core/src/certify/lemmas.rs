//! Galois constraints on circle-consistent traces, the φ-bound, and the
//! admissible φ-triples.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;
use serde::Serialize;

use super::candidate::{circle_modulus, eight_r_squared_sum, trace_circle_residual, TraceCandidate};
use crate::error::{Error, Result};
use crate::exactnum::compare::root_sum_real_part_le;
use crate::exactnum::{
    euler_phi, extend_residue, gcd, moebius, Comparison, CycloField, PrecisionPolicy, Rational,
    RootCache, RootSum,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma1Check {
    /// Order of the root of unity the trace is written in.
    pub trace_order: u64,
    /// `lcm(trace_order, 2m)`.
    pub modulus: u64,
    pub m: u32,
    pub k: i64,
    /// `k` lifted to a unit modulo `modulus`.
    pub k_lifted: u64,
    pub residual_zero: bool,
    pub residual_image_zero: bool,
    /// `σ_k(8r²)` in floating point, for the transcript.
    pub sigma_c: f64,
    pub sigma_tau_re: f64,
    pub re_le_minus_one: Comparison,
}

impl Lemma1Check {
    pub fn passed(&self) -> bool {
        self.residual_image_zero
            && self.re_le_minus_one.decision == crate::exactnum::Decision::True
    }
}

/// Galois-image checks for a trace given as an integer root sum.
///
/// `k` must be a unit modulo the order of `tau`; it is lifted to a unit
/// modulo `N = lcm(ord τ, 2m)` before `σ_k` is applied to the residual.
pub fn check_lemma1_trace(
    tau: &RootSum,
    m: u32,
    k: i64,
    policy: PrecisionPolicy,
    cache: &mut RootCache,
) -> Result<Lemma1Check> {
    let order = tau.order();
    let big_n = circle_modulus(order, m);
    let k_lifted = extend_residue(k, order, big_n)?;
    let field = CycloField::new(big_n);
    let residual = trace_circle_residual(tau, m, Some(&field));
    let image = residual.galois(k_lifted as i64)?;
    let sigma_c = eight_r_squared_sum(m)
        .lift(big_n)?
        .power_map(k_lifted as i64)
        .to_element(&field)
        .to_complex()
        .re;
    let sigma_tau = tau.power_map(k_lifted as i64);
    let sigma_tau_re = sigma_tau.to_element(&CycloField::new(order)).to_complex().re;
    let re_le_minus_one = root_sum_real_part_le(&sigma_tau, &-Rational::one(), policy, cache);
    Ok(Lemma1Check {
        trace_order: order,
        modulus: big_n,
        m,
        k,
        k_lifted,
        residual_zero: residual.is_zero(),
        residual_image_zero: image.is_zero(),
        sigma_c,
        sigma_tau_re,
        re_le_minus_one,
    })
}

/// Galois-image checks for a candidate; requires `gcd(k, n) = 1`.
pub fn check_lemma1(
    c: &TraceCandidate,
    m: u32,
    k: i64,
    policy: PrecisionPolicy,
    cache: &mut RootCache,
) -> Result<Lemma1Check> {
    if gcd(crate::exactnum::arith::modulo(k, c.n), c.n) != 1 {
        return Err(Error::NotCoprime { k, n: c.n });
    }
    check_lemma1_trace(&c.root_sum(), m, k, policy, cache)
}

/// `|Σ_k σ_k(ω_n^{kᵢ})| = |μ(dᵢ)|·φ(n)/φ(dᵢ) ≤ φ(n)/φ(dᵢ)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitBound {
    pub d: u64,
    pub mu: i64,
    #[serde(serialize_with = "ser_rational")]
    pub orbit_sum: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma2Check {
    pub d: [u64; 3],
    pub phi: [u64; 3],
    /// `S = Σ 1/φ(dᵢ)`.
    #[serde(serialize_with = "ser_rational")]
    pub s: Rational,
    /// `S > 1`, the form used as a filter.
    pub strict: bool,
    /// `S ≥ 1`, kept for the audit trail.
    pub non_strict: bool,
    pub orbit: [OrbitBound; 3],
}

impl Lemma2Check {
    pub fn passed(&self) -> bool {
        self.strict
    }
}

pub(crate) fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(q)
}

pub fn check_lemma2(c: &TraceCandidate) -> Lemma2Check {
    let d = c.d();
    let phi = d.map(euler_phi);
    let s = phi
        .iter()
        .map(|&p| Rational::new(1.into(), p.into()))
        .fold(Rational::from_integer(0.into()), |a, b| a + b);
    let one = Rational::one();
    let phi_n = euler_phi(c.n);
    let orbit = d.map(|di| {
        let mu = moebius(di);
        let bound = Rational::new(phi_n.into(), euler_phi(di).into());
        OrbitBound {
            d: di,
            mu,
            orbit_sum: &bound * Rational::from_integer(mu.into()),
            bound,
        }
    });
    Lemma2Check {
        d,
        phi,
        strict: s > one,
        non_strict: s >= one,
        s,
        orbit,
    }
}

/// How a sorted triple of φ-values can satisfy `1/a + 1/b + 1/c > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PhiFamily {
    /// `{1, ?, ?}`
    OneAny,
    /// `{2, 2, ?}`
    TwoTwoAny,
}

impl PhiFamily {
    pub fn of(triple: [u64; 3]) -> Option<Self> {
        let mut t = triple;
        t.sort_unstable();
        match t {
            [1, _, _] => Some(PhiFamily::OneAny),
            [2, 2, _] => Some(PhiFamily::TwoTwoAny),
            _ => None,
        }
    }
}

impl fmt::Display for PhiFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhiFamily::OneAny => "{1,?,?}",
            PhiFamily::TwoTwoAny => "{2,2,?}",
        })
    }
}

impl Serialize for PhiFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Values `φ(x) ≤ limit`. Since `φ(x) ≥ √(x/2)`, scanning `x ≤ 2·limit²` is enough.
pub fn totient_values(limit: u64) -> BTreeSet<u64> {
    let top = 2 * limit * limit + 2;
    let mut phi: Vec<u64> = (0..=top).collect();
    for p in 2..=top as usize {
        if phi[p] == p as u64 {
            for q in (p..=top as usize).step_by(p) {
                phi[q] -= phi[q] / p as u64;
            }
        }
    }
    phi.into_iter().skip(1).filter(|&v| v <= limit).collect()
}

/// Sorted triples `a ≤ b ≤ c ≤ limit` with `1/a + 1/b + 1/c > 1`.
pub fn spherical_triples(limit: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for a in 1..=limit {
        for b in a..=limit {
            for c in b..=limit {
                // bc + ac + ab > abc
                if b * c + a * c + a * b > a * b * c {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Full audit of the φ-triple case analysis up to `limit`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhiTripleAnalysis {
    pub limit: u64,
    pub families: Vec<PhiFamily>,
    /// Spherical triples outside both families, with an entry that is not a value of φ.
    pub excluded: Vec<([u64; 3], u64)>,
    /// Spherical triples of φ-values outside both families; empty when the analysis holds.
    pub unexplained: Vec<[u64; 3]>,
}

pub fn analyse_phi_triples(limit: u64) -> PhiTripleAnalysis {
    let values = totient_values(limit);
    let mut families = BTreeSet::new();
    let mut excluded = Vec::new();
    let mut unexplained = Vec::new();
    for t in spherical_triples(limit) {
        match t.iter().find(|v| !values.contains(v)) {
            Some(&bad) => {
                if PhiFamily::of(t).is_none() {
                    excluded.push((t, bad));
                }
            }
            None => match PhiFamily::of(t) {
                Some(f) => {
                    families.insert(f);
                }
                None => unexplained.push(t),
            },
        }
    }
    PhiTripleAnalysis {
        limit,
        families: families.into_iter().collect(),
        excluded,
        unexplained,
    }
}

/// Bound used by [`enumerate_phi_triples`].
pub const PHI_TRIPLE_LIMIT: u64 = 60;

/// The realizable families of φ-triples with `Σ 1/φ(dᵢ) > 1`.
pub fn enumerate_phi_triples() -> Vec<PhiFamily> {
    let a = analyse_phi_triples(PHI_TRIPLE_LIMIT);
    assert!(a.unexplained.is_empty(), "unexpected φ-triples {:?}", a.unexplained);
    a.families
}
