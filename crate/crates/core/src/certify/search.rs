//! Exhaustive search for circle-consistent regular elliptic traces of finite order.

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::candidate::{circle_modulus, circle_residual_sum, eight_r_squared_sum, TraceCandidate};
use super::lemmas::check_lemma2;
use crate::error::{Error, Result};
use crate::exactnum::compare::root_sum_real_part_le;
use crate::exactnum::{gcd, units, CycloField, Decision, PrecisionPolicy, Rational, RootCache};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Enumerate one representative per orbit of permutations and `σ_u`.
    pub symmetry: bool,
    pub policy: PrecisionPolicy,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetry: true,
            policy: PrecisionPolicy::default(),
        }
    }
}

/// Candidates dropped at each filter, in filter order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Rejections {
    pub not_regular_elliptic: u64,
    pub lemma2: u64,
    pub galois_real_part: u64,
    pub circle: u64,
}

impl Rejections {
    pub fn total(&self) -> u64 {
        self.not_regular_elliptic + self.lemma2 + self.galois_real_part + self.circle
    }

    fn absorb(&mut self, o: &Rejections) {
        self.not_regular_elliptic += o.not_regular_elliptic;
        self.lemma2 += o.lemma2;
        self.galois_real_part += o.galois_real_part;
        self.circle += o.circle;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub m: u32,
    pub n_max: u64,
    pub symmetry: bool,
    pub candidates_examined: u64,
    pub rejections: Rejections,
    /// Examined candidates that passed every filter.
    pub accepted: u64,
    /// Candidates with `Σ 1/φ(dᵢ) = 1` exactly: kept by `≥ 1`, dropped by `> 1`.
    pub lemma2_ties: u64,
    /// Real-part comparisons left undecided at the precision cap.
    pub inconclusive: u64,
    pub max_precision_bits: u32,
    /// Circle-consistent regular elliptic traces, sorted.
    pub survivors: Vec<TraceCandidate>,
}

impl SearchReport {
    /// Every examined candidate is rejected exactly once or accepted.
    pub fn is_consistent(&self) -> bool {
        self.rejections.total() + self.accepted == self.candidates_examined
            && (self.accepted == 0) == self.survivors.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    examined: u64,
    rejections: Rejections,
    accepted: u64,
    lemma2_ties: u64,
    inconclusive: u64,
    max_bits: u32,
    survivors: Vec<TraceCandidate>,
}

fn candidates_for(n: u64, symmetry: bool) -> Vec<TraceCandidate> {
    let mut out = Vec::new();
    for k1 in 0..n {
        let k2_start = if symmetry { k1 } else { 0 };
        for k2 in k2_start..n {
            let k3 = (2 * n - k1 - k2) % n;
            if symmetry && k3 < k2 {
                continue;
            }
            if gcd(gcd(gcd(k1, k2), k3), n) != 1 {
                continue;
            }
            let c = TraceCandidate::from_reduced(n, [k1, k2, k3]);
            if symmetry && c.canonical() != c {
                continue;
            }
            out.push(c);
        }
    }
    out
}

/// Units `u` of `ℤ/n` up to sign.
fn half_units(n: u64) -> Vec<u64> {
    units(n).into_iter().filter(|&u| u <= n - u || n <= 2).collect()
}

fn search_order(m: u32, n: u64, opts: &SearchOptions) -> Tally {
    let mut t = Tally::default();
    let mut cache = RootCache::new();
    let big_n = circle_modulus(n, m);
    let field = CycloField::new(big_n);
    let c = eight_r_squared_sum(m).lift(big_n).expect("2m divides the lcm");
    let minus_one = -Rational::one();
    let signs = half_units(n);

    for cand in candidates_for(n, opts.symmetry) {
        t.examined += 1;
        // (a) three distinct eigenvalues
        if !cand.has_distinct_exponents() {
            t.rejections.not_regular_elliptic += 1;
            continue;
        }
        // (b) Σ 1/φ(dᵢ) > 1
        let l2 = check_lemma2(&cand);
        if l2.non_strict && !l2.strict {
            t.lemma2_ties += 1;
        }
        if !l2.strict {
            t.rejections.lemma2 += 1;
            continue;
        }
        // (c) Re σ_u(τ) ≤ −1 for every unit u; σ_{−u} is the conjugate
        let tau = cand.root_sum();
        let mut refuted = false;
        for &u in &signs {
            let cmp = root_sum_real_part_le(&tau.power_map(u as i64), &minus_one, opts.policy, &mut cache);
            t.max_bits = t.max_bits.max(cmp.precision_bits);
            match cmp.decision {
                Decision::True => {}
                Decision::False => {
                    refuted = true;
                    break;
                }
                Decision::Inconclusive => t.inconclusive += 1,
            }
        }
        if refuted {
            t.rejections.galois_real_part += 1;
            continue;
        }
        // (d) exact circle equation; a representative stands for its whole orbit
        let members: Vec<TraceCandidate> = if opts.symmetry {
            signs.iter().map(|&u| cand.scaled(u)).collect()
        } else {
            vec![cand]
        };
        let before = t.survivors.len();
        for member in members {
            let tau = member.root_sum().lift(big_n).expect("n divides the lcm");
            let residual = circle_residual_sum(&tau, &c);
            if residual.is_formally_zero() || residual.to_element(&field).is_zero() {
                t.survivors.push(if opts.symmetry { member.sorted() } else { member });
            }
        }
        if t.survivors.len() == before {
            t.rejections.circle += 1;
        } else {
            t.accepted += 1;
        }
    }
    t
}

/// Full search with accounting.
pub fn run_search(m: u32, n_max: u64, opts: &SearchOptions) -> Result<SearchReport> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("vertex order {m} < 2")));
    }
    if n_max < 1 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let tallies: Vec<Tally> = (1..=n_max)
        .into_par_iter()
        .map(|n| search_order(m, n, opts))
        .collect();
    let mut report = SearchReport {
        m,
        n_max,
        symmetry: opts.symmetry,
        candidates_examined: 0,
        rejections: Rejections::default(),
        accepted: 0,
        lemma2_ties: 0,
        inconclusive: 0,
        max_precision_bits: 0,
        survivors: Vec::new(),
    };
    for t in tallies {
        report.candidates_examined += t.examined;
        report.rejections.absorb(&t.rejections);
        report.accepted += t.accepted;
        report.lemma2_ties += t.lemma2_ties;
        report.inconclusive += t.inconclusive;
        report.max_precision_bits = report.max_precision_bits.max(t.max_bits);
        report.survivors.extend(t.survivors);
    }
    report.survivors.sort_unstable();
    report.survivors.dedup();
    Ok(report)
}

/// Circle-consistent regular elliptic traces `τ` of order `n ≤ n_max`.
pub fn search_finite_order_traces(m: u32, n_max: u64) -> Result<Vec<TraceCandidate>> {
    Ok(run_search(m, n_max, &SearchOptions::default())?.survivors)
}
