//! Certified real-part comparisons with precision escalation.

use std::collections::HashMap;

use serde::Serialize;

use super::cyclo::{CycloElement, RootSum};
use super::interval::{Interval, RootTable};
use super::Rational;

pub const DEFAULT_PRECISION_BITS: u32 = 128;
pub const DEFAULT_PRECISION_CAP: u32 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    True,
    False,
    Inconclusive,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::True
        } else {
            Decision::False
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Decision::True => "true",
            Decision::False => "false",
            Decision::Inconclusive => "inconclusive",
        }
    }
}

/// Starting precision and the cap at which escalation gives up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_bits: DEFAULT_PRECISION_BITS,
            cap_bits: DEFAULT_PRECISION_CAP,
        }
    }
}

impl PrecisionPolicy {
    /// Start at `bits`; the cap is never below the default cap.
    pub fn starting_at(bits: u32) -> Self {
        PrecisionPolicy {
            start_bits: bits,
            cap_bits: bits.max(DEFAULT_PRECISION_CAP),
        }
    }

    fn ladder(self) -> impl Iterator<Item = u32> {
        std::iter::successors(Some(self.start_bits), |b| b.checked_mul(2))
            .take_while(move |b| *b <= self.cap_bits)
    }
}

/// Outcome of a certified comparison and the precision that settled it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub decision: Decision,
    pub precision_bits: u32,
}

/// Root tables keyed by `(N, bits)`, owned by the caller.
#[derive(Default, Debug)]
pub struct RootCache {
    tables: HashMap<(u64, u32), RootTable>,
}

impl RootCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&mut self, order: u64, bits: u32) -> &RootTable {
        self.tables
            .entry((order, bits))
            .or_insert_with(|| RootTable::new(order, bits))
    }
}

#[derive(Clone, Copy)]
enum Relation {
    Le,
    Lt,
}

fn compare<F, E>(
    order: u64,
    bound: &Rational,
    relation: Relation,
    policy: PrecisionPolicy,
    cache: &mut RootCache,
    enclose: F,
    exact_real: E,
) -> Comparison
where
    F: Fn(&RootTable) -> Interval,
    E: FnOnce() -> CycloElement,
{
    let mut exact_real = Some(exact_real);
    let mut last = policy.start_bits;
    for bits in policy.ladder() {
        last = bits;
        let re = enclose(cache.table(order, bits));
        let verdict = match relation {
            Relation::Le => re.le(bound),
            Relation::Lt => re.lt(bound),
        };
        if let Some(b) = verdict {
            return Comparison {
                decision: Decision::from_bool(b),
                precision_bits: bits,
            };
        }
        // an overlap may be an exact tie, which no precision separates
        if let Some(f) = exact_real.take() {
            if f().as_rational().as_ref() == Some(bound) {
                return Comparison {
                    decision: Decision::from_bool(matches!(relation, Relation::Le)),
                    precision_bits: bits,
                };
            }
        }
    }
    Comparison {
        decision: Decision::Inconclusive,
        precision_bits: last,
    }
}

/// Certify `Re(a) ≤ bound`.
pub fn real_part_le(
    a: &CycloElement,
    bound: &Rational,
    policy: PrecisionPolicy,
    cache: &mut RootCache,
) -> Comparison {
    compare(
        a.order(),
        bound,
        Relation::Le,
        policy,
        cache,
        |t| a.embed_with(t).re,
        || a.real_part(),
    )
}

/// Certify `Re(a) < bound`.
pub fn real_part_lt(
    a: &CycloElement,
    bound: &Rational,
    policy: PrecisionPolicy,
    cache: &mut RootCache,
) -> Comparison {
    compare(
        a.order(),
        bound,
        Relation::Lt,
        policy,
        cache,
        |t| a.embed_with(t).re,
        || a.real_part(),
    )
}

/// Certify `Re(s) ≤ bound` for a formal root sum, reducing only on ties.
pub fn root_sum_real_part_le(
    s: &RootSum,
    bound: &Rational,
    policy: PrecisionPolicy,
    cache: &mut RootCache,
) -> Comparison {
    compare(
        s.order(),
        bound,
        Relation::Le,
        policy,
        cache,
        |t| s.eval(t).re,
        || {
            let field = super::cyclo::CycloField::new(s.order());
            s.to_element(&field).real_part()
        },
    )
}
