//! Hypothetical finite-order traces and the exact circle equation.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::arith::modulo;
use crate::exactnum::{gcd, lcm, units, CycloElement, CycloField, RootSum};

/// `τ = ω_n^{k₁} + ω_n^{k₂} + ω_n^{k₃}` with `k₁ + k₂ + k₃ ≡ 0 (mod n)` and
/// `n` minimal, i.e. `gcd(k₁, k₂, k₃, n) = 1`.
///
/// Ordering is lexicographic in `(n, k₁, k₂, k₃)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TraceCandidate {
    pub n: u64,
    /// Exponents reduced to `[0, n)`.
    pub k: [u64; 3],
}

impl TraceCandidate {
    pub fn new(n: u64, k: [i64; 3]) -> Result<Self> {
        let c = Self::with_modulus(n, k)?;
        if !c.is_minimal() {
            return Err(Error::InvalidParameter(format!(
                "exponents {:?} are not minimal for n = {n}",
                c.k
            )));
        }
        Ok(c)
    }

    /// Like [`new`](Self::new) but accepts a non-minimal modulus, e.g. `3ω₃`
    /// written over `ω₁₂` as `(12; 4, 4, 4)`.
    pub fn with_modulus(n: u64, k: [i64; 3]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("root-of-unity order must be positive".into()));
        }
        let k = k.map(|e| modulo(e, n));
        if (k[0] + k[1] + k[2]) % n != 0 {
            return Err(Error::InvalidParameter(format!(
                "exponents {k:?} do not sum to 0 modulo {n}"
            )));
        }
        Ok(TraceCandidate { n, k })
    }

    pub fn is_minimal(&self) -> bool {
        self.k.iter().fold(self.n, |g, &e| gcd(g, e)) == 1
    }

    /// The same trace over the least modulus.
    pub fn minimal(&self) -> Self {
        let g = self.k.iter().fold(self.n, |g, &e| gcd(g, e));
        TraceCandidate {
            n: self.n / g,
            k: self.k.map(|e| e / g),
        }
    }

    /// Caller guarantees reduced exponents summing to 0 with gcd 1.
    pub(crate) fn from_reduced(n: u64, k: [u64; 3]) -> Self {
        debug_assert!(k.iter().all(|&e| e < n) && (k[0] + k[1] + k[2]) % n == 0);
        TraceCandidate { n, k }
    }

    /// `dᵢ = n / gcd(kᵢ, n)`, the exact order of `ω_n^{kᵢ}`.
    pub fn d(&self) -> [u64; 3] {
        self.k.map(|e| self.n / gcd(e, self.n))
    }

    pub fn root_sum(&self) -> RootSum {
        self.k.iter().fold(RootSum::zero(self.n), |acc, &e| {
            acc.add(&RootSum::monomial(self.n, 1, e as i64))
        })
    }

    /// The three eigenvalues `ω_n^{kᵢ}` are pairwise distinct.
    pub fn has_distinct_exponents(&self) -> bool {
        let [a, b, c] = self.k;
        a != b && b != c && a != c
    }

    /// Exponents multiplied by `u`, i.e. the image under `σ_u`.
    pub fn scaled(&self, u: u64) -> Self {
        let n = self.n;
        TraceCandidate {
            n,
            k: self.k.map(|e| (e * (u % n)) % n),
        }
    }

    pub fn sorted(&self) -> Self {
        let mut k = self.k;
        k.sort_unstable();
        TraceCandidate { n: self.n, k }
    }

    /// Least sorted representative under permutations and `σ_u`, `u ∈ (ℤ/n)*`.
    pub fn canonical(&self) -> Self {
        units(self.n)
            .into_iter()
            .map(|u| self.scaled(u).sorted())
            .min()
            .expect("units are never empty")
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        self.k
            .iter()
            .map(|&e| {
                let a = 2.0 * std::f64::consts::PI * e as f64 / self.n as f64;
                num_complex::Complex64::from_polar(1.0, a)
            })
            .sum()
    }
}

impl fmt::Display for TraceCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.k;
        write!(f, "(n={}; {a}, {b}, {c})", self.n)
    }
}

/// The candidate's trace in `ℚ[ω_N]`; requires `n | N`.
pub fn candidate_trace(c: &TraceCandidate, big_n: u64) -> Result<CycloElement> {
    let lifted = c.root_sum().lift(big_n)?;
    Ok(lifted.to_element(&CycloField::new(big_n)))
}

/// `8r² = 2(ω_{2m} + ω_{2m}⁻¹)²` as an integer root sum over `ω_{2m}`.
pub fn eight_r_squared_sum(m: u32) -> RootSum {
    assert!(m >= 1, "vertex order must be positive");
    let n = 2 * u64::from(m);
    let two_r = RootSum::monomial(n, 1, 1).add(&RootSum::monomial(n, 1, -1));
    two_r.mul(&two_r).scale(2)
}

/// Exact `8r² = 8cos²(π/m)` in `ℚ[ω_N]`; requires `m ≥ 2` and `2m | N`.
pub fn eight_r_squared(m: u32, big_n: u64) -> Result<CycloElement> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("vertex order {m} < 2")));
    }
    let lifted = eight_r_squared_sum(m).lift(big_n)?;
    Ok(lifted.to_element(&CycloField::new(big_n)))
}

/// `(τ + c + 1)(τ̄ + c + 1) − c²` for root sums of the same order, `c` real.
pub fn circle_residual_sum(tau: &RootSum, c: &RootSum) -> RootSum {
    let shifted = tau.add(c).add(&RootSum::constant(tau.order(), 1));
    shifted.mul(&shifted.conj()).sub(&c.mul(c))
}

/// Common modulus `lcm(n, 2m)` for the circle test.
pub fn circle_modulus(n: u64, m: u32) -> u64 {
    lcm(n, 2 * u64::from(m))
}

/// Residual of a trace given as a root sum, reduced in `ℚ[ω_N]`, `N = lcm(ord τ, 2m)`.
pub fn trace_circle_residual(tau: &RootSum, m: u32, field: Option<&std::sync::Arc<CycloField>>) -> CycloElement {
    let big_n = circle_modulus(tau.order(), m);
    let tau = tau.lift(big_n).expect("order divides the lcm");
    let c = eight_r_squared_sum(m).lift(big_n).expect("2m divides the lcm");
    let residual = circle_residual_sum(&tau, &c);
    match field {
        Some(f) => residual.to_element(f),
        None => residual.to_element(&CycloField::new(big_n)),
    }
}

/// `(τ + 8r² + 1)(τ̄ + 8r² + 1) − (8r²)²` in `ℚ[ω_N]`, `N = lcm(n, 2m)`.
///
/// Zero exactly when `τ = 8r²e^{iα} − (8r² + 1)` for some real α.
pub fn circle_residual_exact(c: &TraceCandidate, m: u32) -> CycloElement {
    trace_circle_residual(&c.root_sum(), m, None)
}

/// `τ = 8r²·ω_M^j − (8r² + 1)`, the trace at `e^{iα} = ω_M^j`, over `ω_{lcm(M, 2m)}`.
pub fn exact_circle_trace(m: u32, modulus: u64, j: i64) -> Result<RootSum> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("vertex order {m} < 2")));
    }
    if modulus == 0 {
        return Err(Error::InvalidParameter("phase modulus must be positive".into()));
    }
    let big_n = circle_modulus(modulus, m);
    let c = eight_r_squared_sum(m).lift(big_n)?;
    let phase = RootSum::monomial(modulus, 1, j).lift(big_n)?;
    Ok(c.mul(&phase).sub(&c).sub(&RootSum::constant(big_n, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn int(v: i64) -> Option<Rational> {
        Some(Rational::from_integer(v.into()))
    }

    #[test]
    fn small_traces() {
        let id = TraceCandidate::new(1, [0, 0, 0]).unwrap();
        assert_eq!(candidate_trace(&id, 1).unwrap().as_rational(), int(3));
        let inv = TraceCandidate::new(2, [1, 1, 0]).unwrap();
        assert_eq!(candidate_trace(&inv, 4).unwrap().as_rational(), int(-1));
        let t = TraceCandidate::new(3, [1, 1, 1]).unwrap();
        let z = candidate_trace(&t, 3).unwrap().to_complex();
        assert!((z.re + 1.5).abs() < 1e-12 && (z.im - 1.5 * 3f64.sqrt()).abs() < 1e-12);
        assert!(candidate_trace(&t, 4).is_err());
    }

    #[test]
    fn invalid_candidates() {
        assert!(TraceCandidate::new(4, [1, 1, 1]).is_err());
        assert!(TraceCandidate::new(4, [2, 2, 0]).is_err());
        assert!(TraceCandidate::new(0, [0, 0, 0]).is_err());
        assert_eq!(TraceCandidate::new(5, [-1, 6, 0]).unwrap().k, [4, 1, 0]);
        let wide = TraceCandidate::with_modulus(12, [4, 4, 4]).unwrap();
        assert!(!wide.is_minimal());
        assert_eq!(wide.minimal(), TraceCandidate::new(3, [1, 1, 1]).unwrap());
        assert_eq!(wide.d(), [3, 3, 3]);
    }

    #[test]
    fn eight_r_squared_values() {
        assert_eq!(eight_r_squared(2, 4).unwrap().as_rational(), int(0));
        assert_eq!(eight_r_squared(3, 6).unwrap().as_rational(), int(2));
        assert_eq!(eight_r_squared(6, 12).unwrap().as_rational(), int(6));
        assert_eq!(eight_r_squared(4, 24).unwrap().as_rational(), int(4));
        assert!(eight_r_squared(5, 15).is_err());
        assert!(eight_r_squared(1, 2).is_err());
    }

    #[test]
    fn residual_examples() {
        let inv = TraceCandidate::new(2, [1, 1, 0]).unwrap();
        for m in 2..10 {
            assert!(circle_residual_exact(&inv, m).is_zero());
        }
        let t = TraceCandidate::new(3, [1, 1, 1]).unwrap();
        // (3ω₃ + 3)(3ω̄₃ + 3) − 4 = 9 − 9 + 9 − 4 = 5
        assert_eq!(circle_residual_exact(&t, 3).as_rational(), int(5));
    }

    #[test]
    fn on_circle_traces_have_zero_residual() {
        for m in 2..8u32 {
            for j in 0..8 {
                let tau = exact_circle_trace(m, 8, j).unwrap();
                assert!(trace_circle_residual(&tau, m, None).is_zero());
            }
        }
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let c = TraceCandidate::new(7, [1, 2, 4]).unwrap();
        let rep = c.canonical();
        for u in units(7) {
            assert_eq!(c.scaled(u).canonical(), rep);
        }
        assert_eq!(rep.k, [1, 2, 4]);
    }
}
