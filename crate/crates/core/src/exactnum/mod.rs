//! Exact arithmetic: rationals, cyclotomic fields, Galois maps, and the
//! arithmetic functions the certifier needs.

pub mod arith;
pub mod compare;
pub mod cyclo;
pub mod interval;
pub mod poly;

pub use arith::{divisors, euler_phi, gcd, lcm, moebius, units};
pub use compare::{Comparison, Decision, PrecisionPolicy, RootCache};
pub use cyclo::{
    embed_complex, extend_residue, galois_apply, lift, make_root_of_unity, CycloElement,
    CycloField, RootSum,
};
pub use interval::{Ball, ComplexInterval, Interval, RootTable};
pub use poly::{cyclotomic_polynomial, format_poly};

/// Arbitrary-precision fraction, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `Σ_{k ∈ (ℤ/nℤ)*} σ_k(ω_n^e)` in closed form, `μ(d)·φ(n)/φ(d)` with `d = n/gcd(e, n)`.
///
/// `ω_n^e` is a primitive `d`-th root of unity, the reduction map
/// `(ℤ/nℤ)* → (ℤ/dℤ)*` is onto with fibres of size `φ(n)/φ(d)`, and the
/// primitive `d`-th roots sum to `μ(d)`.
pub fn primitive_root_sum(n: u64, e: i64) -> Rational {
    assert!(n >= 1);
    let e = arith::modulo(e, n);
    let d = n / gcd(e, n);
    Rational::new(
        (moebius(d) * euler_phi(n) as i64).into(),
        (euler_phi(d) as i64).into(),
    )
}
