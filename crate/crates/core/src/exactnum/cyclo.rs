//! The cyclotomic field `ℚ[ω_N]` in reduced power-basis form.
//!
//! An element is stored as its unique representative of degree `< φ(N)`
//! modulo the cyclotomic polynomial Φ_N, so structural equality is field
//! equality. Arithmetic runs on machine integers while every coefficient is
//! integral and fits, and falls back to exact rationals otherwise.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::arith::{euler_phi, gcd, modulo};
use super::interval::{ComplexInterval, RootTable};
use super::poly::{cyclotomic_polynomial, RatPoly};
use super::Rational;
use crate::error::{Error, Result};

/// Above this many entries the `xᵉ mod Φ_N` table is skipped and reduction
/// falls back to long division.
const POWER_TABLE_LIMIT: usize = 1 << 22;

trait Coeff: Clone {
    fn c_zero() -> Self;
    fn c_is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    /// `self += a·b`; `false` on overflow.
    fn add_mul(&mut self, a: &Self, b: &Self) -> bool;
    fn add_assign(&mut self, a: &Self) -> bool;
}

impl Coeff for i64 {
    fn c_zero() -> Self {
        0
    }
    fn c_is_zero(&self) -> bool {
        *self == 0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn add_mul(&mut self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|p| self.checked_add(p)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn add_assign(&mut self, a: &Self) -> bool {
        match self.checked_add(*a) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
}

impl Coeff for Rational {
    fn c_zero() -> Self {
        Zero::zero()
    }
    fn c_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(Rational::from_integer(v.clone()))
    }
    fn add_mul(&mut self, a: &Self, b: &Self) -> bool {
        *self += a * b;
        true
    }
    fn add_assign(&mut self, a: &Self) -> bool {
        *self += a;
        true
    }
}

/// Shared description of `ℚ[ω_N]`: the modulus and its reduction data.
#[derive(Debug)]
pub struct CycloField {
    order: u64,
    degree: usize,
    modulus: Vec<BigInt>,
    /// Row `e` holds the reduced coefficients of `xᵉ`, for `φ(N) ≤ e < N`.
    powers: Option<Vec<Vec<i64>>>,
}

static FIELDS: OnceLock<Mutex<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();

impl CycloField {
    /// The field of order `order`, built once per process and shared.
    pub fn new(order: u64) -> Arc<Self> {
        assert!(order >= 1, "cyclotomic field order must be positive");
        let fields = FIELDS.get_or_init(Default::default);
        if let Some(f) = fields.lock().unwrap_or_else(|e| e.into_inner()).get(&order) {
            return Arc::clone(f);
        }
        let field = Self::build(order);
        let mut guard = fields.lock().unwrap_or_else(|e| e.into_inner());
        Arc::clone(guard.entry(order).or_insert(field))
    }

    fn build(order: u64) -> Arc<Self> {
        let modulus = cyclotomic_polynomial(order);
        let degree = euler_phi(order) as usize;
        debug_assert_eq!(modulus.len(), degree + 1);
        let powers = if (order as usize).saturating_mul(degree) <= POWER_TABLE_LIMIT {
            Self::power_table(order as usize, degree, &modulus)
        } else {
            None
        };
        Arc::new(CycloField {
            order,
            degree,
            modulus,
            powers,
        })
    }

    fn power_table(order: usize, degree: usize, modulus: &[BigInt]) -> Option<Vec<Vec<i64>>> {
        let neg_mod: Vec<i64> = modulus[..degree]
            .iter()
            .map(|c| c.to_i64().and_then(i64::checked_neg))
            .collect::<Option<_>>()?;
        let mut rows = Vec::with_capacity(order - degree);
        // x^(φ-1) as starting point
        let mut cur = vec![0i64; degree];
        cur[degree - 1] = 1;
        for _ in degree..order {
            // multiply by x: shift up and fold the overflow term back in
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (c, m) in cur.iter_mut().zip(&neg_mod) {
                    if !c.add_mul(&top, m) {
                        return None;
                    }
                }
            }
            rows.push(cur.clone());
        }
        Some(rows)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `φ(N)`, the dimension over ℚ.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Reduce a dense vector indexed by exponents `0..N` to the power basis.
    fn reduce<C: Coeff>(&self, dense: Vec<C>) -> Option<Vec<C>> {
        debug_assert_eq!(dense.len(), self.order as usize);
        let d = self.degree;
        match &self.powers {
            Some(rows) => {
                let mut out: Vec<C> = dense[..d].to_vec();
                for (row, c) in rows.iter().zip(&dense[d..]) {
                    if c.c_is_zero() {
                        continue;
                    }
                    for (o, &p) in out.iter_mut().zip(row) {
                        if p != 0 && !o.add_mul(c, &C::from_i64(p)) {
                            return None;
                        }
                    }
                }
                Some(out)
            }
            None => {
                let neg_mod: Vec<C> = self.modulus[..d]
                    .iter()
                    .map(|c| C::from_big(&-c))
                    .collect::<Option<_>>()?;
                let mut v = dense;
                for top in (d..v.len()).rev() {
                    let c = std::mem::replace(&mut v[top], C::c_zero());
                    if c.c_is_zero() {
                        continue;
                    }
                    for (i, m) in neg_mod.iter().enumerate() {
                        if !v[top - d + i].add_mul(&c, m) {
                            return None;
                        }
                    }
                }
                v.truncate(d);
                Some(v)
            }
        }
    }

    /// Reduce exponent-indexed data, preferring the machine-integer path.
    fn reduce_from<F, G>(&self, fast: F, slow: G) -> Vec<Rational>
    where
        F: FnOnce() -> Option<Vec<i64>>,
        G: FnOnce() -> Vec<Rational>,
    {
        if let Some(out) = fast().and_then(|dense| self.reduce(dense)) {
            return out.into_iter().map(Rational::from_i64).collect();
        }
        self.reduce(slow()).expect("rational reduction cannot overflow")
    }
}

fn to_machine(coeffs: &[Rational]) -> Option<Vec<i64>> {
    coeffs
        .iter()
        .map(|c| if c.is_integer() { c.numer().to_i64() } else { None })
        .collect()
}

/// Element of `ℚ[ω_N]`.
#[derive(Clone)]
pub struct CycloElement {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElement {}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement(N={}, [", self.field.order)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})*w{}^{j}", self.field.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl CycloElement {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        Self::from_rational(field, Rational::zero())
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<CycloField>, q: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); field.degree];
        coeffs[0] = q;
        CycloElement {
            field: Arc::clone(field),
            coeffs,
        }
    }

    /// `ω_N^j`, with `j` reduced modulo `N`.
    pub fn root_of_unity(field: &Arc<CycloField>, j: i64) -> Self {
        RootSum::monomial(field.order, 1, j).to_element(field)
    }

    /// Build from power-basis coefficients of degree `< φ(N)`.
    pub fn from_coeffs(field: &Arc<CycloField>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != field.degree {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients for N = {}, got {}",
                field.degree,
                field.order,
                coeffs.len()
            )));
        }
        Ok(CycloElement {
            field: Arc::clone(field),
            coeffs,
        })
    }

    /// Build from an arbitrary polynomial in `ω_N`, reducing modulo Φ_N.
    pub fn from_poly(field: &Arc<CycloField>, poly: &[Rational]) -> Self {
        let n = field.order as usize;
        let mut dense = vec![Rational::zero(); n];
        for (e, c) in poly.iter().enumerate() {
            dense[e % n] += c;
        }
        let coeffs = field.reduce_from(|| to_machine(&dense), || dense.clone());
        CycloElement {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field.order == other.field.order {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.field.order,
                right: other.field.order,
            })
        }
    }

    fn with_coeffs(&self, coeffs: Vec<Rational>) -> Self {
        CycloElement {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn add_rational(&self, q: &Rational) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += q;
        self.with_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.field.order as usize;
        fn conv<C: Coeff>(a: &[C], b: &[C], n: usize) -> Option<Vec<C>> {
            let mut acc = vec![C::c_zero(); n];
            for (i, x) in a.iter().enumerate() {
                if x.c_is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if !y.c_is_zero() && !acc[(i + j) % n].add_mul(x, y) {
                        return None;
                    }
                }
            }
            Some(acc)
        }
        let coeffs = self.field.reduce_from(
            || conv(&to_machine(&self.coeffs)?, &to_machine(&other.coeffs)?, n),
            || conv(&self.coeffs, &other.coeffs, n).expect("rational"),
        );
        Ok(self.with_coeffs(coeffs))
    }

    /// Apply the exponent map `ω_N ↦ ω_N^k` to the power-basis representative.
    fn exponent_map(&self, k: u64) -> Self {
        let n = self.field.order;
        fn scatter<C: Coeff>(a: &[C], k: u64, n: u64) -> Option<Vec<C>> {
            let mut acc = vec![C::c_zero(); n as usize];
            for (j, c) in a.iter().enumerate() {
                if !c.c_is_zero() && !acc[((j as u64 * k) % n) as usize].add_assign(c) {
                    return None;
                }
            }
            Some(acc)
        }
        let coeffs = self.field.reduce_from(
            || scatter(&to_machine(&self.coeffs)?, k, n),
            || scatter(&self.coeffs, k, n).expect("rational"),
        );
        self.with_coeffs(coeffs)
    }

    /// Complex conjugation, `ω_N ↦ ω_N^{N−1}`.
    pub fn conj(&self) -> Self {
        let n = self.field.order;
        self.exponent_map(n - 1)
    }

    /// The Galois automorphism `σ_k : ω_N ↦ ω_N^k`; requires `gcd(k, N) = 1`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.field.order;
        let k = modulo(k, n);
        if gcd(k, n) != 1 {
            return Err(Error::NotCoprime { k: k as i64, n });
        }
        Ok(self.exponent_map(k))
    }

    /// The same value viewed in `ℚ[ω_M]`; requires `N | M`.
    pub fn lift(&self, m: u64) -> Result<Self> {
        let n = self.field.order;
        if m == 0 || m % n != 0 {
            return Err(Error::NotDivisible { from: n, to: m });
        }
        if m == n {
            return Ok(self.clone());
        }
        let target = CycloField::new(m);
        Ok(self.lift_into(&target))
    }

    /// Like [`lift`](Self::lift) with a caller-provided target field.
    pub fn lift_into(&self, target: &Arc<CycloField>) -> Self {
        let (n, m) = (self.field.order, target.order);
        assert!(m % n == 0, "{n} does not divide {m}");
        let step = (m / n) as usize;
        fn scatter<C: Coeff>(a: &[C], step: usize, m: usize) -> Vec<C> {
            let mut acc = vec![C::c_zero(); m];
            for (j, c) in a.iter().enumerate() {
                acc[j * step] = c.clone();
            }
            acc
        }
        let coeffs = target.reduce_from(
            || Some(scatter(&to_machine(&self.coeffs)?, step, m as usize)),
            || scatter(&self.coeffs, step, m as usize),
        );
        CycloElement {
            field: Arc::clone(target),
            coeffs,
        }
    }

    /// Multiplicative inverse via extended Euclid against Φ_N.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = RatPoly::new(self.coeffs.clone());
        let phi = RatPoly::from_ints(&self.field.modulus);
        let (g, s, _) = RatPoly::xgcd(&a, &phi);
        debug_assert_eq!(g.degree(), Some(0), "Φ_N is irreducible");
        Ok(CycloElement::from_poly(&self.field, s.coeffs()))
    }

    /// `(a + ā) / 2`.
    pub fn real_part(&self) -> Self {
        let sum = self.add(&self.conj()).expect("same field");
        sum.scale(&Rational::new(1.into(), 2.into()))
    }

    /// Rigorous enclosure of the value at `ω_N = exp(2πi/N)`.
    pub fn embed_with(&self, table: &RootTable) -> ComplexInterval {
        assert_eq!(table.order(), self.field.order, "root table for the wrong modulus");
        table.eval(self.coeffs.iter().enumerate().map(|(j, c)| (c, j as u64)))
    }

    /// Floating-point value at `ω_N = exp(2πi/N)`.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let n = self.field.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let a = 2.0 * std::f64::consts::PI * j as f64 / n;
                num_complex::Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), a)
            })
            .sum()
    }
}

/// Formal integer combination `Σ cₑ·ω_N^e` of roots of unity.
///
/// This is the group ring `ℤ[ℤ/N]`, which maps onto the ring of integers of
/// `ℚ[ω_N]`. Products and Galois maps are cheap here because nothing is
/// reduced until [`to_element`](Self::to_element) is called.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSum {
    order: u64,
    terms: BTreeMap<u64, i64>,
}

impl RootSum {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1);
        RootSum {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(order: u64, c: i64) -> Self {
        Self::monomial(order, c, 0)
    }

    pub fn monomial(order: u64, c: i64, exp: i64) -> Self {
        let mut s = Self::zero(order);
        s.push(c, modulo(exp, order));
        s
    }

    fn push(&mut self, c: i64, exp: u64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(exp % self.order).or_insert(0);
        *slot = slot.checked_add(c).expect("root sum coefficient overflow");
        if *slot == 0 {
            self.terms.remove(&(exp % self.order));
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order, other.order, "root sums over different moduli");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.push(c, e);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.order);
        for (e, c) in self.terms() {
            out.push(c.checked_mul(k).expect("root sum coefficient overflow"), e);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(self.order);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let c = c1.checked_mul(c2).expect("root sum coefficient overflow");
                out.push(c, (e1 + e2) % self.order);
            }
        }
        out
    }

    /// The ring map `ω ↦ ω^k`. It is a field automorphism after reduction
    /// only when `k` is a unit modulo `N`.
    pub fn power_map(&self, k: i64) -> Self {
        let k = modulo(k, self.order);
        let mut out = Self::zero(self.order);
        for (e, c) in self.terms() {
            out.push(c, (e * k) % self.order);
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.power_map(-1)
    }

    /// Re-express over `ω_M` for a multiple `M` of the current order.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if m == 0 || m % self.order != 0 {
            return Err(Error::NotDivisible {
                from: self.order,
                to: m,
            });
        }
        let step = m / self.order;
        let mut out = Self::zero(m);
        for (e, c) in self.terms() {
            out.push(c, e * step);
        }
        Ok(out)
    }

    pub fn to_element(&self, field: &Arc<CycloField>) -> CycloElement {
        assert_eq!(field.order, self.order, "field modulus mismatch");
        let n = field.order as usize;
        let coeffs = field.reduce_from(
            || {
                let mut dense = vec![0i64; n];
                for (e, c) in self.terms() {
                    dense[e as usize] = c;
                }
                Some(dense)
            },
            || {
                let mut dense = vec![Rational::zero(); n];
                for (e, c) in self.terms() {
                    dense[e as usize] = Rational::from_integer(c.into());
                }
                dense
            },
        );
        CycloElement {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn eval(&self, table: &RootTable) -> ComplexInterval {
        assert_eq!(table.order(), self.order, "root table for the wrong modulus");
        let coeffs: Vec<(Rational, u64)> = self
            .terms()
            .map(|(e, c)| (Rational::from_integer(c.into()), e))
            .collect();
        table.eval(coeffs.iter().map(|(c, e)| (c, *e)))
    }
}

/// `ω_N^j` in its own field.
pub fn make_root_of_unity(n: u64, j: i64) -> CycloElement {
    CycloElement::root_of_unity(&CycloField::new(n), j)
}

pub fn galois_apply(a: &CycloElement, k: i64) -> Result<CycloElement> {
    a.galois(k)
}

pub fn lift(a: &CycloElement, m: u64) -> Result<CycloElement> {
    a.lift(m)
}

/// Smallest positive `k' ≡ k (mod n)` that is a unit modulo `big_n`.
pub fn extend_residue(k: i64, n: u64, big_n: u64) -> Result<u64> {
    if n == 0 || big_n == 0 || big_n % n != 0 {
        return Err(Error::NotDivisible { from: n, to: big_n });
    }
    let r = modulo(k, n);
    if gcd(r, n) != 1 {
        return Err(Error::NotCoprime { k, n });
    }
    let mut cand = if r == 0 { n } else { r };
    // the residue class r + nℤ meets (ℤ/big_nℤ)* by the Chinese remainder theorem
    while gcd(cand, big_n) != 1 {
        cand += n;
    }
    Ok(cand)
}

/// Rigorous enclosure of `a` at `ω_N = exp(2πi/N)`, `precision ≥ 53` bits.
pub fn embed_complex(a: &CycloElement, precision: u32) -> Result<ComplexInterval> {
    if precision < 53 {
        return Err(Error::InvalidParameter(format!(
            "embedding precision must be at least 53 bits, got {precision}"
        )));
    }
    Ok(a.embed_with(&RootTable::new(a.order(), precision)))
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    #[serde(rename = "N")]
    order: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycloElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            order: self.field.order,
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CycloRepr::deserialize(d)?;
        if repr.order == 0 {
            return Err(D::Error::custom("N must be positive"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| s.parse::<Rational>().map_err(|e| D::Error::custom(format!("{s}: {e}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CycloElement::from_coeffs(&CycloField::new(repr.order), coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn roots_of_unity() {
        let one = make_root_of_unity(1, 0);
        assert_eq!(one.as_rational(), Some(Rational::one()));
        let i = make_root_of_unity(4, 1);
        assert!(close(i.to_complex(), Complex64::new(0.0, 1.0)));
        let minus_one = make_root_of_unity(12, 6);
        assert_eq!(minus_one.as_rational(), Some(-Rational::one()));
        assert!(close(minus_one.to_complex(), Complex64::new(-1.0, 0.0)));
        // negative and large exponents wrap
        assert_eq!(make_root_of_unity(12, -6), minus_one);
        assert_eq!(make_root_of_unity(12, 18), minus_one);
    }

    #[test]
    fn basic_arithmetic() {
        let f4 = CycloField::new(4);
        let i = CycloElement::root_of_unity(&f4, 1);
        assert_eq!(i.conj(), CycloElement::root_of_unity(&f4, 3));

        let f3 = CycloField::new(3);
        let s = CycloElement::root_of_unity(&f3, 1)
            .add(&CycloElement::root_of_unity(&f3, 2))
            .unwrap();
        assert_eq!(s.as_rational(), Some(-Rational::one()));

        let f12 = CycloField::new(12);
        let p = CycloElement::root_of_unity(&f12, 2)
            .mul(&CycloElement::root_of_unity(&f12, 10))
            .unwrap();
        assert_eq!(p, CycloElement::one(&f12));
    }

    #[test]
    fn mismatched_moduli_rejected() {
        let a = make_root_of_unity(3, 1);
        let b = make_root_of_unity(4, 1);
        assert_eq!(a.add(&b), Err(Error::ModulusMismatch { left: 3, right: 4 }));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn lifting() {
        let w3 = make_root_of_unity(3, 1);
        assert_eq!(w3.lift(12).unwrap(), make_root_of_unity(12, 4));
        let one = make_root_of_unity(1, 0);
        assert_eq!(one.lift(7).unwrap().as_rational(), Some(Rational::one()));
        let f4 = CycloField::new(4);
        let z = CycloElement::root_of_unity(&f4, 1)
            .add(&CycloElement::root_of_unity(&f4, 3))
            .unwrap();
        assert!(z.lift(8).unwrap().is_zero());
        assert_eq!(w3.lift(10), Err(Error::NotDivisible { from: 3, to: 10 }));
    }

    #[test]
    fn galois_examples() {
        let w = make_root_of_unity(12, 1);
        assert_eq!(galois_apply(&w, 5).unwrap(), make_root_of_unity(12, 5));
        assert_eq!(w.galois(2), Err(Error::NotCoprime { k: 2, n: 12 }));
        let f3 = CycloField::new(3);
        let s = CycloElement::root_of_unity(&f3, 1)
            .add(&CycloElement::root_of_unity(&f3, 2))
            .unwrap();
        assert_eq!(s.galois(2).unwrap(), s);
        let r = CycloElement::from_rational(&CycloField::new(15), q(7, 2));
        for k in [1, 2, 4, 7, 8, 11, 13, 14] {
            assert_eq!(r.galois(k).unwrap(), r);
        }
    }

    #[test]
    fn residue_extension() {
        assert_eq!(extend_residue(1, 3, 12), Ok(1));
        assert_eq!(extend_residue(2, 3, 12), Ok(5));
        assert_eq!(extend_residue(1, 2, 2), Ok(1));
        assert_eq!(extend_residue(0, 1, 30), Ok(1));
        assert_eq!(extend_residue(-1, 3, 12), Ok(5));
        assert!(extend_residue(3, 6, 12).is_err());
        assert!(extend_residue(1, 5, 12).is_err());
        for n in 1..30u64 {
            for mult in 1..6u64 {
                let big = n * mult;
                for k in (1..=n).filter(|&k| gcd(k, n) == 1) {
                    let e = extend_residue(k as i64, n, big).unwrap();
                    assert_eq!(e % n, k % n);
                    assert_eq!(gcd(e, big), 1);
                }
            }
        }
    }

    #[test]
    fn embeddings() {
        let one = make_root_of_unity(1, 0);
        let e = embed_complex(&one, 64).unwrap();
        assert_eq!(e.radius(), Rational::zero());
        assert_eq!(e.midpoint(), (Rational::one(), Rational::zero()));

        let i = embed_complex(&make_root_of_unity(4, 1), 64).unwrap();
        assert!(i.re.contains(&Rational::zero()) && i.im.contains(&Rational::one()));

        let f3 = CycloField::new(3);
        let s = CycloElement::root_of_unity(&f3, 1)
            .add(&CycloElement::root_of_unity(&f3, 2))
            .unwrap();
        let e = embed_complex(&s, 64).unwrap();
        assert!(e.re.contains(&-Rational::one()));
        assert!(e.radius() <= Rational::new(1.into(), BigInt::one() << 40usize));

        // the power basis of ℚ[ω₃] is {1, ω₃}, so ω₃ itself carries rounding error
        let w = embed_complex(&CycloElement::root_of_unity(&f3, 1), 64).unwrap();
        assert!(w.re.contains(&q(-1, 2)));
        assert!(embed_complex(&s, 32).is_err());
    }

    #[test]
    fn radius_shrinks_with_precision() {
        let w = make_root_of_unity(7, 3);
        let r1 = embed_complex(&w, 64).unwrap().radius();
        let r2 = embed_complex(&w, 256).unwrap().radius();
        assert!(r2 < r1);
    }

    #[test]
    fn inverse_of_root() {
        let w = make_root_of_unity(9, 2);
        assert_eq!(w.inverse().unwrap(), make_root_of_unity(9, 7));
        let f5 = CycloField::new(5);
        let zero = CycloElement::zero(&f5);
        assert_eq!(zero.inverse(), Err(Error::DivisionByZero));
        let two = CycloElement::from_rational(&f5, q(2, 1));
        assert_eq!(two.inverse().unwrap().as_rational(), Some(q(1, 2)));
    }

    #[test]
    fn rational_fallback_path() {
        let f7 = CycloField::new(7);
        let a = CycloElement::from_poly(&f7, &[q(1, 3), q(0, 1), q(5, 2)]);
        let b = CycloElement::from_poly(&f7, &[q(i64::MAX, 1), q(i64::MAX, 1)]);
        let ab = a.mul(&b).unwrap();
        let expected = a.to_complex() * b.to_complex();
        assert!((ab.to_complex() - expected).norm() / expected.norm() < 1e-12);
    }

    #[test]
    fn long_division_agrees_with_table() {
        // force both reduction routes for the same input
        let f = CycloField::new(30);
        let dense: Vec<i64> = (0..30).map(|e| (e * 7 % 5) as i64 - 2).collect();
        let by_table = f.reduce(dense.clone()).unwrap();
        let no_table = CycloField {
            order: f.order,
            degree: f.degree,
            modulus: f.modulus.clone(),
            powers: None,
        };
        assert_eq!(no_table.reduce(dense).unwrap(), by_table);
    }

    #[test]
    fn root_sum_reduction() {
        let f = CycloField::new(12);
        let s = RootSum::monomial(12, 1, 2).add(&RootSum::monomial(12, 1, 10));
        // ω¹² + ω¹²¹⁰ = 2cos(π/3) = 1
        assert_eq!(s.to_element(&f).as_rational(), Some(Rational::one()));
        let lifted = RootSum::monomial(3, 1, 1).lift(12).unwrap();
        assert_eq!(lifted, RootSum::monomial(12, 1, 4));
        assert_eq!(s.conj(), s);
    }

    #[test]
    fn json_round_trip() {
        let f = CycloField::new(8);
        let a = CycloElement::from_poly(&f, &[q(1, 2), q(-3, 1), q(0, 1), q(5, 7)]);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"{"N":8,"coeffs":["1/2","-3","0","5/7"]}"#);
        let back: CycloElement = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<CycloElement>(r#"{"N":8,"coeffs":["1"]}"#).is_err());
    }
}
