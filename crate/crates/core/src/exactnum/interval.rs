//! Rigorous fixed-point interval arithmetic.
//!
//! An [`Interval`] at precision `p` is a pair of integers `lo ≤ hi` standing
//! for the closed real interval `[lo·2⁻ᵖ, hi·2⁻ᵖ]`. Every operation rounds
//! outward, so the true value of any expression evaluated here lies inside the
//! returned enclosure. Trigonometric values at rational multiples of a full
//! turn are obtained from a Machin-formula enclosure of π and alternating
//! Taylor series with explicit tail bounds.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

impl Interval {
    pub fn exact_int(v: i64, bits: u32) -> Self {
        let x = BigInt::from(v) << bits as usize;
        Interval { lo: x.clone(), hi: x, bits }
    }

    pub fn zero(bits: u32) -> Self {
        Self::exact_int(0, bits)
    }

    /// Outward-rounded enclosure of a rational.
    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        let scaled = q.numer() << bits as usize;
        Interval {
            lo: scaled.div_floor(q.denom()),
            hi: scaled.div_ceil(q.denom()),
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lower(&self) -> Rational {
        Rational::new(self.lo.clone(), pow2(self.bits))
    }

    pub fn upper(&self) -> Rational {
        Rational::new(self.hi.clone(), pow2(self.bits))
    }

    pub fn midpoint(&self) -> Rational {
        Rational::new(&self.lo + &self.hi, pow2(self.bits + 1))
    }

    pub fn half_width(&self) -> Rational {
        Rational::new(&self.hi - &self.lo, pow2(self.bits + 1))
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    fn check_bits(&self, other: &Self) {
        assert_eq!(self.bits, other.bits, "interval precision mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_bits(other);
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            bits: self.bits,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            bits: self.bits,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_bits(other);
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        let unit = pow2(self.bits);
        Interval {
            lo: min.div_floor(&unit),
            hi: max.div_ceil(&unit),
            bits: self.bits,
        }
    }

    /// Multiplication by an exact rational.
    pub fn scale(&self, q: &Rational) -> Self {
        let (a, b) = (&self.lo * q.numer(), &self.hi * q.numer());
        let (lo, hi) = if q.numer().is_negative() { (b, a) } else { (a, b) };
        Interval {
            lo: lo.div_floor(q.denom()),
            hi: hi.div_ceil(q.denom()),
            bits: self.bits,
        }
    }

    pub fn div_int(&self, d: u64) -> Self {
        let d = BigInt::from(d);
        Interval {
            lo: self.lo.div_floor(&d),
            hi: self.hi.div_ceil(&d),
            bits: self.bits,
        }
    }

    /// Widen symmetrically by `ulps` units in the last place.
    pub fn widen(&self, ulps: &BigInt) -> Self {
        Interval {
            lo: &self.lo - ulps,
            hi: &self.hi + ulps,
            bits: self.bits,
        }
    }

    /// Outward rounding to a coarser precision.
    pub fn round_to(&self, bits: u32) -> Self {
        assert!(bits <= self.bits);
        let unit = pow2(self.bits - bits);
        Interval {
            lo: self.lo.div_floor(&unit),
            hi: self.hi.div_ceil(&unit),
            bits,
        }
    }

    fn cmp_endpoint(end: &BigInt, bits: u32, q: &Rational) -> Ordering {
        (end * q.denom()).cmp(&(q.numer() << bits as usize))
    }

    /// `Some(true)` if every point is `≤ q`, `Some(false)` if every point is `> q`.
    pub fn le(&self, q: &Rational) -> Option<bool> {
        if Self::cmp_endpoint(&self.hi, self.bits, q) != Ordering::Greater {
            Some(true)
        } else if Self::cmp_endpoint(&self.lo, self.bits, q) == Ordering::Greater {
            Some(false)
        } else {
            None
        }
    }

    /// `Some(true)` if every point is `< q`, `Some(false)` if every point is `≥ q`.
    pub fn lt(&self, q: &Rational) -> Option<bool> {
        if Self::cmp_endpoint(&self.hi, self.bits, q) == Ordering::Less {
            Some(true)
        } else if Self::cmp_endpoint(&self.lo, self.bits, q) != Ordering::Less {
            Some(false)
        } else {
            None
        }
    }

    pub fn contains(&self, q: &Rational) -> bool {
        Self::cmp_endpoint(&self.lo, self.bits, q) != Ordering::Greater
            && Self::cmp_endpoint(&self.hi, self.bits, q) != Ordering::Less
    }
}

/// Enclosure of arctan(1/x) for an integer `x ≥ 2`.
fn atan_inv(x: u64, bits: u32) -> Interval {
    let one = pow2(bits);
    let x2 = BigInt::from(x * x);
    let mut pow = BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let t = &one / (&pow * BigInt::from(2 * k + 1));
        if t.is_zero() {
            break;
        }
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        k += 1;
        pow *= &x2;
    }
    // k truncations of less than one ulp each, plus a tail below one ulp
    let err = BigInt::from(k + 1);
    Interval {
        lo: &sum - &err,
        hi: &sum + &err,
        bits,
    }
}

/// Enclosure of π at the requested precision.
pub fn pi(bits: u32) -> Interval {
    let guard = bits + 16;
    let a = atan_inv(5, guard).scale(&Rational::from_integer(16.into()));
    let b = atan_inv(239, guard).scale(&Rational::from_integer(4.into()));
    a.sub(&b).round_to(bits)
}

/// cos and sin on an interval contained in `[0, 1]`.
fn cos_sin_small(x: &Interval) -> (Interval, Interval) {
    let bits = x.bits;
    let mut term = Interval::exact_int(1, bits);
    let mut cos = Interval::zero(bits);
    let mut sin = Interval::zero(bits);
    let mut j: u64 = 0;
    loop {
        if term.hi <= BigInt::one() {
            break;
        }
        let t = if (j / 2) % 2 == 0 { term.clone() } else { term.neg() };
        if j % 2 == 0 {
            cos = cos.add(&t);
        } else {
            sin = sin.add(&t);
        }
        j += 1;
        term = term.mul(x).div_int(j);
    }
    // terms decrease for x ≤ 1, so each alternating tail is bounded by the
    // first term not summed
    let tail = term.hi.clone().max(BigInt::zero());
    (cos.widen(&tail), sin.widen(&tail))
}

/// Enclosures of `cos(2π·t)` and `sin(2π·t)` for rational `t ∈ [0, 1)`.
///
/// `pi` must be an enclosure of π at the working precision of the result.
fn cos_sin_turn(t: &Rational, pi: &Interval) -> (Interval, Interval) {
    let bits = pi.bits;
    let half = Rational::new(1.into(), 2.into());
    let quarter = Rational::new(1.into(), 4.into());
    let eighth = Rational::new(1.into(), 8.into());
    if t.is_zero() {
        return (Interval::exact_int(1, bits), Interval::zero(bits));
    }
    if *t > half {
        let (c, s) = cos_sin_turn(&(Rational::one() - t), pi);
        return (c, s.neg());
    }
    if *t > quarter {
        let (c, s) = cos_sin_turn(&(&half - t), pi);
        return (c.neg(), s);
    }
    if *t > eighth {
        let (c, s) = cos_sin_turn(&(&quarter - t), pi);
        return (s, c);
    }
    let theta = pi.scale(&(t * Rational::from_integer(2.into())));
    cos_sin_small(&theta)
}

const GUARD_BITS: u32 = 32;

/// Enclosures of `cos(2πj/N)` and `sin(2πj/N)` for every residue `j` mod `N`.
#[derive(Clone, Debug)]
pub struct RootTable {
    order: u64,
    bits: u32,
    cos: Vec<Interval>,
    sin: Vec<Interval>,
}

impl RootTable {
    pub fn new(order: u64, bits: u32) -> Self {
        assert!(order >= 1);
        let work = bits + GUARD_BITS;
        let pi_work = pi(work);
        let (cos, sin) = (0..order)
            .map(|j| {
                let (c, s) = cos_sin_turn(&Rational::new(j.into(), order.into()), &pi_work);
                (c.round_to(bits), s.round_to(bits))
            })
            .unzip();
        RootTable { order, bits, cos, sin }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Enclosure of `ω_N^j`.
    pub fn root(&self, j: u64) -> ComplexInterval {
        let j = (j % self.order) as usize;
        ComplexInterval {
            re: self.cos[j].clone(),
            im: self.sin[j].clone(),
        }
    }

    /// Enclosure of `Σ c·ω_N^e` over `(c, e)` pairs.
    pub fn eval<'a, I>(&self, terms: I) -> ComplexInterval
    where
        I: IntoIterator<Item = (&'a Rational, u64)>,
    {
        let mut re = Interval::zero(self.bits);
        let mut im = Interval::zero(self.bits);
        for (c, e) in terms {
            if c.is_zero() {
                continue;
            }
            let j = (e % self.order) as usize;
            re = re.add(&self.cos[j].scale(c));
            im = im.add(&self.sin[j].scale(c));
        }
        ComplexInterval { re, im }
    }
}

/// Rectangular complex enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

/// Midpoint-radius summary of a [`ComplexInterval`] for reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ball {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl ComplexInterval {
    /// Upper bound on the distance from the midpoint to any enclosed point.
    pub fn radius(&self) -> Rational {
        self.re.half_width() + self.im.half_width()
    }

    pub fn midpoint(&self) -> (Rational, Rational) {
        (self.re.midpoint(), self.im.midpoint())
    }

    pub fn ball(&self) -> Ball {
        Ball {
            re: self.re.midpoint_f64(),
            im: self.im.midpoint_f64(),
            radius: self.radius().to_f64().unwrap_or(f64::INFINITY),
        }
    }
}
