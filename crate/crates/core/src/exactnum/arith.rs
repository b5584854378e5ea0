//! Elementary number theory on machine integers.
//!
//! Everything here uses trial division, which is plenty for the moduli that
//! show up in the certifier (a few thousand at most).

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= x {
        if x % p == 0 {
            let mut e = 0;
            while x % p == 0 {
                x /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

/// Euler's totient. `euler_phi(1) == 1`.
pub fn euler_phi(x: u64) -> u64 {
    assert!(x >= 1, "euler_phi is defined for positive integers");
    factorize(x)
        .into_iter()
        .fold(x, |acc, (p, _)| acc / p * (p - 1))
}

/// The Möbius function: `0` on non-squarefree arguments, otherwise
/// `(-1)^(number of prime factors)`.
pub fn moebius(x: u64) -> i64 {
    assert!(x >= 1, "moebius is defined for positive integers");
    let f = factorize(x);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All positive divisors of `x`, ascending.
pub fn divisors(x: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= x {
        if x % d == 0 {
            small.push(d);
            if d * d != x {
                large.push(x / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Representatives `1 ≤ k ≤ n` of the unit group `(ℤ/nℤ)*`.
///
/// For `n = 1` the group is trivial and the single representative is `1`.
pub fn units(n: u64) -> Vec<u64> {
    (1..=n).filter(|&k| gcd(k, n) == 1).collect()
}

/// Non-negative residue of `a` modulo `n`.
pub fn modulo(a: i64, n: u64) -> u64 {
    a.rem_euclid(n as i64) as u64
}
