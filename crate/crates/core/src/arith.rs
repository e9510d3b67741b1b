//! Small integer helpers shared by the field and orbit modules.

use num_integer::Integer;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `u` modulo `m`, or `None` when `gcd(u, m) != 1`. Modulus 1 maps to 0.
pub(crate) fn mod_inverse(u: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let ext = (u as i128 % m as i128).extended_gcd(&(m as i128));
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m as i128) as u64)
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}
