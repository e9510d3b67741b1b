//! Polynomials over the prime field GF(p), used to find canonical moduli.
//!
//! A polynomial is identified with its integer code `sum c_i p^i`, so the
//! natural integer order on codes is the canonical order on polynomials.

use crate::arith::prime_factors;

pub(crate) fn digits(code: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    let mut c = code;
    for _ in 0..len {
        out.push(c % p);
        c /= p;
    }
    out
}

pub(crate) fn from_digits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0u64, |acc, &c| acc * p + c)
}

fn degree(d: &[u64]) -> Option<usize> {
    d.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p), in place.
fn rem_monic(a: &mut [u64], m: &[u64], p: u64) {
    let dm = degree(m).expect("nonzero modulus");
    let Some(mut da) = degree(a) else { return };
    while da >= dm {
        let lead = a[da];
        if lead != 0 {
            let shift = da - dm;
            for (i, &mc) in m.iter().enumerate().take(dm + 1) {
                let t = (lead * mc) % p;
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
        }
        if da == 0 {
            break;
        }
        da -= 1;
    }
}

/// `a mod b` for binary polynomials given as bitmasks.
fn rem_gf2(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 {
        let da = 63 - a.leading_zeros();
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Irreducibility by trial division against every monic polynomial of
/// degree 1..=deg/2.
pub(crate) fn is_irreducible(code: u64, p: u64, deg: u32) -> bool {
    if deg == 0 {
        return false;
    }
    if p == 2 {
        for d in 1..=deg / 2 {
            for div in (1u64 << d)..(1u64 << (d + 1)) {
                if rem_gf2(code, div) == 0 {
                    return false;
                }
            }
        }
        return true;
    }
    let n = deg as usize + 1;
    let target = digits(code, p, n);
    for d in 1..=deg / 2 {
        let lo = p.pow(d);
        for div in lo..2 * lo {
            let dv = digits(div, p, d as usize + 1);
            let mut a = target.clone();
            rem_monic(&mut a, &dv, p);
            if a.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible polynomial of degree `m` over GF(p), by code.
pub(crate) fn least_irreducible(p: u64, m: u32) -> u64 {
    let lo = p.pow(m);
    (lo..2 * lo)
        .find(|&c| is_irreducible(c, p, m))
        .expect("an irreducible polynomial of every degree exists")
}

pub(crate) fn group_order_factors(order: u64) -> Vec<u64> {
    prime_factors(order)
}
