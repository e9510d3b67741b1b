//! Exact arithmetic in GF(p^m).
//!
//! Every field is built deterministically: the modulus is the least monic
//! irreducible polynomial of degree `m` under the integer-code order, and
//! the distinguished generator is the least-coded element of full order.
//! Elements are plain `u64` codes `sum c_i p^i` of their coefficient vectors
//! in the polynomial basis; [`FieldElement`] pairs a code with its field.

mod poly;
mod split;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::arith::is_prime;
use crate::{Error, Result};

pub use split::{minimal_polynomial, splitting_field, Embedding, SplittingField};

/// Default upper bound on field sizes, as a power of two.
pub const DEFAULT_SIZE_CAP_BITS: u32 = 32;

/// Fields up to this size get exp/log tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// A finite field GF(p^m) with its canonical modulus.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

struct FieldData {
    p: u64,
    m: u32,
    size: u64,
    modulus: Vec<u64>,
    // p = 2 only: modulus as a bitmask
    modulus_mask: u64,
    generator: u64,
    order_factors: Vec<u64>,
    tables: Option<LogTables>,
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Builds the canonical GF(p^m) under the default size cap.
pub fn make_field(p: u64, m: u32) -> Result<Field> {
    Field::new(p, m)
}

impl Field {
    pub fn new(p: u64, m: u32) -> Result<Field> {
        Field::with_cap(p, m, DEFAULT_SIZE_CAP_BITS)
    }

    pub fn with_cap(p: u64, m: u32, cap_bits: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        let cap_err = Error::SizeCapExceeded { p, m, cap_bits };
        if m == 0 {
            return Err(cap_err);
        }
        let size = p.checked_pow(m).ok_or(cap_err.clone())?;
        if cap_bits < 64 && size > 1u64 << cap_bits {
            return Err(cap_err);
        }
        let modulus_code = poly::least_irreducible(p, m);
        let modulus = poly::digits(modulus_code, p, m as usize + 1);
        let mut data = FieldData {
            p,
            m,
            size,
            modulus,
            modulus_mask: if p == 2 { modulus_code } else { 0 },
            generator: 1,
            order_factors: poly::group_order_factors(size - 1),
            tables: None,
        };
        data.generator = (1..size)
            .find(|&x| data.has_full_order(x))
            .expect("the multiplicative group is cyclic");
        if size <= TABLE_LIMIT {
            let n = (size - 1) as usize;
            let mut exp = vec![0u32; 2 * n.max(1)];
            let mut log = vec![0u32; size as usize];
            let mut x = 1u64;
            for (k, slot) in exp.iter_mut().enumerate().take(n) {
                *slot = x as u32;
                log[x as usize] = k as u32;
                x = data.raw_mul(x, data.generator);
            }
            for k in n..2 * n {
                exp[k] = exp[k - n];
            }
            data.tables = Some(LogTables { exp, log });
        }
        Ok(Field(Arc::new(data)))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Number of elements, `p^m`.
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Order of the multiplicative group, `p^m - 1`.
    pub fn group_order(&self) -> u64 {
        self.0.size - 1
    }

    /// Modulus coefficients, ascending, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn same_field(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.m == other.0.m)
    }

    pub fn contains_code(&self, code: u64) -> bool {
        code < self.0.size
    }

    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if !self.contains_code(code) {
            return Err(Error::Parse(format!(
                "{code} is not an element code of GF({})",
                self.0.size
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            code,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            code: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            code: 1,
        }
    }

    /// The canonical generator: least-coded element of order `p^m - 1`.
    pub fn canonical_generator(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            code: self.0.generator,
        }
    }

    pub fn generator_code(&self) -> u64 {
        self.0.generator
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.0.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.0.add(a, b)
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.0.neg(a)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.0.add(a, self.0.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.0.mul(a, b)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0.tables {
            Some(t) => {
                let n = self.group_order() as usize;
                t.exp[(n - t.log[a as usize] as usize) % n] as u64
            }
            None => self.0.pow(a, self.group_order() - 1),
        })
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k`; for nonzero `a` the exponent is taken modulo `p^m - 1`.
    pub fn pow(&self, a: u64, k: u64) -> u64 {
        self.0.pow(a, k)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.group_order();
        for &l in &self.0.order_factors {
            while ord.is_multiple_of(l) && self.pow(a, ord / l) == 1 {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// Frobenius-style power used for base-field tests: `a^(p^k)`.
    pub fn frobenius(&self, a: u64, k: u32) -> u64 {
        let mut x = a;
        for _ in 0..k {
            x = self.pow(x, self.0.p);
        }
        x
    }

    /// The canonical primitive `r`-th root of unity, `g^((|F|-1)/r)`.
    pub fn root_of_unity(&self, r: u64) -> Result<FieldElement> {
        let n = self.group_order();
        if r == 0 || !n.is_multiple_of(r) {
            return Err(Error::OrderUnavailable {
                order: r,
                size: self.size(),
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            code: self.pow(self.0.generator, n / r),
        })
    }

    /// Text record `p=<p> m=<m> modulus=[c0,...,cm]`.
    pub fn record(&self) -> String {
        let coeffs: Vec<String> = self.0.modulus.iter().map(u64::to_string).collect();
        format!("p={} m={} modulus=[{}]", self.0.p, self.0.m, coeffs.join(","))
    }
}

impl FieldData {
    fn has_full_order(&self, x: u64) -> bool {
        let n = self.size - 1;
        if n == 1 {
            return x == 1;
        }
        self.order_factors.iter().all(|&l| self.raw_pow(x, n / l) != 1)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0u64, 1u64);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        let (mut a, mut out, mut place) = (a, 0u64, 1u64);
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[t.log[a as usize] as usize + t.log[b as usize] as usize] as u64,
            None => self.raw_mul(a, b),
        }
    }

    fn raw_mul(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        if self.p == 2 {
            let mut prod = 0u64;
            let mut x = a;
            let mut y = b;
            while y != 0 {
                if y & 1 == 1 {
                    prod ^= x;
                }
                x <<= 1;
                y >>= 1;
            }
            let m = self.m;
            let mut bit = 2 * m as i32 - 2;
            while bit >= m as i32 {
                if (prod >> bit) & 1 == 1 {
                    prod ^= self.modulus_mask << (bit as u32 - m);
                }
                bit -= 1;
            }
            return prod;
        }
        let m = self.m as usize;
        let p = self.p;
        let da = poly::digits(a, p, m);
        let db = poly::digits(b, p, m);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            for (i, &mc) in self.modulus.iter().enumerate().take(m + 1) {
                let t = (lead * mc) % p;
                prod[k - m + i] = (prod[k - m + i] + p - t) % p;
            }
        }
        poly::from_digits(&prod[..m], p)
    }

    fn raw_pow(&self, a: u64, k: u64) -> u64 {
        let mut result = 1u64;
        let mut base = a;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = self.raw_mul(result, base);
            }
            base = self.raw_mul(base, base);
            e >>= 1;
        }
        result
    }

    fn pow(&self, a: u64, k: u64) -> u64 {
        if a == 0 {
            return u64::from(k == 0);
        }
        let n = self.size - 1;
        let e = k % n;
        match &self.tables {
            Some(t) => t.exp[((t.log[a as usize] as u64 * e) % n) as usize] as u64,
            None => self.raw_pow(a, e),
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.m)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.record())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for Field {}

impl FromStr for Field {
    type Err = Error;

    /// Parses a field record and checks the modulus is the canonical one.
    fn from_str(s: &str) -> Result<Field> {
        let mut p = None;
        let mut m = None;
        let mut modulus = None;
        for tok in s.split_whitespace() {
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad field token `{tok}`")))?;
            match key {
                "p" => p = Some(parse_int::<u64>(value)?),
                "m" => m = Some(parse_int::<u32>(value)?),
                "modulus" => {
                    modulus = Some(
                        serde_json::from_str::<Vec<u64>>(value).map_err(|e| Error::Parse(format!("modulus: {e}")))?,
                    )
                }
                _ => return Err(Error::Parse(format!("unknown field key `{key}`"))),
            }
        }
        let p = p.ok_or_else(|| Error::Parse("field record missing p".into()))?;
        let m = m.ok_or_else(|| Error::Parse("field record missing m".into()))?;
        let field = Field::new(p, m)?;
        if let Some(given) = modulus {
            if given != field.modulus() {
                return Err(Error::Parse(format!(
                    "modulus {given:?} is not the canonical modulus {:?}",
                    field.modulus()
                )));
            }
        }
        Ok(field)
    }
}

pub(crate) fn parse_int<T: FromStr>(s: &str) -> Result<T> {
    s.trim()
        .parse::<T>()
        .map_err(|_| Error::Parse(format!("expected an integer, got `{s}`")))
}

/// A field element bound to its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    code: u64,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Integer code `sum c_i p^i`.
    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn coefficients(&self) -> Vec<u64> {
        poly::digits(self.code, self.field.characteristic(), self.field.degree() as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, code: u64) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            code,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.code, other.code)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.div(self.code, other.code)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.code))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.with(self.field.inv(self.code)?))
    }

    pub fn pow(&self, k: u64) -> FieldElement {
        self.with(self.field.pow(self.code, k))
    }

    pub fn order(&self) -> Result<u64> {
        self.field.order_of(self.code)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.code, self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_gf2() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.canonical_generator().code(), 1);
        assert_eq!(f.record(), "p=2 m=1 modulus=[0,1]");
    }

    #[test]
    fn errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NonPrimeCharacteristic(4));
        assert!(matches!(make_field(2, 33), Err(Error::SizeCapExceeded { .. })));
        assert!(matches!(make_field(3, 21), Err(Error::SizeCapExceeded { .. })));
        let f = make_field(2, 4).unwrap();
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
        let g = make_field(3, 2).unwrap();
        assert_eq!(f.one().add(&g.one()), Err(Error::FieldMismatch));
    }

    #[test]
    fn gf3_generator_is_2() {
        let f = make_field(3, 1).unwrap();
        // 1 has order 1, 2 has order 2 = |GF(3)^*|
        assert_eq!(f.canonical_generator().code(), 2);
    }

    /// Orders by repeated multiplication, independent of `order_of`.
    fn naive_order(f: &Field, x: u64) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != 1 {
            y = f.mul(y, x);
            k += 1;
        }
        k
    }

    #[test]
    fn gf16_generator_and_lagrange() {
        let f = make_field(2, 4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 0, 1]);
        let expected = (1..16).find(|&x| naive_order(&f, x) == 15).unwrap();
        assert_eq!(f.canonical_generator().code(), expected);
        for x in 1..16 {
            assert_eq!(f.pow(x, 15), 1);
            assert_eq!(f.order_of(x).unwrap(), naive_order(&f, x));
        }
    }

    #[test]
    fn gf256_group() {
        let f = make_field(2, 8).unwrap();
        assert_eq!(f.group_order(), 255);
        // least irreducible octic over GF(2) is X^8+X^4+X^3+X+1
        assert_eq!(f.modulus(), &[1, 1, 0, 1, 1, 0, 0, 0, 1]);
        assert_eq!(f.canonical_generator().order().unwrap(), 255);
    }

    #[test]
    fn tables_agree_with_raw_multiplication() {
        for &(p, m) in &[(2u64, 6u32), (3, 3), (5, 2), (7, 1)] {
            let f = make_field(p, m).unwrap();
            for a in 0..f.size() {
                for b in 0..f.size() {
                    assert_eq!(f.mul(a, b), f.0.raw_mul(a, b));
                }
            }
        }
    }

    #[test]
    fn inverse_law_everywhere() {
        for &(p, m) in &[(2u64, 4u32), (3, 2), (5, 1), (2, 8)] {
            let f = make_field(p, m).unwrap();
            for x in 1..f.size() {
                assert_eq!(f.mul(f.inv(x).unwrap(), x), 1);
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for &(p, m) in &[(2u64, 8u32), (3, 4), (5, 2)] {
            let f = make_field(p, m).unwrap();
            for a in 0..f.size() {
                for b in (0..f.size()).step_by(7) {
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                }
            }
        }
    }

    #[test]
    fn large_fields_without_tables() {
        let f = make_field(2, 20).unwrap();
        let g = f.canonical_generator();
        assert_eq!(g.order().unwrap(), (1 << 20) - 1);
        let a = f.element(123_456).unwrap();
        assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), f.one());
        let big = make_field(2, 32).unwrap();
        assert_eq!(big.canonical_generator().order().unwrap(), u32::MAX as u64);
        let t = make_field(3, 13).unwrap();
        let x = t.element(1_000_000).unwrap();
        assert_eq!(x.pow(t.group_order()), t.one());
    }

    #[test]
    fn canonical_determinism() {
        let a = make_field(3, 4).unwrap();
        let b = make_field(3, 4).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.generator_code(), b.generator_code());
    }

    #[test]
    fn roots_of_unity() {
        let f4 = make_field(2, 2).unwrap();
        let w = f4.root_of_unity(3).unwrap();
        assert_ne!(w.code(), 1);
        assert_eq!(w.pow(3).code(), 1);
        let f64_ = make_field(2, 6).unwrap();
        let a = f64_.root_of_unity(7).unwrap();
        assert_eq!(a.order().unwrap(), 7);
        assert_eq!(f64_.root_of_unity(1).unwrap().code(), 1);
        assert!(matches!(f64_.root_of_unity(5), Err(Error::OrderUnavailable { .. })));
    }

    #[test]
    fn record_round_trip() {
        let f = make_field(2, 4).unwrap();
        let parsed: Field = f.record().parse().unwrap();
        assert_eq!(parsed, f);
        assert!("p=2 m=4 modulus=[1,0,0,1,1]".parse::<Field>().is_err());
    }
}
