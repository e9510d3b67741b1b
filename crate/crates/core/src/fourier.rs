//! The discrete Fourier transform between F_q(r1, r2) and L^{|I|}.
//!
//! Spectra are always taken with respect to the canonical root pair
//! `(alpha, beta)` of the splitting field twisted by a multiplier pair
//! `(u, v)`, i.e. with respect to `(alpha^u, beta^v)`. Evaluation is
//! direct and separable: rows first, then columns.

use std::fmt;
use std::str::FromStr;

use crate::arith::mod_inverse;
use crate::field::{parse_int, splitting_field, Field, SplittingField};
use crate::orbit::{parse_int_list, IndexPair, Moduli, OrbitSet};
use crate::{Error, Result};

/// A multiplier pair `(u, v)` of units modulo `(r1, r2)`.
pub type Multiplier = (u64, u64);

/// An element of F(r1, r2) = F[X, Y] / (X^r1 - 1, Y^r2 - 1), stored as its
/// row-major coefficient matrix of element codes.
#[derive(Clone, PartialEq, Eq)]
pub struct BivariatePolynomial {
    field: Field,
    moduli: Moduli,
    coeffs: Vec<u64>,
}

impl BivariatePolynomial {
    pub fn zero(field: &Field, moduli: Moduli) -> Self {
        BivariatePolynomial {
            field: field.clone(),
            moduli,
            coeffs: vec![0; moduli.size()],
        }
    }

    pub fn one(field: &Field, moduli: Moduli) -> Self {
        let mut p = Self::zero(field, moduli);
        p.coeffs[0] = 1;
        p
    }

    pub fn monomial(field: &Field, moduli: Moduli, pt: IndexPair, coeff: u64) -> Result<Self> {
        moduli.check(pt)?;
        let mut p = Self::zero(field, moduli);
        p.coeffs[moduli.index(pt)] = coeff;
        Ok(p)
    }

    pub fn from_coeffs(field: &Field, moduli: Moduli, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != moduli.size() {
            return Err(Error::LengthMismatch {
                expected: moduli.size(),
                actual: coeffs.len(),
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| !field.contains_code(c)) {
            return Err(Error::Parse(format!("coefficient {bad} is not in {field:?}")));
        }
        Ok(BivariatePolynomial {
            field: field.clone(),
            moduli,
            coeffs,
        })
    }

    /// A univariate polynomial in Y placed on row 0.
    pub fn from_column_poly(field: &Field, moduli: Moduli, coeffs: &[u64]) -> Result<Self> {
        let mut p = Self::zero(field, moduli);
        for (j, &c) in coeffs.iter().enumerate() {
            let idx = moduli.index((0, j % moduli.r2));
            p.coeffs[idx] = field.add(p.coeffs[idx], c);
        }
        Ok(p)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn moduli(&self) -> Moduli {
        self.moduli
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, pt: IndexPair) -> u64 {
        self.coeffs[self.moduli.index(pt)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Hamming weight of the coefficient matrix.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.same_field(&other.field) && self.moduli == other.moduli {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(BivariatePolynomial {
            field: self.field.clone(),
            moduli: self.moduli,
            coeffs,
        })
    }

    pub fn scale(&self, c: u64) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        BivariatePolynomial {
            field: self.field.clone(),
            moduli: self.moduli,
            coeffs,
        }
    }

    /// Product in F(r1, r2), i.e. two-dimensional cyclic convolution.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.moduli;
        let mut out = vec![0u64; m.size()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let (a1, b1) = m.pair(i);
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let (a2, b2) = m.pair(j);
                let k = m.index(((a1 + a2) % m.r1, (b1 + b2) % m.r2));
                out[k] = self.field.add(out[k], self.field.mul(a, b));
            }
        }
        Ok(BivariatePolynomial {
            field: self.field.clone(),
            moduli: m,
            coeffs: out,
        })
    }

    /// `X^a Y^b * f`: a cyclic shift of the coefficient matrix.
    pub fn shift(&self, (a, b): IndexPair) -> Self {
        let m = self.moduli;
        let mut out = vec![0u64; m.size()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let (x, y) = m.pair(i);
            out[m.index(((x + a) % m.r1, (y + b) % m.r2))] = c;
        }
        BivariatePolynomial {
            field: self.field.clone(),
            moduli: m,
            coeffs: out,
        }
    }

    /// Text record `field=<field record> r=[r1,r2] coeffs=[...]`.
    pub fn record(&self) -> String {
        let coeffs: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        format!(
            "field={} r=[{},{}] coeffs=[{}]",
            self.field.record(),
            self.moduli.r1,
            self.moduli.r2,
            coeffs.join(",")
        )
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.record())
    }
}

impl FromStr for BivariatePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rest = s
            .trim()
            .strip_prefix("field=")
            .ok_or_else(|| Error::Parse("polynomial record must start with field=".into()))?;
        let mut field_tokens = Vec::new();
        let mut r = None;
        let mut coeffs = None;
        for tok in rest.split_whitespace() {
            match tok.split_once('=') {
                Some(("r", v)) => r = Some(parse_int_list(v)?),
                Some(("coeffs", v)) => coeffs = Some(parse_int_list(v)?),
                _ => field_tokens.push(tok),
            }
        }
        let field: Field = field_tokens.join(" ").parse()?;
        let r = r.ok_or_else(|| Error::Parse("missing r".into()))?;
        if r.len() != 2 || r.contains(&0) {
            return Err(Error::Parse("r must be [r1,r2] with positive entries".into()));
        }
        let coeffs = coeffs.ok_or_else(|| Error::Parse("missing coeffs".into()))?;
        Self::from_coeffs(&field, Moduli::new(r[0] as usize, r[1] as usize), coeffs)
    }
}

/// Values of a transform, indexed by I, over the splitting field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    field: Field,
    moduli: Moduli,
    values: Vec<u64>,
    multiplier: Multiplier,
}

impl Spectrum {
    pub fn new(field: &Field, moduli: Moduli, values: Vec<u64>, multiplier: Multiplier) -> Result<Self> {
        if values.len() != moduli.size() {
            return Err(Error::LengthMismatch {
                expected: moduli.size(),
                actual: values.len(),
            });
        }
        Ok(Spectrum {
            field: field.clone(),
            moduli,
            values,
            multiplier,
        })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, pt: IndexPair) -> u64 {
        self.values[self.moduli.index(pt)]
    }

    pub fn multiplier(&self) -> Multiplier {
        self.multiplier
    }

    pub fn moduli(&self) -> Moduli {
        self.moduli
    }

    /// Zero set of the spectrum.
    pub fn zeros(&self) -> Vec<bool> {
        self.values.iter().map(|&x| x == 0).collect()
    }

    /// Coordinatewise product.
    pub fn star(&self, other: &Spectrum) -> Result<Spectrum> {
        if self.moduli != other.moduli || self.multiplier != other.multiplier || !self.field.same_field(&other.field) {
            return Err(Error::FieldMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| self.field.mul(a, b))
            .collect();
        Ok(Spectrum {
            field: self.field.clone(),
            moduli: self.moduli,
            values,
            multiplier: self.multiplier,
        })
    }
}

/// Transform context for F_q(r1, r2): the splitting field, its canonical
/// primitive r1-th and r2-th roots and their power tables.
#[derive(Clone, Debug)]
pub struct Fourier {
    split: SplittingField,
    moduli: Moduli,
    alpha_pows: Vec<u64>,
    beta_pows: Vec<u64>,
}

impl Fourier {
    pub fn new(base: &Field, moduli: Moduli) -> Result<Fourier> {
        let split = splitting_field(base, moduli.r1 as u64, moduli.r2 as u64)?;
        let ext = split.ext().clone();
        let alpha = ext.root_of_unity(moduli.r1 as u64)?.code();
        let beta = ext.root_of_unity(moduli.r2 as u64)?.code();
        let alpha_pows = (0..moduli.r1 as u64).map(|k| ext.pow(alpha, k)).collect();
        let beta_pows = (0..moduli.r2 as u64).map(|k| ext.pow(beta, k)).collect();
        Ok(Fourier {
            split,
            moduli,
            alpha_pows,
            beta_pows,
        })
    }

    pub fn base(&self) -> &Field {
        self.split.base()
    }

    pub fn ext(&self) -> &Field {
        self.split.ext()
    }

    pub fn splitting(&self) -> &SplittingField {
        &self.split
    }

    pub fn moduli(&self) -> Moduli {
        self.moduli
    }

    /// Canonical primitive r1-th root of unity in L.
    pub fn alpha(&self) -> u64 {
        self.alpha_pows.get(1).copied().unwrap_or(1)
    }

    /// Canonical primitive r2-th root of unity in L.
    pub fn beta(&self) -> u64 {
        self.beta_pows.get(1).copied().unwrap_or(1)
    }

    pub fn alpha_pow(&self, k: u64) -> u64 {
        self.alpha_pows[(k % self.moduli.r1 as u64) as usize]
    }

    pub fn beta_pow(&self, k: u64) -> u64 {
        self.beta_pows[(k % self.moduli.r2 as u64) as usize]
    }

    pub fn check_multiplier(&self, (u, v): Multiplier) -> Result<Multiplier> {
        let (r1, r2) = (self.moduli.r1 as u64, self.moduli.r2 as u64);
        for (x, r) in [(u, r1), (v, r2)] {
            if mod_inverse(x, r).is_none() {
                return Err(Error::NotAUnit { value: x, modulus: r });
            }
        }
        Ok((u % r1, v % r2))
    }

    /// Coefficients of `f` as elements of L.
    fn lift(&self, f: &BivariatePolynomial) -> Result<Vec<u64>> {
        if f.moduli != self.moduli {
            return Err(Error::FieldMismatch);
        }
        if f.field.same_field(self.ext()) {
            Ok(f.coeffs.clone())
        } else if f.field.same_field(self.base()) {
            Ok(f.coeffs.iter().map(|&c| self.split.embedding.embed(c)).collect())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// `S(i, j) = f(alpha^(u i), beta^(v j))`.
    pub fn dft(&self, f: &BivariatePolynomial, multiplier: Multiplier) -> Result<Spectrum> {
        let (u, v) = self.check_multiplier(multiplier)?;
        let coeffs = self.lift(f)?;
        let values = self.transform(&coeffs, u, v);
        Ok(Spectrum {
            field: self.ext().clone(),
            moduli: self.moduli,
            values,
            multiplier: (u, v),
        })
    }

    /// `out(i, j) = sum_{a,b} c(a, b) alpha^(u i a) beta^(v j b)`.
    fn transform(&self, coeffs: &[u64], u: u64, v: u64) -> Vec<u64> {
        let ext = self.ext();
        let Moduli { r1, r2 } = self.moduli;
        let mut rows = vec![0u64; r1 * r2];
        for a in 0..r1 {
            let row = &coeffs[a * r2..(a + 1) * r2];
            if row.iter().all(|&c| c == 0) {
                continue;
            }
            for j in 0..r2 {
                let step = (v * j as u64) % r2 as u64;
                let mut acc = 0u64;
                let mut e = 0u64;
                for &c in row {
                    if c != 0 {
                        acc = ext.add(acc, ext.mul(c, self.beta_pows[e as usize]));
                    }
                    e = (e + step) % r2 as u64;
                }
                rows[a * r2 + j] = acc;
            }
        }
        let mut out = vec![0u64; r1 * r2];
        for i in 0..r1 {
            let step = (u * i as u64) % r1 as u64;
            for j in 0..r2 {
                let mut acc = 0u64;
                let mut e = 0u64;
                for a in 0..r1 {
                    let c = rows[a * r2 + j];
                    if c != 0 {
                        acc = ext.add(acc, ext.mul(c, self.alpha_pows[e as usize]));
                    }
                    e = (e + step) % r1 as u64;
                }
                out[i * r2 + j] = acc;
            }
        }
        out
    }

    /// `c(a, b) = (r1 r2)^-1 sum_{i,j} S(i, j) alpha^(-u i a) beta^(-v j b)`.
    pub fn inverse_dft(&self, s: &Spectrum) -> Result<BivariatePolynomial> {
        if s.moduli != self.moduli || !s.field.same_field(self.ext()) {
            return Err(Error::FieldMismatch);
        }
        let ext = self.ext();
        let n = self.moduli.size() as u64;
        let scale =
            ext.inv(ext.from_int((n % ext.characteristic()) as i64))
                .map_err(|_| Error::SemisimplicityViolation {
                    q: self.base().size(),
                    modulus: n,
                })?;
        let (u, v) = s.multiplier;
        let (r1, r2) = (self.moduli.r1 as u64, self.moduli.r2 as u64);
        let raw = self.transform(&s.values, (r1 - u % r1) % r1, (r2 - v % r2) % r2);
        let coeffs = raw.into_iter().map(|c| ext.mul(c, scale)).collect();
        Ok(BivariatePolynomial {
            field: ext.clone(),
            moduli: self.moduli,
            coeffs,
        })
    }

    /// Maps a polynomial over L back to F_q, failing unless every
    /// coefficient satisfies `c^q = c`.
    pub fn restrict_to_base(&self, f: &BivariatePolynomial) -> Result<BivariatePolynomial> {
        if f.field.same_field(self.base()) {
            return Ok(f.clone());
        }
        if !f.field.same_field(self.ext()) {
            return Err(Error::FieldMismatch);
        }
        let coeffs = f
            .coeffs
            .iter()
            .map(|&c| self.split.embedding.restrict(c).ok_or(Error::NotOrbitClosed))
            .collect::<Result<Vec<u64>>>()?;
        Ok(BivariatePolynomial {
            field: self.base().clone(),
            moduli: self.moduli,
            coeffs,
        })
    }

    /// The idempotent whose spectrum (for the given root twist) is 0 on D
    /// and 1 elsewhere.
    pub fn idempotent(&self, d: &OrbitSet, multiplier: Multiplier) -> Result<BivariatePolynomial> {
        if d.moduli() != self.moduli {
            return Err(Error::FieldMismatch);
        }
        let values = d.members().iter().map(|&z| u64::from(!z)).collect();
        let spectrum = Spectrum::new(self.ext(), self.moduli, values, self.check_multiplier(multiplier)?)?;
        let e = self.inverse_dft(&spectrum)?;
        self.restrict_to_base(&e)
    }

    /// D(f) for the given root twist.
    pub fn defining_set_of(&self, f: &BivariatePolynomial, multiplier: Multiplier) -> Result<OrbitSet> {
        let s = self.dft(f, multiplier)?;
        OrbitSet::from_members(self.moduli, self.base().size(), s.zeros())
    }

    /// Whether `f` vanishes at every point of D under the given twist.
    pub fn vanishes_on(&self, f: &BivariatePolynomial, d: &OrbitSet, multiplier: Multiplier) -> Result<bool> {
        let s = self.dft(f, multiplier)?;
        Ok(d.iter().all(|pt| s.value(pt) == 0))
    }

    /// `prod_{b in columns} (Y - beta^(v b))`, as base-field codes in
    /// ascending degree. The column set must be q-closed.
    pub fn column_generator(&self, columns: &[usize], v: u64) -> Result<Vec<u64>> {
        let ext = self.ext();
        let mut poly = vec![1u64];
        for &b in columns {
            let root = self.beta_pow(v * b as u64);
            let mut next = vec![0u64; poly.len() + 1];
            for (i, &a) in poly.iter().enumerate() {
                next[i + 1] = ext.add(next[i + 1], a);
                next[i] = ext.sub(next[i], ext.mul(a, root));
            }
            poly = next;
        }
        poly.into_iter()
            .map(|c| self.split.embedding.restrict(c).ok_or(Error::NotOrbitClosed))
            .collect()
    }
}

/// Parses `u,v` or a bare `v` (for `r1 = 1`).
pub fn parse_multiplier(s: &str) -> Result<Multiplier> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [u, v] => Ok((parse_int(u)?, parse_int(v)?)),
        [v] => Ok((0, parse_int(v)?)),
        _ => Err(Error::Parse(format!("bad multiplier `{s}`"))),
    }
}
