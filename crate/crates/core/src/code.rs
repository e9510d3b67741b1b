//! Abelian codes in F_q(r1, r2) and their constructions.
//!
//! A code is stored as an orbit-closed defining set together with the root
//! twist `(u, v)` it is expressed in: `(a, b)` lies in D exactly when every
//! codeword vanishes at `(alpha^(u a), beta^(v b))`, where `alpha` and
//! `beta` are the canonical roots of the splitting field. Twists reported by
//! [`AbelianCode::sd_star`] and [`detect_bch_parameters`] are absolute,
//! i.e. relative to the canonical roots.

use std::fmt;
use std::sync::Arc;

use once_cell::sync::OnceCell;

use crate::apparent::{orbit_matrix, retwist, sd_star_code, CodeSdStar, OrbitMatrix, SdReport};
use crate::arith::{gcd, mod_inverse, mod_mul};
use crate::field::{minimal_polynomial, Field};
use crate::fourier::{BivariatePolynomial, Fourier, Multiplier};
use crate::linalg::Echelon;
use crate::orbit::{format_pairs, parse_int_list, parse_pairs, units, IndexPair, Moduli, OrbitSet};
use crate::{Error, Result};

/// An ideal of F_q(r1, r2), semisimple case.
#[derive(Clone)]
pub struct AbelianCode {
    field: Field,
    multiplier: Multiplier,
    defining_set: OrbitSet,
    fourier: OnceCell<Arc<Fourier>>,
    idempotent: OnceCell<BivariatePolynomial>,
    generator: OnceCell<Arc<Vec<Vec<u64>>>>,
}

impl AbelianCode {
    /// The code with defining set `d` relative to the root pair twisted by
    /// `multiplier`.
    pub fn new(field: &Field, d: &OrbitSet, multiplier: Multiplier) -> Result<AbelianCode> {
        let q = field.size();
        let moduli = d.moduli();
        for r in [moduli.r1, moduli.r2] {
            if gcd(q, r as u64) != 1 {
                return Err(Error::SemisimplicityViolation { q, modulus: r as u64 });
            }
        }
        let d = if d.q() == q {
            d.clone()
        } else {
            OrbitSet::from_members(moduli, q, d.members().to_vec())?
        };
        let (u, v) = multiplier;
        let (r1, r2) = (moduli.r1 as u64, moduli.r2 as u64);
        for (x, r) in [(u, r1), (v, r2)] {
            if mod_inverse(x, r).is_none() {
                return Err(Error::NotAUnit { value: x, modulus: r });
            }
        }
        Ok(AbelianCode {
            field: field.clone(),
            multiplier: (u % r1, v % r2),
            defining_set: d,
            fourier: OnceCell::new(),
            idempotent: OnceCell::new(),
            generator: OnceCell::new(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.size()
    }

    pub fn moduli(&self) -> Moduli {
        self.defining_set.moduli()
    }

    pub fn multiplier(&self) -> Multiplier {
        self.multiplier
    }

    pub fn defining_set(&self) -> &OrbitSet {
        &self.defining_set
    }

    /// Block length r1 * r2.
    pub fn length(&self) -> usize {
        self.moduli().size()
    }

    /// `r1 r2 - |D|`.
    pub fn dimension(&self) -> usize {
        self.length() - self.defining_set.len()
    }

    pub fn is_zero(&self) -> bool {
        self.defining_set.is_full()
    }

    pub fn is_cyclic(&self) -> bool {
        self.moduli().r1 == 1
    }

    pub fn fourier(&self) -> Result<&Fourier> {
        self.fourier
            .get_or_try_init(|| Fourier::new(&self.field, self.moduli()).map(Arc::new))
            .map(|f| f.as_ref())
    }

    pub fn orbit_matrix(&self) -> OrbitMatrix {
        orbit_matrix(&self.defining_set)
    }

    /// sd* report of M(D) at the stored root pair.
    pub fn sd_report(&self) -> SdReport {
        self.orbit_matrix().sd_star()
    }

    /// Code-level sd* with optimized twists given as absolute multipliers.
    pub fn sd_star(&self, cap: u32) -> Result<CodeSdStar> {
        let rel = sd_star_code(&self.defining_set, cap)?;
        let Moduli { r1, r2 } = self.moduli();
        let (u0, v0) = self.multiplier;
        let mut optimized: Vec<Multiplier> = rel
            .optimized
            .iter()
            .map(|&(u, v)| (mod_mul(u0, u, r1 as u64), mod_mul(v0, v, r2 as u64)))
            .collect();
        optimized.sort_unstable();
        Ok(CodeSdStar {
            value: rel.value,
            optimized,
        })
    }

    /// The same code described relative to the absolute twist `twist`.
    pub fn retwisted(&self, twist: Multiplier) -> Result<AbelianCode> {
        let Moduli { r1, r2 } = self.moduli();
        let (u0, v0) = self.multiplier;
        let (u, v) = (twist.0 % r1 as u64, twist.1 % r2 as u64);
        let ui = mod_inverse(u0, r1 as u64).expect("stored multiplier is a unit");
        let vi = mod_inverse(v0, r2 as u64).expect("stored multiplier is a unit");
        let rel = (mod_mul(u, ui, r1 as u64), mod_mul(v, vi, r2 as u64));
        let d = retwist(&self.defining_set, rel)?;
        let mut code = AbelianCode::new(&self.field, &d, (u, v))?;
        code.fourier = self.fourier.clone();
        Ok(code)
    }

    /// The generating idempotent: spectrum 0 on D and 1 elsewhere.
    pub fn idempotent(&self) -> Result<&BivariatePolynomial> {
        self.idempotent
            .get_or_try_init(|| self.fourier()?.idempotent(&self.defining_set, self.multiplier))
    }

    /// Generator matrix in reduced row echelon form, from the translates
    /// `X^a Y^b e` of the idempotent. Its rank equals the dimension.
    pub fn generator_matrix(&self) -> Result<&[Vec<u64>]> {
        let rows = self.generator.get_or_try_init(|| {
            let dim = self.dimension();
            let mut ech = Echelon::new(&self.field);
            if dim > 0 {
                let e = self.idempotent()?;
                for pt in self.moduli().points() {
                    ech.insert(e.shift(pt).coeffs().to_vec());
                    if ech.rank() == dim {
                        break;
                    }
                }
            }
            if ech.rank() != dim {
                return Err(Error::Inconsistent(format!(
                    "generator rank {} differs from dimension {dim}",
                    ech.rank()
                )));
            }
            Ok(Arc::new(ech.into_rref()))
        })?;
        Ok(rows.as_slice())
    }

    /// `message * G`.
    pub fn encode(&self, message: &[u64]) -> Result<BivariatePolynomial> {
        let dim = self.dimension();
        if message.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                actual: message.len(),
            });
        }
        let g = self.generator_matrix()?;
        let f = &self.field;
        let mut out = vec![0u64; self.length()];
        for (&c, row) in message.iter().zip(g) {
            if c == 0 {
                continue;
            }
            for (x, &r) in out.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(c, r));
            }
        }
        BivariatePolynomial::from_coeffs(f, self.moduli(), out)
    }

    /// Membership: `f` has base-field coefficients and vanishes on D.
    pub fn contains(&self, f: &BivariatePolynomial) -> Result<bool> {
        if f.moduli() != self.moduli() || !f.field().same_field(&self.field) {
            return Ok(false);
        }
        self.fourier()?.vanishes_on(f, &self.defining_set, self.multiplier)
    }

    /// Line-oriented code file contents.
    pub fn to_file_string(&self) -> String {
        let Moduli { r1, r2 } = self.moduli();
        format!(
            "p={} m={}\nr=[{r1},{r2}]\nmultiplier=[{},{}]\ndefining_set_reps={}\n",
            self.field.characteristic(),
            self.field.degree(),
            self.multiplier.0,
            self.multiplier.1,
            format_pairs(self.defining_set.reps())
        )
    }

    /// Parses a code file; representatives must be orbit-minimal and sorted.
    pub fn from_file_str(s: &str) -> Result<AbelianCode> {
        let mut p = None;
        let mut m = None;
        let mut r = None;
        let mut mult = None;
        let mut reps = None;
        for line in s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            for tok in line.split_whitespace() {
                let (key, value) = tok
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("bad token `{tok}`")))?;
                match key {
                    "p" => p = Some(crate::field::parse_int::<u64>(value)?),
                    "m" => m = Some(crate::field::parse_int::<u32>(value)?),
                    "r" => r = Some(parse_int_list(value)?),
                    "multiplier" => mult = Some(parse_int_list(value)?),
                    "defining_set_reps" => reps = Some(parse_pairs(value)?),
                    _ => return Err(Error::Parse(format!("unknown key `{key}`"))),
                }
            }
        }
        let missing = |k: &str| Error::Parse(format!("code file missing `{k}`"));
        let field = Field::new(p.ok_or_else(|| missing("p"))?, m.ok_or_else(|| missing("m"))?)?;
        let r = r.ok_or_else(|| missing("r"))?;
        if r.len() != 2 || r.contains(&0) {
            return Err(Error::Parse("r must be [r1,r2] with positive entries".into()));
        }
        let mult = mult.ok_or_else(|| missing("multiplier"))?;
        if mult.len() != 2 {
            return Err(Error::Parse("multiplier must be [u,v]".into()));
        }
        let moduli = Moduli::new(r[0] as usize, r[1] as usize);
        let q = field.size();
        for r in [moduli.r1, moduli.r2] {
            if gcd(q, r as u64) != 1 {
                return Err(Error::SemisimplicityViolation { q, modulus: r as u64 });
            }
        }
        let d = OrbitSet::from_reps(moduli, q, &reps.ok_or_else(|| missing("defining_set_reps"))?)?;
        AbelianCode::new(&field, &d, (mult[0], mult[1]))
    }
}

impl PartialEq for AbelianCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.multiplier == other.multiplier && self.defining_set == other.defining_set
    }
}

impl Eq for AbelianCode {}

impl fmt::Debug for AbelianCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AbelianCode(q={}, r={:?}, twist={:?}, dim={}, reps={})",
            self.q(),
            (self.moduli().r1, self.moduli().r2),
            self.multiplier,
            self.dimension(),
            format_pairs(self.defining_set.reps())
        )
    }
}

/// `code_from_defining_set`: the code with defining set D relative to the
/// canonical roots.
pub fn code_from_defining_set(field: &Field, d: &OrbitSet) -> Result<AbelianCode> {
    AbelianCode::new(field, d, (1, 1))
}

/// One consecutive block `{b_k, ..., b_k + delta_k - 2}` along axis `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BchPart {
    pub axis: usize,
    pub delta: usize,
    pub offset: usize,
}

/// The data `(gamma, delta, b)` of a bivariate BCH code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BchSpec {
    pub parts: Vec<BchPart>,
}

impl BchSpec {
    pub fn new(gamma: &[usize], delta: &[usize], b: &[usize]) -> Result<BchSpec> {
        if gamma.len() != delta.len() || gamma.len() != b.len() {
            return Err(Error::InvalidBchSpec(
                "gamma, delta and b must have equal lengths".into(),
            ));
        }
        let mut parts: Vec<BchPart> = gamma
            .iter()
            .zip(delta)
            .zip(b)
            .map(|((&axis, &delta), &offset)| BchPart { axis, delta, offset })
            .collect();
        parts.sort_by_key(|p| p.axis);
        if parts.iter().any(|p| p.axis != 1 && p.axis != 2) {
            return Err(Error::InvalidBchSpec("gamma must be a subset of {1,2}".into()));
        }
        if parts.windows(2).any(|w| w[0].axis == w[1].axis) {
            return Err(Error::InvalidBchSpec("gamma has a repeated axis".into()));
        }
        Ok(BchSpec { parts })
    }

    pub fn validate(&self, moduli: Moduli) -> Result<()> {
        for p in &self.parts {
            let r = moduli.get(p.axis);
            if p.delta < 2 || p.delta > r {
                return Err(Error::DesignedDistanceOutOfRange { delta: p.delta, max: r });
            }
        }
        Ok(())
    }

    /// Product of the designed distances.
    pub fn designed_product(&self) -> usize {
        self.parts.iter().map(|p| p.delta).product()
    }
}

/// Cyclic BCH code of length r: D is the q-closure of {b, ..., b+delta-2}.
pub fn bch_univariate(field: &Field, r: usize, delta: usize, b: usize) -> Result<AbelianCode> {
    let moduli = Moduli::cyclic(r);
    let spec = BchSpec::new(&[2], &[delta], &[b])?;
    bch_bivariate(field, moduli, &spec)
}

/// Bivariate BCH code: D is the union of the q-orbits of the hyperplanes
/// `I(k, b_k + l)`, `0 <= l <= delta_k - 2`, over `k` in gamma.
pub fn bch_bivariate(field: &Field, moduli: Moduli, spec: &BchSpec) -> Result<AbelianCode> {
    spec.validate(moduli)?;
    let q = field.size();
    for r in [moduli.r1, moduli.r2] {
        if gcd(q, r as u64) != 1 {
            return Err(Error::SemisimplicityViolation { q, modulus: r as u64 });
        }
    }
    let mut pts: Vec<IndexPair> = Vec::new();
    for part in &spec.parts {
        let r = moduli.get(part.axis);
        for l in 0..part.delta - 1 {
            let x = (part.offset + l) % r;
            match part.axis {
                1 => pts.extend((0..moduli.r2).map(|j| (x, j))),
                _ => pts.extend((0..moduli.r1).map(|i| (i, x))),
            }
        }
    }
    let d = OrbitSet::closure(moduli, q, pts)?;
    code_from_defining_set(field, &d)
}

/// Reed-Solomon code over GF(q): length q - 1, D = {b, ..., b+delta-2}.
pub fn reed_solomon(field: &Field, delta: usize, b: usize) -> Result<AbelianCode> {
    let r = (field.size() - 1) as usize;
    if r < 2 || delta < 2 || delta > r {
        return Err(Error::DesignedDistanceOutOfRange { delta, max: r });
    }
    bch_univariate(field, r, delta, b)
}

/// Least unit `k` modulo `r` such that `beta_to^k` is conjugate over F_q to
/// `beta_from`, where both are the canonical primitive r-th roots of the
/// respective transform contexts.
fn align_column_roots(from: &Fourier, to: &Fourier) -> Result<u64> {
    let r = to.moduli().r2 as u64;
    let mp = minimal_polynomial(from.splitting(), from.beta());
    let emb = &to.splitting().embedding;
    let ext = to.ext();
    let coeffs: Vec<u64> = mp.iter().map(|&c| emb.embed(c)).collect();
    units(r)
        .into_iter()
        .find(|&k| {
            let y = to.beta_pow(k);
            coeffs.iter().rev().fold(0u64, |acc, &c| ext.add(ext.mul(acc, y), c)) == 0
        })
        .ok_or_else(|| Error::Inconsistent("no conjugate primitive root in the target field".into()))
}

/// The multiplied code C_n in F_q(n, r) with D(C_n) = Z_n x D(C), where D(C)
/// is taken relative to an optimized root of C (the stored root when it is
/// optimized, otherwise the least optimized twist). As a set of polynomials
/// C_n is the code of all f vanishing at (x, z) for every n-th root of unity
/// x and every zero z of C.
pub fn multiply_dimension(c: &AbelianCode, n: usize, cap: u32) -> Result<AbelianCode> {
    if !c.is_cyclic() {
        return Err(Error::NotCyclic);
    }
    let q = c.q();
    if n == 0 || gcd(n as u64, q) != 1 {
        return Err(Error::NotCoprime { a: n as u64, b: q });
    }
    if c.is_zero() {
        return Err(Error::ZeroCode);
    }
    let sd = c.sd_star(cap)?;
    if sd.value <= 1 {
        return Err(Error::TrivialDistance);
    }
    let base = if sd.optimized.contains(&c.multiplier()) {
        c.clone()
    } else {
        c.retwisted(sd.optimized[0])?
    };
    let r = base.moduli().r2;
    let moduli = Moduli::new(n, r);
    let columns: Vec<usize> = base.defining_set().iter().map(|(_, b)| b).collect();
    let d = OrbitSet::closure(moduli, q, (0..n).flat_map(|i| columns.iter().map(move |&b| (i, b))))?;
    let target = Fourier::new(c.field(), moduli)?;
    let k = align_column_roots(base.fourier()?, &target)?;
    let v = mod_mul(k, base.multiplier().1, r as u64);
    let mut out = AbelianCode::new(c.field(), &d, (1, v))?;
    out.fourier = OnceCell::with_value(Arc::new(target));
    Ok(out)
}

/// A BCH description `(delta, b)` of a cyclic code at an absolute twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BchMatch {
    pub delta: usize,
    pub offset: usize,
    pub twist: u64,
}

/// Every maximal consecutive run `{b, ..., b+delta-2}` of the defining set
/// (at every twist) whose q-closure is the whole defining set.
pub fn detect_bch_parameters(c: &AbelianCode) -> Result<Vec<BchMatch>> {
    if !c.is_cyclic() {
        return Err(Error::NotCyclic);
    }
    if c.is_zero() {
        return Err(Error::ZeroCode);
    }
    let r = c.moduli().r2;
    let mut out = Vec::new();
    for v in units(r as u64) {
        let code = c.retwisted((0, v))?;
        let d = code.defining_set();
        let member: Vec<bool> = (0..r).map(|b| d.contains((0, b))).collect();
        for b in 0..r {
            // run starts at b: b in D and b-1 not in D
            if !member[b] || member[(b + r - 1) % r] {
                continue;
            }
            let len = (0..r).take_while(|&l| member[(b + l) % r]).count();
            let run = (0..len).map(|l| (0, (b + l) % r));
            if OrbitSet::closure(d.moduli(), d.q(), run)? == *d {
                out.push(BchMatch {
                    delta: len + 1,
                    offset: b,
                    twist: v,
                });
            }
        }
    }
    Ok(out)
}

/// `r1 r2 - lcm(O_r1(q), O_r2(q)) * sum_k (delta_k - 1) * prod_{j != k} r_j`.
pub fn bch_dimension_lower_bound(moduli: Moduli, q: u64, spec: &BchSpec) -> Result<i64> {
    spec.validate(moduli)?;
    let t = crate::arith::lcm(
        crate::orbit::multiplicative_order(q, moduli.r1 as u64)?,
        crate::orbit::multiplicative_order(q, moduli.r2 as u64)?,
    ) as i64;
    let sum: i64 = spec
        .parts
        .iter()
        .map(|p| (p.delta as i64 - 1) * moduli.get(3 - p.axis) as i64)
        .sum();
    Ok(moduli.size() as i64 - t * sum)
}
