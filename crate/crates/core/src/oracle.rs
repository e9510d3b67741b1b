//! Minimum-distance ground truth: exhaustive enumeration, lifted witnesses
//! and distance certificates.

use std::fmt;

use crate::apparent::DEFAULT_MSD_CAP;
use crate::code::AbelianCode;
use crate::fourier::BivariatePolynomial;
use crate::{Error, Result};

/// Default enumeration budget for [`minimum_distance_exhaustive`].
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// Generator rows are offered as witnesses only up to this dimension.
const GENERATOR_WITNESS_DIM: usize = 512;

/// Number of codewords `q^dim`, or `None` past `u64`.
fn codeword_count(code: &AbelianCode) -> Option<u64> {
    code.q().checked_pow(u32::try_from(code.dimension()).ok()?)
}

struct Search {
    weight: usize,
    word: Vec<u64>,
    visited: u64,
}

/// Walks every nonzero codeword with a p-ary modular Gray code over the
/// F_p-basis `{x^j g_i}`; stops early once a word of weight at most `floor`
/// turns up.
fn enumerate(code: &AbelianCode, cap: u64, floor: usize) -> Result<Search> {
    if code.is_zero() {
        return Err(Error::ZeroCode);
    }
    let needed = codeword_count(code).unwrap_or(u64::MAX);
    if needed > cap {
        return Err(Error::BudgetExceeded { needed, cap });
    }
    let f = code.field();
    let p = f.characteristic();
    let n = code.length();
    let basis: Vec<Vec<u64>> = code
        .generator_matrix()?
        .iter()
        .flat_map(|row| {
            (0..f.degree()).map(move |j| {
                let x = p.pow(j);
                row.iter().map(|&c| f.mul(c, x)).collect::<Vec<u64>>()
            })
        })
        .collect();
    let mut word = vec![0u64; n];
    let mut weight = 0usize;
    let mut best = Search {
        weight: usize::MAX,
        word: Vec::new(),
        visited: 0,
    };
    let mut counter = vec![0u64; basis.len()];
    while let Some(t) = counter.iter().position(|&d| d != p - 1) {
        counter[..t].iter_mut().for_each(|d| *d = 0);
        counter[t] += 1;
        for (x, &g) in word.iter_mut().zip(&basis[t]) {
            if g != 0 {
                let was = *x != 0;
                *x = f.add(*x, g);
                match (was, *x != 0) {
                    (false, true) => weight += 1,
                    (true, false) => weight -= 1,
                    _ => {}
                }
            }
        }
        best.visited += 1;
        if weight < best.weight {
            best.weight = weight;
            best.word.clone_from(&word);
            if weight <= floor.max(1) {
                break;
            }
        }
    }
    Ok(best)
}

/// Minimum Hamming weight over the nonzero codewords, by enumerating all
/// `q^dim` messages. Requires `q^dim <= cap`.
pub fn minimum_distance_exhaustive(code: &AbelianCode, cap: u64) -> Result<usize> {
    Ok(enumerate(code, cap, 0)?.weight)
}

/// As [`minimum_distance_exhaustive`], returning a minimum-weight word.
pub fn minimum_weight_word(code: &AbelianCode, cap: u64) -> Result<BivariatePolynomial> {
    let s = enumerate(code, cap, 0)?;
    BivariatePolynomial::from_coeffs(code.field(), code.moduli(), s.word)
}

/// Lifts a codeword `w` of the cyclic code `c` to row 0 of its
/// multiplication `cn`. Membership is checked on both ends.
pub fn embedded_witness(c: &AbelianCode, cn: &AbelianCode, w: &BivariatePolynomial) -> Result<BivariatePolynomial> {
    if !c.is_cyclic() {
        return Err(Error::NotCyclic);
    }
    if !c.contains(w)? {
        return Err(Error::NotACodeword);
    }
    if cn.moduli().r2 != c.moduli().r2 {
        return Err(Error::LengthMismatch {
            expected: c.moduli().r2,
            actual: cn.moduli().r2,
        });
    }
    let lift = BivariatePolynomial::from_column_poly(cn.field(), cn.moduli(), w.coeffs())?;
    if !cn.contains(&lift)? {
        return Err(Error::NotACodeword);
    }
    Ok(lift)
}

/// `prod (Z - root)` over L, restricted to base-field codes.
fn annihilator(code: &AbelianCode, roots: impl Iterator<Item = u64>) -> Result<Vec<u64>> {
    let fourier = code.fourier()?;
    let ext = fourier.ext();
    let mut poly = vec![1u64];
    for root in roots {
        let mut next = vec![0u64; poly.len() + 1];
        for (i, &a) in poly.iter().enumerate() {
            next[i + 1] = ext.add(next[i + 1], a);
            next[i] = ext.sub(next[i], ext.mul(a, root));
        }
        poly = next;
    }
    poly.into_iter()
        .map(|c| fourier.splitting().embedding.restrict(c).ok_or(Error::NotOrbitClosed))
        .collect()
}

/// Cheap nonzero codewords: the univariate polynomial killing every column
/// (resp. row) index D touches, placed on row 0 (resp. column 0), plus the
/// generator rows of small codes.
pub fn witness_candidates(code: &AbelianCode) -> Result<Vec<BivariatePolynomial>> {
    if code.is_zero() {
        return Err(Error::ZeroCode);
    }
    let f = code.field();
    let moduli = code.moduli();
    let fourier = code.fourier()?;
    let (u0, v0) = code.multiplier();
    let mut out = Vec::new();

    let mut cols: Vec<usize> = code.defining_set().iter().map(|(_, b)| b).collect();
    cols.sort_unstable();
    cols.dedup();
    if cols.len() < moduli.r2 {
        let g = fourier.column_generator(&cols, v0)?;
        out.push(BivariatePolynomial::from_column_poly(f, moduli, &g)?);
    }

    let mut rows: Vec<usize> = code.defining_set().iter().map(|(a, _)| a).collect();
    rows.sort_unstable();
    rows.dedup();
    if !rows.is_empty() && rows.len() < moduli.r1 {
        let g = annihilator(code, rows.iter().map(|&a| fourier.alpha_pow(u0 * a as u64)))?;
        let mut coeffs = vec![0u64; moduli.size()];
        for (i, &c) in g.iter().enumerate() {
            coeffs[moduli.index((i, 0))] = c;
        }
        out.push(BivariatePolynomial::from_coeffs(f, moduli, coeffs)?);
    }

    if code.dimension() <= GENERATOR_WITNESS_DIM {
        for row in code.generator_matrix()? {
            out.push(BivariatePolynomial::from_coeffs(f, moduli, row.clone())?);
        }
    }
    out.retain(|w| !w.is_zero());
    Ok(out)
}

/// Least-weight verified member of [`witness_candidates`].
pub fn best_witness(code: &AbelianCode) -> Result<BivariatePolynomial> {
    let mut best: Option<BivariatePolynomial> = None;
    for w in witness_candidates(code)? {
        if best.as_ref().is_some_and(|b| b.weight() <= w.weight()) {
            continue;
        }
        if code.contains(&w)? {
            best = Some(w);
        }
    }
    best.ok_or_else(|| Error::Inconsistent("no nonzero witness found".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    WitnessSdStar,
    Both,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "witness+sdstar" | "witness" | "sdstar" => Ok(Strategy::WitnessSdStar),
            "both" => Ok(Strategy::Both),
            _ => Err(Error::Parse(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSource {
    SdStar,
    Exhaustive,
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundSource::SdStar => "sd*",
            BoundSource::Exhaustive => "exhaustive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Exact(usize),
    /// Bounds did not meet: `lower <= d <= upper`.
    Interval(usize, usize),
}

#[derive(Clone, Debug)]
pub struct DistanceCertificate {
    pub code: String,
    pub lower_bound: usize,
    pub lower_source: BoundSource,
    pub upper_bound: usize,
    pub witness: BivariatePolynomial,
    pub verdict: Verdict,
    pub transcript: Vec<String>,
}

impl DistanceCertificate {
    pub fn exact(&self) -> Option<usize> {
        match self.verdict {
            Verdict::Exact(d) => Some(d),
            Verdict::Interval(..) => None,
        }
    }

    /// Re-checks the witness against `code` and the bound ordering.
    pub fn verify(&self, code: &AbelianCode) -> Result<()> {
        if self.witness.is_zero() || self.witness.weight() != self.upper_bound {
            return Err(Error::Inconsistent(
                "witness weight differs from the upper bound".into(),
            ));
        }
        if !code.contains(&self.witness)? {
            return Err(Error::NotACodeword);
        }
        if self.lower_bound > self.upper_bound {
            return Err(Error::Inconsistent(format!(
                "lower bound {} exceeds upper bound {}",
                self.lower_bound, self.upper_bound
            )));
        }
        let expected = if self.lower_bound == self.upper_bound {
            Verdict::Exact(self.upper_bound)
        } else {
            Verdict::Interval(self.lower_bound, self.upper_bound)
        };
        if expected != self.verdict {
            return Err(Error::Inconsistent("verdict does not match the bounds".into()));
        }
        Ok(())
    }
}

impl fmt::Display for DistanceCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "code\t{}", self.code)?;
        writeln!(f, "lower_bound\t{}\t{}", self.lower_bound, self.lower_source)?;
        writeln!(f, "upper_bound\t{}\twitness", self.upper_bound)?;
        match self.verdict {
            Verdict::Exact(d) => writeln!(f, "verdict\texact\t{d}")?,
            Verdict::Interval(lo, hi) => writeln!(f, "verdict\tinterval\t{lo}..={hi}")?,
        }
        let coeffs: Vec<String> = self.witness.coeffs().iter().map(u64::to_string).collect();
        writeln!(f, "witness\t[{}]", coeffs.join(","))?;
        for line in &self.transcript {
            writeln!(f, "transcript\t{line}")?;
        }
        Ok(())
    }
}

fn code_identity(code: &AbelianCode) -> String {
    let m = code.moduli();
    format!(
        "q={} r=[{},{}] multiplier=[{},{}] dim={}",
        code.q(),
        m.r1,
        m.r2,
        code.multiplier().0,
        code.multiplier().1,
        code.dimension()
    )
}

/// Builds and self-verifies a distance certificate.
pub fn certify_distance(code: &AbelianCode, strategy: Strategy) -> Result<DistanceCertificate> {
    certify_distance_with(code, strategy, DEFAULT_ENUMERATION_CAP, DEFAULT_MSD_CAP)
}

pub fn certify_distance_with(
    code: &AbelianCode,
    strategy: Strategy,
    enum_cap: u64,
    msd_cap: u32,
) -> Result<DistanceCertificate> {
    if code.is_zero() {
        return Err(Error::ZeroCode);
    }
    let mut transcript = Vec::new();
    let sd = match strategy {
        Strategy::Exhaustive => None,
        _ => {
            let sd = code.sd_star(msd_cap)?;
            transcript.push(format!(
                "sd* = {} over {} optimized twists",
                sd.value,
                sd.optimized.len()
            ));
            Some(sd.value)
        }
    };
    let witness = match strategy {
        Strategy::Exhaustive => None,
        _ => {
            let w = best_witness(code)?;
            transcript.push(format!("witness of weight {} verified by evaluation on D", w.weight()));
            Some(w)
        }
    };
    let exhaustive = match strategy {
        Strategy::WitnessSdStar => None,
        _ => {
            let floor = sd.unwrap_or(0);
            let s = enumerate(code, enum_cap, floor)?;
            if floor > 0 && s.weight < floor {
                return Err(Error::Inconsistent(format!(
                    "found weight {} below sd* {floor}",
                    s.weight
                )));
            }
            let complete = s.weight > floor.max(1) || s.visited + 1 == codeword_count(code).unwrap_or(0);
            transcript.push(format!(
                "enumerated {} nonzero codewords{}; least weight {}",
                s.visited,
                if complete { "" } else { " (stopped at the sd* floor)" },
                s.weight
            ));
            Some(s)
        }
    };

    let (lower_bound, lower_source, upper_bound, witness) = match (exhaustive, sd, witness) {
        (Some(s), _, _) => {
            let w = BivariatePolynomial::from_coeffs(code.field(), code.moduli(), s.word)?;
            (s.weight, BoundSource::Exhaustive, s.weight, w)
        }
        (None, Some(lo), Some(w)) => (lo, BoundSource::SdStar, w.weight(), w),
        _ => unreachable!("every strategy yields a bound pair"),
    };
    let verdict = if lower_bound == upper_bound {
        Verdict::Exact(upper_bound)
    } else {
        transcript.push("bounds do not meet; certificate is inconclusive".into());
        Verdict::Interval(lower_bound, upper_bound)
    };
    let cert = DistanceCertificate {
        code: code_identity(code),
        lower_bound,
        lower_source,
        upper_bound,
        witness,
        verdict,
        transcript,
    };
    cert.verify(code)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{bch_univariate, code_from_defining_set, multiply_dimension, reed_solomon};
    use crate::field::make_field;
    use crate::orbit::{Moduli, OrbitSet};

    #[test]
    fn repetition_code_distance() {
        let f2 = make_field(2, 1).unwrap();
        let m = Moduli::cyclic(7);
        let d = OrbitSet::closure(m, 2, [(0, 1), (0, 3)]).unwrap();
        let rep = code_from_defining_set(&f2, &d).unwrap();
        assert_eq!(rep.dimension(), 1);
        assert_eq!(minimum_distance_exhaustive(&rep, 1 << 10).unwrap(), 7);
    }

    #[test]
    fn hamming_distances() {
        let f2 = make_field(2, 1).unwrap();
        let h = bch_univariate(&f2, 7, 3, 1).unwrap();
        assert_eq!(minimum_distance_exhaustive(&h, DEFAULT_ENUMERATION_CAP).unwrap(), 3);
        let h3 = multiply_dimension(&h, 3, 22).unwrap();
        assert_eq!(minimum_distance_exhaustive(&h3, DEFAULT_ENUMERATION_CAP).unwrap(), 3);
        assert!(matches!(
            minimum_distance_exhaustive(&h3, 100),
            Err(Error::BudgetExceeded { needed: 4096, cap: 100 })
        ));
    }

    #[test]
    fn odd_characteristic_gray_walk() {
        // generated by Y^2 + 1 over GF(3)
        let f3 = make_field(3, 1).unwrap();
        let c = bch_univariate(&f3, 4, 2, 1).unwrap();
        assert_eq!(c.dimension(), 2);
        assert_eq!(minimum_distance_exhaustive(&c, 1 << 10).unwrap(), 2);
        let f4 = make_field(2, 2).unwrap();
        let rs = reed_solomon(&f4, 2, 1).unwrap();
        assert_eq!(minimum_distance_exhaustive(&rs, 1 << 10).unwrap(), 2);
    }

    #[test]
    fn zero_code_has_no_distance() {
        let f2 = make_field(2, 1).unwrap();
        let zero = code_from_defining_set(&f2, &OrbitSet::full(Moduli::cyclic(7), 2).unwrap()).unwrap();
        assert_eq!(minimum_distance_exhaustive(&zero, 1), Err(Error::ZeroCode));
    }

    #[test]
    fn lifted_witness() {
        let f2 = make_field(2, 1).unwrap();
        let h = bch_univariate(&f2, 7, 3, 1).unwrap();
        let h3 = multiply_dimension(&h, 3, 22).unwrap();
        let zero = BivariatePolynomial::zero(&f2, h.moduli());
        assert!(embedded_witness(&h, &h3, &zero).unwrap().is_zero());
        let w = BivariatePolynomial::from_column_poly(&f2, h.moduli(), &[1, 1, 0, 1]).unwrap();
        let lift = embedded_witness(&h, &h3, &w).unwrap();
        assert_eq!(lift.weight(), 3);
        let not = BivariatePolynomial::from_column_poly(&f2, h.moduli(), &[1, 1]).unwrap();
        assert_eq!(embedded_witness(&h, &h3, &not), Err(Error::NotACodeword));
    }

    #[test]
    fn certificates() {
        let f2 = make_field(2, 1).unwrap();
        let h = bch_univariate(&f2, 7, 3, 1).unwrap();
        for s in [Strategy::Exhaustive, Strategy::WitnessSdStar, Strategy::Both] {
            let cert = certify_distance(&h, s).unwrap();
            assert_eq!(cert.exact(), Some(3), "{s:?}");
        }
        let f16 = make_field(2, 4).unwrap();
        let rs3 = multiply_dimension(&reed_solomon(&f16, 5, 0).unwrap(), 3, 22).unwrap();
        let cert = certify_distance(&rs3, Strategy::WitnessSdStar).unwrap();
        assert_eq!(cert.exact(), Some(5));
        assert!(certify_distance(&rs3, Strategy::Exhaustive).is_err());
        let text = cert.to_string();
        assert!(text.contains("verdict\texact\t5"));
    }
}
