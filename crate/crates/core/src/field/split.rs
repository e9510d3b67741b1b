use std::collections::HashMap;

use super::Field;
use crate::arith::{gcd, lcm};
use crate::orbit::multiplicative_order;
use crate::{Error, Result};

/// A field homomorphism GF(q) -> L onto the unique subfield of size q.
#[derive(Clone, Debug)]
pub struct Embedding {
    base: Field,
    ext: Field,
    // image of X^i, i < deg(base)
    basis_images: Vec<u64>,
    inverse: Option<HashMap<u64, u64>>,
}

impl Embedding {
    /// The canonical embedding. When the degrees agree the fields coincide
    /// and the map is the identity; otherwise X is sent to the root of the
    /// base modulus of least exponent `k` in `gamma^k`, with `gamma` the
    /// canonical generator of the size-q subgroup of L^*.
    pub fn new(base: &Field, ext: &Field) -> Result<Embedding> {
        let (p, m, big_m) = (base.characteristic(), base.degree(), ext.degree());
        if p != ext.characteristic() || big_m % m != 0 {
            return Err(Error::FieldMismatch);
        }
        if m == big_m {
            return Ok(Embedding {
                base: base.clone(),
                ext: ext.clone(),
                basis_images: Vec::new(),
                inverse: None,
            });
        }
        let q = base.size();
        let gamma = ext.pow(ext.generator_code(), ext.group_order() / (q - 1));
        let eval = |y: u64| {
            base.modulus()
                .iter()
                .rev()
                .fold(0u64, |acc, &c| ext.add(ext.mul(acc, y), c))
        };
        // a prime base field has modulus X and needs no root
        let root = if m == 1 {
            0
        } else {
            (1..q)
                .map(|k| ext.pow(gamma, k))
                .find(|&y| eval(y) == 0)
                .expect("the base modulus splits in L")
        };
        let basis_images: Vec<u64> = (0..m as u64).map(|i| ext.pow(root, i)).collect();
        let mut emb = Embedding {
            base: base.clone(),
            ext: ext.clone(),
            basis_images,
            inverse: None,
        };
        let inverse: HashMap<u64, u64> = (0..q).map(|c| (emb.embed(c), c)).collect();
        emb.inverse = Some(inverse);
        Ok(emb)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn is_identity(&self) -> bool {
        self.basis_images.is_empty()
    }

    pub fn embed(&self, code: u64) -> u64 {
        if self.basis_images.is_empty() || code == 0 {
            return code;
        }
        let p = self.base.characteristic();
        let mut c = code;
        let mut acc = 0u64;
        for &img in &self.basis_images {
            let digit = c % p;
            c /= p;
            if digit != 0 {
                acc = self.ext.add(acc, self.ext.mul(digit, img));
            }
        }
        acc
    }

    /// Preimage of `x` if it lies in the subfield of size q (checked as
    /// `x^q == x`).
    pub fn restrict(&self, x: u64) -> Option<u64> {
        if self.is_identity() {
            return Some(x);
        }
        if self.ext.pow(x, self.base.size()) != x {
            return None;
        }
        self.inverse.as_ref().and_then(|inv| inv.get(&x).copied())
    }
}

/// The extension L of GF(q) containing the r1-th and r2-th roots of unity.
#[derive(Clone, Debug)]
pub struct SplittingField {
    pub embedding: Embedding,
    /// `[L : GF(q)]`
    pub relative_degree: u32,
}

impl SplittingField {
    pub fn base(&self) -> &Field {
        self.embedding.base()
    }

    pub fn ext(&self) -> &Field {
        self.embedding.ext()
    }
}

/// L = GF(q^t) with `t = lcm(ord_r1(q), ord_r2(q))`.
pub fn splitting_field(base: &Field, r1: u64, r2: u64) -> Result<SplittingField> {
    let q = base.size();
    for r in [r1, r2] {
        if r == 0 || gcd(q, r) != 1 {
            return Err(Error::SemisimplicityViolation { q, modulus: r });
        }
    }
    let t = lcm(multiplicative_order(q, r1)?, multiplicative_order(q, r2)?);
    let m = u32::try_from(t * base.degree() as u64).map_err(|_| Error::SizeCapExceeded {
        p: base.characteristic(),
        m: u32::MAX,
        cap_bits: super::DEFAULT_SIZE_CAP_BITS,
    })?;
    let ext = if m == base.degree() {
        base.clone()
    } else {
        Field::new(base.characteristic(), m)?
    };
    Ok(SplittingField {
        embedding: Embedding::new(base, &ext)?,
        relative_degree: t as u32,
    })
}

/// Minimal polynomial over GF(q) of `x` in L, as base-field codes
/// (ascending, monic): the product of `Y - x^(q^j)` over the conjugates.
pub fn minimal_polynomial(split: &SplittingField, x: u64) -> Vec<u64> {
    let ext = split.ext();
    let q = split.base().size();
    let mut conjugates = vec![x];
    let mut y = ext.pow(x, q);
    while y != x {
        conjugates.push(y);
        y = ext.pow(y, q);
    }
    let mut poly = vec![1u64];
    for c in conjugates {
        let mut next = vec![0u64; poly.len() + 1];
        for (i, &a) in poly.iter().enumerate() {
            next[i + 1] = ext.add(next[i + 1], a);
            next[i] = ext.sub(next[i], ext.mul(a, c));
        }
        poly = next;
    }
    poly.into_iter()
        .map(|c| {
            split
                .embedding
                .restrict(c)
                .expect("minimal polynomial has base coefficients")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn splitting_degrees() {
        let f4 = make_field(2, 2).unwrap();
        let s = splitting_field(&f4, 7, 9).unwrap();
        assert_eq!(s.ext().size(), 64);
        assert_eq!(s.relative_degree, 3);

        let f2 = make_field(2, 1).unwrap();
        let s = splitting_field(&f2, 3, 55).unwrap();
        assert_eq!(s.ext().size(), 1 << 20);

        // 256 = 1 mod 5 and mod 255: the base field already splits
        let f256 = make_field(2, 8).unwrap();
        let s = splitting_field(&f256, 5, 255).unwrap();
        assert_eq!(s.ext().size(), 256);
        assert!(s.embedding.is_identity());

        assert!(matches!(
            splitting_field(&f2, 4, 7),
            Err(Error::SemisimplicityViolation { .. })
        ));
    }

    #[test]
    fn embedding_is_a_homomorphism_onto_the_fixed_field() {
        for &(p, m, big_m) in &[(2u64, 2u32, 6u32), (2, 2, 4), (3, 1, 3), (3, 2, 4), (2, 4, 8)] {
            let base = make_field(p, m).unwrap();
            let ext = make_field(p, big_m).unwrap();
            let e = Embedding::new(&base, &ext).unwrap();
            for a in 0..base.size() {
                for b in 0..base.size() {
                    assert_eq!(e.embed(base.add(a, b)), ext.add(e.embed(a), e.embed(b)));
                    assert_eq!(e.embed(base.mul(a, b)), ext.mul(e.embed(a), e.embed(b)));
                }
            }
            // subfield criterion: x is in the image iff x^q = x
            let image: std::collections::HashSet<u64> = (0..base.size()).map(|c| e.embed(c)).collect();
            assert_eq!(image.len() as u64, base.size());
            for x in 0..ext.size() {
                let fixed = ext.pow(x, base.size()) == x;
                assert_eq!(image.contains(&x), fixed);
                assert_eq!(e.restrict(x).is_some(), fixed);
                if let Some(c) = e.restrict(x) {
                    assert_eq!(e.embed(c), x);
                }
            }
        }
    }

    #[test]
    fn minimal_polynomials_of_roots() {
        let f2 = make_field(2, 1).unwrap();
        let s = splitting_field(&f2, 1, 7).unwrap();
        let alpha = s.ext().root_of_unity(7).unwrap().code();
        let mp = minimal_polynomial(&s, alpha);
        assert_eq!(mp.len(), 4);
        // the two binary cubics dividing Y^7 - 1
        assert!(mp == vec![1, 1, 0, 1] || mp == vec![1, 0, 1, 1]);
        assert_eq!(minimal_polynomial(&s, 1), vec![1, 1]);
    }
}
