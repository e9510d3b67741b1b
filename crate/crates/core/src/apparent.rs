//! Strong apparent distance of vectors, matrices and codes.
//!
//! A [`BinaryMatrix`] records which entries of an I-matrix are nonzero.
//! Hyperplane `(Axis::Rows, b)` is row `b` (a vector over Z_r2) and
//! `(Axis::Columns, b)` is column `b` (a vector over Z_r1).
//!
//! For a nonzero matrix and each axis `k`:
//! `omega(k)` is the longest circular run of zero hyperplanes,
//! `epsilon(k)` the largest sd* of a single hyperplane, and
//! `sd_k = epsilon(k) * (omega(k) + 1)`; sd* is the larger of the two.
//! The minimum over dominated q-orbit matrices (msd) short-circuits to sd*
//! whenever an involved hyperplane has sd* equal to 1.

use std::fmt;

use crate::arith::mod_inverse;
use crate::fourier::{Multiplier, Spectrum};
use crate::orbit::{units, Moduli, OrbitPartition, OrbitSet};
use crate::{Error, Result};

/// Default limit on the number of free orbits msd may enumerate over.
pub const DEFAULT_MSD_CAP: u32 = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Rows = 1,
    Columns = 2,
}

impl Axis {
    pub const BOTH: [Axis; 2] = [Axis::Rows, Axis::Columns];

    pub fn number(self) -> u8 {
        self as u8
    }
}

/// Longest circular run of `false` entries; `None` if every entry is false.
fn longest_zero_run(nonzero: &[bool]) -> Option<usize> {
    let start = nonzero.iter().position(|&x| x)?;
    let n = nonzero.len();
    let (mut best, mut cur) = (0, 0);
    for k in 1..=n {
        if nonzero[(start + k) % n] {
            cur = 0;
        } else {
            cur += 1;
            best = best.max(cur);
        }
    }
    Some(best)
}

/// Length of the block of zero entries starting at `b` and running forward
/// (circularly) to the first nonzero entry; 0 if entry `b` is nonzero.
pub fn zero_run_vector(nonzero: &[bool], b: usize) -> Result<usize> {
    if nonzero[b] {
        return Ok(0);
    }
    let n = nonzero.len();
    (1..n).find(|&k| nonzero[(b + k) % n]).ok_or(Error::AllZeroAxis(1))
}

/// sd* of a vector: 0 for the zero vector, otherwise the longest circular
/// zero run plus one.
pub fn sd_star_vector(nonzero: &[bool]) -> usize {
    longest_zero_run(nonzero).map_or(0, |run| run + 1)
}

/// Support pattern of an I-matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    moduli: Moduli,
    support: Vec<bool>,
}

impl BinaryMatrix {
    pub fn new(moduli: Moduli, support: Vec<bool>) -> Result<Self> {
        if support.len() != moduli.size() {
            return Err(Error::LengthMismatch {
                expected: moduli.size(),
                actual: support.len(),
            });
        }
        Ok(BinaryMatrix { moduli, support })
    }

    pub fn zeros(moduli: Moduli) -> Self {
        BinaryMatrix {
            moduli,
            support: vec![false; moduli.size()],
        }
    }

    pub fn ones(moduli: Moduli) -> Self {
        BinaryMatrix {
            moduli,
            support: vec![true; moduli.size()],
        }
    }

    /// M(phi): the support of a spectrum.
    pub fn from_spectrum(s: &Spectrum) -> Self {
        BinaryMatrix {
            moduli: s.moduli(),
            support: s.values().iter().map(|&x| x != 0).collect(),
        }
    }

    pub fn moduli(&self) -> Moduli {
        self.moduli
    }

    pub fn support(&self) -> &[bool] {
        &self.support
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.support[self.moduli.index((i, j))]
    }

    pub fn support_size(&self) -> usize {
        self.support.iter().filter(|&&x| x).count()
    }

    pub fn is_zero(&self) -> bool {
        !self.support.iter().any(|&x| x)
    }

    pub fn hyperplane_count(&self, axis: Axis) -> usize {
        match axis {
            Axis::Rows => self.moduli.r1,
            Axis::Columns => self.moduli.r2,
        }
    }

    /// H_M(k, b) as a support vector.
    pub fn hyperplane(&self, axis: Axis, b: usize) -> Vec<bool> {
        match axis {
            Axis::Rows => (0..self.moduli.r2).map(|j| self.get(b, j)).collect(),
            Axis::Columns => (0..self.moduli.r1).map(|i| self.get(i, b)).collect(),
        }
    }

    fn hyperplane_flags(&self, axis: Axis) -> Vec<bool> {
        (0..self.hyperplane_count(axis))
            .map(|b| self.hyperplane(axis, b).into_iter().any(|x| x))
            .collect()
    }

    /// omega_M(k, b).
    pub fn zero_run(&self, axis: Axis, b: usize) -> Result<usize> {
        let flags = self.hyperplane_flags(axis);
        if b >= flags.len() {
            return Err(Error::IndexOutOfRange {
                a: axis.number() as usize,
                b,
                r1: 2,
                r2: flags.len(),
            });
        }
        zero_run_vector(&flags, b).map_err(|_| Error::AllZeroAxis(axis.number()))
    }

    /// `supp(self) ⊆ supp(other)`.
    pub fn le(&self, other: &BinaryMatrix) -> bool {
        self.moduli == other.moduli && self.support.iter().zip(&other.support).all(|(&a, &b)| !a || b)
    }

    pub fn sd_star(&self) -> SdReport {
        if self.is_zero() {
            return SdReport::zero();
        }
        let mut axes = [AxisReport::default(); 2];
        let mut hyper_sd = [Vec::new(), Vec::new()];
        for (k, axis) in Axis::BOTH.into_iter().enumerate() {
            let flags = self.hyperplane_flags(axis);
            let sds: Vec<usize> = (0..flags.len())
                .map(|b| sd_star_vector(&self.hyperplane(axis, b)))
                .collect();
            let omega = longest_zero_run(&flags).expect("matrix is nonzero");
            let epsilon = sds.iter().copied().max().unwrap_or(0);
            axes[k] = AxisReport {
                epsilon,
                omega,
                sd: epsilon * (omega + 1),
            };
            hyper_sd[k] = sds;
        }
        let sd_star = axes[0].sd.max(axes[1].sd);
        let mut involved = Vec::new();
        let mut shortcut = false;
        for (k, axis) in Axis::BOTH.into_iter().enumerate() {
            if axes[k].sd != sd_star {
                continue;
            }
            for (b, &s) in hyper_sd[k].iter().enumerate() {
                if (axes[k].omega + 1) * s == sd_star {
                    involved.push((axis, b));
                    shortcut |= s == 1;
                }
            }
        }
        SdReport {
            sd_star,
            axes,
            involved,
            shortcut_applicable: shortcut,
        }
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.moduli.r1 {
            let row: String = (0..self.moduli.r2)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// sd* value only, without building a report.
fn sd_star_value(moduli: Moduli, support: &[bool]) -> usize {
    let Moduli { r1, r2 } = moduli;
    let mut row_flags = vec![false; r1];
    let mut col_flags = vec![false; r2];
    let mut eps_rows = 0;
    let mut row = vec![false; r2];
    for i in 0..r1 {
        row.copy_from_slice(&support[i * r2..(i + 1) * r2]);
        let s = sd_star_vector(&row);
        eps_rows = eps_rows.max(s);
        row_flags[i] = s > 0;
        for j in 0..r2 {
            col_flags[j] |= row[j];
        }
    }
    let Some(omega_rows) = longest_zero_run(&row_flags) else {
        return 0;
    };
    let omega_cols = longest_zero_run(&col_flags).expect("matrix is nonzero");
    let mut eps_cols = 0;
    let mut col = vec![false; r1];
    for j in 0..r2 {
        for i in 0..r1 {
            col[i] = support[i * r2 + j];
        }
        eps_cols = eps_cols.max(sd_star_vector(&col));
    }
    (eps_rows * (omega_rows + 1)).max(eps_cols * (omega_cols + 1))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AxisReport {
    pub epsilon: usize,
    pub omega: usize,
    pub sd: usize,
}

/// sd* of a matrix together with its per-axis ingredients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdReport {
    pub sd_star: usize,
    /// Indexed by axis: `[rows, columns]`.
    pub axes: [AxisReport; 2],
    /// Every `(k, b)` with `sd*(M) = (omega(k) + 1) * sd*(H_M(k, b))`.
    pub involved: Vec<(Axis, usize)>,
    pub shortcut_applicable: bool,
}

impl SdReport {
    fn zero() -> Self {
        SdReport {
            sd_star: 0,
            axes: [AxisReport::default(); 2],
            involved: Vec::new(),
            shortcut_applicable: false,
        }
    }

    pub fn axis(&self, axis: Axis) -> AxisReport {
        self.axes[axis as usize - 1]
    }
}

impl fmt::Display for SdReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "axis\tepsilon\tomega\tsd_k")?;
        for axis in Axis::BOTH {
            let a = self.axis(axis);
            writeln!(f, "{}\t{}\t{}\t{}", axis.number(), a.epsilon, a.omega, a.sd)?;
        }
        writeln!(f, "sd*\t{}", self.sd_star)?;
        let inv: Vec<String> = self
            .involved
            .iter()
            .map(|(k, b)| format!("({},{})", k.number(), b))
            .collect();
        writeln!(f, "involved\t{}", inv.join(" "))?;
        write!(f, "shortcut\t{}", self.shortcut_applicable)
    }
}

/// The 0/1 matrix afforded by an orbit-closed set: zero exactly on D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMatrix {
    set: OrbitSet,
    matrix: BinaryMatrix,
}

impl OrbitMatrix {
    pub fn new(d: &OrbitSet) -> OrbitMatrix {
        let support = d.members().iter().map(|&z| !z).collect();
        OrbitMatrix {
            set: d.clone(),
            matrix: BinaryMatrix {
                moduli: d.moduli(),
                support,
            },
        }
    }

    /// Accepts an arbitrary support pattern if its zero set is q-closed.
    pub fn from_matrix(matrix: BinaryMatrix, q: u64) -> Result<OrbitMatrix> {
        let zeros = matrix.support.iter().map(|&x| !x).collect();
        let set = OrbitSet::from_members(matrix.moduli, q, zeros)?;
        Ok(OrbitMatrix { set, matrix })
    }

    /// D(M).
    pub fn defining_set(&self) -> &OrbitSet {
        &self.set
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.matrix
    }

    pub fn sd_star(&self) -> SdReport {
        self.matrix.sd_star()
    }

    /// Every column is zero or constantly 1.
    pub fn columns_constant(&self) -> bool {
        (0..self.matrix.moduli.r2).all(|j| {
            let col = self.matrix.hyperplane(Axis::Columns, j);
            col.iter().all(|&x| x) || col.iter().all(|&x| !x)
        })
    }

    /// `self <= other` in the support order, equivalently `D(other) ⊆ D(self)`.
    pub fn le(&self, other: &OrbitMatrix) -> bool {
        self.matrix.le(&other.matrix)
    }
}

/// `orbit_matrix(D)`.
pub fn orbit_matrix(d: &OrbitSet) -> OrbitMatrix {
    OrbitMatrix::new(d)
}

/// msd(M): sd*(M) when the shortcut applies, otherwise the exhaustive
/// minimum over nonzero dominated q-orbit matrices.
pub fn msd(m: &OrbitMatrix, cap: u32) -> Result<usize> {
    let report = m.sd_star();
    if report.shortcut_applicable {
        return Ok(report.sd_star);
    }
    msd_exhaustive(m, cap)
}

/// min sd*(P) over every nonzero q-orbit matrix P <= M, by enumerating all
/// unions of the orbits outside D(M). Returns 0 for the zero matrix.
pub fn msd_exhaustive(m: &OrbitMatrix, cap: u32) -> Result<usize> {
    let d = m.defining_set();
    if d.is_full() {
        return Ok(0);
    }
    let moduli = d.moduli();
    let partition = OrbitPartition::new(moduli, d.q())?;
    let free: Vec<&Vec<(usize, usize)>> = partition.orbits().iter().filter(|o| !d.contains(o[0])).collect();
    let k = free.len();
    if k as u64 > cap as u64 {
        return Err(Error::BudgetExceeded {
            needed: k as u64,
            cap: cap as u64,
        });
    }
    let mut support: Vec<bool> = d.members().iter().map(|&z| !z).collect();
    let mut chosen = vec![false; k];
    let mut n_chosen = 0;
    let mut best = sd_star_value(moduli, &support);
    // Gray-code walk: each step adds or removes one free orbit from D
    for t in 1u64..(1u64 << k) {
        if best == 1 {
            break;
        }
        let bit = t.trailing_zeros() as usize;
        chosen[bit] = !chosen[bit];
        if chosen[bit] {
            n_chosen += 1;
        } else {
            n_chosen -= 1;
        }
        for &pt in free[bit] {
            support[moduli.index(pt)] = !chosen[bit];
        }
        if n_chosen == k {
            continue;
        }
        best = best.min(sd_star_value(moduli, &support));
    }
    Ok(best)
}

/// Code-level sd*: the best msd over all root twists, plus the twists
/// attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSdStar {
    pub value: usize,
    /// Twists `(u, v)`, in lexicographic order, relative to the root pair
    /// the defining set is expressed in.
    pub optimized: Vec<Multiplier>,
}

/// Defining set of the same code relative to the root pair twisted by
/// `(u, v)`: `{(a, b) : (u a, v b) in D}`.
pub fn retwist(d: &OrbitSet, (u, v): Multiplier) -> Result<OrbitSet> {
    let Moduli { r1, r2 } = d.moduli();
    let ui = mod_inverse(u, r1 as u64).ok_or(Error::NotAUnit {
        value: u,
        modulus: r1 as u64,
    })?;
    let vi = mod_inverse(v, r2 as u64).ok_or(Error::NotAUnit {
        value: v,
        modulus: r2 as u64,
    })?;
    d.apply_multiplier(ui, vi)
}

/// msd of the orbit matrix of D relative to one twist.
pub fn sd_star_at(d: &OrbitSet, twist: Multiplier, cap: u32) -> Result<usize> {
    msd(&orbit_matrix(&retwist(d, twist)?), cap)
}

pub fn sd_star_code(d: &OrbitSet, cap: u32) -> Result<CodeSdStar> {
    if d.is_full() {
        return Err(Error::ZeroCode);
    }
    let Moduli { r1, r2 } = d.moduli();
    let mut value = 0;
    let mut optimized = Vec::new();
    for u in units(r1 as u64) {
        for v in units(r2 as u64) {
            let s = sd_star_at(d, (u, v), cap)?;
            if s > value {
                value = s;
                optimized.clear();
            }
            if s == value {
                optimized.push((u, v));
            }
        }
    }
    Ok(CodeSdStar { value, optimized })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(bits: &[u8]) -> Vec<bool> {
        bits.iter().map(|&b| b != 0).collect()
    }

    #[test]
    fn zero_runs() {
        assert_eq!(zero_run_vector(&v(&[1, 0, 0, 1, 0, 1, 1]), 1).unwrap(), 2);
        assert_eq!(zero_run_vector(&v(&[0, 1, 1, 0]), 3).unwrap(), 2);
        assert_eq!(zero_run_vector(&v(&[0, 1, 1, 0]), 1).unwrap(), 0);
        assert!(zero_run_vector(&v(&[0, 0, 0]), 0).is_err());
        let m = BinaryMatrix::zeros(Moduli::new(2, 3));
        assert_eq!(m.zero_run(Axis::Rows, 0), Err(Error::AllZeroAxis(1)));
    }

    #[test]
    fn vector_sd_star() {
        assert_eq!(sd_star_vector(&[true; 5]), 1);
        assert_eq!(sd_star_vector(&[false; 5]), 0);
        // zeros at {1,2,4} in Z_7
        assert_eq!(sd_star_vector(&v(&[1, 0, 0, 1, 0, 1, 1])), 3);
        // circular run through index 0
        assert_eq!(sd_star_vector(&v(&[0, 1, 1, 0, 0])), 4);
    }

    fn example1_c1() -> OrbitSet {
        let m = Moduli::new(7, 9);
        OrbitSet::closure(m, 4, (0..7).flat_map(|t| [(t, 0), (t, 1)])).unwrap()
    }

    #[test]
    fn example1_reports() {
        let c1 = example1_c1();
        let r = orbit_matrix(&c1).sd_star();
        assert_eq!(
            r.axis(Axis::Rows),
            AxisReport {
                epsilon: 3,
                omega: 0,
                sd: 3
            }
        );
        assert_eq!(
            r.axis(Axis::Columns),
            AxisReport {
                epsilon: 1,
                omega: 2,
                sd: 3
            }
        );
        assert_eq!(r.sd_star, 3);
        assert!(r.shortcut_applicable);

        let c2 = c1
            .union(&OrbitSet::closure(c1.moduli(), 4, [(0, 2), (0, 3), (0, 6)]).unwrap())
            .unwrap();
        let r = orbit_matrix(&c2).sd_star();
        assert_eq!(r.axis(Axis::Rows).sd, 6);
        assert_eq!(r.axis(Axis::Columns).sd, 6);
        assert_eq!(r.sd_star, 6);
        assert!(!r.shortcut_applicable);
        for &(k, b) in &r.involved {
            let h = orbit_matrix(&c2).matrix().hyperplane(k, b);
            assert_eq!((r.axis(k).omega + 1) * sd_star_vector(&h), 6);
        }
    }

    #[test]
    fn sd_value_matches_report() {
        let c1 = example1_c1();
        let m = orbit_matrix(&c1);
        assert_eq!(sd_star_value(c1.moduli(), m.matrix().support()), m.sd_star().sd_star);
    }

    #[test]
    fn msd_of_trivial_matrices() {
        let m = Moduli::new(3, 7);
        let ones = orbit_matrix(&OrbitSet::empty(m, 2).unwrap());
        assert_eq!(msd(&ones, DEFAULT_MSD_CAP).unwrap(), 1);
        assert_eq!(msd_exhaustive(&ones, DEFAULT_MSD_CAP).unwrap(), 1);
        let zero = orbit_matrix(&OrbitSet::full(m, 2).unwrap());
        assert_eq!(zero.sd_star().sd_star, 0);
    }

    #[test]
    fn msd_budget() {
        let m = Moduli::new(7, 9);
        let c1 = example1_c1();
        let c2 = c1
            .union(&OrbitSet::closure(m, 4, [(0, 2), (0, 3), (0, 6)]).unwrap())
            .unwrap();
        let err = msd(&orbit_matrix(&c2), 3).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { cap: 3, .. }));
    }

    #[test]
    fn hamming_code_sd_star() {
        let d = OrbitSet::closure(Moduli::cyclic(7), 2, [(0, 1)]).unwrap();
        let s = sd_star_code(&d, DEFAULT_MSD_CAP).unwrap();
        assert_eq!(s.value, 3);
        assert_eq!(s.optimized.len(), 6);
        assert_eq!(
            sd_star_code(&OrbitSet::full(Moduli::cyclic(7), 2).unwrap(), 22),
            Err(Error::ZeroCode)
        );
    }

    #[test]
    fn orbit_matrix_from_pattern() {
        let m = Moduli::cyclic(7);
        let mut support = vec![true; 7];
        support[1] = false;
        let bm = BinaryMatrix::new(m, support).unwrap();
        assert_eq!(OrbitMatrix::from_matrix(bm, 2), Err(Error::NotOrbitClosed));
    }
}
