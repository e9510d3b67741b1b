//! Index combinatorics on I = Z_r1 x Z_r2: multiplicative orders,
//! q-cyclotomic cosets, bivariate q-orbits and unit multipliers.

use std::fmt;
use std::str::FromStr;

use crate::arith::{gcd, mod_inverse, mod_mul};
use crate::field::parse_int;
use crate::{Error, Result};

/// A point of I, stored with canonical representatives.
pub type IndexPair = (usize, usize);

/// The pair of moduli `(r1, r2)`. A modulus of 1 is the one-point ring {0},
/// so cyclic data is the bivariate case with `r1 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Moduli {
    pub r1: usize,
    pub r2: usize,
}

impl Moduli {
    pub fn new(r1: usize, r2: usize) -> Moduli {
        assert!(r1 >= 1 && r2 >= 1, "moduli must be positive");
        Moduli { r1, r2 }
    }

    pub fn cyclic(r: usize) -> Moduli {
        Moduli::new(1, r)
    }

    /// |I| = r1 * r2.
    pub fn size(&self) -> usize {
        self.r1 * self.r2
    }

    pub fn get(&self, axis: usize) -> usize {
        if axis == 1 {
            self.r1
        } else {
            self.r2
        }
    }

    /// Row-major position of `(a, b)`.
    pub fn index(&self, (a, b): IndexPair) -> usize {
        a * self.r2 + b
    }

    pub fn pair(&self, idx: usize) -> IndexPair {
        (idx / self.r2, idx % self.r2)
    }

    pub fn check(&self, (a, b): IndexPair) -> Result<()> {
        if a < self.r1 && b < self.r2 {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                a,
                b,
                r1: self.r1,
                r2: self.r2,
            })
        }
    }

    pub fn points(&self) -> impl Iterator<Item = IndexPair> + '_ {
        (0..self.size()).map(|i| self.pair(i))
    }

    fn semisimple(&self, q: u64) -> Result<()> {
        for r in [self.r1, self.r2] {
            if gcd(q, r as u64) != 1 {
                return Err(Error::NotCoprime { a: q, b: r as u64 });
            }
        }
        Ok(())
    }

    /// `(q a mod r1, q b mod r2)`.
    fn scale(&self, q: u64, (a, b): IndexPair) -> IndexPair {
        (
            mod_mul(q, a as u64, self.r1 as u64) as usize,
            mod_mul(q, b as u64, self.r2 as u64) as usize,
        )
    }
}

/// Least `t >= 1` with `q^t = 1 (mod r)`.
pub fn multiplicative_order(q: u64, r: u64) -> Result<u64> {
    if r == 0 || gcd(q, r) != 1 {
        return Err(Error::NotCoprime { a: q, b: r });
    }
    if r == 1 {
        return Ok(1);
    }
    let base = q % r;
    let mut x = base;
    let mut t = 1;
    while x != 1 {
        x = mod_mul(x, base, r);
        t += 1;
    }
    Ok(t)
}

/// The q-cyclotomic coset of `a` modulo `r`, sorted.
pub fn cyclotomic_coset(a: u64, r: u64, q: u64) -> Result<Vec<u64>> {
    if r == 0 || gcd(q, r) != 1 {
        return Err(Error::NotCoprime { a: q, b: r });
    }
    let start = a % r;
    let mut out = vec![start];
    let mut x = mod_mul(start, q, r);
    while x != start {
        out.push(x);
        x = mod_mul(x, q, r);
    }
    out.sort_unstable();
    Ok(out)
}

/// Units modulo `r`, ascending. Modulus 1 yields `[0]`, so `phi(1) = 1`.
pub fn units(r: u64) -> Vec<u64> {
    if r == 1 {
        return vec![0];
    }
    (1..r).filter(|&u| gcd(u, r) == 1).collect()
}

fn orbit_points(moduli: Moduli, q: u64, start: IndexPair) -> Vec<IndexPair> {
    let mut out = vec![start];
    let mut x = moduli.scale(q, start);
    while x != start {
        out.push(x);
        x = moduli.scale(q, x);
    }
    out
}

/// A subset of I closed under `(a, b) -> (q a, q b)`, kept both as a dense
/// membership mask and as the sorted list of lexicographically least orbit
/// representatives.
#[derive(Clone, PartialEq, Eq)]
pub struct OrbitSet {
    q: u64,
    moduli: Moduli,
    members: Vec<bool>,
    reps: Vec<IndexPair>,
    len: usize,
}

impl OrbitSet {
    pub fn empty(moduli: Moduli, q: u64) -> Result<OrbitSet> {
        moduli.semisimple(q)?;
        Ok(OrbitSet {
            q,
            moduli,
            members: vec![false; moduli.size()],
            reps: Vec::new(),
            len: 0,
        })
    }

    /// All of I.
    pub fn full(moduli: Moduli, q: u64) -> Result<OrbitSet> {
        OrbitSet::closure(moduli, q, moduli.points())
    }

    /// The q-orbit Q(i) of a single point.
    pub fn q_orbit(moduli: Moduli, q: u64, point: IndexPair) -> Result<OrbitSet> {
        OrbitSet::closure(moduli, q, [point])
    }

    /// Least orbit-closed superset of `points`.
    pub fn closure<I: IntoIterator<Item = IndexPair>>(moduli: Moduli, q: u64, points: I) -> Result<OrbitSet> {
        let mut set = OrbitSet::empty(moduli, q)?;
        for pt in points {
            moduli.check(pt)?;
            set.insert_orbit(pt);
        }
        set.reps.sort_unstable();
        Ok(set)
    }

    /// Accepts a membership mask only if it is already orbit-closed.
    pub fn from_members(moduli: Moduli, q: u64, members: Vec<bool>) -> Result<OrbitSet> {
        if members.len() != moduli.size() {
            return Err(Error::LengthMismatch {
                expected: moduli.size(),
                actual: members.len(),
            });
        }
        let closed = moduli
            .points()
            .filter(|&pt| members[moduli.index(pt)])
            .all(|pt| members[moduli.index(moduli.scale(q, pt))]);
        if !closed {
            return Err(Error::NotOrbitClosed);
        }
        let pts: Vec<IndexPair> = moduli.points().filter(|&pt| members[moduli.index(pt)]).collect();
        OrbitSet::closure(moduli, q, pts)
    }

    /// Strict constructor used by file readers: every entry must be the
    /// least point of its orbit, listed in ascending order without repeats.
    pub fn from_reps(moduli: Moduli, q: u64, reps: &[IndexPair]) -> Result<OrbitSet> {
        let set = OrbitSet::closure(moduli, q, reps.iter().copied())?;
        if set.reps != reps {
            return Err(Error::Parse(
                "representatives must be orbit-minimal and sorted lexicographically".into(),
            ));
        }
        Ok(set)
    }

    fn insert_orbit(&mut self, pt: IndexPair) {
        if self.members[self.moduli.index(pt)] {
            return;
        }
        let orbit = orbit_points(self.moduli, self.q, pt);
        for &x in &orbit {
            self.members[self.moduli.index(x)] = true;
        }
        self.len += orbit.len();
        self.reps.push(*orbit.iter().min().expect("orbit is nonempty"));
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn moduli(&self) -> Moduli {
        self.moduli
    }

    pub fn contains(&self, pt: IndexPair) -> bool {
        pt.0 < self.moduli.r1 && pt.1 < self.moduli.r2 && self.members[self.moduli.index(pt)]
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self) -> bool {
        self.len == self.moduli.size()
    }

    pub fn reps(&self) -> &[IndexPair] {
        &self.reps
    }

    pub fn iter(&self) -> impl Iterator<Item = IndexPair> + '_ {
        self.moduli
            .points()
            .filter(move |&pt| self.members[self.moduli.index(pt)])
    }

    pub fn union(&self, other: &OrbitSet) -> Result<OrbitSet> {
        if self.moduli != other.moduli || self.q != other.q {
            return Err(Error::FieldMismatch);
        }
        OrbitSet::closure(self.moduli, self.q, self.iter().chain(other.iter()))
    }

    pub fn is_subset(&self, other: &OrbitSet) -> bool {
        self.moduli == other.moduli && self.iter().all(|pt| other.contains(pt))
    }

    /// I \ D, which is orbit-closed whenever D is.
    pub fn complement(&self) -> OrbitSet {
        let pts: Vec<IndexPair> = self.moduli.points().filter(|&pt| !self.contains(pt)).collect();
        OrbitSet::closure(self.moduli, self.q, pts).expect("moduli already validated")
    }

    /// `{(u a mod r1, v b mod r2) : (a, b) in D}`.
    pub fn apply_multiplier(&self, u: u64, v: u64) -> Result<OrbitSet> {
        let (r1, r2) = (self.moduli.r1 as u64, self.moduli.r2 as u64);
        for (x, r) in [(u, r1), (v, r2)] {
            if mod_inverse(x, r).is_none() {
                return Err(Error::NotAUnit { value: x, modulus: r });
            }
        }
        let pts: Vec<IndexPair> = self
            .iter()
            .map(|(a, b)| (mod_mul(u, a as u64, r1) as usize, mod_mul(v, b as u64, r2) as usize))
            .collect();
        OrbitSet::closure(self.moduli, self.q, pts)
    }

    /// Membership depends only on the column index,
    /// i.e. `(i, j) in D` iff `(x, j) in D` for every `x`.
    pub fn is_column_constant(&self) -> bool {
        (0..self.moduli.r2).all(|j| {
            let first = self.contains((0, j));
            (1..self.moduli.r1).all(|i| self.contains((i, j)) == first)
        })
    }

    /// Columns `j` with `Z_r1 x {j}` inside D.
    pub fn full_columns(&self) -> Vec<usize> {
        (0..self.moduli.r2)
            .filter(|&j| (0..self.moduli.r1).all(|i| self.contains((i, j))))
            .collect()
    }

    /// Text record `q=<q> r=[r1,r2] reps=[[a,b],...]`.
    pub fn record(&self) -> String {
        format!(
            "q={} r=[{},{}] reps={}",
            self.q,
            self.moduli.r1,
            self.moduli.r2,
            format_pairs(&self.reps)
        )
    }
}

pub(crate) fn format_pairs(pairs: &[IndexPair]) -> String {
    let inner: Vec<String> = pairs.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
    format!("[{}]", inner.join(","))
}

pub(crate) fn parse_pairs(s: &str) -> Result<Vec<IndexPair>> {
    let raw: Vec<[usize; 2]> = serde_json::from_str(s.trim()).map_err(|e| Error::Parse(format!("pair list: {e}")))?;
    Ok(raw.into_iter().map(|[a, b]| (a, b)).collect())
}

pub(crate) fn parse_int_list(s: &str) -> Result<Vec<u64>> {
    serde_json::from_str(s.trim()).map_err(|e| Error::Parse(format!("integer list: {e}")))
}

impl fmt::Debug for OrbitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.record())
    }
}

impl fmt::Display for OrbitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.record())
    }
}

impl FromStr for OrbitSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<OrbitSet> {
        let mut q = None;
        let mut r = None;
        let mut reps = None;
        for tok in s.split_whitespace() {
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad token `{tok}`")))?;
            match key {
                "q" => q = Some(parse_int::<u64>(value)?),
                "r" => r = Some(parse_int_list(value)?),
                "reps" => reps = Some(parse_pairs(value)?),
                _ => return Err(Error::Parse(format!("unknown key `{key}`"))),
            }
        }
        let q = q.ok_or_else(|| Error::Parse("missing q".into()))?;
        let r = r.ok_or_else(|| Error::Parse("missing r".into()))?;
        if r.len() != 2 || r.contains(&0) {
            return Err(Error::Parse("r must be [r1,r2] with positive entries".into()));
        }
        let reps = reps.ok_or_else(|| Error::Parse("missing reps".into()))?;
        OrbitSet::from_reps(Moduli::new(r[0] as usize, r[1] as usize), q, &reps)
    }
}

/// The partition of I into q-orbits, ordered by representative.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    moduli: Moduli,
    orbits: Vec<Vec<IndexPair>>,
    orbit_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn new(moduli: Moduli, q: u64) -> Result<OrbitPartition> {
        moduli.semisimple(q)?;
        let mut orbit_of = vec![usize::MAX; moduli.size()];
        let mut orbits = Vec::new();
        // points are visited in lexicographic order, so the first point of
        // each new orbit is its representative
        for pt in moduli.points() {
            if orbit_of[moduli.index(pt)] != usize::MAX {
                continue;
            }
            let orbit = orbit_points(moduli, q, pt);
            for &x in &orbit {
                orbit_of[moduli.index(x)] = orbits.len();
            }
            orbits.push(orbit);
        }
        Ok(OrbitPartition {
            moduli,
            orbits,
            orbit_of,
        })
    }

    pub fn moduli(&self) -> Moduli {
        self.moduli
    }

    pub fn orbits(&self) -> &[Vec<IndexPair>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbit_of(&self, pt: IndexPair) -> usize {
        self.orbit_of[self.moduli.index(pt)]
    }

    pub fn rep(&self, k: usize) -> IndexPair {
        self.orbits[k][0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(5, 1).unwrap(), 1);
        assert_eq!(multiplicative_order(2, 55).unwrap(), 20);
        assert_eq!(multiplicative_order(4, 9).unwrap(), 3);
        assert_eq!(multiplicative_order(256, 5).unwrap(), 1);
        assert!(matches!(multiplicative_order(2, 4), Err(Error::NotCoprime { .. })));
    }

    fn doubling_coset(a: u64, r: u64) -> Vec<u64> {
        let mut seen = std::collections::BTreeSet::new();
        let mut x = a % r;
        while seen.insert(x) {
            x = (2 * x) % r;
        }
        seen.into_iter().collect()
    }

    #[test]
    fn cosets_mod_55() {
        let c1 = cyclotomic_coset(1, 55, 2).unwrap();
        assert_eq!(
            c1,
            vec![1, 2, 4, 7, 8, 9, 13, 14, 16, 17, 18, 26, 28, 31, 32, 34, 36, 43, 49, 52]
        );
        assert_eq!(c1, doubling_coset(1, 55));
        assert_eq!(c1.len() as u64, multiplicative_order(2, 55).unwrap());
        assert_eq!(
            cyclotomic_coset(5, 55, 2).unwrap(),
            vec![5, 10, 15, 20, 25, 30, 35, 40, 45, 50]
        );
        assert_eq!(cyclotomic_coset(0, 55, 2).unwrap(), vec![0]);
    }

    #[test]
    fn bivariate_orbits() {
        let m = Moduli::new(7, 9);
        let o = OrbitSet::q_orbit(m, 4, (1, 0)).unwrap();
        assert_eq!(o.iter().collect::<Vec<_>>(), vec![(1, 0), (2, 0), (4, 0)]);
        let o = OrbitSet::q_orbit(m, 4, (0, 1)).unwrap();
        assert_eq!(o.iter().collect::<Vec<_>>(), vec![(0, 1), (0, 4), (0, 7)]);
        assert_eq!(OrbitSet::q_orbit(m, 4, (0, 0)).unwrap().len(), 1);
    }

    #[test]
    fn closure_of_two_columns() {
        let m = Moduli::new(7, 9);
        let pts: Vec<IndexPair> = (0..7).flat_map(|t| [(t, 0), (t, 1)]).collect();
        let d = OrbitSet::closure(m, 4, pts).unwrap();
        assert_eq!(d.len(), 28);
        assert_eq!(d.full_columns(), vec![0, 1, 4, 7]);
        assert!(d.is_column_constant());
        let again = OrbitSet::closure(m, 4, d.iter()).unwrap();
        assert_eq!(again, d);
        assert!(OrbitSet::closure(m, 4, []).unwrap().is_empty());
    }

    #[test]
    fn multiplier_action() {
        let m = Moduli::new(1, 7);
        let d = OrbitSet::closure(m, 2, [(0, 1)]).unwrap();
        let img = d.apply_multiplier(0, 3).unwrap();
        assert_eq!(img.iter().collect::<Vec<_>>(), vec![(0, 3), (0, 5), (0, 6)]);
        assert_eq!(img.apply_multiplier(0, 5).unwrap(), d);
        assert_eq!(d.apply_multiplier(0, 1).unwrap(), d);
        assert!(matches!(d.apply_multiplier(0, 7), Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn unit_lists() {
        assert_eq!(units(1), vec![0]);
        assert_eq!(units(7), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(units(9), vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(units(55).len(), 40);
    }

    #[test]
    fn partition_of_3_by_7() {
        let p = OrbitPartition::new(Moduli::new(3, 7), 2).unwrap();
        let sizes: Vec<usize> = p.orbits().iter().map(Vec::len).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 21);
        assert_eq!(p.len(), 6);
        assert_eq!(p.rep(0), (0, 0));
    }

    #[test]
    fn strict_reps() {
        let m = Moduli::new(3, 55);
        let d = OrbitSet::closure(m, 2, [(0, 1), (0, 5), (1, 1)]).unwrap();
        let parsed: OrbitSet = d.record().parse().unwrap();
        assert_eq!(parsed, d);
        // (0,2) lies in the orbit of (0,1)
        assert!(OrbitSet::from_reps(m, 2, &[(0, 2)]).is_err());
        // unsorted
        assert!(OrbitSet::from_reps(m, 2, &[(0, 5), (0, 1)]).is_err());
    }

    #[test]
    fn from_members_rejects_open_sets() {
        let m = Moduli::new(1, 7);
        let mut mask = vec![false; 7];
        mask[1] = true;
        assert_eq!(OrbitSet::from_members(m, 2, mask), Err(Error::NotOrbitClosed));
    }
}
