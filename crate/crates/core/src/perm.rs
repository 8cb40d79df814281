//! Concrete permutations and the p-subgroups built from the p-cycles
//! `z_j = (p(j-1)+1, ..., pj)`.
//!
//! Groups are handled extensionally: a [`GroupSpec`] lists generators and
//! [`closure`] expands it into a sorted element set. Permutations act on the
//! right, so `x.then(y)` applies `x` first.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Default cap on `m!` for the brute-force normalizer sweep.
pub const DEFAULT_GROUP_CAP: u64 = 4_000_000;

/// A bijection of `{1..m}`; stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m).collect(),
        }
    }

    /// From 1-based images: `images[i]` is the image of `i + 1`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|x| x - 1).collect(),
        })
    }

    /// From disjoint 1-based cycles.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut touched = vec![false; m];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x == 0 || x > m || y == 0 || y > m || touched[x - 1] {
                    return Err(Error::Invalid(format!("bad cycle {cycle:?} in degree {m}")));
                }
                touched[x - 1] = true;
                images[x - 1] = y - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degrees");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `x^{-1} self x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        x.inverse().then(self).then(x)
    }

    /// Cycles of length at least two, 1-based, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Partition {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x];
            }
            if len > 0 {
                lengths.push(len);
            }
        }
        Partition::from_unsorted(lengths)
    }

    pub fn order(&self) -> usize {
        self.cycle_type()
            .parts()
            .iter()
            .fold(1, |acc, &k| num_integer::lcm(acc, k))
    }

    /// Points moved by the permutation, 1-based.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&i| self.images[i] != i)
            .map(|i| i + 1)
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

pub fn cycle_type(x: &Permutation) -> Partition {
    x.cycle_type()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupTag {
    /// `R_l = <z_1 ... z_l>`
    REll,
    /// `E_s = <pi_1> x ... x <pi_s>`
    Es,
    /// `C = <z_1> x ... x <z_{as}>`
    C,
    Ps,
    Qs,
    Ds,
    Custom,
}

#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub tag: GroupTag,
}

impl GroupSpec {
    pub fn new(degree: usize, generators: Vec<Permutation>, tag: GroupTag) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                got: g.degree(),
            });
        }
        Ok(GroupSpec {
            degree,
            generators,
            tag,
        })
    }
}

/// The p-cycle on `{p(j-1)+1, ..., pj}` inside `S_m`.
pub fn make_z(j: usize, p: usize, m: usize) -> Result<Permutation> {
    if j == 0 || p * j > m {
        return Err(Error::OutOfRange(format!("z_{j} with p = {p} needs degree {}", p * j)));
    }
    let mut images: Vec<usize> = (0..m).collect();
    let lo = p * (j - 1);
    for i in 0..p {
        images[lo + i] = lo + (i + 1) % p;
    }
    Ok(Permutation { images })
}

fn product(m: usize, factors: impl IntoIterator<Item = Permutation>) -> Permutation {
    factors
        .into_iter()
        .fold(Permutation::identity(m), |acc, x| acc.then(&x))
}

/// Cyclic group generated by `z_1 z_2 ... z_l`.
pub fn make_r(l: usize, p: usize, m: usize) -> Result<GroupSpec> {
    if l == 0 || l * p > m {
        return Err(Error::OutOfRange(format!("R_{l} with p = {p} needs degree {}", l * p)));
    }
    let gen = product(m, (1..=l).map(|j| make_z(j, p, m)).collect::<Result<Vec<_>>>()?);
    GroupSpec::new(m, vec![gen], GroupTag::REll)
}

/// `C = <z_1, ..., z_{as}>` in degree `asp`.
pub fn make_c(a: usize, s: usize, p: usize) -> Result<GroupSpec> {
    let m = a * s * p;
    let gens = (1..=a * s).map(|j| make_z(j, p, m)).collect::<Result<_>>()?;
    GroupSpec::new(m, gens, GroupTag::C)
}

/// `pi_j = z_j z_{j+s} ... z_{j+(a-1)s}` in degree `asp`.
pub fn make_pi(j: usize, s: usize, a: usize, p: usize) -> Result<Permutation> {
    if j == 0 || j > s {
        return Err(Error::OutOfRange(format!("pi_{j} needs 1 <= j <= s = {s}")));
    }
    let m = a * s * p;
    let factors = (0..a).map(|k| make_z(j + k * s, p, m)).collect::<Result<Vec<_>>>()?;
    Ok(product(m, factors))
}

pub fn make_e(s: usize, a: usize, p: usize) -> Result<GroupSpec> {
    let gens = (1..=s).map(|j| make_pi(j, s, a, p)).collect::<Result<_>>()?;
    GroupSpec::new(a * s * p, gens, GroupTag::Es)
}

/// Sylow p-subgroup of `S_{sp}` with base group `<z_1, ..., z_s>` and
/// `z_1 ... z_s` central. Blocks of `p` consecutive `z`'s are joined by a
/// level permutation that cycles them, giving `C_p wr C_p` on each full
/// group of `p^2` points.
pub fn make_p(s: usize, p: usize) -> Result<GroupSpec> {
    if s == 0 {
        return Err(Error::OutOfRange("s must be positive".into()));
    }
    if s >= p * p {
        return Err(Error::UnsupportedS { s, p });
    }
    let m = s * p;
    let mut gens: Vec<Permutation> = (1..=s).map(|j| make_z(j, p, m)).collect::<Result<_>>()?;
    for group in 0..s / p {
        let base = group * p * p;
        let mut images: Vec<usize> = (0..m).collect();
        for t in 0..p {
            let next = (t + 1) % p;
            for i in 0..p {
                images[base + t * p + i] = base + next * p + i;
            }
        }
        gens.push(Permutation { images });
    }
    GroupSpec::new(m, gens, GroupTag::Ps)
}

/// `(j + k sp) bar(g) = (j) g + k sp` for `k = 0..a-1`.
pub fn bar_lift(g: &Permutation, a: usize) -> Permutation {
    let width = g.degree();
    let mut images = Vec::with_capacity(a * width);
    for k in 0..a {
        images.extend(g.images.iter().map(|&x| x + k * width));
    }
    Permutation { images }
}

pub fn make_q(s: usize, a: usize, p: usize) -> Result<GroupSpec> {
    let ps = make_p(s, p)?;
    let gens = ps.generators.iter().map(|g| bar_lift(g, a)).collect();
    GroupSpec::new(a * s * p, gens, GroupTag::Qs)
}

/// Largest power of `p` dividing `n!`.
pub fn p_part_of_factorial(n: usize, p: usize) -> u64 {
    let mut e = 0u32;
    let mut q = p;
    while q <= n {
        e += (n / q) as u32;
        q *= p;
    }
    (p as u64).pow(e)
}

/// All elements generated by `g`, by breadth-first multiplication.
pub fn closure(g: &GroupSpec, cap: usize) -> Result<BTreeSet<Permutation>> {
    let identity = Permutation::identity(g.degree);
    let mut seen = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for gen in &g.generators {
            let y = x.then(gen);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded {
                        what: "group closure",
                        required: format!("more than {cap}"),
                        cap: cap as u64,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// `true` when `x` maps the element set `group` onto itself by conjugation;
/// checking generators suffices.
pub fn normalizes(x: &Permutation, generators: &[Permutation], group: &BTreeSet<Permutation>) -> bool {
    generators.iter().all(|g| group.contains(&g.conjugate_by(x)))
}

/// Every `x` in `S_m` with `G^x = G`, sorted by image sequence.
pub fn normalizer_bruteforce(m: usize, g: &GroupSpec, cap: u64) -> Result<BTreeSet<Permutation>> {
    if g.degree != m {
        return Err(Error::DegreeMismatch {
            expected: m,
            got: g.degree,
        });
    }
    let mut total: u64 = 1;
    for k in 1..=m as u64 {
        total = total.saturating_mul(k);
    }
    if total > cap {
        return Err(Error::CapExceeded {
            what: "normalizer sweep over S_m",
            required: crate::characters::factorial(m).to_string(),
            cap,
        });
    }
    let group = closure(g, total as usize)?;
    if m == 0 {
        return Ok(BTreeSet::from([Permutation::identity(0)]));
    }
    let found: Vec<Vec<Permutation>> = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut rest: Vec<usize> = (0..m).filter(|&x| x != first).collect();
            let mut hits = Vec::new();
            loop {
                let mut images = Vec::with_capacity(m);
                images.push(first);
                images.extend_from_slice(&rest);
                let x = Permutation { images };
                if normalizes(&x, &g.generators, &group) {
                    hits.push(x);
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            hits
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn is_p_power(mut k: usize, p: usize) -> bool {
    while k > 1 {
        if !k.is_multiple_of(p) {
            return false;
        }
        k /= p;
    }
    k == 1
}

/// If the p-elements of `group` form a subgroup whose order is the full
/// p-part of `|group|`, that subgroup is the unique Sylow p-subgroup.
pub fn unique_sylow(group: &BTreeSet<Permutation>, p: usize) -> Option<BTreeSet<Permutation>> {
    let elems: BTreeSet<Permutation> = group
        .iter()
        .filter(|x| is_p_power(x.order(), p))
        .cloned()
        .collect();
    let mut order = group.len();
    let mut p_part = 1;
    while order.is_multiple_of(p) {
        order /= p;
        p_part *= p;
    }
    if elems.len() != p_part {
        return None;
    }
    let closed = elems
        .iter()
        .all(|x| elems.iter().all(|y| elems.contains(&x.then(y))));
    closed.then_some(elems)
}

/// `D_s = C ∩ N(Q_s)`, computed by testing each element of `C`.
pub fn make_d(s: usize, a: usize, p: usize, cap: usize) -> Result<BTreeSet<Permutation>> {
    let q = make_q(s, a, p)?;
    let q_elems = closure(&q, cap)?;
    let c = closure(&make_c(a, s, p)?, cap)?;
    Ok(c
        .into_iter()
        .filter(|x| normalizes(x, &q.generators, &q_elems))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(m: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(m, cycles).unwrap()
    }

    #[test]
    fn z_cycles() {
        assert_eq!(make_z(1, 3, 6).unwrap(), cyc(6, &[&[1, 2, 3]]));
        assert_eq!(make_z(2, 3, 6).unwrap(), cyc(6, &[&[4, 5, 6]]));
        assert_eq!(make_z(1, 2, 2).unwrap(), cyc(2, &[&[1, 2]]));
        assert!(matches!(make_z(3, 3, 6), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn r_groups() {
        let r = make_r(2, 3, 6).unwrap();
        assert_eq!(r.generators, vec![cyc(6, &[&[1, 2, 3], &[4, 5, 6]])]);
        assert_eq!(closure(&r, 10).unwrap().len(), 3);
        let r = make_r(1, 3, 3).unwrap();
        assert_eq!(r.generators[0].to_string(), "(1 2 3)");
        let r = make_r(2, 3, 8).unwrap();
        assert_eq!(r.generators[0].to_string(), "(1 2 3)(4 5 6)");
        assert_eq!(r.generators[0].cycle_type().to_string(), "3,3,1,1");
        assert!(make_r(3, 3, 8).is_err());
    }

    #[test]
    fn e_groups() {
        let e = make_e(1, 2, 3).unwrap();
        assert_eq!(e.generators, vec![cyc(6, &[&[1, 2, 3], &[4, 5, 6]])]);
        let e = make_e(2, 2, 3).unwrap();
        assert_eq!(
            e.generators,
            vec![
                cyc(12, &[&[1, 2, 3], &[7, 8, 9]]),
                cyc(12, &[&[4, 5, 6], &[10, 11, 12]])
            ]
        );
        let e = make_e(1, 1, 3).unwrap();
        assert_eq!(e.generators, vec![cyc(3, &[&[1, 2, 3]])]);
        for (s, a, p) in [(1, 2, 3), (2, 2, 3), (1, 3, 5)] {
            let elems = closure(&make_e(s, a, p).unwrap(), 100_000).unwrap();
            assert_eq!(elems.len(), p.pow(s as u32));
            for x in &elems {
                assert!(x.is_identity() || x.order() == p);
                for y in &elems {
                    assert_eq!(x.then(y), y.then(x));
                }
            }
        }
    }

    #[test]
    fn c_groups() {
        assert_eq!(closure(&make_c(2, 1, 3).unwrap(), 100).unwrap().len(), 9);
        for (a, s, p) in [(1, 1, 3), (2, 1, 3), (2, 2, 3), (1, 2, 5), (2, 1, 5), (3, 1, 3), (4, 1, 3), (1, 4, 3), (2, 3, 2)] {
            if a * s * p > 12 {
                continue;
            }
            let n = closure(&make_c(a, s, p).unwrap(), 1_000_000).unwrap().len();
            assert_eq!(n, p.pow((a * s) as u32), "a={a} s={s} p={p}");
        }
    }

    #[test]
    fn q_groups() {
        let q = make_q(1, 2, 3).unwrap();
        assert_eq!(q.generators, vec![cyc(6, &[&[1, 2, 3], &[4, 5, 6]])]);
        assert_eq!(closure(&q, 100).unwrap().len(), 3);
        let q = make_q(1, 3, 2).unwrap();
        assert_eq!(q.generators, vec![cyc(6, &[&[1, 2], &[3, 4], &[5, 6]])]);
        assert!(matches!(make_q(9, 1, 3), Err(Error::UnsupportedS { .. })));

        for (s, a, p) in [(1, 1, 3), (1, 1, 5), (3, 1, 3), (1, 2, 3), (2, 1, 3), (4, 1, 3)] {
            let ps = closure(&make_p(s, p).unwrap(), 1_000_000).unwrap();
            assert_eq!(ps.len() as u64, p_part_of_factorial(s * p, p), "s={s} p={p}");
            let qs = closure(&make_q(s, a, p).unwrap(), 1_000_000).unwrap();
            assert_eq!(qs.len(), ps.len());
            // z_1 ... z_s is central in P_s.
            let central = make_r(s, p, s * p).unwrap().generators.remove(0);
            assert!(ps.iter().all(|x| x.then(&central) == central.then(x)));
        }
    }

    #[test]
    fn subgroup_chain() {
        for (s, a, p) in [(1, 2, 3), (2, 2, 3)] {
            let m = a * s * p;
            let r = closure(&make_r(a * s, p, m).unwrap(), 1_000_000).unwrap();
            let e = closure(&make_e(s, a, p).unwrap(), 1_000_000).unwrap();
            let c = closure(&make_c(a, s, p).unwrap(), 1_000_000).unwrap();
            let q = closure(&make_q(s, a, p).unwrap(), 1_000_000).unwrap();
            assert!(r.is_subset(&e));
            assert!(e.is_subset(&c));
            assert!(r.is_subset(&q));
        }
    }

    #[test]
    fn closure_cap() {
        let c = make_c(2, 1, 3).unwrap();
        assert!(matches!(closure(&c, 5), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn normalizers() {
        let g = GroupSpec::new(3, vec![cyc(3, &[&[1, 2, 3]])], GroupTag::Custom).unwrap();
        assert_eq!(normalizer_bruteforce(3, &g, DEFAULT_GROUP_CAP).unwrap().len(), 6);

        let g = GroupSpec::new(4, vec![cyc(4, &[&[1, 2], &[3, 4]])], GroupTag::Custom).unwrap();
        assert_eq!(normalizer_bruteforce(4, &g, DEFAULT_GROUP_CAP).unwrap().len(), 8);

        let q = make_q(1, 2, 3).unwrap();
        let n = normalizer_bruteforce(6, &q, DEFAULT_GROUP_CAP).unwrap();
        let c = closure(&make_c(2, 1, 3).unwrap(), 100).unwrap();
        assert!(c.is_subset(&n));

        let big = GroupSpec::new(11, vec![Permutation::identity(11)], GroupTag::Custom).unwrap();
        assert!(matches!(
            normalizer_bruteforce(11, &big, DEFAULT_GROUP_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(4).cycle_type().to_string(), "1,1,1,1");
        let x = cyc(6, &[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(x.cycle_type().to_string(), "3,3");
        let x = cyc(8, &[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(cycle_type(&x).to_string(), "3,3,1,1");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn construction_errors() {
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[&[1, 4]]).is_err());
        assert!(GroupSpec::new(3, vec![Permutation::identity(4)], GroupTag::Custom).is_err());
    }
}
