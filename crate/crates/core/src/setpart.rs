//! Set partitions of `{1..an}` into `n` blocks of size `a`, and the ones
//! fixed by the p-element `sigma = z_1 z_2 ... z_{as}`.
//!
//! Every set partition is kept in canonical form (blocks ascending, sorted by
//! minimum), so equality and ordering are plain structural comparisons.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{make_r, GroupSpec, Permutation};
use crate::plethysm::orbit_size;

pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalizes. Blocks must be nonempty, of equal size,
    /// disjoint, and cover `{1..m}`.
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        let m: usize = blocks.iter().map(Vec::len).sum();
        let size = blocks.first().map_or(0, Vec::len);
        if blocks.iter().any(|b| b.len() != size || b.is_empty()) {
            return Err(Error::Invalid(format!("blocks {blocks:?} are not all the same size")));
        }
        let mut seen = vec![false; m + 1];
        for &x in blocks.iter().flatten() {
            if x == 0 || x > m || seen[x] {
                return Err(Error::Invalid(format!("blocks {blocks:?} do not partition 1..{m}")));
            }
            seen[x] = true;
        }
        Ok(SetPartition { blocks })
    }

    fn from_canonical(blocks: Vec<Vec<usize>>) -> Self {
        debug_assert!(blocks.windows(2).all(|w| w[0] < w[1]));
        SetPartition { blocks }
    }

    fn canonicalize(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        SetPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    pub fn ground_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index of every point; slot 0 unused.
    fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![usize::MAX; self.ground_size() + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                idx[x] = i;
            }
        }
        idx
    }

    /// `true` when `g` maps every block onto a block.
    pub fn is_fixed_by(&self, g: &Permutation) -> bool {
        if g.degree() != self.ground_size() {
            return false;
        }
        let idx = self.block_index();
        self.blocks.iter().all(|b| {
            let target = idx[g.apply(b[0])];
            b.iter().all(|&x| idx[g.apply(x)] == target)
        })
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("."))
            .collect();
        write!(f, "{}", text.join("|"))
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Parses `"1.4|2.5|3.6"`.
    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split('|')
            .map(|b| {
                b.split('.')
                    .map(|x| {
                        x.trim().parse::<usize>().map_err(|_| Error::Parse {
                            token: x.to_string(),
                            reason: "expected a positive integer".into(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SetPartition::new(blocks)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(d)?;
        SetPartition::new(blocks).map_err(serde::de::Error::custom)
    }
}

fn check_cap(what: &'static str, required: &BigUint, cap: u64) -> Result<()> {
    if *required > BigUint::from(cap) {
        return Err(Error::CapExceeded {
            what,
            required: required.to_string(),
            cap,
        });
    }
    Ok(())
}

/// Lazy enumeration of all set partitions of `{1..an}` into `n` blocks of
/// size `a`, in lexicographic order of canonical forms.
pub struct OmegaStream {
    a: usize,
    n: usize,
    blocks: Vec<Vec<usize>>,
    used: Vec<bool>,
    done: bool,
}

pub fn omega_stream(a: usize, n: usize, cap: u64) -> Result<OmegaStream> {
    if a == 0 {
        return Err(Error::Invalid("block size must be positive".into()));
    }
    check_cap("set partition enumeration", &orbit_size(a, n), cap)?;
    let mut stream = OmegaStream {
        a,
        n,
        blocks: Vec::with_capacity(n),
        used: vec![false; a * n + 1],
        done: false,
    };
    stream.fill_from(0);
    Ok(stream)
}

impl OmegaStream {
    /// Fills blocks `k..n` with their lexicographically first choices.
    fn fill_from(&mut self, k: usize) {
        self.blocks.truncate(k);
        for _ in k..self.n {
            let free: Vec<usize> = (1..=self.a * self.n).filter(|&x| !self.used[x]).take(self.a).collect();
            for &x in &free {
                self.used[x] = true;
            }
            self.blocks.push(free);
        }
    }

    fn advance(&mut self) -> bool {
        for k in (0..self.n).rev() {
            let block = self.blocks.pop().expect("blocks filled");
            for &x in &block {
                self.used[x] = false;
            }
            // The minimum stays; the tail moves to the next combination of the
            // free points above it.
            let min = block[0];
            let free: Vec<usize> = (min + 1..=self.a * self.n).filter(|&x| !self.used[x]).collect();
            let mut pos: Vec<usize> = block[1..]
                .iter()
                .map(|x| free.binary_search(x).expect("tail point is free"))
                .collect();
            if next_combination(&mut pos, free.len()) {
                let mut next = vec![min];
                next.extend(pos.iter().map(|&i| free[i]));
                for &x in &next {
                    self.used[x] = true;
                }
                self.blocks.push(next);
                self.fill_from(k + 1);
                return true;
            }
        }
        false
    }
}

fn next_combination(pos: &mut [usize], n: usize) -> bool {
    let k = pos.len();
    for i in (0..k).rev() {
        if pos[i] < n - k + i {
            pos[i] += 1;
            for j in i + 1..k {
                pos[j] = pos[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Iterator for OmegaStream {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let current = SetPartition::from_canonical(self.blocks.clone());
        if !self.advance() {
            self.done = true;
        }
        Some(current)
    }
}

/// Image of `omega` under `g`, recanonicalized.
pub fn act(omega: &SetPartition, g: &Permutation) -> Result<SetPartition> {
    if g.degree() != omega.ground_size() {
        return Err(Error::DegreeMismatch {
            expected: omega.ground_size(),
            got: g.degree(),
        });
    }
    Ok(SetPartition::canonicalize(
        omega
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| g.apply(x)).collect())
            .collect(),
    ))
}

/// Set partitions in `Omega^(a^n)` fixed by every generator of `g`.
pub fn fixed_filter(a: usize, n: usize, g: &GroupSpec, cap: u64) -> Result<Vec<SetPartition>> {
    if g.degree != a * n {
        return Err(Error::DegreeMismatch {
            expected: a * n,
            got: g.degree,
        });
    }
    Ok(omega_stream(a, n, cap)?
        .filter(|w| g.generators.iter().all(|x| w.is_fixed_by(x)))
        .collect())
}

/// `sigma = z_1 ... z_{as}` in degree `asp`, applied to a 1-based point.
fn sigma_step(x: usize, p: usize) -> usize {
    let orbit = (x - 1) / p;
    let r = (x - 1) % p;
    orbit * p + (r + 1) % p + 1
}

/// Fixed set partitions under `R_as`, built from a type `delta` and one
/// offset per non-anchor incident orbit.
pub fn fixed_constructive(a: usize, s: usize, p: usize, cap: u64) -> Result<Vec<SetPartition>> {
    let per_type = BigUint::from(p).pow(((a - 1) * s) as u32);
    check_cap("constructive fixed set partitions", &(orbit_size(a, s) * &per_type), cap)?;
    let mut out = BTreeSet::new();
    let offsets_len = (a - 1) * s;
    for delta in omega_stream(a, s, cap)? {
        let mut offsets = vec![0usize; offsets_len];
        loop {
            let mut blocks = Vec::with_capacity(s * p);
            for (i, d) in delta.blocks().iter().enumerate() {
                let mut anchor_set = Vec::with_capacity(a);
                anchor_set.push((d[0] - 1) * p + 1);
                for t in 1..a {
                    anchor_set.push((d[t] - 1) * p + 1 + offsets[i * (a - 1) + t - 1]);
                }
                let mut current = anchor_set;
                for _ in 0..p {
                    blocks.push(current.clone());
                    current = current.iter().map(|&x| sigma_step(x, p)).collect();
                }
            }
            out.insert(SetPartition::canonicalize(blocks));
            if !odometer(&mut offsets, p) {
                break;
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// The type `delta` of an `R_as`-fixed set partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeLabel {
    pub delta: SetPartition,
}

fn sigma(a: usize, s: usize, p: usize, degree: usize) -> Result<Permutation> {
    Ok(make_r(a * s, p, degree)?.generators.remove(0))
}

/// Reads the orbit-incidence pattern of each block.
pub fn type_of(omega: &SetPartition, a: usize, s: usize, p: usize) -> Result<TypeLabel> {
    let m = a * s * p;
    if omega.ground_size() != m || omega.block_size() != a {
        return Err(Error::SizeMismatch {
            left: omega.ground_size(),
            right: m,
        });
    }
    if !omega.is_fixed_by(&sigma(a, s, p, m)?) {
        return Err(Error::NotFixed(omega.to_string()));
    }
    let incidences: BTreeSet<Vec<usize>> = omega
        .blocks()
        .iter()
        .map(|b| {
            let mut orbits: Vec<usize> = b.iter().map(|&x| (x - 1) / p + 1).collect();
            orbits.sort_unstable();
            orbits
        })
        .collect();
    let delta = SetPartition::new(incidences.into_iter().collect())
        .map_err(|_| Error::NotFixed(omega.to_string()))?;
    Ok(TypeLabel { delta })
}

/// Splits `omega` into the blocks inside `{1..support}` and the rest,
/// relabelled down by `support`.
pub fn split_support(omega: &SetPartition, support: usize) -> Result<(SetPartition, SetPartition)> {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for b in omega.blocks() {
        let low = b.iter().filter(|&&x| x <= support).count();
        if low == b.len() {
            inside.push(b.clone());
        } else if low == 0 {
            outside.push(b.iter().map(|x| x - support).collect());
        } else {
            return Err(Error::MixedBlock {
                partition: omega.to_string(),
                block: b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("."),
            });
        }
    }
    Ok((SetPartition::canonicalize(inside), SetPartition::canonicalize(outside)))
}

/// `omega = u ∪ v` with `u` on `supp(R_as) = {1..asp}` and `v` on the
/// remaining points, shifted to start at 1.
pub fn factorize(
    omega: &SetPartition,
    a: usize,
    n: usize,
    s: usize,
    p: usize,
) -> Result<(SetPartition, SetPartition)> {
    if s * p > n {
        return Err(Error::OutOfRange(format!("sp = {} exceeds n = {n}", s * p)));
    }
    if omega.ground_size() != a * n {
        return Err(Error::SizeMismatch {
            left: omega.ground_size(),
            right: a * n,
        });
    }
    if !omega.is_fixed_by(&sigma(a, s, p, a * n)?) {
        return Err(Error::NotFixed(omega.to_string()));
    }
    split_support(omega, a * s * p)
}

/// Inverse of [`factorize`].
pub fn recombine(u: &SetPartition, v: &SetPartition) -> SetPartition {
    let shift = u.ground_size();
    let mut blocks = u.blocks().to_vec();
    blocks.extend(v.blocks().iter().map(|b| b.iter().map(|x| x + shift).collect()));
    SetPartition::canonicalize(blocks)
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub a: usize,
    pub s: usize,
    pub p: usize,
    pub n: Option<usize>,
    pub fixed_count: usize,
    pub checks: Vec<Check>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

/// Blocks meet orbits at most once and each block's sigma-orbit has `p`
/// distinct members, all in `omega`.
pub fn structure_holds(omega: &SetPartition, p: usize) -> bool {
    let blocks: BTreeSet<&Vec<usize>> = omega.blocks().iter().collect();
    omega.blocks().iter().all(|b| {
        let orbits: BTreeSet<usize> = b.iter().map(|&x| (x - 1) / p).collect();
        if orbits.len() != b.len() {
            return false;
        }
        let mut images = BTreeSet::new();
        let mut current = b.clone();
        for _ in 0..p {
            current = current.iter().map(|&x| sigma_step(x, p)).collect();
            current.sort_unstable();
            if !blocks.contains(&current) {
                return false;
            }
            images.insert(current.clone());
        }
        images.len() == p
    })
}

/// Runs the fixed-point checks for `R_as` acting on `Omega^(a^{sp})`, and,
/// with `n`, the factorization and vanishing checks on `Omega^(a^n)`.
pub fn verify_lemmas(a: usize, s: usize, p: usize, n: Option<usize>, cap: u64) -> Result<LemmaReport> {
    if a == 0 || s == 0 || p < 2 {
        return Err(Error::Invalid("need a, s >= 1 and p >= 2".into()));
    }
    if a >= p {
        return Err(Error::Invalid(format!("the fixed-point lemmas need a < p, got a = {a}, p = {p}")));
    }
    let m = a * s * p;
    let r_as = make_r(a * s, p, m)?;
    let filtered = fixed_filter(a, s * p, &r_as, cap)?;
    let built = fixed_constructive(a, s, p, cap)?;
    let mut report = LemmaReport {
        a,
        s,
        p,
        n,
        fixed_count: filtered.len(),
        checks: Vec::new(),
    };

    report.push(
        "filter-equals-construction",
        filtered == built,
        format!("{} filtered, {} constructed", filtered.len(), built.len()),
    );

    let types = orbit_size(a, s);
    let per_type = BigUint::from(p).pow(((a - 1) * s) as u32);
    let expected = &types * &per_type;
    report.push(
        "fixed-count",
        BigUint::from(filtered.len()) == expected,
        format!("{} fixed, expected {types} * {per_type} = {expected}", filtered.len()),
    );

    let bad = filtered.iter().filter(|w| !structure_holds(w, p)).count();
    report.push(
        "structure",
        bad == 0,
        format!("{bad} of {} fixed set partitions violate the structure", filtered.len()),
    );

    let mut by_type: BTreeMap<TypeLabel, usize> = BTreeMap::new();
    for w in &filtered {
        *by_type.entry(type_of(w, a, s, p)?).or_insert(0) += 1;
    }
    let uniform = by_type.values().all(|&c| BigUint::from(c) == per_type);
    report.push(
        "per-type-count",
        uniform && BigUint::from(by_type.len()) == types,
        format!(
            "{} types seen (expected {types}); counts {:?}",
            by_type.len(),
            by_type.values().collect::<BTreeSet<_>>()
        ),
    );

    if let Some(n) = n {
        if s * p > n {
            return Err(Error::OutOfRange(format!("sp = {} exceeds n = {n}", s * p)));
        }
        let big = make_r(a * s, p, a * n)?;
        let fixed_big = fixed_filter(a, n, &big, cap)?;
        let mut images = BTreeSet::new();
        let mut roundtrip = true;
        let small: BTreeSet<&SetPartition> = filtered.iter().collect();
        for w in &fixed_big {
            let (u, v) = factorize(w, a, n, s, p)?;
            roundtrip &= small.contains(&u) && recombine(&u, &v) == *w;
            images.insert((u, v));
        }
        let rest = orbit_size(a, n - s * p);
        let product = BigUint::from(filtered.len()) * &rest;
        report.push(
            "factorization",
            roundtrip
                && images.len() == fixed_big.len()
                && BigUint::from(fixed_big.len()) == product,
            format!(
                "{} fixed in Omega^({a}^{n}), {} distinct images, expected {} * {rest} = {product}",
                fixed_big.len(),
                images.len(),
                filtered.len()
            ),
        );

        let mut nonzero = Vec::new();
        let mut tested = Vec::new();
        for l in (1..).take_while(|l| l * p <= a * n) {
            if l % a == 0 {
                continue;
            }
            tested.push(l);
            let count = fixed_filter(a, n, &make_r(l, p, a * n)?, cap)?.len();
            if count != 0 {
                nonzero.push((l, count));
            }
        }
        report.push(
            "vanishing",
            nonzero.is_empty(),
            format!("l in {tested:?} checked; nonzero: {nonzero:?}"),
        );
    }
    Ok(report)
}

/// `|Omega^(a^n)|` as a machine integer when it fits.
pub fn omega_count(a: usize, n: usize) -> Option<u64> {
    orbit_size(a, n).to_u64()
}
