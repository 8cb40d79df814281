//! Ordinary characters of symmetric groups.
//!
//! Values come from the Murnaghan–Nakayama rule worked on beta-numbers: a
//! border strip of length `k` corresponds to moving one bead from position
//! `x` to a free position `x - k`, with sign `(-1)^(beads jumped over)`.
//! Whole tables are cached on disk as JSON.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use dashmap::DashMap;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};

pub const DEFAULT_MAX_TABLE_DEGREE: usize = 24;
pub const CACHE_FORMAT_VERSION: u32 = 1;

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub cycle_type: Partition,
    /// `z_rho = prod_k k^{m_k} m_k!`
    pub centralizer_order: BigUint,
    pub class_size: BigUint,
}

pub fn centralizer_order(rho: &Partition) -> BigUint {
    rho.multiplicities()
        .into_iter()
        .fold(BigUint::one(), |acc, (k, m)| {
            acc * BigUint::from(k).pow(m as u32) * factorial(m)
        })
}

pub fn class_data(rho: &Partition) -> ClassData {
    let z = centralizer_order(rho);
    let class_size = factorial(rho.size()) / &z;
    ClassData {
        cycle_type: rho.clone(),
        centralizer_order: z,
        class_size,
    }
}

/// Memo store for character values keyed on `(lambda, remaining cycle type)`.
/// Concurrent inserts of the same key always carry the same value.
#[derive(Default)]
pub struct CharacterMemo {
    values: DashMap<(Partition, Partition), i64>,
}

impl CharacterMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn character(&self, lambda: &Partition, rho: &Partition) -> Result<i64> {
        if lambda.size() != rho.size() {
            return Err(Error::SizeMismatch {
                left: lambda.size(),
                right: rho.size(),
            });
        }
        Ok(self.eval(lambda, rho.parts()))
    }

    // `cycles` is weakly decreasing; the longest strip is removed first.
    fn eval(&self, lambda: &Partition, cycles: &[usize]) -> i64 {
        let Some((&k, rest)) = cycles.split_first() else {
            return 1;
        };
        if rest.is_empty() {
            // A single cycle of length |lambda|: only hooks survive.
            return hook_sign(lambda);
        }
        let key = (lambda.clone(), Partition::from_unsorted(cycles.to_vec()));
        if let Some(v) = self.values.get(&key) {
            return *v;
        }
        let mut total = 0i64;
        for (smaller, sign) in remove_border_strips(lambda, k) {
            total += sign * self.eval(&smaller, rest);
        }
        self.values.insert(key, total);
        total
    }
}

/// `chi^lambda` on an `n`-cycle: `(-1)^leg` for a hook `(n-r, 1^r)`, else 0.
fn hook_sign(lambda: &Partition) -> i64 {
    if lambda.is_empty() {
        return 1;
    }
    let tail = &lambda.parts()[1..];
    if tail.iter().all(|&x| x == 1) {
        if tail.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

/// Every partition reachable by removing one border strip of length `k`,
/// with the strip's sign.
pub fn remove_border_strips(lambda: &Partition, k: usize) -> Vec<(Partition, i64)> {
    let len = lambda.len();
    let beads: Vec<usize> = (0..len).map(|i| lambda.part(i) + len - 1 - i).collect();
    let mut out = Vec::new();
    for (idx, &x) in beads.iter().enumerate() {
        if x < k {
            continue;
        }
        let target = x - k;
        if beads.contains(&target) {
            continue;
        }
        // beads is decreasing; count beads strictly between target and x.
        let jumped = beads[idx + 1..]
            .iter()
            .take_while(|&&b| b > target)
            .count();
        let mut moved = beads.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts = moved
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (len - 1 - i))
            .collect();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        out.push((Partition::from_unsorted(parts), sign));
    }
    out
}

/// One-off character value with a private memo.
pub fn mn_character(lambda: &Partition, rho: &Partition) -> Result<i64> {
    CharacterMemo::new().character(lambda, rho)
}

/// A class function on `S_n`, keyed by cycle type.
pub type ClassFunction = BTreeMap<Partition, BigRational>;

/// `(1/n!) sum_rho |class(rho)| f(rho) g(rho)`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<BigRational> {
    let Some(first) = f.keys().next() else {
        return Err(Error::DomainMismatch);
    };
    let n = first.size();
    let domain = partitions_of(n)?;
    if f.len() != domain.len()
        || g.len() != domain.len()
        || !domain.iter().all(|rho| f.contains_key(rho) && g.contains_key(rho))
    {
        return Err(Error::DomainMismatch);
    }
    let mut total = BigRational::zero();
    for rho in &domain {
        let size = BigInt::from(class_data(rho).class_size);
        total += BigRational::from_integer(size) * &f[rho] * &g[rho];
    }
    Ok(total / BigRational::from_integer(BigInt::from(factorial(n))))
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `values[row][col] = chi^{partitions[row]}(partitions[col])`
    values: Vec<Vec<i64>>,
    class_sizes: Vec<BigUint>,
}

impl CharacterTable {
    pub fn compute(n: usize, max_degree: usize) -> Result<Self> {
        check_degree(n, max_degree)?;
        let partitions = partitions_of(n)?;
        let memo = CharacterMemo::new();
        let values: Vec<Vec<i64>> = partitions
            .par_iter()
            .map(|lambda| {
                partitions
                    .iter()
                    .map(|rho| memo.eval(lambda, rho.parts()))
                    .collect()
            })
            .collect();
        Self::from_parts(n, partitions, values)
    }

    fn from_parts(n: usize, partitions: Vec<Partition>, values: Vec<Vec<i64>>) -> Result<Self> {
        let identity = partitions.len().saturating_sub(1);
        if let Some(row) = values.iter().find(|row| row[identity] <= 0) {
            return Err(Error::Invalid(format!(
                "non-positive degree {} in character table of S_{n}",
                row[identity]
            )));
        }
        let index = partitions
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        let class_sizes = partitions.iter().map(|r| class_data(r).class_size).collect();
        Ok(CharacterTable {
            n,
            partitions,
            index,
            values,
            class_sizes,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row and column labels, reverse-lexicographic.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn index_of(&self, lambda: &Partition) -> Result<usize> {
        self.index.get(lambda).copied().ok_or(Error::SizeMismatch {
            left: lambda.size(),
            right: self.n,
        })
    }

    pub fn value(&self, lambda: &Partition, rho: &Partition) -> Result<i64> {
        Ok(self.values[self.index_of(lambda)?][self.index_of(rho)?])
    }

    pub fn row(&self, lambda: &Partition) -> Result<&[i64]> {
        Ok(&self.values[self.index_of(lambda)?])
    }

    pub fn degree(&self, lambda: &Partition) -> Result<i64> {
        let row = self.row(lambda)?;
        Ok(row[row.len() - 1])
    }

    pub fn class_sizes(&self) -> &[BigUint] {
        &self.class_sizes
    }

    /// `sum_rho |class(rho)| chi^i(rho) chi^j(rho)`, which is `n!` on the
    /// diagonal and 0 elsewhere.
    pub fn row_pairing(&self, i: usize, j: usize) -> BigInt {
        self.class_sizes
            .iter()
            .zip(self.values[i].iter().zip(&self.values[j]))
            .map(|(c, (&x, &y))| BigInt::from(c.clone()) * BigInt::from(x) * BigInt::from(y))
            .sum()
    }

    /// Checks row orthogonality on the given index pairs; returns the first
    /// failing pair.
    pub fn check_orthogonality(&self, pairs: &[(usize, usize)]) -> std::result::Result<(), (usize, usize)> {
        let order = BigInt::from(factorial(self.n));
        for &(i, j) in pairs {
            let expected = if i == j { order.clone() } else { BigInt::zero() };
            if self.row_pairing(i, j) != expected {
                return Err((i, j));
            }
        }
        Ok(())
    }

    pub fn all_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.partitions.len();
        (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect()
    }

    pub fn to_cache_file(&self) -> CacheFile {
        CacheFile {
            version: CACHE_FORMAT_VERSION,
            n: self.n,
            order: "revlex".into(),
            partitions: self.partitions.clone(),
            values: self.values.clone(),
        }
    }

    pub fn from_cache_file(file: CacheFile) -> std::result::Result<Self, String> {
        if file.version != CACHE_FORMAT_VERSION {
            return Err(format!("unsupported version {}", file.version));
        }
        if file.order != "revlex" {
            return Err(format!("unsupported order {:?}", file.order));
        }
        let expected = partitions_of(file.n).map_err(|e| e.to_string())?;
        if file.partitions != expected {
            return Err("partition labels do not match the revlex enumeration".into());
        }
        let k = expected.len();
        if file.values.len() != k || file.values.iter().any(|r| r.len() != k) {
            return Err(format!("value matrix is not {k}x{k}"));
        }
        Self::from_parts(file.n, file.partitions, file.values).map_err(|e| e.to_string())
    }
}

fn check_degree(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::LimitExceeded {
            what: "character table degree",
            value: n as u64,
            max: max as u64,
        });
    }
    if n == 0 {
        return Err(Error::Invalid("character tables start at n = 1".into()));
    }
    Ok(())
}

/// On-disk layout of a cached character table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: u32,
    pub n: usize,
    pub order: String,
    pub partitions: Vec<Partition>,
    pub values: Vec<Vec<i64>>,
}

/// How [`TableCache::load_or_compute`] obtained a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Loaded,
    Computed,
    /// The cached file was unreadable or inconsistent and was rebuilt.
    Recomputed { reason: String },
    /// No cache directory configured.
    Uncached,
}

/// Directory of `chartab-<n>.json` files. `None` disables persistence.
#[derive(Clone, Debug)]
pub struct TableCache {
    dir: Option<PathBuf>,
    read_only: bool,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache {
            dir: Some(dir.into()),
            read_only: false,
        }
    }

    pub fn read_only(dir: impl Into<PathBuf>) -> Self {
        TableCache {
            dir: Some(dir.into()),
            read_only: true,
        }
    }

    pub fn disabled() -> Self {
        TableCache {
            dir: None,
            read_only: true,
        }
    }

    pub fn path_for(&self, n: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("chartab-{n}.json")))
    }

    /// Reads and validates a cached table.
    pub fn load(&self, n: usize) -> Result<Option<CharacterTable>> {
        let Some(path) = self.path_for(n) else {
            return Ok(None);
        };
        if !path.exists() {
            return Ok(None);
        }
        let bytes = fs::read(&path)?;
        let corrupt = |reason: String| Error::CacheCorrupt {
            path: path.clone(),
            reason,
        };
        let file: CacheFile = serde_json::from_slice(&bytes).map_err(|e| corrupt(e.to_string()))?;
        if file.n != n {
            return Err(corrupt(format!("file holds n = {}", file.n)));
        }
        CharacterTable::from_cache_file(file)
            .map(Some)
            .map_err(corrupt)
    }

    pub fn store(&self, table: &CharacterTable) -> Result<Option<PathBuf>> {
        let Some(path) = self.path_for(table.n()) else {
            return Ok(None);
        };
        if self.read_only {
            return Ok(None);
        }
        write_atomic(&path, &serde_json::to_vec(&table.to_cache_file()).expect("serializable"))?;
        Ok(Some(path))
    }

    pub fn load_or_compute(&self, n: usize, max_degree: usize) -> Result<(CharacterTable, CacheOutcome)> {
        check_degree(n, max_degree)?;
        if self.dir.is_none() {
            return Ok((CharacterTable::compute(n, max_degree)?, CacheOutcome::Uncached));
        }
        let outcome = match self.load(n) {
            Ok(Some(table)) => return Ok((table, CacheOutcome::Loaded)),
            Ok(None) => CacheOutcome::Computed,
            Err(Error::CacheCorrupt { reason, .. }) => CacheOutcome::Recomputed { reason },
            Err(e) => return Err(e),
        };
        let table = CharacterTable::compute(n, max_degree)?;
        self.store(&table)?;
        Ok((table, outcome))
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Character table of `S_n`, loaded from or written to `cache`.
pub fn character_table(n: usize, cache: &TableCache) -> Result<CharacterTable> {
    cache
        .load_or_compute(n, DEFAULT_MAX_TABLE_DEGREE)
        .map(|(table, _)| table)
}
