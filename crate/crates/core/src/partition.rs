//! Integer partitions, the label type used everywhere else in the crate.
//!
//! Partitions are stored as weakly decreasing vectors of positive parts. The
//! canonical enumeration order is reverse-lexicographic: `(n)` first, `(1^n)`
//! last. Every table or report indexed by partitions uses this order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`partitions_of`] unless a different bound is given.
pub const DEFAULT_MAX_PARTITION_SIZE: usize = 60;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing and strictly positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zero entries; never fails.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`, or the empty partition for `n = 0`.
    pub fn row(n: usize) -> Self {
        Self::from_unsorted(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of (nonzero) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part, counting from zero, or 0 beyond the last part.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Multiplicity of each part value, ascending by value.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &x in &self.parts {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&x| x > j).count())
            .collect();
        Partition { parts }
    }

    /// Dominance order. Fails when the partitions have different sizes.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..len {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when no part value occurs `p` or more times.
    pub fn is_p_regular(&self, p: usize) -> bool {
        self.multiplicities().values().all(|&m| m < p)
    }

    /// Hook length of every cell, keyed by 1-based `(row, column)`.
    pub fn hook_lengths(&self) -> BTreeMap<(usize, usize), usize> {
        let conj = self.conjugate();
        let mut hooks = BTreeMap::new();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.parts[j] - i - 1;
                hooks.insert((i + 1, j + 1), arm + leg + 1);
            }
        }
        hooks
    }

    /// Reverse-lexicographic comparison: `Less` means `self` comes first in
    /// the canonical enumeration order.
    pub fn revlex_cmp(&self, other: &Partition) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

/// Ordered so that sorting yields the reverse-lexicographic enumeration order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.revlex_cmp(other)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let mut first = true;
        for x in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"18,2"`; `"-"` is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let x: usize = tok.parse().map_err(|_| Error::Parse {
                token: tok.to_string(),
                reason: "expected a positive integer".into(),
            })?;
            if x == 0 {
                return Err(Error::Parse {
                    token: tok.to_string(),
                    reason: "parts must be positive".into(),
                });
            }
            if let Some(&prev) = parts.last() {
                if prev < x {
                    return Err(Error::Parse {
                        token: tok.to_string(),
                        reason: format!("parts must be weakly decreasing ({prev} < {x})"),
                    });
                }
            }
            parts.push(x);
        }
        Ok(Partition { parts })
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse-lexicographic order, bounded by
/// [`DEFAULT_MAX_PARTITION_SIZE`].
pub fn partitions_of(n: usize) -> Result<Vec<Partition>> {
    partitions_of_bounded(n, DEFAULT_MAX_PARTITION_SIZE)
}

pub fn partitions_of_bounded(n: usize, max: usize) -> Result<Vec<Partition>> {
    if n > max {
        return Err(Error::LimitExceeded {
            what: "partition size",
            value: n as u64,
            max: max as u64,
        });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fill(n, n, &mut prefix, &mut out);
    Ok(out)
}

fn fill(rest: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    for first in (1..=rest.min(cap)).rev() {
        prefix.push(first);
        fill(rest - first, first, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Independent count via the pentagonal number recurrence.
    fn pentagonal_count(n: usize) -> Vec<u64> {
        let mut c = vec![0i64; n + 1];
        c[0] = 1;
        for m in 1..=n {
            let mut k = 1i64;
            let mut total = 0i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                total += sign * c[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    total += sign * c[m - g2];
                }
                k += 1;
            }
            c[m] = total;
        }
        c.into_iter().map(|x| x as u64).collect()
    }

    #[test]
    fn enumerates_small_cases() {
        assert_eq!(partitions_of(0).unwrap(), vec![Partition::empty()]);
        let four: Vec<String> = partitions_of(4)
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(four, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        assert_eq!(partitions_of(20).unwrap().len(), 627);
    }

    #[test]
    fn counts_match_pentagonal_recurrence() {
        let counts = pentagonal_count(30);
        for (n, &count) in counts.iter().enumerate() {
            let parts = partitions_of(n).unwrap();
            assert_eq!(parts.len() as u64, count, "p({n})");
            assert!(parts
                .windows(2)
                .all(|w| w[0].revlex_cmp(&w[1]) == Ordering::Less));
        }
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(
            partitions_of(61),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[4]).dominates(&p(&[2, 2])).unwrap());
        assert!(p(&[2, 2]).dominates(&p(&[2, 2])).unwrap());
        assert!(p(&[3, 1]).dominates(&p(&[2, 2])).unwrap());
        assert!(!p(&[2, 2]).dominates(&p(&[3, 1])).unwrap());
        assert!(matches!(
            p(&[3]).dominates(&p(&[2, 2])),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn dominance_is_partial_order() {
        for n in 0..=8 {
            let all = partitions_of(n).unwrap();
            for x in &all {
                assert!(x.dominates(x).unwrap());
                for y in &all {
                    let xy = x.dominates(y).unwrap();
                    let yx = y.dominates(x).unwrap();
                    if xy && yx {
                        assert_eq!(x, y);
                    }
                    if !xy {
                        continue;
                    }
                    for z in &all {
                        if y.dominates(z).unwrap() {
                            assert!(x.dominates(z).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
    }

    #[test]
    fn regularity() {
        assert!(p(&[18, 2]).is_p_regular(5));
        assert!(!p(&[1, 1, 1]).is_p_regular(3));
        assert!(p(&[2, 2, 1]).is_p_regular(3));
    }

    #[test]
    fn regular_counts_match_brute_force() {
        // p-regular partitions are equinumerous with partitions having no part
        // divisible by p; count the latter independently.
        for prime in [2, 3, 5] {
            for n in 0..=10 {
                let all = partitions_of(n).unwrap();
                let regular = all.iter().filter(|x| x.is_p_regular(prime)).count();
                let no_div = all
                    .iter()
                    .filter(|x| x.parts().iter().all(|&v| v % prime != 0))
                    .count();
                assert_eq!(regular, no_div, "n={n} p={prime}");
            }
        }
    }

    #[test]
    fn hooks() {
        let h = p(&[1]).hook_lengths();
        assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![((1, 1), 1)]);
        let h = p(&[2, 1]).hook_lengths();
        assert_eq!(h[&(1, 1)], 3);
        assert_eq!(h[&(1, 2)], 1);
        assert_eq!(h[&(2, 1)], 1);
        assert_eq!(h.len(), 3);
        assert!(p(&[3, 2]).hook_lengths().values().all(|&x| x != 5));
    }

    #[test]
    fn parsing() {
        assert_eq!("18,2".parse::<Partition>().unwrap(), p(&[18, 2]));
        assert_eq!("-".parse::<Partition>().unwrap(), Partition::empty());
        let err = "2,3".parse::<Partition>().unwrap_err();
        assert!(matches!(err, Error::Parse { ref token, .. } if token == "3"));
        assert!("2,x".parse::<Partition>().is_err());
        assert_eq!(p(&[18, 2]).to_string(), "18,2");
        assert_eq!(Partition::empty().to_string(), "-");
    }

    #[test]
    fn json_form() {
        let x = p(&[3, 2]);
        assert_eq!(serde_json::to_string(&x).unwrap(), "[3,2]");
        assert_eq!(serde_json::from_str::<Partition>("[3,2]").unwrap(), x);
        assert!(serde_json::from_str::<Partition>("[2,3]").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_partition() -> impl Strategy<Value = Partition> {
            proptest::collection::vec(1usize..12, 0..10).prop_map(Partition::from_unsorted)
        }

        proptest! {
            #[test]
            fn conjugation_is_involutive(x in arb_partition()) {
                prop_assert_eq!(x.conjugate().conjugate(), x.clone());
                prop_assert_eq!(x.conjugate().size(), x.size());
            }

            #[test]
            fn display_parse_roundtrip(x in arb_partition()) {
                prop_assert_eq!(x.to_string().parse::<Partition>().unwrap(), x);
            }
        }
    }
}
