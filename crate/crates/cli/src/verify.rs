//! Verification suites run by `foulkes verify` and `foulkes chartab check`.

use std::collections::BTreeSet;

use foulkes_core::characters::{factorial, CharacterTable};
use foulkes_core::perm::{closure, make_d, make_q, normalizer_bruteforce, unique_sylow, GroupSpec, GroupTag};
use foulkes_core::plethysm::{orbit_size, FoulkesCharacter};
use foulkes_core::setpart::omega_stream;
use foulkes_core::{Partition, Permutation, Result};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SPOT_PAIRS: usize = 50;

/// A permutation of `1..=size(rho)` whose cycles are consecutive runs of
/// lengths `rho_1, rho_2, ...`.
pub fn standard_permutation(rho: &Partition) -> Result<Permutation> {
    let mut cycles = Vec::new();
    let mut next = 1;
    for &k in rho.parts() {
        cycles.push((next..next + k).collect::<Vec<_>>());
        next += k;
    }
    let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(rho.size(), &refs)
}

/// `count` index pairs `(i, j)` with `i <= j < k`, reproducible from `seed`.
pub fn seeded_pairs(k: usize, count: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let i = rng.gen_range(0..k);
            let j = rng.gen_range(0..k);
            (i.min(j), i.max(j))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterReport {
    pub n: usize,
    pub classes: usize,
    pub pairs_checked: usize,
    pub failed_pair: Option<(String, String)>,
    pub degree_sum_ok: bool,
}

impl CharacterReport {
    pub fn passed(&self) -> bool {
        self.failed_pair.is_none() && self.degree_sum_ok
    }
}

/// Row orthogonality on `pairs` (every pair when `None`) and
/// `sum deg^2 = n!`.
pub fn check_characters(table: &CharacterTable, pairs: Option<Vec<(usize, usize)>>) -> CharacterReport {
    let pairs = pairs.unwrap_or_else(|| table.all_pairs());
    let failed_pair = table.check_orthogonality(&pairs).err().map(|(i, j)| {
        let ps = table.partitions();
        (ps[i].to_string(), ps[j].to_string())
    });
    let degree_sum: BigInt = table
        .values()
        .iter()
        .map(|row| {
            let d = BigInt::from(*row.last().expect("nonempty row"));
            &d * &d
        })
        .sum();
    CharacterReport {
        n: table.n(),
        classes: table.partitions().len(),
        pairs_checked: pairs.len(),
        failed_pair,
        degree_sum_ok: degree_sum == BigInt::from(factorial(table.n())),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizerReport {
    pub a: usize,
    pub s: usize,
    pub p: usize,
    pub normalizer_order: usize,
    pub sylow_order: Option<usize>,
    pub target_order: usize,
    pub passed: bool,
}

/// Brute-forces `N_{S_asp}(Q_s)` and compares its unique Sylow p-subgroup
/// with the group generated by `D_s` and `Q_s`.
pub fn check_normalizer(a: usize, s: usize, p: usize, cap: u64) -> Result<NormalizerReport> {
    let m = a * s * p;
    let q = make_q(s, a, p)?;
    let normalizer = normalizer_bruteforce(m, &q, cap)?;
    let sylow = unique_sylow(&normalizer, p);
    let cap = cap as usize;
    let mut gens: Vec<Permutation> = make_d(s, a, p, cap)?.into_iter().collect();
    gens.extend(q.generators.iter().cloned());
    let target = closure(&GroupSpec::new(m, gens, GroupTag::Custom)?, cap)?;
    Ok(NormalizerReport {
        a,
        s,
        p,
        normalizer_order: normalizer.len(),
        sylow_order: sylow.as_ref().map(BTreeSet::len),
        target_order: target.len(),
        passed: sylow.as_ref() == Some(&target),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleRow {
    pub class: String,
    pub plethysm: String,
    pub enumerated: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub a: usize,
    pub n: usize,
    pub orbit_size: String,
    pub rows: Vec<OracleRow>,
    pub mismatched_classes: Vec<String>,
    pub degree_sum: String,
    pub degree_sum_ok: bool,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatched_classes.is_empty() && self.degree_sum_ok
    }
}

/// Compares plethysm values of `phi` with fixed-point counts over the
/// enumerated set partitions on every class, then checks
/// `sum_mu m_mu deg(chi^mu) = |Omega|`. The multiplicities themselves are
/// rejected by the engine unless they are nonnegative integers.
pub fn check_foulkes_oracle(phi: &FoulkesCharacter, table: &CharacterTable, cap: u64) -> Result<OracleReport> {
    let (a, n) = (phi.a(), phi.n());
    let omegas: Vec<_> = omega_stream(a, n, cap)?.collect();
    let mut rows = Vec::new();
    let mut mismatched_classes = Vec::new();
    for rho in table.partitions() {
        let g = standard_permutation(rho)?;
        let enumerated = BigUint::from(omegas.iter().filter(|w| w.is_fixed_by(&g)).count());
        let plethysm = phi.value(rho)?;
        if plethysm != enumerated {
            mismatched_classes.push(rho.to_string());
        }
        rows.push(OracleRow {
            class: rho.to_string(),
            plethysm: plethysm.to_string(),
            enumerated: enumerated.to_string(),
        });
    }
    let mut degree_sum = BigInt::from(0);
    for (mu, m) in phi.multiplicities(table)? {
        degree_sum += BigInt::from(m) * BigInt::from(table.degree(&mu)?);
    }
    let orbit = orbit_size(a, n);
    Ok(OracleReport {
        a,
        n,
        orbit_size: orbit.to_string(),
        rows,
        mismatched_classes,
        degree_sum_ok: degree_sum == BigInt::from(orbit),
        degree_sum: degree_sum.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use foulkes_core::partition::partitions_of;

    #[test]
    fn standard_permutation_has_requested_type() {
        for n in 1..=7 {
            for rho in partitions_of(n).unwrap() {
                assert_eq!(standard_permutation(&rho).unwrap().cycle_type(), rho);
            }
        }
    }

    #[test]
    fn seeded_pairs_are_reproducible_and_in_range() {
        let a = seeded_pairs(627, 50, 7);
        assert_eq!(a, seeded_pairs(627, 50, 7));
        assert_ne!(a, seeded_pairs(627, 50, 8));
        assert!(a.iter().all(|&(i, j)| i <= j && j < 627));
    }

    #[test]
    fn small_suites_pass() {
        let table = CharacterTable::compute(6, 24).unwrap();
        assert!(check_characters(&table, None).passed());
        let phi = FoulkesCharacter::new(2, 3, 24).unwrap();
        let r = check_foulkes_oracle(&phi, &table, 1000).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.orbit_size, "15");
    }

    #[test]
    fn broken_table_is_caught() {
        let table = CharacterTable::compute(4, 24).unwrap();
        let mut file = table.to_cache_file();
        file.values[1][0] += 1;
        let bad = CharacterTable::from_cache_file(file).unwrap();
        assert!(!check_characters(&bad, None).passed());
    }
}
