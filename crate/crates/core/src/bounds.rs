//! Decomposition-matrix column bounds from the Foulkes character.
//!
//! For a p-core `gamma`, `F(gamma)` is the set of `mu |- an` with p-core
//! `gamma` and `<phi^(a^n), chi^mu> != 0`. When `a < p <= n`, `lambda` is
//! p-regular of weight `w < a` and dominance-maximal in `F(gamma)`, the column
//! of `lambda` is zero outside `F(gamma)` and bounded by the multiplicity
//! inside it. Rows with more than `n` parts are zero as well.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::abacus::{block_label, is_p_core, p_core, BlockLabel};
use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::plethysm::FoulkesCharacter;

/// `F(gamma)` together with the multiplicity of each member.
#[derive(Clone, Debug)]
pub struct FGammaSet {
    pub a: usize,
    pub n: usize,
    pub p: usize,
    pub gamma: Partition,
    pub multiplicities: BTreeMap<Partition, u64>,
}

impl FGammaSet {
    pub fn members(&self) -> impl Iterator<Item = &Partition> {
        self.multiplicities.keys()
    }

    pub fn contains(&self, mu: &Partition) -> bool {
        self.multiplicities.contains_key(mu)
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }
}

/// Foulkes multiplicities for every `mu |- an`, computed once and shared by
/// the operations below.
pub struct FoulkesData<'t> {
    pub a: usize,
    pub n: usize,
    pub table: &'t CharacterTable,
    pub multiplicities: BTreeMap<Partition, u64>,
}

impl<'t> FoulkesData<'t> {
    pub fn new(phi: &FoulkesCharacter, table: &'t CharacterTable) -> Result<Self> {
        Ok(FoulkesData {
            a: phi.a(),
            n: phi.n(),
            table,
            multiplicities: phi.multiplicities(table)?.into_iter().collect(),
        })
    }

    pub fn multiplicity(&self, mu: &Partition) -> Result<u64> {
        self.multiplicities.get(mu).copied().ok_or(Error::SizeMismatch {
            left: mu.size(),
            right: self.a * self.n,
        })
    }
}

pub fn f_gamma(data: &FoulkesData<'_>, p: usize, gamma: &Partition) -> Result<FGammaSet> {
    if !is_p_core(gamma, p) {
        return Err(Error::NotACore(gamma.to_string(), p));
    }
    let multiplicities = data
        .multiplicities
        .iter()
        .filter(|(mu, &m)| m > 0 && p_core(mu, p) == *gamma)
        .map(|(mu, &m)| (mu.clone(), m))
        .collect();
    Ok(FGammaSet {
        a: data.a,
        n: data.n,
        p,
        gamma: gamma.clone(),
        multiplicities,
    })
}

/// Members not strictly dominated by another member, reverse-lex sorted.
pub fn maximal_members(f: &FGammaSet) -> Vec<Partition> {
    f.members()
        .filter(|mu| {
            !f.members()
                .any(|nu| nu != *mu && nu.dominates(mu).unwrap_or(false))
        })
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preconditions {
    pub a_lt_p: bool,
    pub p_le_n: bool,
    pub p_regular: bool,
    pub weight_lt_a: bool,
    pub in_f_gamma: bool,
    pub maximal_in_f_gamma: bool,
}

impl Preconditions {
    pub fn all(&self) -> bool {
        self.failed().is_empty()
    }

    /// Names of the failing checks.
    pub fn failed(&self) -> Vec<&'static str> {
        [
            (self.a_lt_p, "a < p"),
            (self.p_le_n, "p <= n"),
            (self.p_regular, "lambda p-regular"),
            (self.weight_lt_a, "weight < a"),
            (self.in_f_gamma, "lambda in F(gamma)"),
            (self.maximal_in_f_gamma, "lambda maximal in F(gamma)"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    ZeroNotInF,
    ZeroMoreThanNParts,
    Bounded(u64),
    OutsideBlock,
}

impl RowStatus {
    pub fn label(&self) -> &'static str {
        match self {
            RowStatus::ZeroNotInF => "zero:not-in-F",
            RowStatus::ZeroMoreThanNParts => "zero:more-than-n-parts",
            RowStatus::Bounded(_) => "bounded",
            RowStatus::OutsideBlock => "outside-block",
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RowStatus::ZeroNotInF | RowStatus::ZeroMoreThanNParts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub mu: Partition,
    pub status: RowStatus,
    /// `<phi, chi^mu>`, recorded for every row.
    pub multiplicity: u64,
}

#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub a: usize,
    pub n: usize,
    pub p: usize,
    pub lambda: Partition,
    pub block: BlockLabel,
    pub lambda_multiplicity: u64,
    pub preconditions: Preconditions,
    pub rows: Vec<ReportRow>,
    /// Rows with more than `n` parts but a nonzero Foulkes multiplicity.
    /// Always empty when the vanishing result holds.
    pub discrepancies: Vec<Partition>,
}

impl BoundsReport {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut row = json!({
                    "mu": r.mu,
                    "status": r.status.label(),
                    "multiplicity": r.multiplicity,
                });
                if let RowStatus::Bounded(m) = r.status {
                    row["bound"] = json!(m);
                }
                row
            })
            .collect();
        json!({
            "lambda": self.lambda,
            "a": self.a,
            "n": self.n,
            "p": self.p,
            "block": { "core": self.block.core, "weight": self.block.weight },
            "lambda_multiplicity": self.lambda_multiplicity,
            "preconditions": self.preconditions,
            "failed": self.preconditions.failed(),
            "rows": rows,
            "discrepancies": self.discrepancies,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "lambda   {}", self.lambda);
        let _ = writeln!(out, "a n p    {} {} {}", self.a, self.n, self.p);
        let _ = writeln!(out, "block    {}", self.block);
        let _ = writeln!(out, "<phi,chi^lambda> = {}", self.lambda_multiplicity);
        let failed = self.preconditions.failed();
        if failed.is_empty() {
            let _ = writeln!(out, "preconditions: all hold");
        } else {
            let _ = writeln!(out, "preconditions failed: {}", failed.join("; "));
        }
        if !self.rows.is_empty() {
            let width = self.rows.iter().map(|r| r.mu.to_string().len()).max().unwrap_or(2).max(2);
            let _ = writeln!(out, "{:<width$}  {:<24}  mult", "mu", "status");
            for r in &self.rows {
                let status = match r.status {
                    RowStatus::Bounded(m) => format!("bounded <= {m}"),
                    other => other.label().to_string(),
                };
                let _ = writeln!(out, "{:<width$}  {:<24}  {}", r.mu.to_string(), status, r.multiplicity);
            }
        }
        if !self.discrepancies.is_empty() {
            let list: Vec<String> = self.discrepancies.iter().map(|m| m.to_string()).collect();
            let _ = writeln!(out, "DISCREPANCY: nonzero multiplicity with more than n parts: {}", list.join(" "));
        }
        out
    }
}

pub fn ttt1_report(
    data: &FoulkesData<'_>,
    p: usize,
    lambda: &Partition,
    include_outside: bool,
) -> Result<BoundsReport> {
    let (a, n) = (data.a, data.n);
    if lambda.size() != a * n {
        return Err(Error::SizeMismatch {
            left: lambda.size(),
            right: a * n,
        });
    }
    let block = block_label(lambda, p);
    let f = f_gamma(data, p, &block.core)?;
    let in_f = f.contains(lambda);
    let preconditions = Preconditions {
        a_lt_p: a < p,
        p_le_n: p <= n,
        p_regular: lambda.is_p_regular(p),
        weight_lt_a: block.weight < a,
        in_f_gamma: in_f,
        maximal_in_f_gamma: in_f && maximal_members(&f).contains(lambda),
    };

    let mut rows = Vec::new();
    let mut discrepancies = Vec::new();
    if preconditions.all() {
        for mu in data.table.partitions() {
            let multiplicity = data.multiplicity(mu)?;
            let in_block = p_core(mu, p) == block.core;
            if !in_block && !include_outside {
                continue;
            }
            let status = if !in_block {
                RowStatus::OutsideBlock
            } else if mu.len() > n {
                if f.contains(mu) {
                    discrepancies.push(mu.clone());
                }
                RowStatus::ZeroMoreThanNParts
            } else if let Some(&m) = f.multiplicities.get(mu) {
                RowStatus::Bounded(m)
            } else {
                RowStatus::ZeroNotInF
            };
            rows.push(ReportRow {
                mu: mu.clone(),
                status,
                multiplicity,
            });
        }
    }
    Ok(BoundsReport {
        a,
        n,
        p,
        lambda: lambda.clone(),
        lambda_multiplicity: data.multiplicity(lambda)?,
        block,
        preconditions,
        rows,
        discrepancies,
    })
}

/// Rows of the block predicted to be zero, reverse-lex sorted.
pub fn column_zero_predictions(report: &BoundsReport) -> Result<Vec<Partition>> {
    if !report.preconditions.all() {
        return Err(Error::PreconditionsNotMet(report.preconditions.failed().join("; ")));
    }
    let zeros: BTreeSet<Partition> = report
        .rows
        .iter()
        .filter(|r| r.status.is_zero())
        .map(|r| r.mu.clone())
        .collect();
    Ok(zeros.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{remove_border_strips, CharacterTable};
    use crate::plethysm::foulkes_character;
    use crate::setpart::{omega_stream, SetPartition};
    use crate::perm::Permutation;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_f_gamma_matches_fixed_point_count() {
        // Brute-force permutation character on the 3 pairings of {1..4},
        // decomposed against the character table.
        let table = CharacterTable::compute(4, 24).unwrap();
        let pairings: Vec<SetPartition> = omega_stream(2, 2, 100).unwrap().collect();
        let fixed: Vec<i64> = table
            .partitions()
            .iter()
            .map(|rho| {
                let mut images = Vec::new();
                let mut next = 1;
                for &k in rho.parts() {
                    for i in 0..k {
                        images.push(next + (i + 1) % k);
                    }
                    next += k;
                }
                let g = Permutation::from_images(&images).unwrap();
                pairings.iter().filter(|w| w.is_fixed_by(&g)).count() as i64
            })
            .collect();
        let sizes = table.class_sizes();
        let brute: Vec<(Partition, bool)> = table
            .partitions()
            .iter()
            .map(|mu| {
                let row = table.row(mu).unwrap();
                let total: i64 = (0..row.len())
                    .map(|i| sizes[i].to_string().parse::<i64>().unwrap() * fixed[i] * row[i])
                    .sum();
                (mu.clone(), total != 0)
            })
            .collect();

        let phi = foulkes_character(2, 2).unwrap();
        let data = FoulkesData::new(&phi, &table).unwrap();
        let f = f_gamma(&data, 3, &Partition::empty()).unwrap();
        for (mu, nonzero) in brute {
            let expected = nonzero && p_core(&mu, 3).is_empty();
            assert_eq!(f.contains(&mu), expected, "{mu}");
        }
        assert!(matches!(f_gamma(&data, 3, &p(&[3])), Err(Error::NotACore(..))));
    }

    #[test]
    fn maximal_member_basics() {
        let single = FGammaSet {
            a: 2,
            n: 2,
            p: 3,
            gamma: Partition::empty(),
            multiplicities: [(p(&[2, 2]), 1)].into_iter().collect(),
        };
        assert_eq!(maximal_members(&single), vec![p(&[2, 2])]);
        let chain = FGammaSet {
            multiplicities: [(p(&[4]), 1), (p(&[2, 2]), 1), (p(&[3, 1]), 2)].into_iter().collect(),
            ..single
        };
        assert_eq!(maximal_members(&chain), vec![p(&[4])]);
    }

    #[test]
    fn precondition_gate() {
        let table = CharacterTable::compute(6, 24).unwrap();
        let phi = foulkes_character(2, 3).unwrap();
        let data = FoulkesData::new(&phi, &table).unwrap();
        let r = ttt1_report(&data, 5, &p(&[6]), false).unwrap();
        assert!(!r.preconditions.p_le_n);
        assert!(r.preconditions.failed().contains(&"p <= n"));
        assert!(r.rows.is_empty());
        assert!(matches!(column_zero_predictions(&r), Err(Error::PreconditionsNotMet(_))));
        assert!(matches!(ttt1_report(&data, 5, &p(&[5]), false), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn reports_are_consistent_for_every_column() {
        let table = CharacterTable::compute(6, 24).unwrap();
        let phi = foulkes_character(2, 3).unwrap();
        let data = FoulkesData::new(&phi, &table).unwrap();
        for lambda in table.partitions() {
            let r = ttt1_report(&data, 3, lambda, true).unwrap();
            assert!(r.discrepancies.is_empty());
            if !r.preconditions.all() {
                assert!(r.rows.is_empty());
                continue;
            }
            assert_eq!(r.rows.len(), table.partitions().len());
            for row in &r.rows {
                if let RowStatus::Bounded(m) = row.status {
                    assert!(m >= 1);
                }
                if row.mu.len() > 3 && row.status != RowStatus::OutsideBlock {
                    assert_eq!(row.status, RowStatus::ZeroMoreThanNParts);
                }
            }
        }
    }

    #[test]
    fn report_for_18_2_at_p_5() {
        let table = CharacterTable::compute(20, 24).unwrap();
        let phi = foulkes_character(4, 5).unwrap();
        let data = FoulkesData::new(&phi, &table).unwrap();
        let lambda = p(&[18, 2]);
        let r = ttt1_report(&data, 5, &lambda, false).unwrap();
        assert_eq!(r.block.core, p(&[3, 2]));
        assert_eq!(r.block.weight, 3);
        assert_eq!(r.lambda_multiplicity, 1);
        assert!(r.preconditions.all(), "{:?}", r.preconditions);
        let own = r.rows.iter().find(|row| row.mu == lambda).unwrap();
        assert_eq!(own.status, RowStatus::Bounded(1));
        assert!(r.discrepancies.is_empty());

        let zeros = column_zero_predictions(&r).unwrap();
        for row in &r.rows {
            assert_eq!(block_label(&row.mu, 5), r.block);
            if row.mu.len() > 5 {
                assert_eq!(row.status, RowStatus::ZeroMoreThanNParts);
                assert!(zeros.contains(&row.mu));
            }
        }

        // The two-hook extensions of (3,2,1^5) sit in the block with more
        // than 5 parts, so they are predicted zeros.
        let base = p(&[3, 2, 1, 1, 1, 1, 1]);
        let extensions: Vec<&ReportRow> = r
            .rows
            .iter()
            .filter(|row| {
                remove_border_strips(&row.mu, 5)
                    .into_iter()
                    .any(|(once, _)| remove_border_strips(&once, 5).into_iter().any(|(twice, _)| twice == base))
            })
            .collect();
        assert!(!extensions.is_empty());
        for row in extensions {
            assert!(row.mu.len() > 5);
            assert_eq!(row.status, RowStatus::ZeroMoreThanNParts);
            assert_eq!(row.multiplicity, 0);
        }

        let f = f_gamma(&data, 5, &p(&[3, 2])).unwrap();
        for mu in f.members() {
            let label = block_label(mu, 5);
            assert_eq!(label.weight, (20 - 5) / 5);
        }
        assert!(maximal_members(&f).contains(&lambda));
        assert_eq!(f.multiplicities[&lambda], 1);
    }

    #[test]
    fn json_shape() {
        let table = CharacterTable::compute(6, 24).unwrap();
        let phi = foulkes_character(2, 3).unwrap();
        let data = FoulkesData::new(&phi, &table).unwrap();
        let r = ttt1_report(&data, 5, &p(&[6]), false).unwrap();
        let v = r.to_json();
        assert_eq!(v["lambda"], json!([6]));
        assert_eq!(v["p"], json!(5));
        assert!(v["block"]["core"].is_array());
        assert_eq!(v["preconditions"]["p_le_n"], json!(false));
        assert!(v["rows"].as_array().unwrap().is_empty());
        assert!(r.to_text().contains("p <= n"));
    }
}
