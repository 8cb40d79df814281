//! Symmetric functions in the power-sum basis and the Foulkes character
//! `h_n[h_a]`.
//!
//! A power-sum monomial `p_rho` is stored by its partition `rho`; products are
//! multiset unions of parts, and `p_k[p_rho] = p_{k rho}`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::characters::{centralizer_order, factorial, CharacterTable};
use crate::error::{Error, Result};
use crate::partition::{partitions_of_bounded, Partition};

/// Largest `a * n` for which a Foulkes character is built by default.
pub const DEFAULT_MAX_FOULKES_DEGREE: usize = 24;

/// Homogeneous symmetric function `sum_rho c_rho p_rho` with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumPolynomial {
    degree: usize,
    coeffs: BTreeMap<Partition, BigRational>,
}

impl PowerSumPolynomial {
    pub fn zero(degree: usize) -> Self {
        PowerSumPolynomial {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant `1 = p_()`.
    pub fn one() -> Self {
        Self::monomial(Partition::empty(), BigRational::one())
    }

    pub fn monomial(rho: Partition, c: BigRational) -> Self {
        let mut out = Self::zero(rho.size());
        out.add_term(rho, c);
        out
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Partition, BigRational)>) -> Result<Self> {
        let mut out = Self::zero(degree);
        for (rho, c) in terms {
            if rho.size() != degree {
                return Err(Error::SizeMismatch {
                    left: rho.size(),
                    right: degree,
                });
            }
            out.add_term(rho, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, rho: Partition, c: BigRational) {
        debug_assert_eq!(rho.size(), self.degree);
        match self.coeffs.entry(rho) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &BTreeMap<Partition, BigRational> {
        &self.coeffs
    }

    pub fn coefficient(&self, rho: &Partition) -> BigRational {
        self.coeffs.get(rho).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        PowerSumPolynomial {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// `p_k[self]`: every part `j` of every key becomes `j k`.
    pub fn power_plethysm(&self, k: usize) -> Self {
        PowerSumPolynomial {
            degree: self.degree * k,
            coeffs: self
                .coeffs
                .iter()
                .map(|(rho, c)| {
                    let parts = rho.parts().iter().map(|&j| j * k).collect();
                    (Partition::from_unsorted(parts), c.clone())
                })
                .collect(),
        }
    }

    /// Pairing with a character of `S_degree`: `sum_rho c_rho chi(rho)`.
    /// For a Schur function this extracts the coefficient of `s_lambda`.
    pub fn pair_with_character(&self, chi: impl Fn(&Partition) -> Result<i64>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (rho, c) in &self.coeffs {
            total += c * BigRational::from_integer(BigInt::from(chi(rho)?));
        }
        Ok(total)
    }
}

impl Add for &PowerSumPolynomial {
    type Output = PowerSumPolynomial;

    fn add(self, rhs: &PowerSumPolynomial) -> PowerSumPolynomial {
        assert_eq!(self.degree, rhs.degree, "adding symmetric functions of different degrees");
        let mut out = self.clone();
        for (k, v) in &rhs.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Mul for &PowerSumPolynomial {
    type Output = PowerSumPolynomial;

    fn mul(self, rhs: &PowerSumPolynomial) -> PowerSumPolynomial {
        let mut out = PowerSumPolynomial::zero(self.degree + rhs.degree);
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                let mut parts = a.parts().to_vec();
                parts.extend_from_slice(b.parts());
                out.add_term(Partition::from_unsorted(parts), x * y);
            }
        }
        out
    }
}

fn inverse_z(rho: &Partition) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(centralizer_order(rho)))
}

/// `h_m = sum_{rho |- m} p_rho / z_rho`.
pub fn h_in_p(m: usize, max: usize) -> Result<PowerSumPolynomial> {
    let terms = partitions_of_bounded(m, max)?
        .into_iter()
        .map(|rho| {
            let c = inverse_z(&rho);
            (rho, c)
        });
    PowerSumPolynomial::from_terms(m, terms)
}

/// `h_n[g] = sum_{rho |- n} (1/z_rho) prod_i p_{rho_i}[g]`.
pub fn plethysm_h(n: usize, g: &PowerSumPolynomial) -> Result<PowerSumPolynomial> {
    if g.is_zero() {
        return Err(Error::Invalid("plethysm with the zero symmetric function".into()));
    }
    let mut powers: BTreeMap<usize, PowerSumPolynomial> = BTreeMap::new();
    let mut out = PowerSumPolynomial::zero(n * g.degree());
    for rho in partitions_of_bounded(n, usize::MAX)? {
        let mut term = PowerSumPolynomial::one();
        for &k in rho.parts() {
            let pk = powers.entry(k).or_insert_with(|| g.power_plethysm(k));
            term = &term * pk;
        }
        out = &out + &term.scale(&inverse_z(&rho));
    }
    Ok(out)
}

/// `(an)! / (a!^n n!)`, the number of set partitions of `{1..an}` into `n`
/// blocks of size `a`.
pub fn orbit_size(a: usize, n: usize) -> BigUint {
    factorial(a * n) / (factorial(a).pow(n as u32) * factorial(n))
}

/// The permutation character of `S_an` on set partitions into `n` blocks of
/// size `a`, held as its Frobenius image `h_n[h_a]`.
#[derive(Clone, Debug)]
pub struct FoulkesCharacter {
    a: usize,
    n: usize,
    symfunc: PowerSumPolynomial,
}

impl FoulkesCharacter {
    pub fn new(a: usize, n: usize, max_degree: usize) -> Result<Self> {
        if a == 0 || n == 0 {
            return Err(Error::Invalid("a and n must be positive".into()));
        }
        if a * n > max_degree {
            return Err(Error::LimitExceeded {
                what: "Foulkes degree a*n",
                value: (a * n) as u64,
                max: max_degree as u64,
            });
        }
        let symfunc = plethysm_h(n, &h_in_p(a, max_degree)?)?;
        let phi = FoulkesCharacter { a, n, symfunc };
        for rho in phi.symfunc.coefficients().keys() {
            let v = phi.value_rational(rho);
            if !v.is_integer() || v.is_negative() {
                return Err(Error::Invalid(format!(
                    "Foulkes character value {v} at {rho} is not a nonnegative integer"
                )));
            }
        }
        let identity = phi.value(&Partition::column(a * n))?;
        if identity != orbit_size(a, n) {
            return Err(Error::Invalid(format!(
                "Foulkes character degree {identity} differs from the orbit size"
            )));
        }
        Ok(phi)
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.a * self.n
    }

    pub fn symfunc(&self) -> &PowerSumPolynomial {
        &self.symfunc
    }

    fn value_rational(&self, rho: &Partition) -> BigRational {
        self.symfunc.coefficient(rho) * BigRational::from_integer(BigInt::from(centralizer_order(rho)))
    }

    fn check_size(&self, x: &Partition) -> Result<()> {
        if x.size() != self.degree() {
            return Err(Error::SizeMismatch {
                left: x.size(),
                right: self.degree(),
            });
        }
        Ok(())
    }

    /// `z_rho c_rho`: the number of set partitions fixed by a permutation of
    /// cycle type `rho`.
    pub fn value(&self, rho: &Partition) -> Result<BigUint> {
        self.check_size(rho)?;
        let v = self.value_rational(rho);
        Ok(v.to_integer().to_biguint().expect("checked nonnegative at construction"))
    }

    /// `<phi, chi^mu>` read off a character table of `S_an`.
    pub fn multiplicity(&self, table: &CharacterTable, mu: &Partition) -> Result<u64> {
        self.check_size(mu)?;
        if table.n() != self.degree() {
            return Err(Error::SizeMismatch {
                left: table.n(),
                right: self.degree(),
            });
        }
        let row = table.row(mu)?;
        let m = self
            .symfunc
            .pair_with_character(|rho| Ok(row[table.index_of(rho)?]))?;
        if !m.is_integer() || m.is_negative() {
            return Err(Error::Invalid(format!(
                "multiplicity of chi^{mu} came out as {m}"
            )));
        }
        m.to_integer()
            .to_u64()
            .ok_or_else(|| Error::Invalid(format!("multiplicity {m} overflows u64")))
    }

    /// Multiplicities of every `chi^mu`, in the table's row order.
    pub fn multiplicities(&self, table: &CharacterTable) -> Result<Vec<(Partition, u64)>> {
        table
            .partitions()
            .par_iter()
            .map(|mu| Ok((mu.clone(), self.multiplicity(table, mu)?)))
            .collect()
    }
}

pub fn foulkes_character(a: usize, n: usize) -> Result<FoulkesCharacter> {
    FoulkesCharacter::new(a, n, DEFAULT_MAX_FOULKES_DEGREE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn frac(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn complete_homogeneous() {
        assert_eq!(h_in_p(0, 60).unwrap(), PowerSumPolynomial::one());
        let h1 = h_in_p(1, 60).unwrap();
        assert_eq!(h1.coefficients().len(), 1);
        assert_eq!(h1.coefficient(&p(&[1])), frac(1, 1));
        let h2 = h_in_p(2, 60).unwrap();
        assert_eq!(h2.coefficient(&p(&[1, 1])), frac(1, 2));
        assert_eq!(h2.coefficient(&p(&[2])), frac(1, 2));
        assert!(h_in_p(61, 60).is_err());
    }

    #[test]
    fn plethysm_examples() {
        let h3 = h_in_p(3, 60).unwrap();
        assert_eq!(plethysm_h(1, &h3).unwrap(), h3);
        let h1 = h_in_p(1, 60).unwrap();
        assert_eq!(plethysm_h(2, &h1).unwrap(), h_in_p(2, 60).unwrap());
        assert!(plethysm_h(2, &PowerSumPolynomial::zero(3)).is_err());

        let h2h2 = plethysm_h(2, &h_in_p(2, 60).unwrap()).unwrap();
        assert_eq!(h2h2.degree(), 4);
        let table = CharacterTable::compute(4, 24).unwrap();
        let mults: Vec<BigRational> = table
            .partitions()
            .iter()
            .map(|mu| {
                let row = table.row(mu).unwrap();
                h2h2.pair_with_character(|rho| Ok(row[table.index_of(rho)?]))
                    .unwrap()
            })
            .collect();
        let expected: Vec<BigRational> = [1, 0, 1, 0, 0].iter().map(|&x| frac(x, 1)).collect();
        assert_eq!(mults, expected);
    }

    #[test]
    fn foulkes_values() {
        for n in 1..=6 {
            let phi = foulkes_character(1, n).unwrap();
            for rho in partitions_of(n).unwrap() {
                assert_eq!(phi.value(&rho).unwrap(), BigUint::one());
            }
        }
        let phi = foulkes_character(2, 2).unwrap();
        assert_eq!(phi.value(&p(&[1, 1, 1, 1])).unwrap(), 3u32.into());
        assert_eq!(phi.value(&p(&[2, 1, 1])).unwrap(), 1u32.into());
        assert_eq!(phi.value(&p(&[2, 2])).unwrap(), 3u32.into());
        assert!(phi.value(&p(&[2, 1])).is_err());

        let phi = foulkes_character(4, 5).unwrap();
        let expected = factorial(20) / (BigUint::from(24u32).pow(5) * BigUint::from(120u32));
        assert_eq!(phi.value(&Partition::column(20)).unwrap(), expected);
        assert!(matches!(
            foulkes_character(5, 5),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn multiplicities_small() {
        let table = CharacterTable::compute(6, 24).unwrap();
        let phi = foulkes_character(2, 3).unwrap();
        assert_eq!(phi.multiplicity(&table, &p(&[6])).unwrap(), 1);
        assert_eq!(phi.multiplicity(&table, &p(&[2, 1, 1, 1, 1])).unwrap(), 0);
        assert!(phi.multiplicity(&table, &p(&[5])).is_err());
        let t5 = CharacterTable::compute(5, 24).unwrap();
        assert!(phi.multiplicity(&t5, &p(&[5])).is_err());
    }

    #[test]
    fn thrall_pattern_for_pairs() {
        // h_n[h_2] is the sum of s_mu over mu with all parts even.
        for n in 1..=4 {
            let table = CharacterTable::compute(2 * n, 24).unwrap();
            let phi = foulkes_character(2, n).unwrap();
            for (mu, m) in phi.multiplicities(&table).unwrap() {
                let even = mu.parts().iter().all(|x| x % 2 == 0);
                assert_eq!(m, u64::from(even), "{mu}");
            }
        }
    }
}
