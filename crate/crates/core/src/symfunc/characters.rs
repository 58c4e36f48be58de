//! Symmetric-group characters and conversion to the Schur basis.
//!
//! Characters come from the Murnaghan–Nakayama rule, implemented on
//! first-column hook lengths (beta-sets): removing a border strip of length
//! `t` subtracts `t` from one beta-number, and the strip height is the number
//! of beta-numbers jumped over. Values are memoized per `(lambda, mu)` behind
//! a read-write lock so parallel workers share the table.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_traits::Zero;

use crate::arith::{partitions_of, Partition, Rational};
use crate::error::{Error, Result};

use super::PSeries;

static MN_CACHE: RwLock<Option<HashMap<(Partition, Partition), i64>>> = RwLock::new(None);

/// The irreducible character `chi^lambda` evaluated on the conjugacy class of
/// cycle type `mu`. Both partitions must have the same size.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.n() != mu.n() {
        return Err(Error::SizeMismatch(lambda.n(), mu.n()));
    }
    Ok(mn_cached(lambda, mu))
}

fn mn_cached(lambda: &Partition, mu: &Partition) -> i64 {
    let key = (lambda.clone(), mu.clone());
    if let Some(table) = MN_CACHE.read().unwrap().as_ref() {
        if let Some(&v) = table.get(&key) {
            return v;
        }
    }
    let value = mn_compute(lambda, mu.parts());
    MN_CACHE
        .write()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(key, value);
    value
}

fn mn_compute(lambda: &Partition, mu_parts: &[u32]) -> i64 {
    if mu_parts.is_empty() {
        return 1; // empty character on the empty partition
    }
    let t = mu_parts[0];
    let rest = &mu_parts[1..];
    // Beta-set of lambda: strictly decreasing values lambda_i + (L - 1 - i).
    let l = lambda.len();
    let beta: Vec<i64> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (l - 1 - i) as i64)
        .collect();
    let mut total = 0i64;
    for (pos, &b) in beta.iter().enumerate() {
        let target = b - t as i64;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        // Height of the strip = number of beta entries strictly between.
        let height = beta.iter().filter(|&&x| target < x && x < b).count();
        let mut new_beta = beta.clone();
        new_beta[pos] = target;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        let new_lambda = beta_to_partition(&new_beta);
        let sub = mn_rec(&new_lambda, rest);
        total += if height % 2 == 0 { sub } else { -sub };
    }
    total
}

fn mn_rec(lambda: &Partition, mu_parts: &[u32]) -> i64 {
    if mu_parts.is_empty() {
        return 1;
    }
    // Re-enter through the cache with the remaining cycle type.
    let mu = Partition::new(mu_parts.to_vec());
    mn_cached(lambda, &mu)
}

fn beta_to_partition(beta_desc: &[i64]) -> Partition {
    let l = beta_desc.len();
    let parts: Vec<u32> = beta_desc
        .iter()
        .enumerate()
        .map(|(i, &b)| (b - (l - 1 - i) as i64) as u32)
        .filter(|&p| p > 0)
        .collect();
    if parts.is_empty() {
        Partition::empty()
    } else {
        Partition::new(parts)
    }
}

/// Schur-basis coefficients of the degree-`n` component of a series: for each
/// `lambda` of `n` the table stores the Hall pairing with `s_lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurTable {
    n: u32,
    coefficients: BTreeMap<Partition, Rational>,
}

impl SchurTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// All partitions of `n` with their coefficients, zeros included, in
    /// canonical order.
    pub fn coefficients(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coefficients.iter()
    }

    pub fn get(&self, lambda: &Partition) -> Option<&Rational> {
        self.coefficients.get(lambda)
    }

    pub(crate) fn from_map(n: u32, coefficients: BTreeMap<Partition, Rational>) -> Self {
        SchurTable { n, coefficients }
    }
}

impl fmt::Display for SchurTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (lambda, c) in &self.coefficients {
            writeln!(f, "s{lambda}: {c}")?;
        }
        Ok(())
    }
}

/// Expands the degree-`n` component of `a` in the Schur basis.
///
/// With `s_lambda = sum_mu z_mu^{-1} chi^lambda(mu) p_mu` and
/// `<p_mu, p_nu> = z_mu [mu = nu]`, the Hall pairing gives
/// `c_lambda = sum_{mu of n} a_mu chi^lambda(mu)` where `a_mu` is the stored
/// coefficient of `p_mu`.
pub fn schur_expand(a: &PSeries, n: u32) -> Result<SchurTable> {
    if n > a.truncation() {
        return Err(Error::BeyondTruncation {
            requested: n,
            truncation: a.truncation(),
        });
    }
    let component = a.degree_component(n);
    let mut coefficients = BTreeMap::new();
    for lambda in partitions_of(n) {
        let mut c = Rational::zero();
        for (mu, a_mu) in component.terms() {
            let chi = mn_character(&lambda, mu)?;
            if chi != 0 {
                c += a_mu * crate::arith::rat(chi);
            }
        }
        coefficients.insert(lambda, c);
    }
    Ok(SchurTable { n, coefficients })
}
