//! The production pipeline: closed-formula evaluation of the generating
//! functions `z_g` and the Euler-characteristic extractions.
//!
//! For genus at least 2, `z_g` is a finite sum of Laurent monomials
//! `P_m^{-k} prod P_{d_i}^{a_i}` indexed by tuples `(k, m, r, s, a, d)`
//! subject to three arithmetic conditions; genus 0 and 1 have their own
//! logarithmic formulas.

use num_rational::BigRational;
use num_traits::{One, Zero};

use rayon::prelude::*;

use crate::arith::{
    bernoulli, divisors, factorial, moebius, prime_divisors, rat, ratio, rational_pow, totient,
    Partition, Rational,
};
use crate::error::{Error, Result};
use crate::symfunc::{
    p_power, p_unit, pseries_add, pseries_inv, pseries_log_unit, pseries_mul, pseries_sub,
    schur_expand, PSeries, SchurTable,
};

/// One index tuple of the genus-`g` closed formula, constrained by
/// `0 < d_1 < ... < d_s < m` with `d_i | m`, `sum a_i + r = k + 1`, and
/// `sum a_i d_i + g - 1 = k m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ZagierTerm {
    pub m: u64,
    pub k: u32,
    pub r: u32,
    pub d: Vec<u64>,
    pub a: Vec<u64>,
}

impl ZagierTerm {
    pub fn s(&self) -> usize {
        self.d.len()
    }

    /// `gcd(m, d_1, ..., d_s)`; equals `m` when `s = 0`.
    pub fn d_gcd(&self) -> u64 {
        self.d
            .iter()
            .fold(self.m, |acc, &d| num_integer::gcd(acc, d))
    }

    /// Degree of the Laurent monomial when `P_m` is graded in degree `m`:
    /// `sum a_i d_i - k m`, which the defining conditions pin to `1 - g`.
    pub fn p_degree(&self) -> i64 {
        let weighted: i64 = self
            .d
            .iter()
            .zip(&self.a)
            .map(|(&d, &a)| (d * a) as i64)
            .sum();
        weighted - (self.k as i64) * (self.m as i64)
    }

    /// The rational prefactor
    /// `(-1)^{k-r} (k-1)! B_r / r! * m^{r-1} * prod_{p | D} (1 - p^{-r})
    ///  * prod mu(m/d_i)^{a_i} / a_i!`.
    ///
    /// Evaluates to zero exactly when some `mu(m/d_i) = 0`, when `r = 0`
    /// with `D > 1` (each prime factor is then `1 - p^0 = 0`), or when
    /// `B_r = 0`.
    pub fn coefficient(&self) -> Rational {
        let b = bernoulli(self.r);
        if b.is_zero() {
            return Rational::zero();
        }
        let sign = if (self.k as i64 - self.r as i64).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        let mut value = rat(sign)
            * BigRational::new(factorial(self.k as u64 - 1), factorial(self.r as u64))
            * b
            * rational_pow(&rat(self.m as i64), self.r as i64 - 1);
        for p in prime_divisors(self.d_gcd()).expect("positive gcd") {
            value *= Rational::one() - rational_pow(&rat(p as i64), -(self.r as i64));
        }
        for (&di, &ai) in self.d.iter().zip(&self.a) {
            let mu = moebius(self.m / di).expect("positive quotient");
            value *= rational_pow(&rat(mu), ai as i64);
            value /= BigRational::from_integer(factorial(ai));
        }
        value
    }
}

/// All tuples satisfying the three conditions for genus `g >= 2`, in
/// lexicographic `(m, k, r, d, a)` order. The conditions bound the search:
/// `k <= g` and `m <= 2g + 2`.
pub fn enumerate_terms(g: u32) -> Result<Vec<ZagierTerm>> {
    enumerate_terms_bounded(g, g, 2 * g + 2)
}

/// Enumeration with widened bounds (`k <= 2g`, `m <= 6g - 6`); its
/// nonzero-coefficient terms must coincide with those of
/// [`enumerate_terms`], which pins the finiteness bounds.
///
/// The widened window does contain extra tuples satisfying the three
/// conditions — e.g. `(m, k, r, d, a) = (12, 1, 0, [4, 6], [1, 1])` at genus
/// 3 — but each is killed by the prefactor: with `r = 0`, any shared prime
/// of `m` and the `d_i` contributes a factor `1 - p^0 = 0`, and a nonzero
/// term with `k = 1, r = 0` forces coprime tails, which brings `m` back
/// under `2g + 2`.
pub fn enumerate_terms_widened(g: u32) -> Result<Vec<ZagierTerm>> {
    enumerate_terms_bounded(g, 2 * g, 6 * g - 6)
}

fn enumerate_terms_bounded(g: u32, k_max: u32, m_max: u32) -> Result<Vec<ZagierTerm>> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    let mut terms = Vec::new();
    for m in 1..=m_max as u64 {
        let proper: Vec<u64> = divisors(m)?.into_iter().filter(|&d| d < m).collect();
        for k in 1..=k_max {
            let target = (k as i64) * (m as i64) - (g as i64 - 1);
            if target < 0 {
                continue;
            }
            if target == 0 {
                terms.push(ZagierTerm {
                    m,
                    k,
                    r: k + 1,
                    d: Vec::new(),
                    a: Vec::new(),
                });
                continue;
            }
            // Choose multiplicities for an increasing subset of proper
            // divisors with sum a_i d_i = target and sum a_i <= k + 1.
            let mut d = Vec::new();
            let mut a = Vec::new();
            choose_tails(
                &proper,
                0,
                target as u64,
                (k + 1) as u64,
                &mut d,
                &mut a,
                &mut |d, a| {
                    let used: u64 = a.iter().sum();
                    let r = (k as u64 + 1 - used) as u32;
                    terms.push(ZagierTerm {
                        m,
                        k,
                        r,
                        d: d.to_vec(),
                        a: a.to_vec(),
                    });
                },
            );
        }
    }
    terms.sort();
    Ok(terms)
}

fn choose_tails(
    proper: &[u64],
    from: usize,
    remaining: u64,
    budget: u64,
    d: &mut Vec<u64>,
    a: &mut Vec<u64>,
    emit: &mut impl FnMut(&[u64], &[u64]),
) {
    if remaining == 0 {
        if !d.is_empty() {
            emit(d, a);
        }
        return;
    }
    if budget == 0 {
        return;
    }
    for idx in from..proper.len() {
        let di = proper[idx];
        if di > remaining {
            break;
        }
        let max_mult = (remaining / di).min(budget);
        for ai in 1..=max_mult {
            d.push(di);
            a.push(ai);
            choose_tails(
                proper,
                idx + 1,
                remaining - ai * di,
                budget - ai,
                d,
                a,
                emit,
            );
            a.pop();
            d.pop();
        }
    }
}

/// The series value of one term: coefficient times
/// `P_m^{-k} prod P_{d_i}^{a_i}`. Identically-zero coefficients short-circuit
/// before any series arithmetic.
pub fn term_value(term: &ZagierTerm, truncation: u32) -> PSeries {
    let c = term.coefficient();
    if c.is_zero() {
        return PSeries::zero(truncation);
    }
    let mut mono = p_power(
        u32::try_from(term.m).expect("m fits in u32"),
        -(term.k as i64),
        truncation,
    );
    for (&di, &ai) in term.d.iter().zip(&term.a) {
        mono = pseries_mul(
            &mono,
            &p_power(
                u32::try_from(di).expect("d fits in u32"),
                ai as i64,
                truncation,
            ),
        );
    }
    mono.scale(&c)
}

/// The genus-`g` generating function for `g >= 2`, truncated.
pub fn z_g(g: u32, truncation: u32) -> Result<PSeries> {
    let terms = enumerate_terms(g)?;
    let total = terms
        .par_iter()
        .map(|t| term_value(t, truncation))
        .reduce(|| PSeries::zero(truncation), |x, y| pseries_add(&x, &y));
    Ok(total)
}

/// Genus 0: `-P_1 sum_{d >= 1} mu(d)/d log P_d + (P_1^2 - P_2)/2`. The sum
/// truncates at `d <= truncation` since `log P_d` starts in degree `d`.
pub fn z_0(truncation: u32) -> PSeries {
    let mut log_sum = PSeries::zero(truncation);
    for d in 1..=truncation.max(1) {
        if d > truncation {
            break;
        }
        let mu = moebius(d as u64).expect("positive d");
        if mu == 0 {
            continue;
        }
        let coeff = ratio(mu, d as i64);
        log_sum = pseries_add(&log_sum, &pseries_log_unit(d, truncation).scale(&coeff));
    }
    let head = pseries_mul(&p_unit(1, truncation), &log_sum).scale(&rat(-1));
    let correction = pseries_sub(
        &pseries_mul(&p_unit(1, truncation), &p_unit(1, truncation)),
        &p_unit(2, truncation),
    )
    .scale(&ratio(1, 2));
    pseries_add(&head, &correction)
}

/// Genus 1: `-1/2 sum_{d >= 1} phi(d)/d log P_d - 1/4 P_1^2/P_2 + P_1 - 3/4`.
pub fn z_1(truncation: u32) -> PSeries {
    let mut log_sum = PSeries::zero(truncation);
    for d in 1..=truncation.max(1) {
        if d > truncation {
            break;
        }
        let phi = totient(d as u64).expect("positive d") as i64;
        let coeff = ratio(phi, d as i64);
        log_sum = pseries_add(&log_sum, &pseries_log_unit(d, truncation).scale(&coeff));
    }
    let mut total = log_sum.scale(&ratio(-1, 2));
    let quad = pseries_mul(
        &pseries_mul(&p_unit(1, truncation), &p_unit(1, truncation)),
        &pseries_inv(&p_unit(2, truncation)).expect("unit"),
    )
    .scale(&ratio(-1, 4));
    total = pseries_add(&total, &quad);
    total = pseries_add(&total, &p_unit(1, truncation));
    total = pseries_add(&total, &PSeries::constant(ratio(-3, 4), truncation));
    total
}

/// Dispatches to the right generating function by genus.
pub fn z_any(g: u32, truncation: u32) -> PSeries {
    match g {
        0 => z_0(truncation),
        1 => z_1(truncation),
        _ => z_g(g, truncation).expect("genus at least 2"),
    }
}

/// Default truncation degree for genus-`g` computations: `3g + 6`, enough
/// for exact data in every symmetric-group degree up to that bound.
pub fn default_truncation(g: u32) -> u32 {
    3 * g + 6
}

/// Series-side numerical Euler characteristic: `n! coeff_{p_1^n} z_g`.
pub fn top_weight_euler(g: u32, n: u32) -> Rational {
    let z = z_any(g, n);
    let lambda = if n == 0 {
        Partition::empty()
    } else {
        Partition::ones(n)
    };
    let coeff = z.coeff(&lambda).expect("within truncation");
    coeff * BigRational::from_integer(factorial(n as u64))
}

/// Closed-form numerical Euler characteristic
/// `(-1)^{n+1} (g+n-2)!/g! * B_g`, valid for `n > g + 1`.
pub fn top_weight_euler_closed(g: u32, n: u32) -> Result<Rational> {
    if n <= g + 1 {
        return Err(Error::OutsideValidityRange { g, n });
    }
    let sign = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
    Ok(
        BigRational::new(factorial((g + n - 2) as u64), factorial(g as u64))
            * bernoulli(g)
            * rat(sign),
    )
}

/// Schur-basis table of the degree-`n` component of the genus-`g`
/// generating function.
pub fn equivariant_table(g: u32, n: u32) -> SchurTable {
    let z = z_any(g, n);
    schur_expand(&z, n).expect("degree within truncation")
}
