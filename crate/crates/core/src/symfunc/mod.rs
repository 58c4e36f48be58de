//! Truncated symmetric-function arithmetic in the power-sum basis.
//!
//! A [`PSeries`] is a finite rational linear combination of monomials
//! `p_lambda`, graded with `p_i` in degree `i` and truncated above a fixed
//! degree. The inhomogeneous units `P_m = 1 + p_m` are invertible in the
//! truncated ring, so Laurent monomials in the `P_m` expand to honest series
//! here. Conversion to the Schur basis goes through symmetric-group
//! characters computed by the Murnaghan–Nakayama rule.

mod characters;

pub use characters::{mn_character, schur_expand, SchurTable};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{rat, ratio, Partition, Rational};
use crate::error::{Error, Result};

/// A truncated formal series in the power sums `p_1, p_2, ...` with exact
/// rational coefficients.
///
/// Invariants: every stored key `lambda` has `|lambda| <= truncation`, and no
/// stored coefficient is zero. Two series compare equal when they agree up to
/// the smaller of the two truncation degrees.
#[derive(Clone, Debug)]
pub struct PSeries {
    truncation: u32,
    terms: BTreeMap<Partition, Rational>,
}

impl PSeries {
    pub fn zero(truncation: u32) -> Self {
        PSeries {
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational, truncation: u32) -> Self {
        let mut s = PSeries::zero(truncation);
        s.add_term(Partition::empty(), c);
        s
    }

    pub fn one(truncation: u32) -> Self {
        PSeries::constant(rat(1), truncation)
    }

    /// The single monomial `c * p_lambda`; silently zero if `|lambda|`
    /// exceeds the truncation.
    pub fn monomial(lambda: Partition, c: Rational, truncation: u32) -> Self {
        let mut s = PSeries::zero(truncation);
        if lambda.n() <= truncation {
            s.add_term(lambda, c);
        }
        s
    }

    /// The power sum `p_i`.
    pub fn p(i: u32, truncation: u32) -> Self {
        PSeries::monomial(Partition::single(i), rat(1), truncation)
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Iterates stored terms in canonical order (degree, then reverse-lex).
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowers (or keeps) the truncation degree, dropping higher terms.
    pub fn truncate(&self, truncation: u32) -> PSeries {
        let truncation = truncation.min(self.truncation);
        let terms = self
            .terms
            .iter()
            .filter(|(l, _)| l.n() <= truncation)
            .map(|(l, c)| (l.clone(), c.clone()))
            .collect();
        PSeries { truncation, terms }
    }

    /// The coefficient of `p_lambda`; zero if absent, error if `lambda` lies
    /// beyond the truncation degree.
    pub fn coeff(&self, lambda: &Partition) -> Result<Rational> {
        if lambda.n() > self.truncation {
            return Err(Error::BeyondTruncation {
                requested: lambda.n(),
                truncation: self.truncation,
            });
        }
        Ok(self
            .terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(Rational::zero))
    }

    /// The homogeneous degree-`n` component (same truncation).
    pub fn degree_component(&self, n: u32) -> PSeries {
        let terms = self
            .terms
            .iter()
            .filter(|(l, _)| l.n() == n)
            .map(|(l, c)| (l.clone(), c.clone()))
            .collect();
        PSeries {
            truncation: self.truncation,
            terms,
        }
    }

    pub fn scale(&self, c: &Rational) -> PSeries {
        if c.is_zero() {
            return PSeries::zero(self.truncation);
        }
        let terms = self.terms.iter().map(|(l, x)| (l.clone(), x * c)).collect();
        PSeries {
            truncation: self.truncation,
            terms,
        }
    }

    fn add_term(&mut self, lambda: Partition, c: Rational) {
        if lambda.n() > self.truncation || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(lambda);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

impl PartialEq for PSeries {
    fn eq(&self, other: &Self) -> bool {
        let n = self.truncation.min(other.truncation);
        let a = self.truncate(n);
        let b = other.truncate(n);
        a.terms == b.terms
    }
}

impl Eq for PSeries {}

impl fmt::Display for PSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (lambda, c) in &self.terms {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if lambda.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "p{lambda}")?;
            } else {
                write!(f, "{mag}*p{lambda}")?;
            }
        }
        Ok(())
    }
}

/// Coefficientwise sum, truncated to the smaller truncation degree.
pub fn pseries_add(a: &PSeries, b: &PSeries) -> PSeries {
    let truncation = a.truncation.min(b.truncation);
    let mut out = a.truncate(truncation);
    for (l, c) in &b.terms {
        if l.n() <= truncation {
            out.add_term(l.clone(), c.clone());
        }
    }
    out
}

pub fn pseries_sub(a: &PSeries, b: &PSeries) -> PSeries {
    pseries_add(a, &b.scale(&rat(-1)))
}

/// Graded truncated product; monomial keys merge by concatenating parts.
pub fn pseries_mul(a: &PSeries, b: &PSeries) -> PSeries {
    let truncation = a.truncation.min(b.truncation);
    let mut out = PSeries::zero(truncation);
    for (la, ca) in &a.terms {
        let da = la.n();
        if da > truncation {
            continue;
        }
        for (lb, cb) in &b.terms {
            if da + lb.n() > truncation {
                continue;
            }
            out.add_term(la.merge(lb), ca * cb);
        }
    }
    out
}

/// Multiplicative inverse in the truncated ring. The constant term must be a
/// nonzero rational; otherwise the series is a non-unit and an error is
/// returned.
///
/// Solved degree by degree: writing `a = c + a_+` with `a_+` of positive
/// degree, the inverse satisfies `b_0 = 1/c` and
/// `b_d = -(1/c) * sum_{j=1..d} (a_+)_j * b_{d-j}`.
pub fn pseries_inv(a: &PSeries) -> Result<PSeries> {
    let n = a.truncation;
    let c = a.coeff(&Partition::empty())?;
    if c.is_zero() {
        return Err(Error::NonUnitSeries);
    }
    let c_inv = c.recip();
    // Positive-degree components of a, bucketed by degree.
    let mut a_pos: Vec<PSeries> = (0..=n).map(|_| PSeries::zero(n)).collect();
    for (l, x) in &a.terms {
        let d = l.n();
        if d > 0 {
            a_pos[d as usize].add_term(l.clone(), x.clone());
        }
    }
    let mut b_comp: Vec<PSeries> = Vec::with_capacity(n as usize + 1);
    b_comp.push(PSeries::constant(c_inv.clone(), n));
    for d in 1..=n as usize {
        let mut acc = PSeries::zero(n);
        for j in 1..=d {
            if a_pos[j].is_zero() {
                continue;
            }
            acc = pseries_add(&acc, &pseries_mul(&a_pos[j], &b_comp[d - j]));
        }
        b_comp.push(acc.scale(&-c_inv.clone()));
    }
    let mut out = PSeries::zero(n);
    for comp in b_comp {
        out = pseries_add(&out, &comp);
    }
    Ok(out)
}

/// `log(1 + p_d) = sum_{i >= 1} (-1)^{i+1} p_d^i / i`, truncated.
pub fn pseries_log_unit(d: u32, truncation: u32) -> PSeries {
    assert!(d >= 1);
    let mut out = PSeries::zero(truncation);
    let mut i = 1u32;
    while i * d <= truncation {
        let sign = if i % 2 == 1 { 1 } else { -1 };
        let coeff = ratio(sign, i as i64);
        out.add_term(Partition::new(vec![d; i as usize]), coeff);
        i += 1;
    }
    out
}

/// The inhomogeneous power sum `P_m = 1 + p_m`.
pub fn p_unit(m: u32, truncation: u32) -> PSeries {
    pseries_add(&PSeries::one(truncation), &PSeries::p(m, truncation))
}

/// `(1 + p_m)^e` for any signed exponent, truncated.
pub fn p_power(m: u32, e: i64, truncation: u32) -> PSeries {
    // Binomial expansion: only powers p_m^i with i*m <= truncation survive,
    // and C(e, i) extends to negative e as e(e-1)...(e-i+1)/i!.
    let mut out = PSeries::zero(truncation);
    let mut coeff = Rational::one();
    let mut i: u32 = 0;
    loop {
        if (i as u64) * (m as u64) > truncation as u64 {
            break;
        }
        let lambda = if i == 0 {
            Partition::empty()
        } else {
            Partition::new(vec![m; i as usize])
        };
        out.add_term(lambda, coeff.clone());
        // Next generalized binomial coefficient.
        coeff = coeff * rat(e - i as i64) / rat(i as i64 + 1);
        i += 1;
        if coeff.is_zero() && e >= 0 && i as i64 > e {
            break;
        }
    }
    out
}

/// `psi(sigma) = p_{a_1} ... p_{a_l}` for a permutation of cycle type
/// `cycle_type`: the single monomial `p_lambda` with coefficient 1.
pub fn psi(cycle_type: &Partition, truncation: u32) -> PSeries {
    PSeries::monomial(cycle_type.clone(), rat(1), truncation)
}

/// `P(tau) = P_{lambda_1} ... P_{lambda_s}` for a permutation of cycle type
/// `cycle_type`: the product of units `1 + p_{lambda_i}`.
pub fn p_of_permutation(cycle_type: &Partition, truncation: u32) -> PSeries {
    let mut out = PSeries::one(truncation);
    for &part in cycle_type.parts() {
        out = pseries_mul(&out, &p_unit(part, truncation));
    }
    out
}

#[cfg(test)]
pub(crate) fn pseries_exp(a: &PSeries) -> PSeries {
    // Truncated exponential, test-only; requires zero constant term.
    use crate::arith::factorial;
    use num_bigint::BigInt;
    assert!(a.coeff(&Partition::empty()).unwrap().is_zero());
    let n = a.truncation();
    let mut out = PSeries::one(n);
    let mut power = PSeries::one(n);
    for k in 1..=n as u64 {
        power = pseries_mul(&power, a);
        if power.is_zero() {
            break;
        }
        let inv_fact = Rational::new(BigInt::one(), factorial(k));
        out = pseries_add(&out, &power.scale(&inv_fact));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::partitions_of;
    use proptest::prelude::*;

    fn pt(parts: &[u32]) -> Partition {
        if parts.is_empty() {
            Partition::empty()
        } else {
            Partition::new(parts.to_vec())
        }
    }

    #[test]
    fn add_basics() {
        let n = 6;
        let x = PSeries::p(1, n);
        assert_eq!(pseries_add(&PSeries::zero(n), &x), x);
        let two_p1 = PSeries::monomial(pt(&[1]), rat(2), n);
        assert_eq!(pseries_add(&x, &x), two_p1);
        // (P_2 + P_3) - 2 = p_2 + p_3
        let sum = pseries_sub(
            &pseries_add(&p_unit(2, n), &p_unit(3, n)),
            &PSeries::constant(rat(2), n),
        );
        assert_eq!(sum, pseries_add(&PSeries::p(2, n), &PSeries::p(3, n)));
    }

    #[test]
    fn mul_basics() {
        let n = 6;
        let x = PSeries::p(1, n);
        assert_eq!(pseries_mul(&PSeries::one(n), &x), x);
        assert_eq!(
            pseries_mul(&PSeries::p(1, n), &PSeries::p(2, n)),
            PSeries::monomial(pt(&[2, 1]), rat(1), n)
        );
        // (1 + p_1)(1 - p_1) = 1 - p_(1,1)
        let plus = p_unit(1, n);
        let minus = pseries_sub(&PSeries::one(n), &PSeries::p(1, n));
        let expect = pseries_sub(&PSeries::one(n), &PSeries::monomial(pt(&[1, 1]), rat(1), n));
        assert_eq!(pseries_mul(&plus, &minus), expect);
    }

    #[test]
    fn inv_geometric_series() {
        assert_eq!(pseries_inv(&PSeries::one(5)).unwrap(), PSeries::one(5));
        assert_eq!(
            pseries_inv(&PSeries::constant(rat(2), 5)).unwrap(),
            PSeries::constant(ratio(1, 2), 5)
        );
        // 1/P_1 at N = 3: 1 - p_1 + p_1^2 - p_1^3
        let inv = pseries_inv(&p_unit(1, 3)).unwrap();
        let mut expect = PSeries::one(3);
        expect = pseries_add(&expect, &PSeries::monomial(pt(&[1]), rat(-1), 3));
        expect = pseries_add(&expect, &PSeries::monomial(pt(&[1, 1]), rat(1), 3));
        expect = pseries_add(&expect, &PSeries::monomial(pt(&[1, 1, 1]), rat(-1), 3));
        assert_eq!(inv, expect);
        assert_eq!(pseries_mul(&inv, &p_unit(1, 3)), PSeries::one(3));
    }

    #[test]
    fn inv_rejects_non_unit() {
        assert!(matches!(
            pseries_inv(&PSeries::p(1, 4)),
            Err(Error::NonUnitSeries)
        ));
    }

    #[test]
    fn log_unit_values() {
        // d = 1, N = 2: p_1 - p_1^2/2
        let l = pseries_log_unit(1, 2);
        let mut expect = PSeries::p(1, 2);
        expect = pseries_add(&expect, &PSeries::monomial(pt(&[1, 1]), ratio(-1, 2), 2));
        assert_eq!(l, expect);
        // d = 3, N = 2: zero (degree of p_3 exceeds 2)
        assert!(pseries_log_unit(3, 2).is_zero());
        // d = 2, N = 4: p_2 - p_2^2/2
        let l = pseries_log_unit(2, 4);
        let mut expect = PSeries::p(2, 4);
        expect = pseries_add(&expect, &PSeries::monomial(pt(&[2, 2]), ratio(-1, 2), 4));
        assert_eq!(l, expect);
    }

    #[test]
    fn p_power_values() {
        assert_eq!(p_power(1, 1, 4), p_unit(1, 4));
        // P_2^{-1} at N = 4: 1 - p_2 + p_2^2
        let mut expect = PSeries::one(4);
        expect = pseries_add(&expect, &PSeries::monomial(pt(&[2]), rat(-1), 4));
        expect = pseries_add(&expect, &PSeries::monomial(pt(&[2, 2]), rat(1), 4));
        assert_eq!(p_power(2, -1, 4), expect);
        assert_eq!(p_power(2, -1, 4), pseries_inv(&p_unit(2, 4)).unwrap());
        // P_1^{1-g} for g = 3: coefficient of p_1^n is (-1)^n * (n + 1).
        let s = p_power(1, -2, 6);
        for n in 0..=6u32 {
            let lambda = if n == 0 {
                Partition::empty()
            } else {
                Partition::ones(n)
            };
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(s.coeff(&lambda).unwrap(), rat(sign * (n as i64 + 1)));
        }
        assert_eq!(s.coeff(&pt(&[1, 1])).unwrap(), rat(3));
    }

    #[test]
    fn psi_and_p_of_permutation() {
        let n = 8;
        assert_eq!(psi(&Partition::empty(), n), PSeries::one(n));
        assert_eq!(
            psi(&pt(&[3, 1, 1]), n),
            PSeries::monomial(pt(&[3, 1, 1]), rat(1), n)
        );
        assert_eq!(p_of_permutation(&Partition::empty(), n), PSeries::one(n));
        assert_eq!(
            p_of_permutation(&pt(&[2, 1]), n),
            pseries_mul(&p_unit(2, n), &p_unit(1, n))
        );
        // (1 + p_3)^2 = 1 + 2 p_3 + p_(3,3)
        let mut expect = PSeries::one(n);
        expect = pseries_add(&expect, &PSeries::monomial(pt(&[3]), rat(2), n));
        expect = pseries_add(&expect, &PSeries::monomial(pt(&[3, 3]), rat(1), n));
        assert_eq!(p_of_permutation(&pt(&[3, 3]), n), expect);
    }

    #[test]
    fn coeff_beyond_truncation_errors() {
        let s = PSeries::one(3);
        assert!(matches!(
            s.coeff(&pt(&[4])),
            Err(Error::BeyondTruncation { .. })
        ));
        assert_eq!(p_unit(1, 3).coeff(&pt(&[1])).unwrap(), rat(1));
    }

    #[test]
    fn equality_normalizes_truncation() {
        let a = p_power(1, -1, 8);
        let b = p_power(1, -1, 5);
        assert_eq!(a, b);
        assert_eq!(b, a);
    }

    #[test]
    fn log_exp_roundtrip() {
        for d in 1..=4u32 {
            let n = 8;
            let log = pseries_log_unit(d, n);
            assert_eq!(pseries_exp(&log), p_unit(d, n), "exp(log P_{d})");
        }
    }

    // Random series over a small pool of monomials for property tests.
    fn arb_pseries(truncation: u32) -> impl Strategy<Value = PSeries> {
        let pool: Vec<Partition> = (0..=truncation).flat_map(partitions_of).collect();
        let count = pool.len();
        proptest::collection::vec((0..count, -6i64..=6), 0..8).prop_map(move |picks| {
            let mut s = PSeries::zero(truncation);
            for (idx, num) in picks {
                s = pseries_add(
                    &s,
                    &PSeries::monomial(pool[idx].clone(), ratio(num, 3), truncation),
                );
            }
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in arb_pseries(5), b in arb_pseries(5), c in arb_pseries(5)) {
            prop_assert_eq!(pseries_add(&a, &b), pseries_add(&b, &a));
            prop_assert_eq!(pseries_mul(&a, &b), pseries_mul(&b, &a));
            prop_assert_eq!(
                pseries_mul(&pseries_mul(&a, &b), &c),
                pseries_mul(&a, &pseries_mul(&b, &c))
            );
            prop_assert_eq!(
                pseries_mul(&a, &pseries_add(&b, &c)),
                pseries_add(&pseries_mul(&a, &b), &pseries_mul(&a, &c))
            );
        }

    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn inverse_roundtrip(a in arb_pseries(5), unit_num in 1i64..=5) {
            // Force a unit by pinning the constant term to a nonzero value.
            let c0 = a.coeff(&Partition::empty()).unwrap();
            let unit = pseries_add(
                &pseries_sub(&a, &PSeries::constant(c0, 5)),
                &PSeries::constant(rat(unit_num), 5),
            );
            let inv = pseries_inv(&unit).unwrap();
            prop_assert_eq!(pseries_mul(&unit, &inv), PSeries::one(5));
        }
    }
}
