//! Closed formulas attached to static reduced classes, with brute-force
//! counterparts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::arith::{bernoulli, factorial, moebius, prime_divisors, rat, rational_pow, Rational};
use crate::error::{Error, Result};

use super::moves::StaticClass;

/// `gamma = m^{r-1} prod_{p | D} (1 - p^{-r})` where `D` is the gcd of `m`
/// with the tail multiplicities. For `r = 0` every prime factor vanishes, so
/// the value is `1/m` when `D = 1` and `0` otherwise.
pub fn gamma_formula(m: u64, r: u32, d_gcd: u64) -> Rational {
    assert!(m >= 1 && d_gcd >= 1);
    let mut value = rational_pow(&rat(m as i64), r as i64 - 1);
    for p in prime_divisors(d_gcd).expect("positive gcd") {
        let factor = Rational::one() - rational_pow(&rat(p as i64), -(r as i64));
        value *= factor;
    }
    value
}

/// Brute-force counterpart of [`gamma_formula`]: counts tuples
/// `(z_1, ..., z_r)` in `(Z/m)^r` whose reductions generate `Z/D`, divided
/// by `m`. Generation is equivalent to `gcd(z_1, ..., z_r, D) = 1`.
pub fn gamma_oracle(m: u64, r: u32, d_list: &[u64]) -> Rational {
    assert!(m >= 1);
    let d_gcd = d_list.iter().fold(m, |acc, &d| num_integer::gcd(acc, d));
    let mut tuple = vec![0u64; r as usize];
    let mut count: u64 = 0;
    loop {
        let g = tuple.iter().fold(d_gcd, |acc, &z| num_integer::gcd(acc, z));
        if g == 1 {
            count += 1;
        }
        // Mixed-radix increment over (Z/m)^r.
        let mut pos = 0;
        loop {
            if pos == tuple.len() {
                return BigRational::new(BigInt::from(count), BigInt::from(m));
            }
            tuple[pos] += 1;
            if tuple[pos] < m {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// The tail-cropping sign correction `prod_i (-mu(m/d_i))^{a_i}`.
pub fn mu_factor(m: u64, d: &[u64], a: &[u64]) -> Result<Rational> {
    if d.len() != a.len() {
        return Err(Error::InvalidClass("d and a have different lengths".into()));
    }
    let mut value = Rational::one();
    for (&di, &ai) in d.iter().zip(a) {
        if di == 0 || !m.is_multiple_of(di) {
            return Err(Error::InvalidClass(format!("{di} does not divide {m}")));
        }
        let base = rat(-moebius(m / di)?);
        value *= rational_pow(&base, ai as i64);
    }
    Ok(value)
}

/// Sum of `(-1)^(number of steps)` over strictly increasing divisor chains
/// `1 = c_0 | c_1 | ... | c_k = a`; equals the Möbius function `mu(a)`.
pub fn mu_chain_sum(a: u64) -> Result<i64> {
    if a == 0 {
        return Err(Error::ZeroArgument);
    }
    fn walk(from: u64, target: u64) -> i64 {
        if from == target {
            return 1;
        }
        let mut total = 0;
        for next in crate::arith::divisors(target).expect("positive") {
            if next > from && next % from == 0 {
                total -= walk(next, target);
            }
        }
        total
    }
    Ok(walk(1, a))
}

/// The orbisum of the sign function over a static reduced class:
/// `-(1 / prod a_i!) * (r + n - 2)!/r! * B_r` with `n = sum a_i`.
pub fn static_integral(class: &StaticClass) -> Result<Rational> {
    let n = class.num_tails();
    let r = class.r as u64;
    if r + n < 2 {
        return Err(Error::InvalidClass("r + n must be at least 2".into()));
    }
    let mut denominator = factorial(r);
    for &ai in &class.a {
        denominator *= factorial(ai);
    }
    let value = BigRational::new(factorial(r + n - 2), denominator) * bernoulli(class.r);
    Ok(-value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{divisors, ratio};

    #[test]
    fn gamma_closed_values() {
        // Single empty tuple for r = 0; D = 1 leaves 1/m.
        assert_eq!(gamma_formula(2, 0, 1), ratio(1, 2));
        assert_eq!(gamma_oracle(2, 0, &[1]), ratio(1, 2));
        // m = 1 gives 1 for every r.
        for r in 0..=4 {
            assert_eq!(gamma_formula(1, r, 1), rat(1));
            assert_eq!(gamma_oracle(1, r, &[]), rat(1));
        }
        // m = 6, r = 2, D = 6: 6 * (1 - 1/4)(1 - 1/9) = 4, oracle counts 24/6.
        assert_eq!(gamma_formula(6, 2, 6), rat(4));
        assert_eq!(gamma_oracle(6, 2, &[]), rat(4));
        // r = 0 with D > 1 vanishes.
        assert_eq!(gamma_formula(4, 0, 2), rat(0));
        assert_eq!(gamma_oracle(4, 0, &[2]), rat(0));
    }

    #[test]
    fn gamma_formula_matches_oracle_on_small_sweep() {
        for m in 1..=8u64 {
            let divs = divisors(m).unwrap();
            for mask in 0u32..(1 << divs.len()) {
                let subset: Vec<u64> = divs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &d)| d)
                    .collect();
                let d_gcd = subset.iter().fold(m, |acc, &d| num_integer::gcd(acc, d));
                for r in 0..=3u32 {
                    assert_eq!(
                        gamma_formula(m, r, d_gcd),
                        gamma_oracle(m, r, &subset),
                        "m={m} r={r} subset={subset:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn mu_factor_values() {
        // All m/d_i = 1: the factor is (-1)^(sum a_i).
        assert_eq!(mu_factor(3, &[3], &[3]).unwrap(), rat(-1));
        assert_eq!(mu_factor(1, &[1], &[3]).unwrap(), rat(-1));
        assert_eq!(mu_factor(6, &[2], &[1]).unwrap(), rat(1)); // -mu(3) = 1
        assert_eq!(mu_factor(4, &[1], &[2]).unwrap(), rat(0)); // mu(4) = 0
        assert!(mu_factor(6, &[4], &[1]).is_err());
    }

    #[test]
    fn chain_sums_give_moebius() {
        assert_eq!(mu_chain_sum(1).unwrap(), 1);
        assert_eq!(mu_chain_sum(6).unwrap(), 1);
        assert_eq!(mu_chain_sum(12).unwrap(), 0);
        for a in 1..=60 {
            assert_eq!(mu_chain_sum(a).unwrap(), moebius(a).unwrap(), "a = {a}");
        }
    }

    #[test]
    fn static_integral_values() {
        // (r, n) = (0, 2) with one doubled tail value: -1/2.
        let class = StaticClass::new(2, 3, 0, vec![1], vec![2]).unwrap();
        assert_eq!(static_integral(&class).unwrap(), ratio(-1, 2));
        // (r, n) = (0, 2) with two distinct tail values: -1.
        let class = StaticClass::new(2, 6, 0, vec![2, 3], vec![1, 1]).unwrap();
        assert_eq!(static_integral(&class).unwrap(), rat(-1));
        // (r, n) = (1, 1): -0!/1! * B_1 = 1/2.
        let class = StaticClass::new(2, 2, 1, vec![1], vec![1]).unwrap();
        assert_eq!(static_integral(&class).unwrap(), ratio(1, 2));
    }
}
