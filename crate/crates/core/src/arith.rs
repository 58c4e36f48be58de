//! Exact rational arithmetic and elementary number theory.
//!
//! Everything downstream works over exact fractions: Bernoulli numbers in the
//! `t/(e^t - 1)` convention, the Möbius and totient functions, divisor lists,
//! and integer partitions in a fixed canonical order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, the coefficient field for every computation.
pub type Rational = BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `x^e` for a signed exponent; `x` must be nonzero when `e < 0`.
pub fn rational_pow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow::pow(x.clone(), e as usize)
    } else {
        num_traits::pow::pow(x.recip(), (-e) as usize)
    }
}

// ---------------------------------------------------------------------------
// Bernoulli numbers
// ---------------------------------------------------------------------------

static BERNOULLI_CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Bernoulli number `B_r` in the convention `t/(e^t - 1) = sum_r B_r t^r/r!`,
/// so `B_1 = -1/2`. (The opposite convention `B_1 = +1/2` is also common;
/// the two agree at every other index.)
///
/// Computed by the Akiyama–Tanigawa recurrence, which natively produces the
/// `B_1 = +1/2` variant; odd indices are negated to land in the convention
/// above. Values are memoized and the table is extended on demand, so
/// concurrent callers are safe.
pub fn bernoulli(r: u32) -> Rational {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    if cache.len() <= r as usize {
        let computed = akiyama_tanigawa(r as usize);
        *cache = computed;
    }
    cache[r as usize].clone()
}

fn akiyama_tanigawa(n: usize) -> Vec<Rational> {
    let mut row: Vec<Rational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        row.push(Rational::new(BigInt::one(), BigInt::from(m as u64 + 1)));
        for j in (1..=m).rev() {
            let diff = row[j - 1].clone() - row[j].clone();
            row[j - 1] = rat(j as i64) * diff;
        }
        let sign = if m % 2 == 1 { rat(-1) } else { rat(1) };
        out.push(sign * row[0].clone());
    }
    out
}

// ---------------------------------------------------------------------------
// Möbius, totient, divisors
// ---------------------------------------------------------------------------

/// Möbius function: 0 if `n` has a squared prime factor, otherwise
/// `(-1)^(number of prime factors)`. Rejects `n = 0`.
pub fn moebius(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut n = n;
    let mut factors = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            factors += 1;
        }
        p += 1;
    }
    if n > 1 {
        factors += 1;
    }
    Ok(if factors % 2 == 0 { 1 } else { -1 })
}

/// Euler totient: the number of `1 <= k <= n` coprime to `n`. Rejects `n = 0`.
pub fn totient(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    Ok(result)
}

/// All divisors of `n` in ascending order. Rejects `n = 0`.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// The distinct prime divisors of `n`, ascending. `prime_divisors(1)` is empty.
pub fn prime_divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    Ok(out)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// An integer partition: a weakly decreasing list of positive parts.
///
/// Partitions index both cycle types of permutations and power-sum monomials.
/// The ordering sorts first by total size, then reverse-lexicographically
/// within a size, so that the partitions of 4 run
/// `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(
            parts.iter().all(|&p| p > 0),
            "partition parts must be positive"
        );
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-part partition `(n)`. Panics if `n == 0`.
    pub fn single(n: u32) -> Self {
        Partition::new(vec![n])
    }

    /// The partition `(1, 1, ..., 1)` with `n` parts.
    pub fn ones(n: u32) -> Self {
        Partition {
            parts: vec![1; n as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Total size `|lambda|`.
    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Exponent-vector view: map from part value to its multiplicity.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for &p in &self.parts {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    /// Centralizer order `z_lambda = prod_i i^{m_i} m_i!` for cycle type
    /// `lambda`; the conjugacy class of `lambda` in `S_n` has size `n!/z`.
    pub fn z(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (part, mult) in self.multiplicities() {
            acc *= num_traits::pow::pow(BigInt::from(part), mult as usize);
            acc *= factorial(mult as u64);
        }
        acc
    }

    /// Concatenation `lambda union mu` as a partition.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Degree first; within a degree, reverse-lex (larger first part wins).
        self.n().cmp(&other.n()).then_with(|| {
            for (a, b) in self.parts.iter().zip(other.parts.iter()) {
                match b.cmp(a) {
                    std::cmp::Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            self.parts.len().cmp(&other.parts.len())
        })
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n`, each exactly once, in reverse-lexicographic order:
/// `(n)` first, `(1,...,1)` last. `partitions_of(0)` is the empty partition.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    gen_partitions(n, n, &mut stack, &mut out);
    out
}

fn gen_partitions(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: stack.clone(),
        });
        return;
    }
    let mut part = max_part.min(remaining);
    while part >= 1 {
        stack.push(part);
        gen_partitions(remaining - part, part, stack, out);
        stack.pop();
        part -= 1;
    }
}

/// Renders a rational as a decimal string with the given number of digits
/// after the point. This is the only lossy conversion in the crate; callers
/// must label the output accordingly.
pub fn decimal_string(x: &Rational, digits: usize) -> String {
    let scale = num_traits::pow::pow(BigInt::from(10u32), digits);
    let scaled = x * Rational::from_integer(scale.clone());
    // Round half away from zero.
    let half = ratio(1, 2);
    let adjusted = if scaled.is_negative() {
        scaled - half
    } else {
        scaled + half
    };
    let int = adjusted.trunc().to_integer();
    let negative = int.is_negative();
    let mag = int.magnitude().clone();
    let digits_str = mag.to_string();
    let (whole, frac) = if digits_str.len() > digits {
        let split = digits_str.len() - digits;
        (
            digits_str[..split].to_string(),
            digits_str[split..].to_string(),
        )
    } else {
        (
            "0".to_string(),
            format!("{:0>width$}", digits_str, width = digits),
        )
    };
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

#[allow(unused)]
fn to_f64(x: &Rational) -> Option<f64> {
    x.to_f64()
}
