//! Brute-force orbisum oracles over enumerated graphs.
//!
//! These are the verification side of the two production formulas: the
//! automorphism orbisum for the genus-`g` generating function, the orbifold
//! Euler characteristic of marked graphs, and the signed count of
//! alternating isomorphism classes that computes chain-level Euler
//! characteristics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use rayon::prelude::*;

use crate::arith::{bernoulli, factorial, rat, Rational};
use crate::error::{Error, Result};
use crate::symfunc::{p_of_permutation, pseries_add, pseries_inv, pseries_mul, PSeries};

use super::{
    aut_sign_and_cycles, automorphisms, automorphisms_fixing_marking,
    enumerate_marked_graphs_injective, enumerate_marked_graphs_p, enumerate_stable_graphs,
    Automorphism, Graph,
};

/// The signed automorphism sum of one graph:
/// `(-1)^{|E|} sum_tau sgn(tau_E) P(tau_V) P(tau_E) / P(tau_H)`.
pub fn z_graph(g: &Graph, truncation: u32) -> PSeries {
    let auts = automorphisms(g);
    z_graph_from_auts(g, &auts, truncation)
}

fn z_graph_from_auts(g: &Graph, auts: &[Automorphism], truncation: u32) -> PSeries {
    let mut total = PSeries::zero(truncation);
    for tau in auts {
        let (sign, cyc_v, cyc_e, cyc_h) = aut_sign_and_cycles(g, tau);
        let numerator = pseries_mul(
            &p_of_permutation(&cyc_v, truncation),
            &p_of_permutation(&cyc_e, truncation),
        );
        let denominator =
            pseries_inv(&p_of_permutation(&cyc_h, truncation)).expect("P(tau_H) is a unit");
        let term = pseries_mul(&numerator, &denominator).scale(&rat(sign));
        total = pseries_add(&total, &term);
    }
    let global_sign = if g.num_edges().is_multiple_of(2) {
        1
    } else {
        -1
    };
    total.scale(&rat(global_sign))
}

/// Orbisum of [`z_graph`] over all stable genus-`g` graphs, weighted by
/// `1/|Aut|`. This is the enumeration-side computation of the genus-`g`
/// generating function.
pub fn z_g_graph_oracle(g: u32, truncation: u32) -> Result<PSeries> {
    let graphs = enumerate_stable_graphs(g)?;
    let total = graphs
        .par_iter()
        .map(|graph| {
            let auts = automorphisms(graph);
            let z = z_graph_from_auts(graph, &auts, truncation);
            z.scale(&BigRational::new(BigInt::from(1), BigInt::from(auts.len())))
        })
        .reduce(|| PSeries::zero(truncation), |a, b| pseries_add(&a, &b));
    Ok(total)
}

/// Closed-form orbifold Euler characteristic of the groupoid of stable
/// marked genus-`g` graphs: `(-1)^{n+1} (g+n-2)!/g! * B_g`.
/// Requires the stable range `2g - 2 + n > 0`.
pub fn chi_orb(g: u32, n: u32) -> Result<Rational> {
    if 2 * (g as i64) - 2 + n as i64 <= 0 {
        return Err(Error::UnstableRange { g, n });
    }
    let sign = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
    let value = BigRational::new(factorial((g + n - 2) as u64), factorial(g as u64))
        * bernoulli(g)
        * rat(sign);
    Ok(value)
}

/// Enumeration-side orbifold Euler characteristic:
/// `sum_(G,m) (-1)^{|E|} / |Aut(G,m)|` over marked-graph classes with
/// label-fixing automorphisms.
pub fn chi_orb_oracle(g: u32, n: u32) -> Result<Rational> {
    let classes = enumerate_marked_graphs_p(g, n)?;
    let total = classes
        .par_iter()
        .map(|mg| {
            let aut_order = automorphisms_fixing_marking(mg).len();
            let sign = if mg.graph.num_edges() % 2 == 0 { 1 } else { -1 };
            BigRational::new(BigInt::from(sign), BigInt::from(aut_order))
        })
        .reduce(BigRational::zero, |a, b| a + b);
    Ok(total)
}

/// Chain-level Euler characteristic: the signed count
/// `sum (-1)^{|E(G)|}` over isomorphism classes of stable marked genus-`g`
/// graphs all of whose label-fixing automorphisms induce even edge
/// permutations.
///
/// Markings are injective for `g >= 1`. For `g = 0` the injective groupoid
/// is empty (stability forces `|V| <= n - 2 < n`), so the genus-0 count runs
/// over arbitrary markings, which is the complex that carries the genus-0
/// homology.
pub fn kgn_euler_oracle(g: u32, n: u32) -> Result<i64> {
    let classes = if g == 0 {
        enumerate_marked_graphs_p(0, n)?
    } else {
        enumerate_marked_graphs_injective(g, n)?
    };
    let mut total = 0i64;
    for mg in &classes {
        let auts = automorphisms_fixing_marking(mg);
        let alternating = auts
            .iter()
            .all(|t| aut_sign_and_cycles(&mg.graph, t).0 == 1);
        if alternating {
            total += if mg.graph.num_edges() % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(total)
}
