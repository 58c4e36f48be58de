//! Orbigraphs: graphs with positive multiplicity labels on vertices and
//! edges, recording orbit sizes of a quotient by a cyclic automorphism
//! group.
//!
//! The quotient functor sends a pair (graph, automorphism) to an orbigraph
//! by barycentrically subdividing every edge reversed by a power of the
//! automorphism and then taking orbits. The exhalation/inhalation moves and
//! tail cropping reduce orbigraphs to static, reduced ones, whose numerical
//! classification drives the closed formula.

mod formulas;
mod moves;

pub use formulas::{gamma_formula, gamma_oracle, mu_chain_sum, mu_factor, static_integral};
pub use moves::{
    classify_static_reduced, crop_all_tails, exhalable_edges, exhale, inhalable_elements, inhale,
    is_reduced, is_static, maximal_exhalation, maximal_exhalation_with, maximal_tails, Inhalable,
    StaticClass, Tail,
};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graphcore::{Automorphism, Graph};
use crate::symfunc::{p_power, pseries_mul, PSeries};

/// A graph with a positive multiplicity `f` on each vertex and edge, subject
/// to the divisibility constraint `f(r(h)) | f([h])` for every half-edge
/// `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbigraph {
    graph: Graph,
    f_vertices: Vec<u64>,
    f_edges: Vec<u64>,
}

impl Orbigraph {
    /// Validating constructor; `f_edges` is indexed in edge order.
    pub fn new(graph: Graph, f_vertices: Vec<u64>, f_edges: Vec<u64>) -> Result<Self> {
        if f_vertices.len() != graph.num_vertices() || f_edges.len() != graph.num_edges() {
            return Err(Error::InvalidOrbigraph("label lengths do not match".into()));
        }
        if f_vertices.iter().chain(f_edges.iter()).any(|&f| f == 0) {
            return Err(Error::InvalidOrbigraph(
                "multiplicities must be positive".into(),
            ));
        }
        let og = Orbigraph {
            graph,
            f_vertices,
            f_edges,
        };
        for h in 0..og.graph.num_half_edges() {
            let fv = og.f_vertices[og.graph.attach(h)];
            let fe = og.f_half_edge(h);
            if !fe.is_multiple_of(fv) {
                return Err(Error::InvalidOrbigraph(format!(
                    "divisibility fails at half-edge {h}: {fv} does not divide {fe}"
                )));
            }
        }
        Ok(og)
    }

    /// Builds an orbigraph from labeled edges `(u, v, f_edge)` plus vertex
    /// labels; edge order follows the list.
    pub fn from_labeled_edges(
        nv: usize,
        edges: &[(usize, usize, u64)],
        f_vertices: Vec<u64>,
    ) -> Result<Self> {
        let plain: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let graph = Graph::from_edge_list(nv, &plain);
        let f_edges = edges.iter().map(|&(_, _, f)| f).collect();
        Orbigraph::new(graph, f_vertices, f_edges)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn f_vertices(&self) -> &[u64] {
        &self.f_vertices
    }

    pub fn f_edges(&self) -> &[u64] {
        &self.f_edges
    }

    pub fn f_vertex(&self, v: usize) -> u64 {
        self.f_vertices[v]
    }

    pub fn f_edge(&self, edge_idx: usize) -> u64 {
        self.f_edges[edge_idx]
    }

    /// Multiplicity of the edge containing half-edge `h`.
    pub fn f_half_edge(&self, h: usize) -> u64 {
        self.f_edges[self.graph.edge_index_of(h)]
    }

    /// Labeled edge list `(u, v, f)` in edge order.
    pub fn labeled_edges(&self) -> Vec<(usize, usize, u64)> {
        self.graph
            .edge_list()
            .into_iter()
            .zip(&self.f_edges)
            .map(|((u, v), &f)| (u, v, f))
            .collect()
    }

    /// `chi(X, f) = sum_V f - sum_E f`; equals the Euler characteristic of
    /// the covering graph for quotient orbigraphs.
    pub fn chi_pair(&self) -> i64 {
        let v: i64 = self.f_vertices.iter().map(|&f| f as i64).sum();
        let e: i64 = self.f_edges.iter().map(|&f| f as i64).sum();
        v - e
    }

    /// Genus: `1 - chi(X, f)`.
    pub fn genus(&self) -> i64 {
        1 - self.chi_pair()
    }

    pub fn is_connected(&self) -> bool {
        self.graph.connected()
    }

    /// Stability: every vertex has positive valence, and any vertex of
    /// valence below 3 carries a half-edge with strictly larger multiplicity.
    pub fn is_stable(&self) -> bool {
        let nv = self.graph.num_vertices();
        (0..nv).all(|v| {
            let at = self.graph.half_edges_at(v);
            if at.is_empty() {
                return false;
            }
            at.len() >= 3 || at.iter().any(|&h| self.f_half_edge(h) > self.f_vertices[v])
        })
    }

    /// Maximum multiplicity over all vertices and edges.
    pub fn max_f(&self) -> u64 {
        self.f_vertices
            .iter()
            .chain(self.f_edges.iter())
            .copied()
            .max()
            .unwrap_or(1)
    }

    /// Canonical key (minimal labeled edge list plus vertex labels);
    /// equality of keys is orbigraph isomorphism.
    pub fn canonical_key(&self) -> (usize, Vec<(usize, usize, u64)>, Vec<u64>) {
        let (edges, vlabels) = crate::graphcore::canonical_form(
            self.graph.num_vertices(),
            &self.labeled_edges(),
            &self.f_vertices,
        );
        (self.graph.num_vertices(), edges, vlabels)
    }

    pub fn isomorphic(&self, other: &Orbigraph) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

/// The sign `alpha(X, f) = (-1)^{|E(X)|}`.
pub fn alpha(x: &Orbigraph) -> i64 {
    if x.graph.num_edges().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The unit monomial `beta(X, f) = prod_d P_d^{chi(X_d)}`, where `X_d` is
/// the stratum of multiplicity `d` and `chi(X_d)` counts its vertices minus
/// its edges.
pub fn beta(x: &Orbigraph, truncation: u32) -> PSeries {
    let mut chi_by_level: BTreeMap<u64, i64> = BTreeMap::new();
    for &f in &x.f_vertices {
        *chi_by_level.entry(f).or_insert(0) += 1;
    }
    for &f in &x.f_edges {
        *chi_by_level.entry(f).or_insert(0) -= 1;
    }
    let mut out = PSeries::one(truncation);
    for (level, chi) in chi_by_level {
        if chi == 0 {
            continue;
        }
        let d = u32::try_from(level).expect("multiplicity fits in u32");
        out = pseries_mul(&out, &p_power(d, chi, truncation));
    }
    out
}

/// `chi(X, f)` as a standalone operation.
pub fn chi_pair(x: &Orbigraph) -> i64 {
    x.chi_pair()
}

/// The quotient orbigraph of a connected graph by the cyclic group generated
/// by one automorphism.
///
/// Every edge reversed by some power of the automorphism (the power fixes
/// the edge but swaps its half-edges) is barycentrically subdivided once;
/// the automorphism extends canonically, no edge of the subdivision is
/// reversed, and vertex/half-edge orbits with their sizes form the
/// orbigraph.
pub fn quotient_orbigraph(g: &Graph, tau: &Automorphism) -> Orbigraph {
    assert!(tau.is_valid_for(g), "not an automorphism of the graph");
    assert!(g.connected(), "quotient requires a connected graph");

    let nh = g.num_half_edges();
    let nv = g.num_vertices();

    // Reversed edges: some power maps a half-edge to its partner.
    let reps = g.edge_reps();
    let mut reversed = vec![false; reps.len()];
    for (idx, &h) in reps.iter().enumerate() {
        let partner = g.partner(h);
        let mut cur = tau.tau_h[h];
        loop {
            if cur == partner {
                reversed[idx] = true;
                break;
            }
            if cur == h {
                break;
            }
            cur = tau.tau_h[cur];
        }
    }

    // Subdivided graph G': reversed edge {h, h'} becomes {h, k(h)} and
    // {h', k(h')} with a new midpoint vertex.
    let mut k_of = vec![usize::MAX; nh]; // old half-edge -> its new partner
    let mut mid_of_edge = vec![usize::MAX; reps.len()];
    let mut r2 = g.raw_r().to_vec();
    let mut s2 = g.raw_s().to_vec();
    let mut next_h = nh;
    let mut next_v = nv;
    for (idx, &h) in reps.iter().enumerate() {
        if !reversed[idx] {
            continue;
        }
        let partner = g.partner(h);
        let mid = next_v;
        next_v += 1;
        mid_of_edge[idx] = mid;
        for half in [h, partner] {
            let k = next_h;
            next_h += 1;
            k_of[half] = k;
            r2.push(mid);
            s2.push(half);
            s2[half] = k;
        }
    }

    // Extend tau to G'.
    let mut tau_v2 = tau.tau_v.clone();
    tau_v2.resize(next_v, usize::MAX);
    let mut tau_h2 = tau.tau_h.clone();
    tau_h2.resize(next_h, usize::MAX);
    for (idx, &h) in reps.iter().enumerate() {
        if !reversed[idx] {
            continue;
        }
        let partner = g.partner(h);
        for half in [h, partner] {
            // k(h) follows h: the image of the midpoint half pairs with the
            // image of h.
            let image = tau.tau_h[half];
            debug_assert!(
                k_of[image] != usize::MAX,
                "reversed edges are permuted among themselves"
            );
            tau_h2[k_of[half]] = k_of[image];
        }
        let image_edge_rep = {
            let img = tau.tau_h[h];
            img.min(g.partner(img))
        };
        let image_idx = reps.binary_search(&image_edge_rep).expect("edge rep");
        tau_v2[mid_of_edge[idx]] = mid_of_edge[image_idx];
    }

    // Orbits under the cyclic group.
    let v_orbit = orbit_ids(&tau_v2);
    let h_orbit = orbit_ids(&tau_h2);
    let num_v_orbits = v_orbit.iter().map(|&(id, _)| id).max().unwrap() + 1;
    let num_h_orbits = h_orbit.iter().map(|&(id, _)| id).max().map_or(0, |m| m + 1);

    let mut r_x = vec![usize::MAX; num_h_orbits];
    let mut s_x = vec![usize::MAX; num_h_orbits];
    let mut h_orbit_size = vec![0u64; num_h_orbits];
    for h in 0..next_h {
        let (oid, osize) = h_orbit[h];
        h_orbit_size[oid] = osize;
        let rv = r2[h];
        debug_assert!(r_x[oid] == usize::MAX || r_x[oid] == v_orbit[rv].0);
        r_x[oid] = v_orbit[rv].0;
        let so = h_orbit[s2[h]].0;
        debug_assert_ne!(so, oid, "no edge of the subdivision is reversed");
        debug_assert!(s_x[oid] == usize::MAX || s_x[oid] == so);
        s_x[oid] = so;
    }

    let graph_x = Graph::from_raw(num_v_orbits, r_x, s_x).expect("quotient structure maps");
    let f_vertices: Vec<u64> = {
        let mut sizes = vec![0u64; num_v_orbits];
        for &(oid, osize) in &v_orbit {
            sizes[oid] = osize;
        }
        sizes
    };
    let f_edges: Vec<u64> = graph_x
        .edge_reps()
        .iter()
        .map(|&h| h_orbit_size[h])
        .collect();

    let out = Orbigraph::new(graph_x, f_vertices, f_edges).expect("quotient is an orbigraph");
    debug_assert_eq!(out.chi_pair(), 1 - g.genus(), "chi is preserved");
    debug_assert!(out.is_stable(), "quotients of stable graphs are stable");
    debug_assert!(out.is_connected());
    out
}

/// Orbit id and size per element for the permutation `perm`.
fn orbit_ids(perm: &[usize]) -> Vec<(usize, u64)> {
    let n = perm.len();
    let mut out = vec![(usize::MAX, 0u64); n];
    let mut next_id = 0;
    for start in 0..n {
        if out[start].0 != usize::MAX {
            continue;
        }
        let mut members = vec![start];
        let mut at = perm[start];
        while at != start {
            members.push(at);
            at = perm[at];
        }
        let size = members.len() as u64;
        for m in members {
            out[m] = (next_id, size);
        }
        next_id += 1;
    }
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::arith::{rat, Partition};
    use crate::graphcore::{aut_sign_and_cycles, automorphisms};
    use crate::symfunc::{p_of_permutation, pseries_inv, pseries_mul};

    pub(crate) fn theta() -> Graph {
        Graph::from_edge_list(2, &[(0, 1), (0, 1), (0, 1)])
    }

    pub(crate) fn figure_eight() -> Graph {
        Graph::from_edge_list(1, &[(0, 0), (0, 0)])
    }

    pub(crate) fn flip_both_loops(g: &Graph) -> Automorphism {
        // Figure-eight specific: swap the half-edges of each loop.
        let tau_v = vec![0];
        let tau_h = vec![1, 0, 3, 2];
        let t = Automorphism { tau_v, tau_h };
        assert!(t.is_valid_for(g));
        t
    }

    #[test]
    fn quotient_of_identity_is_constant_one() {
        let g = theta();
        let id = Automorphism::identity(&g);
        let x = quotient_orbigraph(&g, &id);
        assert_eq!(x.graph().num_vertices(), 2);
        assert_eq!(x.graph().num_edges(), 3);
        assert!(x.f_vertices().iter().all(|&f| f == 1));
        assert!(x.f_edges().iter().all(|&f| f == 1));
        assert_eq!(x.chi_pair(), -1);
    }

    #[test]
    fn quotient_of_double_loop_flip_is_labeled_path() {
        let g = figure_eight();
        let tau = flip_both_loops(&g);
        let x = quotient_orbigraph(&g, &tau);
        // Path on three vertices with both edges of multiplicity 2.
        let expect =
            Orbigraph::from_labeled_edges(3, &[(0, 1, 2), (1, 2, 2)], vec![1, 1, 1]).unwrap();
        assert!(x.isomorphic(&expect));
        assert_eq!(alpha(&x), 1);
        assert_eq!(x.chi_pair(), -1);
        // beta = P_1^3 / P_2^2.
        let n = 6;
        let expect_beta = pseries_mul(
            &crate::symfunc::p_power(1, 3, n),
            &crate::symfunc::p_power(2, -2, n),
        );
        assert_eq!(beta(&x, n), expect_beta);
    }

    #[test]
    fn quotient_of_edge_rotation_is_single_fat_edge() {
        // Rotating the three theta edges gives two vertices joined by one
        // edge of multiplicity 3.
        let g = theta();
        let rot = automorphisms(&g)
            .into_iter()
            .find(|t| {
                t.tau_v == vec![0, 1] && {
                    let (_, _, ce, _) = aut_sign_and_cycles(&g, t);
                    ce == Partition::single(3)
                }
            })
            .unwrap();
        let x = quotient_orbigraph(&g, &rot);
        let expect = Orbigraph::from_labeled_edges(2, &[(0, 1, 3)], vec![1, 1]).unwrap();
        assert!(x.isomorphic(&expect));
    }

    #[test]
    fn quotient_sign_and_unit_identity() {
        // alpha(O(G,tau)) * beta(O(G,tau)) equals the automorphism summand
        // (-1)^{|E|} sgn(tau_E) P(tau_V)P(tau_E)/P(tau_H) for every
        // automorphism of every stable graph of genus 2 and 3.
        let n = 8;
        for genus in [2u32, 3] {
            for g in crate::graphcore::enumerate_stable_graphs(genus).unwrap() {
                for tau in automorphisms(&g) {
                    let x = quotient_orbigraph(&g, &tau);
                    let lhs = beta(&x, n).scale(&rat(alpha(&x)));
                    let (sign, cv, ce, ch) = aut_sign_and_cycles(&g, &tau);
                    let edge_sign = if g.num_edges() % 2 == 0 { 1 } else { -1 };
                    let rhs = pseries_mul(
                        &pseries_mul(&p_of_permutation(&cv, n), &p_of_permutation(&ce, n)),
                        &pseries_inv(&p_of_permutation(&ch, n)).unwrap(),
                    )
                    .scale(&rat(sign * edge_sign));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn beta_of_constant_one_orbigraph() {
        let g = theta();
        let x = quotient_orbigraph(&g, &Automorphism::identity(&g));
        // All strata at level 1: chi = 2 - 3 = -1, so beta = P_1^{-1}.
        assert_eq!(beta(&x, 5), crate::symfunc::p_power(1, -1, 5));
        // Single vertex, no edges: beta = P_1, chi = 1.
        let point = Orbigraph::from_labeled_edges(1, &[], vec![1]).unwrap();
        assert_eq!(alpha(&point), 1);
        assert_eq!(beta(&point, 5), crate::symfunc::p_unit(1, 5));
        assert_eq!(point.chi_pair(), 1);
    }

    #[test]
    fn divisibility_is_validated() {
        assert!(Orbigraph::from_labeled_edges(2, &[(0, 1, 3)], vec![2, 1]).is_err());
        assert!(Orbigraph::from_labeled_edges(2, &[(0, 1, 4)], vec![2, 1]).is_ok());
        assert!(Orbigraph::from_labeled_edges(1, &[(0, 0, 0)], vec![1]).is_err());
    }
}
