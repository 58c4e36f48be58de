//! Isomorph-free enumeration of stable graphs and marked graphs.
//!
//! Graphs are generated degree sequence by degree sequence as edge multisets
//! over vertex pairs, filtered for connectivity, and deduplicated by
//! canonical form. Output order is deterministic: by vertex count, then by
//! canonical edge list (then marking).

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::{vertex_automorphisms, Graph, MarkedGraph};

/// One representative per isomorphism class of connected genus-`g` graphs
/// with every vertex of valence at least 3. Requires `g >= 2` (there are no
/// such graphs below genus 2).
///
/// A genus-`g` graph with minimum valence 3 has `|V| <= 2g - 2` and
/// `|E| = |V| + g - 1`, so the search space is finite.
pub fn enumerate_stable_graphs(g: u32) -> Result<Vec<Graph>> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    let mut out = Vec::new();
    for nv in 1..=(2 * g as usize - 2) {
        let ne = nv + g as usize - 1;
        out.extend(connected_multigraphs(nv, ne, 3, 0));
    }
    Ok(out)
}

/// Connected multigraphs on `nv` vertices with `ne` edges, minimum degree
/// `min_degree`, and total degree-3 deficiency `sum max(0, 3 - deg v)` at
/// most `max_deficiency`. One canonical representative per isomorphism
/// class, in canonical order.
pub(crate) fn connected_multigraphs(
    nv: usize,
    ne: usize,
    min_degree: u32,
    max_deficiency: u32,
) -> Vec<Graph> {
    let sequences = degree_sequences(nv, 2 * ne as u32, min_degree, max_deficiency);
    let canon_set: BTreeSet<Vec<(usize, usize)>> = sequences
        .par_iter()
        .map(|seq| {
            let mut local = BTreeSet::new();
            let mut rem: Vec<u32> = seq.clone();
            let mut edges: Vec<(usize, usize)> = Vec::with_capacity(ne);
            fill_pairs(nv, ne, 0, 0, &mut rem, &mut edges, &mut local);
            local
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    canon_set
        .into_iter()
        .map(|edges| Graph::from_edge_list(nv, &edges))
        .collect()
}

/// Weakly decreasing degree sequences of the given length and total, with
/// entries at least `min_degree` and bounded total deficiency below 3.
fn degree_sequences(len: usize, total: u32, min_degree: u32, max_deficiency: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(len);
    fn rec(
        len: usize,
        remaining: u32,
        max_part: u32,
        min_degree: u32,
        deficiency_budget: i64,
        stack: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if stack.len() == len {
            if remaining == 0 {
                out.push(stack.clone());
            }
            return;
        }
        let slots_left = (len - stack.len()) as u32;
        let mut d = max_part.min(remaining);
        while d >= min_degree {
            // Remaining slots must be able to absorb what's left.
            if remaining - d <= d * (slots_left - 1) {
                let def = (3i64 - d as i64).max(0);
                if def <= deficiency_budget {
                    stack.push(d);
                    rec(
                        len,
                        remaining - d,
                        d,
                        min_degree,
                        deficiency_budget - def,
                        stack,
                        out,
                    );
                    stack.pop();
                }
            }
            if d == 0 {
                break;
            }
            d -= 1;
        }
    }
    rec(
        len,
        total,
        total.max(1),
        min_degree,
        max_deficiency as i64,
        &mut stack,
        &mut out,
    );
    out
}

/// Backtracking over pair types (u <= v) in lexicographic order, choosing a
/// multiplicity for each: this emits every labeled multigraph with the given
/// remaining-degree vector exactly once.
fn fill_pairs(
    nv: usize,
    ne: usize,
    pair_idx: usize,
    edges_used: usize,
    rem: &mut [u32],
    edges: &mut Vec<(usize, usize)>,
    out: &mut BTreeSet<Vec<(usize, usize)>>,
) {
    let total_pairs = nv * (nv + 1) / 2;
    if pair_idx == total_pairs {
        if edges_used == ne && rem.iter().all(|&x| x == 0) {
            let graph = Graph::from_edge_list(nv, edges);
            if graph.connected() {
                out.insert(graph.canonical_edge_list());
            }
        }
        return;
    }
    let (i, j) = pair_from_index(nv, pair_idx);
    // Once every pair touching vertices < i is behind us, their degrees are
    // final.
    if j == i && (0..i).any(|v| rem[v] != 0) {
        return;
    }
    let capacity = if i == j {
        rem[i] / 2
    } else {
        rem[i].min(rem[j])
    };
    let max_count = (capacity as usize).min(ne - edges_used);
    for c in 0..=max_count {
        let use_i = if i == j { 2 * c as u32 } else { c as u32 };
        rem[i] -= use_i;
        if i != j {
            rem[j] -= c as u32;
        }
        for _ in 0..c {
            edges.push((i, j));
        }
        fill_pairs(nv, ne, pair_idx + 1, edges_used + c, rem, edges, out);
        for _ in 0..c {
            edges.pop();
        }
        rem[i] += use_i;
        if i != j {
            rem[j] += c as u32;
        }
    }
}

fn pair_from_index(nv: usize, idx: usize) -> (usize, usize) {
    let mut i = 0;
    let mut offset = idx;
    loop {
        let row = nv - i;
        if offset < row {
            return (i, i + offset);
        }
        offset -= row;
        i += 1;
    }
}

/// One representative per isomorphism class of stable, connected, genus-`g`
/// graphs with `n` (not necessarily injective) markings; isomorphisms fix
/// each marking label. Requires `2g - 2 + n > 0`.
pub fn enumerate_marked_graphs_p(g: u32, n: u32) -> Result<Vec<MarkedGraph>> {
    enumerate_marked(g, n, false)
}

/// Same as [`enumerate_marked_graphs_p`] but with injective markings.
pub fn enumerate_marked_graphs_injective(g: u32, n: u32) -> Result<Vec<MarkedGraph>> {
    enumerate_marked(g, n, true)
}

fn enumerate_marked(g: u32, n: u32, injective: bool) -> Result<Vec<MarkedGraph>> {
    if 2 * (g as i64) - 2 + n as i64 <= 0 {
        return Err(Error::UnstableRange { g, n });
    }
    // Stability bounds the vertex count: 2|E| + n >= 3|V| with
    // |E| = |V| + g - 1 gives |V| <= 2g - 2 + n.
    let vmax = (2 * g as i64 - 2 + n as i64) as usize;
    let mut out = Vec::new();
    for nv in 1..=vmax {
        let ne = match (nv + g as usize).checked_sub(1) {
            Some(e) => e,
            None => continue,
        };
        if injective && nv < n as usize {
            continue;
        }
        let min_degree = if nv == 1 { 0 } else { 1 };
        for graph in connected_multigraphs(nv, ne, min_degree, n) {
            let degrees = graph.degrees();
            let vperms = vertex_automorphisms(&graph);
            let mut marking = vec![0usize; n as usize];
            loop {
                if (!injective || all_distinct(&marking))
                    && marking_is_stable(&degrees, &marking)
                    && is_orbit_minimum(&marking, &vperms)
                {
                    out.push(MarkedGraph {
                        graph: graph.clone(),
                        marking: marking.clone(),
                    });
                }
                if !advance_marking(&mut marking, nv) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn all_distinct(marking: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    marking.iter().all(|&v| seen.insert(v))
}

fn marking_is_stable(degrees: &[usize], marking: &[usize]) -> bool {
    let mut marks = vec![0usize; degrees.len()];
    for &v in marking {
        marks[v] += 1;
    }
    degrees.iter().zip(&marks).all(|(d, m)| d + m >= 3)
}

fn is_orbit_minimum(marking: &[usize], vperms: &[Vec<usize>]) -> bool {
    let mut image = vec![0usize; marking.len()];
    for pi in vperms {
        for (slot, &v) in image.iter_mut().zip(marking.iter()) {
            *slot = pi[v];
        }
        if image.as_slice() < marking {
            return false;
        }
    }
    true
}

fn advance_marking(marking: &mut [usize], nv: usize) -> bool {
    for slot in marking.iter_mut().rev() {
        *slot += 1;
        if *slot < nv {
            return true;
        }
        *slot = 0;
    }
    false
}
