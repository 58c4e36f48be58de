//! Exhalation, inhalation, tails, cropping, and the static classification.

use crate::error::{Error, Result};
use crate::graphcore::Graph;

use super::Orbigraph;

/// Edges along which an orbigraph can exhale: the endpoints are distinct and
/// share the edge's multiplicity, and at least one endpoint is 2-valent with
/// its other edge of strictly larger multiplicity.
pub fn exhalable_edges(x: &Orbigraph) -> Vec<usize> {
    let g = x.graph();
    let reps = g.edge_reps();
    let mut out = Vec::new();
    for (idx, &h) in reps.iter().enumerate() {
        let u = g.attach(h);
        let v = g.attach(g.partner(h));
        if u == v {
            continue;
        }
        let fe = x.f_edge(idx);
        if x.f_vertex(u) != fe || x.f_vertex(v) != fe {
            continue;
        }
        let qualifies = |w: usize, own_half: usize| {
            let at = g.half_edges_at(w);
            if at.len() != 2 {
                return false;
            }
            let other = if at[0] == own_half { at[1] } else { at[0] };
            x.f_half_edge(other) > fe
        };
        if qualifies(u, h) || qualifies(v, g.partner(h)) {
            out.push(idx);
        }
    }
    out
}

/// Collapses an exhalable edge to a single vertex carrying the edge's
/// multiplicity.
pub fn exhale(x: &Orbigraph, edge_idx: usize) -> Result<Orbigraph> {
    if !exhalable_edges(x).contains(&edge_idx) {
        return Err(Error::NotExhalable(edge_idx));
    }
    let edges = x.labeled_edges();
    let (u, v, fe) = edges[edge_idx];
    let keep = u.min(v);
    let drop = u.max(v);
    let remap = |w: usize| {
        if w == drop {
            keep
        } else if w > drop {
            w - 1
        } else {
            w
        }
    };
    let new_edges: Vec<(usize, usize, u64)> = edges
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != edge_idx)
        .map(|(_, &(a, b, f))| (remap(a), remap(b), f))
        .collect();
    let mut f_vertices: Vec<u64> = x
        .f_vertices()
        .iter()
        .enumerate()
        .filter(|(w, _)| *w != drop)
        .map(|(_, &f)| f)
        .collect();
    f_vertices[keep] = fe;
    Orbigraph::from_labeled_edges(x.graph().num_vertices() - 1, &new_edges, f_vertices)
}

/// An inhalable element: either a 2-valent vertex whose incident edges both
/// exceed its multiplicity, or a half-edge at a vertex of valence at least 3
/// with strictly larger multiplicity than the vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Inhalable {
    Vertex(usize),
    HalfEdge(usize),
}

pub fn inhalable_elements(x: &Orbigraph) -> Vec<Inhalable> {
    let g = x.graph();
    let mut out = Vec::new();
    for v in 0..g.num_vertices() {
        let at = g.half_edges_at(v);
        if at.len() == 2 && at.iter().all(|&h| x.f_half_edge(h) > x.f_vertex(v)) {
            out.push(Inhalable::Vertex(v));
        }
    }
    for h in 0..g.num_half_edges() {
        let v = g.attach(h);
        if g.half_edges_at(v).len() >= 3 && x.f_half_edge(h) > x.f_vertex(v) {
            out.push(Inhalable::HalfEdge(h));
        }
    }
    out
}

/// Expands a vertex into an edge: the chosen half-edge moves to a fresh
/// vertex `v'`, joined to the original vertex by a new edge, with
/// `f(new edge) = f(v') = f(v)`. Inverse to [`exhale`] on matching data.
pub fn inhale(x: &Orbigraph, element: Inhalable) -> Result<Orbigraph> {
    if !inhalable_elements(x).contains(&element) {
        return Err(Error::NotInhalable);
    }
    let g = x.graph();
    let h = match element {
        Inhalable::HalfEdge(h) => h,
        // For a 2-valent vertex either half works; the two results are
        // canonically isomorphic. Take the smaller index.
        Inhalable::Vertex(v) => *g.half_edges_at(v).first().expect("valence 2"),
    };
    let v = g.attach(h);
    let nv = g.num_vertices();
    let nh = g.num_half_edges();
    let mut r = g.raw_r().to_vec();
    let mut s = g.raw_s().to_vec();
    r[h] = nv; // move h to the fresh vertex
    r.push(v);
    r.push(nv);
    s.push(nh + 1);
    s.push(nh);
    let graph = Graph::from_raw(nv + 1, r, s).expect("inhalation structure maps");
    let mut f_vertices = x.f_vertices().to_vec();
    f_vertices.push(x.f_vertex(v));
    // Old edges keep their positions; the new edge sorts last.
    let mut f_edges = x.f_edges().to_vec();
    f_edges.push(x.f_vertex(v));
    Orbigraph::new(graph, f_vertices, f_edges)
}

/// Repeated exhalation until no exhalable edge remains, collapsing the first
/// exhalable edge each round. The result is independent of the order, up to
/// canonical isomorphism.
pub fn maximal_exhalation(x: &Orbigraph) -> Orbigraph {
    maximal_exhalation_with(x, |choices| choices[0])
}

/// Maximal exhalation with an explicit choice rule, for order-independence
/// checks.
pub fn maximal_exhalation_with(
    x: &Orbigraph,
    mut choose: impl FnMut(&[usize]) -> usize,
) -> Orbigraph {
    let mut current = x.clone();
    loop {
        let choices = exhalable_edges(&current);
        if choices.is_empty() {
            return current;
        }
        let pick = choose(&choices);
        debug_assert!(choices.contains(&pick));
        current = exhale(&current, pick).expect("chosen edge is exhalable");
    }
}

/// Static: admits neither exhalations nor inhalations.
pub fn is_static(x: &Orbigraph) -> bool {
    exhalable_edges(x).is_empty() && inhalable_elements(x).is_empty()
}

/// A tail: half-edges `h_0, ..., h_k` walking inward from a 1-valent vertex
/// through 2-valent vertices whose multiplicities match the preceding edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tail {
    pub half_edges: Vec<usize>,
}

impl Tail {
    /// Number of extension steps `k`; a bare 1-valent vertex has length 0.
    pub fn length(&self) -> usize {
        self.half_edges.len() - 1
    }
}

/// The maximal tail starting at each 1-valent vertex.
pub fn maximal_tails(x: &Orbigraph) -> Vec<Tail> {
    let g = x.graph();
    let mut out = Vec::new();
    for v0 in 0..g.num_vertices() {
        let at = g.half_edges_at(v0);
        if at.len() != 1 {
            continue;
        }
        let mut half_edges = vec![at[0]];
        loop {
            let last = *half_edges.last().unwrap();
            let next_v = g.attach(g.partner(last));
            let next_at = g.half_edges_at(next_v);
            if next_at.len() != 2 || x.f_vertex(next_v) != x.f_half_edge(last) {
                break;
            }
            let inward = if next_at[0] == g.partner(last) {
                next_at[1]
            } else {
                next_at[0]
            };
            half_edges.push(inward);
            debug_assert!(
                half_edges.len() <= g.num_half_edges(),
                "tail walk must terminate"
            );
        }
        out.push(Tail { half_edges });
    }
    out
}

/// Reduced: static with all maximal tails of length 0.
pub fn is_reduced(x: &Orbigraph) -> bool {
    maximal_tails(x).iter().all(|t| t.length() == 0)
}

/// Crops every maximal tail: for a tail `h_0..h_k` the vertices
/// `v_0..v_{k-1}` and edges of `h_0..h_{k-1}` are removed and the surviving
/// endpoint `v_k` inherits the tail-point multiplicity `f(v_0)`. Preserves
/// `chi(X, f)`.
pub fn crop_all_tails(x: &Orbigraph) -> Orbigraph {
    let g = x.graph();
    let tails = maximal_tails(x);
    let mut drop_vertex = vec![false; g.num_vertices()];
    let mut drop_edge = vec![false; g.num_edges()];
    let mut reassign: Vec<(usize, u64)> = Vec::new();
    for tail in &tails {
        let k = tail.length();
        if k == 0 {
            continue;
        }
        let d = x.f_vertex(g.attach(tail.half_edges[0]));
        for &h in &tail.half_edges[..k] {
            let v = g.attach(h);
            debug_assert!(!drop_vertex[v], "maximal tails are disjoint");
            drop_vertex[v] = true;
            let e = g.edge_index_of(h);
            debug_assert!(!drop_edge[e], "maximal tails are disjoint");
            drop_edge[e] = true;
        }
        let end = g.attach(tail.half_edges[k]);
        debug_assert!(!drop_vertex[end]);
        debug_assert!(
            reassign.iter().all(|&(w, _)| w != end),
            "two maximal tails ending at one vertex would make it unstable"
        );
        reassign.push((end, d));
    }
    if reassign.is_empty() {
        return x.clone();
    }
    let mut f_vertices = x.f_vertices().to_vec();
    for (v, d) in reassign {
        f_vertices[v] = d;
    }
    let vmap: Vec<Option<usize>> = {
        let mut next = 0;
        drop_vertex
            .iter()
            .map(|&dropped| {
                if dropped {
                    None
                } else {
                    let i = next;
                    next += 1;
                    Some(i)
                }
            })
            .collect()
    };
    let new_nv = vmap.iter().flatten().count();
    let new_edges: Vec<(usize, usize, u64)> = x
        .labeled_edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| !drop_edge[*i])
        .map(|(_, &(u, v, f))| (vmap[u].unwrap(), vmap[v].unwrap(), f))
        .collect();
    let new_f_vertices: Vec<u64> = f_vertices
        .iter()
        .enumerate()
        .filter(|(v, _)| !drop_vertex[*v])
        .map(|(_, &f)| f)
        .collect();
    Orbigraph::from_labeled_edges(new_nv, &new_edges, new_f_vertices)
        .expect("cropping preserves orbigraph structure")
}

/// The numerical class of a static, reduced orbigraph: genus `g` of the
/// cover, maximal multiplicity `m`, genus `r` of the underlying graph, and
/// the multiplicities `d_1 < ... < d_s` at 1-valent vertices with their
/// multiplicities of occurrence `a_i`. The exponent `k` is determined by
/// `sum a_i + r = k + 1` and must satisfy
/// `sum a_i d_i + g - 1 = k m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticClass {
    pub g: u32,
    pub m: u64,
    pub r: u32,
    pub d: Vec<u64>,
    pub a: Vec<u64>,
    pub k: u32,
}

impl StaticClass {
    /// Validates conditions on the tuple and determines `k`.
    pub fn new(g: u32, m: u64, r: u32, d: Vec<u64>, a: Vec<u64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidClass("m must be positive".into()));
        }
        if d.len() != a.len() {
            return Err(Error::InvalidClass("d and a have different lengths".into()));
        }
        if a.contains(&0) {
            return Err(Error::InvalidClass(
                "multiplicities a_i must be positive".into(),
            ));
        }
        for w in d.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidClass("d must be strictly increasing".into()));
            }
        }
        if d.iter()
            .any(|&di| di == 0 || di >= m || !m.is_multiple_of(di))
        {
            return Err(Error::InvalidClass(
                "each d_i must be a proper divisor of m".into(),
            ));
        }
        let n: u64 = a.iter().sum();
        let k_plus_one = n + r as u64;
        if k_plus_one < 2 {
            return Err(Error::InvalidClass("k must be at least 1".into()));
        }
        let k = (k_plus_one - 1) as u32;
        let weighted: i128 = d.iter().zip(&a).map(|(&di, &ai)| (di * ai) as i128).sum();
        if weighted + g as i128 - 1 != (k as i128) * (m as i128) {
            return Err(Error::InvalidClass(format!(
                "degree condition fails: sum a_i d_i + g - 1 = {} but k m = {}",
                weighted + g as i128 - 1,
                (k as i128) * (m as i128)
            )));
        }
        Ok(StaticClass { g, m, r, d, a, k })
    }

    pub fn s(&self) -> usize {
        self.d.len()
    }

    /// Total number of tails `n = sum a_i`.
    pub fn num_tails(&self) -> u64 {
        self.a.iter().sum()
    }

    /// `gcd(m, d_1, ..., d_s)`.
    pub fn d_gcd(&self) -> u64 {
        self.d
            .iter()
            .fold(self.m, |acc, &di| num_integer::gcd(acc, di))
    }
}

/// Reads off the class of a static, reduced orbigraph: `m` is the maximal
/// multiplicity, `r` comes from the Euler characteristic of the underlying
/// graph, `g` from `chi(X, f) = 1 - g`, and `(d, a)` from the 1-valent
/// vertices. Errors if the orbigraph is not static and reduced, or if the
/// class conditions fail.
pub fn classify_static_reduced(x: &Orbigraph) -> Result<StaticClass> {
    if !is_static(x) {
        return Err(Error::NotStatic);
    }
    if !is_reduced(x) {
        return Err(Error::NotReduced);
    }
    if !x.is_connected() {
        return Err(Error::InvalidOrbigraph(
            "classification requires connectivity".into(),
        ));
    }
    let g_graph = x.graph();
    let m = x.max_f();
    let chi_x = g_graph.num_vertices() as i64 - g_graph.num_edges() as i64;
    if chi_x > 1 {
        return Err(Error::InvalidOrbigraph(
            "underlying graph is disconnected".into(),
        ));
    }
    let r = (1 - chi_x) as u32;
    let chi_pair = x.chi_pair();
    if chi_pair > 1 {
        return Err(Error::InvalidClass("chi(X, f) exceeds 1".into()));
    }
    let genus = (1 - chi_pair) as u32;

    let mut tail_values: Vec<u64> = Vec::new();
    for v in 0..g_graph.num_vertices() {
        let valence = g_graph.half_edges_at(v).len();
        if valence == 1 {
            tail_values.push(x.f_vertex(v));
        } else if x.f_vertex(v) != m {
            return Err(Error::InvalidClass(
                "multiplicity away from 1-valent vertices must be constant".into(),
            ));
        }
    }
    if x.f_edges().iter().any(|&f| f != m) {
        return Err(Error::InvalidClass(
            "edge multiplicities must equal m".into(),
        ));
    }
    tail_values.sort_unstable();
    let mut d = Vec::new();
    let mut a = Vec::new();
    for value in tail_values {
        if d.last() == Some(&value) {
            *a.last_mut().unwrap() += 1;
        } else {
            d.push(value);
            a.push(1);
        }
    }
    StaticClass::new(genus, m, r, d, a)
}
