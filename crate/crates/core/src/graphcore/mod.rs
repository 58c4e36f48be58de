//! Half-edge graphs, their automorphism groups, and isomorph-free
//! enumeration.
//!
//! A graph is a finite half-edge set with a fixed-point-free involution `s`
//! (pairing half-edges into edges) and an attachment map `r` to vertices.
//! Loops and parallel edges are allowed; a loop contributes 2 to the valence
//! of its vertex. Automorphisms are pairs of bijections on vertices and
//! half-edges compatible with `r` and `s`; in particular swapping the two
//! half-edges of a loop while fixing everything else is a legitimate
//! nonidentity automorphism.

mod enumerate;
mod oracles;

pub use enumerate::{
    enumerate_marked_graphs_injective, enumerate_marked_graphs_p, enumerate_stable_graphs,
};
pub use oracles::{chi_orb, chi_orb_oracle, kgn_euler_oracle, z_g_graph_oracle, z_graph};

use crate::arith::Partition;
use crate::error::{Error, Result};

/// A half-edge graph: vertices `0..nv`, half-edges `0..r.len()`, attachment
/// map `r`, and pairing involution `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    nv: usize,
    r: Vec<usize>,
    s: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list; edge `i` gets half-edges `2i` (at
    /// the first endpoint) and `2i + 1` (at the second).
    pub fn from_edge_list(nv: usize, edges: &[(usize, usize)]) -> Graph {
        let mut r = Vec::with_capacity(edges.len() * 2);
        let mut s = Vec::with_capacity(edges.len() * 2);
        for (i, &(u, v)) in edges.iter().enumerate() {
            assert!(u < nv && v < nv, "edge endpoint out of range");
            r.push(u);
            r.push(v);
            s.push(2 * i + 1);
            s.push(2 * i);
        }
        Graph { nv, r, s }
    }

    /// Validating constructor from raw structure maps (used by the JSON
    /// interchange format).
    pub fn from_raw(nv: usize, r: Vec<usize>, s: Vec<usize>) -> Result<Graph> {
        if r.len() != s.len() {
            return Err(Error::InvalidGraph("r and s have different lengths".into()));
        }
        for (h, &v) in r.iter().enumerate() {
            if v >= nv {
                return Err(Error::InvalidGraph(format!("r[{h}] out of range")));
            }
        }
        for (h, &p) in s.iter().enumerate() {
            if p >= s.len() || p == h || s[p] != h {
                return Err(Error::InvalidGraph(
                    "s is not a fixed-point-free involution".into(),
                ));
            }
        }
        Ok(Graph { nv, r, s })
    }

    pub fn num_vertices(&self) -> usize {
        self.nv
    }

    pub fn num_half_edges(&self) -> usize {
        self.r.len()
    }

    pub fn num_edges(&self) -> usize {
        self.r.len() / 2
    }

    /// Vertex carrying half-edge `h`.
    pub fn attach(&self, h: usize) -> usize {
        self.r[h]
    }

    /// The half-edge paired with `h`.
    pub fn partner(&self, h: usize) -> usize {
        self.s[h]
    }

    pub fn raw_r(&self) -> &[usize] {
        &self.r
    }

    pub fn raw_s(&self) -> &[usize] {
        &self.s
    }

    /// One representative half-edge per edge (the smaller index), ascending.
    pub fn edge_reps(&self) -> Vec<usize> {
        (0..self.r.len()).filter(|&h| h < self.s[h]).collect()
    }

    /// Index of the edge containing half-edge `h`, with edges numbered in
    /// `edge_reps` order.
    pub fn edge_index_of(&self, h: usize) -> usize {
        let rep = h.min(self.s[h]);
        self.edge_reps().binary_search(&rep).expect("edge rep")
    }

    /// Unordered endpoint pairs `(min, max)` in edge order.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edge_reps()
            .iter()
            .map(|&h| {
                let (a, b) = (self.r[h], self.r[self.s[h]]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.r.iter().filter(|&&x| x == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nv];
        for &v in &self.r {
            deg[v] += 1;
        }
        deg
    }

    pub fn half_edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.r.len()).filter(|&h| self.r[h] == v).collect()
    }

    /// Connectivity via union-find over the attachment map.
    pub fn connected(&self) -> bool {
        if self.nv == 0 {
            return false;
        }
        let mut uf = UnionFind::new(self.nv);
        for h in self.edge_reps() {
            uf.union(self.r[h], self.r[self.s[h]]);
        }
        let root = uf.find(0);
        (1..self.nv).all(|v| uf.find(v) == root)
    }

    /// First Betti number `|E| - |V| + 1`; meaningful for connected graphs.
    pub fn genus(&self) -> i64 {
        self.num_edges() as i64 - self.nv as i64 + 1
    }

    /// Canonical edge list: the lexicographically smallest relabeling of the
    /// endpoint pairs. Equal canonical forms characterize isomorphism.
    pub fn canonical_edge_list(&self) -> Vec<(usize, usize)> {
        let edges: Vec<(usize, usize, ())> = self
            .edge_list()
            .into_iter()
            .map(|(u, v)| (u, v, ()))
            .collect();
        let vlabels = vec![(); self.nv];
        let (canon, _) = canonical_form(self.nv, &edges, &vlabels);
        canon.into_iter().map(|(u, v, ())| (u, v)).collect()
    }

    /// Smooths away 2-valent vertices by welding their two incident edges.
    /// A cycle of 2-valent vertices collapses down to a single vertex with a
    /// loop, which is left in place (removing it would delete the component).
    #[allow(clippy::needless_range_loop)]
    pub fn smooth_bivalent(&self) -> Graph {
        let r = self.r.clone();
        let mut s = self.s.clone();
        let nh = r.len();
        let mut alive_h = vec![true; nh];
        let mut alive_v = vec![true; self.nv];
        loop {
            let mut smoothed = false;
            for v in 0..self.nv {
                if !alive_v[v] {
                    continue;
                }
                let at: Vec<usize> = (0..nh).filter(|&h| alive_h[h] && r[h] == v).collect();
                if at.len() != 2 {
                    continue;
                }
                let (h1, h2) = (at[0], at[1]);
                if s[h1] == h2 {
                    continue; // lone loop: the collapsed-cycle terminal case
                }
                let a = s[h1];
                let b = s[h2];
                alive_h[h1] = false;
                alive_h[h2] = false;
                alive_v[v] = false;
                s[a] = b;
                s[b] = a;
                smoothed = true;
            }
            if !smoothed {
                break;
            }
        }
        // Compact indices.
        let vmap: Vec<Option<usize>> = {
            let mut next = 0;
            alive_v
                .iter()
                .map(|&ok| {
                    if ok {
                        let i = next;
                        next += 1;
                        Some(i)
                    } else {
                        None
                    }
                })
                .collect()
        };
        let hmap: Vec<Option<usize>> = {
            let mut next = 0;
            alive_h
                .iter()
                .map(|&ok| {
                    if ok {
                        let i = next;
                        next += 1;
                        Some(i)
                    } else {
                        None
                    }
                })
                .collect()
        };
        let new_nv = vmap.iter().flatten().count();
        let mut new_r = vec![0; hmap.iter().flatten().count()];
        let mut new_s = vec![0; new_r.len()];
        for h in 0..nh {
            if let Some(nh_idx) = hmap[h] {
                new_r[nh_idx] = vmap[r[h]].expect("attached vertex alive");
                new_s[nh_idx] = hmap[s[h]].expect("partner alive");
            }
        }
        Graph {
            nv: new_nv,
            r: new_r,
            s: new_s,
        }
    }
}

/// Unordered endpoint pairs of all edges: the edge set as a multiset.
pub fn edge_set(g: &Graph) -> Vec<(usize, usize)> {
    g.edge_list()
}

/// Connectivity predicate (union-find).
pub fn connected(g: &Graph) -> bool {
    g.connected()
}

/// First Betti number of a connected graph.
pub fn genus(g: &Graph) -> i64 {
    g.genus()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

// ---------------------------------------------------------------------------
// Marked graphs
// ---------------------------------------------------------------------------

/// A graph with a marking function `{1..n} -> V`, stored as `marking[i - 1]`.
/// Markings need not be injective; stability counts half-edges plus markings
/// at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedGraph {
    pub graph: Graph,
    pub marking: Vec<usize>,
}

impl MarkedGraph {
    pub fn new(graph: Graph, marking: Vec<usize>) -> Result<Self> {
        for &v in &marking {
            if v >= graph.num_vertices() {
                return Err(Error::InvalidGraph("marking out of range".into()));
            }
        }
        Ok(MarkedGraph { graph, marking })
    }

    pub fn num_marks(&self) -> usize {
        self.marking.len()
    }

    /// Stability: every vertex carries at least 3 half-edges plus markings.
    pub fn is_stable(&self) -> bool {
        let deg = self.graph.degrees();
        let mut marks = vec![0usize; self.graph.num_vertices()];
        for &v in &self.marking {
            marks[v] += 1;
        }
        deg.iter().zip(&marks).all(|(d, m)| d + m >= 3)
    }

    /// Canonical form respecting each marking label pointwise.
    pub fn canonical_key(&self) -> MarkedCanonicalKey {
        let nv = self.graph.num_vertices();
        let mut vlabels: Vec<Vec<u32>> = vec![Vec::new(); nv];
        for (i, &v) in self.marking.iter().enumerate() {
            vlabels[v].push(i as u32 + 1);
        }
        let edges: Vec<(usize, usize, ())> = self
            .graph
            .edge_list()
            .into_iter()
            .map(|(u, v)| (u, v, ()))
            .collect();
        canonical_form(nv, &edges, &vlabels)
    }
}

/// Canonical key of a marked graph: minimal relabeled edge list plus the
/// marking label sets in the new vertex order.
pub type MarkedCanonicalKey = (Vec<(usize, usize, ())>, Vec<Vec<u32>>);

// ---------------------------------------------------------------------------
// Automorphisms
// ---------------------------------------------------------------------------

/// An automorphism: compatible bijections on vertices and half-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub tau_v: Vec<usize>,
    pub tau_h: Vec<usize>,
}

impl Automorphism {
    pub fn identity(g: &Graph) -> Self {
        Automorphism {
            tau_v: (0..g.num_vertices()).collect(),
            tau_h: (0..g.num_half_edges()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.tau_v.iter().enumerate().all(|(i, &x)| i == x)
            && self.tau_h.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` after `other` (function composition).
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            tau_v: other.tau_v.iter().map(|&x| self.tau_v[x]).collect(),
            tau_h: other.tau_h.iter().map(|&x| self.tau_h[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut tau_v = vec![0; self.tau_v.len()];
        let mut tau_h = vec![0; self.tau_h.len()];
        for (i, &x) in self.tau_v.iter().enumerate() {
            tau_v[x] = i;
        }
        for (i, &x) in self.tau_h.iter().enumerate() {
            tau_h[x] = i;
        }
        Automorphism { tau_v, tau_h }
    }

    /// Order of the cyclic group generated by this automorphism.
    pub fn order(&self) -> u64 {
        let ov = permutation_cycle_lengths(&self.tau_v)
            .into_iter()
            .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64));
        let oh = permutation_cycle_lengths(&self.tau_h)
            .into_iter()
            .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64));
        num_integer::lcm(ov, oh)
    }

    /// Checks the compatibility equations against `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let perm_ok = |p: &[usize], n: usize| {
            let mut seen = vec![false; n];
            p.len() == n
                && p.iter().all(|&x| {
                    if x < n && !seen[x] {
                        seen[x] = true;
                        true
                    } else {
                        false
                    }
                })
        };
        perm_ok(&self.tau_v, g.num_vertices())
            && perm_ok(&self.tau_h, g.num_half_edges())
            && (0..g.num_half_edges()).all(|h| {
                self.tau_h[g.partner(h)] == g.partner(self.tau_h[h])
                    && self.tau_v[g.attach(h)] == g.attach(self.tau_h[h])
            })
    }
}

fn permutation_cycle_lengths(perm: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = perm[at];
            len += 1;
        }
        out.push(len);
    }
    out
}

fn cycle_type(perm: &[usize]) -> Partition {
    let lengths = permutation_cycle_lengths(perm);
    if lengths.is_empty() {
        Partition::empty()
    } else {
        Partition::new(lengths)
    }
}

/// Sign and cycle types of the permutations an automorphism induces on
/// vertices, edges, and half-edges. The sign is that of the edge permutation.
pub fn aut_sign_and_cycles(
    g: &Graph,
    tau: &Automorphism,
) -> (i64, Partition, Partition, Partition) {
    let reps = g.edge_reps();
    let index_of: std::collections::HashMap<usize, usize> =
        reps.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let tau_e: Vec<usize> = reps
        .iter()
        .map(|&h| {
            let image = tau.tau_h[h];
            let rep = image.min(g.partner(image));
            index_of[&rep]
        })
        .collect();
    let cyc_e = cycle_type(&tau_e);
    let num_cycles = cyc_e.len();
    let sign = if (reps.len() - num_cycles).is_multiple_of(2) {
        1
    } else {
        -1
    };
    (sign, cycle_type(&tau.tau_v), cyc_e, cycle_type(&tau.tau_h))
}

/// The full automorphism group of `g`, as explicit vertex/half-edge
/// bijection pairs.
///
/// Vertex permutations preserving the adjacency multiset are enumerated
/// first; each extends to half-edge bijections by independently permuting
/// each parallel class, permuting each loop class, and optionally flipping
/// each loop.
pub fn automorphisms(g: &Graph) -> Vec<Automorphism> {
    let mut out = Vec::new();
    for pi in vertex_automorphisms(g) {
        extend_vertex_perm(g, &pi, &mut out);
    }
    debug_assert!(out.iter().all(|t| t.is_valid_for(g)));
    out
}

/// Vertex parts of the automorphism group: all vertex bijections preserving
/// the labeled adjacency multiset. Every such bijection extends to at least
/// one automorphism.
pub fn vertex_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let nv = g.num_vertices();
    let mut mult = std::collections::BTreeMap::new();
    for (u, v) in g.edge_list() {
        *mult.entry((u, v)).or_insert(0usize) += 1;
    }
    let degs = g.degrees();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = Vec::with_capacity(nv);
    let mut used = vec![false; nv];
    fn rec(
        nv: usize,
        degs: &[usize],
        mult: &std::collections::BTreeMap<(usize, usize), usize>,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = perm.len();
        if i == nv {
            out.push(perm.clone());
            return;
        }
        for cand in 0..nv {
            if used[cand] || degs[cand] != degs[i] {
                continue;
            }
            // Partial consistency against already-placed vertices.
            let ok = (0..=i).all(|j| {
                let u = j.min(i);
                let v = j.max(i);
                let (mu, mv) = if j == i {
                    (cand, cand)
                } else {
                    (perm[j].min(cand), perm[j].max(cand))
                };
                mult.get(&(u, v)).copied().unwrap_or(0) == mult.get(&(mu, mv)).copied().unwrap_or(0)
            });
            if !ok {
                continue;
            }
            used[cand] = true;
            perm.push(cand);
            rec(nv, degs, mult, perm, used, out);
            perm.pop();
            used[cand] = false;
        }
    }
    rec(nv, &degs, &mult, &mut perm, &mut used, &mut out);
    out
}

fn extend_vertex_perm(g: &Graph, pi: &[usize], out: &mut Vec<Automorphism>) {
    use std::collections::BTreeMap;
    let reps = g.edge_reps();
    // Parallel classes keyed by unordered endpoints; loops keyed separately.
    let mut parallel: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut loops: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &h in &reps {
        let (a, b) = (g.attach(h), g.attach(g.partner(h)));
        if a == b {
            loops.entry(a).or_default().push(h);
        } else {
            parallel.entry((a.min(b), a.max(b))).or_default().push(h);
        }
    }

    // Per-class assignment alternatives; each alternative is a list of
    // (from_rep, to_rep, flip) triples.
    let mut slot_options: Vec<Vec<Vec<(usize, usize, bool)>>> = Vec::new();
    for (&(u, v), class) in &parallel {
        let image_key = (pi[u].min(pi[v]), pi[u].max(pi[v]));
        let image = &parallel[&image_key];
        debug_assert_eq!(class.len(), image.len());
        let mut options = Vec::new();
        for target in permutations_of(image) {
            options.push(
                class
                    .iter()
                    .zip(&target)
                    .map(|(&from, &to)| (from, to, false))
                    .collect(),
            );
        }
        slot_options.push(options);
    }
    for (&u, class) in &loops {
        let image = &loops[&pi[u]];
        debug_assert_eq!(class.len(), image.len());
        let mut options = Vec::new();
        for target in permutations_of(image) {
            // Each loop in the class can additionally be flipped.
            for flips in 0..(1u32 << class.len()) {
                options.push(
                    class
                        .iter()
                        .zip(&target)
                        .enumerate()
                        .map(|(i, (&from, &to))| (from, to, flips >> i & 1 == 1))
                        .collect(),
                );
            }
        }
        slot_options.push(options);
    }

    // Cartesian product over slots.
    let mut choice = vec![0usize; slot_options.len()];
    loop {
        let mut tau_h = vec![usize::MAX; g.num_half_edges()];
        for (slot, &c) in slot_options.iter().zip(&choice) {
            for &(from, to, flip) in &slot[c] {
                let (f1, f2) = (from, g.partner(from));
                let (t1, t2) = (to, g.partner(to));
                let from_u = g.attach(f1);
                let from_is_loop = g.attach(f2) == from_u;
                if from_is_loop {
                    if flip {
                        tau_h[f1] = t2;
                        tau_h[f2] = t1;
                    } else {
                        tau_h[f1] = t1;
                        tau_h[f2] = t2;
                    }
                } else {
                    // Route each half to the image half at the image vertex.
                    let (at1, at2) = (g.attach(t1), g.attach(t2));
                    if pi[from_u] == at1 {
                        tau_h[f1] = t1;
                        tau_h[f2] = t2;
                    } else {
                        debug_assert_eq!(pi[from_u], at2);
                        tau_h[f1] = t2;
                        tau_h[f2] = t1;
                    }
                }
            }
        }
        out.push(Automorphism {
            tau_v: pi.to_vec(),
            tau_h,
        });

        // Advance the mixed-radix counter.
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return;
            }
            choice[pos] += 1;
            if choice[pos] < slot_options[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

fn permutations_of<T: Copy>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest: Vec<T> = items.to_vec();
        rest.remove(i);
        for mut tail in permutations_of(&rest) {
            let mut perm = vec![x];
            perm.append(&mut tail);
            out.push(perm);
        }
    }
    out
}

/// Automorphisms fixing every marking label pointwise.
pub fn automorphisms_fixing_marking(mg: &MarkedGraph) -> Vec<Automorphism> {
    automorphisms(&mg.graph)
        .into_iter()
        .filter(|t| mg.marking.iter().all(|&v| t.tau_v[v] == v))
        .collect()
}

/// Automorphisms allowed to permute the marking labels, returned with the
/// induced label permutation. Requires an injective marking.
pub fn automorphisms_permuting_marking(
    mg: &MarkedGraph,
) -> Result<Vec<(Automorphism, Vec<usize>)>> {
    let n = mg.marking.len();
    let mut label_at = std::collections::HashMap::new();
    for (i, &v) in mg.marking.iter().enumerate() {
        if label_at.insert(v, i).is_some() {
            return Err(Error::InvalidGraph("marking is not injective".into()));
        }
    }
    let mut out = Vec::new();
    for tau in automorphisms(&mg.graph) {
        let mut sigma = vec![usize::MAX; n];
        let mut ok = true;
        for (slot, &mark) in sigma.iter_mut().zip(&mg.marking) {
            match label_at.get(&tau.tau_v[mark]) {
                Some(&j) => *slot = j,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push((tau, sigma));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Canonical forms with labels
// ---------------------------------------------------------------------------

/// Canonical form of a vertex- and edge-labeled multigraph: the
/// lexicographically smallest relabeled edge list over all bijections that
/// respect the refined vertex classes, together with the vertex labels in
/// the new order.
///
/// Vertices are first partitioned by label, then refined by iterated
/// neighborhood signatures (degree and incident edge labels with endpoint
/// classes) until stable; only class-respecting bijections are searched.
#[allow(clippy::type_complexity, clippy::too_many_arguments)]
pub(crate) fn canonical_form<VL, EL>(
    nv: usize,
    edges: &[(usize, usize, EL)],
    vlabels: &[VL],
) -> (Vec<(usize, usize, EL)>, Vec<VL>)
where
    VL: Ord + Clone,
    EL: Ord + Clone,
{
    assert_eq!(vlabels.len(), nv);
    // Initial classes by vertex label.
    let mut sorted_labels: Vec<&VL> = vlabels.iter().collect();
    sorted_labels.sort();
    sorted_labels.dedup();
    let mut class: Vec<usize> = vlabels
        .iter()
        .map(|l| sorted_labels.binary_search(&l).unwrap())
        .collect();

    // Refine by neighborhood signature until the partition stabilizes.
    loop {
        let mut signature: Vec<(usize, Vec<(bool, EL, usize)>)> =
            (0..nv).map(|v| (class[v], Vec::new())).collect();
        for (u, v, el) in edges {
            if u == v {
                signature[*u].1.push((true, el.clone(), class[*u]));
            } else {
                signature[*u].1.push((false, el.clone(), class[*v]));
                signature[*v].1.push((false, el.clone(), class[*u]));
            }
        }
        for sig in &mut signature {
            sig.1.sort();
        }
        let mut keys: Vec<&(usize, Vec<(bool, EL, usize)>)> = signature.iter().collect();
        keys.sort();
        keys.dedup();
        let new_class: Vec<usize> = signature
            .iter()
            .map(|sig| keys.binary_search(&sig).unwrap())
            .collect();
        let stable = new_class == class;
        class = new_class;
        if stable {
            break;
        }
    }

    // Cells in class order; assign index ranges.
    let num_classes = class.iter().copied().max().map_or(0, |m| m + 1);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); num_classes];
    for v in 0..nv {
        cells[class[v]].push(v);
    }
    let mut base = vec![0usize; num_classes];
    let mut next = 0;
    for (c, cell) in cells.iter().enumerate() {
        base[c] = next;
        next += cell.len();
    }

    // Search class-respecting bijections for the minimal edge list.
    let mut best: Option<Vec<(usize, usize, EL)>> = None;
    let mut assignment = vec![0usize; nv]; // vertex -> new index
    fn search<EL: Ord + Clone>(
        cells: &[Vec<usize>],
        base: &[usize],
        cell_idx: usize,
        assignment: &mut Vec<usize>,
        edges: &[(usize, usize, EL)],
        best: &mut Option<Vec<(usize, usize, EL)>>,
    ) {
        if cell_idx == cells.len() {
            let mut relabeled: Vec<(usize, usize, EL)> = edges
                .iter()
                .map(|(u, v, el)| {
                    let (a, b) = (assignment[*u], assignment[*v]);
                    (a.min(b), a.max(b), el.clone())
                })
                .collect();
            relabeled.sort();
            match best {
                None => *best = Some(relabeled),
                Some(b) if relabeled < *b => *best = Some(relabeled),
                _ => {}
            }
            return;
        }
        fn perm_rec<EL: Ord + Clone>(
            cells: &[Vec<usize>],
            base: &[usize],
            cell_idx: usize,
            pos: usize,
            taken: &mut Vec<bool>,
            assignment: &mut Vec<usize>,
            edges: &[(usize, usize, EL)],
            best: &mut Option<Vec<(usize, usize, EL)>>,
        ) {
            let cell = &cells[cell_idx];
            if pos == cell.len() {
                search(cells, base, cell_idx + 1, assignment, edges, best);
                return;
            }
            for slot in 0..cell.len() {
                if taken[slot] {
                    continue;
                }
                taken[slot] = true;
                assignment[cell[pos]] = base[cell_idx] + slot;
                perm_rec(
                    cells,
                    base,
                    cell_idx,
                    pos + 1,
                    taken,
                    assignment,
                    edges,
                    best,
                );
                taken[slot] = false;
            }
        }
        let mut taken = vec![false; cells[cell_idx].len()];
        perm_rec(
            cells, base, cell_idx, 0, &mut taken, assignment, edges, best,
        );
    }
    search(&cells, &base, 0, &mut assignment, edges, &mut best);

    let canonical_edges = best.unwrap_or_default();
    let mut canonical_vlabels = vec![vlabels.first().cloned(); nv];
    for (c, cell) in cells.iter().enumerate() {
        for (i, &v) in cell.iter().enumerate() {
            canonical_vlabels[base[c] + i] = Some(vlabels[v].clone());
        }
    }
    let canonical_vlabels: Vec<VL> = canonical_vlabels.into_iter().map(|x| x.unwrap()).collect();
    (canonical_edges, canonical_vlabels)
}
