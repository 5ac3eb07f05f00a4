//! Construction of k-path graphs from color sequences and back.
//!
//! A k-path graph of order `n` is grown from a `(k+1)`-clique by `n - k - 1`
//! steps: each step picks the vertex of the current clique whose color equals
//! the next sequence entry, replaces it in the clique with a fresh vertex of
//! that color, and joins the fresh vertex to the other k clique members.
//! Vertices are labeled in construction order (base clique `0..=k`, then the
//! additions), which makes graph6 output reproducible run to run.

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};
use crate::seq::ColorSequence;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KPathError {
    #[error("clique parameter k must be at least 2, got {0}")]
    InvalidK(usize),
    #[error("order n = {n} invalid for k = {k} (need n >= {min_n})")]
    InvalidOrder { k: usize, n: usize, min_n: usize },
    #[error("order n = {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("sequence length {actual} does not match n - k - 1 = {expected}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("not a k-path graph: {0}")]
    NotKPath(&'static str),
}

/// The ordered maximal cliques of a k-path graph together with the vertex
/// exchanged at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreTrace {
    /// `(k+1)`-cliques F_1 .. F_{n-k}; consecutive cliques share k vertices.
    pub cliques: Vec<Vec<usize>>,
    /// Vertex removed at step i, the unique member of F_i \ F_{i+1}.
    pub removed: Vec<usize>,
    /// Vertex added at step i, the unique member of F_{i+1} \ F_i.
    pub added: Vec<usize>,
}

/// A k-path graph with its construction data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPathGraph {
    graph: Graph,
    k: usize,
    coloring: Vec<u8>,
    sequence: ColorSequence,
    trace: CoreTrace,
}

impl KPathGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Proper (k+1)-coloring assigned during construction; colors are 1-based.
    pub fn coloring(&self) -> &[u8] {
        &self.coloring
    }

    /// The color sequence this graph was built from.
    pub fn sequence(&self) -> &ColorSequence {
        &self.sequence
    }

    pub fn trace(&self) -> &CoreTrace {
        &self.trace
    }

    /// Expected edge count of any k-path graph: `k n - k(k+1)/2`.
    pub fn expected_edge_count(k: usize, n: usize) -> usize {
        k * n - k * (k + 1) / 2
    }
}

/// Builds the unique k-path graph of order `n` encoded by `c`.
pub fn build_from_sequence(c: &ColorSequence, n: usize) -> Result<KPathGraph, KPathError> {
    let k = c.k();
    if n < k + 1 {
        return Err(KPathError::InvalidOrder { k, n, min_n: k + 1 });
    }
    if n != c.order() {
        return Err(KPathError::LengthMismatch {
            expected: n - k - 1,
            actual: c.len(),
        });
    }
    if n > MAX_ORDER {
        return Err(KPathError::OrderTooLarge(n));
    }

    let mut graph = Graph::new(n);
    let mut coloring = vec![0u8; n];
    // Base clique on vertices 0..=k, vertex i colored i + 1.
    for (u, color) in coloring.iter_mut().enumerate().take(k + 1) {
        *color = u as u8 + 1;
    }
    for u in 0..=k {
        for v in u + 1..=k {
            graph.add_edge(u, v);
        }
    }
    let mut clique: Vec<usize> = (0..=k).collect();
    let mut cliques = vec![clique.clone()];
    let mut removed = Vec::with_capacity(c.len());
    let mut added = Vec::with_capacity(c.len());

    for (i, &color) in c.entries().iter().enumerate() {
        let fresh = k + 1 + i;
        let slot = clique
            .iter()
            .position(|&v| coloring[v] == color)
            .expect("a valid sequence names a color present in the clique");
        removed.push(clique[slot]);
        coloring[fresh] = color;
        clique[slot] = fresh;
        for &v in &clique {
            if v != fresh {
                graph.add_edge(fresh, v);
            }
        }
        cliques.push(sorted(&clique));
        added.push(fresh);
    }

    debug_assert_eq!(graph.edge_count(), KPathGraph::expected_edge_count(k, n));
    Ok(KPathGraph {
        graph,
        k,
        coloring,
        sequence: c.clone(),
        trace: CoreTrace {
            cliques,
            removed,
            added,
        },
    })
}

fn sorted(clique: &[usize]) -> Vec<usize> {
    let mut v = clique.to_vec();
    v.sort_unstable();
    v
}

/// Recovers the canonical color sequence of `g`, checking along the way that
/// `g` really is a k-path graph for this `k`. Inverse of
/// [`build_from_sequence`] up to canonical form.
pub fn derive_color_sequence(g: &Graph, k: usize) -> Result<ColorSequence, KPathError> {
    if k < 2 {
        return Err(KPathError::InvalidK(k));
    }
    let n = g.n();
    if n < k + 1 {
        return Err(KPathError::NotKPath("order below k + 1"));
    }
    if g.edge_count() != KPathGraph::expected_edge_count(k, n) {
        return Err(KPathError::NotKPath("edge count mismatch"));
    }
    if n == k + 1 {
        // Edge count k(k+1)/2 on k+1 vertices forces the complete graph.
        return Ok(ColorSequence::new(k, vec![]).expect("empty sequence is valid"));
    }
    if !g.is_connected() {
        return Err(KPathError::NotKPath("disconnected"));
    }

    // A k-path graph of order >= k + 2 has exactly two simplicial vertices of
    // degree k: the first removed vertex and the last added one.
    let ends: Vec<usize> = (0..n)
        .filter(|&v| g.degree(v) == k && is_simplicial(g, v))
        .collect();
    if ends.len() != 2 {
        return Err(KPathError::NotKPath(
            "wrong number of degree-k simplicial vertices",
        ));
    }

    let forward = replay_from_end(g, k, ends[0])?;
    let backward = replay_from_end(g, k, ends[1])?;
    debug_assert_eq!(forward.reverse_canonical(), backward);
    Ok(forward.min(backward))
}

fn is_simplicial(g: &Graph, v: usize) -> bool {
    let nb = g.neighbors(v);
    let mut bits = nb;
    while bits != 0 {
        let u = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        // u's neighborhood must cover the other members of nb.
        if nb & !(g.neighbors(u) | (1 << u)) != 0 {
            return false;
        }
    }
    true
}

/// Replays the construction whose first clique is the closed neighborhood of
/// `end`, reading off the normalized color sequence. Colors never need to be
/// fixed explicitly: each added vertex inherits the color of the vertex it
/// replaces, so color classes are tracked as clique slots.
fn replay_from_end(g: &Graph, k: usize, end: usize) -> Result<ColorSequence, KPathError> {
    let n = g.n();
    let mut clique: Vec<usize> = vec![end];
    let mut bits = g.neighbors(end);
    while bits != 0 {
        clique.push(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    let clique_mask = |clique: &[usize]| clique.iter().fold(0u64, |m, &v| m | 1 << v);

    let mut mask = clique_mask(&clique);
    for &v in &clique {
        if mask & !(g.neighbors(v) | (1 << v)) != 0 {
            return Err(KPathError::NotKPath("end neighborhood is not a clique"));
        }
    }

    // Color class of each clique slot, by order of first appearance.
    let mut slot_class: Vec<u8> = vec![0; k + 1];
    let mut next_class = 1u8;
    let mut raw = Vec::with_capacity(n - k - 1);
    let mut consumed = mask;

    for _ in 0..n - k - 1 {
        let mut candidate = None;
        for v in 0..n {
            if consumed & (1 << v) != 0 {
                continue;
            }
            if (g.neighbors(v) & mask).count_ones() as usize == k {
                if candidate.is_some() {
                    return Err(KPathError::NotKPath("ambiguous extension vertex"));
                }
                candidate = Some(v);
            }
        }
        let fresh = candidate.ok_or(KPathError::NotKPath("construction replay stalled"))?;
        let slot = clique
            .iter()
            .position(|&v| g.neighbors(fresh) & (1 << v) == 0)
            .expect("exactly one clique member is missed by the extension vertex");
        if slot_class[slot] == 0 {
            slot_class[slot] = next_class;
            next_class += 1;
        }
        raw.push(slot_class[slot]);
        clique[slot] = fresh;
        mask = clique_mask(&clique);
        consumed |= 1 << fresh;
    }

    ColorSequence::new(k, raw).map_err(|_| KPathError::NotKPath("replayed sequence is invalid"))
}

fn family_sequence(k: usize, n: usize, entries: Vec<u8>) -> Result<KPathGraph, KPathError> {
    let c = ColorSequence::new(k, entries).expect("family sequences are valid by construction");
    build_from_sequence(&c, n)
}

/// Alternating color pattern `1, 2, 1, 2, ...` of length `len`.
fn alternating(len: usize) -> Vec<u8> {
    (0..len).map(|i| if i % 2 == 0 { 1 } else { 2 }).collect()
}

/// The join of `K_{k-1}` with the path `P_{n-k+1}`, built from its color
/// sequence `1, 2, 1, 2, ...`. Maximizes algebraic connectivity and the
/// alpha-index among k-path graphs of its order (conjecturally).
pub fn generalized_fan(k: usize, n: usize) -> Result<KPathGraph, KPathError> {
    check_family_domain(k, n, k + 1)?;
    family_sequence(k, n, alternating(n - k - 1))
}

/// The k-th power of the path on `n` vertices, built from the repeating color
/// sequence `1, 2, ..., k+1, 1, 2, ...`; its vertices end up in path order
/// with `{i, j}` an edge iff `|i - j| <= k`.
pub fn ribbon(k: usize, n: usize) -> Result<KPathGraph, KPathError> {
    check_family_domain(k, n, k + 1)?;
    let entries = (0..n - k - 1).map(|i| (i % (k + 1)) as u8 + 1).collect();
    family_sequence(k, n, entries)
}

/// The unique k-path graph with a vertex whose removal leaves the generalized
/// fan of order `n - 1`; its color sequence is `1, 2, 1, 2, ..., 1, 2, 3`.
pub fn weak_generalized_fan(k: usize, n: usize) -> Result<KPathGraph, KPathError> {
    check_family_domain(k, n, k + 2)?;
    let mut entries = alternating(n - k - 1);
    if entries.len() >= 3 {
        *entries.last_mut().unwrap() = 3;
    }
    family_sequence(k, n, entries)
}

fn check_family_domain(k: usize, n: usize, min_n: usize) -> Result<(), KPathError> {
    if k < 2 {
        return Err(KPathError::InvalidK(k));
    }
    if n < min_n {
        return Err(KPathError::InvalidOrder { k, n, min_n });
    }
    if n > MAX_ORDER {
        return Err(KPathError::OrderTooLarge(n));
    }
    Ok(())
}
