//! Dense simple undirected graphs of order at most 64.
//!
//! Adjacency is stored as one `u64` bitmask per vertex, which keeps the
//! million-graph enumeration pipeline allocation-light and makes degree and
//! connectivity queries single instructions.

/// Largest supported order. graph6 short form caps the pipeline at 62, the
/// eigensolver at 64.
pub const MAX_ORDER: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    ///
    /// Panics if `n` is zero or exceeds [`MAX_ORDER`]; callers constructing
    /// graphs from external data validate `n` first.
    pub fn new(n: usize) -> Self {
        assert!((1..=MAX_ORDER).contains(&n), "graph order {n} out of range");
        Graph {
            n,
            rows: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "bad edge ({u}, {v})");
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] & (1 << v) != 0
    }

    /// Neighbor set of `v` as a bitmask.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| self.has_edge(u, v).then_some((u, v)))
        })
    }

    pub fn is_connected(&self) -> bool {
        let full: u64 = if self.n == 64 { !0 } else { (1 << self.n) - 1 };
        let mut reached: u64 = 1;
        loop {
            let mut frontier = 0;
            let mut bits = reached;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                frontier |= self.rows[v];
            }
            let grown = reached | frontier;
            if grown == reached {
                return reached == full;
            }
            reached = grown;
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    /// The graph induced on all vertices except `v`, relabeled to close the
    /// gap.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        assert!(v < self.n && self.n > 1);
        let mut g = Graph::new(self.n - 1);
        for (a, b) in self.edges() {
            if a == v || b == v {
                continue;
            }
            let map = |x: usize| if x > v { x - 1 } else { x };
            g.add_edge(map(a), map(b));
        }
        g
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.n,
            self.edges().collect::<Vec<_>>()
        )
    }
}

/// Brute-force isomorphism test by backtracking vertex assignment.
/// Exponential in the worst case; meant for fixtures with n <= 10.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut deg_a: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }
    let mut mapping = vec![usize::MAX; a.n()];
    let mut used = vec![false; a.n()];
    extend_mapping(a, b, 0, &mut mapping, &mut used)
}

fn extend_mapping(
    a: &Graph,
    b: &Graph,
    v: usize,
    mapping: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == a.n() {
        return true;
    }
    for image in 0..b.n() {
        if used[image] || a.degree(v) != b.degree(image) {
            continue;
        }
        let consistent = (0..v).all(|w| a.has_edge(v, w) == b.has_edge(image, mapping[w]));
        if !consistent {
            continue;
        }
        mapping[v] = image;
        used[image] = true;
        if extend_mapping(a, b, v + 1, mapping, used) {
            return true;
        }
        mapping[v] = usize::MAX;
        used[image] = false;
    }
    false
}
