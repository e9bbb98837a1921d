//! Simple undirected graphs stored as bit-set adjacency rows.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub mod io;

/// Default vertex cap for the exhaustive even-cycle search.
pub const C2K_DEFAULT_CAP: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    pub degs: Vec<usize>,
    pub sum: usize,
}

impl DegreeSequence {
    /// Degree value to multiplicity, ascending by degree.
    pub fn histogram(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut h = std::collections::BTreeMap::new();
        for &d in &self.degs {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.to_edge_list())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "a graph needs at least one vertex");
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
            m: 0,
        }
    }

    /// Builds a graph from an edge list; duplicate edges (in either orientation) collapse.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoopRejected(u));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate on vertex pairs `i < j`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    g.insert(i, j);
                }
            }
        }
        g
    }

    fn insert(&mut self, u: usize, v: usize) {
        if !self.has_edge(u, v) {
            self.bits[u * self.words + v / 64] |= 1 << (v % 64);
            self.bits[v * self.words + u / 64] |= 1 << (u % 64);
            self.m += 1;
        }
    }

    /// Copy of this graph with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoopRejected(u));
        }
        let mut g = self.clone();
        g.insert(u, v);
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adjacency row of `v` as packed 64-bit words.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Canonical edge list: `u < v`, sorted lexicographically.
    pub fn to_edge_list(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        edges
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn max_common_neighbors(&self) -> usize {
        let mut best = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                best = best.max(self.common_neighbors(u, v));
            }
        }
        best
    }

    /// A simple graph is C4-free iff every vertex pair has at most one common neighbor.
    pub fn is_c4_free(&self) -> bool {
        self.is_k2t_free(2)
    }

    pub fn is_k2t_free(&self, t: usize) -> bool {
        assert!(t >= 2, "K_{{2,t}} needs t >= 2");
        self.max_common_neighbors() < t
    }

    /// Triangle-free iff no edge has a common neighbor.
    pub fn is_c3_free(&self) -> bool {
        self.to_edge_list()
            .into_iter()
            .all(|(u, v)| self.common_neighbors(u, v) == 0)
    }

    pub fn contains_c2k(&self, k: usize) -> Result<bool> {
        self.contains_c2k_capped(k, C2K_DEFAULT_CAP)
    }

    /// Exact search for a cycle of length exactly `2k`. Each cycle is found from
    /// its smallest vertex, walking only through larger vertices.
    pub fn contains_c2k_capped(&self, k: usize, cap: usize) -> Result<bool> {
        assert!(k >= 2, "C_{{2k}} needs k >= 2");
        if self.n > cap {
            return Err(Error::InstanceTooLarge { n: self.n, cap });
        }
        let len = 2 * k;
        if len > self.n {
            return Ok(false);
        }
        let mut on_path = vec![false; self.n];
        for start in 0..self.n {
            on_path[start] = true;
            if self.extend_cycle(start, start, 1, len, &mut on_path) {
                return Ok(true);
            }
            on_path[start] = false;
        }
        Ok(false)
    }

    fn extend_cycle(&self, start: usize, tip: usize, depth: usize, len: usize, on_path: &mut [bool]) -> bool {
        if depth == len {
            return self.has_edge(tip, start);
        }
        let neighbors: Vec<usize> = self.neighbors(tip).filter(|&w| w > start && !on_path[w]).collect();
        for w in neighbors {
            // The closing vertex must be adjacent to start.
            if depth == len - 1 && !self.has_edge(w, start) {
                continue;
            }
            on_path[w] = true;
            let found = self.extend_cycle(start, w, depth + 1, len, on_path);
            on_path[w] = false;
            if found {
                return true;
            }
        }
        false
    }

    /// BFS from vertex 0.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }

    pub fn degrees(&self) -> DegreeSequence {
        let degs: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let sum = degs.iter().sum();
        DegreeSequence { degs, sum }
    }

    pub fn path(n: usize) -> Self {
        Graph::from_fn(n, |i, j| j == i + 1)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Graph::from_fn(n, |i, j| j == i + 1 || (i == 0 && j == n - 1))
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_fn(n, |_, _| true)
    }

    /// K_{a,b} with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Graph::from_fn(a + b, |i, j| (i < a) != (j < a))
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edge_list(10, &edges).expect("valid Petersen edge list")
    }
}
