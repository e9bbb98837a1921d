//! Exhaustive st(n, C3) and st(n, C4) for small n.
//!
//! The search walks the `C(n, 2)` candidate edges in lexicographic order,
//! branching on include/exclude and cutting any branch whose new edge would
//! close a forbidden cycle. Enumeration is over labeled graphs. The tree is
//! split at a fixed prefix depth into independent subtasks whose results are
//! reduced by a total order (larger tau, then lexicographically smaller edge
//! list), so the outcome does not depend on scheduling.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::trees::{tau, tau_complete_bipartite, DetEngine};

pub const MAX_SEARCH_N: usize = 8;
pub const DEFAULT_SPLIT_DEPTH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Forbidden {
    C3,
    C4,
}

impl fmt::Display for Forbidden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Forbidden::C3 => "C3",
            Forbidden::C4 => "C4",
        })
    }
}

impl FromStr for Forbidden {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c3" | "triangle" => Ok(Forbidden::C3),
            "c4" => Ok(Forbidden::C4),
            other => Err(Error::InvalidArgument(format!("unknown forbidden subgraph {other:?}"))),
        }
    }
}

impl Forbidden {
    pub fn admits(&self, g: &Graph) -> bool {
        match self {
            Forbidden::C3 => g.is_c3_free(),
            Forbidden::C4 => g.is_c4_free(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub maximal_only: bool,
    pub workers: usize,
    pub split_depth: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            maximal_only: false,
            workers: 1,
            split_depth: DEFAULT_SPLIT_DEPTH,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: usize,
    pub forbidden: Forbidden,
    #[serde(with = "crate::report::decimal")]
    pub max_tau: BigUint,
    pub witness: Vec<(usize, usize)>,
    pub graphs_examined: u64,
    pub maximal_only: bool,
}

/// Working state: adjacency masks plus the chosen-edge mask over candidate indices.
#[derive(Clone, Copy)]
struct State {
    adj: [u32; MAX_SEARCH_N],
    chosen: u32,
}

struct Space {
    n: usize,
    forbidden: Forbidden,
    edges: Vec<(usize, usize)>,
}

impl Space {
    fn new(n: usize, forbidden: Forbidden) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Space { n, forbidden, edges }
    }

    /// Whether adding `uv` to a forbidden-free state keeps it forbidden-free.
    fn addable(&self, st: &State, u: usize, v: usize) -> bool {
        match self.forbidden {
            Forbidden::C3 => st.adj[u] & st.adj[v] == 0,
            // A new C4 through uv is u-w-x-v with w ~ u, x ~ v, w ~ x.
            Forbidden::C4 => {
                let mut ws = st.adj[u];
                while ws != 0 {
                    let w = ws.trailing_zeros() as usize;
                    ws &= ws - 1;
                    if st.adj[w] & st.adj[v] != 0 {
                        return false;
                    }
                }
                true
            }
        }
    }

    fn add(&self, st: &State, idx: usize) -> State {
        let (u, v) = self.edges[idx];
        let mut next = *st;
        next.adj[u] |= 1 << v;
        next.adj[v] |= 1 << u;
        next.chosen |= 1 << idx;
        next
    }

    fn is_maximal(&self, st: &State) -> bool {
        self.edges
            .iter()
            .enumerate()
            .all(|(i, &(u, v))| st.chosen >> i & 1 == 1 || !self.addable(st, u, v))
    }

    fn connected(&self, st: &State) -> bool {
        let full = (1u32 << self.n) - 1;
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= st.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full
    }

    fn tau(&self, st: &State) -> u64 {
        if !self.connected(st) {
            return 0;
        }
        tau_word(self.n, &st.adj).unwrap_or_else(|| {
            let big = tau(&self.graph(st.chosen), Some(DetEngine::Bareiss)).value;
            u64::try_from(big).expect("tau on at most 8 vertices is below 8^6")
        })
    }

    fn edge_list(&self, chosen: u32) -> Vec<(usize, usize)> {
        (0..self.edges.len())
            .filter(|i| chosen >> i & 1 == 1)
            .map(|i| self.edges[i])
            .collect()
    }

    fn graph(&self, chosen: u32) -> Graph {
        Graph::from_edge_list(self.n, &self.edge_list(chosen)).expect("search edges are valid")
    }
}

/// Laplacian cofactor via word-sized Bareiss; `None` on overflow.
fn tau_word(n: usize, adj: &[u32; MAX_SEARCH_N]) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    let d = n - 1;
    let mut m = [[0i64; MAX_SEARCH_N]; MAX_SEARCH_N];
    for i in 0..d {
        let v = i + 1;
        m[i][i] = adj[v].count_ones() as i64;
        for j in 0..d {
            if j != i && adj[v] >> (j + 1) & 1 == 1 {
                m[i][j] = -1;
            }
        }
    }
    let mut prev = 1i64;
    let mut negate = false;
    for k in 0..d - 1 {
        if m[k][k] == 0 {
            let i = (k + 1..d).find(|&i| m[i][k] != 0)?;
            m.swap(k, i);
            negate = !negate;
        }
        for i in k + 1..d {
            for j in k + 1..d {
                let num = m[i][j].checked_mul(m[k][k])?.checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = num / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    let det = if negate { -m[d - 1][d - 1] } else { m[d - 1][d - 1] };
    u64::try_from(det).ok()
}

/// Lexicographic order of the increasing edge-index sequences encoded by two masks.
fn lex_cmp(a: u32, b: u32) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let i = diff.trailing_zeros();
    let above = !((1u32 << i) | ((1u32 << i) - 1));
    if a >> i & 1 == 1 {
        // a has index i where b has something larger, or b has ended.
        if b & above == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if a & above == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

#[derive(Debug, Clone)]
struct Partial {
    best: Option<(u64, u32)>,
    examined: u64,
}

impl Partial {
    fn empty() -> Self {
        Partial {
            best: None,
            examined: 0,
        }
    }

    fn offer(&mut self, t: u64, chosen: u32) {
        let better = match &self.best {
            None => true,
            Some((bt, bc)) => match t.cmp(bt) {
                Ordering::Greater => true,
                Ordering::Equal => lex_cmp(chosen, *bc) == Ordering::Less,
                Ordering::Less => false,
            },
        };
        if better {
            self.best = Some((t, chosen));
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.examined += other.examined;
        if let Some((t, c)) = other.best {
            self.offer(t, c);
        }
        self
    }
}

fn dfs<F: FnMut(&State)>(space: &Space, st: State, idx: usize, stop: usize, leaf: &mut F) {
    if idx == stop {
        leaf(&st);
        return;
    }
    let (u, v) = space.edges[idx];
    if space.addable(&st, u, v) {
        dfs(space, space.add(&st, idx), idx + 1, stop, leaf);
    }
    dfs(space, st, idx + 1, stop, leaf);
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_SEARCH_N {
        return Err(Error::InstanceTooLarge { n, cap: MAX_SEARCH_N });
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("search needs n >= 2, got {n}")));
    }
    Ok(())
}

/// Visits every labeled forbidden-free graph on `n` vertices, connected or not.
pub fn for_each_free_graph(n: usize, forbidden: Forbidden, mut visit: impl FnMut(&Graph)) -> Result<()> {
    check_n(n)?;
    let space = Space::new(n, forbidden);
    let start = State {
        adj: [0; MAX_SEARCH_N],
        chosen: 0,
    };
    dfs(&space, start, 0, space.edges.len(), &mut |st: &State| visit(&space.graph(st.chosen)));
    Ok(())
}

/// Exact st(n, forbidden) by exhaustive labeled enumeration.
pub fn exhaustive_st(n: usize, forbidden: Forbidden, options: SearchOptions) -> Result<SearchResult> {
    check_n(n)?;
    let space = Space::new(n, forbidden);
    let total = space.edges.len();
    let depth = options.split_depth.min(total);
    let start = State {
        adj: [0; MAX_SEARCH_N],
        chosen: 0,
    };
    let mut prefixes = Vec::new();
    dfs(&space, start, 0, depth, &mut |st: &State| prefixes.push(*st));

    let run = |st: &State| {
        let mut part = Partial::empty();
        dfs(&space, *st, depth, total, &mut |leaf: &State| {
            if options.maximal_only && !space.is_maximal(leaf) {
                return;
            }
            part.examined += 1;
            part.offer(space.tau(leaf), leaf.chosen);
        });
        part
    };
    let workers = options.workers.max(1);
    let combined = if workers == 1 {
        prefixes.iter().map(run).fold(Partial::empty(), Partial::merge)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        pool.install(|| {
            prefixes
                .par_iter()
                .map(run)
                .collect::<Vec<_>>()
                .into_iter()
                .fold(Partial::empty(), Partial::merge)
        })
    };

    let (max_tau, chosen) = combined.best.expect("the empty graph is always a leaf");
    let max_tau = BigUint::from(max_tau);
    let witness_graph = space.graph(chosen);
    assert!(witness_graph.is_connected(), "witness must be connected");
    assert!(forbidden.admits(&witness_graph), "witness must be {forbidden}-free");
    assert_eq!(tau(&witness_graph, None).value, max_tau, "witness tau must match");
    Ok(SearchResult {
        n,
        forbidden,
        max_tau,
        witness: witness_graph.to_edge_list(),
        graphs_examined: combined.examined,
        maximal_only: options.maximal_only,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WarmupReport {
    pub n: usize,
    #[serde(with = "crate::report::decimal")]
    pub max_tau: BigUint,
    #[serde(with = "crate::report::decimal")]
    pub bipartite_tau: BigUint,
    pub guess_holds: bool,
    pub witness: Vec<(usize, usize)>,
}

/// Compares st(n, C3) with tau of the balanced complete bipartite graph.
pub fn verify_warmup_guess(n: usize, options: SearchOptions) -> Result<WarmupReport> {
    check_n(n)?;
    if n < 4 {
        return Err(Error::InvalidArgument(format!("warm-up comparison needs n >= 4, got {n}")));
    }
    let res = exhaustive_st(n, Forbidden::C3, options)?;
    let bipartite_tau = tau_complete_bipartite((n / 2) as u32, n.div_ceil(2) as u32);
    Ok(WarmupReport {
        n,
        guess_holds: res.max_tau == bipartite_tau,
        max_tau: res.max_tau,
        bipartite_tau,
        witness: res.witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(mask: u32) -> Vec<u32> {
        (0..32).filter(|i| mask >> i & 1 == 1).collect()
    }

    #[test]
    fn lex_cmp_matches_sequence_order() {
        for a in 0u32..64 {
            for b in 0u32..64 {
                assert_eq!(lex_cmp(a, b), seq(a).cmp(&seq(b)), "{a:b} vs {b:b}");
            }
        }
    }

    #[test]
    fn word_tau_matches_big_engine() {
        let space = Space::new(6, Forbidden::C4);
        let mut st = State {
            adj: [0; MAX_SEARCH_N],
            chosen: 0,
        };
        for i in [0, 4, 5, 9, 12, 14] {
            st = space.add(&st, i);
        }
        let g = space.graph(st.chosen);
        assert_eq!(BigUint::from(space.tau(&st)), tau(&g, None).value);
    }

    #[test]
    fn small_instances() {
        let r = exhaustive_st(4, Forbidden::C4, SearchOptions::default()).unwrap();
        // The diamond contains a 4-cycle, so the best is a triangle with a pendant edge.
        assert_eq!(r.max_tau, BigUint::from(3u32));
        assert_eq!(r.witness, vec![(0, 1), (0, 2), (0, 3), (1, 2)]);
        let g = Graph::from_edge_list(4, &r.witness).unwrap();
        assert!(g.is_c4_free() && !g.is_c3_free());

        let r = exhaustive_st(4, Forbidden::C3, SearchOptions::default()).unwrap();
        assert_eq!(r.max_tau, BigUint::from(4u32));
        assert_eq!(r.witness, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);

        let r = exhaustive_st(2, Forbidden::C4, SearchOptions::default()).unwrap();
        assert_eq!(r.max_tau, BigUint::from(1u32));
        assert_eq!(r.graphs_examined, 2);
    }

    #[test]
    fn size_limits() {
        assert_eq!(
            exhaustive_st(9, Forbidden::C4, SearchOptions::default()),
            Err(Error::InstanceTooLarge { n: 9, cap: 8 })
        );
        assert!(exhaustive_st(1, Forbidden::C4, SearchOptions::default()).is_err());
        assert!(verify_warmup_guess(3, SearchOptions::default()).is_err());
    }

    #[test]
    fn forbidden_parsing() {
        assert_eq!("c4".parse::<Forbidden>().unwrap(), Forbidden::C4);
        assert_eq!("C3".parse::<Forbidden>().unwrap(), Forbidden::C3);
        assert!("c5".parse::<Forbidden>().is_err());
    }
}
