//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use kturan::Graph;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// Spanning trees by Gaussian elimination over the rationals on the reduced Laplacian.
pub fn tau_rational(n: usize, edges: &[(usize, usize)]) -> BigUint {
    if n == 1 {
        return BigUint::one();
    }
    let mut lap = vec![vec![BigRational::zero(); n]; n];
    for &(u, v) in edges {
        lap[u][u] += BigRational::one();
        lap[v][v] += BigRational::one();
        lap[u][v] -= BigRational::one();
        lap[v][u] -= BigRational::one();
    }
    let mut m: Vec<Vec<BigRational>> = lap[1..].iter().map(|r| r[1..].to_vec()).collect();
    let k = n - 1;
    let mut det = BigRational::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return BigUint::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for r in c + 1..k {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &m[c][c];
            for j in c..k {
                let d = &f * &m[c][j];
                m[r][j] -= d;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer().to_biguint().expect("nonnegative")
}

pub fn tau_graph(g: &Graph) -> BigUint {
    tau_rational(g.n(), &g.to_edge_list())
}

/// Deletion-contraction on a multigraph given by an edge list; loops are dropped.
pub fn tau_deletion_contraction(n: usize, edges: &[(usize, usize)]) -> BigUint {
    let edges: Vec<(usize, usize)> = edges.iter().copied().filter(|&(u, v)| u != v).collect();
    if n == 1 {
        return BigUint::one();
    }
    let Some(&(u, v)) = edges.first() else {
        return BigUint::zero();
    };
    let rest = &edges[1..];
    let deleted = tau_deletion_contraction(n, rest);
    // Contract v into u and relabel the last vertex to v.
    let last = n - 1;
    let relabel = |x: usize| {
        let x = if x == v { u } else { x };
        if x == last {
            v
        } else {
            x
        }
    };
    let contracted: Vec<(usize, usize)> = rest.iter().map(|&(a, b)| (relabel(a), relabel(b))).collect();
    deleted + tau_deletion_contraction(n - 1, &contracted)
}

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in edges {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Any 4-cycle, found by testing every ordered quadruple.
pub fn has_c4_naive(a: &[Vec<bool>]) -> bool {
    let n = a.len();
    for w in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let distinct = w != x && w != y && w != z && x != y && x != z && y != z;
                    if distinct && a[w][x] && a[x][y] && a[y][z] && a[z][w] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

pub fn has_c3_naive(a: &[Vec<bool>]) -> bool {
    let n = a.len();
    (0..n).any(|x| (x + 1..n).any(|y| (y + 1..n).any(|z| a[x][y] && a[y][z] && a[x][z])))
}

pub fn connected_naive(a: &[Vec<bool>]) -> bool {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if a[v][w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Unpruned search: every edge subset, scored with the rational oracle.
pub struct NaiveBest {
    pub max_tau: BigUint,
    pub witness: Vec<(usize, usize)>,
    pub graphs_free: u64,
}

pub fn naive_search(n: usize, forbid_c3: bool) -> NaiveBest {
    let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut best = NaiveBest {
        max_tau: BigUint::zero(),
        witness: Vec::new(),
        graphs_free: 0,
    };
    let mut have = false;
    for mask in 0u64..1 << all.len() {
        let edges: Vec<(usize, usize)> = (0..all.len()).filter(|&i| mask >> i & 1 == 1).map(|i| all[i]).collect();
        let a = adjacency(n, &edges);
        let bad = if forbid_c3 { has_c3_naive(&a) } else { has_c4_naive(&a) };
        if bad {
            continue;
        }
        best.graphs_free += 1;
        if !connected_naive(&a) {
            continue;
        }
        let t = tau_rational(n, &edges);
        if !have || t > best.max_tau || (t == best.max_tau && edges < best.witness) {
            best.max_tau = t;
            best.witness = edges;
            have = true;
        }
    }
    best
}

/// Maximum of prod (d_i + 1) over all compositions of `s` into `n` nonnegative parts.
pub fn brute_envelope(n: u64, s: u64) -> BigUint {
    fn go(left_parts: u64, left_sum: u64) -> BigUint {
        if left_parts == 1 {
            return BigUint::from(left_sum + 1);
        }
        (0..=left_sum)
            .map(|d| BigUint::from(d + 1) * go(left_parts - 1, left_sum - d))
            .max()
            .expect("nonempty range")
    }
    go(n, s)
}

/// Random connected graph: a random labelled tree plus each remaining pair with probability `p`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let mut g = Graph::from_edge_list(n, &edges).expect("valid tree");
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g = g.with_edge(u, v).expect("valid edge");
            }
        }
    }
    g
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

pub fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

pub fn pow(base: u64, e: u64) -> BigUint {
    num_traits::pow(BigUint::from(base), e as usize)
}

pub fn rat(a: impl Into<BigInt>, b: impl Into<BigInt>) -> BigRational {
    BigRational::new(a.into(), b.into())
}
