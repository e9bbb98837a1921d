//! Exact spanning-tree counts.
//!
//! `tau` evaluates the Laplacian cofactor with row and column 0 deleted, using
//! either fraction-free (Bareiss) elimination over big integers or a
//! multi-modular determinant reconstructed by Chinese remaindering.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::prime_power_decomposition;
use crate::graph::Graph;
use crate::plane::PolarityGraphBundle;

/// Square integer matrix, row-major.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Vertex count at and below which `tau` defaults to Bareiss.
pub const BAREISS_CROSSOVER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Bareiss,
    Crt,
    ClosedFormBipartite,
    ClosedFormPolarity,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Engine::Bareiss => "bareiss",
            Engine::Crt => "crt",
            Engine::ClosedFormBipartite => "closed_form_bipartite",
            Engine::ClosedFormPolarity => "closed_form_polarity",
        };
        f.write_str(s)
    }
}

/// Determinant engines usable on arbitrary graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetEngine {
    Bareiss,
    Crt,
}

impl From<DetEngine> for Engine {
    fn from(e: DetEngine) -> Self {
        match e {
            DetEngine::Bareiss => Engine::Bareiss,
            DetEngine::Crt => Engine::Crt,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCount {
    pub value: BigUint,
    pub engine: Engine,
}

/// Laplacian `D - A` with row and column 0 removed.
pub fn laplacian_minor(g: &Graph) -> IntMatrix {
    let n = g.n();
    let mut m = vec![vec![BigInt::zero(); n - 1]; n - 1];
    for v in 1..n {
        m[v - 1][v - 1] = BigInt::from(g.degree(v));
        for w in g.neighbors(v) {
            if w != 0 {
                m[v - 1][w - 1] = BigInt::from(-1);
            }
        }
    }
    m
}

pub fn tau(g: &Graph, engine: Option<DetEngine>) -> TreeCount {
    let engine = engine.unwrap_or(if g.n() <= BAREISS_CROSSOVER {
        DetEngine::Bareiss
    } else {
        DetEngine::Crt
    });
    let value = if g.n() == 1 {
        BigUint::one()
    } else if !g.is_connected() {
        BigUint::zero()
    } else {
        let minor = laplacian_minor(g);
        let det = match engine {
            DetEngine::Bareiss => det_bareiss(&minor),
            DetEngine::Crt => det_crt(&minor),
        };
        det.to_biguint().expect("Laplacian cofactor is nonnegative")
    };
    TreeCount {
        value,
        engine: engine.into(),
    }
}

/// Fraction-free Gaussian elimination. Every division is exact.
pub fn det_bareiss(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Word-sized Bareiss; `None` if any intermediate overflows `i128`.
pub fn det_bareiss_i128(m: &mut [Vec<i128>]) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let i = (k + 1..n).find(|&i| m[i][k] != 0)?;
            m.swap(k, i);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j]
                    .checked_mul(m[k][k])?
                    .checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                debug_assert_eq!(num % prev, 0);
                m[i][j] = num / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Some(if negate { -m[n - 1][n - 1] } else { m[n - 1][n - 1] })
}

/// Spanning-tree count through the word-sized path, falling back to big integers.
pub fn tau_small(g: &Graph) -> BigUint {
    let n = g.n();
    if n == 1 {
        return BigUint::one();
    }
    if !g.is_connected() {
        return BigUint::zero();
    }
    let mut m = vec![vec![0i128; n - 1]; n - 1];
    for v in 1..n {
        m[v - 1][v - 1] = g.degree(v) as i128;
        for w in g.neighbors(v) {
            if w != 0 {
                m[v - 1][w - 1] = -1;
            }
        }
    }
    match det_bareiss_i128(&mut m) {
        Some(d) => BigUint::from(d as u128),
        None => tau(g, Some(DetEngine::Bareiss)).value,
    }
}

// ---------------------------------------------------------------------------
// Multi-modular determinant

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &b in &BASES {
        let mut x = powmod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below 2^63, in decreasing order.
pub fn word_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut c = (1u64 << 63) - 1;
    while primes.len() < count {
        if is_prime_u64(c) {
            primes.push(c);
        }
        c -= 2;
    }
    primes
}

/// Montgomery arithmetic modulo an odd `p < 2^63`, with `R = 2^64`.
#[derive(Clone, Copy)]
struct Montgomery {
    p: u64,
    neg_inv: u64,
    r2: u64,
}

impl Montgomery {
    fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < 1 << 63);
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        Montgomery {
            p,
            neg_inv: inv.wrapping_neg(),
            r2: mulmod(r, r, p),
        }
    }

    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    fn from_mont(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }
}

/// Determinant of `m` modulo the prime `p`.
pub fn det_mod_prime(m: &[Vec<BigInt>], p: u64) -> u64 {
    let n = m.len();
    let big_p = BigInt::from(p);
    let mont = Montgomery::new(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let r = x.mod_floor(&big_p).to_u64().expect("residue fits a word");
                    mont.to_mont(r)
                })
                .collect()
        })
        .collect();
    let mut det = mont.to_mont(1);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if piv != k {
            a.swap(k, piv);
            det = if det == 0 { 0 } else { p - det };
        }
        det = mont.mul(det, a[k][k]);
        let inv = mont.to_mont(powmod(mont.from_mont(a[k][k]), p - 2, p));
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            if row[k] == 0 {
                continue;
            }
            let f = mont.mul(row[k], inv);
            for j in k + 1..n {
                let t = mont.mul(f, pivot_row[j]);
                let x = row[j];
                row[j] = if x >= t { x - t } else { x + p - t };
            }
            row[k] = 0;
        }
    }
    mont.from_mont(det)
}

/// Square of the Hadamard bound: the product of squared row norms.
pub fn hadamard_bound_squared(m: &[Vec<BigInt>]) -> BigUint {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let a = x.magnitude();
                    a * a
                })
                .sum::<BigUint>()
        })
        .product()
}

/// Primes whose product exceeds twice the Hadamard bound of `m`.
pub fn crt_primes_for(m: &[Vec<BigInt>]) -> Vec<u64> {
    let h2 = hadamard_bound_squared(m);
    let target = h2 * 4u32;
    let mut primes = Vec::new();
    let mut product = BigUint::one();
    let mut batch = 8;
    // Generate in growing batches; the fixed order keeps the choice reproducible.
    loop {
        let candidates = word_primes(primes.len() + batch);
        for &p in &candidates[primes.len()..] {
            if &product * &product > target {
                return primes;
            }
            product *= p;
            primes.push(p);
        }
        if &product * &product > target {
            return primes;
        }
        batch *= 2;
    }
}

/// Multi-modular determinant reconstructed in the symmetric range.
pub fn det_crt(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    if m.iter().any(|row| row.iter().all(Zero::is_zero)) {
        return BigInt::zero();
    }
    let primes = crt_primes_for(m);
    let residues: Vec<u64> = primes.par_iter().map(|&p| det_mod_prime(m, p)).collect();
    let (x, modulus) = crt_combine(&primes, &residues);
    let half = &modulus >> 1u32;
    let x = BigInt::from_biguint(Sign::Plus, x);
    if x.magnitude() > &half {
        x - BigInt::from_biguint(Sign::Plus, modulus)
    } else {
        x
    }
}

/// Incremental (Garner-style) Chinese remaindering. Returns `(x, M)` with `0 <= x < M`.
pub fn crt_combine(primes: &[u64], residues: &[u64]) -> (BigUint, BigUint) {
    let mut x = BigUint::zero();
    let mut modulus = BigUint::one();
    for (&p, &r) in primes.iter().zip(residues) {
        let x_mod = (&x % p).to_u64().unwrap();
        let m_mod = (&modulus % p).to_u64().unwrap();
        let diff = (r % p + p - x_mod) % p;
        let t = mulmod(diff, powmod(m_mod, p - 2, p), p);
        x += &modulus * t;
        modulus *= p;
    }
    (x, modulus)
}

pub fn tau_complete_bipartite(a: u32, b: u32) -> BigUint {
    assert!(a >= 1 && b >= 1, "K_{{a,b}} needs a, b >= 1");
    num_traits::pow(BigUint::from(a), (b - 1) as usize) * num_traits::pow(BigUint::from(b), (a - 1) as usize)
}

/// `n^((n-3)/2)` with `n = q^2 + q + 1`.
pub fn tau_er_closed_form(q: u64) -> Result<BigUint> {
    prime_power_decomposition(q)?;
    let n = q * q + q + 1;
    Ok(num_traits::pow(BigUint::from(n), ((n - 3) / 2) as usize))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub q: u64,
    pub n: usize,
    pub identity_holds: bool,
    pub trace: u64,
    pub mult_plus: usize,
    pub mult_minus: usize,
}

/// Checks `A^2 = J + qI` for the looped adjacency matrix and derives the
/// multiplicities of `+sqrt(q)` and `-sqrt(q)` from the trace.
pub fn verify_polarity_spectrum(bundle: &PolarityGraphBundle) -> Result<SpectralReport> {
    let g = &bundle.simple_graph;
    let n = g.n();
    let q = bundle.q();
    let mut rows: Vec<Vec<u64>> = (0..n).map(|v| g.row(v).to_vec()).collect();
    for &v in &bundle.absolute_indices {
        rows[v][v / 64] |= 1 << (v % 64);
    }
    for i in 0..n {
        for j in i..n {
            let entry: u64 = rows[i]
                .iter()
                .zip(&rows[j])
                .map(|(a, b)| (a & b).count_ones() as u64)
                .sum();
            let expected = if i == j { q + 1 } else { 1 };
            if entry != expected {
                return Err(Error::IdentityFailed {
                    row: i,
                    col: j,
                    found: entry,
                    expected,
                });
            }
        }
    }
    let trace = bundle.absolute_indices.len() as u64;
    // trace = (q + 1) + sqrt(q) * (mult_plus - mult_minus), mult_plus + mult_minus = n - 1.
    let excess = trace as i64 - (q as i64 + 1);
    let diff = if excess == 0 {
        0
    } else {
        let s = (q as f64).sqrt().round() as i64;
        if s * s != q as i64 || excess % s != 0 {
            return Err(Error::HypothesisViolated(format!(
                "trace {trace} is incompatible with eigenvalues q+1 and +-sqrt({q})"
            )));
        }
        excess / s
    };
    let total = n as i64 - 1;
    if (total + diff) % 2 != 0 || diff.abs() > total {
        return Err(Error::HypothesisViolated(format!(
            "trace {trace} gives non-integral multiplicities"
        )));
    }
    Ok(SpectralReport {
        q,
        n,
        identity_holds: true,
        trace,
        mult_plus: ((total + diff) / 2) as usize,
        mult_minus: ((total - diff) / 2) as usize,
    })
}
