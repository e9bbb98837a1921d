//! Arithmetic in GF(p^k).
//!
//! Elements are dense coefficient vectors of length `k` over `Z_p`, with the
//! constant term first. Multiplication reduces modulo a fixed monic
//! irreducible polynomial, chosen as the lexicographically smallest one
//! (coefficients compared from the constant term upward).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus, constant term first, length `k + 1`.
    modulus: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    coeffs: Vec<u64>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Splits `q` into `(p, k)` with `q = p^k`, or fails if `q` is not a prime power.
pub fn prime_power_decomposition(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotAPrimePower(q));
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(Error::NotAPrimePower(q));
    }
    Ok((p, k))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power_decomposition(q).is_ok()
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// Builds GF(q) with the lexicographically smallest monic irreducible modulus.
pub fn make_field(q: u64) -> Result<FieldSpec> {
    let (p, k) = prime_power_decomposition(q)?;
    let modulus = smallest_irreducible(p, k as usize);
    Ok(FieldSpec { p, k, q, modulus })
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            coeffs: vec![0; self.k as usize],
        }
    }

    pub fn one(&self) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[0] = 1;
        e
    }

    /// The element whose base-`p` digits (constant term least significant) spell `index`.
    pub fn element(&self, index: u64) -> FieldElem {
        assert!(index < self.q, "element index {index} out of range for GF({})", self.q);
        let mut coeffs = Vec::with_capacity(self.k as usize);
        let mut rest = index;
        for _ in 0..self.k {
            coeffs.push(rest % self.p);
            rest /= self.p;
        }
        FieldElem { coeffs }
    }

    pub fn index_of(&self, a: &FieldElem) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Builds an element from raw coefficients, reducing each mod `p`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElem {
        assert_eq!(coeffs.len(), self.k as usize, "coefficient vector must have length k");
        FieldElem {
            coeffs: coeffs.iter().map(|&c| c % self.p).collect(),
        }
    }

    /// All `q` elements; index 0 is zero and index 1 is one.
    pub fn enumerate_elements(&self) -> Vec<FieldElem> {
        (0..self.q).map(|i| self.element(i)).collect()
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + self.p - y) % self.p)
                .collect(),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let k = self.k as usize;
        let p = self.p;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // Reduce top-down using x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1}).
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let t = c * self.modulus[i] % p;
                prod[d - k + i] = (prod[d - k + i] + p - t) % p;
            }
        }
        prod.truncate(k);
        FieldElem { coeffs: prod }
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero(self.q));
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Renders an element as a polynomial in `x` (or a plain residue when k = 1).
    pub fn format(&self, a: &FieldElem) -> String {
        if self.k == 1 {
            return a.coeffs[0].to_string();
        }
        format_poly(&a.coeffs)
    }
}

pub fn format_poly(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (d, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (d, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (d, 1) => format!("x^{d}"),
            (d, c) => format!("{c}x^{d}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Remainder of `a` modulo the monic polynomial `m` over `Z_p` (constant term first).
fn poly_rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let t = c * mi % p;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomials of degree `d`, in lexicographic order of the coefficient
/// vector read from the constant term upward.
fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count).map(move |idx| {
        let mut coeffs = vec![0u64; d + 1];
        let mut rest = idx;
        // The constant term is the most significant digit of the order.
        for i in (0..d).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs[d] = 1;
        coeffs
    })
}

/// Irreducibility by trial division with every monic polynomial of degree at most `deg / 2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for g in monic_polys(p, d) {
            if poly_rem_monic(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    monic_polys(p, k)
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists over GF(p)")
}
