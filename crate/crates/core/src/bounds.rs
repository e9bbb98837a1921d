//! Degree-envelope upper bounds on spanning-tree counts.
//!
//! Everything rational is kept exact. Logarithmic values appear only where an
//! `exp(-2t/(q+2))` deficit factor makes the bound transcendental.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::is_prime_power;
use crate::graph::Graph;
use crate::precise::{ln_biguint, ln_rational, sqrt_fixed, Fixed};

/// Smallest q for which the C4 edge budget `q(q+1)^2 / 2` is a theorem.
pub const FUREDI_MIN_Q: u64 = 14;

pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// A reduced rational with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        ExactRational(BigRational::new(numer, denom))
    }

    pub fn from_integers(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Self::new(numer.into(), denom.into())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// `true` when `x <= self`.
    pub fn bounds_integer(&self, x: &BigUint) -> bool {
        BigRational::from_integer(BigInt::from(x.clone())) <= self.0
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

#[derive(Debug, Clone)]
pub struct LogBound {
    pub natural_log_value: Fixed,
    pub precision_bits: u32,
    pub exact_part: Option<ExactRational>,
    pub deficit_exponent: Option<BigRational>,
}

/// `S = n a + r` with `0 <= r < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeParams {
    pub n: u64,
    pub s: u64,
    pub a: u64,
    pub r: u64,
}

impl EnvelopeParams {
    pub fn new(n: u64, s: u64) -> Self {
        assert!(n >= 1, "envelope needs n >= 1");
        EnvelopeParams {
            n,
            s,
            a: s / n,
            r: s % n,
        }
    }
}

/// `prod (deg(v) + 1) / n^2`.
pub fn kns_bound(g: &Graph) -> ExactRational {
    let product: BigUint = g.degrees().degs.iter().map(|&d| BigUint::from(d + 1)).product();
    let n = BigUint::from(g.n());
    ExactRational::new(product.into(), (&n * &n).into())
}

/// Maximum of `prod (d_i + 1)` over nonnegative integer sequences of length `n` summing to `s`.
pub fn envelope_p(n: u64, s: u64) -> BigUint {
    let EnvelopeParams { a, r, .. } = EnvelopeParams::new(n, s);
    num_traits::pow(BigUint::from(a + 2), r as usize) * num_traits::pow(BigUint::from(a + 1), (n - r) as usize)
}

/// `P(S - 1) / P(S)` exactly.
pub fn ratio_step(n: u64, s: u64) -> ExactRational {
    assert!(s >= 1, "ratio step needs S >= 1");
    ExactRational::new(envelope_p(n, s - 1).into(), envelope_p(n, s).into())
}

/// `(a + 1) / (a + 2)` with `a = floor(S / n)`.
pub fn ratio_ceiling(n: u64, s: u64) -> ExactRational {
    let a = s / n;
    ExactRational::from_integers(a + 1, a + 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FurediBudget {
    pub edges: u64,
    /// Whether `q >= 14`, where the budget is a proven bound on ex(n, C4).
    pub valid: bool,
}

pub fn furedi_budget(q: u64) -> FurediBudget {
    assert!(q >= 1);
    FurediBudget {
        edges: q * (q + 1) * (q + 1) / 2,
        valid: q >= FUREDI_MIN_Q,
    }
}

fn check_q(q: u64) -> Result<()> {
    if q < FUREDI_MIN_Q {
        return Err(Error::HypothesisViolated(format!("q >= {FUREDI_MIN_Q} required, got q = {q}")));
    }
    Ok(())
}

/// `(q+1)^(q+1) (q+2)^(n-q-1) / n^2`, evaluated for any `q >= 1`.
pub fn c4_bound_formula(q: u64) -> ExactRational {
    assert!(q >= 1);
    let n = q * q + q + 1;
    let numer = num_traits::pow(BigUint::from(q + 1), (q + 1) as usize)
        * num_traits::pow(BigUint::from(q + 2), (n - q - 1) as usize);
    ExactRational::new(numer.into(), BigInt::from(n * n))
}

/// Upper bound on tau(G) for every C4-free G on `q^2 + q + 1` vertices, `q >= 14`.
pub fn c4_upper_bound(q: u64) -> Result<ExactRational> {
    check_q(q)?;
    Ok(c4_bound_formula(q))
}

/// The deficit bound without the range checks on `q` and `t`.
pub fn deficit_formula(q: u64, t: u64, precision_bits: u32) -> LogBound {
    let exact = c4_bound_formula(q);
    let exponent = BigRational::new(BigInt::from(-2 * t as i64), BigInt::from(q + 2));
    let work = precision_bits + 4;
    let value = ln_rational(exact.as_ratio(), work)
        .add(&Fixed::from_rational(&exponent, work))
        .with_frac_bits(precision_bits + 2);
    LogBound {
        natural_log_value: value,
        precision_bits,
        exact_part: Some(exact),
        deficit_exponent: Some(exponent),
    }
}

/// Bound for C4-free graphs with `q(q+1)^2/2 - t` edges: the C4 upper bound times `exp(-2t/(q+2))`.
pub fn deficit_bound(q: u64, t: u64, precision_bits: u32) -> Result<LogBound> {
    check_q(q)?;
    if 2 * t > q * q {
        return Err(Error::HypothesisViolated(format!(
            "deficit t must satisfy 0 <= t <= q^2/2 = {}, got t = {t}",
            q * q / 2
        )));
    }
    Ok(deficit_formula(q, t, precision_bits))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Path2Check {
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

/// `sum_v C(deg v, 2) <= (t - 1) C(n, 2)`.
pub fn path2_inequality_check(g: &Graph, t: u64) -> Path2Check {
    assert!(t >= 2, "K_{{2,t}} needs t >= 2");
    let choose2 = |x: u64| x * x.saturating_sub(1) / 2;
    let lhs = g.degrees().degs.iter().map(|&d| choose2(d as u64)).sum();
    let rhs = (t - 1) * choose2(g.n() as u64);
    Path2Check {
        lhs,
        rhs,
        holds: lhs <= rhs,
    }
}

/// `P(n, 2 E) / n^2`: the st(n, H) envelope for any H with `ex(n, H) <= E`.
pub fn generic_envelope_bound(n: u64, edge_budget: u64) -> ExactRational {
    ExactRational::new(envelope_p(n, 2 * edge_budget).into(), BigInt::from(n * n))
}

/// Smallest integer `E` with `E >= x` for the real `x` described by `at_least`:
/// `at_least(E)` must be monotone and true iff `E >= x`.
fn exact_ceiling(estimate: f64, at_least: impl Fn(&BigInt) -> bool) -> BigInt {
    let mut e = BigInt::from(estimate.ceil().max(0.0) as u64);
    while !at_least(&e) {
        e += 1;
    }
    while e.is_positive() && at_least(&(&e - 1)) {
        e -= 1;
    }
    e
}

/// `ceil(sqrt(t-1)/2 * n^(3/2) + c n)`, the K_{2,t} edge budget with linear slack `c >= 0`.
pub fn k2t_edge_budget(n: u64, t: u64, slack: &BigRational) -> Result<u64> {
    if t < 2 {
        return Err(Error::InvalidArgument("K_{2,t} needs t >= 2".into()));
    }
    if slack.is_negative() {
        return Err(Error::InvalidArgument("linear slack must be nonnegative".into()));
    }
    let x = BigRational::from_integer(BigInt::from(t - 1) * num_traits::pow(BigInt::from(n), 3));
    let linear = slack * BigRational::from_integer(BigInt::from(n));
    let estimate = 0.5 * ((t - 1) as f64).sqrt() * (n as f64).powf(1.5) + linear.to_f64().unwrap_or(0.0);
    // E >= sqrt(X)/2 + c n  <=>  E - c n >= 0 and 4 (E - c n)^2 >= X.
    let e = exact_ceiling(estimate, |e| {
        let d = BigRational::from_integer(e.clone()) - &linear;
        !d.is_negative() && BigRational::from_integer(4.into()) * &d * &d >= x
    });
    e.to_u64()
        .ok_or_else(|| Error::InvalidArgument("edge budget overflow".into()))
}

/// `ceil(C_k n^(1+1/k) + c n)`, the C_{2k} edge budget with constant `C_k > 0` and slack `c >= 0`.
pub fn c2k_edge_budget(n: u64, k: u32, ck: &BigRational, slack: &BigRational) -> Result<u64> {
    if k < 2 {
        return Err(Error::InvalidArgument("C_{2k} needs k >= 2".into()));
    }
    if n == 0 {
        return Ok(0);
    }
    if !ck.is_positive() || slack.is_negative() {
        return Err(Error::InvalidArgument("need C_k > 0 and slack >= 0".into()));
    }
    let nr = BigRational::from_integer(BigInt::from(n));
    let linear = slack * &nr;
    let estimate = ck.to_f64().unwrap_or(0.0) * (n as f64).powf(1.0 + 1.0 / k as f64)
        + linear.to_f64().unwrap_or(0.0);
    // E >= C_k n^(1+1/k) + c n  <=>  y = (E - c n) / (C_k n) >= 0 and y^k >= n.
    let e = exact_ceiling(estimate, |e| {
        let y = (BigRational::from_integer(e.clone()) - &linear) / (ck * &nr);
        !y.is_negative() && num_traits::pow(y, k as usize) >= nr
    });
    e.to_u64()
        .ok_or_else(|| Error::InvalidArgument("edge budget overflow".into()))
}

/// Lower and upper logs of st(n, C4) at `n = q^2 + q + 1`, against `(n/2) ln n`.
#[derive(Debug, Clone)]
pub struct LeadingTermReport {
    pub q: u64,
    pub n: u64,
    pub log_lower: Fixed,
    pub log_upper: Fixed,
    pub half_n_log_n: Fixed,
    /// `log_lower - half_n_log_n`.
    pub residual_lower: Fixed,
    /// `log_upper - half_n_log_n`.
    pub residual_upper: Fixed,
    /// `sqrt(n) ln n`, the scale of the second-order term.
    pub sqrt_n_log_n: Fixed,
    /// Exact integer comparison `n^2 n^((n-3)/2) <= n^2 c4_upper_bound`.
    pub lower_le_upper: bool,
}

impl LeadingTermReport {
    pub fn normalized_residual_lower(&self) -> f64 {
        self.residual_lower.to_f64() / self.sqrt_n_log_n.to_f64()
    }

    pub fn normalized_residual_upper(&self) -> f64 {
        self.residual_upper.to_f64() / self.sqrt_n_log_n.to_f64()
    }
}

/// Compares the polarity-graph lower bound against the C4 upper bound, with exact ordering.
pub fn lower_le_upper_exact(q: u64) -> bool {
    let n = q * q + q + 1;
    let lower = num_traits::pow(BigUint::from(n), 2 + ((n - 3) / 2) as usize);
    let bound = c4_bound_formula(q);
    // bound = numer / n^2 in lowest terms; compare n^2 * n^((n-3)/2) with n^2 * bound.
    let upper = bound.numerator().magnitude() * (BigUint::from(n * n) / bound.denominator().magnitude());
    debug_assert!((BigUint::from(n * n) % bound.denominator().magnitude()).is_zero());
    lower <= upper
}

pub fn leading_term_formula(q: u64, precision_bits: u32) -> LeadingTermReport {
    let n = q * q + q + 1;
    let work = precision_bits + 24;
    let ln_n = ln_biguint(&BigUint::from(n), work);
    let half_n = BigRational::new(BigInt::from(n), BigInt::from(2));
    let exponent = BigRational::new(BigInt::from(n - 3), BigInt::from(2));
    let round = |x: &BigRational| Fixed::from_rational(x, precision_bits + 2);
    let log_lower = round(&(ln_n.to_rational() * exponent));
    let half_n_log_n = round(&(ln_n.to_rational() * half_n));
    let log_upper = ln_rational(c4_bound_formula(q).as_ratio(), precision_bits);
    let sqrt_n = sqrt_fixed(&Fixed::from_rational(&BigRational::from_integer(n.into()), 4), work);
    let sqrt_n_log_n = round(&(sqrt_n.to_rational() * ln_n.to_rational()));
    LeadingTermReport {
        q,
        n,
        residual_lower: log_lower.sub(&half_n_log_n),
        residual_upper: log_upper.sub(&half_n_log_n),
        log_lower,
        log_upper,
        half_n_log_n,
        sqrt_n_log_n,
        lower_le_upper: lower_le_upper_exact(q),
    }
}

pub fn leading_term_report(q: u64, precision_bits: u32) -> Result<LeadingTermReport> {
    check_q(q)?;
    if !is_prime_power(q) {
        return Err(Error::NotAPrimePower(q));
    }
    Ok(leading_term_formula(q, precision_bits))
}
