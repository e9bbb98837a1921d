//! Binary fixed-point numbers and natural logarithms of exact rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The value `mantissa / 2^frac_bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixed {
    mantissa: BigInt,
    frac_bits: u32,
}

impl Fixed {
    pub fn zero(frac_bits: u32) -> Self {
        Fixed {
            mantissa: BigInt::zero(),
            frac_bits,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    /// Nearest fixed-point value to `r`; error at most half an ulp.
    pub fn from_rational(r: &BigRational, frac_bits: u32) -> Self {
        let scaled = r.numer() << frac_bits;
        Fixed {
            mantissa: div_round(&scaled, r.denom()),
            frac_bits,
        }
    }

    /// Rescales to `frac_bits`, rounding to nearest when bits are dropped.
    pub fn with_frac_bits(&self, frac_bits: u32) -> Self {
        let mantissa = match frac_bits.cmp(&self.frac_bits) {
            Ordering::Equal => self.mantissa.clone(),
            Ordering::Greater => &self.mantissa << (frac_bits - self.frac_bits),
            Ordering::Less => {
                let shift = self.frac_bits - frac_bits;
                div_round(&self.mantissa, &(BigInt::one() << shift))
            }
        };
        Fixed { mantissa, frac_bits }
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), BigInt::one() << self.frac_bits)
    }

    pub fn to_f64(&self) -> f64 {
        // Keep about 60 significant bits before converting.
        let excess = self.mantissa.bits().saturating_sub(60) as u32;
        let shift = excess.min(self.frac_bits);
        let m = (&self.mantissa >> shift).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(-((self.frac_bits - shift) as i32)) * 2f64.powi((excess - shift) as i32)
    }

    /// Decimal rendering rounded to `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = div_round(&(&self.mantissa * &scale), &(BigInt::one() << self.frac_bits));
        let neg = scaled.is_negative();
        let digits_str = scaled.magnitude().to_str_radix(10);
        let padded = format!("{digits_str:0>width$}", width = digits + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    fn aligned(&self, other: &Fixed) -> (BigInt, BigInt, u32) {
        let bits = self.frac_bits.max(other.frac_bits);
        (
            self.with_frac_bits(bits).mantissa,
            other.with_frac_bits(bits).mantissa,
            bits,
        )
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        let (a, b, frac_bits) = self.aligned(other);
        Fixed {
            mantissa: a + b,
            frac_bits,
        }
    }

    pub fn sub(&self, other: &Fixed) -> Fixed {
        let (a, b, frac_bits) = self.aligned(other);
        Fixed {
            mantissa: a - b,
            frac_bits,
        }
    }

    /// Exact comparison of the represented values.
    pub fn cmp_value(&self, other: &Fixed) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }

    /// `|self - other| < 2^-bits`, evaluated exactly.
    pub fn within(&self, other: &Fixed, bits: u32) -> bool {
        let diff = self.sub(other);
        let tol = BigInt::one() << diff.frac_bits.saturating_sub(bits);
        if diff.frac_bits < bits {
            return diff.mantissa.is_zero();
        }
        diff.mantissa.abs() < tol
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // About one decimal digit per 3.32 bits.
        let digits = (self.frac_bits as usize * 3) / 10;
        f.write_str(&self.to_decimal(digits))
    }
}

fn div_round(num: &BigInt, den: &BigInt) -> BigInt {
    // floor((2 num + den) / (2 den)) for den > 0.
    debug_assert!(den.is_positive());
    let two_num: BigInt = num << 1u32;
    let two_den: BigInt = den << 1u32;
    (two_num + den).div_floor(&two_den)
}

/// `atanh(z)` for `|z| < 1/2`, where `z = z_fixed / 2^w`; result scaled by `2^w`.
fn atanh_fixed(z_fixed: &BigInt, w: u32) -> BigInt {
    if z_fixed.is_negative() {
        return -atanh_fixed(&-z_fixed, w);
    }
    let z2 = (z_fixed * z_fixed) >> w;
    let mut power = z_fixed.clone();
    let mut sum = BigInt::zero();
    let mut denom = 1u32;
    while !power.is_zero() {
        sum += &power / denom;
        power = (&power * &z2) >> w;
        denom += 2;
    }
    sum
}

/// `ln 2` scaled by `2^w`, with error of a few ulps.
fn ln2_fixed(w: u32) -> BigInt {
    let third = (BigInt::one() << w) / 3;
    atanh_fixed(&third, w) << 1
}

/// Natural log of `num / den` with absolute error below `2^-bits`.
pub fn ln_ratio(num: &BigUint, den: &BigUint, bits: u32) -> Fixed {
    assert!(!num.is_zero() && !den.is_zero(), "ln needs a positive argument");
    let e = num.bits() as i64 - den.bits() as i64;
    let (n, d) = if e >= 0 {
        (num.clone(), den << (e as u64))
    } else {
        (num << ((-e) as u64), den.clone())
    };
    // num / den = 2^e * (n / d) with n / d in (1/2, 2).
    let guard = 40 + 64 - (e.unsigned_abs().leading_zeros());
    let w = bits + guard;
    let n = BigInt::from_biguint(Sign::Plus, n);
    let d = BigInt::from_biguint(Sign::Plus, d);
    let z = div_round(&((&n - &d) << w), &(&n + &d));
    let mut total = atanh_fixed(&z, w) << 1;
    if e != 0 {
        total += ln2_fixed(w) * BigInt::from(e);
    }
    Fixed {
        mantissa: total,
        frac_bits: w,
    }
    .with_frac_bits(bits + 2)
}

pub fn ln_biguint(x: &BigUint, bits: u32) -> Fixed {
    ln_ratio(x, &BigUint::one(), bits)
}

pub fn ln_rational(r: &BigRational, bits: u32) -> Fixed {
    assert!(r.is_positive(), "ln needs a positive argument");
    ln_ratio(r.numer().magnitude(), r.denom().magnitude(), bits)
}

/// `sqrt(x)` for `x >= 0`, with absolute error below `2^-bits`.
pub fn sqrt_fixed(x: &Fixed, bits: u32) -> Fixed {
    assert!(!x.mantissa.is_negative(), "sqrt needs a nonnegative argument");
    let w = bits + 2;
    // sqrt(m / 2^f) * 2^w = sqrt(m * 2^(2w - f)).
    let x = x.with_frac_bits(2 * w + 2);
    let root = x.mantissa.magnitude().sqrt();
    Fixed {
        mantissa: BigInt::from_biguint(Sign::Plus, root),
        frac_bits: w + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn ln_constants() {
        // Reference digits from an independent arbitrary-precision evaluation.
        let ln2 = ln_biguint(&big(2), 128);
        assert_eq!(ln2.to_decimal(30), "0.693147180559945309417232121458");
        let ln10 = ln_biguint(&big(10), 128);
        assert_eq!(ln10.to_decimal(30), "2.302585092994045684017991454684");
        let ln307 = ln_biguint(&big(307), 128);
        assert_eq!(ln307.to_decimal(30), "5.726847747587197153598462567282");
        assert_eq!(ln_biguint(&big(1), 64).mantissa().clone(), BigInt::zero());
    }

    #[test]
    fn ln_of_fractions_is_antisymmetric() {
        let a = ln_ratio(&big(3), &big(7), 100);
        let b = ln_ratio(&big(7), &big(3), 100);
        assert!(a.add(&b).within(&Fixed::zero(100), 98));
        assert!((a.to_f64() - (3f64 / 7.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn ln_of_huge_power_scales_linearly() {
        let x = num_traits::pow(big(19), 289);
        let direct = ln_biguint(&x, 128);
        let single = ln_biguint(&big(19), 140);
        let scaled = Fixed::from_rational(&(single.to_rational() * BigRational::from_integer(289.into())), 140);
        assert!(direct.within(&scaled, 126));
    }

    #[test]
    fn decimal_rendering() {
        let half = Fixed::from_rational(&BigRational::new((-1).into(), 2.into()), 8);
        assert_eq!(half.to_decimal(3), "-0.500");
        let x = Fixed::from_rational(&BigRational::new(49.into(), 4.into()), 16);
        assert_eq!(x.to_decimal(2), "12.25");
        assert_eq!(x.to_decimal(0), "12");
        assert_eq!(x.to_f64(), 12.25);
    }

    #[test]
    fn square_roots() {
        let two = Fixed::from_rational(&BigRational::from_integer(2.into()), 10);
        let r = sqrt_fixed(&two, 100);
        assert_eq!(r.to_decimal(25), "1.4142135623730950488016887");
    }
}
