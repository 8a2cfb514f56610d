//! Fixed-point decimal reals backed by big integers, with natural
//! logarithms evaluated by the `atanh` series.
//!
//! A value at scale `s` is `mantissa / 10^s`. Every routine here works with
//! guard digits and truncates to the requested scale at the end; the
//! absolute error of a result is a few units in the last guard digit.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const GUARD: u32 = 30;

fn pow10(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

/// `atanh(y) * 2` for `y = y_num / scale_one`, `|y| <= 1/3`.
fn two_atanh(y: &BigInt, one: &BigInt) -> BigInt {
    let y2 = y * y / one;
    let mut term = y.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    while !term.is_zero() {
        sum += &term / BigInt::from(k);
        term = &term * &y2 / one;
        k += 2;
    }
    sum * 2
}

/// `ln(m)` scaled by `10^work` for an integer `m >= 1`.
fn ln_uint(m: &BigUint, work: u32) -> BigInt {
    assert!(!m.is_zero(), "logarithm of zero");
    let one = pow10(work);
    let ln2 = two_atanh(&(&one / 3), &one);
    let k = m.bits() - 1;
    // f = m / 2^k in [1, 2)
    let f = (BigInt::from(m.clone()) * &one) >> k;
    let y = (&f - &one) * &one / (&f + &one);
    ln2 * BigInt::from(k) + two_atanh(&y, &one)
}

/// A real number carried to a fixed number of decimal places.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    mantissa: BigInt,
    scale: u32,
}

impl Decimal {
    pub fn from_integer(v: impl Into<BigInt>, scale: u32) -> Self {
        Decimal { mantissa: v.into() * pow10(scale), scale }
    }

    pub fn from_mantissa(mantissa: BigInt, scale: u32) -> Self {
        Decimal { mantissa, scale }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    /// Truncate (towards negative infinity) to `scale` digits.
    pub fn rescale(&self, scale: u32) -> Self {
        let mantissa = match scale.cmp(&self.scale) {
            Ordering::Equal => self.mantissa.clone(),
            Ordering::Greater => &self.mantissa * pow10(scale - self.scale),
            Ordering::Less => self.mantissa.div_floor(&pow10(self.scale - scale)),
        };
        Decimal { mantissa, scale }
    }

    pub fn floor(&self) -> BigInt {
        self.mantissa.div_floor(&pow10(self.scale))
    }

    pub fn to_f64(&self) -> f64 {
        // keep 17 significant fractional digits
        let r = self.rescale(self.scale.min(17));
        r.mantissa.to_f64().unwrap_or(f64::NAN) / 10f64.powi(r.scale as i32)
    }

    /// Decimal string with exactly `scale` fractional digits.
    pub fn to_fixed_string(&self) -> String {
        let neg = self.mantissa.sign() == Sign::Minus;
        let digits = self.mantissa.abs().to_string();
        let s = self.scale as usize;
        let padded = if digits.len() <= s {
            format!("{}{}", "0".repeat(s + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - s);
        let sign = if neg { "-" } else { "" };
        if s == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    fn aligned(&self, other: &Decimal) -> (BigInt, BigInt, u32) {
        let s = self.scale.max(other.scale);
        (self.rescale(s).mantissa, other.rescale(s).mantissa, s)
    }

    pub fn add(&self, other: &Decimal) -> Decimal {
        let (a, b, s) = self.aligned(other);
        Decimal { mantissa: a + b, scale: s }
    }

    pub fn sub(&self, other: &Decimal) -> Decimal {
        let (a, b, s) = self.aligned(other);
        Decimal { mantissa: a - b, scale: s }
    }

    pub fn mul(&self, other: &Decimal) -> Decimal {
        let (a, b, s) = self.aligned(other);
        Decimal { mantissa: a * b / pow10(s), scale: s }
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Decimal {
        Decimal { mantissa: &self.mantissa * k.into(), scale: self.scale }
    }

    pub fn div(&self, other: &Decimal) -> Decimal {
        let (a, b, s) = self.aligned(other);
        Decimal { mantissa: a * pow10(s) / b, scale: s }
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_fixed_string())
    }
}

/// Natural logarithm of a positive integer to `digits` decimal places.
pub fn ln_int(m: u64, digits: u32) -> Decimal {
    let work = digits + GUARD;
    Decimal::from_mantissa(ln_uint(&BigUint::from(m), work), work).rescale(digits)
}

/// Natural logarithm of a positive decimal.
pub fn ln(x: &Decimal, digits: u32) -> Decimal {
    assert!(x.mantissa.is_positive(), "logarithm of a non-positive number");
    let work = digits + GUARD;
    let x = x.rescale(work.max(x.scale));
    let m = x.mantissa.to_biguint().expect("positive");
    let ln10 = ln_uint(&BigUint::from(10u32), work);
    let raw = ln_uint(&m, work) - ln10 * BigInt::from(x.scale);
    Decimal::from_mantissa(raw, work).rescale(digits)
}

/// `log_base(m)` for positive integers.
pub fn log_int(m: u64, base: u64, digits: u32) -> Decimal {
    let work = digits + GUARD;
    ln_int(m, work).div(&ln_int(base, work)).rescale(digits)
}

/// `log_base(x)` for a positive decimal.
pub fn log(x: &Decimal, base: u64, digits: u32) -> Decimal {
    let work = digits + GUARD;
    ln(x, work).div(&ln_int(base, work)).rescale(digits)
}

/// `Some(j)` when `m = base^j`.
pub fn exact_log(m: u64, base: u64) -> Option<u32> {
    let mut v = 1u64;
    let mut j = 0;
    while v < m {
        v = v.checked_mul(base)?;
        j += 1;
    }
    (v == m).then_some(j)
}

/// Unit in the last place of a decimal at `scale`.
pub fn ulp(scale: u32) -> Decimal {
    Decimal::from_mantissa(BigInt::one(), scale)
}
