//! Closed-form height, selective-height and enumeration bounds.
//!
//! Integral formulas are evaluated exactly. Formulas with irrational
//! exponents are returned as base-10 logarithms carried to
//! [`LOG_DIGITS`] decimal places.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::precision::{exact_log, ln_int, log, log_int, Decimal};

/// Decimal places kept for logarithmic bound values.
pub const LOG_DIGITS: u32 = 60;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundValue {
    Exact(BigInt),
    Rational(BigRational),
    /// `log10` of the bound.
    Log10(Decimal),
}

impl BoundValue {
    /// `log10` of the value as an `f64` (for comparisons and display).
    pub fn log10_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(v) => big_log10(v),
            BoundValue::Rational(r) => big_log10(r.numer()) - big_log10(r.denom()),
            BoundValue::Log10(d) => d.to_f64(),
        }
    }

    pub fn as_exact(&self) -> Option<&BigInt> {
        match self {
            BoundValue::Exact(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_log10(&self) -> Option<&Decimal> {
        match self {
            BoundValue::Log10(d) => Some(d),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> BigRational {
        match self {
            BoundValue::Exact(v) => BigRational::from_integer(v.clone()),
            BoundValue::Rational(r) => r.clone(),
            BoundValue::Log10(_) => panic!("logarithmic bound has no exact rational value"),
        }
    }

    /// Whether the integer `value` does not exceed this bound. Exact and
    /// rational bounds compare exactly; logarithmic ones compare
    /// `log10(value)` with a margin of one unit in the 12th place.
    pub fn admits(&self, value: &BigInt) -> bool {
        match self {
            BoundValue::Exact(b) => value <= b,
            BoundValue::Rational(r) => BigRational::from_integer(value.clone()) <= *r,
            BoundValue::Log10(d) => {
                if !value.is_positive() {
                    return true;
                }
                big_log10(value) <= d.to_f64() + 1e-12
            }
        }
    }

    /// Value rendered as text: digits, `p/q`, or scientific notation.
    pub fn render(&self) -> String {
        match self {
            BoundValue::Exact(v) => v.to_string(),
            BoundValue::Rational(r) if r.is_integer() => r.numer().to_string(),
            BoundValue::Rational(r) => format!("{}/{}", r.numer(), r.denom()),
            BoundValue::Log10(d) => scientific(d),
        }
    }
}

/// `log10` of a big integer through its leading digits.
pub fn big_log10(v: &BigInt) -> f64 {
    let s = v.abs().to_string();
    let lead: f64 = s[..s.len().min(17)].parse().unwrap_or(0.0);
    lead.log10() + (s.len() - s.len().min(17)) as f64
}

/// `m.ddddddE+x` from a `log10` value.
fn scientific(log10: &Decimal) -> String {
    let exponent = log10.floor();
    let frac = log10.sub(&Decimal::from_integer(exponent.clone(), log10.scale()));
    let mantissa = 10f64.powf(frac.to_f64());
    format!("{mantissa:.6}e{exponent}")
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundValue", 3)?;
        match self {
            BoundValue::Exact(v) => {
                st.serialize_field("kind", "exact")?;
                st.serialize_field("value", &v.to_string())?;
            }
            BoundValue::Rational(_) => {
                st.serialize_field("kind", "rational")?;
                st.serialize_field("value", &self.render())?;
            }
            BoundValue::Log10(d) => {
                st.serialize_field("kind", "log10")?;
                st.serialize_field("value", &d.rescale(50).to_fixed_string())?;
            }
        }
        st.serialize_field("display", &self.render())?;
        st.end()
    }
}

fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

/// `log10(2^two_power * l * base^exponent)` with `exponent` a decimal.
fn log10_product(two_power: u32, l: u64, base: u64, exponent: &Decimal) -> Decimal {
    let work = LOG_DIGITS + 10;
    let log2 = log_int(2, 10, work);
    let logl = log_int(l, 10, work);
    let logb = log_int(base, 10, work);
    log2.mul_int(two_power)
        .add(&logl)
        .add(&exponent.mul(&logb))
        .rescale(LOG_DIGITS)
}

/// `log3(log3(x))` for an integer `x >= 3`.
fn log3_log3(x: u64, digits: u32) -> Decimal {
    let inner = log_int(x, 3, digits + 10);
    log(&inner, 3, digits + 10).rescale(digits)
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(domain(msg))
    }
}

/// `Ψ(n,d,l) = 2^27 l (nd)^(3 log3(nd) + 9 log3 log3(nd) + 36)`, requiring
/// the theorem's hypothesis `d >= n`.
pub fn psi(n: u64, d: u64, l: u64) -> Result<BoundValue> {
    check(d >= n, "psi requires d >= n")?;
    psi_formula(n, d, l)
}

/// The Ψ formula without the `d >= n` hypothesis; still needs `nd >= 4`.
pub fn psi_formula(n: u64, d: u64, l: u64) -> Result<BoundValue> {
    check(n >= 2, "psi requires n >= 2")?;
    check(d >= 1 && l >= 1, "psi requires d >= 1 and l >= 1")?;
    let nd = n.checked_mul(d).ok_or_else(|| domain("n*d overflows"))?;
    check(nd >= 4, "psi requires n*d >= 4")?;
    let work = LOG_DIGITS + 10;
    let exponent = log_int(nd, 3, work)
        .mul_int(3)
        .add(&log3_log3(nd, work).mul_int(9))
        .add(&Decimal::from_integer(36, work));
    Ok(BoundValue::Log10(log10_product(27, l, nd, &exponent)))
}

/// `Φ(n,l) = 2^96 l n^(12 log3 n + 36 log3 log3 n + 91)`.
pub fn phi(n: u64, l: u64) -> Result<BoundValue> {
    check(n >= 3, "phi requires n >= 3")?;
    check(l >= 1, "phi requires l >= 1")?;
    let work = LOG_DIGITS + 10;
    let exponent = log_int(n, 3, work)
        .mul_int(12)
        .add(&log3_log3(n, work).mul_int(36))
        .add(&Decimal::from_integer(91, work));
    Ok(BoundValue::Log10(log10_product(96, l, n, &exponent)))
}

/// Smallest `c` with `3^c >= n`.
fn ceil_log3(n: u64) -> u32 {
    let mut c = 0;
    let mut p = 1u128;
    while p < n as u128 {
        p *= 3;
        c += 1;
    }
    c
}

/// `Υ(n,l) = 2 n^(3⌈log3 n⌉+4) l`.
pub fn upsilon(n: u64, l: u64) -> Result<BoundValue> {
    check(n >= 2 && l >= 1, "upsilon requires n >= 2 and l >= 1")?;
    let e = 3 * ceil_log3(n) + 4;
    Ok(BoundValue::Exact(BigInt::from(2) * BigInt::from(n).pow(e) * l))
}

/// `Υ'(n,l) = 8 (l+1)^n n^5 (n-1)`.
pub fn upsilon_prime(n: u64, l: u64) -> Result<BoundValue> {
    check(n >= 2 && l >= 1, "upsilon_prime requires n >= 2 and l >= 1")?;
    let n32 = u32::try_from(n).map_err(|_| domain("n too large"))?;
    Ok(BoundValue::Exact(
        BigInt::from(8) * BigInt::from(l + 1).pow(n32) * BigInt::from(n).pow(5) * (n - 1),
    ))
}

/// Period lengths with a closed-form selective-height bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeriodLength {
    Two,
    Three,
    DegreeMinusOne,
}

impl PeriodLength {
    /// Classify a numeric period length for degree `n`.
    pub fn classify(len: u64, n: u64) -> Result<Self> {
        match len {
            2 => Ok(PeriodLength::Two),
            3 => Ok(PeriodLength::Three),
            _ if n >= 1 && len == n - 1 => Ok(PeriodLength::DegreeMinusOne),
            _ => Err(domain(format!(
                "no selective-height bound for period length {len} at degree {n}"
            ))),
        }
    }

    pub fn len(self, n: u64) -> u64 {
        match self {
            PeriodLength::Two => 2,
            PeriodLength::Three => 3,
            PeriodLength::DegreeMinusOne => n - 1,
        }
    }
}

/// ℶ(2,l,n) = (2l-1)(n-1)(n-2)/2, ℶ(3,l,n) = (2l-1)(n-1)(n-2),
/// ℶ(n-1,l,n) = (l-2)(n-1).
pub fn beth(period: PeriodLength, l: u64, n: u64) -> Result<BoundValue> {
    check(n >= 3, "beth requires n >= 3")?;
    check(l >= 1, "beth requires l >= 1")?;
    let (l, n) = (BigInt::from(l), BigInt::from(n));
    let one = BigInt::one();
    let two = BigInt::from(2);
    let v = match period {
        PeriodLength::Two => (&two * &l - &one) * (&n - &one) * (&n - &two) / &two,
        PeriodLength::Three => (&two * &l - &one) * (&n - &one) * (&n - &two),
        PeriodLength::DegreeMinusOne => {
            check(l >= two, "beth(n-1, l, n) requires l >= 2")?;
            (&l - &two) * (&n - &one)
        }
    };
    Ok(BoundValue::Exact(v))
}

/// `α(n,l) = (l - 2^(n-1))(n-2)(n-3)/2`.
pub fn alpha_lower(n: u64, l: u64) -> Result<BoundValue> {
    check(n >= 4, "alpha requires n >= 4")?;
    let n32 = u32::try_from(n - 1).map_err(|_| domain("n too large"))?;
    let threshold = BigInt::from(2).pow(n32);
    let l = BigInt::from(l);
    if l <= threshold {
        return Err(domain(format!("alpha requires l > 2^(n-1) = {threshold}")));
    }
    Ok(BoundValue::Exact((l - threshold) * (n - 2) * (n - 3) / 2))
}

/// `p_{n,d} = ⌈3/2 (n+1) d (log3(nd) + 2)⌉`, with the ceiling certified by
/// interval bracketing at increasing precision.
pub fn p_nd(n: u64, d: u64) -> Result<BigInt> {
    check(n >= 1 && d >= 1, "p_nd requires n >= 1 and d >= 1")?;
    let nd = n.checked_mul(d).ok_or_else(|| domain("n*d overflows"))?;
    let coeff = BigInt::from(3) * (n + 1) * d; // value = coeff/2 * (log3(nd) + 2)
    if let Some(j) = exact_log(nd, 3) {
        let num = &coeff * (j + 2);
        return Ok(num.div_ceil(&BigInt::from(2)));
    }
    for digits in [60u32, 120, 200] {
        let log3 = log_int(nd, 3, digits);
        let value = log3
            .add(&Decimal::from_integer(2, digits))
            .mul_int(coeff.clone())
            .mul(&Decimal::from_mantissa(BigInt::from(5), 1));
        // error of log3 is below 10^-(digits-2); scaled by coeff/2
        let slack = Decimal::from_mantissa(&coeff * 100, digits);
        let lo = value.sub(&slack);
        let hi = value.add(&slack);
        if lo.floor() == hi.floor() && !is_integral(&lo) {
            return Ok(hi.floor() + 1);
        }
    }
    Err(Error::Precision(format!(
        "ceiling of p_{{{n},{d}}} could not be certified at 200 digits"
    )))
}

fn is_integral(x: &Decimal) -> bool {
    x.rescale(x.scale()).mantissa().is_multiple_of(&BigInt::from(10).pow(x.scale()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicLowerBounds {
    /// `(n^2 + n - 2)/2`.
    pub kuzmin: BoundValue,
    /// `(l-1) n^2 / 4 + 1`.
    pub gk_height: BoundValue,
}

pub fn classic_lower_bounds(n: u64, l: u64) -> Result<ClassicLowerBounds> {
    check(n >= 2 && l >= 2, "classic bounds require n >= 2 and l >= 2")?;
    let nn = BigInt::from(n) * n;
    let kuzmin = (&nn + n - 2u32) / 2;
    let gk = BigRational::new(BigInt::from(l - 1) * &nn, BigInt::from(4)) + BigRational::one();
    Ok(ClassicLowerBounds {
        kuzmin: BoundValue::Exact(kuzmin),
        gk_height: rational_value(gk),
    })
}

fn rational_value(r: BigRational) -> BoundValue {
    if r.is_integer() {
        BoundValue::Exact(r.to_integer())
    } else {
        BoundValue::Rational(r)
    }
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn check_kn(k: u64, n: u64) -> Result<()> {
    check(k >= 1 && k <= n, "requires 1 <= k <= n")
}

/// `k^(2n) / ((k-1)!)^2`.
pub fn xi_upper(k: u64, n: u64) -> Result<BoundValue> {
    check_kn(k, n)?;
    let f = factorial(k - 1);
    Ok(rational_value(BigRational::new(
        BigInt::from(k).pow((2 * n) as u32),
        &f * &f,
    )))
}

/// `min{ k^(2n)/(k!)^2, (n-k+1)^(2n)/((n-k)!)^2 }`.
pub fn epsilon_upper(k: u64, n: u64) -> Result<BoundValue> {
    check_kn(k, n)?;
    let fk = factorial(k);
    let fnk = factorial(n - k);
    let a = BigRational::new(BigInt::from(k).pow((2 * n) as u32), &fk * &fk);
    let b = BigRational::new(BigInt::from(n - k + 1).pow((2 * n) as u32), &fnk * &fnk);
    Ok(rational_value(a.min(b)))
}

/// `l! k^(2n) / (n! (l-n)! ((k-1)!)^2)`: the bound on multilinear words of
/// length `n` over `l` letters without a decreasing run of `k+1` letters.
pub fn multilinear_upper(l: u64, n: u64, k: u64) -> Result<BoundValue> {
    check(n <= l, "requires n <= l")?;
    check(k >= 1, "requires k >= 1")?;
    let fk = factorial(k - 1);
    Ok(rational_value(BigRational::new(
        factorial(l) * BigInt::from(k).pow((2 * n) as u32),
        factorial(n) * factorial(l - n) * &fk * &fk,
    )))
}

/// Comparison row: `4 · 2^(n/2) · l`.
pub fn lopatin(n: u64, l: u64) -> Result<BoundValue> {
    check(n >= 1 && l >= 1, "lopatin requires n >= 1 and l >= 1")?;
    if n.is_multiple_of(2) {
        return Ok(BoundValue::Exact(
            BigInt::from(4) * BigInt::from(2).pow((n / 2) as u32) * l,
        ));
    }
    let work = LOG_DIGITS + 10;
    let log2 = log_int(2, 10, work);
    let v = log_int(4 * l, 10, work).add(&log2.mul_int(n).mul(&Decimal::from_mantissa(BigInt::from(5), 1)));
    Ok(BoundValue::Log10(v.rescale(LOG_DIGITS)))
}

/// `log10` of a positive integer at [`LOG_DIGITS`] places.
pub fn log10_of(v: u64) -> Decimal {
    log_int(v, 10, LOG_DIGITS)
}

/// Natural logarithm helper re-exported for tests of monotonicity.
pub fn ln_of(v: u64) -> Decimal {
    ln_int(v, LOG_DIGITS)
}

/// One row of the bounds table.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub name: String,
    pub arguments: String,
    pub value: BoundValue,
}

/// Evaluate a named formula. Missing arguments are a domain error.
pub fn evaluate(
    formula: &str,
    n: Option<u64>,
    d: Option<u64>,
    l: Option<u64>,
    k: Option<u64>,
) -> Result<BoundRow> {
    let need = |v: Option<u64>, name: &str| {
        v.ok_or_else(|| domain(format!("formula `{formula}` needs --{name}")))
    };
    let (value, arguments) = match formula {
        "psi" => {
            let (n, d, l) = (need(n, "n")?, need(d, "d")?, need(l, "l")?);
            (psi(n, d, l)?, format!("n={n} d={d} l={l}"))
        }
        "phi" => {
            let (n, l) = (need(n, "n")?, need(l, "l")?);
            (phi(n, l)?, format!("n={n} l={l}"))
        }
        "upsilon" => {
            let (n, l) = (need(n, "n")?, need(l, "l")?);
            (upsilon(n, l)?, format!("n={n} l={l}"))
        }
        "upsilon_prime" => {
            let (n, l) = (need(n, "n")?, need(l, "l")?);
            (upsilon_prime(n, l)?, format!("n={n} l={l}"))
        }
        "beth2" | "beth3" | "beth_n1" => {
            let (n, l) = (need(n, "n")?, need(l, "l")?);
            let p = match formula {
                "beth2" => PeriodLength::Two,
                "beth3" => PeriodLength::Three,
                _ => PeriodLength::DegreeMinusOne,
            };
            (beth(p, l, n)?, format!("l={l} n={n}"))
        }
        "alpha" => {
            let (n, l) = (need(n, "n")?, need(l, "l")?);
            (alpha_lower(n, l)?, format!("n={n} l={l}"))
        }
        "p_nd" => {
            let (n, d) = (need(n, "n")?, need(d, "d")?);
            (BoundValue::Exact(p_nd(n, d)?), format!("n={n} d={d}"))
        }
        "kuzmin" => {
            let n = need(n, "n")?;
            let l = l.unwrap_or(2);
            (classic_lower_bounds(n, l)?.kuzmin, format!("n={n}"))
        }
        "gk_height" => {
            let (n, l) = (need(n, "n")?, need(l, "l")?);
            (classic_lower_bounds(n, l)?.gk_height, format!("n={n} l={l}"))
        }
        "xi_upper" => {
            let (k, n) = (need(k, "k")?, need(n, "n")?);
            (xi_upper(k, n)?, format!("k={k} n={n}"))
        }
        "epsilon_upper" => {
            let (k, n) = (need(k, "k")?, need(n, "n")?);
            (epsilon_upper(k, n)?, format!("k={k} n={n}"))
        }
        "lopatin" => {
            let (n, l) = (need(n, "n")?, need(l, "l")?);
            (lopatin(n, l)?, format!("n={n} l={l}"))
        }
        other => return Err(domain(format!("unknown formula `{other}`"))),
    };
    Ok(BoundRow { name: formula.to_string(), arguments, value })
}

pub const FORMULAS: &[&str] = &[
    "psi",
    "phi",
    "upsilon",
    "upsilon_prime",
    "beth2",
    "beth3",
    "beth_n1",
    "alpha",
    "p_nd",
    "kuzmin",
    "gk_height",
    "xi_upper",
    "epsilon_upper",
    "lopatin",
];

/// Exact value of a rational bound as `f64`, for display only.
pub fn to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}
