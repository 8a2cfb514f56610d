//! Counting permutations by their longest decreasing subsequence, three
//! ways, plus related tableau and poset counts.

mod perm_posets;
mod permutation;
mod series;
mod tableau;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use perm_posets::{canonical_form, count_perm_ordered_posets, permutation_poset};
pub use permutation::{lds_length, Permutation};
pub use series::{bessel_term, determinant, gessel_determinant, Series};
pub use tableau::{hook_count, inverse_rsk, rsk, Partition, YoungTableau};

use crate::bounds::factorial;
use crate::error::{Error, Result};

/// Histogram of `lds_length` over `S_n`: entry `j` counts permutations
/// whose longest decreasing subsequence has length exactly `j`.
pub fn lds_histogram(n: usize) -> Vec<u64> {
    let mut hist = vec![0u64; n + 1];
    if n == 0 {
        hist[0] = 1;
        return hist;
    }
    // fan out over the first value; merging sums is order-independent
    let parts: Vec<Vec<u64>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut h = vec![0u64; n + 1];
            let rest: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
            for tail in Permutation::all(n - 1) {
                let mut values = Vec::with_capacity(n);
                values.push(first);
                values.extend(tail.values().iter().map(|&i| rest[i - 1]));
                let p = Permutation::new(values).expect("relabelled permutation");
                h[lds_length(&p)] += 1;
            }
            h
        })
        .collect();
    for h in parts {
        for (a, b) in hist.iter_mut().zip(h) {
            *a += b;
        }
    }
    hist
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    Ok(())
}

/// Brute force: `#{π ∈ S_n : lds(π) <= k}`.
pub fn xi_bruteforce(k: usize, n: usize) -> Result<BigUint> {
    check_k(k)?;
    Ok(BigUint::from(lds_histogram(n).iter().take(k + 1).sum::<u64>()))
}

/// Through the RSK bijection: `Σ f_λ^2` over shapes with at most `k` rows.
pub fn xi_hook(k: usize, n: usize) -> Result<BigUint> {
    check_k(k)?;
    Ok(Partition::all(n, k)
        .iter()
        .map(|s| {
            let f = hook_count(s);
            &f * &f
        })
        .sum())
}

/// `ξ_3(n) = 2 Σ_k C(2k,k) C(n,k)^2 (3k^2+2k+1-n-2kn) / ((k+1)^2 (k+2) (n-k+1))`.
pub fn gessel_xi3(n: usize) -> Result<BigUint> {
    let n_i = BigInt::from(n);
    let mut sum = BigRational::zero();
    for k in 0..=n {
        let kk = BigInt::from(k);
        let num = binomial(BigInt::from(2 * k), kk.clone())
            * binomial(n_i.clone(), kk.clone()).pow(2)
            * (BigInt::from(3) * &kk * &kk + BigInt::from(2) * &kk + 1 - &n_i
                - BigInt::from(2) * &kk * &n_i);
        let den = BigInt::from(k + 1).pow(2) * (k + 2) * (n + 1 - k);
        sum += BigRational::new(num, den);
    }
    let total = sum * BigInt::from(2);
    if !total.is_integer() {
        return Err(Error::Domain(format!("Gessel sum for n={n} is not integral")));
    }
    total
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::Domain(format!("Gessel sum for n={n} is negative")))
}

/// `ξ_k(0..=n_max)` read off `U_k` as `(n!)^2 [x^(2n)] U_k`.
pub fn xi_via_series(k: usize, n_max: usize) -> Result<Vec<BigRational>> {
    check_k(k)?;
    let u = gessel_determinant(k, n_max);
    Ok((0..=n_max)
        .map(|n| {
            let f = factorial(n as u64);
            u.coeff(2 * n) * BigRational::from_integer(&f * &f)
        })
        .collect())
}

/// Standard tableaux with `n` cells and at most `k` rows.
pub fn delta(k: usize, n: usize) -> Result<BigUint> {
    check_k(k)?;
    Ok(Partition::all(n, k).iter().map(hook_count).sum())
}

/// Multilinear words of length `n` over `l` letters with no decreasing run
/// of `k+1` letters: `C(l,n) ξ_k(n)`.
pub fn multilinear_count(l: usize, n: usize, k: usize) -> Result<BigUint> {
    if n > l {
        return Err(Error::Domain(format!("word length n={n} exceeds alphabet size l={l}")));
    }
    Ok(binomial(BigUint::from(l), BigUint::from(n)) * xi_hook(k, n)?)
}

/// One table row comparing every route to `ξ_k(n)`.
#[derive(Clone, Debug, Serialize)]
pub struct XiRow {
    pub n: usize,
    pub k: usize,
    pub xi_bruteforce: String,
    pub xi_hook: String,
    pub xi_gessel: Option<String>,
    pub xi_series: String,
    pub bound: String,
    pub agree: bool,
}

pub fn xi_row(k: usize, n: usize) -> Result<XiRow> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!("xi requires 1 <= k <= n, got k={k} n={n}")));
    }
    let brute = xi_bruteforce(k, n)?;
    let hook = xi_hook(k, n)?;
    let gessel = if k == 3 { Some(gessel_xi3(n)?) } else { None };
    let series = xi_via_series(k, n)?.pop().expect("n_max entry");
    let bound = crate::bounds::xi_upper(k as u64, n as u64)?;
    let series_int = series.is_integer().then(|| series.to_integer());
    let agree = brute == hook
        && gessel.as_ref().is_none_or(|g| *g == brute)
        && series_int == Some(BigInt::from(brute.clone()));
    Ok(XiRow {
        n,
        k,
        xi_bruteforce: brute.to_string(),
        xi_hook: hook.to_string(),
        xi_gessel: gessel.map(|g| g.to_string()),
        xi_series: if series.is_integer() {
            series.to_integer().to_string()
        } else {
            series.to_string()
        },
        bound: bound.render(),
        agree,
    })
}

/// `n!` for small `n`, as a `u64`.
pub fn factorial_u64(n: usize) -> u64 {
    factorial(n as u64).to_u64().expect("small factorial")
}

/// Catalan number `(2n)! / (n! (n+1)!)`.
pub fn catalan(n: usize) -> BigUint {
    let f = |m: usize| (1..=m).fold(BigUint::one(), |acc, i| acc * i);
    f(2 * n) / (f(n) * f(n + 1))
}
