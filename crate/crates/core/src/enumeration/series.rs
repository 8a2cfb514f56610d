//! Truncated power series over exact rationals and the determinant
//! `U_k = det(b_|i-j|)` whose coefficients count permutations without a
//! decreasing subsequence of length `k+1`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bounds::factorial;

/// Coefficients of `x^0 .. x^degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn zero(degree: usize) -> Self {
        Series { coeffs: vec![BigRational::zero(); degree + 1] }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Series::zero(degree);
        s.coeffs[0] = BigRational::one();
        s
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn add(&self, other: &Series) -> Series {
        Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let d = self.degree();
        let mut out = Series::zero(d);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

/// `b_i = Σ_n x^(2n+i) / (n! (n+i)!)`, truncated at `degree`.
pub fn bessel_term(i: usize, degree: usize) -> Series {
    let mut s = Series::zero(degree);
    let mut n = 0;
    while 2 * n + i <= degree {
        let den = factorial(n as u64) * factorial((n + i) as u64);
        s.coeffs[2 * n + i] = BigRational::new(BigInt::one(), den);
        n += 1;
    }
    s
}

/// Determinant by cofactor expansion along rows, memoized on the set of
/// columns already used.
pub fn determinant(matrix: &[Vec<Series>], degree: usize) -> Series {
    let k = matrix.len();
    fn go(
        m: &[Vec<Series>],
        row: usize,
        used: u32,
        degree: usize,
        memo: &mut HashMap<u32, Series>,
    ) -> Series {
        if row == m.len() {
            return Series::one(degree);
        }
        if let Some(s) = memo.get(&used) {
            return s.clone();
        }
        let mut acc = Series::zero(degree);
        let mut sign_positive = true;
        for col in 0..m.len() {
            if used & (1 << col) != 0 {
                continue;
            }
            let minor = go(m, row + 1, used | (1 << col), degree, memo);
            let term = m[row][col].mul(&minor);
            acc = if sign_positive { acc.add(&term) } else { acc.sub(&term) };
            sign_positive = !sign_positive;
        }
        memo.insert(used, acc.clone());
        acc
    }
    assert!(k < 32, "determinant size too large");
    go(matrix, 0, 0, degree, &mut HashMap::new())
}

/// `U_k` truncated at `x^(2 n_max)`.
pub fn gessel_determinant(k: usize, n_max: usize) -> Series {
    let degree = 2 * n_max;
    let b: Vec<Series> = (0..k).map(|i| bessel_term(i, degree)).collect();
    let matrix: Vec<Vec<Series>> = (0..k)
        .map(|i| (0..k).map(|j| b[i.abs_diff(j)].clone()).collect())
        .collect();
    determinant(&matrix, degree)
}
