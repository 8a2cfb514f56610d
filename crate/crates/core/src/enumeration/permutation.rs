use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Domain(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// Rearrange into the next permutation in lexicographic order.
    fn advance(&mut self) -> bool {
        let v = &mut self.0;
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return false;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some(Permutation::identity(n));
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            if succ.advance() {
                next = Some(succ);
            }
            Some(cur)
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Longest strictly decreasing subsequence, by patience sorting on the
/// reversed sequence.
pub fn lds_length(p: &Permutation) -> usize {
    let mut piles: Vec<usize> = Vec::new();
    for &v in p.values().iter().rev() {
        match piles.binary_search(&v) {
            Ok(_) => unreachable!("values are distinct"),
            Err(i) if i == piles.len() => piles.push(v),
            Err(i) => piles[i] = v,
        }
    }
    piles.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_lds(p: &[usize]) -> usize {
        let n = p.len();
        (0u32..1 << n)
            .filter(|mask| {
                let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                idx.windows(2).all(|w| p[w[0]] > p[w[1]])
            })
            .map(u32::count_ones)
            .max()
            .unwrap_or(0) as usize
    }

    #[test]
    fn lds_examples() {
        assert_eq!(lds_length(&Permutation::new(vec![3, 2, 1]).unwrap()), 3);
        assert_eq!(lds_length(&Permutation::new(vec![1, 2, 3]).unwrap()), 1);
        assert_eq!(lds_length(&Permutation::new(vec![2, 4, 1, 3]).unwrap()), 2);
    }

    #[test]
    fn lds_matches_subset_scan() {
        for n in 0..=7 {
            for p in Permutation::all(n) {
                assert_eq!(lds_length(&p), brute_lds(p.values()), "{p}");
            }
        }
    }

    #[test]
    fn enumerates_factorial_many() {
        assert_eq!(Permutation::all(0).count(), 1);
        assert_eq!(Permutation::all(5).count(), 120);
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }
}
