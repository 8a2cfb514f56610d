//! Finite strict partial orders, maximum antichains and minimum chain
//! partitions (Dilworth), plus the tail and subword orders on a word.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{compare_letters, LexOrdering, Word};

/// Strict partial order on `0..n`, stored as its transitive closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    less: Vec<Vec<bool>>,
    labels: Vec<String>,
}

impl Poset {
    /// Build from any generating set of pairs `(a, b)` meaning `a < b`.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Poset(format!("pair ({a}, {b}) outside 0..{n}")));
            }
            less[a][b] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i][i]) {
            return Err(Error::Poset(format!("relation has a cycle through element {i}")));
        }
        Ok(Poset {
            n,
            less,
            labels: (0..n).map(|i| i.to_string()).collect(),
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    pub fn antichain(n: usize) -> Self {
        Poset::from_relations(n, &[]).expect("empty relation is a poset")
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_relations(n, &pairs).expect("a path is acyclic")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less[a][b] || self.less[b][a]
    }

    /// All pairs `a < b` of the closed relation, sorted.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.less[a][b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_antichain(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &a)| {
            set[i + 1..].iter().all(|&b| a != b && !self.comparable(a, b))
        })
    }

    /// Sub-poset on `keep` (in the given order).
    fn restrict(&self, keep: &[usize]) -> Poset {
        let less = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| self.less[a][b]).collect())
            .collect();
        Poset {
            n: keep.len(),
            less,
            labels: keep.iter().map(|&a| self.labels[a].clone()).collect(),
        }
    }

    /// Maximum matching in the split graph `a -> b` for `a < b`;
    /// returns `succ[a] = Some(b)`.
    fn max_matching(&self) -> Vec<Option<usize>> {
        let n = self.n;
        let mut succ = vec![None; n];
        let mut pred: Vec<Option<usize>> = vec![None; n];
        fn augment(
            p: &Poset,
            a: usize,
            seen: &mut [bool],
            succ: &mut [Option<usize>],
            pred: &mut [Option<usize>],
        ) -> bool {
            for b in 0..p.n {
                if p.less[a][b] && !seen[b] {
                    seen[b] = true;
                    if pred[b].is_none_or(|a2| augment(p, a2, seen, succ, pred)) {
                        succ[a] = Some(b);
                        pred[b] = Some(a);
                        return true;
                    }
                }
            }
            false
        }
        for a in 0..n {
            let mut seen = vec![false; n];
            augment(self, a, &mut seen, &mut succ, &mut pred);
        }
        succ
    }

    /// Size of a maximum antichain (the width), via `n - |max matching|`.
    pub fn width(&self) -> usize {
        self.n - self.max_matching().iter().flatten().count()
    }

    /// The lexicographically least maximum antichain (sorted indices).
    pub fn max_antichain(&self) -> Vec<usize> {
        let width = self.width();
        let mut chosen: Vec<usize> = Vec::new();
        for e in 0..self.n {
            if chosen.len() == width {
                break;
            }
            if chosen.iter().any(|&c| self.comparable(c, e)) {
                continue;
            }
            let mut trial = chosen.clone();
            trial.push(e);
            // elements after e that stay compatible with the trial set
            let rest: Vec<usize> = (e + 1..self.n)
                .filter(|&x| trial.iter().all(|&c| !self.comparable(c, x)))
                .collect();
            if trial.len() + self.restrict(&rest).width() == width {
                chosen = trial;
            }
        }
        chosen
    }

    /// Minimum chain partition; chains are listed by their least element,
    /// each in increasing order.
    pub fn min_chain_partition(&self) -> ChainPartition {
        let succ = self.max_matching();
        let mut has_pred = vec![false; self.n];
        for b in succ.iter().flatten() {
            has_pred[*b] = true;
        }
        let mut chains = Vec::new();
        for start in 0..self.n {
            if has_pred[start] {
                continue;
            }
            let mut chain = vec![start];
            let mut cur = start;
            while let Some(next) = succ[cur] {
                chain.push(next);
                cur = next;
            }
            chains.push(chain);
        }
        chains.sort();
        ChainPartition { chains }
    }

    /// Parse the edge-list format written by [`Poset::to_edge_list`].
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut n = None;
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>().map_err(|_| {
                    Error::Parse(format!("line {}: `{s}` is not an element index", lineno + 1))
                })
            };
            match fields.as_slice() {
                ["elements", count] => n = Some(num(count)?),
                [a, b] => pairs.push((num(a)?, num(b)?)),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected `a b` or `elements N`",
                        lineno + 1
                    )))
                }
            }
        }
        let n = n.unwrap_or_else(|| pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0));
        Poset::from_relations(n, &pairs)
    }

    /// `elements N` header followed by one `a b` line per relation `a < b`.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("elements {}\n", self.n);
        for (a, b) in self.relations() {
            writeln!(out, "{a} {b}").unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainPartition {
    pub chains: Vec<Vec<usize>>,
}

impl ChainPartition {
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Chains are disjoint, cover `0..n`, and are increasing in `p`.
    pub fn validate(&self, p: &Poset) -> bool {
        let mut seen = vec![false; p.len()];
        for chain in &self.chains {
            for &e in chain {
                if e >= p.len() || seen[e] {
                    return false;
                }
                seen[e] = true;
            }
            if !chain.windows(2).all(|c| p.less(c[0], c[1])) {
                return false;
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Colour of each element: the index of the chain containing it.
    pub fn coloring(&self, n: usize) -> Vec<usize> {
        let mut colour = vec![usize::MAX; n];
        for (c, chain) in self.chains.iter().enumerate() {
            for &e in chain {
                colour[e] = c;
            }
        }
        colour
    }
}

/// Tails of `w` starting at `positions`; `u < v` iff `u ≺ v` and `u`
/// starts to the left of `v`. Element `i` is the `i`-th smallest position.
pub fn tail_poset(w: &Word, positions: &[usize]) -> Result<Poset> {
    let mut pos = positions.to_vec();
    pos.sort_unstable();
    pos.dedup();
    if let Some(&bad) = pos.iter().find(|&&p| p >= w.len()) {
        return Err(Error::Domain(format!(
            "tail position {bad} outside a word of length {}",
            w.len()
        )));
    }
    let letters = w.letters();
    let mut pairs = Vec::new();
    for (i, &a) in pos.iter().enumerate() {
        for (j, &b) in pos.iter().enumerate().skip(i + 1) {
            if compare_letters(&letters[a..], &letters[b..]) == LexOrdering::Less {
                pairs.push((i, j));
            }
        }
    }
    let labels = pos.iter().map(|&p| w.factor(p, w.len()).to_string()).collect();
    Ok(Poset::from_relations(pos.len(), &pairs)?.with_labels(labels))
}

/// Disjoint occurrences ordered by `u < v` iff `u` is lexicographically
/// smaller and starts strictly to the left.
pub fn subword_poset(occurrences: &[(usize, Word)]) -> Result<Poset> {
    let mut occ = occurrences.to_vec();
    occ.sort_by_key(|(p, _)| *p);
    for pair in occ.windows(2) {
        let (p, u) = &pair[0];
        if p + u.len() > pair[1].0 {
            return Err(Error::Domain(format!(
                "occurrences at {} and {} overlap",
                p, pair[1].0
            )));
        }
    }
    let mut pairs = Vec::new();
    for i in 0..occ.len() {
        for j in i + 1..occ.len() {
            if occ[i].0 < occ[j].0
                && compare_letters(occ[i].1.letters(), occ[j].1.letters()) == LexOrdering::Less
            {
                pairs.push((i, j));
            }
        }
    }
    let labels = occ.iter().map(|(p, u)| format!("{u}@{p}")).collect();
    Ok(Poset::from_relations(occ.len(), &pairs)?.with_labels(labels))
}
