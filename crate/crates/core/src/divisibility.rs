//! n-divisibility in its ordinary, tail and strong forms, and
//! (n,d)-reducibility.
//!
//! All deciders are exact. Witnesses are canonical: the shortest prefix,
//! then the smallest cut positions from left to right.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{compare_letters, find_power, has_power_at, LexOrdering, Word};

/// `w = prefix · u_1 ⋯ u_n` with `u_1 ≻ u_2 ≻ ⋯ ≻ u_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionWitness {
    pub prefix: Word,
    /// `(start, factor)` pairs, left to right.
    pub factors: Vec<(usize, Word)>,
}

impl DivisionWitness {
    /// Re-check concatenation and the decreasing chain against `w`.
    pub fn validate(&self, w: &Word) -> bool {
        let mut rebuilt = self.prefix.clone();
        for (start, u) in &self.factors {
            if *start != rebuilt.len() || u.is_empty() {
                return false;
            }
            rebuilt = rebuilt.concat(u);
        }
        rebuilt.letters() == w.letters()
            && self.factors.windows(2).all(|p| {
                compare_letters(p[0].1.letters(), p[1].1.letters()) == LexOrdering::Greater
            })
    }
}

/// Tails of `w` at strictly increasing starts, strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailWitness {
    pub starts: Vec<usize>,
    pub tails: Vec<Word>,
}

impl TailWitness {
    pub fn validate(&self, w: &Word) -> bool {
        self.starts.len() == self.tails.len()
            && self.starts.windows(2).all(|p| p[0] < p[1])
            && self
                .starts
                .iter()
                .zip(&self.tails)
                .all(|(&s, t)| s < w.len() && t.letters() == &w.letters()[s..])
            && self.tails.windows(2).all(|p| {
                compare_letters(p[0].letters(), p[1].letters()) == LexOrdering::Greater
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongPiece {
    pub start: usize,
    pub word: Word,
    /// The base word `z` such that the piece begins with `z^k_min`.
    pub base: Word,
}

/// `w = W_0 W_1 ⋯ W_n` with decreasing pieces, each opening with a power
/// of its own base word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongWitness {
    pub prefix: Word,
    pub pieces: Vec<StrongPiece>,
}

impl StrongWitness {
    pub fn validate(&self, w: &Word, k_min: usize) -> bool {
        let mut rebuilt = self.prefix.clone();
        for p in &self.pieces {
            if p.start != rebuilt.len()
                || p.word.is_empty()
                || p.base.is_empty()
                || !p.word.letters().starts_with(p.base.pow(k_min).letters())
            {
                return false;
            }
            rebuilt = rebuilt.concat(&p.word);
        }
        let mut bases: Vec<&Word> = self.pieces.iter().map(|p| &p.base).collect();
        bases.sort();
        bases.dedup();
        rebuilt.letters() == w.letters()
            && bases.len() == self.pieces.len()
            && self.pieces.windows(2).all(|p| {
                compare_letters(p[0].word.letters(), p[1].word.letters()) == LexOrdering::Greater
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Reducibility {
    NDivisible { witness: DivisionWitness },
    HasPower { start: usize, root: Word },
    Irreducible,
}

impl Reducibility {
    pub fn is_reducible(&self) -> bool {
        !matches!(self, Reducibility::Irreducible)
    }
}

/// Memoized search for a suffix tiling into `n` strictly decreasing factors.
struct TilingSearch<'a> {
    letters: &'a [u32],
    memo: HashMap<(usize, usize, usize), bool>,
}

impl<'a> TilingSearch<'a> {
    fn new(letters: &'a [u32]) -> Self {
        TilingSearch { letters, memo: HashMap::new() }
    }

    /// Can `[end, len)` be cut into `remaining` factors, each smaller than
    /// its left neighbour, the first of which follows `[start, end)`?
    fn completes(&mut self, start: usize, end: usize, remaining: usize) -> bool {
        let len = self.letters.len();
        if remaining == 0 {
            return end == len;
        }
        if end + remaining > len {
            return false;
        }
        if let Some(&hit) = self.memo.get(&(start, end, remaining)) {
            return hit;
        }
        let prev = &self.letters[start..end];
        let mut ok = false;
        for next in end + 1..=len - (remaining - 1) {
            if compare_letters(prev, &self.letters[end..next]) == LexOrdering::Greater
                && self.completes(end, next, remaining - 1)
            {
                ok = true;
                break;
            }
        }
        self.memo.insert((start, end, remaining), ok);
        ok
    }

    fn first_cut(&mut self, n: usize) -> Option<(usize, usize)> {
        let len = self.letters.len();
        for prefix in 0..len {
            for end in prefix + 1..=len {
                if self.completes(prefix, end, n - 1) {
                    return Some((prefix, end));
                }
            }
        }
        None
    }
}

pub(crate) fn divisible_letters(letters: &[u32], n: usize) -> bool {
    n == 0 || TilingSearch::new(letters).first_cut(n).is_some()
}

pub fn is_n_divisible(w: &Word, n: usize) -> Result<Option<DivisionWitness>> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let letters = w.letters();
    let mut search = TilingSearch::new(letters);
    let Some((prefix, mut end)) = search.first_cut(n) else {
        return Ok(None);
    };
    let mut cuts = vec![prefix, end];
    let mut start = prefix;
    for remaining in (1..n).rev() {
        let next = (end + 1..=letters.len())
            .find(|&next| {
                compare_letters(&letters[start..end], &letters[end..next]) == LexOrdering::Greater
                    && search.completes(end, next, remaining - 1)
            })
            .expect("memoized tiling must be reconstructible");
        start = end;
        end = next;
        cuts.push(end);
    }
    Ok(Some(DivisionWitness {
        prefix: w.factor(0, prefix),
        factors: cuts.windows(2).map(|c| (c[0], w.factor(c[0], c[1]))).collect(),
    }))
}

pub fn is_tail_n_divisible(w: &Word, n: usize) -> Result<Option<TailWitness>> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let letters = w.letters();
    let len = letters.len();
    let greater = |i: usize, j: usize| {
        compare_letters(&letters[i..], &letters[j..]) == LexOrdering::Greater
    };
    // longest decreasing chain of tails starting at each position
    let mut chain = vec![1usize; len];
    for i in (0..len).rev() {
        for j in i + 1..len {
            if greater(i, j) {
                chain[i] = chain[i].max(chain[j] + 1);
            }
        }
    }
    let Some(first) = (0..len).find(|&i| chain[i] >= n) else {
        return Ok(None);
    };
    let mut starts = vec![first];
    for need in (1..n).rev() {
        let prev = *starts.last().unwrap();
        let next = (prev + 1..len)
            .find(|&j| chain[j] >= need && greater(prev, j))
            .expect("chain lengths guarantee a continuation");
        starts.push(next);
    }
    let tails = starts.iter().map(|&s| w.factor(s, len)).collect();
    Ok(Some(TailWitness { starts, tails }))
}

struct StrongSearch<'a> {
    letters: &'a [u32],
    bases: Vec<&'a [u32]>,
    k_min: usize,
    memo: HashMap<(usize, usize, usize, u64), bool>,
}

impl<'a> StrongSearch<'a> {
    /// Base indices (outside `used`) whose `k_min`-th power opens `[start, end)`.
    fn bases_at(&self, start: usize, end: usize, used: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.bases.len()).filter(move |&i| {
            let z = self.bases[i];
            used & (1 << i) == 0
                && start + z.len() * self.k_min <= end
                && self.letters[start..].starts_with(z)
                && has_power_at(self.letters, start, z.len(), self.k_min)
        })
    }

    fn completes(&mut self, start: usize, end: usize, remaining: usize, used: u64) -> bool {
        let len = self.letters.len();
        if remaining == 0 {
            return end == len;
        }
        if end >= len {
            return false;
        }
        let key = (start, end, remaining, used);
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        let mut ok = false;
        'outer: for next in end + 1..=len {
            if compare_letters(&self.letters[start..end], &self.letters[end..next])
                != LexOrdering::Greater
            {
                continue;
            }
            let choices: Vec<usize> = self.bases_at(end, next, used).collect();
            for z in choices {
                if self.completes(end, next, remaining - 1, used | (1 << z)) {
                    ok = true;
                    break 'outer;
                }
            }
        }
        self.memo.insert(key, ok);
        ok
    }
}

/// Strong n-divisibility relative to base words `bases` and minimum power
/// `k_min`; the base words used by the pieces must be pairwise distinct.
pub fn is_strongly_n_divisible(
    w: &Word,
    n: usize,
    bases: &[Word],
    k_min: usize,
) -> Result<Option<StrongWitness>> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if k_min == 0 {
        return Err(Error::Domain("k_min must be at least 1".into()));
    }
    let mut unique: Vec<Word> = bases.to_vec();
    unique.sort();
    unique.dedup();
    if unique.is_empty() || unique.iter().any(Word::is_empty) {
        return Err(Error::Domain("base set must be non-empty with non-empty members".into()));
    }
    if unique.len() > 64 {
        return Err(Error::Domain("at most 64 base words are supported".into()));
    }
    if n > unique.len() {
        return Ok(None);
    }
    let letters = w.letters();
    let len = letters.len();
    let mut search = StrongSearch {
        letters,
        bases: unique.iter().map(Word::letters).collect(),
        k_min,
        memo: HashMap::new(),
    };
    let mut found = None;
    'search: for prefix in 0..len {
        for end in prefix + 1..=len {
            let choices: Vec<usize> = search.bases_at(prefix, end, 0).collect();
            for z in choices {
                if search.completes(prefix, end, n - 1, 1 << z) {
                    found = Some((prefix, end, z));
                    break 'search;
                }
            }
        }
    }
    let Some((prefix, mut end, z)) = found else {
        return Ok(None);
    };
    let mut start = prefix;
    let mut used = 1u64 << z;
    let mut pieces = vec![(start, end, z)];
    for remaining in (1..n).rev() {
        let (next, z) = (end + 1..=len)
            .filter(|&next| {
                compare_letters(&letters[start..end], &letters[end..next]) == LexOrdering::Greater
            })
            .find_map(|next| {
                let choices: Vec<usize> = search.bases_at(end, next, used).collect();
                choices
                    .into_iter()
                    .find(|&z| search.completes(end, next, remaining - 1, used | (1 << z)))
                    .map(|z| (next, z))
            })
            .expect("memoized strong tiling must be reconstructible");
        used |= 1 << z;
        start = end;
        end = next;
        pieces.push((start, end, z));
    }
    Ok(Some(StrongWitness {
        prefix: w.factor(0, prefix),
        pieces: pieces
            .into_iter()
            .map(|(s, e, z)| StrongPiece {
                start: s,
                word: w.factor(s, e),
                base: unique[z].clone(),
            })
            .collect(),
    }))
}

/// n-divisible takes priority over containing a `d`-th power.
pub fn is_nd_reducible(w: &Word, n: usize, d: usize) -> Result<Reducibility> {
    if d == 0 {
        return Err(Error::Domain("d must be at least 1".into()));
    }
    if let Some(witness) = is_n_divisible(w, n)? {
        return Ok(Reducibility::NDivisible { witness });
    }
    Ok(match find_power(w.letters(), d) {
        Some((start, p)) => Reducibility::HasPower {
            start,
            root: w.factor(start, start + p),
        },
        None => Reducibility::Irreducible,
    })
}
