//! Words over a finite ordered alphabet.
//!
//! Letters are dense indices `0..l`; index order is the letter order, and
//! the induced lexicographic order on words is *partial*: a word and one of
//! its proper prefixes are incomparable.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered alphabet `{0, 1, ..., size-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Alphabet(u32);

impl Alphabet {
    pub fn new(size: u32) -> Result<Self> {
        if size == 0 {
            return Err(Error::Domain("alphabet size must be at least 1".into()));
        }
        Ok(Alphabet(size))
    }

    pub fn size(self) -> u32 {
        self.0
    }

    /// All words of exactly `len` letters, in lexicographic order.
    pub fn words_of_length(self, len: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * self.0 as usize);
            for w in &out {
                for a in 0..self.0 {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|letters| Word { letters, alphabet: self })
            .collect()
    }
}

/// Outcome of comparing two words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LexOrdering {
    Less,
    Greater,
    Equal,
    /// One word is a proper prefix of the other.
    Incomparable,
}

impl LexOrdering {
    pub fn is_comparable(self) -> bool {
        matches!(self, LexOrdering::Less | LexOrdering::Greater)
    }

    pub fn reverse(self) -> Self {
        match self {
            LexOrdering::Less => LexOrdering::Greater,
            LexOrdering::Greater => LexOrdering::Less,
            other => other,
        }
    }
}

/// Compare raw letter sequences.
pub fn compare_letters(u: &[u32], v: &[u32]) -> LexOrdering {
    for (a, b) in u.iter().zip(v) {
        if a != b {
            return if a < b {
                LexOrdering::Less
            } else {
                LexOrdering::Greater
            };
        }
    }
    if u.len() == v.len() {
        LexOrdering::Equal
    } else {
        LexOrdering::Incomparable
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u32>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(letters: Vec<u32>, alphabet: Alphabet) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&a| a >= alphabet.size()) {
            return Err(Error::InvalidWord(format!(
                "letter index {bad} is outside an alphabet of size {}",
                alphabet.size()
            )));
        }
        Ok(Word { letters, alphabet })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word { letters: Vec::new(), alphabet }
    }

    /// Parse the shared text format: lowercase letters (`a` = 0) when the
    /// alphabet has at most 26 letters, otherwise or whenever a comma is
    /// present a comma-separated list of indices.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty(alphabet));
        }
        let letters = if text.contains(',') || text.chars().all(|c| c.is_ascii_digit()) {
            text.split(',')
                .map(|tok| {
                    tok.trim().parse::<u32>().map_err(|_| {
                        Error::InvalidWord(format!("`{tok}` is not a letter index"))
                    })
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            text.chars()
                .map(|c| {
                    if c.is_ascii_lowercase() {
                        Ok(c as u32 - 'a' as u32)
                    } else {
                        Err(Error::InvalidWord(format!("unexpected character `{c}`")))
                    }
                })
                .collect::<Result<Vec<_>>>()?
        };
        Word::new(letters, alphabet)
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Factor `[start, end)`.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word {
            letters: self.letters[start..end].to_vec(),
            alphabet: self.alphabet,
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            alphabet: self.alphabet.max(other.alphabet),
        }
    }

    pub fn pow(&self, exponent: usize) -> Word {
        Word {
            letters: self.letters.repeat(exponent),
            alphabet: self.alphabet,
        }
    }

    pub fn push(&mut self, letter: u32) {
        debug_assert!(letter < self.alphabet.size());
        self.letters.push(letter);
    }

    pub fn pop(&mut self) -> Option<u32> {
        self.letters.pop()
    }

    /// Cyclic shift moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Word { letters, alphabet: self.alphabet }
    }

    pub fn rotations(&self) -> Vec<Word> {
        (0..self.len().max(1)).map(|k| self.rotate(k)).collect()
    }

    /// Same letters viewed over a larger alphabet.
    pub fn widen(&self, alphabet: Alphabet) -> Result<Word> {
        Word::new(self.letters.clone(), alphabet)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet.size() <= 26 {
            for &a in &self.letters {
                write!(f, "{}", char::from(b'a' + a as u8))?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn same_alphabet(u: &Word, v: &Word) -> Result<()> {
    if u.alphabet != v.alphabet {
        return Err(Error::AlphabetMismatch {
            left: u.alphabet.size(),
            right: v.alphabet.size(),
        });
    }
    Ok(())
}

pub fn compare(u: &Word, v: &Word) -> Result<LexOrdering> {
    same_alphabet(u, v)?;
    Ok(compare_letters(&u.letters, &v.letters))
}

/// First `k` letters of the tail starting at `start`; shorter tails are
/// returned whole.
pub fn k_tail(w: &Word, start: usize, k: usize) -> Result<Word> {
    if start >= w.len() {
        return Err(Error::Domain(format!(
            "tail start {start} is outside a word of length {}",
            w.len()
        )));
    }
    let end = (start + k).min(w.len());
    Ok(w.factor(start, end))
}

/// Smallest period `p` dividing `|w|` with `w = (w[..p])^(|w|/p)`.
fn root_length(letters: &[u32]) -> usize {
    let n = letters.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| letters[i] == letters[i - p]))
        .unwrap_or(n)
}

pub fn is_primitive(w: &Word) -> bool {
    !w.is_empty() && root_length(&w.letters) == w.len()
}

/// `w = root^exponent` with the exponent maximal.
pub fn primitive_root(w: &Word) -> Result<(Word, usize)> {
    if w.is_empty() {
        return Err(Error::Domain("the empty word has no primitive root".into()));
    }
    let p = root_length(&w.letters);
    Ok((w.factor(0, p), w.len() / p))
}

/// Whether `letters[start..]` begins with `root^d` where `root` has length `p`.
pub(crate) fn has_power_at(letters: &[u32], start: usize, p: usize, d: usize) -> bool {
    let end = start + p * d;
    end <= letters.len() && (start + p..end).all(|i| letters[i] == letters[i - p])
}

/// Leftmost (then shortest-root) occurrence of a factor `u^d`, `u` non-empty.
pub fn contains_power(w: &Word, d: usize) -> Result<Option<(usize, Word)>> {
    if d == 0 {
        return Err(Error::Domain("power exponent d must be at least 1".into()));
    }
    Ok(find_power(&w.letters, d).map(|(s, p)| (s, w.factor(s, s + p))))
}

pub(crate) fn find_power(letters: &[u32], d: usize) -> Option<(usize, usize)> {
    let n = letters.len();
    for start in 0..n {
        for p in 1..=(n - start) / d {
            if has_power_at(letters, start, p, d) {
                return Some((start, p));
            }
        }
    }
    None
}

/// Whether some factor ending at the last letter is a `d`-th power.
pub(crate) fn has_power_suffix(letters: &[u32], d: usize) -> bool {
    let n = letters.len();
    (1..=n / d).any(|p| has_power_at(letters, n - p * d, p, d))
}

/// Every cyclic shift of `u` is comparable with every cyclic shift of `v`.
pub fn strong_comparable(u: &Word, v: &Word) -> bool {
    if u.is_empty() || v.is_empty() {
        return false;
    }
    let ru = u.rotations();
    let rv = v.rotations();
    ru.iter().all(|a| {
        rv.iter()
            .all(|b| compare_letters(&a.letters, &b.letters).is_comparable())
    })
}

/// Classes of the transitive closure of "not strongly comparable".
/// Classes are ordered by their first member; members keep input order.
pub fn strong_classes(words: &[Word]) -> Vec<Vec<Word>> {
    strong_class_indices(words)
        .into_iter()
        .map(|class| class.into_iter().map(|i| words[i].clone()).collect())
        .collect()
}

pub(crate) fn strong_class_indices(words: &[Word]) -> Vec<Vec<usize>> {
    let n = words.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if !strong_comparable(&words[i], &words[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(i);
    }
    classes
}

pub fn distinct_factor_count(w: &Word, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::Domain("factor length k must be at least 1".into()));
    }
    if k > w.len() {
        return Ok(0);
    }
    Ok(w.letters.windows(k).collect::<BTreeSet<_>>().len())
}

/// A word together with all of its cyclic shifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordCycle {
    representative: Word,
    shifts: Vec<Word>,
}

impl WordCycle {
    pub fn new(w: &Word) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::Domain("word-cycle of the empty word".into()));
        }
        let shifts: Vec<Word> = w
            .rotations()
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let representative = shifts[0].clone();
        Ok(WordCycle { representative, shifts })
    }

    /// Lexicographically least rotation.
    pub fn representative(&self) -> &Word {
        &self.representative
    }

    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Distinct rotations, sorted.
    pub fn shifts(&self) -> &[Word] {
        &self.shifts
    }

    pub fn is_acyclic(&self) -> bool {
        self.shifts.len() == self.len()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.shifts.binary_search(w).is_ok()
    }
}

/// All primitive words of length `len` over `alphabet`, in lexicographic order.
pub fn acyclic_words(alphabet: Alphabet, len: usize) -> Vec<Word> {
    alphabet
        .words_of_length(len)
        .into_iter()
        .filter(is_primitive)
        .collect()
}
