//! Height of a word over a word set, small and large selective heights,
//! the periodic-fragment count, and iterated fragment extraction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{
    compare_letters, has_power_at, is_primitive, strong_class_indices, LexOrdering, Word,
};

/// `w = base_1^e_1 ⋯ base_r^e_r`; the height is `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerFactorization {
    pub factors: Vec<(Word, usize)>,
}

impl PowerFactorization {
    pub fn height(&self) -> usize {
        self.factors.len()
    }

    pub fn expand(&self) -> Vec<u32> {
        self.factors
            .iter()
            .flat_map(|(b, e)| b.letters().repeat(*e))
            .collect()
    }
}

fn check_set(set: &[Word], what: &str) -> Result<Vec<Word>> {
    let mut v = set.to_vec();
    v.sort();
    v.dedup();
    if v.is_empty() || v.iter().any(Word::is_empty) {
        return Err(Error::Domain(format!("{what} must be non-empty with non-empty members")));
    }
    Ok(v)
}

/// Minimal-length factorization of `w` into powers of members of `bases`.
/// Ties prefer the longest first factor, then the smaller base.
pub fn height_over(w: &Word, bases: &[Word]) -> Result<Option<PowerFactorization>> {
    let bases = check_set(bases, "base set")?;
    let letters = w.letters();
    let n = letters.len();
    // best[i] = (height of [i, n), next cut, base index)
    let mut best: Vec<Option<(usize, usize, usize)>> = vec![None; n + 1];
    best[n] = Some((0, n, usize::MAX));
    for i in (0..n).rev() {
        for (bi, b) in bases.iter().enumerate() {
            let p = b.len();
            let mut e = 1;
            while i + e * p <= n && letters[i + (e - 1) * p..i + e * p] == *b.letters() {
                let j = i + e * p;
                if let Some((h, _, _)) = best[j] {
                    let cand = (h + 1, j, bi);
                    let better = match best[i] {
                        None => true,
                        Some((bh, bj, bb)) => (cand.0, std::cmp::Reverse(j), bi)
                            < (bh, std::cmp::Reverse(bj), bb),
                    };
                    if better {
                        best[i] = Some(cand);
                    }
                }
                e += 1;
            }
        }
    }
    if best[0].is_none() {
        return Ok(None);
    }
    let mut factors = Vec::new();
    let mut i = 0;
    while i < n {
        let (_, j, bi) = best[i].unwrap();
        factors.push((bases[bi].clone(), (j - i) / bases[bi].len()));
        i = j;
    }
    Ok(Some(PowerFactorization { factors }))
}

/// An occurrence `base^exponent` starting at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicOccurrence {
    pub start: usize,
    pub base: Word,
    pub exponent: usize,
}

impl PeriodicOccurrence {
    pub fn end(&self) -> usize {
        self.start + self.base.len() * self.exponent
    }

    pub fn word(&self) -> Word {
        self.base.pow(self.exponent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelectiveHeight {
    pub value: usize,
    pub witness: Vec<PeriodicOccurrence>,
}

fn primitive_bases(z: &[Word]) -> Result<Vec<Word>> {
    Ok(check_set(z, "base set")?
        .into_iter()
        .filter(is_primitive)
        .collect())
}

/// Small selective height with boundary `k`: the largest number of pairwise
/// disjoint occurrences `z^m` (`z` in `z_set` primitive, `m > k`) whose bases
/// lie in pairwise distinct strong-comparability classes of `z_set`.
pub fn small_selective_height(w: &Word, z_set: &[Word], k: usize) -> Result<SelectiveHeight> {
    let bases = primitive_bases(z_set)?;
    let letters = w.letters();
    let classes = strong_class_indices(&bases);
    // candidates per class: the shortest qualifying power at each start
    let per_class: Vec<Vec<PeriodicOccurrence>> = classes
        .iter()
        .map(|class| {
            let mut occ = Vec::new();
            for start in 0..letters.len() {
                for &bi in class {
                    let b = &bases[bi];
                    if letters[start..].starts_with(b.letters())
                        && has_power_at(letters, start, b.len(), k + 1)
                    {
                        occ.push(PeriodicOccurrence { start, base: b.clone(), exponent: k + 1 });
                    }
                }
            }
            occ
        })
        .filter(|occ: &Vec<_>| !occ.is_empty())
        .collect();

    fn search(
        per_class: &[Vec<PeriodicOccurrence>],
        idx: usize,
        chosen: &mut Vec<PeriodicOccurrence>,
        best: &mut Vec<PeriodicOccurrence>,
    ) {
        if chosen.len() + (per_class.len() - idx) <= best.len() {
            return;
        }
        if idx == per_class.len() {
            *best = chosen.clone();
            return;
        }
        for occ in &per_class[idx] {
            if chosen.iter().all(|c| occ.end() <= c.start || c.end() <= occ.start) {
                chosen.push(occ.clone());
                search(per_class, idx + 1, chosen, best);
                chosen.pop();
            }
        }
        search(per_class, idx + 1, chosen, best);
    }

    let mut best = Vec::new();
    search(&per_class, 0, &mut Vec::new(), &mut best);
    best.sort_by_key(|o| o.start);
    Ok(SelectiveHeight { value: best.len(), witness: best })
}

/// Maximal runs `z^m`, `m > k`: runs that cannot be extended by a whole
/// period on either side.
pub fn maximal_runs(w: &Word, z_set: &[Word], k: usize) -> Result<Vec<PeriodicOccurrence>> {
    let bases = primitive_bases(z_set)?;
    let letters = w.letters();
    let mut runs = Vec::new();
    for b in &bases {
        let p = b.len();
        let mut start = 0;
        while start + p <= letters.len() {
            if letters[start..start + p] != *b.letters() {
                start += 1;
                continue;
            }
            let extends_left = start >= p && letters[start - p..start] == *b.letters();
            if extends_left {
                start += 1;
                continue;
            }
            let mut m = 1;
            while letters.len() >= start + (m + 1) * p
                && letters[start + m * p..start + (m + 1) * p] == *b.letters()
            {
                m += 1;
            }
            if m > k {
                runs.push(PeriodicOccurrence { start, base: b.clone(), exponent: m });
            }
            start += 1;
        }
    }
    runs.sort_by(|a, b| (a.start, a.end(), &a.base).cmp(&(b.start, b.end(), &b.base)));
    Ok(runs)
}

/// Large selective height with boundary `k`: the longest left-to-right
/// sequence of pairwise disjoint maximal runs `z^m`, `m > k`, in which each
/// adjacent pair is incomparable (one is a prefix of the other).
pub fn large_selective_height(w: &Word, z_set: &[Word], k: usize) -> Result<SelectiveHeight> {
    let runs = maximal_runs(w, z_set, k)?;
    let words: Vec<Word> = runs.iter().map(PeriodicOccurrence::word).collect();
    // longest[i] = longest admissible sequence starting with run i
    let mut longest = vec![1usize; runs.len()];
    let mut next = vec![None; runs.len()];
    for i in (0..runs.len()).rev() {
        for j in i + 1..runs.len() {
            if runs[i].end() <= runs[j].start
                && compare_letters(words[i].letters(), words[j].letters())
                    == LexOrdering::Incomparable
                && longest[j] + 1 > longest[i]
            {
                longest[i] = longest[j] + 1;
                next[i] = Some(j);
            }
        }
    }
    let Some(first) = (0..runs.len()).max_by_key(|&i| (longest[i], std::cmp::Reverse(i))) else {
        return Ok(SelectiveHeight { value: 0, witness: Vec::new() });
    };
    let mut witness = vec![runs[first].clone()];
    let mut cur = first;
    while let Some(j) = next[cur] {
        witness.push(runs[j].clone());
        cur = j;
    }
    Ok(SelectiveHeight { value: witness.len(), witness })
}

/// Candidate fragments `x^(2n)` with `x` primitive and `|x| < n`.
fn fragment_candidates(w: &Word, n: usize) -> Vec<PeriodicOccurrence> {
    let letters = w.letters();
    let mut out = Vec::new();
    for start in 0..letters.len() {
        for p in 1..n {
            let x = &letters[start..(start + p).min(letters.len())];
            if x.len() == p
                && has_power_at(letters, start, p, 2 * n)
                && is_primitive(&w.factor(start, start + p))
            {
                out.push(PeriodicOccurrence {
                    start,
                    base: w.factor(start, start + p),
                    exponent: 2 * n,
                });
            }
        }
    }
    out
}

/// Whether `second` may follow `first`: the gap between them is longer
/// than `n` and comparable with the period of `first`.
pub(crate) fn fragments_separated(
    w: &Word,
    n: usize,
    first: &PeriodicOccurrence,
    second: &PeriodicOccurrence,
) -> bool {
    first.end() + n < second.start
        && compare_letters(&w.letters()[first.end()..second.start], first.base.letters())
            .is_comparable()
}

/// Largest number of disjoint fragments `x_i^(2n)`, `|x_i| < n`, each pair
/// of consecutive fragments separated by a factor of length greater than
/// `n` that is comparable with the preceding period.
pub fn periodic_fragment_count(w: &Word, n: usize) -> Result<SelectiveHeight> {
    if n < 2 {
        return Err(Error::Domain("degree n must be at least 2".into()));
    }
    let cand = fragment_candidates(w, n);
    let mut longest = vec![1usize; cand.len()];
    let mut next = vec![None; cand.len()];
    for i in (0..cand.len()).rev() {
        for j in i + 1..cand.len() {
            if fragments_separated(w, n, &cand[i], &cand[j]) && longest[j] + 1 > longest[i] {
                longest[i] = longest[j] + 1;
                next[i] = Some(j);
            }
        }
    }
    let Some(first) = (0..cand.len()).max_by_key(|&i| (longest[i], std::cmp::Reverse(i))) else {
        return Ok(SelectiveHeight { value: 0, witness: Vec::new() });
    };
    let mut witness = vec![cand[first].clone()];
    let mut cur = first;
    while let Some(j) = next[cur] {
        witness.push(cand[j].clone());
        cur = j;
    }
    Ok(SelectiveHeight { value: witness.len(), witness })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fragment {
    /// Primitive period.
    pub period: Word,
    pub exponent: usize,
    /// Position of the fragment in the word it was cut from.
    pub splice_at: usize,
    /// Position of its first letter in the original input.
    pub source_start: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FragmentReport {
    pub fragments: Vec<Fragment>,
    pub residual: Word,
}

impl FragmentReport {
    /// Undo the extraction steps in reverse order.
    pub fn reconstruct(&self) -> Word {
        let mut letters = self.residual.letters().to_vec();
        for f in self.fragments.iter().rev() {
            let piece = f.period.letters().repeat(f.exponent);
            letters.splice(f.splice_at..f.splice_at, piece);
        }
        Word::new(letters, self.residual.alphabet()).expect("letters come from the same alphabet")
    }

    /// Line-oriented record: one `fragment` line per extraction step and a
    /// closing `residual` line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.fragments {
            out.push_str(&format!(
                "fragment source_start={} splice_at={} period={} exponent={}\n",
                f.source_start, f.splice_at, f.period, f.exponent
            ));
        }
        out.push_str(&format!("residual {}\n", self.residual));
        out
    }
}

/// Repeatedly cut out the leftmost (then shortest-period) factor `x^t` with
/// `x` primitive, extended by whole periods on both sides.
pub fn extract_fragments(w: &Word, t: usize) -> Result<FragmentReport> {
    if t < 2 {
        return Err(Error::Domain("exponent threshold t must be at least 2".into()));
    }
    let mut letters = w.letters().to_vec();
    let mut origin: Vec<usize> = (0..letters.len()).collect();
    let mut fragments = Vec::new();
    loop {
        let found = (0..letters.len()).find_map(|start| {
            (1..=(letters.len() - start) / t).find_map(|p| {
                (has_power_at(&letters, start, p, t)
                    && is_primitive(&Word::new(letters[start..start + p].to_vec(), w.alphabet()).ok()?))
                .then_some((start, p))
            })
        });
        let Some((mut start, p)) = found else { break };
        let mut end = start + p * t;
        while start >= p && letters[start - p..start] == letters[start..start + p] {
            start -= p;
        }
        while end + p <= letters.len() && letters[end..end + p] == letters[end - p..end] {
            end += p;
        }
        let period = Word::new(letters[start..start + p].to_vec(), w.alphabet())?;
        fragments.push(Fragment {
            period,
            exponent: (end - start) / p,
            splice_at: start,
            source_start: origin[start],
        });
        letters.drain(start..end);
        origin.drain(start..end);
    }
    Ok(FragmentReport {
        fragments,
        residual: Word::new(letters, w.alphabet())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{acyclic_words, Alphabet};

    fn w3(s: &str) -> Word {
        Word::parse(s, Alphabet::new(3).unwrap()).unwrap()
    }

    #[test]
    fn height_examples() {
        let h = height_over(&w3("aabb"), &[w3("a"), w3("b")]).unwrap().unwrap();
        assert_eq!(h.factors, vec![(w3("a"), 2), (w3("b"), 2)]);
        let h = height_over(&w3("abab"), &[w3("a"), w3("b"), w3("ab")]).unwrap().unwrap();
        assert_eq!(h.factors, vec![(w3("ab"), 2)]);
        assert!(height_over(&w3("abc"), &[w3("ab")]).unwrap().is_none());
        assert!(height_over(&w3("abc"), &[]).is_err());
        assert_eq!(height_over(&w3(""), &[w3("a")]).unwrap().unwrap().height(), 0);
    }

    #[test]
    fn small_selective_examples() {
        let a2 = Alphabet::new(2).unwrap();
        let z2 = acyclic_words(a2, 2);
        let w = Word::parse("ab", a2).unwrap().pow(5).concat(&Word::parse("ba", a2).unwrap().pow(5));
        assert_eq!(small_selective_height(&w, &z2, 4).unwrap().value, 1);

        let a3 = Alphabet::new(3).unwrap();
        let z3 = acyclic_words(a3, 2);
        let w = w3("ab").pow(5).concat(&w3("ac").pow(5));
        let sh = small_selective_height(&w, &z3, 4).unwrap();
        assert_eq!(sh.value, 2);
        assert_eq!(sh.witness[0].start, 0);
        assert_eq!(sh.witness[1].start, 10);
        assert_eq!(small_selective_height(&w3("abc"), &z3, 4).unwrap().value, 0);
    }

    #[test]
    fn large_selective_examples() {
        let z = [w3("ab")];
        let single = w3("c").concat(&w3("ab").pow(6));
        assert_eq!(large_selective_height(&single, &z, 4).unwrap().value, 1);
        let merged = w3("ab").pow(5).concat(&w3("ab").pow(5));
        let lh = large_selective_height(&merged, &z, 4).unwrap();
        assert_eq!(lh.value, 1);
        assert_eq!(lh.witness[0].exponent, 10);
        // (ab)^2 c (ab)^3: the first run is a prefix of the second
        let pair = w3("abab").concat(&w3("c")).concat(&w3("ababab"));
        let lh = large_selective_height(&pair, &z, 1).unwrap();
        assert_eq!(lh.value, 2);
        // equal runs are comparable-equal, not incomparable
        let eq = w3("abab").concat(&w3("c")).concat(&w3("abab"));
        assert_eq!(large_selective_height(&eq, &z, 1).unwrap().value, 1);
    }

    #[test]
    fn periodic_fragment_examples() {
        let n = 3;
        assert_eq!(periodic_fragment_count(&w3("ab").pow(6), n).unwrap().value, 1);
        assert_eq!(periodic_fragment_count(&w3("abcabc"), n).unwrap().value, 0);
        assert!(periodic_fragment_count(&w3("a"), 1).is_err());
    }

    #[test]
    fn fragment_examples() {
        let r = extract_fragments(&w3("aaaabbbb"), 4).unwrap();
        assert_eq!(r.fragments.len(), 2);
        assert_eq!((r.fragments[0].period.clone(), r.fragments[0].exponent, r.fragments[0].source_start), (w3("a"), 4, 0));
        assert_eq!((r.fragments[1].period.clone(), r.fragments[1].exponent, r.fragments[1].source_start), (w3("b"), 4, 4));
        assert!(r.residual.is_empty());

        let r = extract_fragments(&w3("abab"), 3).unwrap();
        assert!(r.fragments.is_empty());
        assert_eq!(r.residual, w3("abab"));

        let r = extract_fragments(&w3("caaaac"), 4).unwrap();
        assert_eq!(r.fragments.len(), 1);
        assert_eq!(r.fragments[0].source_start, 1);
        assert_eq!(r.residual, w3("cc"));
        assert_eq!(r.reconstruct(), w3("caaaac"));
        assert_eq!(
            r.to_text(),
            "fragment source_start=1 splice_at=1 period=a exponent=4\nresidual cc\n"
        );
    }

    #[test]
    fn fragment_extends_by_whole_periods() {
        // (ab)^5 with threshold 3 is taken whole
        let r = extract_fragments(&w3("cababababab"), 3).unwrap();
        assert_eq!(r.fragments[0].exponent, 5);
        assert_eq!(r.residual, w3("c"));
    }
}
