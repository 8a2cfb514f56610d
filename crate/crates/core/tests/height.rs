use proptest::prelude::*;
use wordlab::divisibility::is_strongly_n_divisible;
use wordlab::height::{
    extract_fragments, height_over, large_selective_height, maximal_runs, periodic_fragment_count,
    small_selective_height,
};
use wordlab::word::{acyclic_words, is_primitive, strong_classes};
use wordlab::{compare, Alphabet, LexOrdering, Word};

fn word_strategy(l: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..l, 0..=max_len)
        .prop_map(move |v| Word::new(v, Alphabet::new(l).unwrap()).unwrap())
}

/// Fewest powers of `bases` spelling `s`, by plain recursion.
fn brute_height(s: &[u32], bases: &[Word]) -> Option<usize> {
    if s.is_empty() {
        return Some(0);
    }
    let mut best: Option<usize> = None;
    for b in bases {
        let p = b.len();
        let mut e = 1;
        while e * p <= s.len() && s[(e - 1) * p..e * p] == *b.letters() {
            if let Some(h) = brute_height(&s[e * p..], bases) {
                best = Some(best.map_or(h + 1, |x| x.min(h + 1)));
            }
            e += 1;
        }
    }
    best
}

proptest! {
    #[test]
    fn height_is_optimal(w in word_strategy(2, 12), pick in prop::collection::vec(0usize..6, 1..4)) {
        let a = Alphabet::new(2).unwrap();
        let pool: Vec<Word> = ["a", "b", "ab", "ba", "aab", "abb"]
            .iter()
            .map(|s| Word::parse(s, a).unwrap())
            .collect();
        let bases: Vec<Word> = pick.iter().map(|&i| pool[i].clone()).collect();
        let got = height_over(&w, &bases).unwrap();
        prop_assert_eq!(got.as_ref().map(|f| f.height()), brute_height(w.letters(), &bases));
        if let Some(f) = got {
            prop_assert_eq!(f.expand(), w.letters().to_vec());
        }
    }

    #[test]
    fn fragments_reconstruct(w in word_strategy(3, 24), t in 2usize..4) {
        let rep = extract_fragments(&w, t).unwrap();
        prop_assert_eq!(rep.reconstruct(), w);
        for f in &rep.fragments {
            prop_assert!(f.exponent >= t);
            prop_assert!(is_primitive(&f.period));
        }
        prop_assert!(extract_fragments(&rep.residual, t).unwrap().fragments.is_empty());
    }
}

/// All occurrences `z^(k+1)` with `z` primitive in `z_set`.
fn occurrences(w: &Word, z_set: &[Word], k: usize) -> Vec<(usize, usize, Word)> {
    let s = w.letters();
    let mut out = Vec::new();
    for z in z_set.iter().filter(|z| is_primitive(z)) {
        let span = z.len() * (k + 1);
        for start in 0..=s.len().saturating_sub(span) {
            if start + span <= s.len() && s[start..start + span] == *z.pow(k + 1).letters() {
                out.push((start, start + span, z.clone()));
            }
        }
    }
    out
}

fn small_by_subsets(w: &Word, z_set: &[Word], k: usize) -> usize {
    let mut z_sorted = z_set.to_vec();
    z_sorted.sort();
    z_sorted.dedup();
    let primitive: Vec<Word> = z_sorted.into_iter().filter(is_primitive).collect();
    let classes = strong_classes(&primitive);
    let class_of = |z: &Word| classes.iter().position(|c| c.contains(z)).unwrap();
    let occ = occurrences(w, &primitive, k);
    assert!(occ.len() < 20);
    let mut best = 0;
    for mask in 0u32..1 << occ.len() {
        let chosen: Vec<&(usize, usize, Word)> =
            (0..occ.len()).filter(|&i| mask >> i & 1 == 1).map(|i| &occ[i]).collect();
        let ok = chosen.iter().enumerate().all(|(i, a)| {
            chosen[i + 1..]
                .iter()
                .all(|b| (a.1 <= b.0 || b.1 <= a.0) && class_of(&a.2) != class_of(&b.2))
        });
        if ok {
            best = best.max(chosen.len());
        }
    }
    best
}

#[test]
fn small_selective_height_matches_subsets() {
    let a = Alphabet::new(2).unwrap();
    let z_sets: Vec<Vec<Word>> = vec![
        acyclic_words(a, 2),
        acyclic_words(a, 1),
        ["a", "ab", "abb"].iter().map(|s| Word::parse(s, a).unwrap()).collect(),
    ];
    for len in 0..=10 {
        for w in a.words_of_length(len) {
            for z in &z_sets {
                for k in 1..=2 {
                    let got = small_selective_height(&w, z, k).unwrap();
                    assert_eq!(got.value, small_by_subsets(&w, z, k), "{w} k={k}");
                }
            }
        }
    }
}

#[test]
fn large_selective_height_matches_subsets() {
    let a = Alphabet::new(2).unwrap();
    let z: Vec<Word> = ["a", "b", "ab"].iter().map(|s| Word::parse(s, a).unwrap()).collect();
    for len in 0..=10 {
        for w in a.words_of_length(len) {
            let runs = maximal_runs(&w, &z, 1).unwrap();
            let mut best = 0;
            for mask in 0u32..1 << runs.len() {
                let mut chosen: Vec<_> =
                    (0..runs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| &runs[i]).collect();
                chosen.sort_by_key(|r| r.start);
                let ok = chosen.windows(2).all(|p| {
                    p[0].end() <= p[1].start
                        && compare(&p[0].word(), &p[1].word()).unwrap() == LexOrdering::Incomparable
                });
                if ok {
                    best = best.max(chosen.len());
                }
            }
            assert_eq!(large_selective_height(&w, &z, 1).unwrap().value, best, "{w}");
        }
    }
}

/// Windows `x^(2n)` with `x` primitive, `|x| < n`, as (start, end, x).
fn fragment_windows(w: &Word, n: usize) -> Vec<(usize, usize, Word)> {
    let s = w.letters();
    let mut out = Vec::new();
    for start in 0..s.len() {
        for p in 1..n {
            let end = start + 2 * n * p;
            if end <= s.len() {
                let x = w.factor(start, start + p);
                if is_primitive(&x) && s[start..end] == *x.pow(2 * n).letters() {
                    out.push((start, end, x));
                }
            }
        }
    }
    out
}

#[test]
fn fragment_count_matches_subsets() {
    let a = Alphabet::new(2).unwrap();
    let n = 2;
    let mut nonzero = 0;
    for len in 0..=16 {
        for w in a.words_of_length(len) {
            let win = fragment_windows(&w, n);
            let mut best = 0;
            for mask in 0u32..1 << win.len() {
                let chosen: Vec<_> =
                    (0..win.len()).filter(|&i| mask >> i & 1 == 1).map(|i| &win[i]).collect();
                let ok = chosen.windows(2).all(|p| {
                    let gap = w.factor(p[0].1.min(p[1].0), p[1].0);
                    p[0].1 + n < p[1].0 && compare(&gap, &p[0].2).unwrap().is_comparable()
                });
                if ok {
                    best = best.max(chosen.len());
                }
            }
            let got = periodic_fragment_count(&w, n).unwrap();
            assert_eq!(got.value, best, "{w}");
            nonzero += usize::from(best > 1);
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn selective_height_within_bound_on_small_words() {
    let a = Alphabet::new(2).unwrap();
    let z = acyclic_words(a, 2);
    for len in 0..=12 {
        for w in a.words_of_length(len) {
            if is_strongly_n_divisible(&w, 3, &z, 3).unwrap().is_none() {
                assert!(small_selective_height(&w, &z, 2).unwrap().value <= 3);
            }
        }
    }
}
