use proptest::prelude::*;
use wordlab::word::{
    contains_power, distinct_factor_count, primitive_root, strong_classes, strong_comparable,
};
use wordlab::{compare, Alphabet, LexOrdering, Word};

fn all_words(l: u32, max_len: usize) -> Vec<Word> {
    let a = Alphabet::new(l).unwrap();
    (0..=max_len).flat_map(|len| a.words_of_length(len)).collect()
}

fn word_strategy(l: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..l, 0..=max_len)
        .prop_map(move |v| Word::new(v, Alphabet::new(l).unwrap()).unwrap())
}

/// Smallest period of `w` dividing its length, by scanning divisors.
fn least_dividing_period(w: &Word) -> usize {
    let s = w.letters();
    (1..=s.len())
        .find(|&p| s.len().is_multiple_of(p) && (p..s.len()).all(|i| s[i] == s[i - p]))
        .unwrap()
}

proptest! {
    #[test]
    fn compare_is_antisymmetric(u in word_strategy(3, 8), v in word_strategy(3, 8)) {
        let uv = compare(&u, &v).unwrap();
        prop_assert_eq!(compare(&v, &u).unwrap(), uv.reverse());
        prop_assert_eq!(uv == LexOrdering::Equal, u == v);
    }

    #[test]
    fn compare_is_transitive(
        u in word_strategy(2, 6),
        v in word_strategy(2, 6),
        w in word_strategy(2, 6),
    ) {
        if compare(&u, &v).unwrap() == LexOrdering::Less
            && compare(&v, &w).unwrap() == LexOrdering::Less
        {
            prop_assert_eq!(compare(&u, &w).unwrap(), LexOrdering::Less);
        }
    }

    #[test]
    fn same_length_words_are_comparable(u in word_strategy(3, 8), v in word_strategy(3, 8)) {
        let len = u.len().min(v.len());
        let (u, v) = (u.factor(0, len), v.factor(0, len));
        prop_assert!(compare(&u, &v).unwrap() != LexOrdering::Incomparable);
    }

    #[test]
    fn primitive_root_round_trips(w in word_strategy(2, 12)) {
        prop_assume!(!w.is_empty());
        let (root, e) = primitive_root(&w).unwrap();
        prop_assert_eq!(root.pow(e), w.clone());
        prop_assert_eq!(root.len(), least_dividing_period(&w));
    }

    #[test]
    fn strong_comparability_is_symmetric(u in word_strategy(2, 5), v in word_strategy(2, 5)) {
        prop_assume!(!u.is_empty() && !v.is_empty());
        prop_assert_eq!(strong_comparable(&u, &v), strong_comparable(&v, &u));
    }
}

#[test]
fn compare_is_irreflexive_exhaustively() {
    for w in all_words(2, 6) {
        assert_eq!(compare(&w, &w).unwrap(), LexOrdering::Equal);
    }
}

#[test]
fn strong_classes_partition_the_input() {
    let a = Alphabet::new(2).unwrap();
    let words = a.words_of_length(3);
    let classes = strong_classes(&words);
    let total: usize = classes.iter().map(Vec::len).sum();
    assert_eq!(total, words.len());
    for (i, c) in classes.iter().enumerate() {
        for d in &classes[i + 1..] {
            for u in c {
                for v in d {
                    assert!(strong_comparable(u, v), "{u} and {v} split across classes");
                }
            }
        }
    }
}

/// Few distinct factors of length `k` in a word of length `k t` force a
/// `t`-th power.
#[test]
fn few_factors_force_a_power() {
    for k in 1..=3 {
        for t in 1..=3 {
            let a = Alphabet::new(2).unwrap();
            for w in a.words_of_length(k * t) {
                if distinct_factor_count(&w, k).unwrap() <= k {
                    assert!(contains_power(&w, t).unwrap().is_some(), "{w} k={k} t={t}");
                }
            }
        }
    }
}

/// In a word of length `x` with no `d`-th power the tails starting in the
/// first `ceil(x/d)` positions are pairwise comparable.
#[test]
fn power_free_words_have_comparable_leading_tails() {
    for w in all_words(2, 12) {
        let x = w.len();
        for d in 2..=3 {
            if contains_power(&w, d).unwrap().is_some() {
                continue;
            }
            let lead = x.div_ceil(d);
            for i in 0..lead {
                for j in i + 1..lead {
                    let ti = w.factor(i, x);
                    let tj = w.factor(j, x);
                    assert!(compare(&ti, &tj).unwrap().is_comparable(), "{w} d={d} i={i} j={j}");
                }
            }
        }
    }
}

#[test]
fn power_free_words_have_comparable_leading_tails_ternary() {
    for w in all_words(3, 8) {
        let x = w.len();
        if contains_power(&w, 2).unwrap().is_some() {
            continue;
        }
        let lead = x.div_ceil(2);
        for i in 0..lead {
            for j in i + 1..lead {
                assert!(compare(&w.factor(i, x), &w.factor(j, x)).unwrap().is_comparable());
            }
        }
    }
}

#[test]
fn text_format_round_trips() {
    let wide = Alphabet::new(40).unwrap();
    let w = Word::new(vec![0, 39, 7], wide).unwrap();
    assert_eq!(Word::parse(&w.to_string(), wide).unwrap(), w);
    let small = Alphabet::new(3).unwrap();
    assert_eq!(Word::parse("0,2,1", small).unwrap(), Word::parse("acb", small).unwrap());
    assert!(Word::parse("d", small).is_err());
}
