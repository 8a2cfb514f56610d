//! Morphisms of free monoids, square/cube-freeness, and the bounded
//! square-free-morphism tests.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{has_power_suffix, Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Morphism {
    #[serde(skip)]
    source: Alphabet,
    #[serde(skip)]
    target: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.size() as usize {
            return Err(Error::Domain(format!(
                "morphism needs {} images, got {}",
                source.size(),
                images.len()
            )));
        }
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::Domain(format!("image of letter {a} is empty")));
            }
            if img.alphabet() != target {
                return Err(Error::AlphabetMismatch {
                    left: img.alphabet().size(),
                    right: target.size(),
                });
            }
        }
        Ok(Morphism { source, target, images })
    }

    /// `a=ab,b=ba` style specification; letters are lowercase.
    pub fn parse(spec: &str, source: Alphabet, target: Alphabet) -> Result<Self> {
        let mut images: Vec<Option<Word>> = vec![None; source.size() as usize];
        for pair in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (lhs, rhs) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("`{pair}` is not letter=image")))?;
            let letter = Word::parse(lhs.trim(), source)?;
            if letter.len() != 1 {
                return Err(Error::Parse(format!("`{lhs}` is not a single letter")));
            }
            images[letter.letters()[0] as usize] = Some(Word::parse(rhs.trim(), target)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(a, img)| img.ok_or_else(|| Error::Parse(format!("no image for letter {a}"))))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(source, target, images)
    }

    /// `a -> ab, b -> ba`.
    pub fn thue_morse() -> Self {
        let ab = Alphabet::new(2).unwrap();
        let img = |s| Word::parse(s, ab).unwrap();
        Morphism::new(ab, ab, vec![img("ab"), img("ba")]).unwrap()
    }

    /// `a -> abcab, b -> acabcb, c -> acbcacb`.
    pub fn thue_ternary() -> Self {
        let abc = Alphabet::new(3).unwrap();
        let img = |s| Word::parse(s, abc).unwrap();
        Morphism::new(abc, abc, vec![img("abcab"), img("acabcb"), img("acbcacb")]).unwrap()
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = (0..alphabet.size())
            .map(|a| Word::new(vec![a], alphabet).unwrap())
            .collect();
        Morphism { source: alphabet, target: alphabet, images }
    }

    pub fn source(&self) -> Alphabet {
        self.source
    }

    pub fn target(&self) -> Alphabet {
        self.target
    }

    pub fn image(&self, letter: u32) -> &Word {
        &self.images[letter as usize]
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(Word::len).min().unwrap_or(0)
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.alphabet() != self.source {
            return Err(Error::AlphabetMismatch {
                left: w.alphabet().size(),
                right: self.source.size(),
            });
        }
        let letters = w
            .letters()
            .iter()
            .flat_map(|&a| self.images[a as usize].letters().iter().copied())
            .collect();
        Word::new(letters, self.target)
    }

    pub fn iterate(&self, seed: &Word, steps: usize) -> Result<Word> {
        if self.source != self.target {
            return Err(Error::AlphabetMismatch {
                left: self.source.size(),
                right: self.target.size(),
            });
        }
        let mut w = seed.clone();
        for _ in 0..steps {
            w = self.apply(&w)?;
        }
        Ok(w)
    }

    /// Prefix of length `len` of the fixed point generated from `letter`;
    /// needs the image of `letter` to start with `letter` and be longer
    /// than one letter.
    pub fn fixed_point_prefix(&self, letter: u32, len: usize) -> Result<Word> {
        let img = self.image(letter);
        if self.source != self.target || img.letters().first() != Some(&letter) || img.len() < 2 {
            return Err(Error::Domain(format!(
                "letter {letter} does not generate a fixed point"
            )));
        }
        let mut w = Word::new(vec![letter], self.source)?;
        while w.len() < len {
            w = self.apply(&w)?;
        }
        Ok(w.factor(0, len))
    }
}

fn free_of_power(letters: &[u32], d: usize) -> bool {
    (1..=letters.len()).all(|end| !has_power_suffix(&letters[..end], d))
}

pub fn is_square_free(w: &Word) -> bool {
    free_of_power(w.letters(), 2)
}

pub fn is_cube_free(w: &Word) -> bool {
    free_of_power(w.letters(), 3)
}

/// Square-free words over `alphabet` of length at most `max_len`, by
/// depth-first extension (square-freeness is prefix-closed).
pub fn square_free_words(alphabet: Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = Word::empty(alphabet);
    fn go(cur: &mut Word, max_len: usize, out: &mut Vec<Word>) {
        out.push(cur.clone());
        if cur.len() == max_len {
            return;
        }
        for a in 0..cur.alphabet().size() {
            cur.push(a);
            if !has_power_suffix(cur.letters(), 2) {
                go(cur, max_len, out);
            }
            cur.pop();
        }
    }
    go(&mut cur, max_len, &mut out);
    out
}

/// `k = max{3, 1 + ⌊(M - 3)/m⌋}` for the longest (`M`) and shortest (`m`)
/// letter images.
pub fn crochemore_k(m: &Morphism) -> usize {
    let big = m.max_image_len() as i64;
    let small = m.min_image_len() as i64;
    let q = (big - 3).div_euclid(small);
    3.max(1 + q).max(0) as usize
}

/// Square-free iff every square-free source word of length at most
/// [`crochemore_k`] has a square-free image.
pub fn is_square_free_morphism(m: &Morphism) -> bool {
    let k = crochemore_k(m);
    square_free_words(m.source(), k)
        .iter()
        .all(|w| is_square_free(&m.apply(w).expect("source alphabet")))
}

/// Images of square-free words of length at most 3 are square-free, and no
/// letter image is a factor of another letter's image.
pub fn thue2_criterion(m: &Morphism) -> bool {
    let short_ok = square_free_words(m.source(), 3)
        .iter()
        .all(|w| is_square_free(&m.apply(w).expect("source alphabet")));
    let n = m.source().size();
    let factor_ok = (0..n).all(|a| {
        (0..n).all(|b| {
            a == b || {
                let ia = m.image(a).letters();
                let ib = m.image(b).letters();
                !ib.windows(ia.len()).any(|w| w == ia)
            }
        })
    });
    short_ok && factor_ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(s: &str) -> Word {
        Word::parse(s, Alphabet::new(2).unwrap()).unwrap()
    }

    fn abc(s: &str) -> Word {
        Word::parse(s, Alphabet::new(3).unwrap()).unwrap()
    }

    #[test]
    fn apply_examples() {
        let tm = Morphism::thue_morse();
        assert_eq!(tm.iterate(&ab("a"), 3).unwrap(), ab("abbabaab"));
        let id = Morphism::identity(Alphabet::new(3).unwrap());
        assert_eq!(id.apply(&abc("cab")).unwrap(), abc("cab"));
        assert_eq!(Morphism::thue_ternary().image(0), &abc("abcab"));
        assert!(tm.apply(&abc("a")).is_err());
    }

    #[test]
    fn freeness_examples() {
        assert!(is_square_free(&abc("aba")));
        assert!(!is_square_free(&abc("abab")));
        let tm = Morphism::thue_morse().fixed_point_prefix(0, 64).unwrap();
        assert!(is_cube_free(&tm));
        assert!(!is_square_free(&tm));
        assert!(!is_cube_free(&ab("aaa")));
    }

    #[test]
    fn crochemore_examples() {
        let t = Morphism::thue_ternary();
        assert_eq!(crochemore_k(&t), 3);
        assert!(is_square_free_morphism(&t));
        let a2 = Alphabet::new(2).unwrap();
        let collapse = Morphism::parse("a=a,b=a", a2, a2).unwrap();
        assert!(!is_square_free(&collapse.apply(&ab("ab")).unwrap()));
        assert!(!is_square_free_morphism(&collapse));
        assert!(!is_square_free_morphism(&Morphism::thue_morse()));
    }

    #[test]
    fn thue2_examples() {
        assert!(thue2_criterion(&Morphism::thue_ternary()));
        assert!(thue2_criterion(&Morphism::identity(Alphabet::new(1).unwrap())));
        let a2 = Alphabet::new(2).unwrap();
        let m = Morphism::parse("a=ab,b=abab", a2, a2).unwrap();
        assert!(!thue2_criterion(&m));
    }

    #[test]
    fn binary_square_free_words_are_short() {
        let words = square_free_words(Alphabet::new(2).unwrap(), 10);
        assert_eq!(words.iter().map(Word::len).max(), Some(3));
    }

    #[test]
    fn parse_rejects_bad_specs() {
        let a2 = Alphabet::new(2).unwrap();
        assert!(Morphism::parse("a=ab", a2, a2).is_err());
        assert!(Morphism::parse("a=ab,b", a2, a2).is_err());
        assert!(Morphism::parse("ab=a,b=b", a2, a2).is_err());
        assert!(Morphism::parse("a=,b=b", a2, a2).is_err());
    }
}
