//! Exhaustive extremal searches over words, checked against the closed-form
//! bounds.
//!
//! Every search walks the word tree in letter order. Subtrees below the
//! first letter may run on a rayon pool; results are merged by a total
//! order on candidates so the report does not depend on scheduling.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{beth, phi, psi, psi_formula, BoundValue, PeriodLength};
use crate::divisibility::{divisible_letters, is_nd_reducible, is_strongly_n_divisible};
use crate::error::{Error, Result};
use crate::height::{height_over, small_selective_height};
use crate::word::{acyclic_words, Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Respected,
    Violated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Coverage {
    Exact,
    LowerBoundOnly,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub search: String,
    pub params: BTreeMap<String, u64>,
    pub empirical: u64,
    pub witness: Option<String>,
    pub bound_name: String,
    pub bound_log10_or_exact: Option<BoundValue>,
    pub verdict: Verdict,
    pub coverage: Coverage,
    pub nodes: u64,
    pub seconds: f64,
}

impl SearchReport {
    pub fn violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    /// The report without its wall time, for byte-for-byte comparisons.
    pub fn without_timing(&self) -> SearchReport {
        SearchReport { seconds: 0.0, ..self.clone() }
    }
}

/// A candidate maximum: larger score wins, then the shorter word, then
/// the lexicographically smaller one.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Best {
    score: usize,
    word: Vec<u32>,
}

impl Best {
    fn beats(&self, other: &Best) -> bool {
        (other.score, self.word.len(), &self.word) < (self.score, other.word.len(), &other.word)
    }
}

#[derive(Debug, Default)]
struct Outcome {
    best: Option<Best>,
    nodes: u64,
    truncated: bool,
}

impl Outcome {
    fn offer(&mut self, cand: Best) {
        if self.best.as_ref().is_none_or(|b| cand.beats(b)) {
            self.best = Some(cand);
        }
    }

    fn merge(mut self, other: Outcome) -> Outcome {
        self.nodes += other.nodes;
        self.truncated |= other.truncated;
        if let Some(b) = other.best {
            self.offer(b);
        }
        self
    }
}

/// Depth-first walk over words of length at most `cap` that are not
/// rejected by `prune` (which must be closed under right extension).
/// `truncated` records that some admissible word of length `cap` has an
/// admissible extension.
fn walk<P, S>(l: u32, cap: usize, workers: usize, prune: P, score: S) -> Result<Outcome>
where
    P: Fn(&[u32]) -> bool + Sync,
    S: Fn(&[u32]) -> usize + Sync,
{
    fn go<P, S>(cur: &mut Vec<u32>, l: u32, cap: usize, prune: &P, score: &S, out: &mut Outcome)
    where
        P: Fn(&[u32]) -> bool,
        S: Fn(&[u32]) -> usize,
    {
        out.nodes += 1;
        out.offer(Best { score: score(cur), word: cur.clone() });
        for a in 0..l {
            cur.push(a);
            if !prune(cur) {
                if cur.len() > cap {
                    out.truncated = true;
                } else {
                    go(cur, l, cap, prune, score, out);
                }
            }
            cur.pop();
        }
    }

    let mut root = Outcome { nodes: 1, ..Outcome::default() };
    root.offer(Best { score: score(&[]), word: Vec::new() });
    if cap == 0 {
        root.truncated = (0..l).any(|a| !prune(&[a]));
        return Ok(root);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    let parts: Vec<Outcome> = pool.install(|| {
        (0..l)
            .into_par_iter()
            .map(|a| {
                let mut out = Outcome::default();
                let mut cur = vec![a];
                if !prune(&cur) {
                    go(&mut cur, l, cap, &prune, &score, &mut out);
                }
                out
            })
            .collect()
    });
    Ok(parts.into_iter().fold(root, Outcome::merge))
}

fn alphabet(l: u64) -> Result<Alphabet> {
    let size = u32::try_from(l).map_err(|_| Error::Domain(format!("l = {l} is too large")))?;
    Alphabet::new(size)
}

fn word_of(letters: &[u32], a: Alphabet) -> Word {
    Word::new(letters.to_vec(), a).expect("search letters lie in the alphabet")
}

fn verdict(bound: Option<&BoundValue>, empirical: u64) -> Verdict {
    match bound {
        Some(b) if !b.admits(&BigInt::from(empirical)) => Verdict::Violated,
        _ => Verdict::Respected,
    }
}

#[allow(clippy::too_many_arguments)]
fn report(
    search: &str,
    params: &[(&str, u64)],
    out: Outcome,
    alphabet: Alphabet,
    bound_name: &str,
    bound: Option<BoundValue>,
    coverage: Coverage,
    started: Instant,
) -> SearchReport {
    let best = out.best.expect("the empty word is always a candidate");
    let empirical = best.score as u64;
    SearchReport {
        search: search.to_string(),
        params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        empirical,
        witness: Some(word_of(&best.word, alphabet).to_string()),
        bound_name: bound_name.to_string(),
        verdict: verdict(bound.as_ref(), empirical),
        bound_log10_or_exact: bound,
        coverage,
        nodes: out.nodes,
        seconds: started.elapsed().as_secs_f64(),
    }
}

/// Longest word over `l` letters that is neither `n`-divisible nor contains
/// a `d`-th power, searched up to length `cap`.
pub fn max_irreducible_length(n: u64, d: u64, l: u64, cap: usize, workers: usize) -> Result<SearchReport> {
    if n < 2 || d < 2 {
        return Err(Error::Domain(format!("search needs n >= 2 and d >= 2, got n={n} d={d}")));
    }
    let started = Instant::now();
    let a = alphabet(l)?;
    let (nu, du) = (n as usize, d as usize);
    let prune = |w: &[u32]| {
        is_nd_reducible(&word_of(w, a), nu, du)
            .expect("parameters validated")
            .is_reducible()
    };
    let out = walk(a.size(), cap, workers, prune, |w| w.len())?;
    let coverage = if out.truncated { Coverage::LowerBoundOnly } else { Coverage::Exact };
    let (name, bound) = if d >= n {
        ("psi", psi(n, d, l)?)
    } else {
        ("psi (formula only; d < n)", psi_formula(n, d, l)?)
    };
    Ok(report(
        "irreducible",
        &[("n", n), ("d", d), ("l", l), ("cap", cap as u64)],
        out,
        a,
        name,
        Some(bound),
        coverage,
        started,
    ))
}

/// All non-empty words of length below `n`.
fn short_words(a: Alphabet, n: usize) -> Vec<Word> {
    (1..n).flat_map(|len| a.words_of_length(len)).collect()
}

/// Largest height over the words shorter than `n` among the words of
/// length at most `max_len` that are not `n`-divisible.
pub fn max_height_empirical(n: u64, l: u64, max_len: usize, workers: usize) -> Result<SearchReport> {
    if n < 2 {
        return Err(Error::Domain(format!("height search needs n >= 2, got n={n}")));
    }
    let started = Instant::now();
    let a = alphabet(l)?;
    let nu = n as usize;
    let bases = short_words(a, nu);
    let score = |w: &[u32]| {
        height_over(&word_of(w, a), &bases)
            .expect("bases are non-empty")
            .expect("single letters always factor")
            .height()
    };
    let out = walk(a.size(), max_len, workers, |w| divisible_letters(w, nu), score)?;
    // Φ needs n >= 3; for n = 2 the words are weakly increasing, so the
    // number of letters bounds the height.
    let (name, bound) = if n >= 3 {
        ("phi", phi(n, l)?)
    } else {
        ("l (weakly increasing words)", BoundValue::Exact(BigInt::from(l)))
    };
    Ok(report(
        "height",
        &[("n", n), ("l", l), ("max_len", max_len as u64)],
        out,
        a,
        name,
        Some(bound),
        Coverage::Exact,
        started,
    ))
}

/// Largest small selective height (over the acyclic words of length
/// `period_len`, boundary `k`) among the words of length at most `max_len`
/// that are not strongly `n`-divisible with powers above `k`.
pub fn max_selective_height_empirical(
    period_len: u64,
    n: u64,
    l: u64,
    max_len: usize,
    k: usize,
    workers: usize,
) -> Result<SearchReport> {
    let period = PeriodLength::classify(period_len, n)?;
    let bound = beth(period, l, n)?;
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let started = Instant::now();
    let a = alphabet(l)?;
    let z = acyclic_words(a, period_len as usize);
    if z.is_empty() {
        return Err(Error::Domain(format!(
            "no acyclic words of length {period_len} over {l} letters"
        )));
    }
    let nu = n as usize;
    let prune = |w: &[u32]| {
        is_strongly_n_divisible(&word_of(w, a), nu, &z, k + 1)
            .expect("parameters validated")
            .is_some()
    };
    let score = |w: &[u32]| {
        small_selective_height(&word_of(w, a), &z, k)
            .expect("base set validated")
            .value
    };
    let out = walk(a.size(), max_len, workers, prune, score)?;
    let name = match period {
        PeriodLength::Two => "beth2",
        PeriodLength::Three => "beth3",
        PeriodLength::DegreeMinusOne => "beth_n1",
    };
    Ok(report(
        "selective",
        &[
            ("period_len", period_len),
            ("n", n),
            ("l", l),
            ("max_len", max_len as u64),
            ("k", k as u64),
        ],
        out,
        a,
        name,
        Some(bound),
        Coverage::Exact,
        started,
    ))
}

/// Longest sequence of `width`-letter 0/1 words, each with exactly one `1`,
/// in which any `p` words with the `1` at the same place enclose a word
/// whose `1` stands strictly earlier.
///
/// A word is identified with the place `s` of its `1`. The state records,
/// for every place, how many words with that place occurred since the last
/// word with an earlier place; appending `s` needs that count below `p - 1`
/// and clears the counts of all later places. Appending raises the state
/// lexicographically, so the longest sequence is a longest path in a DAG.
pub fn max_process_sequence(p: u64, width: u64) -> Result<SearchReport> {
    if p < 2 || width < 1 {
        return Err(Error::Domain(format!("process search needs p >= 2 and width >= 1, got p={p} width={width}")));
    }
    let states = (p as f64).powi(width as i32);
    if states > 1e6 {
        return Err(Error::Domain(format!("p^width = {states} states is too many")));
    }
    let started = Instant::now();
    let (pu, wu) = (p as usize, width as usize);

    fn longest(state: &mut Vec<usize>, p: usize, memo: &mut HashMap<Vec<usize>, (usize, Option<usize>)>, nodes: &mut u64) -> usize {
        if let Some(&(v, _)) = memo.get(state) {
            return v;
        }
        *nodes += 1;
        let mut best = (0, None);
        for s in 0..state.len() {
            if state[s] + 1 < p {
                let saved = state.clone();
                state[s] += 1;
                for t in s + 1..state.len() {
                    state[t] = 0;
                }
                let v = 1 + longest(state, p, memo, nodes);
                *state = saved;
                if v > best.0 {
                    best = (v, Some(s));
                }
            }
        }
        memo.insert(state.clone(), best);
        best.0
    }

    let mut memo = HashMap::new();
    let mut nodes = 0;
    let mut state = vec![0; wu];
    let empirical = longest(&mut state, pu, &mut memo, &mut nodes);

    // replay the choices to spell out the witness
    let mut seq = Vec::new();
    while let Some(&(_, Some(s))) = memo.get(&state) {
        seq.push(s);
        state[s] += 1;
        for t in s + 1..wu {
            state[t] = 0;
        }
    }
    let witness = seq
        .iter()
        .map(|&s| (0..wu).map(|i| if i == s { '1' } else { '0' }).collect::<String>())
        .collect::<Vec<_>>()
        .join(" ");
    let bound = BoundValue::Exact(BigInt::from(p).pow(width as u32) - 1);
    Ok(SearchReport {
        search: "process".into(),
        params: [("p".to_string(), p), ("width".to_string(), width)].into_iter().collect(),
        empirical: empirical as u64,
        witness: Some(witness),
        bound_name: "p^width - 1".into(),
        verdict: verdict(Some(&bound), empirical as u64),
        bound_log10_or_exact: Some(bound),
        coverage: Coverage::Exact,
        nodes,
        seconds: started.elapsed().as_secs_f64(),
    })
}

/// Checks a sequence of places directly against the process condition.
pub fn process_sequence_admissible(seq: &[usize], p: usize) -> bool {
    (0..seq.len()).all(|i| {
        let s = seq[i];
        let mut same = 0;
        for &t in &seq[i..] {
            if t < s {
                break;
            }
            if t == s {
                same += 1;
                if same == p {
                    return false;
                }
            }
        }
        true
    })
}

/// A vertex of the lower-bound graph: the `level`-th vertex of big step
/// `step`, sitting at position `position`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GraphVertex {
    pub position: u64,
    pub level: usize,
    pub step: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundGraph {
    pub n: u64,
    pub l: u64,
    pub edges: Vec<(GraphVertex, GraphVertex)>,
    pub expected_edges: u64,
    pub no_duplicates: bool,
    pub levels_per_step_complete: bool,
    pub count_matches: bool,
}

impl LowerBoundGraph {
    pub fn valid(&self) -> bool {
        self.no_duplicates && self.levels_per_step_complete && self.count_matches
    }
}

/// Edge set of the lower-bound construction for degree `n` over `l`
/// letters. On big step `i` the vertices sit at
/// `v_0 = i` and `v_m = i + 2^(n-2) + ... + 2^(n-1-m)`, and every pair
/// `v_a, v_m` with `a < m <= n - 3` is joined.
pub fn lower_bound_graph(n: u64, l: u64) -> Result<LowerBoundGraph> {
    if n < 4 {
        return Err(Error::Domain(format!("lower-bound graph needs n >= 4, got n={n}")));
    }
    if n > 62 {
        return Err(Error::Domain(format!("n = {n} is too large")));
    }
    let threshold = 1u64 << (n - 1);
    if l <= threshold {
        return Err(Error::Domain(format!("lower-bound graph needs l > 2^(n-1) = {threshold}, got l={l}")));
    }
    let top = (n - 3) as usize;
    let offsets: Vec<u64> = (0..=top)
        .map(|m| (1..=m as u64).map(|j| 1u64 << (n - 1 - j)).sum())
        .collect();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut no_duplicates = true;
    let mut levels_per_step_complete = true;
    for step in 2..=l - threshold + 1 {
        let vertex = |m: usize| GraphVertex { position: step + offsets[m], level: m, step };
        let mut levels = vec![false; top + 1];
        for m in 1..=top {
            for a in 0..m {
                let e = (vertex(a), vertex(m));
                no_duplicates &= seen.insert((e.0.position, e.1.position));
                levels[a] = true;
                levels[m] = true;
                edges.push(e);
            }
        }
        levels_per_step_complete &= top == 0 || levels.iter().all(|&x| x);
    }
    let expected_edges = (l - threshold) * (n - 2) * (n - 3) / 2;
    Ok(LowerBoundGraph {
        n,
        l,
        count_matches: edges.len() as u64 == expected_edges,
        edges,
        expected_edges,
        no_duplicates,
        levels_per_step_complete,
    })
}
