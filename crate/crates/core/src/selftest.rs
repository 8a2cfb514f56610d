//! A fast deterministic battery of invariant checks.
//!
//! The report carries no timings, so two runs with the same seed
//! serialize to the same bytes.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{beth, classic_lower_bounds, p_nd, upsilon, PeriodLength};
use crate::divisibility::{is_n_divisible, is_tail_n_divisible};
use crate::enumeration::{
    catalan, gessel_xi3, hook_count, inverse_rsk, lds_length, rsk, xi_bruteforce, xi_hook,
    Partition, Permutation,
};
use crate::height::extract_fragments;
use crate::poset::Poset;
use crate::search::{lower_bound_graph, max_irreducible_length, max_process_sequence};
use crate::thue::{crochemore_k, is_cube_free, is_square_free, is_square_free_morphism, Morphism};
use crate::word::{compare, primitive_root, Alphabet, LexOrdering};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.to_string(), passed, detail: detail.into() }
}

/// Random strict order on `0..n`: each forward pair is related with
/// probability one third.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> Poset {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|_| rng.gen_ratio(1, 3))
        .collect();
    Poset::from_relations(n, &pairs).expect("forward pairs are acyclic")
}

/// Largest antichain size by trying every subset.
pub fn width_by_subsets(p: &Poset) -> usize {
    let n = p.len();
    (0u32..1 << n)
        .filter(|&mask| {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            p.is_antichain(&set)
        })
        .map(u32::count_ones)
        .max()
        .unwrap_or(0) as usize
}

fn words_check() -> Check {
    let ab = Alphabet::new(2).unwrap();
    let words: Vec<_> = (0..=6).flat_map(|len| ab.words_of_length(len)).collect();
    let mut ok = true;
    for u in &words {
        ok &= compare(u, u).unwrap() == LexOrdering::Equal;
        for v in &words {
            let uv = compare(u, v).unwrap();
            ok &= compare(v, u).unwrap() == uv.reverse();
        }
        if !u.is_empty() {
            let (root, e) = primitive_root(u).unwrap();
            ok &= root.pow(e) == *u;
        }
    }
    check("word order and primitive roots", ok, format!("{} binary words", words.len()))
}

fn divisibility_check() -> Check {
    let ab = Alphabet::new(3).unwrap();
    let mut ok = true;
    let mut count = 0;
    for len in 0..=7 {
        for w in ab.words_of_length(len) {
            for n in 1..=3 {
                let div = is_n_divisible(&w, n).unwrap();
                if let Some(wit) = &div {
                    ok &= wit.validate(&w);
                    ok &= is_tail_n_divisible(&w, n).unwrap().is_some();
                }
                count += 1;
            }
        }
    }
    check("divisibility witnesses validate and imply tail divisibility", ok, format!("{count} cases"))
}

fn dilworth_check(rng: &mut ChaCha8Rng) -> Check {
    let mut ok = true;
    for _ in 0..100 {
        let n = rng.gen_range(0..=9);
        let p = random_poset(rng, n);
        let chains = p.min_chain_partition();
        let anti = p.max_antichain();
        ok &= chains.validate(&p)
            && p.is_antichain(&anti)
            && chains.len() == anti.len()
            && anti.len() == width_by_subsets(&p);
    }
    check("chain partition equals antichain on random posets", ok, "100 posets")
}

fn fragments_check() -> Check {
    let abc = Alphabet::new(3).unwrap();
    let mut ok = true;
    for w in abc.words_of_length(7) {
        let rep = extract_fragments(&w, 2).unwrap();
        ok &= rep.reconstruct() == w;
    }
    check("fragment extraction reconstructs the word", ok, "all ternary words of length 7")
}

fn enumeration_check() -> Check {
    let mut ok = true;
    for n in 1..=7 {
        ok &= xi_bruteforce(2, n).unwrap() == catalan(n);
        for k in 1..=n {
            ok &= xi_bruteforce(k, n).unwrap() == xi_hook(k, n).unwrap();
        }
        if n >= 3 {
            ok &= xi_bruteforce(3, n).unwrap() == gessel_xi3(n).unwrap();
        }
    }
    for n in 0..=5 {
        for p in Permutation::all(n) {
            let (pt, qt) = rsk(&p);
            ok &= pt.shape() == qt.shape()
                && pt.shape().rows() == lds_length(&p)
                && inverse_rsk(&pt, &qt).map(|q| q == p).unwrap_or(false);
        }
    }
    for n in 0..=8 {
        let total: BigUint = Partition::all(n, n)
            .iter()
            .map(|s| {
                let f = hook_count(s);
                &f * &f
            })
            .sum();
        ok &= total == (1..=n as u64).product::<u64>().into();
    }
    check("xi paths agree and RSK round-trips", ok, "n <= 7; RSK over S_n for n <= 5")
}

fn thue_check() -> Check {
    let tm = Morphism::thue_morse().fixed_point_prefix(0, 256).unwrap();
    let th = Morphism::thue_ternary().fixed_point_prefix(0, 200).unwrap();
    let tern = Morphism::thue_ternary();
    let ok = is_cube_free(&tm)
        && is_square_free(&th)
        && crochemore_k(&tern) == 3
        && is_square_free_morphism(&tern)
        && !is_square_free_morphism(&Morphism::thue_morse());
    check("Thue prefixes and Crochemore test", ok, "prefixes of length 256 and 200")
}

fn bounds_check() -> Check {
    let exact = |v: crate::bounds::BoundValue| v.render();
    let ok = p_nd(2, 2).map(|v| v == 30.into()).unwrap_or(false)
        && upsilon(3, 2).map(exact).as_deref() == Ok("8748")
        && beth(PeriodLength::Two, 2, 3).map(exact).as_deref() == Ok("3")
        && beth(PeriodLength::Three, 2, 3).map(exact).as_deref() == Ok("6")
        && classic_lower_bounds(4, 2)
            .map(|c| (c.kuzmin.render(), c.gk_height.render()) == ("9".into(), "5".into()))
            .unwrap_or(false);
    check("bound evaluators", ok, "p_nd(2,2), upsilon(3,2), beth, kuzmin, gk")
}

fn search_check() -> Check {
    let mut ok = true;
    let mut detail = Vec::new();
    for (n, d, expect) in [(2, 2, 2), (2, 3, 4), (3, 2, 3)] {
        let r = max_irreducible_length(n, d, 2, 16, 1).unwrap();
        ok &= r.empirical == expect && !r.violated();
        detail.push(format!("irreducible({n},{d},2)={}", r.empirical));
    }
    for (p, w) in [(2, 1), (2, 2), (3, 2), (2, 3)] {
        let r = max_process_sequence(p, w).unwrap();
        ok &= r.empirical == p.pow(w as u32) - 1 && !r.violated();
    }
    for (n, l) in [(4, 9), (4, 12), (5, 20)] {
        ok &= lower_bound_graph(n, l).unwrap().valid();
    }
    check("exhaustive searches respect their bounds", ok, detail.join(" "))
}

/// Run every check; `seed` drives the random posets.
pub fn run(seed: u64) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = vec![
        words_check(),
        divisibility_check(),
        dilworth_check(&mut rng),
        fragments_check(),
        enumeration_check(),
        thue_check(),
        bounds_check(),
        search_check(),
    ];
    SelftestReport {
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_is_green_and_stable() {
        let a = run(0);
        for c in &a.checks {
            assert!(c.passed, "{} failed: {}", c.name, c.detail);
        }
        let b = run(0);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
