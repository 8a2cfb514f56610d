//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p wordlab-cli --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use wordlab::bounds::{
    beth, big_log10, classic_lower_bounds, epsilon_upper, p_nd, phi, psi, psi_formula, upsilon,
    xi_upper, PeriodLength,
};
use wordlab::enumeration::{
    count_perm_ordered_posets, gessel_xi3, hook_count, inverse_rsk, lds_length, rsk,
    xi_bruteforce, xi_hook, xi_via_series, Partition, Permutation,
};
use wordlab::poset::Poset;
use wordlab::search::{
    lower_bound_graph, max_irreducible_length, max_process_sequence,
    max_selective_height_empirical, Coverage,
};
use wordlab::selftest::random_poset;
use wordlab::thue::{crochemore_k, is_cube_free, is_square_free, is_square_free_morphism, Morphism};
use wordlab::word::{contains_power, distinct_factor_count};
use wordlab::{compare, Alphabet};

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

fn ratio(v: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn catalan_identity() -> Check {
    for n in 1..=8 {
        let want = factorial(2 * n) / (factorial(n) * factorial(n + 1));
        let got = xi_bruteforce(2, n).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("xi(2,{n}) = {got}, expected {want}"))?;
    }
    Ok("xi(2,n) = Catalan(n) for n = 1..8".into())
}

fn xi_agreement() -> Check {
    for n in 1..=8 {
        for k in 1..=n {
            let a = xi_bruteforce(k, n).unwrap();
            let b = xi_hook(k, n).unwrap();
            ensure(a == b, || format!("k={k} n={n}: brute {a} vs hook {b}"))?;
        }
        if n >= 3 {
            let a = xi_bruteforce(3, n).unwrap();
            let c = gessel_xi3(n).unwrap();
            ensure(a == c, || format!("n={n}: brute {a} vs Gessel {c}"))?;
        }
    }
    for k in 1..=6 {
        let series = xi_via_series(k, 6).unwrap();
        for (n, v) in series.iter().enumerate().skip(k) {
            let a = ratio(xi_bruteforce(k, n).unwrap());
            ensure(*v == a, || format!("k={k} n={n}: series {v} vs {a}"))?;
        }
    }
    Ok("brute = hook (k <= n <= 8), = Gessel (k = 3), = series (n <= 6)".into())
}

fn xi_bound() -> Check {
    for n in 1..=8 {
        for k in 1..=n {
            let xi = ratio(xi_hook(k, n).unwrap());
            let bound = xi_upper(k as u64, n as u64).unwrap().as_rational();
            ensure(xi <= bound, || format!("k={k} n={n}: {xi} > {bound}"))?;
        }
    }
    Ok("xi_k(n) <= k^(2n)/((k-1)!)^2 for k <= n <= 8".into())
}

fn poset_bound() -> Check {
    let mut totals = Vec::new();
    for n in 1..=5 {
        let counts = count_perm_ordered_posets(n);
        for (&width, &count) in &counts {
            let bound = epsilon_upper(width as u64, n as u64).unwrap();
            ensure(bound.admits(&count.into()), || {
                format!("n={n} width={width}: {count} > {}", bound.render())
            })?;
        }
        totals.push(counts.values().sum::<usize>());
    }
    Ok(format!("per-width counts within bound; totals {totals:?}"))
}

fn rsk_suite() -> Check {
    for n in 0..=6 {
        for p in Permutation::all(n) {
            let (pt, qt) = rsk(&p);
            ensure(pt.shape() == qt.shape(), || format!("{p}: shapes differ"))?;
            ensure(pt.shape().rows() == lds_length(&p), || format!("{p}: rows != lds"))?;
            let back = inverse_rsk(&pt, &qt).map_err(|e| e.to_string())?;
            ensure(back == p, || format!("{p}: round trip gave {back}"))?;
        }
    }
    for n in 0..=10 {
        let total: BigUint = Partition::all(n, n)
            .iter()
            .map(|s| {
                let f = hook_count(s);
                &f * &f
            })
            .sum();
        ensure(total == factorial(n), || format!("n={n}: sum f^2 = {total}"))?;
    }
    Ok("RSK round trip, shapes, rows = lds on S_n (n <= 6); sum f^2 = n! (n <= 10)".into())
}

/// Largest antichain by trying every subset.
fn subset_width(p: &Poset) -> usize {
    let n = p.len();
    let mut best = 0;
    for mask in 0u32..1 << n {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let anti = members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| !p.comparable(a, b)));
        if anti {
            best = best.max(members.len());
        }
    }
    best
}

fn dilworth_equality() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for i in 0..500 {
        let n = 1 + i % 10;
        let p = random_poset(&mut rng, n);
        let chains = p.min_chain_partition();
        let anti = p.max_antichain();
        let oracle = subset_width(&p);
        ensure(chains.validate(&p) && p.is_antichain(&anti), || format!("poset {i}: bad certificate"))?;
        ensure(chains.len() == anti.len() && anti.len() == oracle, || {
            format!("poset {i}: chains {} antichain {} oracle {oracle}", chains.len(), anti.len())
        })?;
    }
    Ok("500 random posets of <= 10 elements".into())
}

fn process_lemma() -> Check {
    let mut seen = Vec::new();
    for p in [2u64, 3] {
        for w in 1..=3u64 {
            let r = max_process_sequence(p, w).map_err(|e| e.to_string())?;
            let bound = p.pow(w as u32) - 1;
            ensure(r.coverage == Coverage::Exact && r.empirical <= bound && !r.violated(), || {
                format!("p={p} w={w}: {} vs {bound}", r.empirical)
            })?;
            seen.push(format!("({p},{w})={}", r.empirical));
        }
    }
    Ok(seen.join(" "))
}

fn dichotomy_search() -> Check {
    let mut seen = Vec::new();
    for (n, d, l) in [(2u64, 2u64, 2u64), (2, 3, 2), (3, 2, 2)] {
        let r = max_irreducible_length(n, d, l, 40, 2).map_err(|e| e.to_string())?;
        ensure(r.coverage == Coverage::Exact, || format!("({n},{d},{l}) not exhausted"))?;
        // Ψ's hypothesis d >= n fails at (3,2,2); the formula is still evaluated
        let bound = if d >= n { psi(n, d, l) } else { psi_formula(n, d, l) }.unwrap();
        let emp = (r.empirical as f64).log10();
        ensure(emp <= bound.log10_f64() && !r.violated(), || {
            format!("({n},{d},{l}): {} exceeds psi", r.empirical)
        })?;
        seen.push(format!("({n},{d},{l})={}", r.empirical));
    }
    Ok(format!("{} (exhausted, below psi in log10)", seen.join(" ")))
}

fn selective_bounds() -> Check {
    let mut seen = Vec::new();
    for (period, name, want) in [(2u64, PeriodLength::Two, 3i64), (3, PeriodLength::Three, 6)] {
        let bound = beth(name, 2, 3).unwrap();
        ensure(bound.as_exact() == Some(&BigInt::from(want)), || format!("beth({period},2,3) = {}", bound.render()))?;
        let r = max_selective_height_empirical(period, 3, 2, 14, 2, 4).map_err(|e| e.to_string())?;
        ensure(!r.violated() && bound.admits(&r.empirical.into()), || {
            format!("period {period}: {} exceeds {want}", r.empirical)
        })?;
        seen.push(format!("period {period}: {} <= {want}", r.empirical));
    }
    Ok(seen.join("; "))
}

fn lower_bound_graph_counts() -> Check {
    let mut seen = Vec::new();
    for (n, l) in [(4u64, 9u64), (4, 12), (5, 20)] {
        let g = lower_bound_graph(n, l).map_err(|e| e.to_string())?;
        let want = (l - (1 << (n - 1))) * (n - 2) * (n - 3) / 2;
        ensure(g.valid() && g.edges.len() as u64 == want, || {
            format!("({n},{l}): {} edges, expected {want}", g.edges.len())
        })?;
        seen.push(format!("({n},{l})={}", g.edges.len()));
    }
    Ok(seen.join(" "))
}

fn thue_suite() -> Check {
    let tm = Morphism::thue_morse().fixed_point_prefix(0, 1024).unwrap();
    ensure(is_cube_free(&tm), || "Thue-Morse prefix has a cube".into())?;
    let th = Morphism::thue_ternary().fixed_point_prefix(0, 1000).unwrap();
    ensure(is_square_free(&th), || "ternary prefix has a square".into())?;
    let t = Morphism::thue_ternary();
    ensure(crochemore_k(&t) == 3 && is_square_free_morphism(&t), || "ternary morphism rejected".into())?;
    ensure(!is_square_free_morphism(&Morphism::thue_morse()), || "binary morphism accepted".into())?;
    Ok("cube-free 1024, square-free 1000, Crochemore k = 3".into())
}

fn word_lemmas() -> Check {
    let a = Alphabet::new(2).unwrap();
    let mut cases = 0;
    for len in 0..=12 {
        for w in a.words_of_length(len) {
            for d in 2..=3 {
                if contains_power(&w, d).unwrap().is_some() {
                    continue;
                }
                let lead = len.div_ceil(d);
                for i in 0..lead {
                    for j in i + 1..lead {
                        let c = compare(&w.factor(i, len), &w.factor(j, len)).unwrap();
                        ensure(c.is_comparable(), || format!("{w} d={d}: tails {i},{j}"))?;
                    }
                }
                cases += 1;
            }
            for t in 1..=3 {
                if len % t != 0 || len == 0 {
                    continue;
                }
                let k = len / t;
                if distinct_factor_count(&w, k).unwrap() <= k {
                    ensure(contains_power(&w, t).unwrap().is_some(), || format!("{w} k={k} t={t}"))?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases over binary words of length <= 12"))
}

fn bound_evaluators() -> Check {
    let exact = |v: wordlab::bounds::BoundValue| v.render();
    ensure(p_nd(2, 2).unwrap() == BigInt::from(30), || "p_{2,2}".into())?;
    ensure(exact(upsilon(3, 2).unwrap()) == "8748", || "upsilon(3,2)".into())?;
    ensure(exact(beth(PeriodLength::Two, 2, 3).unwrap()) == "3", || "beth(2,2,3)".into())?;
    ensure(exact(beth(PeriodLength::Three, 2, 3).unwrap()) == "6", || "beth(3,2,3)".into())?;
    let c = classic_lower_bounds(4, 2).unwrap();
    ensure(exact(c.kuzmin) == "9", || "kuzmin(4)".into())?;
    ensure(exact(c.gk_height) == "5", || "gk(4,2)".into())?;
    // at n = 3, l = 2 the exponent is exactly 103
    let direct = BigInt::from(2).pow(97) * BigInt::from(3).pow(103);
    let want = big_log10(&direct);
    let got = phi(3, 2).unwrap().log10_f64();
    ensure((got - want).abs() < 1e-8, || format!("log10 phi(3,2) = {got}, expected {want}"))?;
    Ok(format!("log10 phi(3,2) = {got:.10}"))
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_wordlab"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "`wordlab {}` exited with {}: {}",
            args.join(" "),
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn strip_seconds(text: &str) -> Result<Vec<Value>, String> {
    text.lines()
        .map(|line| {
            let mut v: Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
            if let Some(obj) = v.as_object_mut() {
                obj.remove("seconds");
            }
            Ok(v)
        })
        .collect()
}

fn reproducibility() -> Check {
    let first = run_cli(&["selftest", "--format", "json"])?;
    let second = run_cli(&["selftest", "--format", "json"])?;
    ensure(first == second, || "selftest output differs between runs".into())?;
    let searches: [&[&str]; 3] = [
        &["search", "irreducible", "--n", "2", "--d", "3", "--l", "3", "--cap", "14"],
        &["search", "height", "--n", "3", "--l", "2", "--max-len", "10"],
        &["search", "selective", "--period", "2", "--n", "3", "--l", "2", "--max-len", "12", "--k", "2"],
    ];
    for args in searches {
        let mut one = args.to_vec();
        one.extend(["--format", "json", "--workers", "1"]);
        let mut four = args.to_vec();
        four.extend(["--format", "json", "--workers", "4"]);
        let a = strip_seconds(&run_cli(&one)?)?;
        let b = strip_seconds(&run_cli(&four)?)?;
        ensure(a == b, || format!("`{}` depends on --workers", args.join(" ")))?;
    }
    Ok("selftest byte-identical; searches identical for 1 and 4 workers".into())
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("1 catalan identity", 10, catalan_identity),
        ("2 three-way xi agreement", 60, xi_agreement),
        ("3 xi upper bound", 10, xi_bound),
        ("4 permutation poset bound", 30, poset_bound),
        ("5 RSK suite", 30, rsk_suite),
        ("6 Dilworth equality", 30, dilworth_equality),
        ("7 process lemma", 60, process_lemma),
        ("8 dichotomy search", 60, dichotomy_search),
        ("9 selective-height bounds", 300, selective_bounds),
        ("10 lower-bound graph", 1, lower_bound_graph_counts),
        ("11 Thue suite", 30, thue_suite),
        ("12 word lemmas", 60, word_lemmas),
        ("13 bound evaluators", 1, bound_evaluators),
        ("14 reproducibility", 120, reproducibility),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let line = match result {
            Ok(detail) if took <= Duration::from_secs(limit) => {
                format!("PASS  {name}  ({:.2}s / {limit}s)  {detail}", took.as_secs_f64())
            }
            Ok(detail) => {
                failed += 1;
                format!("FAIL  {name}  over time: {:.2}s > {limit}s  {detail}", took.as_secs_f64())
            }
            Err(why) => {
                failed += 1;
                format!("FAIL  {name}  ({:.2}s)  {why}", took.as_secs_f64())
            }
        };
        println!("{line}");
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
