mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use output::{render, Format};
use wordlab::bounds::{self, FORMULAS};
use wordlab::divisibility::{
    is_n_divisible, is_nd_reducible, is_strongly_n_divisible, is_tail_n_divisible,
};
use wordlab::enumeration::{
    catalan, count_perm_ordered_posets, delta, lds_histogram, multilinear_count, rsk, xi_row,
    Permutation,
};
use wordlab::height::{
    extract_fragments, height_over, FragmentReport, large_selective_height, periodic_fragment_count,
    small_selective_height,
};
use wordlab::search::{
    lower_bound_graph, max_height_empirical, max_irreducible_length, max_process_sequence,
    max_selective_height_empirical, SearchReport,
};
use wordlab::thue::{
    crochemore_k, is_cube_free, is_square_free, is_square_free_morphism, thue2_criterion, Morphism,
};
use wordlab::word::acyclic_words;
use wordlab::{compare, Alphabet, Error, Word};

#[derive(Parser, Debug)]
#[command(name = "wordlab", version, about = "Combinatorics on words toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,
    /// Worker threads for the search subcommand.
    #[arg(long, default_value_t = 1, global = true)]
    workers: usize,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare two words in the partial lexicographic order.
    Compare {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
    /// Decide n-divisibility and its variants.
    Divisible(DivisibleArgs),
    /// Heights over word sets and selective heights.
    Height(HeightArgs),
    /// Extract periodic fragments `x^t` until none remain.
    Fragments {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[command(flatten)]
        alphabet: AlphabetArg,
        /// Print the line-oriented record instead of a result row.
        #[arg(long)]
        text: bool,
    },
    /// Evaluate closed-form bounds.
    Bounds(BoundsArgs),
    /// Permutation and tableau enumeration.
    Enum(EnumArgs),
    /// Thue morphisms, prefixes and freeness tests.
    Thue(ThueArgs),
    /// Exhaustive extremal searches.
    Search {
        #[command(subcommand)]
        kind: SearchKind,
    },
    /// Run the built-in invariant checks.
    Selftest,
}

#[derive(Args, Debug)]
struct AlphabetArg {
    /// Alphabet size; inferred from the words when omitted.
    #[arg(long)]
    l: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum DivisibleMode {
    Plain,
    Tail,
    Strong,
    Reducible,
}

#[derive(Args, Debug)]
struct DivisibleArgs {
    #[arg(long)]
    word: String,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "plain")]
    mode: DivisibleMode,
    /// Power exponent for `reducible`.
    #[arg(long)]
    d: Option<usize>,
    /// Base words for `strong` (repeatable).
    #[arg(long = "base")]
    bases: Vec<String>,
    /// Minimum power for `strong`.
    #[arg(long, default_value_t = 1)]
    k_min: usize,
    #[command(flatten)]
    alphabet: AlphabetArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum HeightMode {
    Over,
    Small,
    Large,
    Fragments,
}

#[derive(Args, Debug)]
struct HeightArgs {
    #[arg(long)]
    word: String,
    #[arg(long, value_enum, default_value = "over")]
    mode: HeightMode,
    /// Base words (repeatable). For `over` defaults to all words shorter
    /// than `--n`; for the selective modes to the acyclic words of length
    /// `--period`.
    #[arg(long = "base")]
    bases: Vec<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    period: Option<usize>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[command(flatten)]
    alphabet: AlphabetArg,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Formula name; `all` evaluates every formula the arguments allow.
    #[arg(long, default_value = "all")]
    formula: String,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
}

#[derive(Args, Debug)]
struct EnumArgs {
    /// Compare every route to xi_k(n).
    #[arg(long)]
    xi: bool,
    /// Histogram of longest decreasing subsequence lengths over S_n.
    #[arg(long)]
    lds: bool,
    /// Permutationally-ordered posets on n elements counted by width.
    #[arg(long)]
    posets: bool,
    /// Standard tableaux with at most k rows.
    #[arg(long)]
    delta: bool,
    /// Multilinear words over l letters avoiding a decreasing run of k+1.
    #[arg(long)]
    multilinear: bool,
    #[arg(long)]
    catalan: bool,
    /// RSK tableaux of a permutation given as `3,1,2`.
    #[arg(long)]
    rsk: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
}

#[derive(Args, Debug)]
struct ThueArgs {
    /// Built-in morphism: `morse` or `ternary`.
    #[arg(long)]
    builtin: Option<String>,
    /// User morphism as `a=ab,b=ba`.
    #[arg(long)]
    morphism: Option<String>,
    /// Source alphabet size of a user morphism.
    #[arg(long, default_value_t = 2)]
    source_l: u32,
    /// Target alphabet size of a user morphism.
    #[arg(long)]
    target_l: Option<u32>,
    /// Emit the fixed-point prefix of this length.
    #[arg(long)]
    prefix: Option<usize>,
    /// Test a word for square- and cube-freeness.
    #[arg(long)]
    word: Option<String>,
    #[arg(long)]
    l: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum SearchKind {
    /// Longest word that is neither n-divisible nor contains a d-th power.
    Irreducible {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        l: u64,
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
    /// Largest height over short words among non-n-divisible words.
    Height {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
        #[arg(long = "max-len")]
        max_len: usize,
    },
    /// Largest small selective height among non-strongly-divisible words.
    Selective {
        #[arg(long)]
        period: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
        #[arg(long = "max-len")]
        max_len: usize,
        #[arg(long)]
        k: usize,
    },
    /// Longest admissible sequence of the process lemma.
    Process {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        width: u64,
    },
    /// Edge set of the lower-bound graph.
    Graph {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Domain(String),
    Violation(Vec<Value>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<Vec<Value>, Failure>;

fn domain(msg: impl Into<String>) -> Failure {
    Failure::Domain(msg.into())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

/// Parse words; without `--l` the alphabet is the smallest one holding
/// every letter.
fn parse_words(texts: &[(&str, &str)], l: Option<u32>) -> Result<Vec<Word>, Failure> {
    let wide = Alphabet::new(l.unwrap_or(u32::MAX))?;
    let words = texts
        .iter()
        .map(|(flag, t)| Word::parse(t, wide).map_err(|e| domain(format!("--{flag}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if l.is_some() {
        return Ok(words);
    }
    let size = words
        .iter()
        .flat_map(|w| w.letters().iter().copied())
        .max()
        .map_or(1, |m| m + 1);
    let a = Alphabet::new(size)?;
    Ok(words
        .into_iter()
        .map(|w| Word::new(w.letters().to_vec(), a))
        .collect::<Result<Vec<_>, _>>()?)
}

fn cmd_compare(u: &str, v: &str, l: Option<u32>) -> Outcome {
    let w = parse_words(&[("u", u), ("v", v)], l)?;
    let ord = compare(&w[0], &w[1])?;
    Ok(vec![json!({
        "u": w[0].to_string(),
        "v": w[1].to_string(),
        "ordering": format!("{ord:?}").to_lowercase(),
    })])
}

fn cmd_divisible(a: &DivisibleArgs) -> Outcome {
    let mut texts = vec![("word", a.word.as_str())];
    texts.extend(a.bases.iter().map(|b| ("base", b.as_str())));
    let words = parse_words(&texts, a.alphabet.l)?;
    let w = &words[0];
    let (holds, witness) = match a.mode {
        DivisibleMode::Plain => {
            let r = is_n_divisible(w, a.n)?;
            (r.is_some(), to_value(&r))
        }
        DivisibleMode::Tail => {
            let r = is_tail_n_divisible(w, a.n)?;
            (r.is_some(), to_value(&r))
        }
        DivisibleMode::Strong => {
            if words.len() < 2 {
                return Err(domain("--base is required for strong divisibility"));
            }
            let r = is_strongly_n_divisible(w, a.n, &words[1..], a.k_min)?;
            (r.is_some(), to_value(&r))
        }
        DivisibleMode::Reducible => {
            let d = a.d.ok_or_else(|| domain("--d is required for reducibility"))?;
            let r = is_nd_reducible(w, a.n, d)?;
            (r.is_reducible(), to_value(&r))
        }
    };
    let mode = format!("{:?}", a.mode).to_lowercase();
    Ok(vec![json!({
        "word": w.to_string(),
        "n": a.n,
        "mode": mode,
        "holds": holds,
        "witness": witness,
    })])
}

fn cmd_height(a: &HeightArgs) -> Outcome {
    let mut texts = vec![("word", a.word.as_str())];
    texts.extend(a.bases.iter().map(|b| ("base", b.as_str())));
    let words = parse_words(&texts, a.alphabet.l)?;
    let w = &words[0];
    let alphabet = w.alphabet();
    let given: Vec<Word> = words[1..].to_vec();
    let periodic_set = || -> Result<Vec<Word>, Failure> {
        if !given.is_empty() {
            return Ok(given.clone());
        }
        let p = a
            .period
            .ok_or_else(|| domain("--base or --period is required"))?;
        Ok(acyclic_words(alphabet, p))
    };
    let row = match a.mode {
        HeightMode::Over => {
            let bases = if given.is_empty() {
                let n = a.n.ok_or_else(|| domain("--base or --n is required"))?;
                (1..n).flat_map(|len| alphabet.words_of_length(len)).collect()
            } else {
                given.clone()
            };
            let f = height_over(w, &bases)?;
            json!({
                "word": w.to_string(),
                "mode": "over",
                "height": f.as_ref().map(|f| f.height()),
                "factorization": to_value(&f),
            })
        }
        HeightMode::Small | HeightMode::Large => {
            let z = periodic_set()?;
            let h = if a.mode == HeightMode::Small {
                small_selective_height(w, &z, a.k)?
            } else {
                large_selective_height(w, &z, a.k)?
            };
            json!({
                "word": w.to_string(),
                "mode": format!("{:?}", a.mode).to_lowercase(),
                "k": a.k,
                "height": h.value,
                "witness": to_value(&h.witness),
            })
        }
        HeightMode::Fragments => {
            let n = a.n.ok_or_else(|| domain("--n is required"))?;
            let h = periodic_fragment_count(w, n)?;
            json!({
                "word": w.to_string(),
                "mode": "fragments",
                "n": n,
                "height": h.value,
                "witness": to_value(&h.witness),
            })
        }
    };
    Ok(vec![row])
}

fn cmd_fragments(word: &str, t: usize, l: Option<u32>) -> Result<(Word, FragmentReport), Failure> {
    let w = parse_words(&[("word", word)], l)?.remove(0);
    let report = extract_fragments(&w, t)?;
    Ok((w, report))
}

fn bound_row(row: &bounds::BoundRow) -> Value {
    json!({
        "name": row.name,
        "arguments": row.arguments,
        "kind": to_value(&row.value)["kind"],
        "value": row.value.render(),
    })
}

fn cmd_bounds(a: &BoundsArgs) -> Outcome {
    if a.formula == "all" {
        let rows: Vec<Value> = FORMULAS
            .iter()
            .filter_map(|f| bounds::evaluate(f, a.n, a.d, a.l, a.k).ok())
            .map(|r| bound_row(&r))
            .collect();
        if rows.is_empty() {
            return Err(domain("no formula accepts the given --n/--d/--l/--k"));
        }
        return Ok(rows);
    }
    let row = bounds::evaluate(&a.formula, a.n, a.d, a.l, a.k)?;
    Ok(vec![bound_row(&row)])
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T, Failure> {
    v.ok_or_else(|| domain(format!("--{name} is required")))
}

fn cmd_enum(a: &EnumArgs) -> Outcome {
    if a.xi {
        let (k, n) = (need(a.k, "k")?, need(a.n, "n")?);
        return Ok(vec![to_value(&xi_row(k, n)?)]);
    }
    if a.lds {
        let n = need(a.n, "n")?;
        return Ok(lds_histogram(n)
            .into_iter()
            .enumerate()
            .skip(if n == 0 { 0 } else { 1 })
            .map(|(len, count)| json!({"n": n, "lds": len, "count": count}))
            .collect());
    }
    if a.posets {
        let n = need(a.n, "n")?;
        if n == 0 {
            return Err(domain("--n must be at least 1"));
        }
        let mut rows = Vec::new();
        let mut violated = false;
        for (width, count) in count_perm_ordered_posets(n) {
            let bound = bounds::epsilon_upper(width as u64, n as u64)?;
            let ok = bound.admits(&count.into());
            violated |= !ok;
            rows.push(json!({
                "n": n,
                "width": width,
                "count": count,
                "bound": bound.render(),
                "within_bound": ok,
            }));
        }
        return if violated { Err(Failure::Violation(rows)) } else { Ok(rows) };
    }
    if a.delta {
        let (k, n) = (need(a.k, "k")?, need(a.n, "n")?);
        return Ok(vec![json!({"n": n, "k": k, "delta": delta(k, n)?.to_string()})]);
    }
    if a.multilinear {
        let (l, n, k) = (need(a.l, "l")?, need(a.n, "n")?, need(a.k, "k")?);
        let count = multilinear_count(l, n, k)?;
        let bound = bounds::multilinear_upper(l as u64, n as u64, k as u64)?;
        let row = json!({
            "l": l,
            "n": n,
            "k": k,
            "count": count.to_string(),
            "bound": bound.render(),
        });
        return if bound.admits(&count.into()) {
            Ok(vec![row])
        } else {
            Err(Failure::Violation(vec![row]))
        };
    }
    if a.catalan {
        let n = need(a.n, "n")?;
        return Ok(vec![json!({"n": n, "catalan": catalan(n).to_string()})]);
    }
    if let Some(text) = &a.rsk {
        let values = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| domain(format!("--rsk: `{t}` is not a number")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let p = Permutation::new(values)?;
        let (pt, qt) = rsk(&p);
        return Ok(vec![json!({
            "permutation": p.to_string(),
            "p": pt.rows(),
            "q": qt.rows(),
            "shape": pt.shape().parts(),
        })]);
    }
    Err(domain(
        "choose one of --xi, --lds, --posets, --delta, --multilinear, --catalan, --rsk",
    ))
}

fn cmd_thue(a: &ThueArgs) -> Outcome {
    if let Some(text) = &a.word {
        let w = parse_words(&[("word", text)], a.l)?.remove(0);
        return Ok(vec![json!({
            "word": w.to_string(),
            "square_free": is_square_free(&w),
            "cube_free": is_cube_free(&w),
        })]);
    }
    let m = match (&a.builtin, &a.morphism) {
        (Some(b), None) => match b.as_str() {
            "morse" => Morphism::thue_morse(),
            "ternary" => Morphism::thue_ternary(),
            other => return Err(domain(format!("--builtin: unknown morphism `{other}`"))),
        },
        (None, Some(spec)) => {
            let source = Alphabet::new(a.source_l)?;
            let target = Alphabet::new(a.target_l.unwrap_or(a.source_l))?;
            Morphism::parse(spec, source, target)?
        }
        _ => return Err(domain("give exactly one of --builtin, --morphism, --word")),
    };
    if let Some(len) = a.prefix {
        let w = m.fixed_point_prefix(0, len)?;
        return Ok(vec![json!({
            "length": len,
            "prefix": w.to_string(),
            "square_free": is_square_free(&w),
            "cube_free": is_cube_free(&w),
        })]);
    }
    Ok(vec![json!({
        "images": to_value(&(0..m.source().size()).map(|a| m.image(a).to_string()).collect::<Vec<_>>()),
        "crochemore_k": crochemore_k(&m),
        "square_free_morphism": is_square_free_morphism(&m),
        "thue2_criterion": thue2_criterion(&m),
    })])
}

fn search_rows(r: SearchReport) -> Outcome {
    let violated = r.violated();
    let rows = vec![to_value(&r)];
    if violated {
        Err(Failure::Violation(rows))
    } else {
        Ok(rows)
    }
}

fn cmd_search(kind: &SearchKind, workers: usize) -> Outcome {
    match *kind {
        SearchKind::Irreducible { n, d, l, cap } => {
            search_rows(max_irreducible_length(n, d, l, cap, workers)?)
        }
        SearchKind::Height { n, l, max_len } => {
            search_rows(max_height_empirical(n, l, max_len, workers)?)
        }
        SearchKind::Selective { period, n, l, max_len, k } => {
            search_rows(max_selective_height_empirical(period, n, l, max_len, k, workers)?)
        }
        SearchKind::Process { p, width } => search_rows(max_process_sequence(p, width)?),
        SearchKind::Graph { n, l } => {
            let g = lower_bound_graph(n, l)?;
            let rows = g
                .edges
                .iter()
                .map(|(a, b)| {
                    json!({
                        "step": a.step,
                        "from": a.position,
                        "from_level": a.level,
                        "to": b.position,
                        "to_level": b.level,
                    })
                })
                .collect();
            if g.valid() {
                Ok(rows)
            } else {
                Err(Failure::Violation(vec![to_value(&json!({
                    "n": n,
                    "l": l,
                    "edges": g.edges.len(),
                    "expected_edges": g.expected_edges,
                    "no_duplicates": g.no_duplicates,
                    "levels_per_step_complete": g.levels_per_step_complete,
                }))]))
            }
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let rows = match &cli.command {
        Command::Compare { u, v, alphabet } => cmd_compare(u, v, alphabet.l),
        Command::Divisible(a) => cmd_divisible(a),
        Command::Height(a) => cmd_height(a),
        Command::Fragments { word, t, alphabet, text } => {
            let (w, report) = cmd_fragments(word, *t, alphabet.l)?;
            if *text {
                return Ok(report.to_text());
            }
            Ok(vec![json!({
                "word": w.to_string(),
                "t": t,
                "fragments": to_value(&report.fragments),
                "residual": report.residual.to_string(),
            })])
        }
        Command::Bounds(a) => cmd_bounds(a),
        Command::Enum(a) => cmd_enum(a),
        Command::Thue(a) => cmd_thue(a),
        Command::Search { kind } => cmd_search(kind, cli.workers),
        Command::Selftest => {
            let report = wordlab::selftest::run(cli.seed);
            let rows: Vec<Value> = report.checks.iter().map(to_value).collect();
            if report.passed {
                Ok(rows)
            } else {
                Err(Failure::Violation(rows))
            }
        }
    };
    match rows {
        Ok(rows) => Ok(render(&rows, cli.format)),
        Err(Failure::Violation(rows)) => {
            print!("{}", render(&rows, cli.format));
            Err(Failure::Violation(Vec::new()))
        }
        Err(e) => Err(e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("{first}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Violation(_)) => {
            eprintln!("error: bound violated");
            ExitCode::from(2)
        }
    }
}
