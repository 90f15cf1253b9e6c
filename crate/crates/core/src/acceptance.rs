//! The acceptance suite: twelve exact checks run over deterministic corpora.
//!
//! [`run_all`] evaluates every criterion (concurrently) and returns one
//! [`CriterionResult`] per criterion in id order. Criteria listed in
//! [`KNOWN_FAILURES`] are expected to fail; see the README for the
//! counterexample behind each entry.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::Result;
use crate::graph::{cofree_lift, enumerate_graphs, free_lift, ArrowKind, HopfGraph, LiftOutcome, Tail};
use crate::linalg::{enumerate_vectors, FpMatrix, Prime};
use crate::presentation::{hilbert_series, monomial_series};
use crate::string::oracle::{brute_force_initial_index, enumerate_chains};
use crate::string::{
    decompose, decompose_traced, hom_space, initial_index, is_pure_string_injection, is_pure_submodule, random_module,
    random_s_module, random_string_sum, scramble_iso, split_off, string_module, GradedFpModule, SplitOff, StringChain,
    StringIndex,
};
use crate::witt::{
    arrow_profile, big_indecomposable, classify_basic, gamma, hom_group, idempotent_search, injectivity_profile,
    is_cofree_coalgebra, is_free_algebra, module_from_graph, random_dieudonne, DieudonneModule, WittMap, WittModule,
};

/// Criteria whose check is implemented faithfully but fails on this
/// construction.
pub const KNOWN_FAILURES: &[u32] = &[9];

/// Number of criteria in the suite.
pub const CRITERIA: u32 = 12;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn known_failure(&self) -> bool {
        KNOWN_FAILURES.contains(&self.id)
    }

    /// One summary line, e.g. `[PASS]  1 krull-schmidt invariance (0.84 s): ...`.
    pub fn line(&self) -> String {
        let tag = match (self.passed, self.known_failure()) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        format!(
            "[{tag}] {:>2} {} ({:.2} s): {}",
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Outcome = std::result::Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

const SUITE: &[Criterion] = &[
    Criterion {
        id: 1,
        name: "krull-schmidt invariance",
        limit: Duration::from_secs(60),
        run: krull_schmidt,
    },
    Criterion {
        id: 2,
        name: "ground-truth recovery",
        limit: Duration::from_secs(60),
        run: ground_truth,
    },
    Criterion {
        id: 3,
        name: "initial-index oracle",
        limit: Duration::from_secs(120),
        run: initial_oracle,
    },
    Criterion {
        id: 4,
        name: "retraction contract",
        limit: Duration::from_secs(120),
        run: retractions,
    },
    Criterion {
        id: 5,
        name: "purity equivalence",
        limit: Duration::from_secs(120),
        run: purity,
    },
    Criterion {
        id: 6,
        name: "basic classification roundtrip",
        limit: Duration::from_secs(30),
        run: basic_roundtrip,
    },
    Criterion {
        id: 7,
        name: "hilbert series",
        limit: Duration::from_secs(60),
        run: hilbert,
    },
    Criterion {
        id: 8,
        name: "endomorphism locality",
        limit: Duration::from_secs(60),
        run: endomorphisms,
    },
    Criterion {
        id: 9,
        name: "large indecomposable",
        limit: Duration::from_secs(120),
        run: large_indecomposable,
    },
    Criterion {
        id: 10,
        name: "p-typical splitting",
        limit: Duration::from_secs(60),
        run: typical_splitting,
    },
    Criterion {
        id: 11,
        name: "free/cofree structure",
        limit: Duration::from_secs(60),
        run: free_cofree,
    },
    Criterion {
        id: 12,
        name: "primitively generated detection",
        limit: Duration::from_secs(60),
        run: primitive,
    },
];

fn evaluate(c: &Criterion) -> CriterionResult {
    let start = Instant::now();
    let outcome = (c.run)();
    let elapsed = start.elapsed();
    let (passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let passed = if passed && elapsed > c.limit {
        detail = format!("{detail}; exceeded the {} s budget", c.limit.as_secs());
        false
    } else {
        passed
    };
    CriterionResult {
        id: c.id,
        name: c.name,
        passed,
        detail,
        elapsed,
    }
}

/// Runs every criterion, concurrently, returning the results in id order.
pub fn run_all() -> Vec<CriterionResult> {
    SUITE.par_iter().map(evaluate).collect()
}

/// Runs a single criterion by id.
pub fn run_one(id: u32) -> Option<CriterionResult> {
    SUITE.iter().find(|c| c.id == id).map(evaluate)
}

fn prime(p: u64) -> Prime {
    Prime::new(p).expect("small primes")
}

fn fail(e: impl std::fmt::Display) -> String {
    e.to_string()
}

// ---------------------------------------------------------------------------
// Corpora
// ---------------------------------------------------------------------------

/// Scrambles per random module in the Krull-Schmidt criterion.
pub const SCRAMBLES: u64 = 50;

/// The 200 random modules: `p` cycling through 2, 3, 5, windows `1..=8` and
/// dimension bounds `1..=4`.
pub fn random_corpus() -> Vec<GradedFpModule> {
    (0..200u64)
        .map(|k| {
            let p = prime([2, 3, 5][(k % 3) as usize]);
            let top = 1 + ((k / 3) % 8) as usize;
            let maxdim = 1 + ((k / 24) % 4) as usize;
            random_module(p, top, maxdim, 1000 + k)
        })
        .collect()
}

fn scramble_seed(k: usize, s: u64) -> u64 {
    (k as u64) * 1000 + s
}

/// A module with the multiset it was built from.
pub type Expected = (GradedFpModule, Vec<(usize, StringIndex)>);

/// The 500 scrambled sums of string modules with their expected multisets.
/// Every fourth window extends past its top.
pub fn sum_corpus() -> Result<Vec<Expected>> {
    (0..500u64)
        .map(|k| {
            let p = prime([2, 3, 5][(k % 3) as usize]);
            let top = 1 + ((k / 3) % 8) as usize;
            let count = 1 + ((k / 7) % 4) as usize;
            random_string_sum(p, top, count, k % 4 == 3, 5000 + k)
        })
        .collect()
}

/// Random modules with `t = 0`.
pub fn s_corpus() -> Vec<GradedFpModule> {
    (0..150u64)
        .map(|k| {
            let p = prime([2, 3, 5][(k % 3) as usize]);
            let top = 1 + ((k / 3) % 8) as usize;
            let maxdim = 1 + ((k / 24) % 4) as usize;
            random_s_module(p, top, maxdim, 9000 + k)
        })
        .collect()
}

/// Corpus modules small enough for the chain-enumerating oracles.
fn small_corpus() -> Result<Vec<GradedFpModule>> {
    let mut out: Vec<GradedFpModule> = random_corpus();
    out.extend(sum_corpus()?.into_iter().map(|(m, _)| m));
    out.extend(s_corpus());
    out.retain(|m| !m.extends() && m.prime().get() <= 3 && m.total_dim() <= 8);
    Ok(out)
}

fn nonzero_lowest(m: &GradedFpModule) -> Result<Vec<Vec<u32>>> {
    let Some(d) = m.lowest_nonzero_degree() else {
        return Ok(Vec::new());
    };
    Ok(enumerate_vectors(m.prime(), m.dim(d))?
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect())
}

// ---------------------------------------------------------------------------
// 1-5: string modules
// ---------------------------------------------------------------------------

fn krull_schmidt() -> Outcome {
    let corpus = random_corpus();
    let summands: usize = corpus
        .par_iter()
        .enumerate()
        .map(|(k, m)| {
            let base = decompose(m).map_err(fail)?.multiset();
            for s in 0..SCRAMBLES {
                let (scrambled, _) = scramble_iso(m, scramble_seed(k, s));
                let got = decompose(&scrambled).map_err(fail)?.multiset();
                if got != base {
                    return Err(format!("module {k}, scramble {s}: {got:?} vs {base:?}"));
                }
            }
            Ok(base.len())
        })
        .collect::<std::result::Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    Ok(format!(
        "200 modules x {SCRAMBLES} scrambles agree ({summands} summands in total)"
    ))
}

fn ground_truth() -> Outcome {
    let corpus = sum_corpus().map_err(fail)?;
    corpus.par_iter().enumerate().try_for_each(|(k, (m, expected))| {
        let got = decompose(m).map_err(fail)?.multiset();
        if &got == expected {
            Ok(())
        } else {
            Err(format!("sum {k}: got {got:?}, built {expected:?}"))
        }
    })?;
    Ok(format!("{} scrambled sums recover their multisets", corpus.len()))
}

fn initial_oracle() -> Outcome {
    let corpus = small_corpus().map_err(fail)?;
    let checked: usize = corpus
        .par_iter()
        .enumerate()
        .map(|(k, m)| {
            let starts = nonzero_lowest(m).map_err(fail)?;
            for m0 in &starts {
                let (fast, chain) = initial_index(m, m0).map_err(fail)?;
                chain.check(m).map_err(|e| format!("module {k}, m0 {m0:?}: {e}"))?;
                if chain.index != fast {
                    return Err(format!("module {k}, m0 {m0:?}: chain index {} vs {fast}", chain.index));
                }
                let slow = brute_force_initial_index(m, m0).map_err(fail)?;
                if fast != slow {
                    return Err(format!(
                        "module {k}, m0 {m0:?}: initial_index {fast}, brute force {slow}"
                    ));
                }
            }
            Ok(starts.len())
        })
        .collect::<std::result::Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    Ok(format!("{} modules, {checked} starting vectors", corpus.len()))
}

/// Checks a split exactly: both maps are homomorphisms, the composite
/// `r ∘ i` is the identity matrix in every degree, the complement embeds as
/// the kernel of `r`, and the dimensions add up.
fn check_split(current: &GradedFpModule, chain: &StringChain, sp: &SplitOff) -> std::result::Result<(), String> {
    let p = current.prime();
    let string = &sp.string;
    if !sp.inclusion.is_homomorphism(string, current) {
        return Err("inclusion is not a homomorphism".into());
    }
    if !sp.retraction.is_homomorphism(current, string) {
        return Err("retraction is not a homomorphism".into());
    }
    if !sp.embedding.is_homomorphism(&sp.complement, current) {
        return Err("complement embedding is not a homomorphism".into());
    }
    for deg in 0..=current.top() {
        let ri = sp.retraction.components[deg]
            .mul(&sp.inclusion.components[deg])
            .map_err(fail)?;
        if ri != FpMatrix::identity(p, string.dim(deg)) {
            return Err(format!("r∘i ≠ id in degree {deg}"));
        }
        let rk = sp.retraction.components[deg]
            .mul(&sp.embedding.components[deg])
            .map_err(fail)?;
        if !rk.is_zero() {
            return Err(format!("complement not in ker r at degree {deg}"));
        }
        if current.dim(deg) != string.dim(deg) + sp.complement.dim(deg) {
            return Err(format!("dimensions do not add up at degree {deg}"));
        }
    }
    for (j, x) in chain.elements.iter().enumerate() {
        let d = chain.start + j;
        if sp.inclusion.apply(d, &[1]) != *x {
            return Err(format!("i(x_{j}) is not the chain element"));
        }
    }
    Ok(())
}

/// Every `(current, chain, split)` produced while decomposing `m`.
fn traced_splits(m: &GradedFpModule) -> std::result::Result<Vec<(GradedFpModule, StringChain, SplitOff)>, String> {
    let mut out = Vec::new();
    decompose_traced(m, &mut |current, chain, split| {
        out.push((current.clone(), chain.clone(), split.clone()));
    })
    .map_err(fail)?;
    Ok(out)
}

/// All modules decomposed in criteria 1 and 2.
fn decomposed_modules() -> Result<Vec<GradedFpModule>> {
    let mut out = Vec::new();
    for (k, m) in random_corpus().into_iter().enumerate() {
        for s in 0..SCRAMBLES {
            out.push(scramble_iso(&m, scramble_seed(k, s)).0);
        }
        out.push(m);
    }
    out.extend(sum_corpus()?.into_iter().map(|(m, _)| m));
    Ok(out)
}

fn retractions() -> Outcome {
    let modules = decomposed_modules().map_err(fail)?;
    let traced: usize = modules
        .par_iter()
        .enumerate()
        .map(|(k, m)| {
            let splits = traced_splits(m)?;
            for (current, chain, sp) in &splits {
                check_split(current, chain, sp).map_err(|e| format!("decomposition {k}: {e}"))?;
            }
            Ok(splits.len())
        })
        .collect::<std::result::Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    let small = small_corpus().map_err(fail)?;
    let initial: usize = small
        .par_iter()
        .enumerate()
        .map(|(k, m)| {
            let starts = nonzero_lowest(m).map_err(fail)?;
            for m0 in &starts {
                let (_, chain) = initial_index(m, m0).map_err(fail)?;
                let sp = split_off(m, &chain).map_err(|e| format!("oracle module {k}, m0 {m0:?}: {e}"))?;
                check_split(m, &chain, &sp).map_err(|e| format!("oracle module {k}, m0 {m0:?}: {e}"))?;
            }
            Ok(starts.len())
        })
        .collect::<std::result::Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    Ok(format!(
        "{traced} splits from decompositions, {initial} from initial chains"
    ))
}

fn purity_agrees(m: &GradedFpModule, c: &StringChain) -> std::result::Result<bool, String> {
    let quick = is_pure_string_injection(m, c).map_err(fail)?;
    let full = is_pure_submodule(m, &c.span(m)).map_err(fail)?;
    Ok(quick.value == full.value)
}

fn purity() -> Outcome {
    let modules = decomposed_modules().map_err(fail)?;
    let traced: usize = modules
        .par_iter()
        .enumerate()
        .map(|(k, m)| {
            let splits = traced_splits(m)?;
            for (current, chain, _) in &splits {
                if !purity_agrees(current, chain)? {
                    return Err(format!("decomposition {k}: tests disagree on {chain:?}"));
                }
            }
            Ok(splits.len())
        })
        .collect::<std::result::Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    let small = small_corpus().map_err(fail)?;
    let (enumerated, impure) = small
        .par_iter()
        .enumerate()
        .map(|(k, m)| {
            let mut count = (0usize, 0usize);
            for m0 in nonzero_lowest(m).map_err(fail)? {
                for chain in enumerate_chains(m, &m0).map_err(fail)? {
                    if !purity_agrees(m, &chain)? {
                        return Err(format!("oracle module {k}: tests disagree on {chain:?}"));
                    }
                    count.0 += 1;
                    if !is_pure_string_injection(m, &chain).map_err(fail)?.value {
                        count.1 += 1;
                    }
                }
            }
            Ok(count)
        })
        .collect::<std::result::Result<Vec<_>, String>>()?
        .into_iter()
        .fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(format!(
        "{traced} traced chains, {enumerated} enumerated chains ({impure} impure)"
    ))
}

// ---------------------------------------------------------------------------
// 6-9: graphs, presentations, homs
// ---------------------------------------------------------------------------

fn basic_roundtrip() -> Outcome {
    let count2 = enumerate_graphs(2).map_err(fail)?.len();
    if count2 != 5 {
        return Err(format!("{count2} graphs of length 2"));
    }
    let mut cases = Vec::new();
    for m in 0..=6 {
        for g in enumerate_graphs(m).map_err(fail)? {
            for p in [2, 3] {
                for shift in 0..=1 {
                    cases.push((g.clone(), prime(p), shift, m + shift + 1));
                }
            }
        }
    }
    cases.par_iter().try_for_each(|(g, p, shift, top)| {
        let w = module_from_graph(g, *p, *shift, *top).map_err(fail)?;
        let c = classify_basic(&w).map_err(|e| format!("{g} over F_{p}: {e}"))?;
        if c.graph != *g || c.shift != *shift {
            return Err(format!("{g} over F_{p} classified as Σ^{} {}", c.shift, c.graph));
        }
        if injectivity_profile(&w) != arrow_profile(g, *shift, *top).map_err(fail)? {
            return Err(format!("{g} over F_{p}: profile differs from the arrow rules"));
        }
        Ok(())
    })?;
    Ok(format!("{} (graph, p, shift) cases; 5 graphs of length 2", cases.len()))
}

fn subsets(m: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << m).map(move |mask| (1..=m).filter(|&i| mask & (1 << (i - 1)) != 0).collect())
}

fn hilbert() -> Outcome {
    let mut n = 0;
    for p in [2u64, 3] {
        for m in 0..=3usize {
            for set in subsets(m) {
                let idx = StringIndex::finite(m, set).map_err(fail)?;
                for r in 1..=4u64 {
                    let total = p.pow(m as u32 + 1);
                    // One degree past the top class, so a missing relation shows up.
                    let maxdeg = (r * total) as usize;
                    let got = hilbert_series(r, &idx, prime(p), maxdeg).map_err(fail)?;
                    let want = monomial_series(r, m, prime(p), maxdeg).map_err(fail)?;
                    if got != want {
                        return Err(format!("H({r}, {idx}) over F_{p}: {:?} vs {:?}", got.dims, want.dims));
                    }
                    if got.total() != total {
                        return Err(format!("H({r}, {idx}) over F_{p}: total {}", got.total()));
                    }
                    let expected_support: Vec<usize> = (0..total as usize).map(|k| k * r as usize).collect();
                    if got.support() != expected_support {
                        return Err(format!("H({r}, {idx}) over F_{p}: support {:?}", got.support()));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} series"))
}

fn endomorphisms() -> Outcome {
    let mut cases = Vec::new();
    for p in [2, 3] {
        for m in 0..=6usize {
            for set in subsets(m) {
                cases.push((prime(p), StringIndex::finite(m, set).map_err(fail)?));
            }
        }
    }
    cases.par_iter().try_for_each(|(p, idx)| {
        for (shift, top) in [(0, idx.m()), (1, idx.m() + 2)] {
            let module = string_module(idx, shift, *p, top).map_err(fail)?;
            let dim = hom_space(&module, &module).map_err(fail)?.dim();
            if dim != 1 {
                return Err(format!("End(Σ^{shift} M{idx}) over F_{p} has dimension {dim}"));
            }
        }
        Ok(())
    })?;
    Ok(format!("{} string modules in two windows", cases.len()))
}

fn large_indecomposable() -> Outcome {
    let p = prime(2);
    let mut problems = Vec::new();
    let mut counts = Vec::new();
    for n in 1..=3 {
        let b = big_indecomposable(n, p).map_err(fail)?;
        let idem = idempotent_search(&b).map_err(fail)?;
        let trivial = idem.len() == 2 && idem.iter().any(WittMap::is_zero) && idem.contains(&WittMap::identity(&b));
        counts.push(format!("N={n}: {}", idem.len()));
        if !trivial {
            problems.push(format!("N={n} has {} idempotents", idem.len()));
        }
    }
    let top = crate::witt::big_window(3);
    let gammas: Vec<WittModule> = (1..=3)
        .map(|i| module_from_graph(&gamma(i), p, 0, top))
        .collect::<Result<_>>()
        .map_err(fail)?;
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let h = hom_group(&gammas[i], &gammas[j]).map_err(fail)?;
            if !h.is_zero() {
                problems.push(format!("|Hom(M(Γ_{}), M(Γ_{}))| = 2^{}", i + 1, j + 1, h.log_order()));
            }
        }
    }
    if problems.is_empty() {
        Ok(format!("idempotents {}; cross homs vanish", counts.join(", ")))
    } else {
        Err(problems.join("; "))
    }
}

// ---------------------------------------------------------------------------
// 10-12: Dieudonné modules, lifts, primitive generation
// ---------------------------------------------------------------------------

/// `n = j p^a` with `p ∤ j`, by repeated division.
fn typical_part(n: usize, p: usize) -> (usize, usize) {
    let (mut j, mut a) = (n, 0);
    while j % p == 0 {
        j /= p;
        a += 1;
    }
    (j, a)
}

fn typical_splitting() -> Outcome {
    (0..100u64).into_par_iter().try_for_each(|k| {
        let p = prime([2, 3][(k % 2) as usize]);
        let pu = p.get() as usize;
        let top = 1 + (k as usize / 2) % 12;
        let d = random_dieudonne(p, top, 3, 700 + k);
        if let Some(v) = d.validate().first() {
            return Err(format!("random module {k} invalid: {v}"));
        }
        let parts = d.p_typical_split();
        let back = DieudonneModule::reassemble(p, top, d.extends(), &parts).map_err(fail)?;
        if back != d {
            return Err(format!("module {k}: reassembly differs"));
        }
        // Each degree lies in exactly the part named by its prime-to-p factor.
        let mut seen = BTreeSet::new();
        for (&j, part) in &parts {
            for a in 0..=part.top() {
                let n = j * pu.pow(a as u32);
                if typical_part(n, pu) != (j, a) || n > top || !seen.insert(n) {
                    return Err(format!("module {k}: degree {n} misplaced in type {j}"));
                }
                if part.orders(a) != d.orders(n) {
                    return Err(format!("module {k}: type {j} degree {a} has the wrong group"));
                }
            }
        }
        if seen != (1..=top).collect::<BTreeSet<_>>() {
            return Err(format!("module {k}: supports do not cover 1..={top}"));
        }
        Ok(())
    })?;
    Ok("100 modules split and reassemble; supports partition the degrees".into())
}

/// Every valid graph with the given stored kinds and an unknown tail.
fn censored_graphs(m: usize) -> Vec<HopfGraph> {
    let mut out = Vec::new();
    for code in 0..4usize.pow(m as u32) {
        let kinds: Vec<ArrowKind> = (0..m).map(|i| ArrowKind::ALL[(code >> (2 * i)) & 3]).collect();
        let g = HopfGraph::from_kinds(&kinds, Some(Tail::Unknown));
        if g.is_valid() {
            out.push(g);
        }
    }
    out
}

/// The single string type of a module, if it has one.
fn single_type(m: &GradedFpModule) -> Option<StringIndex> {
    let d = decompose(m).ok()?;
    match d.summands.as_slice() {
        [s] if s.shift == 0 => Some(s.index.clone()),
        _ => None,
    }
}

fn free_cofree() -> Outcome {
    let mut notes = Vec::new();
    // Truncations of the staircase graph.
    for p in [2, 3] {
        for len in 1..=6 {
            let w = module_from_graph(&HopfGraph::lambda(len), prime(p), 0, len).map_err(fail)?;
            let (f, c) = (is_free_algebra(&w), is_cofree_coalgebra(&w));
            if !(f.value && f.window_uncertain && c.value && c.window_uncertain) {
                return Err(format!("Λ truncated at {len} over F_{p}: free {f}, cofree {c}"));
            }
        }
    }
    notes.push("Λ truncations free and cofree (window-uncertain)".to_string());
    // Censored types: the lift has the property and the type, and no other
    // graph does.
    let mut censored = 0;
    for m in 1..=5usize {
        let graphs = censored_graphs(m);
        for set in subsets(m) {
            let idx = StringIndex::censored(m, set).map_err(fail)?;
            for p in [2, 3] {
                let p = prime(p);
                let modules: Vec<(HopfGraph, WittModule)> = graphs
                    .iter()
                    .map(|g| module_from_graph(g, p, 0, m).map(|w| (g.clone(), w)))
                    .collect::<Result<_>>()
                    .map_err(fail)?;
                let free: Vec<&HopfGraph> = modules
                    .iter()
                    .filter(|(_, w)| is_free_algebra(w).value && single_type(&w.mod_p_reduction()) == Some(idx.clone()))
                    .map(|(g, _)| g)
                    .collect();
                let cofree: Vec<&HopfGraph> = modules
                    .iter()
                    .filter(|(_, w)| {
                        is_cofree_coalgebra(w).value && single_type(&w.p_torsion_kernel()) == Some(idx.clone())
                    })
                    .map(|(g, _)| g)
                    .collect();
                for (name, lift, found) in [("free", free_lift(&idx), free), ("cofree", cofree_lift(&idx), cofree)] {
                    match lift {
                        LiftOutcome::Graph(g) if found == [&g] => {}
                        other => {
                            return Err(format!(
                                "{name} lift of {idx} over F_{p}: {other:?}, search found {found:?}"
                            ))
                        }
                    }
                }
                censored += 1;
            }
        }
    }
    notes.push(format!("{censored} censored types lift uniquely"));
    // Finite types: certificates, and no finite graph is free or cofree.
    let mut finite = 0;
    for m in 0..=5usize {
        let graphs = enumerate_graphs(m).map_err(fail)?;
        for set in subsets(m) {
            let idx = StringIndex::finite(m, set).map_err(fail)?;
            for lift in [free_lift(&idx), cofree_lift(&idx)] {
                match lift {
                    LiftOutcome::Impossible(ob)
                        if !ob.top_transition.is_empty() && ob.forced_heights.len() == m + 1 => {}
                    other => return Err(format!("finite type {idx}: {other:?}")),
                }
            }
            finite += 1;
        }
        for g in &graphs {
            for p in [2, 3] {
                let w = module_from_graph(g, prime(p), 0, m).map_err(fail)?;
                let (f, c) = (is_free_algebra(&w), is_cofree_coalgebra(&w));
                if f.value || c.value || f.window_uncertain || c.window_uncertain {
                    return Err(format!("finite graph {g} over F_{p}: free {f}, cofree {c}"));
                }
            }
        }
    }
    notes.push(format!("{finite} finite types impossible with certificates"));
    Ok(notes.join("; "))
}

fn primitive() -> Outcome {
    let mut corpus = s_corpus();
    corpus.extend(
        random_corpus()
            .into_iter()
            .filter(|m| m.t_maps().iter().all(FpMatrix::is_zero)),
    );
    let summands: usize = corpus
        .par_iter()
        .enumerate()
        .map(|(k, m)| {
            let d = decompose(m).map_err(fail)?;
            if let Some(s) = d.summands.iter().find(|s| !s.index.is_all_s()) {
                return Err(format!("module {k} with t = 0 has the summand {}", s.index));
            }
            Ok(d.summands.len())
        })
        .collect::<std::result::Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    Ok(format!(
        "{} modules with t = 0, {summands} summands, all with I = {{1..m}}",
        corpus.len()
    ))
}
