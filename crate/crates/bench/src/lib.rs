//! Fixed workloads shared by the benchmarks.

use hopfclass_core::string::{random_module, random_string_sum};
use hopfclass_core::witt::big_indecomposable;
use hopfclass_core::{module_from_graph, GradedFpModule, HopfGraph, Prime, WittModule};

fn prime(p: u64) -> Prime {
    Prime::new(p).expect("small prime")
}

/// Random modules over `F_p` on the window `0..=top` with components of
/// dimension at most `maxdim`.
pub fn random_modules(p: u64, top: usize, maxdim: usize, count: u64) -> Vec<GradedFpModule> {
    (0..count)
        .map(|seed| random_module(prime(p), top, maxdim, seed))
        .collect()
}

/// Scrambled sums of `summands` string modules on the window `0..=top`.
pub fn string_sums(p: u64, top: usize, summands: usize, count: u64) -> Vec<GradedFpModule> {
    (0..count)
        .map(|seed| {
            random_string_sum(prime(p), top, summands, false, seed)
                .expect("valid sizes")
                .0
        })
        .collect()
}

/// The staircase graph module truncated at `top`.
pub fn staircase(p: u64, top: usize) -> WittModule {
    module_from_graph(&HopfGraph::lambda(top), prime(p), 0, top).expect("fits the window")
}

/// The glued module on `n` extension graphs over `F_2`.
pub fn glued(n: usize) -> WittModule {
    big_indecomposable(n, prime(2)).expect("small n")
}
