use crate::error::{Error, Result};
use crate::graph::{ArrowKind, HopfGraph};
use crate::linalg::Prime;

use super::{module_from_graph, WittModule};

/// Degrees above the longest glued graph kept in the window.
const HEADROOM: usize = 2;

fn with_middle(start: [ArrowKind; 2], i: usize) -> HopfGraph {
    use ArrowKind::*;
    let mut kinds = start.to_vec();
    kinds.extend(std::iter::repeat_n(LeftHorizontal, i));
    kinds.extend([LeftDown, RightDown]);
    HopfGraph::from_kinds(&kinds, None)
}

/// `Γ_i`: left-horizontal, right-horizontal, `i` left-horizontal steps, then
/// left-down and right-down. Its length is `i + 4`.
pub fn gamma(i: usize) -> HopfGraph {
    with_middle([ArrowKind::LeftHorizontal, ArrowKind::RightHorizontal], i)
}

/// `Γ'_i`: the graph `Γ_i` with its first two steps replaced by a
/// left-down, right-down bump, so that `p x̃_1` is nonzero.
pub fn extension_graph(i: usize) -> HopfGraph {
    with_middle([ArrowKind::LeftDown, ArrowKind::RightDown], i)
}

/// Window top used by [`big_indecomposable`].
pub fn big_window(n: usize) -> usize {
    n + 4 + HEADROOM
}

/// `(⊕_{i=1..n} M(Γ'_i)) / ⟨p x̃_1^{(i)} - p x̃_1^{(1)} : 2 <= i <= n⟩`.
///
/// The gluing identifies the socles of the degree-1 components, so an
/// idempotent cannot separate the summands.
pub fn big_indecomposable(n: usize, p: Prime) -> Result<WittModule> {
    if n == 0 {
        return Err(Error::InvalidModule("need at least one glued graph".into()));
    }
    let top = big_window(n);
    let parts: Vec<WittModule> = (1..=n)
        .map(|i| module_from_graph(&extension_graph(i), p, 0, top))
        .collect::<Result<_>>()?;
    let refs: Vec<&WittModule> = parts.iter().collect();
    let sum = WittModule::direct_sum(p, top, &refs)?;
    // Degree 1 of the sum has one Z/p^2 factor per graph, in order.
    let mut gens = vec![Vec::new(); top + 1];
    for i in 2..=n {
        let mut g = vec![0u64; n];
        g[0] = p.power(2) - p.as_u64();
        g[i - 1] = p.as_u64();
        gens[1].push(g);
    }
    Ok(sum.quotient(&gens)?.0)
}
