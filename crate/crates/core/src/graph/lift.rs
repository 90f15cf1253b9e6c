use crate::string::StringIndex;

use super::{ArrowKind, HopfGraph, Tail};

/// Why no basic graph of the requested mod-`p` type has the requested
/// property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftObstruction {
    /// The heights forced step by step by the arrow choice.
    pub forced_heights: Vec<i64>,
    /// Whether the forced heights fail to return to 0 at `m`.
    pub height_violation: bool,
    /// The map across the top transition that cannot have the property: the
    /// top component is nonzero and the module vanishes above it.
    pub top_transition: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    Graph(HopfGraph),
    Impossible(LiftObstruction),
}

/// The unique graph of type `(m, I)` whose module has injective `s`
/// (Frobenius): right-horizontal at `i ∈ I`, left-down at `i ∉ I`.
///
/// Types are read through the cokernel of `p`. A finite type has no such
/// graph, since `s` out of the nonzero top component lands in zero.
pub fn free_lift(index: &StringIndex) -> LiftOutcome {
    lift(
        index,
        ArrowKind::RightHorizontal,
        ArrowKind::LeftDown,
        "s: M_m -> M_{m+1} = 0 is not injective",
    )
}

/// The unique graph whose module has surjective `t` (Verschiebung) and whose
/// `p`-torsion kernel has type `(m, I)`: left-down at `i ∈ I`,
/// left-horizontal at `i ∉ I`.
///
/// The cokernel reading admits no such graph whenever `I` is nonempty, since
/// a right-pointing arrow never gives a surjective `t`; the kernel of `p`
/// turns left-down steps into `s`-steps and left-horizontal ones into
/// `t`-steps. A finite type is impossible, since `t` from the zero component
/// above the top cannot hit it.
pub fn cofree_lift(index: &StringIndex) -> LiftOutcome {
    lift(
        index,
        ArrowKind::LeftDown,
        ArrowKind::LeftHorizontal,
        "t: M_{m+1} = 0 -> M_m is not surjective",
    )
}

fn lift(index: &StringIndex, in_set: ArrowKind, outside: ArrowKind, obstruction: &str) -> LiftOutcome {
    let kinds: Vec<ArrowKind> = (1..=index.m())
        .map(|i| if index.contains(i) { in_set } else { outside })
        .collect();
    let graph = HopfGraph::from_kinds(&kinds, Some(Tail::Unknown));
    if index.is_censored() {
        LiftOutcome::Graph(graph)
    } else {
        LiftOutcome::Impossible(LiftObstruction {
            height_violation: *graph.heights().last().expect("nonempty") != 0,
            forced_heights: graph.heights,
            top_transition: obstruction.to_string(),
        })
    }
}
