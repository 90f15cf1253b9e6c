use std::collections::BTreeSet;

use crate::error::{Error, Result, Verdict};
use crate::graph::{ArrowKind, HopfGraph, Tail};
use crate::linalg::{PGroupHom, Prime};
use crate::string::decompose;

use super::WittModule;

/// The basic module `Σ^shift M(Γ)` on the window `0..=top`.
///
/// Degree `shift + i` is `Z/p^{v_i + 1}` on `x_i`, with `s x_{i-1} = x_i`
/// and `t x_i = p x_{i-1}` for `i ∈ I`, and `s x_{i-1} = p x_i`,
/// `t x_i = x_{i-1}` otherwise. An infinite graph is cut at the window top
/// and flagged as extending past it.
pub fn module_from_graph(g: &HopfGraph, p: Prime, shift: usize, top: usize) -> Result<WittModule> {
    if let Some(v) = g.validate().first() {
        return Err(Error::InvalidGraph(v.clone()));
    }
    if shift > top {
        return Err(Error::IndexOutOfWindow(format!(
            "shift {shift} is above the window top {top}"
        )));
    }
    let room = top - shift;
    let (g, extends) = if g.is_finite() {
        if g.steps() > room {
            return Err(Error::IndexOutOfWindow(format!(
                "graph of length {} shifted by {shift} does not fit below {top}",
                g.steps()
            )));
        }
        (g.clone(), false)
    } else {
        (prefix(&g.extended(room)?, room), true)
    };
    let steps = g.steps();
    let mut orders = vec![Vec::new(); top + 1];
    for i in 0..=steps {
        orders[shift + i] = vec![g.height(i) as u32 + 1];
    }
    let mut s = Vec::with_capacity(top);
    let mut t = Vec::with_capacity(top);
    for d in 0..top {
        let (a, b) = (orders[d].clone(), orders[d + 1].clone());
        let i = d + 1;
        if i > shift && i - shift <= steps {
            let in_set = g.set().contains(&(i - shift));
            let (sv, tv) = if in_set { (1, p.as_u64()) } else { (p.as_u64(), 1) };
            s.push(PGroupHom::reduced(p, a.clone(), b.clone(), vec![sv]));
            t.push(PGroupHom::reduced(p, b, a, vec![tv]));
        } else {
            s.push(PGroupHom::zero(p, a.clone(), b.clone()));
            t.push(PGroupHom::zero(p, b, a));
        }
    }
    WittModule::new(p, orders, s, t, extends)
}

fn prefix(g: &HopfGraph, steps: usize) -> HopfGraph {
    let set: BTreeSet<usize> = g.set().iter().copied().filter(|&i| i <= steps).collect();
    HopfGraph::new(set, g.heights()[..=steps].to_vec(), g.tail()).expect("prefix of a graph")
}

/// A basic module recognised as `Σ^shift M(Γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedBasic {
    pub shift: usize,
    pub graph: HopfGraph,
    /// The generator `x̃_i` in the coordinates of degree `shift + i`.
    pub lifts: Vec<Vec<u64>>,
}

/// Recognises a basic module and recovers its graph.
///
/// The mod-`p` reduction must be a single string `Σ^{r'} M(m, I)` and every
/// component cyclic; then `v_i` is read off the orders. Starting from a
/// generator of the bottom component, `x̃_i = s x̃_{i-1}` for `i ∈ I` and a
/// `t`-preimage of `x̃_{i-1}` otherwise; each lift must generate its
/// component and satisfy the remaining relation. A reduction censored at the
/// window top gives an infinite graph with an unknown continuation.
pub fn classify_basic(m: &WittModule) -> Result<ClassifiedBasic> {
    if let Some(v) = m.validate().first() {
        return Err(Error::InvalidModule(v.to_string()));
    }
    if m.is_zero() {
        return Err(Error::NotBasic("the zero module has no graph".into()));
    }
    let reduction = m.mod_p_reduction();
    let dec = decompose(&reduction)?;
    if dec.summands.len() != 1 {
        let parts: Vec<String> = dec
            .multiset()
            .iter()
            .map(|(r, idx)| format!("Σ^{r} M{}", show_index(idx)))
            .collect();
        return Err(Error::NotBasic(format!(
            "mod-p reduction has {} string summands: {}",
            parts.len(),
            parts.join(" + ")
        )));
    }
    let summand = &dec.summands[0];
    let (shift, index) = (summand.shift, &summand.index);
    let steps = index.m();
    let p = m.prime();
    for i in 0..=steps {
        if m.orders(shift + i).len() != 1 {
            return Err(Error::NotBasic(format!("degree {} is not cyclic", shift + i)));
        }
    }
    let heights: Vec<i64> = (0..=steps).map(|i| m.orders(shift + i)[0] as i64 - 1).collect();
    let unit = |x: &[u64]| !x[0].is_multiple_of(p.as_u64());
    let times_p = |x: &[u64], e: u32| vec![x[0] * p.as_u64() % p.power(e)];
    let mut lifts: Vec<Vec<u64>> = vec![vec![1]];
    for i in 1..=steps {
        let d = shift + i;
        let prev = lifts[i - 1].clone();
        let (s, t) = (m.s(d - 1), m.t(d - 1));
        let e_prev = m.orders(d - 1)[0];
        let e = m.orders(d)[0];
        let x = if index.contains(i) {
            let x = s.apply(&prev);
            if t.apply(&x) != times_p(&prev, e_prev) {
                return Err(Error::GraphInvalid(format!("t x̃_{i} ≠ p x̃_{}", i - 1)));
            }
            x
        } else {
            let x = t
                .solve(&prev)?
                .ok_or_else(|| Error::GraphInvalid(format!("x̃_{} is not in the image of t at step {i}", i - 1)))?;
            if s.apply(&prev) != times_p(&x, e) {
                return Err(Error::GraphInvalid(format!("s x̃_{} ≠ p x̃_{i}", i - 1)));
            }
            x
        };
        if !unit(&x) {
            return Err(Error::GraphInvalid(format!("x̃_{i} does not generate degree {d}")));
        }
        lifts.push(x);
    }
    let tail = index.is_censored().then_some(Tail::Unknown);
    let graph = HopfGraph::new(index.set().clone(), heights, tail)?;
    if let Some(v) = graph.validate().first() {
        return Err(Error::GraphInvalid(v.clone()));
    }
    Ok(ClassifiedBasic { shift, graph, lifts })
}

fn show_index(idx: &crate::string::StringIndex) -> String {
    let set: Vec<String> = idx.set().iter().map(|i| i.to_string()).collect();
    let m = if idx.is_censored() {
        format!("≥{}", idx.m())
    } else {
        idx.m().to_string()
    };
    format!("({m}, {{{}}})", set.join(","))
}

/// Injectivity and surjectivity of `s: M_{i-1} -> M_i` and `t: M_i -> M_{i-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepProfile {
    pub degree: usize,
    pub s_injective: bool,
    pub s_surjective: bool,
    pub t_injective: bool,
    pub t_surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityProfile {
    /// One entry per degree `i = 1..=top`.
    pub steps: Vec<StepProfile>,
    /// The transition from the top degree to the zero module above it;
    /// `None` when the module extends past the window.
    pub above: Option<StepProfile>,
}

pub fn injectivity_profile(m: &WittModule) -> InjectivityProfile {
    let steps = (1..=m.top())
        .map(|i| StepProfile {
            degree: i,
            s_injective: m.s(i - 1).is_injective(),
            s_surjective: m.s(i - 1).is_surjective(),
            t_injective: m.t(i - 1).is_injective(),
            t_surjective: m.t(i - 1).is_surjective(),
        })
        .collect();
    let above = (!m.extends()).then(|| {
        let zero = m.orders(m.top()).is_empty();
        StepProfile {
            degree: m.top() + 1,
            s_injective: zero,
            s_surjective: true,
            t_injective: true,
            t_surjective: zero,
        }
    });
    InjectivityProfile { steps, above }
}

/// The profile predicted for `Σ^shift M(Γ)` by the arrow kinds alone: on a
/// step of the graph, `s` is injective exactly for right-horizontal and
/// left-down arrows, `t` exactly for left-horizontal and right-down ones,
/// and `s` (resp. `t`) is onto exactly when the arrow points right (resp.
/// left). Off the graph the groups on one or both sides vanish.
pub fn arrow_profile(g: &HopfGraph, shift: usize, top: usize) -> Result<InjectivityProfile> {
    let kinds = g
        .extended(top.saturating_sub(shift))?
        .kinds()
        .ok_or_else(|| Error::InvalidGraph(g.to_string()))?;
    let last = if g.is_finite() { Some(shift + g.steps()) } else { None };
    let present = |d: usize| d >= shift && last.is_none_or(|l| d <= l);
    let step = |i: usize| {
        let profile = |si, ss, ti, ts| StepProfile {
            degree: i,
            s_injective: si,
            s_surjective: ss,
            t_injective: ti,
            t_surjective: ts,
        };
        match (present(i - 1), present(i)) {
            (false, false) => profile(true, true, true, true),
            (false, true) => profile(true, false, false, true),
            (true, false) => profile(false, true, true, false),
            (true, true) => {
                use ArrowKind::*;
                let k = kinds[i - shift - 1];
                profile(
                    matches!(k, RightHorizontal | LeftDown),
                    k.points_right(),
                    matches!(k, LeftHorizontal | RightDown),
                    !k.points_right(),
                )
            }
        }
    };
    let steps = (1..=top).map(step).collect();
    let above = g.is_finite().then(|| step(top + 1));
    Ok(InjectivityProfile { steps, above })
}

/// Whether `s` is injective throughout, i.e. the corresponding Hopf algebra
/// is free as an algebra. Uncertain when the module extends past the window.
pub fn is_free_algebra(m: &WittModule) -> Verdict {
    let prof = injectivity_profile(m);
    let inside = prof.steps.iter().all(|s| s.s_injective);
    match prof.above {
        Some(a) => Verdict::certain(inside && a.s_injective),
        None if !inside => Verdict::certain(false),
        None => Verdict::uncertain(true),
    }
}

/// Whether `t` is surjective throughout, i.e. the corresponding Hopf algebra
/// is cofree as a coalgebra.
pub fn is_cofree_coalgebra(m: &WittModule) -> Verdict {
    let prof = injectivity_profile(m);
    let inside = prof.steps.iter().all(|s| s.t_surjective);
    match prof.above {
        Some(a) => Verdict::certain(inside && a.t_surjective),
        None if !inside => Verdict::certain(false),
        None => Verdict::uncertain(true),
    }
}
