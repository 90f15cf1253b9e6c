//! Basic Hopf graphs: lattice paths of four arrow kinds, stored through the
//! `(m, I, v)` codec.

mod lift;
mod render;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Prime;
use crate::string::StringIndex;

pub use lift::{cofree_lift, free_lift, LiftObstruction, LiftOutcome};
pub use render::{parse_tikz_arrows, render_graph, RenderFormat};

/// Largest length accepted by [`enumerate_graphs`].
pub const ENUMERATION_MAX_LENGTH: usize = 12;

/// One arrow of a basic Hopf graph, named by its direction: horizontal or
/// diagonal, towards the right or the left. Diagonal arrows always point
/// down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowKind {
    RightHorizontal,
    LeftHorizontal,
    RightDown,
    LeftDown,
}

impl ArrowKind {
    pub const ALL: [ArrowKind; 4] = [
        ArrowKind::RightHorizontal,
        ArrowKind::LeftHorizontal,
        ArrowKind::RightDown,
        ArrowKind::LeftDown,
    ];

    /// Whether the arrow points right, i.e. the step belongs to `I`.
    pub fn points_right(self) -> bool {
        matches!(self, ArrowKind::RightHorizontal | ArrowKind::RightDown)
    }

    /// `v_i - v_{i-1}` across a step of this kind.
    pub fn height_change(self) -> i64 {
        match self {
            ArrowKind::RightHorizontal | ArrowKind::LeftHorizontal => 0,
            ArrowKind::RightDown => -1,
            ArrowKind::LeftDown => 1,
        }
    }

    /// The kind of step `i` given membership of `i` in `I` and the height
    /// change, if the pair is allowed.
    pub fn from_step(in_set: bool, change: i64) -> Option<ArrowKind> {
        match (in_set, change) {
            (true, 0) => Some(ArrowKind::RightHorizontal),
            (true, -1) => Some(ArrowKind::RightDown),
            (false, 0) => Some(ArrowKind::LeftHorizontal),
            (false, 1) => Some(ArrowKind::LeftDown),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ArrowKind::RightHorizontal => "right-horizontal",
            ArrowKind::LeftHorizontal => "left-horizontal",
            ArrowKind::RightDown => "right-down",
            ArrowKind::LeftDown => "left-down",
        }
    }

    pub fn from_name(s: &str) -> Option<ArrowKind> {
        ArrowKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for ArrowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How an infinite graph continues past its stored prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tail {
    /// The last stored step repeats forever with this kind.
    Repeat(ArrowKind),
    /// Nothing is known past the prefix (a graph recovered from a window).
    Unknown,
}

/// A basic Hopf graph in `(m, I, v)` form.
///
/// `heights` holds `v_0..v_L` for the stored steps `1..=L`. A finite graph
/// has `m = L`; an infinite one carries a [`Tail`] describing the steps after
/// `L`. Values are stored as given; [`HopfGraph::validate`] checks the codec
/// conditions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HopfGraph {
    set: BTreeSet<usize>,
    heights: Vec<i64>,
    tail: Option<Tail>,
}

impl HopfGraph {
    pub fn new(set: BTreeSet<usize>, heights: Vec<i64>, tail: Option<Tail>) -> Result<HopfGraph> {
        if heights.is_empty() {
            return Err(Error::InvalidGraph("heights must contain v_0".into()));
        }
        let steps = heights.len() - 1;
        if let Some(&bad) = set.iter().find(|&&i| i == 0 || i > steps) {
            return Err(Error::InvalidGraph(format!("step {bad} of I is outside 1..={steps}")));
        }
        Ok(HopfGraph { set, heights, tail })
    }

    pub fn finite(set: impl IntoIterator<Item = usize>, heights: Vec<i64>) -> Result<HopfGraph> {
        HopfGraph::new(set.into_iter().collect(), heights, None)
    }

    pub fn infinite(set: impl IntoIterator<Item = usize>, heights: Vec<i64>, tail: Tail) -> Result<HopfGraph> {
        HopfGraph::new(set.into_iter().collect(), heights, Some(tail))
    }

    /// The graph whose steps `1..` have the given kinds.
    pub fn from_kinds(kinds: &[ArrowKind], tail: Option<Tail>) -> HopfGraph {
        let mut heights = vec![0i64];
        let mut set = BTreeSet::new();
        for (i, k) in kinds.iter().enumerate() {
            if k.points_right() {
                set.insert(i + 1);
            }
            heights.push(heights[i] + k.height_change());
        }
        HopfGraph { set, heights, tail }
    }

    /// `Λ_p`: left-down arrows forever, stored with `prefix` steps.
    pub fn lambda(prefix: usize) -> HopfGraph {
        HopfGraph::from_kinds(
            &vec![ArrowKind::LeftDown; prefix],
            Some(Tail::Repeat(ArrowKind::LeftDown)),
        )
    }

    /// Number of stored steps `L`.
    pub fn steps(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    /// `m_Γ`, or `None` for an infinite graph.
    pub fn m(&self) -> Option<usize> {
        self.is_finite().then(|| self.steps())
    }

    pub fn set(&self) -> &BTreeSet<usize> {
        &self.set
    }

    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    pub fn height(&self, i: usize) -> i64 {
        self.heights[i]
    }

    pub fn tail(&self) -> Option<Tail> {
        self.tail
    }

    pub fn max_height(&self) -> i64 {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// Kind of step `i` in `1..=steps()`, or `None` if the step breaks the
    /// codec rules.
    pub fn kind(&self, i: usize) -> Option<ArrowKind> {
        ArrowKind::from_step(self.set.contains(&i), self.heights[i] - self.heights[i - 1])
    }

    pub fn kinds(&self) -> Option<Vec<ArrowKind>> {
        (1..=self.steps()).map(|i| self.kind(i)).collect()
    }

    /// All codec conditions that fail, as readable messages.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.heights[0] != 0 {
            out.push(format!("v_0 = {} but must be 0", self.heights[0]));
        }
        for i in 1..=self.steps() {
            let (prev, cur) = (self.heights[i - 1], self.heights[i]);
            if self.set.contains(&i) && !(cur == prev || cur == prev - 1) {
                out.push(format!(
                    "{i} ∈ I but v_{i} = {cur} is not in {{v_{} - 1, v_{}}}",
                    i - 1,
                    i - 1
                ));
            }
            if !self.set.contains(&i) && !(cur == prev || cur == prev + 1) {
                out.push(format!(
                    "{i} ∉ I but v_{i} = {cur} is not in {{v_{}, v_{} + 1}}",
                    i - 1,
                    i - 1
                ));
            }
        }
        if let Some((i, v)) = self.heights.iter().enumerate().find(|(_, &v)| v < 0) {
            out.push(format!("v_{i} = {v} is negative"));
        }
        match self.tail {
            None => {
                let last = *self.heights.last().expect("nonempty");
                if last != 0 {
                    out.push(format!(
                        "finite graph ends at height v_{} = {last}, not 0",
                        self.steps()
                    ));
                }
            }
            Some(Tail::Repeat(ArrowKind::RightDown)) => {
                out.push("a right-down tail eventually drops below the axis".into());
            }
            Some(_) => {}
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn check(&self) -> Result<()> {
        match self.validate().first() {
            Some(v) => Err(Error::InvalidGraph(v.clone())),
            None => Ok(()),
        }
    }

    /// The same graph stored with at least `steps` steps. Finite graphs and
    /// long enough prefixes come back unchanged.
    pub fn extended(&self, steps: usize) -> Result<HopfGraph> {
        if steps <= self.steps() || self.is_finite() {
            return Ok(self.clone());
        }
        let kind = match self.tail {
            Some(Tail::Repeat(k)) => k,
            _ => {
                return Err(Error::InvalidGraph(format!(
                    "the continuation past step {} is unknown",
                    self.steps()
                )))
            }
        };
        let mut g = self.clone();
        while g.steps() < steps {
            let next = g.steps() + 1;
            if kind.points_right() {
                g.set.insert(next);
            }
            let h = *g.heights.last().expect("nonempty") + kind.height_change();
            g.heights.push(h);
        }
        Ok(g)
    }

    /// The mod-`p` type `(m_Γ, I_Γ)`; infinite graphs give a censored index
    /// on their stored prefix.
    pub fn index(&self) -> StringIndex {
        let set: BTreeSet<usize> = self.set.clone();
        if self.is_finite() {
            StringIndex::finite(self.steps(), set).expect("I lies in 1..=m")
        } else {
            StringIndex::censored(self.steps(), set).expect("I lies in the prefix")
        }
    }

    /// Step kinds including the continuation, when it is a known repeat.
    fn all_kinds(&self) -> Option<(Vec<ArrowKind>, Option<ArrowKind>)> {
        let kinds = self.kinds()?;
        let tail = match self.tail {
            Some(Tail::Repeat(k)) => Some(k),
            _ => None,
        };
        Some((kinds, tail))
    }
}

impl fmt::Display for HopfGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tail {
            None => write!(f, "m={}, ", self.steps())?,
            Some(_) => write!(f, "m=inf, ")?,
        }
        let set: Vec<String> = self.set.iter().map(|i| i.to_string()).collect();
        let v: Vec<String> = self.heights.iter().map(|i| i.to_string()).collect();
        write!(f, "I={{{}}}, v=({}", set.join(","), v.join(","))?;
        match self.tail {
            None => write!(f, ")"),
            Some(Tail::Repeat(k)) => write!(f, ", ...) tail {k}"),
            Some(Tail::Unknown) => write!(f, ", ...) tail unknown"),
        }
    }
}

/// An arrow between two lattice points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub from: (i64, i64),
    pub to: (i64, i64),
}

impl Arrow {
    pub fn kind(&self) -> Option<ArrowKind> {
        match (self.to.0 - self.from.0, self.to.1 - self.from.1) {
            (1, 0) => Some(ArrowKind::RightHorizontal),
            (-1, 0) => Some(ArrowKind::LeftHorizontal),
            (1, -1) => Some(ArrowKind::RightDown),
            (-1, -1) => Some(ArrowKind::LeftDown),
            _ => None,
        }
    }

    /// The endpoint with the smaller x-coordinate.
    pub fn left(&self) -> (i64, i64) {
        if self.from.0 <= self.to.0 {
            self.from
        } else {
            self.to
        }
    }

    pub fn right(&self) -> (i64, i64) {
        if self.from.0 <= self.to.0 {
            self.to
        } else {
            self.from
        }
    }
}

/// The arrows of a graph in step order, plus the continuation of an
/// infinite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowList {
    pub arrows: Vec<Arrow>,
    pub tail: Option<Tail>,
}

pub fn graph_arrows(g: &HopfGraph) -> Result<ArrowList> {
    g.check()?;
    let arrows = (1..=g.steps())
        .map(|i| {
            let left = ((i - 1) as i64, g.height(i - 1));
            let right = (i as i64, g.height(i));
            if g.set.contains(&i) {
                Arrow { from: left, to: right }
            } else {
                Arrow { from: right, to: left }
            }
        })
        .collect();
    Ok(ArrowList { arrows, tail: g.tail })
}

/// Recovers the graph from its arrows, which may come in any order.
///
/// The single-point graph `m = 0` has no arrows and therefore cannot be
/// recovered this way: an empty list has no endpoint at the origin.
pub fn graph_from_arrows(list: &ArrowList) -> Result<HopfGraph> {
    if list.arrows.is_empty() {
        return Err(Error::InvalidGraph("no arrow has an endpoint at (0,0)".into()));
    }
    let mut arrows = list.arrows.clone();
    arrows.sort_by_key(|a| a.left().0);
    let mut kinds = Vec::with_capacity(arrows.len());
    let mut cursor = (0i64, 0i64);
    for (i, a) in arrows.iter().enumerate() {
        let kind = a
            .kind()
            .ok_or_else(|| Error::InvalidGraph(format!("arrow {:?} -> {:?} has a forbidden shape", a.from, a.to)))?;
        if a.left() != cursor {
            return Err(Error::InvalidGraph(if i == 0 {
                "no arrow has an endpoint at (0,0)".into()
            } else {
                format!(
                    "arrow at column {} does not continue the chain at {:?}",
                    a.left().0,
                    cursor
                )
            }));
        }
        kinds.push(kind);
        cursor = a.right();
    }
    let g = HopfGraph::from_kinds(&kinds, list.tail);
    g.check()?;
    Ok(g)
}

/// All valid finite graphs with `m_Γ = m`, ordered by `(I, v)` with `I`
/// compared as an increasing list.
pub fn enumerate_graphs(m: usize) -> Result<Vec<HopfGraph>> {
    if m > ENUMERATION_MAX_LENGTH {
        return Err(Error::SizeGuard {
            what: format!("graphs of length {m}"),
            size: m as u128,
            limit: ENUMERATION_MAX_LENGTH as u128,
        });
    }
    fn walk(m: usize, kinds: &mut Vec<ArrowKind>, height: i64, out: &mut Vec<HopfGraph>) {
        let remaining = (m - kinds.len()) as i64;
        if height > remaining {
            return;
        }
        if kinds.len() == m {
            out.push(HopfGraph::from_kinds(kinds, None));
            return;
        }
        for k in ArrowKind::ALL {
            let h = height + k.height_change();
            if h >= 0 {
                kinds.push(k);
                walk(m, kinds, h, out);
                kinds.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(m, &mut Vec::new(), 0, &mut out);
    out.sort_by(|a, b| {
        let ka: Vec<usize> = a.set.iter().copied().collect();
        let kb: Vec<usize> = b.set.iter().copied().collect();
        ka.cmp(&kb).then_with(|| a.heights.cmp(&b.heights))
    });
    Ok(out)
}

/// Only right-horizontal and left-down arrows, including a known tail.
pub fn free_shape(g: &HopfGraph) -> bool {
    shape_in(g, &[ArrowKind::RightHorizontal, ArrowKind::LeftDown])
}

/// Only left-horizontal and left-down arrows, including a known tail.
pub fn cofree_shape(g: &HopfGraph) -> bool {
    shape_in(g, &[ArrowKind::LeftHorizontal, ArrowKind::LeftDown])
}

fn shape_in(g: &HopfGraph, allowed: &[ArrowKind]) -> bool {
    match g.all_kinds() {
        Some((kinds, tail)) => kinds.iter().chain(tail.iter()).all(|k| allowed.contains(k)),
        None => false,
    }
}

/// Membership in the staircase-then-plateau family: infinite, `I = {i ≥ n}`
/// and `v_i = min(i, n - 1)` for some `1 <= n <= ∞`. Equivalently the kinds
/// are left-down some number of times and then right-horizontal forever, or
/// left-down forever. An unknown tail never qualifies.
pub fn is_p_polar_free(g: &HopfGraph) -> bool {
    if !g.is_valid() {
        return false;
    }
    let Some((kinds, Some(tail))) = g.all_kinds() else {
        return false;
    };
    let plateau = kinds.iter().position(|&k| k != ArrowKind::LeftDown);
    match plateau {
        None => matches!(tail, ArrowKind::LeftDown | ArrowKind::RightHorizontal),
        Some(start) => {
            tail == ArrowKind::RightHorizontal && kinds[start..].iter().all(|&k| k == ArrowKind::RightHorizontal)
        }
    }
}

/// The p-polar shape together with `p ∤ r`.
pub fn satisfies_projectivity_criterion(r: u64, g: &HopfGraph, p: Prime) -> bool {
    is_p_polar_free(g) && !r.is_multiple_of(p.as_u64())
}

#[cfg(test)]
mod tests;
