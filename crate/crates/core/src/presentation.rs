//! Algebra presentations, Hilbert series and structural reports for the Hopf
//! algebras attached to string indices and graphs.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result, Verdict};
use crate::graph::{cofree_shape, free_shape, is_p_polar_free, satisfies_projectivity_criterion, HopfGraph, Tail};
use crate::linalg::Prime;
use crate::string::StringIndex;
use crate::witt::{injectivity_profile, is_cofree_coalgebra, is_free_algebra, module_from_graph, InjectivityProfile};

/// The relation imposed on `x_{i-1}^p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `x_{i-1}^p = x_i`.
    NextGenerator,
    /// `x_{i-1}^p = 0`.
    Zero,
}

/// How far a power of a block generator survives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// `x^{p^ℓ} = 0` and no lower power vanishes.
    Exponent(u32),
    /// No power vanishes below the censoring degree.
    Polynomial,
}

/// One tensor factor `k[x_a] / (x_a^{p^ℓ})` of the reduced form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub generator: usize,
    pub degree: u64,
    pub truncation: Truncation,
}

/// `H(r, m, I)` as an algebra: generators `x_i` in degree `r p^i` and one
/// relation on each `x_{i-1}^p` for `i = 1..=m+1`, the last one being
/// `x_m^p = 0` for finite `m`. A censored index only determines the
/// relations up to its stored length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfPresentation {
    pub p: Prime,
    pub r: u64,
    pub index: StringIndex,
    pub degrees: Vec<u64>,
    /// `relations[i - 1]` is the relation on `x_{i-1}^p`.
    pub relations: Vec<Relation>,
    pub p_torsion: bool,
    pub primitively_generated: bool,
    /// Free as an algebra: no relation is `x_{i-1}^p = 0`.
    pub free_shape: bool,
    /// Cofree as a coalgebra: every step is a Verschiebung step.
    pub cofree_shape: bool,
}

fn degree(r: u64, p: Prime, i: usize) -> Result<u64> {
    u32::try_from(i)
        .ok()
        .and_then(|i| p.as_u64().checked_pow(i))
        .and_then(|q| q.checked_mul(r))
        .ok_or_else(|| Error::SizeGuard {
            what: format!("degree r p^{i}"),
            size: u128::MAX,
            limit: u64::MAX as u128,
        })
}

/// The presentation of the `p`-torsion Hopf algebra `H(r, m, I)`.
pub fn presentation_torsion(r: u64, index: &StringIndex, p: Prime) -> Result<HopfPresentation> {
    if r == 0 {
        return Err(Error::InvalidIndex("r must be positive".into()));
    }
    let m = index.m();
    let degrees = (0..=m).map(|i| degree(r, p, i)).collect::<Result<Vec<_>>>()?;
    let mut relations: Vec<Relation> = (1..=m)
        .map(|i| {
            if index.contains(i) {
                Relation::NextGenerator
            } else {
                Relation::Zero
            }
        })
        .collect();
    if !index.is_censored() {
        relations.push(Relation::Zero);
    }
    let all = index.set().len() == m;
    Ok(HopfPresentation {
        p,
        r,
        index: index.clone(),
        degrees,
        relations,
        p_torsion: true,
        primitively_generated: all,
        free_shape: index.is_censored() && all,
        cofree_shape: index.is_censored() && index.set().is_empty(),
    })
}

impl HopfPresentation {
    /// Collapses `x_i = x_{i-1}^p` into blocks: a block starts at `x_0` and
    /// at each `x_i` with `i ∉ I`.
    pub fn blocks(&self) -> Vec<Block> {
        let mut out = Vec::new();
        let mut start = 0usize;
        let mut len = 1u32;
        for i in 1..=self.degrees.len() {
            match self.relations.get(i - 1) {
                Some(Relation::NextGenerator) => len += 1,
                Some(Relation::Zero) => {
                    out.push(Block {
                        generator: start,
                        degree: self.degrees[start],
                        truncation: Truncation::Exponent(len),
                    });
                    start = i;
                    len = 1;
                }
                None => out.push(Block {
                    generator: start,
                    degree: self.degrees[start],
                    truncation: Truncation::Polynomial,
                }),
            }
        }
        out
    }

    /// Degrees below which the presentation is exact. `None` for finite
    /// `m`; otherwise `r p^{L+1}` for a censored index of stored length `L`.
    pub fn exact_below(&self) -> Option<u64> {
        self.index
            .is_censored()
            .then(|| degree(self.r, self.p, self.degrees.len()).unwrap_or(u64::MAX))
    }

    /// The reduced form as a tensor product of truncated polynomial
    /// algebras, e.g. `k[x_0]/(x_0^9)`.
    pub fn reduced_form(&self) -> String {
        let factors: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| match b.truncation {
                Truncation::Exponent(l) => {
                    format!("k[x_{}]/(x_{}^{})", b.generator, b.generator, self.p.as_u64().pow(l))
                }
                Truncation::Polynomial => format!("k[x_{}]", b.generator),
            })
            .collect();
        factors.join(" ⊗ ")
    }
}

impl fmt::Display for HopfPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.degrees.len()).map(|i| format!("x_{i}")).collect();
        let p = self.p.as_u64();
        let rels: Vec<String> = self
            .relations
            .iter()
            .enumerate()
            .map(|(j, rel)| match rel {
                Relation::NextGenerator => format!("x_{j}^{p} - x_{}", j + 1),
                Relation::Zero => format!("x_{j}^{p}"),
            })
            .collect();
        write!(f, "k[{}]/({})", gens.join(","), rels.join(", "))?;
        if self.index.is_censored() {
            write!(
                f,
                " + relations above degree {}",
                self.exact_below().unwrap_or(u64::MAX)
            )?;
        }
        Ok(())
    }
}

/// Dimensions of a graded vector space in degrees `0..=maxdeg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionSeries {
    pub dims: Vec<u64>,
}

impl DimensionSeries {
    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }

    /// Degrees with nonzero dimension.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&d| self.dims[d] != 0).collect()
    }
}

/// The Hilbert series of `H(r, m, I)` up to `maxdeg`, from the block form.
///
/// A censored index is accepted when `maxdeg` lies below the degree where
/// the unknown relations could act.
pub fn hilbert_series(r: u64, index: &StringIndex, p: Prime, maxdeg: usize) -> Result<DimensionSeries> {
    let pres = presentation_torsion(r, index, p)?;
    if let Some(bound) = pres.exact_below() {
        if maxdeg as u64 >= bound {
            return Err(Error::IndexOutOfWindow(format!(
                "censored index determines the series only below degree {bound}"
            )));
        }
    }
    let mut dims = vec![0u64; maxdeg + 1];
    dims[0] = 1;
    for block in pres.blocks() {
        let step = block.degree as usize;
        let powers = match block.truncation {
            Truncation::Exponent(l) => p.as_u64().pow(l) as usize,
            Truncation::Polynomial => usize::MAX,
        };
        // Multiply by 1 + q^step + ... + q^{step (powers - 1)}.
        let mut next = vec![0u64; maxdeg + 1];
        for (d, &c) in dims.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut e = d;
            let mut k = 0usize;
            while e <= maxdeg && k < powers {
                next[e] += c;
                e += step;
                k += 1;
            }
        }
        dims = next;
    }
    Ok(DimensionSeries { dims })
}

/// The series counted monomial by monomial: one basis element
/// `x_0^{a_0} ... x_m^{a_m}` with `0 <= a_i < p` in degree `r Σ a_i p^i`.
/// This ignores the relations altogether and serves as an oracle.
pub fn monomial_series(r: u64, m: usize, p: Prime, maxdeg: usize) -> Result<DimensionSeries> {
    let q = p.as_u64();
    let count = u32::try_from(m + 1)
        .ok()
        .and_then(|e| q.checked_pow(e))
        .unwrap_or(u64::MAX);
    crate::error::guard("monomials", count as u128)?;
    let mut dims = vec![0u64; maxdeg + 1];
    for code in 0..count {
        let (mut c, mut deg, mut weight) = (code, 0u64, 1u64);
        for _ in 0..=m {
            deg += (c % q) * weight;
            c /= q;
            weight *= q;
        }
        if let Some(slot) = usize::try_from(deg * r).ok().and_then(|d| dims.get_mut(d)) {
            *slot += 1;
        }
    }
    Ok(DimensionSeries { dims })
}

/// Everything the classification says about `H(r, Γ)`.
#[derive(Clone, Debug)]
pub struct HopfReport {
    pub r: u64,
    pub p: Prime,
    pub graph: HopfGraph,
    pub index: StringIndex,
    /// Orders `p^{v_i + 1}` as exponents `v_i + 1`.
    pub orders: Vec<u32>,
    /// `H(Γ)` degree `i` sits in degree `r p^i` of `H(r, Γ)`.
    pub degrees: Vec<u64>,
    pub profile: InjectivityProfile,
    pub free: Verdict,
    pub cofree: Verdict,
    pub free_shape: bool,
    pub cofree_shape: bool,
    pub p_polar_free: bool,
    pub projective: bool,
}

pub fn report(r: u64, g: &HopfGraph, p: Prime) -> Result<HopfReport> {
    if r == 0 {
        return Err(Error::InvalidIndex("r must be positive".into()));
    }
    if let Some(v) = g.validate().first() {
        return Err(Error::InvalidGraph(v.clone()));
    }
    let module = module_from_graph(g, p, 0, g.steps())?;
    let degrees = (0..=g.steps()).map(|i| degree(r, p, i)).collect::<Result<Vec<_>>>()?;
    Ok(HopfReport {
        r,
        p,
        graph: g.clone(),
        index: g.index(),
        orders: g.heights().iter().map(|&v| v as u32 + 1).collect(),
        degrees,
        profile: injectivity_profile(&module),
        free: is_free_algebra(&module),
        cofree: is_cofree_coalgebra(&module),
        free_shape: free_shape(g),
        cofree_shape: cofree_shape(g),
        p_polar_free: is_p_polar_free(g),
        projective: satisfies_projectivity_criterion(r, g, p),
    })
}

fn verdict(v: Verdict) -> String {
    if v.window_uncertain {
        format!("{} (window-uncertain)", v.value)
    } else {
        v.value.to_string()
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "injective"
    } else {
        "not injective"
    }
}

fn onto(b: bool) -> &'static str {
    if b {
        "surjective"
    } else {
        "not surjective"
    }
}

fn tail_name(t: Option<Tail>) -> String {
    match t {
        None => "none".into(),
        Some(Tail::Unknown) => "unknown".into(),
        Some(Tail::Repeat(k)) => k.name().into(),
    }
}

impl HopfReport {
    /// Human-readable form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "H(r, Γ) with r = {}, p = {}", self.r, self.p.as_u64());
        let _ = writeln!(out, "graph: {}", self.graph);
        let _ = writeln!(out, "mod-p type: ({})", self.index);
        let orders: Vec<String> = self
            .orders
            .iter()
            .map(|&e| format!("{}^{e}", self.p.as_u64()))
            .collect();
        let _ = writeln!(out, "component orders: {}", orders.join(", "));
        let degs: Vec<String> = self
            .degrees
            .iter()
            .enumerate()
            .map(|(i, d)| format!("{i}->{d}"))
            .collect();
        let _ = writeln!(out, "degree map i -> r p^i: {}", degs.join(", "));
        for s in &self.profile.steps {
            let (lo, hi) = (self.degrees[s.degree - 1], self.degrees[s.degree]);
            let _ = writeln!(
                out,
                "F: H_{lo} -> H_{hi} {}, {}; V: H_{hi} -> H_{lo} {}, {}",
                yes_no(s.s_injective),
                onto(s.s_surjective),
                yes_no(s.t_injective),
                onto(s.t_surjective)
            );
        }
        match self.profile.above {
            Some(a) => {
                let _ = writeln!(
                    out,
                    "above the top: H vanishes, F {} and V {}",
                    yes_no(a.s_injective),
                    onto(a.t_surjective)
                );
            }
            None => out.push_str("above the window: not determined\n"),
        }
        let _ = writeln!(out, "free as an algebra: {}", verdict(self.free));
        let _ = writeln!(out, "cofree as a coalgebra: {}", verdict(self.cofree));
        let _ = writeln!(out, "free shape: {}", self.free_shape);
        let _ = writeln!(out, "cofree shape: {}", self.cofree_shape);
        let _ = writeln!(out, "p-polar free: {}", self.p_polar_free);
        let _ = writeln!(out, "projectivity criterion: {}", self.projective);
        out
    }

    /// Line-oriented `key value` form with a version header.
    pub fn to_machine(&self) -> String {
        let mut out = String::from("hopfclass-report v1\n");
        let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "r {}", self.r);
        let _ = writeln!(out, "p {}", self.p.as_u64());
        match self.graph.m() {
            Some(m) => {
                let _ = writeln!(out, "m {m}");
            }
            None => {
                let _ = writeln!(out, "m inf");
            }
        }
        let _ = writeln!(out, "I {}", join(&mut self.graph.set().iter().map(|i| i.to_string())));
        let _ = writeln!(
            out,
            "v {}",
            join(&mut self.graph.heights().iter().map(|i| i.to_string()))
        );
        let _ = writeln!(out, "tail {}", tail_name(self.graph.tail()));
        let _ = writeln!(out, "censored {}", self.index.is_censored());
        let _ = writeln!(out, "orders {}", join(&mut self.orders.iter().map(|i| i.to_string())));
        let _ = writeln!(out, "degrees {}", join(&mut self.degrees.iter().map(|i| i.to_string())));
        for s in &self.profile.steps {
            let _ = writeln!(
                out,
                "step {} F-injective {} F-surjective {} V-injective {} V-surjective {}",
                s.degree, s.s_injective, s.s_surjective, s.t_injective, s.t_surjective
            );
        }
        match self.profile.above {
            Some(a) => {
                let _ = writeln!(
                    out,
                    "above F-injective {} V-surjective {}",
                    a.s_injective, a.t_surjective
                );
            }
            None => out.push_str("above unknown\n"),
        }
        let flag = |v: Verdict| {
            format!(
                "{} {}",
                v.value,
                if v.window_uncertain { "uncertain" } else { "certain" }
            )
        };
        let _ = writeln!(out, "free {}", flag(self.free));
        let _ = writeln!(out, "cofree {}", flag(self.cofree));
        let _ = writeln!(out, "free-shape {}", self.free_shape);
        let _ = writeln!(out, "cofree-shape {}", self.cofree_shape);
        let _ = writeln!(out, "p-polar-free {}", self.p_polar_free);
        let _ = writeln!(out, "projective {}", self.projective);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ArrowKind;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn presentations_of_small_cases() {
        let one = presentation_torsion(2, &StringIndex::finite(1, [1]).unwrap(), p(3)).unwrap();
        assert_eq!(one.to_string(), "k[x_0,x_1]/(x_0^3 - x_1, x_1^3)");
        assert_eq!(one.degrees, vec![2, 6]);
        assert_eq!(one.reduced_form(), "k[x_0]/(x_0^9)");
        assert!(one.primitively_generated);
        let zero = presentation_torsion(1, &StringIndex::finite(0, []).unwrap(), p(2)).unwrap();
        assert_eq!(zero.to_string(), "k[x_0]/(x_0^2)");
        let poly = presentation_torsion(1, &StringIndex::censored(3, 1..=3).unwrap(), p(2)).unwrap();
        assert_eq!(poly.reduced_form(), "k[x_0]");
        assert!(poly.free_shape && !poly.cofree_shape);
        let mixed = presentation_torsion(1, &StringIndex::finite(3, [2]).unwrap(), p(2)).unwrap();
        assert_eq!(mixed.reduced_form(), "k[x_0]/(x_0^2) ⊗ k[x_1]/(x_1^4) ⊗ k[x_3]/(x_3^2)");
        assert!(!mixed.primitively_generated);
        assert!(presentation_torsion(0, &StringIndex::finite(0, []).unwrap(), p(2)).is_err());
    }

    #[test]
    fn hilbert_examples() {
        let s = hilbert_series(2, &StringIndex::finite(1, [1]).unwrap(), p(3), 16).unwrap();
        assert_eq!(s.support(), (0..=16).step_by(2).collect::<Vec<_>>());
        assert!(s.dims.iter().all(|&d| d <= 1));
        let a = hilbert_series(1, &StringIndex::finite(2, []).unwrap(), p(2), 10).unwrap();
        let b = hilbert_series(1, &StringIndex::finite(2, [1, 2]).unwrap(), p(2), 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.support(), (0..=7).collect::<Vec<_>>());
        let censored = StringIndex::censored(2, [1]).unwrap();
        assert!(hilbert_series(1, &censored, p(2), 7).is_ok());
        assert!(hilbert_series(1, &censored, p(2), 8).is_err());
    }

    #[test]
    fn hilbert_matches_monomials() {
        for pp in [2u64, 3] {
            for m in 0..=3usize {
                for mask in 0u32..(1 << m) {
                    let set: Vec<usize> = (1..=m).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                    let idx = StringIndex::finite(m, set).unwrap();
                    for r in 1..=4u64 {
                        let maxdeg = (r * pp.pow(m as u32 + 1)) as usize;
                        let s = hilbert_series(r, &idx, p(pp), maxdeg).unwrap();
                        assert_eq!(s, monomial_series(r, m, p(pp), maxdeg).unwrap());
                        assert_eq!(s.total(), pp.pow(m as u32 + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn reports() {
        let lambda = HopfGraph::lambda(3);
        let rep = report(1, &lambda, p(2)).unwrap();
        assert!(rep.free.value && rep.free.window_uncertain);
        assert!(rep.cofree.value && rep.p_polar_free && rep.projective);
        assert!(!report(2, &lambda, p(2)).unwrap().projective);
        let plateau = HopfGraph::finite([2, 4], vec![0, 1, 1, 1, 0]).unwrap();
        let rep = report(1, &plateau, p(3)).unwrap();
        assert_eq!(rep.index, StringIndex::finite(4, [2, 4]).unwrap());
        assert_eq!(rep.orders, vec![1, 2, 2, 2, 1]);
        assert_eq!(rep.degrees, vec![1, 3, 9, 27, 81]);
        assert!(!rep.free.value && !rep.free.window_uncertain);
        let text = rep.to_text();
        assert!(text.contains("V: H_3 -> H_1 not injective"), "{text}");
        let machine = rep.to_machine();
        assert!(machine.starts_with("hopfclass-report v1\n"));
        assert!(machine.contains("orders 1 2 2 2 1\n"));
        assert_eq!(machine, report(1, &plateau, p(3)).unwrap().to_machine());
    }

    /// F is injective on `H_{p^{i-1}} -> H_{p^i}` exactly for right-horizontal
    /// and left-down arrows, V exactly for left-horizontal and right-down ones.
    #[test]
    fn report_profile_follows_the_arrow_statements() {
        use ArrowKind::*;
        for m in 1..=5 {
            for g in crate::graph::enumerate_graphs(m).unwrap() {
                let rep = report(3, &g, p(2)).unwrap();
                for s in &rep.profile.steps {
                    let k = g.kind(s.degree).unwrap();
                    assert_eq!(s.s_injective, matches!(k, RightHorizontal | LeftDown));
                    assert_eq!(s.t_injective, matches!(k, LeftHorizontal | RightDown));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn series_does_not_depend_on_the_set(m in 0usize..=4, mask in any::<u32>(), r in 1u64..=3) {
            let set: Vec<usize> = (1..=m).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            let a = hilbert_series(r, &StringIndex::finite(m, set).unwrap(), p(3), 200).unwrap();
            let b = hilbert_series(r, &StringIndex::finite(m, []).unwrap(), p(3), 200).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
