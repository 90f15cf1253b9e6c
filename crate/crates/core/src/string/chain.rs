use crate::error::{Error, Result, Verdict};
use crate::linalg::Subspace;

use super::{GradedFpModule, StringIndex};

/// The images `x_0, …, x_m` of the generators of `Σ^start M(m, I)` under a
/// module map into some `M`; `elements[j]` lives in degree `start + j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringChain {
    pub start: usize,
    pub index: StringIndex,
    pub elements: Vec<Vec<u32>>,
}

impl StringChain {
    pub fn end_degree(&self) -> usize {
        self.start + self.index.m()
    }

    /// Checks that the chain defines an injective module map into `m`.
    pub fn check(&self, m: &GradedFpModule) -> Result<()> {
        let len = self.index.m();
        if self.elements.len() != len + 1 {
            return Err(Error::InvalidChain(format!(
                "{} elements for length {len}",
                self.elements.len()
            )));
        }
        if self.end_degree() > m.top() {
            return Err(Error::IndexOutOfWindow(format!(
                "chain ends in degree {} beyond window {}",
                self.end_degree(),
                m.top()
            )));
        }
        if self.index.is_censored() && !(m.extends() && self.end_degree() == m.top()) {
            return Err(Error::InvalidChain(
                "censored chain must reach the top of an extending window".into(),
            ));
        }
        for (j, x) in self.elements.iter().enumerate() {
            let deg = self.start + j;
            if x.len() != m.dim(deg) {
                return Err(Error::InvalidChain(format!("element {j} has the wrong length")));
            }
            if x.iter().all(|&c| c == 0) {
                return Err(Error::InvalidChain(format!("element {j} is zero")));
            }
        }
        let zero = |v: &[u32]| v.iter().all(|&c| c == 0);
        if self.start > 0 && !zero(&m.apply_t(self.start, &self.elements[0])) {
            return Err(Error::InvalidChain("t x_0 ≠ 0".into()));
        }
        for i in 1..=len {
            let deg = self.start + i;
            let (prev, cur) = (&self.elements[i - 1], &self.elements[i]);
            let s_prev = m.apply_s(deg - 1, prev).expect("inside window");
            let t_cur = m.apply_t(deg, cur);
            if self.index.is_s_step(i) {
                if s_prev != *cur {
                    return Err(Error::InvalidChain(format!("s x_{} ≠ x_{i}", i - 1)));
                }
                if !zero(&t_cur) {
                    return Err(Error::InvalidChain(format!("t x_{i} ≠ 0")));
                }
            } else {
                if t_cur != *prev {
                    return Err(Error::InvalidChain(format!("t x_{i} ≠ x_{}", i - 1)));
                }
                if !zero(&s_prev) {
                    return Err(Error::InvalidChain(format!("s x_{} ≠ 0", i - 1)));
                }
            }
        }
        if !self.index.is_censored() {
            if let Some(sx) = m.apply_s(self.end_degree(), &self.elements[len]) {
                if !zero(&sx) {
                    return Err(Error::InvalidChain(format!("s x_{len} ≠ 0")));
                }
            }
        }
        Ok(())
    }

    /// Per-degree span of the chain over the whole window.
    pub fn span(&self, m: &GradedFpModule) -> Vec<Subspace> {
        (0..=m.top())
            .map(|deg| {
                let n = m.dim(deg);
                if deg >= self.start && deg <= self.end_degree() {
                    Subspace::span(m.prime(), n, &[self.elements[deg - self.start].clone()]).expect("element length")
                } else {
                    Subspace::zero(m.prime(), n)
                }
            })
            .collect()
    }
}

/// The quick purity test: a chain is pure iff it is censored or its last
/// element is not hit by `t`.
pub fn is_pure_string_injection(m: &GradedFpModule, c: &StringChain) -> Result<Verdict> {
    c.check(m)?;
    if c.index.is_censored() {
        return Ok(Verdict::uncertain(true));
    }
    let last = &c.elements[c.index.m()];
    match m.t_image_into(c.end_degree()) {
        Some(img) => Ok(Verdict::certain(!img.contains(last))),
        // The chain ends at the top of a window that extends: nothing above
        // is known, so answer as if it were zero and flag it.
        None => Ok(Verdict::uncertain(true)),
    }
}

/// The componentwise purity test `sM_i ∩ P_{i+1} = sP_i` and
/// `tM_{i+1} ∩ P_i = tP_{i+1}` on a submodule given by one subspace per
/// degree.
pub fn is_pure_submodule(m: &GradedFpModule, sub: &[Subspace]) -> Result<Verdict> {
    if sub.len() != m.top() + 1 {
        return Err(Error::DimensionMismatch("one subspace per degree".into()));
    }
    for (deg, ps) in sub.iter().enumerate() {
        if ps.ambient() != m.dim(deg) || ps.prime() != m.prime() {
            return Err(Error::DimensionMismatch(format!("subspace at degree {deg}")));
        }
    }
    for i in 0..m.top() {
        if !sub[i].image(m.s(i))?.is_subspace_of(&sub[i + 1])? {
            return Err(Error::NotSubmodule(i));
        }
        if !sub[i + 1].image(m.t(i))?.is_subspace_of(&sub[i])? {
            return Err(Error::NotSubmodule(i + 1));
        }
    }
    let mut pure = true;
    for i in 0..m.top() {
        let s_m = m.s(i).column_space();
        let s_p = sub[i].image(m.s(i))?;
        if s_m.intersection(&sub[i + 1])? != s_p {
            pure = false;
        }
        let t_m = m.t(i).column_space();
        let t_p = sub[i + 1].image(m.t(i))?;
        if t_m.intersection(&sub[i])? != t_p {
            pure = false;
        }
    }
    let top = m.top();
    let uncertain = m.extends() && !sub[top].is_zero();
    Ok(Verdict {
        value: pure,
        window_uncertain: uncertain,
    })
}

/// Builds a pure chain by the greedy rule: take `s x` when nonzero, else the
/// canonical `t`-preimage when one exists, else stop.
pub fn greedy_pure_chain(m: &GradedFpModule, m0: &[u32]) -> Result<StringChain> {
    let start = start_degree(m, m0)?;
    let mut elements = vec![m0.to_vec()];
    let mut letters = Vec::new();
    let mut deg = start;
    loop {
        let x = elements.last().expect("nonempty");
        let Some(sx) = m.apply_s(deg, x) else {
            return Ok(StringChain {
                start,
                index: StringIndex::from_letters(&letters, true),
                elements,
            });
        };
        if sx.iter().any(|&c| c != 0) {
            letters.push(true);
            elements.push(sx);
        } else if deg < m.top() {
            match m.t(deg).solve(x)? {
                Some(sol) => {
                    letters.push(false);
                    elements.push(sol.particular);
                }
                None => break,
            }
        } else {
            break;
        }
        deg += 1;
    }
    Ok(StringChain {
        start,
        index: StringIndex::from_letters(&letters, false),
        elements,
    })
}

/// Locates `m0` as a nonzero vector of the lowest nonzero degree.
pub(crate) fn start_degree(m: &GradedFpModule, m0: &[u32]) -> Result<usize> {
    let Some(d) = m.lowest_nonzero_degree() else {
        return Err(Error::ZeroElement("the module is zero".into()));
    };
    if m0.len() != m.dim(d) {
        return Err(Error::DimensionMismatch(format!(
            "m0 has length {} but the lowest nonzero degree {d} has dimension {}",
            m0.len(),
            m.dim(d)
        )));
    }
    if m0.iter().all(|&c| c % m.prime().get() == 0) {
        return Err(Error::ZeroElement("m0".into()));
    }
    Ok(d)
}
