use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Prime, Subspace};

use super::StringIndex;

/// A graded module over `k[s,t]/(st)` with `k = F_p`, stored on the degree
/// window `0..=top`.
///
/// `s[i]` maps degree `i` to `i + 1` and `t[i]` maps degree `i + 1` back to
/// `i`. When `extends` is set, the degrees above `top` exist but are not
/// represented; otherwise the module is zero there.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedFpModule {
    p: Prime,
    dims: Vec<usize>,
    s: Vec<FpMatrix>,
    t: Vec<FpMatrix>,
    extends: bool,
}

/// A failed module axiom, located at a degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub degree: usize,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}: {}", self.degree, self.message)
    }
}

impl GradedFpModule {
    /// Checks matrix shapes against `dims`; the relations are checked by
    /// [`GradedFpModule::validate`].
    pub fn new(
        p: Prime,
        dims: Vec<usize>,
        s: Vec<FpMatrix>,
        t: Vec<FpMatrix>,
        extends: bool,
    ) -> Result<GradedFpModule> {
        if dims.is_empty() {
            return Err(Error::DimensionMismatch("window must contain degree 0".into()));
        }
        let steps = dims.len() - 1;
        if s.len() != steps || t.len() != steps {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees need {steps} s- and t-maps, got {} and {}",
                dims.len(),
                s.len(),
                t.len()
            )));
        }
        for i in 0..steps {
            if s[i].prime() != p || t[i].prime() != p {
                return Err(Error::ModulusMismatch {
                    left: p.as_u64(),
                    right: if s[i].prime() != p { s[i].prime() } else { t[i].prime() }.as_u64(),
                });
            }
            if (s[i].rows(), s[i].cols()) != (dims[i + 1], dims[i]) {
                return Err(Error::DimensionMismatch(format!(
                    "s at degree {i} is {}x{}, expected {}x{}",
                    s[i].rows(),
                    s[i].cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
            if (t[i].rows(), t[i].cols()) != (dims[i], dims[i + 1]) {
                return Err(Error::DimensionMismatch(format!(
                    "t at degree {} is {}x{}, expected {}x{}",
                    i + 1,
                    t[i].rows(),
                    t[i].cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        Ok(GradedFpModule { p, dims, s, t, extends })
    }

    pub fn zero(p: Prime, top: usize, extends: bool) -> GradedFpModule {
        let dims = vec![0; top + 1];
        let s = (0..top).map(|_| FpMatrix::zero(p, 0, 0)).collect::<Vec<_>>();
        GradedFpModule {
            p,
            dims,
            t: s.clone(),
            s,
            extends,
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// Top degree `D` of the window.
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn extends(&self) -> bool {
        self.extends
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// `s: M_i -> M_{i+1}` for `i < top`.
    pub fn s(&self, i: usize) -> &FpMatrix {
        &self.s[i]
    }

    /// `t: M_{i+1} -> M_i`, indexed by the lower degree `i`.
    pub fn t(&self, i: usize) -> &FpMatrix {
        &self.t[i]
    }

    pub fn s_maps(&self) -> &[FpMatrix] {
        &self.s
    }

    pub fn t_maps(&self) -> &[FpMatrix] {
        &self.t
    }

    pub fn lowest_nonzero_degree(&self) -> Option<usize> {
        self.dims.iter().position(|&d| d > 0)
    }

    /// `s(x)` for `x` in degree `i`; `None` when the target lies above a
    /// window that extends.
    pub fn apply_s(&self, i: usize, x: &[u32]) -> Option<Vec<u32>> {
        if i < self.top() {
            Some(self.s[i].apply(x))
        } else if self.extends {
            None
        } else {
            Some(Vec::new())
        }
    }

    /// `t(x)` for `x` in degree `i >= 1`.
    pub fn apply_t(&self, i: usize, x: &[u32]) -> Vec<u32> {
        if i == 0 {
            Vec::new()
        } else {
            self.t[i - 1].apply(x)
        }
    }

    /// `t M_{i+1}` inside `M_i`; above a window that extends this is unknown
    /// and `None` is returned.
    pub fn t_image_into(&self, i: usize) -> Option<Subspace> {
        if i < self.top() {
            Some(self.t[i].column_space())
        } else if self.extends {
            None
        } else {
            Some(Subspace::zero(self.p, self.dim(i)))
        }
    }

    /// Every violated relation; empty means the module is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in 0..self.top() {
            let ts = self.t[i].mul(&self.s[i]).expect("shapes checked at construction");
            if !ts.is_zero() {
                out.push(Violation {
                    degree: i,
                    message: "ts ≠ 0".into(),
                });
            }
            let st = self.s[i].mul(&self.t[i]).expect("shapes checked at construction");
            if !st.is_zero() {
                out.push(Violation {
                    degree: i + 1,
                    message: "st ≠ 0".into(),
                });
            }
        }
        out
    }

    /// Direct sum of modules on a common window; the result extends if any
    /// summand does.
    pub fn direct_sum(p: Prime, top: usize, parts: &[&GradedFpModule]) -> Result<GradedFpModule> {
        for m in parts {
            if m.p != p {
                return Err(Error::ModulusMismatch {
                    left: p.as_u64(),
                    right: m.p.as_u64(),
                });
            }
            if m.top() != top {
                return Err(Error::DimensionMismatch(format!(
                    "window {} in a sum over window {top}",
                    m.top()
                )));
            }
        }
        let dims = (0..=top).map(|i| parts.iter().map(|m| m.dims[i]).sum()).collect();
        let s = (0..top)
            .map(|i| FpMatrix::block_diag(p, &parts.iter().map(|m| &m.s[i]).collect::<Vec<_>>()))
            .collect();
        let t = (0..top)
            .map(|i| FpMatrix::block_diag(p, &parts.iter().map(|m| &m.t[i]).collect::<Vec<_>>()))
            .collect();
        GradedFpModule::new(p, dims, s, t, parts.iter().any(|m| m.extends))
    }

    /// Replaces the maps by conjugates under per-degree isomorphisms
    /// `P_i: M_i -> M'_i`.
    pub fn conjugate(&self, iso: &[FpMatrix]) -> Result<GradedFpModule> {
        if iso.len() != self.dims.len() {
            return Err(Error::DimensionMismatch("one isomorphism per degree".into()));
        }
        let inv: Vec<FpMatrix> = iso
            .iter()
            .enumerate()
            .map(|(i, m)| {
                m.inverse()
                    .ok_or_else(|| Error::InvalidModule(format!("change of basis at degree {i} is singular")))
            })
            .collect::<Result<_>>()?;
        let s = (0..self.top())
            .map(|i| iso[i + 1].mul(&self.s[i])?.mul(&inv[i]))
            .collect::<Result<Vec<_>>>()?;
        let t = (0..self.top())
            .map(|i| iso[i].mul(&self.t[i])?.mul(&inv[i + 1]))
            .collect::<Result<Vec<_>>>()?;
        GradedFpModule::new(self.p, self.dims.clone(), s, t, self.extends)
    }
}

/// The string module `Σ^shift M(m, I)` on the window `0..=top`.
///
/// A finite index must fit (`shift + m <= top`); a censored index must reach
/// the top exactly, and the result then extends past the window.
pub fn string_module(index: &StringIndex, shift: usize, p: Prime, top: usize) -> Result<GradedFpModule> {
    let m = index.m();
    let end = shift + m;
    if index.is_censored() {
        if end != top {
            return Err(Error::IndexOutOfWindow(format!(
                "censored index ({index}) at shift {shift} must end at the window top {top}"
            )));
        }
    } else if end > top {
        return Err(Error::IndexOutOfWindow(format!(
            "({index}) at shift {shift} does not fit in window {top}"
        )));
    }
    let dims: Vec<usize> = (0..=top).map(|i| usize::from(i >= shift && i <= end)).collect();
    let mut s = Vec::with_capacity(top);
    let mut t = Vec::with_capacity(top);
    for i in 0..top {
        let (a, b) = (dims[i], dims[i + 1]);
        let mut si = FpMatrix::zero(p, b, a);
        let mut ti = FpMatrix::zero(p, a, b);
        if a == 1 && b == 1 {
            // Step number inside the string: from x_{j-1} to x_j.
            let j = i + 1 - shift;
            if index.is_s_step(j) {
                si.set(0, 0, 1);
            } else {
                ti.set(0, 0, 1);
            }
        }
        s.push(si);
        t.push(ti);
    }
    GradedFpModule::new(p, dims, s, t, index.is_censored())
}
