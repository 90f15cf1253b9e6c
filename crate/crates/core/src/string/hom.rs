use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Prime, Subspace};

use super::GradedFpModule;

/// A degree-preserving linear map, one matrix per degree of the window.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap {
    pub components: Vec<FpMatrix>,
}

impl GradedMap {
    /// Whether the map commutes with `s` and `t` between the two modules.
    pub fn is_homomorphism(&self, from: &GradedFpModule, to: &GradedFpModule) -> bool {
        let f = &self.components;
        if f.len() != from.top() + 1 || to.top() != from.top() {
            return false;
        }
        for i in 0..=from.top() {
            if (f[i].rows(), f[i].cols()) != (to.dim(i), from.dim(i)) {
                return false;
            }
        }
        (0..from.top()).all(|i| {
            let s_ok = f[i + 1].mul(from.s(i)).ok() == to.s(i).mul(&f[i]).ok();
            let t_ok = f[i].mul(from.t(i)).ok() == to.t(i).mul(&f[i + 1]).ok();
            s_ok && t_ok
        })
    }

    pub fn apply(&self, degree: usize, x: &[u32]) -> Vec<u32> {
        self.components[degree].apply(x)
    }
}

/// Basis of the graded homomorphisms `M -> N`.
///
/// The space is stored as a subspace of the flattened unknowns, so the
/// basis is in canonical echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    p: Prime,
    shapes: Vec<(usize, usize)>,
    space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn unflatten(&self, v: &[u32]) -> GradedMap {
        let mut at = 0;
        let components = self
            .shapes
            .iter()
            .map(|&(r, c)| {
                let m = FpMatrix::from_flat(
                    self.p,
                    r,
                    c,
                    &v[at..at + r * c].iter().map(|&x| x as u64).collect::<Vec<_>>(),
                )
                .expect("shape");
                at += r * c;
                m
            })
            .collect();
        GradedMap { components }
    }

    pub fn maps(&self) -> Vec<GradedMap> {
        self.space.basis().iter().map(|v| self.unflatten(v)).collect()
    }
}

/// Linear system whose kernel is the space of homomorphisms `M -> N`, with
/// unknown `f_i[r][c]` at `offsets[i] + r * dim M_i + c`.
pub(crate) struct HomSystem {
    pub equations: FpMatrix,
    pub offsets: Vec<usize>,
    pub shapes: Vec<(usize, usize)>,
    pub unknowns: usize,
}

pub(crate) fn hom_system(m: &GradedFpModule, n: &GradedFpModule) -> Result<HomSystem> {
    let p = m.prime();
    if n.prime() != p {
        return Err(Error::ModulusMismatch {
            left: p.as_u64(),
            right: n.prime().as_u64(),
        });
    }
    if m.top() != n.top() {
        return Err(Error::DimensionMismatch(format!(
            "windows {} and {} differ",
            m.top(),
            n.top()
        )));
    }
    let top = m.top();
    let shapes: Vec<(usize, usize)> = (0..=top).map(|i| (n.dim(i), m.dim(i))).collect();
    let mut offsets = Vec::with_capacity(top + 1);
    let mut unknowns = 0;
    for &(r, c) in &shapes {
        offsets.push(unknowns);
        unknowns += r * c;
    }
    let var = |i: usize, r: usize, c: usize| offsets[i] + r * m.dim(i) + c;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for i in 0..top {
        let (sm, sn) = (m.s(i), n.s(i));
        // f_{i+1} s_M - s_N f_i = 0, entry (a, b) with a in N_{i+1}, b in M_i.
        for a in 0..n.dim(i + 1) {
            for b in 0..m.dim(i) {
                let mut row = vec![0u32; unknowns];
                for k in 0..m.dim(i + 1) {
                    let c = sm.get(k, b);
                    if c != 0 {
                        let v = var(i + 1, a, k);
                        row[v] = p.add(row[v], c);
                    }
                }
                for k in 0..n.dim(i) {
                    let c = sn.get(a, k);
                    if c != 0 {
                        let v = var(i, k, b);
                        row[v] = p.sub(row[v], c);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
        let (tm, tn) = (m.t(i), n.t(i));
        // f_i t_M - t_N f_{i+1} = 0, entry (a, b) with a in N_i, b in M_{i+1}.
        for a in 0..n.dim(i) {
            for b in 0..m.dim(i + 1) {
                let mut row = vec![0u32; unknowns];
                for k in 0..m.dim(i) {
                    let c = tm.get(k, b);
                    if c != 0 {
                        let v = var(i, a, k);
                        row[v] = p.add(row[v], c);
                    }
                }
                for k in 0..n.dim(i + 1) {
                    let c = tn.get(a, k);
                    if c != 0 {
                        let v = var(i + 1, k, b);
                        row[v] = p.sub(row[v], c);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let flat: Vec<u64> = rows.iter().flatten().map(|&x| x as u64).collect();
    let equations = FpMatrix::from_flat(p, rows.len(), unknowns, &flat)?;
    Ok(HomSystem {
        equations,
        offsets,
        shapes,
        unknowns,
    })
}

/// All degree-preserving module maps `M -> N`.
pub fn hom_space(m: &GradedFpModule, n: &GradedFpModule) -> Result<HomSpace> {
    let sys = hom_system(m, n)?;
    Ok(HomSpace {
        p: m.prime(),
        shapes: sys.shapes,
        space: sys.equations.kernel(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::string::{string_module, StringIndex};

    fn f2() -> Prime {
        Prime::new(2).unwrap()
    }

    #[test]
    fn string_endomorphisms_are_scalars() {
        let idx = StringIndex::finite(5, [1, 3, 4]).unwrap();
        let m = string_module(&idx, 0, f2(), 6).unwrap();
        let h = hom_space(&m, &m).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(h.maps()[0].is_homomorphism(&m, &m));
    }

    #[test]
    fn t_string_into_s_string() {
        // M(1,∅): x_1 -t-> x_0.  M(1,{1}): y_0 -s-> y_1.
        // Only x_1 |-> y_1 commutes.
        let a = string_module(&StringIndex::finite(1, []).unwrap(), 0, f2(), 1).unwrap();
        let b = string_module(&StringIndex::finite(1, [1]).unwrap(), 0, f2(), 1).unwrap();
        let h = hom_space(&a, &b).unwrap();
        assert_eq!(h.dim(), 1);
        let f = &h.maps()[0];
        assert!(f.components[0].is_zero());
        assert_eq!(f.components[1].get(0, 0), 1);
    }

    #[test]
    fn from_zero_module() {
        let z = GradedFpModule::zero(f2(), 3, false);
        let n = string_module(&StringIndex::finite(2, [2]).unwrap(), 0, f2(), 3).unwrap();
        assert_eq!(hom_space(&z, &n).unwrap().dim(), 0);
    }
}
