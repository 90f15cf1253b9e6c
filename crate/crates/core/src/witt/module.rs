use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, PGroupHom, Prime, ZpeMatrix};
use crate::string::{GradedFpModule, Violation};

/// A graded module over `Z_p[s,t]/(st - p)` on the window `0..=top`.
///
/// Degree `i` is the group `⊕_l Z/p^{orders[i][l]}` in cyclic coordinates;
/// `s[i]` maps degree `i` to `i + 1` and `t[i]` maps `i + 1` back to `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittModule {
    p: Prime,
    orders: Vec<Vec<u32>>,
    s: Vec<PGroupHom>,
    t: Vec<PGroupHom>,
    extends: bool,
}

fn shape_error(what: &str, degree: usize, h: &PGroupHom, src: &[u32], dst: &[u32]) -> Error {
    Error::DimensionMismatch(format!(
        "{what} at degree {degree} maps {:?} -> {:?}, expected {src:?} -> {dst:?}",
        h.src(),
        h.dst()
    ))
}

impl WittModule {
    /// Checks that the maps run between the stated groups. The module
    /// relations and well-definedness of entries are left to
    /// [`WittModule::validate`].
    pub fn new(
        p: Prime,
        orders: Vec<Vec<u32>>,
        s: Vec<PGroupHom>,
        t: Vec<PGroupHom>,
        extends: bool,
    ) -> Result<WittModule> {
        if orders.is_empty() {
            return Err(Error::DimensionMismatch("window must contain degree 0".into()));
        }
        if let Some(i) = orders.iter().position(|o| o.contains(&0)) {
            return Err(Error::DimensionMismatch(format!(
                "degree {i} has a trivial cyclic factor"
            )));
        }
        let steps = orders.len() - 1;
        if s.len() != steps || t.len() != steps {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees need {steps} s- and t-maps",
                orders.len()
            )));
        }
        for i in 0..steps {
            for h in [&s[i], &t[i]] {
                if h.prime() != p {
                    return Err(Error::ModulusMismatch {
                        left: p.as_u64(),
                        right: h.prime().as_u64(),
                    });
                }
            }
            if s[i].src() != orders[i] || s[i].dst() != orders[i + 1] {
                return Err(shape_error("s", i, &s[i], &orders[i], &orders[i + 1]));
            }
            if t[i].src() != orders[i + 1] || t[i].dst() != orders[i] {
                return Err(shape_error("t", i + 1, &t[i], &orders[i + 1], &orders[i]));
            }
        }
        Ok(WittModule {
            p,
            orders,
            s,
            t,
            extends,
        })
    }

    /// Builds the maps from row-major entries, reducing each row mod its
    /// target order without checking that entries respect the source orders.
    pub fn from_entries(
        p: Prime,
        orders: Vec<Vec<u32>>,
        s_entries: Vec<Vec<u64>>,
        t_entries: Vec<Vec<u64>>,
        extends: bool,
    ) -> Result<WittModule> {
        let steps = orders.len().saturating_sub(1);
        if s_entries.len() != steps || t_entries.len() != steps {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees need {steps} maps each way",
                orders.len()
            )));
        }
        let mut s = Vec::with_capacity(steps);
        let mut t = Vec::with_capacity(steps);
        for (i, (se, te)) in s_entries.into_iter().zip(t_entries).enumerate() {
            let (a, b) = (&orders[i], &orders[i + 1]);
            if se.len() != a.len() * b.len() || te.len() != a.len() * b.len() {
                return Err(Error::DimensionMismatch(format!(
                    "map entries at degree {i} have the wrong length"
                )));
            }
            s.push(PGroupHom::reduced(p, a.clone(), b.clone(), se));
            t.push(PGroupHom::reduced(p, b.clone(), a.clone(), te));
        }
        WittModule::new(p, orders, s, t, extends)
    }

    pub fn zero(p: Prime, top: usize, extends: bool) -> WittModule {
        let z = PGroupHom::zero(p, vec![], vec![]);
        WittModule {
            p,
            orders: vec![vec![]; top + 1],
            s: vec![z.clone(); top],
            t: vec![z; top],
            extends,
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn top(&self) -> usize {
        self.orders.len() - 1
    }

    pub fn extends(&self) -> bool {
        self.extends
    }

    /// Exponents of the cyclic factors in degree `i` (empty outside the
    /// window).
    pub fn orders(&self, i: usize) -> &[u32] {
        self.orders.get(i).map_or(&[], |o| o.as_slice())
    }

    pub fn all_orders(&self) -> &[Vec<u32>] {
        &self.orders
    }

    pub fn s(&self, i: usize) -> &PGroupHom {
        &self.s[i]
    }

    pub fn t(&self, i: usize) -> &PGroupHom {
        &self.t[i]
    }

    pub fn s_maps(&self) -> &[PGroupHom] {
        &self.s
    }

    pub fn t_maps(&self) -> &[PGroupHom] {
        &self.t
    }

    pub fn is_zero(&self) -> bool {
        self.orders.iter().all(|o| o.is_empty())
    }

    /// Largest exponent appearing anywhere, at least 1.
    pub fn max_exponent(&self) -> u32 {
        self.orders.iter().flatten().copied().max().unwrap_or(1)
    }

    /// `log_p` of the number of elements.
    pub fn log_order(&self) -> u32 {
        self.orders.iter().flatten().sum()
    }

    /// Failures of `st = ts = p` and of well-defined entries, by degree.
    ///
    /// In degree 0 the map `t` vanishes, so `p` must too; likewise at the
    /// top of a window that does not extend, where `s` vanishes.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let p = self.p.as_u64();
        for i in 0..self.top() {
            if let Some((k, l)) = self.s[i].ill_defined_entry() {
                out.push(Violation {
                    degree: i,
                    message: format!("s entry ({k},{l}) does not respect the cyclic orders"),
                });
            }
            if let Some((k, l)) = self.t[i].ill_defined_entry() {
                out.push(Violation {
                    degree: i + 1,
                    message: format!("t entry ({k},{l}) does not respect the cyclic orders"),
                });
            }
        }
        for i in 0..self.top() {
            let ts = self.t[i].compose(&self.s[i]).expect("shapes checked");
            if ts != PGroupHom::scalar(self.p, self.orders[i].clone(), p) {
                out.push(Violation {
                    degree: i,
                    message: "ts ≠ p".into(),
                });
            }
            let st = self.s[i].compose(&self.t[i]).expect("shapes checked");
            if st != PGroupHom::scalar(self.p, self.orders[i + 1].clone(), p) {
                out.push(Violation {
                    degree: i + 1,
                    message: "st ≠ p".into(),
                });
            }
        }
        if self.orders[0].iter().any(|&e| e > 1) {
            out.push(Violation {
                degree: 0,
                message: "st ≠ p (t vanishes on degree 0 but p does not)".into(),
            });
        }
        if !self.extends && self.orders[self.top()].iter().any(|&e| e > 1) {
            out.push(Violation {
                degree: self.top(),
                message: "ts ≠ p (s vanishes above the window but p does not)".into(),
            });
        }
        out
    }

    /// `M / pM` over `F_p`: one basis vector per cyclic factor, maps reduced
    /// mod `p`.
    pub fn mod_p_reduction(&self) -> GradedFpModule {
        let p = self.p;
        let reduce =
            |h: &PGroupHom| FpMatrix::from_fn(p, h.dst().len(), h.src().len(), |k, l| h.get(k, l) % p.as_u64());
        let dims = self.orders.iter().map(|o| o.len()).collect();
        let s = self.s.iter().map(reduce).collect();
        let t = self.t.iter().map(reduce).collect();
        GradedFpModule::new(p, dims, s, t, self.extends).expect("shapes follow the orders")
    }

    /// The kernel of `p`, with basis `p^{e-1} g` for each cyclic generator
    /// `g` of order `p^e`.
    pub fn p_torsion_kernel(&self) -> GradedFpModule {
        let p = self.p;
        let induced = |h: &PGroupHom| {
            FpMatrix::from_fn(p, h.dst().len(), h.src().len(), |k, l| {
                let (a, b) = (h.src()[l], h.dst()[k]);
                let image = (p.power(a - 1) as u128 * h.get(k, l) as u128 % p.power(b) as u128) as u64;
                // The image lies in the socle p^{b-1} Z/p^b.
                (image / p.power(b - 1)) % p.as_u64()
            })
        };
        let dims = self.orders.iter().map(|o| o.len()).collect();
        let s = self.s.iter().map(induced).collect();
        let t = self.t.iter().map(induced).collect();
        GradedFpModule::new(p, dims, s, t, self.extends).expect("shapes follow the orders")
    }

    /// Block direct sum on a common window.
    pub fn direct_sum(p: Prime, top: usize, parts: &[&WittModule]) -> Result<WittModule> {
        for m in parts {
            if m.top() != top {
                return Err(Error::DimensionMismatch(format!("window {} vs {top}", m.top())));
            }
            if m.p != p {
                return Err(Error::ModulusMismatch {
                    left: p.as_u64(),
                    right: m.p.as_u64(),
                });
            }
        }
        let extends = parts.iter().any(|m| m.extends);
        let orders: Vec<Vec<u32>> = (0..=top)
            .map(|i| parts.iter().flat_map(|m| m.orders[i].iter().copied()).collect())
            .collect();
        let block = |maps: Vec<&PGroupHom>, src: &[u32], dst: &[u32]| {
            let (rows, cols) = (dst.len(), src.len());
            let mut entries = vec![0u64; rows * cols];
            let (mut r0, mut c0) = (0, 0);
            for h in maps {
                for k in 0..h.dst().len() {
                    for l in 0..h.src().len() {
                        entries[(r0 + k) * cols + c0 + l] = h.get(k, l);
                    }
                }
                r0 += h.dst().len();
                c0 += h.src().len();
            }
            PGroupHom::reduced(p, src.to_vec(), dst.to_vec(), entries)
        };
        let s = (0..top)
            .map(|i| block(parts.iter().map(|m| &m.s[i]).collect(), &orders[i], &orders[i + 1]))
            .collect();
        let t = (0..top)
            .map(|i| block(parts.iter().map(|m| &m.t[i]).collect(), &orders[i + 1], &orders[i]))
            .collect();
        WittModule::new(p, orders, s, t, extends)
    }

    /// The quotient by the submodule generated by `generators[i]` (elements
    /// of degree `i`), in fresh cyclic coordinates, with the projections.
    ///
    /// Generators are first closed under `s` and `t`; since `st = p`, the
    /// images `s^a g` and `t^b g` suffice. Each degree is then presented by
    /// the relation matrix `[diag(p^{e_l}) | K]`, whose Smith form `LPR = D`
    /// gives the new factors `Z/p^{d_i}` with `d_i > 0`, the projection
    /// `x ↦ (Lx)_i` and the lifts of the new generators as columns of
    /// `L^{-1}`.
    pub fn quotient(&self, generators: &[Vec<Vec<u64>>]) -> Result<(WittModule, Vec<PGroupHom>)> {
        if generators.len() != self.orders.len() {
            return Err(Error::DimensionMismatch("one generator list per degree".into()));
        }
        let top = self.top();
        let mut closed: Vec<Vec<Vec<u64>>> = vec![Vec::new(); top + 1];
        for (deg, gens) in generators.iter().enumerate() {
            for g in gens {
                if g.len() != self.orders[deg].len() {
                    return Err(Error::DimensionMismatch(format!(
                        "generator in degree {deg} has the wrong length"
                    )));
                }
                let mut x = g.clone();
                for d in deg..=top {
                    closed[d].push(x.clone());
                    if d < top {
                        x = self.s[d].apply(&x);
                    }
                }
                let mut y = g.clone();
                for d in (0..deg).rev() {
                    y = self.t[d].apply(&y);
                    closed[d].push(y.clone());
                }
            }
        }
        let mut proj = Vec::with_capacity(top + 1);
        let mut lifts = Vec::with_capacity(top + 1);
        let mut new_orders = Vec::with_capacity(top + 1);
        for (deg, gens) in closed.iter().enumerate() {
            let (q, l, o) = present_quotient(self.p, &self.orders[deg], gens);
            proj.push(q);
            lifts.push(l);
            new_orders.push(o);
        }
        let induce = |h: &PGroupHom, from: usize, to: usize| -> PGroupHom {
            let cols: Vec<Vec<u64>> = lifts[from].iter().map(|g| proj[to].apply(&h.apply(g))).collect();
            let (rows, ncols) = (new_orders[to].len(), cols.len());
            let mut entries = vec![0u64; rows * ncols];
            for (l, c) in cols.iter().enumerate() {
                for k in 0..rows {
                    entries[k * ncols + l] = c[k];
                }
            }
            PGroupHom::reduced(self.p, new_orders[from].clone(), new_orders[to].clone(), entries)
        };
        let s = (0..top).map(|i| induce(&self.s[i], i, i + 1)).collect();
        let t = (0..top).map(|i| induce(&self.t[i], i + 1, i)).collect();
        let q = WittModule::new(self.p, new_orders.clone(), s, t, self.extends)?;
        Ok((q, proj))
    }
}

/// Cokernel of `K` inside `⊕ Z/p^{e_l}`: (projection, lifts of the new
/// generators, new orders).
fn present_quotient(p: Prime, orders: &[u32], gens: &[Vec<u64>]) -> (PGroupHom, Vec<Vec<u64>>, Vec<u32>) {
    let n = orders.len();
    if n == 0 {
        return (PGroupHom::zero(p, vec![], vec![]), vec![], vec![]);
    }
    let e = orders.iter().copied().max().expect("nonempty");
    let cols = n + gens.len();
    let rel = ZpeMatrix::from_fn(p, e, n, cols, |r, c| {
        if c < n {
            if r == c {
                p.power(orders[r]) % p.power(e)
            } else {
                0
            }
        } else {
            gens[c - n][r]
        }
    });
    let smith = rel.smith();
    let mut keep = Vec::new();
    for i in 0..n {
        let d = smith.valuations.get(i).copied().unwrap_or(e).min(e);
        if d > 0 {
            keep.push((i, d));
        }
    }
    let new_orders: Vec<u32> = keep.iter().map(|&(_, d)| d).collect();
    let mut entries = vec![0u64; keep.len() * n];
    for (k, &(i, d)) in keep.iter().enumerate() {
        for l in 0..n {
            entries[k * n + l] = smith.l.get(i, l) % p.power(d);
        }
    }
    let proj = PGroupHom::reduced(p, orders.to_vec(), new_orders.clone(), entries);
    let lifts = keep
        .iter()
        .map(|&(i, _)| (0..n).map(|r| smith.u.get(r, i) % p.power(orders[r])).collect())
        .collect();
    (proj, lifts, new_orders)
}
