use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, HopfGraph};
use crate::linalg::{PGroupHom, Prime};
use crate::string::Violation;

use super::{module_from_graph, WittModule};

/// A graded Dieudonné module on the degrees `1..=top`: finite abelian
/// `p`-groups `M_n` with Frobenius `F: M_n -> M_{pn}` and Verschiebung
/// `V: M_{pn} -> M_n` whenever `pn <= top`.
///
/// `orders[n - 1]` lists the cyclic exponents of `M_n`; `f[n - 1]` and
/// `v[n - 1]` hold the maps out of and into `M_n` for `n <= top / p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DieudonneModule {
    p: Prime,
    orders: Vec<Vec<u32>>,
    f: Vec<PGroupHom>,
    v: Vec<PGroupHom>,
    extends: bool,
}

impl DieudonneModule {
    pub fn new(p: Prime, orders: Vec<Vec<u32>>, f: Vec<PGroupHom>, v: Vec<PGroupHom>, extends: bool) -> Result<Self> {
        let top = orders.len();
        let pairs = top / p.get() as usize;
        if f.len() != pairs || v.len() != pairs {
            return Err(Error::DimensionMismatch(format!(
                "{top} degrees need {pairs} Frobenius and Verschiebung maps"
            )));
        }
        if let Some(n) = orders.iter().position(|o| o.contains(&0)) {
            return Err(Error::DimensionMismatch(format!(
                "degree {} has a trivial cyclic factor",
                n + 1
            )));
        }
        for n in 1..=pairs {
            let (a, b) = (&orders[n - 1], &orders[p.get() as usize * n - 1]);
            if f[n - 1].src() != a.as_slice() || f[n - 1].dst() != b.as_slice() {
                return Err(Error::DimensionMismatch(format!("F out of degree {n}")));
            }
            if v[n - 1].src() != b.as_slice() || v[n - 1].dst() != a.as_slice() {
                return Err(Error::DimensionMismatch(format!("V into degree {n}")));
            }
        }
        Ok(DieudonneModule {
            p,
            orders,
            f,
            v,
            extends,
        })
    }

    /// As [`DieudonneModule::new`], from row-major entries reduced mod the
    /// target orders.
    pub fn from_entries(
        p: Prime,
        orders: Vec<Vec<u32>>,
        f_entries: Vec<Vec<u64>>,
        v_entries: Vec<Vec<u64>>,
        extends: bool,
    ) -> Result<Self> {
        let pu = p.get() as usize;
        let pairs = orders.len() / pu;
        if f_entries.len() != pairs || v_entries.len() != pairs {
            return Err(Error::DimensionMismatch(format!("{pairs} maps expected each way")));
        }
        let mut f = Vec::new();
        let mut v = Vec::new();
        for (i, (fe, ve)) in f_entries.into_iter().zip(v_entries).enumerate() {
            let n = i + 1;
            let (a, b) = (&orders[n - 1], &orders[pu * n - 1]);
            if fe.len() != a.len() * b.len() || ve.len() != a.len() * b.len() {
                return Err(Error::DimensionMismatch(format!(
                    "map entries at degree {n} have the wrong length"
                )));
            }
            f.push(PGroupHom::reduced(p, a.clone(), b.clone(), fe));
            v.push(PGroupHom::reduced(p, b.clone(), a.clone(), ve));
        }
        DieudonneModule::new(p, orders, f, v, extends)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn top(&self) -> usize {
        self.orders.len()
    }

    pub fn extends(&self) -> bool {
        self.extends
    }

    /// Cyclic exponents of `M_n`, empty outside `1..=top`.
    pub fn orders(&self, n: usize) -> &[u32] {
        if n == 0 {
            return &[];
        }
        self.orders.get(n - 1).map_or(&[], |o| o.as_slice())
    }

    /// `F: M_n -> M_{pn}`, if `pn` is in the window.
    pub fn frobenius(&self, n: usize) -> Option<&PGroupHom> {
        n.checked_sub(1).and_then(|i| self.f.get(i))
    }

    /// `V: M_{pn} -> M_n`, if `pn` is in the window.
    pub fn verschiebung(&self, n: usize) -> Option<&PGroupHom> {
        n.checked_sub(1).and_then(|i| self.v.get(i))
    }

    pub fn log_order(&self) -> u32 {
        self.orders.iter().flatten().sum()
    }

    /// Failures of the Dieudonné relations.
    ///
    /// `FV = VF = p` wherever both maps are in the window. When `p ∤ n`
    /// nothing maps into `M_n` by `F`, so `p` must vanish there; without
    /// `extends` the same holds for `M_n` with `pn > top`.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let (p, pu) = (self.p, self.p.get() as usize);
        for n in 1..=self.f.len() {
            let (f, v) = (&self.f[n - 1], &self.v[n - 1]);
            if let Some((k, l)) = f.ill_defined_entry() {
                out.push(Violation {
                    degree: n,
                    message: format!("F entry ({k},{l}) does not respect the cyclic orders"),
                });
            }
            if let Some((k, l)) = v.ill_defined_entry() {
                out.push(Violation {
                    degree: pu * n,
                    message: format!("V entry ({k},{l}) does not respect the cyclic orders"),
                });
            }
            let vf = v.compose(f).expect("shapes checked");
            if vf != PGroupHom::scalar(p, self.orders[n - 1].clone(), p.as_u64()) {
                out.push(Violation {
                    degree: n,
                    message: "VF ≠ p".into(),
                });
            }
            let fv = f.compose(v).expect("shapes checked");
            if fv != PGroupHom::scalar(p, self.orders[pu * n - 1].clone(), p.as_u64()) {
                out.push(Violation {
                    degree: pu * n,
                    message: "FV ≠ p".into(),
                });
            }
        }
        for n in 1..=self.top() {
            let killed_below = n % pu != 0;
            let killed_above = !self.extends && pu * n > self.top();
            if (killed_below || killed_above) && self.orders[n - 1].iter().any(|&e| e > 1) {
                let why = if killed_below {
                    "p ∤ n"
                } else {
                    "pn is above the window"
                };
                out.push(Violation {
                    degree: n,
                    message: format!("p ≠ 0 although {why}"),
                });
            }
        }
        out
    }

    /// Splits into the `p`-typical pieces: for each `j <= top` prime to `p`,
    /// the Witt module with `M_{jp^a}` in degree `a`, `s = F` and `t = V`.
    pub fn p_typical_split(&self) -> BTreeMap<usize, WittModule> {
        let pu = self.p.get() as usize;
        let mut out = BTreeMap::new();
        for j in (1..=self.top()).filter(|j| j % pu != 0) {
            let degrees = type_degrees(j, pu, self.top());
            let orders: Vec<Vec<u32>> = degrees.iter().map(|&n| self.orders[n - 1].clone()).collect();
            let s = degrees[..degrees.len() - 1]
                .iter()
                .map(|&n| self.f[n - 1].clone())
                .collect();
            let t = degrees[..degrees.len() - 1]
                .iter()
                .map(|&n| self.v[n - 1].clone())
                .collect();
            let m = WittModule::new(self.p, orders, s, t, self.extends).expect("pieces inherit the shapes");
            out.insert(j, m);
        }
        out
    }

    /// Inverse of [`DieudonneModule::p_typical_split`]. Every `j <= top`
    /// prime to `p` must be present with window `0..=a_max`, where
    /// `j p^{a_max} <= top` is maximal.
    pub fn reassemble(p: Prime, top: usize, extends: bool, parts: &BTreeMap<usize, WittModule>) -> Result<Self> {
        let pu = p.get() as usize;
        let mut orders = vec![Vec::new(); top];
        let pairs = top / pu;
        let mut f: Vec<Option<PGroupHom>> = vec![None; pairs];
        let mut v: Vec<Option<PGroupHom>> = vec![None; pairs];
        let expected: Vec<usize> = (1..=top).filter(|j| j % pu != 0).collect();
        if parts.keys().copied().collect::<Vec<_>>() != expected {
            return Err(Error::DimensionMismatch(format!("types {:?} expected", expected)));
        }
        for (&j, m) in parts {
            let degrees = type_degrees(j, pu, top);
            if m.top() + 1 != degrees.len() || m.prime() != p || m.extends() != extends {
                return Err(Error::DimensionMismatch(format!(
                    "type {j} needs window 0..={}",
                    degrees.len() - 1
                )));
            }
            for (a, &n) in degrees.iter().enumerate() {
                orders[n - 1] = m.orders(a).to_vec();
                if a + 1 < degrees.len() {
                    f[n - 1] = Some(m.s(a).clone());
                    v[n - 1] = Some(m.t(a).clone());
                }
            }
        }
        let f = f
            .into_iter()
            .map(|h| h.expect("every n <= top/p lies in a type"))
            .collect();
        let v = v
            .into_iter()
            .map(|h| h.expect("every n <= top/p lies in a type"))
            .collect();
        DieudonneModule::new(p, orders, f, v, extends)
    }
}

fn type_degrees(j: usize, p: usize, top: usize) -> Vec<usize> {
    let mut out = vec![j];
    while out.last().expect("nonempty") * p <= top {
        out.push(out.last().expect("nonempty") * p);
    }
    out
}

/// A random valid Dieudonné module on `1..=top` without `extends`.
///
/// Each `p`-typical piece is a direct sum of shifted graph modules that fit
/// the piece's window, including the `p`-torsion point modules with
/// `F = V = 0`. The pieces are written straight into the degrees `jp^a`
/// without going through [`DieudonneModule::reassemble`].
pub fn random_dieudonne(p: Prime, top: usize, max_summands: usize, seed: u64) -> DieudonneModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pu = p.get() as usize;
    let mut orders = vec![Vec::new(); top];
    let pairs = top / pu;
    let mut f_blocks: Vec<Vec<(usize, usize, u64)>> = vec![Vec::new(); pairs];
    let mut v_blocks: Vec<Vec<(usize, usize, u64)>> = vec![Vec::new(); pairs];
    for j in (1..=top).filter(|j| j % pu != 0) {
        let degrees = type_degrees(j, pu, top);
        let window = degrees.len() - 1;
        for _ in 0..rng.gen_range(0..=max_summands) {
            let m = rng.gen_range(0..=window.min(6));
            let graphs = enumerate_graphs(m).expect("small length");
            let g: &HopfGraph = &graphs[rng.gen_range(0..graphs.len())];
            let shift = rng.gen_range(0..=window - m);
            let piece = module_from_graph(g, p, shift, window).expect("fits the window");
            // Offsets of this summand's factors in the target degrees.
            let base: Vec<usize> = degrees.iter().map(|&n| orders[n - 1].len()).collect();
            for (a, &n) in degrees.iter().enumerate() {
                orders[n - 1].extend_from_slice(piece.orders(a));
            }
            for a in 0..window {
                let n = degrees[a];
                for (k, l, x) in nonzero(piece.s(a)) {
                    f_blocks[n - 1].push((base[a + 1] + k, base[a] + l, x));
                }
                for (k, l, x) in nonzero(piece.t(a)) {
                    v_blocks[n - 1].push((base[a] + k, base[a + 1] + l, x));
                }
            }
        }
    }
    let build = |blocks: &[(usize, usize, u64)], src: &[u32], dst: &[u32]| {
        let mut entries = vec![0u64; src.len() * dst.len()];
        for &(k, l, x) in blocks {
            entries[k * src.len() + l] = x;
        }
        PGroupHom::new(p, src.to_vec(), dst.to_vec(), entries).expect("graph module entries are well defined")
    };
    let f = (1..=pairs)
        .map(|n| build(&f_blocks[n - 1], &orders[n - 1], &orders[pu * n - 1]))
        .collect();
    let v = (1..=pairs)
        .map(|n| build(&v_blocks[n - 1], &orders[pu * n - 1], &orders[n - 1]))
        .collect();
    DieudonneModule::new(p, orders, f, v, false).expect("shapes follow the blocks")
}

fn nonzero(h: &PGroupHom) -> Vec<(usize, usize, u64)> {
    let mut out = Vec::new();
    for k in 0..h.dst().len() {
        for l in 0..h.src().len() {
            let x = h.get(k, l);
            if x != 0 {
                out.push((k, l, x));
            }
        }
    }
    out
}
