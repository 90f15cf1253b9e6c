use super::zpe::{valuation, ZpeMatrix};
use super::Prime;
use crate::error::{Error, Result};

/// A homomorphism `⊕_l Z/p^{a_l} -> ⊕_k Z/p^{b_k}` between finite abelian
/// `p`-groups given in cyclic coordinates.
///
/// Entry `(k, l)` is reduced mod `p^{b_k}` and must satisfy
/// `p^{a_l} * entry ≡ 0 (mod p^{b_k})`, i.e. `v(entry) >= b_k - a_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PGroupHom {
    p: Prime,
    src: Vec<u32>,
    dst: Vec<u32>,
    entries: Vec<u64>,
}

impl PGroupHom {
    pub fn new(p: Prime, src: Vec<u32>, dst: Vec<u32>, entries: Vec<u64>) -> Result<PGroupHom> {
        if entries.len() != src.len() * dst.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} map",
                entries.len(),
                dst.len(),
                src.len()
            )));
        }
        let h = PGroupHom::reduced(p, src, dst, entries);
        if let Some((k, l)) = h.ill_defined_entry() {
            return Err(Error::InvalidModule(format!(
                "entry ({k},{l}) does not kill p^{} in Z/p^{}",
                h.src[l], h.dst[k]
            )));
        }
        Ok(h)
    }

    /// Reduces entries mod the target orders without checking well-definedness.
    pub(crate) fn reduced(p: Prime, src: Vec<u32>, dst: Vec<u32>, mut entries: Vec<u64>) -> PGroupHom {
        let n = src.len();
        for (k, &b) in dst.iter().enumerate() {
            let m = p.power(b);
            for x in &mut entries[k * n..(k + 1) * n] {
                *x %= m;
            }
        }
        PGroupHom { p, src, dst, entries }
    }

    pub fn zero(p: Prime, src: Vec<u32>, dst: Vec<u32>) -> PGroupHom {
        let n = src.len() * dst.len();
        PGroupHom {
            p,
            src,
            dst,
            entries: vec![0; n],
        }
    }

    pub fn identity(p: Prime, orders: Vec<u32>) -> PGroupHom {
        let n = orders.len();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1 % p.power(orders[i]);
        }
        PGroupHom {
            p,
            src: orders.clone(),
            dst: orders,
            entries,
        }
    }

    /// Multiplication by the integer `c` on `⊕ Z/p^{a}`.
    pub fn scalar(p: Prime, orders: Vec<u32>, c: u64) -> PGroupHom {
        let n = orders.len();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = c % p.power(orders[i]);
        }
        PGroupHom {
            p,
            src: orders.clone(),
            dst: orders,
            entries,
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn src(&self) -> &[u32] {
        &self.src
    }

    pub fn dst(&self) -> &[u32] {
        &self.dst
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, k: usize, l: usize) -> u64 {
        self.entries[k * self.src.len() + l]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn ill_defined_entry(&self) -> Option<(usize, usize)> {
        for (k, &b) in self.dst.iter().enumerate() {
            for (l, &a) in self.src.iter().enumerate() {
                let x = self.get(k, l);
                if b > a && valuation(self.p, b, x) < b - a {
                    return Some((k, l));
                }
            }
        }
        None
    }

    /// Reduces a source element into canonical coordinates.
    pub fn reduce_src(&self, x: &[u64]) -> Vec<u64> {
        reduce_in(self.p, &self.src, x)
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.src.len(), "element length");
        self.dst
            .iter()
            .enumerate()
            .map(|(k, &b)| {
                let m = self.p.power(b) as u128;
                let acc = (0..self.src.len()).fold(0u128, |acc, l| (acc + self.get(k, l) as u128 * x[l] as u128) % m);
                acc as u64
            })
            .collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PGroupHom) -> Result<PGroupHom> {
        if self.p != inner.p {
            return Err(Error::ModulusMismatch {
                left: self.p.as_u64(),
                right: inner.p.as_u64(),
            });
        }
        if self.src != inner.dst {
            return Err(Error::DimensionMismatch(format!(
                "composing through {:?} and {:?}",
                inner.dst, self.src
            )));
        }
        let (rows, mid, cols) = (self.dst.len(), self.src.len(), inner.src.len());
        let mut entries = vec![0u64; rows * cols];
        for k in 0..rows {
            let m = self.p.power(self.dst[k]) as u128;
            for l in 0..cols {
                let acc = (0..mid).fold(0u128, |acc, j| {
                    (acc + self.get(k, j) as u128 * inner.get(j, l) as u128) % m
                });
                entries[k * cols + l] = acc as u64;
            }
        }
        Ok(PGroupHom {
            p: self.p,
            src: inner.src.clone(),
            dst: self.dst.clone(),
            entries,
        })
    }

    pub fn add(&self, other: &PGroupHom) -> Result<PGroupHom> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| a + b).collect();
        Ok(PGroupHom::reduced(self.p, self.src.clone(), self.dst.clone(), entries))
    }

    pub fn sub(&self, other: &PGroupHom) -> Result<PGroupHom> {
        self.same_shape(other)?;
        let n = self.src.len();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .enumerate()
            .map(|(idx, (&a, &b))| {
                let m = self.p.power(self.dst[idx / n.max(1)]);
                (a + m - b % m) % m
            })
            .collect();
        Ok(PGroupHom::reduced(self.p, self.src.clone(), self.dst.clone(), entries))
    }

    pub fn scale(&self, c: u64) -> PGroupHom {
        let n = self.src.len();
        let entries = (0..self.entries.len())
            .map(|idx| {
                let m = self.p.power(self.dst[idx / n.max(1)]) as u128;
                ((self.entries[idx] as u128 * (c as u128 % m)) % m) as u64
            })
            .collect();
        PGroupHom {
            p: self.p,
            src: self.src.clone(),
            dst: self.dst.clone(),
            entries,
        }
    }

    fn same_shape(&self, other: &PGroupHom) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p.as_u64(),
                right: other.p.as_u64(),
            });
        }
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::DimensionMismatch("maps between different groups".into()));
        }
        Ok(())
    }

    fn big_exponent(&self) -> u32 {
        self.src.iter().chain(&self.dst).copied().max().unwrap_or(0).max(1)
    }

    /// The map lifted to a matrix over `Z/p^E`, row `k` scaled by `p^{E-b_k}`
    /// so that all congruences live in one ring.
    fn scaled(&self) -> (u32, ZpeMatrix) {
        let e = self.big_exponent();
        let n = self.src.len();
        let m = ZpeMatrix::from_fn(self.p, e, self.dst.len(), n, |k, l| {
            self.get(k, l) * self.p.power(e - self.dst[k])
        });
        (e, m)
    }

    /// Some `x` with `self(x) = y`, or `None` when `y` is not in the image.
    pub fn solve(&self, y: &[u64]) -> Result<Option<Vec<u64>>> {
        if y.len() != self.dst.len() {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let (e, a) = self.scaled();
        let rhs: Vec<u64> = y
            .iter()
            .zip(&self.dst)
            .map(|(&yk, &b)| (yk % self.p.power(b)) * self.p.power(e - b))
            .collect();
        let s = a.smith();
        let c = s.l.apply(&rhs);
        let mut z = vec![0u64; self.src.len()];
        for (i, &ci) in c.iter().enumerate() {
            let v = s.valuations.get(i).copied().unwrap_or(e);
            if v >= e {
                if ci != 0 {
                    return Ok(None);
                }
                continue;
            }
            let pv = self.p.power(v);
            if ci % pv != 0 {
                return Ok(None);
            }
            z[i] = ci / pv;
        }
        let x = s.r.apply(&z);
        Ok(Some(self.reduce_src(&x)))
    }

    /// Generators of the kernel subgroup, reduced into source coordinates;
    /// zero generators are dropped.
    pub fn kernel_generators(&self) -> Vec<Vec<u64>> {
        let (e, a) = self.scaled();
        let s = a.smith();
        let n = self.src.len();
        let mut gens = Vec::new();
        for i in 0..n {
            let v = s.valuations.get(i).copied().unwrap_or(e);
            let mut z = vec![0u64; n];
            z[i] = self.p.power(e - v.min(e));
            let g = self.reduce_src(&s.r.apply(&z));
            if g.iter().any(|&x| x != 0) {
                gens.push(g);
            }
        }
        gens
    }

    /// `log_p` of the order of the cokernel.
    pub fn log_cokernel_order(&self) -> u32 {
        let rows = self.dst.len();
        if rows == 0 {
            return 0;
        }
        let b_max = self.dst.iter().copied().max().unwrap_or(0);
        if b_max == 0 {
            return 0;
        }
        let n = self.src.len();
        let cols = n + rows;
        let m = ZpeMatrix::from_fn(self.p, b_max, rows, cols, |k, j| {
            if j < n {
                self.get(k, j)
            } else if j - n == k {
                self.p.power(self.dst[k]) % self.p.power(b_max)
            } else {
                0
            }
        });
        m.smith().valuations.iter().sum()
    }

    pub fn log_image_order(&self) -> u32 {
        self.dst.iter().sum::<u32>() - self.log_cokernel_order()
    }

    pub fn log_kernel_order(&self) -> u32 {
        self.src.iter().sum::<u32>() - self.log_image_order()
    }

    pub fn is_injective(&self) -> bool {
        self.log_kernel_order() == 0
    }

    pub fn is_surjective(&self) -> bool {
        self.log_cokernel_order() == 0
    }
}

pub(crate) fn reduce_in(p: Prime, orders: &[u32], x: &[u64]) -> Vec<u64> {
    assert_eq!(x.len(), orders.len(), "element length");
    x.iter().zip(orders).map(|(&xi, &a)| xi % p.power(a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p2() -> Prime {
        Prime::new(2).unwrap()
    }

    #[test]
    fn multiplication_by_p_on_cyclic() {
        // p: Z/8 -> Z/8 has kernel {0,4} and image of order 4.
        let h = PGroupHom::scalar(p2(), vec![3], 2);
        assert_eq!(h.log_kernel_order(), 1);
        assert_eq!(h.log_image_order(), 2);
        assert_eq!(h.kernel_generators(), vec![vec![4]]);
        assert_eq!(h.solve(&[6]).unwrap().map(|x| h.apply(&x)), Some(vec![6]));
        assert_eq!(h.solve(&[3]).unwrap(), None);
    }

    #[test]
    fn well_definedness_is_checked() {
        // Z/2 -> Z/4 must land in 2Z/4.
        assert!(PGroupHom::new(p2(), vec![1], vec![2], vec![1]).is_err());
        assert!(PGroupHom::new(p2(), vec![1], vec![2], vec![2]).is_ok());
        // Z/4 -> Z/2 reduction is fine.
        assert!(PGroupHom::new(p2(), vec![2], vec![1], vec![1]).is_ok());
    }

    #[test]
    fn inclusion_and_projection() {
        let inc = PGroupHom::new(p2(), vec![1], vec![2], vec![2]).unwrap();
        assert!(inc.is_injective() && !inc.is_surjective());
        let proj = PGroupHom::new(p2(), vec![2], vec![1], vec![1]).unwrap();
        assert!(proj.is_surjective() && !proj.is_injective());
        assert_eq!(proj.compose(&inc).unwrap(), PGroupHom::zero(p2(), vec![1], vec![1]));
    }

    fn elements(p: Prime, orders: &[u32]) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &a in orders {
            let mut next = Vec::new();
            for v in &out {
                for x in 0..p.power(a) {
                    let mut w = v.clone();
                    w.push(x);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    fn hom_strategy() -> impl Strategy<Value = (u64, Vec<u32>, Vec<u32>, Vec<u64>)> {
        (
            prop_oneof![Just(2u64), Just(3u64)],
            proptest::collection::vec(1u32..=3, 0..=2),
            proptest::collection::vec(1u32..=3, 1..=2),
        )
            .prop_flat_map(|(q, src, dst)| {
                let n = src.len() * dst.len();
                (Just(q), Just(src), Just(dst), proptest::collection::vec(0u64..27, n))
            })
    }

    proptest! {
        #[test]
        fn orders_and_solve_match_enumeration((q, src, dst, raw) in hom_strategy()) {
            let p = Prime::new(q).unwrap();
            // Force well-definedness by multiplying entries up.
            let n = src.len();
            let entries: Vec<u64> = raw.iter().enumerate().map(|(idx, &x)| {
                let (k, l) = (idx / n.max(1), idx % n.max(1));
                x * p.power(dst[k].saturating_sub(src[l]))
            }).collect();
            let h = PGroupHom::new(p, src.clone(), dst.clone(), entries).unwrap();
            let dom = elements(p, &src);
            let mut img: Vec<Vec<u64>> = dom.iter().map(|x| h.apply(x)).collect();
            img.sort();
            img.dedup();
            let ker: Vec<&Vec<u64>> = dom.iter().filter(|x| h.apply(x).iter().all(|&c| c == 0)).collect();
            prop_assert_eq!(p.power(h.log_image_order()) as usize, img.len());
            prop_assert_eq!(p.power(h.log_kernel_order()) as usize, ker.len());
            for g in h.kernel_generators() {
                prop_assert!(h.apply(&g).iter().all(|&c| c == 0));
            }
            for y in elements(p, &dst) {
                match h.solve(&y).unwrap() {
                    Some(x) => prop_assert_eq!(h.apply(&x), y),
                    None => prop_assert!(img.binary_search(&y).is_err()),
                }
            }
        }
    }
}
