use std::fmt;

use super::Prime;
use crate::error::{Error, Result};

/// A dense matrix over `Z/p^e`, stored row-major with entries in `0..p^e`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZpeMatrix {
    p: Prime,
    e: u32,
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of a unit modulo `m` by the extended Euclidean algorithm.
pub(crate) fn unit_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

impl ZpeMatrix {
    pub fn zero(p: Prime, e: u32, rows: usize, cols: usize) -> ZpeMatrix {
        assert!(e >= 1, "exponent must be positive");
        ZpeMatrix {
            p,
            e,
            modulus: p.power(e),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, e: u32, n: usize) -> ZpeMatrix {
        let mut m = ZpeMatrix::zero(p, e, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_flat(p: Prime, e: u32, rows: usize, cols: usize, entries: &[u64]) -> Result<ZpeMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let mut m = ZpeMatrix::zero(p, e, rows, cols);
        for (d, &x) in m.data.iter_mut().zip(entries) {
            *d = x % m.modulus;
        }
        Ok(m)
    }

    pub fn from_fn(p: Prime, e: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> ZpeMatrix {
        let mut m = ZpeMatrix::zero(p, e, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % m.modulus;
            }
        }
        m
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x % self.modulus;
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// `p`-adic valuation of an entry, with `v(0) = e`.
    pub fn valuation(&self, x: u64) -> u32 {
        valuation(self.p, self.e, x)
    }

    pub fn mul(&self, other: &ZpeMatrix) -> Result<ZpeMatrix> {
        if self.p != other.p || self.e != other.e {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = self.modulus;
        let mut out = ZpeMatrix::zero(self.p, self.e, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + mulmod(a, other.get(k, j), m)) % m;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length");
        let m = self.modulus;
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| (acc + mulmod(self.get(i, j), v[j], m)) % m))
            .collect()
    }

    pub fn transpose(&self) -> ZpeMatrix {
        ZpeMatrix::from_fn(self.p, self.e, self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: u64) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = mulmod(self.data[idx], c, self.modulus);
        }
    }

    fn scale_col(&mut self, j: usize, c: u64) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = mulmod(self.data[idx], c, self.modulus);
        }
    }

    /// `row_dst += c * row_src`.
    fn add_row(&mut self, dst: usize, src: usize, c: u64) {
        for j in 0..self.cols {
            let x = mulmod(self.data[src * self.cols + j], c, self.modulus);
            let idx = dst * self.cols + j;
            self.data[idx] = (self.data[idx] + x) % self.modulus;
        }
    }

    /// `col_dst += c * col_src`.
    fn add_col(&mut self, dst: usize, src: usize, c: u64) {
        for i in 0..self.rows {
            let x = mulmod(self.data[i * self.cols + src], c, self.modulus);
            let idx = i * self.cols + dst;
            self.data[idx] = (self.data[idx] + x) % self.modulus;
        }
    }

    fn neg(&self, x: u64) -> u64 {
        (self.modulus - x % self.modulus) % self.modulus
    }

    /// Smith normal form over `Z/p^e`.
    pub fn smith(&self) -> Smith {
        let (p, e, m) = (self.p, self.e, self.modulus);
        let mut d = self.clone();
        let mut l = ZpeMatrix::identity(p, e, self.rows);
        let mut u = l.clone();
        let mut r = ZpeMatrix::identity(p, e, self.cols);
        let mut v = r.clone();
        let n = self.rows.min(self.cols);
        let mut valuations = vec![e; n];

        for k in 0..n {
            let mut best: Option<(u32, usize, usize)> = None;
            'search: for i in k..d.rows {
                for j in k..d.cols {
                    let val = d.valuation(d.get(i, j));
                    if val < e && best.is_none_or(|(b, _, _)| val < b) {
                        best = Some((val, i, j));
                        if val == 0 {
                            break 'search;
                        }
                    }
                }
            }
            let Some((val, pi, pj)) = best else { break };
            valuations[k] = val;

            d.swap_rows(k, pi);
            l.swap_rows(k, pi);
            u.swap_cols(k, pi);
            d.swap_cols(k, pj);
            r.swap_cols(k, pj);
            v.swap_rows(k, pj);

            // Make the pivot exactly p^val.
            let pv = p.power(val);
            let unit = d.get(k, k) / pv;
            let inv = unit_inverse(unit, m).expect("pivot cofactor is a unit");
            d.scale_row(k, inv);
            l.scale_row(k, inv);
            u.scale_col(k, unit);

            for i in 0..d.rows {
                if i == k {
                    continue;
                }
                let a = d.get(i, k);
                if a == 0 {
                    continue;
                }
                let c = d.neg(a / pv);
                d.add_row(i, k, c);
                l.add_row(i, k, c);
                // U <- U * E^{-1}: col_k -= c * col_i.
                let nc = d.neg(c);
                u.add_col(k, i, nc);
            }
            for j in 0..d.cols {
                if j == k {
                    continue;
                }
                let a = d.get(k, j);
                if a == 0 {
                    continue;
                }
                let c = d.neg(a / pv);
                d.add_col(j, k, c);
                r.add_col(j, k, c);
                // V <- E^{-1} * V: row_k -= c * row_j.
                let nc = d.neg(c);
                v.add_row(k, j, nc);
            }
        }
        Smith {
            u,
            d,
            v,
            l,
            r,
            valuations,
        }
    }
}

pub(crate) fn valuation(p: Prime, e: u32, x: u64) -> u32 {
    if x == 0 {
        return e;
    }
    let q = p.as_u64();
    let mut x = x;
    let mut k = 0;
    while x.is_multiple_of(q) && k < e {
        x /= q;
        k += 1;
    }
    k
}

/// Smith decomposition `A = U D V` (equivalently `L A R = D`) over `Z/p^e`.
///
/// `valuations[i]` is the exponent of the `i`-th diagonal entry, with `e`
/// standing for a zero entry.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: ZpeMatrix,
    pub d: ZpeMatrix,
    pub v: ZpeMatrix,
    pub l: ZpeMatrix,
    pub r: ZpeMatrix,
    pub valuations: Vec<u32>,
}

impl fmt::Debug for ZpeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZpeMatrix({}^{}, {}x{}, [", self.p, self.e, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &ZpeMatrix) -> Smith {
        let s = a.smith();
        assert_eq!(&s.u.mul(&s.d).unwrap().mul(&s.v).unwrap(), a);
        assert_eq!(&s.l.mul(a).unwrap().mul(&s.r).unwrap(), &s.d);
        let id_r = ZpeMatrix::identity(a.prime(), a.exponent(), a.rows());
        let id_c = ZpeMatrix::identity(a.prime(), a.exponent(), a.cols());
        assert_eq!(s.u.mul(&s.l).unwrap(), id_r);
        assert_eq!(s.r.mul(&s.v).unwrap(), id_c);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    assert_eq!(s.d.get(i, j), 0);
                }
            }
        }
        s
    }

    #[test]
    fn single_p_over_p_squared() {
        for q in [2, 3, 5] {
            let p = Prime::new(q).unwrap();
            let a = ZpeMatrix::from_flat(p, 2, 1, 1, &[q]).unwrap();
            let s = check(&a);
            assert_eq!(s.d.get(0, 0), q);
            assert_eq!(s.valuations, vec![1]);
        }
    }

    #[test]
    fn identity_mod_eight() {
        let p = Prime::new(2).unwrap();
        let a = ZpeMatrix::identity(p, 3, 3);
        let s = check(&a);
        assert_eq!(s.d, a);
        assert_eq!(s.valuations, vec![0, 0, 0]);
    }

    #[test]
    fn rank_one_mod_eight() {
        let p = Prime::new(2).unwrap();
        let a = ZpeMatrix::from_flat(p, 3, 2, 2, &[2, 4, 4, 8]).unwrap();
        let s = check(&a);
        assert_eq!(s.d.entries(), &[2, 0, 0, 0]);
        assert_eq!(s.valuations, vec![1, 3]);
    }

    #[test]
    fn inverse_of_units() {
        assert_eq!(unit_inverse(3, 8), Some(3));
        assert_eq!(unit_inverse(2, 8), None);
        assert_eq!(unit_inverse(7, 25).map(|x| x * 7 % 25), Some(1));
    }

    fn random_unimodular(p: Prime, e: u32, n: usize, ops: &[(usize, usize, u64)]) -> ZpeMatrix {
        let mut m = ZpeMatrix::identity(p, e, n);
        for &(a, b, c) in ops {
            let (a, b) = (a % n, b % n);
            if a == b {
                // Scale by a unit.
                let unit = c * p.as_u64() + 1;
                m.scale_row(a, unit % m.modulus);
            } else {
                m.add_row(a, b, c);
            }
        }
        m
    }

    proptest! {
        #[test]
        fn smith_reconstructs_and_is_invariant(
            (q, e, rows, cols, entries, left, right) in
                (prop_oneof![Just(2u64), Just(3u64), Just(5u64)], 1u32..=4, 1usize..=5, 1usize..=5)
                .prop_flat_map(|(q, e, r, c)| (
                    Just(q), Just(e), Just(r), Just(c),
                    proptest::collection::vec(0..q.pow(e), r * c),
                    proptest::collection::vec((0usize..8, 0usize..8, 0u64..25), 0..12),
                    proptest::collection::vec((0usize..8, 0usize..8, 0u64..25), 0..12),
                ))
        ) {
            let p = Prime::new(q).unwrap();
            let a = ZpeMatrix::from_flat(p, e, rows, cols, &entries).unwrap();
            let s = check(&a);
            let mut vals = s.valuations.clone();
            vals.sort();
            let lu = random_unimodular(p, e, rows, &left);
            let ru = random_unimodular(p, e, cols, &right);
            let b = lu.mul(&a).unwrap().mul(&ru).unwrap();
            let mut vb = check(&b).valuations;
            vb.sort();
            prop_assert_eq!(vals, vb);
        }
    }
}
